import pandas as pd, re
s=pd.read_csv('/tmp/pd/shapash_titanic.csv'); d=pd.read_csv('/tmp/pd/dabl_titanic.csv', na_values='?', keep_default_na=False, dtype={'ticket':str,'cabin':str})
pc={'First class':1,'Second class':2,'Third class':3}
def toks(n):
    n=re.sub(r'\b(Mr|Mrs|Miss|Master|Don|Rev|Dr|Mme|Ms|Major|Lady|Sir|Mlle|Col|Capt|Countess|Jonkheer|Dona|the)\b\.?','',n)
    return frozenset(t.lower() for t in re.findall(r'[A-Za-z]+',n))
d['tk']=d.name.map(toks); d['used']=False
rows=[]; bad=0
for _,r in s.iterrows():
    t=toks(r.Name)
    c=d[(d.pclass==pc[r.Pclass])&(d.sex==r.Sex)&(d.sibsp==r.SibSp)&(d.parch==r.Parch)&(d.survived==r.Survived)&(~d.used)]
    best=None;bs=-1
    for i,x in c.iterrows():
        sc=len(t & x.tk)/max(1,len(t|x.tk))
        if sc>bs: bs=sc;best=i
    if best is None or bs<0.5: bad+=1; print('NOMATCH',r.PassengerId,r.Name,bs); continue
    d.at[best,'used']=True; x=d.loc[best]
    rows.append(dict(PassengerId=r.PassengerId,Survived=r.Survived,Pclass=pc[r.Pclass],Name=x['name'],Sex=r.Sex,
        Age=x.age,SibSp=r.SibSp,Parch=r.Parch,Ticket=x.ticket,Fare=x.fare,Cabin=x.cabin,Embarked=x.embarked,_sfare=r.Fare))
o=pd.DataFrame(rows); print(len(o),bad)
print('fare mismatch', (abs(o.Fare-o._sfare)>0.01).sum())
print(o.isna().sum().to_dict())
o.drop(columns='_sfare').to_csv('train.csv',index=False)

use bayesent_core::consequence::{
    classical_entails, is_order_preserving, paraconsistent_entails, paraconsistent_predictive, prior_from_preference,
};
use bayesent_core::logic::{evaluate, max_support_worlds, models, satisfied_count};
use bayesent_core::model::{likelihood, marginal, posterior, predictive, set_likelihood, truth_probability};
use bayesent_core::suites::gen;
use bayesent_core::{
    parse_formula, Formula, KnowledgeBase, LogicalModel, NoiseParam, RankWeighting, Signature, Threshold,
    WorldDistribution,
};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["a", "b", "c", "rain", "x_1"]).prop_map(Formula::atom);
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implied_by(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Random exact model over `n` atoms: prior weights in `0..=9`, μ in tenths.
fn model(seed: u64, n: usize) -> (rand_chacha::ChaCha8Rng, LogicalModel<BigRational>) {
    let mut rng = gen::rng(seed);
    let space = gen::space(n);
    let prior = gen::prior(&mut rng, &space, 0);
    let mu = NoiseParam::new(gen::tenth(&mut rng)).unwrap();
    (rng, LogicalModel::new(prior, mu))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(f in formula_strategy()) {
        let mut sig = Signature::extensible();
        let back = parse_formula(&f.to_string(), &mut sig).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn formula_and_negation_partition_worlds(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = gen::rng(seed);
        let space = gen::space(n);
        let f = gen::formula(&mut rng, &space, 4);
        let pos = models(&KnowledgeBase::new(vec![f.clone()]), &space).unwrap();
        let neg = models(&KnowledgeBase::new(vec![f.negate()]), &space).unwrap();
        prop_assert_eq!(pos.len() + neg.len(), space.len());
        for w in &pos {
            prop_assert!(!neg.contains(w));
        }
    }

    #[test]
    fn full_satisfaction_means_model(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = gen::rng(seed);
        let space = gen::space(n);
        let kb = gen::kb(&mut rng, &space, 5);
        let ms = models(&kb, &space).unwrap();
        for w in space.worlds() {
            let full = satisfied_count(&kb, &w).unwrap() == kb.len();
            prop_assert_eq!(full, ms.contains(&w));
            let by_eval = kb.iter().all(|f| evaluate(f, &w).unwrap());
            prop_assert_eq!(full, by_eval);
        }
        let support = max_support_worlds(&kb, &space).unwrap();
        prop_assert!(!support.is_empty());
        if !ms.is_empty() {
            prop_assert_eq!(support, ms);
        }
    }

    #[test]
    fn kolmogorov_and_negation(seed in any::<u64>(), n in 1usize..=3) {
        let (mut rng, m) = model(seed, n);
        let a = gen::formula(&mut rng, m.space(), 3);
        let b = gen::formula(&mut rng, m.space(), 3);
        for i in [false, true] {
            let pa = truth_probability(&a, i, &m).unwrap();
            prop_assert!(!pa.is_negative());
            let or = truth_probability(&Formula::or(a.clone(), b.clone()), i, &m).unwrap();
            let and = truth_probability(&Formula::and(a.clone(), b.clone()), i, &m).unwrap();
            let pb = truth_probability(&b, i, &m).unwrap();
            prop_assert_eq!(or, pa.clone() + pb - and);
        }
        let p0 = truth_probability(&a, false, &m).unwrap();
        let p1 = truth_probability(&a, true, &m).unwrap();
        prop_assert_eq!(p0.clone() + p1.clone(), BigRational::one());
        prop_assert_eq!(p0, truth_probability(&a.negate(), true, &m).unwrap());
        prop_assert_eq!(p1, marginal(&a, &m).unwrap());
    }

    #[test]
    fn predictive_of_formula_and_negation_sum_to_one(seed in any::<u64>(), n in 1usize..=3) {
        let (mut rng, m) = model(seed, n);
        let kb = gen::kb(&mut rng, m.space(), 4);
        let f = gen::formula(&mut rng, m.space(), 3);
        let p = predictive(&f, &kb, &m).unwrap();
        let np = predictive(&f.negate(), &kb, &m).unwrap();
        prop_assert_eq!(p.is_defined(), np.is_defined());
        if let (Some(x), Some(y)) = (p.probability(), np.probability()) {
            prop_assert_eq!(x + y, BigRational::one());
        }
    }

    #[test]
    fn compound_formulas_are_conditionally_independent(seed in any::<u64>(), n in 1usize..=4) {
        let (mut rng, m) = model(seed, n);
        let a = gen::formula(&mut rng, m.space(), 3);
        let b = gen::formula(&mut rng, m.space(), 3);
        let pair = KnowledgeBase::new(vec![a.clone(), b.clone()]);
        for w in m.space().worlds() {
            let joint = set_likelihood(&pair, &w, &m.noise).unwrap();
            let product = likelihood(&a, &w, &m.noise).unwrap() * likelihood(&b, &w, &m.noise).unwrap();
            prop_assert_eq!(joint, product);
        }
    }

    #[test]
    fn sharp_posterior_bounds_map_error(seed in any::<u64>(), n in 1usize..=3) {
        let (mut rng, m) = model(seed, n);
        let kb = gen::kb(&mut rng, m.space(), 4);
        let f = gen::formula(&mut rng, m.space(), 3);
        let Some(post) = posterior(&kb, &m).unwrap() else { return Ok(()) };
        let top = post.argmax()[0];
        let eps = BigRational::one() - post.mass(top).clone();
        let p = predictive(&f, &kb, &m).unwrap().probability().unwrap().clone();
        let l = likelihood(&f, &m.space().world(top), &m.noise).unwrap();
        prop_assert!((p - l).abs() <= eps * q(2, 1));
    }

    #[test]
    fn contradiction_leaves_the_prior_marginal(seed in any::<u64>(), n in 1usize..=4) {
        let (mut rng, m) = model(seed, n);
        let a = gen::formula(&mut rng, m.space(), 3);
        let b = gen::formula(&mut rng, m.space(), 3);
        let contra = KnowledgeBase::new(vec![a.clone(), a.negate()]);
        let p = paraconsistent_predictive(&contra, &b, &m.prior).unwrap();
        prop_assert_eq!(p, paraconsistent_predictive(&KnowledgeBase::empty(), &b, &m.prior).unwrap());
    }

    #[test]
    fn paraconsistent_at_one_is_support_inclusion(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = gen::rng(seed);
        let space = gen::space(n);
        let kb = gen::kb(&mut rng, &space, 5);
        let f = gen::formula(&mut rng, &space, 3);
        let uniform = WorldDistribution::<BigRational>::uniform(space.clone());
        let v = paraconsistent_entails(&kb, &f, &Threshold::one(), &uniform).unwrap();
        let fm = models(&KnowledgeBase::new(vec![f]), &space).unwrap();
        let inclusion = max_support_worlds(&kb, &space).unwrap().iter().all(|w| fm.contains(w));
        prop_assert_eq!(v.holds, inclusion);
    }

    #[test]
    fn preference_priors_preserve_order(seed in any::<u64>(), n in 1usize..=4, density in 0.0f64..1.0) {
        let mut rng = gen::rng(seed);
        let ps = gen::preference(&mut rng, &gen::space(n), density);
        for scheme in [RankWeighting::BelowCount, RankWeighting::LinearExtension] {
            let prior = prior_from_preference::<BigRational>(&ps, scheme);
            prop_assert!(is_order_preserving(&ps, &prior));
        }
        prop_assert!(is_order_preserving(&ps, &gen::order_preserving_prior(&mut rng, &ps)));
    }
}

#[test]
fn classical_explosion_from_contradiction() {
    let space = gen::space(2);
    let mut sig = space.signature().clone();
    let kb = KnowledgeBase::parse_all(&["b", "!b"], &mut sig).unwrap();
    let a = parse_formula("a", &mut sig).unwrap();
    assert!(classical_entails(&kb, &a, &space).unwrap());
    assert!(classical_entails(&kb, &a.negate(), &space).unwrap());
}

#[test]
fn rain_polynomial_at_mu_point_eight() {
    let space = gen::space(2);
    let prior = WorldDistribution::new(space.clone(), vec![q(2, 5), q(1, 5), q(1, 10), q(3, 10)]).unwrap();
    let mu = q(4, 5);
    let m = LogicalModel::new(prior.clone(), NoiseParam::new(mu.clone()).unwrap());
    let mut sig = space.signature().clone();
    let kb = KnowledgeBase::parse_all(&["b"], &mut sig).unwrap();
    let a = parse_formula("a", &mut sig).unwrap();
    // Independent summation: likelihoods written out per world (a, b).
    let mut num = BigRational::zero();
    let mut den = BigRational::zero();
    for (i, (wa, wb)) in [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .enumerate()
    {
        let f = |t: bool| if t { mu.clone() } else { BigRational::one() - mu.clone() };
        let joint = f(wb) * prior.mass(i).clone();
        num += f(wa) * joint.clone();
        den += joint;
    }
    let p = predictive(&a, &kb, &m).unwrap();
    assert_eq!(p.probability().unwrap(), &(num / den));
    // Closed form (0.4μ² − 0.5μ + 0.4) / 0.5.
    let closed = (q(2, 5) * mu.clone() * mu.clone() - q(1, 2) * mu + q(2, 5)) / q(1, 2);
    assert_eq!(p.probability().unwrap(), &closed);
}

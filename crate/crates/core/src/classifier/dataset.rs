use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::schema::{ResolvedBin, SchemaSpec};
use crate::error::{Error, Result};

/// Category used for empty cells.
pub const MISSING: &str = "?";

/// Code reserved for a value never seen when the encoding was built. It
/// matches no training world.
pub const UNSEEN: u32 = 0;

/// One column's value map: category `values[c - 1]` has integer code `c`.
/// Codes are assigned in first-appearance order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnCodec {
    pub name: String,
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin: Option<ResolvedBin>,
    #[serde(skip)]
    lookup: HashMap<String, u32>,
}

impl ColumnCodec {
    fn new(name: &str, bin: Option<ResolvedBin>) -> Self {
        ColumnCodec {
            name: name.to_string(),
            values: Vec::new(),
            bin,
            lookup: HashMap::new(),
        }
    }

    pub(crate) fn rebuild_lookup(&mut self) {
        self.lookup = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32 + 1))
            .collect();
    }

    fn intern(&mut self, value: String) -> u32 {
        if let Some(&c) = self.lookup.get(&value) {
            return c;
        }
        self.values.push(value.clone());
        let c = self.values.len() as u32;
        self.lookup.insert(value, c);
        c
    }

    /// Integer code of a category, [`UNSEEN`] if it was never observed.
    pub fn code(&self, value: &str) -> u32 {
        self.lookup.get(value).copied().unwrap_or(UNSEEN)
    }

    pub fn value(&self, code: u32) -> Option<&str> {
        code.checked_sub(1)
            .and_then(|i| self.values.get(i as usize))
            .map(String::as_str)
    }

    /// Maps a raw cell to its category: trims, turns blanks into
    /// [`MISSING`] and applies the column's binning.
    pub fn categorize(&self, raw: &str, row: usize) -> Result<String> {
        let t = raw.trim();
        if t.is_empty() {
            return Ok(MISSING.to_string());
        }
        match &self.bin {
            None => Ok(t.to_string()),
            Some(bin) => {
                let x: f64 = t.parse().map_err(|_| Error::MalformedRow {
                    row,
                    reason: format!("column `{}`: `{t}` is not numeric", self.name),
                })?;
                if !x.is_finite() {
                    return Err(Error::MalformedRow {
                        row,
                        reason: format!("column `{}`: `{t}` is not finite", self.name),
                    });
                }
                Ok(bin.bin(x).to_string())
            }
        }
    }
}

/// Everything needed to turn a raw record into atoms: attribute columns in
/// order, the goal column and its positive value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Encoding {
    pub attributes: Vec<ColumnCodec>,
    pub goal: ColumnCodec,
    pub positive: String,
    #[serde(default)]
    pub id: Option<String>,
}

impl Encoding {
    pub(crate) fn rebuild_lookups(&mut self) {
        for c in &mut self.attributes {
            c.rebuild_lookup();
        }
        self.goal.rebuild_lookup();
    }

    pub fn attribute_names(&self) -> impl Iterator<Item = &str> {
        self.attributes.iter().map(|c| c.name.as_str())
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|c| c.name == name)
    }

    /// Ground atom for the predicted goal, e.g. `Survived=1`.
    pub fn goal_atom(&self) -> String {
        format!("{}={}", self.goal.name, self.positive)
    }

    /// Encodes a record given as `(column, raw value)` pairs. Columns that
    /// are not attributes are ignored; a missing attribute column is an
    /// error.
    pub fn encode_attributes<'a>(
        &self,
        record: impl IntoIterator<Item = (&'a str, &'a str)>,
        row: usize,
    ) -> Result<Vec<u32>> {
        let mut codes: Vec<Option<u32>> = vec![None; self.attributes.len()];
        for (col, raw) in record {
            if let Some(i) = self.attribute_index(col) {
                let codec = &self.attributes[i];
                codes[i] = Some(codec.code(&codec.categorize(raw, row)?));
            }
        }
        codes
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::MissingColumn(self.attributes[i].name.clone())))
            .collect()
    }

    /// Encodes every record of a CSV file with this (fixed) encoding.
    /// Unseen categories become [`UNSEEN`]. The goal column is optional
    /// unless `require_goal`; when absent, rows carry goal [`UNSEEN`].
    pub fn read_rows(&self, reader: impl Read, require_goal: bool) -> Result<Vec<DataRow>> {
        let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let goal_col = header.iter().position(|h| *h == self.goal.name);
        if require_goal && goal_col.is_none() {
            return Err(Error::MissingColumn(self.goal.name.clone()));
        }
        let id_col = self.id.as_ref().and_then(|id| header.iter().position(|h| h == id));
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let row = i + 1;
            if rec.len() != header.len() {
                return Err(Error::MalformedRow {
                    row,
                    reason: format!("{} fields, header has {}", rec.len(), header.len()),
                });
            }
            let values = self.encode_attributes(header.iter().map(String::as_str).zip(rec.iter()), row)?;
            let (goal, positive) = match goal_col {
                Some(c) => {
                    let g = rec[c].trim();
                    (self.goal.code(g), g == self.positive)
                }
                None => (UNSEEN, false),
            };
            rows.push(DataRow {
                id: id_col.map_or_else(|| row.to_string(), |c| rec[c].trim().to_string()),
                values,
                goal,
                positive,
            });
        }
        if rows.is_empty() {
            return Err(Error::EmptyDataset);
        }
        Ok(rows)
    }

    /// `Attr=value` atoms of an encoded attribute vector. Unseen codes
    /// render as `Attr=<unseen>`.
    pub fn attribute_atoms(&self, codes: &[u32]) -> Vec<String> {
        self.attributes
            .iter()
            .zip(codes)
            .map(|(c, &code)| format!("{}={}", c.name, c.value(code).unwrap_or("<unseen>")))
            .collect()
    }
}

/// One datum `(Δ, α)`: an integer code per attribute column and the goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataRow {
    pub id: String,
    pub values: Vec<u32>,
    pub goal: u32,
    /// Whether the goal is the positive value.
    pub positive: bool,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub encoding: Encoding,
    pub rows: Vec<DataRow>,
}

impl Dataset {
    pub fn load_csv(path: &Path, spec: &SchemaSpec) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(file, spec)
    }

    pub fn from_csv_str(text: &str, spec: &SchemaSpec) -> Result<Self> {
        Self::from_reader(text.as_bytes(), spec)
    }

    pub fn from_reader(reader: impl Read, spec: &SchemaSpec) -> Result<Self> {
        spec.validate()?;
        let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let find = |name: &str| {
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        let goal_col = find(&spec.goal)?;
        let id_col = spec.id.as_deref().map(find).transpose()?;
        for name in spec.drop.iter().chain(spec.bins.keys()) {
            find(name)?;
        }

        let mut records = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != header.len() {
                return Err(Error::MalformedRow {
                    row: i + 1,
                    reason: format!("{} fields, header has {}", rec.len(), header.len()),
                });
            }
            records.push(rec);
        }
        if records.is_empty() {
            return Err(Error::EmptyDataset);
        }

        let attr_cols: Vec<usize> = (0..header.len()).filter(|&j| !spec.excludes(&header[j])).collect();
        let mut attributes = Vec::with_capacity(attr_cols.len());
        for &j in &attr_cols {
            let name = &header[j];
            let bin = match spec.bins.get(name) {
                None => None,
                Some(rule) => {
                    let mut xs = Vec::new();
                    for (i, rec) in records.iter().enumerate() {
                        let t = rec[j].trim();
                        if t.is_empty() {
                            continue;
                        }
                        xs.push(t.parse::<f64>().map_err(|_| Error::MalformedRow {
                            row: i + 1,
                            reason: format!("column `{name}`: `{t}` is not numeric"),
                        })?);
                    }
                    Some(ResolvedBin::resolve(rule, &xs))
                }
            };
            attributes.push(ColumnCodec::new(name, bin));
        }
        let mut goal = ColumnCodec::new(&spec.goal, None);

        let mut rows = Vec::with_capacity(records.len());
        for (i, rec) in records.iter().enumerate() {
            let row = i + 1;
            let mut values = Vec::with_capacity(attr_cols.len());
            for (codec, &j) in attributes.iter_mut().zip(&attr_cols) {
                let cat = codec.categorize(&rec[j], row)?;
                values.push(codec.intern(cat));
            }
            let g = rec[goal_col].trim();
            if g.is_empty() {
                return Err(Error::MalformedRow {
                    row,
                    reason: format!("goal `{}` is empty", spec.goal),
                });
            }
            let positive = g == spec.positive;
            let goal_code = goal.intern(g.to_string());
            let id = match id_col {
                Some(c) => rec[c].trim().to_string(),
                None => row.to_string(),
            };
            rows.push(DataRow {
                id,
                values,
                goal: goal_code,
                positive,
            });
        }

        Ok(Dataset {
            encoding: Encoding {
                attributes,
                goal,
                positive: spec.positive.clone(),
                id: spec.id.clone(),
            },
            rows,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn select(&self, indices: &[usize]) -> Vec<DataRow> {
        indices.iter().map(|&i| self.rows[i].clone()).collect()
    }

    /// `Δ` of a row as ground atoms.
    pub fn attribute_atoms(&self, row: &DataRow) -> Vec<String> {
        self.encoding.attribute_atoms(&row.values)
    }

    /// `α` of a row as a ground atom.
    pub fn goal_atom(&self, row: &DataRow) -> String {
        format!(
            "{}={}",
            self.encoding.goal.name,
            self.encoding.goal.value(row.goal).unwrap_or("<unseen>")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "id,class,sex,age,y\n1,3,male,22,0\n2,1,female,38,1\n3,3,female,,1\n";

    fn spec() -> SchemaSpec {
        let mut s = SchemaSpec::new("y");
        s.id = Some("id".into());
        s
    }

    #[test]
    fn encodes_first_appearance() {
        let ds = Dataset::from_csv_str(CSV, &spec()).unwrap();
        assert_eq!(ds.len(), 3);
        let names: Vec<_> = ds.encoding.attribute_names().collect();
        assert_eq!(names, ["class", "sex", "age"]);
        assert_eq!(ds.rows[0].values, [1, 1, 1]);
        assert_eq!(ds.rows[1].values, [2, 2, 2]);
        assert_eq!(ds.rows[2].values, [1, 2, 3]);
        assert_eq!(ds.attribute_atoms(&ds.rows[2]), ["class=3", "sex=female", "age=?"]);
        assert_eq!(ds.goal_atom(&ds.rows[0]), "y=0");
        assert!(ds.rows[1].positive && !ds.rows[0].positive);
        assert_eq!(ds.rows[1].id, "2");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Dataset::from_csv_str("a,b\n1,2\n", &SchemaSpec::new("y")),
            Err(Error::MissingColumn(c)) if c == "y"
        ));
        assert!(matches!(
            Dataset::from_csv_str("a,y\n", &SchemaSpec::new("y")),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            Dataset::from_csv_str("a,y\n1,0\n1\n", &SchemaSpec::new("y")),
            Err(Error::MalformedRow { row: 2, .. })
        ));
        let mut s = SchemaSpec::new("y");
        s.bins.insert("a".into(), super::super::BinRule::Quantile { bins: 2 });
        assert!(matches!(
            Dataset::from_csv_str("a,y\n1,0\nx,1\n", &s),
            Err(Error::MalformedRow { row: 2, .. })
        ));
    }

    #[test]
    fn single_row() {
        let ds = Dataset::from_csv_str("a,y\nz,1\n", &SchemaSpec::new("y")).unwrap();
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn unseen_values_encode_to_zero() {
        let ds = Dataset::from_csv_str(CSV, &spec()).unwrap();
        let codes = ds
            .encoding
            .encode_attributes([("class", "9"), ("sex", "male"), ("age", "")], 1)
            .unwrap();
        assert_eq!(codes, [UNSEEN, 1, 3]);
        assert!(matches!(
            ds.encoding.encode_attributes([("class", "3")], 1),
            Err(Error::MissingColumn(_))
        ));
    }

    #[test]
    fn read_rows_with_fixed_encoding() {
        let ds = Dataset::from_csv_str(CSV, &spec()).unwrap();
        let rows = ds
            .encoding
            .read_rows("age,sex,class,id\n38,male,2,7\n".as_bytes(), false)
            .unwrap();
        assert_eq!(rows[0].values, [UNSEEN, 1, 2]);
        assert_eq!(rows[0].id, "7");
        assert_eq!(rows[0].goal, UNSEEN);
        assert!(matches!(
            ds.encoding.read_rows("age,sex,class\n38,male,2\n".as_bytes(), true),
            Err(Error::MissingColumn(c)) if c == "y"
        ));
    }
}

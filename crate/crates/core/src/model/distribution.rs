use std::path::Path;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{read_to_string, Error, Result};
use crate::logic::{PossibleWorld, WorldSpace};
use crate::prob::{in_unit_interval, parse_probability, Prob, FLOAT_TOLERANCE};

/// Categorical distribution `(φ_1, …, φ_N)` over the worlds of a space.
#[derive(Debug, Clone)]
pub struct WorldDistribution<P> {
    space: WorldSpace,
    phi: Vec<P>,
}

impl<P: Prob> WorldDistribution<P> {
    /// Validates length, range and normalisation (exact for rationals,
    /// within 1e-12 for floats).
    pub fn new(space: WorldSpace, phi: Vec<P>) -> Result<Self> {
        if phi.len() != space.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for {} worlds",
                phi.len(),
                space.len()
            )));
        }
        if let Some(bad) = phi.iter().find(|p| !in_unit_interval(*p)) {
            return Err(Error::InvalidProbability(bad.render()));
        }
        let total = sum(phi.iter().cloned());
        if !total.approx_eq(&P::one()) {
            return Err(Error::NotNormalized(total.render()));
        }
        Ok(WorldDistribution { space, phi })
    }

    pub fn uniform(space: WorldSpace) -> Self {
        let n = space.len();
        let each = P::from_rational(&BigRational::new(1.into(), (n as u64).into()));
        WorldDistribution {
            phi: vec![each; n],
            space,
        }
    }

    /// Normalises non-negative weights. Fails if they sum to zero.
    pub fn from_weights(space: WorldSpace, weights: Vec<P>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for {} worlds",
                weights.len(),
                space.len()
            )));
        }
        if weights.iter().any(|w| *w < P::zero()) {
            return Err(Error::InvalidDistribution("negative weight".into()));
        }
        let total = sum(weights.iter().cloned());
        if total.is_zero() {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        let phi = weights.into_iter().map(|w| w / total.clone()).collect();
        Ok(WorldDistribution { space, phi })
    }

    pub(crate) fn from_parts_unchecked(space: WorldSpace, phi: Vec<P>) -> Self {
        WorldDistribution { space, phi }
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    pub fn phi(&self) -> &[P] {
        &self.phi
    }

    pub fn mass(&self, index: usize) -> &P {
        &self.phi[index]
    }

    pub fn probability(&self, w: &PossibleWorld) -> Result<&P> {
        if *w.signature() != *self.space.signature() {
            return Err(Error::SpaceMismatch("world from a different signature".into()));
        }
        Ok(&self.phi[w.index()])
    }

    /// Indices of the worlds carrying maximal mass.
    pub fn argmax(&self) -> Vec<usize> {
        argmax_indices(&self.phi)
    }

    pub fn to_float(&self) -> WorldDistribution<f64> {
        WorldDistribution {
            space: self.space.clone(),
            phi: self.phi.iter().map(|p| p.to_f64()).collect(),
        }
    }
}

impl WorldDistribution<BigRational> {
    /// Parses the prior CSV format:
    ///
    /// ```text
    /// # atoms: rain wet
    /// world,phi
    /// 00,0.4
    /// 01,1/5
    /// ```
    ///
    /// Every world must be listed exactly once. Input whose sum is within
    /// 1e-12 of one is rescaled to sum to exactly one; anything further off
    /// is rejected.
    pub fn parse_csv(text: &str, space: &WorldSpace) -> Result<Self> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(body.as_bytes());
        let headers = rdr.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        let (wi, pi) = (col("world")?, col("phi")?);
        let mut phi: Vec<Option<BigRational>> = vec![None; space.len()];
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let malformed = |reason: String| Error::MalformedRow { row: row + 1, reason };
            let world = space
                .parse_world(rec.get(wi).unwrap_or(""))
                .map_err(|e| malformed(e.to_string()))?;
            let p = parse_probability(rec.get(pi).unwrap_or("")).map_err(|e| malformed(e.to_string()))?;
            let slot = &mut phi[world.index()];
            if slot.is_some() {
                return Err(malformed(format!("world {world} listed twice")));
            }
            *slot = Some(p);
        }
        let missing: Vec<String> = phi
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| space.world(i).bitstring())
            .collect();
        if !missing.is_empty() {
            return Err(Error::InvalidDistribution(format!(
                "no probability for world(s) {}",
                missing.join(", ")
            )));
        }
        let phi: Vec<BigRational> = phi.into_iter().map(Option::unwrap).collect();
        let total = sum(phi.iter().cloned());
        let gap = Prob::to_f64(&(total.clone() - BigRational::one())).abs();
        if gap > FLOAT_TOLERANCE {
            return Err(Error::NotNormalized(total.render()));
        }
        WorldDistribution::from_weights(space.clone(), phi)
    }

    pub fn load_csv(path: &Path, space: &WorldSpace) -> Result<Self> {
        WorldDistribution::parse_csv(&read_to_string(path)?, space)
    }

    pub fn to_csv(&self) -> String {
        let names: Vec<&str> = self.space.signature().atoms().iter().map(|a| a.name()).collect();
        let mut out = format!("# atoms: {}\nworld,phi\n", names.join(" "));
        for (i, p) in self.phi.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.space.world(i).bitstring(), p.render()));
        }
        out
    }
}

/// Reads the optional `# atoms: a b c` header used by the prior and
/// preference file formats.
pub fn atoms_header(text: &str) -> Option<Vec<String>> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix('#')?.trim().strip_prefix("atoms:")?;
        Some(
            rest.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
        )
    })
}

/// Left-to-right sum; float mode relies on this fixed order.
pub(crate) fn sum<P: Prob>(it: impl IntoIterator<Item = P>) -> P {
    it.into_iter().fold(P::zero(), |acc, x| acc + x)
}

pub(crate) fn argmax_indices<P: Prob>(values: &[P]) -> Vec<usize> {
    let mut best: Option<&P> = None;
    let mut out = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match best {
            Some(b) if v < b => {}
            Some(b) if v == b => out.push(i),
            _ => {
                best = Some(v);
                out.clear();
                out.push(i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn space() -> WorldSpace {
        WorldSpace::over(["rain", "wet"]).unwrap()
    }

    #[test]
    fn table1_csv() {
        let text = "# atoms: rain wet\nworld,phi\n00,0.4\n01,0.2\n10,0.1\n11,3/10\n";
        assert_eq!(atoms_header(text).unwrap(), ["rain", "wet"]);
        let d = WorldDistribution::parse_csv(text, &space()).unwrap();
        assert_eq!(d.phi(), &[q(2, 5), q(1, 5), q(1, 10), q(3, 10)]);
        let again = WorldDistribution::parse_csv(&d.to_csv(), &space()).unwrap();
        assert_eq!(again.phi(), d.phi());
    }

    #[test]
    fn csv_validation() {
        let s = space();
        let missing = "world,phi\n00,0.5\n01,0.5\n";
        assert!(matches!(
            WorldDistribution::parse_csv(missing, &s),
            Err(Error::InvalidDistribution(_))
        ));
        let unnormalized = "world,phi\n00,0.5\n01,0.5\n10,0.5\n11,0\n";
        assert!(matches!(
            WorldDistribution::parse_csv(unnormalized, &s),
            Err(Error::NotNormalized(_))
        ));
        let dup = "world,phi\n00,0.25\n00,0.25\n10,0.25\n11,0.25\n";
        assert!(matches!(
            WorldDistribution::parse_csv(dup, &s),
            Err(Error::MalformedRow { row: 2, .. })
        ));
        let no_col = "w,phi\n00,1\n";
        assert!(matches!(
            WorldDistribution::parse_csv(no_col, &s),
            Err(Error::MissingColumn(_))
        ));
    }

    #[test]
    fn near_normalized_float_text_is_rescaled_exactly() {
        let s = WorldSpace::over(["a"]).unwrap();
        let text = "world,phi\n0,0.3333333333333333\n1,0.6666666666666667\n";
        let d = WorldDistribution::parse_csv(text, &s).unwrap();
        assert_eq!(sum(d.phi().iter().cloned()), BigRational::one());
    }

    #[test]
    fn new_checks_invariants() {
        let s = space();
        assert!(WorldDistribution::new(s.clone(), vec![q(1, 4); 4]).is_ok());
        assert!(WorldDistribution::new(s.clone(), vec![q(1, 4); 3]).is_err());
        assert!(WorldDistribution::new(s.clone(), vec![q(1, 2), q(1, 2), q(1, 2), q(-1, 2)]).is_err());
        assert!(WorldDistribution::<f64>::new(s.clone(), vec![0.1, 0.2, 0.3, 0.4 + 1e-13]).is_ok());
        assert!(WorldDistribution::<f64>::new(s, vec![0.1, 0.2, 0.3, 0.41]).is_err());
    }

    #[test]
    fn argmax_keeps_ties() {
        assert_eq!(argmax_indices(&[q(1, 3), q(1, 6), q(1, 3), q(1, 6)]), vec![0, 2]);
        assert_eq!(argmax_indices::<f64>(&[0.1, 0.5, 0.4]), vec![1]);
    }
}

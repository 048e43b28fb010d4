//! Generating functions read off from brute-force enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, SeriesError};
use crate::family::{enumerate, Family, FamilyTag};
use crate::partition::{sl_count, stats, Partition};
use crate::poly::{IntPoly, Var};
use crate::series::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Statistic {
    /// `ℓ`
    Length,
    /// `ℓ_d`
    Distinct,
    /// `ℓ_r`
    Repeated,
    Sol,
    /// `sl_{k,a}`
    Sl { k: u32, a: u32 },
}

impl Statistic {
    pub fn eval(self, p: &Partition) -> Result<i64, Error> {
        let s = stats(p);
        Ok(match self {
            Statistic::Length => s.length as i64,
            Statistic::Distinct => s.distinct as i64,
            Statistic::Repeated => s.repeated as i64,
            Statistic::Sol => s.sol.ok_or_else(|| Error::NotStrict(p.clone()))? as i64,
            Statistic::Sl { k, a } => sl_count(p, k, a)? as i64,
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Length => f.write_str("l"),
            Statistic::Distinct => f.write_str("l_d"),
            Statistic::Repeated => f.write_str("l_r"),
            Statistic::Sol => f.write_str("sol"),
            Statistic::Sl { k, a } => write!(f, "sl_{k},{a}"),
        }
    }
}

/// Exponent of each variable as an integer combination of statistics,
/// e.g. `x^{ℓ - 3ℓ_r}` is `(X, [(1, Length), (-3, Repeated)])`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMap {
    pub entries: Vec<(Var, Vec<(i64, Statistic)>)>,
}

impl WeightMap {
    pub fn new() -> Self {
        WeightMap::default()
    }

    /// `var^{stat}`.
    pub fn with(self, stat: Statistic, var: Var) -> Self {
        self.with_combination(var, vec![(1, stat)])
    }

    pub fn with_combination(mut self, var: Var, combo: Vec<(i64, Statistic)>) -> Self {
        self.entries.push((var, combo));
        self
    }

    /// Monomial weight of one partition.
    pub fn weigh(&self, p: &Partition) -> Result<IntPoly, Error> {
        let mut mono = [0u32; 4];
        for (var, combo) in &self.entries {
            let mut d = 0;
            for (c, stat) in combo {
                d += c * stat.eval(p)?;
            }
            let d = u32::try_from(d)
                .map_err(|_| Error::BadParams(format!("negative exponent of {} at {p}", var.name())))?;
            mono[var.index()] += d;
        }
        Ok(IntPoly::monomial(mono, 1))
    }

    fn check_defined_on(&self, family: &Family) -> Result<(), Error> {
        for (_, combo) in &self.entries {
            for (_, stat) in combo {
                let ok = match stat {
                    Statistic::Sol => matches!(
                        family,
                        Family::Strict | Family::OddDistinct | Family::Rr | Family::Rr2 | Family::DKa { .. }
                    ),
                    Statistic::Sl { k, a } => matches!(family, Family::DKa { k: fk, a: fa } if fk == k && fa == a),
                    _ => true,
                };
                if !ok {
                    return Err(Error::BadParams(format!("statistic {stat} is not defined on {family}")));
                }
            }
        }
        Ok(())
    }
}

/// `Σ_{n <= N} Σ_{λ in family, |λ| = n} weight(λ) q^n`.
pub fn gf_enumerate(tag: &FamilyTag, weights: &WeightMap, order: u32) -> Result<QSeries, SeriesError> {
    tag.validate()?;
    weights.check_defined_on(&tag.family)?;
    let mut terms = Vec::new();
    for n in 0..=order {
        let mut c = IntPoly::zero();
        for p in enumerate(n, tag)? {
            c.add_assign_ref(&weights.weigh(&p)?);
        }
        terms.push((i64::from(n), c));
    }
    QSeries::from_terms(terms, i64::from(order))
}

//! θ on pairs `(λ, μ)` of a labeled strict partition with `j` parts and a
//! strict partition with all parts at least `j + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::psi::OrbitTable;
use super::Extended;
use crate::error::{Error, Result};
use crate::family::{enumerate, Family};
use crate::partition::{runs, Partition, SequenceBlock};
use crate::poly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledPart {
    pub part: u32,
    pub label: Label,
}

impl fmt::Display for LabeledPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.label == Label::X { 'x' } else { 'y' };
        write!(f, "{}{l}", self.part)
    }
}

/// Strictly increasing parts, each labeled `x` or `y`; `x` is allowed only
/// when the next part is at least 2 larger (the last part is always free).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LabeledPartition(Vec<LabeledPart>);

impl LabeledPartition {
    pub fn empty() -> Self {
        LabeledPartition(Vec::new())
    }

    pub fn new(parts: Vec<LabeledPart>) -> Result<Self> {
        for (k, w) in parts.iter().enumerate() {
            if w.part == 0 {
                return Err(Error::InvalidLabels("parts must be positive".into()));
            }
            if let Some(next) = parts.get(k + 1) {
                if next.part <= w.part {
                    return Err(Error::InvalidLabels(format!("parts {} and {} are not increasing", w.part, next.part)));
                }
                if w.label == Label::X && next.part - w.part < 2 {
                    return Err(Error::InvalidLabels(format!("{w} is followed by {}", next.part)));
                }
            }
        }
        Ok(LabeledPartition(parts))
    }

    /// Every part labeled `y`.
    pub fn unlabeled(p: &Partition) -> Result<Self> {
        Self::new(p.parts().iter().map(|&part| LabeledPart { part, label: Label::Y }).collect())
    }

    /// The canonical labeling of a strict partition: the largest part of each
    /// odd-length sequence gets `x`, everything else `y`.
    pub fn canonical(p: &Partition) -> Result<Self> {
        if !p.is_strict() {
            return Err(Error::NotStrict(p.clone()));
        }
        let mut out = Vec::with_capacity(p.len());
        for b in runs(p.parts()) {
            for v in b.start..=b.end() {
                let x = v == b.end() && b.length % 2 == 1;
                out.push(LabeledPart { part: v, label: if x { Label::X } else { Label::Y } });
            }
        }
        Self::new(out)
    }

    pub fn parts(&self) -> &[LabeledPart] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|w| u64::from(w.part)).sum()
    }

    pub fn partition(&self) -> Partition {
        Partition::from_unsorted(self.0.iter().map(|w| w.part).collect())
    }

    /// `x^{#x} y^{#y}`.
    pub fn monomial(&self) -> IntPoly {
        let nx = self.0.iter().filter(|w| w.label == Label::X).count() as u32;
        IntPoly::monomial([nx, self.0.len() as u32 - nx, 0, 0], 1)
    }
}

impl<'de> Deserialize<'de> for LabeledPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LabeledPartition::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LabeledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(LabeledPart::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for LabeledPartition {
    type Err = Error;

    /// Accepts `1+2x+3`, `1,2x,3` or `1 2x 3`; missing labels mean `y`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "()" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(|c: char| c == '+' || c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (num, label) = match tok.chars().last() {
                Some('x' | 'X') => (&tok[..tok.len() - 1], Label::X),
                Some('y' | 'Y') => (&tok[..tok.len() - 1], Label::Y),
                _ => (tok, Label::Y),
            };
            let part = num.parse().map_err(|_| Error::InvalidLabels(format!("cannot read labeled part {tok:?}")))?;
            parts.push(LabeledPart { part, label });
        }
        Self::new(parts)
    }
}

/// `(λ, μ)` with `λ` labeled, `j = ℓ(λ)` and `μ` strict with parts `>= j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightedPair {
    pub a: LabeledPartition,
    pub b: Partition,
}

impl WeightedPair {
    pub fn new(a: LabeledPartition, b: Partition) -> Result<Self> {
        if !b.is_strict() {
            return Err(Error::InvalidPair(format!("{b} is not strict")));
        }
        let j = a.len() as u32;
        if let Some(m) = b.smallest().filter(|&m| m < j + 1) {
            return Err(Error::InvalidPair(format!("part {m} of {b} is below {}", j + 1)));
        }
        Ok(WeightedPair { a, b })
    }

    pub fn j(&self) -> usize {
        self.a.len()
    }

    pub fn weight(&self) -> u64 {
        self.a.weight() + self.b.weight()
    }

    /// `x^{#x} y^{#y} (-y)^{ℓ(μ)}`.
    pub fn signed_weight(&self) -> IntPoly {
        let nb = self.b.len() as u32;
        let nx = self.a.0.iter().filter(|w| w.label == Label::X).count() as u32;
        let ny = self.a.len() as u32 - nx;
        IntPoly::monomial([nx, ny + nb, 0, 0], if nb.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl<'de> Deserialize<'de> for WeightedPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: LabeledPartition,
            b: Partition,
        }
        let r = Raw::deserialize(d)?;
        WeightedPair::new(r.a, r.b).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WeightedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceVerdict {
    pub block: SequenceBlock,
    pub bad: bool,
}

/// Sequences of `λ` with verdicts, the L-shape sizes `s_k = λ_k + ℓ - k` and
/// `sfb`, the size at the start of the first bad sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub sequences: Vec<SequenceVerdict>,
    pub sizes: Vec<u64>,
    pub sfb: Extended,
    /// 1-based index of the part starting the first bad sequence.
    pub first_bad: Option<usize>,
}

pub fn bad_sequences(a: &LabeledPartition) -> SequenceReport {
    let l = a.len() as u64;
    let sizes: Vec<u64> = a.0.iter().enumerate().map(|(k, w)| u64::from(w.part) + l - 1 - k as u64).collect();
    let mut sequences = Vec::new();
    let mut first_bad = None;
    let mut idx = 0;
    for block in runs(&a.0.iter().map(|w| w.part).collect::<Vec<_>>()) {
        let last = a.0[idx + block.length as usize - 1].label;
        let bad = (block.length % 2 == 0) == (last == Label::X);
        if bad && first_bad.is_none() {
            first_bad = Some(idx + 1);
        }
        sequences.push(SequenceVerdict { block, bad });
        idx += block.length as usize;
    }
    let sfb = first_bad.map_or(Extended::PosInf, |k| Extended::Finite(sizes[k - 1] as i64));
    SequenceReport { sequences, sizes, sfb, first_bad }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThetaCase {
    Fixed,
    CaseI,
    CaseII,
}

impl fmt::Display for ThetaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaCase::Fixed => "FIXED",
            ThetaCase::CaseI => "CASE_I",
            ThetaCase::CaseII => "CASE_II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaOutcome {
    pub input: WeightedPair,
    pub output: WeightedPair,
    pub case: ThetaCase,
    pub sfb: Extended,
    pub mu1: Extended,
    /// The L-shape removed (Case I) or inserted (Case II), 1-based.
    pub l_shape: Option<usize>,
}

impl fmt::Display for ThetaOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.input)?;
        writeln!(f, "  sfb = {}, mu_1 = {}", self.sfb, self.mu1)?;
        if let Some(l) = self.l_shape {
            let verb = if self.case == ThetaCase::CaseI { "delete" } else { "insert" };
            writeln!(f, "  {verb} L-shape {l}")?;
        }
        write!(f, "{} -> {}", self.case, self.output)
    }
}

pub fn theta(pair: &WeightedPair) -> Result<ThetaOutcome> {
    let pair = WeightedPair::new(pair.a.clone(), pair.b.clone())?;
    let report = bad_sequences(&pair.a);
    let mu1: Extended = pair.b.smallest().into();
    let mu1 = if pair.b.is_empty() { Extended::PosInf } else { mu1 };
    let lam = pair.a.parts();
    let j = lam.len();

    let (a, b, case, l_shape) = if report.sfb == Extended::PosInf && mu1 == Extended::PosInf {
        (pair.a.clone(), pair.b.clone(), ThetaCase::Fixed, None)
    } else if report.sfb < mu1 {
        let k = report.first_bad.expect("finite sfb has a position");
        if lam[k - 1].label != Label::Y {
            return Err(Error::Invariant(format!("first bad sequence of {} starts with an x part", pair.a)));
        }
        let mut beta: Vec<LabeledPart> = lam[..k - 1].to_vec();
        beta.extend(lam[k..].iter().map(|w| LabeledPart { part: w.part - 1, label: w.label }));
        let sfb = report.sfb.finite().expect("finite") as u32;
        let mut gamma = vec![sfb];
        gamma.extend_from_slice(pair.b.parts());
        (LabeledPartition::new(beta)?, Partition::new(gamma)?, ThetaCase::CaseI, Some(k))
    } else {
        let m = pair.b.parts()[0];
        let l = report.sizes.iter().position(|&s| s + 1 >= u64::from(m)).map_or(j + 1, |p| p + 1);
        let mut beta: Vec<LabeledPart> = lam[..l - 1].to_vec();
        let new = i64::from(m) - j as i64 + l as i64 - 1;
        if new < 1 {
            return Err(Error::Invariant(format!("inserting {m} into {} gives part {new}", pair.a)));
        }
        beta.push(LabeledPart { part: new as u32, label: Label::Y });
        beta.extend(lam[l - 1..].iter().map(|w| LabeledPart { part: w.part + 1, label: w.label }));
        let gamma = Partition::new(pair.b.parts()[1..].to_vec())?;
        (LabeledPartition::new(beta)?, gamma, ThetaCase::CaseII, Some(l))
    };
    let output = WeightedPair::new(a, b).map_err(|e| Error::Invariant(format!("theta({pair}) produced an invalid pair: {e}")))?;
    Ok(ThetaOutcome { input: pair, output, case, sfb: report.sfb, mu1, l_shape })
}

/// All labelings of a strict partition that satisfy the `x` gap rule.
fn labelings(p: &Partition) -> Vec<LabeledPartition> {
    let parts = p.parts();
    let mut out = vec![Vec::with_capacity(parts.len())];
    for (k, &v) in parts.iter().enumerate() {
        let free = parts.get(k + 1).is_none_or(|&n| n - v >= 2);
        let mut next = Vec::with_capacity(out.len() * 2);
        for prefix in out {
            if free {
                let mut x: Vec<LabeledPart> = prefix.clone();
                x.push(LabeledPart { part: v, label: Label::X });
                next.push(x);
            }
            let mut y = prefix;
            y.push(LabeledPart { part: v, label: Label::Y });
            next.push(y);
        }
        out = next;
    }
    out.into_iter().map(LabeledPartition).collect()
}

/// Every valid pair of total weight `n`.
pub fn weighted_pairs(n: u32) -> Result<Vec<WeightedPair>> {
    let mut out = Vec::new();
    for w in 0..=n {
        for lam in enumerate(w, &Family::Strict.into())? {
            let floor = lam.len() as u32 + 1;
            let mus: Vec<Partition> =
                enumerate(n - w, &Family::Strict.into())?.filter(|m| m.smallest().is_none_or(|s| s >= floor)).collect();
            for a in labelings(&lam) {
                for mu in &mus {
                    out.push(WeightedPair { a: a.clone(), b: mu.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// Fixed points and two-element orbits of θ at total weight `n`.
pub fn theta_orbits(n: u32) -> Result<OrbitTable<WeightedPair>> {
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for p in weighted_pairs(n)? {
        let out = theta(&p)?;
        match out.case {
            ThetaCase::Fixed => fixed.push(p),
            ThetaCase::CaseI => pairs.push((p, out.output)),
            ThetaCase::CaseII => {}
        }
    }
    fixed.sort();
    pairs.sort();
    Ok(OrbitTable { n, fixed, pairs })
}

//! ψ on the C family: partitions whose repeated parts are pairs of equal
//! parts, with every part size used at most twice and distinct sizes at
//! least 2 apart except around the pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Extended;
use crate::error::{Error, Result};
use crate::family::{enumerate, is_c_member, Family};
use crate::partition::Partition;

/// One entry of a C-partition: a repeated pair `[v, v]` or a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CItem {
    Pair(u32),
    Single(u32),
}

impl CItem {
    pub fn value(self) -> u32 {
        match self {
            CItem::Pair(v) | CItem::Single(v) => v,
        }
    }

    fn weight(self) -> u64 {
        match self {
            CItem::Pair(v) => 2 * u64::from(v),
            CItem::Single(v) => u64::from(v),
        }
    }
}

fn items_of(p: &Partition) -> Vec<CItem> {
    p.multiplicities()
        .into_iter()
        .map(|(v, m)| if m == 2 { CItem::Pair(v) } else { CItem::Single(v) })
        .collect()
}

fn partition_of(items: &[CItem]) -> Partition {
    let mut parts = Vec::with_capacity(items.len() * 2);
    for it in items {
        match *it {
            CItem::Pair(v) => parts.extend([v, v]),
            CItem::Single(v) => parts.push(v),
        }
    }
    Partition::from_unsorted(parts)
}

struct Items<'a>(&'a [CItem]);

impl fmt::Display for Items<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for (k, it) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            match it {
                CItem::Pair(v) => write!(f, "[{v}, {v}]")?,
                CItem::Single(v) => write!(f, "{v}")?,
            }
        }
        Ok(())
    }
}

/// A C-partition with its repeated pairs marked and its landmarks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CState {
    pub items: Vec<CItem>,
    /// Largest repeated part.
    pub lrp: Extended,
    /// Smallest part of the largest even run.
    pub sle: Extended,
    /// Maximal strings of even singletons, consecutive in value (step 2).
    pub even_runs: Vec<Vec<u32>>,
}

impl CState {
    pub fn partition(&self) -> Partition {
        partition_of(&self.items)
    }
}

impl fmt::Display for CState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Items(&self.items).fmt(f)
    }
}

fn not_c(p: &Partition) -> Error {
    Error::NotMember { partition: p.clone(), family: Family::CFamily.to_string() }
}

fn landmarks(items: Vec<CItem>) -> CState {
    let lrp = items.iter().rev().find_map(|it| match it {
        CItem::Pair(v) => Some(*v),
        CItem::Single(_) => None,
    });
    let mut even_runs: Vec<Vec<u32>> = Vec::new();
    let mut open = false;
    for it in &items {
        match *it {
            CItem::Single(v) if v % 2 == 0 => {
                match even_runs.last_mut() {
                    Some(run) if open && run.last() == Some(&(v - 2)) => run.push(v),
                    _ => even_runs.push(vec![v]),
                }
                open = true;
            }
            _ => open = false,
        }
    }
    let sle = even_runs.last().map(|r| r[0]);
    CState { items, lrp: lrp.into(), sle: sle.into(), even_runs }
}

pub fn psi_landmarks(lambda: &Partition) -> Result<CState> {
    if !is_c_member(lambda) {
        return Err(not_c(lambda));
    }
    Ok(landmarks(items_of(lambda)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PsiCase {
    Fixed,
    CaseI,
    CaseII,
}

impl fmt::Display for PsiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiCase::Fixed => "FIXED",
            PsiCase::CaseI => "CASE_I",
            PsiCase::CaseII => "CASE_II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiOp {
    /// The pair moves past the next part, which drops by 2.
    Forward,
    /// The pair `[â, â]` becomes the single part `2â`.
    Merge,
    /// The even part moves below the previous part, which rises by 2.
    Backward,
    /// The even part `b - 2t` becomes a pair.
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiStep {
    pub op: PsiOp,
    pub items: Vec<CItem>,
}

impl fmt::Display for PsiStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8} {}", format!("{:?}", self.op).to_lowercase(), Items(&self.items))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiOutcome {
    pub input: Partition,
    pub output: Partition,
    pub case: PsiCase,
    /// `2â` in Case I, `b/2 - t` in Case II.
    pub landmark: Option<u32>,
    pub steps: Vec<PsiStep>,
}

impl fmt::Display for PsiOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Items(&items_of(&self.input)))?;
        for s in &self.steps {
            writeln!(f, "  {s}")?;
        }
        write!(f, "{} -> {}", self.case, Items(&items_of(&self.output)))
    }
}

pub fn psi(lambda: &Partition) -> Result<PsiOutcome> {
    let state = psi_landmarks(lambda)?;
    let (a, b) = (state.lrp.finite(), state.sle.finite());
    let mut items = state.items;
    let fixed = |items: Vec<CItem>| PsiOutcome {
        input: lambda.clone(),
        output: partition_of(&items),
        case: PsiCase::Fixed,
        landmark: None,
        steps: Vec::new(),
    };
    if a.is_none() && b.is_none() {
        return Ok(fixed(items));
    }
    let pair_idx = items.iter().rposition(|it| matches!(it, CItem::Pair(_)));

    // Case I decision: â = a + k - 1 for the smallest k with a_k >= 2â + 2.
    if let (Some(a), Some(p)) = (a, pair_idx) {
        let tail = &items[p + 1..];
        let mut k = tail.len() + 1;
        for (r, it) in tail.iter().enumerate() {
            let hat = a + r as i64;
            if i64::from(it.value()) >= 2 * hat + 2 {
                k = r + 1;
                break;
            }
        }
        let hat = a + k as i64 - 1;
        if b.is_none_or(|b| 2 * hat >= b - 2) {
            let mut steps = Vec::new();
            for r in 0..k - 1 {
                let at = p + r;
                let passed = items[at + 1].value() - 2;
                items[at] = CItem::Single(passed);
                items[at + 1] = CItem::Pair((a + r as i64 + 1) as u32);
                steps.push(PsiStep { op: PsiOp::Forward, items: items.clone() });
            }
            let merged = (2 * hat) as u32;
            items[p + k - 1] = CItem::Single(merged);
            steps.push(PsiStep { op: PsiOp::Merge, items: items.clone() });
            return finish(lambda, items, PsiCase::CaseI, merged, steps);
        }
    }

    // Case II: walk b down past the parts above the pair while they are large.
    let b = b.ok_or_else(|| Error::Invariant(format!("no even run in {lambda} outside Case I")))?;
    let lo = pair_idx.map_or(0, |p| p + 1);
    let mut idx = items
        .iter()
        .position(|it| *it == CItem::Single(b as u32))
        .ok_or_else(|| Error::Invariant(format!("sle {b} not found in {lambda}")))?;
    let mut cur = b;
    let mut steps = Vec::new();
    while idx > lo {
        let below = i64::from(items[idx - 1].value());
        if below <= cur / 2 - 2 {
            break;
        }
        items[idx] = CItem::Single((below + 2) as u32);
        items[idx - 1] = CItem::Single((cur - 2) as u32);
        cur -= 2;
        idx -= 1;
        steps.push(PsiStep { op: PsiOp::Backward, items: items.clone() });
    }
    if cur < 2 {
        return Err(Error::Invariant(format!("Case II on {lambda} reached an empty split")));
    }
    items[idx] = CItem::Pair((cur / 2) as u32);
    steps.push(PsiStep { op: PsiOp::Split, items: items.clone() });
    finish(lambda, items, PsiCase::CaseII, (cur / 2) as u32, steps)
}

fn finish(lambda: &Partition, items: Vec<CItem>, case: PsiCase, landmark: u32, steps: Vec<PsiStep>) -> Result<PsiOutcome> {
    let output = partition_of(&items);
    let ordered = items.windows(2).all(|w| w[0].value() < w[1].value());
    if !ordered || !is_c_member(&output) || output.weight() != lambda.weight() {
        let trace: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
        return Err(Error::Invariant(format!(
            "psi({lambda}) left the C family at {}; trace: {}",
            Items(&items),
            trace.join(" | ")
        )));
    }
    debug_assert_eq!(items.iter().map(|it| it.weight()).sum::<u64>(), lambda.weight());
    Ok(PsiOutcome { input: lambda.clone(), output, case, landmark: Some(landmark), steps })
}

/// Fixed points and two-element orbits of ψ on C(n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable<T> {
    pub n: u32,
    pub fixed: Vec<T>,
    /// `(Case-I element, Case-II element)`, sorted by the first.
    pub pairs: Vec<(T, T)>,
}

pub fn psi_orbits(n: u32) -> Result<OrbitTable<Partition>> {
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for lam in enumerate(n, &Family::CFamily.into())? {
        let out = psi(&lam)?;
        match out.case {
            PsiCase::Fixed => fixed.push(lam),
            PsiCase::CaseI => pairs.push((lam, out.output)),
            PsiCase::CaseII => {}
        }
    }
    fixed.sort();
    pairs.sort();
    Ok(OrbitTable { n, fixed, pairs })
}

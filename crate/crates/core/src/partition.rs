//! Partitions as weakly increasing part lists, their sequence decomposition,
//! and the statistics used throughout the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as a weakly increasing list of positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts that must already be weakly increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::BadParams(format!("parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadParams(format!("parts must be weakly increasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros (zero padding is never part of the value).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        Partition(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Multiplicity `f_i` of the part size `i`.
    pub fn multiplicity(&self, size: u32) -> usize {
        self.0.iter().filter(|&&p| p == size).count()
    }

    /// `(size, multiplicity)` for each distinct part size, increasing.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((s, m)) if *s == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn stats(&self) -> PartitionStats {
        stats(self)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// A maximal run `start, start+1, ..., start+length-1` of a strict partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceBlock {
    pub start: u32,
    pub length: u32,
}

impl SequenceBlock {
    pub fn end(&self) -> u32 {
        self.start + self.length - 1
    }
}

/// Splits a strict partition into its maximal runs of consecutive parts.
pub fn sequences(p: &Partition) -> Result<Vec<SequenceBlock>> {
    if !p.is_strict() {
        return Err(Error::NotStrict(p.clone()));
    }
    Ok(runs(p.parts()))
}

/// Maximal runs of consecutive integers in a strictly increasing slice.
pub(crate) fn runs(parts: &[u32]) -> Vec<SequenceBlock> {
    let mut out: Vec<SequenceBlock> = Vec::new();
    for &x in parts {
        match out.last_mut() {
            Some(b) if b.end() + 1 == x => b.length += 1,
            _ => out.push(SequenceBlock { start: x, length: 1 }),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    /// `ℓ`: number of parts.
    pub length: usize,
    /// `ℓ_d`: number of distinct part sizes.
    pub distinct: usize,
    /// `ℓ_r`: number of part sizes occurring more than once.
    pub repeated: usize,
    /// Number of odd-length sequences; only defined for strict partitions.
    pub sol: Option<usize>,
    pub blocks: Option<Vec<SequenceBlock>>,
}

pub fn stats(p: &Partition) -> PartitionStats {
    let mult = p.multiplicities();
    let blocks = p.is_strict().then(|| runs(p.parts()));
    PartitionStats {
        length: p.len(),
        distinct: mult.len(),
        repeated: mult.iter().filter(|(_, m)| *m >= 2).count(),
        sol: blocks
            .as_ref()
            .map(|bs| bs.iter().filter(|b| b.length % 2 == 1).count()),
        blocks,
    }
}

/// `sl_{k,a}`: the number of sequences whose length is `a` mod `k`.
///
/// Every sequence length must be congruent to `0` or `a` modulo `k`.
pub fn sl_count(p: &Partition, k: u32, a: u32) -> Result<usize> {
    if !(k > a && a >= 1) {
        return Err(Error::BadParams(format!("need k > a >= 1, got k={k}, a={a}")));
    }
    let blocks = sequences(p)?;
    let mut count = 0;
    for b in &blocks {
        match b.length % k {
            0 => {}
            r if r == a => count += 1,
            _ => {
                return Err(Error::NotMember {
                    partition: p.clone(),
                    family: format!("D_KA({k},{a})"),
                })
            }
        }
    }
    Ok(count)
}

/// Ferrers diagram with the largest part on the top row.
pub fn ferrers(p: &Partition) -> String {
    p.parts()
        .iter()
        .rev()
        .map(|&r| "#".repeat(r as usize))
        .collect::<Vec<_>>()
        .join("\n")
}

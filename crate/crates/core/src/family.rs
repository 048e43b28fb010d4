//! Restricted partition families, membership classification and
//! lexicographic enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{runs, sl_count, Partition};

/// The restricted families studied in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    All,
    /// Distinct parts.
    Strict,
    /// Distinct odd parts.
    OddDistinct,
    /// Parts mutually at least 2 apart.
    Rr,
    /// Parts mutually at least 2 apart and greater than 1.
    Rr2,
    /// Every part is congruent to one of `residues` modulo `m`.
    Mod { m: u32, residues: Vec<u32> },
    EvenParts,
    /// Every part is a multiple of `m`.
    Multiples { m: u32 },
    /// Strict partitions whose sequence lengths are all `0` or `a` mod `k`.
    DKa { k: u32, a: u32 },
    /// Multiplicities at most 2, adjacent distinct sizes at least 2 apart.
    CFamily,
    /// The doubled/tripled gap family with smallest part at least 2.
    WFamily,
}

/// A family together with an optional bound on the number of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_length: Option<usize>,
}

impl From<Family> for FamilyTag {
    fn from(family: Family) -> Self {
        FamilyTag { family, max_length: None }
    }
}

impl FamilyTag {
    pub fn with_max_length(family: Family, max_length: usize) -> Self {
        FamilyTag { family, max_length: Some(max_length) }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.family {
            Family::DKa { k, a } if !(*k > *a && *a >= 1) => {
                Err(Error::BadParams(format!("D_KA needs k > a >= 1, got k={k}, a={a}")))
            }
            Family::Mod { m, residues } => {
                if *m == 0 {
                    Err(Error::BadParams("MOD needs m >= 1".into()))
                } else if let Some(r) = residues.iter().find(|&&r| r >= *m) {
                    Err(Error::BadParams(format!("MOD residue {r} not below m={m}")))
                } else {
                    Ok(())
                }
            }
            Family::Multiples { m: 0 } => Err(Error::BadParams("MULTIPLES needs m >= 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::All => write!(f, "ALL"),
            Family::Strict => write!(f, "STRICT"),
            Family::OddDistinct => write!(f, "ODD_DISTINCT"),
            Family::Rr => write!(f, "RR"),
            Family::Rr2 => write!(f, "RR2"),
            Family::Mod { m, residues } => write!(f, "MOD({m};{residues:?})"),
            Family::EvenParts => write!(f, "EVEN_PARTS"),
            Family::Multiples { m } => write!(f, "MULTIPLES({m})"),
            Family::DKa { k, a } => write!(f, "D_KA({k},{a})"),
            Family::CFamily => write!(f, "C_FAMILY"),
            Family::WFamily => write!(f, "W_FAMILY"),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max_length {
            Some(m) => write!(f, "{} (length <= {m})", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// Result of [`classify`]: membership plus the `(i, j)` block signature
/// for the families that carry one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub member: bool,
    pub indices: Option<(usize, usize)>,
}

impl Verdict {
    const NO: Verdict = Verdict { member: false, indices: None };

    fn yes(indices: Option<(usize, usize)>) -> Self {
        Verdict { member: true, indices }
    }
}

fn gaps_at_least(parts: &[u32], gap: u32) -> bool {
    parts.windows(2).all(|w| w[1] >= w[0] + gap)
}

pub(crate) fn is_c_member(p: &Partition) -> bool {
    let mult = p.multiplicities();
    mult.iter().all(|&(_, m)| m <= 2) && mult.windows(2).all(|w| w[1].0 >= w[0].0 + 2)
}

/// Gap table of the W family, read with `λ_0 = 0`. A repeated part must be
/// followed by its successor, so a trailing repeated pair is rejected.
pub(crate) fn is_w_member(p: &Partition) -> bool {
    let parts = p.parts();
    if parts.first().is_some_and(|&s| s < 2) {
        return false;
    }
    let n = parts.len();
    if n >= 2 && parts[n - 1] == parts[n - 2] {
        return false;
    }
    let mut prev_diff = None;
    let mut prev = 0u32;
    for &x in parts {
        let d = x - prev;
        if let Some(pd) = prev_diff {
            let ok = match pd {
                0 => d == 1,
                1 => d >= 2,
                _ => d >= 2 || d == 0,
            };
            if !ok {
                return false;
            }
        }
        prev_diff = Some(d);
        prev = x;
    }
    true
}

/// Membership test. For `STRICT` the indices are `(sol, (ℓ-sol)/2)`, for
/// `C_FAMILY` `(ℓ-2ℓ_r, ℓ_r)`, for `D_KA` `(sl, (ℓ-a·sl)/k)`, for `W_FAMILY`
/// `(ℓ-3ℓ_r, ℓ_r)`.
pub fn classify(p: &Partition, tag: &FamilyTag) -> Result<Verdict> {
    tag.validate()?;
    if tag.max_length.is_some_and(|m| p.len() > m) {
        return Ok(Verdict::NO);
    }
    let parts = p.parts();
    let v = match &tag.family {
        Family::All => Verdict::yes(None),
        Family::Strict => {
            if p.is_strict() {
                let sol = runs(parts).iter().filter(|b| b.length % 2 == 1).count();
                Verdict::yes(Some((sol, (p.len() - sol) / 2)))
            } else {
                Verdict::NO
            }
        }
        Family::OddDistinct => {
            if p.is_strict() && parts.iter().all(|x| x % 2 == 1) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::Rr => {
            if gaps_at_least(parts, 2) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::Rr2 => {
            if gaps_at_least(parts, 2) && parts.iter().all(|&x| x > 1) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::Mod { m, residues } => {
            if parts.iter().all(|x| residues.contains(&(x % m))) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::EvenParts => {
            if parts.iter().all(|x| x % 2 == 0) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::Multiples { m } => {
            if parts.iter().all(|x| x % m == 0) {
                Verdict::yes(None)
            } else {
                Verdict::NO
            }
        }
        Family::DKa { k, a } => match sl_count(p, *k, *a) {
            Ok(sl) => {
                let rest = p.len() - (*a as usize) * sl;
                Verdict::yes(Some((sl, rest / *k as usize)))
            }
            Err(_) => Verdict::NO,
        },
        Family::CFamily => {
            if is_c_member(p) {
                let j = p.stats().repeated;
                Verdict::yes(Some((p.len() - 2 * j, j)))
            } else {
                Verdict::NO
            }
        }
        Family::WFamily => {
            if is_w_member(p) {
                let j = p.stats().repeated;
                Verdict::yes(Some((p.len() - 3 * j, j)))
            } else {
                Verdict::NO
            }
        }
    };
    Ok(v)
}

pub fn is_member(p: &Partition, tag: &FamilyTag) -> Result<bool> {
    classify(p, tag).map(|v| v.member)
}

/// Which part sizes a depth-first generator may use.
#[derive(Debug, Clone)]
enum PartFilter {
    Any,
    Odd,
    Residues { m: u32, residues: Vec<u32> },
    Multiple(u32),
}

impl PartFilter {
    fn allows(&self, v: u32) -> bool {
        match self {
            PartFilter::Any => true,
            PartFilter::Odd => v % 2 == 1,
            PartFilter::Residues { m, residues } => residues.contains(&(v % m)),
            PartFilter::Multiple(m) => v.is_multiple_of(*m),
        }
    }
}

/// Lazy depth-first generator of weakly increasing part lists summing to
/// `n`, with consecutive parts at least `min_gap` apart. Yields in
/// lexicographic order of the increasing lists.
#[derive(Debug, Clone)]
struct GapDfs {
    n: u32,
    min_gap: u32,
    min_part: u32,
    max_len: Option<usize>,
    filter: PartFilter,
    parts: Vec<u32>,
    sum: u32,
    fresh: bool,
    done: bool,
}

impl GapDfs {
    fn new(n: u32, min_gap: u32, min_part: u32, filter: PartFilter, max_len: Option<usize>) -> Self {
        GapDfs {
            n,
            min_gap,
            min_part: min_part.max(1),
            max_len,
            filter,
            parts: Vec::new(),
            sum: 0,
            fresh: true,
            done: false,
        }
    }

    fn candidate_from(&self, lo: u32) -> Option<u32> {
        if self.max_len.is_some_and(|m| self.parts.len() >= m) {
            return None;
        }
        let hi = self.n - self.sum;
        (lo..=hi).find(|&v| self.filter.allows(v))
    }

    fn lowest_next(&self) -> u32 {
        match self.parts.last() {
            Some(&l) => l + self.min_gap,
            None => self.min_part,
        }
    }

    /// Advances to the next complete list; `resume` means the current list
    /// was already yielded and must be backtracked first.
    fn search(&mut self, mut resume: bool) -> bool {
        loop {
            if !resume {
                if self.sum == self.n {
                    return true;
                }
                if let Some(v) = self.candidate_from(self.lowest_next()) {
                    self.parts.push(v);
                    self.sum += v;
                    continue;
                }
            }
            resume = false;
            loop {
                let Some(v) = self.parts.pop() else {
                    return false;
                };
                self.sum -= v;
                if let Some(w) = self.candidate_from(v + 1) {
                    self.parts.push(w);
                    self.sum += w;
                    break;
                }
            }
        }
    }
}

impl Iterator for GapDfs {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let resume = !self.fresh;
        self.fresh = false;
        if self.search(resume) {
            Some(Partition::from_sorted_unchecked(self.parts.clone()))
        } else {
            self.done = true;
            None
        }
    }
}

/// Stream of the members of a family with weight `n`, lexicographic on the
/// increasing part lists.
pub struct Enumeration {
    inner: GapDfs,
    post_filter: Option<FamilyTag>,
}

impl Iterator for Enumeration {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let p = self.inner.next()?;
            match &self.post_filter {
                None => return Some(p),
                // tag was validated when the enumeration was built
                Some(tag) => {
                    if classify(&p, tag).map(|v| v.member).unwrap_or(false) {
                        return Some(p);
                    }
                }
            }
        }
    }
}

/// Enumerates a family using a dedicated generator where one exists.
pub fn enumerate(n: u32, tag: &FamilyTag) -> Result<Enumeration> {
    tag.validate()?;
    let ml = tag.max_length;
    let (inner, post) = match &tag.family {
        Family::All => (GapDfs::new(n, 0, 1, PartFilter::Any, ml), None),
        Family::Strict => (GapDfs::new(n, 1, 1, PartFilter::Any, ml), None),
        Family::OddDistinct => (GapDfs::new(n, 1, 1, PartFilter::Odd, ml), None),
        Family::Rr => (GapDfs::new(n, 2, 1, PartFilter::Any, ml), None),
        Family::Rr2 => (GapDfs::new(n, 2, 2, PartFilter::Any, ml), None),
        Family::Mod { m, residues } => (
            GapDfs::new(n, 0, 1, PartFilter::Residues { m: *m, residues: residues.clone() }, ml),
            None,
        ),
        Family::EvenParts => (GapDfs::new(n, 0, 1, PartFilter::Multiple(2), ml), None),
        Family::Multiples { m } => (GapDfs::new(n, 0, 1, PartFilter::Multiple(*m), ml), None),
        Family::DKa { .. } => (GapDfs::new(n, 1, 1, PartFilter::Any, ml), Some(tag.clone())),
        Family::CFamily | Family::WFamily => {
            (GapDfs::new(n, 0, 1, PartFilter::Any, ml), Some(tag.clone()))
        }
    };
    Ok(Enumeration { inner, post_filter: post })
}

/// Reference path: every partition of `n`, filtered through [`classify`].
pub fn enumerate_filtered(n: u32, tag: &FamilyTag) -> Result<Enumeration> {
    tag.validate()?;
    Ok(Enumeration {
        inner: GapDfs::new(n, 0, 1, PartFilter::Any, None),
        post_filter: Some(tag.clone()),
    })
}

pub fn count(n: u32, tag: &FamilyTag) -> Result<usize> {
    Ok(enumerate(n, tag)?.count())
}

//! Base + increments bijections.
//!
//! A member of a restricted family is decomposed into movable blocks (pairs,
//! k-runs, repeated pairs or `[t, t, t+1]` triples) and free blocks
//! (singletons or a-runs). Starting from the minimum-weight base partition,
//! the parts of `μ` push free blocks forward and the parts of `η` push
//! movable blocks forward; a movable block that runs into a free block
//! swaps places with it (an adjustment). The inverse walks movable blocks
//! back, undoing each swap as a normalization.

mod rr;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{classify, Family, FamilyTag};
use crate::partition::{runs, Partition};

pub use rr::{rr_compose, rr_decompose};

/// Which base partition (and therefore which block geometry) is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// Pairs `[s, s+1]` and singletons; strict partitions by `(sol, pairs)`.
    Main { i: u32, j: u32 },
    /// Repeated pairs `[s, s]` and singletons.
    CPair { i: u32, j: u32 },
    /// k-runs and a-runs.
    Ka { k: u32, a: u32, i: u32, j: u32 },
    /// Triples `[s, s, s+1]` and singletons.
    WTriple { i: u32, j: u32 },
}

/// A family of [`BaseKind`]s without the `(i, j)` indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KindFamily {
    Main,
    CPair,
    Ka { k: u32, a: u32 },
    WTriple,
}

impl KindFamily {
    pub fn family(self) -> Family {
        match self {
            KindFamily::Main => Family::Strict,
            KindFamily::CPair => Family::CFamily,
            KindFamily::Ka { k, a } => Family::DKa { k, a },
            KindFamily::WTriple => Family::WFamily,
        }
    }

    pub fn with_indices(self, i: u32, j: u32) -> BaseKind {
        match self {
            KindFamily::Main => BaseKind::Main { i, j },
            KindFamily::CPair => BaseKind::CPair { i, j },
            KindFamily::Ka { k, a } => BaseKind::Ka { k, a, i, j },
            KindFamily::WTriple => BaseKind::WTriple { i, j },
        }
    }

    /// Part offsets of a movable block relative to its start.
    fn movable_offsets(self) -> Vec<u32> {
        match self {
            KindFamily::Main => vec![0, 1],
            KindFamily::CPair => vec![0, 0],
            KindFamily::Ka { k, .. } => (0..k).collect(),
            KindFamily::WTriple => vec![0, 0, 1],
        }
    }

    fn free_offsets(self) -> Vec<u32> {
        match self {
            KindFamily::Ka { a, .. } => (0..a).collect(),
            _ => vec![0],
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            KindFamily::Ka { k, a } if !(k > a && a >= 1) => {
                Err(Error::BadParams(format!("KA needs k > a >= 1, got k={k}, a={a}")))
            }
            _ => Ok(()),
        }
    }
}

impl BaseKind {
    pub fn family(self) -> KindFamily {
        match self {
            BaseKind::Main { .. } => KindFamily::Main,
            BaseKind::CPair { .. } => KindFamily::CPair,
            BaseKind::Ka { k, a, .. } => KindFamily::Ka { k, a },
            BaseKind::WTriple { .. } => KindFamily::WTriple,
        }
    }

    pub fn indices(self) -> (u32, u32) {
        match self {
            BaseKind::Main { i, j }
            | BaseKind::CPair { i, j }
            | BaseKind::Ka { i, j, .. }
            | BaseKind::WTriple { i, j } => (i, j),
        }
    }

    fn geometry(self) -> Geometry {
        let fam = self.family();
        let (i, j) = self.indices();
        Geometry { fam, mov: fam.movable_offsets(), free: fam.free_offsets(), i, j }
    }

    /// Weight of the base partition.
    pub fn base_weight(self) -> u64 {
        self.geometry().base().weight()
    }

    /// Increment families: `μ` parts are multiples of the free-block length
    /// (at most `i` of them), `η` parts multiples of the movable length (at
    /// most `j`).
    pub fn increment_steps(self) -> (u32, u32) {
        let g = self.geometry();
        (g.free_len(), g.mov_len())
    }
}

impl FromStr for KindFamily {
    type Err = Error;

    /// `main`, `cpair`, `wtriple`, or `ka:3,1` / `KA(3,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let fam = match up.as_str() {
            "MAIN" => KindFamily::Main,
            "CPAIR" => KindFamily::CPair,
            "WTRIPLE" => KindFamily::WTriple,
            _ => {
                let bad = || Error::BadParams(format!("cannot parse kind family {s:?}"));
                let args = up
                    .strip_prefix("KA:")
                    .or_else(|| up.strip_prefix("KA(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(bad)?;
                let (k, a) = args.split_once(',').ok_or_else(bad)?;
                let k = k.trim().parse().map_err(|_| bad())?;
                let a = a.trim().parse().map_err(|_| bad())?;
                KindFamily::Ka { k, a }
            }
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::Main { i, j } => write!(f, "MAIN({i},{j})"),
            BaseKind::CPair { i, j } => write!(f, "CPAIR({i},{j})"),
            BaseKind::Ka { k, a, i, j } => write!(f, "KA({k},{a},{i},{j})"),
            BaseKind::WTriple { i, j } => write!(f, "WTRIPLE({i},{j})"),
        }
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    /// Accepts `MAIN(2,2)` as well as the command-line form `main:2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParams(format!("cannot parse base kind {s:?}"));
        let s = s.trim();
        let (name, args) = if let Some((n, rest)) = s.split_once('(') {
            (n, rest.strip_suffix(')').ok_or_else(bad)?)
        } else {
            s.split_once(':').ok_or_else(bad)?
        };
        let nums: Vec<u32> = args
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let kind = match (name.trim().to_ascii_uppercase().as_str(), nums.as_slice()) {
            ("MAIN", &[i, j]) => BaseKind::Main { i, j },
            ("CPAIR", &[i, j]) => BaseKind::CPair { i, j },
            ("KA", &[k, a, i, j]) => BaseKind::Ka { k, a, i, j },
            ("WTRIPLE", &[i, j]) => BaseKind::WTriple { i, j },
            _ => return Err(bad()),
        };
        kind.family().validate()?;
        Ok(kind)
    }
}

impl Serialize for BaseKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BaseKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Role {
    Movable,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub role: Role,
    pub start: u32,
}

#[derive(Debug, Clone)]
struct Geometry {
    fam: KindFamily,
    mov: Vec<u32>,
    free: Vec<u32>,
    i: u32,
    j: u32,
}

impl Geometry {
    fn mov_len(&self) -> u32 {
        self.mov.len() as u32
    }

    fn free_len(&self) -> u32 {
        self.free.len() as u32
    }

    fn offsets(&self, role: Role) -> &[u32] {
        match role {
            Role::Movable => &self.mov,
            Role::Free => &self.free,
        }
    }

    fn base_mov_start(&self, r: u32) -> u32 {
        match self.fam {
            KindFamily::Main | KindFamily::CPair => 2 * r + 1,
            KindFamily::Ka { k, .. } => r * k + 1,
            KindFamily::WTriple => 3 * r + 2,
        }
    }

    fn base_free_start(&self, r: u32) -> u32 {
        let j = self.j;
        match self.fam {
            KindFamily::Main | KindFamily::CPair => 2 * j + 2 * r + 1,
            KindFamily::Ka { k, a } => j * k + r * (a + 1) + 1,
            KindFamily::WTriple => 3 * j + 2 * r + 2,
        }
    }

    fn kind(&self) -> BaseKind {
        self.fam.with_indices(self.i, self.j)
    }

    fn base(&self) -> BlockPartition {
        let mut blocks: Vec<Block> = (0..self.j)
            .map(|r| Block { role: Role::Movable, start: self.base_mov_start(r) })
            .collect();
        blocks.extend((0..self.i).map(|r| Block { role: Role::Free, start: self.base_free_start(r) }));
        BlockPartition { kind: self.kind(), blocks }
    }

    /// The unique block decomposition of a family member, or `None` if
    /// `parts` is not in the family.
    fn canonical(&self, parts: &[u32]) -> Option<Vec<Block>> {
        let mut out = Vec::new();
        match self.fam {
            KindFamily::Main | KindFamily::Ka { .. } => {
                let (k, a) = (self.mov_len(), self.free_len());
                if parts.windows(2).any(|w| w[0] >= w[1]) {
                    return None;
                }
                for run in runs(parts) {
                    let r = run.length % k;
                    if r != 0 && r != a {
                        return None;
                    }
                    let mut s = run.start;
                    for _ in 0..run.length / k {
                        out.push(Block { role: Role::Movable, start: s });
                        s += k;
                    }
                    if r == a {
                        out.push(Block { role: Role::Free, start: s });
                    }
                }
            }
            KindFamily::CPair => {
                if !crate::family::is_c_member(&Partition::from_sorted_unchecked(parts.to_vec())) {
                    return None;
                }
                let mut p = 0;
                while p < parts.len() {
                    if p + 1 < parts.len() && parts[p + 1] == parts[p] {
                        out.push(Block { role: Role::Movable, start: parts[p] });
                        p += 2;
                    } else {
                        out.push(Block { role: Role::Free, start: parts[p] });
                        p += 1;
                    }
                }
            }
            KindFamily::WTriple => {
                if !crate::family::is_w_member(&Partition::from_sorted_unchecked(parts.to_vec())) {
                    return None;
                }
                let mut p = 0;
                while p < parts.len() {
                    if p + 1 < parts.len() && parts[p + 1] == parts[p] {
                        out.push(Block { role: Role::Movable, start: parts[p] });
                        p += 3;
                    } else {
                        out.push(Block { role: Role::Free, start: parts[p] });
                        p += 1;
                    }
                }
            }
        }
        Some(out)
    }
}

/// A partition together with its block structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    kind: BaseKind,
    blocks: Vec<Block>,
}

impl BlockPartition {
    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Parts of one block.
    pub fn block_parts(&self, b: &Block) -> Vec<u32> {
        let g = self.kind.geometry();
        g.offsets(b.role).iter().map(|o| b.start + o).collect()
    }

    fn flat(&self) -> Vec<u32> {
        let g = self.kind.geometry();
        self.blocks
            .iter()
            .flat_map(|b| g.offsets(b.role).iter().map(move |o| b.start + o))
            .collect()
    }

    /// Flattened parts; only weakly increasing once the state is valid.
    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(self.flat())
    }

    pub fn weight(&self) -> u64 {
        self.flat().iter().map(|&p| u64::from(p)).sum()
    }
}

impl fmt::Display for BlockPartition {
    /// Paper notation: `2, [4, 5], [6, 7], 11`, with a-runs in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("∅");
        }
        let items: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let parts: Vec<String> = self.block_parts(b).iter().map(u32::to_string).collect();
                match (b.role, parts.len()) {
                    (Role::Movable, _) => format!("[{}]", parts.join(", ")),
                    (Role::Free, 1) => parts[0].clone(),
                    (Role::Free, _) => format!("({})", parts.join(", ")),
                }
            })
            .collect();
        f.write_str(&items.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BlockJson {
    Movable(Vec<u32>),
    Free(String),
}

impl BlockPartition {
    fn to_json_blocks(&self) -> Vec<BlockJson> {
        self.blocks
            .iter()
            .map(|b| {
                let parts = self.block_parts(b);
                match b.role {
                    Role::Movable => BlockJson::Movable(parts),
                    Role::Free => {
                        BlockJson::Free(parts.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                    }
                }
            })
            .collect()
    }

    fn from_json_blocks(kind: BaseKind, items: Vec<BlockJson>) -> std::result::Result<Self, String> {
        let g = kind.geometry();
        let mut blocks = Vec::new();
        for item in items {
            let (role, parts) = match item {
                BlockJson::Movable(p) => (Role::Movable, p),
                BlockJson::Free(s) => (
                    Role::Free,
                    s.split(',')
                        .map(|t| t.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?,
                ),
            };
            let start = *parts.first().ok_or("empty block")?;
            let expect: Vec<u32> = g.offsets(role).iter().map(|o| start + o).collect();
            if parts != expect {
                return Err(format!("block {parts:?} does not match the {kind} geometry"));
            }
            blocks.push(Block { role, start });
        }
        Ok(BlockPartition { kind, blocks })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MoveOp {
    Forward,
    Backward,
    Adjustment,
    Normalization,
}

impl fmt::Display for MoveOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveOp::Forward => "forward move",
            MoveOp::Backward => "backward move",
            MoveOp::Adjustment => "adjustment",
            MoveOp::Normalization => "normalization",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub op: MoveOp,
    /// Index of the block being moved, in the snapshot's block order.
    pub block: usize,
    pub snapshot: BlockPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub kind: BaseKind,
    /// State before the first step.
    pub start: BlockPartition,
    pub steps: Vec<TraceStep>,
}

impl MoveTrace {
    pub fn last(&self) -> &BlockPartition {
        self.steps.last().map(|s| &s.snapshot).unwrap_or(&self.start)
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.start)?;
        for s in &self.steps {
            writeln!(f, "  ↓ {} (block {})", s.op, s.block)?;
            writeln!(f, "{}", s.snapshot)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    op: MoveOp,
    block: usize,
    partition: Vec<BlockJson>,
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    kind: BaseKind,
    start: Vec<BlockJson>,
    steps: Vec<StepJson>,
}

impl Serialize for MoveTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TraceJson {
            kind: self.kind,
            start: self.start.to_json_blocks(),
            steps: self
                .steps
                .iter()
                .map(|st| StepJson { op: st.op, block: st.block, partition: st.snapshot.to_json_blocks() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoveTrace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TraceJson::deserialize(d)?;
        let conv = |items| BlockPartition::from_json_blocks(j.kind, items).map_err(serde::de::Error::custom);
        let start = conv(j.start)?;
        let mut steps = Vec::new();
        for st in j.steps {
            steps.push(TraceStep { op: st.op, block: st.block, snapshot: conv(st.partition)? });
        }
        Ok(MoveTrace { kind: j.kind, start, steps })
    }
}

struct Engine {
    g: Geometry,
    state: BlockPartition,
    trace: Vec<TraceStep>,
}

impl Engine {
    fn new(g: Geometry, state: BlockPartition) -> Self {
        Engine { g, state, trace: Vec::new() }
    }

    fn record(&mut self, op: MoveOp, block: usize) -> Result<()> {
        let flat = self.state.flat();
        let canonical = self.g.canonical(&flat);
        let valid = match (op, canonical) {
            // a forward move on a movable block may collide; the adjustment
            // that follows repairs it
            (MoveOp::Forward, _) if self.state.blocks[block].role == Role::Movable => true,
            (MoveOp::Backward, _) if self.state.blocks[block].role == Role::Movable => true,
            (_, Some(c)) => c == self.state.blocks,
            (_, None) => false,
        };
        self.trace.push(TraceStep { op, block, snapshot: self.state.clone() });
        if !valid {
            return Err(Error::Invariant(format!(
                "{} after {op} on block {block} is not a canonical {} state",
                self.state,
                self.g.fam.family()
            )));
        }
        Ok(())
    }

    fn forward_free(&mut self, idx: usize) -> Result<()> {
        self.state.blocks[idx].start += 1;
        self.record(MoveOp::Forward, idx)
    }

    /// One forward move on a movable block followed by any adjustments.
    fn forward_movable(&mut self, mut idx: usize) -> Result<usize> {
        self.state.blocks[idx].start += 1;
        self.record(MoveOp::Forward, idx)?;
        let (m, f) = (self.g.mov_len(), self.g.free_len());
        loop {
            let mov = self.state.blocks[idx];
            match self.state.blocks.get(idx + 1) {
                Some(&next) if next.role == Role::Free && next.start == mov.start + m - 1 => {
                    self.state.blocks[idx] = Block { role: Role::Free, start: next.start - m };
                    self.state.blocks[idx + 1] = Block { role: Role::Movable, start: mov.start + f };
                    idx += 1;
                    self.record(MoveOp::Adjustment, idx)?;
                }
                _ => break,
            }
        }
        self.check_canonical(idx)?;
        Ok(idx)
    }

    /// One backward move on a movable block followed by any normalizations.
    fn backward_movable(&mut self, mut idx: usize) -> Result<usize> {
        self.state.blocks[idx].start -= 1;
        self.record(MoveOp::Backward, idx)?;
        let (m, f) = (self.g.mov_len(), self.g.free_len());
        while idx > 0 {
            let mov = self.state.blocks[idx];
            let prev = self.state.blocks[idx - 1];
            if prev.role == Role::Free && prev.start + f == mov.start {
                self.state.blocks[idx - 1] = Block { role: Role::Movable, start: mov.start - f };
                self.state.blocks[idx] = Block { role: Role::Free, start: prev.start + m };
                idx -= 1;
                self.record(MoveOp::Normalization, idx)?;
            } else {
                break;
            }
        }
        self.check_canonical(idx)?;
        Ok(idx)
    }

    fn check_canonical(&self, idx: usize) -> Result<()> {
        match self.g.canonical(&self.state.flat()) {
            Some(c) if c == self.state.blocks => Ok(()),
            _ => Err(Error::Invariant(format!(
                "moving block {idx} left the non-canonical state {} ({} blocks overtaking each other?)",
                self.state,
                self.g.fam.family()
            ))),
        }
    }
}

/// The minimum-weight member with `j` movable and `i` free blocks.
pub fn base_partition(kind: BaseKind) -> Result<BlockPartition> {
    kind.family().validate()?;
    Ok(kind.geometry().base())
}

fn increments(p: &Partition, count: u32, step: u32, name: &str) -> Result<Vec<u32>> {
    if p.len() > count as usize {
        return Err(Error::BadIncrement(format!("{name} = {p} has more than {count} parts")));
    }
    if let Some(bad) = p.parts().iter().find(|&&x| x % step != 0) {
        return Err(Error::BadIncrement(format!("{name} = {p} has part {bad}, not a multiple of {step}")));
    }
    let mut v = vec![0; count as usize - p.len()];
    v.extend(p.parts().iter().map(|x| x / step));
    Ok(v)
}

/// Builds the family member for `(base(kind), μ, η)` with its move trace.
pub fn phi(kind: BaseKind, mu: &Partition, eta: &Partition) -> Result<(Partition, MoveTrace)> {
    let base = base_partition(kind)?;
    let g = kind.geometry();
    let mu_moves = increments(mu, g.i, g.free_len(), "mu")?;
    let eta_moves = increments(eta, g.j, g.mov_len(), "eta")?;
    let mut e = Engine::new(g.clone(), base.clone());

    // Phase I: free blocks, largest first.
    for r in (0..g.i as usize).rev() {
        let idx = g.j as usize + r;
        for _ in 0..mu_moves[r] {
            e.forward_free(idx)?;
        }
    }
    // Phase II: movable blocks, largest first. Movable block r is the
    // (r+1)-th movable in block order; only larger ones have moved.
    for r in (0..g.j as usize).rev() {
        let mut idx = r;
        for _ in 0..eta_moves[r] {
            idx = e.forward_movable(idx)?;
        }
    }
    let out = e.state.to_partition();
    debug_assert_eq!(out.weight(), base.weight() + mu.weight() + eta.weight());
    Ok((out, MoveTrace { kind, start: base, steps: e.trace }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kind: BaseKind,
    pub mu: Partition,
    pub eta: Partition,
    pub trace: MoveTrace,
}

/// Recovers `(kind, μ, η)` from a member of the family.
pub fn phi_inverse(fam: KindFamily, lambda: &Partition) -> Result<Decomposition> {
    fam.validate()?;
    let tag = FamilyTag::from(fam.family());
    let verdict = classify(lambda, &tag)?;
    let Some((i, j)) = verdict.indices.filter(|_| verdict.member) else {
        return Err(Error::NotMember { partition: lambda.clone(), family: tag.to_string() });
    };
    let kind = fam.with_indices(i as u32, j as u32);
    let g = kind.geometry();
    let blocks = g
        .canonical(lambda.parts())
        .ok_or_else(|| Error::NotMember { partition: lambda.clone(), family: tag.to_string() })?;
    let start = BlockPartition { kind, blocks };
    let mut e = Engine::new(g.clone(), start.clone());

    // Phase II': movable blocks smallest first, back to their base slots.
    let mut eta = Vec::new();
    for r in 0..g.j {
        let target = g.base_mov_start(r);
        let mut idx = e
            .state
            .blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.role == Role::Movable)
            .nth(r as usize)
            .map(|(n, _)| n)
            .ok_or_else(|| Error::Invariant(format!("movable block {r} vanished")))?;
        let mut moves = 0;
        while e.state.blocks[idx].start > target {
            idx = e.backward_movable(idx)?;
            moves += 1;
        }
        if e.state.blocks[idx].start != target || idx != r as usize {
            return Err(Error::Invariant(format!("movable block {r} did not return to its base slot in {}", e.state)));
        }
        if moves > 0 {
            eta.push(moves * g.mov_len());
        }
    }
    // Phase I': free blocks are now above every movable block.
    let mut mu = Vec::new();
    for r in 0..g.i {
        let b = e.state.blocks[(g.j + r) as usize];
        let base = g.base_free_start(r);
        if b.role != Role::Free || b.start < base {
            return Err(Error::Invariant(format!("free block {r} below its base slot in {}", e.state)));
        }
        mu.push((b.start - base) * g.free_len());
    }
    if eta.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invariant(format!("recovered eta {eta:?} is not weakly increasing")));
    }
    if mu.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invariant(format!("recovered mu {mu:?} is not weakly increasing")));
    }
    Ok(Decomposition {
        kind,
        mu: Partition::from_unsorted(mu),
        eta: Partition::from_unsorted(eta),
        trace: MoveTrace { kind, start, steps: e.trace },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn base_partitions() {
        let b = base_partition(BaseKind::Main { i: 2, j: 2 }).unwrap();
        assert_eq!(b.to_string(), "[1, 2], [3, 4], 5, 7");
        assert_eq!(b.weight(), 4 + 8 + 8 + 2);
        assert_eq!(base_partition(BaseKind::Main { i: 0, j: 0 }).unwrap().to_string(), "∅");
        let b = base_partition(BaseKind::Ka { k: 3, a: 1, i: 2, j: 2 }).unwrap();
        assert_eq!(b.to_string(), "[1, 2, 3], [4, 5, 6], 7, 9");
        let b = base_partition(BaseKind::Ka { k: 3, a: 2, i: 2, j: 2 }).unwrap();
        assert_eq!(b.to_string(), "[1, 2, 3], [4, 5, 6], (7, 8), (10, 11)");
        let b = base_partition(BaseKind::WTriple { i: 2, j: 2 }).unwrap();
        assert_eq!(b.to_string(), "[2, 2, 3], [5, 5, 6], 8, 10");
        let b = base_partition(BaseKind::CPair { i: 1, j: 2 }).unwrap();
        assert_eq!(b.to_string(), "[1, 1], [3, 3], 5");
        assert!(base_partition(BaseKind::Ka { k: 2, a: 2, i: 0, j: 0 }).is_err());
    }

    #[test]
    fn base_weight_formulas() {
        for i in 0..6 {
            for j in 0..6 {
                let (i64_, j64) = (u64::from(i), u64::from(j));
                assert_eq!(BaseKind::Main { i, j }.base_weight(), i64_ * i64_ + 2 * i64_ * j64 + 2 * j64 * j64 + j64);
                assert_eq!(BaseKind::CPair { i, j }.base_weight(), i64_ * i64_ + 2 * i64_ * j64 + 2 * j64 * j64);
            }
        }
    }

    #[test]
    fn main_worked_example() {
        let (lam, trace) = phi(BaseKind::Main { i: 2, j: 2 }, &p(&[1, 4]), &p(&[4, 4])).unwrap();
        assert_eq!(lam, p(&[2, 4, 5, 6, 7, 11]));
        assert_eq!(trace.last().to_string(), "2, [4, 5], [6, 7], 11");
        let shown: Vec<String> = trace.steps.iter().map(|s| s.snapshot.to_string()).collect();
        assert_eq!(
            shown,
            [
                "[1, 2], [3, 4], 5, 8",
                "[1, 2], [3, 4], 5, 9",
                "[1, 2], [3, 4], 5, 10",
                "[1, 2], [3, 4], 5, 11",
                "[1, 2], [3, 4], 6, 11",
                "[1, 2], [4, 5], 6, 11",
                "[1, 2], [5, 6], 6, 11",
                "[1, 2], 4, [6, 7], 11",
                "[2, 3], 4, [6, 7], 11",
                "[3, 4], 4, [6, 7], 11",
                "2, [4, 5], [6, 7], 11",
            ]
        );
        let ops: Vec<MoveOp> = trace.steps.iter().map(|s| s.op).collect();
        assert_eq!(ops.iter().filter(|&&o| o == MoveOp::Adjustment).count(), 2);

        let d = phi_inverse(KindFamily::Main, &lam).unwrap();
        assert_eq!(d.kind, BaseKind::Main { i: 2, j: 2 });
        assert_eq!((d.mu, d.eta), (p(&[1, 4]), p(&[4, 4])));
        let shown: Vec<String> = d.trace.steps.iter().map(|s| s.snapshot.to_string()).collect();
        assert_eq!(
            shown,
            [
                "2, [3, 4], [6, 7], 11",
                "[2, 3], 4, [6, 7], 11",
                "[1, 2], 4, [6, 7], 11",
                "[1, 2], 4, [5, 6], 11",
                "[1, 2], [4, 5], 6, 11",
                "[1, 2], [3, 4], 6, 11",
            ]
        );
    }

    #[test]
    fn ka_worked_examples() {
        let (lam, _) = phi(BaseKind::Ka { k: 3, a: 1, i: 2, j: 2 }, &p(&[1, 2]), &p(&[3, 6])).unwrap();
        assert_eq!(lam, p(&[2, 3, 4, 5, 7, 8, 9, 11]));
        let d = phi_inverse(KindFamily::Ka { k: 3, a: 1 }, &lam).unwrap();
        assert_eq!((d.kind, d.mu, d.eta), (BaseKind::Ka { k: 3, a: 1, i: 2, j: 2 }, p(&[1, 2]), p(&[3, 6])));

        let (lam, _) = phi(BaseKind::Ka { k: 3, a: 2, i: 2, j: 2 }, &p(&[2, 4]), &p(&[3, 9])).unwrap();
        assert_eq!(lam, p(&[2, 3, 4, 5, 6, 9, 10, 11, 12, 13]));
        let d = phi_inverse(KindFamily::Ka { k: 3, a: 2 }, &lam).unwrap();
        assert_eq!((d.mu, d.eta), (p(&[2, 4]), p(&[3, 9])));
    }

    #[test]
    fn cpair_and_wtriple_single_adjustments() {
        // [1,1], 3 -> [2,2], 3 -> 1, [3,3]
        let (lam, trace) = phi(BaseKind::CPair { i: 1, j: 1 }, &Partition::empty(), &p(&[2])).unwrap();
        assert_eq!(lam, p(&[1, 3, 3]));
        assert_eq!(trace.steps.iter().map(|s| s.op).collect::<Vec<_>>(), [MoveOp::Forward, MoveOp::Adjustment]);
        // [2,2,3], 5 -> [3,3,4], 5 -> 2, [4,4,5]
        let (lam, trace) = phi(BaseKind::WTriple { i: 1, j: 1 }, &Partition::empty(), &p(&[3])).unwrap();
        assert_eq!(lam, p(&[2, 4, 4, 5]));
        assert_eq!(trace.last().to_string(), "2, [4, 4, 5]");
    }

    #[test]
    fn empty_increments_give_the_base() {
        for kind in [
            BaseKind::Main { i: 3, j: 1 },
            BaseKind::CPair { i: 0, j: 2 },
            BaseKind::Ka { k: 4, a: 3, i: 1, j: 1 },
            BaseKind::WTriple { i: 2, j: 0 },
        ] {
            let (lam, trace) = phi(kind, &Partition::empty(), &Partition::empty()).unwrap();
            assert_eq!(lam, base_partition(kind).unwrap().to_partition());
            assert!(trace.steps.is_empty());
            let d = phi_inverse(kind.family(), &lam).unwrap();
            assert_eq!(d.kind, kind);
            assert!(d.mu.is_empty() && d.eta.is_empty());
        }
    }

    #[test]
    fn bad_increments_and_non_members() {
        let k = BaseKind::Main { i: 1, j: 1 };
        assert!(matches!(phi(k, &p(&[1, 2]), &Partition::empty()), Err(Error::BadIncrement(_))));
        assert!(matches!(phi(k, &Partition::empty(), &p(&[3])), Err(Error::BadIncrement(_))));
        assert!(matches!(phi_inverse(KindFamily::Main, &p(&[2, 2])), Err(Error::NotMember { .. })));
        assert!(matches!(phi_inverse(KindFamily::Ka { k: 3, a: 1 }, &p(&[1, 2])), Err(Error::NotMember { .. })));
    }

    #[test]
    fn kind_parsing_and_json() {
        assert_eq!("main:2,2".parse::<BaseKind>().unwrap(), BaseKind::Main { i: 2, j: 2 });
        assert_eq!("KA(3,1,2,2)".parse::<BaseKind>().unwrap(), BaseKind::Ka { k: 3, a: 1, i: 2, j: 2 });
        assert!("ka:1,1,0,0".parse::<BaseKind>().is_err());
        assert!("tri:1".parse::<BaseKind>().is_err());

        let (_, trace) = phi(BaseKind::Ka { k: 3, a: 2, i: 2, j: 2 }, &p(&[2, 4]), &p(&[3, 9])).unwrap();
        let txt = serde_json::to_string(&trace).unwrap();
        assert!(txt.starts_with(r#"{"kind":"KA(3,2,2,2)","start":[[1,2,3],[4,5,6],"7,8","10,11"]"#));
        assert_eq!(serde_json::from_str::<MoveTrace>(&txt).unwrap(), trace);
    }
}

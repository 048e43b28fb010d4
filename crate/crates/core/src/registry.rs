//! Catalog of identities with their series sides, enumeration forms and
//! counting or involution checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::double_sum::{double_sum, DoubleSumSpec, Linear, Quadratic, SignRule};
use crate::error::{Error, SeriesError};
use crate::family::{count, enumerate, Family};
use crate::gf::{gf_enumerate, Statistic, WeightMap};
use crate::involution::{psi, theta, weighted_pairs, PsiCase, ThetaCase};
use crate::poly::{IntPoly, Var};
use crate::series::{
    inverse_pochhammer, inverse_product, pochhammer, series_equal, Count, MatchReport, QMonomial, QSeries, Truncation,
};

type Result<T> = std::result::Result<T, SeriesError>;

/// `(k, a)` instances of the `(k, a)`-strict family that are registered.
pub const MAIN_KA_INSTANCES: [(u32, u32); 5] = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)];
/// Largest `n` registered for the terminating sum family.
pub const CHU_MAX: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    Rr1,
    Rr2,
    GfLSol,
    Id121,
    Id122,
    Id123,
    Id123Prime,
    Equiv122123P,
    WeiM2Para,
    GfOd,
    GfCIj,
    LovejoyCount,
    Au1,
    Au2,
    MainKa { k: u32, a: u32 },
    GfWXy,
    Au1Par,
    Au2Par,
    RrMacmahon,
    ChuSpecial { n: u32 },
}

const PLAIN: [(IdentityId, &str); 18] = [
    (IdentityId::Rr1, "RR1"),
    (IdentityId::Rr2, "RR2"),
    (IdentityId::GfLSol, "GF_L_SOL"),
    (IdentityId::Id121, "ID_121"),
    (IdentityId::Id122, "ID_122"),
    (IdentityId::Id123, "ID_123"),
    (IdentityId::Id123Prime, "ID_123_PRIME"),
    (IdentityId::Equiv122123P, "EQUIV_122_123P"),
    (IdentityId::WeiM2Para, "WEI_M2PARA"),
    (IdentityId::GfOd, "GF_OD"),
    (IdentityId::GfCIj, "GF_C_IJ"),
    (IdentityId::LovejoyCount, "LOVEJOY_COUNT"),
    (IdentityId::Au1, "AU1"),
    (IdentityId::Au2, "AU2"),
    (IdentityId::GfWXy, "GF_W_XY"),
    (IdentityId::Au1Par, "AU1_PAR"),
    (IdentityId::Au2Par, "AU2_PAR"),
    (IdentityId::RrMacmahon, "RR_MACMAHON"),
];

impl IdentityId {
    /// Every registered identity, parametrized families expanded.
    pub fn catalog() -> Vec<IdentityId> {
        let mut out: Vec<IdentityId> = PLAIN.iter().map(|(id, _)| *id).collect();
        out.extend(MAIN_KA_INSTANCES.iter().map(|&(k, a)| IdentityId::MainKa { k, a }));
        out.extend((0..=CHU_MAX).map(|n| IdentityId::ChuSpecial { n }));
        out.sort();
        out
    }

    pub fn supports(self, mode: Mode) -> bool {
        use IdentityId::*;
        match mode {
            Mode::Series => !matches!(self, LovejoyCount | Au1Par | Au2Par | RrMacmahon),
            Mode::Enumeration => !matches!(
                self,
                Id123 | Id123Prime | Equiv122123P | LovejoyCount | Au1Par | Au2Par | RrMacmahon | ChuSpecial { .. }
            ),
            Mode::Counting => matches!(self, LovejoyCount | Au1Par | Au2Par | RrMacmahon),
            Mode::Pairing => matches!(self, LovejoyCount | WeiM2Para),
        }
    }

    /// Registry default order (series) or weight bound (other modes).
    pub fn default_order(self, mode: Mode) -> u32 {
        use IdentityId::*;
        match mode {
            Mode::Series => match self {
                GfLSol | GfCIj | GfWXy | WeiM2Para => 40,
                MainKa { .. } | ChuSpecial { .. } => 30,
                _ => 60,
            },
            Mode::Enumeration => match self {
                GfLSol | GfOd | Id122 | Rr1 | Rr2 => 25,
                _ => 20,
            },
            Mode::Counting => match self {
                RrMacmahon => 40,
                _ => 30,
            },
            Mode::Pairing => match self {
                WeiM2Para => 12,
                _ => 20,
            },
        }
    }

    fn unsupported(self, mode: Mode) -> SeriesError {
        if mode == Mode::Enumeration {
            return SeriesError::NoEnumForm(self.to_string());
        }
        SeriesError::Unsupported { id: self.to_string(), mode: mode.to_string() }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityId::MainKa { k, a } => write!(f, "MAIN_KA({k},{a})"),
            IdentityId::ChuSpecial { n } => write!(f, "CHU_SPECIAL({n})"),
            other => f.write_str(PLAIN.iter().find(|(id, _)| id == other).map(|(_, s)| *s).expect("plain id")),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// Case-insensitive; parametrized ids accept `MAIN_KA(3,1)` or `main_ka:3,1`.
    fn from_str(s: &str) -> std::result::Result<Self, Error> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        if let Some((_, id)) = PLAIN.iter().map(|(id, name)| (name, id)).find(|(name, _)| **name == up) {
            return Ok(*id);
        }
        let bad = || Error::BadParams(format!("unknown identity {s:?}"));
        let (head, args) = match up.split_once('(') {
            Some((h, rest)) => (h, rest.strip_suffix(')').ok_or_else(bad)?),
            None => up.split_once(':').ok_or_else(bad)?,
        };
        let nums: Vec<u32> = args.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<std::result::Result<_, _>>()?;
        match (head, nums.as_slice()) {
            ("MAIN_KA", &[k, a]) if MAIN_KA_INSTANCES.contains(&(k, a)) => Ok(IdentityId::MainKa { k, a }),
            ("MAIN_KA", &[k, a]) => Err(Error::BadParams(format!("MAIN_KA({k},{a}) is not registered"))),
            ("CHU_SPECIAL", &[n]) if n <= CHU_MAX => Ok(IdentityId::ChuSpecial { n }),
            ("CHU_SPECIAL", &[n]) => Err(Error::BadParams(format!("CHU_SPECIAL({n}) is above n = {CHU_MAX}"))),
            _ => Err(bad()),
        }
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Series,
    Enumeration,
    Pairing,
    Counting,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Series, Mode::Enumeration, Mode::Pairing, Mode::Counting];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Series => "SERIES",
            Mode::Enumeration => "ENUMERATION",
            Mode::Pairing => "PAIRING",
            Mode::Counting => "COUNTING",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> std::result::Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Mode::Series),
            "enum" | "enumeration" => Ok(Mode::Enumeration),
            "pairing" => Ok(Mode::Pairing),
            "counting" => Ok(Mode::Counting),
            _ => Err(Error::BadParams(format!("unknown mode {s:?}"))),
        }
    }
}

fn xy_sum(sign: SignRule, exponent: Quadratic, steps: (u32, u32)) -> DoubleSumSpec {
    DoubleSumSpec::new(sign, exponent, steps)
}

/// The double (or single) sum behind an id, when it has one.
pub fn spec(id: IdentityId) -> Option<(DoubleSumSpec, i64)> {
    use IdentityId::*;
    let floor = crate::series::DEFAULT_FLOOR;
    let l_sol = Quadratic::new(1, 2, 2, 0, 1, 0);
    let w_exp = Quadratic::new(2, 6, 9, 2, 5, 0).over(2);
    let s = match id {
        Rr1 => DoubleSumSpec::single(SignRule::Plus, Quadratic::new(1, 0, 0, 0, 0, 0), 1),
        Rr2 => DoubleSumSpec::single(SignRule::Plus, Quadratic::new(1, 0, 0, 1, 0, 0), 1),
        GfLSol => xy_sum(SignRule::Plus, l_sol, (1, 2)).x(Linear::new(1, 0, 0)).y(Linear::new(1, 2, 0)),
        Id121 => xy_sum(SignRule::MinusJ, Quadratic::new(1, 2, 2, 0, 0, 0), (1, 2)).u(Linear::new(1, 1, 0)),
        Id122 => xy_sum(SignRule::Plus, l_sol, (1, 2)).u(Linear::new(1, 2, 0)),
        Id123 => {
            let s = xy_sum(SignRule::Plus, Quadratic::new(2, 4, 4, -3, 0, 0), (2, 4)).u(Linear::new(1, 2, 0));
            return Some((s, -1));
        }
        Id123Prime => xy_sum(SignRule::Plus, Quadratic::new(1, 2, 2, 0, 3, 0), (1, 2)).u(Linear::new(1, 2, 0)),
        WeiM2Para => xy_sum(SignRule::Plus, l_sol, (1, 2)).x(Linear::new(1, 0, 0)).y(Linear::new(0, 2, 0)),
        GfOd => DoubleSumSpec::single(SignRule::Plus, Quadratic::new(1, 0, 0, 0, 0, 0), 2).u(Linear::new(1, 0, 0)),
        GfCIj => xy_sum(SignRule::Plus, Quadratic::new(1, 2, 2, 0, 0, 0), (1, 2))
            .v(Linear::new(0, 1, 0))
            .u(Linear::new(1, 1, 0)),
        Au1 => xy_sum(SignRule::MinusJ, Quadratic::new(2, 6, 9, 0, 3, 0).over(2), (1, 3)),
        Au2 => xy_sum(SignRule::MinusJ, w_exp, (1, 3)),
        GfWXy => xy_sum(SignRule::Plus, w_exp, (1, 3)).x(Linear::new(1, 0, 0)).y(Linear::new(1, 3, 0)),
        MainKa { k, a } => {
            let (k, a) = (i64::from(k), i64::from(a));
            xy_sum(SignRule::Plus, Quadratic::new(a * (a + 1), 2 * a * k, k * k, 0, k, 0).over(2), (a as u32, k as u32))
                .x(Linear::new(1, 0, 0))
                .y(Linear::new(a, k, 0))
        }
        _ => return None,
    };
    Some((s, floor))
}

fn mono(vars: [u32; 4]) -> IntPoly {
    IntPoly::monomial(vars, 1)
}

const U: [u32; 4] = [0, 0, 1, 0];

/// `L(u) - u^2 q^3 L(u q^2)` for `L = lhs(ID_122)`, with the order through
/// which the shifted comparison is safe.
fn equiv_lhs(n: u32) -> Result<(QSeries, i64)> {
    let l = lhs(IdentityId::Id122, n)?;
    let shifted = l.shift_substitute(Var::U, 2)?;
    let through = shifted.comparison_order();
    let tail = shifted.series.mul_monomial(&mono([0, 0, 2, 0]), 3)?;
    Ok((l.sub(&tail).truncate(through), through))
}

/// `Σ_{i <= n} (q^{-n}; q)_i q^{C(i+1,2) + n i} / ((q;q)_i (-q;q)_i)`, evaluated as a
/// Laurent computation with a floor low enough for `(q^{-n}; q)_i`.
fn chu_lhs(n: u32, order: u32) -> Result<QSeries> {
    let n64 = i64::from(n);
    let t = Truncation::new(i64::from(order)).with_floor(-(n64 * (n64 + 1) / 2) - 1);
    let mut acc = QSeries::zero(t);
    for i in 0..=n {
        let i64_ = i64::from(i);
        let mut term = pochhammer(&QMonomial::q(1, -n64), 1, Count::Finite(i), t)?
            .mul_monomial(&IntPoly::one(), i64_ * (i64_ + 1) / 2 + n64 * i64_)?
            .truncate(t.order);
        term = term.mul(&inverse_pochhammer(1, i, t))?;
        for m in 1..=i64_ {
            term.div_one_minus(&IntPoly::constant(-1), m);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn chu_rhs(n: u32, order: u32) -> QSeries {
    let mut s = QSeries::one(i64::from(order));
    for m in 1..=i64::from(n) {
        s.div_one_minus(&IntPoly::constant(-1), m);
    }
    s
}

/// `Σ_j (y + x)(y + xq)...(y + xq^{j-1}) q^{C(j+1,2)} / (q;q)_j · (y q^{j+1}; q)_∞`.
fn wei_rhs(order: u32) -> Result<QSeries> {
    let n = i64::from(order);
    let mut acc = QSeries::zero(n);
    let mut j = 0i64;
    while j * (j + 1) / 2 <= n {
        let mut numer = QSeries::one(n);
        for m in 0..j {
            let factor = QSeries::from_terms([(0, mono([0, 1, 0, 0])), (m, mono([1, 0, 0, 0]))], n)?;
            numer = numer.mul(&factor)?;
        }
        let mut term = numer.mul_monomial(&IntPoly::one(), j * (j + 1) / 2)?.truncate(n);
        term = term.mul(&inverse_pochhammer(1, j as u32, n))?;
        term = term.mul(&pochhammer(&QMonomial::new(1, [0, 1, 0, 0], j + 1), 1, Count::Infinite, n)?)?;
        acc = acc.add(&term);
        j += 1;
    }
    Ok(acc)
}

fn residues(m: i64, rs: &[i64], order: u32) -> QSeries {
    let exps = (1..=i64::from(order)).filter(|e| rs.contains(&(e % m)));
    inverse_product(exps, i64::from(order))
}

/// Left side (the sum side) through `q^order`.
pub fn lhs(id: IdentityId, order: u32) -> Result<QSeries> {
    match id {
        IdentityId::Equiv122123P => Ok(equiv_lhs(order)?.0),
        IdentityId::ChuSpecial { n } => chu_lhs(n, order),
        _ => {
            let (s, floor) = spec(id).ok_or_else(|| id.unsupported(Mode::Series))?;
            double_sum(&s, Truncation::new(i64::from(order)).with_floor(floor))
        }
    }
}

/// Right side: a product when the identity has one, otherwise the
/// enumeration generating function.
pub fn rhs(id: IdentityId, order: u32) -> Result<QSeries> {
    use IdentityId::*;
    let n = i64::from(order);
    let u = |c: i64, e: i64| QMonomial::new(c, U, e);
    match id {
        Rr1 => Ok(residues(5, &[1, 4], order)),
        Rr2 => Ok(residues(5, &[2, 3], order)),
        Au1 => Ok(residues(3, &[1], order)),
        Au2 => Ok(residues(6, &[2, 3], order)),
        Id121 | GfOd => pochhammer(&u(-1, 1), 2, Count::Infinite, n),
        Id122 => pochhammer(&u(-1, 1), 1, Count::Infinite, n),
        Id123 => {
            let t = Truncation::new(n + 1).with_floor(-1);
            let p = pochhammer(&u(-1, 3), 2, Count::Infinite, t)?;
            let f = QSeries::from_terms([(-1, mono(U)), (0, IntPoly::one()), (1, mono(U))], t)?;
            Ok(f.mul(&p)?.truncate(n))
        }
        Id123Prime | Equiv122123P => {
            let p = pochhammer(&u(-1, 3), 1, Count::Infinite, n)?;
            let f = QSeries::from_terms([(0, IntPoly::one()), (1, mono(U)), (2, mono(U))], n)?;
            f.mul(&p)
        }
        WeiM2Para => wei_rhs(order),
        ChuSpecial { n } => Ok(chu_rhs(n, order)),
        GfLSol | GfCIj | GfWXy | MainKa { .. } => enumeration_side(id, order),
        LovejoyCount | Au1Par | Au2Par | RrMacmahon => Err(id.unsupported(Mode::Series)),
    }
}

/// The brute-force generating function over the id's partition family.
pub fn enumeration_side(id: IdentityId, order: u32) -> Result<QSeries> {
    use IdentityId::*;
    use Statistic::*;
    let w = WeightMap::new();
    let signed = [(Var::X, -1), (Var::Y, -1)];
    let w_xy = w.clone().with_combination(Var::X, vec![(1, Length), (-3, Repeated)]).with(Length, Var::Y);
    let c_vu = w.clone().with(Repeated, Var::V).with(Distinct, Var::U);
    Ok(match id {
        Rr1 => gf_enumerate(&Family::Rr.into(), &w, order)?,
        Rr2 => gf_enumerate(&Family::Rr2.into(), &w, order)?,
        GfLSol => gf_enumerate(&Family::Strict.into(), &w.with(Sol, Var::X).with(Length, Var::Y), order)?,
        WeiM2Para => gf_enumerate(
            &Family::Strict.into(),
            &w.with(Sol, Var::X).with_combination(Var::Y, vec![(1, Length), (-1, Sol)]),
            order,
        )?,
        Id121 => gf_enumerate(&Family::CFamily.into(), &c_vu, order)?.specialize(&[(Var::V, -1)]),
        GfCIj => gf_enumerate(&Family::CFamily.into(), &c_vu, order)?,
        Id122 => gf_enumerate(&Family::Strict.into(), &w.with(Length, Var::U), order)?,
        GfOd => gf_enumerate(&Family::OddDistinct.into(), &w.with(Length, Var::U), order)?,
        MainKa { k, a } => gf_enumerate(
            &Family::DKa { k, a }.into(),
            &w.with(Sl { k, a }, Var::X).with(Length, Var::Y),
            order,
        )?,
        Au1 => gf_enumerate(
            &Family::DKa { k: 3, a: 1 }.into(),
            &w.with(Sl { k: 3, a: 1 }, Var::X).with(Length, Var::Y),
            order,
        )?
        .specialize(&signed),
        GfWXy => gf_enumerate(&Family::WFamily.into(), &w_xy, order)?,
        Au2 => gf_enumerate(&Family::WFamily.into(), &w_xy, order)?.specialize(&signed),
        _ => return Err(id.unsupported(Mode::Enumeration)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReportVerdict {
    Equal,
    Mismatch,
}

/// First failure found, smallest exponent or weight first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    Series { exponent: i64, left: IntPoly, right: IntPoly },
    Count { n: u32, which: String, left: i64, right: i64 },
    Pairing { n: u32, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: IdentityId,
    pub mode: Mode,
    pub order: u32,
    /// Order actually compared when it differs from `order`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub through: Option<i64>,
    pub verdict: ReportVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Failure>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == ReportVerdict::Equal
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_equal() { "EQUAL" } else { "MISMATCH" };
        write!(f, "{:<16} {:<11} order {:>3}", self.id.to_string(), self.mode.to_string(), self.order)?;
        if let Some(t) = self.through {
            write!(f, " (through {t})")?;
        }
        write!(f, "  {verdict}  {} ms", self.ms)?;
        match &self.mismatch {
            Some(Failure::Series { exponent, left, right }) => write!(f, "\n  q^{exponent}: {left} != {right}"),
            Some(Failure::Count { n, which, left, right }) => write!(f, "\n  n={n} {which}: {left} != {right}"),
            Some(Failure::Pairing { n, detail }) => write!(f, "\n  weight {n}: {detail}"),
            None => Ok(()),
        }
    }
}

fn report(id: IdentityId, mode: Mode, order: u32, through: Option<i64>, failure: Option<Failure>, start: Instant) -> VerificationReport {
    VerificationReport {
        id,
        mode,
        order,
        through,
        verdict: if failure.is_none() { ReportVerdict::Equal } else { ReportVerdict::Mismatch },
        mismatch: failure,
        ms: start.elapsed().as_millis() as u64,
    }
}

fn series_failure(m: MatchReport) -> Option<Failure> {
    match m {
        MatchReport::Equal => None,
        MatchReport::Mismatch { exponent, left, right } => Some(Failure::Series { exponent, left, right }),
    }
}

pub fn verify_series(id: IdentityId, order: u32) -> Result<VerificationReport> {
    if !id.supports(Mode::Series) {
        return Err(id.unsupported(Mode::Series));
    }
    let start = Instant::now();
    let (left, through) = match id {
        IdentityId::Equiv122123P => {
            let (l, t) = equiv_lhs(order)?;
            (l, Some(t))
        }
        _ => (lhs(id, order)?, None),
    };
    let right = rhs(id, order)?;
    let m = series_equal(&left, &right, through.unwrap_or(i64::from(order)))?;
    Ok(report(id, Mode::Series, order, through, series_failure(m), start))
}

pub fn verify_enumeration(id: IdentityId, order: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let e = enumeration_side(id, order)?;
    let m = series_equal(&lhs(id, order)?, &e, i64::from(order))?;
    Ok(report(id, Mode::Enumeration, order, None, series_failure(m), start))
}

/// One row of a counting check: `(which, left, right)` at weight `n`.
pub type CountRow = (String, i64, i64);

/// Both sides of a counting theorem at weight `n`.
pub fn counting_sides(id: IdentityId, n: u32) -> Result<Vec<CountRow>> {
    let parity = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    let count_mod = |m: u32, rs: &[u32]| -> Result<i64> {
        Ok(count(n, &Family::Mod { m, residues: rs.to_vec() }.into())? as i64)
    };
    Ok(match id {
        IdentityId::LovejoyCount => {
            let mut signed: BTreeMap<usize, i64> = BTreeMap::new();
            for lam in enumerate(n, &Family::CFamily.into())? {
                let s = lam.stats();
                *signed.entry(s.distinct).or_default() += parity(s.repeated);
            }
            let mut od: BTreeMap<usize, i64> = BTreeMap::new();
            for lam in enumerate(n, &Family::OddDistinct.into())? {
                *od.entry(lam.len()).or_default() += 1;
            }
            (0..=n as usize)
                .map(|m| (format!("m={m}"), signed.get(&m).copied().unwrap_or(0), od.get(&m).copied().unwrap_or(0)))
                .collect()
        }
        IdentityId::Au1Par => {
            let mut s = 0;
            for lam in enumerate(n, &Family::DKa { k: 3, a: 1 }.into())? {
                s += parity(lam.len() + crate::partition::sl_count(&lam, 3, 1)?);
            }
            vec![("signed".into(), s, count_mod(3, &[1])?)]
        }
        IdentityId::Au2Par => {
            let mut s = 0;
            for lam in enumerate(n, &Family::WFamily.into())? {
                s += parity(lam.stats().repeated);
            }
            vec![("signed".into(), s, count_mod(6, &[2, 3])?)]
        }
        IdentityId::RrMacmahon => vec![
            ("clause 1".into(), count(n, &Family::Rr.into())? as i64, count_mod(5, &[1, 4])?),
            ("clause 2".into(), count(n, &Family::Rr2.into())? as i64, count_mod(5, &[2, 3])?),
        ],
        _ => return Err(id.unsupported(Mode::Counting)),
    })
}

pub fn verify_counting(id: IdentityId, n_max: u32) -> Result<VerificationReport> {
    if !id.supports(Mode::Counting) {
        return Err(id.unsupported(Mode::Counting));
    }
    let start = Instant::now();
    let mut failure = None;
    'outer: for n in 0..=n_max {
        for (which, left, right) in counting_sides(id, n)? {
            if left != right {
                failure = Some(Failure::Count { n, which, left, right });
                break 'outer;
            }
        }
    }
    Ok(report(id, Mode::Counting, n_max, None, failure, start))
}

fn fail(n: u32, detail: String) -> Option<Failure> {
    Some(Failure::Pairing { n, detail })
}

/// ψ at weight `w`: orbits cancel and fixed points give the product side.
fn psi_pairing(w: u32, left: &QSeries, right: &QSeries) -> Result<Option<Failure>> {
    let c_weight = |s: &crate::partition::PartitionStats| {
        IntPoly::monomial([0, 0, s.distinct as u32, 0], if s.repeated.is_multiple_of(2) { 1 } else { -1 })
    };
    let (mut total, mut fixed) = (IntPoly::zero(), IntPoly::zero());
    for lam in enumerate(w, &Family::CFamily.into())? {
        let out = psi(&lam)?;
        let s = lam.stats();
        total.add_assign_ref(&c_weight(&s));
        if out.case == PsiCase::Fixed {
            fixed.add_assign_ref(&c_weight(&s));
            continue;
        }
        let mut sum = c_weight(&s);
        sum.add_assign_ref(&c_weight(&out.output.stats()));
        if !sum.is_zero() {
            return Ok(fail(w, format!("psi({lam}) = {} does not cancel", out.output)));
        }
        if psi(&out.output)?.output != lam {
            return Ok(fail(w, format!("psi(psi({lam})) != {lam}")));
        }
    }
    let e = i64::from(w);
    if fixed != right.coeff(e) {
        return Ok(fail(w, format!("fixed points weigh {fixed}, product side has {}", right.coeff(e))));
    }
    if total != left.coeff(e) {
        return Ok(fail(w, format!("signed total {total}, sum side has {}", left.coeff(e))));
    }
    Ok(None)
}

/// θ at weight `w`: fixed points give the sum side, everything gives the product side.
fn theta_pairing(w: u32, left: &QSeries, right: &QSeries) -> Result<Option<Failure>> {
    let (mut total, mut fixed) = (IntPoly::zero(), IntPoly::zero());
    for p in weighted_pairs(w)? {
        let out = theta(&p)?;
        let sw = p.signed_weight();
        total.add_assign_ref(&sw);
        if out.case == ThetaCase::Fixed {
            fixed.add_assign_ref(&sw);
            continue;
        }
        let mut sum = sw;
        sum.add_assign_ref(&out.output.signed_weight());
        if !sum.is_zero() {
            return Ok(fail(w, format!("theta{p} = {} does not cancel", out.output)));
        }
        if theta(&out.output)?.output != p {
            return Ok(fail(w, format!("theta(theta{p}) != {p}")));
        }
    }
    let e = i64::from(w);
    if fixed != left.coeff(e) {
        return Ok(fail(w, format!("fixed points weigh {fixed}, sum side has {}", left.coeff(e))));
    }
    if total != right.coeff(e) {
        return Ok(fail(w, format!("signed total {total}, product side has {}", right.coeff(e))));
    }
    Ok(None)
}

type PairingCheck = fn(u32, &QSeries, &QSeries) -> Result<Option<Failure>>;

/// Runs the id's involution exhaustively at every weight up to `n`.
pub fn verify_pairing(id: IdentityId, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let (series_id, check): (IdentityId, PairingCheck) = match id {
        IdentityId::LovejoyCount => (IdentityId::Id121, psi_pairing),
        IdentityId::WeiM2Para => (IdentityId::WeiM2Para, theta_pairing),
        _ => return Err(id.unsupported(Mode::Pairing)),
    };
    let (left, right) = (lhs(series_id, n)?, rhs(series_id, n)?);
    let mut failure = None;
    for w in 0..=n {
        failure = check(w, &left, &right)?;
        if failure.is_some() {
            break;
        }
    }
    Ok(report(id, Mode::Pairing, n, None, failure, start))
}

pub fn verify(id: IdentityId, mode: Mode, order: u32) -> Result<VerificationReport> {
    match mode {
        Mode::Series => verify_series(id, order),
        Mode::Enumeration => verify_enumeration(id, order),
        Mode::Counting => verify_counting(id, order),
        Mode::Pairing => verify_pairing(id, order),
    }
}

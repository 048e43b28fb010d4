//! Truncated Laurent series in `q` with [`IntPoly`] coefficients.
//!
//! A series records the exponent `order` through which its coefficients are
//! known exactly. Every operation propagates that bound soundly: multiplying
//! by a factor with negative valuation lowers it, which is why products that
//! mix Laurent terms must be evaluated with some headroom.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::poly::{IntPoly, Monomial, Var};

pub const DEFAULT_FLOOR: i64 = -2;

/// Known-through order plus the lowest q-exponent a computation may reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub order: i64,
    pub floor: i64,
}

impl Truncation {
    pub fn new(order: i64) -> Self {
        Truncation { order, floor: DEFAULT_FLOOR }
    }

    pub fn with_floor(self, floor: i64) -> Self {
        Truncation { floor, ..self }
    }
}

impl From<i64> for Truncation {
    fn from(order: i64) -> Self {
        Truncation::new(order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    min_exp: i64,
    order: i64,
    floor: i64,
    /// Coefficients of `q^min_exp ..= q^order`.
    coeffs: Vec<IntPoly>,
}

impl QSeries {
    pub fn zero(t: impl Into<Truncation>) -> Self {
        let t = t.into();
        QSeries {
            min_exp: 0,
            order: t.order,
            floor: t.floor,
            coeffs: vec![IntPoly::zero(); (t.order + 1).max(0) as usize],
        }
    }

    pub fn one(t: impl Into<Truncation>) -> Self {
        QSeries::monomial(IntPoly::one(), 0, t).expect("q^0 is above any floor")
    }

    /// `coef * q^exp`, truncated.
    pub fn monomial(coef: IntPoly, exp: i64, t: impl Into<Truncation>) -> Result<Self, SeriesError> {
        QSeries::from_terms([(exp, coef)], t)
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (i64, IntPoly)>,
        t: impl Into<Truncation>,
    ) -> Result<Self, SeriesError> {
        let t = t.into();
        let terms: Vec<(i64, IntPoly)> = terms.into_iter().collect();
        let min_exp = terms.iter().map(|(e, _)| *e).min().unwrap_or(0).min(0);
        if min_exp < t.floor {
            return Err(SeriesError::TruncationUnderflow { min_exp, floor: t.floor });
        }
        let mut s = QSeries {
            min_exp,
            order: t.order,
            floor: t.floor,
            coeffs: vec![IntPoly::zero(); (t.order - min_exp + 1).max(0) as usize],
        };
        for (e, c) in terms {
            if e <= t.order {
                s.coeffs[(e - min_exp) as usize].add_assign_ref(&c);
            }
        }
        s.normalize();
        Ok(s)
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn truncation(&self) -> Truncation {
        Truncation { order: self.order, floor: self.floor }
    }

    pub fn coeff(&self, e: i64) -> IntPoly {
        self.coeff_ref(e).cloned().unwrap_or_default()
    }

    fn coeff_ref(&self, e: i64) -> Option<&IntPoly> {
        if e < self.min_exp || e > self.order {
            None
        } else {
            self.coeffs.get((e - self.min_exp) as usize)
        }
    }

    fn coeff_mut(&mut self, e: i64) -> &mut IntPoly {
        &mut self.coeffs[(e - self.min_exp) as usize]
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &IntPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }

    /// Lowest exponent with a nonzero coefficient, or `order + 1` when none
    /// is known.
    pub fn valuation(&self) -> i64 {
        self.terms().next().map(|(e, _)| e).unwrap_or(self.order + 1)
    }

    /// Drops leading zero coefficients while keeping `min_exp <= 0`.
    fn normalize(&mut self) {
        let target = self.valuation().min(0).max(self.min_exp);
        let drop = (target - self.min_exp) as usize;
        if drop > 0 {
            self.coeffs.drain(..drop.min(self.coeffs.len()));
            self.min_exp = target;
        }
    }

    pub fn truncate(&self, order: i64) -> QSeries {
        let order = order.min(self.order);
        let keep = (order - self.min_exp + 1).max(0) as usize;
        QSeries {
            min_exp: self.min_exp,
            order,
            floor: self.floor,
            coeffs: self.coeffs[..keep.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn with_floor(mut self, floor: i64) -> Result<Self, SeriesError> {
        if self.min_exp < floor {
            return Err(SeriesError::TruncationUnderflow { min_exp: self.min_exp, floor });
        }
        self.floor = floor;
        Ok(self)
    }

    fn combine(&self, other: &QSeries, negate: bool) -> QSeries {
        let order = self.order.min(other.order);
        let min_exp = self.min_exp.min(other.min_exp);
        let mut out = QSeries {
            min_exp,
            order,
            floor: self.floor.min(other.floor),
            coeffs: vec![IntPoly::zero(); (order - min_exp + 1).max(0) as usize],
        };
        for e in min_exp..=order {
            let slot = out.coeff_mut(e);
            if let Some(c) = self.coeff_ref(e) {
                slot.add_assign_ref(c);
            }
            if let Some(c) = other.coeff_ref(e) {
                if negate {
                    slot.sub_assign_ref(c);
                } else {
                    slot.add_assign_ref(c);
                }
            }
        }
        out.normalize();
        out
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.combine(other, true)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    /// Truncated product. The result is known through
    /// `min(order_a + min(val_b, 0), order_b + min(val_a, 0))`.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        let floor = self.floor.min(other.floor);
        let min_exp = self.min_exp + other.min_exp;
        if min_exp < floor {
            return Err(SeriesError::TruncationUnderflow { min_exp, floor });
        }
        let order = (self.order + other.valuation().min(0)).min(other.order + self.valuation().min(0));
        let mut out = QSeries {
            min_exp,
            order,
            floor,
            coeffs: vec![IntPoly::zero(); (order - min_exp + 1).max(0) as usize],
        };
        for (ea, ca) in self.terms() {
            if ea + other.min_exp > order {
                break;
            }
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if e > order {
                    break;
                }
                out.coeff_mut(e).add_product(ca, cb);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Multiplies by the exact monomial `coef * q^exp`.
    pub fn mul_monomial(&self, coef: &IntPoly, exp: i64) -> Result<QSeries, SeriesError> {
        let min_exp = (self.min_exp + exp).min(0);
        if min_exp < self.floor {
            return Err(SeriesError::TruncationUnderflow { min_exp, floor: self.floor });
        }
        let order = self.order + exp;
        let mut out = QSeries {
            min_exp,
            order,
            floor: self.floor,
            coeffs: vec![IntPoly::zero(); (order - min_exp + 1).max(0) as usize],
        };
        for (e, c) in self.terms() {
            *out.coeff_mut(e + exp) = c * coef;
        }
        out.normalize();
        Ok(out)
    }

    /// In place `self *= (1 - mono * q^k)` for an exact binomial factor.
    pub fn mul_one_minus(&mut self, mono: &IntPoly, k: i64) -> Result<(), SeriesError> {
        if k < 0 {
            let shifted = self.mul_monomial(mono, k)?;
            *self = self.sub(&shifted);
            return Ok(());
        }
        for e in (self.min_exp..=self.order).rev() {
            let src = e - k;
            if src < self.min_exp {
                break;
            }
            let add = &self.coeffs[(src - self.min_exp) as usize] * mono;
            self.coeff_mut(e).sub_assign_ref(&add);
        }
        self.normalize();
        Ok(())
    }

    /// In place `self /= (1 - mono * q^k)` for `k >= 1`.
    pub fn div_one_minus(&mut self, mono: &IntPoly, k: i64) {
        assert!(k >= 1, "geometric expansion needs a positive q-step");
        for e in self.min_exp + k..=self.order {
            let add = &self.coeffs[(e - k - self.min_exp) as usize] * mono;
            self.coeff_mut(e).add_assign_ref(&add);
        }
    }

    pub fn specialize(&self, bindings: &[(Var, i64)]) -> QSeries {
        let mut out = QSeries {
            coeffs: self.coeffs.iter().map(|c| c.specialize(bindings)).collect(),
            ..self.clone()
        };
        out.normalize();
        out
    }

    /// Substitutes `var -> var * q^m`, mapping `var^d q^e` to `var^d q^(e + m*d)`.
    pub fn shift_substitute(&self, var: Var, m: i64) -> Result<ShiftedSeries, SeriesError> {
        let max_degree = self.terms().map(|(_, c)| c.degree_in(var)).max().unwrap_or(0);
        let order = if m >= 0 { self.order } else { self.order + m * i64::from(max_degree) };
        let mut pieces: Vec<(i64, IntPoly)> = Vec::new();
        for (e, c) in self.terms() {
            for (mono, coef) in c.terms() {
                let ne = e + m * i64::from(mono[var.index()]);
                if ne <= order {
                    pieces.push((ne, IntPoly::monomial(*mono, coef.clone())));
                }
            }
        }
        let t = Truncation { order, floor: self.floor };
        Ok(ShiftedSeries { series: QSeries::from_terms(pieces, t)?, m, max_degree, source_order: self.order })
    }
}

/// Result of [`QSeries::shift_substitute`] with the bookkeeping needed to
/// pick a safe comparison order.
#[derive(Debug, Clone)]
pub struct ShiftedSeries {
    pub series: QSeries,
    pub m: i64,
    /// Highest power of the substituted variable among the source terms.
    pub max_degree: u32,
    pub source_order: i64,
}

impl ShiftedSeries {
    /// `N - |m| * max_degree`, the conservative order at which shifted
    /// comparisons are made.
    pub fn comparison_order(&self) -> i64 {
        self.source_order - self.m.abs() * i64::from(self.max_degree)
    }
}

/// `c * x^a y^b u^c v^d * q^e`, the argument of a q-Pochhammer symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMonomial {
    pub coef: i64,
    pub vars: Monomial,
    pub q_exp: i64,
}

impl QMonomial {
    pub fn new(coef: i64, vars: Monomial, q_exp: i64) -> Self {
        QMonomial { coef, vars, q_exp }
    }

    /// `coef * q^e` with no polynomial variables.
    pub fn q(coef: i64, q_exp: i64) -> Self {
        QMonomial { coef, vars: [0; 4], q_exp }
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::monomial(self.vars, self.coef)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u32),
    Infinite,
}

/// `(a; q^step)_count = prod_{m < count} (1 - a q^{step*m})`, known through
/// `t.order`. Finite products with negative exponents are expanded with
/// enough headroom that the result is exact through the requested order.
pub fn pochhammer(a: &QMonomial, step: u32, count: Count, t: impl Into<Truncation>) -> Result<QSeries, SeriesError> {
    let t = t.into();
    assert!(step >= 1, "pochhammer step must be positive");
    let step = i64::from(step);
    let mono = a.poly();
    let exps: Vec<i64> = match count {
        Count::Finite(n) => (0..i64::from(n)).map(|m| a.q_exp + step * m).collect(),
        Count::Infinite => {
            if a.q_exp < 1 {
                return Err(SeriesError::DivergentProduct { exponent: a.q_exp, step: step as u32 });
            }
            (0..).map(|m| a.q_exp + step * m).take_while(|&e| e <= t.order).collect()
        }
    };
    let headroom: i64 = exps.iter().filter(|&&e| e < 0).map(|e| -e).sum();
    let mut acc = QSeries::one(Truncation { order: t.order + headroom, floor: t.floor });
    for e in exps {
        acc.mul_one_minus(&mono, e)?;
    }
    Ok(acc.truncate(t.order))
}

/// `1 / (q^s; q^s)_n`, the generating function for partitions into at most
/// `n` parts, each scaled by `s`.
pub fn inverse_pochhammer(s: u32, n: u32, t: impl Into<Truncation>) -> QSeries {
    assert!(s >= 1, "inverse_pochhammer step must be positive");
    let mut acc = QSeries::one(t);
    let one = IntPoly::one();
    for k in 1..=i64::from(n) {
        acc.div_one_minus(&one, i64::from(s) * k);
    }
    acc
}

/// `1 / prod_{e in exps} (1 - q^e)`; used for "partitions into parts from
/// a set" product sides.
pub fn inverse_product(exps: impl IntoIterator<Item = i64>, t: impl Into<Truncation>) -> QSeries {
    let mut acc = QSeries::one(t);
    let one = IntPoly::one();
    for e in exps {
        acc.div_one_minus(&one, e);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchReport {
    Equal,
    Mismatch { exponent: i64, left: IntPoly, right: IntPoly },
}

impl MatchReport {
    pub fn is_equal(&self) -> bool {
        matches!(self, MatchReport::Equal)
    }
}

/// Coefficientwise comparison through `q^through`.
pub fn series_equal(a: &QSeries, b: &QSeries, through: i64) -> Result<MatchReport, SeriesError> {
    let known = a.order.min(b.order);
    if through > known {
        return Err(SeriesError::Precision { through, known });
    }
    for e in a.min_exp.min(b.min_exp)..=through {
        let (l, r) = (a.coeff(e), b.coeff(e));
        if l != r {
            return Ok(MatchReport::Mismatch { exponent: e, left: l, right: r });
        }
    }
    Ok(MatchReport::Equal)
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coef = if c.num_terms() == 1 { c.to_string() } else { format!("({c})") };
            match e {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*q")?,
                _ => write!(f, "{coef}*q^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    q: i64,
    poly: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    min_exp: i64,
    order: i64,
    coeffs: Vec<CoeffJson>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.terms().map(|(q, c)| CoeffJson { q, poly: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        let floor = DEFAULT_FLOOR.min(j.min_exp);
        let mut s = QSeries {
            min_exp: j.min_exp,
            order: j.order,
            floor,
            coeffs: vec![IntPoly::zero(); (j.order - j.min_exp + 1).max(0) as usize],
        };
        for c in j.coeffs {
            if c.q < j.min_exp || c.q > j.order {
                return Err(serde::de::Error::custom(format!("exponent {} outside [{}, {}]", c.q, j.min_exp, j.order)));
            }
            s.coeff_mut(c.q).add_assign_ref(&c.poly);
        }
        Ok(s)
    }
}

/// Integer-only helper: coefficient list of a series whose coefficients are
/// all constants.
pub fn constant_coefficients(s: &QSeries, through: i64) -> Vec<BigInt> {
    (0..=through).map(|e| s.coeff(e).constant_term()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn u() -> IntPoly {
        IntPoly::var(Var::U)
    }

    fn q_poly(coeffs: &[i64], order: i64) -> QSeries {
        QSeries::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, IntPoly::constant(c))), order).unwrap()
    }

    #[test]
    fn mul_examples() {
        let a = q_poly(&[1, 1], 6);
        let b = q_poly(&[1, -1], 6);
        assert_eq!(a.mul(&b).unwrap(), q_poly(&[1, 0, -1], 6));
        assert_eq!(a.mul(&QSeries::one(6)).unwrap(), a);
    }

    #[test]
    fn three_factor_u_squared_coefficient() {
        let mut s = QSeries::one(20);
        for k in 1..=3 {
            s.mul_one_minus(&-u(), k).unwrap();
        }
        let u2: Vec<(i64, BigInt)> = s
            .terms()
            .map(|(e, c)| (e, c.coeff(&[0, 0, 2, 0])))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        assert_eq!(u2, vec![(3, 1.into()), (4, 1.into()), (5, 1.into())]);
    }

    #[test]
    fn pochhammer_examples() {
        let od = pochhammer(&QMonomial::new(-1, [0, 0, 1, 0], 1), 2, Count::Infinite, 5).unwrap();
        let want = QSeries::from_terms(
            [(0, IntPoly::one()), (1, u()), (3, u()), (4, u().pow(2)), (5, u())],
            5,
        )
        .unwrap();
        assert_eq!(od, want);

        let p0 = pochhammer(&QMonomial::q(1, 1), 1, Count::Finite(0), 5).unwrap();
        assert_eq!(p0, QSeries::one(5));

        let strict = pochhammer(&QMonomial::new(-1, [0, 0, 1, 0], 1), 1, Count::Infinite, 4).unwrap();
        let upu2 = &u() + &u().pow(2);
        let want = QSeries::from_terms(
            [(0, IntPoly::one()), (1, u()), (2, u()), (3, upu2.clone()), (4, upu2)],
            4,
        )
        .unwrap();
        assert_eq!(strict, want);

        assert!(matches!(
            pochhammer(&QMonomial::q(1, 0), 1, Count::Infinite, 4),
            Err(SeriesError::DivergentProduct { .. })
        ));
    }

    #[test]
    fn inverse_pochhammer_examples() {
        assert_eq!(inverse_pochhammer(1, 2, 4), q_poly(&[1, 1, 2, 2, 3], 4));
        assert_eq!(inverse_pochhammer(1, 0, 4), QSeries::one(4));
        assert_eq!(inverse_pochhammer(2, 1, 6), q_poly(&[1, 0, 1, 0, 1, 0, 1], 6));
    }

    #[test]
    fn laurent_product_tracks_precision() {
        // (1 + q^-1) times a series known through 10 is only known through 9.
        let lp = QSeries::from_terms([(-1, IntPoly::one()), (0, IntPoly::one())], 10).unwrap();
        let p = lp.mul(&inverse_pochhammer(1, 3, 10)).unwrap();
        assert_eq!(p.order(), 9);
        assert_eq!(p.min_exp(), -1);
        let deep = QSeries::from_terms([(-2, IntPoly::one())], 10).unwrap();
        assert!(matches!(
            deep.mul(&lp),
            Err(SeriesError::TruncationUnderflow { min_exp: -3, floor: -2 })
        ));
    }

    #[test]
    fn finite_pochhammer_with_negative_exponents_is_exact() {
        // (q^-2; q)_2 = (1 - q^-2)(1 - q^-1) = 1 - q^-1 - q^-2 + q^-3
        let p = pochhammer(&QMonomial::q(1, -2), 1, Count::Finite(2), Truncation::new(5).with_floor(-3)).unwrap();
        let want = QSeries::from_terms(
            [(-3, IntPoly::one()), (-2, IntPoly::constant(-1)), (-1, IntPoly::constant(-1)), (0, IntPoly::one())],
            Truncation::new(5).with_floor(-3),
        )
        .unwrap();
        assert_eq!(p, want);
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn shift_examples() {
        let uq = QSeries::monomial(u(), 1, 10).unwrap();
        let sh = uq.shift_substitute(Var::U, 2).unwrap();
        assert_eq!(sh.series, QSeries::monomial(u(), 3, 10).unwrap());
        assert_eq!(QSeries::one(10).shift_substitute(Var::U, 2).unwrap().series, QSeries::one(10));

        let l = pochhammer(&QMonomial::new(-1, [0, 0, 1, 0], 1), 1, Count::Infinite, 12).unwrap();
        let sh = l.shift_substitute(Var::U, 2).unwrap();
        // strict partitions of weight <= 12 have at most 4 parts
        assert_eq!(sh.max_degree, 4);
        assert_eq!(sh.comparison_order(), 12 - 2 * 4);
        let direct = pochhammer(&QMonomial::new(-1, [0, 0, 1, 0], 3), 1, Count::Infinite, 12).unwrap();
        assert!(series_equal(&sh.series, &direct, sh.comparison_order()).unwrap().is_equal());
        // positive shifts never need coefficients above the order, so the
        // whole known range agrees as well
        assert!(series_equal(&sh.series, &direct, 12).unwrap().is_equal());
    }

    #[test]
    fn equality_examples() {
        let a = q_poly(&[1, 1], 5);
        assert!(series_equal(&a, &a, 5).unwrap().is_equal());
        let b = q_poly(&[1, 1, 1], 5);
        assert!(series_equal(&a, &b, 1).unwrap().is_equal());
        assert_eq!(
            series_equal(&a, &b, 3).unwrap(),
            MatchReport::Mismatch { exponent: 2, left: IntPoly::zero(), right: IntPoly::one() }
        );
        assert!(matches!(series_equal(&a, &b, 6), Err(SeriesError::Precision { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let s = QSeries::from_terms([(-1, u()), (0, IntPoly::one()), (2, IntPoly::constant(-3))], 4).unwrap();
        let txt = serde_json::to_string(&s).unwrap();
        assert_eq!(
            txt,
            r#"{"min_exp":-1,"order":4,"coeffs":[{"q":-1,"poly":[{"x":0,"y":0,"u":1,"v":0,"coef":"1"}]},{"q":0,"poly":[{"x":0,"y":0,"u":0,"v":0,"coef":"1"}]},{"q":2,"poly":[{"x":0,"y":0,"u":0,"v":0,"coef":"-3"}]}]}"#
        );
        assert_eq!(serde_json::from_str::<QSeries>(&txt).unwrap(), s);
    }

    fn small_series() -> impl Strategy<Value = QSeries> {
        prop::collection::vec((0i64..8, -3i64..4, 0u32..2), 0..6).prop_map(|terms| {
            QSeries::from_terms(
                terms.into_iter().map(|(e, c, d)| (e, IntPoly::monomial([0, 0, d, 0], c))),
                10,
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn mul_is_associative_and_commutative(a in small_series(), b in small_series(), c in small_series()) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert!(series_equal(&ab_c, &a_bc, 10).unwrap().is_equal());
            prop_assert!(series_equal(&a.mul(&b).unwrap(), &b.mul(&a).unwrap(), 10).unwrap().is_equal());
        }

        #[test]
        fn pochhammer_step_recurrence(n in 0u32..8, s in 1u32..4, e in 1i64..4, c in -2i64..3) {
            let a = QMonomial::new(c, [0, 0, 1, 0], e);
            let lhs = pochhammer(&a, s, Count::Finite(n + 1), 30).unwrap();
            let mut rhs = pochhammer(&a, s, Count::Finite(n), 30).unwrap();
            rhs.mul_one_minus(&a.poly(), e + i64::from(s) * i64::from(n)).unwrap();
            prop_assert!(series_equal(&lhs, &rhs, 30).unwrap().is_equal());
        }

        #[test]
        fn inverse_pochhammer_inverts(n in 0u32..8, s in 1u32..4) {
            let inv = inverse_pochhammer(s, n, 30);
            let fwd = pochhammer(&QMonomial::q(1, i64::from(s)), s, Count::Finite(n), 30).unwrap();
            prop_assert!(series_equal(&inv.mul(&fwd).unwrap(), &QSeries::one(30), 30).unwrap().is_equal());
        }
    }
}

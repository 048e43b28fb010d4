//! Double sums `Σ_{i,j} sign · x^.. y^.. u^.. v^.. q^{E(i,j)} / ((q^s;q^s)_i (q^t;q^t)_j)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::poly::{IntPoly, Monomial};
use crate::series::{QSeries, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignRule {
    Plus,
    /// `(-1)^j`
    MinusJ,
    /// `(-1)^{i+j}`
    MinusIJ,
}

impl SignRule {
    fn sign(self, i: u64, j: u64) -> i64 {
        let odd = match self {
            SignRule::Plus => false,
            SignRule::MinusJ => j % 2 == 1,
            SignRule::MinusIJ => (i + j) % 2 == 1,
        };
        if odd {
            -1
        } else {
            1
        }
    }
}

/// `ci*i + cj*j + c0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linear {
    pub ci: i64,
    pub cj: i64,
    pub c0: i64,
}

impl Linear {
    pub const ZERO: Linear = Linear { ci: 0, cj: 0, c0: 0 };

    pub fn new(ci: i64, cj: i64, c0: i64) -> Self {
        Linear { ci, cj, c0 }
    }

    pub fn eval(&self, i: i64, j: i64) -> i64 {
        self.ci * i + self.cj * j + self.c0
    }
}

/// `(ii*i^2 + ij*i*j + jj*j^2 + i1*i + j1*j + c) / den`. The denominator
/// lets binomial forms such as `3j(3j+1)/2` be written directly; the value
/// must be an integer at every lattice point that is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadratic {
    pub ii: i64,
    pub ij: i64,
    pub jj: i64,
    pub i1: i64,
    pub j1: i64,
    pub c: i64,
    pub den: i64,
}

impl Quadratic {
    pub fn new(ii: i64, ij: i64, jj: i64, i1: i64, j1: i64, c: i64) -> Self {
        Quadratic { ii, ij, jj, i1, j1, c, den: 1 }
    }

    pub fn over(self, den: i64) -> Self {
        Quadratic { den, ..self }
    }

    fn numerator(&self, i: i64, j: i64) -> i64 {
        self.ii * i * i + self.ij * i * j + self.jj * j * j + self.i1 * i + self.j1 * j + self.c
    }

    pub fn eval(&self, i: i64, j: i64) -> Option<i64> {
        let n = self.numerator(i, j);
        (n % self.den == 0).then(|| n / self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSumSpec {
    pub sign: SignRule,
    pub exponent: Quadratic,
    /// Exponents of x, y, u, v in that order.
    pub vars: [Linear; 4],
    /// `(s, t)` in `1/((q^s;q^s)_i (q^t;q^t)_j)`.
    pub steps: (u32, u32),
    /// Upper bound on `j`; `Some(0)` turns the spec into a single sum over `i`.
    pub j_max: Option<u32>,
}

impl DoubleSumSpec {
    pub fn new(sign: SignRule, exponent: Quadratic, steps: (u32, u32)) -> Self {
        DoubleSumSpec { sign, exponent, vars: [Linear::ZERO; 4], steps, j_max: None }
    }

    pub fn single(sign: SignRule, exponent: Quadratic, step: u32) -> Self {
        DoubleSumSpec { j_max: Some(0), ..DoubleSumSpec::new(sign, exponent, (step, 1)) }
    }

    pub fn x(mut self, l: Linear) -> Self {
        self.vars[0] = l;
        self
    }

    pub fn y(mut self, l: Linear) -> Self {
        self.vars[1] = l;
        self
    }

    pub fn u(mut self, l: Linear) -> Self {
        self.vars[2] = l;
        self
    }

    pub fn v(mut self, l: Linear) -> Self {
        self.vars[3] = l;
        self
    }

    /// Lattice box `[0, imax] x [0, jmax]` outside of which `E > n`.
    ///
    /// Uses `i*j >= -(i^2 + j^2)/2` to bound a negative cross term, so both
    /// diagonal coefficients must stay positive after absorbing it.
    pub fn bounds(&self, n: i64) -> Result<(i64, i64), SeriesError> {
        let e = &self.exponent;
        if e.den <= 0 {
            return Err(SeriesError::UnboundedSpec(format!("denominator {} must be positive", e.den)));
        }
        let neg = if e.ij < 0 { -e.ij } else { 0 };
        // 2*den*E >= a2 i^2 + 2 i1 i + c2 j^2 + 2 j1 j + 2c
        let a2 = 2 * e.ii - neg;
        let c2 = 2 * e.jj - neg;
        let single = self.j_max == Some(0);
        if a2 <= 0 {
            return Err(SeriesError::UnboundedSpec(format!("i^2 coefficient {} does not dominate the cross term", e.ii)));
        }
        if !single && self.j_max.is_none() && c2 <= 0 {
            return Err(SeriesError::UnboundedSpec(format!("j^2 coefficient {} does not dominate the cross term", e.jj)));
        }
        let budget = 2 * e.den * n - 2 * e.c;
        let jcap = self.j_max.map(i64::from);
        let min_i = min_convex(a2, 2 * e.i1, None);
        let min_j = if c2 > 0 { min_convex(c2, 2 * e.j1, jcap) } else { min_linear_part(c2, 2 * e.j1, jcap.unwrap_or(0)) };
        let imax = last_within(a2, 2 * e.i1, budget - min_j, None);
        let jmax = if c2 > 0 {
            last_within(c2, 2 * e.j1, budget - min_i, jcap)
        } else {
            jcap.unwrap_or(0)
        };
        Ok((imax, jmax))
    }
}

/// `min_{0 <= t <= cap} a t^2 + b t` for `a > 0`.
fn min_convex(a: i64, b: i64, cap: Option<i64>) -> i64 {
    let mut best = 0;
    let mut t = 0;
    loop {
        if cap.is_some_and(|c| t > c) {
            break;
        }
        let v = a * t * t + b * t;
        best = best.min(v);
        if 2 * a * t + b > 0 {
            break;
        }
        t += 1;
    }
    best
}

fn min_linear_part(a: i64, b: i64, cap: i64) -> i64 {
    (0..=cap).map(|t| a * t * t + b * t).min().unwrap_or(0)
}

/// Largest `t >= 0` with `a t^2 + b t <= budget` (and `t <= cap`), `a > 0`;
/// `-1` if even `t = 0` is too large.
fn last_within(a: i64, b: i64, budget: i64, cap: Option<i64>) -> i64 {
    let mut last = -1;
    let mut t = 0;
    loop {
        if cap.is_some_and(|c| t > c) {
            break;
        }
        let v = a * t * t + b * t;
        if v <= budget {
            last = t;
        } else if 2 * a * t + b > 0 {
            break;
        }
        t += 1;
    }
    last
}

/// Coefficients of `1/(q^s;q^s)_n` through `q^len-1`, for every `n` up to `nmax`.
fn inverse_table(s: u32, nmax: i64, len: usize) -> Vec<Vec<BigInt>> {
    let mut cur = vec![BigInt::zero(); len];
    if len > 0 {
        cur[0] = BigInt::from(1);
    }
    let mut out = vec![cur.clone()];
    for n in 1..=nmax.max(0) as usize {
        let k = s as usize * n;
        for e in k..len {
            let add = cur[e - k].clone();
            cur[e] += add;
        }
        out.push(cur.clone());
    }
    out
}

/// Evaluates the spec through `q^t.order`.
pub fn double_sum(spec: &DoubleSumSpec, t: impl Into<Truncation>) -> Result<QSeries, SeriesError> {
    let t = t.into();
    let n = t.order;
    let (imax, jmax) = spec.bounds(n)?;
    let mut terms: Vec<(i64, i64, i64)> = Vec::new();
    let mut emin = 0;
    for i in 0..=imax {
        for j in 0..=jmax {
            let Some(e) = spec.exponent.eval(i, j) else {
                return Err(SeriesError::UnboundedSpec(format!("exponent is not an integer at (i, j) = ({i}, {j})")));
            };
            if e <= n {
                emin = emin.min(e);
                terms.push((i, j, e));
            }
        }
    }
    if emin < t.floor {
        return Err(SeriesError::TruncationUnderflow { min_exp: emin, floor: t.floor });
    }
    let len = (n - emin + 1).max(0) as usize;
    let inv_i = inverse_table(spec.steps.0, imax, len);
    let inv_j = inverse_table(spec.steps.1, jmax, len);

    let mut acc: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
    for (i, j, e) in terms {
        let mut mono = [0u32; 4];
        for (slot, lin) in mono.iter_mut().zip(&spec.vars) {
            let d = lin.eval(i, j);
            *slot = u32::try_from(d).map_err(|_| {
                SeriesError::UnboundedSpec(format!("negative variable exponent {d} at (i, j) = ({i}, {j})"))
            })?;
        }
        let sign = spec.sign.sign(i as u64, j as u64);
        // room left above q^e
        let room = (n - e) as usize;
        let a = &inv_i[i as usize];
        let b = &inv_j[j as usize];
        let row = acc.entry(mono).or_insert_with(|| vec![BigInt::zero(); len]);
        let base = (e - emin) as usize;
        for (p, ap) in a.iter().enumerate().take(room + 1) {
            if ap.is_zero() {
                continue;
            }
            for (r, br) in b.iter().enumerate().take(room + 1 - p) {
                if br.is_zero() {
                    continue;
                }
                let prod = ap * br;
                if sign < 0 {
                    row[base + p + r] -= prod;
                } else {
                    row[base + p + r] += prod;
                }
            }
        }
    }

    let mut by_exp: Vec<IntPoly> = vec![IntPoly::zero(); len];
    for (mono, row) in acc {
        for (k, c) in row.iter().enumerate() {
            by_exp[k].add_term(mono, c);
        }
    }
    QSeries::from_terms(by_exp.into_iter().enumerate().map(|(k, p)| (k as i64 + emin, p)), t)
}

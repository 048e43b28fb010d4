//! Sparse integer polynomials over the fixed alphabet `{x, y, u, v}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "u", "v"][self.index()]
    }
}

/// Exponent vector indexed by [`Var::index`].
pub type Monomial = [u32; 4];

/// Polynomial with arbitrary-precision integer coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::monomial([0; 4], c)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        IntPoly::monomial(e, 1)
    }

    pub fn monomial(exps: Monomial, coef: impl Into<BigInt>) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exps, coef);
        }
        IntPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &Monomial) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[0; 4])
    }

    /// Highest exponent of `v` over all terms.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Monomial, coef: &BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_default();
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add_assign_ref(&mut self, other: &IntPoly) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &IntPoly) {
        for (e, c) in &other.terms {
            self.add_term(*e, &-c);
        }
    }

    /// `self += a * b` without materialising the product.
    pub fn add_product(&mut self, a: &IntPoly, b: &IntPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                self.add_term(e, &(ca * cb));
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitutes integer values for some variables.
    pub fn specialize(&self, bindings: &[(Var, i64)]) -> IntPoly {
        let mut out = IntPoly::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            let mut c = c.clone();
            for &(v, val) in bindings {
                let k = std::mem::take(&mut e[v.index()]);
                c *= num_traits::pow(BigInt::from(val), k as usize);
            }
            out.add_term(e, &c);
        }
        out
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl fmt::Display for IntPoly {
    /// Terms in decreasing monomial order, e.g. `x^2*y^2 + x*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(default)]
    x: u32,
    #[serde(default)]
    y: u32,
    #[serde(default)]
    u: u32,
    #[serde(default)]
    v: u32,
    coef: String,
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson { x: e[0], y: e[1], u: e[2], v: e[3], coef: c.to_string() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = IntPoly::zero();
        for t in terms {
            let c: BigInt = t.coef.parse().map_err(serde::de::Error::custom)?;
            out.add_term([t.x, t.y, t.u, t.v], &c);
        }
        Ok(out)
    }
}

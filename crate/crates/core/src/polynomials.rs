//! Univariate polynomials over exact rationals or `f64`, and the numerator /
//! denominator pair of the cleared score equation.
//!
//! With shifts `c_1, …, c_n` the score is `Σ 1 / (θ + c_i) = h(θ) / k(θ)`
//! where `k(θ) = ∏ (θ + c_i)` and `h(θ) = Σ_i ∏_{j≠i} (θ + c_j)`. Since
//! `h = k'`, [`build_h`] differentiates [`build_k`] instead of summing
//! cofactor products.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact scalar type.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarKind {
    #[serde(rename = "exact-rational")]
    ExactRational,
    #[serde(rename = "approximate-real")]
    ApproximateReal,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::ExactRational => "exact-rational",
            ScalarKind::ApproximateReal => "approximate-real",
        })
    }
}

/// Coefficient field for [`Poly`].
pub trait Scalar: Clone + fmt::Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> {
    const KIND: ScalarKind;

    fn from_usize(n: usize) -> Self;

    fn is_finite(&self) -> bool {
        true
    }

    fn abs_f64(&self) -> f64;

    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Result<Self>;
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::ApproximateReal;

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn abs_f64(&self) -> f64 {
        self.abs()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(*self)
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::ModeMismatch(format!("expected a real number, found {v}")))
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::ExactRational;

    fn from_usize(n: usize) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn abs_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            other => Err(Error::ModeMismatch(format!(
                "expected a \"p/q\" string, found {other}"
            ))),
        }
    }
}

/// Parses `p/q` or a bare integer `p` (meaning `p/1`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let bad = || Error::Parse(format!("`{s}` is not a rational literal p/q"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Always `p/q` in lowest terms, with the sign on `p`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Polynomial with ascending coefficients and no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `θ + c`
    pub fn linear_factor(c: S) -> Self {
        Self::new(vec![c, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial, `-∞`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn kind(&self) -> ScalarKind {
        S::KIND
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| S::from_usize(i) * c.clone())
            .collect();
        Self::new(coeffs)
    }

    /// Multiplies in place by `θ + c`.
    pub fn mul_linear(&mut self, c: &S) {
        if self.is_zero() {
            return;
        }
        let n = self.coeffs.len();
        self.coeffs.push(S::zero());
        for i in (0..=n).rev() {
            let shifted = if i > 0 {
                self.coeffs[i - 1].clone()
            } else {
                S::zero()
            };
            self.coeffs[i] = shifted + c.clone() * self.coeffs[i].clone();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                a + b
            })
            .collect();
        Self::new(coeffs)
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let lc = lc.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / lc.clone()).collect())
            }
        }
    }

    /// Long division: returns `(q, r)` with `self = q * divisor + r` and
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidArgument(
                "division by the zero polynomial".into(),
            ));
        };
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            // exact zero regardless of rounding in approximate mode
            rem[k + dd] = S::zero();
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Sum of coefficient magnitudes.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::abs_f64).sum()
    }
}

impl Poly<f64> {
    /// Evaluates at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `Σ |a_i| |z|^i`, the natural scale for the residual at `z`.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.abs())
    }
}

impl Poly<Rational> {
    /// Lossy conversion to `f64` coefficients.
    pub fn to_approx(&self) -> Poly<f64> {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
                .collect(),
        )
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            // keep intermediate remainders monic to limit coefficient growth
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }
}

impl<S: Scalar> fmt::Display for Poly<S>
where
    S: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})θ")?,
                _ => write!(f, "({c})θ^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    scalar_kind: ScalarKind,
    coeffs: Vec<serde_json::Value>,
}

impl<S: Scalar> Serialize for Poly<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        PolyRepr {
            scalar_kind: S::KIND,
            coeffs: self.coeffs.iter().map(Scalar::to_json).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Poly<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        if repr.scalar_kind != S::KIND {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, found {}",
                S::KIND,
                repr.scalar_kind
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Poly::new(coeffs))
    }
}

/// A polynomial whose scalar kind is only known at run time, e.g. one read
/// from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoly {
    Exact(Poly<Rational>),
    Approx(Poly<f64>),
}

impl AnyPoly {
    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyPoly::Exact(_) => ScalarKind::ExactRational,
            AnyPoly::Approx(_) => ScalarKind::ApproximateReal,
        }
    }

    pub fn derivative(&self) -> AnyPoly {
        match self {
            AnyPoly::Exact(p) => AnyPoly::Exact(p.derivative()),
            AnyPoly::Approx(p) => AnyPoly::Approx(p.derivative()),
        }
    }

    /// Exact-mode gcd; approximate operands are rejected.
    pub fn gcd(&self, other: &AnyPoly) -> Result<AnyPoly> {
        match (self, other) {
            (AnyPoly::Exact(a), AnyPoly::Exact(b)) => Ok(AnyPoly::Exact(a.gcd(b)?)),
            _ => Err(Error::ModeMismatch(format!(
                "gcd is only defined for exact-rational polynomials (got {} and {})",
                self.kind(),
                other.kind()
            ))),
        }
    }

    pub fn mul(&self, other: &AnyPoly) -> Result<AnyPoly> {
        match (self, other) {
            (AnyPoly::Exact(a), AnyPoly::Exact(b)) => Ok(AnyPoly::Exact(a.mul(b))),
            (AnyPoly::Approx(a), AnyPoly::Approx(b)) => Ok(AnyPoly::Approx(a.mul(b))),
            _ => Err(Error::ModeMismatch(format!(
                "cannot combine {} with {}",
                self.kind(),
                other.kind()
            ))),
        }
    }
}

impl Serialize for AnyPoly {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            AnyPoly::Exact(p) => p.serialize(serializer),
            AnyPoly::Approx(p) => p.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for AnyPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        match repr.scalar_kind {
            ScalarKind::ExactRational => repr
                .coeffs
                .iter()
                .map(Rational::from_json)
                .collect::<Result<Vec<_>>>()
                .map(|c| AnyPoly::Exact(Poly::new(c))),
            ScalarKind::ApproximateReal => repr
                .coeffs
                .iter()
                .map(f64::from_json)
                .collect::<Result<Vec<_>>>()
                .map(|c| AnyPoly::Approx(Poly::new(c))),
        }
        .map_err(D::Error::custom)
    }
}

/// Nonempty list of finite, nonzero shifts `c_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CShiftList<S> {
    values: Vec<S>,
}

impl<S: Scalar> CShiftList<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("shift list is empty".into()));
        }
        if let Some((i, _)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| v.is_zero() || !v.is_finite())
        {
            return Err(Error::InvalidArgument(format!(
                "shift {i} must be finite and nonzero"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

impl CShiftList<Rational> {
    pub fn parse(literals: &[impl AsRef<str>]) -> Result<Self> {
        let values = literals
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn to_approx(&self) -> CShiftList<f64> {
        CShiftList {
            values: self
                .values
                .iter()
                .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
                .collect(),
        }
    }
}

/// `k(θ) = ∏ (θ + c_i)`, monic of degree `n`.
pub fn build_k<S: Scalar>(c: &CShiftList<S>) -> Poly<S> {
    let mut k = Poly::constant(S::one());
    for ci in c.values() {
        k.mul_linear(ci);
    }
    k
}

/// `h(θ) = k'(θ)`, degree `n - 1` with leading coefficient `n`.
pub fn build_h<S: Scalar>(c: &CShiftList<S>) -> Poly<S> {
    build_k(c).derivative()
}

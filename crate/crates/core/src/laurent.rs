//! Exact Laurent polynomials in `qs` with rational coefficients and their
//! fraction field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ring operations shared by the two scalar types, used by the generic
/// sparse operators.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// Sparse Laurent polynomial `sum c_e qs^e`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `qs^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// Builds from `(coefficient, exponent)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(e, BigRational::from_integer(BigInt::from(c)));
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Returns `(c, e)` when the value is a single term `c qs^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Multiplies by `qs^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `qs -> qs^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Dense coefficients from the lowest exponent upward.
    fn dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, v: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in v.iter().enumerate() {
            out.add_term(lo + k as i64, c.clone());
        }
        out
    }

    /// Quantum integer `[k]` in `q_i = qs^e`.
    pub fn q_int(k: i64, e: i64) -> Self {
        let k = k.abs();
        Self::from_terms((0..k).map(|j| (1, e * (k - 1 - 2 * j))))
    }

    /// Quantum factorial `[k]!` in `q_i = qs^e`.
    pub fn q_factorial(k: i64, e: i64) -> Self {
        (1..=k).fold(Self::one(), |acc, j| &acc * &Self::q_int(j, e))
    }

    /// Gaussian binomial `[m choose k]` in `q_i = qs^e`.
    pub fn q_binomial(m: i64, k: i64, e: i64) -> Self {
        if k < 0 || k > m {
            return Self::zero();
        }
        let num = Self::q_factorial(m, e);
        let den = &Self::q_factorial(k, e) * &Self::q_factorial(m - k, e);
        RationalScalar::new(num, den)
            .expect("nonzero factorial")
            .to_laurent()
            .expect("Gaussian binomials are Laurent polynomials")
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { $tr::$m(&self, &rhs) }
        }
    )*};
}
forward_owned!(LaurentScalar, Add add, Sub sub, Mul mul);

impl Scalar for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn one() -> Self {
        LaurentScalar::one()
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, c: &BigRational, e: i64) -> fmt::Result {
    let abs = c.abs();
    let var = match e {
        0 => String::new(),
        1 => "qs".to_string(),
        _ => format!("qs^{e}"),
    };
    if var.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{abs}*{var}")
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            fmt_coeff_term(f, c, *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense polynomial helpers over the rationals (index = degree).
mod poly {
    use super::*;

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r[r.len() - 1].clone() / &lead;
            for (k, bk) in b.iter().enumerate() {
                let sub = bk * &c;
                r[shift + k] -= sub;
            }
            q[shift] = c;
            r = trim(r);
        }
        (q, r)
    }

    pub fn monic(p: Vec<BigRational>) -> Vec<BigRational> {
        let lead = p.last().cloned().expect("nonzero polynomial");
        p.into_iter().map(|c| c / &lead).collect()
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = if r.is_empty() { r } else { monic(r) };
        }
        monic(x)
    }
}

/// Element of `Q(qs)` in canonical form: the denominator has lowest exponent
/// 0 with constant coefficient 1, and numerator and denominator are coprime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from(LaurentScalar::zero()));
        }
        let s = den.min_exp().unwrap_or(0);
        let (num, den) = (num.shift(-s), den.shift(-s));
        let (num, den) = if den.num_terms() == 1 {
            (num, den)
        } else {
            let (nlo, nd) = num.dense();
            let (_, dd) = den.dense();
            let g = poly::gcd(&nd, &dd);
            if g.len() <= 1 {
                (num, den)
            } else {
                let (nq, _) = poly::divrem(&nd, &g);
                let (dq, _) = poly::divrem(&dd, &g);
                (LaurentScalar::from_dense(nlo, &nq), LaurentScalar::from_dense(0, &dq))
            }
        };
        let c0 = den.coeff(0);
        let inv = BigRational::one() / c0;
        Ok(Self { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn zero() -> Self {
        Self::from(LaurentScalar::zero())
    }

    pub fn one() -> Self {
        Self::from(LaurentScalar::one())
    }

    pub fn numerator(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentScalar> {
        self.is_laurent().then(|| self.num.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Order of vanishing at `qs = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        // The canonical denominator has valuation 0.
        self.num.min_exp()
    }

    /// True iff the value lies in the local ring at `qs = 0`.
    pub fn is_regular(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn eval_at_zero(&self) -> Result<BigRational> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        Ok(self.num.coeff(0))
    }
}

impl From<LaurentScalar> for RationalScalar {
    fn from(num: LaurentScalar) -> Self {
        Self { num, den: LaurentScalar::one() }
    }
}

impl Add for &RationalScalar {
    type Output = RationalScalar;
    fn add(self, rhs: &RationalScalar) -> RationalScalar {
        if self.den == rhs.den {
            if self.is_laurent() {
                return RationalScalar::from(&self.num + &rhs.num);
            }
            return RationalScalar::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalScalar::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero")
    }
}

impl Sub for &RationalScalar {
    type Output = RationalScalar;
    fn sub(self, rhs: &RationalScalar) -> RationalScalar {
        self + &(-rhs)
    }
}

impl Mul for &RationalScalar {
    type Output = RationalScalar;
    fn mul(self, rhs: &RationalScalar) -> RationalScalar {
        if self.is_laurent() && rhs.is_laurent() {
            return RationalScalar::from(&self.num * &rhs.num);
        }
        RationalScalar::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(RationalScalar, Add add, Sub sub, Mul mul);

impl Scalar for RationalScalar {
    fn zero() -> Self {
        RationalScalar::zero()
    }
    fn one() -> Self {
        RationalScalar::one()
    }
    fn is_zero(&self) -> bool {
        RationalScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

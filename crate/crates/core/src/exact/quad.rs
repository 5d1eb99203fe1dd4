use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rational};

/// A square-free integer `m >= 2`; the field is ℚ(√m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand(u64);

impl Radicand {
    pub const TWO: Radicand = Radicand(2);

    pub fn new(m: u64) -> Result<Self, ExactError> {
        if m < 2 {
            return Err(ExactError::InvalidRadicand(m));
        }
        let mut f = 2u64;
        while f.saturating_mul(f) <= m {
            if m.is_multiple_of(f * f) {
                return Err(ExactError::InvalidRadicand(m));
            }
            f += 1;
        }
        Ok(Radicand(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl Default for Radicand {
    fn default() -> Self {
        Radicand::TWO
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `p + q·√m` of ℚ(√m).
///
/// Since √m is irrational the pair `(p, q)` determines the value uniquely,
/// so equality and hashing work on the coefficients. The radicand is carried
/// along with each value; combining two values with nonzero irrational parts
/// over different radicands is a logic error and panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    m: Radicand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit error for division by zero.
pub fn quad_arith(x: &QuadExt, y: &QuadExt, op: QuadOp) -> Result<QuadExt, ExactError> {
    Ok(match op {
        QuadOp::Add => x + y,
        QuadOp::Sub => x - y,
        QuadOp::Mul => x * y,
        QuadOp::Div => x.checked_div(y)?,
    })
}

pub fn quad_compare(x: &QuadExt, y: &QuadExt) -> Ordering {
    x.cmp(y)
}

/// `⌈num / den⌉` for strictly positive arguments.
pub fn quad_ceil_div(num: &QuadExt, den: &QuadExt) -> Result<BigInt, ExactError> {
    if !num.is_positive() || !den.is_positive() {
        return Err(ExactError::NonPositive);
    }
    Ok(num.checked_div(den)?.ceil())
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, m: Radicand) -> Self {
        QuadExt { p, q, m }
    }

    pub fn from_rational(p: Rational, m: Radicand) -> Self {
        QuadExt { p, q: Rational::zero(), m }
    }

    pub fn from_int(n: i64, m: Radicand) -> Self {
        Self::from_rational(Rational::from_integer(n.into()), m)
    }

    pub fn zero(m: Radicand) -> Self {
        Self::from_int(0, m)
    }

    /// `√m` itself.
    pub fn root(m: Radicand) -> Self {
        QuadExt { p: Rational::zero(), q: Rational::one(), m }
    }

    /// `a + b·√m` for integers `a`, `b`.
    pub fn from_ints(a: i64, b: i64, m: Radicand) -> Self {
        QuadExt {
            p: Rational::from_integer(a.into()),
            q: Rational::from_integer(b.into()),
            m,
        }
    }

    pub fn rat_part(&self) -> &Rational {
        &self.p
    }

    pub fn quad_part(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> Radicand {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Exact sign of `p + q√m`, decided by comparing `p²` with `q²m`.
    pub fn signum(&self) -> Ordering {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (sp, _) => {
                let p2 = &self.p * &self.p;
                let q2m = &self.q * &self.q * Rational::from_integer(self.m.0.into());
                // p and q√m have opposite signs; the larger magnitude wins.
                match p2.cmp(&q2m) {
                    Ordering::Greater => sp,
                    Ordering::Less => sp.reverse(),
                    Ordering::Equal => unreachable!("√m is irrational"),
                }
            }
        }
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { p: self.p.clone(), q: -&self.q, m: self.m }
    }

    /// `p² − q²m`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(self.m.0.into())
    }

    pub fn recip(&self) -> Result<QuadExt, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt { p: &self.p / &n, q: -&self.q / &n, m: self.m })
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt { p: &self.p * r, q: &self.q * r, m: self.m }
    }

    /// Largest integer `n <= self`.
    ///
    /// With `self = (A + B√m) / C`, `C > 0`, we have
    /// `floor(self) = floor((A + floor(B√m)) / C)` and `floor(B√m)` comes
    /// from an integer square root of `B²m`.
    pub fn floor(&self) -> BigInt {
        let c = self.p.denom().lcm(self.q.denom());
        let a = self.p.numer() * (&c / self.p.denom());
        let b = self.q.numer() * (&c / self.q.denom());
        let root = (&b * &b * BigInt::from(self.m.0)).sqrt();
        let floor_bm = if b.is_negative() { -root - 1 } else { root };
        (a + floor_bm).div_floor(&c)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &QuadExt) -> QuadExt {
        (self + other).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * (self.m.0 as f64).sqrt()
    }

    /// The `p/q+r/s*s` spelling used in point dumps.
    pub fn to_fraction_string(&self) -> String {
        let (sign, q) = if self.q.is_negative() { ('-', -&self.q) } else { ('+', self.q.clone()) };
        format!(
            "{}/{}{}{}/{}*s",
            self.p.numer(),
            self.p.denom(),
            sign,
            q.numer(),
            q.denom()
        )
    }

    fn join(&self, other: &QuadExt) -> Radicand {
        if self.q.is_zero() {
            other.m
        } else if other.q.is_zero() || self.m == other.m {
            self.m
        } else {
            panic!("mixed radicands {} and {}", self.m, other.m)
        }
    }
}

fn sign_of(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && (self.q.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.q.hash(state);
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.q == other.q {
            return self.p.cmp(&other.p);
        }
        (self - other).signum()
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { p: &self.p + &rhs.p, q: &self.q + &rhs.q, m: self.join(rhs) }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { p: &self.p - &rhs.p, q: &self.q - &rhs.q, m: self.join(rhs) }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let m = self.join(rhs);
        let mm = Rational::from_integer(m.0.into());
        QuadExt {
            p: &self.p * &rhs.p + &self.q * &rhs.q * mm,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
            m,
        }
    }
}

/// Panics on division by zero, like the rational types it wraps. Use
/// [`QuadExt::checked_div`] or [`quad_arith`] for a fallible version.
impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -&self.p, q: -&self.q, m: self.m }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $f(self, rhs: QuadExt) -> QuadExt {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $f(self, rhs: &QuadExt) -> QuadExt {
                (&self).$f(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// Canonical text form, readable back by the distance-set parser:
/// `0`, `3/2`, `s`, `2s`, `-1s`, `1+s`, `1/2-3/4s`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Rational::one();
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) if self.q == one => write!(f, "s"),
            (true, false) => write!(f, "{}s", self.q),
            (false, false) => {
                write!(f, "{}", self.p)?;
                let sign = if self.q.is_negative() { '-' } else { '+' };
                let mag = self.q.abs();
                if mag == one {
                    write!(f, "{sign}s")
                } else {
                    write!(f, "{sign}{mag}s")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn q(a: i64, b: i64) -> QuadExt {
        QuadExt::from_ints(a, b, Radicand::TWO)
    }

    #[test]
    fn radicand_validation() {
        assert!(Radicand::new(2).is_ok());
        assert!(Radicand::new(3).is_ok());
        assert!(Radicand::new(30).is_ok());
        assert_eq!(Radicand::new(1), Err(ExactError::InvalidRadicand(1)));
        assert_eq!(Radicand::new(4), Err(ExactError::InvalidRadicand(4)));
        assert_eq!(Radicand::new(12), Err(ExactError::InvalidRadicand(12)));
        assert_eq!(Radicand::new(0), Err(ExactError::InvalidRadicand(0)));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q(1, 1) + &q(1, 1), q(2, 2));
        // (1+√2)(1−√2) = 1 − 2
        assert_eq!(&q(1, 1) * &q(1, -1), q(-1, 0));
        assert_eq!(quad_arith(&q(0, 2), &q(0, 1), QuadOp::Div).unwrap(), q(2, 0));
        assert_eq!(
            quad_arith(&q(1, 0), &q(0, 0), QuadOp::Div),
            Err(ExactError::DivisionByZero)
        );
        assert_eq!(q(3, 2).norm(), Rational::from_integer((9 - 8).into()));
    }

    #[test]
    fn compare_examples() {
        let five_halves = QuadExt::from_rational(r(5, 2), Radicand::TWO);
        assert_eq!(quad_compare(&q(1, 1), &five_halves), Ordering::Less);
        assert_eq!(quad_compare(&q(0, 0), &q(0, 0)), Ordering::Equal);
        assert_eq!(quad_compare(&q(0, 2), &q(1, 1)), Ordering::Greater);
        assert_eq!(q(-3, 2).signum(), Ordering::Less); // 2√2 < 3
        assert_eq!(q(3, -2).signum(), Ordering::Greater);
    }

    #[test]
    fn ceil_div_examples() {
        let one = q(1, 0);
        assert_eq!(quad_ceil_div(&q(0, 2), &one).unwrap(), BigInt::from(3));
        assert_eq!(quad_ceil_div(&q(1, 1), &q(1, 1)).unwrap(), BigInt::from(1));
        assert_eq!(quad_ceil_div(&q(1, 1), &q(0, 1)).unwrap(), BigInt::from(2));
        assert_eq!(quad_ceil_div(&q(0, 3), &one).unwrap(), BigInt::from(5));
        assert_eq!(quad_ceil_div(&q(0, 0), &one), Err(ExactError::NonPositive));
        assert_eq!(quad_ceil_div(&one, &q(-1, 0)), Err(ExactError::NonPositive));
    }

    #[test]
    fn floor_handles_signs_and_denominators() {
        assert_eq!(q(0, -1).floor(), BigInt::from(-2));
        assert_eq!(q(3, -2).floor(), BigInt::from(0)); // 0.17
        assert_eq!(q(-3, 2).floor(), BigInt::from(-1));
        let x = QuadExt::new(r(1, 3), r(-5, 7), Radicand::TWO); // ≈ -0.677
        assert_eq!(x.floor(), BigInt::from(-1));
        assert_eq!(x.ceil(), BigInt::from(0));
        assert_eq!(q(4, 0).floor(), BigInt::from(4));
        assert_eq!(q(4, 0).ceil(), BigInt::from(4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(0, 0).to_string(), "0");
        assert_eq!(q(1, 1).to_string(), "1+s");
        assert_eq!(q(1, -1).to_string(), "1-s");
        assert_eq!(q(0, 2).to_string(), "2s");
        assert_eq!(q(0, -1).to_string(), "-1s");
        assert_eq!(QuadExt::new(r(1, 2), r(-3, 4), Radicand::TWO).to_string(), "1/2-3/4s");
        assert_eq!(q(1, 1).to_fraction_string(), "1/1+1/1*s");
        assert_eq!(q(0, -2).to_fraction_string(), "0/1-2/1*s");
    }

    #[test]
    fn rational_values_ignore_radicand() {
        let a = QuadExt::from_int(3, Radicand::TWO);
        let b = QuadExt::from_int(3, Radicand::new(5).unwrap());
        assert_eq!(a, b);
        let c = &QuadExt::root(Radicand::new(5).unwrap()) + &a;
        assert_eq!(c.radicand().get(), 5);
    }

    #[test]
    #[should_panic(expected = "mixed radicands")]
    fn mixed_radicands_panic() {
        let _ = &QuadExt::root(Radicand::TWO) + &QuadExt::root(Radicand::new(3).unwrap());
    }
}

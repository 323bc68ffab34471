//! Exact scalars: the field ℚ(i, √2) and the [`Field`] abstraction used by the
//! linear algebra routines.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Operations needed by Gaussian elimination.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn finv(&self) -> Self;
}

impl Field for Rational {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.recip()
    }
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }

    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::new(&self.re * &o.re, Rational::zero());
        }
        Gaussian::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn scale(&self, c: &Rational) -> Self {
        Gaussian::new(&self.re * c, &self.im * c)
    }

    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }

    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        Gaussian::new(&self.re / &n, -&self.im / &n)
    }
}

/// Element `x + y·√2` of ℚ(i, √2) with `x, y` Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    pub x: Gaussian,
    pub y: Gaussian,
}

impl ExactScalar {
    pub fn new(x: Gaussian, y: Gaussian) -> Self {
        ExactScalar { x, y }
    }

    /// `a + b·i + c·√2 + d·i√2`.
    pub fn from_parts(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ExactScalar::new(Gaussian::new(a, b), Gaussian::new(c, d))
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn from_rational(r: Rational) -> Self {
        ExactScalar::from_parts(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(int(n))
    }

    pub fn i() -> Self {
        ExactScalar::from_parts(int(0), int(1), int(0), int(0))
    }

    pub fn sqrt2() -> Self {
        ExactScalar::from_parts(int(0), int(0), int(1), int(0))
    }

    /// `√2 / 2`.
    pub fn inv_sqrt2() -> Self {
        ExactScalar::from_parts(int(0), int(0), rat(1, 2), int(0))
    }

    /// Components `(1, i, √2, i√2)`.
    pub fn parts(&self) -> [&Rational; 4] {
        [&self.x.re, &self.x.im, &self.y.re, &self.y.im]
    }

    pub fn is_real(&self) -> bool {
        self.x.im.is_zero() && self.y.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.is_real() && self.y.re.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.x.re.clone())
    }

    pub fn real_part(&self) -> ExactScalar {
        ExactScalar::from_parts(self.x.re.clone(), int(0), self.y.re.clone(), int(0))
    }

    pub fn imag_part(&self) -> ExactScalar {
        ExactScalar::from_parts(self.x.im.clone(), int(0), self.y.im.clone(), int(0))
    }

    /// Complex conjugate (fixes √2).
    pub fn conj(&self) -> Self {
        ExactScalar::new(self.x.conj(), self.y.conj())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactScalar::new(self.x.scale(c), self.y.scale(c))
    }

    /// Sign of a real element `a + c√2`; `None` for non-real input.
    pub fn real_sign(&self) -> Option<i32> {
        if !self.is_real() {
            return None;
        }
        let a = &self.x.re;
        let c = &self.y.re;
        let sa = sign(a);
        let sc = sign(c);
        if sa == 0 {
            return Some(sc);
        }
        if sc == 0 || sa == sc {
            return Some(sa);
        }
        // Opposite signs: compare a² with 2c².
        let a2 = a * a;
        let c2 = c * c * int(2);
        Some(if a2 > c2 { sa } else { sc })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let s = std::f64::consts::SQRT_2;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        (f(&self.x.re) + s * f(&self.y.re), f(&self.x.im) + s * f(&self.y.im))
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Field for ExactScalar {
    fn fzero() -> Self {
        ExactScalar::default()
    }
    fn fone() -> Self {
        ExactScalar::from_int(1)
    }
    fn fis_zero(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        ExactScalar::new(self.x.add(&o.x), self.y.add(&o.y))
    }
    fn fsub(&self, o: &Self) -> Self {
        ExactScalar::new(self.x.sub(&o.x), self.y.sub(&o.y))
    }
    fn fmul(&self, o: &Self) -> Self {
        if self.y.is_zero() && o.y.is_zero() {
            return ExactScalar::new(self.x.mul(&o.x), Gaussian::default());
        }
        let xx = self.x.mul(&o.x).add(&self.y.mul(&o.y).scale(&int(2)));
        let yy = self.x.mul(&o.y).add(&self.y.mul(&o.x));
        ExactScalar::new(xx, yy)
    }
    fn fneg(&self) -> Self {
        ExactScalar::new(self.x.neg(), self.y.neg())
    }
    fn finv(&self) -> Self {
        // (x + y√2)⁻¹ = (x − y√2) / (x² − 2y²); the norm is nonzero because √2 ∉ ℚ(i).
        let n = self.x.mul(&self.x).sub(&self.y.mul(&self.y).scale(&int(2)));
        let ni = n.inv();
        ExactScalar::new(self.x.mul(&ni), self.y.neg().mul(&ni))
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        self.fadd(o)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self.fsub(o)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        self.fmul(o)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.fneg()
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "√2", "i√2"];
        let mut first = true;
        for (c, name) in self.parts().into_iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if name.is_empty() || !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            f.write_str(name)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = ExactScalar::sqrt2();
        assert_eq!(s.fmul(&s), ExactScalar::from_int(2));
        assert_eq!(ExactScalar::inv_sqrt2().fmul(&s), ExactScalar::one());
    }

    #[test]
    fn inverse_of_mixed_element() {
        let z = ExactScalar::from_parts(int(1), int(2), int(-3), rat(1, 2));
        assert_eq!(z.fmul(&z.finv()), ExactScalar::one());
    }

    #[test]
    fn conjugation_fixes_sqrt2() {
        let z = ExactScalar::from_parts(int(1), int(2), int(3), int(4));
        assert_eq!(z.conj(), ExactScalar::from_parts(int(1), int(-2), int(3), int(-4)));
        assert!(z.fmul(&z.conj()).is_real());
    }

    #[test]
    fn real_sign_of_quadratic_irrationals() {
        let s = |a, c| ExactScalar::from_parts(int(a), int(0), int(c), int(0)).real_sign();
        assert_eq!(s(3, -2), Some(1));
        assert_eq!(s(1, -1), Some(-1));
        assert_eq!(s(-2, 1), Some(-1));
        assert_eq!(s(-1, 1), Some(1));
        assert_eq!(s(0, 0), Some(0));
        assert_eq!(ExactScalar::i().real_sign(), None);
    }
}

//! Evaluation at rational points, exact where possible and by certified
//! rational intervals otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::expr::DiffExpr;
use crate::poly::Poly;

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn scale(&self, c: &BigRational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    fn div(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = cands.iter().min().cloned().expect("nonempty");
        let hi = cands.iter().max().cloned().expect("nonempty");
        Interval { lo, hi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(BigRational),
    Approx(Interval),
}

impl Value {
    /// Midpoint for display purposes.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Value::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Value::Approx(i) => ((&i.lo + &i.hi) / BigRational::from_integer(2.into()))
                .to_f64()
                .unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("expression has a pole at the evaluation point")]
    Pole,
    #[error("point has {got} coordinates, expression needs at least {need}")]
    DimensionMismatch { got: usize, need: usize },
    #[error("value is not rational at this point (exponential factors do not vanish)")]
    NotRational,
    #[error("requested width not reached within the precision limit")]
    PrecisionExhausted,
}

const MAX_BITS: u32 = 1 << 14;

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    let scaled = x * BigRational::from_integer(s.clone());
    BigRational::new(scaled.numer().div_floor(scaled.denom()), s)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    let scaled = x * BigRational::from_integer(s.clone());
    BigRational::new(scaled.numer().div_ceil(scaled.denom()), s)
}

/// Certified enclosure of `exp(a)` of width roughly `2^{-bits}·exp(a)`.
pub fn exp_interval(a: &BigRational, bits: u32) -> Interval {
    if a.is_zero() {
        return Interval::point(BigRational::one());
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut t = a.clone();
    let mut m = 0u32;
    while t.abs() > half {
        t /= BigRational::from_integer(2.into());
        m += 1;
    }
    let prec = bits + m + 8;
    let tol = BigRational::new(1.into(), two_pow(prec + 2));
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let mut j = 1u32;
    loop {
        term = &term * &t / BigRational::from_integer(j.into());
        sum += &term;
        j += 1;
        // Tail after this term is bounded by 2|next term| since |t| <= 1/2.
        let next = term.abs() * t.abs() / BigRational::from_integer(j.into());
        if next < tol {
            let rho = next * BigRational::from_integer(2.into());
            let mut lo = round_down(&(&sum - &rho), prec);
            let mut hi = round_up(&(&sum + &rho), prec);
            for _ in 0..m {
                lo = round_down(&(&lo * &lo), prec);
                hi = round_up(&(&hi * &hi), prec);
            }
            return Interval { lo, hi };
        }
    }
}

/// Terms grouped by the value of their exponent at the point.
fn grouped(p: &Poly, point: &[BigRational]) -> BTreeMap<BigRational, BigRational> {
    let mut groups: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        let a = m.exp.eval(point);
        *groups.entry(a).or_insert_with(BigRational::zero) += c * m.pp.eval(point);
    }
    groups.retain(|_, v| !v.is_zero());
    groups
}

/// Exact value if the polynomial takes a rational value at the point. The
/// values `exp(a)` for distinct rational `a` are linearly independent over the
/// rationals, so the grouped test is exact.
fn exact_value(groups: &BTreeMap<BigRational, BigRational>) -> Option<BigRational> {
    if groups.keys().any(|a| !a.is_zero()) {
        return None;
    }
    Some(groups.values().cloned().fold(BigRational::zero(), |a, b| a + b))
}

fn enclose(groups: &BTreeMap<BigRational, BigRational>, bits: u32) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for (a, c) in groups {
        acc = acc.add(&exp_interval(a, bits).scale(c));
    }
    acc
}

fn check_dim(e: &DiffExpr, point: &[BigRational]) -> Result<(), EvalError> {
    if let Some(k) = e.max_var() {
        if k >= point.len() {
            return Err(EvalError::DimensionMismatch {
                got: point.len(),
                need: k + 1,
            });
        }
    }
    Ok(())
}

/// Exact rational value at `point`.
pub fn evaluate_exact(e: &DiffExpr, point: &[BigRational]) -> Result<BigRational, EvalError> {
    check_dim(e, point)?;
    let den = grouped(&e.denominator(), point);
    if den.is_empty() {
        return Err(EvalError::Pole);
    }
    let num = grouped(e.numerator(), point);
    match (exact_value(&num), exact_value(&den)) {
        (Some(n), Some(d)) => Ok(n / d),
        _ => Err(EvalError::NotRational),
    }
}

/// Value at `point`, exact when rational, otherwise an interval of width at
/// most `width`.
pub fn evaluate(e: &DiffExpr, point: &[BigRational], width: &BigRational) -> Result<Value, EvalError> {
    check_dim(e, point)?;
    let den = grouped(&e.denominator(), point);
    if den.is_empty() {
        return Err(EvalError::Pole);
    }
    let num = grouped(e.numerator(), point);
    if let (Some(n), Some(d)) = (exact_value(&num), exact_value(&den)) {
        return Ok(Value::Exact(n / d));
    }
    if num.is_empty() {
        return Ok(Value::Exact(BigRational::zero()));
    }
    let mut bits = 32;
    while bits <= MAX_BITS {
        let n = enclose(&num, bits);
        let d = enclose(&den, bits);
        if !d.contains_zero() {
            let q = n.div(&d);
            if &q.width() <= width {
                return Ok(Value::Approx(q));
            }
        }
        bits *= 2;
    }
    Err(EvalError::PrecisionExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_one_enclosure() {
        let i = exp_interval(&r(1, 1), 40);
        let e = r(2_718_281_828_459, 1_000_000_000_000);
        assert!(i.contains(&e) || (&i.lo - &e).abs() < r(1, 1_000_000_000));
        assert!(i.width() < r(1, 1_000_000_000));
        assert!(i.lo < r(27_182_819, 10_000_000) && i.hi > r(27_182_818, 10_000_000));
    }

    #[test]
    fn exp_of_negative_and_large_arguments() {
        let i = exp_interval(&r(-3, 1), 30);
        assert!(i.lo < r(4_979, 100_000) && i.hi > r(4_978, 100_000));
        let j = exp_interval(&r(10, 1), 30);
        assert!(j.lo < r(22_027, 1) && j.hi > r(22_026, 1));
    }
}

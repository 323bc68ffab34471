//! Quotients `N / Π gᵢ^{mᵢ}` of exponential polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Poly, PowerProduct, PurePoly};

/// A denominator factor: monic, leading term free of exponentials, never a
/// monomial other than a single variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Factor {
    pub(crate) poly: Poly,
    pub(crate) mult: u32,
}

/// Exact expression in the chart variables. Zero testing is sound: the
/// numerator is kept in expanded canonical form and the denominator never
/// vanishes identically.
#[derive(Clone, Debug, Default)]
pub struct DiffExpr {
    pub(crate) num: Poly,
    pub(crate) den: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("division by an expression that is identically zero")]
    DivisionByZero,
    #[error("exponent argument is not a polynomial")]
    NonPolynomialExponent,
}

impl DiffExpr {
    pub fn zero() -> Self {
        DiffExpr::default()
    }

    pub fn one() -> Self {
        DiffExpr::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        DiffExpr {
            num: Poly::constant(c),
            den: Vec::new(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        DiffExpr::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_poly(p: Poly) -> Self {
        DiffExpr {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn from_pure(p: &PurePoly) -> Self {
        DiffExpr::from_poly(Poly::from_pure(p))
    }

    pub fn var(k: usize) -> Self {
        DiffExpr::from_poly(Poly::var(k))
    }

    /// `exp(arg)` for a polynomial argument.
    pub fn exp(arg: &DiffExpr) -> Result<Self, ExprError> {
        let p = arg.as_polynomial().ok_or(ExprError::NonPolynomialExponent)?;
        Ok(DiffExpr::from_poly(Poly::exp(p)))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|f| (&f.poly, f.mult))
    }

    pub fn denominator(&self) -> Poly {
        let mut acc = Poly::one();
        for f in &self.den {
            acc = &acc * &f.poly.pow(f.mult);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    /// Value if the expression is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.den.is_empty() {
            return None;
        }
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        if self.num.is_constant() {
            return self.num.leading().map(|(_, c)| c.clone());
        }
        None
    }

    /// The expression as a pure polynomial (no exponentials, no denominator).
    pub fn as_polynomial(&self) -> Option<PurePoly> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_pure()
    }

    pub fn depends_on(&self, k: usize) -> bool {
        self.num.depends_on(k) || self.den.iter().any(|f| f.poly.depends_on(k))
    }

    /// Largest variable index occurring in the expression.
    pub fn max_var(&self) -> Option<usize> {
        self.den
            .iter()
            .filter_map(|f| f.poly.max_var())
            .chain(self.num.max_var())
            .max()
    }

    pub fn exp_arguments(&self) -> Vec<PurePoly> {
        let mut out = self.num.exp_arguments();
        for f in &self.den {
            for a in f.poly.exp_arguments() {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: i32) -> Result<Self, ExprError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = DiffExpr::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn recip(&self) -> Result<Self, ExprError> {
        if self.num.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        let mut out = DiffExpr::one();
        for f in &self.den {
            out.num = &out.num * &f.poly.pow(f.mult);
        }
        out.insert_factor(self.num.clone(), 1);
        out.reduce();
        Ok(out)
    }

    pub fn checked_div(&self, rhs: &DiffExpr) -> Result<Self, ExprError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return DiffExpr::zero();
        }
        DiffExpr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Partial derivative in variable `k`.
    pub fn diff(&self, k: usize) -> Self {
        let dnum = self.num.diff(k);
        let active: Vec<&Factor> = self.den.iter().filter(|f| f.poly.depends_on(k)).collect();
        if active.is_empty() {
            let mut out = DiffExpr {
                num: dnum,
                den: self.den.clone(),
            };
            out.reduce();
            return out;
        }
        // d(N / Π g^m) = (N' G - N Σ m g' G/g) / (Π g^m · G), G = Π g over factors involving k.
        let mut g_all = Poly::one();
        for f in &active {
            g_all = &g_all * &f.poly;
        }
        let mut num = &dnum * &g_all;
        for (i, f) in active.iter().enumerate() {
            let mut others = Poly::one();
            for (j, h) in active.iter().enumerate() {
                if i != j {
                    others = &others * &h.poly;
                }
            }
            let m = BigRational::from_integer(BigInt::from(f.mult));
            let term = &(&self.num * &f.poly.diff(k)) * &others;
            num = &num - &term.scale(&m);
        }
        let den = self
            .den
            .iter()
            .map(|f| Factor {
                poly: f.poly.clone(),
                mult: f.mult + u32::from(f.poly.depends_on(k)),
            })
            .collect();
        let mut out = DiffExpr { num, den };
        out.reduce();
        out
    }

    /// `∫ self d(x_k)` when the denominator and the exponentials are free of `k`.
    pub fn antiderivative(&self, k: usize) -> Option<Self> {
        if self.den.iter().any(|f| f.poly.depends_on(k)) {
            return None;
        }
        Some(DiffExpr {
            num: self.num.antiderivative(k)?,
            den: self.den.clone(),
        })
    }

    /// Insert `p^mult` into the denominator, normalizing `p` and moving units
    /// (constants, exponentials) into the numerator.
    fn insert_factor(&mut self, p: Poly, mult: u32) {
        if mult == 0 {
            return;
        }
        let content = p.monomial_content();
        let core = p.div_monomial(&content).expect("content divides");
        let (_, lc) = core.leading().expect("nonzero factor");
        let lc = lc.clone();
        let core = core.scale(&(BigRational::one() / &lc));
        // 1 / (c · x^α · e^P)^m moves to the numerator as c^{-m} e^{-mP} / x^{mα}.
        let unit = Monomial {
            pp: PowerProduct::one(),
            exp: -&content.exp.scale(&BigRational::from_integer(BigInt::from(mult))),
        };
        let inv = BigRational::one() / num_traits::pow(lc, mult as usize);
        self.num = self.num.mul_monomial(&unit, &inv);
        for (v, e) in content.pp.pairs() {
            self.insert_normalized(Poly::var(v), e * mult);
        }
        if !core.is_constant() {
            self.insert_normalized(core, mult);
        }
    }

    fn insert_normalized(&mut self, p: Poly, mult: u32) {
        for i in 0..self.den.len() {
            if self.den[i].poly == p {
                self.den[i].mult += mult;
                return;
            }
        }
        for i in 0..self.den.len() {
            if self.den[i].poly.len() > 1 && p.len() > self.den[i].poly.len() {
                if let Some(q) = p.div_exact(&self.den[i].poly) {
                    self.den[i].mult += mult;
                    self.insert_factor(q, mult);
                    return;
                }
            }
            if p.len() > 1 && self.den[i].poly.len() > p.len() {
                if let Some(q) = self.den[i].poly.div_exact(&p) {
                    let old = self.den.remove(i);
                    self.den.push(Factor {
                        poly: p,
                        mult: old.mult + mult,
                    });
                    self.den.sort();
                    self.insert_factor(q, old.mult);
                    return;
                }
            }
        }
        self.den.push(Factor { poly: p, mult });
        self.den.sort();
    }

    /// Cancel denominator factors that divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for f in self.den.iter_mut() {
            while f.mult > 0 {
                match self.num.div_exact(&f.poly) {
                    Some(q) => {
                        self.num = q;
                        f.mult -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|f| f.mult > 0);
    }

    fn combine(&self, rhs: &DiffExpr, subtract: bool) -> DiffExpr {
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return if subtract { -rhs } else { rhs.clone() };
        }
        let mut out = DiffExpr {
            num: Poly::zero(),
            den: self.den.clone(),
        };
        // Common denominator: maximum multiplicity of each factor.
        let mut lhs_scale = Poly::one();
        let mut rhs_scale = Poly::one();
        for g in &rhs.den {
            match out.den.iter_mut().find(|f| f.poly == g.poly) {
                Some(f) => {
                    if g.mult > f.mult {
                        lhs_scale = &lhs_scale * &g.poly.pow(g.mult - f.mult);
                        f.mult = g.mult;
                    }
                }
                None => {
                    lhs_scale = &lhs_scale * &g.poly.pow(g.mult);
                    out.den.push(g.clone());
                }
            }
        }
        for f in &out.den {
            let have = rhs.den.iter().find(|g| g.poly == f.poly).map(|g| g.mult).unwrap_or(0);
            if f.mult > have {
                rhs_scale = &rhs_scale * &f.poly.pow(f.mult - have);
            }
        }
        out.den.sort();
        let a = &self.num * &lhs_scale;
        let b = &rhs.num * &rhs_scale;
        out.num = if subtract { &a - &b } else { &a + &b };
        out.reduce();
        out
    }

    /// Render with variable names supplied by `name`.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let num = render_poly(&self.num, name);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|f| {
                let base = if f.poly.len() == 1 {
                    render_poly(&f.poly, name)
                } else {
                    format!("({})", render_poly(&f.poly, name))
                };
                if f.mult == 1 {
                    base
                } else {
                    format!("{}^{}", base, f.mult)
                }
            })
            .collect();
        let num = if self.num.len() == 1 { num } else { format!("({})", num) };
        if den.len() == 1 {
            format!("{}/{}", num, den[0])
        } else {
            format!("{}/({})", num, den.join("*"))
        }
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_pp(pp: &PowerProduct, name: &dyn Fn(usize) -> String) -> Vec<String> {
    pp.pairs()
        .map(|(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
        .collect()
}

pub(crate) fn render_pure(p: &PurePoly, name: &dyn Fn(usize) -> String) -> String {
    render_poly(&Poly::from_pure(p), name)
}

fn render_poly(p: &Poly, name: &dyn Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let mut factors = render_pp(&m.pp, name);
        if !m.exp.is_zero() {
            factors.push(format!("exp({})", render_pure(&m.exp, name)));
        }
        let mag = c.abs();
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if factors.is_empty() {
            out.push_str(&render_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&render_rational(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl PartialEq for DiffExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (self - other).is_zero()
    }
}

impl Eq for DiffExpr {}

impl fmt::Display for DiffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|k| format!("z{}", k)))
    }
}

impl Add<&DiffExpr> for &DiffExpr {
    type Output = DiffExpr;
    fn add(self, rhs: &DiffExpr) -> DiffExpr {
        self.combine(rhs, false)
    }
}

impl Sub<&DiffExpr> for &DiffExpr {
    type Output = DiffExpr;
    fn sub(self, rhs: &DiffExpr) -> DiffExpr {
        self.combine(rhs, true)
    }
}

impl Neg for &DiffExpr {
    type Output = DiffExpr;
    fn neg(self) -> DiffExpr {
        DiffExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&DiffExpr> for &DiffExpr {
    type Output = DiffExpr;
    fn mul(self, rhs: &DiffExpr) -> DiffExpr {
        if self.num.is_zero() || rhs.num.is_zero() {
            return DiffExpr::zero();
        }
        let mut out = DiffExpr {
            num: &self.num * &rhs.num,
            den: self.den.clone(),
        };
        for f in &rhs.den {
            out.insert_normalized(f.poly.clone(), f.mult);
        }
        out.reduce();
        out
    }
}

impl Div<&DiffExpr> for &DiffExpr {
    type Output = DiffExpr;
    /// Panics on division by zero; see [`DiffExpr::checked_div`].
    fn div(self, rhs: &DiffExpr) -> DiffExpr {
        self.checked_div(rhs).expect("division by zero expression")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<DiffExpr> for DiffExpr {
            type Output = DiffExpr;
            fn $m(self, rhs: DiffExpr) -> DiffExpr { (&self).$m(&rhs) }
        }
        impl $tr<&DiffExpr> for DiffExpr {
            type Output = DiffExpr;
            fn $m(self, rhs: &DiffExpr) -> DiffExpr { (&self).$m(rhs) }
        }
        impl $tr<DiffExpr> for &DiffExpr {
            type Output = DiffExpr;
            fn $m(self, rhs: DiffExpr) -> DiffExpr { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for DiffExpr {
    type Output = DiffExpr;
    fn neg(self) -> DiffExpr {
        -&self
    }
}

impl From<i64> for DiffExpr {
    fn from(c: i64) -> Self {
        DiffExpr::from_int(c)
    }
}

impl From<BigRational> for DiffExpr {
    fn from(c: BigRational) -> Self {
        DiffExpr::from_rational(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> DiffExpr {
        DiffExpr::var(k)
    }

    #[test]
    fn quotient_cancels() {
        let a = &x(0) + &DiffExpr::one();
        let b = &x(1) - &x(2);
        let e = &(&a * &b) / &a;
        assert_eq!(e, b);
        assert!(e.den.is_empty());
    }

    #[test]
    fn sum_of_fractions_is_zero() {
        let a = &x(0) + &DiffExpr::one();
        let f = &DiffExpr::one() / &a;
        let g = &x(0) / &a;
        let s = &(&f + &g) - &DiffExpr::one();
        assert!(s.is_zero());
    }

    #[test]
    fn exponential_units_leave_denominator() {
        let e = DiffExpr::exp(&x(1)).unwrap();
        let r = &DiffExpr::one() / &e;
        assert!(r.den.is_empty());
        assert_eq!(&r * &e, DiffExpr::one());
    }

    #[test]
    fn quotient_rule() {
        let a = &(&x(0) * &x(0)) + &DiffExpr::one();
        let f = &x(0) / &a;
        let d = f.diff(0);
        let expected = &(&DiffExpr::one() - &(&x(0) * &x(0))) / &(&a * &a);
        assert_eq!(d, expected);
    }

    #[test]
    fn monomial_denominators_split_into_variables() {
        let e = &DiffExpr::one() / &(&x(1) * &(&x(2) * &x(2)));
        assert_eq!(e.den.len(), 2);
        assert_eq!(
            e.diff(1),
            &DiffExpr::from_int(-1) / &(&(&x(1) * &x(1)) * &(&x(2) * &x(2)))
        );
    }

    #[test]
    fn negative_power_is_reciprocal() {
        let a = &x(0) + &DiffExpr::from_int(2);
        assert_eq!(&a.pow(-2).unwrap() * &a.pow(2).unwrap(), DiffExpr::one());
        assert_eq!(DiffExpr::zero().pow(-1), Err(ExprError::DivisionByZero));
    }
}

//! Sparse polynomials in monomials `x^α · exp(P)` with exact rational coefficients.
//!
//! `PurePoly` is an ordinary polynomial; it is also the exponent carried by a
//! `Monomial`. Products of exponentials are merged by adding exponents, so every
//! element of the ring has a unique expanded form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerProduct(Vec<(u16, u32)>);

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct(Vec::new())
    }

    pub fn var(k: usize) -> Self {
        PowerProduct(vec![(k as u16, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut out: Vec<(u16, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 as usize == v => last.1 += e,
                _ => out.push((v as u16, e)),
            }
        }
        PowerProduct(out)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.0.iter().find(|p| p.0 as usize == k).map(|p| p.1).unwrap_or(0)
    }

    pub fn mul(&self, other: &PowerProduct) -> PowerProduct {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || other.0[j].0 < self.0[i].0 {
                out.push(other.0[j]);
                j += 1;
            } else {
                out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                i += 1;
                j += 1;
            }
        }
        PowerProduct(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &PowerProduct) -> Option<PowerProduct> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(PowerProduct(out))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &PowerProduct) -> PowerProduct {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v as usize);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        PowerProduct(out)
    }

    /// Derivative of the power product in variable `k`: `(coefficient, rest)`.
    pub fn diff(&self, k: usize) -> Option<(u32, PowerProduct)> {
        let e = self.exponent(k);
        if e == 0 {
            return None;
        }
        let rest = self.div(&PowerProduct::var(k)).expect("divisible");
        Some((e, rest))
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::one();
        for &(v, e) in &self.0 {
            acc *= pow_rat(&point[v as usize], e);
        }
        acc
    }
}

pub(crate) fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

impl Ord for PowerProduct {
    /// Graded lexicographic order with variable 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 < b.0 {
                        return Ordering::Greater;
                    }
                    if b.0 < a.0 {
                        return Ordering::Less;
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for PowerProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordinary sparse polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PurePoly(BTreeMap<PowerProduct, BigRational>);

impl PurePoly {
    pub fn zero() -> Self {
        PurePoly(BTreeMap::new())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = PurePoly::zero();
        p.add_term(PowerProduct::one(), c);
        p
    }

    pub fn var(k: usize) -> Self {
        let mut p = PurePoly::zero();
        p.add_term(PowerProduct::var(k), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PowerProduct, &BigRational)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, pp: PowerProduct, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&pp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.0.remove(&pp);
                }
            }
            None => {
                self.0.insert(pp, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> PurePoly {
        if c.is_zero() {
            return PurePoly::zero();
        }
        PurePoly(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn diff(&self, k: usize) -> PurePoly {
        let mut out = PurePoly::zero();
        for (pp, c) in &self.0 {
            if let Some((e, rest)) = pp.diff(k) {
                out.add_term(rest, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn depends_on(&self, k: usize) -> bool {
        self.0.keys().any(|pp| pp.exponent(k) > 0)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (pp, c) in &self.0 {
            acc += c * pp.eval(point);
        }
        acc
    }

    /// Constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => self.0.get(&PowerProduct::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.keys().flat_map(|pp| pp.pairs().map(|p| p.0)).max()
    }
}

impl Ord for PurePoly {
    /// Lexicographic comparison of coefficient vectors, largest power product
    /// first. Translation invariant, which keeps monomial orders multiplicative.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0.is_empty() && other.0.is_empty() {
            return Ordering::Equal;
        }
        let zero = BigRational::zero();
        let mut ia = self.0.iter().rev().peekable();
        let mut ib = other.0.iter().rev().peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ca)), None) => return (*ca).cmp(&zero),
                (None, Some((_, cb))) => return zero.cmp(cb),
                (Some((ka, ca)), Some((kb, cb))) => match ka.cmp(kb) {
                    Ordering::Greater => return (*ca).cmp(&zero),
                    Ordering::Less => return zero.cmp(cb),
                    Ordering::Equal => {
                        if ca != cb {
                            return (*ca).cmp(cb);
                        }
                        ia.next();
                        ib.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for PurePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&PurePoly> for &PurePoly {
    type Output = PurePoly;
    fn add(self, rhs: &PurePoly) -> PurePoly {
        let mut out = self.clone();
        for (k, v) in &rhs.0 {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub<&PurePoly> for &PurePoly {
    type Output = PurePoly;
    fn sub(self, rhs: &PurePoly) -> PurePoly {
        let mut out = self.clone();
        for (k, v) in &rhs.0 {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl Neg for &PurePoly {
    type Output = PurePoly;
    fn neg(self) -> PurePoly {
        PurePoly(self.0.iter().map(|(k, v)| (k.clone(), -v.clone())).collect())
    }
}

impl Mul<&PurePoly> for &PurePoly {
    type Output = PurePoly;
    fn mul(self, rhs: &PurePoly) -> PurePoly {
        let mut out = PurePoly::zero();
        for (ka, va) in &self.0 {
            for (kb, vb) in &rhs.0 {
                out.add_term(ka.mul(kb), va * vb);
            }
        }
        out
    }
}

/// `x^α · exp(P)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub pp: PowerProduct,
    pub exp: PurePoly,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            pp: self.pp.mul(&other.pp),
            exp: &self.exp + &other.exp,
        }
    }

    pub fn depends_on(&self, k: usize) -> bool {
        self.pp.exponent(k) > 0 || self.exp.depends_on(k)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pp.cmp(&other.pp).then_with(|| self.exp.cmp(&other.exp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of `c · x^α · exp(P)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(BTreeMap<Monomial, BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(k: usize) -> Self {
        Poly::from_pure(&PurePoly::var(k))
    }

    pub fn exp(arg: PurePoly) -> Self {
        let mut p = Poly::zero();
        p.add_term(
            Monomial {
                pp: PowerProduct::one(),
                exp: arg,
            },
            BigRational::one(),
        );
        p
    }

    pub fn from_pure(p: &PurePoly) -> Self {
        Poly(
            p.terms()
                .map(|(pp, c)| {
                    (
                        Monomial {
                            pp: pp.clone(),
                            exp: PurePoly::zero(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        )
    }

    /// The polynomial itself when no exponential occurs.
    pub fn as_pure(&self) -> Option<PurePoly> {
        let mut out = PurePoly::zero();
        for (m, c) in &self.0 {
            if !m.exp.is_zero() {
                return None;
            }
            out.add_term(m.pp.clone(), c.clone());
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.0.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.0.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, v)| (k.mul(m), v * c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn diff(&self, k: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if let Some((e, rest)) = m.pp.diff(k) {
                out.add_term(
                    Monomial {
                        pp: rest,
                        exp: m.exp.clone(),
                    },
                    c * BigRational::from_integer(BigInt::from(e)),
                );
            }
            let dexp = m.exp.diff(k);
            for (pp, d) in dexp.terms() {
                out.add_term(
                    Monomial {
                        pp: m.pp.mul(pp),
                        exp: m.exp.clone(),
                    },
                    c * d,
                );
            }
        }
        out
    }

    pub fn depends_on(&self, k: usize) -> bool {
        self.0.keys().any(|m| m.depends_on(k))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0
            .keys()
            .flat_map(|m| m.pp.pairs().map(|p| p.0).chain(m.exp.max_var()).collect::<Vec<_>>())
            .max()
    }

    /// Distinct exponents occurring in the polynomial.
    pub fn exp_arguments(&self) -> Vec<PurePoly> {
        let mut out: Vec<PurePoly> = Vec::new();
        for m in self.0.keys() {
            if !m.exp.is_zero() && !out.contains(&m.exp) {
                out.push(m.exp.clone());
            }
        }
        out
    }

    /// Greatest common monomial divisor of all terms, with the exponent of the
    /// leading term as the exponential part.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.0.keys();
        let first = match it.next() {
            Some(m) => m.pp.clone(),
            None => return Monomial::one(),
        };
        let pp = it.fold(first, |acc, m| acc.gcd(&m.pp));
        let exp = self.leading().map(|l| l.0.exp.clone()).unwrap_or_default();
        Monomial { pp, exp }
    }

    /// Exact quotient `self / m` for a monomial `m` dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut out = Poly::zero();
        for (k, c) in &self.0 {
            let pp = k.pp.div(&m.pp)?;
            out.add_term(
                Monomial {
                    pp,
                    exp: &k.exp - &m.exp,
                },
                c.clone(),
            );
        }
        Some(out)
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self` or
    /// when the step budget is exhausted; the budget stops the infinite descent
    /// that the (non well-founded) order on exponentials would otherwise allow.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.len() == 1 {
            let q = self.div_monomial(lm)?;
            return Some(q.scale(&(BigRational::one() / lc)));
        }
        let budget = 8 * (self.len() + 1) * (divisor.len() + 1) + 64;
        let size_cap = 16 * (self.len() + divisor.len()) + 64;
        let lead_deg_self = self.0.keys().map(|m| m.pp.degree()).max().unwrap_or(0);
        let mut r = self.clone();
        let mut q = Poly::zero();
        let mut steps = 0;
        while let Some((rm, rc)) = r.leading() {
            steps += 1;
            if steps > budget || r.len() > size_cap {
                return None;
            }
            let pp = rm.pp.div(&lm.pp)?;
            if pp.degree() + lm.pp.degree() > lead_deg_self {
                return None;
            }
            let t = Monomial {
                pp,
                exp: &rm.exp - &lm.exp,
            };
            let tc = rc / lc;
            r = &r - &divisor.mul_monomial(&t, &tc);
            q.add_term(t, tc);
        }
        Some(q)
    }

    /// Exact value when every exponent vanishes at `point`.
    pub fn eval_exact(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.0 {
            if !m.exp.is_zero() && !m.exp.eval(point).is_zero() {
                return None;
            }
            acc += c * m.pp.eval(point);
        }
        Some(acc)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1 && self.0.keys().all(|m| m.pp.is_one() && m.exp.is_zero())
    }

    /// `∫ self d(var)` for terms whose exponential part does not involve `var`.
    pub fn antiderivative(&self, k: usize) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if m.exp.depends_on(k) {
                return None;
            }
            let e = m.pp.exponent(k) + 1;
            out.add_term(
                Monomial {
                    pp: m.pp.mul(&PowerProduct::var(k)),
                    exp: m.exp.clone(),
                },
                c / BigRational::from_integer(BigInt::from(e)),
            );
        }
        Some(out)
    }

    pub fn leading_coefficient_sign(&self) -> i32 {
        match self.leading() {
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (k, v) in &small.0 {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &rhs.0 {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|(k, v)| (k.clone(), -v.clone())).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ka, va) in &self.0 {
            for (kb, vb) in &rhs.0 {
                out.add_term(ka.mul(kb), va * vb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn grlex_prefers_degree_then_first_variable() {
        let a = PowerProduct::from_pairs(vec![(0, 1), (1, 1)]);
        let b = PowerProduct::from_pairs(vec![(1, 2)]);
        let c = PowerProduct::from_pairs(vec![(0, 1)]);
        assert!(a > b);
        assert!(b > c);
        assert!(PowerProduct::var(0) > PowerProduct::var(3));
    }

    #[test]
    fn exponent_order_is_translation_invariant() {
        let p = PurePoly::var(1);
        let m = -&PurePoly::var(1);
        let z = PurePoly::zero();
        assert!(p > z);
        assert!(m < z);
        let shift = &PurePoly::var(2) + &PurePoly::constant(q(3));
        assert_eq!((&p + &shift).cmp(&(&m + &shift)), p.cmp(&m));
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = &Poly::var(0) + &Poly::one();
        let b = &Poly::var(1) - &Poly::exp(PurePoly::var(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
    }

    #[test]
    fn exact_division_gives_up_on_non_divisors() {
        let a = &Poly::one() - &Poly::exp(PurePoly::var(0));
        assert_eq!(Poly::one().div_exact(&a), None);
        let b = &Poly::var(0) + &Poly::one();
        assert_eq!(Poly::var(1).div_exact(&b), None);
    }

    #[test]
    fn derivative_of_exponential_uses_chain_rule() {
        let arg = &PurePoly::var(1) * &PurePoly::var(2);
        let e = Poly::exp(arg.clone());
        let d = e.diff(1);
        let expected = &Poly::var(2) * &e;
        assert_eq!(d, expected);
    }
}

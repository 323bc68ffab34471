//! Spinors annihilated by a holonomy algebra, the invariant Hermitian form on
//! `Δ_{1,n+1}` and Dirac currents.

use crate::catalog::{theorem41_dimension, CatalogError, DimensionPrediction, Generator, Riemannian, WeylFamily};
use crate::clifford::{CliffordError, CliffordRep, Signature};
use crate::lie_spin::{bivector_of_so, clifford_bivector, lambda_star, split, Bivector, LieError};
use crate::linalg::{Matrix, Span};
use crate::scalar::{ExactScalar, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpinorError {
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("spinor is zero")]
    ZeroSpinor,
    #[error("spinor has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("Dirac current component {0} is not real")]
    NotReal(usize),
    #[error("generators act on different dimensions")]
    MixedDimensions,
}

/// Common kernel of a family of operators on `ℂ^dim`.
pub fn annihilator(ops: &[Matrix<ExactScalar>], dim: usize) -> Vec<Vec<ExactScalar>> {
    let mut span = Span::new(dim);
    for op in ops {
        assert_eq!((op.rows(), op.cols()), (dim, dim));
        for r in 0..dim {
            if op.row(r).iter().any(|x| !x.is_zero()) {
                span.insert(op.row(r).to_vec());
            }
        }
    }
    span.kernel()
}

/// Spinors in `Δ_n` annihilated by `λ_*(h)`.
pub fn riemannian_annihilator(gens: &[Matrix<Rational>], n: usize) -> Result<Vec<Vec<ExactScalar>>, SpinorError> {
    let rep = CliffordRep::new(Signature::riemannian(n))?;
    let ops: Vec<_> = gens.iter().map(|g| lambda_star(&bivector_of_so(g), &rep)).collect();
    Ok(annihilator(&ops, rep.spinor_dim()))
}

/// Weighted operator `w·b·Id - 2 Σ β_ij e_i e_j` of a generator.
pub fn generator_op(rep: &CliffordRep, w: &Rational, g: &Generator) -> Matrix<ExactScalar> {
    let d = rep.spinor_dim();
    let mut m = clifford_bivector(&g.bivector(), rep).scale(&ExactScalar::from_int(-2));
    let wb = w * g.b();
    if !num_traits::Zero::is_zero(&wb) {
        m = m.add(&Matrix::identity(d).scale(&ExactScalar::from_rational(wb)));
    }
    m
}

/// Spinors of weight `w` in `Δ_{1,n+1}` annihilated by every generator.
pub fn parallel_spinors(w: &Rational, gens: &[Generator], n: usize) -> Result<Vec<Vec<ExactScalar>>, SpinorError> {
    if gens.iter().any(|g| g.n() != n) {
        return Err(SpinorError::MixedDimensions);
    }
    let rep = CliffordRep::new(Signature::lorentzian(n))?;
    let ops: Vec<_> = gens.iter().map(|g| generator_op(&rep, w, g)).collect();
    Ok(annihilator(&ops, rep.spinor_dim()))
}

/// Hermitian form `b(φ, χ) = χ† B φ` on `Δ_{1,n+1}` with `B = Φ(e_-)`. The sign
/// makes `g(V_ψ, e_-) = -|ψ|² < 0`, i.e. Dirac currents are future directed.
pub fn hermitian_form(rep: &CliffordRep) -> Matrix<ExactScalar> {
    rep.gamma(0).clone()
}

/// `b(φ, χ)`.
pub fn hermitian_pair(form: &Matrix<ExactScalar>, phi: &[ExactScalar], chi: &[ExactScalar]) -> ExactScalar {
    let bphi = form.apply(phi);
    chi.iter()
        .zip(&bphi)
        .fold(ExactScalar::zero(), |acc, (c, x)| acc.fadd(&c.conj().fmul(x)))
}

/// Whether `B λ_*(β) + λ_*(β)† B = 0` for all basis bivectors.
pub fn form_is_invariant(rep: &CliffordRep, form: &Matrix<ExactScalar>) -> bool {
    let n = rep.signature().dim();
    for i in 0..n {
        for j in i + 1..n {
            let l = lambda_star(&Bivector::basis(n, i, j), rep);
            if !form.mul(&l).add(&l.conj_transpose().mul(form)).is_zero() {
                return false;
            }
        }
    }
    form.conj_transpose() == *form
}

/// Dirac current of `ψ ∈ Δ_{1,n+1}`: `g(V_ψ, X) = -b(X·ψ, ψ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracCurrent {
    /// Components `V^a` in the orthonormal basis `e_-, e_+, e_1, …, e_n`.
    pub orthonormal: Vec<ExactScalar>,
    /// `(g(V,q), g(V,e_1), …, g(V,e_n), g(V,p))`, i.e. the coefficients of
    /// `V = α p + Σ β_i e_i + γ q` written `(α, β, γ)`.
    pub witt: Vec<ExactScalar>,
    /// `g(V, V)`.
    pub norm: ExactScalar,
}

impl DiracCurrent {
    pub fn is_null(&self) -> bool {
        self.norm.is_zero()
    }

    /// `V = c·p` with `c > 0`.
    pub fn is_positive_multiple_of_p(&self) -> bool {
        let k = self.witt.len();
        self.witt[1..].iter().all(|x| x.is_zero()) && self.witt[0].real_sign() == Some(1) && k >= 2
    }
}

pub fn dirac_current(rep: &CliffordRep, psi: &[ExactScalar]) -> Result<DiracCurrent, SpinorError> {
    let sig = rep.signature();
    let dim = sig.dim();
    if sig.r != 1 || dim < 2 {
        return Err(LieError::NotLorentzian.into());
    }
    if psi.len() != rep.spinor_dim() {
        return Err(SpinorError::Length {
            expected: rep.spinor_dim(),
            got: psi.len(),
        });
    }
    if psi.iter().all(|x| x.is_zero()) {
        return Err(SpinorError::ZeroSpinor);
    }
    let form = hermitian_form(rep);
    let mut g_with = Vec::with_capacity(dim);
    for a in 0..dim {
        let xpsi = rep.gamma(a).apply(psi);
        let v = hermitian_pair(&form, &xpsi, psi).fneg();
        if !v.is_real() {
            return Err(SpinorError::NotReal(a));
        }
        g_with.push(v);
    }
    let orthonormal: Vec<ExactScalar> = g_with
        .iter()
        .enumerate()
        .map(|(a, v)| v.fmul(&ExactScalar::from_int(sig.sign(a))))
        .collect();
    let norm = g_with
        .iter()
        .zip(&orthonormal)
        .fold(ExactScalar::zero(), |acc, (x, y)| acc.fadd(&x.fmul(y)));
    // α = g(V, q), γ = g(V, p) with p = (e_- + e_+)/√2, q = (e_+ - e_-)/√2.
    let h = ExactScalar::inv_sqrt2();
    let alpha = g_with[1].fsub(&g_with[0]).fmul(&h);
    let gamma = g_with[0].fadd(&g_with[1]).fmul(&h);
    let mut witt = vec![alpha];
    witt.extend(g_with[2..].iter().cloned());
    witt.push(gamma);
    Ok(DiracCurrent {
        orthonormal,
        witt,
        norm,
    })
}

/// Outcome of comparing a computed parallel-spinor count with the prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct Theorem41Check {
    pub family: String,
    pub n: usize,
    pub w: Rational,
    /// Annihilator of `h` in `Δ_n`, or of `k` in `Δ_{n-1}`.
    pub sub_annihilator: usize,
    pub computed: usize,
    pub prediction: DimensionPrediction,
    /// Every parallel spinor has the form `ψ_+ ⊗ u(1)`.
    pub in_plus_part: bool,
}

impl Theorem41Check {
    pub fn agrees(&self) -> bool {
        self.computed == self.prediction.consistent && self.in_plus_part
    }
}

/// Compute the parallel spinors of a `g^{w,h}` or `g^k` family and compare
/// with the dimension formula. For `g^k` the weight is `-2`.
pub fn verify_theorem41(family: &WeylFamily) -> Result<Theorem41Check, SpinorError> {
    let n = family.n();
    let (w, sub, sub_dim): (Rational, &Riemannian, usize) = match family {
        WeylFamily::Weighted { h, w } => (w.clone(), h, n),
        WeylFamily::Kernel { sub, .. } => (Rational::from_integer((-2).into()), sub, n - 1),
        _ => return Err(CatalogError::Constraint("only g^{w,h} and g^k have a dimension formula".into()).into()),
    };
    let sub_ann = riemannian_annihilator(&sub.generators(), sub_dim)?.len();
    let gens = family.generators()?;
    let spinors = parallel_spinors(&w, &gens, n)?;
    let in_plus_part = spinors.iter().all(|s| split(s).1.iter().all(|x| x.is_zero()));
    let prediction = theorem41_dimension(family, sub_ann).expect("family has a formula");
    Ok(Theorem41Check {
        family: family.name(),
        n,
        w,
        sub_annihilator: sub_ann,
        computed: spinors.len(),
        prediction,
        in_plus_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn special_holonomy_annihilators() {
        let cases = [
            (Riemannian::Su(2), 2),
            (Riemannian::Su(3), 2),
            (Riemannian::Sp(1), 2),
            (Riemannian::Sp(2), 3),
            (Riemannian::G2, 1),
            (Riemannian::Spin7, 1),
            (Riemannian::Full(4), 0),
            (Riemannian::Trivial(3), 2),
        ];
        for (h, expected) in cases {
            let ann = riemannian_annihilator(&h.generators(), h.n()).unwrap();
            assert_eq!(ann.len(), expected, "{}", h);
        }
    }

    #[test]
    fn hermitian_form_is_invariant() {
        for n in 0..5 {
            let rep = CliffordRep::new(Signature::lorentzian(n)).unwrap();
            assert!(form_is_invariant(&rep, &hermitian_form(&rep)), "n = {}", n);
        }
    }

    #[test]
    fn current_is_future_directed() {
        let rep = CliffordRep::new(Signature::lorentzian(2)).unwrap();
        for i in 0..rep.spinor_dim() {
            let mut psi = vec![ExactScalar::zero(); rep.spinor_dim()];
            psi[i] = ExactScalar::one();
            let v = dirac_current(&rep, &psi).unwrap();
            // g(V, e_-) = -V^- < 0 means V^- > 0.
            assert_eq!(v.orthonormal[0].real_sign(), Some(1));
            assert!(v.norm.real_sign() != Some(1));
        }
    }

    #[test]
    fn zero_spinor_rejected() {
        let rep = CliffordRep::new(Signature::lorentzian(1)).unwrap();
        let psi = vec![ExactScalar::zero(); rep.spinor_dim()];
        assert_eq!(dirac_current(&rep, &psi), Err(SpinorError::ZeroSpinor));
    }

    #[test]
    fn weighted_family_counts() {
        let check = verify_theorem41(&WeylFamily::Weighted {
            h: Riemannian::Su(2),
            w: int(1),
        })
        .unwrap();
        assert_eq!(check.computed, 2);
        assert!(check.agrees());
    }
}

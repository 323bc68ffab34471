//! Bivectors, the spin lift `λ_*`, the parabolic subalgebra `co(1,n+1)_{ℝp}` and
//! its weighted action on spinors.
//!
//! The Lorentzian basis is ordered `e_-, e_+, e_1, …, e_n` with `e_-` timelike.
//! The null vectors are `p = (e_- + e_+)/√2` and `q = (e_+ - e_-)/√2`, so that
//! `g(p, q) = 1`.

use num_traits::Zero;

use crate::clifford::{CliffordRep, Signature};
use crate::linalg::Matrix;
use crate::scalar::{int, rat, ExactScalar, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("matrix is not skew with respect to the metric at entry ({0},{1})")]
    NotSkew(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix does not preserve the null line: entry ({0},{1}) is {2}")]
    NotParabolic(usize, usize, String),
    #[error("representation must have signature (1, n+1)")]
    NotLorentzian,
}

/// Antisymmetric 2-vector `Σ_{i<j} β_ij e_i ∧ e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    dim: usize,
    coeffs: Vec<ExactScalar>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Bivector {
            dim,
            coeffs: vec![ExactScalar::zero(); dim * dim.saturating_sub(1) / 2],
        }
    }

    /// `e_i ∧ e_j`.
    pub fn basis(dim: usize, i: usize, j: usize) -> Self {
        let mut b = Bivector::zero(dim);
        b.set(i, j, ExactScalar::one());
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `β_ij`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> ExactScalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.coeffs[pair_index(self.dim, j, i)].fneg(),
            std::cmp::Ordering::Equal => ExactScalar::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(self.dim, i, j)] = v,
            std::cmp::Ordering::Greater => self.coeffs[pair_index(self.dim, j, i)] = v.fneg(),
            std::cmp::Ordering::Equal => assert!(v.is_zero(), "diagonal of a bivector"),
        }
    }

    pub fn add(&self, o: &Bivector) -> Bivector {
        assert_eq!(self.dim, o.dim);
        Bivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.fadd(b)).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Bivector {
        Bivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|a| a.fmul(c)).collect(),
        }
    }

    /// `x ∧ y` for vectors in the orthonormal basis.
    pub fn wedge(x: &[ExactScalar], y: &[ExactScalar]) -> Bivector {
        let dim = x.len();
        let mut b = Bivector::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                b.set(i, j, x[i].fmul(&y[j]).fsub(&x[j].fmul(&y[i])));
            }
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Matrix of `z ↦ Σ β_ij (g(e_i, z) e_j - g(e_j, z) e_i)`.
pub fn so_matrix(beta: &Bivector, sig: Signature) -> Matrix<ExactScalar> {
    let n = sig.dim();
    assert_eq!(beta.dim(), n);
    let mut m: Matrix<ExactScalar> = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let b = beta.get(i, j);
            if b.is_zero() {
                continue;
            }
            let ki = ExactScalar::from_int(sig.sign(i));
            let kj = ExactScalar::from_int(sig.sign(j));
            m.set(j, i, m.get(j, i).fadd(&b.fmul(&ki)));
            m.set(i, j, m.get(i, j).fsub(&b.fmul(&kj)));
        }
    }
    m
}

/// Inverse of [`so_matrix`]; fails unless `m` is skew for the metric.
pub fn bivector_from_so_matrix(m: &Matrix<ExactScalar>, sig: Signature) -> Result<Bivector, LieError> {
    let n = sig.dim();
    if m.rows() != n || m.cols() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            got: m.rows(),
        });
    }
    let mut beta = Bivector::zero(n);
    for i in 0..n {
        if !m.get(i, i).is_zero() {
            return Err(LieError::NotSkew(i, i));
        }
        for j in i + 1..n {
            let ki = ExactScalar::from_int(sig.sign(i));
            let kj = ExactScalar::from_int(sig.sign(j));
            let b = m.get(j, i).fmul(&ki);
            if m.get(i, j).fadd(&b.fmul(&kj)) != ExactScalar::zero() {
                return Err(LieError::NotSkew(i, j));
            }
            beta.set(i, j, b);
        }
    }
    Ok(beta)
}

/// Lie bracket of bivectors through their matrices.
pub fn bivector_bracket(a: &Bivector, b: &Bivector, sig: Signature) -> Bivector {
    let c = so_matrix(a, sig).commutator(&so_matrix(b, sig));
    bivector_from_so_matrix(&c, sig).expect("commutator of skew matrices is skew")
}

/// `Σ β_ij Φ(e_i) Φ(e_j)`: the bivector read as a Clifford element.
pub fn clifford_bivector(beta: &Bivector, rep: &CliffordRep) -> Matrix<ExactScalar> {
    let n = rep.signature().dim();
    assert_eq!(beta.dim(), n);
    let d = rep.spinor_dim();
    let mut acc = Matrix::zeros(d, d);
    for i in 0..n {
        for j in i + 1..n {
            let b = beta.get(i, j);
            if !b.is_zero() {
                acc.add_scaled(&b, &rep.gamma(i).mul(rep.gamma(j)));
            }
        }
    }
    acc
}

/// Spin lift `λ_*(β) = ½ Σ β_ij Φ(e_i)Φ(e_j)`, a Lie algebra homomorphism
/// `so(r,s) → End(Δ)`.
pub fn lambda_star(beta: &Bivector, rep: &CliffordRep) -> Matrix<ExactScalar> {
    clifford_bivector(beta, rep).scale(&ExactScalar::from_rational(rat(1, 2)))
}

/// Bivector of a skew rational matrix in `so(n)`: `β_ij = A_ji`.
pub fn bivector_of_so(a: &Matrix<Rational>) -> Bivector {
    let n = a.rows();
    let mut b = Bivector::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            b.set(i, j, ExactScalar::from_rational(a.get(j, i).clone()));
        }
    }
    b
}

/// `p` and `q` in the orthonormal basis `e_-, e_+, e_1, …, e_n`.
pub fn null_frame(n: usize) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
    let h = ExactScalar::inv_sqrt2();
    let mut p = vec![ExactScalar::zero(); n + 2];
    let mut q = vec![ExactScalar::zero(); n + 2];
    p[0] = h.clone();
    p[1] = h.clone();
    q[0] = h.fneg();
    q[1] = h;
    (p, q)
}

/// Element `b·Id + (a, A, X)` of `co(1,n+1)_{ℝp} = (ℝ ⊕ ℝ ⊕ so(n)) ⋉ ℝ^n`. In
/// the basis `(p, e_1, …, e_n, q)` it is `b·Id` plus
/// `[[a, Xᵀ, 0], [0, A, -X], [0, 0, -a]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoElement {
    pub b: Rational,
    pub a: Rational,
    pub a_mat: Matrix<Rational>,
    pub x: Vec<Rational>,
}

impl CoElement {
    pub fn new(b: Rational, a: Rational, a_mat: Matrix<Rational>, x: Vec<Rational>) -> Result<Self, LieError> {
        let n = x.len();
        if a_mat.rows() != n || a_mat.cols() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                got: a_mat.rows(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if a_mat.get(i, j) != &-a_mat.get(j, i).clone() {
                    return Err(LieError::NotSkew(i, j));
                }
            }
        }
        Ok(CoElement { b, a, a_mat, x })
    }

    pub fn zero(n: usize) -> Self {
        CoElement {
            b: int(0),
            a: int(0),
            a_mat: Matrix::zeros(n, n),
            x: vec![int(0); n],
        }
    }

    /// `(b, a, 0, 0)`.
    pub fn scalars(n: usize, b: Rational, a: Rational) -> Self {
        CoElement {
            b,
            a,
            ..CoElement::zero(n)
        }
    }

    /// `(0, 0, A, 0)`.
    pub fn rotation(a_mat: Matrix<Rational>) -> Result<Self, LieError> {
        let n = a_mat.rows();
        CoElement::new(int(0), int(0), a_mat, vec![int(0); n])
    }

    /// `(0, 0, 0, X)`.
    pub fn translation(x: Vec<Rational>) -> Self {
        let n = x.len();
        CoElement {
            x,
            ..CoElement::zero(n)
        }
    }

    /// `(0, 0, 0, e_i)`, `i` 0-based.
    pub fn unit_translation(n: usize, i: usize) -> Self {
        let mut x = vec![int(0); n];
        x[i] = int(1);
        CoElement::translation(x)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn display_matrix(&self) -> Matrix<Rational> {
        let n = self.n();
        let mut m = Matrix::identity(n + 2).scale(&self.b);
        m.set(0, 0, &self.b + &self.a);
        m.set(n + 1, n + 1, &self.b - &self.a);
        for i in 0..n {
            m.set(0, i + 1, self.x[i].clone());
            m.set(i + 1, n + 1, -self.x[i].clone());
            for j in 0..n {
                let v = m.get(i + 1, j + 1) + self.a_mat.get(i, j);
                m.set(i + 1, j + 1, v);
            }
        }
        m
    }

    /// Read `(b, a, A, X)` off a matrix in the basis `(p, e_i, q)`.
    pub fn from_display_matrix(m: &Matrix<Rational>) -> Result<Self, LieError> {
        let n = m.rows().checked_sub(2).ok_or(LieError::DimensionMismatch {
            expected: 2,
            got: m.rows(),
        })?;
        let q = n + 1;
        let must_vanish = |r: usize, c: usize| -> Result<(), LieError> {
            if m.get(r, c).is_zero() {
                Ok(())
            } else {
                Err(LieError::NotParabolic(r, c, m.get(r, c).to_string()))
            }
        };
        must_vanish(0, q)?;
        must_vanish(q, 0)?;
        for i in 1..=n {
            must_vanish(i, 0)?;
            must_vanish(q, i)?;
        }
        let two = int(2);
        let b = (m.get(0, 0) + m.get(q, q)) / &two;
        let a = (m.get(0, 0) - m.get(q, q)) / &two;
        let mut a_mat = Matrix::zeros(n, n);
        let mut x = vec![int(0); n];
        for i in 0..n {
            x[i] = m.get(0, i + 1).clone();
            if m.get(i + 1, q) != &-x[i].clone() {
                return Err(LieError::NotParabolic(i + 1, q, m.get(i + 1, q).to_string()));
            }
            for j in 0..n {
                let v = if i == j {
                    m.get(i + 1, j + 1) - &b
                } else {
                    m.get(i + 1, j + 1).clone()
                };
                a_mat.set(i, j, v);
            }
        }
        CoElement::new(b, a, a_mat, x)
    }

    pub fn bracket(&self, o: &CoElement) -> CoElement {
        let c = self.display_matrix().commutator(&o.display_matrix());
        CoElement::from_display_matrix(&c).expect("subalgebra is closed")
    }

    /// Coordinates `(b, a, A_ij for i<j, X)`.
    pub fn coords(&self) -> Vec<Rational> {
        let n = self.n();
        let mut v = vec![self.b.clone(), self.a.clone()];
        for i in 0..n {
            for j in i + 1..n {
                v.push(self.a_mat.get(i, j).clone());
            }
        }
        v.extend(self.x.iter().cloned());
        v
    }

    pub fn coord_dim(n: usize) -> usize {
        2 + n * n.saturating_sub(1) / 2 + n
    }

    pub fn from_coords(n: usize, v: &[Rational]) -> Self {
        assert_eq!(v.len(), CoElement::coord_dim(n));
        let mut a_mat = Matrix::zeros(n, n);
        let mut k = 2;
        for i in 0..n {
            for j in i + 1..n {
                a_mat.set(i, j, v[k].clone());
                a_mat.set(j, i, -v[k].clone());
                k += 1;
            }
        }
        CoElement {
            b: v[0].clone(),
            a: v[1].clone(),
            a_mat,
            x: v[k..].to_vec(),
        }
    }

    /// The `so(1,n+1)` part `-a p∧q + A - p∧X` in the orthonormal basis.
    pub fn bivector(&self) -> Bivector {
        let n = self.n();
        let mut beta = Bivector::zero(n + 2);
        // p ∧ q = e_- ∧ e_+.
        beta.set(0, 1, ExactScalar::from_rational(-self.a.clone()));
        for i in 0..n {
            for j in i + 1..n {
                beta.set(i + 2, j + 2, ExactScalar::from_rational(self.a_mat.get(j, i).clone()));
            }
            // -p ∧ X = -(√2/2) Σ X_i (e_- + e_+) ∧ e_i.
            let c = ExactScalar::inv_sqrt2().fmul(&ExactScalar::from_rational(-self.x[i].clone()));
            beta.set(0, i + 2, c.clone());
            beta.set(1, i + 2, c);
        }
        beta
    }
}

fn check_lorentzian(rep: &CliffordRep, n: usize) -> Result<(), LieError> {
    if rep.signature() != Signature::lorentzian(n) {
        return Err(LieError::NotLorentzian);
    }
    Ok(())
}

/// Weighted action of `ξ` on `Δ_{1,n+1}`: `w·b·Id - 2 Σ β_ij e_i e_j` with
/// `β` the bivector of `ξ`. On `Δ_n ⊗ u(1)` the element `(0,-1,0,0)` acts as
/// `2` and `(1, w/2, 0, 0)` acts as zero.
pub fn weighted_spinor_op(rep: &CliffordRep, w: &Rational, xi: &CoElement) -> Result<Matrix<ExactScalar>, LieError> {
    check_lorentzian(rep, xi.n())?;
    let d = rep.spinor_dim();
    let mut m = clifford_bivector(&xi.bivector(), rep).scale(&ExactScalar::from_int(-2));
    let wb = w * &xi.b;
    if !wb.is_zero() {
        m = m.add(&Matrix::identity(d).scale(&ExactScalar::from_rational(wb)));
    }
    Ok(m)
}

/// Lie algebra representation underlying [`weighted_spinor_op`]:
/// `ρ(ξ) = -(w/4) b + λ_*(β)`, so that the weighted action is `-4ρ`.
pub fn weighted_lie_action(rep: &CliffordRep, w: &Rational, xi: &CoElement) -> Result<Matrix<ExactScalar>, LieError> {
    Ok(weighted_spinor_op(rep, w, xi)?.scale(&ExactScalar::from_rational(rat(-1, 4))))
}

/// `ψ ⊗ u(ε)` in `Δ_{1,n+1} = Δ_n ⊗ Δ_{1,1}`.
pub fn embed(psi: &[ExactScalar], eps: i8) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); 2 * psi.len()];
    let off = usize::from(eps < 0);
    for (i, c) in psi.iter().enumerate() {
        out[2 * i + off] = c.clone();
    }
    out
}

/// Components `(ψ_+, ψ_-)` with `ψ = ψ_+ ⊗ u(1) + ψ_- ⊗ u(-1)`.
pub fn split(psi: &[ExactScalar]) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
    let plus = psi.iter().step_by(2).cloned().collect();
    let minus = psi.iter().skip(1).step_by(2).cloned().collect();
    (plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> CoElement {
        let mut a_mat = Matrix::zeros(n, n);
        if n >= 2 {
            a_mat.set(0, 1, int(2));
            a_mat.set(1, 0, int(-2));
        }
        let x = (0..n).map(|i| int(i as i64 + 1)).collect();
        CoElement::new(rat(1, 3), int(-1), a_mat, x).unwrap()
    }

    #[test]
    fn bivector_matrix_matches_display() {
        let n = 3;
        let xi = CoElement { b: int(0), ..sample(n) };
        let sig = Signature::lorentzian(n);
        let m = so_matrix(&xi.bivector(), sig);
        // Change to the basis (p, e_1..e_n, q).
        let (p, q) = null_frame(n);
        let mut basis = Matrix::zeros(n + 2, n + 2);
        for r in 0..n + 2 {
            basis.set(r, 0, p[r].clone());
            basis.set(r, n + 1, q[r].clone());
        }
        for i in 0..n {
            basis.set(i + 2, i + 1, ExactScalar::one());
        }
        let witt = basis.inverse().unwrap().mul(&m).mul(&basis);
        assert_eq!(witt, Matrix::from_rational(&xi.display_matrix()));
    }

    #[test]
    fn so_matrix_roundtrip() {
        let sig = Signature::new(1, 3);
        let mut b = Bivector::zero(4);
        b.set(0, 2, ExactScalar::from_int(3));
        b.set(1, 3, ExactScalar::sqrt2());
        b.set(2, 3, ExactScalar::from_int(-1));
        let m = so_matrix(&b, sig);
        assert_eq!(bivector_from_so_matrix(&m, sig).unwrap(), b);
    }

    #[test]
    fn display_roundtrip_and_closure() {
        let a = sample(3);
        let m = a.display_matrix();
        assert_eq!(CoElement::from_display_matrix(&m).unwrap(), a);
        let b = CoElement::unit_translation(3, 2);
        let c = a.bracket(&b);
        assert!(c.b.is_zero());
        assert_eq!(CoElement::from_coords(3, &a.coords()), a);
    }

    #[test]
    fn non_parabolic_matrix_is_rejected() {
        let mut m = Matrix::zeros(4, 4);
        m.set(3, 0, int(1));
        assert!(matches!(
            CoElement::from_display_matrix(&m),
            Err(LieError::NotParabolic(3, 0, _))
        ));
    }

    #[test]
    fn weighted_eigenvalues_on_plus_part() {
        let n = 2;
        let rep = CliffordRep::new(Signature::lorentzian(n)).unwrap();
        let w = int(3);
        let boost = CoElement::scalars(n, int(0), int(-1));
        let op = weighted_spinor_op(&rep, &w, &boost).unwrap();
        let kill = CoElement::scalars(n, int(1), rat(3, 2));
        let op2 = weighted_spinor_op(&rep, &w, &kill).unwrap();
        for i in 0..2 {
            let mut psi = vec![ExactScalar::zero(); 2];
            psi[i] = ExactScalar::one();
            let v = embed(&psi, 1);
            let two_v: Vec<_> = v.iter().map(|c| c.fmul(&ExactScalar::from_int(2))).collect();
            assert_eq!(op.apply(&v), two_v);
            assert!(op2.apply(&v).iter().all(|c| c.is_zero()));
        }
    }
}

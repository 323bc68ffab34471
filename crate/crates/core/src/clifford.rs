//! Explicit complex spinor representations of the real Clifford algebras
//! `Cl(r, s)` built from Kronecker products of 2×2 matrices.
//!
//! Conventions: `e_1, …, e_r` are timelike (`g = -1`), the rest spacelike, and
//! the Clifford relation is `x·x = -g(x, x)`. Generators are available in the
//! standard basis of `(ℂ²)^{⊗m}` and in the spinor basis
//! `u(ε_m) ⊗ … ⊗ u(ε_1)`, `u(ε) = (√2/2)(1, -εi)`, where every entry is a
//! Gaussian rational.

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::scalar::{int, ExactScalar, Field};

/// Largest `r + s` for which representations are built.
pub const MAX_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    /// Number of timelike directions; they come first.
    pub r: usize,
    pub s: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize) -> Self {
        Signature { r, s }
    }

    pub fn riemannian(n: usize) -> Self {
        Signature { r: 0, s: n }
    }

    /// `(1, n + 1)`: basis `e_-, e_+, e_1, …, e_n` with `e_-` timelike.
    pub fn lorentzian(n: usize) -> Self {
        Signature { r: 1, s: n + 1 }
    }

    pub fn dim(&self) -> usize {
        self.r + self.s
    }

    /// `g(e_i, e_i)` for the 0-based index `i`.
    pub fn sign(&self, i: usize) -> i64 {
        if i < self.r {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("signature ({r},{s}) exceeds the supported dimension {max}")]
    TooLarge { r: usize, s: usize, max: usize },
    #[error("half spinors need an even dimension, got {0}")]
    OddDimension(usize),
    #[error("sign tuple entries must be +1 or -1")]
    BadSign,
}

#[derive(Clone, Copy)]
enum Block {
    E,
    T,
    U,
    V,
}

fn block(b: Block, spinor_basis: bool) -> Matrix<ExactScalar> {
    let z = ExactScalar::zero();
    let one = ExactScalar::one();
    let i = ExactScalar::i();
    let m = |a: [&ExactScalar; 4]| {
        Matrix::from_rows(vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]])
    };
    let mi = i.fneg();
    let mone = one.fneg();
    match (b, spinor_basis) {
        (Block::E, _) => Matrix::identity(2),
        (Block::T, false) => m([&z, &mi, &i, &z]),
        (Block::U, false) => m([&i, &z, &z, &mi]),
        (Block::V, false) => m([&z, &i, &i, &z]),
        (Block::T, true) => m([&mone, &z, &z, &one]),
        (Block::U, true) => m([&z, &i, &i, &z]),
        (Block::V, true) => m([&z, &mone, &one, &z]),
    }
}

fn kron_all(blocks: &[Block], spinor_basis: bool) -> Matrix<ExactScalar> {
    let mut acc = Matrix::<ExactScalar>::identity(1);
    for &b in blocks {
        acc = acc.kron(&block(b, spinor_basis));
    }
    acc
}

/// Representation `Φ_{r,s}` of `Cl(r, s)` on `Δ = ℂ^{2^{⌊n/2⌋}}`. For odd `n`
/// the last generator acts as `i·T^{⊗m}` (times `i` if timelike), which picks
/// one of the two inequivalent representations.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    signature: Signature,
    factors: usize,
    gammas_standard: Vec<Matrix<ExactScalar>>,
    gammas: Vec<Matrix<ExactScalar>>,
}

impl CliffordRep {
    pub fn new(signature: Signature) -> Result<Self, CliffordError> {
        let n = signature.dim();
        if n > MAX_DIM {
            return Err(CliffordError::TooLarge {
                r: signature.r,
                s: signature.s,
                max: MAX_DIM,
            });
        }
        let m = n / 2;
        let mut std = Vec::with_capacity(n);
        let mut spin = Vec::with_capacity(n);
        for j in 0..n {
            let blocks: Vec<Block> = if j < 2 * m {
                let p = j / 2;
                let mut b = vec![Block::E; m - p - 1];
                b.push(if j % 2 == 0 { Block::U } else { Block::V });
                b.extend(std::iter::repeat_n(Block::T, p));
                b
            } else {
                vec![Block::T; m]
            };
            let mut tau = if j < 2 * m {
                ExactScalar::one()
            } else {
                ExactScalar::i()
            };
            if j < signature.r {
                tau = tau.fmul(&ExactScalar::i());
            }
            std.push(kron_all(&blocks, false).scale(&tau));
            spin.push(kron_all(&blocks, true).scale(&tau));
        }
        Ok(CliffordRep {
            signature,
            factors: m,
            gammas_standard: std,
            gammas: spin,
        })
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Number of 2-dimensional tensor factors, `⌊n/2⌋`.
    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn spinor_dim(&self) -> usize {
        1 << self.factors
    }

    /// Generator `Φ(e_i)` (0-based) in the spinor basis.
    pub fn gamma(&self, i: usize) -> &Matrix<ExactScalar> {
        &self.gammas[i]
    }

    pub fn gammas(&self) -> &[Matrix<ExactScalar>] {
        &self.gammas
    }

    /// Generator `Φ(e_i)` in the standard basis of `(ℂ²)^{⊗m}`.
    pub fn gamma_standard(&self, i: usize) -> &Matrix<ExactScalar> {
        &self.gammas_standard[i]
    }

    /// Columns are the spinor basis vectors written in the standard basis.
    pub fn basis_change(&self) -> Matrix<ExactScalar> {
        let h = ExactScalar::inv_sqrt2();
        let i = ExactScalar::i();
        let p2 = Matrix::from_rows(vec![vec![h.clone(), h.clone()], vec![h.fmul(&i).fneg(), h.fmul(&i)]]);
        let mut acc = Matrix::<ExactScalar>::identity(1);
        for _ in 0..self.factors {
            acc = acc.kron(&p2);
        }
        acc
    }

    /// `Φ(x)` for a vector with coordinates `x` in the orthonormal basis.
    pub fn vector(&self, x: &[ExactScalar]) -> Matrix<ExactScalar> {
        assert_eq!(x.len(), self.signature.dim());
        let d = self.spinor_dim();
        let mut acc = Matrix::zeros(d, d);
        for (c, g) in x.iter().zip(&self.gammas) {
            acc.add_scaled(c, g);
        }
        acc
    }

    /// Pairs `(i, j)` violating `e_i e_j + e_j e_i = -2 g_ij`.
    pub fn relation_failures(&self) -> Vec<(usize, usize)> {
        let n = self.signature.dim();
        let d = self.spinor_dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i..n {
                let ac = self.gammas[i]
                    .mul(&self.gammas[j])
                    .add(&self.gammas[j].mul(&self.gammas[i]));
                let expected = if i == j {
                    Matrix::<ExactScalar>::identity(d).scale(&ExactScalar::from_int(-2 * self.signature.sign(i)))
                } else {
                    Matrix::zeros(d, d)
                };
                if ac != expected {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

/// Basis index of `u(ε_k) ⊗ … ⊗ u(ε_1)`; `eps` is written `(ε_k, …, ε_1)`.
pub fn spinor_index(eps: &[i8]) -> Result<usize, CliffordError> {
    let mut idx = 0;
    for &e in eps {
        idx <<= 1;
        match e {
            1 => {}
            -1 => idx |= 1,
            _ => return Err(CliffordError::BadSign),
        }
    }
    Ok(idx)
}

/// Inverse of [`spinor_index`] for `k` factors.
pub fn spinor_signs(index: usize, k: usize) -> Vec<i8> {
    (0..k).rev().map(|j| if index >> j & 1 == 1 { -1 } else { 1 }).collect()
}

/// Basis indices spanning the half spinor space `Δ^±`: the product of the
/// signs `ε_1 ⋯ ε_k` equals `chirality`.
pub fn half_spinor_basis(rep: &CliffordRep, chirality: i8) -> Result<Vec<usize>, CliffordError> {
    let n = rep.signature().dim();
    if n % 2 == 1 {
        return Err(CliffordError::OddDimension(n));
    }
    if chirality != 1 && chirality != -1 {
        return Err(CliffordError::BadSign);
    }
    let k = rep.factors();
    Ok((0..rep.spinor_dim())
        .filter(|&i| spinor_signs(i, k).iter().map(|&e| e as i32).product::<i32>() == chirality as i32)
        .collect())
}

/// Spinor basis vector with index `idx`.
pub fn basis_spinor(dim: usize, idx: usize) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(); dim];
    v[idx] = ExactScalar::from_rational(int(1));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_generator_is_u_in_standard_basis() {
        let rep = CliffordRep::new(Signature::riemannian(2)).unwrap();
        let i = ExactScalar::i();
        let u = Matrix::from_rows(vec![
            vec![i.clone(), ExactScalar::zero()],
            vec![ExactScalar::zero(), i.fneg()],
        ]);
        assert_eq!(rep.gamma_standard(0), &u);
    }

    #[test]
    fn small_signatures_satisfy_relations() {
        for (r, s) in [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (0, 3), (3, 0), (1, 3)] {
            let rep = CliffordRep::new(Signature::new(r, s)).unwrap();
            assert!(rep.relation_failures().is_empty(), "({},{})", r, s);
        }
    }

    #[test]
    fn spinor_basis_is_a_change_of_basis() {
        let rep = CliffordRep::new(Signature::new(1, 4)).unwrap();
        let p = rep.basis_change();
        let pinv = p.inverse().unwrap();
        for i in 0..5 {
            assert_eq!(&pinv.mul(rep.gamma_standard(i)).mul(&p), rep.gamma(i));
        }
    }

    #[test]
    fn index_map_roundtrip() {
        assert_eq!(spinor_index(&[1, 1, 1]).unwrap(), 0);
        assert_eq!(spinor_index(&[1, 1, -1]).unwrap(), 1);
        assert_eq!(spinor_index(&[-1, 1, 1]).unwrap(), 4);
        for idx in 0..16 {
            assert_eq!(spinor_index(&spinor_signs(idx, 4)).unwrap(), idx);
        }
        assert_eq!(spinor_index(&[1, 0]), Err(CliffordError::BadSign));
    }

    #[test]
    fn half_spinors_split_evenly() {
        let rep = CliffordRep::new(Signature::riemannian(6)).unwrap();
        let plus = half_spinor_basis(&rep, 1).unwrap();
        let minus = half_spinor_basis(&rep, -1).unwrap();
        assert_eq!(plus.len(), 4);
        assert_eq!(minus.len(), 4);
        assert!(plus.iter().all(|i| !minus.contains(i)));
        let odd = CliffordRep::new(Signature::riemannian(5)).unwrap();
        assert_eq!(half_spinor_basis(&odd, 1), Err(CliffordError::OddDimension(5)));
    }

    #[test]
    fn oversized_signature_is_rejected() {
        assert!(matches!(
            CliffordRep::new(Signature::new(1, 12)),
            Err(CliffordError::TooLarge { .. })
        ));
    }
}

//! Infinitesimal holonomy at the basepoint: the span of `R` and its
//! covariant derivatives, expressed in a Witt frame, and the weighted
//! spinors it annihilates.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use weylspin_symdiff::DiffExpr;

use crate::catalog::Generator;
use crate::clifford::{CliffordRep, Signature};
use crate::lie_spin::{bivector_from_so_matrix, weighted_spinor_op, CoElement, LieError};
use crate::linalg::{Matrix, Span};
use crate::scalar::{rat, ExactScalar, Field, Rational};
use crate::spinors::{annihilator, generator_op, SpinorError};
use crate::weyl::connection::{ChristoffelTable, Geometry};
use crate::weyl::structure::StructureError;

pub const DEFAULT_MAX_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HolonomyError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("h at the basepoint has no rational orthonormal frame (norm² {0} is not a square)")]
    NotRationalFrame(String),
    #[error(transparent)]
    Spinor(#[from] SpinorError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("holonomy element is not in co(1,n+1): {0}")]
    NotConformal(String),
}

/// Witt frame `p, X_1, …, X_n, q` at the basepoint, as columns in chart
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WittFrame {
    pub columns: Matrix<Rational>,
    pub inverse: Matrix<Rational>,
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// `p = ∂_v`, `X_i` from Gram-Schmidt on `∂_1, …, ∂_n` with respect to `h`,
/// `q = q̃ - ½ g(q̃,q̃) p` with `q̃ = ∂_u - Σ g(∂_u, X_i) X_i`. For `A = 0`
/// this is `q = ∂_u - ½ H ∂_v`.
pub fn witt_frame(geo: &Geometry) -> Result<WittFrame, HolonomyError> {
    let s = &geo.structure;
    let dim = s.dim();
    let n = s.n();
    let mut g = Matrix::<Rational>::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            g.set(a, b, s.at_basepoint(&geo.g[a][b], "metric")?);
        }
    }
    let ip = |x: &[Rational], y: &[Rational]| -> Rational {
        let gy = g.apply(y);
        x.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    };
    let unit = |k: usize| {
        let mut e = vec![Rational::zero(); dim];
        e[k] = Rational::one();
        e
    };
    let mut xs: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut w = unit(i);
        for x in &xs {
            let c = ip(&w, x);
            for k in 0..dim {
                w[k] = &w[k] - &(&c * &x[k]);
            }
        }
        let norm2 = ip(&w, &w);
        let r = rational_sqrt(&norm2).ok_or_else(|| HolonomyError::NotRationalFrame(norm2.to_string()))?;
        xs.push(w.iter().map(|c| c / &r).collect());
    }
    let p = unit(s.chart().v());
    let mut q = unit(s.chart().u());
    for x in &xs {
        let c = ip(&unit(s.chart().u()), x);
        for k in 0..dim {
            q[k] = &q[k] - &(&c * &x[k]);
        }
    }
    let half_norm = ip(&q, &q) * rat(1, 2);
    q[0] = &q[0] - &half_norm;
    let mut cols = vec![p];
    cols.extend(xs);
    cols.push(q);
    let mut columns = Matrix::zeros(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            columns.set(i, j, x.clone());
        }
    }
    let inverse = columns.inverse().expect("frame is a basis");
    Ok(WittFrame { columns, inverse })
}

type Sparse = BTreeMap<Vec<u8>, DiffExpr>;

fn accumulate(map: &mut Sparse, key: Vec<u8>, val: DiffExpr) {
    match map.get_mut(&key) {
        Some(e) => *e = &*e + &val,
        None => {
            map.insert(key, val);
        }
    }
}

/// Nonzero `Γ^d_{e m}` grouped by `(e, m)` and `Γ^m_{e c}` grouped by `(m, e)`.
struct GammaIndex {
    by_lower: Vec<Vec<Vec<(usize, DiffExpr)>>>,
    by_upper: Vec<Vec<Vec<(usize, DiffExpr)>>>,
}

impl GammaIndex {
    fn new(gamma: &ChristoffelTable) -> Self {
        let dim = gamma.dim();
        let mut by_lower = vec![vec![Vec::new(); dim]; dim];
        let mut by_upper = vec![vec![Vec::new(); dim]; dim];
        for d in 0..dim {
            for e in 0..dim {
                for m in 0..dim {
                    let x = gamma.get(d, e, m);
                    if !x.is_zero() {
                        by_lower[e][m].push((d, x.clone()));
                        by_upper[d][e].push((m, x.clone()));
                    }
                }
            }
        }
        GammaIndex { by_lower, by_upper }
    }
}

/// `∇T` for a tensor with one upper index (slot 0); the new index is appended.
fn covariant_derivative(t: &Sparse, gi: &GammaIndex, dim: usize) -> Sparse {
    let mut out = Sparse::new();
    for (key, val) in t {
        for e in 0..dim {
            let mut with = |k: Vec<u8>, x: DiffExpr| {
                let mut k = k;
                k.push(e as u8);
                accumulate(&mut out, k, x);
            };
            let d = val.diff(e);
            if !d.is_zero() {
                with(key.clone(), d);
            }
            for (dp, g) in &gi.by_lower[e][key[0] as usize] {
                let mut k = key.clone();
                k[0] = *dp as u8;
                with(k, g * val);
            }
            for s in 1..key.len() {
                for (c, g) in &gi.by_upper[key[s] as usize][e] {
                    let mut k = key.clone();
                    k[s] = *c as u8;
                    with(k, -(g * val));
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Linear span of the holonomy endomorphisms in the Witt frame.
#[derive(Clone, Debug)]
pub struct HolonomySpan {
    pub n: usize,
    pub frame: WittFrame,
    /// Basis of the span, as matrices in the basis `(p, X_1, …, X_n, q)`.
    pub basis: Vec<Matrix<Rational>>,
    /// Cumulative rank after each order `0, 1, …`.
    pub rank_by_order: Vec<usize>,
    /// Two consecutive orders added nothing, the span filled `co(1,n+1)`, or
    /// the derivative tensor vanished identically.
    pub stabilized: bool,
    /// Cumulative spans, one per computed order.
    pub spans: Vec<Span<Rational>>,
}

impl HolonomySpan {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The basis as elements of `co(1,n+1)_{ℝp}`, if every element fixes the line `ℝp`.
    pub fn parabolic_elements(&self) -> Result<Vec<CoElement>, LieError> {
        self.basis.iter().map(CoElement::from_display_matrix).collect()
    }

    /// Every element as a generator `b·Id + β` with `β` in the orthonormal basis.
    pub fn generators(&self) -> Result<Vec<Generator>, HolonomyError> {
        self.basis.iter().map(frame_matrix_to_generator).collect()
    }

    /// Whether the span lies in the span of `gens`.
    pub fn contained_in(&self, gens: &[Generator]) -> Result<bool, HolonomyError> {
        let dim = self.n + 2;
        let mut span = Span::new(dim * dim);
        for g in gens {
            match g {
                Generator::Parabolic(c) => {
                    span.insert(flatten(&c.display_matrix()));
                }
                Generator::General { .. } => {
                    return Err(HolonomyError::NotConformal(
                        "containment is decided for parabolic generators only".into(),
                    ))
                }
            }
        }
        Ok(self.basis.iter().all(|m| span.contains(&flatten(m))))
    }
}

fn flatten(m: &Matrix<Rational>) -> Vec<Rational> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

/// `M = b·Id + S` with `S ∈ so(1,n+1)`, read in the orthonormal basis
/// `e_-, e_+, e_i` where `p = (e_- + e_+)/√2`, `q = (e_+ - e_-)/√2`.
pub fn frame_matrix_to_generator(m: &Matrix<Rational>) -> Result<Generator, HolonomyError> {
    match CoElement::from_display_matrix(m) {
        Ok(c) => Ok(Generator::Parabolic(c)),
        Err(_) => general_generator(m),
    }
}

/// [`frame_matrix_to_generator`] without the parabolic shortcut.
pub fn general_generator(m: &Matrix<Rational>) -> Result<Generator, HolonomyError> {
    let dim = m.rows();
    let n = dim - 2;
    let h = ExactScalar::inv_sqrt2();
    // Columns: p, X_i, q in orthonormal coordinates.
    let mut b = Matrix::<ExactScalar>::zeros(dim, dim);
    b.set(0, 0, h.clone());
    b.set(1, 0, h.clone());
    b.set(0, dim - 1, h.fneg());
    b.set(1, dim - 1, h);
    for i in 0..n {
        b.set(i + 2, i + 1, ExactScalar::one());
    }
    let binv = b.inverse().expect("basis change");
    let orth = b.mul(&Matrix::from_rational(m)).mul(&binv);
    let mut trace = ExactScalar::zero();
    for i in 0..dim {
        trace = trace.fadd(orth.get(i, i));
    }
    let scalar = trace.fmul(&ExactScalar::from_rational(Rational::new(
        1.into(),
        (dim as i64).into(),
    )));
    let skew = orth.sub(&Matrix::identity(dim).scale(&scalar));
    let bivector = bivector_from_so_matrix(&skew, Signature::lorentzian(n))
        .map_err(|e| HolonomyError::NotConformal(e.to_string()))?;
    let b = scalar
        .as_rational()
        .ok_or_else(|| HolonomyError::NotConformal(format!("scalar part {} is not rational", scalar)))?;
    Ok(Generator::General { b, bivector })
}

/// Span of `∇^k R(∂_a, ∂_b; ∂_{e_1}, …, ∂_{e_k})` at the basepoint for
/// `k ≤ max_order`.
pub fn infinitesimal_holonomy(geo: &Geometry, max_order: usize) -> Result<HolonomySpan, HolonomyError> {
    let s = &geo.structure;
    let n = s.n();
    let dim = s.dim();
    let frame = witt_frame(geo)?;
    let gi = GammaIndex::new(&geo.gamma);
    let full = dim * (dim - 1) / 2 + 1;

    let mut tensor = Sparse::new();
    for d in 0..dim {
        for c in 0..dim {
            for a in 0..dim {
                for b in a + 1..dim {
                    let r = geo.curvature.get(d, c, a, b);
                    if !r.is_zero() {
                        tensor.insert(vec![d as u8, c as u8, a as u8, b as u8], r.clone());
                    }
                }
            }
        }
    }

    let mut span = Span::new(dim * dim);
    let mut basis = Vec::new();
    let mut rank_by_order = Vec::new();
    let mut spans = Vec::new();
    let mut stabilized = false;
    let mut quiet = 0;
    for order in 0..=max_order {
        if order > 0 {
            tensor = covariant_derivative(&tensor, &gi, dim);
        }
        let mut mats: BTreeMap<Vec<u8>, Matrix<Rational>> = BTreeMap::new();
        for (key, val) in &tensor {
            let x = s.at_basepoint(val, "curvature")?;
            if x.is_zero() {
                continue;
            }
            let m = mats.entry(key[2..].to_vec()).or_insert_with(|| Matrix::zeros(dim, dim));
            m.set(key[0] as usize, key[1] as usize, x);
        }
        let before = span.rank();
        for m in mats.values() {
            let fm = frame.inverse.mul(m).mul(&frame.columns);
            if span.insert(flatten(&fm)) {
                basis.push(fm);
            }
        }
        rank_by_order.push(span.rank());
        spans.push(span.clone());
        quiet = if span.rank() == before && order > 0 {
            quiet + 1
        } else {
            0
        };
        if tensor.is_empty() || quiet >= 2 || span.rank() == full {
            stabilized = true;
            break;
        }
    }
    Ok(HolonomySpan {
        n,
        frame,
        basis,
        rank_by_order,
        stabilized,
        spans,
    })
}

/// Weighted parallel spinors of the germ at the basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorDimension {
    pub dim: usize,
    pub basis: Vec<Vec<ExactScalar>>,
    /// Exact for real-analytic data with a stabilized span; otherwise an upper bound.
    pub exact: bool,
    pub caveat: &'static str,
}

pub fn parallel_spinor_dimension(span: &HolonomySpan, w: &Rational) -> Result<SpinorDimension, HolonomyError> {
    let rep = CliffordRep::new(Signature::lorentzian(span.n)).map_err(SpinorError::from)?;
    let mut ops = Vec::with_capacity(span.basis.len());
    for g in span.generators()? {
        ops.push(match &g {
            Generator::Parabolic(c) => weighted_spinor_op(&rep, w, c)?,
            general => generator_op(&rep, w, general),
        });
    }
    let basis = annihilator(&ops, rep.spinor_dim());
    let exact = span.stabilized;
    Ok(SpinorDimension {
        dim: basis.len(),
        basis,
        exact,
        caveat: if exact {
            "dimension of weighted parallel spinors on a neighbourhood of the basepoint for real-analytic data; an upper bound otherwise"
        } else {
            "span not stabilized: upper bound only"
        },
    })
}

/// Chart components of a vector given by its Witt coefficients
/// `(α, β_1, …, β_n, γ)` with `V = α p + Σ β_i X_i + γ q`.
pub fn witt_to_coordinates(frame: &WittFrame, coeffs: &[ExactScalar]) -> Vec<ExactScalar> {
    Matrix::from_rational(&frame.columns).apply(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Riemannian, WeylFamily};
    use crate::scalar::int;
    use crate::weyl::structure::{default_basepoint, KundtStructure};
    use weylspin_symdiff::{parse, Chart};

    fn p(n: usize, s: &str) -> DiffExpr {
        parse(&Chart::new(n), s).unwrap()
    }

    #[test]
    fn flat_span_is_zero() {
        let s = KundtStructure::flat_walker(2, DiffExpr::zero(), DiffExpr::zero(), int(0)).unwrap();
        let span = infinitesimal_holonomy(&Geometry::new(&s).unwrap(), 4).unwrap();
        assert_eq!(span.rank(), 0);
        assert!(span.stabilized);
        assert_eq!(parallel_spinor_dimension(&span, &int(0)).unwrap().dim, 4);
    }

    #[test]
    fn frame_is_witt() {
        let n = 2;
        let s = KundtStructure::new(
            n,
            vec![vec![p(n, "4"), p(n, "0")], vec![p(n, "0"), p(n, "9")]],
            vec![p(n, "x1"), p(n, "u")],
            p(n, "v + x2"),
            vec![DiffExpr::zero(); 4],
            int(0),
            default_basepoint(n),
        )
        .unwrap();
        let geo = Geometry::new(&s).unwrap();
        let f = witt_frame(&geo).unwrap();
        let mut g = Matrix::<Rational>::zeros(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                g.set(a, b, s.at_basepoint(&geo.g[a][b], "g").unwrap());
            }
        }
        let gram = f.columns.transpose().mul(&g).mul(&f.columns);
        let mut expected = Matrix::<Rational>::zeros(4, 4);
        expected.set(0, 3, int(1));
        expected.set(3, 0, int(1));
        expected.set(1, 1, int(1));
        expected.set(2, 2, int(1));
        assert_eq!(gram, expected);
    }

    #[test]
    fn general_path_matches_parabolic_bivector() {
        let mut a = Matrix::zeros(2, 2);
        a.set(0, 1, int(3));
        a.set(1, 0, int(-3));
        let c = CoElement::new(int(2), rat(1, 2), a, vec![int(1), int(-1)]).unwrap();
        let g = general_generator(&c.display_matrix()).unwrap();
        assert!(matches!(g, Generator::General { .. }));
        assert_eq!(g.bivector(), c.bivector());
        assert_eq!(g.b(), &c.b);
    }

    #[test]
    fn n3_instance_lies_in_weighted_trivial() {
        let n = 3;
        let s = KundtStructure::flat_walker(n, p(n, "3*x1*v - x1^4/4"), p(n, "x1"), int(1)).unwrap();
        let span = infinitesimal_holonomy(&Geometry::new(&s).unwrap(), DEFAULT_MAX_ORDER).unwrap();
        let fam = WeylFamily::Weighted {
            h: Riemannian::Trivial(n),
            w: int(1),
        };
        assert!(span.contained_in(&fam.generators().unwrap()).unwrap());
        for k in 1..span.spans.len() {
            assert!(span.spans[k].contains_span(&span.spans[k - 1]));
        }
        assert_eq!(parallel_spinor_dimension(&span, &int(1)).unwrap().dim, 2);
    }

    #[test]
    fn negative_control_has_no_spinors() {
        let s = KundtStructure::flat_walker(1, p(1, "v^3"), p(1, "1"), int(0)).unwrap();
        let span = infinitesimal_holonomy(&Geometry::new(&s).unwrap(), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(parallel_spinor_dimension(&span, &int(0)).unwrap().dim, 0);
    }
}

//! Christoffel symbols `Γ = Γ^{LC} + K`, the curvature tensor, the Ricci
//! tensor and the identities that only involve the connection.

use weylspin_symdiff::{Chart, DiffExpr};

use crate::scalar::{int, Rational};
use crate::weyl::structure::{KundtStructure, StructureError};

/// `Γ^c_{ab}`, stored densely with index `(c, a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelTable {
    dim: usize,
    data: Vec<DiffExpr>,
}

impl ChristoffelTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> &DiffExpr {
        &self.data[(c * self.dim + a) * self.dim + b]
    }

    pub fn is_torsion_free(&self) -> bool {
        let d = self.dim;
        (0..d).all(|c| (0..d).all(|a| (a + 1..d).all(|b| self.get(c, a, b) == self.get(c, b, a))))
    }
}

/// `R^d_{cab}` with `R(∂_a, ∂_b)∂_c = R^d_{cab} ∂_d`, index `(d, c, a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    dim: usize,
    data: Vec<DiffExpr>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, d: usize, c: usize, a: usize, b: usize) -> usize {
        ((d * self.dim + c) * self.dim + a) * self.dim + b
    }

    pub fn get(&self, d: usize, c: usize, a: usize, b: usize) -> &DiffExpr {
        &self.data[self.idx(d, c, a, b)]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|d| (0..n).all(|c| (0..n).all(|a| (0..n).all(|b| *self.get(d, c, a, b) == -self.get(d, c, b, a)))))
    }

    /// Nonzero cyclic sums `R^d_{cab} + R^d_{abc} + R^d_{bca}`.
    pub fn bianchi_residuals(&self) -> Vec<((usize, usize, usize, usize), DiffExpr)> {
        let n = self.dim;
        let mut out = Vec::new();
        for d in 0..n {
            for c in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let s = &(self.get(d, c, a, b) + self.get(d, a, b, c)) + self.get(d, b, c, a);
                        if !s.is_zero() {
                            out.push(((d, c, a, b), s));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(DiffExpr::is_zero)
    }
}

/// Metric data and connection of a structure, computed once.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub structure: KundtStructure,
    pub g: Vec<Vec<DiffExpr>>,
    pub g_inv: Vec<Vec<DiffExpr>>,
    /// `ω^c = g^{cd} ω_d`.
    pub omega_up: Vec<DiffExpr>,
    pub gamma: ChristoffelTable,
    pub curvature: CurvatureTensor,
}

impl Geometry {
    pub fn new(s: &KundtStructure) -> Result<Self, StructureError> {
        let g = s.metric();
        let g_inv = s.inverse_metric()?;
        let dim = s.dim();
        let omega = s.omega();
        let omega_up: Vec<DiffExpr> = (0..dim).map(|c| contract(&g_inv[c], omega)).collect();
        let gamma = christoffels(&g, &g_inv, omega, &omega_up);
        let curvature = curvature_of(&gamma);
        Ok(Geometry {
            structure: s.clone(),
            g,
            g_inv,
            omega_up,
            gamma,
            curvature,
        })
    }

    pub fn chart(&self) -> Chart {
        self.structure.chart()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    /// `Ric_{cb} = Σ_a R^a_{cba}`.
    pub fn ricci(&self, c: usize, b: usize) -> DiffExpr {
        let mut acc = DiffExpr::zero();
        for a in 0..self.dim() {
            let r = self.curvature.get(a, c, b, a);
            if !r.is_zero() {
                acc = &acc + r;
            }
        }
        acc
    }

    /// Symmetric part of the Ricci tensor.
    pub fn ricci_symmetric(&self) -> Vec<Vec<DiffExpr>> {
        let dim = self.dim();
        let ric: Vec<Vec<DiffExpr>> = (0..dim).map(|c| (0..dim).map(|b| self.ricci(c, b)).collect()).collect();
        let half = Rational::new(1.into(), 2.into());
        (0..dim)
            .map(|a| (0..dim).map(|b| (&ric[a][b] + &ric[b][a]).scale(&half)).collect())
            .collect()
    }

    /// Name of a coordinate-frame component such as `Γ^x1_{u v}`.
    pub fn component_name(&self, symbol: &str, up: &[usize], down: &[usize]) -> String {
        let c = self.chart();
        let up: Vec<String> = up.iter().map(|&k| c.name(k)).collect();
        let down: Vec<String> = down.iter().map(|&k| c.name(k)).collect();
        format!("{}^{}_{{{}}}", symbol, up.join(" "), down.join(" "))
    }
}

fn contract(a: &[DiffExpr], b: &[DiffExpr]) -> DiffExpr {
    let mut acc = DiffExpr::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `Γ^c_{ab} = ½ g^{cd}(∂_a g_{db} + ∂_b g_{da} - ∂_d g_{ab}) + δ^c_b ω_a + δ^c_a ω_b - g_{ab} ω^c`.
fn christoffels(
    g: &[Vec<DiffExpr>],
    gi: &[Vec<DiffExpr>],
    omega: &[DiffExpr],
    omega_up: &[DiffExpr],
) -> ChristoffelTable {
    let dim = g.len();
    // dg[k][a][b] = ∂_k g_ab
    let dg: Vec<Vec<Vec<DiffExpr>>> = (0..dim)
        .map(|k| (0..dim).map(|a| (0..dim).map(|b| g[a][b].diff(k)).collect()).collect())
        .collect();
    let half = Rational::new(1.into(), 2.into());
    let mut data = vec![DiffExpr::zero(); dim * dim * dim];
    for a in 0..dim {
        for b in a..dim {
            // Γ_{d,ab} with the index lowered.
            let lower: Vec<DiffExpr> = (0..dim)
                .map(|d| (&(&dg[a][d][b] + &dg[b][d][a]) - &dg[d][a][b]).scale(&half))
                .collect();
            for c in 0..dim {
                let mut e = contract(&gi[c], &lower);
                if c == b && !omega[a].is_zero() {
                    e = &e + &omega[a];
                }
                if c == a && !omega[b].is_zero() {
                    e = &e + &omega[b];
                }
                if !g[a][b].is_zero() && !omega_up[c].is_zero() {
                    e = &e - &(&g[a][b] * &omega_up[c]);
                }
                data[(c * dim + a) * dim + b] = e.clone();
                data[(c * dim + b) * dim + a] = e;
            }
        }
    }
    ChristoffelTable { dim, data }
}

/// `R^d_{cab} = ∂_a Γ^d_{bc} - ∂_b Γ^d_{ac} + Γ^d_{ae} Γ^e_{bc} - Γ^d_{be} Γ^e_{ac}`.
fn curvature_of(gamma: &ChristoffelTable) -> CurvatureTensor {
    let dim = gamma.dim();
    let mut out = CurvatureTensor {
        dim,
        data: vec![DiffExpr::zero(); dim.pow(4)],
    };
    for d in 0..dim {
        for c in 0..dim {
            for a in 0..dim {
                for b in a + 1..dim {
                    let mut e = &gamma.get(d, b, c).diff(a) - &gamma.get(d, a, c).diff(b);
                    for k in 0..dim {
                        let (x, y) = (gamma.get(d, a, k), gamma.get(k, b, c));
                        if !x.is_zero() && !y.is_zero() {
                            e = &e + &(x * y);
                        }
                        let (x, y) = (gamma.get(d, b, k), gamma.get(k, a, c));
                        if !x.is_zero() && !y.is_zero() {
                            e = &e - &(x * y);
                        }
                    }
                    let i = out.idx(d, c, b, a);
                    out.data[i] = -&e;
                    let i = out.idx(d, c, a, b);
                    out.data[i] = e;
                }
            }
        }
    }
    out
}

pub fn weyl_christoffels(s: &KundtStructure) -> Result<ChristoffelTable, StructureError> {
    Ok(Geometry::new(s)?.gamma)
}

pub fn curvature(s: &KundtStructure) -> Result<CurvatureTensor, StructureError> {
    Ok(Geometry::new(s)?.curvature)
}

/// A named nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: DiffExpr,
}

/// Which `ε` satisfies `∇g = ε ω ⊗ g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Epsilon {
    Plus2,
    Minus2,
    /// `ω = 0`: both signs hold vacuously.
    Both,
    Neither,
}

impl Epsilon {
    pub fn value(&self) -> Option<i32> {
        match self {
            Epsilon::Plus2 => Some(2),
            Epsilon::Minus2 => Some(-2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilityReport {
    pub epsilon: Epsilon,
    /// `2ω(∂_v) + Γ^v_{vv}`.
    pub eq_gamma_vvv: DiffExpr,
    /// Nonzero `∂_v h_ij - 2ω(∂_v) h_ij`.
    pub eq_dv_h: Vec<Residual>,
    pub omega_v_vanishes: bool,
}

/// Measure `ε` in `∇g = ε ω ⊗ g` from the Christoffel table.
pub fn verify_compatibility(geo: &Geometry) -> CompatibilityReport {
    let s = &geo.structure;
    let dim = geo.dim();
    let omega = s.omega();
    let mut fits = [true, true];
    for k in 0..dim {
        for a in 0..dim {
            for b in a..dim {
                // (∇_k g)_{ab} = ∂_k g_ab - Γ^d_{ka} g_db - Γ^d_{kb} g_ad
                let mut e = geo.g[a][b].diff(k);
                for d in 0..dim {
                    if !geo.g[d][b].is_zero() {
                        e = &e - &(geo.gamma.get(d, k, a) * &geo.g[d][b]);
                    }
                    if !geo.g[a][d].is_zero() {
                        e = &e - &(geo.gamma.get(d, k, b) * &geo.g[a][d]);
                    }
                }
                let og = &omega[k] * &geo.g[a][b];
                for (slot, eps) in [2, -2].into_iter().enumerate() {
                    if fits[slot] && !(&e - &og.scale(&int(eps))).is_zero() {
                        fits[slot] = false;
                    }
                }
            }
        }
    }
    let epsilon = match fits {
        [true, true] => Epsilon::Both,
        [true, false] => Epsilon::Plus2,
        [false, true] => Epsilon::Minus2,
        [false, false] => Epsilon::Neither,
    };
    let v = s.chart().v();
    let eq_gamma_vvv = &omega[v].scale(&int(2)) + geo.gamma.get(v, v, v);
    let mut eq_dv_h = Vec::new();
    for i in 0..s.n() {
        for j in i..s.n() {
            let r = &s.h()[i][j].diff(v) - &(&omega[v] * &s.h()[i][j]).scale(&int(2));
            if !r.is_zero() {
                eq_dv_h.push(Residual {
                    name: format!("d_v h_{}{} - 2 omega(d_v) h_{}{}", i + 1, j + 1, i + 1, j + 1),
                    value: r,
                });
            }
        }
    }
    CompatibilityReport {
        epsilon,
        eq_gamma_vvv,
        eq_dv_h,
        omega_v_vanishes: omega[v].is_zero(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceReport {
    /// Coordinate field tested, e.g. `v` for `∂_v`.
    pub field: String,
    pub holds: bool,
    /// Components `Γ^c_{ak}`, `c ≠ k`, that must vanish but do not.
    pub failing: Vec<Residual>,
    /// `ρ_a = Γ^k_{ak}` in `∇∂_k = ρ ⊗ ∂_k`.
    pub rho: Vec<DiffExpr>,
}

/// Whether `∇∂_k = ρ ⊗ ∂_k` for the coordinate field `∂_k`.
pub fn check_recurrent(geo: &Geometry, k: usize) -> RecurrenceReport {
    let dim = geo.dim();
    let mut failing = Vec::new();
    for a in 0..dim {
        for c in 0..dim {
            if c != k && !geo.gamma.get(c, a, k).is_zero() {
                failing.push(Residual {
                    name: geo.component_name("Γ", &[c], &[a, k]),
                    value: geo.gamma.get(c, a, k).clone(),
                });
            }
        }
    }
    RecurrenceReport {
        field: geo.chart().name(k),
        holds: failing.is_empty(),
        failing,
        rho: (0..dim).map(|a| geo.gamma.get(k, a, k).clone()).collect(),
    }
}

/// Nonzero `R^v_{vvi}` and `R^v_{vij}`.
pub fn condition_r_residuals(geo: &Geometry) -> Vec<Residual> {
    let n = geo.structure.n();
    let v = geo.chart().v();
    let mut out = Vec::new();
    for i in 1..=n {
        let r = geo.curvature.get(v, v, v, i);
        if !r.is_zero() {
            out.push(Residual {
                name: geo.component_name("R", &[v], &[v, v, i]),
                value: r.clone(),
            });
        }
        for j in i + 1..=n {
            let r = geo.curvature.get(v, v, i, j);
            if !r.is_zero() {
                out.push(Residual {
                    name: geo.component_name("R", &[v], &[v, i, j]),
                    value: r.clone(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceAndConditionR {
    pub recurrence: RecurrenceReport,
    pub condition_r: Vec<Residual>,
}

impl RecurrenceAndConditionR {
    pub fn holds(&self) -> bool {
        self.recurrence.holds && self.condition_r.is_empty()
    }
}

pub fn check_recurrence_and_condition_r(geo: &Geometry) -> RecurrenceAndConditionR {
    RecurrenceAndConditionR {
        recurrence: check_recurrent(geo, geo.chart().v()),
        condition_r: condition_r_residuals(geo),
    }
}

/// Result of `g(R(X,Y)p, q) g(V,V) = c · g(R(X,Y)V, V)` for `V` in the
/// transverse distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionReport {
    /// With `c = (2+w)/2`, the factor matching the algebra `ℝ(2, w, 0, 0)`.
    pub holds: bool,
    pub residuals: Vec<Residual>,
    /// With the unhalved factor `c = 2+w`.
    pub full_factor_holds: bool,
    pub full_factor_residuals: Vec<Residual>,
}

pub fn check_projection_condition(geo: &Geometry) -> Result<ProjectionReport, StructureError> {
    let s = &geo.structure;
    s.require_walker()?;
    let two = int(2);
    let corrected = (int(2) + s.w()) / &two;
    let full = int(2) + s.w();
    let (residuals, full_factor_residuals) = (projection_residuals(geo, &corrected), projection_residuals(geo, &full));
    Ok(ProjectionReport {
        holds: residuals.is_empty(),
        residuals,
        full_factor_holds: full_factor_residuals.is_empty(),
        full_factor_residuals,
    })
}

fn projection_residuals(geo: &Geometry, c: &Rational) -> Vec<Residual> {
    let s = &geo.structure;
    let n = s.n();
    let dim = geo.dim();
    let (v, u) = (s.chart().v(), s.chart().u());
    let half = Rational::new(1.into(), 2.into());
    let r = &geo.curvature;
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            // g(R p, q) with q = ∂_u - ½H ∂_v: g(∂_v, q) = 1, g(∂_u, q) = ½H.
            let rpq = r.get(v, v, a, b) + &(r.get(u, v, a, b) * s.big_h()).scale(&half);
            for j in 1..=n {
                for k in j..=n {
                    // Symmetrized g(R ∂_j, ∂_k).
                    let mut sym = DiffExpr::zero();
                    for l in 1..=n {
                        sym = &sym + &(r.get(l, j, a, b) * &geo.g[l][k]);
                        sym = &sym + &(r.get(l, k, a, b) * &geo.g[l][j]);
                    }
                    let res = &(&rpq * &geo.g[j][k]) - &sym.scale(&(c * &half));
                    if !res.is_zero() {
                        out.push(Residual {
                            name: format!(
                                "X,Y = d_{},d_{}; V = d_{},d_{}",
                                s.chart().name(a),
                                s.chart().name(b),
                                s.chart().name(j),
                                s.chart().name(k)
                            ),
                            value: res,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Connection on `ℓ^⊥/ℓ` in the frame `∂_1, …, ∂_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientConnection {
    /// `Γ^i_{aj}` indexed `[a][i-1][j-1]`.
    pub gamma: Vec<Vec<Vec<DiffExpr>>>,
    /// The same for the Levi-Civita connection.
    pub gamma_bar: Vec<Vec<Vec<DiffExpr>>>,
    /// `∂_j` stays in `ℓ^⊥`: `Γ^u_{aj} = 0`.
    pub preserves_perp: bool,
    /// `Γ^i_{vj} = Γ̄^i_{vj} = 0`.
    pub v_part_vanishes: bool,
    /// `Γ^i_{kj} = Γ̄^i_{kj}`.
    pub transverse_agrees: bool,
    /// `Γ^i_{uj} - Γ̄^i_{uj} = f δ^i_j`.
    pub u_part_shifted: bool,
}

impl QuotientConnection {
    pub fn holds(&self) -> bool {
        self.preserves_perp && self.v_part_vanishes && self.transverse_agrees && self.u_part_shifted
    }
}

pub fn quotient_connection(geo: &Geometry) -> Result<QuotientConnection, StructureError> {
    let s = &geo.structure;
    let f = s.require_walker()?.clone();
    let lc = Geometry::new(&s.levi_civita())?;
    let n = s.n();
    let dim = geo.dim();
    let (v, u) = (s.chart().v(), s.chart().u());
    let table = |g: &Geometry| -> Vec<Vec<Vec<DiffExpr>>> {
        (0..dim)
            .map(|a| {
                (1..=n)
                    .map(|i| (1..=n).map(|j| g.gamma.get(i, a, j).clone()).collect())
                    .collect()
            })
            .collect()
    };
    let gamma = table(geo);
    let gamma_bar = table(&lc);
    let preserves_perp = (0..dim).all(|a| (1..=n).all(|j| geo.gamma.get(u, a, j).is_zero()));
    let v_part_vanishes = gamma[v].iter().chain(&gamma_bar[v]).flatten().all(DiffExpr::is_zero);
    let transverse_agrees = (1..=n).all(|k| gamma[k] == gamma_bar[k]);
    let u_part_shifted = (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if i == j { f.clone() } else { DiffExpr::zero() };
            &gamma[u][i][j] - &gamma_bar[u][i][j] == expected
        })
    });
    Ok(QuotientConnection {
        gamma,
        gamma_bar,
        preserves_perp,
        v_part_vanishes,
        transverse_agrees,
        u_part_shifted,
    })
}

/// Nonzero components `(dω)_{ab} = ∂_a ω_b - ∂_b ω_a`, `a < b`.
pub fn d_omega(s: &KundtStructure) -> Vec<Residual> {
    let dim = s.dim();
    let c = s.chart();
    let omega = s.omega();
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let e = &omega[b].diff(a) - &omega[a].diff(b);
            if !e.is_zero() {
                out.push(Residual {
                    name: format!("d{}^d{}", c.name(a), c.name(b)),
                    value: e,
                });
            }
        }
    }
    out
}

pub fn is_closed(s: &KundtStructure) -> bool {
    d_omega(s).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::structure::{default_basepoint, identity};
    use weylspin_symdiff::parse;

    fn p(n: usize, s: &str) -> DiffExpr {
        parse(&Chart::new(n), s).unwrap()
    }

    fn walker(n: usize, h: &str, f: &str, w: i64) -> Geometry {
        let s = KundtStructure::flat_walker(n, p(n, h), p(n, f), int(w)).unwrap();
        Geometry::new(&s).unwrap()
    }

    #[test]
    fn flat_has_no_curvature() {
        let geo = walker(2, "0", "0", 0);
        assert!(geo.gamma.get(0, 0, 0).is_zero());
        assert!(geo.curvature.is_zero());
        assert_eq!(verify_compatibility(&geo).epsilon, Epsilon::Both);
    }

    #[test]
    fn k_tensor_gives_minus_two() {
        let geo = walker(2, "v^2*x1 + u*x2", "x1*v + u", 0);
        assert_eq!(verify_compatibility(&geo).epsilon, Epsilon::Minus2);
        assert!(geo.gamma.is_torsion_free());
        assert!(geo.curvature.is_antisymmetric());
        assert!(geo.curvature.bianchi_residuals().is_empty());
    }

    #[test]
    fn walker_curvature_components() {
        let n = 2;
        let (h, f) = ("v^3*x1 + x2^2*v^2 + u", "x1*v^2 + x2*u");
        let geo = walker(n, h, f, 0);
        let (v, u) = (0, n + 1);
        let hh = p(n, h);
        let ff = p(n, f);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(*geo.curvature.get(v, v, v, u), hh.diff(v).diff(v).scale(&half));
        assert_eq!(*geo.curvature.get(v, v, 1, u), hh.diff(v).diff(1).scale(&half));
        assert_eq!(*geo.curvature.get(1, 1, v, u), ff.diff(v));
        assert_eq!(*geo.curvature.get(2, 2, 1, u), ff.diff(1));
    }

    #[test]
    fn walker_is_recurrent() {
        let geo = walker(2, "v^2*x1", "x1*v", 0);
        let rep = check_recurrence_and_condition_r(&geo);
        assert!(rep.holds(), "{:?}", rep);
    }

    #[test]
    fn v_dependent_a_breaks_recurrence() {
        let n = 1;
        let s = KundtStructure::new(
            n,
            identity(n),
            vec![p(n, "v*x1")],
            DiffExpr::zero(),
            vec![DiffExpr::zero(); 3],
            int(0),
            default_basepoint(n),
        )
        .unwrap();
        let geo = Geometry::new(&s).unwrap();
        let rep = check_recurrent(&geo, 0);
        assert!(!rep.holds);
        assert!(rep.failing.iter().any(|r| r.name == "Γ^x1_{u v}"), "{:?}", rep.failing);
    }

    #[test]
    fn projection_condition() {
        // (2 + w) f = ∂_v H.
        let good = walker(2, "3*v^2*x1 + x2", "2*v*x1", 1);
        let rep = check_projection_condition(&good).unwrap();
        assert!(rep.holds, "{:?}", rep.residuals);
        assert!(!rep.full_factor_holds);
        let bad = walker(1, "v^3", "1", 0);
        assert!(!check_projection_condition(&bad).unwrap().holds);
        let boost = walker(2, "x1^2 - x2^2", "x1*u", -2);
        assert!(check_projection_condition(&boost).unwrap().holds);
    }

    #[test]
    fn quotient_relations() {
        let n = 2;
        let s = KundtStructure::walker(
            n,
            vec![vec![p(n, "1+u^2"), DiffExpr::zero()], vec![DiffExpr::zero(), p(n, "1")]],
            p(n, "v*x1^2"),
            p(n, "x1 + v"),
            int(0),
            default_basepoint(n),
        )
        .unwrap();
        let q = quotient_connection(&Geometry::new(&s).unwrap()).unwrap();
        assert!(q.holds(), "{:?}", q);
    }

    #[test]
    fn closedness() {
        let n = 2;
        let s = KundtStructure::flat_walker(n, DiffExpr::zero(), p(n, "u^2"), int(0)).unwrap();
        assert!(is_closed(&s));
        let s = KundtStructure::flat_walker(n, DiffExpr::zero(), p(n, "x1"), int(0)).unwrap();
        assert_eq!(d_omega(&s).len(), 1);
    }
}

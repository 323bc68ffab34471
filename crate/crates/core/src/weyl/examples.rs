//! Constructors for the structure families with weighted parallel spinors.

use weylspin_symdiff::{Chart, DiffExpr};

use crate::scalar::{int, rat, Rational};
use crate::weyl::einstein::{cor72_residual, laplacian, TransverseData};
use crate::weyl::structure::{default_basepoint, identity, KundtStructure, StructureError};

#[derive(Clone, Debug, PartialEq)]
pub enum ExampleKind {
    /// `h = h' + e^{-2F}(dx^n)²`, `ω = ∂_u F du`, `w = -2`, with `F = F(x^n, u)`,
    /// `h'` and `H` free of `v` and `x^n`. `h'` defaults to `δ`, `H` to `0`.
    Thm62Product {
        n: usize,
        potential: DiffExpr,
        h_block: Option<Vec<Vec<DiffExpr>>>,
        big_h: Option<DiffExpr>,
    },
    /// `f = ∂_v H / (2 + w)`, `w ≠ -2`; `h` defaults to `δ`.
    GenericSpinorFamily {
        n: usize,
        h: Option<Vec<Vec<DiffExpr>>>,
        big_h: DiffExpr,
        w: Rational,
    },
    /// `h = δ`, `H = n f v + H₀`, `w = n - 2`, with `∂_v f = ∂_v H₀ = 0`, `Δf = 0`
    /// and the zero-scalar-curvature equation.
    Cor72Flat { n: usize, f: DiffExpr, h0: DiffExpr },
    /// `h = δ`, `F` harmonic and non-constant on `ℝ^n`, `f = F` (`n = 2`) or
    /// `f = -2F/((n-2)u)`, `H = n f v + H₀` with `H₀` solving the
    /// zero-scalar-curvature equation. Basepoint at `u = 1`.
    PaperExample71 { n: usize, harmonic: DiffExpr },
    /// `n = 2`, `h = diag(1 + u², 1)`, `f = 0`, `H = -(x2)²/(1 + u²)²`, `w = 0`.
    ClosedWeylDegenerate,
}

impl ExampleKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleKind::Thm62Product { .. } => "thm62_product",
            ExampleKind::GenericSpinorFamily { .. } => "generic_spinor_family",
            ExampleKind::Cor72Flat { .. } => "cor72_flat",
            ExampleKind::PaperExample71 { .. } => "paper_example_71",
            ExampleKind::ClosedWeylDegenerate => "closed_weyl_degenerate",
        }
    }
}

fn reject(kind: &ExampleKind, what: &str, chart: Chart, residual: &DiffExpr) -> StructureError {
    StructureError::Example(format!("{}: {} = {}", kind.name(), what, chart.render(residual)))
}

fn free_of(e: &DiffExpr, vars: &[usize]) -> bool {
    vars.iter().all(|&k| !e.depends_on(k))
}

pub fn make_example(kind: &ExampleKind) -> Result<KundtStructure, StructureError> {
    match kind {
        ExampleKind::Thm62Product {
            n,
            potential,
            h_block,
            big_h,
        } => {
            let n = *n;
            if n < 1 {
                return Err(StructureError::Example("thm62_product needs n >= 1".into()));
            }
            let chart = Chart::new(n);
            let (v, xn, u) = (chart.v(), n, chart.u());
            let others: Vec<usize> = (0..chart.dim()).filter(|&k| k != xn && k != u).collect();
            if !free_of(potential, &others) {
                return Err(StructureError::Example(format!(
                    "thm62_product: F = {} must depend on x{} and u only",
                    chart.render(potential),
                    n
                )));
            }
            let block = h_block.clone().unwrap_or_else(|| identity(n - 1));
            let big_h = big_h.clone().unwrap_or_else(DiffExpr::zero);
            if !free_of(&big_h, &[v, xn]) || block.iter().flatten().any(|e| !free_of(e, &[v, xn])) {
                return Err(StructureError::Example(format!(
                    "thm62_product: H and h' must not depend on v or x{}",
                    n
                )));
            }
            let enn = DiffExpr::exp(&potential.scale(&int(-2)))
                .map_err(|e| StructureError::Example(format!("thm62_product: {}", e)))?;
            let mut h = vec![vec![DiffExpr::zero(); n]; n];
            for i in 0..n - 1 {
                if block.len() != n - 1 || block[i].len() != n - 1 {
                    return Err(StructureError::Dimension(format!("h' must be {}x{}", n - 1, n - 1)));
                }
                for j in 0..n - 1 {
                    h[i][j] = block[i][j].clone();
                }
            }
            h[n - 1][n - 1] = enn;
            KundtStructure::walker(n, h, big_h, potential.diff(u), int(-2), default_basepoint(n))
        }
        ExampleKind::GenericSpinorFamily { n, h, big_h, w } => {
            let n = *n;
            if *w == int(-2) {
                return Err(StructureError::Example("generic_spinor_family needs w != -2".into()));
            }
            let f = big_h.diff(Chart::new(n).v()).scale(&(int(1) / (int(2) + w)));
            let h = h.clone().unwrap_or_else(|| identity(n));
            KundtStructure::walker(n, h, big_h.clone(), f, w.clone(), default_basepoint(n))
        }
        ExampleKind::Cor72Flat { n, f, h0 } => {
            let n = *n;
            let chart = Chart::new(n);
            let v = chart.v();
            let big_h = &(f * &DiffExpr::var(v)).scale(&int(n as i64)) + h0;
            let s = KundtStructure::walker(
                n,
                identity(n),
                big_h,
                f.clone(),
                int(n as i64 - 2),
                default_basepoint(n),
            )?;
            for (what, e) in [("d_v f", f.diff(v)), ("d_v H0", h0.diff(v))] {
                if !e.is_zero() {
                    return Err(reject(kind, what, chart, &e));
                }
            }
            let td = TransverseData::new(&s)?;
            let lap = laplacian(&s, &td.h_inv, f);
            if !lap.is_zero() {
                return Err(reject(kind, "Δf", chart, &lap));
            }
            let r = cor72_residual(&s, f, h0)?;
            if !r.is_zero() {
                return Err(reject(kind, "zero-scalar-curvature residual", chart, &r));
            }
            Ok(s)
        }
        ExampleKind::PaperExample71 { n, harmonic } => {
            let n = *n;
            let chart = Chart::new(n);
            let (v, u) = (chart.v(), chart.u());
            if !free_of(harmonic, &[v, u]) || harmonic.as_constant().is_some() {
                return Err(StructureError::Example(
                    "paper_example_71: F must be a non-constant function of x only".into(),
                ));
            }
            let lap: DiffExpr = (1..=n).fold(DiffExpr::zero(), |acc, k| &acc + &harmonic.diff(k).diff(k));
            if !lap.is_zero() {
                return Err(reject(kind, "ΔF", chart, &lap));
            }
            let f = if n == 2 {
                harmonic.clone()
            } else {
                let uu = DiffExpr::var(u);
                (harmonic * &DiffExpr::from_int(-2))
                    .checked_div(&uu.scale(&int(n as i64 - 2)))
                    .expect("u is nonzero")
            };
            // ΔH₀ = -(2n(n-2)f² + 4nḟ)/2 for flat h.
            let nn = n as i64;
            let rho = (&(&f * &f).scale(&int(2 * nn * (nn - 2))) + &f.diff(u).scale(&int(4 * nn))).scale(&rat(-1, 2));
            let h0 = solve_flat_poisson(n, &rho)
                .ok_or_else(|| reject(kind, "right-hand side without a polynomial potential", chart, &rho))?;
            let mut bp = default_basepoint(n);
            bp[u] = int(1);
            let big_h = &(&f * &DiffExpr::var(v)).scale(&int(nn)) + &h0;
            let s = KundtStructure::walker(n, identity(n), big_h, f.clone(), int(nn - 2), bp)?;
            let r = cor72_residual(&s, &f, &h0)?;
            if !r.is_zero() {
                return Err(reject(kind, "zero-scalar-curvature residual", chart, &r));
            }
            Ok(s)
        }
        ExampleKind::ClosedWeylDegenerate => {
            let n = 2;
            let chart = Chart::new(n);
            let one_u2 = &DiffExpr::one() + &DiffExpr::var(chart.u()).pow(2).expect("power");
            let x2 = DiffExpr::var(chart.x(2));
            let big_h = -(&(&x2 * &x2) / &(&one_u2 * &one_u2));
            let h = vec![vec![one_u2, DiffExpr::zero()], vec![DiffExpr::zero(), DiffExpr::one()]];
            KundtStructure::walker(n, h, big_h, DiffExpr::zero(), int(0), default_basepoint(n))
        }
    }
}

/// `H` with `Σ ∂_k² H = rho`, built from repeated `x1`-antiderivatives.
/// Returns `None` when an antiderivative does not exist in closed form or
/// the iteration does not terminate.
pub fn solve_flat_poisson(n: usize, rho: &DiffExpr) -> Option<DiffExpr> {
    let mut out = DiffExpr::zero();
    let mut residual = rho.clone();
    for _ in 0..64 {
        if residual.is_zero() {
            return Some(out);
        }
        let t = residual.antiderivative(1)?.antiderivative(1)?;
        out = &out + &t;
        residual = (2..=n).fold(DiffExpr::zero(), |acc, k| &acc - &t.diff(k).diff(k));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::connection::{is_closed, Geometry};
    use crate::weyl::einstein::{check_theorem71, einstein_weyl_check, Classification};
    use weylspin_symdiff::parse;

    fn p(n: usize, s: &str) -> DiffExpr {
        parse(&Chart::new(n), s).unwrap()
    }

    #[test]
    fn cor72_instance_accepted() {
        let s = make_example(&ExampleKind::Cor72Flat {
            n: 2,
            f: p(2, "x1"),
            h0: p(2, "x1^2 - x2^2"),
        })
        .unwrap();
        assert_eq!(s.big_h(), &p(2, "2*x1*v + x1^2 - x2^2"));
    }

    #[test]
    fn cor72_rejects_non_harmonic() {
        let err = make_example(&ExampleKind::Cor72Flat {
            n: 2,
            f: p(2, "x1^2"),
            h0: DiffExpr::zero(),
        })
        .unwrap_err();
        assert!(err.to_string().contains("Δf = 2"), "{}", err);
    }

    #[test]
    fn generic_family_weight() {
        let s = make_example(&ExampleKind::GenericSpinorFamily {
            n: 4,
            h: None,
            big_h: p(4, "v^2*x1"),
            w: int(3),
        })
        .unwrap();
        assert_eq!(s.walker_f(), Some(&p(4, "2*v*x1/5")));
    }

    #[test]
    fn example_71_is_einstein_weyl() {
        for n in [2, 3] {
            let s = make_example(&ExampleKind::PaperExample71 {
                n,
                harmonic: p(n, "x1"),
            })
            .unwrap();
            let geo = Geometry::new(&s).unwrap();
            let t = check_theorem71(&geo).unwrap();
            assert!(t.passes, "n = {}: {:?}", n, t.messages);
            assert!(t.einstein_weyl.is_ew);
        }
    }

    #[test]
    fn example_71_potential() {
        let s = make_example(&ExampleKind::PaperExample71 {
            n: 3,
            harmonic: p(3, "x1"),
        })
        .unwrap();
        assert_eq!(s.big_h(), &p(3, "-6*x1*v/u - (2*x1^3 + x1^4)/u^2"));
    }

    #[test]
    fn closed_degenerate_path() {
        let s = make_example(&ExampleKind::ClosedWeylDegenerate).unwrap();
        assert!(is_closed(&s));
        let geo = Geometry::new(&s).unwrap();
        let t = check_theorem71(&geo).unwrap();
        assert_eq!(t.classification, Classification::ClosedWeyl);
        assert!(t.passes, "{:?}", t.messages);
        assert!(einstein_weyl_check(&geo).unwrap().is_ew);
    }

    #[test]
    fn thm62_validation() {
        assert!(make_example(&ExampleKind::Thm62Product {
            n: 3,
            potential: p(3, "x1*u"),
            h_block: None,
            big_h: None,
        })
        .is_err());
        let s = make_example(&ExampleKind::Thm62Product {
            n: 3,
            potential: p(3, "x3*u"),
            h_block: None,
            big_h: None,
        })
        .unwrap();
        assert_eq!(s.walker_f(), Some(&p(3, "x3")));
        assert_eq!(s.h()[2][2], p(3, "exp(-2*x3*u)"));
    }
}

//! Invariant suites shared by the command line `selftest` and the acceptance tests.

use rand::Rng;

use crate::catalog::{Riemannian, WeylFamily};
use crate::clifford::{basis_spinor, CliffordRep, Signature};
use crate::lie_spin::{bivector_bracket, embed, lambda_star, split, Bivector};
use crate::scalar::{int, rat, ExactScalar, Field};
use crate::spinors::{verify_theorem41, SpinorError, Theorem41Check};
use crate::weyl::{closed_form_checks, random_walker, verify_compatibility, ClosedFormCheck, Epsilon, Geometry};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    /// Number of individual identities checked.
    pub checked: usize,
    /// Human readable description of each failure.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Φ(e_i)Φ(e_j) + Φ(e_j)Φ(e_i) = -2 g_ij Id` for every `Cl(r, s)` with `r + s ≤ max_dim`.
pub fn clifford_relations(max_dim: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome {
        checked: 0,
        failures: vec![],
    };
    for dim in 1..=max_dim {
        for r in 0..=dim {
            let sig = Signature::new(r, dim - r);
            match CliffordRep::new(sig) {
                Ok(rep) => {
                    out.checked += dim * (dim + 1) / 2;
                    for (i, j) in rep.relation_failures() {
                        out.failures.push(format!("Cl({},{}): e{} e{}", r, dim - r, i, j));
                    }
                }
                Err(e) => out.failures.push(format!("Cl({},{}): {}", r, dim - r, e)),
            }
        }
    }
    out
}

pub fn random_bivector<R: Rng>(rng: &mut R, dim: usize) -> Bivector {
    let mut b = Bivector::zero(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let c = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
            b.set(i, j, ExactScalar::from_rational(c));
        }
    }
    b
}

/// `[λ_*(β₁), λ_*(β₂)] = λ_*([β₁, β₂])` on `pairs` random pairs for each `(1, k)`, `1 ≤ k ≤ max_dim - 1`.
pub fn lambda_homomorphism<R: Rng>(rng: &mut R, pairs: usize, max_dim: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome {
        checked: 0,
        failures: vec![],
    };
    for dim in 2..=max_dim {
        let sig = Signature::new(1, dim - 1);
        let rep = CliffordRep::new(sig).expect("Lorentzian representation");
        for k in 0..pairs {
            let (a, b) = (random_bivector(rng, dim), random_bivector(rng, dim));
            let lhs = lambda_star(&a, &rep).commutator(&lambda_star(&b, &rep));
            let rhs = lambda_star(&bivector_bracket(&a, &b, sig), &rep);
            out.checked += 1;
            if lhs != rhs {
                out.failures.push(format!("Cl(1,{}): pair {}", dim - 1, k));
            }
        }
    }
    out
}

/// Literal Clifford products in `Δ_{1,n+1} = Δ_n ⊗ Δ_{1,1}` with
/// `p = (e_- + e_+)/√2`, `q = (e_- - e_+)/√2`:
/// `p·q·(ψ_+ ⊗ u(1)) = 2 ψ_+ ⊗ u(1)` and `e_1·p·ψ = √2 (e_1·ψ_-) ⊗ u(1)`.
pub fn proof_identities(max_n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome {
        checked: 0,
        failures: vec![],
    };
    let h = ExactScalar::inv_sqrt2();
    for n in 1..=max_n {
        let big = CliffordRep::new(Signature::lorentzian(n)).expect("Lorentzian representation");
        let small = CliffordRep::new(Signature::riemannian(n)).expect("Riemannian representation");
        let p = big.gamma(0).add(big.gamma(1)).scale(&h);
        let q = big.gamma(0).sub(big.gamma(1)).scale(&h);
        let pq = p.mul(&q);
        let e1p = big.gamma(2).mul(&p);
        let d = small.spinor_dim();
        for idx in 0..d {
            let psi = basis_spinor(d, idx);
            let plus = embed(&psi, 1);
            out.checked += 1;
            if pq.apply(&plus) != plus.iter().map(|x| x.scale(&int(2))).collect::<Vec<_>>() {
                out.failures.push(format!("n = {}: p q on basis {} ⊗ u(1)", n, idx));
            }
            for eps in [1i8, -1] {
                let full = embed(&psi, eps);
                let (_, minus) = split(&full);
                let expected: Vec<ExactScalar> = embed(&small.gamma(0).apply(&minus), 1)
                    .iter()
                    .map(|x| x.fmul(&ExactScalar::sqrt2()))
                    .collect();
                out.checked += 1;
                if e1p.apply(&full) != expected {
                    out.failures
                        .push(format!("n = {}: e_1 p on basis {} ⊗ u({})", n, idx, eps));
                }
            }
        }
    }
    out
}

/// The families whose parallel-spinor counts are tabulated.
pub fn theorem41_families() -> Vec<WeylFamily> {
    let mut v: Vec<WeylFamily> = [2, 3, 4]
        .into_iter()
        .map(|n| WeylFamily::Weighted {
            h: Riemannian::Trivial(n),
            w: int(n as i64 - 2),
        })
        .collect();
    v.push(WeylFamily::Weighted {
        h: Riemannian::Su(2),
        w: int(2),
    });
    v.push(WeylFamily::Weighted {
        h: Riemannian::Su(3),
        w: int(4),
    });
    for n in [3, 4] {
        v.push(WeylFamily::Kernel {
            n,
            sub: Riemannian::Trivial(n - 1),
        });
    }
    v
}

pub fn theorem41_table() -> Result<Vec<Theorem41Check>, SpinorError> {
    theorem41_families().iter().map(verify_theorem41).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilitySample {
    pub index: usize,
    pub n: usize,
    pub epsilon: Epsilon,
    pub omega_v_vanishes: bool,
    /// Nonzero residuals of the `∂_v`-equations, only collected when `ω(∂_v) = 0`.
    pub residuals: Vec<String>,
}

/// Random polynomial Walker structures used by the curvature audits.
pub fn walker_samples<R: Rng>(rng: &mut R, count: usize, max_n: usize, degree: u32) -> Vec<Geometry> {
    (0..count)
        .map(|k| {
            let n = 1 + k % max_n;
            let s = random_walker(rng, n, degree);
            Geometry::new(&s).expect("polynomial Walker data is regular at the basepoint")
        })
        .collect()
}

pub fn compatibility_audit(samples: &[Geometry]) -> Vec<CompatibilitySample> {
    samples
        .iter()
        .enumerate()
        .map(|(index, geo)| {
            let c = verify_compatibility(geo);
            let mut residuals = vec![];
            if c.omega_v_vanishes {
                if !c.eq_gamma_vvv.is_zero() {
                    residuals.push(format!("Γ^v_vv + 2ω_v = {}", geo.chart().render(&c.eq_gamma_vvv)));
                }
                residuals.extend(
                    c.eq_dv_h
                        .iter()
                        .map(|r| format!("{} = {}", r.name, geo.chart().render(&r.value))),
                );
            }
            CompatibilitySample {
                index,
                n: geo.structure.n(),
                epsilon: c.epsilon,
                omega_v_vanishes: c.omega_v_vanishes,
                residuals,
            }
        })
        .collect()
}

/// Single `ε` shared by every sample with `ω ≠ 0`, if any.
pub fn common_epsilon(samples: &[CompatibilitySample]) -> Option<Epsilon> {
    let mut live = samples.iter().map(|s| s.epsilon).filter(|e| *e != Epsilon::Both);
    let first = live.next()?;
    (first != Epsilon::Neither && live.all(|e| e == first)).then_some(first)
}

/// Disagreeing closed forms across all samples, tagged with the sample index.
pub fn closed_form_audit(samples: &[Geometry]) -> Result<(usize, Vec<(usize, ClosedFormCheck)>), String> {
    let mut checked = 0;
    let mut bad = vec![];
    for (i, geo) in samples.iter().enumerate() {
        let checks = closed_form_checks(geo).map_err(|e| e.to_string())?;
        checked += checks.len();
        bad.extend(checks.into_iter().filter(|c| !c.agrees()).map(|c| (i, c)));
    }
    Ok((checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_suites_pass() {
        assert!(clifford_relations(5).passed());
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        assert!(lambda_homomorphism(&mut rng, 5, 5).passed());
        let r = proof_identities(4);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn compatibility_on_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let samples = walker_samples(&mut rng, 4, 2, 2);
        let c = compatibility_audit(&samples);
        assert_eq!(common_epsilon(&c), Some(Epsilon::Minus2));
        assert!(c.iter().all(|s| s.residuals.is_empty()));
    }
}

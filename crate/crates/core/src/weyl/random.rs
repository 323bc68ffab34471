//! Seeded random polynomial Walker structures for audits.

use rand::Rng;
use weylspin_symdiff::{Chart, DiffExpr, PowerProduct, PurePoly};

use crate::scalar::int;
use crate::weyl::structure::{default_basepoint, KundtStructure};

fn random_poly<R: Rng>(rng: &mut R, vars: &[usize], degree: u32, terms: usize) -> PurePoly {
    let mut p = PurePoly::zero();
    for _ in 0..terms {
        let mut pairs = Vec::new();
        let total = rng.gen_range(0..=degree);
        for _ in 0..total {
            pairs.push((vars[rng.gen_range(0..vars.len())], 1));
        }
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            p.add_term(PowerProduct::from_pairs(pairs), int(c));
        }
    }
    p
}

/// Walker structure with `A = 0`, `ω = f du`, transverse dimension `n`,
/// diagonal `h(u)` equal to `δ` at `u = 0`, and `H`, `f` polynomials of
/// degree at most `degree` in all coordinates.
pub fn random_walker<R: Rng>(rng: &mut R, n: usize, degree: u32) -> KundtStructure {
    let chart = Chart::new(n);
    let all: Vec<usize> = (0..chart.dim()).collect();
    let u = [chart.u()];
    let mut h = vec![vec![DiffExpr::zero(); n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        let mut hi = random_poly(rng, &u, degree, 2);
        // Drop the constant term so that h(0) = δ.
        hi = &hi - &PurePoly::constant(hi.eval(&vec![int(0); chart.dim()]));
        row[i] = &DiffExpr::one() + &DiffExpr::from_pure(&hi);
    }
    let big_h = DiffExpr::from_pure(&random_poly(rng, &all, degree, 5));
    let f = DiffExpr::from_pure(&random_poly(rng, &all, degree, 3));
    let w = int(rng.gen_range(-1..=2));
    KundtStructure::walker(n, h, big_h, f, w, default_basepoint(n)).expect("h is the identity at the basepoint")
}

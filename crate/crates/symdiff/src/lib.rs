//! Exact symbolic differentiation over rational functions in polynomials and
//! exponentials of polynomials.
//!
//! Expressions live on a [`Chart`] with coordinates `(v, x1, …, xn, u)`.
//! Arithmetic is closed, derivatives are exact, and [`DiffExpr::is_zero`] is a
//! sound and complete zero test for this class.
//!
//! ```
//! use weylspin_symdiff::{parse, Chart};
//! let chart = Chart::new(2);
//! let e = parse(&chart, "x1^2*v + exp(-2*x2*u)").unwrap();
//! let d = e.diff(chart.x(2)).diff(chart.x(2));
//! let expected = parse(&chart, "4*u^2*exp(-2*x2*u)").unwrap();
//! assert!((d - expected).is_zero());
//! ```

mod expr;
mod interval;
mod parse;
mod poly;

pub use expr::{DiffExpr, ExprError};
pub use interval::{evaluate, evaluate_exact, exp_interval, EvalError, Interval, Value};
pub use parse::{parse, parse_rational, ParseError};
pub use poly::{Monomial, Poly, PowerProduct, PurePoly};

/// Coordinates `(v, x1, …, xn, u)` of a Kundt chart, indexed `0..=n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    n: usize,
}

impl Chart {
    pub fn new(n: usize) -> Self {
        Chart { n }
    }

    /// Number of transverse coordinates.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of coordinates, `n + 2`.
    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn v(&self) -> usize {
        0
    }

    /// Index of `x_i`, `1 <= i <= n`.
    pub fn x(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n, "x{} outside chart of dimension {}", i, self.n);
        i
    }

    pub fn u(&self) -> usize {
        self.n + 1
    }

    pub fn name(&self, k: usize) -> String {
        if k == 0 {
            "v".to_string()
        } else if k == self.n + 1 {
            "u".to_string()
        } else {
            format!("x{}", k)
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match name {
            "v" => Some(0),
            "u" => Some(self.n + 1),
            _ => {
                let i: usize = name.strip_prefix('x')?.parse().ok()?;
                (i >= 1 && i <= self.n && !name[1..].starts_with('0')).then_some(i)
            }
        }
    }

    pub fn render(&self, e: &DiffExpr) -> String {
        e.render(&|k| self.name(k))
    }

    pub fn render_pure(&self, p: &PurePoly) -> String {
        self.render(&DiffExpr::from_pure(p))
    }
}

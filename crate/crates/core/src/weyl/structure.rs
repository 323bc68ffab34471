//! Kundt and Walker Weyl structures `g = 2dvdu + h + 2A du + H (du)²` with a
//! Weyl 1-form `ω`, and their JSON definition files.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use weylspin_symdiff::{evaluate_exact, parse, parse_rational, Chart, DiffExpr, EvalError, ParseError, PurePoly};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StructureError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("h is not symmetric: h[{0}][{1}] != h[{1}][{0}]")]
    NotSymmetric(usize, usize),
    #[error("h[{0}][{1}] depends on v")]
    DependsOnV(usize, usize),
    #[error("{0} uses a variable outside the chart")]
    OutsideChart(String),
    #[error("h is not positive definite at the basepoint (leading minor {0} is {1})")]
    NotPositive(usize, String),
    #[error("h is not invertible as an expression matrix")]
    Singular,
    #[error("{what} at the basepoint: {err}")]
    Basepoint { what: String, err: EvalError },
    #[error("structure is not Walker with A = 0 and omega = f du")]
    NotWalker,
    #[error("exp({0}) is not in the span of the declared exp generators")]
    ExpGenerator(String),
    #[error("{field}: {err}")]
    Parse { field: String, err: ParseError },
    #[error("invalid structure file: {0}")]
    File(String),
    #[error("{0}")]
    Example(String),
}

/// Weyl structure on a Kundt chart `(v, x1, …, xn, u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KundtStructure {
    chart: Chart,
    h: Vec<Vec<DiffExpr>>,
    a: Vec<DiffExpr>,
    big_h: DiffExpr,
    omega: Vec<DiffExpr>,
    w: Rational,
    basepoint: Vec<Rational>,
    exp_generators: Vec<PurePoly>,
}

/// `v = 0, x = (1, …, 1), u = 0`.
pub fn default_basepoint(n: usize) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); n + 2];
    for x in p.iter_mut().take(n + 1).skip(1) {
        *x = Rational::from_integer(1.into());
    }
    p
}

impl KundtStructure {
    /// General Kundt structure; `omega` has one component per chart coordinate.
    pub fn new(
        n: usize,
        h: Vec<Vec<DiffExpr>>,
        a: Vec<DiffExpr>,
        big_h: DiffExpr,
        omega: Vec<DiffExpr>,
        w: Rational,
        basepoint: Vec<Rational>,
    ) -> Result<Self, StructureError> {
        let chart = Chart::new(n);
        let dim = chart.dim();
        if h.len() != n || h.iter().any(|r| r.len() != n) {
            return Err(StructureError::Dimension(format!("h must be {}x{}", n, n)));
        }
        if a.len() != n {
            return Err(StructureError::Dimension(format!(
                "A needs {} components, got {}",
                n,
                a.len()
            )));
        }
        if omega.len() != dim {
            return Err(StructureError::Dimension(format!(
                "omega needs {} components, got {}",
                dim,
                omega.len()
            )));
        }
        if basepoint.len() != dim {
            return Err(StructureError::Dimension(format!(
                "basepoint needs {} coordinates, got {}",
                dim,
                basepoint.len()
            )));
        }
        let inside = |e: &DiffExpr, what: String| match e.max_var() {
            Some(k) if k >= dim => Err(StructureError::OutsideChart(what)),
            _ => Ok(()),
        };
        for i in 0..n {
            for j in 0..n {
                inside(&h[i][j], format!("h[{}][{}]", i, j))?;
                if h[i][j] != h[j][i] {
                    return Err(StructureError::NotSymmetric(i, j));
                }
                if !h[i][j].diff(chart.v()).is_zero() {
                    return Err(StructureError::DependsOnV(i, j));
                }
            }
            inside(&a[i], format!("A[{}]", i))?;
        }
        inside(&big_h, "H".into())?;
        for (k, o) in omega.iter().enumerate() {
            inside(o, format!("omega[{}]", k))?;
        }
        let s = KundtStructure {
            chart,
            h,
            a,
            big_h,
            omega,
            w,
            basepoint,
            exp_generators: Vec::new(),
        };
        s.check_basepoint()?;
        Ok(s)
    }

    /// Walker structure with `A = 0` and `ω = f du`.
    pub fn walker(
        n: usize,
        h: Vec<Vec<DiffExpr>>,
        big_h: DiffExpr,
        f: DiffExpr,
        w: Rational,
        basepoint: Vec<Rational>,
    ) -> Result<Self, StructureError> {
        let mut omega = vec![DiffExpr::zero(); n + 2];
        omega[n + 1] = f;
        KundtStructure::new(n, h, vec![DiffExpr::zero(); n], big_h, omega, w, basepoint)
    }

    /// Walker structure with `h = δ`.
    pub fn flat_walker(n: usize, big_h: DiffExpr, f: DiffExpr, w: Rational) -> Result<Self, StructureError> {
        KundtStructure::walker(n, identity(n), big_h, f, w, default_basepoint(n))
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn n(&self) -> usize {
        self.chart.n()
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `h_ij`, indices `0..n` for `x1..xn`.
    pub fn h(&self) -> &[Vec<DiffExpr>] {
        &self.h
    }

    pub fn a(&self) -> &[DiffExpr] {
        &self.a
    }

    pub fn big_h(&self) -> &DiffExpr {
        &self.big_h
    }

    /// `ω_a` in chart order.
    pub fn omega(&self) -> &[DiffExpr] {
        &self.omega
    }

    pub fn w(&self) -> &Rational {
        &self.w
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    pub fn exp_generators(&self) -> &[PurePoly] {
        &self.exp_generators
    }

    /// `f` when `A = 0` and `ω = f du`.
    pub fn walker_f(&self) -> Option<&DiffExpr> {
        let u = self.chart.u();
        let walker =
            self.a.iter().all(DiffExpr::is_zero) && self.omega.iter().enumerate().all(|(k, o)| k == u || o.is_zero());
        walker.then(|| &self.omega[u])
    }

    pub fn require_walker(&self) -> Result<&DiffExpr, StructureError> {
        self.walker_f().ok_or(StructureError::NotWalker)
    }

    pub fn with_weight(&self, w: Rational) -> Self {
        KundtStructure { w, ..self.clone() }
    }

    pub fn with_basepoint(&self, basepoint: Vec<Rational>) -> Result<Self, StructureError> {
        if basepoint.len() != self.dim() {
            return Err(StructureError::Dimension(format!(
                "basepoint needs {} coordinates, got {}",
                self.dim(),
                basepoint.len()
            )));
        }
        let s = KundtStructure {
            basepoint,
            ..self.clone()
        };
        s.check_basepoint()?;
        Ok(s)
    }

    /// Same metric with `ω = 0`.
    pub fn levi_civita(&self) -> Self {
        KundtStructure {
            omega: vec![DiffExpr::zero(); self.dim()],
            ..self.clone()
        }
    }

    /// Restrict the exponentials allowed in the data to `exp(P)` with `P` in
    /// the ℚ-span of `gens`.
    pub fn with_exp_generators(&self, gens: Vec<PurePoly>) -> Result<Self, StructureError> {
        let s = KundtStructure {
            exp_generators: gens,
            ..self.clone()
        };
        for e in s.expressions() {
            for arg in e.exp_arguments() {
                if !in_span(&s.exp_generators, &arg) {
                    return Err(StructureError::ExpGenerator(s.chart.render_pure(&arg)));
                }
            }
        }
        Ok(s)
    }

    fn expressions(&self) -> impl Iterator<Item = &DiffExpr> {
        self.h
            .iter()
            .flatten()
            .chain(self.a.iter())
            .chain(std::iter::once(&self.big_h))
            .chain(self.omega.iter())
    }

    /// Metric components `g_ab` in chart order.
    pub fn metric(&self) -> Vec<Vec<DiffExpr>> {
        let n = self.n();
        let (v, u) = (self.chart.v(), self.chart.u());
        let mut g = vec![vec![DiffExpr::zero(); n + 2]; n + 2];
        g[v][u] = DiffExpr::one();
        g[u][v] = DiffExpr::one();
        g[u][u] = self.big_h.clone();
        for i in 0..n {
            g[u][i + 1] = self.a[i].clone();
            g[i + 1][u] = self.a[i].clone();
            for j in 0..n {
                g[i + 1][j + 1] = self.h[i][j].clone();
            }
        }
        g
    }

    /// `h^{ij}`.
    pub fn h_inverse(&self) -> Result<Vec<Vec<DiffExpr>>, StructureError> {
        expr_inverse(&self.h).ok_or(StructureError::Singular)
    }

    /// `g^{ab}`: `g^{uv} = 1`, `g^{ij} = h^{ij}`, `g^{vi} = -A^i`,
    /// `g^{vv} = -H + A_i A^i`, `g^{uu} = g^{ui} = 0`.
    pub fn inverse_metric(&self) -> Result<Vec<Vec<DiffExpr>>, StructureError> {
        let n = self.n();
        let hi = self.h_inverse()?;
        let (v, u) = (self.chart.v(), self.chart.u());
        let mut gi = vec![vec![DiffExpr::zero(); n + 2]; n + 2];
        gi[u][v] = DiffExpr::one();
        gi[v][u] = DiffExpr::one();
        let mut a_up = vec![DiffExpr::zero(); n];
        for i in 0..n {
            for j in 0..n {
                a_up[i] = &a_up[i] + &(&hi[i][j] * &self.a[j]);
                gi[i + 1][j + 1] = hi[i][j].clone();
            }
        }
        let mut vv = -&self.big_h;
        for i in 0..n {
            vv = &vv + &(&a_up[i] * &self.a[i]);
            gi[v][i + 1] = -&a_up[i];
            gi[i + 1][v] = -&a_up[i];
        }
        gi[v][v] = vv;
        Ok(gi)
    }

    /// Exact value of `e` at the basepoint.
    pub fn at_basepoint(&self, e: &DiffExpr, what: &str) -> Result<Rational, StructureError> {
        evaluate_exact(e, &self.basepoint).map_err(|err| StructureError::Basepoint {
            what: what.to_string(),
            err,
        })
    }

    /// Leading principal minors of `h` at the basepoint must be positive.
    fn check_basepoint(&self) -> Result<(), StructureError> {
        let n = self.n();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.at_basepoint(&self.h[i][j], &format!("h[{}][{}]", i, j))?;
            }
        }
        for k in 1..=n {
            let d = det(&m[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>());
            if !d.is_positive() {
                return Err(StructureError::NotPositive(k, d.to_string()));
            }
        }
        Ok(())
    }
}

pub fn identity(n: usize) -> Vec<Vec<DiffExpr>> {
    (0..n)
        .map(|i| (0..n).map(|j| DiffExpr::from_int(i64::from(i == j))).collect())
        .collect()
}

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Gauss-Jordan inverse over the field of expressions.
pub fn expr_inverse(m: &[Vec<DiffExpr>]) -> Option<Vec<Vec<DiffExpr>>> {
    let n = m.len();
    let mut a: Vec<Vec<DiffExpr>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| DiffExpr::from_int(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip().ok()?;
        for k in 0..2 * n {
            a[c][k] = &a[c][k] * &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                if !a[c][k].is_zero() {
                    a[r][k] = &a[r][k] - &(&f * &a[c][k]);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Whether `p` lies in the ℚ-span of `gens`.
pub fn in_span(gens: &[PurePoly], p: &PurePoly) -> bool {
    use crate::linalg::Span;
    use std::collections::BTreeSet;
    let mut keys = BTreeSet::new();
    for g in gens.iter().chain(std::iter::once(p)) {
        for (pp, _) in g.terms() {
            keys.insert(pp.clone());
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let vector = |q: &PurePoly| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); keys.len()];
        for (pp, c) in q.terms() {
            let k = keys.binary_search(pp).expect("key collected");
            v[k] = c.clone();
        }
        v
    };
    let mut span = Span::new(keys.len());
    for g in gens {
        span.insert(vector(g));
    }
    span.contains(&vector(p))
}

/// A JSON expression slot: either a string in the expression grammar or a number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExprText {
    Text(String),
    Number(serde_json::Number),
}

impl ExprText {
    fn source(&self) -> String {
        match self {
            ExprText::Text(s) => s.clone(),
            ExprText::Number(n) => n.to_string(),
        }
    }
}

impl From<&str> for ExprText {
    fn from(s: &str) -> Self {
        ExprText::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaFile {
    /// `ω = f du`.
    Walker { f: ExprText },
    /// Components in chart order `(v, x1, …, xn, u)`.
    Covector { covector: Vec<ExprText> },
}

/// On-disk form of a [`KundtStructure`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub n: usize,
    /// Defaults to the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<ExprText>>>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<ExprText>>,
    #[serde(rename = "H")]
    pub big_h: ExprText,
    pub omega: OmegaFile,
    pub w: ExprText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<Vec<ExprText>>,
    #[serde(default)]
    pub exp_generators: Vec<ExprText>,
}

impl StructureFile {
    pub fn from_json(src: &str) -> Result<Self, StructureError> {
        serde_json::from_str(src).map_err(|e| StructureError::File(e.to_string()))
    }

    pub fn build(&self) -> Result<KundtStructure, StructureError> {
        let n = self.n;
        let chart = Chart::new(n);
        let expr = |field: String, t: &ExprText| {
            parse(&chart, &t.source()).map_err(|err| StructureError::Parse { field, err })
        };
        let number = |field: String, t: &ExprText| {
            parse_rational(&t.source()).map_err(|err| StructureError::Parse { field, err })
        };
        let h = match &self.h {
            None => identity(n),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(StructureError::Dimension(format!("h must be {}x{}", n, n)));
                }
                let mut h = Vec::with_capacity(n);
                for (i, r) in rows.iter().enumerate() {
                    let mut row = Vec::with_capacity(n);
                    for (j, t) in r.iter().enumerate() {
                        row.push(expr(format!("h[{}][{}]", i, j), t)?);
                    }
                    h.push(row);
                }
                h
            }
        };
        let a = match &self.a {
            None => vec![DiffExpr::zero(); n],
            Some(v) => v
                .iter()
                .enumerate()
                .map(|(i, t)| expr(format!("A[{}]", i), t))
                .collect::<Result<_, _>>()?,
        };
        let big_h = expr("H".into(), &self.big_h)?;
        let omega = match &self.omega {
            OmegaFile::Walker { f } => {
                let mut o = vec![DiffExpr::zero(); n + 2];
                o[n + 1] = expr("omega.f".into(), f)?;
                o
            }
            OmegaFile::Covector { covector } => covector
                .iter()
                .enumerate()
                .map(|(k, t)| expr(format!("omega.covector[{}]", k), t))
                .collect::<Result<_, _>>()?,
        };
        let w = number("w".into(), &self.w)?;
        let basepoint = match &self.basepoint {
            None => default_basepoint(n),
            Some(v) => v
                .iter()
                .enumerate()
                .map(|(k, t)| number(format!("basepoint[{}]", k), t))
                .collect::<Result<_, _>>()?,
        };
        let mut gens = Vec::with_capacity(self.exp_generators.len());
        for (k, t) in self.exp_generators.iter().enumerate() {
            let field = format!("exp_generators[{}]", k);
            let e = expr(field.clone(), t)?;
            let p = e.as_polynomial().ok_or_else(|| StructureError::Parse {
                field,
                err: ParseError {
                    position: 0,
                    message: "exp generator must be a polynomial".into(),
                },
            })?;
            gens.push(p);
        }
        KundtStructure::new(n, h, a, big_h, omega, w, basepoint)?.with_exp_generators(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(n: usize, s: &str) -> DiffExpr {
        parse(&Chart::new(n), s).unwrap()
    }

    #[test]
    fn inverse_metric_is_inverse() {
        let n = 2;
        let h = vec![vec![p(n, "1+u^2"), p(n, "u")], vec![p(n, "u"), p(n, "2")]];
        let s = KundtStructure::new(
            n,
            h,
            vec![p(n, "v*x1"), p(n, "x2")],
            p(n, "v^2 + x1"),
            vec![DiffExpr::zero(); 4],
            int(0),
            default_basepoint(n),
        )
        .unwrap();
        let g = s.metric();
        let gi = s.inverse_metric().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = DiffExpr::zero();
                for c in 0..4 {
                    acc = &acc + &(&g[a][c] * &gi[c][b]);
                }
                assert_eq!(acc, DiffExpr::from_int(i64::from(a == b)), "({}, {})", a, b);
            }
        }
    }

    #[test]
    fn rejects_v_dependent_h() {
        let n = 1;
        let err = KundtStructure::walker(
            n,
            vec![vec![p(n, "1+v^2")]],
            DiffExpr::zero(),
            DiffExpr::zero(),
            int(0),
            default_basepoint(n),
        );
        assert_eq!(err, Err(StructureError::DependsOnV(0, 0)));
    }

    #[test]
    fn rejects_degenerate_basepoint() {
        let n = 1;
        let err = KundtStructure::walker(
            n,
            vec![vec![p(n, "x1 - 1")]],
            DiffExpr::zero(),
            DiffExpr::zero(),
            int(0),
            default_basepoint(n),
        );
        assert!(matches!(err, Err(StructureError::NotPositive(1, _))));
    }

    #[test]
    fn file_round_trip() {
        let src = r#"{"n": 2, "H": "2*x1*v + x1^2 - x2^2", "omega": {"f": "x1"}, "w": 0}"#;
        let file = StructureFile::from_json(src).unwrap();
        let s = file.build().unwrap();
        assert_eq!(s.walker_f(), Some(&p(2, "x1")));
        let again = StructureFile::from_json(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn exp_generators_are_enforced() {
        let src = r#"{"n": 1, "h": [["exp(-2*x1*u)"]], "H": 0, "omega": {"f": "x1"}, "w": -2}"#;
        let file = StructureFile::from_json(src).unwrap();
        assert!(matches!(file.build(), Err(StructureError::ExpGenerator(_))));
        let mut ok = file.clone();
        ok.exp_generators = vec!["x1*u".into()];
        assert!(ok.build().is_ok());
    }

    #[test]
    fn parse_error_names_field() {
        let src = r#"{"n": 1, "H": "v +* 2", "omega": {"f": "0"}, "w": 0}"#;
        match StructureFile::from_json(src).unwrap().build() {
            Err(StructureError::Parse { field, .. }) => assert_eq!(field, "H"),
            other => panic!("{:?}", other),
        }
    }
}

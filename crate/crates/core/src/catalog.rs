//! Generators of Riemannian holonomy algebras `h ⊂ so(n)` and of the Weyl
//! holonomy families inside `co(1,n+1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::clifford::Signature;
use crate::lie_spin::{so_matrix, Bivector, CoElement};
use crate::linalg::{Matrix, Span};
use crate::scalar::{int, ExactScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown holonomy descriptor '{0}'")]
    UnknownDescriptor(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("functional has {got} values but the algebra has {expected} generators")]
    FunctionalLength { expected: usize, got: usize },
    #[error("functional {0} does not vanish on the derived algebra")]
    NotACharacter(&'static str),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
}

/// Riemannian holonomy algebra `h ⊂ so(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Riemannian {
    /// `{0} ⊂ so(n)`.
    Trivial(usize),
    /// `so(n)` itself.
    Full(usize),
    /// `su(m) ⊂ so(2m)`.
    Su(usize),
    /// `sp(m) ⊂ so(4m)`.
    Sp(usize),
    /// `g_2 ⊂ so(7)`.
    G2,
    /// `spin(7) ⊂ so(8)`.
    Spin7,
}

impl Riemannian {
    pub fn n(&self) -> usize {
        match *self {
            Riemannian::Trivial(n) | Riemannian::Full(n) => n,
            Riemannian::Su(m) => 2 * m,
            Riemannian::Sp(m) => 4 * m,
            Riemannian::G2 => 7,
            Riemannian::Spin7 => 8,
        }
    }

    /// Parse `trivial(n)`, `so(n)`, `su(m)`, `sp(m)`, `g2`, `spin7`.
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || CatalogError::UnknownDescriptor(s.to_string());
        match t.as_str() {
            "g2" => return Ok(Riemannian::G2),
            "spin7" | "spin(7)" => return Ok(Riemannian::Spin7),
            _ => {}
        }
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let k: usize = t[open + 1..t.len() - 1].trim().parse().map_err(|_| bad())?;
        let r = match &t[..open] {
            "trivial" => Riemannian::Trivial(k),
            "so" => Riemannian::Full(k),
            "su" if k >= 1 => Riemannian::Su(k),
            "sp" if k >= 1 => Riemannian::Sp(k),
            _ => return Err(bad()),
        };
        Ok(r)
    }

    /// Linearly independent skew generators.
    pub fn generators(&self) -> Vec<Matrix<Rational>> {
        match *self {
            Riemannian::Trivial(_) => Vec::new(),
            Riemannian::Full(n) => so_basis(n),
            Riemannian::Su(m) => su_generators(m),
            Riemannian::Sp(m) => sp_generators(m),
            Riemannian::G2 => stabilizer(&g2_form(), 7),
            Riemannian::Spin7 => stabilizer(&cayley_form(), 8),
        }
    }

    /// Dimension of the algebra.
    pub fn expected_rank(&self) -> usize {
        match *self {
            Riemannian::Trivial(_) => 0,
            Riemannian::Full(n) => n * n.saturating_sub(1) / 2,
            Riemannian::Su(m) => m * m - 1,
            Riemannian::Sp(m) => m * (2 * m + 1),
            Riemannian::G2 => 14,
            Riemannian::Spin7 => 21,
        }
    }
}

impl fmt::Display for Riemannian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Riemannian::Trivial(n) => write!(f, "trivial({})", n),
            Riemannian::Full(n) => write!(f, "so({})", n),
            Riemannian::Su(m) => write!(f, "su({})", m),
            Riemannian::Sp(m) => write!(f, "sp({})", m),
            Riemannian::G2 => write!(f, "g2"),
            Riemannian::Spin7 => write!(f, "spin7"),
        }
    }
}

/// `E_ij = e_j e_iᵀ - e_i e_jᵀ` for `i < j`, i.e. the matrix of `e_i ∧ e_j`.
pub fn so_unit(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    m.set(j, i, int(1));
    m.set(i, j, int(-1));
    m
}

pub fn so_basis(n: usize) -> Vec<Matrix<Rational>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(so_unit(n, i, j));
        }
    }
    out
}

/// Real `2m × 2m` form of a complex matrix given by real and imaginary parts,
/// with `z_k = x_{2k} + i x_{2k+1}`.
fn realify(re: &Matrix<Rational>, im: &Matrix<Rational>) -> Matrix<Rational> {
    let m = re.rows();
    let mut out = Matrix::zeros(2 * m, 2 * m);
    for j in 0..m {
        for k in 0..m {
            let a = re.get(j, k);
            let b = im.get(j, k);
            out.set(2 * j, 2 * k, a.clone());
            out.set(2 * j + 1, 2 * k + 1, a.clone());
            out.set(2 * j, 2 * k + 1, -b.clone());
            out.set(2 * j + 1, 2 * k, b.clone());
        }
    }
    out
}

fn su_generators(m: usize) -> Vec<Matrix<Rational>> {
    let z = || Matrix::<Rational>::zeros(m, m);
    let mut out = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            let mut re = z();
            re.set(j, k, int(1));
            re.set(k, j, int(-1));
            out.push(realify(&re, &z()));
            let mut im = z();
            im.set(j, k, int(1));
            im.set(k, j, int(1));
            out.push(realify(&z(), &im));
        }
    }
    for k in 0..m.saturating_sub(1) {
        let mut im = z();
        im.set(k, k, int(1));
        im.set(k + 1, k + 1, int(-1));
        out.push(realify(&z(), &im));
    }
    out
}

/// Left multiplication by the quaternion unit `u ∈ {1, i, j, k}` on ℍ = ℝ⁴.
fn quaternion_left(u: usize) -> Matrix<Rational> {
    // Products u·e_c = sign · e_target for the basis (1, i, j, k).
    const TABLE: [[(usize, i64); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let mut out = Matrix::zeros(4, 4);
    for (c, &(t, s)) in TABLE[u].iter().enumerate() {
        out.set(t, c, int(s));
    }
    out
}

fn place_block(out: &mut Matrix<Rational>, r: usize, c: usize, blk: &Matrix<Rational>) {
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            let v = out.get(r + i, c + j) + blk.get(i, j);
            out.set(r + i, c + j, v);
        }
    }
}

fn sp_generators(m: usize) -> Vec<Matrix<Rational>> {
    let n = 4 * m;
    let mut out = Vec::new();
    for j in 0..m {
        for k in j..m {
            for u in 0..4 {
                if j == k && u == 0 {
                    continue;
                }
                // Quaternionic skew-Hermitian: entry q at (j,k), -q̄ at (k,j).
                let mut g = Matrix::zeros(n, n);
                let l = quaternion_left(u);
                place_block(&mut g, 4 * j, 4 * k, &l);
                if j != k {
                    let back = if u == 0 { l.scale(&int(-1)) } else { l.clone() };
                    place_block(&mut g, 4 * k, 4 * j, &back);
                }
                out.push(g);
            }
        }
    }
    out
}

/// Exterior form as coefficients on sorted index tuples.
pub type Form = BTreeMap<Vec<usize>, Rational>;

/// Sort `idx` returning the permutation sign, or `None` on a repeated index.
fn sort_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, sign))
}

fn form_from(terms: &[(&[usize], i64)]) -> Form {
    let mut f = Form::new();
    for (idx, c) in terms {
        let (s, sign) = sort_sign(idx.to_vec()).expect("distinct indices");
        *f.entry(s).or_insert_with(Rational::zero) += int(c * sign);
    }
    f
}

/// The octonionic 3-form on ℝ⁷ (indices 0..7).
pub fn g2_form() -> Form {
    form_from(&[
        (&[0, 1, 2], 1),
        (&[0, 3, 4], 1),
        (&[0, 5, 6], 1),
        (&[1, 3, 5], 1),
        (&[1, 4, 6], -1),
        (&[2, 3, 6], -1),
        (&[2, 4, 5], -1),
    ])
}

/// Hodge dual in Euclidean ℝⁿ.
pub fn hodge_star(f: &Form, n: usize) -> Form {
    let mut out = Form::new();
    for (idx, c) in f {
        let comp: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let mut all = idx.clone();
        all.extend(&comp);
        let (_, sign) = sort_sign(all).expect("disjoint");
        *out.entry(comp).or_insert_with(Rational::zero) += c * int(sign);
    }
    out
}

/// Cayley 4-form `e_0 ∧ φ + ⋆φ` on ℝ⁸, with `φ` the 3-form on `e_1..e_7`.
pub fn cayley_form() -> Form {
    let phi = g2_form();
    let star = hodge_star(&phi, 7);
    let mut out = Form::new();
    for (idx, c) in &phi {
        let mut k = vec![0];
        k.extend(idx.iter().map(|i| i + 1));
        out.insert(k, c.clone());
    }
    for (idx, c) in &star {
        let k: Vec<usize> = idx.iter().map(|i| i + 1).collect();
        *out.entry(k).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Derivation action of a matrix on a form (vectors and covectors identified
/// by the Euclidean metric).
pub fn act_on_form(a: &Matrix<Rational>, f: &Form) -> Form {
    let n = a.rows();
    let mut out = Form::new();
    for (idx, c) in f {
        for t in 0..idx.len() {
            for k in 0..n {
                let coef = a.get(k, idx[t]);
                if coef.is_zero() {
                    continue;
                }
                let mut new = idx.clone();
                new[t] = k;
                if let Some((s, sign)) = sort_sign(new) {
                    *out.entry(s).or_insert_with(Rational::zero) += c * coef * int(sign);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Basis of `{A ∈ so(n) : A·f = 0}`.
pub fn stabilizer(f: &Form, n: usize) -> Vec<Matrix<Rational>> {
    let basis = so_basis(n);
    let images: Vec<Form> = basis.iter().map(|b| act_on_form(b, f)).collect();
    let mut keys: Vec<Vec<usize>> = images.iter().flat_map(|im| im.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    // Rows indexed by form components, columns by basis elements.
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            images
                .iter()
                .map(|im| im.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..basis.len())
            .map(|i| {
                let mut v = vec![Rational::zero(); basis.len()];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    kernel
        .iter()
        .map(|coeffs| {
            let mut m = Matrix::zeros(n, n);
            for (c, b) in coeffs.iter().zip(&basis) {
                m.add_scaled(c, b);
            }
            m
        })
        .collect()
}

fn flatten(m: &Matrix<Rational>) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Rank of a list of matrices as vectors.
pub fn matrix_rank(ms: &[Matrix<Rational>]) -> usize {
    let Some(first) = ms.first() else { return 0 };
    let mut span = Span::new(first.rows() * first.cols());
    for m in ms {
        span.insert(flatten(m));
    }
    span.rank()
}

/// Coordinates of `target` in the linearly independent list `gens`.
pub fn coordinates_in(gens: &[Matrix<Rational>], target: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let dim = target.rows() * target.cols();
    let k = gens.len();
    // Columns: generators, then -target; kernel vectors with last entry 1.
    let flat: Vec<Vec<Rational>> = gens.iter().map(flatten).collect();
    let t = flatten(target);
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = flat.iter().map(|g| g[r].clone()).collect();
            row.push(-t[r].clone());
            row
        })
        .collect();
    if dim == 0 {
        return Some(vec![Rational::zero(); k]);
    }
    let kernel = Matrix::from_rows(rows).kernel();
    for v in kernel {
        if !v[k].is_zero() {
            let s = v[k].clone();
            return Some(v[..k].iter().map(|x| x / &s).collect());
        }
    }
    None
}

/// Check that a functional given by its values on `gens` vanishes on `[h, h]`.
pub fn check_character(gens: &[Matrix<Rational>], values: &[Rational], name: &'static str) -> Result<(), CatalogError> {
    if values.len() != gens.len() {
        return Err(CatalogError::FunctionalLength {
            expected: gens.len(),
            got: values.len(),
        });
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].commutator(&gens[j]);
            let coords = coordinates_in(gens, &c)
                .ok_or_else(|| CatalogError::Constraint("generators do not close under the bracket".into()))?;
            let v: Rational = coords.iter().zip(values).map(|(a, b)| a * b).sum();
            if !v.is_zero() {
                return Err(CatalogError::NotACharacter(name));
            }
        }
    }
    Ok(())
}

/// A generator of a subalgebra of `co(1,n+1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Element of the stabilizer of the null line `ℝp`.
    Parabolic(CoElement),
    /// General element `b·Id + β` with `β` a bivector in `e_-, e_+, e_1, …, e_n`.
    General { b: Rational, bivector: Bivector },
}

impl Generator {
    pub fn n(&self) -> usize {
        match self {
            Generator::Parabolic(c) => c.n(),
            Generator::General { bivector, .. } => bivector.dim() - 2,
        }
    }

    pub fn b(&self) -> &Rational {
        match self {
            Generator::Parabolic(c) => &c.b,
            Generator::General { b, .. } => b,
        }
    }

    pub fn bivector(&self) -> Bivector {
        match self {
            Generator::Parabolic(c) => c.bivector(),
            Generator::General { bivector, .. } => bivector.clone(),
        }
    }

    /// Matrix on `ℝ^{1,n+1}` in the orthonormal basis.
    pub fn vector_matrix(&self) -> Matrix<ExactScalar> {
        let n = self.n();
        let m = so_matrix(&self.bivector(), Signature::lorentzian(n));
        m.add(&Matrix::identity(n + 2).scale(&ExactScalar::from_rational(self.b().clone())))
    }
}

/// Families of Weyl holonomy algebras.
#[derive(Clone, Debug, PartialEq)]
pub enum WeylFamily {
    /// `ℝ·Id ⊕ so(1,k+1) ⊕ so(n-k)`, `-1 ≤ k ≤ n-1`.
    LorentzSplit { n: usize, k: i64 },
    /// `ℝ(1,-1,0,0) ⊕ (k ⊕ so(n-k)) ⋉ ℝ^k` with `k ⊂ so(k)`.
    BoostSplit { n: usize, sub: Riemannian },
    /// `{(b,a,0,0)} ⊕ (k ⊕ so(n-k)) ⋉ ℝ^k` with `k ⊂ so(k)`, `k ≥ 1`.
    ScalarSplit { n: usize, sub: Riemannian },
    /// `g^{ℝ,1,h}`: `b`, `a` free.
    R1 { h: Riemannian },
    /// `g^{ℝ,2,h}`: `a = 0`.
    R2 { h: Riemannian },
    /// `g^{ℝ,3,h,φ}`: `a = φ(A)`.
    R3 { h: Riemannian, phi: Vec<Rational> },
    /// `g^{β,θ,1,h}`: `(β s + θ(A), s, A, X)`.
    BetaTheta1 {
        h: Riemannian,
        beta: Rational,
        theta: Vec<Rational>,
    },
    /// `g^{θ,2,h}`: `(θ(A), 0, A, X)`.
    Theta2 { h: Riemannian, theta: Vec<Rational> },
    /// `g^{θ,3,h,φ}`: `(θ(A), φ(A), A, X)`.
    Theta3 {
        h: Riemannian,
        theta: Vec<Rational>,
        phi: Vec<Rational>,
    },
    /// `g^{w,h} = ℝ(1, w/2, 0, 0) ⊕ h ⋉ ℝ^n`.
    Weighted { h: Riemannian, w: Rational },
    /// `g^k = ℝ(1,-1,0,0) ⊕ k ⋉ ℝ^{n-1}` with `k ⊂ so(n-1)`.
    Kernel { n: usize, sub: Riemannian },
}

impl WeylFamily {
    pub fn name(&self) -> String {
        match self {
            WeylFamily::LorentzSplit { n, k } => format!("R+so(1,{})+so({}), n={}", k + 1, *n as i64 - k, n),
            WeylFamily::BoostSplit { n, sub } => format!("R(1,-1)+{}+so({})|xR^{}, n={}", sub, n - sub.n(), sub.n(), n),
            WeylFamily::ScalarSplit { n, sub } => format!("R^2+{}+so({})|xR^{}, n={}", sub, n - sub.n(), sub.n(), n),
            WeylFamily::R1 { h } => format!("g^{{R,1,{}}}", h),
            WeylFamily::R2 { h } => format!("g^{{R,2,{}}}", h),
            WeylFamily::R3 { h, .. } => format!("g^{{R,3,{},phi}}", h),
            WeylFamily::BetaTheta1 { h, beta, .. } => format!("g^{{{},theta,1,{}}}", beta, h),
            WeylFamily::Theta2 { h, .. } => format!("g^{{theta,2,{}}}", h),
            WeylFamily::Theta3 { h, .. } => format!("g^{{theta,3,{},phi}}", h),
            WeylFamily::Weighted { h, w } => format!("g^{{{},{}}}", w, h),
            WeylFamily::Kernel { sub, .. } => format!("g^{{{}}}", sub),
        }
    }

    /// Transverse dimension `n` (the algebra lives in `co(1,n+1)`).
    pub fn n(&self) -> usize {
        match self {
            WeylFamily::LorentzSplit { n, .. }
            | WeylFamily::BoostSplit { n, .. }
            | WeylFamily::ScalarSplit { n, .. }
            | WeylFamily::Kernel { n, .. } => *n,
            WeylFamily::R1 { h }
            | WeylFamily::R2 { h }
            | WeylFamily::R3 { h, .. }
            | WeylFamily::BetaTheta1 { h, .. }
            | WeylFamily::Theta2 { h, .. }
            | WeylFamily::Theta3 { h, .. }
            | WeylFamily::Weighted { h, .. } => h.n(),
        }
    }

    /// Generators after validating every parameter constraint.
    pub fn generators(&self) -> Result<Vec<Generator>, CatalogError> {
        let n = self.n();
        let par = |c: CoElement| Generator::Parabolic(c);
        let translations = |m: usize| (0..m).map(move |i| par(CoElement::unit_translation(n, i)));
        let rotations = |gens: &[Matrix<Rational>]| -> Vec<Generator> {
            gens.iter()
                .map(|g| par(CoElement::rotation(g.clone()).expect("skew generator")))
                .collect()
        };
        let mut out = Vec::new();
        match self {
            WeylFamily::LorentzSplit { n, k } => {
                let (n, k) = (*n, *k);
                if k < -1 || k > n as i64 - 1 {
                    return Err(CatalogError::OutOfRange(format!(
                        "k = {} not in [-1, {}]",
                        k,
                        n as i64 - 1
                    )));
                }
                let dim = n + 2;
                // Orthonormal indices: e_- = 0, e_+ = 1, e_i = i + 1.
                let lorentz_end = (k + 2) as usize + 1;
                let first: Vec<usize> = if k == -1 { vec![0] } else { (0..lorentz_end).collect() };
                let second: Vec<usize> = if k == -1 {
                    (1..dim).collect()
                } else {
                    (lorentz_end..dim).collect()
                };
                out.push(Generator::General {
                    b: int(1),
                    bivector: Bivector::zero(dim),
                });
                for block in [&first, &second] {
                    for (a, &i) in block.iter().enumerate() {
                        for &j in &block[a + 1..] {
                            out.push(Generator::General {
                                b: int(0),
                                bivector: Bivector::basis(dim, i, j),
                            });
                        }
                    }
                }
            }
            WeylFamily::BoostSplit { n, sub } | WeylFamily::ScalarSplit { n, sub } => {
                let k = sub.n();
                let scalar = matches!(self, WeylFamily::ScalarSplit { .. });
                let lo = usize::from(scalar);
                if k < lo || k + 1 > *n {
                    return Err(CatalogError::OutOfRange(format!(
                        "k = {} not in [{}, {}]",
                        k,
                        lo,
                        n - 1
                    )));
                }
                if scalar {
                    out.push(par(CoElement::scalars(*n, int(1), int(0))));
                    out.push(par(CoElement::scalars(*n, int(0), int(1))));
                } else {
                    out.push(par(CoElement::scalars(*n, int(1), int(-1))));
                }
                for g in sub.generators() {
                    out.extend(rotations(&[embed_so(&g, *n, 0)]));
                }
                for i in k..*n {
                    for j in i + 1..*n {
                        out.extend(rotations(&[so_unit(*n, i, j)]));
                    }
                }
                out.extend(translations(k));
            }
            WeylFamily::R1 { h } => {
                out.push(par(CoElement::scalars(n, int(1), int(0))));
                out.push(par(CoElement::scalars(n, int(0), int(1))));
                out.extend(rotations(&h.generators()));
                out.extend(translations(n));
            }
            WeylFamily::R2 { h } => {
                out.push(par(CoElement::scalars(n, int(1), int(0))));
                out.extend(rotations(&h.generators()));
                out.extend(translations(n));
            }
            WeylFamily::R3 { h, phi } => {
                let gens = h.generators();
                check_character(&gens, phi, "phi")?;
                if phi.iter().all(|x| x.is_zero()) {
                    return Err(CatalogError::Constraint("phi must be nonzero".into()));
                }
                out.push(par(CoElement::scalars(n, int(1), int(0))));
                for (g, f) in gens.iter().zip(phi) {
                    out.push(par(
                        CoElement::new(int(0), f.clone(), g.clone(), vec![int(0); n]).expect("skew")
                    ));
                }
                out.extend(translations(n));
            }
            WeylFamily::BetaTheta1 { h, beta, theta } => {
                let gens = h.generators();
                check_character(&gens, theta, "theta")?;
                if beta.is_zero() && theta.iter().all(|x| x.is_zero()) {
                    return Err(CatalogError::Constraint("beta and theta cannot both vanish".into()));
                }
                out.push(par(CoElement::scalars(n, beta.clone(), int(1))));
                for (g, t) in gens.iter().zip(theta) {
                    out.push(par(
                        CoElement::new(t.clone(), int(0), g.clone(), vec![int(0); n]).expect("skew")
                    ));
                }
                out.extend(translations(n));
            }
            WeylFamily::Theta2 { h, theta } => {
                let gens = h.generators();
                check_character(&gens, theta, "theta")?;
                if theta.iter().all(|x| x.is_zero()) {
                    return Err(CatalogError::Constraint("theta must be nonzero".into()));
                }
                for (g, t) in gens.iter().zip(theta) {
                    out.push(par(
                        CoElement::new(t.clone(), int(0), g.clone(), vec![int(0); n]).expect("skew")
                    ));
                }
                out.extend(translations(n));
            }
            WeylFamily::Theta3 { h, theta, phi } => {
                let gens = h.generators();
                check_character(&gens, theta, "theta")?;
                check_character(&gens, phi, "phi")?;
                if theta.iter().all(|x| x.is_zero()) || phi.iter().all(|x| x.is_zero()) {
                    return Err(CatalogError::Constraint("theta and phi must both be nonzero".into()));
                }
                for ((g, t), f) in gens.iter().zip(theta).zip(phi) {
                    out.push(par(
                        CoElement::new(t.clone(), f.clone(), g.clone(), vec![int(0); n]).expect("skew")
                    ));
                }
                out.extend(translations(n));
            }
            WeylFamily::Weighted { h, w } => {
                out.push(par(CoElement::scalars(n, int(1), w / int(2))));
                out.extend(rotations(&h.generators()));
                out.extend(translations(n));
            }
            WeylFamily::Kernel { n, sub } => {
                if *n < 1 || sub.n() + 1 != *n {
                    return Err(CatalogError::OutOfRange(format!(
                        "subalgebra of so({}) needed for n = {}, got {}",
                        n.saturating_sub(1),
                        n,
                        sub
                    )));
                }
                out.push(par(CoElement::scalars(*n, int(1), int(-1))));
                for g in sub.generators() {
                    out.extend(rotations(&[embed_so(&g, *n, 0)]));
                }
                out.extend(translations(n - 1));
            }
        }
        Ok(out)
    }
}

/// Embed `A ∈ so(k)` into `so(n)` acting on coordinates `offset..offset+k`.
pub fn embed_so(a: &Matrix<Rational>, n: usize, offset: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(offset + i, offset + j, a.get(i, j).clone());
        }
    }
    m
}

/// Predicted dimension of parallel spinors for a family, given the dimension
/// of the annihilator of `h` (in `Δ_n`) or of `k` (in `Δ_{n-1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionPrediction {
    /// Count obtained from `Δ_n = Δ_{n-1} ⊗ ℂ²` (n even) or `Δ_n ≅ Δ_{n-1}` (n odd).
    pub consistent: usize,
    /// Count with the multiplicities exchanged between even and odd `n`.
    pub swapped: usize,
}

impl DimensionPrediction {
    pub fn parity_differs(&self) -> bool {
        self.consistent != self.swapped
    }
}

pub fn theorem41_dimension(family: &WeylFamily, annihilator_dim: usize) -> Option<DimensionPrediction> {
    match family {
        WeylFamily::Weighted { .. } => Some(DimensionPrediction {
            consistent: annihilator_dim,
            swapped: annihilator_dim,
        }),
        WeylFamily::Kernel { n, .. } => {
            let even = n % 2 == 0;
            Some(DimensionPrediction {
                consistent: if even { 2 } else { 1 } * annihilator_dim,
                swapped: if even { 1 } else { 2 } * annihilator_dim,
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_match_dimensions() {
        for h in [
            Riemannian::Su(2),
            Riemannian::Su(3),
            Riemannian::Sp(1),
            Riemannian::Sp(2),
            Riemannian::G2,
            Riemannian::Spin7,
            Riemannian::Full(5),
        ] {
            let gens = h.generators();
            assert_eq!(gens.len(), h.expected_rank(), "{}", h);
            assert_eq!(matrix_rank(&gens), h.expected_rank(), "{}", h);
        }
    }

    #[test]
    fn generators_are_skew_and_closed() {
        for h in [Riemannian::Su(3), Riemannian::Sp(2), Riemannian::G2] {
            let gens = h.generators();
            for g in &gens {
                assert_eq!(g.transpose(), g.scale(&int(-1)));
            }
            for a in &gens {
                for b in &gens {
                    assert!(coordinates_in(&gens, &a.commutator(b)).is_some(), "{}", h);
                }
            }
        }
    }

    #[test]
    fn descriptors_parse() {
        assert_eq!(Riemannian::parse("su(3)").unwrap(), Riemannian::Su(3));
        assert_eq!(Riemannian::parse("trivial(2)").unwrap(), Riemannian::Trivial(2));
        assert_eq!(Riemannian::parse("G2").unwrap(), Riemannian::G2);
        assert!(Riemannian::parse("e8").is_err());
        assert!(Riemannian::parse("su(0)").is_err());
    }

    #[test]
    fn kernel_family_example() {
        let fam = WeylFamily::Kernel {
            n: 3,
            sub: Riemannian::Trivial(2),
        };
        let gens = fam.generators().unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0], Generator::Parabolic(CoElement::scalars(3, int(1), int(-1))));
        assert_eq!(gens[1], Generator::Parabolic(CoElement::unit_translation(3, 0)));
        assert_eq!(gens[2], Generator::Parabolic(CoElement::unit_translation(3, 1)));
    }

    #[test]
    fn theta_must_vanish_on_derived_algebra() {
        let h = Riemannian::Su(2);
        let theta = vec![int(1), int(0), int(0)];
        let err = WeylFamily::Theta2 { h, theta }.generators().unwrap_err();
        assert_eq!(err, CatalogError::NotACharacter("theta"));
        // so(2) is abelian, any theta is a character.
        let ok = WeylFamily::Theta2 {
            h: Riemannian::Full(2),
            theta: vec![int(3)],
        };
        assert!(ok.generators().is_ok());
        let zero = WeylFamily::Theta2 {
            h: Riemannian::Full(2),
            theta: vec![int(0)],
        };
        assert!(matches!(zero.generators(), Err(CatalogError::Constraint(_))));
    }

    #[test]
    fn lorentz_split_ranges() {
        let ok = WeylFamily::LorentzSplit { n: 3, k: -1 }.generators().unwrap();
        // R + so(4) on e_+, e_1, e_2, e_3.
        assert_eq!(ok.len(), 1 + 6);
        assert!(WeylFamily::LorentzSplit { n: 3, k: 3 }.generators().is_err());
    }

    #[test]
    fn parity_rule() {
        let fam = |n| WeylFamily::Kernel {
            n,
            sub: Riemannian::Trivial(n - 1),
        };
        let p3 = theorem41_dimension(&fam(3), 2).unwrap();
        assert_eq!(p3.consistent, 2);
        let p4 = theorem41_dimension(&fam(4), 2).unwrap();
        assert_eq!(p4.consistent, 4);
        assert!(p4.parity_differs());
    }
}

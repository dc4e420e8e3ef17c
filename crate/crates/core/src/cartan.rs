//! Cartan data of the symmetrizable affine superalgebras, their
//! non-graded partners, and the bilinear form on `H*`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::linalg;
use crate::report::VerificationReport;
use crate::scalars::{int, rational};

pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("rank {n} out of supported range {min}..={max} for {family}")]
    RankOutOfRange { family: String, n: usize, min: usize, max: usize },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}: exceptional family, no partner")]
    NoPartner(String),
    #[error("{0} is not a super family of the transmutation list")]
    NotTransmutable(String),
    #[error("malformed algebra spec at line {line}, column {column}: {msg}")]
    Spec { line: usize, column: usize, msg: String },
    #[error("malformed algebra spec, field '{field}': {msg}")]
    SpecField { field: String, msg: String },
    #[error("the Λ0 coefficient is forced to {expected} by the labels, got {got}")]
    LevelMismatch { expected: String, got: String },
    #[error("the finite part of the Cartan matrix is singular")]
    Degenerate,
}

/// Catalog families: four super families and the non-graded partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `B^(1)(0,n)`, `n >= 1`.
    B1Super,
    /// `A^(2)(0,2n-1)`, `n >= 2`.
    A2Super,
    /// `C^(2)(n+1)`, `n >= 1`.
    C2Super,
    /// `A^(4)(0,2n)`, `n >= 1`.
    A4Super,
    /// `A^(2)_{2n}`, `n >= 1`.
    A2Twisted,
    /// `B^(1)_n`, `n >= 3`.
    B1,
    /// `C^(1)_2`.
    C1,
    /// `D^(2)_{n+1}`, `n >= 2`.
    D2,
    /// `A^(1)_1`.
    A1,
}

/// Catalog identifier: family plus the rank parameter `n` (`n + 1` nodes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogId {
    pub family: Family,
    pub n: usize,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::B1Super,
        Family::A2Super,
        Family::C2Super,
        Family::A4Super,
        Family::A2Twisted,
        Family::B1,
        Family::C1,
        Family::D2,
        Family::A1,
    ];

    pub fn is_super(self) -> bool {
        matches!(self, Family::B1Super | Family::A2Super | Family::C2Super | Family::A4Super)
    }

    /// Supported values of `n`.
    pub fn rank_range(self) -> (usize, usize) {
        match self {
            Family::B1Super | Family::C2Super | Family::A4Super | Family::A2Twisted => (1, MAX_RANK),
            Family::A2Super => (2, MAX_RANK),
            Family::B1 => (3, MAX_RANK),
            Family::C1 => (2, 2),
            Family::D2 => (2, MAX_RANK),
            Family::A1 => (1, 1),
        }
    }

    /// Conventional name pattern, e.g. `B1_0_{n}`.
    pub fn pattern(self) -> &'static str {
        match self {
            Family::B1Super => "B1_0_{n}",
            Family::A2Super => "A2_0_{2n-1}",
            Family::C2Super => "C2_{n+1}",
            Family::A4Super => "A4_0_{2n}",
            Family::A2Twisted => "A2_{2n}",
            Family::B1 => "B1_{n}",
            Family::C1 => "C1_2",
            Family::D2 => "D2_{n+1}",
            Family::A1 => "A1_1",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Family::B1Super => "B^(1)(0,n)",
            Family::A2Super => "A^(2)(0,2n-1)",
            Family::C2Super => "C^(2)(n+1)",
            Family::A4Super => "A^(4)(0,2n)",
            Family::A2Twisted => "A^(2)_2n",
            Family::B1 => "B^(1)_n",
            Family::C1 => "C^(1)_2",
            Family::D2 => "D^(2)_(n+1)",
            Family::A1 => "A^(1)_1",
        }
    }
}

impl CatalogId {
    pub fn new(family: Family, n: usize) -> Result<Self, CartanError> {
        let (min, max) = family.rank_range();
        if n < min || n > max {
            return Err(CartanError::RankOutOfRange {
                family: family.pattern().to_string(),
                n,
                min,
                max,
            });
        }
        Ok(CatalogId { family, n })
    }

    pub fn name(&self) -> String {
        let n = self.n;
        match self.family {
            Family::B1Super => format!("B1_0_{n}"),
            Family::A2Super => format!("A2_0_{}", 2 * n - 1),
            Family::C2Super => format!("C2_{}", n + 1),
            Family::A4Super => format!("A4_0_{}", 2 * n),
            Family::A2Twisted => format!("A2_{}", 2 * n),
            Family::B1 => format!("B1_{n}"),
            Family::C1 => "C1_2".to_string(),
            Family::D2 => format!("D2_{}", n + 1),
            Family::A1 => "A1_1".to_string(),
        }
    }

    /// Parses catalog names such as `B1_0_2`, `A2_0_3`, `C2_3`, `A2_4`.
    pub fn parse(name: &str) -> Result<Self, CartanError> {
        let unknown = || CartanError::UnknownAlgebra(name.to_string());
        let parts: Vec<&str> = name.split('_').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let (family, n) = match parts.as_slice() {
            ["B1", "0", k] => (Family::B1Super, num(k)?),
            ["A2", "0", k] => {
                let k = num(k)?;
                if k % 2 == 0 {
                    return Err(unknown());
                }
                (Family::A2Super, k.div_ceil(2))
            }
            ["A4", "0", k] => {
                let k = num(k)?;
                if k % 2 == 1 {
                    return Err(unknown());
                }
                (Family::A4Super, k / 2)
            }
            ["C2", k] => (Family::C2Super, num(k)?.checked_sub(1).ok_or_else(unknown)?),
            ["A2", k] => {
                let k = num(k)?;
                if k % 2 == 1 {
                    return Err(unknown());
                }
                (Family::A2Twisted, k / 2)
            }
            ["B1", k] => (Family::B1, num(k)?),
            ["C1", "2"] => (Family::C1, 2),
            ["D2", k] => (Family::D2, num(k)?.checked_sub(1).ok_or_else(unknown)?),
            ["A1", "1"] => (Family::A1, 1),
            _ => return Err(unknown()),
        };
        CatalogId::new(family, n)
    }

    /// The non-graded partner in the transmutation list.
    pub fn partner(&self) -> Result<CatalogId, CartanError> {
        let n = self.n;
        let family = match self.family {
            Family::B1Super => Family::A2Twisted,
            Family::A2Super if n == 2 => Family::C1,
            Family::A2Super => Family::B1,
            Family::C2Super if n == 1 => Family::A1,
            Family::C2Super => Family::D2,
            Family::A4Super => return Err(CartanError::NoPartner(self.name())),
            _ => return Err(CartanError::NotTransmutable(self.name())),
        };
        CatalogId::new(family, n)
    }
}

/// Cartan data `(A, Θ, marks, d, eps)` for `n + 1` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub name: String,
    pub id: Option<CatalogId>,
    pub matrix: Vec<Vec<i64>>,
    pub theta: BTreeSet<usize>,
    pub marks: Vec<i64>,
    /// `d_i = (α_i, α_i) / 2`.
    pub d: Vec<BigRational>,
    pub eps: Vec<i64>,
}

/// Simple roots in an orthonormal basis `e_1..e_n` plus a null `δ`:
/// `(δ coefficient, e coefficients)`.
type Realization = Vec<(i64, Vec<i64>)>;

fn unit(n: usize, k: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = c;
    v
}

fn chain(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v[k + 1] = -1;
    v
}

fn realization(family: Family, n: usize) -> Realization {
    let mut roots: Realization = Vec::new();
    match family {
        Family::B1Super | Family::A2Twisted => {
            roots.push((1, unit(n, 0, -2)));
        }
        Family::A2Super | Family::B1 | Family::C1 => {
            let mut a0 = vec![0; n];
            a0[0] = -1;
            a0[1] = -1;
            roots.push((1, a0));
        }
        Family::C2Super | Family::A4Super | Family::D2 | Family::A1 => {
            roots.push((1, unit(n, 0, -1)));
        }
    }
    for k in 0..n - 1 {
        roots.push((0, chain(n, k)));
    }
    roots.push((0, unit(n, n - 1, 1)));
    roots
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn catalog_theta(family: Family, n: usize) -> BTreeSet<usize> {
    match family {
        Family::B1Super | Family::A2Super | Family::A4Super => [n].into_iter().collect(),
        Family::C2Super => [0, n].into_iter().collect(),
        _ => BTreeSet::new(),
    }
}

/// Builds a catalog entry from its root realization.
pub fn catalog(id: CatalogId) -> AlgebraData {
    let n = id.n;
    let roots = realization(id.family, n);
    let gram: Vec<Vec<i64>> =
        roots.iter().map(|(_, a)| roots.iter().map(|(_, b)| dot(a, b)).collect()).collect();
    let matrix: Vec<Vec<i64>> = (0..=n)
        .map(|i| (0..=n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
        .collect();
    let d: Vec<BigRational> = (0..=n).map(|i| rational(gram[i][i], 2)).collect();
    let marks = null_marks(&matrix).expect("catalog matrices are affine");
    let eps = d.iter().map(eps_for).collect();
    AlgebraData { name: id.name(), id: Some(id), matrix, theta: catalog_theta(id.family, n), marks, d, eps }
}

pub fn catalog_by_name(name: &str) -> Result<AlgebraData, CartanError> {
    Ok(catalog(CatalogId::parse(name)?))
}

/// All catalog entries at every supported rank.
pub fn catalog_all() -> Vec<AlgebraData> {
    Family::ALL
        .iter()
        .flat_map(|&f| {
            let (min, max) = f.rank_range();
            (min..=max).map(move |n| catalog(CatalogId { family: f, n }))
        })
        .collect()
}

/// `eps_i` from `d_i`: 1 for `(α_i, α_i) ∈ {1, 2}`, 2 for `(α_i, α_i) = 4`.
pub fn eps_for(d: &BigRational) -> i64 {
    if *d == int(2) {
        2
    } else {
        1
    }
}

/// Primitive positive integer vector spanning the kernel of `A`, if the
/// kernel is one-dimensional and meets the positive orthant.
pub fn null_marks(matrix: &[Vec<i64>]) -> Option<Vec<i64>> {
    let size = matrix.len();
    let m: Vec<Vec<BigRational>> =
        matrix.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let profile = linalg::rank_profile(&m);
    if profile.rank + 1 != size {
        return None;
    }
    let free = (0..size).find(|c| !profile.pivot_cols.contains(c))?;
    let a: Vec<Vec<BigRational>> = profile
        .pivot_rows
        .iter()
        .map(|&r| profile.pivot_cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let b: Vec<Vec<BigRational>> =
        profile.pivot_rows.iter().map(|&r| vec![-m[r][free].clone()]).collect();
    let x = linalg::solve(&a, &b)?;
    let mut vec = vec![int(0); size];
    vec[free] = int(1);
    for (k, &c) in profile.pivot_cols.iter().enumerate() {
        vec[c] = x[k][0].clone();
    }
    let lcm = vec.iter().fold(num_bigint::BigInt::from(1), |acc, r| num_integer::lcm(acc, r.denom().clone()));
    let ints: Vec<num_bigint::BigInt> = vec.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    let sign = if ints.iter().any(|x| x.is_negative()) { -1 } else { 1 };
    let out: Vec<i64> = ints
        .iter()
        .map(|x| i64::try_from(x / &g).ok().map(|y| y * sign))
        .collect::<Option<Vec<_>>>()?;
    if out.iter().all(|&x| x > 0) {
        Some(out)
    } else {
        None
    }
}

impl AlgebraData {
    /// Number of nodes, `n + 1`.
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn rank_n(&self) -> usize {
        self.size() - 1
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.theta.contains(&i)
    }

    pub fn is_super(&self) -> bool {
        !self.theta.is_empty()
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn root_pairing(&self, i: usize, j: usize) -> BigRational {
        &self.d[i] * int(self.matrix[i][j])
    }

    /// Same Cartan data with every generator even.
    pub fn ungraded(&self, name: String, id: Option<CatalogId>) -> AlgebraData {
        AlgebraData { name, id, theta: BTreeSet::new(), ..self.clone() }
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: Some(self.name.clone()),
            matrix: self.matrix.clone(),
            theta: self.theta.iter().copied().collect(),
            marks: Some(self.marks.clone()),
            d: self.d.iter().map(ToString::to_string).collect(),
        }
    }

    /// Canonical JSON export; a deterministic rendering of the data.
    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("spec serializes")
    }
}

/// JSON schema for user-supplied Cartan data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: Vec<Vec<i64>>,
    pub theta: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<Vec<i64>>,
    pub d: Vec<String>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, CartanError> {
        serde_json::from_str(text).map_err(|e| {
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = e.to_string();
            CartanError::Spec {
                line: e.line(),
                column: e.column(),
                msg: msg.strip_suffix(&suffix).unwrap_or(&msg).to_string(),
            }
        })
    }

    /// Converts to `AlgebraData` without checking the algebraic conditions;
    /// only structural problems are errors. Missing marks are recomputed.
    pub fn into_data(self) -> Result<AlgebraData, CartanError> {
        let field = |f: &str, msg: String| CartanError::SpecField { field: f.to_string(), msg };
        let size = self.matrix.len();
        if size < 2 {
            return Err(field("matrix", "need at least two nodes".into()));
        }
        if let Some(r) = self.matrix.iter().position(|r| r.len() != size) {
            return Err(field("matrix", format!("row {r} has length {}, expected {size}", self.matrix[r].len())));
        }
        if let Some(&t) = self.theta.iter().find(|&&t| t >= size) {
            return Err(field("theta", format!("index {t} out of range")));
        }
        if self.d.len() != size {
            return Err(field("d", format!("expected {size} entries, got {}", self.d.len())));
        }
        let d = self
            .d
            .iter()
            .enumerate()
            .map(|(k, s)| {
                s.trim()
                    .parse::<BigRational>()
                    .map_err(|_| field("d", format!("entry {k}: '{s}' is not a rational")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let marks = match self.marks {
            Some(m) if m.len() != size => {
                return Err(field("marks", format!("expected {size} entries, got {}", m.len())))
            }
            Some(m) => m,
            None => null_marks(&self.matrix)
                .ok_or_else(|| field("marks", "matrix has no positive null vector to recompute marks".into()))?,
        };
        let eps = d.iter().map(eps_for).collect();
        Ok(AlgebraData {
            name: self.name.unwrap_or_else(|| "custom".to_string()),
            id: None,
            matrix: self.matrix,
            theta: self.theta.into_iter().collect(),
            marks,
            d,
            eps,
        })
    }
}

/// A failed structural condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

pub const COND_DIAGONAL: &str = "a_ii = 2";
pub const COND_OFFDIAG: &str = "a_ij <= 0 for i != j";
pub const COND_ZERO_PATTERN: &str = "a_ij = 0 iff a_ji = 0";
pub const COND_EVEN_ROWS: &str = "a_ij even for i in theta";
pub const COND_SYMMETRIZABLE: &str = "d_i a_ij = d_j a_ji";
pub const COND_MARKS: &str = "sum_j a_ij a_j = 0 with positive marks";
pub const COND_NORMALIZATION: &str = "(alpha_mu, alpha_mu) = 1 for mu in theta";
pub const COND_D_RANGE: &str = "d_i in {1/2, 1, 2}";
pub const COND_EPS: &str = "eps_i = 2 iff (alpha_i, alpha_i) = 4";

/// Every failed condition, in a fixed order.
pub fn check_conditions(data: &AlgebraData) -> Vec<ConditionFailure> {
    let a = &data.matrix;
    let size = data.size();
    let mut out = Vec::new();
    let mut push = |condition, indices: Vec<usize>, detail: String| {
        out.push(ConditionFailure { condition, indices, detail })
    };
    for i in 0..size {
        if a[i][i] != 2 {
            push(COND_DIAGONAL, vec![i, i], format!("a_{i}{i} = {}", a[i][i]));
        }
    }
    for i in 0..size {
        for j in 0..size {
            if i != j && a[i][j] > 0 {
                push(COND_OFFDIAG, vec![i, j], format!("a_{i}{j} = {}", a[i][j]));
            }
        }
    }
    for i in 0..size {
        for j in 0..size {
            if i != j && (a[i][j] == 0) != (a[j][i] == 0) {
                push(COND_ZERO_PATTERN, vec![i, j], format!("a_{i}{j} = {}, a_{j}{i} = {}", a[i][j], a[j][i]));
            }
        }
    }
    for &i in &data.theta {
        for j in 0..size {
            if a[i][j] % 2 != 0 {
                push(COND_EVEN_ROWS, vec![i, j], format!("a_{i}{j} = {} is odd", a[i][j]));
            }
        }
    }
    let half = rational(1, 2);
    for i in 0..size {
        let d = &data.d[i];
        if *d != half && *d != int(1) && *d != int(2) {
            push(COND_D_RANGE, vec![i], format!("d_{i} = {d}"));
        }
    }
    for i in 0..size {
        for j in i + 1..size {
            let lhs = &data.d[i] * int(a[i][j]);
            let rhs = &data.d[j] * int(a[j][i]);
            if lhs != rhs {
                push(COND_SYMMETRIZABLE, vec![i, j], format!("d_{i} a_{i}{j} = {lhs}, d_{j} a_{j}{i} = {rhs}"));
            }
        }
    }
    if data.marks.len() != size {
        push(COND_MARKS, vec![], format!("{} marks for {size} nodes", data.marks.len()));
    } else {
        for (i, &m) in data.marks.iter().enumerate() {
            if m <= 0 {
                push(COND_MARKS, vec![i], format!("a_{i} = {m} is not positive"));
            }
        }
        for i in 0..size {
            let s: i64 = (0..size).map(|j| a[i][j] * data.marks[j]).sum();
            if s != 0 {
                push(COND_MARKS, vec![i], format!("row {i} gives {s}"));
            }
        }
    }
    for &mu in &data.theta {
        if data.d[mu] != half {
            push(COND_NORMALIZATION, vec![mu], format!("(alpha_{mu}, alpha_{mu}) = {}", &data.d[mu] * int(2)));
        }
    }
    for i in 0..size {
        if data.eps.get(i) != Some(&eps_for(&data.d[i])) {
            push(COND_EPS, vec![i], format!("eps_{i} = {:?} with d_{i} = {}", data.eps.get(i), data.d[i]));
        }
    }
    out
}

/// Checks every structural condition and reports each failure.
pub fn validate(data: &AlgebraData) -> VerificationReport {
    let mut report = VerificationReport::new("validate", &data.name);
    let failures = check_conditions(data);
    if !failures.is_empty() {
        report.fail(json!({ "failures": failures }));
    }
    report
}

/// `c_Λ Λ0 + Σ c_i α_i`, stored as `[c_Λ, c_0, ..., c_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<BigRational>,
}

impl Weight {
    /// The zero weight for `n + 1` nodes.
    pub fn zero(size: usize) -> Self {
        Weight { coords: vec![int(0); size + 1] }
    }

    pub fn lambda0(size: usize) -> Self {
        let mut w = Self::zero(size);
        w.coords[0] = int(1);
        w
    }

    pub fn alpha(size: usize, i: usize) -> Self {
        let mut w = Self::zero(size);
        w.coords[i + 1] = int(1);
        w
    }

    /// `Σ c_i α_i` for an integer content vector.
    pub fn from_content(content: &[i64]) -> Self {
        let mut coords = vec![int(0)];
        coords.extend(content.iter().map(|&c| int(c)));
        Weight { coords }
    }

    pub fn level_coeff(&self) -> &BigRational {
        &self.coords[0]
    }

    pub fn alpha_coeff(&self, i: usize) -> &BigRational {
        &self.coords[i + 1]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Weight { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn check_dim(data: &AlgebraData, w: &Weight) -> Result<(), CartanError> {
    let expected = data.size() + 1;
    if w.coords.len() != expected {
        return Err(CartanError::DimensionMismatch { expected, got: w.coords.len() });
    }
    Ok(())
}

/// The invariant form: `(Λ0, Λ0) = 0`, `(Λ0, α_i) = δ_{i0} d_0`,
/// `(α_i, α_j) = d_i a_ij`.
pub fn pairing(data: &AlgebraData, a: &Weight, b: &Weight) -> Result<BigRational, CartanError> {
    check_dim(data, a)?;
    check_dim(data, b)?;
    let size = data.size();
    let mut total = int(0);
    let (la, lb) = (a.level_coeff(), b.level_coeff());
    if !la.is_zero() {
        total += la * b.alpha_coeff(0) * &data.d[0];
    }
    if !lb.is_zero() {
        total += lb * a.alpha_coeff(0) * &data.d[0];
    }
    for i in 0..size {
        let ai = a.alpha_coeff(i);
        if ai.is_zero() {
            continue;
        }
        for j in 0..size {
            let bj = b.alpha_coeff(j);
            if !bj.is_zero() && data.matrix[i][j] != 0 {
                total += ai * bj * data.root_pairing(i, j);
            }
        }
    }
    Ok(total)
}

/// `(λ, α_i)`.
pub fn pairing_alpha(data: &AlgebraData, w: &Weight, i: usize) -> BigRational {
    let size = data.size();
    let mut total = if i == 0 { w.level_coeff() * &data.d[0] } else { int(0) };
    for j in 0..size {
        let c = w.alpha_coeff(j);
        if !c.is_zero() && data.matrix[j][i] != 0 {
            total += c * data.root_pairing(j, i);
        }
    }
    total
}

/// `2(Λ, α_i) / (α_i, α_i)`.
pub fn dynkin_label(data: &AlgebraData, w: &Weight, i: usize) -> BigRational {
    pairing_alpha(data, w, i) / &data.d[i]
}

pub fn dynkin_labels(data: &AlgebraData, w: &Weight) -> Vec<BigRational> {
    (0..data.size()).map(|i| dynkin_label(data, w, i)).collect()
}

/// The `Λ0` coefficient forced by the labels: `Σ a_i d_i ℓ_i / (a_0 d_0)`.
pub fn forced_level(data: &AlgebraData, labels: &[BigRational]) -> BigRational {
    let num: BigRational =
        labels.iter().enumerate().map(|(i, l)| l * &data.d[i] * int(data.marks[i])).sum();
    num / (&data.d[0] * int(data.marks[0]))
}

/// The weight with the given Dynkin labels and zero `α_0` coordinate.
///
/// The `Λ0` coefficient is determined by the labels; a supplied value must
/// agree with it.
pub fn weight_from_labels(
    data: &AlgebraData,
    labels: &[BigRational],
    lambda0: Option<&BigRational>,
) -> Result<Weight, CartanError> {
    let size = data.size();
    if labels.len() != size {
        return Err(CartanError::DimensionMismatch { expected: size, got: labels.len() });
    }
    let level = forced_level(data, labels);
    if let Some(given) = lambda0 {
        if *given != level {
            return Err(CartanError::LevelMismatch { expected: level.to_string(), got: given.to_string() });
        }
    }
    let a: Vec<Vec<BigRational>> =
        (1..size).map(|i| (1..size).map(|j| int(data.matrix[i][j])).collect()).collect();
    let b: Vec<Vec<BigRational>> = (1..size).map(|i| vec![labels[i].clone()]).collect();
    let x = linalg::solve(&a, &b).ok_or(CartanError::Degenerate)?;
    let mut coords = vec![level, int(0)];
    coords.extend(x.into_iter().map(|r| r[0].clone()));
    Ok(Weight { coords })
}

pub fn labels_from_ints(labels: &[i64]) -> Vec<BigRational> {
    labels.iter().map(|&l| int(l)).collect()
}

/// Labels in `Z_{>=0}` at every node and in `2 Z_{>=0}` at odd nodes.
pub fn integrable_dominant(data: &AlgebraData, w: &Weight) -> bool {
    labels_integrable(data, &dynkin_labels(data, w))
}

pub fn labels_integrable(data: &AlgebraData, labels: &[BigRational]) -> bool {
    labels.iter().enumerate().all(|(i, l)| {
        l.is_integer() && !l.is_negative() && (!data.is_odd(i) || (l.to_integer() % 2u32).is_zero())
    })
}

/// Human-readable statement of the first violated integrability condition.
pub fn integrability_violation(data: &AlgebraData, labels: &[BigRational]) -> Option<String> {
    for (i, l) in labels.iter().enumerate() {
        if !l.is_integer() || l.is_negative() {
            return Some(format!("label {l} at node {i} is not a non-negative integer"));
        }
        if data.is_odd(i) && !(l.to_integer() % 2u32).is_zero() {
            return Some(format!(
                "label {l} at odd node {i} violates the even-label condition 2(Λ,α_i)/(α_i,α_i) ∈ 2Z_+"
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b01() -> AlgebraData {
        catalog_by_name("B1_0_1").unwrap()
    }

    #[test]
    fn b01_data() {
        let b = b01();
        assert_eq!(b.matrix, vec![vec![2, -1], vec![-4, 2]]);
        assert_eq!(b.theta, [1].into_iter().collect());
        assert_eq!(b.marks, vec![1, 2]);
        assert_eq!(b.d, vec![int(2), rational(1, 2)]);
        assert_eq!(b.eps, vec![2, 1]);
    }

    #[test]
    fn b02_data() {
        let b = catalog_by_name("B1_0_2").unwrap();
        assert_eq!(b.matrix, vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -2, 2]]);
        assert_eq!(b.marks, vec![1, 2, 2]);
    }

    #[test]
    fn partners_share_data() {
        let c = catalog_by_name("C2_2").unwrap();
        let p = catalog(c.id.unwrap().partner().unwrap());
        assert_eq!(p.name, "A1_1");
        assert_eq!((p.matrix.clone(), p.marks.clone(), p.d.clone()), (c.matrix.clone(), c.marks.clone(), c.d.clone()));
        assert!(p.theta.is_empty());
        let a = catalog_by_name("A2_0_3").unwrap();
        assert_eq!(catalog(a.id.unwrap().partner().unwrap()).name, "C1_2");
        assert!(matches!(CatalogId::parse("A4_0_2").unwrap().partner(), Err(CartanError::NoPartner(_))));
    }

    #[test]
    fn names_roundtrip() {
        for data in catalog_all() {
            assert_eq!(CatalogId::parse(&data.name).unwrap(), data.id.unwrap());
        }
        assert!(CatalogId::parse("B1_0_7").is_err());
        assert!(CatalogId::parse("X9").is_err());
    }

    #[test]
    fn catalog_validates() {
        for data in catalog_all() {
            assert!(check_conditions(&data).is_empty(), "{}: {:?}", data.name, check_conditions(&data));
        }
    }

    #[test]
    fn validation_failures_name_conditions() {
        let mut b = b01();
        b.matrix[1][0] = 0;
        assert!(check_conditions(&b).iter().any(|f| f.condition == COND_ZERO_PATTERN));
        let mut b = b01();
        b.marks = vec![1, 1];
        let fails = check_conditions(&b);
        assert!(fails.iter().any(|f| f.condition == COND_MARKS && f.detail == "row 0 gives 1"));
        let mut b = b01();
        b.matrix[1][1] = 1;
        assert!(check_conditions(&b).iter().any(|f| f.condition == COND_DIAGONAL));
    }

    #[test]
    fn pairing_examples() {
        let b = b01();
        let l0 = Weight::lambda0(2);
        assert_eq!(pairing(&b, &l0, &l0).unwrap(), int(0));
        assert_eq!(pairing(&b, &Weight::alpha(2, 0), &Weight::alpha(2, 1)).unwrap(), int(-2));
        assert_eq!(pairing(&b, &Weight::alpha(2, 1), &Weight::alpha(2, 1)).unwrap(), int(1));
        assert!(pairing(&b, &l0, &Weight::zero(3)).is_err());
    }

    #[test]
    fn label_examples() {
        let b = b01();
        assert_eq!(dynkin_labels(&b, &Weight::zero(2)), vec![int(0), int(0)]);
        assert_eq!(dynkin_labels(&b, &Weight::lambda0(2)), vec![int(1), int(0)]);
        assert_eq!(dynkin_label(&b, &Weight::alpha(2, 1), 1), int(2));
        assert!(labels_integrable(&b, &labels_from_ints(&[1, 2])));
        assert!(!labels_integrable(&b, &labels_from_ints(&[1, 1])));
    }

    #[test]
    fn weights_from_labels() {
        for data in catalog_all() {
            for seed in 0..4i64 {
                let labels: Vec<BigRational> =
                    (0..data.size() as i64).map(|i| int((seed * 7 + i * 3) % 4)).collect();
                let w = weight_from_labels(&data, &labels, None).unwrap();
                assert_eq!(dynkin_labels(&data, &w), labels, "{}", data.name);
                assert_eq!(*w.alpha_coeff(0), int(0));
            }
        }
        let b = b01();
        let err = weight_from_labels(&b, &labels_from_ints(&[1, 0]), Some(&int(2)));
        assert!(matches!(err, Err(CartanError::LevelMismatch { .. })));
    }

    #[test]
    fn spec_roundtrip() {
        for data in catalog_all() {
            let spec = AlgebraSpec::from_json(&data.export_json()).unwrap();
            let back = spec.into_data().unwrap();
            assert_eq!(back.matrix, data.matrix);
            assert_eq!(back.d, data.d);
            assert_eq!(back.theta, data.theta);
        }
        let err = AlgebraSpec::from_json("{\"matrix\": [[2]],\n \"theta\": 3}").unwrap_err();
        assert!(matches!(err, CartanError::Spec { line: 2, .. }));
    }
}

//! Finite-dimensional algebras with a G-grading and a graded involution,
//! stored as structure constants over a homogeneous basis.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{
    format_rational, is_zero_vec, kernel_basis, parse_rational, q, EchelonBasis, Rational, RationalMatrix,
};
use crate::group::{FiniteAbelianGroup, GroupElement};

/// Symmetric (`+`) or skew (`-`) part of a homogeneous component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A coordinate vector with respect to an algebra's basis.
pub type Vector = Vec<Rational>;

#[derive(Clone, Debug)]
pub struct GStarAlgebra {
    name: String,
    group: FiniteAbelianGroup,
    labels: Vec<String>,
    grading: Vec<GroupElement>,
    /// `table[i * dim + j]` lists `(k, c)` with `b_i b_j = sum c b_k`.
    table: Vec<Vec<(usize, Rational)>>,
    /// Column `j` holds the coordinates of `b_j^*`.
    involution: RationalMatrix,
    unit: Option<Vector>,
}

/// One violated axiom together with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    Grading { i: usize, j: usize, k: usize },
    InvolutionNotInvolutive { j: usize },
    InvolutionNotAntiMultiplicative { i: usize, j: usize },
    InvolutionDegree { j: usize },
    UnitLeft { i: usize },
    UnitRight { i: usize },
    UnitNotSymmetric,
    UnitDegree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            Violation::Grading { i, j, k } => write!(f, "product b{i}*b{j} has a b{k} component of the wrong degree"),
            Violation::InvolutionNotInvolutive { j } => {
                write!(f, "involution does not square to the identity on b{j}")
            }
            Violation::InvolutionNotAntiMultiplicative { i, j } => {
                write!(f, "(b{i} b{j})^* != b{j}^* b{i}^*")
            }
            Violation::InvolutionDegree { j } => {
                write!(f, "involution moves b{j} out of its homogeneous component")
            }
            Violation::UnitLeft { i } => write!(f, "unit * b{i} != b{i}"),
            Violation::UnitRight { i } => write!(f, "b{i} * unit != b{i}"),
            Violation::UnitNotSymmetric => write!(f, "unit is not symmetric"),
            Violation::UnitDegree => write!(f, "unit is not of degree 1"),
        }
    }
}

/// Outcome of [`GStarAlgebra::validate`]; empty means every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Spanning vectors of every nonzero `A_g^{+/-}`.
#[derive(Clone, Debug, Default)]
pub struct ComponentBasis {
    pub parts: BTreeMap<(GroupElement, Sign), Vec<Vector>>,
}

impl ComponentBasis {
    pub fn get(&self, g: &GroupElement, sign: Sign) -> &[Vector] {
        self.parts.get(&(g.clone(), sign)).map_or(&[], |v| v.as_slice())
    }
}

/// Splitting of a subspace `J` by left and right multiplication with an
/// idempotent `e`: `J_{ab}` collects elements with `e j = a j` and `j e = b j`.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub j00: Vec<Vector>,
    pub j10: Vec<Vector>,
    pub j01: Vec<Vector>,
    pub j11: Vec<Vector>,
}

impl PeirceDecomposition {
    /// The part `J_{ab}` for `a, b` in `{0, 1}`.
    pub fn part(&self, a: usize, b: usize) -> &[Vector] {
        match (a, b) {
            (0, 0) => &self.j00,
            (1, 0) => &self.j10,
            (0, 1) => &self.j01,
            _ => &self.j11,
        }
    }
}

impl GStarAlgebra {
    /// Assembles an algebra from raw data. Only shape is checked here; use
    /// [`validate`](Self::validate) for the algebra axioms.
    pub fn new(
        name: impl Into<String>,
        group: FiniteAbelianGroup,
        labels: Vec<String>,
        grading: Vec<GroupElement>,
        products: Vec<(usize, usize, usize, Rational)>,
        involution: RationalMatrix,
        unit: Option<Vector>,
    ) -> Result<Self> {
        let dim = labels.len();
        if grading.len() != dim {
            return Err(Error::Structural(format!("grading has {} entries for dimension {dim}", grading.len())));
        }
        for g in &grading {
            if !group.contains(g) {
                return Err(Error::Structural(format!("degree {g} is not in the group {group}")));
            }
        }
        if involution.rows() != dim || involution.cols() != dim {
            return Err(Error::Structural(format!(
                "involution is {}x{}, expected {dim}x{dim}",
                involution.rows(),
                involution.cols()
            )));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::Structural(format!("unit has length {}", u.len())));
            }
        }
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dim * dim];
        for (i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Structural(format!(
                    "product index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            *acc[i * dim + j].entry(k).or_insert_with(Rational::zero) += c;
        }
        let table = acc.into_iter().map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect()).collect();
        Ok(Self { name: name.into(), group, labels, grading, table, involution, unit })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.grading[i]
    }

    pub fn grading(&self) -> &[GroupElement] {
        &self.grading
    }

    pub fn involution(&self) -> &RationalMatrix {
        &self.involution
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    /// Nonzero structure constants of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Rational::zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.table[i * d + j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn star(&self, v: &[Rational]) -> Vector {
        self.involution.mul_vec(v).expect("vector length matches dimension")
    }

    /// Checks associativity, multiplicativity of the grading, the involution
    /// axioms and the unit, exhaustively on basis elements.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let gij = self.group.mul_unchecked(&self.grading[i], &self.grading[j]);
                for (k, _) in self.basis_product(i, j) {
                    if self.grading[*k] != gij {
                        violations.push(Violation::Grading { i, j, k: *k });
                    }
                }
            }
        }
        let basis: Vec<Vector> = (0..d).map(|i| self.basis_vector(i)).collect();
        let products: Vec<Vector> = (0..d * d).map(|ij| self.mul(&basis[ij / d], &basis[ij % d])).collect();
        'assoc: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul(&products[i * d + j], &basis[k]);
                    let right = self.mul(&basis[i], &products[j * d + k]);
                    if left != right {
                        violations.push(Violation::Associativity { i, j, k });
                        if violations.len() > 32 {
                            break 'assoc;
                        }
                    }
                }
            }
        }
        let stars: Vec<Vector> = (0..d).map(|j| self.involution.column(j)).collect();
        for (j, s) in stars.iter().enumerate() {
            if self.star(s) != basis[j] {
                violations.push(Violation::InvolutionNotInvolutive { j });
            }
            let moved = s.iter().enumerate().any(|(k, c)| !c.is_zero() && self.grading[k] != self.grading[j]);
            if moved {
                violations.push(Violation::InvolutionDegree { j });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.star(&products[i * d + j]);
                let rhs = self.mul(&stars[j], &stars[i]);
                if lhs != rhs {
                    violations.push(Violation::InvolutionNotAntiMultiplicative { i, j });
                }
            }
        }
        if let Some(u) = &self.unit {
            for (i, b) in basis.iter().enumerate() {
                if &self.mul(u, b) != b {
                    violations.push(Violation::UnitLeft { i });
                }
                if &self.mul(b, u) != b {
                    violations.push(Violation::UnitRight { i });
                }
            }
            if &self.star(u) != u {
                violations.push(Violation::UnitNotSymmetric);
            }
            let id = self.group.identity();
            if u.iter().enumerate().any(|(k, c)| !c.is_zero() && self.grading[k] != id) {
                violations.push(Violation::UnitDegree);
            }
        }
        ValidationReport { violations }
    }

    /// Validates and turns failures into an error.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidAlgebra(format!("{}: {}", self.name, report.to_string().trim_end())))
        }
    }

    fn block(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.grading[i] == g).collect()
    }

    /// Basis of `A_g^{sign}`: the `sign`-eigenspace of the involution on the
    /// degree-`g` coordinate block.
    pub fn component_basis(&self, g: &GroupElement, sign: Sign) -> Vec<Vector> {
        let block = self.block(g);
        if block.is_empty() {
            return Vec::new();
        }
        let s = q(sign.value());
        let n = block.len();
        let mut m = RationalMatrix::zeros(n, n);
        for (a, &i) in block.iter().enumerate() {
            for (b, &j) in block.iter().enumerate() {
                let mut x = self.involution[(i, j)].clone();
                if a == b {
                    x -= &s;
                }
                m[(a, b)] = x;
            }
        }
        kernel_basis(&m)
            .into_iter()
            .map(|local| {
                let mut v = self.zero_vector();
                for (a, &i) in block.iter().enumerate() {
                    v[i] = local[a].clone();
                }
                v
            })
            .collect()
    }

    pub fn components(&self) -> ComponentBasis {
        let mut parts = BTreeMap::new();
        for g in self.group.all_elements() {
            for sign in Sign::BOTH {
                let basis = self.component_basis(&g, sign);
                if !basis.is_empty() {
                    parts.insert((g.clone(), sign), basis);
                }
            }
        }
        ComponentBasis { parts }
    }

    /// Degrees with a nonzero homogeneous component, in group order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.group.all_elements().into_iter().filter(|g| self.grading.contains(g)).collect()
    }

    /// Block-diagonal sum. The result carries no unit.
    pub fn direct_sum(&self, other: &GStarAlgebra) -> Result<GStarAlgebra> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("cannot add algebras over {} and {}", self.group, other.group)));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{}.{}", self.name, l))
            .chain(other.labels.iter().map(|l| format!("{}.{}", other.name, l)))
            .collect();
        let grading = self.grading.iter().chain(&other.grading).cloned().collect();
        let mut products = Vec::new();
        for i in 0..d1 {
            for j in 0..d1 {
                for (k, c) in self.basis_product(i, j) {
                    products.push((i, j, *k, c.clone()));
                }
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                for (k, c) in other.basis_product(i, j) {
                    products.push((d1 + i, d1 + j, d1 + k, c.clone()));
                }
            }
        }
        let mut inv = RationalMatrix::zeros(d, d);
        for i in 0..d1 {
            for j in 0..d1 {
                inv[(i, j)] = self.involution[(i, j)].clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                inv[(d1 + i, d1 + j)] = other.involution[(i, j)].clone();
            }
        }
        GStarAlgebra::new(
            format!("{}+{}", self.name, other.name),
            self.group.clone(),
            labels,
            grading,
            products,
            inv,
            None,
        )
    }

    /// Left multiplication by `x` as a matrix (column `j` is `x b_j`).
    pub fn left_regular(&self, x: &[Rational]) -> RationalMatrix {
        let d = self.dim();
        let mut m = RationalMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(x, &self.basis_vector(j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Jacobson radical via the trace form `(x, y) -> tr(L_{xy})`, whose
    /// kernel is the radical in characteristic zero.
    pub fn radical(&self) -> Vec<Vector> {
        let d = self.dim();
        let traces: Vec<Rational> = (0..d)
            .map(|k| {
                let l = self.left_regular(&self.basis_vector(k));
                (0..d).fold(Rational::zero(), |acc, i| acc + &l[(i, i)])
            })
            .collect();
        let mut form = RationalMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut t = Rational::zero();
                for (k, c) in self.basis_product(i, j) {
                    t += c * &traces[*k];
                }
                form[(i, j)] = t;
            }
        }
        kernel_basis(&form)
    }

    /// Peirce decomposition of `j_space` (the radical when `None`) relative to
    /// the idempotent `e`.
    pub fn peirce_decompose(&self, e: &[Rational], j_space: Option<&[Vector]>) -> Result<PeirceDecomposition> {
        if e.len() != self.dim() {
            return Err(Error::Structural("idempotent has wrong length".into()));
        }
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent);
        }
        let owned;
        let span = match j_space {
            Some(s) => s,
            None => {
                owned = self.radical();
                &owned
            }
        };
        let d = self.dim();
        let mut parts = [EchelonBasis::new(d), EchelonBasis::new(d), EchelonBasis::new(d), EchelonBasis::new(d)];
        for j in span {
            let ej = self.mul(e, j);
            let je = self.mul(j, e);
            let eje = self.mul(&ej, e);
            let sub = |a: &Vector, b: &Vector| -> Vector { a.iter().zip(b).map(|(x, y)| x - y).collect() };
            let j11 = eje.clone();
            let j10 = sub(&ej, &eje);
            let j01 = sub(&je, &eje);
            let j00: Vector = j.iter().zip(&ej).zip(&je).zip(&eje).map(|(((a, b), c), x)| a - b - c + x).collect();
            parts[0].insert(j00);
            parts[1].insert(j10);
            parts[2].insert(j01);
            parts[3].insert(j11);
        }
        let [p00, p10, p01, p11] = parts;
        Ok(PeirceDecomposition {
            j00: p00.vectors().to_vec(),
            j10: p10.vectors().to_vec(),
            j01: p01.vectors().to_vec(),
            j11: p11.vectors().to_vec(),
        })
    }

    /// Smallest `m` with `x^m = 0`, searched up to `dim + 1`.
    pub fn nilpotency_index(&self, x: &[Rational]) -> Option<usize> {
        let mut p = x.to_vec();
        for m in 1..=self.dim() + 1 {
            if is_zero_vec(&p) {
                return Some(m);
            }
            p = self.mul(&p, x);
        }
        None
    }

    pub fn to_file(&self) -> AlgebraFile {
        let d = self.dim();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    products.push((i, j, *k, format_rational(c)));
                }
            }
        }
        AlgebraFile {
            name: self.name.clone(),
            group: self.group.cyclic_orders().to_vec(),
            dim: d,
            basis: self.labels.clone(),
            grading: self.grading.iter().map(|g| g.exponents().to_vec()).collect(),
            involution: (0..d).map(|i| self.involution.row(i).iter().map(format_rational).collect()).collect(),
            products,
            unit: self.unit.as_ref().map(|u| u.iter().map(format_rational).collect()),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let group = FiniteAbelianGroup::new(file.group.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let d = file.dim;
        if file.basis.len() != d {
            return Err(Error::Parse(format!("basis has {} labels for dim {d}", file.basis.len())));
        }
        let grading = file
            .grading
            .iter()
            .map(|e| {
                let exps: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                let g = group.element(&exps).map_err(|e| Error::Parse(e.to_string()))?;
                if g.exponents() != e.as_slice() {
                    return Err(Error::Parse(format!("degree {e:?} is not reduced")));
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        if file.involution.len() != d || file.involution.iter().any(|r| r.len() != d) {
            return Err(Error::Parse(format!("involution must be {d}x{d}")));
        }
        let rows = file
            .involution
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let involution = RationalMatrix::from_rows(d, &rows)?;
        let products = file
            .products
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let unit =
            file.unit.as_ref().map(|u| u.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).transpose()?;
        GStarAlgebra::new(file.name.clone(), group, file.basis.clone(), grading, products, involution, unit)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra file serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
        Self::from_file(&file)
    }
}

/// On-disk interchange form of an algebra. Indices are 0-based; rationals
/// are `"p/q"` or `"p"`; `involution[i][j]` is the `b_i` coordinate of `b_j^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub group: Vec<u32>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub grading: Vec<Vec<u32>>,
    pub involution: Vec<Vec<String>>,
    #[serde(default)]
    pub products: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

/// The one-dimensional algebra `F` with trivial grading and involution.
pub fn field(group: &FiniteAbelianGroup) -> GStarAlgebra {
    GStarAlgebra::new(
        "F",
        group.clone(),
        vec!["1".into()],
        vec![group.identity()],
        vec![(0, 0, 0, q(1))],
        RationalMatrix::identity(1),
        Some(vec![q(1)]),
    )
    .expect("field is well formed")
}

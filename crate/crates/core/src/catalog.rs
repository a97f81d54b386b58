//! Constructors for the named (G,*)-algebras: Grassmann algebras with the
//! involutions psi/tau/gamma, commutative chains `C_k`, group algebras,
//! reflection-involution subalgebras of upper triangular matrices
//! (`M`, `N_k`, `U_k`, `A_k`) and the four-dimensional algebra `W`.
//!
//! Matrix families are built from explicit matrix spans: structure constants
//! come from multiplying the matrices and solving back into the span, so a
//! span that is not closed is rejected instead of silently truncated.

use std::fmt;

use num::{One, Zero};

use crate::algebra::{field, GStarAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{q, solve_in_span, Rational, RationalMatrix};
use crate::group::{FiniteAbelianGroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrassmannInvolution {
    /// `e_i -> e_i`
    Psi,
    /// `e_i -> -e_i`
    Tau,
    /// `e_i -> (-1)^i e_i`
    Gamma,
}

impl GrassmannInvolution {
    pub const ALL: [GrassmannInvolution; 3] = [Self::Psi, Self::Tau, Self::Gamma];

    fn generator_sign(self, i: usize) -> i64 {
        match self {
            Self::Psi => 1,
            Self::Tau => -1,
            Self::Gamma => {
                if i.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Psi => "psi",
            Self::Tau => "tau",
            Self::Gamma => "gamma",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainVariant {
    /// `C_k`: trivial grading, trivial involution.
    Plain,
    /// `C_{k,*}`: trivial grading, `E^i -> (-1)^i E^i`.
    Star,
    /// `C_k^g`: grading from `(1, g, ..., g^{k-1})`, trivial involution.
    Graded,
    /// `C_{k,*}^g`.
    GradedStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupAlgebraVariant {
    /// `FC_p` graded by `<h>`, trivial involution.
    Fcp,
    /// `(FC_2)_*`: trivial grading, `h -> -h`.
    Fc2Star,
    /// `(FC_2)^#`: graded by `<h>`, `h -> -h`.
    Fc2Sharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectionFamily {
    M,
    N,
    U,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WInvolution {
    Nu1,
    Nu2,
    Nu3,
}

impl WInvolution {
    pub const ALL: [WInvolution; 3] = [Self::Nu1, Self::Nu2, Self::Nu3];

    /// Signs on `(1, u, v, w)`.
    fn signs(self) -> [i64; 4] {
        match self {
            Self::Nu1 => [1, 1, 1, 1],
            Self::Nu2 => [1, -1, -1, 1],
            Self::Nu3 => [1, -1, 1, -1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Nu1 => "nu1",
            Self::Nu2 => "nu2",
            Self::Nu3 => "nu3",
        }
    }
}

fn param_err(entry: &str, reason: impl Into<String>) -> Error {
    Error::Parameter { entry: entry.to_string(), reason: reason.into() }
}

fn check_in_group(entry: &str, group: &FiniteAbelianGroup, g: &GroupElement) -> Result<()> {
    if group.contains(g) {
        Ok(())
    } else {
        Err(param_err(entry, format!("{g} is not an element of the group {group}")))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Finite-dimensional Grassmann algebra on `k` anticommuting generators with
/// the given generator degrees.
pub fn grassmann(
    group: &FiniteAbelianGroup,
    k: usize,
    degrees: &[GroupElement],
    involution: GrassmannInvolution,
) -> Result<GStarAlgebra> {
    let entry = format!("G{k}");
    if k < 2 {
        return Err(param_err(&entry, "needs k >= 2"));
    }
    if degrees.len() != k {
        return Err(param_err(&entry, format!("needs {k} generator degrees, got {}", degrees.len())));
    }
    for g in degrees {
        check_in_group(&entry, group, g)?;
    }
    // square-free monomials by size, then lexicographically
    let mut subsets: Vec<u32> = (0..1u32 << k).collect();
    subsets.sort_by_key(|&s| {
        let bits: Vec<usize> = (0..k).filter(|i| s >> i & 1 == 1).collect();
        (bits.len(), bits)
    });
    let index_of = |s: u32| subsets.iter().position(|&t| t == s).expect("subset present");
    let labels = subsets
        .iter()
        .map(|&s| {
            if s == 0 {
                "1".to_string()
            } else {
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
            }
        })
        .collect();
    let grading = subsets
        .iter()
        .map(|&s| {
            (0..k).filter(|i| s >> i & 1 == 1).fold(group.identity(), |acc, i| group.mul_unchecked(&acc, &degrees[i]))
        })
        .collect();
    let mut products = Vec::new();
    for (a, &s) in subsets.iter().enumerate() {
        for (b, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // sign of merging: number of pairs (i in s, j in t) with i > j
            let inversions: u32 =
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| (t & ((1u32 << i) - 1)).count_ones()).sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            products.push((a, b, index_of(s | t), q(sign)));
        }
    }
    let d = subsets.len();
    let mut inv = RationalMatrix::zeros(d, d);
    for (a, &s) in subsets.iter().enumerate() {
        let r = s.count_ones() as i64;
        let gens: i64 = (0..k).filter(|i| s >> i & 1 == 1).map(|i| involution.generator_sign(i + 1)).product();
        // reversing r anticommuting generators costs (-1)^{r(r-1)/2}
        let rev = if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
        inv[(a, a)] = q(gens * rev);
    }
    let mut unit = vec![Rational::zero(); d];
    unit[0] = Rational::one();
    GStarAlgebra::new(format!("G{k},{}", involution.name()), group.clone(), labels, grading, products, inv, Some(unit))?
        .validated()
}

/// `G_{2,*}^{g,h}`: generators `e_1` of degree `g` and `e_2` of degree `h`.
pub fn grassmann2(
    group: &FiniteAbelianGroup,
    g: &GroupElement,
    h: &GroupElement,
    involution: GrassmannInvolution,
) -> Result<GStarAlgebra> {
    Ok(grassmann(group, 2, &[g.clone(), h.clone()], involution)?.with_name(format!("G2,{}^{g},{h}", involution.name())))
}

type Mat = Vec<Rational>;

fn unit_matrix(m: usize, entries: &[(usize, usize, i64)]) -> Mat {
    let mut a = vec![Rational::zero(); m * m];
    for &(r, c, v) in entries {
        a[(r - 1) * m + (c - 1)] += q(v);
    }
    a
}

fn mat_mul(m: usize, a: &Mat, b: &Mat) -> Mat {
    let mut out = vec![Rational::zero(); m * m];
    for i in 0..m {
        for k in 0..m {
            let x = &a[i * m + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                let y = &b[k * m + j];
                if !y.is_zero() {
                    out[i * m + j] += x * y;
                }
            }
        }
    }
    out
}

/// Reflection `e_{ij} -> e_{m-j+1, m-i+1}`.
fn reflect(m: usize, a: &Mat) -> Mat {
    let mut out = vec![Rational::zero(); m * m];
    for i in 0..m {
        for j in 0..m {
            out[(m - 1 - j) * m + (m - 1 - i)] = a[i * m + j].clone();
        }
    }
    out
}

enum MatrixInvolution {
    Reflection,
    /// Basis vector `i` is sent to `signs[i]` times itself.
    Diagonal(Vec<i64>),
}

/// Subalgebra spanned by `basis` inside `m x m` matrices, with the elementary
/// grading from `tuple` (trivial grading when `None`).
fn matrix_algebra(
    name: &str,
    group: &FiniteAbelianGroup,
    m: usize,
    basis: Vec<(String, Mat)>,
    tuple: Option<Vec<GroupElement>>,
    involution: MatrixInvolution,
) -> Result<GStarAlgebra> {
    let d = basis.len();
    let span_rows: Vec<Vec<Rational>> = basis.iter().map(|(_, a)| a.clone()).collect();
    let span = RationalMatrix::from_rows(m * m, &span_rows)?;
    let express = |a: &Mat, what: &str| -> Result<Vec<Rational>> {
        solve_in_span(&span, a)?.ok_or_else(|| param_err(name, format!("span is not closed: {what} leaves it")))
    };
    let mut products = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let p = mat_mul(m, &basis[i].1, &basis[j].1);
            let coeffs = express(&p, &format!("{} * {}", basis[i].0, basis[j].0))?;
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    products.push((i, j, k, c));
                }
            }
        }
    }
    let grading = basis
        .iter()
        .map(|(label, a)| {
            let Some(t) = &tuple else { return Ok(group.identity()) };
            let mut deg: Option<GroupElement> = None;
            for r in 0..m {
                for c in 0..m {
                    if a[r * m + c].is_zero() {
                        continue;
                    }
                    let g = group.mul_unchecked(&group.inverse(&t[r]), &t[c]);
                    match &deg {
                        None => deg = Some(g),
                        Some(prev) if *prev != g => return Err(param_err(name, format!("{label} is not homogeneous"))),
                        _ => {}
                    }
                }
            }
            Ok(deg.unwrap_or_else(|| group.identity()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut inv = RationalMatrix::zeros(d, d);
    for j in 0..d {
        let image = match &involution {
            MatrixInvolution::Reflection => express(&reflect(m, &basis[j].1), &format!("{}^*", basis[j].0))?,
            MatrixInvolution::Diagonal(signs) => {
                let mut v = vec![Rational::zero(); d];
                v[j] = q(signs[j]);
                v
            }
        };
        for (i, c) in image.into_iter().enumerate() {
            inv[(i, j)] = c;
        }
    }
    let identity: Vec<(usize, usize, i64)> = (1..=m).map(|i| (i, i, 1)).collect();
    let unit = solve_in_span(&span, &unit_matrix(m, &identity))?;
    let labels = basis.into_iter().map(|(l, _)| l).collect();
    GStarAlgebra::new(name, group.clone(), labels, grading, products, inv, unit)?.validated()
}

fn powers_of(group: &FiniteAbelianGroup, g: &GroupElement, k: usize) -> Vec<GroupElement> {
    (0..k).map(|i| group.pow(g, i as u64)).collect()
}

/// `C_k`, `C_{k,*}`, `C_k^g`, `C_{k,*}^g` inside `UT_k`, spanned by
/// `I, E, ..., E^{k-1}` with `E = sum e_{i,i+1}`.
pub fn commutative_chain(
    group: &FiniteAbelianGroup,
    k: usize,
    variant: ChainVariant,
    g: Option<&GroupElement>,
) -> Result<GStarAlgebra> {
    let (entry, graded, star) = match variant {
        ChainVariant::Plain => (format!("C{k}"), false, false),
        ChainVariant::Star => (format!("C{k},*"), false, true),
        ChainVariant::Graded => (format!("C{k}^g"), true, false),
        ChainVariant::GradedStar => (format!("C{k},*^g"), true, true),
    };
    if k < 2 {
        return Err(param_err(&entry, "needs k >= 2"));
    }
    let tuple = if graded {
        let g = g.ok_or_else(|| param_err(&entry, "needs a group element g"))?;
        check_in_group(&entry, group, g)?;
        if group.is_identity(g) {
            return Err(param_err(&entry, "needs g != 1"));
        }
        Some(powers_of(group, g, k))
    } else {
        None
    };
    let e1 = unit_matrix(k, &(1..k).map(|i| (i, i + 1, 1)).collect::<Vec<_>>());
    let mut basis = vec![("I".to_string(), unit_matrix(k, &(1..=k).map(|i| (i, i, 1)).collect::<Vec<_>>()))];
    let mut power = e1.clone();
    for i in 1..k {
        basis.push((if i == 1 { "E".into() } else { format!("E^{i}") }, power.clone()));
        power = mat_mul(k, &power, &e1);
    }
    let signs = (0..k).map(|i| if star && i % 2 == 1 { -1 } else { 1 }).collect();
    let name = match (graded, g) {
        (true, Some(g)) => format!("{entry}={g}"),
        _ => entry,
    };
    matrix_algebra(&name, group, k, basis, tuple, MatrixInvolution::Diagonal(signs))
}

/// Group algebras `FC_p`, `(FC_2)_*` and `(FC_2)^#`.
pub fn group_algebra(
    group: &FiniteAbelianGroup,
    variant: GroupAlgebraVariant,
    h: Option<&GroupElement>,
) -> Result<GStarAlgebra> {
    let entry = match variant {
        GroupAlgebraVariant::Fcp => "FCp",
        GroupAlgebraVariant::Fc2Star => "(FC2)_*",
        GroupAlgebraVariant::Fc2Sharp => "(FC2)^#",
    };
    let (p, graded_by) = match variant {
        GroupAlgebraVariant::Fc2Star => (2usize, None),
        GroupAlgebraVariant::Fcp | GroupAlgebraVariant::Fc2Sharp => {
            let h = h.ok_or_else(|| param_err(entry, "needs a group element h"))?;
            check_in_group(entry, group, h)?;
            let order = group.element_order(h);
            if variant == GroupAlgebraVariant::Fc2Sharp && order != 2 {
                return Err(param_err(entry, format!("needs |h| = 2, got |h| = {order}")));
            }
            if !is_prime(order) {
                return Err(param_err(entry, format!("needs |h| prime, got |h| = {order}")));
            }
            (order as usize, Some(h.clone()))
        }
    };
    let labels = (0..p)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "h".to_string(),
            _ => format!("h^{i}"),
        })
        .collect();
    let grading = (0..p)
        .map(|i| match &graded_by {
            Some(h) => group.pow(h, i as u64),
            None => group.identity(),
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..p {
        for j in 0..p {
            products.push((i, j, (i + j) % p, q(1)));
        }
    }
    let mut inv = RationalMatrix::identity(p);
    if variant != GroupAlgebraVariant::Fcp {
        inv[(1, 1)] = q(-1);
    }
    let mut unit = vec![Rational::zero(); p];
    unit[0] = Rational::one();
    let name = match (variant, &graded_by) {
        (GroupAlgebraVariant::Fcp, Some(h)) => format!("FC{p}^{h}"),
        (GroupAlgebraVariant::Fc2Sharp, Some(h)) => format!("(FC2)^#{h}"),
        _ => entry.to_string(),
    };
    GStarAlgebra::new(name, group.clone(), labels, grading, products, inv, Some(unit))?.validated()
}

/// Reflection-involution subalgebras of upper triangular matrices: `M` (4x4)
/// and `N_k`, `U_k`, `A_k` (inside `UT_{2k}`). With `graded`, the grading is
/// elementary, induced by `(1, g, 1, g)` for `M` and by
/// `(1, g x (k-1), 1 x (k-1), g)` for the others.
pub fn reflection_family(
    group: &FiniteAbelianGroup,
    k: usize,
    family: ReflectionFamily,
    graded: bool,
    g: Option<&GroupElement>,
) -> Result<GStarAlgebra> {
    let base = match family {
        ReflectionFamily::M => "M".to_string(),
        ReflectionFamily::N => format!("N{k}"),
        ReflectionFamily::U => format!("U{k}"),
        ReflectionFamily::A => format!("A{k}"),
    };
    let entry = if graded { format!("{base}^g") } else { format!("{base}^*") };
    let g = if graded {
        let g = g.ok_or_else(|| param_err(&entry, "needs a group element g"))?;
        check_in_group(&entry, group, g)?;
        Some(g.clone())
    } else {
        None
    };
    if family == ReflectionFamily::M {
        let basis = vec![
            ("e11+e44".to_string(), unit_matrix(4, &[(1, 1, 1), (4, 4, 1)])),
            ("e22+e33".to_string(), unit_matrix(4, &[(2, 2, 1), (3, 3, 1)])),
            ("e12".to_string(), unit_matrix(4, &[(1, 2, 1)])),
            ("e34".to_string(), unit_matrix(4, &[(3, 4, 1)])),
        ];
        let tuple = g.as_ref().map(|g| vec![group.identity(), g.clone(), group.identity(), g.clone()]);
        let name = match &g {
            Some(g) => format!("M^{g}"),
            None => "M".to_string(),
        };
        return matrix_algebra(&name, group, 4, basis, tuple, MatrixInvolution::Reflection);
    }
    if k < 2 {
        return Err(param_err(&entry, "needs k >= 2"));
    }
    if let Some(g) = &g {
        if group.is_identity(g) {
            return Err(param_err(&entry, "needs g != 1"));
        }
    }
    let m = 2 * k;
    // E = sum_{i=2}^{k-1} e_{i,i+1} + e_{2k-i,2k-i+1}
    let mut e_entries = Vec::new();
    for i in 2..k {
        e_entries.push((i, i + 1, 1));
        e_entries.push((m - i, m - i + 1, 1));
    }
    let e = unit_matrix(m, &e_entries);
    let mut basis: Vec<(String, Mat)> = Vec::new();
    match family {
        ReflectionFamily::A => {
            basis.push((format!("e11+e{m}{m}"), unit_matrix(m, &[(1, 1, 1), (m, m, 1)])));
        }
        _ => {
            basis.push(("I".into(), unit_matrix(m, &(1..=m).map(|i| (i, i, 1)).collect::<Vec<_>>())));
        }
    }
    let mut power = e.clone();
    for i in 1..=k.saturating_sub(2) {
        basis.push((if i == 1 { "E".into() } else { format!("E^{i}") }, power.clone()));
        power = mat_mul(m, &power, &e);
    }
    let label = |r: usize, c: usize| format!("e{r},{c}");
    match family {
        ReflectionFamily::A => {
            for j in 2..=k {
                basis.push((label(1, j), unit_matrix(m, &[(1, j, 1)])));
            }
            for i in k + 1..m {
                basis.push((label(i, m), unit_matrix(m, &[(i, m, 1)])));
            }
        }
        ReflectionFamily::N | ReflectionFamily::U => {
            let s = if family == ReflectionFamily::N { -1 } else { 1 };
            let op = if s < 0 { "-" } else { "+" };
            basis
                .push((format!("{}{op}{}", label(1, 2), label(m - 1, m)), unit_matrix(m, &[(1, 2, 1), (m - 1, m, s)])));
            for j in 3..=k {
                basis.push((label(1, j), unit_matrix(m, &[(1, j, 1)])));
            }
            for i in k + 1..m - 1 {
                basis.push((label(i, m), unit_matrix(m, &[(i, m, 1)])));
            }
        }
        ReflectionFamily::M => unreachable!(),
    }
    let tuple = g.as_ref().map(|g| {
        let mut t = vec![group.identity()];
        t.extend(std::iter::repeat_n(g.clone(), k - 1));
        t.extend(std::iter::repeat_n(group.identity(), k - 1));
        t.push(g.clone());
        t
    });
    let name = match &g {
        Some(g) => format!("{base}^{g}"),
        None => format!("{base}^*"),
    };
    matrix_algebra(&name, group, m, basis, tuple, MatrixInvolution::Reflection)
}

/// `W = span{1, u = e12+e34, v = e13+e24, w = e14}` with `u` of degree `g`,
/// `v` of degree `h`, `w` of degree `gh`.
pub fn w_algebra(
    group: &FiniteAbelianGroup,
    g: &GroupElement,
    h: &GroupElement,
    involution: WInvolution,
) -> Result<GStarAlgebra> {
    check_in_group("W", group, g)?;
    check_in_group("W", group, h)?;
    let basis = vec![
        ("1".to_string(), unit_matrix(4, &[(1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1)])),
        ("u".to_string(), unit_matrix(4, &[(1, 2, 1), (3, 4, 1)])),
        ("v".to_string(), unit_matrix(4, &[(1, 3, 1), (2, 4, 1)])),
        ("w".to_string(), unit_matrix(4, &[(1, 4, 1)])),
    ];
    let gh = group.mul_unchecked(g, h);
    let tuple = vec![group.identity(), g.clone(), h.clone(), gh];
    matrix_algebra(
        &format!("W,{}^{g},{h}", involution.name()),
        group,
        4,
        basis,
        Some(tuple),
        MatrixInvolution::Diagonal(involution.signs().to_vec()),
    )
}

/// Parameters shared by the uniform [`build`] dispatcher.
#[derive(Clone, Debug)]
pub struct CatalogParams {
    pub group: FiniteAbelianGroup,
    pub g: Option<GroupElement>,
    pub h: Option<GroupElement>,
    pub k: Option<usize>,
}

impl CatalogParams {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        Self { group, g: None, h: None, k: None }
    }

    pub fn g(mut self, g: GroupElement) -> Self {
        self.g = Some(g);
        self
    }

    pub fn h(mut self, h: GroupElement) -> Self {
        self.h = Some(h);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

/// A named catalog entry with its parameters.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: CatalogParams,
}

/// Description of a catalog name, as printed by `catalog list`.
#[derive(Clone, Copy, Debug)]
pub struct EntryInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub constraints: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        name: "F",
        params: "",
        constraints: "",
        description: "one-dimensional commutative algebra, trivial grading and involution (alias C)",
    },
    EntryInfo {
        name: "G2:<psi|tau|gamma>",
        params: "--g --h",
        constraints: "g, h in G (default 1)",
        description: "Grassmann algebra on e1 (degree g), e2 (degree h)",
    },
    EntryInfo {
        name: "G3tau",
        params: "",
        constraints: "",
        description: "Grassmann algebra on 3 generators, trivial grading, involution tau",
    },
    EntryInfo {
        name: "Gk:<psi|tau|gamma>",
        params: "--k",
        constraints: "k >= 2",
        description: "Grassmann algebra on k generators with trivial grading",
    },
    EntryInfo {
        name: "Ck",
        params: "--k",
        constraints: "k >= 2",
        description: "span{I, E, ..., E^(k-1)} in UT_k, trivial grading and involution",
    },
    EntryInfo { name: "Ck_star", params: "--k", constraints: "k >= 2", description: "C_k with E^i -> (-1)^i E^i" },
    EntryInfo {
        name: "Ckg",
        params: "--k --g",
        constraints: "k >= 2, g != 1",
        description: "C_k graded by (1, g, ..., g^(k-1))",
    },
    EntryInfo {
        name: "Ckg_star",
        params: "--k --g",
        constraints: "k >= 2, g != 1",
        description: "C_k graded by (1, g, ..., g^(k-1)) with E^i -> (-1)^i E^i",
    },
    EntryInfo {
        name: "FCp",
        params: "--h",
        constraints: "|h| = p prime",
        description: "group algebra of <h>, graded by <h>, trivial involution",
    },
    EntryInfo {
        name: "FC2_star",
        params: "",
        constraints: "",
        description: "group algebra of C_2, trivial grading, h -> -h",
    },
    EntryInfo {
        name: "FC2_sharp",
        params: "--h",
        constraints: "|h| = 2",
        description: "group algebra of <h>, graded by <h>, h -> -h",
    },
    EntryInfo {
        name: "M",
        params: "--g",
        constraints: "g in G (g = 1 gives trivial grading)",
        description: "span{e11+e44, e22+e33, e12, e34} with reflection involution",
    },
    EntryInfo {
        name: "Nk_star|Uk_star|Ak_star",
        params: "--k",
        constraints: "k >= 2",
        description: "N_k, U_k, A_k in UT_2k with reflection involution, trivial grading",
    },
    EntryInfo {
        name: "Nkg|Ukg|Akg",
        params: "--k --g",
        constraints: "k >= 2, g != 1",
        description: "N_k, U_k, A_k graded by (1, g x (k-1), 1 x (k-1), g); k > 3 unverified",
    },
    EntryInfo {
        name: "U_k_star",
        params: "--k",
        constraints: "k >= 2",
        description: "alias of Uk_star (the algebra written U_{k,*})",
    },
    EntryInfo {
        name: "W:<nu1|nu2|nu3>",
        params: "--g --h",
        constraints: "g, h in G",
        description: "span{1, e12+e34, e13+e24, e14} graded by (1, g, h, gh)",
    },
];

fn parse_k_suffix(rest: &str, params_k: Option<usize>, entry: &str) -> Result<usize> {
    if rest == "k" || rest.is_empty() {
        params_k.ok_or_else(|| param_err(entry, "needs --k"))
    } else {
        rest.parse().map_err(|_| param_err(entry, format!("cannot read k from {rest:?}")))
    }
}

fn grassmann_kind(s: &str, entry: &str) -> Result<GrassmannInvolution> {
    match s {
        "psi" => Ok(GrassmannInvolution::Psi),
        "tau" => Ok(GrassmannInvolution::Tau),
        "gamma" => Ok(GrassmannInvolution::Gamma),
        _ => Err(param_err(entry, format!("unknown involution {s:?} (psi, tau, gamma)"))),
    }
}

/// Builds a catalog algebra by name. Names accept an inline `k` (e.g.
/// `C3_star`, `N3g`, `A2_star`) or read it from `params.k`.
pub fn build(name: &str, params: &CatalogParams) -> Result<GStarAlgebra> {
    let group = &params.group;
    let g = params.g.as_ref();
    let h = params.h.as_ref();
    let id = group.identity();
    let unknown = || param_err(name, "unknown catalog name (see `catalog list`)");
    if name == "F" || name == "C" {
        return Ok(field(group));
    }
    if let Some(kind) = name.strip_prefix("G2:") {
        let kind = grassmann_kind(kind, name)?;
        return grassmann2(group, g.unwrap_or(&id), h.unwrap_or(&id), kind);
    }
    if let Some(kind) = name.strip_prefix("W:") {
        let kind = match kind {
            "nu1" => WInvolution::Nu1,
            "nu2" => WInvolution::Nu2,
            "nu3" => WInvolution::Nu3,
            _ => return Err(param_err(name, "unknown involution (nu1, nu2, nu3)")),
        };
        return w_algebra(group, g.unwrap_or(&id), h.unwrap_or(&id), kind);
    }
    if name == "G3tau" || name == "G2tau11" {
        let k = if name == "G3tau" { 3 } else { 2 };
        return Ok(grassmann(group, k, &vec![id.clone(); k], GrassmannInvolution::Tau)?.with_name(name));
    }
    if let Some(rest) = name.strip_prefix('G') {
        if let Some((k, kind)) = rest.split_once(':') {
            let k = parse_k_suffix(k, params.k, name)?;
            let kind = grassmann_kind(kind, name)?;
            return grassmann(group, k, &vec![id.clone(); k], kind);
        }
    }
    match name {
        "FCp" => return group_algebra(group, GroupAlgebraVariant::Fcp, h.or(g)),
        "FC2" => return group_algebra(group, GroupAlgebraVariant::Fcp, h.or(g)),
        "FC2_star" => return group_algebra(group, GroupAlgebraVariant::Fc2Star, None),
        "FC2_sharp" => return group_algebra(group, GroupAlgebraVariant::Fc2Sharp, h.or(g)),
        "M" => {
            return match g {
                Some(g) if !group.is_identity(g) => reflection_family(group, 2, ReflectionFamily::M, true, Some(g)),
                _ => reflection_family(group, 2, ReflectionFamily::M, false, None),
            }
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("U_") {
        let k = rest.strip_suffix("_star").ok_or_else(unknown)?;
        let k = parse_k_suffix(k, params.k, name)?;
        return reflection_family(group, k, ReflectionFamily::U, false, None);
    }
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let tail: &str = chars.as_str();
    let (body, star) = match tail.strip_suffix("_star") {
        Some(b) => (b, true),
        None => (tail, false),
    };
    let (kpart, graded) = match body.strip_suffix('g') {
        Some(b) => (b, true),
        None => (body, false),
    };
    let k = parse_k_suffix(kpart, params.k, name)?;
    match head {
        'C' => {
            let variant = match (graded, star) {
                (false, false) => ChainVariant::Plain,
                (false, true) => ChainVariant::Star,
                (true, false) => ChainVariant::Graded,
                (true, true) => ChainVariant::GradedStar,
            };
            commutative_chain(group, k, variant, h.or(g).filter(|_| graded))
        }
        'N' | 'U' | 'A' if graded != star => {
            let family = match head {
                'N' => ReflectionFamily::N,
                'U' => ReflectionFamily::U,
                _ => ReflectionFamily::A,
            };
            reflection_family(group, k, family, graded, g)
        }
        _ => Err(unknown()),
    }
}

impl CatalogEntry {
    pub fn build(&self) -> Result<GStarAlgebra> {
        build(&self.name, &self.params)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.name, self.params.group)?;
        if let Some(g) = &self.params.g {
            write!(f, " g={g}")?;
        }
        if let Some(h) = &self.params.h {
            write!(f, " h={h}")?;
        }
        if let Some(k) = self.params.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

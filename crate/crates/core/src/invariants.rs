//! Codimensions, cocharacters and colengths of (G,*)-algebras, the
//! highest-weight-vector cross-check, identity-basis verification and
//! bounded-degree variety containment.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num::{BigInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GStarAlgebra, Sign, Vector};
use crate::error::{Error, Result};
use crate::exactla::{q, EchelonBasis, Rational, RationalMatrix};
use crate::freepoly::{
    consequence_span, find_nonvanishing, perm_rank, ElementNames, GStarPolynomial, MultiDegree, VariableFrame,
};
use crate::group::FiniteAbelianGroup;
use crate::symrep::{
    class_representative, factorial, multi_character, multi_classes, multinomial, multipartitions, Multipartition,
    Partition,
};

/// Degree cap and work budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` accepted.
    pub degree_cap: usize,
    /// Largest `n! * (assignment tuples) * dim A` a single frame may need.
    pub cell_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { degree_cap: 6, cell_budget: 2_000_000_000 }
    }
}

impl Limits {
    pub fn with_cap(degree_cap: usize) -> Self {
        Self { degree_cap, ..Self::default() }
    }

    fn check_degree(&self, n: usize, what: &str) -> Result<()> {
        if n > self.degree_cap {
            return Err(Error::ResourceCap {
                frame: format!("n = {n}"),
                reason: format!("{what} is capped at degree {}", self.degree_cap),
            });
        }
        Ok(())
    }
}

type Sparse = Vec<(usize, Rational)>;

/// `P_<n>(A)`: the span of the evaluation functionals of `A` on the
/// multilinear monomials of a frame.
#[derive(Clone, Debug)]
pub struct QuotientModel {
    frame: VariableFrame,
    span: EchelonBasis,
    rref: RationalMatrix,
    pivots: Vec<usize>,
}

impl QuotientModel {
    pub fn frame(&self) -> &VariableFrame {
        &self.frame
    }

    /// `c_<n>(A)`.
    pub fn codim(&self) -> usize {
        self.pivots.len()
    }

    /// Permutation ranks of monomials forming a basis of `P_<n>(A)`.
    pub fn pivot_monomials(&self) -> &[usize] {
        &self.pivots
    }

    /// Row `k` holds the `k`-th pivot-monomial coordinate of every monomial.
    pub fn coordinates(&self) -> &RationalMatrix {
        &self.rref
    }

    /// Whether the multilinear polynomial with coordinates `v` (indexed by
    /// permutation rank) is an identity.
    pub fn in_kernel(&self, v: &[(usize, Rational)]) -> bool {
        (0..self.rref.rows()).all(|k| {
            let row = self.rref.row(k);
            v.iter().fold(Rational::zero(), |acc, (i, c)| acc + c * &row[*i]).is_zero()
        })
    }

    /// Trace of the permutation `sigma` (acting on variable positions).
    pub fn trace(&self, sigma: &[usize]) -> Rational {
        let n = self.frame.n();
        let mut t = Rational::zero();
        for (k, &p) in self.pivots.iter().enumerate() {
            let word = crate::freepoly::perm_unrank(n, p);
            let moved: Vec<usize> = word.iter().map(|&i| sigma[i]).collect();
            t += &self.rref[(k, perm_rank(&moved))];
        }
        t
    }
}

struct Evaluator<'a> {
    a: &'a GStarAlgebra,
    n: usize,
    /// Component basis per variable.
    bases: Vec<&'a [Vector]>,
    /// `right[v][k][i]` = `b_i * (basis vector k of variable v)`, sparse.
    right: Vec<Vec<Vec<Sparse>>>,
    weights: Vec<usize>,
}

fn sparse_of(v: &[Rational]) -> Sparse {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl<'a> Evaluator<'a> {
    fn new(a: &'a GStarAlgebra, bases: Vec<&'a [Vector]>) -> Self {
        let n = bases.len();
        let mut cache: HashMap<*const Vector, Vec<Sparse>> = HashMap::new();
        let right = bases
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .map(|v| {
                        cache
                            .entry(v as *const Vector)
                            .or_insert_with(|| (0..a.dim()).map(|i| sparse_of(&a.mul(&a.basis_vector(i), v))).collect())
                            .clone()
                    })
                    .collect()
            })
            .collect();
        let weights = (0..n).map(|d| factorial(n - 1 - d) as usize).collect();
        Self { a, n, bases, right, weights }
    }

    fn times(&self, prefix: &Sparse, var: usize, k: usize) -> Sparse {
        let mut acc = vec![Rational::zero(); self.a.dim()];
        for (i, c) in prefix {
            for (j, x) in &self.right[var][k][*i] {
                acc[*j] += c * x;
            }
        }
        sparse_of(&acc)
    }

    /// Values of all monomials at the tuple `choice`, by permutation rank.
    fn all_monomials(&self, choice: &[usize]) -> Vec<(usize, Sparse)> {
        let mut out = Vec::new();
        for first in 0..self.n {
            let start = sparse_of(&self.bases[first][choice[first]]);
            if start.is_empty() {
                continue;
            }
            self.walk(choice, &start, 1 << first, 1, first * self.weights[0], &mut out);
        }
        out
    }

    fn walk(
        &self,
        choice: &[usize],
        prefix: &Sparse,
        used: u64,
        depth: usize,
        rank: usize,
        out: &mut Vec<(usize, Sparse)>,
    ) {
        if depth == self.n {
            out.push((rank, prefix.clone()));
            return;
        }
        let mut smaller = 0;
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let next = self.times(prefix, v, choice[v]);
            if !next.is_empty() {
                self.walk(choice, &next, used | 1 << v, depth + 1, rank + smaller * self.weights[depth], out);
            }
            smaller += 1;
        }
    }
}

fn zero_component_block(a: &GStarAlgebra, frame: &VariableFrame) -> bool {
    let group = frame.group();
    frame.multidegree().counts().iter().enumerate().any(|(b, &c)| {
        let (g, s) = MultiDegree::block_label(group, b);
        c > 0 && a.component_basis(&g, s).is_empty()
    })
}

/// Builds `P_<n>(A)` for one frame.
pub fn quotient_model(a: &GStarAlgebra, frame: &VariableFrame, limits: &Limits) -> Result<QuotientModel> {
    let n = frame.n();
    limits.check_degree(n, "quotient model")?;
    if frame.group() != a.group() {
        return Err(Error::GroupMismatch(format!("frame over {} for an algebra over {}", frame.group(), a.group())));
    }
    let len = factorial(n) as usize;
    let mut span = EchelonBasis::new(len);
    let empty = |span: EchelonBasis| {
        let (rref, pivots) = span.to_rref();
        Ok(QuotientModel { frame: frame.clone(), span, rref, pivots })
    };
    if n == 0 || zero_component_block(a, frame) {
        return empty(span);
    }
    let group = frame.group();
    let block_bases: Vec<Vec<Vector>> = (0..frame.multidegree().counts().len())
        .map(|b| {
            let (g, s) = MultiDegree::block_label(group, b);
            a.component_basis(&g, s)
        })
        .collect();
    let bases: Vec<&[Vector]> = (0..n).map(|p| block_bases[frame.block_of(p)].as_slice()).collect();
    let tuples: u64 = bases.iter().map(|b| b.len() as u64).product();
    let cells = (len as u64).saturating_mul(tuples).saturating_mul(a.dim() as u64);
    if cells > limits.cell_budget {
        return Err(Error::ResourceCap {
            frame: frame.multidegree().to_string(),
            reason: format!("{cells} evaluation cells exceed the budget of {}", limits.cell_budget),
        });
    }
    let eval = Evaluator::new(a, bases.clone());
    let mut seen: HashSet<Vec<(usize, Rational)>> = HashSet::new();
    let mut choice = vec![0usize; n];
    'tuples: loop {
        let values = eval.all_monomials(&choice);
        let mut columns: BTreeMap<usize, Sparse> = BTreeMap::new();
        for (rank, value) in values {
            for (t, x) in value {
                columns.entry(t).or_default().push((rank, x));
            }
        }
        for (_, mut col) in columns {
            col.sort_by_key(|e| e.0);
            let lead = col[0].1.clone();
            for e in col.iter_mut() {
                e.1 /= &lead;
            }
            if !seen.insert(col.clone()) {
                continue;
            }
            let mut dense = vec![Rational::zero(); len];
            for (i, x) in col {
                dense[i] = x;
            }
            span.insert(dense);
            if span.dim() == len {
                break 'tuples;
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                break 'tuples;
            }
            choice[k] += 1;
            if choice[k] < bases[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    empty(span)
}

/// `c_<n>(A)` for a multidegree.
pub fn codim(a: &GStarAlgebra, md: &MultiDegree, limits: &Limits) -> Result<usize> {
    let frame = VariableFrame::new(a.group(), md.clone());
    Ok(quotient_model(a, &frame, limits)?.codim())
}

fn nonzero_frames(a: &GStarAlgebra, n: usize) -> Vec<VariableFrame> {
    MultiDegree::all(a.group(), n)
        .into_iter()
        .map(|md| VariableFrame::new(a.group(), md))
        .filter(|f| !zero_component_block(a, f))
        .collect()
}

/// `c_n^#(A) = sum multinomial(n; <n>) c_<n>(A)`.
pub fn codim_total(a: &GStarAlgebra, n: usize, limits: &Limits) -> Result<u64> {
    limits.check_degree(n, "codimension")?;
    let frames = nonzero_frames(a, n);
    let parts: Vec<u64> = frames
        .par_iter()
        .map(|f| {
            let c = quotient_model(a, f, limits)?.codim() as u64;
            Ok(multinomial(n, f.multidegree().counts())? * c)
        })
        .collect::<Result<_>>()?;
    Ok(parts.iter().sum())
}

/// Class representative of `mu` acting block-wise on frame positions.
fn block_permutation(frame: &VariableFrame, mu: &Multipartition) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..frame.n()).collect();
    for (positions, cycle) in frame.block_positions().iter().zip(mu.blocks()) {
        let local = class_representative(cycle);
        for (i, &img) in local.iter().enumerate() {
            sigma[positions[i]] = positions[img];
        }
    }
    sigma
}

fn to_count(r: &Rational, what: &str) -> Result<u64> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Consistency(format!("{what} is {r}, not a non-negative integer")));
    }
    r.to_integer().to_u64().ok_or_else(|| Error::Consistency(format!("{what} = {r} does not fit in 64 bits")))
}

/// Multiplicities `m_<lambda>` of the `<n>`-cocharacter of a computed model,
/// by the character inner product with traces on `P_<n>(A)`.
pub fn cocharacter_of(model: &QuotientModel) -> Result<BTreeMap<Multipartition, u64>> {
    let mut out = BTreeMap::new();
    if model.codim() == 0 {
        return Ok(out);
    }
    let frame = model.frame();
    let weights = frame.multidegree().counts().to_vec();
    let classes = multi_classes(&weights);
    let order: u64 = weights.iter().map(|&w| factorial(w)).product();
    let traces: Vec<(u64, BigInt)> = classes
        .iter()
        .map(|(mu, size)| {
            let t = model.trace(&block_permutation(frame, mu));
            if !t.is_integer() {
                return Err(Error::Consistency(format!("trace {t} at class {mu:?} is not an integer")));
            }
            Ok((*size, t.to_integer()))
        })
        .collect::<Result<_>>()?;
    let mut dimension = 0u64;
    for lambda in multipartitions(&weights) {
        let mut sum = BigInt::zero();
        for ((mu, _), (size, t)) in classes.iter().zip(&traces) {
            sum += BigInt::from(*size) * BigInt::from(multi_character(&lambda, mu)?) * t;
        }
        let m = to_count(&Rational::new(sum, BigInt::from(order)), &format!("multiplicity of {lambda:?}"))?;
        if m > 0 {
            dimension += m * lambda.degree();
            out.insert(lambda, m);
        }
    }
    if dimension != model.codim() as u64 {
        return Err(Error::Consistency(format!(
            "multiplicities give dimension {dimension} but c = {} at {}",
            model.codim(),
            frame.multidegree()
        )));
    }
    Ok(out)
}

/// `m_<lambda>` for every `<lambda>` of a multidegree (nonzero entries only).
pub fn cocharacter(a: &GStarAlgebra, md: &MultiDegree, limits: &Limits) -> Result<BTreeMap<Multipartition, u64>> {
    let frame = VariableFrame::new(a.group(), md.clone());
    cocharacter_of(&quotient_model(a, &frame, limits)?)
}

/// One multidegree's contribution to a cocharacter table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameCocharacter {
    pub multidegree: MultiDegree,
    pub codim: usize,
    pub multiplicities: BTreeMap<Multipartition, u64>,
}

/// `X_n(A)` with the derived `c_n^#` and `l_n^#`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterTable {
    pub n: usize,
    pub group: FiniteAbelianGroup,
    pub frames: Vec<FrameCocharacter>,
    pub codim_total: u64,
    pub colength: u64,
}

pub fn cocharacter_table(a: &GStarAlgebra, n: usize, limits: &Limits) -> Result<CocharacterTable> {
    limits.check_degree(n, "cocharacter")?;
    let frames = nonzero_frames(a, n);
    let computed: Vec<FrameCocharacter> = frames
        .par_iter()
        .map(|f| {
            let model = quotient_model(a, f, limits)?;
            Ok(FrameCocharacter {
                multidegree: f.multidegree().clone(),
                codim: model.codim(),
                multiplicities: cocharacter_of(&model)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut codim_total = 0;
    let mut colength = 0;
    let mut kept = Vec::new();
    for fc in computed {
        if fc.codim == 0 {
            continue;
        }
        codim_total += multinomial(n, fc.multidegree.counts())? * fc.codim as u64;
        colength += fc.multiplicities.values().sum::<u64>();
        kept.push(fc);
    }
    Ok(CocharacterTable { n, group: a.group().clone(), frames: kept, codim_total, colength })
}

/// `l_n^#(A)`.
pub fn colength(a: &GStarAlgebra, n: usize, limits: &Limits) -> Result<u64> {
    Ok(cocharacter_table(a, n, limits)?.colength)
}

impl CocharacterTable {
    /// Every `(multipartition, multiplicity)` of the table in paper
    /// notation, e.g. `(3)_1+|(1)_g-`.
    pub fn entries(&self, names: &ElementNames) -> Vec<(String, u64)> {
        self.frames
            .iter()
            .flat_map(|f| f.multiplicities.iter().map(|(l, m)| (l.notation(|b| names.block_name(&self.group, b)), *m)))
            .collect()
    }
}

/// Multiplicity of `<lambda>` as the number of linearly independent highest
/// weight vectors modulo the identities of `A`.
pub fn hwv_multiplicity(a: &GStarAlgebra, lambda: &Multipartition, limits: &Limits) -> Result<u64> {
    let group = a.group();
    let blocks = lambda.blocks();
    if blocks.len() != 2 * group.order() {
        return Err(Error::Structural(format!(
            "multipartition has {} blocks, expected {}",
            blocks.len(),
            2 * group.order()
        )));
    }
    let n: usize = lambda.weights().iter().sum();
    limits.check_degree(n, "highest weight vectors")?;
    if n == 0 {
        return Ok(0);
    }
    // variables: one per (block, row)
    let mut var_basis: Vec<Vec<Vector>> = Vec::new();
    let mut var_of: Vec<Vec<usize>> = Vec::new();
    for (b, p) in blocks.iter().enumerate() {
        let (g, s) = MultiDegree::block_label(group, b);
        let basis = if p.is_empty() { Vec::new() } else { a.component_basis(&g, s) };
        if basis.len() < p.len() {
            return Ok(0);
        }
        let mut rows = Vec::new();
        for _ in 0..p.len() {
            rows.push(var_basis.len());
            var_basis.push(basis.clone());
        }
        var_of.push(rows);
    }
    // cells in block, row, column order
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for (b, p) in blocks.iter().enumerate() {
        for (r, &len) in p.parts().iter().enumerate() {
            for c in 0..len {
                cells.push((b, r, c));
            }
        }
    }
    // column groups: cell indices sharing (block, column)
    let mut columns: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &(b, _, c)) in cells.iter().enumerate() {
        columns.entry((b, c)).or_default().push(i);
    }
    let column_perms: Vec<ColumnGroup> = columns
        .into_values()
        .map(|members| {
            let perms = crate::freepoly::permutations(members.len())
                .into_iter()
                .map(|p| {
                    let sign = permutation_sign(&p);
                    (p, sign)
                })
                .collect();
            (members, perms)
        })
        .collect();

    let evaluator = WordEvaluator::new(a, &var_basis);
    let mut word_cache: HashMap<Vec<usize>, HashMap<Vec<usize>, Rational>> = HashMap::new();
    let mut keys: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut seen_rows: HashSet<Vec<(usize, Rational)>> = HashSet::new();
    for filling in crate::freepoly::permutations(n) {
        // filling[cell] = position; alternate the row labels inside each column
        let mut terms: HashMap<Vec<usize>, i64> = HashMap::new();
        let mut stack: Vec<(usize, Vec<usize>, i64)> = vec![(0, vec![usize::MAX; n], 1)];
        while let Some((ci, mut word, sign)) = stack.pop() {
            if ci == column_perms.len() {
                *terms.entry(word).or_default() += sign;
                continue;
            }
            let (members, perms) = &column_perms[ci];
            for (p, s) in perms {
                for (slot, &cell) in members.iter().enumerate() {
                    let (b, _, _) = cells[cell];
                    let (_, row, _) = cells[members[p[slot]]];
                    word[filling[cell]] = var_of[b][row];
                }
                stack.push((ci + 1, word.clone(), sign * s));
            }
        }
        let mut row: HashMap<usize, Rational> = HashMap::new();
        for (word, coeff) in terms {
            if coeff == 0 {
                continue;
            }
            let value = word_cache.entry(word.clone()).or_insert_with(|| evaluator.evaluate(&word));
            for (key, x) in value.iter() {
                let next = keys.len();
                let col = *keys.entry(key.clone()).or_insert(next);
                *row.entry(col).or_insert_with(Rational::zero) += x * q(coeff);
            }
        }
        let mut sparse: Vec<(usize, Rational)> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if sparse.is_empty() {
            continue;
        }
        sparse.sort_by_key(|e| e.0);
        let lead = sparse[0].1.clone();
        for e in sparse.iter_mut() {
            e.1 /= &lead;
        }
        if seen_rows.insert(sparse.clone()) {
            rows.push(sparse);
        }
    }
    let mut basis = EchelonBasis::new(keys.len());
    for r in rows {
        let mut dense = vec![Rational::zero(); keys.len()];
        for (i, x) in r {
            dense[i] = x;
        }
        basis.insert(dense);
    }
    Ok(basis.dim() as u64)
}

fn permutation_sign(p: &[usize]) -> i64 {
    let inversions =
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Evaluates words in variables that take generic values
/// `sum_i t_{v,i} a_{v,i}`; results are keyed by the monomial in the `t`'s
/// (per variable, the sorted basis indices chosen) and the coordinate.
struct WordEvaluator<'a> {
    a: &'a GStarAlgebra,
    bases: &'a [Vec<Vector>],
    right: Vec<Vec<Vec<Sparse>>>,
}

impl<'a> WordEvaluator<'a> {
    fn new(a: &'a GStarAlgebra, bases: &'a [Vec<Vector>]) -> Self {
        let right = bases
            .iter()
            .map(|basis| {
                basis.iter().map(|v| (0..a.dim()).map(|i| sparse_of(&a.mul(&a.basis_vector(i), v))).collect()).collect()
            })
            .collect();
        Self { a, bases, right }
    }

    fn evaluate(&self, word: &[usize]) -> HashMap<Vec<usize>, Rational> {
        let mut out = HashMap::new();
        let nvars = self.bases.len();
        let mut picks: Vec<Vec<usize>> = vec![Vec::new(); nvars];
        self.walk(word, 0, None, &mut picks, &mut out);
        out
    }

    fn walk(
        &self,
        word: &[usize],
        depth: usize,
        prefix: Option<&Sparse>,
        picks: &mut Vec<Vec<usize>>,
        out: &mut HashMap<Vec<usize>, Rational>,
    ) {
        if depth == word.len() {
            let prefix = prefix.expect("nonempty word");
            let mut key: Vec<usize> = Vec::new();
            for p in picks.iter() {
                let mut s = p.clone();
                s.sort_unstable();
                key.extend(s);
                key.push(usize::MAX);
            }
            for (t, x) in prefix {
                let mut k = key.clone();
                k.push(*t);
                *out.entry(k).or_insert_with(Rational::zero) += x;
            }
            return;
        }
        let v = word[depth];
        for k in 0..self.bases[v].len() {
            let next = match prefix {
                None => sparse_of(&self.bases[v][k]),
                Some(p) => {
                    let mut acc = vec![Rational::zero(); self.a.dim()];
                    for (i, c) in p {
                        for (j, x) in &self.right[v][k][*i] {
                            acc[*j] += c * x;
                        }
                    }
                    sparse_of(&acc)
                }
            };
            if next.is_empty() {
                continue;
            }
            picks[v].push(k);
            self.walk(word, depth + 1, Some(&next), picks, out);
            picks[v].pop();
        }
    }
}

/// Cells of one tableau column with the signed permutations of that column.
type ColumnGroup = (Vec<usize>, Vec<(Vec<usize>, i64)>);

/// Outcome of checking a generating set at one frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVerdict {
    pub multidegree: MultiDegree,
    /// `n! - c_<n>(A)`.
    pub kernel_dim: usize,
    pub consequence_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub n: usize,
    pub frames_checked: usize,
    /// Frames where the consequences span a proper subspace of the identities.
    pub incomplete: Vec<FrameVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub degrees: Vec<DegreeReport>,
}

impl VerificationReport {
    pub fn is_complete(&self) -> bool {
        self.degrees.iter().all(|d| d.incomplete.is_empty())
    }
}

/// Checks that `generators` are identities of `a` and that their
/// consequences span every multilinear identity of degree `1..=n_max`.
pub fn verify_generating_set(
    a: &GStarAlgebra,
    generators: &[GStarPolynomial],
    n_max: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    limits.check_degree(n_max, "basis verification")?;
    for g in generators {
        if let Some((assignment, value)) = find_nonvanishing(g, a)? {
            let witness =
                assignment.iter().map(|(v, x)| format!("{v} = {}", render_vector(a, x))).collect::<Vec<_>>().join(", ");
            return Err(Error::NotAnIdentity {
                generator: g.to_string(),
                witness: format!("{witness} gives {}", render_vector(a, &value)),
            });
        }
    }
    let mut degrees = Vec::new();
    for n in 1..=n_max {
        let frames: Vec<VariableFrame> =
            MultiDegree::all(a.group(), n).into_iter().map(|md| VariableFrame::new(a.group(), md)).collect();
        let verdicts: Vec<Option<FrameVerdict>> = frames
            .par_iter()
            .map(|f| {
                let model = quotient_model(a, f, limits)?;
                let kernel_dim = factorial(n) as usize - model.codim();
                let span = consequence_span(generators, f, Some(kernel_dim))?;
                if let Some(bad) = span.vectors.iter().find(|v| !model.in_kernel(v)) {
                    return Err(Error::Consistency(format!(
                        "a consequence at {} is not an identity: {:?}",
                        f.multidegree(),
                        bad
                    )));
                }
                Ok((span.rank < kernel_dim).then(|| FrameVerdict {
                    multidegree: f.multidegree().clone(),
                    kernel_dim,
                    consequence_rank: span.rank,
                }))
            })
            .collect::<Result<_>>()?;
        degrees.push(DegreeReport {
            n,
            frames_checked: frames.len(),
            incomplete: verdicts.into_iter().flatten().collect(),
        });
    }
    Ok(VerificationReport { degrees })
}

/// Renders a coordinate vector as a combination of basis labels.
pub fn render_vector(a: &GStarAlgebra, v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if x == &q(1) {
            out.push_str(&a.labels()[i]);
        } else {
            let _ = write!(out, "({x}) {}", a.labels()[i]);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Containment of multilinear identities at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentVerdict {
    pub n: usize,
    /// First frame (in colexicographic order) where an identity of the
    /// first algebra fails on the second, if any.
    pub counterexample: Option<MultiDegree>,
}

impl ContainmentVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For each `n <= n_max`: whether every multilinear identity of `a` of
/// degree `n` is an identity of `b`, i.e. `b` lies in the variety of `a`.
pub fn variety_contains_upto(
    a: &GStarAlgebra,
    b: &GStarAlgebra,
    n_max: usize,
    limits: &Limits,
) -> Result<Vec<ContainmentVerdict>> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(format!(
            "{} is over {}, {} over {}",
            a.name(),
            a.group(),
            b.name(),
            b.group()
        )));
    }
    limits.check_degree(n_max, "containment")?;
    (1..=n_max)
        .map(|n| {
            let frames: Vec<VariableFrame> = nonzero_frames(b, n);
            let fails: Vec<Option<MultiDegree>> = frames
                .par_iter()
                .map(|f| {
                    let mb = quotient_model(b, f, limits)?;
                    let ma = quotient_model(a, f, limits)?;
                    let contained = mb.span.vectors().iter().all(|v| ma.span.contains(v));
                    Ok((!contained).then(|| f.multidegree().clone()))
                })
                .collect::<Result<_>>()?;
            Ok(ContainmentVerdict { n, counterexample: fails.into_iter().flatten().next() })
        })
        .collect()
}

#[derive(Serialize)]
struct JsonRow {
    multidegree: String,
    multipartition: String,
    multiplicity: u64,
    character_degree: u64,
    c_multideg: usize,
}

#[derive(Serialize)]
struct JsonDegree {
    n: usize,
    c_n_sharp: u64,
    l_n_sharp: u64,
    rows: Vec<JsonRow>,
}

#[derive(Serialize)]
struct JsonTables<'a> {
    algebra: &'a str,
    group: String,
    degrees: Vec<JsonDegree>,
}

fn rows_of(table: &CocharacterTable, names: &ElementNames) -> Vec<JsonRow> {
    table
        .frames
        .iter()
        .flat_map(|f| {
            f.multiplicities.iter().map(move |(l, m)| JsonRow {
                multidegree: f.multidegree.to_string(),
                multipartition: l.notation(|b| names.block_name(&table.group, b)),
                multiplicity: *m,
                character_degree: l.degree(),
                c_multideg: f.codim,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "n,multidegree,multipartition,multiplicity,character_degree,c_multideg,c_n_sharp,l_n_sharp";

/// CSV with one row per `(multidegree, multipartition)` and a summary row
/// per `n` (multidegree `total`) carrying `c_n_sharp` and `l_n_sharp`.
pub fn tables_to_csv(tables: &[CocharacterTable], names: &ElementNames) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for t in tables {
        for r in rows_of(t, names) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},,",
                t.n, r.multidegree, r.multipartition, r.multiplicity, r.character_degree, r.c_multideg
            );
        }
        let _ = writeln!(out, "{},total,,,,,{},{}", t.n, t.codim_total, t.colength);
    }
    out
}

pub fn tables_to_json(algebra: &str, tables: &[CocharacterTable], names: &ElementNames) -> String {
    let group = tables.first().map(|t| t.group.to_string()).unwrap_or_default();
    let doc = JsonTables {
        algebra,
        group,
        degrees: tables
            .iter()
            .map(|t| JsonDegree { n: t.n, c_n_sharp: t.codim_total, l_n_sharp: t.colength, rows: rows_of(t, names) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("tables serialise") + "\n"
}

/// Aligned plain-text rendering.
pub fn tables_to_text(tables: &[CocharacterTable], names: &ElementNames) -> String {
    let mut out = String::new();
    for t in tables {
        let _ = writeln!(out, "n = {}: c_n = {}, l_n = {}", t.n, t.codim_total, t.colength);
        for r in rows_of(t, names) {
            let _ = writeln!(
                out,
                "  {:<16} {:<36} m = {:<3} d = {:<4} c = {}",
                r.multidegree, r.multipartition, r.multiplicity, r.character_degree, r.c_multideg
            );
        }
    }
    out
}

/// Blocks `(degree, sign)` paired with the partitions of a multipartition,
/// for building multipartitions by hand.
pub fn multipartition_from(
    group: &FiniteAbelianGroup,
    blocks: &[(crate::group::GroupElement, Sign, Partition)],
) -> Multipartition {
    let mut parts = vec![Partition::empty(); 2 * group.order()];
    for (g, s, p) in blocks {
        parts[MultiDegree::block_index(group, g, *s)] = p.clone();
    }
    Multipartition(parts)
}

//! Words and polynomials in signed graded variables `x_{i,g}^{+/-}`,
//! multilinear frames `P_<n>`, evaluation in an algebra, polarization and
//! generation of the consequences of a set of identities at a fixed frame.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use num::{One, Zero};

use crate::algebra::{GStarAlgebra, Sign, Vector};
use crate::error::{Error, Result};
use crate::exactla::{is_zero_vec, parse_rational, q, EchelonBasis, ModularEchelon, Rational};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::symrep::factorial;

/// `x_{index, degree}^{sign}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVariable {
    pub index: usize,
    pub sign: Sign,
    pub degree: GroupElement,
}

impl GradedVariable {
    pub fn new(index: usize, sign: Sign, degree: GroupElement) -> Self {
        Self { index, sign, degree }
    }

    pub fn display_with(&self, names: &ElementNames) -> String {
        format!("x{}^{}_{}", self.index, self.sign, names.name_of(&self.degree))
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&ElementNames::default()))
    }
}

pub type Word = Vec<GradedVariable>;

/// Finite rational combination of words; zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GStarPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl GStarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(word: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(word, Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flatten().cloned().collect()
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    /// `f^*`: words reversed, each variable contributing its sign.
    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| {
            let s: i64 = w.iter().map(|v| v.sign.value()).product();
            (w.iter().rev().cloned().collect(), c * q(s))
        }))
    }

    fn multiplicities(word: &Word) -> BTreeMap<&GradedVariable, usize> {
        let mut m = BTreeMap::new();
        for v in word {
            *m.entry(v).or_default() += 1;
        }
        m
    }

    pub fn is_multihomogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Self::multiplicities);
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m == first),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        self.is_multihomogeneous()
            && self.terms.keys().next().is_none_or(|w| Self::multiplicities(w).values().all(|&m| m == 1))
    }

    /// Splits into multihomogeneous components.
    pub fn homogeneous_components(&self) -> Vec<GStarPolynomial> {
        let mut parts: BTreeMap<Vec<(GradedVariable, usize)>, GStarPolynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            let key = Self::multiplicities(w).into_iter().map(|(v, m)| (v.clone(), m)).collect();
            parts.entry(key).or_default().add_term(w.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    pub fn display_with(&self, names: &ElementNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs} * "));
            }
            let factors: Vec<String> = w.iter().map(|v| v.display_with(names)).collect();
            out.push_str(&factors.join(" * "));
        }
        out
    }
}

impl fmt::Display for GStarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&ElementNames::default()))
    }
}

/// Full polarization of a multihomogeneous polynomial. A variable of
/// multiplicity `m` becomes `m` fresh variables of the same sign and degree;
/// variables are renumbered `1, 2, ...` in their original order.
pub fn multilinearize(poly: &GStarPolynomial) -> Result<GStarPolynomial> {
    if poly.is_multilinear() {
        return Ok(poly.clone());
    }
    if !poly.is_multihomogeneous() {
        return Err(Error::Structural(format!("{poly} is not multihomogeneous")));
    }
    let first = poly.terms.keys().next().expect("nonzero");
    let mult = GStarPolynomial::multiplicities(first);
    let mut fresh: BTreeMap<GradedVariable, Vec<GradedVariable>> = BTreeMap::new();
    let mut next = 1;
    for (v, &m) in &mult {
        let vars = (next..next + m).map(|i| GradedVariable::new(i, v.sign, v.degree.clone())).collect();
        fresh.insert((*v).clone(), vars);
        next += m;
    }
    let mut out = GStarPolynomial::zero();
    for (w, c) in &poly.terms {
        // every way of handing each variable's fresh copies to its occurrences
        let mut words: Vec<Word> = vec![w.clone()];
        for (v, copies) in &fresh {
            let slots: Vec<usize> = w.iter().enumerate().filter(|(_, x)| *x == v).map(|(i, _)| i).collect();
            let mut next_words = Vec::new();
            for base in &words {
                for perm in permutations(copies.len()) {
                    let mut nw = base.clone();
                    for (slot, &pi) in slots.iter().zip(&perm) {
                        nw[*slot] = copies[pi].clone();
                    }
                    next_words.push(nw);
                }
            }
            words = next_words;
        }
        for nw in words {
            out.add_term(nw, c.clone());
        }
    }
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Advances to the lexicographically next permutation; `false` at the end.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographic rank of a permutation of `0..n` (Lehmer code).
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Counts `(n_1, ..., n_{2t})`: block `2i` holds symmetric and block `2i+1`
/// skew variables of degree `g_i`, with `g_i` in group enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree {
    counts: Vec<usize>,
}

impl MultiDegree {
    pub fn new(group: &FiniteAbelianGroup, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != 2 * group.order() {
            return Err(Error::Structural(format!(
                "multidegree needs {} counts, got {}",
                2 * group.order(),
                counts.len()
            )));
        }
        Ok(Self { counts })
    }

    /// Builds from `(degree, sign, count)` triples; unlisted blocks are 0.
    pub fn from_blocks(group: &FiniteAbelianGroup, blocks: &[(GroupElement, Sign, usize)]) -> Result<Self> {
        let mut counts = vec![0; 2 * group.order()];
        for (g, s, c) in blocks {
            if !group.contains(g) {
                return Err(Error::GroupMismatch(format!("{g} is not in {group}")));
            }
            counts[Self::block_index(group, g, *s)] += c;
        }
        Ok(Self { counts })
    }

    pub fn block_index(group: &FiniteAbelianGroup, g: &GroupElement, sign: Sign) -> usize {
        2 * group.index_of(g) + usize::from(sign == Sign::Minus)
    }

    pub fn block_label(group: &FiniteAbelianGroup, b: usize) -> (GroupElement, Sign) {
        let g = group.all_elements()[b / 2].clone();
        (g, if b.is_multiple_of(2) { Sign::Plus } else { Sign::Minus })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// All multidegrees of total `n`, in colexicographic order.
    pub fn all(group: &FiniteAbelianGroup, n: usize) -> Vec<MultiDegree> {
        fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if slots == 1 {
                cur.push(rest);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for c in 0..=rest {
                cur.push(c);
                go(rest - c, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, 2 * group.order(), &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        out.into_iter().map(|counts| MultiDegree { counts }).collect()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(";"))
    }
}

/// The variables `x_1, ..., x_n` of `P_<n>`, laid out block by block.
#[derive(Clone, Debug)]
pub struct VariableFrame {
    group: FiniteAbelianGroup,
    multidegree: MultiDegree,
    variables: Vec<GradedVariable>,
    blocks: Vec<usize>,
}

impl VariableFrame {
    pub fn new(group: &FiniteAbelianGroup, multidegree: MultiDegree) -> Self {
        let mut variables = Vec::new();
        let mut blocks = Vec::new();
        for (b, &c) in multidegree.counts().iter().enumerate() {
            let (g, s) = MultiDegree::block_label(group, b);
            for _ in 0..c {
                variables.push(GradedVariable::new(variables.len() + 1, s, g.clone()));
                blocks.push(b);
            }
        }
        Self { group: group.clone(), multidegree, variables, blocks }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn multidegree(&self) -> &MultiDegree {
        &self.multidegree
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.variables
    }

    pub fn block_of(&self, position: usize) -> usize {
        self.blocks[position]
    }

    /// Positions of each block's variables.
    pub fn block_positions(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.multidegree.counts().len()];
        for (pos, &b) in self.blocks.iter().enumerate() {
            out[b].push(pos);
        }
        out
    }

    pub fn position(&self, v: &GradedVariable) -> Option<usize> {
        self.variables.iter().position(|x| x == v)
    }

    pub fn word(&self, perm: &[usize]) -> Word {
        perm.iter().map(|&i| self.variables[i].clone()).collect()
    }

    /// Coordinates of a multilinear polynomial of this frame in the basis of
    /// monomials ordered by permutation rank.
    pub fn to_vector(&self, poly: &GStarPolynomial) -> Result<Vec<Rational>> {
        let n = self.n();
        let mut v = vec![Rational::zero(); factorial(n) as usize];
        for (w, c) in poly.terms() {
            let perm: Option<Vec<usize>> = w.iter().map(|x| self.position(x)).collect();
            let perm = perm
                .filter(|p| p.len() == n && p.iter().collect::<HashSet<_>>().len() == n)
                .ok_or_else(|| Error::Structural(format!("{poly} is not a multilinear polynomial of this frame")))?;
            v[perm_rank(&perm)] += c;
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[Rational]) -> GStarPolynomial {
        let n = self.n();
        GStarPolynomial::from_terms(
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (self.word(&perm_unrank(n, r)), c.clone())),
        )
    }
}

/// All `n!` orderings of the frame's variables, lexicographic by permutation.
pub fn multilinear_monomials(frame: &VariableFrame) -> Vec<Word> {
    if frame.n() == 0 {
        return Vec::new();
    }
    permutations(frame.n()).iter().map(|p| frame.word(p)).collect()
}

pub type Assignment = BTreeMap<GradedVariable, Vector>;

/// Whether `v` lies in `A_g^{sign}`.
pub fn in_component(a: &GStarAlgebra, v: &[Rational], g: &GroupElement, sign: Sign) -> bool {
    let homogeneous = v.iter().enumerate().all(|(i, x)| x.is_zero() || a.degree(i) == g);
    let s = q(sign.value());
    homogeneous && a.star(v).iter().zip(v).all(|(x, y)| *x == &s * y)
}

/// Exact value of `poly` under `assignment`.
pub fn evaluate(poly: &GStarPolynomial, a: &GStarAlgebra, assignment: &Assignment) -> Result<Vector> {
    for v in poly.variables() {
        let value = assignment.get(&v).ok_or_else(|| Error::Structural(format!("no value assigned to {v}")))?;
        if value.len() != a.dim() || !in_component(a, value, &v.degree, v.sign) {
            return Err(Error::OutsideComponent { variable: v.to_string() });
        }
    }
    let mut total = a.zero_vector();
    for (w, c) in poly.terms() {
        let mut prod = assignment[&w[0]].clone();
        for v in &w[1..] {
            if is_zero_vec(&prod) {
                break;
            }
            prod = a.mul(&prod, &assignment[v]);
        }
        for (t, x) in total.iter_mut().zip(prod) {
            *t += c * x;
        }
    }
    Ok(total)
}

/// An assignment of component basis vectors on which `poly` does not vanish,
/// together with the value. `None` means `poly` is an identity of `a`.
pub fn find_nonvanishing(poly: &GStarPolynomial, a: &GStarAlgebra) -> Result<Option<(Assignment, Vector)>> {
    for part in poly.homogeneous_components() {
        let lin = multilinearize(&part)?;
        let vars: Vec<GradedVariable> = lin.variables().into_iter().collect();
        let bases: Vec<Vec<Vector>> = vars.iter().map(|v| a.component_basis(&v.degree, v.sign)).collect();
        if bases.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0; vars.len()];
        loop {
            let assignment: Assignment =
                vars.iter().zip(&idx).zip(&bases).map(|((v, &i), b)| (v.clone(), b[i].clone())).collect();
            let value = evaluate(&lin, a, &assignment)?;
            if !is_zero_vec(&value) {
                return Ok(Some((assignment, value)));
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < bases[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether `poly` vanishes on `a`. Non-multilinear input is polarized first;
/// polynomials of degree above `max_degree` are refused.
pub fn is_identity(poly: &GStarPolynomial, a: &GStarAlgebra, max_degree: usize) -> Result<bool> {
    if poly.degree() > max_degree {
        return Err(Error::ResourceCap {
            frame: format!("degree {}", poly.degree()),
            reason: format!("identity check capped at degree {max_degree}"),
        });
    }
    Ok(find_nonvanishing(poly, a)?.is_none())
}

/// Names for group elements used by the polynomial grammar.
#[derive(Clone, Debug, Default)]
pub struct ElementNames {
    names: BTreeMap<String, GroupElement>,
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

impl ElementNames {
    /// Parses bindings such as `g=(1); h=(0,1)` (separated by `;` or spaces).
    pub fn parse(text: &str, group: &FiniteAbelianGroup) -> Result<Self> {
        let mut out = Self::default();
        out.extend(text, group)?;
        Ok(out)
    }

    pub fn extend(&mut self, text: &str, group: &FiniteAbelianGroup) -> Result<()> {
        for binding in text.split(|c: char| c == ';' || c.is_whitespace()).filter(|b| !b.is_empty()) {
            let (name, value) = binding
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("element binding {binding:?} needs name=(exponents)")))?;
            let name = name.trim();
            if !is_name(name) {
                return Err(Error::Parse(format!("bad element name {name:?}")));
            }
            let g = group.parse_element(value.trim())?;
            self.bind(name, g);
        }
        Ok(())
    }

    pub fn bind(&mut self, name: &str, g: GroupElement) {
        self.names.insert(name.to_string(), g);
    }

    pub fn get(&self, name: &str) -> Option<&GroupElement> {
        self.names.get(name)
    }

    /// Accepts a bound name, `1` for the identity, or an exponent tuple.
    pub fn resolve(&self, text: &str, group: &FiniteAbelianGroup) -> Result<GroupElement> {
        let t = text.trim();
        if t == "1" {
            return Ok(group.identity());
        }
        if let Some(g) = self.names.get(t) {
            return Ok(g.clone());
        }
        if t.starts_with('(') {
            return group.parse_element(t);
        }
        Err(Error::Parse(format!("unknown group element {t:?} (bind it with --elems)")))
    }

    pub fn name_of(&self, g: &GroupElement) -> String {
        if let Some((name, _)) = self.names.iter().find(|(_, x)| *x == g) {
            return name.clone();
        }
        if g.exponents().iter().all(|&e| e == 0) {
            return "1".into();
        }
        g.to_string()
    }

    /// Block name for multipartition notation, e.g. `g+`.
    pub fn block_name(&self, group: &FiniteAbelianGroup, block: usize) -> String {
        let (g, s) = MultiDegree::block_label(group, block);
        format!("{}{}", self.name_of(&g), s)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in polynomial", self.pos))
    }
}

/// Parses `poly := term (('+'|'-') term)*`,
/// `term := [rational '*'] factor ('*' factor)*`,
/// `factor := 'x' INT '^' ('+'|'-') '_' gelem`. Whitespace is ignored.
pub fn parse_polynomial(text: &str, group: &FiniteAbelianGroup, names: &ElementNames) -> Result<GStarPolynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !compact.is_ascii() {
        return Err(Error::Parse("polynomial text must be ASCII".into()));
    }
    let mut cur = Cursor { s: compact.as_bytes(), pos: 0 };
    let mut poly = GStarPolynomial::zero();
    let mut first = true;
    while cur.peek().is_some() || first {
        let negative = if cur.eat(b'-') {
            true
        } else {
            if !first && !cur.eat(b'+') {
                return Err(cur.error("expected '+' or '-'"));
            }
            if first {
                cur.eat(b'+');
            }
            false
        };
        first = false;
        let mut coeff = Rational::one();
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = cur.take_while(|c| c.is_ascii_digit() || c == b'/').to_string();
            coeff = parse_rational(&num)?;
            cur.expect(b'*')?;
        }
        let mut word = Vec::new();
        loop {
            cur.expect(b'x')?;
            let idx = cur.take_while(|c| c.is_ascii_digit());
            let index: usize = idx.parse().map_err(|_| cur.error("expected variable index"))?;
            if index == 0 {
                return Err(cur.error("variable indices start at 1"));
            }
            cur.expect(b'^')?;
            let sign = if cur.eat(b'+') {
                Sign::Plus
            } else if cur.eat(b'-') {
                Sign::Minus
            } else {
                return Err(cur.error("expected '+' or '-' after '^'"));
            };
            cur.expect(b'_')?;
            let elem = if cur.peek() == Some(b'(') {
                cur.take_while(|c| c != b')').to_string() + if cur.eat(b')') { ")" } else { "" }
            } else {
                cur.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string()
            };
            if elem.is_empty() {
                return Err(cur.error("expected a group element"));
            }
            let degree = names.resolve(&elem, group)?;
            word.push(GradedVariable::new(index, sign, degree));
            if !cur.eat(b'*') {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        poly.add_term(word, coeff);
    }
    Ok(poly)
}

/// Reads a generators file: `#` comments, an optional header line
/// `elems: g=(1); h=(0,1)`, then one polynomial per line.
pub fn parse_generators(
    text: &str,
    group: &FiniteAbelianGroup,
    names: &ElementNames,
) -> Result<(ElementNames, Vec<GStarPolynomial>)> {
    let mut names = names.clone();
    let mut gens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(bindings) = line.strip_prefix("elems:") {
            names.extend(bindings, group)?;
            continue;
        }
        let p = parse_polynomial(line, group, &names).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        gens.push(p);
    }
    Ok((names, gens))
}

/// A multilinear generator in positional form: variable `j` has
/// `(sign, degree) = vars[j]`; each term is a word over `0..vars.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Prepared {
    vars: Vec<(Sign, GroupElement)>,
    terms: Vec<(Vec<usize>, Rational)>,
}

/// Multilinear, multihomogeneous generators together with their images
/// under the involution (identities are closed under `*`).
fn prepare(generators: &[GStarPolynomial]) -> Result<Vec<Prepared>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in generators {
        for part in g.homogeneous_components() {
            let lin = multilinearize(&part)?;
            for h in [lin.clone(), lin.star()] {
                let vars: Vec<GradedVariable> = h.variables().into_iter().collect();
                let pos: HashMap<&GradedVariable, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
                let terms = h.terms().map(|(w, c)| (w.iter().map(|v| pos[v]).collect(), c.clone())).collect();
                let p = Prepared { vars: vars.iter().map(|v| (v.sign, v.degree.clone())).collect(), terms };
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    // short generators first: they tend to saturate quickly
    out.sort_by_key(|p| p.vars.len());
    Ok(out)
}

struct ConsequenceWalker<'a> {
    frame: &'a VariableFrame,
    degrees: Vec<GroupElement>,
    signs: Vec<i64>,
    n: usize,
}

impl ConsequenceWalker<'_> {
    /// `m + eps m^*` as a list of words, or empty when it vanishes.
    fn signed_part(&self, m: &[usize], eps: Sign) -> Vec<(Vec<usize>, Rational)> {
        let s: i64 = m.iter().map(|&i| self.signs[i]).product::<i64>() * eps.value();
        let rev: Vec<usize> = m.iter().rev().copied().collect();
        if rev == m {
            if s == 1 {
                vec![(m.to_vec(), q(2))]
            } else {
                Vec::new()
            }
        } else {
            vec![(m.to_vec(), q(1)), (rev, q(s))]
        }
    }

    fn inner(&self, p: &Prepared, chosen: &[Vec<usize>]) -> Vec<(Vec<usize>, Rational)> {
        let parts: Vec<Vec<(Vec<usize>, Rational)>> =
            chosen.iter().zip(&p.vars).map(|(m, (s, _))| self.signed_part(m, *s)).collect();
        if parts.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut acc: HashMap<Vec<usize>, Rational> = HashMap::new();
        for (w, c) in &p.terms {
            let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
            for &j in w {
                partial = partial
                    .into_iter()
                    .flat_map(|(pre, pc)| {
                        parts[j].iter().map(move |(m, mc)| {
                            let mut nw = pre.clone();
                            nw.extend_from_slice(m);
                            (nw, &pc * mc)
                        })
                    })
                    .collect();
            }
            for (nw, nc) in partial {
                *acc.entry(nw).or_insert_with(Rational::zero) += nc;
            }
        }
        let mut out: Vec<(Vec<usize>, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort();
        out
    }

    fn bordered(
        &self,
        inner: &[(Vec<usize>, Rational)],
        used: u64,
        sink: &mut dyn FnMut(Vec<(usize, Rational)>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut rest: Vec<usize> = (0..self.n).filter(|i| used >> i & 1 == 0).collect();
        loop {
            for split in 0..=rest.len() {
                let entries = inner
                    .iter()
                    .map(|(w, c)| {
                        let full: Vec<usize> =
                            rest[..split].iter().chain(w.iter()).chain(rest[split..].iter()).copied().collect();
                        (perm_rank(&full), c.clone())
                    })
                    .collect();
                sink(entries)?;
            }
            if !next_permutation(&mut rest) {
                return ControlFlow::Continue(());
            }
        }
    }

    fn substitute(
        &self,
        p: &Prepared,
        chosen: &mut Vec<Vec<usize>>,
        used: u64,
        sink: &mut dyn FnMut(Vec<(usize, Rational)>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let j = chosen.len();
        if j == p.vars.len() {
            let inner = self.inner(p, chosen);
            if inner.is_empty() {
                return ControlFlow::Continue(());
            }
            return self.bordered(&inner, used, sink);
        }
        let group = self.frame.group();
        let still_needed = p.vars.len() - j - 1;
        let target = &p.vars[j].1;
        let mut monomial = Vec::new();
        self.extend(p, chosen, used, &mut monomial, group.identity(), target, still_needed, sink)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        p: &Prepared,
        chosen: &mut Vec<Vec<usize>>,
        used: u64,
        monomial: &mut Vec<usize>,
        degree: GroupElement,
        target: &GroupElement,
        still_needed: usize,
        sink: &mut dyn FnMut(Vec<(usize, Rational)>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let free = self.n - used.count_ones() as usize;
        if free <= still_needed {
            return ControlFlow::Continue(());
        }
        let group = self.frame.group();
        for i in 0..self.n {
            if used >> i & 1 == 1 {
                continue;
            }
            let d = group.mul_unchecked(&degree, &self.degrees[i]);
            monomial.push(i);
            let now = used | 1 << i;
            if &d == target {
                chosen.push(monomial.clone());
                self.substitute(p, chosen, now, sink)?;
                chosen.pop();
            }
            self.extend(p, chosen, now, monomial, d, target, still_needed, sink)?;
            monomial.pop();
        }
        ControlFlow::Continue(())
    }
}

/// Streams spanning vectors (sparse, indexed by permutation rank) of the
/// multilinear part at `frame` of the ideal generated by `generators`,
/// closed under graded `*`-substitutions and two-sided multiplication.
/// Stops early when `sink` breaks.
pub fn for_each_consequence(
    generators: &[GStarPolynomial],
    frame: &VariableFrame,
    sink: &mut dyn FnMut(Vec<(usize, Rational)>) -> ControlFlow<()>,
) -> Result<()> {
    let n = frame.n();
    if n == 0 {
        return Ok(());
    }
    if n > 20 {
        return Err(Error::ResourceCap { frame: frame.multidegree().to_string(), reason: "n > 20".into() });
    }
    let prepared = prepare(generators)?;
    let walker = ConsequenceWalker {
        frame,
        degrees: frame.variables().iter().map(|v| v.degree.clone()).collect(),
        signs: frame.variables().iter().map(|v| v.sign.value()).collect(),
        n,
    };
    for p in &prepared {
        if p.vars.len() > n {
            continue;
        }
        if walker.substitute(p, &mut Vec::new(), 0, sink).is_break() {
            break;
        }
    }
    Ok(())
}

/// Rank of the consequence space at a frame, with independent witnesses.
#[derive(Clone, Debug)]
pub struct ConsequenceSpan {
    pub rank: usize,
    /// Linearly independent consequence vectors, `rank` of them.
    pub vectors: Vec<Vec<(usize, Rational)>>,
}

/// Exact rank of the consequences at `frame`, stopping once `target` is
/// reached. Independence is detected modulo a large prime (which certifies
/// rational independence); only when that falls short of `target` is the
/// rank recomputed exactly over the rationals.
pub fn consequence_span(
    generators: &[GStarPolynomial],
    frame: &VariableFrame,
    target: Option<usize>,
) -> Result<ConsequenceSpan> {
    let len = factorial(frame.n()) as usize;
    let target = target.unwrap_or(len).min(len);
    let mut modular = ModularEchelon::new(len);
    let mut vectors = Vec::new();
    let mut unreducible = false;
    if target > 0 {
        for_each_consequence(generators, frame, &mut |v| {
            match modular.insert_sparse(&v) {
                Some(true) => vectors.push(v),
                Some(false) => {}
                None => unreducible = true,
            }
            if vectors.len() >= target {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
    }
    if vectors.len() >= target && !unreducible {
        return Ok(ConsequenceSpan { rank: vectors.len(), vectors });
    }
    let mut exact = EchelonBasis::new(len);
    let mut seen = HashSet::new();
    let mut vectors = Vec::new();
    for_each_consequence(generators, frame, &mut |v| {
        if seen.insert(v.clone()) {
            let mut dense = vec![Rational::zero(); len];
            for (i, c) in &v {
                dense[*i] += c;
            }
            if exact.insert(dense) {
                vectors.push(v);
            }
        }
        if exact.dim() >= target {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(ConsequenceSpan { rank: exact.dim(), vectors })
}

/// A basis (as polynomials) of the multilinear consequences at `frame`.
pub fn consequences_at(generators: &[GStarPolynomial], frame: &VariableFrame) -> Result<Vec<GStarPolynomial>> {
    let len = factorial(frame.n()) as usize;
    let span = consequence_span(generators, frame, Some(len))?;
    Ok(span
        .vectors
        .iter()
        .map(|v| {
            let mut dense = vec![Rational::zero(); len];
            for (i, c) in v {
                dense[*i] += c;
            }
            frame.from_vector(&dense)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, ChainVariant, GrassmannInvolution};
    use proptest::prelude::*;

    fn c4() -> (FiniteAbelianGroup, GroupElement, ElementNames) {
        let g = FiniteAbelianGroup::cyclic(4);
        let gen = g.element(&[1]).unwrap();
        let names = ElementNames::parse("g=(1); g2=(2); g3=(3)", &g).unwrap();
        (g, gen, names)
    }

    fn g2tau() -> GStarAlgebra {
        let (g, gen, _) = c4();
        catalog::grassmann2(&g, &gen, &gen, GrassmannInvolution::Tau).unwrap()
    }

    fn frame(group: &FiniteAbelianGroup, blocks: &[(GroupElement, Sign, usize)]) -> VariableFrame {
        VariableFrame::new(group, MultiDegree::from_blocks(group, blocks).unwrap())
    }

    #[test]
    fn monomial_lists() {
        let t = FiniteAbelianGroup::trivial();
        for (n, count) in [(1, 1), (2, 2), (3, 6)] {
            let f = frame(&t, &[(t.identity(), Sign::Plus, n)]);
            let ms = multilinear_monomials(&f);
            assert_eq!(ms.len(), count);
            assert_eq!(ms[0], f.variables().to_vec());
        }
        let empty = VariableFrame::new(&t, MultiDegree::new(&t, vec![0, 0]).unwrap());
        assert!(multilinear_monomials(&empty).is_empty());
    }

    #[test]
    fn permutation_ranks() {
        for n in 0..6 {
            for (r, p) in permutations(n).iter().enumerate() {
                assert_eq!(perm_rank(p), r);
                assert_eq!(&perm_unrank(n, r), p);
            }
        }
    }

    #[test]
    fn multidegree_enumeration() {
        let g = FiniteAbelianGroup::cyclic(2);
        let all = MultiDegree::all(&g, 2);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0].counts(), [2, 0, 0, 0]);
        assert_eq!(all.last().unwrap().counts(), [0, 0, 0, 2]);
        assert_eq!(all[0].to_string(), "2;0;0;0");
    }

    #[test]
    fn evaluation_examples() {
        let (g, gen, names) = c4();
        let a = g2tau();
        let x1 = GradedVariable::new(1, Sign::Minus, gen.clone());
        let x2 = GradedVariable::new(2, Sign::Minus, gen.clone());
        let assignment: Assignment =
            [(x1.clone(), a.basis_vector(1)), (x2.clone(), a.basis_vector(2))].into_iter().collect();
        let anti = parse_polynomial("x1^-_g * x2^-_g + x2^-_g * x1^-_g", &g, &names).unwrap();
        assert!(is_zero_vec(&evaluate(&anti, &a, &assignment).unwrap()));
        let comm = parse_polynomial("x1^-_g * x2^-_g - x2^-_g * x1^-_g", &g, &names).unwrap();
        assert_eq!(evaluate(&comm, &a, &assignment).unwrap(), vec![q(0), q(0), q(0), q(2)]);

        let c3 = catalog::commutative_chain(&FiniteAbelianGroup::trivial(), 3, ChainVariant::Star, None).unwrap();
        let t = FiniteAbelianGroup::trivial();
        let y = GradedVariable::new(1, Sign::Plus, t.identity());
        let square = GStarPolynomial::monomial(vec![y.clone(), y.clone()]);
        let unit = c3.unit().unwrap().clone();
        let value = evaluate(&square, &c3, &[(y.clone(), unit.clone())].into_iter().collect()).unwrap();
        assert_eq!(value, unit);

        let bad: Assignment = [(x1.clone(), a.basis_vector(0)), (x2, a.basis_vector(2))].into_iter().collect();
        assert!(matches!(evaluate(&anti, &a, &bad), Err(Error::OutsideComponent { .. })));
    }

    #[test]
    fn identity_examples() {
        let (g, _, names) = c4();
        let a = g2tau();
        assert!(is_identity(&parse_polynomial("x1^-_1", &g, &names).unwrap(), &a, 6).unwrap());
        assert!(!is_identity(&parse_polynomial("x1^-_g", &g, &names).unwrap(), &a, 6).unwrap());
        assert!(is_identity(&parse_polynomial("x1^+_g", &g, &names).unwrap(), &a, 6).unwrap());
        let c3 = catalog::commutative_chain(&FiniteAbelianGroup::trivial(), 3, ChainVariant::Star, None).unwrap();
        let t = FiniteAbelianGroup::trivial();
        let comm = parse_polynomial("x1^+_1*x2^+_1 - x2^+_1*x1^+_1", &t, &ElementNames::default()).unwrap();
        assert!(is_identity(&comm, &c3, 6).unwrap());
        let long = parse_polynomial("x1^+_1*x1^+_1*x1^+_1", &t, &ElementNames::default()).unwrap();
        assert!(matches!(is_identity(&long, &c3, 2), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn polarization_examples() {
        let t = FiniteAbelianGroup::trivial();
        let names = ElementNames::default();
        let sq = parse_polynomial("x1^+_1 * x1^+_1", &t, &names).unwrap();
        let expected = parse_polynomial("x1^+_1*x2^+_1 + x2^+_1*x1^+_1", &t, &names).unwrap();
        assert_eq!(multilinearize(&sq).unwrap(), expected);
        assert_eq!(multilinearize(&expected).unwrap(), expected);
        let cube = parse_polynomial("x1^+_1*x1^+_1*x1^+_1", &t, &names).unwrap();
        let lin = multilinearize(&cube).unwrap();
        assert_eq!(lin.len(), 6);
        // re-identifying the fresh variables recovers 3! times the cube
        let x = GradedVariable::new(1, Sign::Plus, t.identity());
        let back = GStarPolynomial::from_terms(lin.terms().map(|(w, c)| (vec![x.clone(); w.len()], c.clone())));
        assert_eq!(back, cube.scaled(&q(6)));
        let mixed = parse_polynomial("x1^+_1 + x1^+_1*x1^+_1", &t, &names).unwrap();
        assert!(multilinearize(&mixed).is_err());
    }

    #[test]
    fn grammar_round_trip_and_errors() {
        let (g, _, names) = c4();
        let p = parse_polynomial(" 3/2 * x1^+_g*x2^-_(2) - x2^-_g2 * x1^+_g ", &g, &names).unwrap();
        assert_eq!(parse_polynomial(&p.display_with(&names), &g, &names).unwrap(), p);
        assert_eq!(parse_polynomial(&p.to_string(), &g, &names).unwrap(), p);
        for bad in ["", "x1", "x0^+_g", "x1^+_q", "2 x1^+_g", "x1^+_g +", "1/0*x1^+_g", "x1^*_g"] {
            assert!(matches!(parse_polynomial(bad, &g, &names), Err(Error::Parse(_))), "{bad}");
        }
        let (n2, gens) =
            parse_generators("# comment\nelems: h=(2)\nx1^-_1\n\nx1^+_h # trailing\n", &g, &ElementNames::default())
                .unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(n2.get("h"), Some(&g.element(&[2]).unwrap()));
    }

    #[test]
    fn consequence_examples() {
        let (g, gen, names) = c4();
        let skew1 = frame(&g, &[(g.identity(), Sign::Minus, 1)]);
        let cons = consequences_at(&[parse_polynomial("x1^-_1", &g, &names).unwrap()], &skew1).unwrap();
        assert_eq!(cons.len(), 1);
        let two = frame(&g, &[(gen.clone(), Sign::Plus, 2)]);
        let cons = consequences_at(&[parse_polynomial("x1^+_g * x2^+_g", &g, &names).unwrap()], &two).unwrap();
        assert_eq!(cons.len(), 2);
        let none = consequences_at(&[], &two).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn substitution_uses_signed_parts() {
        // x^-_1 forces every skew degree-1 product to vanish: at a frame of
        // two symmetric degree-1 variables that is the commutator
        let t = FiniteAbelianGroup::trivial();
        let names = ElementNames::default();
        let f = frame(&t, &[(t.identity(), Sign::Plus, 2)]);
        let cons = consequences_at(&[parse_polynomial("x1^-_1", &t, &names).unwrap()], &f).unwrap();
        assert_eq!(cons.len(), 1);
        let comm = parse_polynomial("x1^+_1*x2^+_1 - x2^+_1*x1^+_1", &t, &names).unwrap();
        let v = f.to_vector(&cons[0]).unwrap();
        let w = f.to_vector(&comm).unwrap();
        assert_eq!(v[0].clone() * &w[1], v[1].clone() * &w[0]);
    }

    fn random_component_vector(a: &GStarAlgebra, v: &GradedVariable, seed: &[i64]) -> Vector {
        let basis = a.component_basis(&v.degree, v.sign);
        let mut out = a.zero_vector();
        for (b, &c) in basis.iter().zip(seed.iter().cycle()) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += x * q(c);
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn identity_check_agrees_with_random_evaluations(
            coeffs in proptest::collection::vec(-2i64..=2, 2),
            seeds in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 3),
        ) {
            let (g, _, names) = c4();
            let a = g2tau();
            let basis = [
                "x1^-_g * x2^-_g + x2^-_g * x1^-_g",
                "x1^-_g * x2^+_1 - x2^+_1 * x1^-_g",
            ];
            let p = parse_polynomial(basis[0], &g, &names).unwrap().scaled(&q(coeffs[0]))
                .plus(&parse_polynomial(basis[1], &g, &names).unwrap().scaled(&q(coeffs[1])));
            let identity = is_identity(&p, &a, 6).unwrap();
            let vars: Vec<GradedVariable> = p.variables().into_iter().collect();
            let assignment: Assignment = vars.iter().zip(&seeds)
                .map(|(v, s)| (v.clone(), random_component_vector(&a, v, s))).collect();
            if identity {
                prop_assert!(is_zero_vec(&evaluate(&p, &a, &assignment).unwrap()));
            }
        }

        #[test]
        fn evaluation_is_linear_in_each_slot(s in proptest::collection::vec(-4i64..=4, 6)) {
            let (g, gen, names) = c4();
            let a = g2tau();
            let p = parse_polynomial("x1^-_g * x2^+_1 + 2 * x2^+_1 * x1^-_g", &g, &names).unwrap();
            let x1 = GradedVariable::new(1, Sign::Minus, gen.clone());
            let x2 = GradedVariable::new(2, Sign::Plus, g.identity());
            let u = random_component_vector(&a, &x1, &s[0..2]);
            let v = random_component_vector(&a, &x1, &s[2..4]);
            let w = random_component_vector(&a, &x2, &s[4..6]);
            let sum: Vector = u.iter().zip(&v).map(|(x, y)| x + y).collect();
            let at = |x: &Vector| evaluate(&p, &a, &[(x1.clone(), x.clone()), (x2.clone(), w.clone())].into_iter().collect()).unwrap();
            let lhs = at(&sum);
            let rhs: Vector = at(&u).iter().zip(at(&v)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn polarization_is_symmetric_in_fresh_copies(k in 2usize..4) {
            let t = FiniteAbelianGroup::trivial();
            let x = GradedVariable::new(1, Sign::Plus, t.identity());
            let y = GradedVariable::new(2, Sign::Minus, t.identity());
            let mut word = vec![x.clone(); k];
            word.push(y);
            let lin = multilinearize(&GStarPolynomial::monomial(word)).unwrap();
            for swap in 1..k {
                let swapped = GStarPolynomial::from_terms(lin.terms().map(|(w, c)| {
                    let w2 = w.iter().map(|v| {
                        let mut v = v.clone();
                        if v.index == 1 { v.index = swap + 1 } else if v.index == swap + 1 { v.index = 1 }
                        v
                    }).collect();
                    (w2, c.clone())
                }));
                prop_assert_eq!(&swapped, &lin);
            }
        }
    }
}

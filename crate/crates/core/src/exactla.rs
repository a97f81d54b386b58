//! Dense exact-rational linear algebra.
//!
//! Pivoting always takes the first nonzero entry in column order, so pivot
//! sets (and everything derived from them) are reproducible across runs.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Structural(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(cols, &rows).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Structural(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row-echelon form and the (strictly increasing) pivot columns.
pub fn rref_with_pivots(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].recip();
        for j in col..a.cols {
            let v = &a[(row, j)] * &inv;
            a[(row, j)] = v;
        }
        let pivot_row: Vec<Rational> = a.row(row).to_vec();
        for i in 0..a.rows {
            if i == row || a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..a.cols {
                if !pivot_row[j].is_zero() {
                    let v = &factor * &pivot_row[j];
                    a[(i, j)] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref_with_pivots(m).1.len()
}

/// Basis of the right null space `{ v : M v = 0 }`; one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref_with_pivots(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum_i c_i * basis.row(i) = target`, or `None` when
/// the target is not in the row span. Free coefficients are set to zero.
pub fn solve_in_span(basis: &RationalMatrix, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if target.len() != basis.cols {
        return Err(Error::Structural(format!(
            "target of length {} against rows of length {}",
            target.len(),
            basis.cols
        )));
    }
    let k = basis.rows;
    let mut aug = RationalMatrix::zeros(basis.cols, k + 1);
    for i in 0..k {
        for j in 0..basis.cols {
            aug[(j, i)] = basis[(i, j)].clone();
        }
    }
    for (j, t) in target.iter().enumerate() {
        aug[(j, k)] = t.clone();
    }
    let (r, pivots) = rref_with_pivots(&aug);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        coeffs[p] = r[(i, k)].clone();
    }
    Ok(Some(coeffs))
}

/// Incrementally grown basis of a subspace of `Q^len`, kept fully reduced:
/// every stored vector has a leading 1 at its pivot and zeros at all other
/// pivots.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    vectors: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self { len, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Residual of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v;
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for b in self.vectors.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let factor = b[p].clone();
            for (x, y) in b.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.vectors.push(w);
        self.pivots.push(p);
        true
    }

    /// Stored vectors as rows of a matrix, sorted by pivot (i.e. an RREF).
    pub fn to_rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.vectors.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows: Vec<Vec<Rational>> = order.iter().map(|&i| self.vectors[i].clone()).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        (RationalMatrix::from_rows(self.len, &rows).expect("uniform length"), pivots)
    }
}

/// `true` when every entry is a nonnegative integer-valued rational.
pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Prime used by [`ModularEchelon`].
pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let prod = a as u128 * b as u128;
    let r = (prod as u64 & MODULUS) + (prod >> 61) as u64;
    if r >= MODULUS {
        r - MODULUS
    } else {
        r
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn bigint_mod(x: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    let r = ((x % &m) + &m) % &m;
    u64::try_from(r).expect("residue fits")
}

/// Image of `r` in `F_p`, or `None` when `p` divides the denominator.
pub fn rational_mod(r: &Rational) -> Option<u64> {
    let d = bigint_mod(r.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(r.numer()), pow_mod(d, MODULUS - 2)))
}

/// Echelon basis over `F_p` with `p = 2^61 - 1`.
///
/// Integer vectors that are independent mod `p` are independent over `Q`,
/// so a modular rank is a certified lower bound for the rational rank.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModularEchelon {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector given by its nonzero entries. Returns whether the
    /// dimension grew; `None` when some entry has no image mod `p`.
    pub fn insert_sparse(&mut self, entries: &[(usize, Rational)]) -> Option<bool> {
        let mut w = vec![0u64; self.len];
        for (i, r) in entries {
            w[*i] = (w[*i] + rational_mod(r)?) % MODULUS;
        }
        Some(self.insert(w))
    }

    pub fn insert(&mut self, mut w: Vec<u64>) -> bool {
        for (b, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p];
            if f == 0 {
                continue;
            }
            let neg = MODULUS - f;
            for (x, &y) in w.iter_mut().zip(b) {
                if y != 0 {
                    *x = (*x + mul_mod(neg, y)) % MODULUS;
                }
            }
        }
        let Some(p) = w.iter().position(|&x| x != 0) else { return false };
        let inv = pow_mod(w[p], MODULUS - 2);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        for b in self.rows.iter_mut() {
            let f = b[p];
            if f == 0 {
                continue;
            }
            let neg = MODULUS - f;
            for (x, &y) in b.iter_mut().zip(&w) {
                if y != 0 {
                    *x = (*x + mul_mod(neg, y)) % MODULUS;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

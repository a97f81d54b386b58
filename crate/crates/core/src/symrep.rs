//! Partitions, hook-length degrees and Murnaghan-Nakayama character values
//! for symmetric groups and their direct products.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

/// Cycle lengths of a permutation, as a partition.
pub type CycleType = Partition;

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"3+1+1"`; the empty partition is `""` or `"0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts of {s:?} must be positive and weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Comma-separated parts, as used inside multipartition notation.
    pub fn compact(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Degree of the irreducible character via the hook length formula.
pub fn hook_degree(lambda: &Partition) -> u64 {
    let parts = lambda.parts();
    let n = lambda.weight();
    let conj: Vec<usize> =
        (0..parts.first().copied().unwrap_or(0)).map(|j| parts.iter().filter(|&&p| p > j).count()).collect();
    let mut hooks: u128 = 1;
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks *= ((row - j) + (col - i) - 1) as u128;
        }
    }
    ((1..=n as u128).product::<u128>() / hooks) as u64
}

fn character_cache() -> &'static Mutex<HashMap<(Partition, Partition), i64>> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Murnaghan-Nakayama on beta-sets: removing a rim hook of length `r` moves
/// one bead from `b` to the free position `b - r`, with sign given by the
/// parity of beads strictly between.
fn mn_beta(beta: &mut Vec<usize>, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else { return 1 };
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[idx] = b - r;
        total += sign * mn_beta(beta, rest);
        beta[idx] = b;
    }
    total
}

/// Irreducible character `chi_lambda` at the class of cycle type `mu`.
pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::Structural(format!(
            "character of a partition of {} at a class of S_{}",
            lambda.weight(),
            mu.weight()
        )));
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = character_cache().lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let l = lambda.len();
    let mut beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let v = mn_beta(&mut beta, mu.parts());
    character_cache().lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// `n! / z_mu` with `z_mu = prod k^{m_k} m_k!`.
pub fn class_size(mu: &CycleType) -> u64 {
    let mut z: u64 = 1;
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for &k in mu.parts() {
        *counts.entry(k).or_default() += 1;
    }
    for (&k, &m) in &counts {
        z *= (k as u64).pow(m as u32) * factorial(m as usize);
    }
    factorial(mu.weight()) / z
}

/// The canonical permutation of the class: consecutive cycles in the order
/// of the (descending) parts, as images of `0..n`.
pub fn class_representative(mu: &CycleType) -> Vec<usize> {
    let mut perm = Vec::with_capacity(mu.weight());
    let mut start = 0;
    for &k in mu.parts() {
        for i in 0..k {
            perm.push(start + (i + 1) % k);
        }
        start += k;
    }
    perm
}

/// One partition per block; blocks follow the multidegree layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(pub Vec<Partition>);

/// Cycle types per block.
pub type MultiCycleType = Multipartition;

impl Multipartition {
    pub fn blocks(&self) -> &[Partition] {
        &self.0
    }

    pub fn weights(&self) -> Vec<usize> {
        self.0.iter().map(Partition::weight).collect()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(hook_degree).product()
    }

    /// Paper-style notation such as `(4)_1+|(1)_g-`; `block_name(b)` names
    /// block `b` (for instance `"1+"`). Empty blocks are omitted.
    pub fn notation(&self, block_name: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(b, p)| format!("({})_{}", p.compact(), block_name(b)))
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.join("|")
        }
    }
}

/// All multipartitions with the given block weights.
pub fn multipartitions(weights: &[usize]) -> Vec<Multipartition> {
    let mut out = vec![Vec::new()];
    for &w in weights {
        let ps = partitions(w);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Multipartition).collect()
}

/// Conjugacy classes of `S_{n_1} x ... x S_{n_k}` with their sizes.
pub fn multi_classes(weights: &[usize]) -> Vec<(MultiCycleType, u64)> {
    multipartitions(weights)
        .into_iter()
        .map(|m| {
            let size = m.0.iter().map(class_size).product();
            (m, size)
        })
        .collect()
}

/// Product of block characters.
pub fn multi_character(lambda: &Multipartition, mu: &MultiCycleType) -> Result<i64> {
    if lambda.0.len() != mu.0.len() {
        return Err(Error::Structural("multipartition block counts differ".into()));
    }
    lambda.0.iter().zip(&mu.0).map(|(l, m)| mn_character(l, m)).product()
}

/// `n! / prod n_i!`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<u64> {
    if parts.iter().sum::<usize>() != n {
        return Err(Error::Structural(format!("parts {parts:?} do not sum to {n}")));
    }
    // product of binomials keeps intermediates small
    let mut acc: u64 = 1;
    let mut seen = 0;
    for &p in parts {
        for i in 1..=p {
            seen += 1;
            acc = acc * seen as u64 / i as u64;
        }
    }
    Ok(acc)
}

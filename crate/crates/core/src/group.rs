//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are exponent vectors reduced modulo the cyclic orders. Enumeration
//! is lexicographic on exponent vectors with the identity first; multidegree
//! indexing depends on this order, so it must not change.

use std::fmt;

use crate::error::{Error, Result};

/// `C_{m_1} x ... x C_{m_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u32>,
}

/// An element of a [`FiniteAbelianGroup`], in canonical (reduced) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exponents: Vec<u32>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u32>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(Error::Structural("cyclic orders must be at least 1".into()));
        }
        Ok(Self { cyclic_orders })
    }

    /// The trivial group, with no cyclic factors.
    pub fn trivial() -> Self {
        Self { cyclic_orders: Vec::new() }
    }

    pub fn cyclic(m: u32) -> Self {
        Self::new(vec![m]).expect("cyclic order must be positive")
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().map(|&m| m as usize).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exponents: vec![0; self.cyclic_orders.len()] }
    }

    /// Builds an element, reducing exponents modulo the cyclic orders.
    pub fn element(&self, exponents: &[i64]) -> Result<GroupElement> {
        if exponents.len() != self.cyclic_orders.len() {
            return Err(Error::Structural(format!(
                "element has {} exponents, group has {} cyclic factors",
                exponents.len(),
                self.cyclic_orders.len()
            )));
        }
        let exponents =
            exponents.iter().zip(&self.cyclic_orders).map(|(&e, &m)| e.rem_euclid(m as i64) as u32).collect();
        Ok(GroupElement { exponents })
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.exponents.len() == self.cyclic_orders.len()
            && a.exponents.iter().zip(&self.cyclic_orders).all(|(&e, &m)| e < m)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Structural(format!("element {a} is not in the group {self}")))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let exponents =
            a.exponents.iter().zip(&b.exponents).zip(&self.cyclic_orders).map(|((&x, &y), &m)| (x + y) % m).collect();
        GroupElement { exponents }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let exponents = a.exponents.iter().zip(&self.cyclic_orders).map(|(&x, &m)| (m - x) % m).collect();
        GroupElement { exponents }
    }

    pub fn pow(&self, a: &GroupElement, k: u64) -> GroupElement {
        let exponents =
            a.exponents.iter().zip(&self.cyclic_orders).map(|(&x, &m)| ((x as u64 * k) % m as u64) as u32).collect();
        GroupElement { exponents }
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.exponents
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &m)| {
                let m = m as u64;
                m / num::integer::gcd(x as u64, m)
            })
            .fold(1, num::integer::lcm)
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.exponents.iter().all(|&e| e == 0)
    }

    /// All elements, identity first, lexicographic on exponent vectors.
    pub fn all_elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order());
        let mut cur = vec![0u32; self.cyclic_orders.len()];
        loop {
            out.push(GroupElement { exponents: cur.clone() });
            // odometer step, last coordinate fastest
            let mut pos = cur.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                cur[pos] += 1;
                if cur[pos] < self.cyclic_orders[pos] {
                    break;
                }
                cur[pos] = 0;
            }
        }
    }

    /// Position of `a` in [`all_elements`](Self::all_elements).
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.exponents.iter().zip(&self.cyclic_orders).fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    /// Parses `"(1,0)"`. The trivial group element is `"()"`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("group element must be parenthesised: {s:?}")))?;
        let exps: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {p:?} in {s:?}"))))
                .collect::<Result<_>>()?
        };
        self.element(&exps).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses `"2,2"`; an empty string or `"1"` gives the trivial group.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Self::trivial());
        }
        let orders = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad cyclic order {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

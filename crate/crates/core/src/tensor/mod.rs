//! Sparse operators on `(C^n)^{⊗k}` over an arbitrary coefficient ring, and
//! the matrix objects built from them (R-matrices, q-permutations,
//! antisymmetrizers, the diagonal matrix `D`).

pub mod perm;
pub mod rmatrix;

pub use perm::{
    antisymmetrizer, antisymmetrizer_with, fusion_check, fusion_lhs, fusion_residual, perm_action,
    q_permutation, q_permutation_with, reduced_word, PermKind,
};
pub use rmatrix::{
    crossing_check, crossing_check_factored, d_matrix, r_bar, r_full, r_full_with, r_two_param, r_two_param_with, r_uv_parts,
    unitarity_check, ybe_residual, ybe_residual_of, RBar,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Ring;
use crate::error::{invalid, Result};

/// Ordered list of distinct legs, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegSet(Vec<usize>);

impl LegSet {
    pub fn new(legs: Vec<usize>, k: usize) -> Result<Self> {
        for (p, &a) in legs.iter().enumerate() {
            if a == 0 || a > k {
                return invalid(format!("leg {a} out of range 1..={k}"));
            }
            if legs[..p].contains(&a) {
                return invalid(format!("leg {a} repeated"));
            }
        }
        Ok(LegSet(legs))
    }

    pub fn legs(&self) -> &[usize] {
        &self.0
    }
}

/// Linear operator on `(C^n)^{⊗k}` with entries in `R`.
///
/// Multi-indices are flattened base `n` with leg 1 as the most significant
/// digit; digits are 0-based internally. Products keep the order of entry
/// multiplication, so noncommutative entry rings are allowed.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorOp<R> {
    n: usize,
    k: usize,
    entries: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> TensorOp<R> {
    pub fn zero(n: usize, k: usize) -> Self {
        TensorOp { n, k, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Self::scalar(n, k, R::one())
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, k: usize, c: R) -> Self {
        let mut t = Self::zero(n, k);
        for a in 0..n.pow(k as u32) {
            t.add_entry(a, a, c.clone());
        }
        t
    }

    /// The matrix unit `e_ij` (1-based) on a single leg.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut t = Self::zero(n, 1);
        t.add_entry(i - 1, j - 1, R::one());
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    pub fn entry(&self, row: usize, col: usize) -> R {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(R::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &R)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, row: usize, col: usize, c: R) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&(row, col)) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.entries.remove(&(row, col));
                }
            }
            None => {
                self.entries.insert((row, col), c);
            }
        }
    }

    /// 0-based digits of a flattened index, leg 1 first.
    pub fn digits(&self, idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.k];
        let mut rest = idx;
        for a in (0..self.k).rev() {
            d[a] = rest % self.n;
            rest /= self.n;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.n + d)
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.n == other.n && self.k == other.k,
            "operator shapes differ: ({}, {}) vs ({}, {})",
            self.n,
            self.k,
            other.n,
            other.k
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(*r, *c, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `c * X`, with `c` multiplied on the left of every entry.
    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for ((r, col), v) in &self.entries {
            out.add_entry(*r, *col, c.mul(v));
        }
        out
    }

    /// Operator composition `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut rows: BTreeMap<usize, Vec<(usize, &R)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            rows.entry(*r).or_default().push((*c, v));
        }
        let mut out = Self::zero(self.n, self.k);
        for ((a, b), x) in &self.entries {
            if let Some(row) = rows.get(b) {
                for (c, y) in row {
                    out.add_entry(*a, *c, x.mul(y));
                }
            }
        }
        out
    }

    /// Kronecker product with `other` placed on the following legs.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let shift = other.dim();
        let mut out = Self::zero(self.n, self.k + other.k);
        for ((r1, c1), x) in &self.entries {
            for ((r2, c2), y) in &other.entries {
                out.add_entry(r1 * shift + r2, c1 * shift + c2, x.mul(y));
            }
        }
        out
    }

    /// Place this operator on the given legs of `(C^n)^{⊗k_total}`, identity elsewhere.
    pub fn embed(&self, legs: &LegSet, k_total: usize) -> Result<Self> {
        let legs = legs.legs();
        if legs.len() != self.k {
            return invalid(format!("operator has {} legs, {} targets given", self.k, legs.len()));
        }
        if legs.iter().any(|&a| a == 0 || a > k_total) {
            return invalid(format!("target leg out of range 1..={k_total}"));
        }
        let mut out = Self::zero(self.n, k_total);
        let others: Vec<usize> = (1..=k_total).filter(|a| !legs.contains(a)).collect();
        let rest = self.n.pow(others.len() as u32);
        let mut full = vec![0; k_total];
        for ((r, c), v) in &self.entries {
            let (rd, cd) = (self.digits(*r), self.digits(*c));
            for s in 0..rest {
                let mut sr = s;
                for &a in others.iter().rev() {
                    full[a - 1] = sr % self.n;
                    sr /= self.n;
                }
                let mut row = full.clone();
                let mut col = full.clone();
                for (p, &a) in legs.iter().enumerate() {
                    row[a - 1] = rd[p];
                    col[a - 1] = cd[p];
                }
                let ri = row.iter().fold(0, |acc, &d| acc * self.n + d);
                let ci = col.iter().fold(0, |acc, &d| acc * self.n + d);
                out.add_entry(ri, ci, v.clone());
            }
        }
        Ok(out)
    }

    /// `C_{ab}` for a two-leg operator `C`.
    pub fn embed_two_leg(&self, a: usize, b: usize, k_total: usize) -> Result<Self> {
        if self.k != 2 {
            return invalid("embed_two_leg needs a two-leg operator");
        }
        if a == b {
            return invalid(format!("legs must differ, got {a} twice"));
        }
        self.embed(&LegSet::new(vec![a, b], k_total)?, k_total)
    }

    pub fn embed_one_leg(&self, a: usize, k_total: usize) -> Result<Self> {
        if self.k != 1 {
            return invalid("embed_one_leg needs a one-leg operator");
        }
        self.embed(&LegSet::new(vec![a], k_total)?, k_total)
    }

    /// Transposition on leg `a` only.
    pub fn partial_transpose(&self, a: usize) -> Result<Self> {
        if a == 0 || a > self.k {
            return invalid(format!("leg {a} out of range 1..={}", self.k));
        }
        let mut out = Self::zero(self.n, self.k);
        for ((r, c), v) in &self.entries {
            let (mut rd, mut cd) = (self.digits(*r), self.digits(*c));
            std::mem::swap(&mut rd[a - 1], &mut cd[a - 1]);
            out.add_entry(self.index(&rd), self.index(&cd), v.clone());
        }
        Ok(out)
    }

    /// Contract the listed legs; the result acts on the remaining legs in order.
    pub fn partial_trace(&self, legs: &LegSet) -> Result<Self> {
        if legs.legs().is_empty() {
            return invalid("partial trace over no legs");
        }
        if legs.legs().iter().any(|&a| a > self.k) {
            return invalid(format!("leg out of range 1..={}", self.k));
        }
        let keep: Vec<usize> = (1..=self.k).filter(|a| !legs.legs().contains(a)).collect();
        let mut out = Self::zero(self.n, keep.len());
        for ((r, c), v) in &self.entries {
            let (rd, cd) = (self.digits(*r), self.digits(*c));
            if legs.legs().iter().any(|&a| rd[a - 1] != cd[a - 1]) {
                continue;
            }
            let rk: Vec<usize> = keep.iter().map(|&a| rd[a - 1]).collect();
            let ck: Vec<usize> = keep.iter().map(|&a| cd[a - 1]).collect();
            out.add_entry(out.index(&rk), out.index(&ck), v.clone());
        }
        Ok(out)
    }

    /// Full trace.
    pub fn trace(&self) -> R {
        let mut acc = R::zero();
        for ((r, c), v) in &self.entries {
            if r == c {
                acc = acc.add(v);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for ((r, c), v) in &self.entries {
            out.add_entry(*c, *r, v.clone());
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TensorOp<S> {
        let mut out = TensorOp::zero(self.n, self.k);
        for ((r, c), v) in &self.entries {
            out.add_entry(*r, *c, f(v));
        }
        out
    }

    /// Composition with a fallible entry map.
    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<TensorOp<S>> {
        let mut out = TensorOp::zero(self.n, self.k);
        for ((r, c), v) in &self.entries {
            out.add_entry(*r, *c, f(v)?);
        }
        Ok(out)
    }

    /// Human-readable multi-index, e.g. `(1,2)`.
    pub fn label(&self, idx: usize) -> String {
        let d: Vec<String> = self.digits(idx).iter().map(|x| (x + 1).to_string()).collect();
        format!("({})", d.join(","))
    }

    /// First nonzero entry, for failure witnesses.
    pub fn first_entry(&self) -> Option<(String, String, &R)> {
        self.entries.iter().next().map(|((r, c), v)| (self.label(*r), self.label(*c), v))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TensorOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((r, c), v) in &self.entries {
            writeln!(f, "{} {} : {}", self.label(*r), self.label(*c), v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, QCtx, Rat, RatFunc};
    use proptest::prelude::*;

    fn op_strategy(n: usize, k: usize) -> impl Strategy<Value = TensorOp<Rat>> {
        let dim = n.pow(k as u32);
        prop::collection::vec((0..dim, 0..dim, -3i64..4), 0..12).prop_map(move |es| {
            let mut t = TensorOp::zero(n, k);
            for (r, c, v) in es {
                t.add_entry(r, c, rat(v, 1));
            }
            t
        })
    }

    #[test]
    fn embed_identity_and_pq() {
        let id: TensorOp<Rat> = TensorOp::identity(2, 2);
        assert_eq!(id.embed_two_leg(1, 3, 3).unwrap(), TensorOp::identity(2, 3));
        let c = QCtx::<RatFunc>::symbolic();
        let p = q_permutation(&c, 2);
        assert_eq!(p.embed_two_leg(1, 2, 2).unwrap(), p);
        // legs swapped: entry ((a,b),(c,d)) moves to ((b,a),(d,c))
        let swapped = p.embed_two_leg(2, 1, 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    for d in 0..2 {
                        assert_eq!(swapped.entry(b * 2 + a, d * 2 + cc), p.entry(a * 2 + b, cc * 2 + d));
                    }
                }
            }
        }
        assert!(p.embed_two_leg(1, 1, 2).is_err());
        assert!(p.embed_two_leg(1, 3, 2).is_err());
    }

    #[test]
    fn partial_transpose_of_units() {
        let x: TensorOp<Rat> = TensorOp::unit(4, 1, 2).tensor(&TensorOp::unit(4, 3, 4));
        let y: TensorOp<Rat> = TensorOp::unit(4, 2, 1).tensor(&TensorOp::unit(4, 3, 4));
        assert_eq!(x.partial_transpose(1).unwrap(), y);
        assert!(x.partial_transpose(3).is_err());
    }

    #[test]
    fn traces() {
        let id: TensorOp<Rat> = TensorOp::identity(2, 2);
        let all = LegSet::new(vec![1, 2], 2).unwrap();
        assert_eq!(id.partial_trace(&all).unwrap().entry(0, 0), rat(4, 1));
        let c = QCtx::<RatFunc>::symbolic();
        let a = antisymmetrizer(&c, 2, 2);
        assert_eq!(a.partial_trace(&all).unwrap().entry(0, 0), RatFunc::one());
        assert!(LegSet::new(vec![1, 1], 2).is_err());
        assert!(LegSet::new(vec![3], 2).is_err());
    }

    proptest! {
        #[test]
        fn transpose_is_involution(x in op_strategy(2, 3), a in 1usize..4) {
            prop_assert_eq!(x.partial_transpose(a).unwrap().partial_transpose(a).unwrap(), x);
        }

        #[test]
        fn trace_is_cyclic(x in op_strategy(2, 2), y in op_strategy(2, 2)) {
            prop_assert_eq!(x.mul(&y).trace(), y.mul(&x).trace());
        }
    }
}

//! Quadratic rewriting rules between generators of the same sign.
//!
//! The RLL relation `R(u,v) L1(u) L2(v) = L2(v) L1(u) R(u,v)` with
//! `R(u,v) = uA + vB` is expanded into its mode components. Each component
//! (fixed sign, row pair, column pair and total depth) is a finite linear
//! system in the two-letter words; reducing it with the out-of-order words
//! as leading columns expresses every out-of-order word through ordered ones.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use super::elem::{fmt_word, AlgElem, Word};
use super::gen::{Gen, OrderingKind, Sign};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::tensor::TensorOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompKey {
    pub sign: Sign,
    pub rows: (u8, u8),
    pub cols: (u8, u8),
    pub total: u32,
}

impl CompKey {
    /// Component of the word `x y`; both generators must share a sign.
    pub fn of(x: &Gen, y: &Gen) -> CompKey {
        debug_assert_eq!(x.sign, y.sign);
        CompKey {
            sign: x.sign,
            rows: (x.i.min(y.i), x.i.max(y.i)),
            cols: (x.j.min(y.j), x.j.max(y.j)),
            total: x.r as u32 + y.r as u32,
        }
    }
}

/// Rewriting rules `x y -> Σ c w` for the out-of-order pairs of one component.
pub type RuleSet<F> = HashMap<(Gen, Gen), AlgElem<F>>;

/// Mode assignments `(L1, L2)` for the `A` and `B` terms of each equation.
fn mode_pairs(sign: Sign, total: i64) -> Vec<[(i64, i64); 2]> {
    match sign {
        Sign::Plus => (0..=total + 1).map(|a| {
            let b = total + 1 - a;
            [(a - 1, b), (a, b - 1)]
        })
        .collect(),
        Sign::Minus => (-1..=total).map(|a| {
            let b = total - 1 - a;
            [(a + 1, b), (a, b + 1)]
        })
        .collect(),
    }
}

fn arrangements(p: (u8, u8)) -> Vec<(usize, usize)> {
    let (a, b) = (p.0 as usize, p.1 as usize);
    if a == b {
        vec![(a, b)]
    } else {
        vec![(a, b), (b, a)]
    }
}

fn add<F: Field>(eq: &mut BTreeMap<Word, F>, w: Word, c: F) {
    if c.is_zero() || w.iter().any(|g| g.is_zero_gen()) {
        return;
    }
    let e = eq.entry(w).or_insert_with(F::zero);
    *e = e.add(&c);
}

fn equations<F: Field>(n: usize, a: &TensorOp<F>, b: &TensorOp<F>, key: &CompKey) -> Vec<BTreeMap<Word, F>> {
    let mut out = Vec::new();
    let g = |i: usize, j: usize, r: i64| Gen::new(key.sign, i, j, r as usize);
    for (i, k) in arrangements(key.rows) {
        for (j, m) in arrangements(key.cols) {
            let row = (i - 1) * n + (k - 1);
            let col = (j - 1) * n + (m - 1);
            for pair in mode_pairs(key.sign, key.total as i64) {
                let mut eq = BTreeMap::new();
                for (mat, (m1, m2)) in [(a, pair[0]), (b, pair[1])] {
                    if m1 < 0 || m2 < 0 {
                        continue;
                    }
                    for gam in 0..n * n {
                        let (g1, g2) = (gam / n + 1, gam % n + 1);
                        let c = mat.entry(row, gam);
                        if !c.is_zero() {
                            add(&mut eq, vec![g(g1, j, m1), g(g2, m, m2)], c);
                        }
                        let c = mat.entry(gam, col);
                        if !c.is_zero() {
                            add(&mut eq, vec![g(k, g2, m2), g(i, g1, m1)], c.neg());
                        }
                    }
                }
                eq.retain(|_, c| !c.is_zero());
                if !eq.is_empty() {
                    out.push(eq);
                }
            }
        }
    }
    out
}

fn out_of_order(ord: OrderingKind, w: &[Gen]) -> bool {
    ord.cmp(&w[0], &w[1]) == Ordering::Greater
}

/// Solve one component for its out-of-order words.
pub fn solve_component<F: Field>(
    n: usize,
    a: &TensorOp<F>,
    b: &TensorOp<F>,
    ord: OrderingKind,
    key: &CompKey,
) -> Result<RuleSet<F>> {
    let eqs = equations(n, a, b, key);
    let mut words: Vec<Word> = eqs.iter().flat_map(|e| e.keys().cloned()).collect();
    words.sort();
    words.dedup();
    words.sort_by_key(|w| !out_of_order(ord, w));
    let n_bad = words.iter().filter(|w| out_of_order(ord, w)).count();
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let ncol = words.len();
    let mut m: Vec<Vec<F>> = eqs
        .iter()
        .map(|e| {
            let mut row = vec![F::zero(); ncol];
            for (w, c) in e {
                row[index[w]] = c.clone();
            }
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncol {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncol {
                    if !m[r][j].is_zero() {
                        let d = f.mul(&m[r][j]);
                        m[i][j] = m[i][j].sub(&d);
                    }
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == m.len() {
            break;
        }
    }

    let mut rules = RuleSet::new();
    for &(row, c) in &pivots {
        if c >= n_bad {
            return Err(Error::Internal(format!(
                "relation among ordered words in component {key:?}, leading {}",
                fmt_word(&words[c])
            )));
        }
        let mut rhs = AlgElem::zero_with(ord);
        for j in c + 1..ncol {
            if m[row][j].is_zero() {
                continue;
            }
            if j < n_bad {
                return Err(Error::Internal(format!(
                    "out-of-order word {} is not determined in component {key:?}",
                    fmt_word(&words[j])
                )));
            }
            rhs.add_term(words[j].clone(), m[row][j].neg());
        }
        rules.insert((words[c][0], words[c][1]), rhs);
    }
    if let Some(w) = words[..n_bad].iter().find(|w| !rules.contains_key(&(w[0], w[1]))) {
        return Err(Error::Internal(format!("no relation rewrites {} in component {key:?}", fmt_word(w))));
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QCtx, RatFunc, Ring};
    use crate::tensor::r_uv_parts;

    fn rules(n: usize, ord: OrderingKind, x: Gen, y: Gen) -> RuleSet<RatFunc> {
        let ctx = QCtx::<RatFunc>::symbolic();
        let (a, b) = r_uv_parts(&ctx, n).unwrap();
        solve_component(n, &a, &b, ord, &CompKey::of(&x, &y)).unwrap()
    }

    #[test]
    fn zero_mode_moves_past_plus() {
        let (x, y) = (Gen::plus(1, 1, 0), Gen::plus(1, 2, 1));
        let rs = rules(2, OrderingKind::Opposite, x, y);
        let expect = AlgElem::word(vec![y, x], QCtx::<RatFunc>::symbolic().q_pow(-1));
        assert_eq!(rs[&(x, y)], expect);
    }

    #[test]
    fn diagonal_zero_modes_commute() {
        let (x, y) = (Gen::minus(2, 2, 0), Gen::minus(1, 1, 0));
        let ord = OrderingKind::Standard;
        let (x, y) = if ord.cmp(&x, &y) == Ordering::Greater { (x, y) } else { (y, x) };
        let rs = rules(2, ord, x, y);
        assert_eq!(rs[&(x, y)], AlgElem::word(vec![y, x], RatFunc::one()));
    }

    #[test]
    fn every_component_solves() {
        for ord in [OrderingKind::Standard, OrderingKind::Opposite] {
            for sign in [Sign::Plus, Sign::Minus] {
                for total in 0..3u32 {
                    for rows in [(1, 1), (1, 2), (1, 3), (2, 3)] {
                        for cols in [(1, 1), (1, 2), (2, 2), (1, 3)] {
                            let ctx = QCtx::<RatFunc>::symbolic();
                            let (a, b) = r_uv_parts(&ctx, 3).unwrap();
                            let key = CompKey { sign, rows, cols, total };
                            solve_component(3, &a, &b, ord, &key).unwrap();
                        }
                    }
                }
            }
        }
    }
}

//! The matrices `L±(z)` as series with algebra coefficients, the inverse of
//! `L-(z)`, operators on tensor legs with series entries, and quantum minors.
//!
//! Every product is formed as `left * right` with a normal-ordered right
//! factor, so that truncation modulo `I_S` stays exact (see [`super::engine`]).

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::elem::AlgElem;
use super::engine::Engine;
use super::gen::{Gen, Sign};
use super::series::ZSeries;
use crate::coeff::{Field, Module, Ring};
use crate::error::{invalid, Error, Result};
use crate::tensor::TensorOp;

/// Truncation of the completed algebra.
///
/// Words of `l-` degree `>= p_minus` are dropped (`S = p_minus - 1` is the
/// largest retained degree), `L+` series are expanded to mode depth `d_plus`,
/// and `R(x)` to `series_order` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncPolicy {
    pub p_minus: u32,
    pub d_plus: u32,
    pub series_order: usize,
}

impl TruncPolicy {
    pub fn new(p_minus: u32, d_plus: u32, series_order: usize) -> Result<Self> {
        if p_minus == 0 || d_plus == 0 || series_order == 0 {
            return invalid("truncation bounds must be at least 1");
        }
        Ok(TruncPolicy { p_minus, d_plus, series_order })
    }

    /// Largest retained `l-` degree.
    pub fn cap(&self) -> u32 {
        self.p_minus - 1
    }

    /// Smallest policy able to produce the coefficients `z^e`, `e <= e_max`.
    pub fn for_window(p_minus: u32, e_max: i64) -> Result<Self> {
        let d_plus = (p_minus as i64 - 1 + e_max).max(1) as u32;
        Self::new(p_minus, d_plus, p_minus as usize + d_plus as usize + 1)
    }
}

pub type ASeries<F> = ZSeries<AlgElem<F>>;
pub type SeriesOp<F> = TensorOp<ASeries<F>>;
pub type SeriesMat<F> = Vec<Vec<ASeries<F>>>;

/// Number of inversions of a sequence.
pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    (0..k).permutations(k).collect()
}

pub fn constant<F: Field>(c: F) -> ASeries<F> {
    ZSeries::constant(AlgElem::scalar(c))
}

pub struct LCalc<'e, F: Field> {
    eng: &'e Engine<F>,
    cap: Option<u32>,
    d_plus: u32,
}

impl<'e, F: Field> LCalc<'e, F> {
    pub fn new(eng: &'e Engine<F>, trunc: &TruncPolicy) -> Self {
        LCalc { eng, cap: Some(trunc.cap()), d_plus: trunc.d_plus }
    }

    /// Computations involving `l+` generators only; nothing is dropped.
    pub fn plus_only(eng: &'e Engine<F>, d_plus: u32) -> Self {
        LCalc { eng, cap: None, d_plus }
    }

    pub fn engine(&self) -> &'e Engine<F> {
        self.eng
    }

    pub fn n(&self) -> usize {
        self.eng.n()
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn d_plus(&self) -> u32 {
        self.d_plus
    }

    /// `q^e`.
    pub fn q_pow(&self, e: i64) -> F {
        self.eng.ctx().q_pow(e)
    }

    /// Product of series with a normal-ordered right factor.
    pub fn mul(&self, a: &ASeries<F>, b: &ASeries<F>) -> Result<ASeries<F>> {
        a.mul_with(b, |x, y| self.eng.mul(x, y, self.cap))
    }

    /// `l+_ij(z) = Σ_r l+_ij[-r] z^r` to depth `d_plus`.
    pub fn l_plus(&self, i: usize, j: usize) -> ASeries<F> {
        let terms = (0..=self.d_plus as usize).map(|r| (r as i64, AlgElem::gen(Gen::plus(i, j, r))));
        ZSeries::exact(terms).with_hi(self.d_plus as i64)
    }

    /// `l-_ij(z) = Σ_s l-_ij[s] z^{-s}`, exact modulo `I_S`.
    pub fn l_minus(&self, i: usize, j: usize) -> Result<ASeries<F>> {
        let s = self.cap.ok_or_else(|| Error::InvalidArgument("l- series need a truncation".into()))?;
        Ok(ZSeries::exact((0..=s as usize).map(|r| (-(r as i64), AlgElem::gen(Gen::minus(i, j, r))))))
    }

    pub fn l_entry(&self, sign: Sign, i: usize, j: usize) -> Result<ASeries<F>> {
        match sign {
            Sign::Plus => Ok(self.l_plus(i, j)),
            Sign::Minus => self.l_minus(i, j),
        }
    }

    pub fn l_matrix(&self, sign: Sign) -> Result<SeriesMat<F>> {
        let n = self.n();
        (1..=n).map(|i| (1..=n).map(|j| self.l_entry(sign, i, j)).collect()).collect()
    }

    /// `s(z q^e)`.
    pub fn shift(&self, s: &ASeries<F>, e: i64) -> Result<ASeries<F>> {
        s.rescale(&self.q_pow(e))
    }

    pub fn mat_mul(&self, a: &SeriesMat<F>, b: &SeriesMat<F>) -> Result<SeriesMat<F>> {
        let n = a.len();
        let cells: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).collect();
        let vals: Vec<ASeries<F>> = cells
            .par_iter()
            .map(|&(i, j)| {
                let mut acc = ASeries::zero();
                for k in 0..n {
                    if !a[i][k].is_zero() && !b[k][j].is_zero() {
                        acc = acc.add(&self.mul(&a[i][k], &b[k][j])?);
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(vals.chunks(n).map(|c| c.to_vec()).collect())
    }

    /// `L-(z)^{-1}`: the lower-triangular constant term is inverted by forward
    /// substitution with `l-_ii[0]^{-1} = l+_ii[0]`, the rest by the Neumann series.
    pub fn l_minus_inv(&self) -> Result<SeriesMat<F>> {
        let n = self.n();
        let s = self.cap.ok_or_else(|| Error::InvalidArgument("l- series need a truncation".into()))?;
        let zero_mode = |i: usize, j: usize| AlgElem::<F>::gen(Gen::minus(i + 1, j + 1, 0));
        let mut n0: Vec<Vec<AlgElem<F>>> = vec![vec![AlgElem::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut acc = if i == j { AlgElem::one() } else { AlgElem::zero() };
                for k in j..i {
                    let t = self.eng.mul(&zero_mode(i, k), &n0[k][j], self.cap)?;
                    acc = acc.sub(&t);
                }
                n0[i][j] = self.eng.mul(&AlgElem::gen(Gen::plus(i + 1, i + 1, 0)), &acc, self.cap)?;
            }
        }
        let nmat: SeriesMat<F> = n0.iter().map(|r| r.iter().map(|e| ZSeries::constant(e.clone())).collect()).collect();
        let mut higher = self.l_matrix(Sign::Minus)?;
        for (i, row) in higher.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = e.add(&ZSeries::constant(zero_mode(i, j)).neg());
            }
        }
        let mut term = nmat.clone();
        let mut total = nmat.clone();
        for _ in 0..s {
            let next = self.mat_mul(&nmat, &self.mat_mul(&higher, &term)?)?;
            term = next.iter().map(|r| r.iter().map(|e| e.neg()).collect()).collect();
            if term.iter().flatten().all(|e| e.is_zero()) {
                break;
            }
            for i in 0..n {
                for j in 0..n {
                    total[i][j] = total[i][j].add(&term[i][j]);
                }
            }
        }
        Ok(total)
    }

    /// Inverse of a series in `z^{-1}` whose constant term is a scalar times a
    /// word of diagonal `l-` zero modes.
    pub fn invert_minus_series(&self, s: &ASeries<F>) -> Result<ASeries<F>> {
        let cap = self.cap.ok_or_else(|| Error::InvalidArgument("l- series need a truncation".into()))?;
        let c0 = s.coeff(0)?;
        let mut it = c0.terms();
        let (w, c) = match (it.next(), it.next()) {
            (Some((w, c)), None) => (w.clone(), c.clone()),
            _ => return Err(Error::NotInvertible(format!("constant term {c0} is not a monomial"))),
        };
        if w.iter().any(|g| !(g.sign == Sign::Minus && g.is_diag_zero())) || s.terms().any(|(e, _)| e > 0) {
            return Err(Error::NotInvertible(format!("constant term {c0} is not invertible")));
        }
        let inv_word: Vec<Gen> = w.iter().rev().map(|g| Gen::plus(g.i as usize, g.i as usize, 0)).collect();
        drop(it);
        let c_inv = c.inv().ok_or_else(|| Error::NotInvertible("zero constant term".into()))?;
        let s0_inv = ZSeries::constant(self.eng.normal_order(&AlgElem::word(inv_word, c_inv), self.cap)?);
        let rest = s.add(&ZSeries::constant(c0).neg());
        let mut term = s0_inv.clone();
        let mut total = s0_inv.clone();
        for _ in 0..cap {
            term = self.mul(&s0_inv, &self.mul(&rest, &term)?)?.neg();
            if term.is_zero() {
                break;
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// `M_a` acting on leg `a` of `k` legs.
    pub fn leg_op(&self, m: &SeriesMat<F>, leg: usize, k: usize) -> Result<SeriesOp<F>> {
        let n = self.n();
        if leg == 0 || leg > k {
            return invalid(format!("leg {leg} outside 1..={k}"));
        }
        let mut out = TensorOp::zero(n, k);
        for row in 0..n.pow(k as u32) {
            let digits = out.digits(row);
            for b in 0..n {
                let e = &m[digits[leg - 1]][b];
                if e.is_zero() {
                    continue;
                }
                let mut d = digits.clone();
                d[leg - 1] = b;
                let col = out.index(&d);
                out.add_entry(row, col, e.clone());
            }
        }
        Ok(out)
    }

    pub fn scalar_op(&self, m: &TensorOp<F>) -> SeriesOp<F> {
        m.map(|c| constant(c.clone()))
    }

    /// Operator product with entries multiplied through the engine.
    pub fn op_mul(&self, a: &SeriesOp<F>, b: &SeriesOp<F>) -> Result<SeriesOp<F>> {
        let mut rows: HashMap<usize, Vec<(usize, &ASeries<F>)>> = HashMap::new();
        for (&(r, c), e) in b.entries() {
            rows.entry(r).or_default().push((c, e));
        }
        let pairs: Vec<(usize, usize, &ASeries<F>, &ASeries<F>)> = a
            .entries()
            .flat_map(|(&(r, c), x)| rows.get(&c).into_iter().flatten().map(move |&(d, y)| (r, d, x, y)))
            .collect();
        let prods: Vec<(usize, usize, ASeries<F>)> =
            pairs.par_iter().map(|&(r, d, x, y)| Ok((r, d, self.mul(x, y)?))).collect::<Result<_>>()?;
        let mut out = TensorOp::zero(a.n(), a.k());
        for (r, d, p) in prods {
            out.add_entry(r, d, p);
        }
        Ok(out)
    }

    /// `tr(a m)` for a scalar operator `a`.
    pub fn trace_against(&self, a: &TensorOp<F>, m: &SeriesOp<F>) -> ASeries<F> {
        let mut acc = ASeries::zero();
        for (&(r, c), x) in a.entries() {
            let y = m.entry(c, r);
            if !y.is_zero() {
                acc = acc.add(&y.scale_by(x));
            }
        }
        acc
    }

    /// Quantum minor with rows `a` and columns `b` (1-based) of the matrix
    /// whose entries are `entry(i, j)`, at the points `z, zq^{-2}, ...`.
    pub fn minor_of(
        &self,
        entry: &(dyn Fn(usize, usize) -> Result<ASeries<F>> + Sync),
        a: &[usize],
        b: &[usize],
    ) -> Result<ASeries<F>> {
        let k = a.len();
        if b.len() != k {
            return invalid("quantum minor needs as many rows as columns");
        }
        if a.iter().chain(b).any(|&x| x == 0 || x > self.n()) {
            return invalid(format!("minor indices {a:?}, {b:?} outside 1..={}", self.n()));
        }
        if a.iter().duplicates().next().is_some() || b.iter().duplicates().next().is_some() {
            return Ok(ASeries::zero());
        }
        let rows_sorted = a.windows(2).all(|w| w[0] < w[1]);
        let cols_sorted = b.windows(2).all(|w| w[0] < w[1]);
        if !rows_sorted && !cols_sorted {
            let sorted: Vec<usize> = a.iter().copied().sorted().collect();
            let f = self.q_pow(1).neg().powi(inversions(a) as i64).expect("q is nonzero");
            return Ok(self.minor_of(entry, &sorted, b)?.scale_by(&f));
        }
        let terms: Vec<ASeries<F>> = permutations(k)
            .par_iter()
            .map(|sigma| {
                let l = inversions(sigma) as i64;
                let mut acc = constant(F::one());
                // factors listed left to right as (row, column, shift index m)
                let factors: Vec<(usize, usize, i64)> = if rows_sorted {
                    (0..k).map(|m| (a[sigma[m]], b[m], m as i64)).collect()
                } else {
                    (0..k).rev().map(|m| (a[m], b[sigma[m]], m as i64)).collect()
                };
                for &(i, j, m) in factors.iter().rev() {
                    let e = self.shift(&entry(i, j)?, -2 * m)?;
                    acc = self.mul(&e, &acc)?;
                }
                let sign = if rows_sorted { -l } else { l };
                Ok(acc.scale_by(&self.q_pow(1).neg().powi(sign).expect("q is nonzero")))
            })
            .collect::<Result<_>>()?;
        Ok(terms.into_iter().fold(ASeries::zero(), |s, t| s.add(&t)))
    }

    /// Quantum minor of `L±(z)`.
    pub fn quantum_minor(&self, sign: Sign, a: &[usize], b: &[usize]) -> Result<ASeries<F>> {
        self.minor_of(&|i, j| self.l_entry(sign, i, j), a, b)
    }

    /// `qdet L±(z)`.
    pub fn qdet(&self, sign: Sign) -> Result<ASeries<F>> {
        let idx: Vec<usize> = (1..=self.n()).collect();
        self.quantum_minor(sign, &idx, &idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OrderingKind;
    use crate::coeff::{rat, QCtx, Rat};

    fn engine(n: usize) -> Engine<Rat> {
        Engine::new(QCtx::numeric(rat(3, 2)).unwrap(), n, OrderingKind::Standard, 8).unwrap()
    }

    fn word(g: &[Gen], c: Rat) -> AlgElem<Rat> {
        AlgElem::word(g.to_vec(), c)
    }

    #[test]
    fn rank_one_inverse() {
        let e = engine(1);
        let calc = LCalc::new(&e, &TruncPolicy::new(2, 1, 4).unwrap());
        let inv = calc.l_minus_inv().unwrap();
        let (p, m) = (Gen::plus(1, 1, 0), Gen::minus(1, 1, 1));
        assert_eq!(inv[0][0].coeff(0).unwrap(), AlgElem::gen(p));
        let expect = e.normal_order(&word(&[p, m, p], rat(-1, 1)), None).unwrap();
        assert_eq!(inv[0][0].coeff(-1).unwrap(), expect);
    }

    #[test]
    fn inverse_is_two_sided() {
        let e = engine(2);
        let calc = LCalc::new(&e, &TruncPolicy::new(3, 1, 4).unwrap());
        let l = calc.l_matrix(Sign::Minus).unwrap();
        let inv = calc.l_minus_inv().unwrap();
        assert!(inv[0][1].coeff(0).unwrap().is_zero());
        for prod in [calc.mat_mul(&l, &inv).unwrap(), calc.mat_mul(&inv, &l).unwrap()] {
            for i in 0..2 {
                for j in 0..2 {
                    let expect = if i == j { constant(Rat::one()) } else { ASeries::zero() };
                    assert_eq!(prod[i][j], expect, "entry {i}{j}");
                }
            }
        }
    }

    #[test]
    fn qdet_two_by_two_expansion() {
        let e = engine(2);
        let calc = LCalc::plus_only(&e, 3);
        let q_inv = calc.q_pow(-1);
        let mut expect = ASeries::zero();
        for (a, b, c, d, coeff) in [(1, 1, 2, 2, Rat::one()), (2, 1, 1, 2, q_inv.neg())] {
            let left = calc.l_plus(a, b);
            let right = calc.shift(&calc.l_plus(c, d), -2).unwrap();
            expect = expect.add(&calc.mul(&left, &right).unwrap().scale_by(&coeff));
        }
        assert_eq!(calc.qdet(Sign::Plus).unwrap(), expect);
    }

    #[test]
    fn minor_antisymmetry() {
        let e = engine(2);
        let calc = LCalc::plus_only(&e, 3);
        let base = calc.quantum_minor(Sign::Plus, &[1, 2], &[1, 2]).unwrap();
        let mq = calc.q_pow(1).neg();
        let rows = calc.quantum_minor(Sign::Plus, &[2, 1], &[1, 2]).unwrap();
        assert_eq!(rows, base.scale_by(&mq));
        let cols = calc.quantum_minor(Sign::Plus, &[1, 2], &[2, 1]).unwrap();
        assert_eq!(cols, base.scale_by(&mq.inv().unwrap()));
        assert!(calc.quantum_minor(Sign::Plus, &[1, 1], &[1, 2]).unwrap().is_zero());
    }

    #[test]
    fn qdet_minus_inverse() {
        let e = engine(2);
        let calc = LCalc::new(&e, &TruncPolicy::new(3, 1, 4).unwrap());
        let d = calc.qdet(Sign::Minus).unwrap();
        let inv = calc.invert_minus_series(&d).unwrap();
        assert_eq!(calc.mul(&d, &inv).unwrap(), constant(Rat::one()));
    }
}

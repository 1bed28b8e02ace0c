//! q-permutation operators, reduced decompositions, the normalized
//! q-antisymmetrizer and the fusion identity.

use std::collections::BTreeMap;

use super::rmatrix::r_two_param;
use super::TensorOp;
use crate::coeff::{Field, MPoly, QCtx, Ring};
use crate::error::{invalid, Result};

/// Which operator represents a simple transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermKind {
    /// The q-permutation operator.
    Q,
    /// The ordinary flip of tensor factors.
    Plain,
}

/// Reduced word `[i_1, ..., i_l]` (1-based `s_i` swapping positions `i, i+1`)
/// with `σ = s_{i_1} ⋯ s_{i_l}`, found by bubble sort of the one-line form.
pub fn reduced_word(perm: &[usize]) -> Result<Vec<usize>> {
    let k = perm.len();
    let mut seen = vec![false; k];
    for &v in perm {
        if v == 0 || v > k || seen[v - 1] {
            return invalid(format!("{perm:?} is not a permutation of 1..={k}"));
        }
        seen[v - 1] = true;
    }
    let mut w = perm.to_vec();
    let mut swaps = Vec::new();
    loop {
        let Some(i) = (0..k.saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            break;
        };
        w.swap(i, i + 1);
        swaps.push(i + 1);
    }
    swaps.reverse();
    Ok(swaps)
}

/// `P^q = Σ e_ii⊗e_ii + q Σ_{i>j} e_ij⊗e_ji + q^{-1} Σ_{i<j} e_ij⊗e_ji`.
pub fn q_permutation<F: Field>(ctx: &QCtx<F>, n: usize) -> TensorOp<F> {
    q_permutation_with(ctx, n, PermKind::Q)
}

pub fn q_permutation_with<F: Field>(ctx: &QCtx<F>, n: usize, kind: PermKind) -> TensorOp<F> {
    let mut p = TensorOp::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let c = match (kind, i.cmp(&j)) {
                (PermKind::Plain, _) | (_, std::cmp::Ordering::Equal) => F::one(),
                (_, std::cmp::Ordering::Greater) => ctx.q_pow(1),
                (_, std::cmp::Ordering::Less) => ctx.q_pow(-1),
            };
            // e_ij ⊗ e_ji maps e_j ⊗ e_i to e_i ⊗ e_j
            p.add_entry(i * n + j, j * n + i, c);
        }
    }
    p
}

fn simple<F: Field>(ctx: &QCtx<F>, n: usize, k: usize, i: usize, kind: PermKind) -> TensorOp<F> {
    q_permutation_with(ctx, n, kind).embed_two_leg(i, i + 1, k).expect("adjacent legs in range")
}

/// `P^q_σ` for σ in one-line form.
pub fn perm_action<F: Field>(ctx: &QCtx<F>, n: usize, perm: &[usize], kind: PermKind) -> Result<TensorOp<F>> {
    let k = perm.len();
    let mut out = TensorOp::identity(n, k);
    for i in reduced_word(perm)? {
        out = out.mul(&simple(ctx, n, k, i, kind));
    }
    Ok(out)
}

/// `A^(k) = (1/k!) Σ_σ sgn σ · P^q_σ`.
pub fn antisymmetrizer<F: Field>(ctx: &QCtx<F>, n: usize, k: usize) -> TensorOp<F> {
    antisymmetrizer_with(ctx, n, k, PermKind::Q)
}

pub fn antisymmetrizer_with<F: Field>(ctx: &QCtx<F>, n: usize, k: usize, kind: PermKind) -> TensorOp<F> {
    assert!(k >= 1, "antisymmetrizer needs k >= 1");
    let simples: Vec<TensorOp<F>> = (1..k).map(|i| simple(ctx, n, k, i, kind)).collect();
    // breadth-first over the Cayley graph: P_{σ s_i} = P_σ P_i when length grows
    let id: Vec<usize> = (1..=k).collect();
    let mut layer: BTreeMap<Vec<usize>, TensorOp<F>> = BTreeMap::new();
    layer.insert(id.clone(), TensorOp::identity(n, k));
    let mut sum = TensorOp::identity(n, k);
    let mut sign = F::one();
    let mut visited = std::collections::BTreeSet::from([id]);
    while !layer.is_empty() {
        let mut next: BTreeMap<Vec<usize>, TensorOp<F>> = BTreeMap::new();
        sign = sign.neg();
        for (w, p) in &layer {
            for i in 0..k - 1 {
                if w[i] < w[i + 1] {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    if visited.insert(v.clone()) {
                        let m = p.mul(&simples[i]);
                        sum = sum.add(&m.scale(&sign));
                        next.insert(v, m);
                    }
                }
            }
        }
        layer = next;
    }
    let fact: i64 = (1..=k as i64).product();
    sum.scale(&F::from_i64(fact).inv().unwrap())
}

/// The ordered product `Π_{a<b} R_ab(v_a, v_b)` with `v_a = z q^{-2a+2}`,
/// pairs in lexicographic order, as an operator with entries polynomial in `z`
/// (the third variable of [`MPoly`]).
pub fn fusion_lhs<F: Field>(ctx: &QCtx<F>, n: usize, k: usize) -> Result<TensorOp<MPoly<F>>> {
    let r = r_two_param(ctx, n)?;
    let z = MPoly::<F>::var(2);
    let v = |a: usize| z.scale(&ctx.q_pow(-2 * a as i64 + 2));
    let mut out = TensorOp::identity(n, k);
    for a in 1..=k {
        for b in a + 1..=k {
            let images = [v(a), v(b), z.clone()];
            let rab = r.map(|e| e.substitute(&images)).embed_two_leg(a, b, k)?;
            out = out.mul(&rab);
        }
    }
    Ok(out)
}

/// Residual of the fusion identity
/// `Π R_ab(v_a, v_b) = k! z^{k(k-1)/2} Π_{0≤a<b≤k-1} (q^{-2a} - q^{-2b}) A^(k)`.
pub fn fusion_residual<F: Field>(ctx: &QCtx<F>, n: usize, k: usize, kind: PermKind) -> Result<TensorOp<MPoly<F>>> {
    if k < 2 {
        return invalid("fusion needs k >= 2");
    }
    let lhs = fusion_lhs(ctx, n, k)?;
    let mut c = F::from_i64((1..=k as i64).product());
    for a in 0..k as i64 {
        for b in a + 1..k as i64 {
            c = c.mul(&ctx.q_pow(-2 * a).sub(&ctx.q_pow(-2 * b)));
        }
    }
    let zpow = MPoly::<F>::var(2).pow((k * (k - 1) / 2) as u32).scale(&c);
    let rhs = antisymmetrizer_with(ctx, n, k, kind).map(|e| zpow.scale(e));
    Ok(lhs.sub(&rhs))
}

pub fn fusion_check<F: Field>(ctx: &QCtx<F>, n: usize, k: usize) -> Result<bool> {
    Ok(fusion_residual(ctx, n, k, PermKind::Q)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, RatFunc};
    use crate::tensor::d_matrix;

    fn ctx() -> QCtx<RatFunc> {
        QCtx::symbolic()
    }

    #[test]
    fn reduced_words() {
        assert_eq!(reduced_word(&[1, 2, 3]).unwrap(), Vec::<usize>::new());
        assert_eq!(reduced_word(&[2, 1]).unwrap(), vec![1]);
        assert_eq!(reduced_word(&[3, 2, 1]).unwrap().len(), 3);
        assert!(reduced_word(&[1, 1]).is_err());
    }

    #[test]
    fn q_permutation_on_basis_vector() {
        let c = ctx();
        let p = q_permutation(&c, 2);
        // column e_1 ⊗ e_2 (index 1) goes to q e_2 ⊗ e_1 (index 2)
        assert_eq!(p.entry(2, 1), RatFunc::q());
        assert_eq!(p.entry(1, 2), c.q_pow(-1));
        assert!(perm_action(&c, 2, &[1, 2, 3], PermKind::Q).unwrap() == TensorOp::identity(2, 3));
    }

    #[test]
    fn braid_relation() {
        let c = ctx();
        let p12 = simple(&c, 2, 3, 1, PermKind::Q);
        let p23 = simple(&c, 2, 3, 2, PermKind::Q);
        assert_eq!(p12.mul(&p23).mul(&p12), p23.mul(&p12).mul(&p23));
    }

    #[test]
    fn perm_action_is_multiplicative() {
        // [3,1,2] = s_2 s_1 as a product of the adjacent swaps
        let c = ctx();
        let lhs = perm_action(&c, 2, &[3, 1, 2], PermKind::Q).unwrap();
        let s1 = perm_action(&c, 2, &[2, 1, 3], PermKind::Q).unwrap();
        let s2 = perm_action(&c, 2, &[1, 3, 2], PermKind::Q).unwrap();
        let word = reduced_word(&[3, 1, 2]).unwrap();
        let built = word.iter().fold(TensorOp::identity(2, 3), |acc, &i| acc.mul(if i == 1 { &s1 } else { &s2 }));
        assert_eq!(lhs, built);
    }

    #[test]
    fn antisymmetrizer_small() {
        let c = ctx();
        assert_eq!(antisymmetrizer(&c, 3, 1), TensorOp::identity(3, 1));
        let a = antisymmetrizer(&c, 2, 2);
        assert_eq!(a.mul(&a), a);
        assert_eq!(a.trace(), RatFunc::one());
        assert!(antisymmetrizer(&c, 2, 3).is_zero());
    }

    #[test]
    fn antisymmetrizer_commutes_with_d() {
        let c = ctx();
        for k in 2..=3 {
            let a = antisymmetrizer(&c, 3, k);
            let d = d_matrix(&c, 3);
            let dd = (1..=k).fold(TensorOp::identity(3, k), |acc, l| acc.mul(&d.embed_one_leg(l, k).unwrap()));
            assert_eq!(a.mul(&dd), dd.mul(&a));
        }
    }

    #[test]
    fn fusion_k2_closed_form() {
        let c = ctx();
        let lhs = fusion_lhs(&c, 2, 2).unwrap();
        let coeff = c.q_pow(0).sub(&c.q_pow(-2)).mul(&RatFunc::from_i64(2));
        let rhs = antisymmetrizer(&c, 2, 2).map(|e| MPoly::var(2).scale(&coeff.mul(e)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fusion_small_cases() {
        let c = ctx();
        assert!(fusion_check(&c, 2, 3).unwrap());
        assert!(fusion_check(&c, 3, 2).unwrap());
        let num = QCtx::numeric(rat(3, 2)).unwrap();
        assert!(!fusion_residual(&num, 2, 2, PermKind::Plain).unwrap().is_zero());
    }
}

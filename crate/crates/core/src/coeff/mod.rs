//! Exact coefficient arithmetic: rationals, rational functions in `q`,
//! truncated power series and the structure series `f(x)`.

pub mod fps;
pub mod mpoly;
pub mod fseries;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub(crate) mod zgcd;

pub use fps::{Fps, EXACT};
pub use mpoly::MPoly;
pub use fseries::{f_functional_check, f_series, f_series_product, FNumerators};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use ring::{rat, Field, Module, Rat, Ring};

use crate::error::{Error, Result};

/// The deformation parameter `q` inside a coefficient field.
///
/// Symbolic mode uses the indeterminate of `Q(q)`; numeric mode substitutes a
/// fixed rational that is not a root of unity.
#[derive(Clone, Debug)]
pub struct QCtx<F> {
    q: F,
    q_inv: F,
}

impl QCtx<RatFunc> {
    pub fn symbolic() -> Self {
        let q = RatFunc::q();
        let q_inv = q.inv().unwrap();
        QCtx { q, q_inv }
    }
}

impl QCtx<Rat> {
    pub fn numeric(value: Rat) -> Result<Self> {
        if value.is_zero() || value == rat(1, 1) || value == rat(-1, 1) {
            return Err(Error::InvalidArgument(format!(
                "q = {value} is zero or a root of unity"
            )));
        }
        let q_inv = value.inv().unwrap();
        Ok(QCtx { q: value, q_inv })
    }
}

impl<F: Field> QCtx<F> {
    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn q_pow(&self, e: i64) -> F {
        if e >= 0 {
            self.q.pow(e as u32)
        } else {
            self.q_inv.pow((-e) as u32)
        }
    }

    /// `q^{-1} - q`
    pub fn qdiff(&self) -> F {
        self.q_inv.sub(&self.q)
    }
}

/// Evaluate a rational function at a rational `q`.
pub fn eval_at_q(elem: &RatFunc, value: &Rat) -> Result<Rat> {
    elem.eval_at_q(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (prop::collection::vec(-4i64..5, 1..4), prop::collection::vec(-4i64..5, 1..3)).prop_map(
            |(n, d)| {
                let num = Poly::from_coeffs(n.iter().map(|&c| rat(c, 1)).collect());
                let mut den = Poly::from_coeffs(d.iter().map(|&c| rat(c, 1)).collect());
                if den.is_zero() {
                    den = Poly::one();
                }
                RatFunc::new(num, den)
            },
        )
    }

    proptest! {
        #[test]
        fn field_inverse(a in small_ratfunc()) {
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
            }
        }

        #[test]
        fn eval_is_ring_homomorphism(a in small_ratfunc(), b in small_ratfunc()) {
            let at = rat(3, 2);
            let (ea, eb) = (a.eval_at_q(&at), b.eval_at_q(&at));
            if let (Ok(ea), Ok(eb)) = (ea, eb) {
                prop_assert_eq!(a.mul(&b).eval_at_q(&at).unwrap(), &ea * &eb);
                prop_assert_eq!(a.add(&b).eval_at_q(&at).unwrap(), &ea + &eb);
            }
        }
    }

    #[test]
    fn numeric_ctx_rejects_roots_of_unity() {
        assert!(QCtx::numeric(rat(1, 1)).is_err());
        assert!(QCtx::numeric(rat(-1, 1)).is_err());
        assert!(QCtx::numeric(rat(0, 1)).is_err());
        assert!(QCtx::numeric(rat(3, 2)).is_ok());
    }
}

//! Sugawara series `ℓ_k(z)`, their `l+` parts `ℓ̄_k(z)` and quantum determinants.

mod ell;
mod ext;
#[cfg(test)]
mod tests;

pub use ell::{
    ell_bar_minors, ell_bar_trace, ell_method, ell_methods, inverse_by_minors, qdet_ratio, EllMethod, EllOptions,
    Minor41, Minor42, SugawaraCtx, Trace34, Trace39,
};
pub use ext::{detq_identity_witness, detq_pi_plus, manin_witness, plus_ctx, ExtElem};

//! Theta decomposition of `(−ϑ(z+½;τ))^k`.
//!
//! The coefficients `h_{k/2,c}` are built symbolically as [`ThetaExpr`]s by a
//! product recursion on the level, and evaluated to q-series on demand.

mod expr;
mod hvector;
mod lemmas;
mod render;
mod simplify;

pub use expr::{Monomial, ThetaCache, ThetaExpr, ThetaStyle};
pub use hvector::{
    cpsi_from_h, cpsi_from_hvector, direct_power, h_base, h_step_full, h_step_half, h_step_half_to_full,
    h_trivial, h_vector, h_vector_via_half_steps, reconstruct, resum, HVector,
};
pub use render::{
    central_entry, euler_inverse_power, render_central, sym_render, EtaKleinProduct, EtaKleinSum,
    PochhammerProduct, ProductSum, RenderMode,
};
pub use lemmas::{
    all_identities, full_step_identity, half_step_identity, level_six_identities, square_identity, IdentityCheck,
};
pub use simplify::sym_simplify;

//! Generating functions: brute-force builders, closed forms, and pointwise
//! evaluators.

pub mod closed;
pub mod params;
pub mod phi;
pub mod pointwise;
pub mod roots;

pub use closed::{
    cor1_sides, cor2_series, lemma4_sides, main_rhs, oz_cleared_sides, symgene_rhs, Cor1Sides,
    Cor2Series,
};
pub use params::GFParams;
pub use phi::{phi_all_indices, phi_bruteforce};
pub use pointwise::{
    cor2_exp_factor_pointwise, cor2_gamma_pointwise, cor2_series_pointwise, lq_pointwise,
    lq_series_pointwise, oz_exp_pointwise, oz_gamma_pointwise, phi_pointwise, phi_t_pointwise,
    pointwise_sum, LqValue, PointR3, PointwiseSum,
};
pub use roots::{Branch, RootPair};

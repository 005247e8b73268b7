//! Fuchsian codebooks ±γ(τ), reference QAM sets and design metrics.

mod builder;
mod metrics;
mod qam;

pub use builder::{
    build_code, choose_s, default_code, reference_code, reference_words, CodeEntry, Codebook,
    REFERENCE_SIZES,
};
pub use metrics::{bd2_min, d2_min, delta_ml, delta_pra, p_av};
pub use qam::{qam, QamConstellation};

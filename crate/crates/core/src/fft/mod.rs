//! Exact convolution, pseudo-additive hash families and FFT-based sumsets.

pub mod hash;
pub mod ntt;
pub mod sparse;
pub mod sumset;

pub use hash::{
    audit_family, build_family_deterministic, build_family_randomized, HashFamily, PseudoAdditiveFn,
};
pub use ntt::convolve;
pub use sparse::sparse_convolution;
pub use sumset::{sumset_small_universe, sumset_via_fft, sumset_within, FamilyMode, Strategy};

//! Two-mode bosonic phase-space toolkit for ergotropy-based correlation and
//! entanglement analysis.
//!
//! All covariance matrices use the `xpxp` quadrature ordering
//! `(x_A, p_A, x_B, p_B)` and are normalized so that the vacuum is the
//! identity. Energies follow the convention `E = ¼ Σ ω_k (Tr σ_k − 2)`, i.e.
//! the vacuum carries zero energy. Entropies are in bits.

pub mod correlations;
pub mod energetics;
pub mod error;
pub mod fock_oracle;
pub mod io;
pub mod phase_space;
pub mod states;
pub mod witnesses;

pub use correlations::CorrelationReport;
pub use energetics::{BlochMessiahParams, EnergyReport, ModePair, RegValue};
pub use error::{Error, Result};
pub use phase_space::{
    CovarianceMatrix, PhysicalityReport, StandardFormParams, SymplecticMatrix, SymplecticSpectrum,
};
pub use states::{Family, StateRecord};
pub use witnesses::{SecondMoments, Verdict, WitnessVerdict};

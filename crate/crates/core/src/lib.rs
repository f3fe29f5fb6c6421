//! Energy-minimizing harmonic maps between doubly connected plane domains.
//!
//! Source domains are round annuli `A_ρ = {ρ < |z| < 1}` and maps are stored
//! as truncated harmonic series. The crate computes minimizers onto domains
//! bounded by two Jordan curves, the Hopf constant and sign diagnostics of a
//! map, conformal moduli, minimal-surface lifts and boundary regularity
//! probes, with closed-form reference maps for testing.

pub mod curves;
pub mod defaults;
pub mod error;
pub mod grid;
pub mod harmonic;
pub mod hopf;
pub mod lift;
pub mod minimizer;
pub mod modulus;
pub mod reference;
pub mod regularity;

pub use curves::{
    arc_length, chord_arc_constant, curve_from_points, enclosed_area, holder_exponent_beta, ArcLengthTable,
    CurveDescriptor, JordanCurve, Orientation,
};
pub use error::{Error, Result};
pub use grid::PolarGrid;
pub use harmonic::{extend_from_boundary, AnnulusSource, HarmonicMap, MapDocument};
pub use hopf::{
    classify_sign, energy_bound_check, fit_hopf_constant, kkprime_audit, HopfFit, HopfReport, SignClass,
    SignClassification, TargetDomain,
};
pub use lift::{export_obj, lift, null_residual, weierstrass, LiftKind, LiftedSurface, WeierstrassData};
pub use minimizer::{
    boundary_values, jacobian_scan, minimize, BoundaryReparam, MinimizationProblem, MinimizationResult,
    MinimizerSettings,
};
pub use modulus::{compute_modulus, ModulusEstimate, ModulusOptions};
pub use num_complex::Complex64;
pub use reference::{critical_map, nitsche_bound, nitsche_c, nitsche_energy, nitsche_minimizer, AnnulusPair, NitscheBound};
pub use regularity::{
    assess, boundary_holder_fit, kellogg_prediction, length_area_check, lipschitz_probe, BoundaryCircle, HolderFit,
    LipschitzProbe, RegularityReport,
};

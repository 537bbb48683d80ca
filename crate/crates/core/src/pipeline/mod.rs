//! The construction run end to end: each stage returns exact data plus the checks
//! it passed, and [`run_full`] folds them into a [`Certificate`].

pub mod base;
pub mod certificate;
pub mod conic;
pub mod sextic;
pub mod surface;
mod fp;

pub use base::{build_base, diagonal_conic, BaseGeometry, BaseReport};
pub use conic::{
    choose_conic, conic_to_quadric, splitting_type, splitting_type_of, ConicA, ConicAttempt, ConicChoice,
    QuadricThroughLines, SplittingType,
};
pub use sextic::{
    build_fake_k3, build_scroll, build_sextic, build_threefold, nikulin_system, threefold_points, FakeK3,
    FakeK3Report, HilbertValue, NikulinReport, NikulinSystem, ScrollReport, SexticA, SexticReport, Threefold,
    ThreefoldReport,
};
pub use surface::{
    eight_lines, pick_surface, sample_smoothness, validate_surface, EightLines, EightLinesReport, SampledSmoothness,
    SurfaceAttempt, SurfaceChoice, SurfaceReport, SurfaceS,
};
pub use certificate::{digest, run_full, verify, Budget, Certificate, Convention, StageRecord, VerifyOutcome, DEFAULT_RETRIES};

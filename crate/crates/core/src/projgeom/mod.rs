//! Projective points, linear spans, parametrized curves and graded invariants.

mod curve;
mod hilbert;
mod jacobian;
mod space;

pub use curve::{hankel_cubic, quadrics_through, rnc_param, ParamCurve, ParamLine};
pub use hilbert::{fit_hilbert_polynomial, hilbert_function, hilbert_function_certified, HilbertFit};
pub use jacobian::{jacobian_on_curve, subsets, JacobianOnCurve};
pub use space::{span, ProjPoint, Subspace};

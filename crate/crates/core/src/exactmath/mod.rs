//! Exact arithmetic: rationals, matrices, polynomials and binary forms.

pub mod binary;
pub mod graded;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod polymat;
pub mod rational;
pub mod symmetric;

pub use binary::{discriminant, is_squarefree, resultant, BinaryForm, UniPoly};
pub use graded::{certified_piece, graded_piece, CertifiedPiece, GradedPiece};
pub use matrix::{rref, Mat, Rref};
pub use poly::{Monomial, MultiPoly};
pub use rational::{frac, rat, Rational};
pub use symmetric::{symmetric_reduce, symmetric_reduce_pair};

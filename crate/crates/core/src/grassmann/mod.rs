//! Lines of P^4 in Pluecker coordinates and linear sections of G(1,4).

mod bisecant;
mod compound;
mod net;
mod pluecker;

pub use bisecant::{bisecant_at, bisecant_map, homogenize_elementary, hyperplane_pullback};
pub use compound::{second_compound, Compound10, Quadric5};
pub use net::{net_smoothness, plane_common_zeros, unit_skew, HyperplaneNet, NetSmoothness, PlaneWitness, PlaneZeros};
pub use pluecker::{
    pair_index, pencil_join, pfaffians_of_poly_skew, pfaffians_of_skew, pluecker_of_line, pluecker_relations,
    residual, PencilJoin, PlueckerVector, PAIRS, PLUECKER_ORDER,
};

//! Exact invariants of polarized hyperkähler moduli spaces: polarization-type
//! census, connected components, wall divisors, Heegner divisors avoided by
//! the period map, and brute-force oracles for all of them.

pub mod error;
pub mod intarith;
pub mod json;
pub mod lattice;
pub mod moduli;
pub mod oracle;
pub mod periodmap;
pub mod walls;

pub use error::{Error, ErrorKind, Result};
pub use lattice::{discriminant_units, monodromy_summary, DeformationType, Family, MonodromySummary};
pub use moduli::{
    count_components, count_otilde_orbits, count_polarization_types, enumerate_components, exists_polarization,
    ComponentClass, PolarizationNumerics, TypeClass,
};
pub use periodmap::{
    avoided_heegner, compare_images, deck_group_bound, heegner_discriminant, overall_verdict, transform_wall,
    ComponentAction, HeegnerClass, ImageComparisonReport, Verdict,
};
pub use walls::{enumerate_wall_types, wall_orthogonal_to, WallType};

pub use num_bigint::BigInt;

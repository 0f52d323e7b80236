//! Independent checks of the universal identities in small graded rings
//! where every computation is exact and finite.

mod identities;
mod projective;
mod toy_ring;

pub use identities::{check_identity, CheckReport, IdentityKit, IdentityTag, Instance, Status};
pub use projective::{projective_bundle_ring, PbElem, ProjectiveBundleRing};
pub use toy_ring::{
    make_toy_ring, random_bundle, random_line_class, rank_of, standard_rings, ToyBundle, ToyElem,
    ToyRing, ToyRingSpec,
};

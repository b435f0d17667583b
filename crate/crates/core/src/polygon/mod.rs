//! Parameter matrices, slot wiring and transition matrices of the
//! `(2n+1)`-gon relation.

pub mod params;
pub mod rank;
pub mod scheme;
pub mod transition;

pub use params::{
    is_normalized, minor_det, sample_generic_parameters, with_identity_prefix, ParameterMatrix,
    ParamsJson,
};
pub use rank::{Face, PolygonRank};
pub use scheme::{slot_scheme, Leg, Slot, SlotScheme, Timeline};
pub use transition::{
    transition_matrix, verify_polygon_relation, PolygonRelation, RelationVerdict, TransitionMatrix,
};

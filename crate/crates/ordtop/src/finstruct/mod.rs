//! Carriers, point-set families, validated finite topologies, orders and
//! lattices, exhaustive enumerators, and the text/JSON formats.

mod carrier;
pub mod enumerate;
pub mod format;
mod lattice;
mod pointset;
mod relation;
mod topology;

pub use carrier::{is_label, Carrier, MAX_POINTS};
pub use enumerate::{
    enumerate_lattices, enumerate_lattices_upto, enumerate_posets, enumerate_posets_upto_iso, enumerate_qosets,
    enumerate_topologies, permutations,
};
pub use format::{parse_any, parse_json, parse_structure, ParseError, Structure};
pub use lattice::{closed_set_lattice, open_set_lattice, FinLattice};
pub use pointset::{PointSet, SetFamily};
pub use relation::{upper_sets_of, FinPoset, FinQoset, Relation};
pub use topology::{join_irreducibles, validate_topology, FinTopology, TopologyError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructError {
    #[error("carrier must have at least one point")]
    EmptyCarrier,
    #[error("{n} elements exceed the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid label `{0}`")]
    BadLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("relation size does not match the carrier")]
    SizeMismatch,
    #[error("not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
    #[error("not antisymmetric: `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("no meet or join for `{0}` and `{1}`")]
    NotALattice(String, String),
    #[error("enumeration size {n} outside 1..={max}")]
    EnumerationBound { n: usize, max: usize },
    #[error(transparent)]
    Topology(TopologyError),
}

/// Quasi-ordered set with a topology; no compatibility between the two is assumed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderedSpace {
    order: FinQoset,
    topology: FinTopology,
}

impl OrderedSpace {
    pub fn new(order: FinQoset, topology: FinTopology) -> Result<Self, StructError> {
        if order.n() != topology.n() {
            return Err(StructError::SizeMismatch);
        }
        let topology = topology.with_carrier(order.carrier().clone());
        Ok(OrderedSpace { order, topology })
    }

    pub fn carrier(&self) -> &Carrier {
        self.order.carrier()
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &FinQoset {
        &self.order
    }

    pub fn topology(&self) -> &FinTopology {
        &self.topology
    }

    pub fn structure(&self) -> Structure {
        Structure {
            carrier: self.carrier().clone(),
            topology: Some(self.topology.clone()),
            order: Some(self.order.clone()),
            relation: None,
        }
    }
}

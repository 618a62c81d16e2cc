//! Symmetric graphs as coset graphs over permutation groups, and the
//! multicover / cover / pseudocover classification of their extenders.
//!
//! The layers build on each other:
//!
//! * [`perm`], [`group`], [`cosets`]: permutations, stabilizer chains,
//!   element enumeration, intersections, cores and coset spaces.
//! * [`graph`]: simple graphs, quotients, lexicographic blow-ups and an
//!   isomorphism tester.
//! * [`cosetgraph`]: `Cos(G, H, HgH)` with valency, connectivity,
//!   faithfulness and local action.
//! * [`extender`]: nested pairs `L < H`, classification and chains.
//! * [`families`]: Praeger–Xu groups and graphs, wreath graphs, stock groups.
//! * [`tetra`]: pseudocovers of tetravalent graphs with 2-group stabilizers.
//! * [`census`]: brute-force sweep over intermediate subgroups.

pub mod census;
pub mod cosetgraph;
pub mod cosets;
pub mod error;
pub mod extender;
pub mod families;
pub mod graph;
pub mod group;
pub mod limits;
pub mod perm;
mod schreier;
pub mod spec;
pub mod subgroups;
pub mod tetra;

pub use cosetgraph::{build_coset_graph, CosetGraph};
pub use error::{Error, Result};
pub use extender::{ClassificationReport, ExtenderPair};
pub use graph::{BlockPartition, Graph};
pub use group::PermutationGroup;
pub use perm::Permutation;

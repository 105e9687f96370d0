//! Optimal bottleneck full Steiner trees in the plane.
//!
//! Given terminals `P` and Steiner candidates `S`, find a tree on `P ∪ S'`
//! (`S' ⊆ S`) in which every terminal is a leaf and whose longest edge is as
//! short as possible. The pipeline runs in `O((n + m) log m)`:
//!
//! 1. [`emst::euclidean_mst`] of `S` and the six-cone graph
//!    [`yao::yao_bipartite`] from each terminal into `S`;
//! 2. a binary search over the distinct MST edge lengths driven by the
//!    threshold test [`decision::compare_to_optimal`];
//! 3. assembly of at most six candidate trees, keeping the best.
//!
//! [`oracle`] provides an independent brute-force answer and [`testkit`]
//! builds instances with known optima.
//!
//! Everything is generic over the coordinate type ([`Scalar`]: `f32` or
//! `f64`). Lengths are compared as squares throughout.

pub mod bench;
pub mod decision;
pub mod emst;
mod error;
pub mod geometry;
pub mod io;
pub mod oracle;
mod scalar;
pub mod solver;
pub mod svg;
pub mod testkit;
pub mod union_find;
pub mod yao;

pub use decision::{compare_to_optimal, forest_components, CandidateSet, ComponentLabeling, SolverContext};
pub use emst::{euclidean_mst, mst_prim_reference, EmstResult, WeightedEdge};
pub use error::{Error, Result};
pub use geometry::{cone_index, max_gap, squared_distance, ConeIndex, Instance, Point, SquaredLength};
pub use oracle::{brute_force_optimum, feasible, FeasibilityWitness};
pub use scalar::Scalar;
pub use solver::{
    binary_search_threshold, bottleneck, build_tree_for_component, preprocess, solve, Attachment, FullSteinerTree,
    PhaseTimings, SolveReport,
};
pub use yao::{yao_bipartite, yao_bruteforce, YaoEdge, YaoGraph};

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type SquaredLength64 = SquaredLength<f64>;
pub type Instance64 = Instance<f64>;
pub type SolverContext64 = SolverContext<f64>;
pub type FullSteinerTree64 = FullSteinerTree<f64>;
pub type SolveReport64 = SolveReport<f64>;

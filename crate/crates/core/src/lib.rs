//! Stability of graphs under the canonical double cover.
//!
//! The crate computes automorphism groups by individualization-refinement,
//! builds the standard graph products, Boolean squares and Cartesian
//! skeletons, decides stability by comparing `|Aut(G x K2)|` with
//! `2 |Aut(G)|`, searches for two-fold (semi-)morphisms, and evaluates a
//! collection of sufficient instability conditions for circulant graphs.

pub mod circulant;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod json;
pub mod lab;
pub mod perm;
pub mod products;
pub mod search;
pub mod skeleton;
pub mod stability;
pub mod survey;

pub use circulant::CirculantSpec;
pub use error::{Error, Result};
pub use graph::{BasicProfile, Graph};
pub use group::{group_order, PermGroup};
pub use perm::Permutation;
pub use products::{direct_bundle, product, BundleMap, ProductGraph, ProductKind};
pub use search::{automorphism_group, automorphism_group_colored, isomorphism, Budget};
pub use skeleton::{boolean_square, cartesian_skeleton, dispensable};
pub use stability::{
    find_tf_morphism, find_tfs_morphism, pair_stability, stability_status, verify_two_fold, PairVerdict,
    Role, SearchOutcome, StabilityVerdict, TwoFoldPair, Verdict,
};

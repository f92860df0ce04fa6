//! Anti-Ramsey theory of posets in the Boolean lattice, at desk scale.
//!
//! The crate computes the exact extremal quantities `La`, `La*`, `La_con`,
//! `ar` and `ar*` for small ground sets, generates and certifies the
//! explicit rainbow-free colorings behind the lower-bound constructions,
//! and runs the greedy embedding machinery (inclusion bigraphs, spiders,
//! crown completion, marked chains) on concrete families.
//!
//! Modules map onto the main subsystems:
//!
//! - [`poset`]: finite posets, Hasse diagrams, the named-poset catalog,
//!   tree-poset saturation and chain-interval peeling.
//! - [`families`]: subsets of `[n]` as bitmasks, layers, convexity,
//!   exact-rational Lubell mass, bands, shadow partitions, and the
//!   log-space binomial inequality checks.
//! - [`copies`]: weak/strong copy detection in families and rainbow copy
//!   detection under colorings, plus the unpruned test oracle.
//! - [`search`]: branch-and-bound computation of `La`/`ar` values with
//!   symmetry reduction, and the sandwich-inequality report.
//! - [`constructions`]: the explicit colorings (convex-family, butterfly,
//!   broom chains, disjoint maximal chains) and their certification.
//! - [`embedding`]: inclusion bigraphs, minimum-degree cores, greedy
//!   spiders with color disciplines, fence/crown completion, marked
//!   chains and the good/bad predicates.
//! - [`formats`]: the family/coloring/poset file formats and inline
//!   generator specs used by the CLI.
//! - [`acceptance`]: the reproduction suite run by `repro` and by the
//!   `acceptance` integration test.

pub mod acceptance;
pub mod constructions;
pub mod copies;
pub mod embedding;
pub mod families;
pub mod formats;
pub mod poset;
pub mod search;
mod util;

pub use copies::{Coloring, CopyEmbedding, Mode};
pub use families::{BandSpec, SetFamily, SubsetMask};
pub use poset::{CatalogId, HasseDiagram, Poset};

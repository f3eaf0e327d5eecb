//! The crystal `B(∞)` of a simply-laced simple Lie algebra, realized on
//! Kostant partitions through Lusztig data.
//!
//! * [`root_system`]: ADE root systems, the pairing, reflections and the
//!   `β_{i,k}` / `γ_{i,k}` names of the `D_n` roots.
//! * [`weyl`]: reduced words, convex orders, braid moves and braid paths.
//! * [`pbw`]: Lusztig data, the piecewise-linear transport along braid moves
//!   and the crystal operators obtained by transport.
//! * [`bracketing`]: semi-adapted words and the bracketing operators, plus the
//!   words `i^A` and `i^D`.
//! * [`tableaux`]: marginally large tableaux in types A and D and the maps
//!   `Θ` and `Ψ` to Kostant partitions.
//! * [`harness`]: crystal graph generation, isomorphism checks and
//!   verification suites.

pub mod bracketing;
pub mod error;
pub mod harness;
pub mod pbw;
pub mod root_system;
pub mod tableaux;
pub mod weyl;

pub use error::{CrystalError, Result};
pub use root_system::{DRootName, Kind, Root, RootSystem};
pub use weyl::{BraidMove, ConvexOrder, MoveKind, ReducedWord, WeylElement};

//! A workbench for exact computation around automorphisms of free groups
//! and their smallest linear quotients.
//!
//! The crate provides five cooperating layers:
//!
//! - [`words`]: freely reduced words in F_n with parsing and abelianization;
//! - [`autos`]: certified automorphisms built from elementary Nielsen moves,
//!   with transvection constructors, composition, commutators, and the
//!   induced integer matrices;
//! - [`hyperplanes`]: the dictionary between indicator vectors, hyperplanes
//!   of Z_2^n, and free-group subgroups, including a certified basis-change
//!   algorithm for pairs of indicators;
//! - [`slgroup`]: exhaustive enumeration of SL(n,2) with subgroup closures,
//!   conjugation orbits, normalizers, and hyperplane stabilizers;
//! - [`presentations`]: finite presentations, Smith normal form
//!   abelianization, homomorphism enumeration into a validated catalog of
//!   small groups, and surjection classification.
//!
//! [`checks`] wires these into named, deterministic verification campaigns
//! with JSON reports.

pub mod autos;
pub mod checks;
pub mod gf2;
pub mod hyperplanes;
pub mod intmat;
pub mod presentations;
pub mod slgroup;
pub mod smallgroups;
pub mod words;

pub use autos::{AutoBuilder, AutoError, Automorphism, ElementaryAuto, TransvectionSide};
pub use checks::{all_passed, run_all, run_check, CheckId, CheckParams, CheckReport, CheckStatus, Profile};
pub use gf2::{Gf2Matrix, Gf2Span};
pub use hyperplanes::{Hyperplane, HyperplaneError, Indicator};
pub use intmat::{smith_normal_form, IntMatrix, SmithNormalForm};
pub use presentations::{Hom, Presentation, PresentationError, Relator};
pub use slgroup::{GroupTable, SlError, Subgroup};
pub use smallgroups::FiniteGroup;
pub use words::{Letter, Sign, Word, WordError};

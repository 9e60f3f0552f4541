//! Fundamental groups, universal covers, twisted homology, and the truncated
//! Kan loop group with its twisted total space.

pub mod coset;
pub mod cover;
pub mod loopgroup;
pub mod presentation;

pub use coset::{coset_enumeration, MulTable};
pub use cover::{is_hq_equivalence_comod, is_hq_equivalence_ret, universal_cover, CoverData};
pub use loopgroup::{LoopGroup, LoopWord, PxSimplex};
pub use presentation::{fundamental_group, EdgePathData, Presentation};

//! Finite simplicial sets in Eilenberg–Zilber normal form, simplicial maps,
//! and the limit/colimit constructions everything else is built from.

pub mod build;
pub mod enumerate;
pub mod map;
pub mod space;
pub mod word;

pub use build::{
    coequalizer, glue, induced_from_coequalizer, induced_from_pushout, pullback, pushout,
    pushout_pointed, smash, wedge, Coequalizer, Glued, Plus, Product, PullbackSpace, Pushout,
    Quotient, Smash, Subcomplex,
};
pub use enumerate::enumerate_maps;
pub use map::SMap;
pub use space::{
    from_complex, max_dim, projective_plane, set_max_dim, standard, SimplexId, SimplexRecord,
    SimplexRef, Space, SpaceBuilder, Standard,
};
pub use word::Word;

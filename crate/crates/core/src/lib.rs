pub mod distset;
pub mod exact;
pub mod lattice;
pub mod slab;
pub mod zgraph;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/distance-sets.md")]
    mod distance_sets {}
    #[doc = include_str!("../../../book/src/integers.md")]
    mod integers {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/slabs.md")]
    mod slabs {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
}

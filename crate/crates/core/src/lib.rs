pub mod algebra;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod rep_ring;
pub mod root_datum;
pub mod satake_k0;
pub mod verify;
pub mod weyl;

pub use algebra::{FreeModule, LaurentPoly};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/root-data.md")]
    struct RootData;
    #[doc = include_str!("../../../book/src/affine-weyl.md")]
    struct AffineWeyl;
    #[doc = include_str!("../../../book/src/iwahori-hecke.md")]
    struct IwahoriHecke;
    #[doc = include_str!("../../../book/src/spherical.md")]
    struct Spherical;
    #[doc = include_str!("../../../book/src/satake.md")]
    struct Satake;
    #[doc = include_str!("../../../book/src/k0.md")]
    struct K0;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}

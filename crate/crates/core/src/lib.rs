//! Equivariant cohomology, K-theory and truncated complex cobordism of
//! torus varieties with isolated fixed points, computed from fixed-point
//! data: Weyl groups, Euler classes, Białynicki-Birula strata, partial
//! flag varieties and the levels of the affine Grassmannian.

pub mod bb;
pub mod cli;
pub mod flag;
pub mod grassmannian;
pub mod rings;
pub mod root_system;
pub mod stratification;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] root_system::RootSystemError),
    #[error(transparent)]
    Ring(#[from] rings::RingError),
    #[error(transparent)]
    Stratification(#[from] stratification::StratificationError),
    #[error(transparent)]
    Bb(#[from] bb::BbError),
    #[error(transparent)]
    Flag(#[from] flag::FlagError),
    #[error(transparent)]
    Gr(#[from] grassmannian::GrError),
}

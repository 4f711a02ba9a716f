//! Explicit finite presentations of the kernels K_r of torus maps on
//! products of genus-2 surface groups, and the machinery to check them:
//! free-group words, Dehn's algorithm on each factor, the product G,
//! abelianization by Smith normal form and Tietze moves.

pub mod abelian;
pub mod dps;
pub mod format;
pub mod freegroup;
pub mod gproduct;
pub mod par;
pub mod smallcancel;
pub mod tietze;
pub mod verify;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    FreeGroup(#[from] freegroup::FreeGroupError),
    #[error(transparent)]
    SmallCancel(#[from] smallcancel::SmallCancelError),
    #[error(transparent)]
    GProduct(#[from] gproduct::GProductError),
    #[error(transparent)]
    Dps(#[from] dps::DpsError),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error(transparent)]
    Tietze(#[from] tietze::TietzeError),
}

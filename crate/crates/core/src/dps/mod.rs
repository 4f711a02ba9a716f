//! Presentations of the kernel K_r of the torus map on a product of r genus-2
//! surface groups, of the product G itself and of a single surface factor,
//! together with the maps into G and the corpus of identities used to
//! check them.

mod corpus;
mod maps;
mod presentation;
pub mod words;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::FreeGroupError;
use crate::gproduct::GProductError;

pub use corpus::{lemma_corpus, typo_corpus, Claim, ClaimKind, ClaimOutcome, TypoCase, TypoOutcome};
pub use maps::{
    embedding_map, frame_map, inverse_map, projection_preimages, variant_frame, Frame, SubstitutionMap,
};
pub use presentation::{build_presentation, Presentation, Relator};
pub use words::{build_s, build_t, build_t_printed, build_v, build_w};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpsError {
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("variant {variant} is not defined at rank {rank}")]
    VariantRankMismatch { variant: Variant, rank: u16 },
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error(transparent)]
    GProduct(#[from] GProductError),
    #[error("rank {0} is too small for this operation")]
    BadRank(u16),
    #[error("relator {0} uses an undeclared generator")]
    UndeclaredGenerator(String),
}

/// The five presentations. The command-line names are given by
/// [`Variant::cli_name`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// The product G on the generators x, c, d, f, g.
    GFull,
    /// One surface factor on x, c[i,r], del.
    SurfaceR,
    /// K_r on x, f[i,r], A and B, with the [A,B] commutators.
    KFull,
    /// K_r on c, d, f, g alone (rank at least 4).
    KSimplified,
    /// K_3 as listed explicitly.
    KR3,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::GFull, Variant::SurfaceR, Variant::KFull, Variant::KSimplified, Variant::KR3];

    pub fn cli_name(self) -> &'static str {
        match self {
            Variant::GFull => "thmG",
            Variant::SurfaceR => "prop-surface",
            Variant::KFull => "thm4.1",
            Variant::KSimplified => "thm1.1",
            Variant::KR3 => "r3",
        }
    }

    pub fn min_rank(self) -> u16 {
        match self {
            Variant::GFull => 2,
            Variant::SurfaceR | Variant::KFull | Variant::KR3 => 3,
            Variant::KSimplified => 4,
        }
    }

    /// Whether the group presented is the kernel K_r.
    pub fn is_kernel(self) -> bool {
        matches!(self, Variant::KFull | Variant::KSimplified | Variant::KR3)
    }

    /// The variant actually built at rank r: the simplified form at r = 3 is
    /// the explicit r = 3 presentation.
    pub fn resolve(self, r: u16) -> Result<Variant, DpsError> {
        let v = match (self, r) {
            (Variant::KSimplified, 3) => Variant::KR3,
            _ => self,
        };
        let ok = match v {
            Variant::KR3 => r == 3,
            _ => r >= v.min_rank(),
        };
        if ok {
            Ok(v)
        } else {
            Err(DpsError::VariantRankMismatch { variant: self, rank: r })
        }
    }

    /// Header line used by the text format.
    pub fn group_name(self, r: u16) -> String {
        match self {
            Variant::GFull => format!("G_{r}"),
            Variant::SurfaceR => format!("S_{r}"),
            _ => format!("K_{r}"),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.cli_name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

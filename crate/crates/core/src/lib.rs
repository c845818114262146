//! Root systems, Weyl groups, nonreduced parabolic data, Chow transfer
//! coefficients, fiber analysis for BSDH varieties and explicit incidence
//! varieties in positive characteristic.

pub mod chow;
pub mod error;
pub mod fibers;
pub mod parabolic;
pub mod rootsys;
pub mod varieties;
pub mod weyl;

pub use chow::{ChowTransfer, DiagonalTransfer, PrimePower, QPolynomial, SchubertBasis};
pub use error::{CoreError, Result};
pub use fibers::{BsdhWord, Direction, Exactness, ThickeningReport};
pub use parabolic::{Exponent, Validation, WenzelDatum};
pub use rootsys::{Family, Root, RootSystem, SystemKind};
pub use varieties::{Codimension, NormalityVerdict, ProjectiveIdealPresentation};
pub use weyl::{LeviSubset, WeylElement, WeylGroup};

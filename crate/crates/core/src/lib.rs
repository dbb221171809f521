//! Secrecy rate regions for the two-receiver broadcast channel with
//! transmitter side information, and a Monte Carlo double-binning codec.
//!
//! * [`prob`]: finite joint distributions, entropy and mutual information.
//! * [`channel`]: channel laws, coding schemes and the induced joint.
//! * [`region`]: region bounds, corner points, polygons and hulls.
//! * [`search`]: frontier search over coding schemes.
//! * [`codec`]: random codebooks, encoding, decoding and leakage.
//! * [`cli`]: the `secbc` command line.

// NaN-rejecting checks are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod codec;
pub mod error;
pub mod presets;
pub mod prob;
pub mod region;
pub mod search;
pub mod specfile;
pub mod streams;

pub use channel::{induced_joint, ChannelAlphabets, ChannelSpec, CodingScheme, SchemeAlphabets};
pub use error::{Error, Result};
pub use prob::{JointDistribution, VariableId};
pub use region::{RateBounds, RatePair, RateRegion, RegionKind};

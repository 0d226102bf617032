//! Quantum dilogarithms over the self-dual groups `R`, `R x Z/NZ` and
//! `T x Z`, their Weil transforms, the Faddeev–Volkov type weights built on
//! them, and numerical checks of the integral identities those weights obey.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(a < b)` is used on purpose so that NaN fails domain checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod cmath;
pub mod error;
pub mod lca;
pub mod numerics;
pub mod qdilog;
pub mod transforms;
pub mod verify;
pub mod weights;

pub use cmath::C64;
pub use error::{Error, Result};
pub use lca::{GroupElement, GroupId, SubgroupB};
pub use numerics::{NumericsSpec, QuadratureResult};
pub use qdilog::DilogSpec;

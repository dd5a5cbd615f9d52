//! Boundary particle method for steady convection-diffusion-reaction
//! problems `D∇²u − v·∇u − κu = f`, using high-order general solutions so that
//! both the homogeneous and the particular part of the solution are carried by
//! boundary knots alone.
//!
//! Layers, bottom up: [`specfun`] (scaled modified Bessel functions),
//! [`operator`] (parameters and the closed-form source family), [`kernels`]
//! (general and fundamental solutions of every order), [`geometry`]
//! (boundaries, knots, evaluation grids), [`linalg`], [`solver`] and [`cli`].

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod linalg;
pub mod operator;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};

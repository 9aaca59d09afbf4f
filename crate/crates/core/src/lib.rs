// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact orbits of Cantor-set points under doubling, the Fourier transform
//! of the Cantor measure, and shrinking-target experiments built on them.

pub mod bump;
pub mod cassels;
pub mod error;
pub mod exact_orbit;
pub mod fourier_mu;
pub mod harness;
pub mod moments;
pub mod parallel;
pub mod stats;

pub use bump::{BumpFunction, BumpSpec, FourierCoefficient};
pub use error::{Error, Result};
pub use exact_orbit::{BinaryOrbit, BinaryPoint, CantorPoint, CircleValue, OrbitCursor, DEFAULT_GUARD_BITS};
pub use fourier_mu::{Certified, FourierValue};
pub use harness::{ApproxFunction, CountCurve, CountRow, SamplePoint, Sampler, TargetSequence};
pub use moments::{BumpFamily, Method, MomentEstimate};

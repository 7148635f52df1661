//! Steady-state solver for coupled fluid, glucose and albumin transport
//! across a tissue layer in contact with dialysis fluid.
//!
//! The model describes a flat tissue slab on `x in [0, L]`: dialysate at
//! `x = 0`, an impermeable boundary at `x = L`, and capillary/lymphatic
//! exchange distributed through the bulk. At steady state the fluid flux
//! density from blood, `q_U`, and the fluid flux across the tissue, `j_U`,
//! admit closed forms for two fractional-void-volume closures:
//!
//! * constant `nu(x) = nu_m` — exponential profiles,
//! * linear `nu(x) = nu_max - (nu_max - nu_min) x` — modified Bessel
//!   function profiles.
//!
//! The glucose and albumin concentrations then satisfy linear second-order
//! two-point boundary value problems, solved here by a second-order finite
//! difference scheme, with the interstitial pressure recovered algebraically.
//!
//! Everything is pure and immutable after construction; solves can run
//! concurrently without coordination.

pub mod bessel;
pub mod bvp;
pub mod config;
pub mod flux;
pub mod output;
pub mod params;
pub mod profiles;

pub use params::{DimensionlessGroups, ParameterSet, VoidVolumeModel};
pub use profiles::{solve_profiles, SteadyStateSolution};

//! Charmonium quark model on a simulated quantum computer.
//!
//! The library builds nonrelativistic charm-anticharm Hamiltonians in a
//! truncated harmonic-oscillator basis (Coulomb + linear confinement +
//! smeared spin-spin contact term), solves them three ways — grid
//! integration of the radial equation, direct diagonalization, and
//! McLachlan variational quantum imaginary-time evolution on a two-qubit
//! statevector simulator — and evaluates M1/E1 transition amplitudes with
//! direct-overlap, swap-test and Hadamard-test circuits, with optional
//! readout/depolarizing noise, measurement-error mitigation and zero-noise
//! extrapolation.

pub mod error;
pub mod fmtnum;
pub mod linalg;
pub mod mitigation;
pub mod params;
pub mod pauliops;
pub mod quadrature;
pub mod quarkmodel;
pub mod simulator;
pub mod transitions;
pub mod vqite;

pub use error::CoreError;
pub use params::{BasisSpec, Channel, ModelParams};

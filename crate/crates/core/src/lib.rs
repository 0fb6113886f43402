//! Deterministic unitary operations on time-bin qudits.
//!
//! The crate covers the full path from an abstract `d×d` unitary to a fiber
//! circuit: triangular coupler-mesh synthesis ([`reck`]), component and loss
//! models ([`components`]), netlist construction and single-photon simulation
//! ([`circuit`]), and two application harnesses, a four-basis qutrit QKD run
//! and a CHSH detection-efficiency analysis ([`protocols`]).
//!
//! ```
//! use timebin::circuit::{build_gate, simulate};
//! use timebin::protocols::mub_qutrit;
//! use timebin::reck::{decompose, qutrit_dft};
//!
//! let dec = decompose(&qutrit_dft())?;
//! let gate = build_gate(&dec, true)?;
//! let mubs = mub_qutrit();
//! let out = simulate(&gate, mubs.state(1, 2))?;
//! assert!(out.output_state.equals_up_to_phase(mubs.state(0, 2), 1e-12));
//! assert!((out.transmission - 10f64.powf(-0.33)).abs() < 1e-12);
//! # Ok::<(), timebin::Error>(())
//! ```

pub mod circuit;
pub mod components;
mod error;
pub mod protocols;
pub mod qudit;
pub mod reck;

pub use error::{Error, Result};

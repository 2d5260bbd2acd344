//! Betti diagrams of Stanley–Reisner rings and Markov bases of hierarchical
//! log-linear models.
//!
//! The crate computes, for a simplicial complex `Δ` on `[n]`:
//!
//! * the graded Betti numbers of `K[x]/I_Δ` via Hochster's formula
//!   ([`stanley_reisner`], built on [`homology`]);
//! * the design matrix `M(Δ, d)` of the hierarchical model ([`model`]);
//! * a minimal generating set (Markov basis) of the toric ideal `I_M` and the
//!   degrees of its minimal generators ([`markov`]);
//! * explicit binary-model move constructions ([`moves`]);
//! * a checker for the relation "nonzero Betti row `j` implies a minimal
//!   Markov generator of degree `2^j`" and table reproduction ([`harness`]).

pub mod complex;
pub mod error;
pub mod harness;
pub mod homology;
pub mod markov;
pub mod model;
pub mod moves;
pub mod stanley_reisner;

pub use complex::{parse_complex, Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};

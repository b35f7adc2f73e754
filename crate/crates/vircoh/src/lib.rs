//! Virtual cohomology rings of global quotient orbifolds [Y/G].
//!
//! Two computation routes are provided and cross-checked against each other:
//!
//! * **group-ring mode** — embed the virtual cohomology into the group ring
//!   `H*(Y)[G]` via Gysin pushforwards, saturate a generator set into the image
//!   subring, extract G-invariants, and verify ring presentations;
//! * **inertia mode** — evaluate the pull–push product
//!   (α,g)·(β,h) = (i_{gh!}(i_g*α · i_h*β · e), gh) directly on fixed-point
//!   data, and check that pushing forward intertwines the two products.
//!
//! All arithmetic is exact rational; integral statements are audited after
//! the fact (every reported coefficient must have denominator 1).

pub mod error;
pub mod exactalg;
pub mod graded;
pub mod group;
pub mod formats;
pub mod inertia;
pub mod subring;
pub mod symprod;

pub use error::{Error, Result};

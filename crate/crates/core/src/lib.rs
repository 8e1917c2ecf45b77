//! Dark, antidark and magnetic solitons in one dimension.
//!
//! Closed-form profiles of the weakly interacting condensate equation and of
//! the hard-core boson equation at half filling, their traveling-wave
//! reductions, time-domain integrators for both equations, fitting and
//! tracking tools, and the classical easy-plane spin image.

pub mod error;
pub mod analytic;
pub mod cli;
pub mod measure;
pub mod params;
pub mod pde;
pub mod profile;
pub mod spinmap;
pub mod twode;

pub use error::{Error, Result};
pub use params::{derive_groups, derive_groups_vbar, match_gpe_to_hgpe, DerivedGroups, PhysicalParams, System};
pub use profile::{Branch, Profile, ProfileKind, ProfileValues};

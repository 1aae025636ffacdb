//! Piecewise-linear 1-Lipschitz functions and the crossing functionals built
//! on them.

mod closed;
mod crossing;
mod plf;
mod recurrence;
mod reduce;
mod rotate;
mod sigma;

pub use closed::{f_closed, f_from_h, h_upper, h_upper_and_f, FBounds};
pub use crossing::{ell_crossing, gamma_crossing, sup_ratio};
pub use plf::{ExtendedReal, GammaParam, PLFunction, Sign, TOL};
pub use recurrence::{characteristic_discriminant, run_recurrence, s_good, RecurrenceRun};
pub use reduce::{canonicalize, ends_from_levels, remove_extrema, trace, BreakpointTrace};
pub use rotate::rotate;
pub use sigma::{sigma, sigma_g, sigma_level, sigma_window};

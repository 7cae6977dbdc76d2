//! Foundation arithmetic shared by every other module.

mod matrix;
mod poly;
mod power;
mod rational;
mod series;

pub use matrix::{sigma_max_2x2, Matrix2};
pub use poly::RealPolynomial;
pub use power::{principal_arg, principal_power};
pub use rational::RationalFunction;
pub use series::TruncatedSeries;

use num_complex::Complex64;

/// The imaginary unit.
pub const J: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn fmt_c(z: Complex64) -> String {
    format!("{:.6e}{:+.6e}j", z.re, z.im)
}

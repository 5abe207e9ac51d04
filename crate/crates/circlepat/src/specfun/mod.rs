//! Special functions: Chebyshev series, Clausen's integral, the `f_θ` family
//! and the imaginary part of the dilogarithm on rays.

mod cheb;
mod clausen;
mod ftheta;

pub use cheb::ChebSeries;
pub use clausen::{clausen, clausen_prime, clausen_regular_part, clausen_series, reduce_angle, CLAUSEN_ORDER, CLAUSEN_TRUNCATION};
pub use ftheta::{f_theta, f_theta_inv, f_theta_mode, f_theta_prime, im_li, im_li_symmetric, Angle, FMode};

pub(crate) use ftheta::{check_theta, im_li_unchecked};

//! The family `f_θ(x) = arg(1 - e^{x-iθ})`, its inverse, and `Im Li(e^{x+iθ})`.

use super::clausen::clausen;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An intersection angle `θ ∈ (0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn new(theta: T) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self(theta))
    }

    pub fn theta(self) -> T {
        self.0
    }

    /// `θ* = π - θ`.
    pub fn theta_star(self) -> T {
        T::PI() - self.0
    }
}

pub(crate) fn check_theta<T: Scalar>(theta: T) -> Result<()> {
    if theta > T::zero() && theta < T::PI() {
        Ok(())
    } else {
        Err(Error::Domain(format!("θ = {theta} not in (0, π)")))
    }
}

/// Evaluation modes of [`f_theta_mode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FMode {
    Eval,
    Inverse,
    Derivative,
}

/// `f_θ(x) ∈ (0, π - θ)`, strictly increasing in `x`.
pub fn f_theta<T: Scalar>(theta: T, x: T) -> T {
    if x > T::zero() {
        theta.sin().atan2((-x).exp() - theta.cos())
    } else {
        let ex = x.exp();
        (ex * theta.sin()).atan2(T::one() - ex * theta.cos())
    }
}

/// `f_θ'(x) = sin θ / (2 (cosh x - cos θ))`.
pub fn f_theta_prime<T: Scalar>(theta: T, x: T) -> T {
    let two = T::lit(2.0);
    let sx = (x / two).sinh();
    let st = (theta / two).sin();
    let denom = two * (sx * sx + st * st);
    theta.sin() / (two * denom)
}

/// `f_θ^{-1}(y) = log(sin y / sin(y + θ))` for `y ∈ (0, π - θ)`.
pub fn f_theta_inv<T: Scalar>(theta: T, y: T) -> Result<T> {
    if !(y > T::zero() && y < T::PI() - theta) {
        return Err(Error::Domain(format!("f_θ inverse argument {y} not in (0, π-θ) for θ = {theta}")));
    }
    Ok((y.sin() / (y + theta).sin()).ln())
}

/// Dispatching form of the three `f_θ` operations.
pub fn f_theta_mode<T: Scalar>(mode: FMode, theta: T, arg: T) -> Result<T> {
    check_theta(theta)?;
    match mode {
        FMode::Eval => Ok(f_theta(theta, arg)),
        FMode::Derivative => Ok(f_theta_prime(theta, arg)),
        FMode::Inverse => f_theta_inv(theta, arg),
    }
}

/// `Im Li(e^{x+iθ}) = y x + ½Cl(2y) - ½Cl(2y+2θ) + ½Cl(2θ)` with `y = f_θ(x)`.
pub fn im_li<T: Scalar>(x: T, theta: T) -> Result<T> {
    check_theta(theta)?;
    Ok(im_li_unchecked(x, theta))
}

pub(crate) fn im_li_unchecked<T: Scalar>(x: T, theta: T) -> T {
    let half = T::lit(0.5);
    let y = f_theta(theta, x);
    let two = T::lit(2.0);
    y * x + half * (clausen(two * y) - clausen(two * y + two * theta) + clausen(two * theta))
}

/// The symmetric combination `Im Li(e^{x+iθ}) + Im Li(e^{-x+iθ}) = p x + Cl(p+θ*) + Cl(θ*-p) - Cl(2θ*)`,
/// where `tan(p/2) = tanh(x/2) tan(θ*/2)`.
pub fn im_li_symmetric<T: Scalar>(x: T, theta: T) -> Result<T> {
    check_theta(theta)?;
    let two = T::lit(2.0);
    let ts = T::PI() - theta;
    let p = two * ((x / two).tanh() * (ts / two).tan()).atan();
    Ok(p * x + clausen(p + ts) + clausen(ts - p) - clausen(two * ts))
}

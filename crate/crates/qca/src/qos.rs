//! QoS bundling: stringency and regime classification, the distance ratios
//! rho and rho*, area-scaling heuristics, and boundary-reliability
//! calibration formulas.

use crate::error::{Error, Result};
use crate::mathfn::{self, FadingModel, Shape};

use std::f64::consts::PI;

/// Width of the band around sigma = 1 classified as `Balanced`.
const BALANCED_TOL: f64 = 1e-12;

/// One QoS operating point: SIR threshold theta (linear), target
/// reliability u, path-loss exponent alpha, and the fading model.
#[derive(Clone, Copy, Debug)]
pub struct QosSpec {
    theta: f64,
    u: f64,
    alpha: f64,
    fading: FadingModel,
}

impl QosSpec {
    pub fn new(theta: f64, u: f64, alpha: f64, fading: FadingModel) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be positive, got {theta}")));
        }
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain(format!("u must be in [0,1), got {u}")));
        }
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must exceed 2, got {alpha}")));
        }
        Ok(Self { theta, u, alpha, fading })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn fading(&self) -> &FadingModel {
        &self.fading
    }

    /// Stability exponent delta = 2/alpha in (0,1).
    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Lax,
    Balanced,
    Stringent,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Lax => "lax",
            Regime::Balanced => "balanced",
            Regime::Stringent => "stringent",
        };
        f.write_str(s)
    }
}

/// Stringency sigma with the derived distance ratios.
#[derive(Clone, Copy, Debug)]
pub struct StringencyReport {
    pub sigma: f64,
    pub regime: Regime,
    /// rho = sigma^(1/alpha), the Q-cell distance ratio.
    pub rho: f64,
    /// rho* = (theta / F_{H*}^{-1}(1-u))^(1/alpha), the interference-cloned ratio.
    pub rho_star: f64,
}

/// sigma = theta / F_H^{-1}(1-u), with the closed forms for the special
/// fading cases, plus rho and rho*.
pub fn stringency(spec: &QosSpec) -> Result<StringencyReport> {
    let theta = spec.theta;
    let u = spec.u;
    let model = spec.fading;
    let sigma = match (model.p(), model.q()) {
        (Shape::Finite(p), Shape::Finite(q)) if p == 1.0 && q == 1.0 => {
            theta * mathfn::imh(u)?
        }
        (Shape::Finite(p), Shape::Finite(q)) if p == 0.5 && q == 0.5 => {
            theta * (PI * u / 2.0).tan().powi(2)
        }
        (Shape::Infinite, Shape::Infinite) => theta,
        (Shape::Finite(p), Shape::Infinite) if p == 1.0 => theta / -u.ln(),
        (Shape::Infinite, Shape::Finite(q)) if q == 1.0 => -theta * (-u).ln_1p(),
        _ => {
            let quantile = mathfn::fading_quantile(&model, 1.0 - u)?;
            theta / quantile
        }
    };
    let regime = if (sigma - 1.0).abs() <= BALANCED_TOL {
        Regime::Balanced
    } else if sigma < 1.0 {
        Regime::Lax
    } else {
        Regime::Stringent
    };
    let rho = sigma.powf(1.0 / spec.alpha);
    let rho_star = {
        let q_star = mathfn::cloned_fading_quantile(&model, 1.0 - u)?;
        (theta / q_star).powf(1.0 / spec.alpha)
    };
    Ok(StringencyReport {
        sigma,
        regime,
        rho,
        rho_star,
    })
}

/// Heuristic area scaling factor nu(delta, g) = (sinc delta)^(1 - g(1-delta)).
pub fn nu_heuristic(delta: f64, g: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&delta) || delta == 0.0);
    let sinc = if delta == 0.0 {
        1.0
    } else {
        (PI * delta).sin() / (PI * delta)
    };
    sinc.powf(1.0 - g * (1.0 - delta))
}

/// Regularity of a Gaussian-perturbed lattice: g = max(0.3, 1 - 3.5 v).
pub fn regularity_of_perturbed_lattice(v: f64) -> f64 {
    (1.0 - 3.5 * v).max(0.3)
}

/// Estimated maximum boundary reliability of the scaled cell,
/// u_hat = 1 - F_H(theta nu^(1/delta) rho^(-alpha)).
pub fn u_hat(spec: &QosSpec, rho: f64, nu: f64) -> Result<f64> {
    if !(0.0 < nu && nu <= 1.0) {
        return Err(Error::Domain(format!("nu must be in (0,1], got {nu}")));
    }
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("rho must be positive, got {rho}")));
    }
    let arg = spec.theta * nu.powf(1.0 / spec.delta()) * rho.powf(-spec.alpha);
    Ok(1.0 - mathfn::fading_cdf(spec.fading(), arg)?)
}

/// Estimated mean boundary reliability of the unscaled refined cell,
/// mh(nu^(1/delta) imh(u)). Stated for Rayleigh fading only.
pub fn mean_boundary_reliability_estimate(
    model: &FadingModel,
    u: f64,
    nu: f64,
    delta: f64,
) -> Result<f64> {
    if !model.is_rayleigh() {
        return Err(Error::Unsupported(
            "mean boundary reliability closed form requires Rayleigh fading; \
             use the oracle's boundary statistics instead"
                .into(),
        ));
    }
    if !(0.0 < nu && nu <= 1.0) {
        return Err(Error::Domain(format!("nu must be in (0,1], got {nu}")));
    }
    mathfn::mh(nu.powf(1.0 / delta) * mathfn::imh(u)?)
}

/// Where the scale factor nu came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NuSource {
    Explicit(f64),
    /// Measured meta distribution (covered area fraction eta_C); nu is the
    /// ratio eta_C / eta_{Q*}.
    MeasuredMd(f64),
    /// Regularity-based heuristic with parameter g.
    Heuristic(f64),
}

impl std::fmt::Display for NuSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NuSource::Explicit(v) => write!(f, "explicit({v})"),
            NuSource::MeasuredMd(v) => write!(f, "measured_md({v})"),
            NuSource::Heuristic(g) => write!(f, "heuristic(g={g})"),
        }
    }
}

/// Selection policy for nu: an explicit value wins, then a measured MD
/// ratio, then the regularity heuristic.
pub fn select_nu(
    delta: f64,
    explicit: Option<f64>,
    measured_md_ratio: Option<f64>,
    g: Option<f64>,
) -> Result<(f64, NuSource)> {
    if let Some(nu) = explicit {
        if !(0.0 < nu && nu <= 1.0) {
            return Err(Error::Domain(format!("explicit nu must be in (0,1], got {nu}")));
        }
        return Ok((nu, NuSource::Explicit(nu)));
    }
    if let Some(ratio) = measured_md_ratio {
        if !(ratio > 0.0) {
            return Err(Error::Domain(format!("measured nu ratio must be positive, got {ratio}")));
        }
        return Ok((ratio.min(1.0), NuSource::MeasuredMd(ratio)));
    }
    if let Some(g) = g {
        if !(0.3..=1.0).contains(&g) {
            return Err(Error::Domain(format!("regularity g must be in [0.3,1], got {g}")));
        }
        return Ok((nu_heuristic(delta, g), NuSource::Heuristic(g)));
    }
    Err(Error::Domain("no nu source provided".into()))
}

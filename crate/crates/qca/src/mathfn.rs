//! Scalar special functions: the MH transform pair, the regularized
//! incomplete beta function and its inverse, and the fading-ratio
//! distributions (cdf/quantile) for Nakagami-(p,q) links, including the
//! interference-cloned variant where two equidistant interferers share
//! the fading budget.

use crate::error::{Error, Result};

use std::f64::consts::PI;

/// MH transform `x -> x / (1 + x)`, compressing `R+` onto `[0, 1)`.
///
/// Returns a domain error at the pole `x = -1`.
pub fn mh(x: f64) -> Result<f64> {
    if x == -1.0 {
        return Err(Error::Domain("mh(x) has a pole at x = -1".into()));
    }
    Ok(mh_raw(x))
}

/// Inverse MH transform `x -> x / (1 - x)`.
///
/// Returns a domain error at the pole `x = 1`.
pub fn imh(x: f64) -> Result<f64> {
    if x == 1.0 {
        return Err(Error::Domain("imh(x) has a pole at x = 1".into()));
    }
    Ok(imh_raw(x))
}

#[inline]
pub(crate) fn mh_raw(x: f64) -> f64 {
    x / (1.0 + x)
}

#[inline]
pub(crate) fn imh_raw(x: f64) -> f64 {
    x / (1.0 - x)
}

/// One Nakagami shape parameter; the no-fading limit is an explicit tag so
/// it never enters beta-function evaluations as a huge float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Finite(f64),
    Infinite,
}

impl Shape {
    pub fn is_finite(&self) -> bool {
        matches!(self, Shape::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Shape::Finite(v) => Some(*v),
            Shape::Infinite => None,
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Finite(v) => write!(f, "{v}"),
            Shape::Infinite => write!(f, "inf"),
        }
    }
}

/// Nakagami-(p,q) fading: shape `p` on the desired link, `q` on the
/// interfering links, all powers normalized to mean 1. At most one of the
/// two shapes may be the no-fading limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FadingModel {
    p: Shape,
    q: Shape,
}

impl FadingModel {
    pub fn new(p: Shape, q: Shape) -> Result<Self> {
        if let Shape::Finite(v) = p {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("shape p must be positive, got {v}")));
            }
        }
        if let Shape::Finite(v) = q {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("shape q must be positive, got {v}")));
            }
        }
        Ok(Self { p, q })
    }

    /// Symmetric Rayleigh fading (p = q = 1).
    pub fn rayleigh() -> Self {
        Self {
            p: Shape::Finite(1.0),
            q: Shape::Finite(1.0),
        }
    }

    /// Symmetric Nakagami-m fading.
    pub fn nakagami(m: f64) -> Result<Self> {
        Self::new(Shape::Finite(m), Shape::Finite(m))
    }

    /// No fading on either link (both shapes at the limit).
    pub fn no_fading() -> Self {
        Self {
            p: Shape::Infinite,
            q: Shape::Infinite,
        }
    }

    /// Rayleigh desired link, deterministic interferers.
    pub fn pessimistic() -> Self {
        Self {
            p: Shape::Finite(1.0),
            q: Shape::Infinite,
        }
    }

    /// Deterministic desired link, Rayleigh interferers.
    pub fn optimistic() -> Self {
        Self {
            p: Shape::Infinite,
            q: Shape::Finite(1.0),
        }
    }

    pub fn p(&self) -> Shape {
        self.p
    }

    pub fn q(&self) -> Shape {
        self.q
    }

    pub fn is_rayleigh(&self) -> bool {
        self.p == Shape::Finite(1.0) && self.q == Shape::Finite(1.0)
    }

    pub fn is_no_fading(&self) -> bool {
        self.p == Shape::Infinite && self.q == Shape::Infinite
    }

    /// Parses `"p,q"` where either side may be `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let parse_shape = |t: &str| -> Result<Shape> {
            let t = t.trim();
            if t.eq_ignore_ascii_case("inf") {
                return Ok(Shape::Infinite);
            }
            t.parse::<f64>()
                .map(Shape::Finite)
                .map_err(|_| Error::Parse(format!("bad fading shape {t:?}")))
        };
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("fading must be \"p,q\", got {s:?}")))?;
        Self::new(parse_shape(a)?, parse_shape(b)?)
    }
}

// ---------------------------------------------------------------------------
// Gamma / beta machinery
// ---------------------------------------------------------------------------

/// ln Γ(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
pub(crate) fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Reflection, keeps accuracy for small arguments.
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = 0.99999999999980993;
    for (i, &c) in COEF.iter().enumerate() {
        a += c / (x + (i + 1) as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

fn ln_beta(p: f64, q: f64) -> f64 {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}

/// Continued fraction for the incomplete beta function (Lentz's method).
fn beta_cf(p: f64, q: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = p + q;
    let qap = p + 1.0;
    let qam = p - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=400 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (q - m) * x / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

fn check_shapes(p: f64, q: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() || !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!(
            "beta shapes must be finite and positive, got ({p}, {q})"
        )));
    }
    Ok(())
}

/// Regularized incomplete beta function B_{p,q}(x), the beta-distribution cdf.
///
/// Continued-fraction evaluation with a symmetry switch at `x = p/(p+q)`.
pub fn reg_inc_beta(p: f64, q: f64, x: f64) -> Result<f64> {
    check_shapes(p, q)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("beta argument x={x} outside [0,1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let front = (p * x.ln() + q * (1.0 - x).ln() - ln_beta(p, q)).exp();
    let v = if x <= p / (p + q) {
        front * beta_cf(p, q, x) / p
    } else {
        1.0 - front * beta_cf(q, p, 1.0 - x) / q
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Inverse of [`reg_inc_beta`] in `x`: Newton iteration with a bisection
/// fallback, bracket always maintained.
pub fn inv_reg_inc_beta(p: f64, q: f64, u: f64) -> Result<f64> {
    check_shapes(p, q)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("beta inverse u={u} outside [0,1]")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u == 1.0 {
        return Ok(1.0);
    }
    let ln_b = ln_beta(p, q);
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut x = p / (p + q);
    for _ in 0..200 {
        let f = reg_inc_beta(p, q, x)? - u;
        if f == 0.0 {
            return Ok(x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo < 1e-17 {
            break;
        }
        let ln_pdf = (p - 1.0) * x.ln() + (q - 1.0) * (1.0 - x).ln() - ln_b;
        let step = if ln_pdf > -700.0 {
            f / ln_pdf.exp()
        } else {
            f64::INFINITY
        };
        let mut next = x - step;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() < 1e-16 * (1.0 + x) {
            x = next;
            break;
        }
        x = next;
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Fading-ratio distributions
// ---------------------------------------------------------------------------

fn unsupported_model(model: &FadingModel, what: &str) -> Error {
    Error::Unsupported(format!(
        "{what} not available for Nakagami-({}, {}); infinite shapes are only \
         supported as (1,inf), (inf,1), (inf,inf)",
        model.p, model.q
    ))
}

/// cdf of the power ratio H = h1/h2 between the desired link and one
/// interferer.
pub fn fading_cdf(model: &FadingModel, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("fading_cdf of NaN".into()));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    match (model.p, model.q) {
        (Shape::Finite(p), Shape::Finite(q)) => reg_inc_beta(p, q, mh_raw(x * p / q)),
        (Shape::Finite(p), Shape::Infinite) if p == 1.0 => Ok(-(-x).exp_m1()),
        (Shape::Infinite, Shape::Finite(q)) if q == 1.0 => Ok((-1.0 / x).exp()),
        (Shape::Infinite, Shape::Infinite) => Ok(if x >= 1.0 { 1.0 } else { 0.0 }),
        _ => Err(unsupported_model(model, "fading cdf")),
    }
}

/// Quantile of H = h1/h2. May return +infinity as `u -> 1`.
pub fn fading_quantile(model: &FadingModel, u: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!("quantile u={u} outside [0,1)")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    match (model.p, model.q) {
        (Shape::Finite(p), Shape::Finite(q)) => {
            let b = inv_reg_inc_beta(p, q, u)?;
            if b >= 1.0 {
                return Ok(f64::INFINITY);
            }
            Ok(q / p * imh_raw(b))
        }
        (Shape::Finite(p), Shape::Infinite) if p == 1.0 => Ok(-(-u).ln_1p()),
        (Shape::Infinite, Shape::Finite(q)) if q == 1.0 => Ok(-1.0 / u.ln()),
        (Shape::Infinite, Shape::Infinite) => Ok(1.0),
        _ => Err(unsupported_model(model, "fading quantile")),
    }
}

/// cdf of the cloned ratio H* = h1/(h2 + h3) with two equidistant,
/// independently fading interferers.
pub fn cloned_fading_cdf(model: &FadingModel, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("cloned_fading_cdf of NaN".into()));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    match (model.p, model.q) {
        (Shape::Finite(p), Shape::Finite(q)) => reg_inc_beta(p, 2.0 * q, mh_raw(x * p / q)),
        (Shape::Finite(p), Shape::Infinite) if p == 1.0 => Ok(-(-2.0 * x).exp_m1()),
        (Shape::Infinite, Shape::Finite(q)) if q == 1.0 => {
            Ok((-1.0 / x).exp() * (1.0 + 1.0 / x))
        }
        (Shape::Infinite, Shape::Infinite) => Ok(if x >= 0.5 { 1.0 } else { 0.0 }),
        _ => Err(unsupported_model(model, "cloned fading cdf")),
    }
}

/// Quantile of H* = h1/(h2 + h3).
pub fn cloned_fading_quantile(model: &FadingModel, u: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!("quantile u={u} outside [0,1)")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    match (model.p, model.q) {
        (Shape::Finite(p), Shape::Finite(q)) if p == 1.0 && q == 1.0 => {
            Ok((1.0 - u).powf(-0.5) - 1.0)
        }
        (Shape::Finite(p), Shape::Finite(q)) => {
            let b = inv_reg_inc_beta(p, 2.0 * q, u)?;
            if b >= 1.0 {
                return Ok(f64::INFINITY);
            }
            Ok(q / p * imh_raw(b))
        }
        (Shape::Finite(p), Shape::Infinite) if p == 1.0 => Ok(-0.5 * (-u).ln_1p()),
        (Shape::Infinite, Shape::Finite(q)) if q == 1.0 => {
            // cdf e^{-1/x}(1 + 1/x) is monotone; bisect.
            let mut lo = 1e-12;
            let mut hi = 1e12;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let f = cloned_fading_cdf(model, mid)?;
                if f < u {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-13 * (1.0 + lo) {
                    break;
                }
            }
            Ok(0.5 * (lo + hi))
        }
        (Shape::Infinite, Shape::Infinite) => Ok(0.5),
        _ => Err(unsupported_model(model, "cloned fading quantile")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Gamma};

    /// Adaptive Simpson quadrature, the independent oracle for beta cdfs.
    fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let fa = f(a);
        let fm = f(m);
        let fb = f(b);
        fn rec<F: Fn(f64) -> f64 + Copy>(
            f: F,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                    + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
            }
        }
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, depth)
    }

    /// B_{p,q}(x) by quadrature of the defining integral (oracle path).
    fn beta_cdf_quadrature(p: f64, q: f64, x: f64) -> f64 {
        let pdf = move |t: f64| t.powf(p - 1.0) * (1.0 - t).powf(q - 1.0);
        // Normalize by the full integral so no gamma function is shared
        // with the implementation under test.
        let eps = 1e-12;
        let num = simpson(pdf, eps, x.max(eps), 1e-14, 40);
        let den = simpson(pdf, eps, 1.0 - eps, 1e-14, 40);
        num / den
    }

    #[test]
    fn mh_fixed_points_and_examples() {
        assert_eq!(mh(0.0).unwrap(), 0.0);
        assert_eq!(mh(4.0).unwrap(), 0.8);
        assert_eq!(imh(0.9).unwrap(), 9.000000000000002);
        assert_abs_diff_eq!(mh(imh(0.9).unwrap()).unwrap(), 0.9, epsilon = 1e-15);
        assert!(mh(-1.0).is_err());
        assert!(imh(1.0).is_err());
    }

    #[test]
    fn mh_round_trip_condition_aware() {
        // The round trip imh(mh(x)) amplifies the representation error of
        // the intermediate by (1+x)^2, so the bound must scale with it.
        let mut x = -1e6;
        while x <= 1e6 {
            if (x + 1.0).abs() > 1e-6 && (x - 1.0).abs() > 1e-6 {
                let rt = imh(mh(x).unwrap()).unwrap();
                let cond = (1.0 + x) * (1.0 + x);
                let bound = 2.0 * f64::EPSILON * (cond.abs() + x.abs() + 1.0);
                assert!(
                    (rt - x).abs() <= bound,
                    "round trip at {x}: {rt} (err {})",
                    (rt - x).abs()
                );
            }
            x += 9871.3;
        }
    }

    #[test]
    fn mh_reciprocal_identity() {
        let grid = [-987.0, -3.5, -0.5, 0.25, 0.9, 1.0, 7.0, 1234.5, 9.9e5];
        for &x in &grid {
            let lhs = mh(1.0 / x).unwrap();
            let rhs = 1.0 - mh(x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-14);
        }
    }

    #[test]
    fn beta_cdf_trivial_cases() {
        for &x in &[0.0, 0.2, 0.5, 0.77, 1.0] {
            assert_abs_diff_eq!(reg_inc_beta(1.0, 1.0, x).unwrap(), x, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(reg_inc_beta(0.5, 0.5, 0.5).unwrap(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(reg_inc_beta(3.0, 3.0, 0.5).unwrap(), 0.5, epsilon = 1e-14);
        assert!(reg_inc_beta(-1.0, 2.0, 0.5).is_err());
        assert!(reg_inc_beta(1.0, 2.0, 1.5).is_err());
    }

    #[test]
    fn beta_cdf_matches_quadrature() {
        for &(p, q) in &[(3.0, 3.0), (0.5, 2.0), (2.0, 7.0), (5.5, 0.7)] {
            for &x in &[0.05, 0.3, 0.5, 0.8, 0.95] {
                let got = reg_inc_beta(p, q, x).unwrap();
                let want = beta_cdf_quadrature(p, q, x);
                assert_abs_diff_eq!(got, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn beta_reflection_identity() {
        let shapes = [0.5, 1.0, 2.0, 3.0, 7.0];
        for &p in &shapes {
            for &q in &shapes {
                for i in 1..20 {
                    let x = i as f64 / 20.0;
                    let lhs = reg_inc_beta(p, q, 1.0 - x).unwrap();
                    let rhs = 1.0 - reg_inc_beta(q, p, x).unwrap();
                    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn beta_inverse_examples() {
        assert_abs_diff_eq!(inv_reg_inc_beta(1.0, 1.0, 0.8).unwrap(), 0.8, epsilon = 1e-13);
        for &u in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let want = (PI * u / 2.0).sin().powi(2);
            assert_abs_diff_eq!(inv_reg_inc_beta(0.5, 0.5, u).unwrap(), want, epsilon = 1e-12);
        }
        // Bisection on the quadrature oracle as an independent inverse.
        let u = 0.9;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if beta_cdf_quadrature(3.0, 3.0, mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let want = 0.5 * (lo + hi);
        assert_abs_diff_eq!(inv_reg_inc_beta(3.0, 3.0, 0.9).unwrap(), want, epsilon = 1e-9);
    }

    #[test]
    fn beta_inverse_round_trip() {
        for &(p, q) in &[(0.5, 0.5), (1.0, 3.0), (3.0, 3.0), (7.0, 2.0), (0.7, 4.2)] {
            for i in 1..100 {
                let u = i as f64 / 100.0;
                let x = inv_reg_inc_beta(p, q, u).unwrap();
                let back = reg_inc_beta(p, q, x).unwrap();
                assert!(
                    (back - u).abs() < 1e-10,
                    "round trip (p={p}, q={q}, u={u}): {back}"
                );
            }
        }
    }

    #[test]
    fn beta_inverse_monotone_in_u() {
        let mut prev = 0.0;
        for i in 1..=99 {
            let u = i as f64 / 100.0;
            let x = inv_reg_inc_beta(2.5, 0.8, u).unwrap();
            assert!(x > prev);
            prev = x;
        }
    }

    #[test]
    fn fading_quantile_special_cases() {
        let ray = FadingModel::rayleigh();
        assert_abs_diff_eq!(fading_quantile(&ray, 0.8).unwrap(), 4.0, epsilon = 1e-12);
        let half = FadingModel::nakagami(0.5).unwrap();
        assert_abs_diff_eq!(fading_quantile(&half, 0.5).unwrap(), 1.0, epsilon = 1e-10);
        let nf = FadingModel::no_fading();
        assert_eq!(fading_quantile(&nf, 0.3).unwrap(), 1.0);
        assert_eq!(fading_quantile(&nf, 0.99).unwrap(), 1.0);
        let pess = FadingModel::pessimistic();
        assert_abs_diff_eq!(
            fading_quantile(&pess, 0.8).unwrap(),
            -(1.0f64 - 0.8).ln(),
            epsilon = 1e-14
        );
        let opt = FadingModel::optimistic();
        assert_abs_diff_eq!(
            fading_quantile(&opt, 0.8).unwrap(),
            -1.0 / 0.8f64.ln(),
            epsilon = 1e-14
        );
        assert!(fading_quantile(&ray, 1.0).is_err());
        assert_eq!(fading_quantile(&ray, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn fading_quantile_matches_monte_carlo() {
        // Empirical quantile of h1/h2 for Nakagami-(3,3) from 1e7 draws.
        let model = FadingModel::nakagami(3.0).unwrap();
        let u = 0.9;
        let want = fading_quantile(&model, u).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9a17);
        let g = Gamma::new(3.0, 1.0 / 3.0).unwrap();
        let n = 10_000_000usize;
        let mut draws: Vec<f64> = (0..n)
            .map(|_| g.sample(&mut rng) / g.sample(&mut rng))
            .collect();
        let k = (u * n as f64) as usize;
        let (_, kth, _) = draws.select_nth_unstable_by(k, |a, b| a.partial_cmp(b).unwrap());
        assert!(
            (*kth - want).abs() < 3e-3,
            "MC quantile {kth} vs analytic {want}"
        );
    }

    #[test]
    fn cloned_quantile_rayleigh() {
        let ray = FadingModel::rayleigh();
        assert_abs_diff_eq!(cloned_fading_quantile(&ray, 0.75).unwrap(), 1.0, epsilon = 1e-12);
        // cdf closed form x(x+2)/(x+1)^2 round-trips the quantile.
        for &x in &[0.1, 0.5, 1.0, 3.0, 10.0] {
            let u = x * (x + 2.0) / ((x + 1.0) * (x + 1.0));
            assert_abs_diff_eq!(cloned_fading_cdf(&ray, x).unwrap(), u, epsilon = 1e-13);
            assert_abs_diff_eq!(cloned_fading_quantile(&ray, u).unwrap(), x, epsilon = 1e-10);
        }
    }

    #[test]
    fn cloned_quantile_matches_monte_carlo() {
        let model = FadingModel::new(Shape::Finite(2.0), Shape::Finite(3.0)).unwrap();
        let u = 0.9;
        let want = cloned_fading_quantile(&model, u).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x51ed);
        let gp = Gamma::new(2.0, 1.0 / 2.0).unwrap();
        let gq = Gamma::new(3.0, 1.0 / 3.0).unwrap();
        let n = 10_000_000usize;
        let mut draws: Vec<f64> = (0..n)
            .map(|_| gp.sample(&mut rng) / (gq.sample(&mut rng) + gq.sample(&mut rng)))
            .collect();
        let k = (u * n as f64) as usize;
        let (_, kth, _) = draws.select_nth_unstable_by(k, |a, b| a.partial_cmp(b).unwrap());
        assert!(
            (*kth - want).abs() < 3e-3,
            "MC cloned quantile {kth} vs analytic {want}"
        );
    }

    #[test]
    fn cloned_cdf_dominates_plain_cdf() {
        // F_{H*}(x) > F_H(x) for x > 0: two interferers make outage likelier.
        let models = [
            FadingModel::rayleigh(),
            FadingModel::nakagami(0.5).unwrap(),
            FadingModel::nakagami(3.0).unwrap(),
            FadingModel::new(Shape::Finite(2.0), Shape::Finite(5.0)).unwrap(),
        ];
        for model in &models {
            for i in 1..40 {
                let x = 0.25 * i as f64;
                let plain = fading_cdf(model, x).unwrap();
                let cloned = cloned_fading_cdf(model, x).unwrap();
                assert!(
                    cloned > plain,
                    "F_{{H*}}({x}) = {cloned} <= F_H({x}) = {plain} for {model:?}"
                );
            }
        }
    }

    #[test]
    fn infinite_shape_combinations() {
        assert!(FadingModel::new(Shape::Infinite, Shape::Infinite).is_ok());
        let odd = FadingModel::new(Shape::Finite(2.0), Shape::Infinite).unwrap();
        assert!(fading_quantile(&odd, 0.5).is_err());
        assert!(FadingModel::new(Shape::Finite(-1.0), Shape::Finite(1.0)).is_err());
        let opt = FadingModel::optimistic();
        let u = 0.7;
        let x = cloned_fading_quantile(&opt, u).unwrap();
        assert_abs_diff_eq!(cloned_fading_cdf(&opt, x).unwrap(), u, epsilon = 1e-9);
    }

    #[test]
    fn fading_model_parse() {
        assert_eq!(FadingModel::parse("1,1").unwrap(), FadingModel::rayleigh());
        assert_eq!(
            FadingModel::parse("inf,1").unwrap(),
            FadingModel::optimistic()
        );
        assert!(FadingModel::parse("oops").is_err());
        assert!(FadingModel::parse("inf,inf").is_ok());
    }
}

//! Transmitter deployments: lattices, perturbed lattices, Poisson point
//! processes, and explicit point lists, with window/guard bookkeeping.
//!
//! Points are generated on the window expanded by the guard margin;
//! statistics downstream are measured on the inner window only, with guard
//! points acting purely as interferers.
//!
//! Randomness is counter-based: one ChaCha8 generator seeded from the
//! deployment seed, with stream 0 reserved for global draws (the Poisson
//! count) and stream `i + 1` for the i-th point's own draws. Results are
//! therefore independent of evaluation order.

use crate::error::{Error, Result};
use crate::geom::Point;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::Deserialize;
use std::path::Path;

/// Axis-aligned measurement window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(x1 > x0 && y1 > y0) || ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::Degenerate(format!(
                "window [{x0},{y0},{x1},{y1}] is not a proper rectangle"
            )));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(0.0, 0.0, side, side)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn expand(&self, margin: f64) -> Window {
        Window {
            x0: self.x0 - margin,
            y0: self.y0 - margin,
            x1: self.x1 + margin,
            y1: self.y1 + margin,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn diagonal(&self) -> f64 {
        (self.width() * self.width() + self.height() * self.height()).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeployKind {
    Square,
    Triangular,
    Perturbed,
    Ppp,
    Explicit,
}

impl DeployKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DeployKind::Square => "square",
            DeployKind::Triangular => "triangular",
            DeployKind::Perturbed => "perturbed",
            DeployKind::Ppp => "ppp",
            DeployKind::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(DeployKind::Square),
            "triangular" => Ok(DeployKind::Triangular),
            "perturbed" => Ok(DeployKind::Perturbed),
            "ppp" => Ok(DeployKind::Ppp),
            "explicit" => Ok(DeployKind::Explicit),
            _ => Err(Error::Parse(format!("unknown deployment kind {s:?}"))),
        }
    }
}

/// A transmitter point set with its measurement window and provenance.
#[derive(Clone, Debug)]
pub struct Deployment {
    points: Vec<Point>,
    window: Window,
    guard: f64,
    kind: DeployKind,
    density: Option<f64>,
    seed: Option<u64>,
}

/// Default guard width: Q cells extend at most d1/(rho-1) from their
/// owners, so edge cells are shaped correctly with this margin.
pub fn default_guard(density: f64, rho: Option<f64>) -> f64 {
    let spacing = density.powf(-0.5);
    match rho {
        Some(r) if r > 1.0 => 2.0 * spacing * (1.0 / (r - 1.0)).max(1.0),
        _ => 4.0 * spacing,
    }
}

impl Deployment {
    /// Generates a deployment. `extra` is the per-coordinate Gaussian
    /// variance for the perturbed lattice and ignored otherwise.
    pub fn generate(
        kind: DeployKind,
        density: f64,
        window: Window,
        guard: f64,
        seed: u64,
        extra: Option<f64>,
    ) -> Result<Self> {
        if !(density > 0.0) || !density.is_finite() {
            return Err(Error::Domain(format!("density must be positive, got {density}")));
        }
        if !(guard >= 0.0) {
            return Err(Error::Domain(format!("guard must be nonnegative, got {guard}")));
        }
        let ex = window.expand(guard);
        if density * ex.area() < 2.0 {
            return Err(Error::InvalidDeployment(format!(
                "expected point count {} below 2; enlarge the window or density",
                density * ex.area()
            )));
        }
        let points = match kind {
            DeployKind::Square => square_lattice(density, window, ex),
            DeployKind::Triangular => triangular_lattice(density, window, ex),
            DeployKind::Perturbed => {
                let v = extra.ok_or_else(|| {
                    Error::Domain("perturbed lattice requires a variance".into())
                })?;
                if !(v >= 0.0) {
                    return Err(Error::Domain(format!("variance must be nonnegative, got {v}")));
                }
                perturbed_lattice(density, window, ex, seed, v)
            }
            DeployKind::Ppp => ppp(density, ex, seed),
            DeployKind::Explicit => {
                return Err(Error::Domain(
                    "explicit deployments are loaded from files, not generated".into(),
                ))
            }
        };
        let dep = Self {
            points,
            window,
            guard,
            kind,
            density: Some(density),
            seed: Some(seed),
        };
        dep.validate()?;
        Ok(dep)
    }

    /// Wraps an explicit point list.
    pub fn explicit(points: Vec<Point>, window: Window, guard: f64) -> Result<Self> {
        let dep = Self {
            points,
            window,
            guard,
            kind: DeployKind::Explicit,
            density: None,
            seed: None,
        };
        dep.validate()?;
        Ok(dep)
    }

    fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::InvalidDeployment(format!(
                "a deployment needs at least 2 points, got {}",
                self.points.len()
            )));
        }
        let ex = self.expanded_window();
        for (i, p) in self.points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::InvalidDeployment(format!(
                    "point {i} is not finite: ({}, {})",
                    p.x, p.y
                )));
            }
            if !ex.contains(*p) {
                return Err(Error::InvalidDeployment(format!(
                    "point {i} = ({}, {}) lies outside the expanded window",
                    p.x, p.y
                )));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn guard(&self) -> f64 {
        self.guard
    }

    pub fn kind(&self) -> DeployKind {
        self.kind
    }

    pub fn density(&self) -> Option<f64> {
        self.density
    }

    /// Nominal density: the declared one, or points per expanded area.
    pub fn density_or_estimate(&self) -> f64 {
        self.density
            .unwrap_or_else(|| self.points.len() as f64 / self.expanded_window().area())
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn expanded_window(&self) -> Window {
        self.window.expand(self.guard)
    }

    /// Indices of points inside the inner window.
    pub fn inner_indices(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.window.contains(self.points[i]))
            .collect()
    }

    /// Index of the point closest to `p`, ties toward the lower index.
    pub fn nearest(&self, p: Point) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, q) in self.points.iter().enumerate() {
            let d = p.dist_sq(*q);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Serializes with 17 significant digits so points round-trip exactly.
    pub fn to_json(&self) -> String {
        let f = |v: f64| format!("{v:.16e}");
        let mut s = String::with_capacity(64 + 48 * self.points.len());
        s.push_str("{\"kind\": \"");
        s.push_str(self.kind.as_str());
        s.push_str("\", \"points\": [");
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!("[{}, {}]", f(p.x), f(p.y)));
        }
        s.push_str("], \"window\": [");
        s.push_str(&format!(
            "{}, {}, {}, {}",
            f(self.window.x0),
            f(self.window.y0),
            f(self.window.x1),
            f(self.window.y1)
        ));
        s.push_str("], \"guard\": ");
        s.push_str(&f(self.guard));
        s.push_str(", \"density\": ");
        match self.density {
            Some(d) => s.push_str(&f(d)),
            None => s.push_str("null"),
        }
        s.push_str(", \"seed\": ");
        match self.seed {
            Some(v) => s.push_str(&v.to_string()),
            None => s.push_str("null"),
        }
        s.push_str("}\n");
        s
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(&path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            points: Vec<[f64; 2]>,
            window: [f64; 4],
            guard: f64,
            density: Option<f64>,
            seed: Option<u64>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("deployment json: {e}")))?;
        let kind = DeployKind::parse(&raw.kind)?;
        let window = Window::new(raw.window[0], raw.window[1], raw.window[2], raw.window[3])?;
        if !(raw.guard >= 0.0) {
            return Err(Error::Parse(format!("field guard: must be nonnegative, got {}", raw.guard)));
        }
        let dep = Self {
            points: raw.points.iter().map(|p| Point::new(p[0], p[1])).collect(),
            window,
            guard: raw.guard,
            kind,
            density: raw.density,
            seed: raw.seed,
        };
        dep.validate()?;
        Ok(dep)
    }
}

fn lattice_range(lo: f64, hi: f64, anchor: f64, step: f64) -> std::ops::RangeInclusive<i64> {
    let i0 = ((lo - anchor) / step).ceil() as i64;
    let i1 = ((hi - anchor) / step).floor() as i64;
    i0..=i1
}

fn square_lattice(density: f64, window: Window, ex: Window) -> Vec<Point> {
    let a = density.powf(-0.5);
    let mut pts = Vec::new();
    for j in lattice_range(ex.y0, ex.y1, window.y0, a) {
        for i in lattice_range(ex.x0, ex.x1, window.x0, a) {
            pts.push(Point::new(
                window.x0 + i as f64 * a,
                window.y0 + j as f64 * a,
            ));
        }
    }
    pts
}

fn triangular_lattice(density: f64, window: Window, ex: Window) -> Vec<Point> {
    // Each point of a triangular lattice with spacing a occupies a^2*sqrt(3)/2.
    let a = (2.0 / (3.0f64.sqrt() * density)).sqrt();
    let row_h = a * 3.0f64.sqrt() / 2.0;
    let mut pts = Vec::new();
    for j in lattice_range(ex.y0, ex.y1, window.y0, row_h) {
        let offset = if j.rem_euclid(2) == 0 { 0.0 } else { 0.5 * a };
        let y = window.y0 + j as f64 * row_h;
        for i in lattice_range(ex.x0 - offset, ex.x1 - offset, window.x0, a) {
            pts.push(Point::new(window.x0 + offset + i as f64 * a, y));
        }
    }
    pts
}

fn perturbed_lattice(density: f64, window: Window, ex: Window, seed: u64, v: f64) -> Vec<Point> {
    let a = density.powf(-0.5);
    let sigma = v.sqrt();
    // Enumerate sites on a further-inflated region so sites just outside
    // the expanded window can perturb into it.
    let margin = 6.0 * sigma + a;
    let wide = ex.expand(margin);
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and nonnegative");
    let js = lattice_range(wide.y0, wide.y1, window.y0, a);
    let is = lattice_range(wide.x0, wide.x1, window.x0, a);
    let cols = is.clone().count() as u64;
    let mut pts = Vec::new();
    for (jn, j) in js.enumerate() {
        for (in_, i) in is.clone().enumerate() {
            let site_index = jn as u64 * cols + in_ as u64;
            let mut rng = point_rng(seed, site_index);
            let p = Point::new(
                window.x0 + i as f64 * a + normal.sample(&mut rng),
                window.y0 + j as f64 * a + normal.sample(&mut rng),
            );
            if ex.contains(p) {
                pts.push(p);
            }
        }
    }
    pts
}

fn ppp(density: f64, ex: Window, seed: u64) -> Vec<Point> {
    let mean = density * ex.area();
    let mut count_rng = global_rng(seed);
    let n = Poisson::new(mean)
        .expect("mean is positive")
        .sample(&mut count_rng) as u64;
    let mut pts = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut rng = point_rng(seed, i);
        pts.push(Point::new(
            rng.random_range(ex.x0..ex.x1),
            rng.random_range(ex.y0..ex.y1),
        ));
    }
    pts
}

/// Stream 0 of the deployment generator (global draws).
fn global_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

/// Stream `i + 1` of the deployment generator (per-point draws).
fn point_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i + 1);
    rng
}

//! Convex regions bounded by circular arcs and line segments, with
//! incremental clipping by disks and half-planes.
//!
//! The boundary is an ordered counterclockwise chain of edges. Arc edges
//! reference supporting disks by index and store start/end angles
//! canonicalized to (-pi, pi]; `start == end` bit-exactly marks a full
//! circle and is only valid as the sole edge. All arcs bulge outward
//! (the region lies inside every supporting disk), segments are chords.

use super::{Disk, HalfPlane, Point};
use crate::error::{Error, Result};

use std::f64::consts::{PI, TAU};

/// Canonicalize an angle to (-pi, pi].
pub(crate) fn canon_angle(a: f64) -> f64 {
    let mut a = a.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

#[derive(Clone, Copy, Debug)]
pub enum Edge {
    /// Counterclockwise arc on `disks[disk]` from `start` to `end`.
    Arc { disk: usize, start: f64, end: f64 },
    Seg { from: Point, to: Point },
}

#[derive(Clone, Debug)]
pub struct ConvexArcRegion {
    pub(crate) disks: Vec<Disk>,
    pub(crate) edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClipOutcome {
    /// The clipper did not change the region.
    Unchanged,
    Clipped,
    /// The intersection is empty; the region contents are unspecified.
    Empty,
}

/// One boundary piece produced by splitting an edge at clipper crossings.
struct Piece {
    edge: Edge,
    start: Point,
    end: Point,
    inside: bool,
}

enum Clipper<'a> {
    Disk(&'a Disk),
    Half(&'a HalfPlane),
}

impl Clipper<'_> {
    /// Positive inside, negative outside, zero on the boundary.
    fn side(&self, p: Point) -> f64 {
        match self {
            Clipper::Disk(d) => d.radius - p.dist(d.center),
            Clipper::Half(h) => h.signed_dist(p),
        }
    }

    /// Transversal crossings of the clipper boundary with a circle.
    /// Tangencies (crossings closer than `tol`) are dropped.
    fn circle_splits(&self, c: &Disk, tol: f64) -> Vec<Point> {
        match self {
            Clipper::Disk(d) => circle_circle(c, d, tol),
            Clipper::Half(h) => line_circle(h.anchor, h.boundary_dir(), c, tol),
        }
    }

    /// Transversal crossings with a segment, as parameters in (0, 1).
    fn segment_splits(&self, a: Point, b: Point, tol: f64) -> Vec<f64> {
        match self {
            Clipper::Disk(d) => {
                let ab = b - a;
                let len_sq = ab.norm_sq();
                let f = a - d.center;
                let qa = len_sq;
                let qb = 2.0 * f.dot(ab);
                let qc = f.norm_sq() - d.radius * d.radius;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc <= 0.0 {
                    return vec![];
                }
                let sq = disc.sqrt();
                let t1 = (-qb - sq) / (2.0 * qa);
                let t2 = (-qb + sq) / (2.0 * qa);
                let len = len_sq.sqrt();
                if (t2 - t1) * len < tol {
                    return vec![]; // tangency
                }
                vec![t1, t2]
            }
            Clipper::Half(h) => {
                let sa = h.signed_dist(a);
                let sb = h.signed_dist(b);
                if (sa > 0.0) == (sb > 0.0) || sa == sb {
                    return vec![];
                }
                vec![sa / (sa - sb)]
            }
        }
    }
}

/// Intersection points of two circles; empty on tangency or separation.
fn circle_circle(c1: &Disk, c2: &Disk, tol: f64) -> Vec<Point> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    if d < tol {
        return vec![]; // concentric (or identical)
    }
    let a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    let h_sq = c1.radius * c1.radius - a * a;
    if h_sq <= 0.0 {
        return vec![];
    }
    let h = h_sq.sqrt();
    if 2.0 * h < tol {
        return vec![]; // tangency: merge the double root
    }
    let u = delta * (1.0 / d);
    let mid = c1.center + u * a;
    let perp = u.rot90() * h;
    vec![mid + perp, mid - perp]
}

/// Intersection points of a line (anchor + t*dir) with a circle.
fn line_circle(anchor: Point, dir: Point, c: &Disk, tol: f64) -> Vec<Point> {
    let f = anchor - c.center;
    let qa = dir.norm_sq();
    let qb = 2.0 * f.dot(dir);
    let qc = f.norm_sq() - c.radius * c.radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    let t1 = (-qb - sq) / (2.0 * qa);
    let t2 = (-qb + sq) / (2.0 * qa);
    if (t2 - t1) * qa.sqrt() < tol {
        return vec![];
    }
    vec![anchor + dir * t1, anchor + dir * t2]
}

impl ConvexArcRegion {
    pub fn from_disk(d: Disk) -> Self {
        Self {
            disks: vec![d],
            edges: vec![Edge::Arc {
                disk: 0,
                start: 0.0,
                end: 0.0,
            }],
        }
    }

    /// Axis-aligned rectangle as a counterclockwise segment chain.
    pub fn from_rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        let p = [
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ];
        Self {
            disks: vec![],
            edges: (0..4)
                .map(|i| Edge::Seg {
                    from: p[i],
                    to: p[(i + 1) % 4],
                })
                .collect(),
        }
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Counterclockwise sweep of an arc edge; a full circle is TAU.
    pub fn arc_sweep(start: f64, end: f64) -> f64 {
        if start == end {
            TAU
        } else {
            let s = (end - start).rem_euclid(TAU);
            if s == 0.0 {
                TAU
            } else {
                s
            }
        }
    }

    pub fn edge_start(&self, e: &Edge) -> Point {
        match *e {
            Edge::Arc { disk, start, .. } => self.disks[disk].point_at(start),
            Edge::Seg { from, .. } => from,
        }
    }

    pub fn edge_end(&self, e: &Edge) -> Point {
        match *e {
            Edge::Arc { disk, end, .. } => self.disks[disk].point_at(end),
            Edge::Seg { to, .. } => to,
        }
    }

    pub fn edge_len(&self, e: &Edge) -> f64 {
        match *e {
            Edge::Arc { disk, start, end } => {
                self.disks[disk].radius * Self::arc_sweep(start, end)
            }
            Edge::Seg { from, to } => from.dist(to),
        }
    }

    /// Index of the supporting disk if the region is a single full disk.
    pub fn as_full_disk(&self) -> Option<usize> {
        match self.edges.as_slice() {
            [Edge::Arc { disk, start, end }] if start == end => Some(*disk),
            _ => None,
        }
    }

    /// Edge junction points in boundary order (empty for a full disk).
    pub fn vertices(&self) -> Vec<Point> {
        if self.as_full_disk().is_some() {
            return vec![];
        }
        self.edges.iter().map(|e| self.edge_start(e)).collect()
    }

    /// Shoelace area of the vertex polygon plus the circular segments of
    /// every arc edge.
    pub fn area(&self) -> f64 {
        let verts = self.vertices();
        let mut a = 0.0;
        let n = verts.len();
        for i in 0..n {
            a += verts[i].cross(verts[(i + 1) % n]);
        }
        a *= 0.5;
        for e in &self.edges {
            if let Edge::Arc { disk, start, end } = *e {
                let r = self.disks[disk].radius;
                let phi = Self::arc_sweep(start, end);
                a += 0.5 * r * r * (phi - phi.sin());
            }
        }
        a
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(|e| self.edge_len(e)).sum()
    }

    /// Uniform-arclength boundary samples with spacing at most `max_step`.
    pub fn sample_boundary(&self, max_step: f64) -> Vec<Point> {
        let perim = self.perimeter();
        let n = (perim / max_step).ceil().max(4.0) as usize;
        let step = perim / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut edge_iter = self.edges.iter();
        let mut edge = edge_iter.next().expect("region has edges");
        let mut edge_begin = 0.0;
        let mut edge_len = self.edge_len(edge);
        for k in 0..n {
            let s = (k as f64 + 0.5) * step;
            while s > edge_begin + edge_len {
                edge_begin += edge_len;
                edge = edge_iter.next().expect("sample within perimeter");
                edge_len = self.edge_len(edge);
            }
            let local = s - edge_begin;
            let p = match *edge {
                Edge::Arc { disk, start, .. } => {
                    let d = &self.disks[disk];
                    d.point_at(start + local / d.radius)
                }
                Edge::Seg { from, to } => from + (to - from) * (local / from.dist(to)),
            };
            out.push(p);
        }
        out
    }

    /// Membership test; for a convex chain it suffices that the point is
    /// inside every supporting disk and left of every segment.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.edges.iter().all(|e| match *e {
            Edge::Arc { disk, .. } => self.disks[disk].contains(p, tol),
            Edge::Seg { from, to } => {
                let d = to - from;
                d.cross(p - from) >= -tol * d.norm()
            }
        })
    }

    /// Largest distance from `p` to the region boundary.
    pub fn max_dist_from(&self, p: Point) -> f64 {
        let mut best = 0.0f64;
        for e in &self.edges {
            match *e {
                Edge::Arc { disk, start, end } => {
                    let d = &self.disks[disk];
                    best = best.max(p.dist(d.point_at(start)));
                    best = best.max(p.dist(d.point_at(end)));
                    let away = d.center - p;
                    let far_angle = if away.norm() < 1e-300 {
                        start
                    } else {
                        away.angle()
                    };
                    if Self::angle_in_arc(start, end, far_angle) {
                        best = best.max(p.dist(d.center) + d.radius);
                    }
                }
                Edge::Seg { from, to } => {
                    best = best.max(p.dist(from)).max(p.dist(to));
                }
            }
        }
        best
    }

    fn angle_in_arc(start: f64, end: f64, a: f64) -> bool {
        let sweep = Self::arc_sweep(start, end);
        let off = (a - start).rem_euclid(TAU);
        off <= sweep
    }

    /// Homothety about `center` with factor `s > 0`; arc angles are
    /// preserved, so the chain structure is unchanged.
    pub fn scale_about(&self, center: Point, s: f64) -> Self {
        let disks = self
            .disks
            .iter()
            .map(|d| Disk::new(center + (d.center - center) * s, d.radius * s))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| match *e {
                Edge::Arc { disk, start, end } => Edge::Arc { disk, start, end },
                Edge::Seg { from, to } => Edge::Seg {
                    from: center + (from - center) * s,
                    to: center + (to - center) * s,
                },
            })
            .collect();
        Self { disks, edges }
    }

    /// Drop unreferenced supporting disks; returns, per retained slot, the
    /// old slot index.
    pub(crate) fn compact(&mut self) -> Vec<usize> {
        let mut used: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| match e {
                Edge::Arc { disk, .. } => Some(*disk),
                _ => None,
            })
            .collect();
        used.sort_unstable();
        used.dedup();
        let remap: std::collections::HashMap<usize, usize> = used
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        self.disks = used.iter().map(|&i| self.disks[i]).collect();
        for e in &mut self.edges {
            if let Edge::Arc { disk, .. } = e {
                *disk = remap[disk];
            }
        }
        used
    }

    /// Verify the boundary chain closes within `rel_tol` of its scale.
    pub fn check_closed(&self, rel_tol: f64) -> Result<()> {
        let n = self.edges.len();
        if n == 0 {
            return Err(Error::Geometry("empty edge chain".into()));
        }
        let scale = self
            .disks
            .iter()
            .map(|d| d.radius)
            .fold(1.0f64, f64::max);
        for i in 0..n {
            let a = self.edge_end(&self.edges[i]);
            let b = self.edge_start(&self.edges[(i + 1) % n]);
            if a.dist(b) > rel_tol * scale {
                return Err(Error::Geometry(format!(
                    "chain gap {} between edges {} and {}",
                    a.dist(b),
                    i,
                    (i + 1) % n
                )));
            }
        }
        Ok(())
    }

    pub fn clip_disk(&mut self, d: &Disk, tol: f64) -> ClipOutcome {
        self.clip(&Clipper::Disk(d), tol)
    }

    pub fn clip_halfplane(&mut self, h: &HalfPlane, tol: f64) -> ClipOutcome {
        self.clip(&Clipper::Half(h), tol)
    }

    fn clip(&mut self, clipper: &Clipper, tol: f64) -> ClipOutcome {
        let pieces = self.build_pieces(clipper, tol);
        let inside_count = pieces.iter().filter(|p| p.inside).count();
        if inside_count == pieces.len() {
            return ClipOutcome::Unchanged;
        }
        if inside_count == 0 {
            return match clipper {
                Clipper::Disk(d) => {
                    if self.contains(d.center, tol) {
                        // The clip disk sits strictly inside the region.
                        self.disks.push(**d);
                        self.edges = vec![Edge::Arc {
                            disk: self.disks.len() - 1,
                            start: 0.0,
                            end: 0.0,
                        }];
                        ClipOutcome::Clipped
                    } else {
                        ClipOutcome::Empty
                    }
                }
                // A half-plane cannot sit inside a bounded region.
                Clipper::Half(_) => ClipOutcome::Empty,
            };
        }

        let n = pieces.len();
        let first = (0..n)
            .find(|&i| pieces[i].inside && !pieces[(i + n - 1) % n].inside)
            .expect("mixed classification implies a transition");
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        for k in 0..n {
            let i = (first + k) % n;
            if pieces[i].inside {
                cur.push(i);
            } else if !cur.is_empty() {
                runs.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            runs.push(cur);
        }

        let clip_disk_slot = match clipper {
            Clipper::Disk(d) => {
                self.disks.push(**d);
                Some(self.disks.len() - 1)
            }
            Clipper::Half(_) => None,
        };
        let mut new_edges: Vec<Edge> = Vec::new();
        let run_count = runs.len();
        for (ri, run) in runs.iter().enumerate() {
            for &i in run {
                new_edges.push(pieces[i].edge);
            }
            let exit = pieces[*run.last().unwrap()].end;
            let entry = pieces[runs[(ri + 1) % run_count][0]].start;
            if exit.dist(entry) > tol {
                let connector = match clipper {
                    Clipper::Disk(d) => Edge::Arc {
                        disk: clip_disk_slot.unwrap(),
                        start: canon_angle((exit - d.center).angle()),
                        end: canon_angle((entry - d.center).angle()),
                    },
                    Clipper::Half(_) => Edge::Seg {
                        from: exit,
                        to: entry,
                    },
                };
                new_edges.push(connector);
            }
        }
        self.edges = new_edges;
        ClipOutcome::Clipped
    }

    /// Split every edge at clipper crossings and classify each piece by its
    /// midpoint. Pieces shorter than `tol` are dropped.
    fn build_pieces(&self, clipper: &Clipper, tol: f64) -> Vec<Piece> {
        let mut pieces = Vec::with_capacity(self.edges.len() + 4);
        for e in &self.edges {
            match *e {
                Edge::Arc { disk, start, end } => {
                    let d = &self.disks[disk];
                    let full = start == end;
                    let sweep = Self::arc_sweep(start, end);
                    let mut offs: Vec<f64> = clipper
                        .circle_splits(d, tol)
                        .iter()
                        .map(|p| {
                            let mut o = ((*p - d.center).angle() - start).rem_euclid(TAU);
                            if full && o == 0.0 {
                                o = TAU;
                            }
                            o
                        })
                        .filter(|&o| {
                            if full {
                                true
                            } else {
                                o * d.radius > tol && (sweep - o) * d.radius > tol
                            }
                        })
                        .collect();
                    offs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    let spans: Vec<(f64, f64)> = if offs.is_empty() {
                        vec![(0.0, sweep)]
                    } else if full {
                        let mut v: Vec<(f64, f64)> = offs
                            .windows(2)
                            .map(|w| (w[0], w[1]))
                            .collect();
                        v.push((*offs.last().unwrap(), offs[0] + TAU));
                        v
                    } else {
                        let mut bounds = Vec::with_capacity(offs.len() + 2);
                        bounds.push(0.0);
                        bounds.extend_from_slice(&offs);
                        bounds.push(sweep);
                        bounds.windows(2).map(|w| (w[0], w[1])).collect()
                    };
                    for (o0, o1) in spans {
                        if (o1 - o0) * d.radius < tol {
                            continue;
                        }
                        let (a0, a1) = (start + o0, start + o1);
                        let edge = if (o1 - o0) >= TAU {
                            Edge::Arc { disk, start, end }
                        } else {
                            Edge::Arc {
                                disk,
                                start: canon_angle(a0),
                                end: canon_angle(a1),
                            }
                        };
                        let mid = d.point_at(0.5 * (a0 + a1));
                        pieces.push(Piece {
                            edge,
                            start: d.point_at(a0),
                            end: d.point_at(a1),
                            inside: clipper.side(mid) >= 0.0,
                        });
                    }
                }
                Edge::Seg { from, to } => {
                    let len = from.dist(to);
                    let mut ts: Vec<f64> = clipper
                        .segment_splits(from, to, tol)
                        .into_iter()
                        .filter(|&t| t * len > tol && (1.0 - t) * len > tol)
                        .collect();
                    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    let mut bounds = Vec::with_capacity(ts.len() + 2);
                    bounds.push(0.0);
                    bounds.extend_from_slice(&ts);
                    bounds.push(1.0);
                    for w in bounds.windows(2) {
                        let (t0, t1) = (w[0], w[1]);
                        if (t1 - t0) * len < tol {
                            continue;
                        }
                        let a = from + (to - from) * t0;
                        let b = from + (to - from) * t1;
                        let mid = from + (to - from) * (0.5 * (t0 + t1));
                        pieces.push(Piece {
                            edge: Edge::Seg { from: a, to: b },
                            start: a,
                            end: b,
                            inside: clipper.side(mid) >= 0.0,
                        });
                    }
                }
            }
        }
        pieces
    }
}

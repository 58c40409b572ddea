//! Seeded search for the convex figure on `KL` with the largest μ, and an
//! executable check of the two local perturbations around the optimum.
//!
//! Candidates are polygons `K → upper chain → L → lower chain → K`. Every
//! vertex must lie within distance 1 of both `K` and `L`, i.e. inside the
//! lens `KDLC`; the upper half of that lens is the mixed triangle itself, so
//! the search can only approach it from inside.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::hull::convex_polygon_diameter;
use crate::geometry::{convex_hull_with, Circle, Edge, Figure, Location, Orientation, Point, Tolerance};
use crate::measures::{self, polygon_area, polygon_disc_intersection_area};
use crate::shapes::{c, d, k, l, mu_star};

/// Slack on the unit-distance and diameter constraints.
const FEAS_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    /// Points strictly above the axis, ordered from `K` to `L`.
    pub upper: Vec<Point>,
    /// Points strictly below the axis, ordered from `K` to `L`.
    pub lower: Vec<Point>,
}

impl Candidate {
    /// Counter-clockwise vertex list.
    pub fn polygon(&self) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.upper.len() + self.lower.len() + 2);
        pts.push(k());
        pts.extend(&self.lower);
        pts.push(l());
        pts.extend(self.upper.iter().rev());
        pts
    }

    pub fn figure(&self) -> Result<Figure> {
        Figure::polygon(&self.polygon())
    }

    /// μ against the reference circle.
    pub fn mu(&self) -> f64 {
        polygon_mu(&self.polygon())
    }
}

fn polygon_mu(pts: &[Point]) -> f64 {
    let total = polygon_area(pts);
    let inside = polygon_disc_intersection_area(pts, &Circle::reference());
    ((total - inside) / total).clamp(0.0, 1.0)
}

/// Why a repaired candidate was thrown away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// No upper point survived.
    Empty,
    /// Upper and lower chains together are wider than 1.
    Diameter,
}

/// Nearest point of the lens `{p : |pK| ≤ 1, |pL| ≤ 1}`.
pub fn project_to_lens(p: Point) -> Point {
    let inside = |q: Point| q.distance(k()) <= 1.0 + FEAS_EPS && q.distance(l()) <= 1.0 + FEAS_EPS;
    if inside(p) {
        return p;
    }
    let onto = |center: Point| {
        let v = p - center;
        let n = v.norm();
        if n == 0.0 {
            p
        } else {
            center + v * (1.0 / n)
        }
    };
    [onto(k()), onto(l())]
        .into_iter()
        .filter(|&q| inside(q))
        .min_by(|a, b| a.distance(p).total_cmp(&b.distance(p)))
        .unwrap_or(if p.y >= 0.0 { c() } else { d() })
}

/// Points of `pts` that lie strictly on the concave-down hull chain from `K`
/// to `L` (or concave-up when `sign` is `-1`), sorted by `x`.
fn chain(pts: &[Point], sign: f64) -> Vec<Point> {
    let mut sorted: Vec<Point> = pts.to_vec();
    sorted.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut hull = vec![k()];
    for p in sorted.into_iter().chain(std::iter::once(l())) {
        // keep strict right turns (upper) or strict left turns (lower)
        while hull.len() >= 2 && sign * crate::geometry::orient(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull[1..hull.len() - 1].to_vec()
}

/// Projects every point into the lens, drops points on the wrong side of the
/// axis, and replaces each chain by its convex chain.
pub fn repair(cand: &Candidate) -> std::result::Result<Candidate, Rejection> {
    let upper: Vec<Point> = cand
        .upper
        .iter()
        .map(|&p| project_to_lens(p))
        .filter(|p| p.y > FEAS_EPS)
        .collect();
    let lower: Vec<Point> = cand
        .lower
        .iter()
        .map(|&p| project_to_lens(p))
        .filter(|p| p.y < -FEAS_EPS)
        .collect();
    let out = Candidate {
        upper: chain(&upper, 1.0),
        lower: chain(&lower, -1.0),
    };
    if out.upper.is_empty() {
        return Err(Rejection::Empty);
    }
    if !out.lower.is_empty() && convex_polygon_diameter(&out.polygon()) > 1.0 + FEAS_EPS {
        return Err(Rejection::Diameter);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSchedule {
    /// Standard deviation of the Gaussian step at iteration 0.
    pub initial: f64,
    /// Factor applied to the step over the whole run.
    pub decay: f64,
}

impl StepSchedule {
    /// `initial · decay^(t / iterations)`.
    pub fn sigma(&self, t: u64, iterations: u64) -> f64 {
        self.initial * self.decay.powf(t as f64 / iterations as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptConfig {
    pub n_points: usize,
    pub iterations: u64,
    pub seed: u64,
    pub step_schedule: StepSchedule,
    pub restarts: usize,
    pub allow_lower: bool,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            n_points: 16,
            iterations: 20_000,
            seed: 42,
            step_schedule: StepSchedule {
                initial: 0.05,
                decay: 0.01,
            },
            restarts: 4,
            allow_lower: false,
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        let s = &self.step_schedule;
        if self.n_points == 0 || self.iterations == 0 || self.restarts == 0 {
            return Err(Error::Domain("n_points, iterations and restarts must be positive".into()));
        }
        if !(s.decay > 0.0 && s.decay < 1.0) || !(s.initial > 0.0 && s.initial.is_finite()) {
            return Err(Error::Domain(format!("bad step schedule {s:?}")));
        }
        Ok(())
    }

    /// Lower-chain size used when `allow_lower` is set.
    fn n_lower(&self) -> usize {
        if self.allow_lower {
            (self.n_points / 4).max(1)
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RejectionCounts {
    /// Mutations whose repair left no upper point.
    pub empty: u64,
    /// Mutations whose repair produced a figure wider than 1.
    pub diameter: u64,
    /// Mutations whose repair dropped upper points; those are refilled by
    /// splitting the longest edges, not rejected.
    pub collapsed: u64,
}

impl RejectionCounts {
    fn add(self, o: Self) -> Self {
        Self {
            empty: self.empty + o.empty,
            diameter: self.diameter + o.diameter,
            collapsed: self.collapsed + o.collapsed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptTrace {
    pub config: OptConfig,
    pub best_mu: f64,
    pub best_restart: usize,
    pub best_candidate: Candidate,
    pub best_figure: Figure,
    /// `(iteration, μ)` at every accepted step of the best restart.
    pub history: Vec<(u64, f64)>,
    /// Final μ of each restart.
    pub restart_mu: Vec<f64>,
    /// Summed over all restarts.
    pub constraint_rejections: RejectionCounts,
    pub bound: f64,
    pub within_bound: bool,
}

struct RunResult {
    mu: f64,
    candidate: Candidate,
    history: Vec<(u64, f64)>,
    rejections: RejectionCounts,
}

fn initial_candidate(cfg: &OptConfig, rng: &mut ChaCha8Rng) -> Candidate {
    let arc = |n: usize, height: f64| -> Vec<Point> {
        (1..=n)
            .map(|i| {
                let phi = std::f64::consts::PI * i as f64 / (n + 1) as f64;
                Point::new(-0.5 * phi.cos(), height * phi.sin())
            })
            .collect()
    };
    // above the reference circle, so μ starts positive; μ is flat at 0 inside it
    let height = 0.55 + 0.25 * rng.random::<f64>();
    let upper = arc(cfg.n_points, height);
    // flatten the lower chain until the start is no wider than 1
    let mut depth = 0.1;
    for _ in 0..30 {
        let cand = Candidate {
            upper: upper.clone(),
            lower: arc(cfg.n_lower(), -depth),
        };
        if let Ok(c) = repair(&cand) {
            return c;
        }
        depth *= 0.5;
    }
    repair(&Candidate { upper, lower: Vec::new() }).expect("upper chain alone is feasible")
}

/// Splits the longest edges of the chain `K → upper → L` until it has `n`
/// points again. New points sit just outside their edge so they stay
/// strictly convex.
fn refill(upper: &mut Vec<Point>, n: usize) {
    for _ in 0..n {
        if upper.len() >= n {
            return;
        }
        let mut pts = Vec::with_capacity(upper.len() + 2);
        pts.push(k());
        pts.extend(upper.iter().copied());
        pts.push(l());
        let (i, _) = pts
            .windows(2)
            .map(|w| w[0].distance(w[1]))
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("chain has an edge");
        let (a, b) = (pts[i], pts[i + 1]);
        let mid = a.lerp(b, 0.5) + (b - a).perp() * 1e-7;
        upper.insert(i, project_to_lens(mid));
        *upper = chain(upper, 1.0);
    }
}

fn run(cfg: &OptConfig, seed: u64) -> RunResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = RejectionCounts::default();
    let mut cur = initial_candidate(cfg, &mut rng);
    let mut cur_mu = cur.mu();
    let mut history = vec![(0, cur_mu)];
    let unit = Normal::new(0.0, 1.0).expect("unit normal");

    for t in 1..=cfg.iterations {
        let sigma = cfg.step_schedule.sigma(t, cfg.iterations);
        let nu = cur.upper.len();
        let i = rng.random_range(0..nu + cur.lower.len());
        let step = Point::new(unit.sample(&mut rng), unit.sample(&mut rng)) * sigma;
        let mut next = cur.clone();
        if i < nu {
            next.upper[i] = next.upper[i] + step;
        } else {
            next.lower[i - nu] = next.lower[i - nu] + step;
        }
        let next = match repair(&next) {
            Ok(c) => c,
            Err(Rejection::Empty) => {
                rejections.empty += 1;
                continue;
            }
            Err(Rejection::Diameter) => {
                rejections.diameter += 1;
                continue;
            }
        };
        // the lower chain may shrink away; the upper chain keeps its size
        let mut next = next;
        if next.upper.len() < nu {
            rejections.collapsed += 1;
            refill(&mut next.upper, nu);
        }
        let m = next.mu();
        if m > cur_mu {
            cur = next;
            cur_mu = m;
            history.push((t, m));
        }
    }
    RunResult {
        mu: cur_mu,
        candidate: cur,
        history,
        rejections,
    }
}

/// Hill climbing with restarts. Restart `r` uses seed `seed + r`; the best
/// restart wins, ties going to the lowest index.
pub fn optimize_mu(cfg: &OptConfig) -> Result<OptTrace> {
    cfg.validate()?;
    let runs: Vec<RunResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run(cfg, cfg.seed.wrapping_add(r as u64)))
        .collect();
    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.mu > runs[best].mu {
            best = r;
        }
    }
    let rejections = runs.iter().fold(RejectionCounts::default(), |acc, r| acc.add(r.rejections));
    let restart_mu = runs.iter().map(|r| r.mu).collect();
    let win = runs.into_iter().nth(best).expect("at least one restart");
    let bound = mu_star();
    Ok(OptTrace {
        config: *cfg,
        best_mu: win.mu,
        best_restart: best,
        best_figure: win.candidate.figure()?,
        best_candidate: win.candidate,
        history: win.history,
        restart_mu,
        constraint_rejections: rejections,
        bound,
        within_bound: win.mu <= bound + 1e-6,
    })
}

/// Outward move of one arc midpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcBulge {
    pub edge: usize,
    pub epsilon: f64,
    pub displaced: Point,
    pub dist_to_k: f64,
    pub dist_to_l: f64,
    /// Largest distance from the displaced point to the figure.
    pub farthest: f64,
    pub violates: bool,
}

/// Cap of height `h` added below the lowest point of the figure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripCheck {
    pub height: f64,
    pub mu_before: f64,
    pub mu_after: f64,
    pub diameter_after: f64,
    pub convex_after: bool,
    pub decreased: bool,
    pub feasible: bool,
    /// The perturbation lowers μ or leaves the admissible class.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationAudit {
    pub bulges: Vec<ArcBulge>,
    pub strips: Vec<StripCheck>,
    /// Every arc bulge breaks the diameter constraint (false when there are no arcs).
    pub bulge_flagged: bool,
    pub strip_flagged: bool,
}

pub const AUDIT_EPSILONS: [f64; 2] = [1e-3, 1e-2];

/// Largest distance from `q` to a point of `e`.
fn farthest_on_edge(e: &Edge, q: Point) -> f64 {
    let ends = q.distance(e.start()).max(q.distance(e.end()));
    match e {
        Edge::Segment { .. } => ends,
        Edge::Arc(a) => {
            let away = (a.center - q).angle();
            let v = a.center - q;
            if v.norm() > 0.0 && a.spans_angle(away, 0.0) {
                ends.max(v.norm() + a.radius)
            } else if v.norm() == 0.0 {
                a.radius
            } else {
                ends
            }
        }
    }
}

fn farthest(f: &Figure, q: Point) -> f64 {
    f.edges().iter().map(|e| farthest_on_edge(e, q)).fold(0.0, f64::max)
}

/// Runs both perturbations on a figure whose diameter is `KL`.
pub fn perturbation_audit(f: &Figure, tol: &Tolerance) -> Result<PerturbationAudit> {
    let cls = f.classifier(tol);
    let diam = f.diameter(tol);
    if cls.classify(k()) != Location::Boundary
        || cls.classify(l()) != Location::Boundary
        || (diam - 1.0).abs() > 1e-9
    {
        return Err(Error::Domain("figure does not have KL as a diameter".into()));
    }
    let circle = Circle::reference();

    let mut bulges = Vec::new();
    for (i, e) in f.edges().iter().enumerate() {
        let Edge::Arc(a) = e else { continue };
        let m = a.midpoint();
        let radial = (m - a.center).normalized();
        let outward = match a.orientation {
            Orientation::Ccw => radial,
            Orientation::Cw => -radial,
        };
        for &eps in &AUDIT_EPSILONS {
            let p = m + outward * eps;
            let far = farthest(f, p);
            bulges.push(ArcBulge {
                edge: i,
                epsilon: eps,
                displaced: p,
                dist_to_k: p.distance(k()),
                dist_to_l: p.distance(l()),
                farthest: far,
                violates: far > 1.0 + tol.geom_eps,
            });
        }
    }

    let mu_before = measures::mu(f, &circle, tol)?.mu;
    let y_min = f.bounding_box().0.y;
    let mut strips = Vec::new();
    for &h in &AUDIT_EPSILONS {
        let g = convex_hull_with(f, &[Point::new(0.0, y_min - h)], tol)?;
        let mu_after = measures::mu(&g, &circle, tol)?.mu;
        let diameter_after = g.diameter(tol);
        let convex_after = g.is_convex();
        let feasible = convex_after && diameter_after <= 1.0 + tol.geom_eps;
        let decreased = mu_after < mu_before;
        strips.push(StripCheck {
            height: h,
            mu_before,
            mu_after,
            diameter_after,
            convex_after,
            decreased,
            feasible,
            flagged: decreased || !feasible,
        });
    }

    Ok(PerturbationAudit {
        bulge_flagged: !bulges.is_empty() && bulges.iter().all(|b| b.violates),
        strip_flagged: strips.iter().all(|s| s.flagged),
        bulges,
        strips,
    })
}

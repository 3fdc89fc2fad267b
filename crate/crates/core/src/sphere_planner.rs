//! An explicit motion planner on odd-dimensional spheres.
//!
//! A configuration of n points is answered by n paths from the first point:
//! the shortest geodesic when target and start are not antipodal, and the
//! semicircle leaving along a fixed unit tangent field when they are. The
//! configuration space stratifies by the number of antipodes to the first
//! point into n pieces, and the planner restricted to each piece is
//! continuous; this realizes the upper bound `TC_n(S^k) <= n` for odd `k`.
//! No such planner exists on even spheres, where every nonvanishing tangent
//! field dies and `TC_n = n + 1`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Construction-time tolerance for membership on the unit sphere.
pub const UNIT_TOLERANCE: f64 = 1e-9;
/// Default tolerance band deciding antipodal / equal pairs.
pub const DEFAULT_ANTIPODE_TOLERANCE: f64 = 1e-8;
/// Endpoint residual the section property is verified against.
pub const ENDPOINT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("point norm {0} is not within {UNIT_TOLERANCE} of 1")]
    NotOnSphere(f64),
    #[error("cannot normalize a zero or non-finite vector")]
    ZeroVector,
    #[error("sphere dimension must be odd for {context}: no nonvanishing tangent field exists on an even sphere (k = {k})")]
    EvenSphere { k: usize, context: &'static str },
    #[error("points live on spheres of different dimensions")]
    DimensionMismatch,
    #[error("{0}")]
    BadParameter(String),
}

/// A point on the unit sphere `S^k` in `R^{k+1}`, 64-bit coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Accepts coordinates already on the sphere (within [`UNIT_TOLERANCE`]).
    pub fn new(coords: Vec<f64>) -> Result<Self, PlannerError> {
        let norm = norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(PlannerError::NotOnSphere(norm));
        }
        Ok(SpherePoint { coords })
    }

    /// Normalizes arbitrary nonzero coordinates onto the sphere.
    pub fn normalized(coords: Vec<f64>) -> Result<Self, PlannerError> {
        let norm = norm(&coords);
        if !norm.is_finite() || norm < 1e-12 {
            return Err(PlannerError::ZeroVector);
        }
        Ok(SpherePoint { coords: coords.iter().map(|c| c / norm).collect() })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The sphere dimension `k` (one less than the ambient dimension).
    pub fn sphere_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(&self.coords, &other.coords)
    }

    /// Euclidean (chord) distance.
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// The alternating-swap unit tangent field on an odd sphere:
/// `V(x) = (-x_2, x_1, -x_4, x_3, …)`. Unit and orthogonal to `x` by
/// construction; defined only when the ambient dimension `k + 1` is even.
pub fn tangent_field(x: &SpherePoint) -> Result<SpherePoint, PlannerError> {
    let k = x.sphere_dim();
    if k.is_multiple_of(2) {
        return Err(PlannerError::EvenSphere { k, context: "the tangent field" });
    }
    let mut v = vec![0.0; k + 1];
    for pair in 0..k.div_ceil(2) {
        v[2 * pair] = -x.coords[2 * pair + 1];
        v[2 * pair + 1] = x.coords[2 * pair];
    }
    Ok(SpherePoint { coords: v })
}

/// A sampled path on the sphere at uniform parameters `t = 0, 1/m, …, 1`.
#[derive(Debug, Clone)]
pub struct Path {
    k: usize,
    samples: Vec<SpherePoint>,
}

impl Path {
    pub fn sphere_dim(&self) -> usize {
        self.k
    }

    pub fn samples(&self) -> &[SpherePoint] {
        &self.samples
    }

    pub fn start(&self) -> &SpherePoint {
        &self.samples[0]
    }

    pub fn end(&self) -> &SpherePoint {
        self.samples.last().expect("paths are nonempty")
    }

    /// Largest chord between corresponding samples of two paths.
    pub fn sup_distance(&self, other: &Path) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }
}

/// The path `[x, y]`: the shortest geodesic when the endpoints are neither
/// equal nor antipodal within `antipode_tol`; the constant path at `x` when
/// equal; the semicircle `cos(πt) x + sin(πt) V(x)` when antipodal (odd
/// spheres only — the direction at `x` is the tangent field).
pub fn geodesic(
    x: &SpherePoint,
    y: &SpherePoint,
    samples: usize,
    antipode_tol: f64,
) -> Result<Path, PlannerError> {
    if x.coords.len() != y.coords.len() {
        return Err(PlannerError::DimensionMismatch);
    }
    if samples < 2 {
        return Err(PlannerError::BadParameter("a path needs at least 2 sample intervals".into()));
    }
    let k = x.sphere_dim();
    let m = samples;
    let sum_norm = norm(&x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect::<Vec<_>>());
    let diff_norm = x.distance(y);

    let mut points = Vec::with_capacity(m + 1);
    if sum_norm < antipode_tol {
        // antipodal: semicircle through the tangent direction
        if k.is_multiple_of(2) {
            return Err(PlannerError::EvenSphere { k, context: "antipodal planning" });
        }
        let v = tangent_field(x)?;
        for j in 0..=m {
            let t = j as f64 / m as f64;
            let (c, s) = ((std::f64::consts::PI * t).cos(), (std::f64::consts::PI * t).sin());
            let coords = x.coords.iter().zip(&v.coords).map(|(a, b)| c * a + s * b).collect();
            points.push(SpherePoint { coords });
        }
    } else if diff_norm < antipode_tol {
        points = vec![x.clone(); m + 1];
    } else {
        let angle = x.dot(y).clamp(-1.0, 1.0).acos();
        let sin_angle = angle.sin();
        // reachable only when the tolerance band is smaller than the float
        // resolution around theta = 0 or pi (sin at the f64 nearest to pi
        // is ~1.2e-16)
        if sin_angle <= f64::EPSILON {
            return Err(PlannerError::BadParameter(
                "endpoints are equal or antipodal at floating-point resolution; increase the tolerance band".into(),
            ));
        }
        for j in 0..=m {
            let t = j as f64 / m as f64;
            let a = ((1.0 - t) * angle).sin() / sin_angle;
            let b = (t * angle).sin() / sin_angle;
            let coords = x.coords.iter().zip(&y.coords).map(|(p, q)| a * p + b * q).collect();
            points.push(SpherePoint { coords });
        }
    }
    // the wedge point is shared exactly
    points[0] = x.clone();
    Ok(Path { k, samples: points })
}

/// The stratum index of a configuration: how many of the points
/// `x_2, …, x_n` are antipodal to `x_1` within the tolerance band.
pub fn domain_index(config: &[SpherePoint], antipode_tol: f64) -> usize {
    match config.split_first() {
        None => 0,
        Some((first, rest)) => rest
            .iter()
            .filter(|p| {
                norm(&first.coords.iter().zip(&p.coords).map(|(a, b)| a + b).collect::<Vec<_>>())
                    < antipode_tol
            })
            .count(),
    }
}

/// The number of strata covering the configuration space of an odd sphere:
/// n pieces, one per antipode count — the constructive evidence for
/// `TC_n(S^k) <= n`.
pub fn domain_count(k: usize, n: usize) -> Result<usize, PlannerError> {
    if k.is_multiple_of(2) {
        return Err(PlannerError::EvenSphere { k, context: "domain counting" });
    }
    Ok(n)
}

/// One answer of the motion planner: n paths from the common start `x_1`,
/// path i ending at `x_i`.
#[derive(Debug, Clone)]
pub struct Plan {
    k: usize,
    domain: usize,
    sample_intervals: usize,
    paths: Vec<Path>,
}

impl Plan {
    pub fn sphere_dim(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.paths.len()
    }

    /// The stratum the planned configuration belongs to.
    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn sample_intervals(&self) -> usize {
        self.sample_intervals
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Largest distance between path i's endpoint and the configuration's
    /// i-th point: the section property asks this to vanish.
    pub fn endpoint_residual(&self, config: &[SpherePoint]) -> f64 {
        self.paths
            .iter()
            .zip(config)
            .map(|(path, target)| path.end().distance(target))
            .fold(0.0, f64::max)
    }

    pub fn sup_distance(&self, other: &Plan) -> f64 {
        self.paths.iter().zip(&other.paths).map(|(a, b)| a.sup_distance(b)).fold(0.0, f64::max)
    }

    /// The export form: `{"k", "n", "domain", "samples", "paths"}` with
    /// paths as arrays of coordinate arrays.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "n": self.n(),
            "domain": self.domain,
            "samples": self.sample_intervals,
            "paths": self
                .paths
                .iter()
                .map(|p| p.samples.iter().map(|s| s.coords.clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Plans a configuration on an odd sphere: path i is the geodesic
/// `[x_1, x_i]`, all paths sharing the start bitwise.
pub fn plan(
    config: &[SpherePoint],
    samples: usize,
    antipode_tol: f64,
) -> Result<Plan, PlannerError> {
    let first = config
        .first()
        .ok_or_else(|| PlannerError::BadParameter("configuration is empty".into()))?;
    let k = first.sphere_dim();
    if config.iter().any(|p| p.sphere_dim() != k) {
        return Err(PlannerError::DimensionMismatch);
    }
    if k % 2 == 0 {
        return Err(PlannerError::EvenSphere { k, context: "planning" });
    }
    let paths = config
        .iter()
        .map(|target| geodesic(first, target, samples, antipode_tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Plan { k, domain: domain_index(config, antipode_tol), sample_intervals: samples, paths })
}

/// A random configuration of `n` points on `S^k` (normalized Gaussians).
pub fn random_configuration(
    k: usize,
    n: usize,
    rng: &mut impl Rng,
) -> Result<Vec<SpherePoint>, PlannerError> {
    (0..n)
        .map(|_| loop {
            let coords: Vec<f64> = (0..=k).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(point) = SpherePoint::normalized(coords) {
                return Ok(point);
            }
        })
        .collect()
}

/// Parameters for the continuity probe.
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub n: usize,
    pub trials: usize,
    /// Perturbation size applied to every configuration point.
    pub delta: f64,
    pub samples: usize,
    pub antipode_tol: f64,
    /// Accepted Lipschitz-style ratio `sup distance / delta`; generous to
    /// absorb slerp conditioning away from the antipodal tolerance band.
    pub acceptance_constant: f64,
    pub seed: u64,
}

impl ProbeConfig {
    pub fn new(n: usize) -> Self {
        ProbeConfig {
            n,
            trials: 100,
            delta: 1e-4,
            samples: 50,
            antipode_tol: DEFAULT_ANTIPODE_TOLERANCE,
            acceptance_constant: 100.0,
            seed: 0,
        }
    }
}

/// What the probe saw: perturbation pairs staying in one stratum must move
/// the plan by at most `acceptance_constant * delta`; pairs that change
/// stratum are excluded (the planner is discontinuous across strata).
#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub trials: usize,
    pub compared: usize,
    pub excluded_stratum_changes: usize,
    pub violations: usize,
    pub max_ratio: f64,
    pub max_endpoint_residual: f64,
    pub delta: f64,
    pub acceptance_constant: f64,
}

fn antipode_pattern(config: &[SpherePoint], tol: f64) -> Vec<bool> {
    match config.split_first() {
        None => Vec::new(),
        Some((first, rest)) => rest
            .iter()
            .map(|p| {
                norm(&first.coords.iter().zip(&p.coords).map(|(a, b)| a + b).collect::<Vec<_>>())
                    < tol
            })
            .collect(),
    }
}

/// Samples random configurations, perturbs each point by `delta`, and
/// compares the two plans whenever the perturbation stays in the same
/// stratum (same antipode pattern).
pub fn continuity_probe(k: usize, config: ProbeConfig) -> Result<ContinuityReport, PlannerError> {
    if k.is_multiple_of(2) {
        return Err(PlannerError::EvenSphere { k, context: "the continuity probe" });
    }
    if config.n == 0 || config.trials == 0 {
        return Err(PlannerError::BadParameter("probe needs n >= 1 and trials >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = ContinuityReport {
        trials: config.trials,
        compared: 0,
        excluded_stratum_changes: 0,
        violations: 0,
        max_ratio: 0.0,
        max_endpoint_residual: 0.0,
        delta: config.delta,
        acceptance_constant: config.acceptance_constant,
    };

    for _ in 0..config.trials {
        let base_config = random_configuration(k, config.n, &mut rng)?;
        let perturbed: Vec<SpherePoint> = base_config
            .iter()
            .map(|p| {
                let direction: Vec<f64> =
                    (0..=k).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                let scale = config.delta / norm(&direction).max(1e-300);
                let coords = p.coords.iter().zip(&direction).map(|(a, d)| a + scale * d).collect();
                SpherePoint::normalized(coords)
            })
            .collect::<Result<_, _>>()?;

        let before = antipode_pattern(&base_config, config.antipode_tol);
        let after = antipode_pattern(&perturbed, config.antipode_tol);
        if before != after {
            report.excluded_stratum_changes += 1;
            continue;
        }

        let plan_a = plan(&base_config, config.samples, config.antipode_tol)?;
        let plan_b = plan(&perturbed, config.samples, config.antipode_tol)?;
        report.max_endpoint_residual = report
            .max_endpoint_residual
            .max(plan_a.endpoint_residual(&base_config))
            .max(plan_b.endpoint_residual(&perturbed));

        let ratio = plan_a.sup_distance(&plan_b) / config.delta;
        report.max_ratio = report.max_ratio.max(ratio);
        if ratio > config.acceptance_constant {
            report.violations += 1;
        }
        report.compared += 1;
    }
    Ok(report)
}

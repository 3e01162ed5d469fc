//! Root finding: every complex zero of a real polynomial, and the real score
//! root inside `(-1, 1)`.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model;
use crate::polynomials::Poly;

/// Maximum number of simultaneous-iteration sweeps.
pub const MAX_SWEEPS: usize = 200;
/// Roots closer than this times the root scale are merged into one.
pub const CLUSTER_RADIUS: f64 = 1e-7;
/// Acceptance bound on the relative backward error of a reported root.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Offset used when an endpoint of `[-1, 1]` coincides with a score pole.
pub const ENDPOINT_OFFSET: f64 = 1e-12;
const SCORE_TOL: f64 = 1e-12;
const WIDTH_TOL: f64 = 1e-14;
const MAX_BRACKET_STEPS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// `|p(z)|`
    pub residual: f64,
    /// `Σ |a_i| |z|^i`; `residual / scale` is the relative backward error.
    pub scale: f64,
}

impl Root {
    pub fn backward_error(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual
        } else {
            self.residual / self.scale
        }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            re: f64,
            im: f64,
            mult: usize,
        }
        Repr {
            re: self.value.re,
            im: self.value.im,
            mult: self.multiplicity,
        }
        .serialize(serializer)
    }
}

/// All zeros of a polynomial, counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// `max(1, max |z|)`; tolerances on the roots are relative to it.
    #[serde(skip)]
    pub root_scale: f64,
    /// False if the sweep budget ran out before every root settled.
    pub converged: bool,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// One entry per root, repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| r.value.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn max_backward_error(&self) -> f64 {
        self.roots
            .iter()
            .map(Root::backward_error)
            .fold(0.0, f64::max)
    }
}

/// Finds every complex zero by Aberth–Ehrlich simultaneous iteration.
///
/// Roots within [`CLUSTER_RADIUS`]` * root_scale` of each other (transitively)
/// are merged into their mean and reported once with the summed multiplicity.
pub fn complex_roots(p: &Poly<f64>) -> Result<RootSet> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "root finding needs a polynomial of degree at least 1".into(),
            ))
        }
    };
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let dp = p.derivative();
    let coeffs = p.coeffs();
    let lead = coeffs[degree];

    // Fujiwara bound 2 max |a_{d-k} / a_d|^{1/k}; for h = k' it is within a
    // small factor of max |c_i|.
    let radius = (1..=degree)
        .map(|k| (coeffs[degree - k] / lead).abs().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut settled = vec![false; degree];

    let eps = f64::EPSILON;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        for i in 0..degree {
            if settled[i] {
                continue;
            }
            let zi = z[i];
            let pv = p.eval_complex(zi);
            let bound = p.abs_eval(zi.norm());
            if pv.norm() <= 4.0 * eps * bound {
                settled[i] = true;
                continue;
            }
            let ratio = pv / dp.eval_complex(zi);
            let repulsion: Complex64 = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, zj)| {
                    let d = zi - zj;
                    if d.is_zero() {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= eps * z[i].norm() {
                settled[i] = true;
            }
        }
        if settled.iter().all(|&s| s) {
            converged = true;
            break;
        }
    }

    Ok(cluster(p, z, converged))
}

fn cluster(p: &Poly<f64>, mut z: Vec<Complex64>, converged: bool) -> RootSet {
    let root_scale = z.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let radius = CLUSTER_RADIUS * root_scale;

    // union-find over pairs within the radius
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &zi) in z.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(zi),
            None => groups.push((r, vec![zi])),
        }
    }
    z.clear();

    let mut centers: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|(_, members)| {
            let k = members.len();
            (members.iter().sum::<Complex64>() / k as f64, k)
        })
        .collect();
    snap_unpaired_to_real(&mut centers, radius);

    let mut roots: Vec<Root> = centers
        .into_iter()
        .map(|(value, k)| Root {
            value,
            multiplicity: k,
            residual: p.eval_complex(value).norm(),
            scale: p.abs_eval(value.norm()),
        })
        .collect();
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });

    RootSet {
        roots,
        root_scale,
        converged,
    }
}

/// Non-real zeros of a real polynomial come in conjugate pairs, so a
/// computed root whose conjugate has no counterpart of the same multiplicity
/// is real and its imaginary part is rounding noise.
fn snap_unpaired_to_real(centers: &mut [(Complex64, usize)], radius: f64) {
    let n = centers.len();
    let mut paired = vec![false; n];
    for i in 0..n {
        let (zi, ki) = centers[i];
        if zi.im.abs() <= radius {
            centers[i].0.im = 0.0;
            continue;
        }
        if paired[i] {
            continue;
        }
        let target = zi.conj();
        let partner = (0..n)
            .filter(|&j| j != i && !paired[j] && centers[j].1 == ki)
            .filter(|&j| (centers[j].0 - target).norm() <= 0.5 * zi.im.abs())
            .min_by(|&a, &b| {
                (centers[a].0 - target)
                    .norm()
                    .total_cmp(&(centers[b].0 - target).norm())
            });
        match partner {
            Some(j) => {
                paired[i] = true;
                paired[j] = true;
            }
            None => centers[i].0.im = 0.0,
        }
    }
}

/// Score evaluated at `theta`, stepping inward by [`ENDPOINT_OFFSET`] if an
/// endpoint `±1` is a pole.
fn score_at_endpoint(weights: &[f64], endpoint: f64) -> f64 {
    match model::score(weights, endpoint) {
        Ok(s) => s,
        Err(_) => {
            let inner = endpoint - endpoint.signum() * ENDPOINT_OFFSET;
            model::score(weights, inner).unwrap_or(endpoint.signum() * -f64::INFINITY)
        }
    }
}

/// The unique zero of the score in `(-1, 1)`, if the score changes sign.
///
/// The score is strictly decreasing on `[-1, 1]`, so a positive value just
/// inside `-1` and a negative value just inside `1` bracket exactly one root.
/// Bisection keeps the bracket; Newton steps that land strictly inside it are
/// taken instead of the midpoint. Iterates stop at `|score| ≤ 1e-12` or a
/// bracket narrower than `1e-14`.
pub fn score_root_in_open_interval(weights: &[f64]) -> Result<Option<f64>> {
    if weights.iter().all(|w| *w == 0.0) {
        return Err(Error::InvalidArgument(
            "score root needs at least one nonzero weight".into(),
        ));
    }
    let s_lo = score_at_endpoint(weights, -1.0);
    let s_hi = score_at_endpoint(weights, 1.0);
    if !(s_lo > 0.0 && s_hi < 0.0) {
        return Ok(None);
    }

    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    for _ in 0..MAX_BRACKET_STEPS {
        let s = model::score(weights, x)?;
        if s.abs() < best.0 {
            best = (s.abs(), x);
        }
        if s.abs() <= SCORE_TOL {
            return Ok(Some(x));
        }
        if s > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= WIDTH_TOL {
            break;
        }
        let ds = model::score_derivative(weights, x)?;
        let newton = x - s / ds;
        x = if ds < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(Some(best.1))
}

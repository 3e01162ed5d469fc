//! ML-degree of the association parameter.
//!
//! The score equation `Σ 1/(θ + c_i) = 0` clears to `h(θ) = 0`, but zeros of
//! `h` that are also zeros of `k` are not solutions. A common zero exists
//! exactly when some shift value repeats; a value repeated `n_i` times is a
//! zero of `h` of multiplicity `n_i - 1`. With `l` repeated groups of total
//! size `m`, the ML-degree is `n + l - m - 1`.
//!
//! [`ml_degree_formula`] evaluates that count from a [`MultiplicityProfile`];
//! [`ml_degree_algebraic`] computes `deg h - deg gcd(h, k)` over the
//! rationals and never looks at the profile.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polynomials::{build_h, build_k, CShiftList, Poly, Rational, Scalar, ScalarKind};

/// Relative tolerance for declaring two `f64` shifts equal.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EqualityPolicy {
    Exact,
    /// `|a - b| ≤ tol · max(1, |a|)`, closed transitively.
    Tolerance(f64),
}

impl Default for EqualityPolicy {
    fn default() -> Self {
        EqualityPolicy::Tolerance(DEFAULT_REL_TOL)
    }
}

/// `(value, n_i)`
#[derive(Debug, Clone, PartialEq)]
pub struct Group<S> {
    pub value: S,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityProfile<S> {
    pub n: usize,
    /// Groups in order of first appearance.
    pub groups: Vec<Group<S>>,
    /// Number of groups with `n_i > 1`.
    pub l: usize,
    /// Sum of `n_i` over groups with `n_i > 1`.
    pub m: usize,
}

impl<S: Scalar> MultiplicityProfile<S> {
    /// Number of distinct values.
    pub fn p(&self) -> usize {
        self.groups.len()
    }

    /// True in the excluded case: at least two shifts, all of them equal.
    pub fn all_equal(&self) -> bool {
        self.n >= 2 && self.groups.len() == 1
    }

    pub fn repeated(&self) -> impl Iterator<Item = &Group<S>> {
        self.groups.iter().filter(|g| g.multiplicity > 1)
    }
}

/// Groups the shifts under `policy`.
///
/// Under [`EqualityPolicy::Tolerance`] neighbours in sorted order are linked
/// when within tolerance, so the grouping is the transitive closure and
/// always a partition. The representative value of a group is its first
/// element in input order.
pub fn profile<S: Scalar>(c: &CShiftList<S>, policy: EqualityPolicy) -> MultiplicityProfile<S> {
    let values = c.values();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    let same = |a: &S, b: &S| -> bool {
        match policy {
            EqualityPolicy::Tolerance(tol) if S::KIND == ScalarKind::ApproximateReal => {
                let diff = (a.clone() - b.clone()).abs_f64();
                diff <= tol * a.abs_f64().max(1.0)
            }
            _ => a == b,
        }
    };

    // group id per input index
    let mut group_of = vec![0usize; values.len()];
    let mut next = 0;
    for (k, &idx) in order.iter().enumerate() {
        if k > 0 && !same(&values[order[k - 1]], &values[idx]) {
            next += 1;
        }
        group_of[idx] = next;
    }

    // renumber by first appearance
    let mut first_seen: Vec<Option<usize>> = vec![None; next + 1];
    let mut groups: Vec<Group<S>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let g = group_of[i];
        match first_seen[g] {
            Some(pos) => groups[pos].multiplicity += 1,
            None => {
                first_seen[g] = Some(groups.len());
                groups.push(Group {
                    value: v.clone(),
                    multiplicity: 1,
                });
            }
        }
    }

    let l = groups.iter().filter(|g| g.multiplicity > 1).count();
    let m = groups
        .iter()
        .filter(|g| g.multiplicity > 1)
        .map(|g| g.multiplicity)
        .sum();
    MultiplicityProfile {
        n: values.len(),
        groups,
        l,
        m,
    }
}

/// A common zero `-c` of `h` and `k` and its multiplicity as a zero of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonZero<S> {
    pub value: S,
    pub multiplicity: usize,
}

impl<S: Scalar> Serialize for CommonZero<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        #[derive(Serialize)]
        struct Repr {
            value: serde_json::Value,
            mult: usize,
        }
        Repr {
            value: self.value.to_json(),
            mult: self.multiplicity,
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommonZeroReport<S> {
    pub zeros: Vec<CommonZero<S>>,
}

impl<S> CommonZeroReport<S> {
    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

pub fn common_zeros<S: Scalar>(prof: &MultiplicityProfile<S>) -> CommonZeroReport<S> {
    CommonZeroReport {
        zeros: prof
            .repeated()
            .map(|g| CommonZero {
                value: -g.value.clone(),
                multiplicity: g.multiplicity - 1,
            })
            .collect(),
    }
}

fn all_equal_error<S: Scalar>(n: usize, value: &S) -> Error {
    let boundary_mle = if *value > S::zero() { 1.0 } else { -1.0 };
    let value = match value.to_json() {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    };
    Error::AllEqual {
        n,
        value,
        boundary_mle,
    }
}

/// `n + l - m - 1`.
pub fn ml_degree_formula<S: Scalar>(prof: &MultiplicityProfile<S>) -> Result<usize> {
    if prof.all_equal() {
        return Err(all_equal_error(prof.n, &prof.groups[0].value));
    }
    Ok(prof.n + prof.l - prof.m - 1)
}

/// `deg h - deg gcd(h, k)` computed over the rationals.
pub fn ml_degree_algebraic(c: &CShiftList<Rational>) -> Result<usize> {
    let values = c.values();
    if values.len() >= 2 && values.iter().all(|v| *v == values[0]) {
        return Err(all_equal_error(values.len(), &values[0]));
    }
    let h = build_h(c);
    let k = build_k(c);
    let g = h.gcd(&k)?;
    let dh = h.degree().unwrap_or(0);
    let dg = g.degree().unwrap_or(0);
    Ok(dh - dg)
}

/// Multiplicity of `root` as a zero of `p`, by repeated exact division by
/// `θ - root`.
pub fn exact_root_multiplicity(p: &Poly<Rational>, root: &Rational) -> usize {
    if p.is_zero() {
        return usize::MAX;
    }
    let factor = Poly::linear_factor(-root.clone());
    let mut current = p.clone();
    let mut count = 0;
    loop {
        let (q, r) = current
            .div_rem(&factor)
            .expect("linear factor is never zero");
        if !r.is_zero() {
            return count;
        }
        current = q;
        count += 1;
    }
}

/// JSON report on the ML-degree of one shift list.
#[derive(Debug, Clone, Serialize)]
pub struct MlDegreeReport {
    pub n: usize,
    pub p: usize,
    pub l: usize,
    pub m: usize,
    /// `None` in the excluded all-equal case.
    pub ml_degree: Option<usize>,
    pub common_zeros: Vec<serde_json::Value>,
    pub mode: &'static str,
    /// `deg h - deg gcd(h, k)`; exact mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ml_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    /// Approximate mode only: equality of float shifts is tolerance-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<ExcludedCase>,
}

/// Explanation attached to the report when every shift is equal.
#[derive(Debug, Clone, Serialize)]
pub struct ExcludedCase {
    pub reason: String,
    pub boundary_mle: f64,
}

fn base_report<S: Scalar>(prof: &MultiplicityProfile<S>) -> MlDegreeReport {
    let zeros = common_zeros(prof);
    let (ml_degree, excluded) = match ml_degree_formula(prof) {
        Ok(d) => (Some(d), None),
        Err(Error::AllEqual { boundary_mle, .. }) => (
            None,
            Some(ExcludedCase {
                reason: "all shift values are equal: the score never vanishes, the \
                         likelihood is monotone in theta and the MLE is the boundary \
                         point matching the sign of the shift"
                    .into(),
                boundary_mle,
            }),
        ),
        Err(e) => unreachable!("ml_degree_formula only fails on all-equal input: {e}"),
    };
    MlDegreeReport {
        n: prof.n,
        p: prof.p(),
        l: prof.l,
        m: prof.m,
        ml_degree,
        common_zeros: zeros
            .zeros
            .iter()
            .map(|z| serde_json::to_value(z).expect("serializable"))
            .collect(),
        mode: match S::KIND {
            ScalarKind::ExactRational => "exact",
            ScalarKind::ApproximateReal => "approx",
        },
        oracle_ml_degree: None,
        oracle_agrees: None,
        caveat: None,
        excluded,
    }
}

/// Exact-mode report, including the gcd cross-check.
pub fn report_exact(c: &CShiftList<Rational>) -> MlDegreeReport {
    let prof = profile(c, EqualityPolicy::Exact);
    let mut report = base_report(&prof);
    if let Ok(oracle) = ml_degree_algebraic(c) {
        report.oracle_ml_degree = Some(oracle);
        report.oracle_agrees = Some(report.ml_degree == Some(oracle));
    }
    report
}

pub fn report_approx(c: &CShiftList<f64>, policy: EqualityPolicy) -> MlDegreeReport {
    let prof = profile(c, policy);
    let mut report = base_report(&prof);
    report.caveat = Some(match policy {
        EqualityPolicy::Exact => "floating-point shifts compared bit-exactly".into(),
        EqualityPolicy::Tolerance(t) => {
            format!("floating-point shifts treated as equal within relative tolerance {t:e}")
        }
    });
    report
}

//! Long-run behaviour: the analytic dichotomy on `a`, empirical period
//! detection on computed orbits, and the ratio terms that drive both.

use crate::dynamics::{iterate_direct, InitWindow, KernelTable, Orbit, Params, Terminator};
use crate::error::{Error, Result};
use crate::forbidden::{membership_with_cap, ForbiddenVerdict, DEFAULT_M_MAX};
use crate::scalar::{cmp_scalar, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    ConvergesToZero,
    /// `onset` is only known for empirically detected periods.
    EventuallyPeriodic {
        period: u64,
        onset: Option<i64>,
    },
    Singular {
        step: u64,
    },
    Unclassified {
        reason: String,
    },
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::ConvergesToZero => "converges-to-zero",
            Classification::EventuallyPeriodic { .. } => "eventually-periodic",
            Classification::Singular { .. } => "singular",
            Classification::Unclassified { .. } => "unclassified",
        }
    }

    /// `kind`, plus `period`, `singular_step`, `onset` and `reason` when set.
    pub fn to_json(&self) -> serde_json::Value {
        let mut record = serde_json::json!({ "kind": self.kind() });
        match self {
            Classification::EventuallyPeriodic { period, onset } => {
                record["period"] = (*period).into();
                if let Some(onset) = onset {
                    record["onset"] = (*onset).into();
                }
            }
            Classification::Singular { step } => record["singular_step"] = (*step).into(),
            Classification::Unclassified { reason } => record["reason"] = reason.clone().into(),
            Classification::ConvergesToZero => {}
        }
        record
    }
}

/// Classifies a window from `a` and `P = x_0 x_{-k}` alone.
///
/// Forbidden windows map to `Singular` at the step direct iteration fails.
/// Otherwise, for `a > 0`: `P = 1 - a`, `0 < a < 1` and `a = 1` give
/// period `2k`; `a > 1` gives convergence to zero. `a < 0` is left
/// unclassified.
pub fn classify_analytic(params: &Params<Rational>, init: &InitWindow<Rational>) -> Result<Classification> {
    let k = params.k() as u64;
    match membership_with_cap(params, init, DEFAULT_M_MAX)? {
        ForbiddenVerdict::KernelRoot(m) => return Ok(Classification::Singular { step: m }),
        ForbiddenVerdict::ZeroInitial(_) => {
            // A zero window value always breaks the orbit within 2k+1 steps.
            let orbit = iterate_direct(params, init, 2 * k + 1);
            return Ok(match orbit.terminator {
                Terminator::Singular { step, .. } => Classification::Singular { step },
                Terminator::Completed { .. } => Classification::Unclassified {
                    reason: "zero initial value without singularity".into(),
                },
            });
        }
        ForbiddenVerdict::NotForbidden => {}
    }
    let a = params.a();
    if !a.is_positive() {
        return Ok(Classification::Unclassified {
            reason: "classification requires a > 0".into(),
        });
    }
    let periodic = Classification::EventuallyPeriodic {
        period: 2 * k,
        onset: None,
    };
    if init.product() == params.periodic_product() || *a <= Rational::one() {
        return Ok(periodic);
    }
    Ok(Classification::ConvergesToZero)
}

/// The smallest period found by [`detect_period`] and the first orbit index
/// from which it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectedPeriod {
    pub period: u64,
    pub onset: i64,
}

/// Smallest `p` in `1..=p_max` with `|x_{n+p} - x_n| <= tol * max(|x_n|, 1)`
/// for every `n` from `burn_in` to the end of the orbit.
///
/// Indices are positions in `orbit.points`, so `n = 0` is `x_1`. `tol`
/// must be zero on the exact backend.
pub fn detect_period<T: Scalar>(
    orbit: &Orbit<T>,
    burn_in: usize,
    p_max: usize,
    tol: &T,
) -> Result<Option<DetectedPeriod>> {
    if let Terminator::Singular { step, .. } = orbit.terminator {
        return Err(Error::OrbitNotCompleted(step));
    }
    if cmp_scalar(tol, &T::zero()).is_lt() {
        return Err(Error::InvalidTolerance("tolerance must be nonnegative".into()));
    }
    if T::is_exact() && !tol.is_zero() {
        return Err(Error::InvalidTolerance(
            "exact orbits are compared with zero tolerance".into(),
        ));
    }
    if p_max == 0 {
        return Err(Error::InvalidTolerance("p_max must be at least 1".into()));
    }
    let points = &orbit.points;
    let needed = burn_in + 2 * p_max;
    if points.len() < needed {
        return Err(Error::OrbitTooShort {
            needed,
            have: points.len(),
        });
    }
    let matches = |n: usize, p: usize| {
        let scale = points[n].abs().max_of(T::one());
        let gap = (points[n + p].clone() - points[n].clone()).abs();
        cmp_scalar(&gap, &(tol.clone() * scale)).is_le()
    };
    for p in 1..=p_max {
        if (burn_in..points.len() - p).all(|n| matches(n, p)) {
            let onset = (0..burn_in).rev().take_while(|&n| matches(n, p)).count();
            let first = burn_in - onset;
            return Ok(Some(DetectedPeriod {
                period: p as u64,
                onset: first as i64 + 1,
            }));
        }
    }
    Ok(None)
}

/// `D_{2kj-k} / D_{2kj}` for `j = 1..=j_max`: the `i = 0` factor of the
/// closed-form product. Tends to `a^{-k}` when `a > 1` and to 1 when
/// `0 < a <= 1`.
pub fn ratio_diagnostics<T: Scalar>(params: &Params<T>, product: &T, j_max: u64) -> Result<Vec<T>> {
    let two_k = 2 * params.k() as u64;
    let table = KernelTable::new(params, product, two_k * j_max);
    if let Some(m) = table.first_root() {
        return Err(Error::KernelRoot(m));
    }
    (1..=j_max)
        .map(|j| table.ratio(two_k * j - params.k() as u64, two_k * j))
        .collect()
}

/// Limit of [`ratio_diagnostics`] for `a > 0`.
pub fn ratio_limit<T: Scalar>(params: &Params<T>) -> Option<T> {
    let a = params.a();
    if cmp_scalar(a, &T::zero()).is_le() {
        return None;
    }
    if cmp_scalar(a, &T::one()).is_gt() {
        a.pow_int(-(params.k() as i64)).ok()
    } else {
        Some(T::one())
    }
}

/// First `J` (1-based, like `j`) such that for every `j >= J` the term is
/// within `tol` of `limit` and the distance never grows again.
pub fn settle_index<T: Scalar>(terms: &[T], limit: &T, tol: &T) -> Option<u64> {
    let gaps: Vec<T> = terms.iter().map(|t| (t.clone() - limit.clone()).abs()).collect();
    let mut start = gaps.len();
    while start > 0 {
        let j = start - 1;
        let within = cmp_scalar(&gaps[j], tol).is_lt();
        let shrinking = j + 1 >= gaps.len() || cmp_scalar(&gaps[j + 1], &gaps[j]).is_le();
        if !(within && shrinking) {
            break;
        }
        start = j;
    }
    (start < gaps.len()).then_some(start as u64 + 1)
}

//! Forbidden-set membership.
//!
//! An initial window is forbidden when its orbit reaches a zero denominator.
//! With every window value nonzero this happens exactly when `P = x_0 x_{-k}`
//! is a root of some kernel `D_m = a^m + g_m P`, i.e. when `P` lies in
//!
//! ```text
//! S = { -a^m (a - 1) / (a^m - 1) : m >= 1 }     (a != 1)
//! S = { -1/m : m >= 1 }                          (a = 1)
//! ```
//!
//! and the orbit then dies at step `m`. Solving `D_m = 0` for `a^m` gives
//! `a^m = P / (P + a - 1)`, which is what [`membership`] searches for.

use std::cmp::Ordering;
use std::io::{self, Write};

use crate::dynamics::{InitWindow, Params};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Default cap on the power search in [`membership`].
pub const DEFAULT_M_MAX: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenVerdict {
    NotForbidden,
    /// Smallest window index `i` with `x_i = 0`.
    ZeroInitial(i64),
    /// `D_m = 0`; direct iteration is singular at step `m`.
    KernelRoot(u64),
}

impl ForbiddenVerdict {
    pub fn is_forbidden(&self) -> bool {
        !matches!(self, ForbiddenVerdict::NotForbidden)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ForbiddenVerdict::NotForbidden => "not-forbidden",
            ForbiddenVerdict::ZeroInitial(_) => "zero-initial",
            ForbiddenVerdict::KernelRoot(_) => "kernel-root",
        }
    }

    /// `{forbidden, witness_kind, m?, i?}`
    pub fn to_json(&self) -> serde_json::Value {
        let mut record = serde_json::json!({
            "forbidden": self.is_forbidden(),
            "witness_kind": self.kind(),
        });
        match self {
            ForbiddenVerdict::ZeroInitial(i) => record["i"] = (*i).into(),
            ForbiddenVerdict::KernelRoot(m) => record["m"] = (*m).into(),
            ForbiddenVerdict::NotForbidden => {}
        }
        record
    }
}

/// [`membership_with_cap`] with [`DEFAULT_M_MAX`].
pub fn membership<T: Scalar>(params: &Params<T>, init: &InitWindow<T>) -> Result<ForbiddenVerdict> {
    membership_with_cap(params, init, DEFAULT_M_MAX)
}

/// Decides whether `init` is in the forbidden set. Exact backend only.
pub fn membership_with_cap<T: Scalar>(
    params: &Params<T>,
    init: &InitWindow<T>,
    m_max: u64,
) -> Result<ForbiddenVerdict> {
    let a = params.a().as_rational().ok_or(Error::FloatBackendRejected)?;
    if init.k() != params.k() {
        return Err(Error::WindowLength {
            expected: params.k() + 1,
            got: init.values().len(),
        });
    }
    if let Some(index) = init.first_zero() {
        return Ok(ForbiddenVerdict::ZeroInitial(index));
    }
    let product = init.product();
    let product = product.as_rational().expect("same backend as a");
    find_root_index(a, product, m_max).map(|found| match found {
        Some(m) => ForbiddenVerdict::KernelRoot(m),
        None => ForbiddenVerdict::NotForbidden,
    })
}

/// Smallest `m >= 1` with `D_m = 0` for this `a` and `P`, if any.
pub fn find_root_index(a: &Rational, product: &Rational, m_max: u64) -> Result<Option<u64>> {
    if a.is_one() {
        // D_m = 1 + m P
        if !product.is_negative() {
            return Ok(None);
        }
        let m = -product.recip()?;
        if !m.is_integer() {
            return Ok(None);
        }
        return u64::try_from(m.numer())
            .map(Some)
            .map_err(|_| Error::WitnessOverflow);
    }
    let shifted = product.clone() + a.clone() - Rational::one();
    if shifted.is_zero() {
        // P = 1 - a: D_m = 1 for every m.
        return Ok(None);
    }
    let target = product.checked_div(&shifted)?;
    if target.is_zero() {
        return Ok(None);
    }
    if a.is_negative() {
        // a^m has sign (-1)^m; match magnitudes first, then the sign.
        let found = power_index(&a.abs(), &target.abs(), m_max)?;
        return Ok(found.filter(|m| (m % 2 == 1) == target.is_negative()));
    }
    if target.is_negative() {
        return Ok(None);
    }
    power_index(a, &target, m_max)
}

/// `m >= 1` with `base^m = target` for positive `base` and `target`, or
/// `None`. Uses strict monotonicity of `base^m` to stop early.
fn power_index(base: &Rational, target: &Rational, m_max: u64) -> Result<Option<u64>> {
    if base.is_one() {
        return Ok(target.is_one().then_some(1));
    }
    let growing = *base > Rational::one();
    let mut power = base.clone();
    for m in 1..=m_max {
        match power.cmp(target) {
            Ordering::Equal => return Ok(Some(m)),
            Ordering::Greater if growing => return Ok(None),
            Ordering::Less if !growing => return Ok(None),
            _ => {}
        }
        power = power * base.clone();
    }
    Err(Error::MCapExceeded(m_max))
}

/// `A` holds the roots with `m <= k-1`, `B` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSet {
    A,
    B,
}

impl RootSet {
    pub fn as_str(self) -> &'static str {
        match self {
            RootSet::A => "A",
            RootSet::B => "B",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForbiddenRoot<T> {
    pub m: u64,
    pub value: T,
    pub set: RootSet,
}

/// The forbidden product values for `m = 1..=m_max`.
///
/// At `a = -1` the kernels with even `m` are identically 1 and have no root;
/// those indices are skipped.
pub fn enumerate_roots<T: Scalar>(params: &Params<T>, m_max: u64) -> Vec<ForbiddenRoot<T>> {
    let a = params.a();
    let k = params.k() as u64;
    let mut roots = Vec::with_capacity(m_max as usize);
    let mut power = T::one();
    for m in 1..=m_max {
        power = power * a.clone();
        let value = if a.is_one() {
            -T::one().checked_div(&T::from_i64(m as i64)).expect("m >= 1")
        } else {
            let denom = power.clone() - T::one();
            if denom.is_zero() {
                continue;
            }
            -(power.clone() * (a.clone() - T::one()))
                .checked_div(&denom)
                .expect("checked nonzero")
        };
        let set = if m < k { RootSet::A } else { RootSet::B };
        roots.push(ForbiddenRoot { m, value, set });
    }
    roots
}

/// `m,value,set` CSV.
pub fn write_roots_csv<W: Write, T: Scalar>(out: &mut W, roots: &[ForbiddenRoot<T>]) -> io::Result<()> {
    writeln!(out, "m,value,set")?;
    for root in roots {
        writeln!(out, "{},{},{}", root.m, root.value.to_text(), root.set.as_str())?;
    }
    Ok(())
}

/// Float diagnostic: the enumerated root closest to `product`.
#[derive(Debug, Clone, PartialEq)]
pub struct NearestRoot {
    pub m: u64,
    pub value: f64,
    pub distance: f64,
}

pub fn nearest_root(params: &Params<f64>, product: f64, m_max: u64) -> Option<NearestRoot> {
    enumerate_roots(params, m_max)
        .into_iter()
        .map(|root| NearestRoot {
            m: root.m,
            value: root.value,
            distance: (root.value - product).abs(),
        })
        .filter(|r| r.distance.is_finite())
        .min_by(|x, y| x.distance.total_cmp(&y.distance))
}

/// The exponents the two-index description of the root set produces:
/// `{1, ..., k-1}` together with `{2kj + i : j >= 1, i in residues}`,
/// truncated to values `<= limit` and sorted.
pub fn indexed_exponents(k: usize, residues: std::ops::RangeInclusive<i64>, limit: u64) -> Vec<u64> {
    let two_k = 2 * k as i64;
    let mut exponents: Vec<u64> = (1..k as u64).collect();
    let mut j = 1i64;
    while two_k * j + residues.start() <= limit as i64 {
        for i in residues.clone() {
            let m = two_k * j + i;
            if m >= 1 && m as u64 <= limit {
                exponents.push(m as u64);
            }
        }
        j += 1;
    }
    exponents.sort_unstable();
    exponents
}

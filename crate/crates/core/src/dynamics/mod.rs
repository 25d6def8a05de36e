//! The difference equation
//!
//! ```text
//! x_{n+1} = x_n x_{n-k} / (a x_{n-k+1} + x_n x_{n-k+1} x_{n-k})
//! ```
//!
//! with initial window `x_{-k}, ..., x_0`: direct iteration, the associated
//! linear recurrence for `v_n`, the denominator kernel `D_n`, and the closed
//! form solution.

mod closed_form;
mod iterate;
mod kernel;

pub use closed_form::{closed_form, decompose_index, ClosedForm};
pub use iterate::{iterate_direct, Orbit, SingularCause, Terminator};
pub use kernel::{
    geometric_sum, kernel, kernel_sequence, linear_v, product_pair, KernelSequence, KernelTable, KernelValue,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An equation instance: delay `k >= 1` and coefficient `a != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T> {
    k: usize,
    a: T,
}

impl<T: Scalar> Params<T> {
    pub fn new(k: usize, a: T) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("delay k must be at least 1".into()));
        }
        if a.is_zero() {
            return Err(Error::InvalidParams("coefficient a must be nonzero".into()));
        }
        Ok(Params { k, a })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    /// `k` as a signed index, for window arithmetic.
    pub fn k_i64(&self) -> i64 {
        self.k as i64
    }

    /// The value of `P = x_0 x_{-k}` that reduces the equation to
    /// `x_n = (1 - a) / x_{n-k}`.
    pub fn periodic_product(&self) -> T {
        T::one() - self.a.clone()
    }
}

/// Initial conditions `x_{-k}, ..., x_0`. Storage slot `j` holds `x_{j-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitWindow<T> {
    values: Vec<T>,
}

impl<T: Scalar> InitWindow<T> {
    pub fn new(k: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != k + 1 {
            return Err(Error::WindowLength {
                expected: k + 1,
                got: values.len(),
            });
        }
        Ok(InitWindow { values })
    }

    pub fn k(&self) -> usize {
        self.values.len() - 1
    }

    /// Values in storage order, `x_{-k}` first.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `x_index` for `index` in `-k..=0`.
    pub fn get(&self, index: i64) -> Option<&T> {
        let slot = index + self.k() as i64;
        if index > 0 || slot < 0 {
            return None;
        }
        self.values.get(slot as usize)
    }

    /// `P = x_0 x_{-k}`.
    pub fn product(&self) -> T {
        self.values[self.k()].clone() * self.values[0].clone()
    }

    /// Smallest index `i` in `-k..=0` with `x_i = 0`.
    pub fn first_zero(&self) -> Option<i64> {
        let k = self.k() as i64;
        self.values
            .iter()
            .position(Scalar::is_zero)
            .map(|slot| slot as i64 - k)
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// Lossy conversion to the float backend.
impl InitWindow<crate::scalar::Rational> {
    pub fn to_float(&self) -> InitWindow<f64> {
        InitWindow {
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl Params<crate::scalar::Rational> {
    pub fn to_float(&self) -> Params<f64> {
        Params {
            k: self.k,
            a: self.a.to_f64(),
        }
    }
}

use crate::dynamics::Params;
use crate::error::{Error, Result};
use crate::scalar::{cmp_scalar, Scalar};

/// `g_n = (a^n - 1) / (a - 1)`, taking the limit `g_n = n` at `a = 1`.
pub fn geometric_sum<T: Scalar>(a: &T, n: u64) -> T {
    if a.is_one() {
        return T::from_i64(n as i64);
    }
    let shifted = a.clone() - T::one();
    (a.pow_u64(n) - T::one())
        .checked_div(&shifted)
        .expect("a != 1 so a - 1 != 0")
}

/// `v_n` for the linear recurrence `v_{n+1} = (a+1) v_n - a v_{n-1}`, in the
/// characteristic-root form with roots `a` and `1`:
///
/// ```text
/// v_n = g_{n+1} v_0 - a g_n v_{-1}
/// ```
///
/// which at `a = 1` reads `v_n = (n+1) v_0 - n v_{-1}`.
pub fn linear_v<T: Scalar>(a: &T, v_minus1: &T, v_0: &T, n: i64) -> Result<T> {
    match n {
        n if n < -1 => Err(Error::IndexOutOfRange {
            index: n,
            range: "n >= -1".into(),
        }),
        -1 => Ok(v_minus1.clone()),
        n => {
            let n = n as u64;
            Ok(geometric_sum(a, n + 1) * v_0.clone() - a.clone() * geometric_sum(a, n) * v_minus1.clone())
        }
    }
}

/// `g_n` and `D_n = a^n + g_n P` for one index.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelValue<T> {
    pub n: u64,
    pub g: T,
    pub d: T,
}

/// Closed-form evaluation of the kernel at `n` from powers of `a`.
pub fn kernel<T: Scalar>(params: &Params<T>, product: &T, n: u64) -> KernelValue<T> {
    let a = params.a();
    let g = geometric_sum(a, n);
    let d = a.pow_u64(n) + g.clone() * product.clone();
    KernelValue { n, g, d }
}

/// Kernel values `n = 0, 1, 2, ...` from `g_{n+1} = a g_n + 1` and
/// `D_{n+1} = a D_n + P`.
pub fn kernel_sequence<T: Scalar>(params: &Params<T>, product: &T) -> KernelSequence<T> {
    KernelSequence {
        a: params.a().clone(),
        product: product.clone(),
        next: KernelValue {
            n: 0,
            g: T::zero(),
            d: T::one(),
        },
    }
}

#[derive(Debug, Clone)]
pub struct KernelSequence<T> {
    a: T,
    product: T,
    next: KernelValue<T>,
}

impl<T: Scalar> Iterator for KernelSequence<T> {
    type Item = KernelValue<T>;

    fn next(&mut self) -> Option<KernelValue<T>> {
        let following = KernelValue {
            n: self.next.n + 1,
            g: self.a.clone() * self.next.g.clone() + T::one(),
            d: self.a.clone() * self.next.d.clone() + self.product.clone(),
        };
        Some(std::mem::replace(&mut self.next, following))
    }
}

/// `x_n x_{n-k} = P / D_n`.
pub fn product_pair<T: Scalar>(params: &Params<T>, product: &T, n: u64) -> Result<T> {
    let value = kernel(params, product, n);
    if value.d.is_zero() {
        return Err(Error::KernelRoot(n));
    }
    product.checked_div(&value.d)
}

/// Kernel values `0..=n_max` stored for ratio queries.
///
/// For `|a| > 1` the table holds `E_m = D_m / a^m` instead of `D_m`, built
/// from `E_{m+1} = E_m + P a^{-(m+1)}`, so float ratios `D_i / D_j` stay
/// finite long after `a^m` would overflow. Both representations are exact
/// on the rational backend.
#[derive(Debug, Clone)]
pub struct KernelTable<T> {
    a: T,
    scaled: bool,
    values: Vec<T>,
    first_root: Option<u64>,
}

impl<T: Scalar> KernelTable<T> {
    pub fn new(params: &Params<T>, product: &T, n_max: u64) -> Self {
        let a = params.a().clone();
        let scaled = cmp_scalar(&a.abs(), &T::one()).is_gt();
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(T::one());
        if scaled {
            let inv_a = T::one().checked_div(&a).expect("a != 0");
            let mut inv_pow = T::one();
            for m in 1..=n_max as usize {
                inv_pow = inv_pow * inv_a.clone();
                let next = values[m - 1].clone() + product.clone() * inv_pow.clone();
                values.push(next);
            }
        } else {
            for m in 1..=n_max as usize {
                let next = a.clone() * values[m - 1].clone() + product.clone();
                values.push(next);
            }
        }
        let first_root = values.iter().position(Scalar::is_zero).map(|m| m as u64);
        KernelTable {
            a,
            scaled,
            values,
            first_root,
        }
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest `m` in the table with `D_m = 0`.
    pub fn first_root(&self) -> Option<u64> {
        self.first_root
    }

    /// `D_m`. On the float backend with `|a| > 1` this can overflow; use
    /// [`KernelTable::ratio`] for long orbits.
    pub fn d(&self, m: u64) -> T {
        let stored = self.values[m as usize].clone();
        if self.scaled {
            stored * self.a.pow_u64(m)
        } else {
            stored
        }
    }

    /// `D_numer / D_denom`.
    pub fn ratio(&self, numer: u64, denom: u64) -> Result<T> {
        let bottom = &self.values[denom as usize];
        if bottom.is_zero() {
            return Err(Error::KernelRoot(denom));
        }
        let quotient = self.values[numer as usize].checked_div(bottom)?;
        if self.scaled {
            Ok(self.a.pow_int(numer as i64 - denom as i64)? * quotient)
        } else {
            Ok(quotient)
        }
    }
}

use crate::dynamics::{InitWindow, KernelTable, Orbit, Params, SingularCause, Terminator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Splits `n >= k` as `n = 2k q + i` with `q >= 1` and `i` in `-k..=k-1`.
///
/// `-k..=k-1` is a full residue system mod `2k`, so the split is unique.
/// For `i <= 0` the base term `x_i` is a window value; for `1 <= i <= k-1`
/// it comes from the short-range formula.
pub fn decompose_index(k: usize, n: u64) -> (u64, i64) {
    let k = k as i64;
    let n = n as i64;
    debug_assert!(n >= k);
    let i = (n + k).rem_euclid(2 * k) - k;
    let q = (n - i) / (2 * k);
    (q as u64, i)
}

/// The closed form solution:
///
/// ```text
/// x_n        = P / (x_{n-k} D_n)                          1 <= n <= k-1
/// x_{2kq+i}  = x_i * prod_{j=1}^{q} D_{2kj-k+i} / D_{2kj+i}  q >= 1
/// ```
///
/// with `P = x_0 x_{-k}` and `D_m = a^m + g_m P`. At `a = 1` the kernel
/// already uses `g_m = m`, so the same evaluation covers that case.
#[derive(Debug, Clone)]
pub struct ClosedForm<T> {
    params: Params<T>,
    init: InitWindow<T>,
    product: T,
}

impl<T: Scalar> ClosedForm<T> {
    /// Fails with [`Error::ZeroInitial`] if any window value is zero.
    pub fn new(params: &Params<T>, init: &InitWindow<T>) -> Result<Self> {
        if init.k() != params.k() {
            return Err(Error::WindowLength {
                expected: params.k() + 1,
                got: init.values().len(),
            });
        }
        if let Some(index) = init.first_zero() {
            return Err(Error::ZeroInitial(index));
        }
        Ok(ClosedForm {
            params: params.clone(),
            init: init.clone(),
            product: init.product(),
        })
    }

    pub fn product(&self) -> &T {
        &self.product
    }

    /// `x_n` for `n >= -k`. Fails with [`Error::KernelRoot`] if the orbit
    /// hits a singularity at or before step `n`.
    pub fn term(&self, n: i64) -> Result<T> {
        let k = self.params.k_i64();
        if n < -k {
            return Err(Error::IndexOutOfRange {
                index: n,
                range: format!("n >= {}", -k),
            });
        }
        if n <= 0 {
            return Ok(self.init.get(n).expect("checked range").clone());
        }
        let n = n as u64;
        let table = KernelTable::new(&self.params, &self.product, n);
        if let Some(m) = table.first_root() {
            return Err(Error::KernelRoot(m));
        }
        self.term_with(&table, n)
    }

    fn short_range(&self, table: &KernelTable<T>, n: u64) -> Result<T> {
        let lag = self
            .init
            .get(n as i64 - self.params.k_i64())
            .expect("1 <= n <= k-1");
        self.product.checked_div(&(lag.clone() * table.d(n)))
    }

    fn term_with(&self, table: &KernelTable<T>, n: u64) -> Result<T> {
        let k = self.params.k();
        if (n as usize) < k {
            return self.short_range(table, n);
        }
        let (q, i) = decompose_index(k, n);
        let mut acc = self.base(table, i)?;
        for j in 1..=q {
            acc = acc * self.ratio_term(table, j, i)?;
        }
        Ok(acc)
    }

    fn base(&self, table: &KernelTable<T>, i: i64) -> Result<T> {
        if i <= 0 {
            Ok(self.init.get(i).expect("i >= -k").clone())
        } else {
            self.short_range(table, i as u64)
        }
    }

    /// `D_{2kj-k+i} / D_{2kj+i}`
    fn ratio_term(&self, table: &KernelTable<T>, j: u64, i: i64) -> Result<T> {
        let two_kj = (2 * self.params.k() as u64 * j) as i64;
        let numer = two_kj - self.params.k_i64() + i;
        let denom = two_kj + i;
        table.ratio(numer as u64, denom as u64)
    }

    /// `x_1, ..., x_{n_max}` as an [`Orbit`], stopping before the first
    /// kernel root exactly as direct iteration would.
    ///
    /// Each residue class accumulates its product left to right, so every
    /// entry is bit-identical to [`ClosedForm::term`].
    pub fn orbit(&self, n_max: u64) -> Orbit<T> {
        let table = KernelTable::new(&self.params, &self.product, n_max);
        let (last, terminator) = match table.first_root() {
            Some(m) => (
                m - 1,
                Terminator::Singular {
                    step: m,
                    cause: SingularCause::KernelRoot,
                },
            ),
            None => (n_max, Terminator::Completed { steps: n_max }),
        };
        let two_k = 2 * self.params.k() as u64;
        let mut points: Vec<T> = Vec::with_capacity(last as usize);
        for n in 1..=last {
            let value = if (n as usize) < self.params.k() {
                self.short_range(&table, n)
            } else {
                let (q, i) = decompose_index(self.params.k(), n);
                let previous = if q == 1 {
                    self.base(&table, i)
                } else {
                    Ok(points[(n - two_k - 1) as usize].clone())
                };
                previous.and_then(|x| Ok(x * self.ratio_term(&table, q, i)?))
            };
            points.push(value.expect("window nonzero and no root below the stop index"));
        }
        Orbit {
            params: self.params.clone(),
            init: self.init.clone(),
            points,
            terminator,
        }
    }
}

/// `x_n` from the closed form; see [`ClosedForm`].
pub fn closed_form<T: Scalar>(params: &Params<T>, init: &InitWindow<T>, n: i64) -> Result<T> {
    ClosedForm::new(params, init)?.term(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::iterate_direct;
    use crate::scalar::Rational;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    fn setup(k: usize, a: &str, init: &[&str]) -> (Params<Rational>, InitWindow<Rational>) {
        let params = Params::new(k, q(a)).unwrap();
        let init = InitWindow::new(k, init.iter().map(|s| q(s)).collect()).unwrap();
        (params, init)
    }

    #[test]
    fn decomposition_covers_every_residue() {
        for k in 1..=6usize {
            for n in k as u64..200 {
                let (q, i) = decompose_index(k, n);
                assert!(q >= 1);
                assert!((-(k as i64)..k as i64).contains(&i), "k={k} n={n} i={i}");
                assert_eq!(2 * k as i64 * q as i64 + i, n as i64);
            }
        }
        assert_eq!(decompose_index(1, 3), (2, -1));
        assert_eq!(decompose_index(2, 5), (1, 1));
        assert_eq!(decompose_index(2, 6), (2, -2));
    }

    #[test]
    fn worked_example() {
        let (params, init) = setup(1, "2", &["1", "1"]);
        assert_eq!(closed_form(&params, &init, 3).unwrap(), q("7/45"));
        assert_eq!(closed_form(&params, &init, 1).unwrap(), q("1/3"));
    }

    #[test]
    fn window_indices_are_returned_unchanged() {
        let (params, init) = setup(3, "7/5", &["1/2", "-3", "5/4", "2"]);
        for i in -3..=0 {
            assert_eq!(closed_form(&params, &init, i).unwrap(), *init.get(i).unwrap());
        }
        assert!(matches!(
            closed_form(&params, &init, -4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn a_equal_one_product() {
        // x_0 (1 + P) / (1 + 2P) with P = 1/2.
        let (params, init) = setup(1, "1", &["1", "1/2"]);
        assert_eq!(closed_form(&params, &init, 2).unwrap(), q("3/8"));
        assert_eq!(iterate_direct(&params, &init, 2).points[1], q("3/8"));
    }

    #[test]
    fn residues_outside_the_window_range() {
        // k = 2, n = 5 = 4*1 + 1 needs x_1 as its base.
        let (params, init) = setup(2, "3", &["1/2", "2", "-3/4"]);
        let direct = iterate_direct(&params, &init, 40);
        for n in 1..=40 {
            assert_eq!(
                closed_form(&params, &init, n).unwrap(),
                direct.points[n as usize - 1],
                "n={n}"
            );
        }
    }

    #[test]
    fn shifted_base_representation() {
        // x_{2kq+i} = x_{2kr+i} * prod_{j=r+1}^{q} (...) for any 0 <= r <= q.
        let (params, init) = setup(3, "1/3", &["1", "-1/2", "2", "3/4"]);
        let cf = ClosedForm::new(&params, &init).unwrap();
        let table = KernelTable::new(&params, cf.product(), 200);
        for n in 3u64..150 {
            let (qq, i) = decompose_index(3, n);
            for r in 0..=qq {
                let start_index = 6 * r as i64 + i;
                let mut acc = cf.term(start_index).unwrap();
                for j in r + 1..=qq {
                    acc = acc * cf.ratio_term(&table, j, i).unwrap();
                }
                assert_eq!(acc, cf.term(n as i64).unwrap());
            }
        }
    }

    #[test]
    fn kernel_root_surfaces() {
        let (params, init) = setup(1, "2", &["1", "-4/3"]);
        assert_eq!(closed_form(&params, &init, 1).unwrap(), q("3/2"));
        assert_eq!(closed_form(&params, &init, 2), Err(Error::KernelRoot(2)));
        assert_eq!(closed_form(&params, &init, 9), Err(Error::KernelRoot(2)));
        let cf = ClosedForm::new(&params, &init).unwrap();
        assert_eq!(cf.orbit(5), iterate_direct(&params, &init, 5));
    }

    #[test]
    fn zero_window_rejected() {
        let (params, init) = setup(2, "2", &["1", "0", "1"]);
        assert_eq!(closed_form(&params, &init, 4), Err(Error::ZeroInitial(-1)));
    }

    #[test]
    fn orbit_matches_terms() {
        let (params, init) = setup(2, "7/5", &["3/4", "-1/8", "5"]);
        let cf = ClosedForm::new(&params, &init).unwrap();
        let orbit = cf.orbit(60);
        for n in 1..=60 {
            assert_eq!(orbit.points[n - 1], cf.term(n as i64).unwrap());
        }
        assert_eq!(orbit, iterate_direct(&params, &init, 60));
    }

    #[test]
    fn periodic_product_gives_exact_cycle() {
        // P = 1 - a: x_0 = (1 - a) / x_{-k}.
        for a in ["3", "1/2", "5/2", "-4"] {
            let a_q = q(a);
            let x0 = (Rational::one() - a_q.clone()).checked_div(&q("3/8")).unwrap();
            let params = Params::new(2, a_q).unwrap();
            let init = InitWindow::new(2, vec![q("3/8"), q("-5/2"), x0]).unwrap();
            let orbit = ClosedForm::new(&params, &init).unwrap().orbit(80);
            for n in -2..=76 {
                assert_eq!(orbit.value(n), orbit.value(n + 4), "a={a} n={n}");
            }
        }
    }
}

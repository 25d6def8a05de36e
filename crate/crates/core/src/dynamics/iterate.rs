use std::io::{self, Write};

use crate::dynamics::{InitWindow, Params};
use crate::scalar::Scalar;

/// Which factor of `x_{n-k+1} (a + x_n x_{n-k})` vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularCause {
    /// `x_{n-k+1} = 0`, which can only happen downstream of a zero window value.
    ZeroWindow,
    /// `a + x_n x_{n-k} = 0`, equivalently `D_{n+1} = 0`.
    KernelRoot,
}

impl SingularCause {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularCause::ZeroWindow => "zero-window",
            SingularCause::KernelRoot => "kernel-root",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminator {
    Completed {
        steps: u64,
    },
    /// `x_step` could not be formed.
    Singular {
        step: u64,
        cause: SingularCause,
    },
}

impl Terminator {
    pub fn is_singular(&self) -> bool {
        matches!(self, Terminator::Singular { .. })
    }

    /// The trailing CSV comment line, without newline.
    pub fn comment(&self) -> String {
        match self {
            Terminator::Completed { .. } => "# terminator=completed".to_string(),
            Terminator::Singular { step, cause } => {
                format!("# terminator=singular step={step} cause={}", cause.as_str())
            }
        }
    }
}

/// A computed trajectory `x_1, x_2, ...` together with its window.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<T> {
    pub params: Params<T>,
    pub init: InitWindow<T>,
    /// `points[j]` is `x_{j+1}`.
    pub points: Vec<T>,
    pub terminator: Terminator,
}

impl<T: Scalar> Orbit<T> {
    /// `x_n` for `n >= -k`, if computed.
    pub fn value(&self, n: i64) -> Option<&T> {
        if n <= 0 {
            self.init.get(n)
        } else {
            self.points.get(n as usize - 1)
        }
    }

    /// Index of the last available term (0 when no step was taken).
    pub fn last_index(&self) -> i64 {
        self.points.len() as i64
    }

    /// `(n, x_n)` from `n = -k` through the last computed index.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        let k = self.params.k_i64();
        self.init
            .values()
            .iter()
            .chain(self.points.iter())
            .enumerate()
            .map(move |(slot, x)| (slot as i64 - k, x))
    }

    /// Writes the `n,x` CSV with its terminator comment.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        write_orbit_csv(out, self.indexed(), &self.terminator)
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

pub(crate) fn write_orbit_csv<'a, W, T, I>(out: &mut W, rows: I, terminator: &Terminator) -> io::Result<()>
where
    W: Write,
    T: Scalar,
    I: Iterator<Item = (i64, &'a T)>,
{
    writeln!(out, "n,x")?;
    for (n, x) in rows {
        writeln!(out, "{n},{}", x.to_text())?;
    }
    writeln!(out, "{}", terminator.comment())
}

/// Iterates the equation literally, `n_steps` times or until a denominator
/// vanishes.
///
/// The denominator is evaluated as `x_{n-k+1} (a + x_n x_{n-k})`. On the
/// float backend it counts as zero when it is below `1e-12` times the larger
/// of `|a x_{n-k+1}|` and `|x_n x_{n-k+1} x_{n-k}|`.
pub fn iterate_direct<T: Scalar>(params: &Params<T>, init: &InitWindow<T>, n_steps: u64) -> Orbit<T> {
    let k = params.k();
    let a = params.a();
    // history[j] = x_{j-k}
    let mut history: Vec<T> = Vec::with_capacity(k + 1 + n_steps as usize);
    history.extend_from_slice(init.values());
    let mut terminator = Terminator::Completed { steps: n_steps };

    for step in 1..=n_steps {
        // Forming x_{n+1} with n = step - 1, so x_n = history[n + k].
        let n = step as usize - 1;
        let x_n = &history[n + k];
        let x_lag = &history[n];
        let x_window = &history[n + 1];

        let Some(next) = T::recurrence_step(a, x_n, x_lag, x_window) else {
            let cause = if x_window.is_zero() {
                SingularCause::ZeroWindow
            } else {
                SingularCause::KernelRoot
            };
            terminator = Terminator::Singular { step, cause };
            break;
        };
        history.push(next);
    }

    let points = history.split_off(k + 1);
    Orbit {
        params: params.clone(),
        init: init.clone(),
        points,
        terminator,
    }
}

//! Truncation of the infinite mode sums.
//!
//! Every series in this crate has the shape `sum_n c_n(z) K_nu(k_n rho)` over
//! `n = 1, 1 + step, 1 + 2 step, ...`. Terms are accumulated in increasing `n`
//! with Neumaier summation. A sum stops once `consecutive_small` successive
//! terms fall below `rel_tol * |partial| + abs_floor` *and* a rigorous bound on
//! the remaining tail does too; the tail bound rests on `e^x K_nu(x)` being
//! decreasing, so `K_nu(x + delta) <= e^{-delta} K_nu(x)`.

use crate::model::SeriesControl;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeriesOutcome {
    pub sum: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub est_rel_error: f64,
}

/// Sums terms `n = 1, 1 + step, ...`.
///
/// `term(n)` returns `(value, envelope)` with `|value| <= envelope`; `tail(n, envelope)`
/// bounds the sum of `|value|` over all later terms. Values are in units of
/// `scale`, which is used only to translate `abs_floor`.
pub(crate) fn sum_modes<T, B>(
    ctl: &SeriesControl,
    step: u64,
    scale: f64,
    mut term: T,
    tail: B,
) -> SeriesOutcome
where
    T: FnMut(u64) -> (f64, f64),
    B: Fn(u64, f64) -> f64,
{
    let floor = if scale > 0.0 {
        ctl.abs_floor / scale
    } else {
        f64::INFINITY
    };
    let mut acc = CompensatedSum::default();
    let mut small = 0usize;
    let mut last = (1u64, f64::INFINITY);
    for i in 0..ctl.max_terms as u64 {
        let n = 1 + i * step;
        let (value, envelope) = term(n);
        acc.add(value);
        last = (n, envelope);
        let s = acc.value().abs();
        let threshold = ctl.rel_tol * s + floor;
        if value.abs() < threshold {
            small += 1;
        } else {
            small = 0;
        }
        if small >= ctl.consecutive_small {
            let rest = tail(n, envelope);
            if rest <= threshold {
                return SeriesOutcome {
                    sum: acc.value(),
                    terms_used: (i + 1) as usize,
                    converged: true,
                    est_rel_error: relative(rest, s),
                };
            }
        }
    }
    let s = acc.value();
    SeriesOutcome {
        sum: s,
        terms_used: ctl.max_terms,
        converged: false,
        est_rel_error: relative(tail(last.0, last.1), s.abs()),
    }
}

fn relative(err: f64, s: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else if s > 0.0 {
        err / s
    } else {
        f64::INFINITY
    }
}

/// `sum_{j>=1} r^j` for `0 <= r < 1`.
pub(crate) fn geometric_tail(r: f64) -> f64 {
    r / (1.0 - r)
}

/// `sum_{j>=1} j r^j` for `0 <= r < 1`.
pub(crate) fn weighted_geometric_tail(r: f64) -> f64 {
    r / ((1.0 - r) * (1.0 - r))
}

/// `sin(pi t)` with exact zeros at integer `t`.
pub(crate) fn sin_pi(t: f64) -> f64 {
    let mut r = t.rem_euclid(2.0);
    let sign = if r >= 1.0 {
        r -= 1.0;
        -1.0
    } else {
        1.0
    };
    if r > 0.5 {
        r = 1.0 - r;
    }
    sign * (std::f64::consts::PI * r).sin()
}

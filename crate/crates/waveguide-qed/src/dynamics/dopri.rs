//! Adaptive Dormand–Prince 5(4) stepper with dense output, specialised to
//! autonomous matrix-valued ODEs dY/dt = f(Y). Error control is entrywise
//! with a mixed absolute/relative tolerance and a max norm, so padding the
//! state with exactly-zero entries (larger Fock truncations) leaves the
//! accepted step sequence bit-identical.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

use super::IntegratorOptions;

// Dormand–Prince coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Difference between the 5th- and 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// Dense-output weights for the quartic interpolant.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const MAX_STEPS: usize = 200_000_000;
const MAX_CONSECUTIVE_REJECTS: usize = 60;

/// Integrates from `t_grid[0]` to the last grid point, calling
/// `emit(index, time, state)` once per grid point in order and
/// `post_step(state, time)` after each accepted step (the hook may nudge
/// the state by a relative ~1e-12, e.g. re-Hermitisation; anything larger
/// would invalidate the reused FSAL stage).
pub(crate) fn integrate<F, E, P>(
    f: F,
    y0: &ComplexMatrix,
    t_grid: &[f64],
    opts: &IntegratorOptions,
    mut emit: E,
    mut post_step: P,
) -> Result<()>
where
    F: Fn(&ComplexMatrix, &mut ComplexMatrix),
    E: FnMut(usize, f64, &ComplexMatrix) -> Result<()>,
    P: FnMut(&mut ComplexMatrix, f64) -> Result<()>,
{
    let n_grid = t_grid.len();
    let t_end = *t_grid.last().expect("non-empty grid");
    let mut t = t_grid[0];
    let mut y = y0.clone();

    let mut next = 0;
    while next < n_grid && t_grid[next] <= t {
        emit(next, t_grid[next], &y)?;
        next += 1;
    }
    if next >= n_grid {
        return Ok(());
    }

    let dim = y.dim();
    let mut k: Vec<ComplexMatrix> = (0..7).map(|_| ComplexMatrix::zeros(dim)).collect();
    let mut y_stage = ComplexMatrix::zeros(dim);
    let mut y_new = ComplexMatrix::zeros(dim);
    let mut err_mat = ComplexMatrix::zeros(dim);

    f(&y, &mut k[0]);
    let mut h = if opts.initial_step > 0.0 {
        opts.initial_step
    } else {
        guess_initial_step(&f, &y, &k[0], t_end - t, &mut y_stage, &mut y_new)
    };
    h = h.min(opts.max_step).min(t_end - t);

    let mut was_rejected = false;
    let mut consecutive_rejects = 0usize;
    let mut steps = 0usize;

    while next < n_grid {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Integration {
                t,
                reason: format!("step budget of {MAX_STEPS} exhausted"),
            });
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration {
                t,
                reason: format!("step size underflow (h = {h} ns)"),
            });
        }
        // Land exactly on the final grid point; stretch slightly short steps.
        let mut final_step = false;
        if t + 1.01 * h >= t_end {
            h = t_end - t;
            final_step = true;
        }

        // Stage evaluations (k1 carried over, FSAL).
        stage(&mut y_stage, &y, h, &[(A21, &k[0])]);
        f(&y_stage, &mut k[1]);
        stage(&mut y_stage, &y, h, &[(A31, &k[0]), (A32, &k[1])]);
        f(&y_stage, &mut k[2]);
        stage(
            &mut y_stage,
            &y,
            h,
            &[(A41, &k[0]), (A42, &k[1]), (A43, &k[2])],
        );
        f(&y_stage, &mut k[3]);
        stage(
            &mut y_stage,
            &y,
            h,
            &[(A51, &k[0]), (A52, &k[1]), (A53, &k[2]), (A54, &k[3])],
        );
        f(&y_stage, &mut k[4]);
        stage(
            &mut y_stage,
            &y,
            h,
            &[
                (A61, &k[0]),
                (A62, &k[1]),
                (A63, &k[2]),
                (A64, &k[3]),
                (A65, &k[4]),
            ],
        );
        f(&y_stage, &mut k[5]);
        stage(
            &mut y_new,
            &y,
            h,
            &[
                (A71, &k[0]),
                (A73, &k[2]),
                (A74, &k[3]),
                (A75, &k[4]),
                (A76, &k[5]),
            ],
        );
        f(&y_new, &mut k[6]);

        stage(
            &mut err_mat,
            &ComplexMatrix::zeros(dim),
            h,
            &[
                (E1, &k[0]),
                (E3, &k[2]),
                (E4, &k[3]),
                (E5, &k[4]),
                (E6, &k[5]),
                (E7, &k[6]),
            ],
        );
        let err = error_ratio(&err_mat, &y, &y_new, opts.abs_tol, opts.rel_tol);

        if err <= 1.0 {
            let t_new = if final_step { t_end } else { t + h };
            if next < n_grid && (final_step || t_grid[next] <= t_new) {
                sample_span(
                    &y, &y_new, &k, h, t, t_new, final_step, t_grid, &mut next, &mut emit,
                )?;
            }
            post_step(&mut y_new, t_new)?;
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6); // FSAL: derivative at the new state
            t = t_new;

            let fac = (SAFETY * err.max(1e-30).powf(-0.2)).clamp(FAC_MIN, FAC_MAX);
            let fac = if was_rejected { fac.min(1.0) } else { fac };
            h = (h * fac).min(opts.max_step);
            was_rejected = false;
            consecutive_rejects = 0;
        } else {
            let fac = (SAFETY * err.powf(-0.2)).max(FAC_MIN);
            h *= fac;
            was_rejected = true;
            consecutive_rejects += 1;
            if consecutive_rejects > MAX_CONSECUTIVE_REJECTS {
                return Err(Error::Integration {
                    t,
                    reason: format!("{MAX_CONSECUTIVE_REJECTS} consecutive rejected steps"),
                });
            }
        }
    }
    Ok(())
}

/// dst = base + h · Σ coef·k
fn stage(dst: &mut ComplexMatrix, base: &ComplexMatrix, h: f64, terms: &[(f64, &ComplexMatrix)]) {
    dst.clone_from(base);
    for (coef, kmat) in terms {
        dst.add_scaled_mut(h * coef, kmat);
    }
}

// Component-wise max magnitudes; avoids a square root per entry.
fn error_ratio(
    err: &ComplexMatrix,
    y: &ComplexMatrix,
    y_new: &ComplexMatrix,
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let mut worst = 0.0f64;
    for ((e, a), b) in err.data().iter().zip(y.data()).zip(y_new.data()) {
        let e_mag = e.re.abs().max(e.im.abs());
        let y_mag = a.re.abs().max(a.im.abs()).max(b.re.abs().max(b.im.abs()));
        let scale = abs_tol + rel_tol * y_mag;
        worst = worst.max(e_mag / scale);
    }
    worst
}

/// Emits every pending grid point inside (t_old, t_new] through the
/// quartic dense-output interpolant; θ is clamped so float rounding at
/// the interval edges cannot extrapolate.
#[allow(clippy::too_many_arguments)]
fn sample_span<E>(
    y: &ComplexMatrix,
    y_new: &ComplexMatrix,
    k: &[ComplexMatrix],
    h: f64,
    t_old: f64,
    t_new: f64,
    final_step: bool,
    t_grid: &[f64],
    next: &mut usize,
    emit: &mut E,
) -> Result<()>
where
    E: FnMut(usize, f64, &ComplexMatrix) -> Result<()>,
{
    let delta = y_new.sub(y);
    let rcont1 = y;
    let rcont2 = &delta;
    let mut rcont3 = k[0].scaled(h.into());
    rcont3 = rcont3.sub(&delta);
    let mut rcont4 = delta.clone();
    rcont4.add_scaled_mut(-h, &k[6]);
    rcont4 = rcont4.sub(&rcont3);
    let mut rcont5 = ComplexMatrix::zeros(y.dim());
    for (coef, kmat) in [
        (D1, &k[0]),
        (D3, &k[2]),
        (D4, &k[3]),
        (D5, &k[4]),
        (D6, &k[5]),
        (D7, &k[6]),
    ] {
        rcont5.add_scaled_mut(h * coef, kmat);
    }

    while *next < t_grid.len() && (final_step || t_grid[*next] <= t_new) {
        let target = t_grid[*next];
        let theta = ((target - t_old) / h).clamp(0.0, 1.0);
        let theta1 = 1.0 - theta;
        // y(θ) = r1 + θ(r2 + θ1(r3 + θ(r4 + θ1·r5)))
        let mut acc = rcont5.scaled(theta1.into());
        acc = acc.add(&rcont4);
        acc.scale_mut(theta.into());
        acc = acc.add(&rcont3);
        acc.scale_mut(theta1.into());
        acc = acc.add(rcont2);
        acc.scale_mut(theta.into());
        acc = acc.add(rcont1);
        emit(*next, target, &acc)?;
        *next += 1;
    }
    Ok(())
}

fn guess_initial_step<F>(
    f: &F,
    y: &ComplexMatrix,
    f0: &ComplexMatrix,
    span: f64,
    scratch_y: &mut ComplexMatrix,
    scratch_f: &mut ComplexMatrix,
) -> f64
where
    F: Fn(&ComplexMatrix, &mut ComplexMatrix),
{
    let d0 = y.max_abs();
    let d1 = f0.max_abs();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    }
    .min(span);
    scratch_y.clone_from(y);
    scratch_y.add_scaled_mut(h0, f0);
    f(scratch_y, scratch_f);
    let d2 = scratch_f.sub(f0).max_abs() / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}

//! Bound states of the radial equation u'' + [2 mu (E - V) - l(l+1)/r^2] u = 0
//! by Numerov integration with two-sided matching.
//!
//! Outward and inward sweeps are glued at the outer classical turning point;
//! eigenvalues are bracketed by node counting and polished with a secant
//! iteration on the derivative mismatch at the matching index.

use crate::error::{CoreError, Result};
use crate::params::{Channel, ModelParams};
use crate::quarkmodel::potential::{contact_prefactor, radial_coefficient};

/// Uniform grid r_i = i*h for i = 0..=n, with r_n = r_max.
#[derive(Debug, Clone, Copy)]
pub struct NumerovGrid {
    pub h: f64,
    pub r_max: f64,
}

impl Default for NumerovGrid {
    fn default() -> Self {
        NumerovGrid { h: 1e-3, r_max: 15.0 }
    }
}

impl NumerovGrid {
    fn n_points(&self) -> usize {
        (self.r_max / self.h).round() as usize + 1
    }
}

/// A normalized radial eigenfunction u(r) = r R(r) on the grid, with
/// sum u_i^2 h = 1 and u > 0 near the origin.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub energy: f64,
    pub h: f64,
    pub u: Vec<f64>,
}

impl RadialSolution {
    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// <u | v> = sum u_i v_i h; radial states of the same grid.
    pub fn overlap(&self, other: &RadialSolution) -> f64 {
        assert_eq!(self.u.len(), other.u.len());
        assert_eq!(self.h, other.h);
        self.u.iter().zip(&other.u).map(|(a, b)| a * b).sum::<f64>() * self.h
    }

    /// <u | r | v> in fm.
    pub fn dipole_overlap(&self, other: &RadialSolution) -> f64 {
        assert_eq!(self.u.len(), other.u.len());
        assert_eq!(self.h, other.h);
        self.u
            .iter()
            .zip(&other.u)
            .enumerate()
            .map(|(i, (a, b))| a * b * (i as f64 * self.h))
            .sum::<f64>()
            * self.h
    }

    pub fn norm(&self) -> f64 {
        (self.u.iter().map(|x| x * x).sum::<f64>() * self.h).sqrt()
    }

    fn interior_nodes(&self) -> usize {
        let peak = self.u.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        let floor = 1e-9 * peak;
        let mut count = 0;
        let mut last = 0.0;
        for &x in &self.u {
            if x.abs() < floor {
                continue;
            }
            if last != 0.0 && (x > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = x;
        }
        count
    }
}

fn g_factors(params: &ModelParams, channel: Channel, e: f64, grid: &NumerovGrid) -> Vec<f64> {
    let n = grid.n_points();
    let mut g = vec![f64::NAN; n];
    for (i, gi) in g.iter_mut().enumerate().skip(1) {
        let r = i as f64 * grid.h;
        *gi = 1.0 + grid.h * grid.h * radial_coefficient(params, channel, e, r) / 12.0;
    }
    g
}

/// Power-series expansion of the regular solution around the origin,
/// u(r) = sum_{m >= l+1} c_m r^m, for the Coulomb + linear + Gaussian
/// potential. Seeding the first two grid nodes from this series removes the
/// accuracy loss the Coulomb cusp would otherwise inflict on the sweep
/// (the h^6/r^4 local truncation error is dominated by the nodes nearest
/// the origin).
fn series_start(params: &ModelParams, channel: Channel, e: f64, r: f64) -> f64 {
    let l = channel.l() as usize;
    let mu2 = 2.0 * params.mu_fm();
    let s2 = params.sigma_fm() * params.sigma_fm();
    let contact = channel.spin_spin_factor() * contact_prefactor(params);
    // u'' = W u with W = -A/r + W0 + W1 r + W2 r^2 + W4 r^4 + l(l+1)/r^2
    let a = mu2 * params.coulomb_coeff();
    let w0 = mu2 * (contact - e);
    let w1 = mu2 * params.b_conf_fm();
    let w2 = -mu2 * contact * s2;
    let w4 = mu2 * contact * s2 * s2 / 2.0;
    let mut c = [0.0; 9]; // c[k] multiplies r^{l+1+k}
    c[0] = 1.0;
    let at = |c: &[f64; 9], k: isize| if k < 0 { 0.0 } else { c[k as usize] };
    for k in 1..9isize {
        let m = (l as isize + 1 + k) as f64;
        let denom = m * (m - 1.0) - (l * (l + 1)) as f64;
        c[k as usize] = (-a * at(&c, k - 1) + w0 * at(&c, k - 2) + w1 * at(&c, k - 3)
            + w2 * at(&c, k - 4)
            + w4 * at(&c, k - 6))
            / denom;
    }
    c.iter().rev().fold(0.0, |acc, &ck| acc * r + ck) * r.powi(l as i32 + 1)
}

/// Outward Numerov sweep up to index `upto` inclusive, seeded near the
/// origin with the series expansion of the regular solution. Rescales when
/// the classically forbidden tail overflows; node structure and matching
/// ratios are scale-invariant.
fn shoot_outward(
    params: &ModelParams,
    channel: Channel,
    e: f64,
    g: &[f64],
    h: f64,
    upto: usize,
) -> Vec<f64> {
    let mut u = vec![0.0; upto + 1];
    if upto >= 1 {
        u[1] = series_start(params, channel, e, h);
    }
    if upto >= 2 {
        u[2] = series_start(params, channel, e, 2.0 * h);
    }
    for i in 2..upto {
        u[i + 1] = ((12.0 - 10.0 * g[i]) * u[i] - g[i - 1] * u[i - 1]) / g[i + 1];
        if u[i + 1].abs() > 1e250 {
            for x in u[..=i + 1].iter_mut() {
                *x *= 1e-200;
            }
        }
    }
    u
}

/// Inward sweep from r_max down to index `downto`, seeded with a decaying
/// tail; rescaled on overflow like the outward sweep.
fn shoot_inward(g: &[f64], downto: usize) -> Vec<f64> {
    let n = g.len();
    let mut u = vec![0.0; n];
    u[n - 1] = 1e-280;
    u[n - 2] = 1e-279;
    for i in (downto + 1..=n - 2).rev() {
        u[i - 1] = ((12.0 - 10.0 * g[i]) * u[i] - g[i + 1] * u[i + 1]) / g[i - 1];
        if u[i - 1].abs() > 1e250 {
            for x in u[i - 1..].iter_mut() {
                *x *= 1e-200;
            }
        }
    }
    u
}

fn count_nodes(params: &ModelParams, channel: Channel, e: f64, grid: &NumerovGrid) -> usize {
    let g = g_factors(params, channel, e, grid);
    let u = shoot_outward(params, channel, e, &g, grid.h, g.len() - 1);
    let mut count = 0;
    for i in 2..u.len() {
        if u[i] != 0.0 && u[i - 1] != 0.0 && (u[i] > 0.0) != (u[i - 1] > 0.0) {
            count += 1;
        }
    }
    count
}

/// Outer classical turning point: the last grid index where the radial
/// coefficient is positive.
fn turning_index(g: &[f64]) -> Option<usize> {
    // g > 1 exactly where f > 0
    (1..g.len()).rev().find(|&i| g[i] > 1.0)
}

struct Matched {
    discrepancy: f64,
    u: Vec<f64>,
}

fn match_at_turning_point(
    params: &ModelParams,
    channel: Channel,
    e: f64,
    grid: &NumerovGrid,
) -> Option<Matched> {
    let g = g_factors(params, channel, e, grid);
    let n = g.len();
    let m = turning_index(&g)?;
    if m < 3 || m > n - 3 {
        return None;
    }
    let uo = shoot_outward(params, channel, e, &g, grid.h, m + 1);
    let ui = shoot_inward(&g, m - 1);
    if uo[m] == 0.0 || ui[m] == 0.0 {
        return None;
    }
    let scale = uo[m] / ui[m];
    let d_out = uo[m + 1] - uo[m - 1];
    let d_in = scale * (ui[m + 1] - ui[m - 1]);
    let discrepancy = (d_out - d_in) / (2.0 * grid.h) / uo[m];
    let mut u = vec![0.0; n];
    u[..=m].copy_from_slice(&uo[..=m]);
    for i in m..n {
        u[i] = scale * ui[i];
    }
    Some(Matched { discrepancy, u })
}

/// Lowest `n_levels` bound states of the channel potential.
pub fn solve_radial(
    params: &ModelParams,
    channel: Channel,
    n_levels: usize,
    grid: &NumerovGrid,
) -> Result<Vec<RadialSolution>> {
    let (e_floor, e_ceil) = (-5.0, 15.0);
    let mut out = Vec::with_capacity(n_levels);
    for level in 0..n_levels {
        let fail = |reason: &str| CoreError::BoundStateSearch {
            l: channel.l(),
            level,
            reason: reason.to_string(),
        };
        if count_nodes(params, channel, e_ceil, grid) <= level {
            return Err(fail("search ceiling holds too few nodes; raise r_max or the energy window"));
        }
        // bisect the node-count step: below the eigenvalue the outward
        // solution has `level` interior nodes, above it one more
        let (mut lo, mut hi) = (e_floor, e_ceil);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if count_nodes(params, channel, mid, grid) > level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // secant polish on the matching discrepancy
        let mut e0 = lo;
        let mut e1 = lo + 1e-9;
        let mut best: Option<(f64, Matched)> = None;
        let mut d0 = match_at_turning_point(params, channel, e0, grid)
            .ok_or_else(|| fail("no interior turning point at bracket energy"))?
            .discrepancy;
        for _ in 0..40 {
            let m1 = match match_at_turning_point(params, channel, e1, grid) {
                Some(m) => m,
                None => break,
            };
            let d1 = m1.discrepancy;
            let better = best.as_ref().map_or(true, |(d, _)| d1.abs() < d.abs());
            if better {
                best = Some((d1, m1));
            }
            if (e1 - e0).abs() < 1e-13 || d1 == d0 || !d1.is_finite() {
                break;
            }
            let e2 = e1 - d1 * (e1 - e0) / (d1 - d0);
            e0 = e1;
            d0 = d1;
            // keep the update inside the trust region around the bracket
            e1 = if e2.is_finite() && (e2 - lo).abs() < 0.5 { e2 } else { break };
        }
        let (_, matched) = best.ok_or_else(|| fail("matching iteration produced no candidate"))?;
        let mut sol = RadialSolution {
            energy: e1,
            h: grid.h,
            u: matched.u,
        };
        let norm = sol.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(fail("degenerate wavefunction norm"));
        }
        for x in sol.u.iter_mut() {
            *x /= norm;
        }
        if sol.interior_nodes() != level {
            return Err(fail("converged state has wrong node count"));
        }
        out.push(sol);
    }
    Ok(out)
}

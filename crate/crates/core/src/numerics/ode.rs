//! Dormand–Prince 5(4) integrator with its native fourth-order dense output.

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for OdeSpec {
    fn default() -> Self {
        OdeSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            initial_step: 1e-3,
            max_steps: 100_000,
        }
    }
}

/// Accepted steps of an integration: nodes, states and slopes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub r: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub dy: Vec<Vec<f64>>,
    /// Per-interval dense-output coefficient (Hairer's `rcont5`).
    pub dense: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, &[f64])> {
        Some((*self.r.last()?, self.y.last()?.as_slice()))
    }

    /// Dense output. `None` outside the integrated interval.
    pub fn eval(&self, r: f64) -> Option<Vec<f64>> {
        let n = self.r.len();
        if n == 0 {
            return None;
        }
        let (lo, hi) = if self.r[0] <= self.r[n - 1] {
            (self.r[0], self.r[n - 1])
        } else {
            (self.r[n - 1], self.r[0])
        };
        if r < lo || r > hi {
            return None;
        }
        if n == 1 {
            return Some(self.y[0].clone());
        }
        let forward = self.r[n - 1] >= self.r[0];
        // first node index whose successor lies beyond r
        let k = self.r.partition_point(|&ri| if forward { ri <= r } else { ri >= r });
        let i = k.clamp(1, n - 1) - 1;
        let (r0, r1) = (self.r[i], self.r[i + 1]);
        let h = r1 - r0;
        let s = (r - r0) / h;
        let (y0, y1) = (&self.y[i], &self.y[i + 1]);
        Some(
            (0..y0.len())
                .map(|j| {
                    let c2 = y1[j] - y0[j];
                    let c3 = h * self.dy[i][j] - c2;
                    let c4 = c2 - h * self.dy[i + 1][j] - c3;
                    let c5 = self.dense[i][j];
                    y0[j] + s * (c2 + (1.0 - s) * (c3 + s * (c4 + (1.0 - s) * c5)))
                })
                .collect(),
        )
    }
}

/// Integration failure with the part of the trajectory computed so far.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeFailure {
    pub at: f64,
    pub reason: String,
    pub partial: Trajectory,
}

impl From<OdeFailure> for Error {
    fn from(f: OdeFailure) -> Self {
        Error::Integration {
            at: f.at,
            reason: f.reason,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];
// fifth-order minus fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = rhs(r, y)` from `r0` to `r1` (either direction).
///
/// `rhs` writes the derivative into its third argument and may refuse a
/// state by returning `Err(reason)`, which aborts the integration.
pub fn ode_integrate<F>(
    rhs: F,
    y0: &[f64],
    r0: f64,
    r1: f64,
    spec: &OdeSpec,
) -> Result<Trajectory, OdeFailure>
where
    F: Fn(f64, &[f64], &mut [f64]) -> Result<(), String>,
{
    let dim = y0.len();
    let mut traj = Trajectory::default();
    let fail = |at: f64, reason: String, traj: &Trajectory| OdeFailure {
        at,
        reason,
        partial: traj.clone(),
    };
    if !(spec.rel_tol > 0.0 && spec.abs_tol > 0.0 && spec.initial_step > 0.0) {
        return Err(fail(r0, "invalid ODE spec".into(), &traj));
    }
    let dir = if r1 >= r0 { 1.0 } else { -1.0 };
    let span = (r1 - r0).abs();
    let mut r = r0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    rhs(r, &y, &mut k[0]).map_err(|e| fail(r, e, &traj))?;
    traj.r.push(r);
    traj.y.push(y.clone());
    traj.dy.push(k[0].clone());
    if span == 0.0 {
        return Ok(traj);
    }
    let mut h = spec.initial_step.min(span);
    let mut tmp = vec![0.0; dim];
    let mut ynew = vec![0.0; dim];
    let mut steps = 0usize;
    while (r1 - r) * dir > 0.0 {
        if steps >= spec.max_steps {
            return Err(fail(r, "maximum step count reached".into(), &traj));
        }
        steps += 1;
        let last = h >= (r1 - r).abs();
        if last {
            h = (r1 - r).abs();
        }
        let hs = h * dir;
        let mut stage_err = None;
        for s in 1..7 {
            for j in 0..dim {
                let mut acc = y[j];
                for (l, kl) in k.iter().enumerate().take(s) {
                    acc += hs * A[s][l] * kl[j];
                }
                tmp[j] = acc;
            }
            if let Err(e) = rhs(r + C[s] * hs, &tmp, &mut k[s]) {
                stage_err = Some(e);
                break;
            }
        }
        // stage 7 evaluates at the fifth-order solution, which is `tmp`
        let mut err = 0.0;
        if stage_err.is_none() {
            ynew.copy_from_slice(&tmp);
            for j in 0..dim {
                let mut e = 0.0;
                for (l, kl) in k.iter().enumerate() {
                    e += E[l] * kl[j];
                }
                let sc = spec.abs_tol + spec.rel_tol * y[j].abs().max(ynew[j].abs());
                let q = hs * e / sc;
                err += q * q;
            }
            err = (err / dim.max(1) as f64).sqrt();
        }
        if stage_err.is_some() || !err.is_finite() {
            h *= 0.25;
            if h < 1e-14 * span.max(r.abs()) {
                let reason = stage_err.unwrap_or_else(|| "non-finite state".into());
                return Err(fail(r, reason, &traj));
            }
            continue;
        }
        if err <= 1.0 {
            r = if last { r1 } else { r + hs };
            y.copy_from_slice(&ynew);
            traj.dense.push(
                (0..dim)
                    .map(|j| hs * k.iter().zip(D.iter()).map(|(kl, d)| d * kl[j]).sum::<f64>())
                    .collect(),
            );
            // FSAL: the seventh stage is the slope at the new point
            let k7 = k[6].clone();
            k[0].copy_from_slice(&k7);
            traj.r.push(r);
            traj.y.push(y.clone());
            traj.dy.push(k7);
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            if h < 1e-14 * span.max(r.abs()) {
                return Err(fail(r, "step size underflow".into(), &traj));
            }
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let tr = ode_integrate(
            |_, y, d| {
                d[0] = y[0];
                Ok(())
            },
            &[1.0],
            0.0,
            1.0,
            &OdeSpec::default(),
        )
        .unwrap();
        let (r, y) = tr.last().unwrap();
        assert_eq!(r, 1.0);
        assert!((y[0] - std::f64::consts::E).abs() < 1e-8 * std::f64::consts::E);
    }

    #[test]
    fn gaussian_profile() {
        let (d0, c1) = (2.0, 1.7);
        let tr = ode_integrate(
            |r, y, d| {
                d[0] = -r * y[0] / (2.0 * d0);
                Ok(())
            },
            &[c1],
            0.0,
            3.0,
            &OdeSpec::default(),
        )
        .unwrap();
        for i in 0..=30 {
            let r = 0.1 * i as f64;
            let exact = c1 * (-r * r / 8.0).exp();
            let got = tr.eval(r).unwrap()[0];
            assert!((got - exact).abs() < 1e-7 * exact, "r={r}");
        }
    }

    #[test]
    fn constant_solution() {
        let tr = ode_integrate(
            |_, _, d| {
                d[0] = 0.0;
                Ok(())
            },
            &[3.5],
            1.0,
            0.2,
            &OdeSpec::default(),
        )
        .unwrap();
        assert!(tr.y.iter().all(|y| y[0] == 3.5));
        assert_eq!(tr.eval(0.5).unwrap()[0], 3.5);
    }

    #[test]
    fn refused_state_reports_location() {
        let res = ode_integrate(
            |r, _, d| {
                if r > 0.5 {
                    return Err("wall".into());
                }
                d[0] = 1.0;
                Ok(())
            },
            &[0.0],
            0.0,
            1.0,
            &OdeSpec::default(),
        );
        let f = res.unwrap_err();
        assert!(f.at <= 0.5 && f.at > 0.49, "{}", f.at);
        assert!(!f.partial.r.is_empty());
    }
}

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::graph::MultiGraph;
use super::polynomial::{is_primitive_log_divergent, kirchhoff_polynomial};
use crate::error::{Error, Result};
use crate::numkernel::BigReal;

/// Samples are split into this many independently seeded streams.
pub const SHARDS: usize = 64;

/// Default exponent `p` in `α = (x/(1-x))^p`.
pub const MAP_EXPONENT: f64 = 2.5;

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Running mean and centred second moment, mergeable in a fixed order.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return f64::INFINITY;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

/// Uniform in the open interval (0, 1).
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn shard_sizes(samples: u64) -> Vec<u64> {
    let base = samples / SHARDS as u64;
    let extra = (samples % SHARDS as u64) as usize;
    (0..SHARDS).map(|i| base + u64::from(i < extra)).collect()
}

/// Runs `f` on every shard in parallel and merges in shard order, so the
/// result does not depend on scheduling.
fn sharded<F>(samples: u64, seed: u64, f: F) -> Result<Moments>
where
    F: Fn(usize, u64, &mut ChaCha8Rng) -> Result<Moments> + Sync,
{
    let parts: Vec<Result<Moments>> = shard_sizes(samples)
        .into_par_iter()
        .enumerate()
        .map(|(i, n)| f(i, n, &mut shard_rng(seed, i)))
        .collect();
    let mut acc = Moments::default();
    for p in parts {
        acc = acc.merge(p?);
    }
    Ok(acc)
}

/// Monte Carlo estimate of `∫ dα_1..dα_{n-1} / Ψ_G(α_1, .., α_{n-1}, 1)^2`.
pub fn period_mc(g: &MultiGraph, samples: u64, seed: u64) -> Result<PeriodEstimate> {
    period_mc_with(g, samples, seed, MAP_EXPONENT)
}

/// [`period_mc`] with an explicit map exponent; `p = 1` is the plain
/// `x/(1-x)` substitution.
pub fn period_mc_with(g: &MultiGraph, samples: u64, seed: u64, p: f64) -> Result<PeriodEstimate> {
    if !is_primitive_log_divergent(g)? {
        return Err(Error::NotPrimitive);
    }
    if samples < 2 {
        return Err(Error::Input("need at least two samples".into()));
    }
    let psi = kirchhoff_polynomial(g)?;
    let n = g.edge_count();
    let dims = n - 1;
    // Each monomial as the list of variables it contains.
    let cotrees: Vec<Vec<usize>> = psi
        .terms()
        .map(|(e, _)| (0..n).filter(|&i| e[i] > 0).collect())
        .collect();
    let lnp = p.ln();

    let m = sharded(samples, seed, |shard, count, rng| {
        let mut mom = Moments::default();
        let mut x = vec![0.0; dims];
        let mut la = vec![0.0; n];
        let mut s = vec![0.0; cotrees.len()];
        for k in 0..count {
            let mut lj = 0.0;
            for i in 0..dims {
                x[i] = open_unit(rng);
                let (lx, l1x) = (x[i].ln(), (-x[i]).ln_1p());
                la[i] = p * (lx - l1x);
                lj += lnp + la[i] - lx - l1x;
            }
            // The section variable α_n is fixed to 1.
            la[n - 1] = 0.0;
            let mut top = f64::NEG_INFINITY;
            for (t, vars) in s.iter_mut().zip(&cotrees) {
                *t = vars.iter().map(|&v| la[v]).sum();
                top = top.max(*t);
            }
            let ln_psi = top + s.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
            let f = (lj - 2.0 * ln_psi).exp();
            if !f.is_finite() {
                return Err(Error::NonFiniteSample {
                    shard,
                    sample: k,
                    point: x.clone(),
                });
            }
            mom.push(f);
        }
        Ok(mom)
    })?;
    Ok(PeriodEstimate {
        estimate: m.mean,
        stderr: m.stderr(),
        samples,
        seed,
    })
}

/// Nearest integer multiple of `base` and the distance to it in standard
/// errors.
pub fn snap_to_multiple(est: &PeriodEstimate, base: &BigReal) -> (i64, f64) {
    let b = base.to_f64();
    let m = (est.estimate / b).round() as i64;
    let resid = (est.estimate - m as f64 * b).abs();
    let sigmas = if est.stderr > 0.0 {
        resid / est.stderr
    } else if resid == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    (m, sigmas)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfTestCase {
    pub name: String,
    pub estimate: f64,
    pub stderr: f64,
    pub truth: f64,
}

impl SelfTestCase {
    pub fn sigmas(&self) -> f64 {
        let d = (self.estimate - self.truth).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }

    pub fn passed(&self) -> bool {
        self.sigmas() <= 3.0
    }
}

/// Hit-or-miss estimates of elementary periods: `k^(1/n)` as the length of
/// `{0 < x, x^n < k}` and `π` as the area of the unit disc.
pub fn integrator_selftest(samples: u64, seed: u64) -> Result<Vec<SelfTestCase>> {
    if samples < 10_000 {
        return Err(Error::Input("selftest needs at least 1e4 samples".into()));
    }
    let mut out = Vec::new();
    for (k, n) in [(2u32, 2u32), (5, 3), (1, 7)] {
        let width = f64::from(k.max(1));
        let m = sharded(samples, seed, |_, count, rng| {
            let mut mom = Moments::default();
            for _ in 0..count {
                let x = open_unit(rng) * width;
                mom.push(if x.powi(n as i32) < f64::from(k) {
                    width
                } else {
                    0.0
                });
            }
            Ok(mom)
        })?;
        out.push(SelfTestCase {
            name: format!("{k}^(1/{n})"),
            estimate: m.mean,
            stderr: m.stderr(),
            truth: f64::from(k).powf(1.0 / f64::from(n)),
        });
    }
    let m = sharded(samples, seed, |_, count, rng| {
        let mut mom = Moments::default();
        for _ in 0..count {
            let x = 2.0 * open_unit(rng) - 1.0;
            let y = 2.0 * open_unit(rng) - 1.0;
            mom.push(if x * x + y * y <= 1.0 { 4.0 } else { 0.0 });
        }
        Ok(mom)
    })?;
    out.push(SelfTestCase {
        name: "pi".into(),
        estimate: m.mean,
        stderr: m.stderr(),
        truth: std::f64::consts::PI,
    });
    Ok(out)
}

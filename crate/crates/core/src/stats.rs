//! Distances between distributions and empirical summaries.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{substream, DOMAIN_BOOTSTRAP};

pub const PMF_TOL: f64 = 1e-10;
pub const MAX_JACKKNIFE_BLOCKS: usize = 10_000;
pub const MAX_MOMENT_ORDER: usize = 8;

/// Probabilities on integer support.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Pmf {
    probs: BTreeMap<i64, f64>,
}

impl Pmf {
    /// Normalized frequencies of `(value, count)` pairs.
    pub fn from_counts<I: IntoIterator<Item = (i64, u64)>>(counts: I) -> Self {
        let counts: Vec<_> = counts.into_iter().collect();
        let total: u64 = counts.iter().map(|c| c.1).sum();
        let mut probs = BTreeMap::new();
        for (k, c) in counts {
            *probs.entry(k).or_default() += c as f64 / total as f64;
        }
        Pmf { probs }
    }

    /// Takes probabilities as given; they need not sum to one (truncated laws).
    pub fn from_probs<I: IntoIterator<Item = (i64, f64)>>(probs: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, p) in probs {
            *map.entry(k).or_default() += p;
        }
        Pmf { probs: map }
    }

    pub fn prob(&self, k: i64) -> f64 {
        self.probs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs.iter().map(|(&k, &p)| (k, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, p)| k as f64 * p).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.probs.values().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidInput("negative or NaN probability".into()));
        }
        let total = self.total();
        if (total - 1.0).abs() > PMF_TOL {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}")));
        }
        Ok(())
    }
}

/// `½ Σ |p(x) − q(x)|` over the union of supports.
pub fn tv_distance(p: &Pmf, q: &Pmf) -> f64 {
    let mut keys: Vec<i64> = p.probs.keys().chain(q.probs.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    0.5 * keys.iter().map(|&k| (p.prob(k) - q.prob(k)).abs()).sum::<f64>()
}

/// `sup_x |F_n(x) − F(x)|`, checking the gap on both sides of every jump of
/// the empirical cdf.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("KS statistic of an empty sample".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        d = d.max((f - i as f64 / n).abs()).max((j as f64 / n - f).abs());
        i = j;
    }
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov distance `sup_x |F_a(x) − F_b(x)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("KS statistic of an empty sample".into()));
    }
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(|x, y| x.total_cmp(y));
    xb.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < xa.len() || j < xb.len() {
        let x = match (xa.get(i), xb.get(j)) {
            (Some(&p), Some(&q)) => p.min(q),
            (Some(&p), None) => p,
            (None, Some(&q)) => q,
            (None, None) => unreachable!(),
        };
        while i < xa.len() && xa[i] == x {
            i += 1;
        }
        while j < xb.len() && xb[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

/// Moments of orders `1..=k_max`; index `k − 1` holds order `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub raw: Vec<Estimate>,
    pub central: Vec<Estimate>,
}

/// Plug-in raw and central moments with delete-one-block jackknife errors.
pub fn empirical_moments(samples: &[f64], k_max: usize) -> Result<Moments> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("moments of an empty sample".into()));
    }
    if k_max == 0 || k_max > MAX_MOMENT_ORDER {
        return Err(Error::InvalidInput(format!("moment order {k_max} outside 1..={MAX_MOMENT_ORDER}")));
    }
    let n = samples.len();
    let shift = samples.iter().sum::<f64>() / n as f64;
    let blocks = n.min(MAX_JACKKNIFE_BLOCKS);
    // Per block: count, power sums of x and of x − shift.
    let mut count = vec![0usize; blocks];
    let mut raw_sums = vec![vec![0.0f64; k_max + 1]; blocks];
    let mut shifted_sums = vec![vec![0.0f64; k_max + 1]; blocks];
    for (i, &x) in samples.iter().enumerate() {
        let b = i * blocks / n;
        count[b] += 1;
        let (mut px, mut py) = (1.0, 1.0);
        for k in 1..=k_max {
            px *= x;
            py *= x - shift;
            raw_sums[b][k] += px;
            shifted_sums[b][k] += py;
        }
    }
    let sum_all = |sums: &[Vec<f64>]| -> Vec<f64> {
        (0..=k_max).map(|k| sums.iter().map(|s| s[k]).sum()).collect()
    };
    let raw_total = sum_all(&raw_sums);
    let shifted_total = sum_all(&shifted_sums);

    let estimates = |raw: &[f64], shifted: &[f64], m: f64| -> (Vec<f64>, Vec<f64>) {
        let raw_m: Vec<f64> = (1..=k_max).map(|k| raw[k] / m).collect();
        let s: Vec<f64> = (0..=k_max).map(|k| if k == 0 { 1.0 } else { shifted[k] / m }).collect();
        let mu = s[1];
        let central: Vec<f64> = (1..=k_max)
            .map(|k| {
                (0..=k)
                    .map(|j| binom(k, j) * s[j] * (-mu).powi((k - j) as i32))
                    .sum()
            })
            .collect();
        (raw_m, central)
    };
    let (raw_full, central_full) = estimates(&raw_total, &shifted_total, n as f64);

    let mut raw_se = vec![0.0; k_max];
    let mut central_se = vec![0.0; k_max];
    if blocks > 1 {
        let mut raw_leave = vec![Vec::with_capacity(blocks); k_max];
        let mut central_leave = vec![Vec::with_capacity(blocks); k_max];
        for b in 0..blocks {
            let raw: Vec<f64> = (0..=k_max).map(|k| raw_total[k] - raw_sums[b][k]).collect();
            let shifted: Vec<f64> = (0..=k_max).map(|k| shifted_total[k] - shifted_sums[b][k]).collect();
            let (r, c) = estimates(&raw, &shifted, (n - count[b]) as f64);
            for k in 0..k_max {
                raw_leave[k].push(r[k]);
                central_leave[k].push(c[k]);
            }
        }
        let jack = |v: &[f64]| -> f64 {
            let bf = v.len() as f64;
            let mean = v.iter().sum::<f64>() / bf;
            ((bf - 1.0) / bf * v.iter().map(|x| (x - mean).powi(2)).sum::<f64>()).sqrt()
        };
        for k in 0..k_max {
            raw_se[k] = jack(&raw_leave[k]);
            central_se[k] = jack(&central_leave[k]);
        }
    }
    let zip = |v: Vec<f64>, se: Vec<f64>| -> Vec<Estimate> {
        v.into_iter().zip(se).map(|(value, se)| Estimate { value, se }).collect()
    };
    Ok(Moments { raw: zip(raw_full, raw_se), central: zip(central_full, central_se) })
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Bootstrap standard error of the sample mean.
pub fn bootstrap_mean_se(values: &[f64], resamples: usize, seed: u64) -> Result<f64> {
    if values.is_empty() || resamples < 2 {
        return Err(Error::InvalidInput("bootstrap needs data and at least 2 resamples".into()));
    }
    let n = values.len();
    let means: Vec<f64> = (0..resamples as u64)
        .map(|r| {
            let mut rng = substream(seed, DOMAIN_BOOTSTRAP, r);
            (0..n).map(|_| values[rng.random_range(0..n)]).sum::<f64>() / n as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / resamples as f64;
    Ok((means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (resamples - 1) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, StandardNormal};
    use statrs::distribution::{ContinuousCDF, Normal};

    fn pmf(pairs: &[(i64, f64)]) -> Pmf {
        Pmf::from_probs(pairs.iter().copied())
    }

    #[test]
    fn tv_examples() {
        let p = pmf(&[(0, 0.3), (1, 0.7)]);
        assert_eq!(tv_distance(&p, &p), 0.0);
        assert_eq!(tv_distance(&pmf(&[(0, 1.0)]), &pmf(&[(1, 1.0)])), 1.0);
        let e = (-1.0f64).exp();
        let poisson = Pmf::from_probs((0..40).map(|k| {
            (k, e / (1..=k).map(|i| i as f64).product::<f64>())
        }));
        let binom = pmf(&[(0, 0.25), (1, 0.5), (2, 0.25)]);
        // Direct sum: |.25 − e⁻¹| + |.5 − e⁻¹| + |.25 − e⁻¹/2| + (1 − 5e⁻¹/2), halved.
        let direct = 0.5 * ((0.25 - e).abs() + (0.5 - e).abs() + (0.25 - e / 2.0).abs() + (1.0 - 2.5 * e));
        assert!((tv_distance(&binom, &poisson) - direct).abs() < 1e-12);
        assert!((direct - 0.19818).abs() < 1e-5);
    }

    #[test]
    fn ks_examples() {
        let normal = Normal::new(0.0, 1.0).unwrap();
        let zeros = vec![0.0; 10];
        assert!((ks_statistic(&zeros, |x| normal.cdf(x)).unwrap() - 0.5).abs() < 1e-12);
        assert!(ks_statistic(&[], |x| normal.cdf(x)).is_err());
        let mut rng = substream(1, 0, 0);
        let xs: Vec<f64> = (0..100_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        assert!(ks_statistic(&xs, |x| normal.cdf(x)).unwrap() < 0.01);
        // Invariance under a strictly increasing transform.
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let a = ks_statistic(&xs[..1000], |x| normal.cdf(x)).unwrap();
        let b = ks_statistic(&ys[..1000], |y| normal.cdf(y.ln())).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn ks_two_sample_basics() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&[0.0], &[1.0]).unwrap(), 1.0);
        assert!((ks_two_sample(&[0.0, 0.0, 1.0], &[0.0, 1.0, 1.0]).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn moment_examples() {
        let m = empirical_moments(&[2.5; 100], 4).unwrap();
        assert!(m.central.iter().all(|e| e.value.abs() < 1e-12));
        let alt: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert!((empirical_moments(&alt, 2).unwrap().raw[1].value - 1.0).abs() < 1e-12);
        let mut rng = substream(2, 0, 0);
        let xs: Vec<f64> = (0..1_000_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let m = empirical_moments(&xs, 4).unwrap();
        assert!((m.central[3].value - 3.0).abs() < 0.05);
        assert!(m.central[3].se > 0.0 && m.central[3].se < 0.05);
        assert!(empirical_moments(&xs, 9).is_err());
    }

    #[test]
    fn jackknife_se_of_mean_is_classical() {
        let mut rng = substream(3, 0, 0);
        let xs: Vec<f64> = (0..5000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let m = empirical_moments(&xs, 1).unwrap();
        let mean = xs.iter().sum::<f64>() / 5000.0;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 4999.0).sqrt();
        assert!((m.raw[0].se - sd / 5000f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn tv_triangle_inequality() {
        let mut rng = substream(4, 0, 0);
        for _ in 0..200 {
            let mut make = || {
                let w: Vec<f64> = (0..5).map(|_| rng.random::<f64>()).collect();
                let s: f64 = w.iter().sum();
                Pmf::from_probs(w.into_iter().enumerate().map(|(k, p)| (k as i64, p / s)))
            };
            let (p, q, r) = (make(), make(), make());
            assert!((tv_distance(&p, &q) - tv_distance(&q, &p)).abs() < 1e-15);
            assert!(tv_distance(&p, &r) <= tv_distance(&p, &q) + tv_distance(&q, &r) + 1e-12);
        }
    }
}

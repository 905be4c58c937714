//! Dense adjacency spectra by cyclic Jacobi rotations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_DENSE_VERTICES: usize = 4000;
pub const MAX_SWEEPS: usize = 100;
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub l2_norm: f64,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let l2_norm = eigenvalues.iter().map(|x| x * x).sum::<f64>().sqrt();
        Spectrum { eigenvalues, l2_norm }
    }

    /// `λ_i / ‖λ‖₂`; all zeros for an edgeless graph.
    pub fn normalized(&self) -> Vec<f64> {
        if self.l2_norm == 0.0 {
            return vec![0.0; self.eigenvalues.len()];
        }
        self.eigenvalues.iter().map(|x| x / self.l2_norm).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// `‖λ‖∞ / ‖λ‖₂`, zero for an edgeless graph.
    pub fn usn_ratio(&self) -> f64 {
        if self.l2_norm == 0.0 {
            0.0
        } else {
            self.max_abs() / self.l2_norm
        }
    }

    /// `Σ λ_i^k = tr(A^k)`.
    pub fn power_sum(&self, k: i32) -> f64 {
        self.eigenvalues.iter().map(|x| x.powi(k)).sum()
    }
}

/// Full spectrum of the adjacency matrix of `g`.
pub fn eigenvalues(g: &Graph) -> Result<Spectrum> {
    let n = g.n();
    if n > MAX_DENSE_VERTICES {
        return Err(Error::SizeGateExceeded(n, MAX_DENSE_VERTICES));
    }
    let mut a = vec![0.0f64; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    jacobi(&mut a, n)?;
    Ok(Spectrum::from_eigenvalues((0..n).map(|i| a[i * n + i]).collect()))
}

/// Diagonalizes the symmetric row-major matrix `a` in place; eigenvalues end
/// up on the diagonal.
pub fn jacobi(a: &mut [f64], n: usize) -> Result<()> {
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };
    for sweep in 0..MAX_SWEEPS {
        let residual = off(a);
        if residual < OFF_DIAGONAL_TOL {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Once an entry is negligible against both diagonal entries it
                // is dropped rather than rotated.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let residual = off(a);
    if residual < OFF_DIAGONAL_TOL {
        Ok(())
    } else {
        Err(Error::ConvergenceFailure(MAX_SWEEPS, residual))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleBound {
    /// `(2m)^{g/2} / (2g)`.
    pub crude: f64,
    /// `tr(A^g) / (2g)`, when the spectrum is available.
    pub trace: Option<f64>,
}

pub fn cycle_upper_bound(g: &Graph, len: usize, spectrum: Option<&Spectrum>) -> Result<CycleBound> {
    if len < 3 {
        return Err(Error::UnsupportedLength(len));
    }
    let crude = (2.0 * g.m() as f64).powf(len as f64 / 2.0) / (2.0 * len as f64);
    let trace = spectrum.map(|s| s.power_sum(len as i32) / (2.0 * len as f64));
    Ok(CycleBound { crude, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::count_cycles;
    use crate::graph::{complete, complete_bipartite, cycle, erdos_renyi, path};

    fn residual_check(g: &Graph, s: &Spectrum) {
        // Inverse iteration for an eigenvector, then ‖Av − λv‖.
        let n = g.n();
        for &lam in &s.eigenvalues {
            let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64) * 0.37).collect();
            let shift = lam + 1e-7;
            for _ in 0..30 {
                // Solve (A - shift I) w = v by dense Gaussian elimination.
                let mut m = vec![0.0; n * n];
                for &(a, b) in g.edges() {
                    m[a * n + b] = 1.0;
                    m[b * n + a] = 1.0;
                }
                for i in 0..n {
                    m[i * n + i] -= shift;
                }
                let mut w = v.clone();
                for col in 0..n {
                    let piv = (col..n).max_by(|&x, &y| m[x * n + col].abs().total_cmp(&m[y * n + col].abs())).unwrap();
                    for k in 0..n {
                        m.swap(col * n + k, piv * n + k);
                    }
                    w.swap(col, piv);
                    for r in col + 1..n {
                        let f = m[r * n + col] / m[col * n + col];
                        for k in col..n {
                            m[r * n + k] -= f * m[col * n + k];
                        }
                        w[r] -= f * w[col];
                    }
                }
                for r in (0..n).rev() {
                    let mut acc = w[r];
                    for k in r + 1..n {
                        acc -= m[r * n + k] * w[k];
                    }
                    w[r] = acc / m[r * n + r];
                }
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                v = w.iter().map(|x| x / norm).collect();
            }
            let mut av = vec![0.0; n];
            for &(a, b) in g.edges() {
                av[a] += v[b];
                av[b] += v[a];
            }
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - lam * y).powi(2)).sum::<f64>().sqrt();
            assert!(r < 1e-6, "residual {r} for eigenvalue {lam}");
        }
    }

    fn trace_invariants(g: &Graph, s: &Spectrum) {
        let tol = 1e-8;
        assert!(s.power_sum(1).abs() <= tol * (1.0 + g.n() as f64));
        let m2 = 2.0 * g.m() as f64;
        assert!((s.power_sum(2) - m2).abs() <= tol * (1.0 + m2));
        let abs3: f64 = s.eigenvalues.iter().map(|x| x.abs().powi(3)).sum();
        let tri = count_cycles(g, 3).unwrap() as f64;
        assert!((s.power_sum(3) - 6.0 * tri).abs() <= tol * (1.0 + abs3));
    }

    fn assert_spectrum(g: &Graph, expect: &[f64]) {
        let s = eigenvalues(g).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "{:?} vs {expect:?}", s.eigenvalues);
        }
        residual_check(g, &s);
        trace_invariants(g, &s);
    }

    #[test]
    fn small_spectra() {
        assert_spectrum(&complete(4), &[3.0, -1.0, -1.0, -1.0]);
        assert_spectrum(&complete_bipartite(3, 3), &[3.0, 0.0, 0.0, 0.0, 0.0, -3.0]);
        assert_spectrum(&path(1), &[1.0, -1.0]);
    }

    #[test]
    fn random_graph_invariants() {
        for seed in 0..30 {
            let g = erdos_renyi(25, 0.3, seed);
            let s = eigenvalues(&g).unwrap();
            trace_invariants(&g, &s);
            assert!(s.usn_ratio() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn dense_complete_graph_converges() {
        let s = eigenvalues(&complete(200)).unwrap();
        assert!((s.eigenvalues[0] - 199.0).abs() < 1e-8);
        assert!(s.eigenvalues[1..].iter().all(|x| (x + 1.0).abs() < 1e-8));
    }

    #[test]
    fn bounds() {
        let k4 = complete(4);
        let b = cycle_upper_bound(&k4, 3, Some(&eigenvalues(&k4).unwrap())).unwrap();
        assert!((b.crude - 12f64.powf(1.5) / 6.0).abs() < 1e-12);
        assert!((b.trace.unwrap() - 4.0).abs() < 1e-9);
        let c5 = cycle_upper_bound(&cycle(5), 5, None).unwrap();
        assert!((c5.crude - 10f64.powf(2.5) / 10.0).abs() < 1e-12);
        assert_eq!(cycle_upper_bound(&Graph::empty(4), 4, None).unwrap().crude, 0.0);
    }

    #[test]
    fn size_gate() {
        assert!(matches!(eigenvalues(&Graph::empty(4001)), Err(Error::SizeGateExceeded(4001, 4000))));
    }
}

//! Tensor Chebyshev approximation of Lipschitz functions on `[−1, 1]^n`.
//!
//! Along each axis `f(cos θ)` is convolved with the Fejér–Korovkin kernel of
//! degree `k`, a positive even trigonometric kernel. The discrete convolution
//! runs on `8k` cosine nodes per axis and acts on Chebyshev coefficients as
//! the diagonal multiplier `T_s ↦ ρ_s T_s`. Being positive with `ρ_0 = 1`, the
//! operator has norm one and reproduces constants; its Lipschitz error is at
//! most [`C_OP`]` · n · L / k`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Error constant of the per-axis operator: `‖f − p_k‖ ≤ C_OP · n · L / k`.
pub const C_OP: f64 = PI * PI / 2.0;

/// Coefficients `c[j_1, …, j_n]` of `Σ c T_{j_1}(x_1)⋯T_{j_n}(x_n)`, stored
/// row-major with the first axis slowest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorPolynomial {
    pub n: usize,
    pub k: usize,
    pub coefficients: Vec<f64>,
}

impl TensorPolynomial {
    pub fn zeros(n: usize, k: usize) -> Self {
        TensorPolynomial {
            n,
            k,
            coefficients: vec![0.0; (k + 1).pow(n as u32)],
        }
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.coefficients[self.flat(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let i = self.flat(index);
        self.coefficients[i] = value;
    }

    fn flat(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &j| acc * (self.k + 1) + j)
    }
}

/// Multipliers `ρ_0, …, ρ_k` of the Fejér–Korovkin kernel.
pub fn kernel_multipliers(k: usize) -> Vec<f64> {
    let h = PI / (k as f64 + 2.0);
    let cot = h.cos() / h.sin();
    (0..=k)
        .map(|s| {
            let a = s as f64 * h;
            ((k + 2 - s) as f64 * a.cos() + a.sin() * cot) / (k as f64 + 2.0)
        })
        .collect()
}

/// Cosine nodes `θ_j = π(j + ½)/M` used by every axis pass.
fn nodes(m: usize) -> Vec<f64> {
    (0..m).map(|j| PI * (j as f64 + 0.5) / m as f64).collect()
}

/// Samples `f` on the tensor cosine grid and applies the per-axis operator
/// in the order given by `axes`.
pub fn approximate_with_order<F: Fn(&[f64]) -> f64>(f: F, n: usize, k: usize, axes: &[usize]) -> TensorPolynomial {
    assert!(k >= 1, "degree must be at least 1");
    let m = 8 * k;
    let theta = nodes(m);
    let xs: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let rho = kernel_multipliers(k);
    // cos(s θ_j) for the analysis step
    let basis: Vec<Vec<f64>> = (0..=k).map(|s| theta.iter().map(|t| (s as f64 * t).cos()).collect()).collect();

    // sample tensor, each axis of length m
    let mut shape = vec![m; n];
    let total = m.pow(n as u32);
    let mut data = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    let mut point = vec![0.0; n];
    for _ in 0..total {
        for (p, &i) in point.iter_mut().zip(&idx) {
            *p = xs[i];
        }
        data.push(f(&point));
        for a in (0..n).rev() {
            idx[a] += 1;
            if idx[a] < m {
                break;
            }
            idx[a] = 0;
        }
    }

    for &axis in axes {
        let outer: usize = shape[..axis].iter().product();
        let inner: usize = shape[axis + 1..].iter().product();
        let len = shape[axis];
        let mut next = vec![0.0; outer * (k + 1) * inner];
        for o in 0..outer {
            for s in 0..=k {
                let w = if s == 0 { 1.0 } else { 2.0 } * rho[s] / m as f64;
                for i in 0..inner {
                    let mut acc = 0.0;
                    for j in 0..len {
                        acc += data[(o * len + j) * inner + i] * basis[s][j];
                    }
                    next[(o * (k + 1) + s) * inner + i] = w * acc;
                }
            }
        }
        shape[axis] = k + 1;
        data = next;
    }
    TensorPolynomial {
        n,
        k,
        coefficients: data,
    }
}

/// The approximant `p_k` of `f`.
pub fn approximate<F: Fn(&[f64]) -> f64>(f: F, n: usize, k: usize) -> TensorPolynomial {
    let axes: Vec<usize> = (0..n).collect();
    approximate_with_order(f, n, k, &axes)
}

/// Guaranteed sup-norm error for a function with per-axis Lipschitz constant
/// `l`.
pub fn error_bound(n: usize, k: usize, l: f64) -> f64 {
    C_OP * n as f64 * l / k as f64
}

/// Nested Clenshaw evaluation; points outside the cube are clamped.
pub fn evaluate(p: &TensorPolynomial, x: &[f64]) -> f64 {
    assert_eq!(x.len(), p.n, "point dimension");
    let x: Vec<f64> = x
        .iter()
        .map(|&v| {
            if !(-1.0..=1.0).contains(&v) {
                log::warn!("evaluation point {v} clamped to [-1, 1]");
            }
            v.clamp(-1.0, 1.0)
        })
        .collect();
    let mut data = p.coefficients.clone();
    // contract the last axis first
    for axis in (0..p.n).rev() {
        let outer = data.len() / (p.k + 1);
        data = (0..outer)
            .map(|o| clenshaw(&data[o * (p.k + 1)..(o + 1) * (p.k + 1)], x[axis]))
            .collect();
    }
    data[0]
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

/// Maximum of `|f − p|` over the uniform grid with `resolution` points per
/// axis.
pub fn sup_error<F: Fn(&[f64]) -> f64>(f: F, p: &TensorPolynomial, resolution: usize) -> f64 {
    assert!(resolution >= 2, "resolution must be at least 2");
    let n = p.n;
    let mut idx = vec![0usize; n];
    let mut point = vec![0.0; n];
    let mut worst = 0.0f64;
    for _ in 0..resolution.pow(n as u32) {
        for (q, &i) in point.iter_mut().zip(&idx) {
            *q = -1.0 + 2.0 * i as f64 / (resolution - 1) as f64;
        }
        worst = worst.max((f(&point) - evaluate(p, &point)).abs());
        for a in (0..n).rev() {
            idx[a] += 1;
            if idx[a] < resolution {
                break;
            }
            idx[a] = 0;
        }
    }
    worst
}

/// Named test functions with their per-axis Lipschitz constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `|x_1|`
    Abs,
    /// `1`
    Constant,
    /// `T_3(x_1) = 4x_1³ − 3x_1`
    Cheb3,
    /// `Σ |x_j|`
    SumAbs,
    /// `max_j |x_j|`
    Cone,
    /// `sin(x_1 + ⋯ + x_n)`
    Wave,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [Builtin::Abs, Builtin::Constant, Builtin::Cheb3, Builtin::SumAbs, Builtin::Cone, Builtin::Wave];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Abs => "abs",
            Builtin::Constant => "const",
            Builtin::Cheb3 => "t3",
            Builtin::SumAbs => "sum_abs",
            Builtin::Cone => "cone",
            Builtin::Wave => "wave",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn lipschitz(self) -> f64 {
        match self {
            Builtin::Constant => 0.0,
            Builtin::Cheb3 => 9.0,
            _ => 1.0,
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Builtin::Abs => x[0].abs(),
            Builtin::Constant => 1.0,
            Builtin::Cheb3 => 4.0 * x[0].powi(3) - 3.0 * x[0],
            Builtin::SumAbs => x.iter().map(|v| v.abs()).sum(),
            Builtin::Cone => x.iter().fold(0.0, |a, v| a.max(v.abs())),
            Builtin::Wave => x.iter().sum::<f64>().sin(),
        }
    }
}

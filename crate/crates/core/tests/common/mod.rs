//! Shared test helpers: an independent matrix-exponential oracle, textbook
//! gate matrices, and seeded random generators.
//!
//! The oracle computes `e^{-iAt}` by scaling-and-squaring a Taylor series and
//! shares no code with the engine's spectral path.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ctqw_core::{Graph, Matrix, StateVector, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub type CMat = Vec<Vec<C64>>;

pub fn cmat_zeros(n: usize) -> CMat {
    vec![vec![c(0.0, 0.0); n]; n]
}

pub fn cmat_identity(n: usize) -> CMat {
    let mut m = cmat_zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut out = cmat_zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn cmat_apply(a: &CMat, v: &[C64]) -> Vec<C64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

pub fn cmat_max_diff(a: &CMat, b: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}

/// Independent oracle: `e^{-iAt}` by scaling-and-squaring a Taylor series.
pub fn expm_oracle(a: &Matrix, t: f64) -> CMat {
    let n = a.n();
    // M = -iAt, scaled down until its entries are small.
    let mut max_entry = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            max_entry = max_entry.max((a[(i, j)] * t).abs());
        }
    }
    let scale = ((max_entry * n as f64).log2().ceil().max(0.0)) as u32 + 1;
    let factor = 1.0 / (1u64 << scale) as f64;
    let mut m = cmat_zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = c(0.0, -a[(i, j)] * t * factor);
        }
    }
    // Taylor series; 25 terms is far past double precision for ||M|| <= 1.
    let mut sum = cmat_identity(n);
    let mut term = cmat_identity(n);
    for k in 1..=25 {
        term = cmat_mul(&term, &m);
        let inv_k = 1.0 / k as f64;
        for row in term.iter_mut() {
            for entry in row.iter_mut() {
                *entry *= inv_k;
            }
        }
        for (rs, rt) in sum.iter_mut().zip(&term) {
            for (s, t) in rs.iter_mut().zip(rt) {
                *s += t;
            }
        }
    }
    for _ in 0..scale {
        sum = cmat_mul(&sum, &sum);
    }
    sum
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let raw: Vec<C64> = (0..n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = raw.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(raw.iter().map(|x| x / norm).collect()).unwrap()
}

/// Random valid graph: edges with the given density, then loops on some of
/// the vertices that ended up isolated.
pub fn random_graph(n: usize, edge_p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(edge_p) {
                edges.push((u, v));
            }
        }
    }
    let mut incident = vec![false; n];
    for &(u, v) in &edges {
        incident[u] = true;
        incident[v] = true;
    }
    let loops: Vec<usize> = (0..n)
        .filter(|&v| !incident[v] && rng.gen_bool(0.5))
        .collect();
    Graph::new(n, edges, loops).unwrap()
}

// Textbook single-qubit gates.

pub fn mat_x() -> CMat {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn mat_y() -> CMat {
    vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn mat_z() -> CMat {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn mat_h() -> CMat {
    let r = 1.0 / 2.0f64.sqrt();
    vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(r, 0.0), c(-r, 0.0)]]
}

pub fn mat_phase(theta: f64) -> CMat {
    vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), Complex64::from_polar(1.0, theta)],
    ]
}

pub fn mat_t() -> CMat {
    mat_phase(std::f64::consts::FRAC_PI_4)
}

pub fn mat_s() -> CMat {
    mat_phase(std::f64::consts::FRAC_PI_2)
}

/// `I (x) ... (x) U (x) ... (x) I` with `U` on qubit `q` of `n` (1-based,
/// qubit 1 = most significant bit).
pub fn embed_single(u: &CMat, q: usize, n: usize) -> CMat {
    let dim = 1usize << n;
    let mask = 1usize << (n - q);
    let rest = !mask & (dim - 1);
    let mut out = cmat_zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            if i & rest == j & rest {
                let bi = usize::from(i & mask != 0);
                let bj = usize::from(j & mask != 0);
                out[i][j] = u[bi][bj];
            }
        }
    }
    out
}

/// Permutation unitary flipping the target bit when all control bits are 1.
pub fn embed_controlled_flip(controls: &[usize], target: usize, n: usize) -> CMat {
    let dim = 1usize << n;
    let target_mask = 1usize << (n - target);
    let control_mask: usize = controls.iter().map(|&q| 1usize << (n - q)).sum();
    let mut out = cmat_zeros(dim);
    for j in 0..dim {
        let i = if j & control_mask == control_mask {
            j ^ target_mask
        } else {
            j
        };
        out[i][j] = c(1.0, 0.0);
    }
    out
}

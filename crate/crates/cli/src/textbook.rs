//! Reference unitaries for `verify`: textbook single-qubit matrices embedded
//! into the full register, built directly from the basis-state action rather
//! than through the compiler.

use num_complex::Complex64;

use ctqw_core::{GateOp, C64};

pub type CMat = Vec<Vec<C64>>;

fn zeros(n: usize) -> CMat {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

fn single(op: &GateOp) -> Option<([[C64; 2]; 2], usize)> {
    let c = |re: f64, im: f64| C64::new(re, im);
    let r = 1.0 / 2.0f64.sqrt();
    Some(match *op {
        GateOp::X { target } => ([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]], target),
        GateOp::Y { target } => ([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]], target),
        GateOp::Z { target } => ([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]], target),
        GateOp::I { target } => ([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]], target),
        GateOp::H { target } | GateOp::HAlt { target } => {
            ([[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]], target)
        }
        GateOp::T { target } => phase_mat(std::f64::consts::FRAC_PI_4, target),
        GateOp::S { target } => phase_mat(std::f64::consts::FRAC_PI_2, target),
        GateOp::Phase { theta, target } => phase_mat(theta.as_f64(), target),
        _ => return None,
    })
}

fn phase_mat(theta: f64, target: usize) -> ([[C64; 2]; 2], usize) {
    let c = |re: f64, im: f64| C64::new(re, im);
    (
        [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, theta)],
        ],
        target,
    )
}

/// The unitary `op` should implement on `n_qubits` qubits.
pub fn reference_unitary(op: &GateOp, n_qubits: usize) -> CMat {
    let dim = 1usize << n_qubits;
    if let Some((u, target)) = single(op) {
        let mask = 1usize << (n_qubits - target);
        let rest = !mask & (dim - 1);
        let mut out = zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if i & rest == j & rest {
                    out[i][j] = u[usize::from(i & mask != 0)][usize::from(j & mask != 0)];
                }
            }
        }
        return out;
    }
    // Controlled bit flips are basis permutations.
    let (controls, target): (Vec<usize>, usize) = match *op {
        GateOp::Cnot { control, target } => (vec![control], target),
        GateOp::Toffoli { controls, target } => (vec![controls.0, controls.1], target),
        _ => unreachable!(),
    };
    let target_mask = 1usize << (n_qubits - target);
    let control_mask: usize = controls.iter().map(|&q| 1usize << (n_qubits - q)).sum();
    let mut out = zeros(dim);
    for j in 0..dim {
        let i = if j & control_mask == control_mask {
            j ^ target_mask
        } else {
            j
        };
        out[i][j] = C64::new(1.0, 0.0);
    }
    out
}

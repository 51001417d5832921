//! Lowering quantum gates and circuits to dynamic-graph schedules.
//!
//! Each single-qubit gate becomes a short sequence of static graphs acting in
//! parallel on the 2^(n-1) vertex pairs that differ only in the target qubit's
//! bit. Controlled gates restrict the pairing to vertices whose control bits
//! are set. The legacy eight-vertex forms with ancilla cycles are kept for
//! differential testing.

use num_complex::Complex64;

use crate::error::CompileError;
use crate::graph::Graph;
use crate::linalg::C64;
use crate::schedule::{Schedule, Segment};
use crate::time::Time;
use crate::walk::{evolve_schedule, StateVector};

/// One gate application. Qubits are 1-based, qubit 1 being the leftmost
/// (most significant) bit of the basis-state label.
#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    X { target: usize },
    Y { target: usize },
    Z { target: usize },
    I { target: usize },
    H { target: usize },
    /// The shorter four-graph Hadamard variant.
    HAlt { target: usize },
    T { target: usize },
    S { target: usize },
    /// diag(1, e^{i theta}); theta normalized into [0, 2pi).
    Phase { theta: Time, target: usize },
    Cnot { control: usize, target: usize },
    Toffoli { controls: (usize, usize), target: usize },
}

impl GateOp {
    pub fn phase(theta: Time, target: usize) -> GateOp {
        GateOp::Phase {
            theta: theta.normalize_angle(),
            target,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateOp::X { .. } => "x",
            GateOp::Y { .. } => "y",
            GateOp::Z { .. } => "z",
            GateOp::I { .. } => "i",
            GateOp::H { .. } => "h",
            GateOp::HAlt { .. } => "halt",
            GateOp::T { .. } => "t",
            GateOp::S { .. } => "s",
            GateOp::Phase { .. } => "phase",
            GateOp::Cnot { .. } => "cnot",
            GateOp::Toffoli { .. } => "toffoli",
        }
    }

    pub(crate) fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::X { target }
            | GateOp::Y { target }
            | GateOp::Z { target }
            | GateOp::I { target }
            | GateOp::H { target }
            | GateOp::HAlt { target }
            | GateOp::T { target }
            | GateOp::S { target }
            | GateOp::Phase { target, .. } => vec![target],
            GateOp::Cnot { control, target } => vec![control, target],
            GateOp::Toffoli { controls, target } => vec![controls.0, controls.1, target],
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<(), CompileError> {
        match self {
            GateOp::Cnot { .. } if n_qubits < 2 => {
                return Err(CompileError::TooFewQubits {
                    gate: "cnot",
                    min: 2,
                })
            }
            GateOp::Toffoli { .. } if n_qubits < 3 => {
                return Err(CompileError::TooFewQubits {
                    gate: "toffoli",
                    min: 3,
                })
            }
            _ => {}
        }
        let qubits = self.qubits();
        for &q in &qubits {
            if q < 1 || q > n_qubits {
                return Err(CompileError::QubitOutOfRange {
                    qubit: q,
                    n_qubits,
                });
            }
        }
        for i in 0..qubits.len() {
            for j in (i + 1)..qubits.len() {
                if qubits[i] == qubits[j] {
                    return Err(CompileError::DuplicateQubit);
                }
            }
        }
        Ok(())
    }
}

/// An ordered gate list over `n_qubits`, with optional layer boundaries.
/// `layer_marks[k]` is the index into `ops` at which layer k+1 ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub ops: Vec<GateOp>,
    pub layer_marks: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize, ops: Vec<GateOp>, layer_marks: Vec<usize>) -> Circuit {
        Circuit {
            n_qubits,
            ops,
            layer_marks,
        }
    }
}

/// Bit mask selecting qubit `q` (1-based from the left) in an `n`-qubit label.
fn qubit_mask(q: usize, n: usize) -> usize {
    1 << (n - q)
}

/// The vertex pairs a single-qubit gate on `q` acts on: every `(i, i|mask)`
/// with bit `q` clear in `i`. The lower index plays the |...0...> role.
fn qubit_pairs(q: usize, n_qubits: usize) -> Vec<(usize, usize)> {
    let mask = qubit_mask(q, n_qubits);
    (0..1usize << n_qubits)
        .filter(|i| i & mask == 0)
        .map(|i| (i, i | mask))
        .collect()
}

/// Which role of each pair gets a self-loop in a phase segment.
#[derive(Clone, Copy)]
enum LoopOn {
    Zero,
    One,
    Both,
}

/// Per-pair building blocks for the single-qubit constructions.
#[derive(Clone, Copy)]
enum Step {
    /// Connect each pair with an edge.
    Path(Time),
    /// Self-loops on the chosen pair members; everything else isolated.
    Loops(LoopOn, Time),
}

fn build_segments(
    pairs: &[(usize, usize)],
    steps: &[Step],
    n_vertices: usize,
) -> Result<Vec<Segment>, CompileError> {
    let mut segments = Vec::with_capacity(steps.len());
    for step in steps {
        let (graph, duration) = match *step {
            Step::Path(d) => (Graph::new(n_vertices, pairs.iter().copied(), [])?, d),
            Step::Loops(on, d) => {
                let loops: Vec<usize> = pairs
                    .iter()
                    .flat_map(|&(zero, one)| match on {
                        LoopOn::Zero => vec![zero],
                        LoopOn::One => vec![one],
                        LoopOn::Both => vec![zero, one],
                    })
                    .collect();
                (Graph::new(n_vertices, [], loops)?, d)
            }
        };
        segments.push(Segment { graph, duration });
    }
    Ok(segments)
}

fn single_qubit_steps(op: &GateOp) -> Option<Vec<Step>> {
    use LoopOn::*;
    use Step::*;
    Some(match op {
        GateOp::X { .. } => vec![Path(Time::pi_frac(1, 2)), Loops(Both, Time::pi_frac(3, 2))],
        GateOp::Y { .. } => vec![Path(Time::pi_frac(1, 2)), Loops(One, Time::pi_frac(1, 1))],
        GateOp::Z { .. } => vec![Loops(One, Time::pi_frac(1, 1))],
        GateOp::H { .. } => vec![
            Loops(One, Time::pi_frac(3, 2)),
            Path(Time::pi_frac(1, 4)),
            Loops(One, Time::pi_frac(3, 2)),
        ],
        GateOp::HAlt { .. } => vec![
            Loops(Zero, Time::pi_frac(1, 2)),
            Path(Time::pi_frac(1, 4)),
            Loops(Both, Time::pi_frac(1, 1)),
            Loops(Zero, Time::pi_frac(1, 2)),
        ],
        GateOp::T { .. } => vec![Loops(One, Time::pi_frac(7, 4))],
        GateOp::S { .. } => vec![Loops(One, Time::pi_frac(3, 2))],
        GateOp::Phase { theta, .. } => {
            let theta = theta.normalize_angle();
            if theta.is_zero() {
                return Some(vec![]);
            }
            // e^{i theta} from a loop phase e^{-it}: evolve for 2pi - theta.
            let duration = Time::pi_frac(2, 1) - theta;
            if duration.as_f64() < 1e-12 {
                return Some(vec![]);
            }
            vec![Loops(One, duration)]
        }
        GateOp::I { .. } => vec![],
        _ => return None,
    })
}

/// Lower one gate to a schedule over `2^n_qubits` vertices.
pub fn compile_gate(op: &GateOp, n_qubits: usize) -> Result<Schedule, CompileError> {
    op.validate(n_qubits)?;
    let n_vertices = 1usize << n_qubits;
    match op {
        GateOp::Cnot { control, target } => {
            controlled_flip(&[*control], *target, n_qubits)
        }
        GateOp::Toffoli { controls, target } => {
            controlled_flip(&[controls.0, controls.1], *target, n_qubits)
        }
        single => {
            let target = single.qubits()[0];
            let steps = single_qubit_steps(single).expect("single-qubit gate");
            let pairs = qubit_pairs(target, n_qubits);
            let segments = build_segments(&pairs, &steps, n_vertices)?;
            Ok(Schedule::new(n_vertices, segments, vec![])?)
        }
    }
}

/// X on the target bit, gated on all control bits being 1: the pair swap
/// followed by the loop phase correction, with every uninvolved vertex
/// loopless throughout.
fn controlled_flip(
    controls: &[usize],
    target: usize,
    n_qubits: usize,
) -> Result<Schedule, CompileError> {
    let n_vertices = 1usize << n_qubits;
    let target_mask = qubit_mask(target, n_qubits);
    let control_mask: usize = controls.iter().map(|&c| qubit_mask(c, n_qubits)).sum();
    let pairs: Vec<(usize, usize)> = (0..n_vertices)
        .filter(|i| i & control_mask == control_mask && i & target_mask == 0)
        .map(|i| (i, i | target_mask))
        .collect();
    let steps = [
        Step::Path(Time::pi_frac(1, 2)),
        Step::Loops(LoopOn::Both, Time::pi_frac(3, 2)),
    ];
    let segments = build_segments(&pairs, &steps, n_vertices)?;
    Ok(Schedule::new(n_vertices, segments, vec![])?)
}

/// The three explicit identity constructions: everything looped for 2pi,
/// vertex pairs for 2pi, or four-cycles for pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    AllLooped,
    PairedPaths,
    FourCycles,
}

pub fn compile_identity(kind: IdentityKind, n_qubits: usize) -> Result<Schedule, CompileError> {
    let n_vertices = 1usize << n_qubits;
    let segment = match kind {
        IdentityKind::AllLooped => Segment {
            graph: Graph::new(n_vertices, [], 0..n_vertices)?,
            duration: Time::pi_frac(2, 1),
        },
        IdentityKind::PairedPaths => Segment {
            graph: Graph::new(n_vertices, (0..n_vertices / 2).map(|k| (2 * k, 2 * k + 1)), [])?,
            duration: Time::pi_frac(2, 1),
        },
        IdentityKind::FourCycles => {
            if n_vertices % 4 != 0 {
                return Err(CompileError::TooFewQubits {
                    gate: "four-cycle identity",
                    min: 2,
                });
            }
            let edges = (0..n_vertices / 4).flat_map(|k| {
                let b = 4 * k;
                [(b, b + 1), (b, b + 2), (b + 1, b + 3), (b + 2, b + 3)]
            });
            Segment {
                graph: Graph::new(n_vertices, edges, [])?,
                duration: Time::pi_frac(1, 1),
            }
        }
    };
    Ok(Schedule::new(n_vertices, vec![segment], vec![])?)
}

/// The ancilla-based eight-vertex (four for CNOT) constructions that predate
/// loopless isolated vertices. Only X, Y, Z, and CNOT have a fully specified
/// sequence; H and T do not.
pub fn compile_gate_legacy(op: &GateOp) -> Result<Schedule, CompileError> {
    match op {
        GateOp::X { .. } => compile_gate(&GateOp::X { target: 1 }, 1),
        GateOp::Y { .. } => {
            // P2 on {000,001} with everything else looped, then a C4 keeping
            // |000> fixed through ancillas {010,011,100} while the rest flip
            // sign under loops.
            let first = Graph::new(8, [(0, 1)], 2..8)?;
            let cycle = Graph::new(8, [(0, 2), (0, 3), (2, 4), (3, 4)], [1, 5, 6, 7])?;
            Ok(Schedule::new(
                8,
                vec![
                    Segment {
                        graph: first,
                        duration: Time::pi_frac(1, 2),
                    },
                    Segment {
                        graph: cycle,
                        duration: Time::pi_frac(1, 1),
                    },
                ],
                vec![],
            )?)
        }
        GateOp::Z { .. } => {
            // C4 on {000,010,100,110}, loops on the odd vertices, time pi.
            let cycle = Graph::new(8, [(0, 2), (0, 4), (2, 6), (4, 6)], [1, 3, 5, 7])?;
            Ok(Schedule::new(
                8,
                vec![Segment {
                    graph: cycle,
                    duration: Time::pi_frac(1, 1),
                }],
                vec![],
            )?)
        }
        GateOp::Cnot { .. } => {
            // Phase first, then the pair swap; |00> and |01> stay looped in
            // both segments.
            let all_looped = Graph::new(4, [], 0..4)?;
            let swap = Graph::new(4, [(2, 3)], [0, 1])?;
            Ok(Schedule::new(
                4,
                vec![
                    Segment {
                        graph: all_looped,
                        duration: Time::pi_frac(3, 2),
                    },
                    Segment {
                        graph: swap,
                        duration: Time::pi_frac(1, 2),
                    },
                ],
                vec![],
            )?)
        }
        other => Err(CompileError::NoLegacyForm(other.name())),
    }
}

/// Lower a whole circuit: gate schedules concatenated in op order, with a
/// checkpoint at each layer boundary (and at the end when layers are marked).
pub fn compile_circuit(c: &Circuit) -> Result<Schedule, CompileError> {
    let n_vertices = 1usize << c.n_qubits;
    let mut out = Schedule::empty(n_vertices);
    let mut layer = 0usize;
    for (idx, op) in c.ops.iter().enumerate() {
        if c.layer_marks.contains(&idx) {
            layer += 1;
            let at = out.total_duration();
            out.push_checkpoint(format!("layer{layer}"), at);
        }
        out.concat(&compile_gate(op, c.n_qubits)?)?;
    }
    if !c.layer_marks.is_empty() {
        // Close the final layer.
        layer += 1;
        let at = out.total_duration();
        out.push_checkpoint(format!("layer{layer}"), at);
    }
    Ok(out)
}

/// The full unitary a schedule implements: column j is the evolved |j>.
pub fn gate_unitary(s: &Schedule) -> Result<Vec<Vec<C64>>, CompileError> {
    let n = s.n();
    let mut u = vec![vec![C64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let out = evolve_schedule(s, &StateVector::basis(n, j))?;
        for (i, amp) in out.amplitudes().iter().enumerate() {
            u[i][j] = *amp;
        }
    }
    // Columns are unitary images of an orthonormal basis; check pairwise
    // orthonormality.
    for a in 0..n {
        for b in 0..n {
            let dot: C64 = (0..n).map(|i| u[i][a].conj() * u[i][b]).sum();
            let expect = if a == b { 1.0 } else { 0.0 };
            if (dot - expect).norm() > 1e-10 {
                return Err(CompileError::Engine(
                    crate::error::EngineError::NormDrift { norm: dot.norm() },
                ));
            }
        }
    }
    Ok(u)
}

/// Check `U = phi * V` for some unit-modulus scalar, reading `phi` off the
/// largest-magnitude entry of `V`.
pub fn equal_up_to_global_phase(
    u: &[Vec<C64>],
    v: &[Vec<C64>],
    tol: f64,
) -> Result<(bool, C64), CompileError> {
    let n = u.len();
    if v.len() != n || u.iter().any(|r| r.len() != n) || v.iter().any(|r| r.len() != n) {
        return Err(CompileError::MatrixDimensionMismatch);
    }
    let mut best = (0usize, 0usize);
    let mut best_mag = -1.0f64;
    for i in 0..n {
        for j in 0..n {
            let m = v[i][j].norm();
            if m > best_mag {
                best_mag = m;
                best = (i, j);
            }
        }
    }
    let phi = if best_mag > 0.0 && u[best.0][best.1].norm() > 0.0 {
        let raw = u[best.0][best.1] / v[best.0][best.1];
        raw / raw.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut max_dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            max_dev = max_dev.max((u[i][j] - phi * v[i][j]).norm());
        }
    }
    Ok((max_dev <= tol, phi))
}

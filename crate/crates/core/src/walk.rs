//! The walk engine: evolves states under `e^{-iAt}` per schedule segment,
//! using the tabulated closed forms for recognized components and spectral
//! decomposition for everything else.

use num_complex::Complex64;

use crate::error::EngineError;
use crate::graph::{ComponentKind, Graph};
use crate::linalg::{jacobi_eigen, norm, Matrix, C64};
use crate::schedule::Schedule;

/// Norm drift past this is treated as an engine bug, not rounding.
const DRIFT_TOL: f64 = 1e-10;

/// A unit-norm complex amplitude vector over graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Requires unit norm within 1e-12; evolution never renormalizes, so a
    /// sloppy input would silently poison every later check.
    pub fn new(amps: Vec<C64>) -> Result<StateVector, EngineError> {
        let norm = norm(&amps);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(EngineError::NotNormalized { norm });
        }
        Ok(StateVector { amps })
    }

    /// Basis state |index> over `n` vertices.
    pub fn basis(n: usize, index: usize) -> StateVector {
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[index] = C64::new(1.0, 0.0);
        StateVector { amps }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    fn from_evolved(amps: Vec<C64>) -> Result<StateVector, EngineError> {
        let n = norm(&amps);
        if (n - 1.0).abs() > DRIFT_TOL {
            return Err(EngineError::NormDrift { norm: n });
        }
        Ok(StateVector { amps })
    }
}

/// Sampled per-vertex probabilities over a schedule, plus the final state.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    pub times: Vec<f64>,
    pub probabilities: Vec<Vec<f64>>,
    pub final_state: StateVector,
}

/// Closed-form evolution for a recognized component, acting on its amplitude
/// sub-vector. For `Cycle4` the amplitudes must be ordered so that positions
/// 0 and 3 are one antipodal pair and 1 and 2 the other.
pub fn evolve_closed_form(
    kind: ComponentKind,
    amps: &[C64],
    t: f64,
) -> Result<Vec<C64>, EngineError> {
    let expected = kind.arity().ok_or(EngineError::LengthMismatch {
        got: amps.len(),
        expected: 0,
    })?;
    if amps.len() != expected {
        return Err(EngineError::LengthMismatch {
            got: amps.len(),
            expected,
        });
    }
    Ok(match kind {
        ComponentKind::LooplessIsolated => amps.to_vec(),
        ComponentKind::LoopedIsolated => {
            let phase = Complex64::from_polar(1.0, -t);
            vec![amps[0] * phase]
        }
        ComponentKind::Path2 => {
            let (cos, sin) = (t.cos(), t.sin());
            let i = C64::new(0.0, 1.0);
            vec![
                amps[0] * cos - i * amps[1] * sin,
                amps[1] * cos - i * amps[0] * sin,
            ]
        }
        ComponentKind::Cycle4 { .. } => {
            let (cos2, sin2) = ((2.0 * t).cos(), (2.0 * t).sin());
            let i = C64::new(0.0, 1.0);
            let (c4, c5, c6, c7) = (amps[0], amps[1], amps[2], amps[3]);
            let outer = c4 + c7;
            let inner = c5 + c6;
            vec![
                0.5 * (c4 - c7 + outer * cos2 - i * inner * sin2),
                0.5 * (c5 - c6 + inner * cos2 - i * outer * sin2),
                0.5 * (c6 - c5 + inner * cos2 - i * outer * sin2),
                0.5 * (c7 - c4 + outer * cos2 - i * inner * sin2),
            ]
        }
        ComponentKind::Other => unreachable!(),
    })
}

/// `e^{-iAt} amps` via spectral decomposition of the symmetric matrix `A`.
pub fn evolve_generic(a: &Matrix, amps: &[C64], t: f64) -> Result<Vec<C64>, EngineError> {
    if a.n() != amps.len() {
        return Err(EngineError::DimensionMismatch {
            rows: a.n(),
            cols: a.n(),
            len: amps.len(),
        });
    }
    let eigen = jacobi_eigen(a)?;
    let n = a.n();
    // y = Q^T amps
    let mut y = vec![C64::new(0.0, 0.0); n];
    for j in 0..n {
        for k in 0..n {
            y[j] += eigen.vectors[(k, j)] * amps[k];
        }
    }
    for (j, yj) in y.iter_mut().enumerate() {
        *yj *= Complex64::from_polar(1.0, -eigen.values[j] * t);
    }
    let mut out = vec![C64::new(0.0, 0.0); n];
    for k in 0..n {
        for j in 0..n {
            out[k] += eigen.vectors[(k, j)] * y[j];
        }
    }
    Ok(out)
}

/// Evolve raw amplitudes under one static graph for time `t`, component by
/// component. No renormalization: unitarity must hold by construction.
fn evolve_amps(g: &Graph, amps: &[C64], t: f64) -> Result<Vec<C64>, EngineError> {
    let mut out = amps.to_vec();
    for comp in g.connected_components() {
        let kind = g.classify_component(&comp);
        match kind {
            ComponentKind::LooplessIsolated => {}
            ComponentKind::LoopedIsolated => {
                let v = comp[0];
                out[v] = evolve_closed_form(kind, &[amps[v]], t)?[0];
            }
            ComponentKind::Path2 => {
                let sub = [amps[comp[0]], amps[comp[1]]];
                let res = evolve_closed_form(kind, &sub, t)?;
                out[comp[0]] = res[0];
                out[comp[1]] = res[1];
            }
            ComponentKind::Cycle4 { pairs } => {
                // Role order: (pair1.0, pair2.0, pair2.1, pair1.1).
                let order = [pairs[0].0, pairs[1].0, pairs[1].1, pairs[0].1];
                let sub: Vec<C64> = order.iter().map(|&v| amps[v]).collect();
                let res = evolve_closed_form(kind, &sub, t)?;
                for (slot, &v) in order.iter().enumerate() {
                    out[v] = res[slot];
                }
            }
            ComponentKind::Other => {
                let m = comp.len();
                let mut sub_a = Matrix::zeros(m);
                for (ri, &u) in comp.iter().enumerate() {
                    for (ci, &v) in comp.iter().enumerate() {
                        if ri != ci && g.has_edge(u, v) {
                            sub_a[(ri, ci)] = 1.0;
                        }
                    }
                }
                let sub: Vec<C64> = comp.iter().map(|&v| amps[v]).collect();
                let res = evolve_generic(&sub_a, &sub, t)?;
                for (slot, &v) in comp.iter().enumerate() {
                    out[v] = res[slot];
                }
            }
        }
    }
    Ok(out)
}

/// Evolve a state under one static graph for time `t`.
pub fn evolve_segment(g: &Graph, state: &StateVector, t: f64) -> Result<StateVector, EngineError> {
    if g.n() != state.len() {
        return Err(EngineError::DimensionMismatch {
            rows: g.n(),
            cols: g.n(),
            len: state.len(),
        });
    }
    StateVector::from_evolved(evolve_amps(g, state.amplitudes(), t)?)
}

/// Run a whole schedule: left-composition of its segments in order.
pub fn evolve_schedule(s: &Schedule, state: &StateVector) -> Result<StateVector, EngineError> {
    let mut current = state.clone();
    for seg in s.segments() {
        current = evolve_segment(&seg.graph, &current, seg.duration.as_f64())?;
    }
    Ok(current)
}

/// Sample per-vertex probabilities at `t = 0, dt, 2dt, ...` and at every
/// segment boundary and checkpoint exactly.
pub fn trace_schedule(
    s: &Schedule,
    state: &StateVector,
    dt: f64,
) -> Result<WalkTrace, EngineError> {
    if dt <= 0.0 {
        return Err(EngineError::NonPositiveDt);
    }
    if s.n() != state.len() {
        return Err(EngineError::DimensionMismatch {
            rows: s.n(),
            cols: s.n(),
            len: state.len(),
        });
    }
    let total = s.total_duration().as_f64();

    let mut samples: Vec<f64> = Vec::new();
    let mut k = 0u64;
    loop {
        let t = k as f64 * dt;
        if t > total {
            break;
        }
        samples.push(t);
        k += 1;
    }
    let mut acc = crate::time::Time::ZERO;
    for seg in s.segments() {
        acc = acc + seg.duration;
        samples.push(acc.as_f64());
    }
    for cp in s.checkpoints() {
        samples.push(cp.at.as_f64());
    }
    samples.push(total);
    samples.sort_by(f64::total_cmp);
    let merge_tol = 1e-9 * total.max(1.0);
    samples.dedup_by(|a, b| (*a - *b).abs() <= merge_tol);

    let mut times = Vec::with_capacity(samples.len());
    let mut probabilities = Vec::with_capacity(samples.len());
    let mut current = state.clone();
    let mut seg_start = 0.0f64;
    let mut idx = 0usize;

    for seg in s.segments() {
        let dur = seg.duration.as_f64();
        let seg_end = seg_start + dur;
        while idx < samples.len() && samples[idx] <= seg_end + merge_tol {
            let t = samples[idx];
            let offset = (t - seg_start).clamp(0.0, dur);
            let amps = evolve_amps(&seg.graph, current.amplitudes(), offset)?;
            times.push(t);
            probabilities.push(amps.iter().map(|c| c.norm_sqr()).collect());
            idx += 1;
        }
        current = evolve_segment(&seg.graph, &current, dur)?;
        seg_start = seg_end;
    }
    // Anything left (can only be rounding stragglers past the last boundary).
    while idx < samples.len() {
        times.push(samples[idx]);
        probabilities.push(current.probabilities());
        idx += 1;
    }

    Ok(WalkTrace {
        times,
        probabilities,
        final_state: current,
    })
}

//! Text formats: the line-oriented circuit DSL, the schedule file format,
//! initial-state specs, and the probability-trace CSV.
//!
//! Circuit DSL (one op per line, `#` comments, 1-based qubit indices):
//!
//! ```text
//! qubits 3
//! h 1
//! x 2
//! phase(3pi/4) 3
//! layer
//! cnot 1 2
//! toffoli 1 2 3
//! ```
//!
//! Schedule format (0-based vertex indices; `edge`/`loop` lines belong to the
//! most recent `segment`):
//!
//! ```text
//! vertices 2
//! segment 7pi/4
//! loop 1
//! end
//! checkpoint layer1 7pi/4
//! ```

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::gates::{Circuit, GateOp};
use crate::graph::Graph;
use crate::linalg::{norm, C64};
use crate::schedule::{Checkpoint, Schedule, Segment};
use crate::time::{parse_time, Time};
use crate::walk::{StateVector, WalkTrace};

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, msg)
}

/// Lines worth parsing: (1-based line number, trimmed content).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines.next().ok_or_else(|| err(1, "missing qubits header"))?;
    let n_qubits = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", n] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| err(header_no, format!("bad qubit count `{n}`")))?,
        _ => return Err(err(header_no, "expected `qubits <n>` header")),
    };

    let mut ops = Vec::new();
    let mut layer_marks = Vec::new();
    for (no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_qubit = |tok: &str| -> Result<usize, ParseError> {
            tok.parse::<usize>()
                .ok()
                .filter(|&q| q >= 1 && q <= n_qubits)
                .ok_or_else(|| err(no, format!("qubit index `{tok}` out of range 1..={n_qubits}")))
        };
        let op = match tokens[..] {
            ["layer"] => {
                layer_marks.push(ops.len());
                continue;
            }
            [name @ ("x" | "y" | "z" | "i" | "h" | "halt" | "t" | "s"), q] => {
                let target = parse_qubit(q)?;
                match name {
                    "x" => GateOp::X { target },
                    "y" => GateOp::Y { target },
                    "z" => GateOp::Z { target },
                    "i" => GateOp::I { target },
                    "h" => GateOp::H { target },
                    "halt" => GateOp::HAlt { target },
                    "t" => GateOp::T { target },
                    _ => GateOp::S { target },
                }
            }
            [p, q] if p.starts_with("phase(") && p.ends_with(')') => {
                let inner = &p["phase(".len()..p.len() - 1];
                let theta = parse_time(inner)
                    .ok_or_else(|| err(no, format!("malformed phase angle `{inner}`")))?;
                GateOp::phase(theta, parse_qubit(q)?)
            }
            ["cnot", c, t] => GateOp::Cnot {
                control: parse_qubit(c)?,
                target: parse_qubit(t)?,
            },
            ["toffoli", c1, c2, t] => GateOp::Toffoli {
                controls: (parse_qubit(c1)?, parse_qubit(c2)?),
                target: parse_qubit(t)?,
            },
            _ => return Err(err(no, format!("unknown op `{line}`"))),
        };
        op.validate(n_qubits).map_err(|e| err(no, e.to_string()))?;
        ops.push(op);
    }
    Ok(Circuit::new(n_qubits, ops, layer_marks))
}

/// Canonical form: lowercase mnemonics, single spaces, LF endings.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.n_qubits).unwrap();
    for (idx, op) in c.ops.iter().enumerate() {
        if c.layer_marks.contains(&idx) {
            out.push_str("layer\n");
        }
        match op {
            GateOp::Phase { theta, target } => {
                writeln!(out, "phase({theta}) {target}").unwrap();
            }
            GateOp::Cnot { control, target } => {
                writeln!(out, "cnot {control} {target}").unwrap();
            }
            GateOp::Toffoli { controls, target } => {
                writeln!(out, "toffoli {} {} {target}", controls.0, controls.1).unwrap();
            }
            single => {
                writeln!(out, "{} {}", single.name(), single.qubits()[0]).unwrap();
            }
        }
    }
    if c.layer_marks.contains(&c.ops.len()) {
        out.push_str("layer\n");
    }
    out
}

pub fn parse_schedule(text: &str) -> Result<Schedule, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing vertices header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["vertices", n] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| err(header_no, format!("bad vertex count `{n}`")))?,
        _ => return Err(err(header_no, "expected `vertices <n>` header")),
    };

    struct OpenSegment {
        duration: Time,
        edges: Vec<(usize, usize)>,
        loops: Vec<usize>,
        line: usize,
    }

    let mut segments: Vec<Segment> = Vec::new();
    let mut checkpoints: Vec<Checkpoint> = Vec::new();
    let mut open: Option<OpenSegment> = None;

    let close = |seg: OpenSegment, segments: &mut Vec<Segment>| -> Result<(), ParseError> {
        let graph =
            Graph::new(n, seg.edges, seg.loops).map_err(|e| err(seg.line, e.to_string()))?;
        segments.push(Segment {
            graph,
            duration: seg.duration,
        });
        Ok(())
    };

    for (no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_vertex = |tok: &str| -> Result<usize, ParseError> {
            tok.parse::<usize>()
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| err(no, format!("vertex `{tok}` out of range 0..{n}")))
        };
        match tokens[..] {
            ["segment", dur] => {
                if let Some(seg) = open.take() {
                    close(seg, &mut segments)?;
                }
                let duration =
                    parse_time(dur).ok_or_else(|| err(no, format!("bad duration `{dur}`")))?;
                if duration.is_negative() {
                    return Err(err(no, "segment duration must be nonnegative"));
                }
                open = Some(OpenSegment {
                    duration,
                    edges: Vec::new(),
                    loops: Vec::new(),
                    line: no,
                });
            }
            ["edge", u, v] => {
                let seg = open
                    .as_mut()
                    .ok_or_else(|| err(no, "`edge` outside a segment"))?;
                seg.edges.push((parse_vertex(u)?, parse_vertex(v)?));
                seg.line = no;
            }
            ["loop", v] => {
                let seg = open
                    .as_mut()
                    .ok_or_else(|| err(no, "`loop` outside a segment"))?;
                seg.loops.push(parse_vertex(v)?);
                seg.line = no;
            }
            ["end"] => {
                let seg = open
                    .take()
                    .ok_or_else(|| err(no, "`end` without an open segment"))?;
                close(seg, &mut segments)?;
            }
            ["checkpoint", label, at] => {
                if open.is_some() {
                    return Err(err(no, "`checkpoint` inside a segment"));
                }
                let at = parse_time(at)
                    .ok_or_else(|| err(no, format!("bad checkpoint time `{at}`")))?;
                checkpoints.push(Checkpoint {
                    label: label.to_string(),
                    at,
                });
            }
            _ => return Err(err(no, format!("unknown directive `{line}`"))),
        }
    }
    if let Some(seg) = open {
        return Err(err(seg.line, "segment not closed with `end`"));
    }
    Schedule::new(n, segments, checkpoints).map_err(|e| err(1, e.to_string()))
}

pub fn serialize_schedule(s: &Schedule) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", s.n()).unwrap();
    for seg in s.segments() {
        writeln!(out, "segment {}", seg.duration).unwrap();
        for (u, v) in seg.graph.edges() {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        for v in seg.graph.loops() {
            writeln!(out, "loop {v}").unwrap();
        }
        out.push_str("end\n");
    }
    for cp in s.checkpoints() {
        writeln!(out, "checkpoint {} {}", cp.label, cp.at).unwrap();
    }
    out
}

/// An initial-state description: a basis bit string or explicit amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `basis:<bitstring>`, leftmost bit = qubit 1.
    Basis(String),
    /// Comma-separated amplitudes, each `re` or `re:im`.
    Amplitudes(Vec<C64>),
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<StateSpec, ParseError> {
        let text = text.trim();
        if let Some(bits) = text.strip_prefix("basis:") {
            if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(err(1, format!("bad basis bit string `{bits}`")));
            }
            return Ok(StateSpec::Basis(bits.to_string()));
        }
        let mut amps = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (re, im) = match part.split_once(':') {
                Some((re, im)) => (re, im),
                None => (part, "0"),
            };
            let re: f64 = re
                .parse()
                .map_err(|_| err(1, format!("bad amplitude `{part}`")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| err(1, format!("bad amplitude `{part}`")))?;
            amps.push(C64::new(re, im));
        }
        Ok(StateSpec::Amplitudes(amps))
    }

    /// Realize the spec over `n_vertices`, validating length and unit norm
    /// (within 1e-9, then normalized exactly).
    pub fn to_state(&self, n_vertices: usize) -> Result<StateVector, ParseError> {
        match self {
            StateSpec::Basis(bits) => {
                if 1usize << bits.len() != n_vertices {
                    return Err(err(
                        1,
                        format!(
                            "bit string `{bits}` describes {} vertices, schedule has {n_vertices}",
                            1usize << bits.len()
                        ),
                    ));
                }
                let index = usize::from_str_radix(bits, 2).unwrap();
                Ok(StateVector::basis(n_vertices, index))
            }
            StateSpec::Amplitudes(amps) => {
                if amps.len() != n_vertices {
                    return Err(err(
                        1,
                        format!("{} amplitudes given, {n_vertices} expected", amps.len()),
                    ));
                }
                let nrm = norm(amps);
                if (nrm - 1.0).abs() > 1e-9 {
                    return Err(err(1, format!("amplitude list has norm {nrm}, expected 1")));
                }
                let scaled: Vec<C64> = amps.iter().map(|a| a / nrm).collect();
                StateVector::new(scaled).map_err(|e| err(1, e.to_string()))
            }
        }
    }
}

/// CSV with header `t,p0,...,p{n-1}`, one row per sample, LF endings,
/// 16 significant digits per value.
pub fn trace_to_csv(trace: &WalkTrace) -> String {
    let n = trace.final_state.len();
    let mut out = String::from("t");
    for i in 0..n {
        write!(out, ",p{i}").unwrap();
    }
    out.push('\n');
    for (t, row) in trace.times.iter().zip(&trace.probabilities) {
        write!(out, "{t:.15e}").unwrap();
        for p in row {
            write!(out, ",{p:.15e}").unwrap();
        }
        out.push('\n');
    }
    out
}

//! `ctqw`: compile circuits to dynamic-graph schedules, simulate the walks,
//! and verify compiled gates against their textbook unitaries.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

mod textbook;

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use ctqw_core::{
    compile_circuit, compile_gate, compile_gate_legacy, equal_up_to_global_phase, gate_unitary,
    parse_circuit, parse_schedule, serialize_schedule, trace_schedule, trace_to_csv, Circuit,
    GateOp, Schedule, StateSpec, StateVector, Time,
};

#[derive(Parser)]
#[command(name = "ctqw", version, about = "Quantum gates as continuous-time quantum walks on dynamic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower a circuit file to a schedule file.
    Compile {
        /// Circuit DSL input path.
        circuit: PathBuf,
        /// Schedule output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the ancilla-based legacy constructions (X, Y, Z, CNOT only).
        #[arg(long)]
        legacy: bool,
    },
    /// Run a schedule and write the probability trace.
    Simulate {
        /// Schedule input path.
        schedule: PathBuf,
        /// Initial state: `basis:<bits>` or amplitudes `re:im,re:im,...`
        /// (all-zeros basis state if omitted).
        #[arg(long)]
        init: Option<String>,
        /// Sample step in radians (default pi/100).
        #[arg(long)]
        dt: Option<f64>,
        /// Trace CSV output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile one gate and compare its unitary against the textbook matrix.
    Verify {
        /// Gate name: x, y, z, i, h, halt, t, s, phase(<theta>), cnot, toffoli.
        gate: String,
        /// Target spec: `<q>`, `<c>-><t>`, or `(<c1>,<c2>)-><t>`.
        target: String,
        /// Register width.
        n_qubits: usize,
        /// Maximum allowed elementwise deviation.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Reproduce the built-in four-layer demo circuit and check each layer.
    DemoLayers {
        /// Trace CSV output path.
        #[arg(long, default_value = "demo_layers.csv")]
        out: PathBuf,
        /// Sample step in radians (default pi/100).
        #[arg(long)]
        dt: Option<f64>,
        /// Per-amplitude tolerance at each checkpoint.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compile { circuit, out, legacy } => cmd_compile(&circuit, out.as_deref(), legacy),
        Command::Simulate { schedule, init, dt, out } => {
            cmd_simulate(&schedule, init.as_deref(), dt, out.as_deref())
        }
        Command::Verify { gate, target, n_qubits, tol } => {
            cmd_verify(&gate, &target, n_qubits, tol)
        }
        Command::DemoLayers { out, dt, tol } => cmd_demo_layers(&out, dt, tol),
    };
    match code {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &std::path::Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn compile_legacy_circuit(circuit: &Circuit) -> Result<Schedule, String> {
    let mut schedules = Vec::new();
    for op in &circuit.ops {
        schedules.push(compile_gate_legacy(op).map_err(|e| e.to_string())?);
    }
    let n = schedules
        .first()
        .map(|s| s.n())
        .ok_or_else(|| "legacy compile needs at least one gate".to_string())?;
    if schedules.iter().any(|s| s.n() != n) {
        return Err(
            "legacy constructions have fixed vertex counts (X: 2, CNOT: 4, Y/Z: 8) \
             and cannot be chained across gates of different widths"
                .to_string(),
        );
    }
    let mut out = Schedule::empty(n);
    for s in &schedules {
        out.concat(s).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

fn cmd_compile(
    circuit_path: &std::path::Path,
    out: Option<&std::path::Path>,
    legacy: bool,
) -> Result<ExitCode, String> {
    let circuit = parse_circuit(&read(circuit_path)?).map_err(|e| e.to_string())?;
    let schedule = if legacy {
        compile_legacy_circuit(&circuit)?
    } else {
        compile_circuit(&circuit).map_err(|e| e.to_string())?
    };
    let text = serialize_schedule(&schedule);
    let duration = format!("total duration: {}", schedule.total_duration());
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{duration}");
        }
        None => {
            print!("{text}");
            eprintln!("{duration}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn initial_state(init: Option<&str>, n_vertices: usize) -> Result<StateVector, String> {
    match init {
        Some(spec) => StateSpec::parse(spec)
            .and_then(|s| s.to_state(n_vertices))
            .map_err(|e| e.to_string()),
        None => Ok(StateVector::basis(n_vertices, 0)),
    }
}

fn print_final_state(state: &StateVector, to_stderr: bool) {
    for amp in state.amplitudes() {
        let line = format!("{:.15e},{:.15e}", amp.re, amp.im);
        if to_stderr {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
}

fn cmd_simulate(
    schedule_path: &std::path::Path,
    init: Option<&str>,
    dt: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    let schedule = parse_schedule(&read(schedule_path)?).map_err(|e| e.to_string())?;
    let state = initial_state(init, schedule.n())?;
    let dt = dt.unwrap_or(PI / 100.0);
    let trace = trace_schedule(&schedule, &state, dt).map_err(|e| e.to_string())?;
    let csv = trace_to_csv(&trace);
    match out {
        Some(path) => {
            fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display()))?;
            print_final_state(&trace.final_state, false);
        }
        None => {
            print!("{csv}");
            print_final_state(&trace.final_state, true);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_gate(gate: &str, target: &str) -> Result<GateOp, String> {
    let bad = |what: &str| format!("bad target spec `{what}` for gate `{gate}`");
    if gate == "cnot" {
        let (c, t) = target.split_once("->").ok_or_else(|| bad(target))?;
        return Ok(GateOp::Cnot {
            control: c.trim().parse().map_err(|_| bad(target))?,
            target: t.trim().parse().map_err(|_| bad(target))?,
        });
    }
    if gate == "toffoli" {
        let (cs, t) = target.split_once("->").ok_or_else(|| bad(target))?;
        let cs = cs
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad(target))?;
        let (c1, c2) = cs.split_once(',').ok_or_else(|| bad(target))?;
        return Ok(GateOp::Toffoli {
            controls: (
                c1.trim().parse().map_err(|_| bad(target))?,
                c2.trim().parse().map_err(|_| bad(target))?,
            ),
            target: t.trim().parse().map_err(|_| bad(target))?,
        });
    }
    let q: usize = target.parse().map_err(|_| bad(target))?;
    Ok(match gate {
        "x" => GateOp::X { target: q },
        "y" => GateOp::Y { target: q },
        "z" => GateOp::Z { target: q },
        "i" => GateOp::I { target: q },
        "h" => GateOp::H { target: q },
        "halt" => GateOp::HAlt { target: q },
        "t" => GateOp::T { target: q },
        "s" => GateOp::S { target: q },
        _ => {
            if let Some(inner) = gate.strip_prefix("phase(").and_then(|s| s.strip_suffix(')')) {
                let theta = ctqw_core::time::parse_time(inner)
                    .ok_or_else(|| format!("malformed phase angle `{inner}`"))?;
                GateOp::phase(theta, q)
            } else {
                return Err(format!("unknown gate `{gate}`"));
            }
        }
    })
}

fn cmd_verify(gate: &str, target: &str, n_qubits: usize, tol: f64) -> Result<ExitCode, String> {
    let op = parse_gate(gate, target)?;
    let schedule = compile_gate(&op, n_qubits).map_err(|e| e.to_string())?;
    let compiled = gate_unitary(&schedule).map_err(|e| e.to_string())?;
    let reference = textbook::reference_unitary(&op, n_qubits);
    let (ok, phase) =
        equal_up_to_global_phase(&compiled, &reference, tol).map_err(|e| e.to_string())?;
    let mut max_dev = 0.0f64;
    for (ru, rv) in compiled.iter().zip(&reference) {
        for (a, b) in ru.iter().zip(rv) {
            max_dev = max_dev.max((a - b).norm());
        }
    }
    println!("gate: {gate} {target} on {n_qubits} qubit(s)");
    println!("max deviation: {max_dev:.3e}");
    println!("global phase: {:.15e}{:+.15e}i", phase.re, phase.im);
    if ok && max_dev <= tol {
        println!("result: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("result: FAIL");
        Ok(ExitCode::from(1))
    }
}

const DEMO_CIRCUIT: &str =
    "qubits 3\nh 1\nx 2\nh 3\nlayer\ncnot 1 2\nlayer\ny 1\nt 2\nz 3\nlayer\ncnot 3 2";

/// Analytic per-layer states of the demo circuit, starting from |000>.
fn demo_layer_states() -> [Vec<Complex64>; 4] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let i = c(0.0, 1.0);
    let e34 = Complex64::from_polar(1.0, 3.0 * PI / 4.0);
    let mut layer1 = vec![c(0.0, 0.0); 8];
    for v in [2, 3, 6, 7] {
        layer1[v] = c(0.5, 0.0);
    }
    let mut layer2 = vec![c(0.0, 0.0); 8];
    for v in [2, 3, 4, 5] {
        layer2[v] = c(0.5, 0.0);
    }
    let mut layer3 = vec![c(0.0, 0.0); 8];
    layer3[0] = -0.5 * i;
    layer3[1] = 0.5 * i;
    layer3[6] = 0.5 * e34;
    layer3[7] = -0.5 * e34;
    let mut layer4 = vec![c(0.0, 0.0); 8];
    layer4[0] = -0.5 * i;
    layer4[3] = 0.5 * i;
    layer4[5] = -0.5 * e34;
    layer4[6] = 0.5 * e34;
    [layer1, layer2, layer3, layer4]
}

fn cmd_demo_layers(
    out: &std::path::Path,
    dt: Option<f64>,
    tol: f64,
) -> Result<ExitCode, String> {
    let circuit = parse_circuit(DEMO_CIRCUIT).expect("built-in circuit parses");
    let schedule = compile_circuit(&circuit).map_err(|e| e.to_string())?;
    let state = StateVector::basis(8, 0);
    let dt = dt.unwrap_or(PI / 100.0);
    let trace = trace_schedule(&schedule, &state, dt).map_err(|e| e.to_string())?;
    fs::write(out, trace_to_csv(&trace)).map_err(|e| format!("{}: {e}", out.display()))?;

    let expected = demo_layer_states();
    let mut all_ok = true;
    let mut current = state;
    let mut at = Time::ZERO;
    let mut layer = 0usize;
    for seg in schedule.segments() {
        current = ctqw_core::evolve_segment(&seg.graph, &current, seg.duration.as_f64())
            .map_err(|e| e.to_string())?;
        at = at + seg.duration;
        if layer < 4 && schedule.checkpoints().get(layer).map(|cp| cp.at == at) == Some(true) {
            let want = &expected[layer];
            let max_dev = current
                .amplitudes()
                .iter()
                .zip(want)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            let ok = max_dev <= tol;
            all_ok &= ok;
            println!(
                "layer {} (t = {}): max amplitude deviation {max_dev:.3e} [{}]",
                layer + 1,
                at,
                if ok { "ok" } else { "MISMATCH" }
            );
            layer += 1;
        }
    }
    println!("trace written to {}", out.display());
    if all_ok && layer == 4 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

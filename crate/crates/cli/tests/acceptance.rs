//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::Path;
use std::time::{Duration, Instant};

use cebit_core::compiler::{
    compile_circuit, decompose_multiport, decompose_su2_mz, decompose_su2_waveplates, max_cebits,
    resource_report, Gate, GateCircuit,
};
use cebit_core::dsl::{parse_source, render_tokens, tokenize};
use cebit_core::linalg::{Matrix, Unitary2, C64};
use cebit_core::scenarios::*;
use cebit_core::{BasisLabel, CebitRegister};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXPECTATION_TOL: f64 = 1e-12;
const INTENSITY_TOL: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-12;
const COMPILER_TOL: f64 = 1e-10;
const SU2_TOL: f64 = 1e-10;
const MULTIPORT_TOL: f64 = 1e-9;

const AC1_BUDGET: Duration = Duration::from_secs(1);
const AC2_BUDGET: Duration = Duration::from_secs(5);
const AC3_BUDGET: Duration = Duration::from_secs(5);
const AC6_GATE_BUDGET: Duration = Duration::from_millis(100);
const AC6_GHZ_BUDGET: Duration = Duration::from_secs(1);

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_pair(rng: &mut ChaCha8Rng) -> (C64, C64) {
    loop {
        let (a, b) = (random_c(rng), random_c(rng));
        if a.norm_sqr() + b.norm_sqr() > 1e-6 {
            return (a, b);
        }
    }
}

fn overlap(a: [C64; 2], b: [C64; 2]) -> f64 {
    let dot = a[0].conj() * b[0] + a[1].conj() * b[1];
    dot.norm_sqr() / ((a[0].norm_sqr() + a[1].norm_sqr()) * (b[0].norm_sqr() + b[1].norm_sqr()))
}

fn ac1_ghz() -> Check {
    let start = Instant::now();
    let ghz = prepare_named_state(NamedState::Ghz);
    for (setting, expected) in [("xyy", -1.0), ("yxy", -1.0), ("yyx", -1.0), ("xxx", 1.0)] {
        let basis: PauliBasis = setting.parse().unwrap();
        let abstract_value = pauli_expectation(&ghz, &basis).map_err(|e| e.to_string())?;
        ensure((abstract_value - expected).abs() < EXPECTATION_TOL, || {
            format!("{setting}: abstract expectation {abstract_value}")
        })?;
        let out = ghz_experiment(&basis).map_err(|e| e.to_string())?;
        ensure((out.expectation - expected).abs() < EXPECTATION_TOL, || {
            format!("{setting}: optical expectation {}", out.expectation)
        })?;
        let even: Vec<String> = ["000", "011", "101", "110"].map(String::from).to_vec();
        let odd: Vec<String> = ["001", "010", "100", "111"].map(String::from).to_vec();
        let (dark, bright) = if expected < 0.0 { (&even, &odd) } else { (&odd, &even) };
        ensure(&out.dark_ports == dark && &out.bright_ports == bright, || {
            format!("{setting}: dark ports {:?}", out.dark_ports)
        })?;
        for (b, &w) in out.intensities.iter().enumerate() {
            let label = BasisLabel::from_index(b, 3).to_string();
            let target = if dark.contains(&label) { 0.0 } else { 0.25 };
            ensure((w - target).abs() < INTENSITY_TOL, || format!("{setting}: port {label} = {w}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < AC1_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("4 settings in {elapsed:?}"))
}

fn ac2_teleport() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut worst: f64 = 1.0;
    for _ in 0..1000 {
        let (c0, c1) = random_pair(&mut rng);
        let out = teleport(c0, c1).map_err(|e| e.to_string())?;
        for beam in out.beams {
            worst = worst.min(overlap([c0, c1], beam));
        }
        let (p1, p2) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
        let out = teleport_with_phases(p1, p2).map_err(|e| e.to_string())?;
        let input = mach_zehnder_cebit(p1, p2);
        for beam in out.beams {
            worst = worst.min(overlap(input, beam));
        }
    }
    let elapsed = start.elapsed();
    ensure(worst >= 1.0 - FIDELITY_TOL, || format!("worst fidelity {worst}"))?;
    ensure(elapsed < AC2_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("1000 inputs + 1000 phase pairs, worst fidelity 1-{:.1e}, {elapsed:?}", 1.0 - worst))
}

/// Decode with the optical network and return (bright beams, decoded register).
fn decode(reg: &CebitRegister) -> Result<(Vec<usize>, CebitRegister), String> {
    let mut out = reg.clone();
    correction_netlist().run(&mut out).map_err(|e| e.to_string())?;
    let total = out.norm_sqr();
    let bright = (0..4)
        .filter(|&b| {
            let [v, h] = out.jones(b).unwrap();
            (v.norm_sqr() + h.norm_sqr()) / total >= INTENSITY_TOL
        })
        .collect();
    Ok((bright, out))
}

fn ac3_error_correction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    for phase_variant in [false, true] {
        let mut exits = Vec::new();
        for error in FlipTarget::ALL {
            let mut exit: Option<usize> = None;
            for _ in 0..100 {
                let (c0, c1) = random_pair(&mut rng);
                let mut input = vec![c(0.0, 0.0); 8];
                input[0] = c0;
                input[1] = c1;
                let mut reg = CebitRegister::from_amplitudes(input).unwrap();
                encoder_netlist().run(&mut reg).map_err(|e| e.to_string())?;
                ensure(reg == encode_threefold(c0, c1), || "encoder output differs".into())?;
                if phase_variant {
                    apply_hadamard_layer(&mut reg).map_err(|e| e.to_string())?;
                    apply_phase_flip(&mut reg, error).map_err(|e| e.to_string())?;
                    apply_hadamard_layer(&mut reg).map_err(|e| e.to_string())?;
                } else {
                    apply_flip(&mut reg, error).map_err(|e| e.to_string())?;
                }
                let (bright, decoded) = decode(&reg)?;
                ensure(bright.len() == 1, || format!("{error}: bright beams {bright:?}"))?;
                let beam = bright[0];
                let fid = overlap([c0, c1], decoded.jones(beam).unwrap());
                ensure(fid >= 1.0 - FIDELITY_TOL, || format!("{error}: fidelity {fid}"))?;
                ensure(*exit.get_or_insert(beam) == beam, || format!("{error}: exit beam moved"))?;
                let report = error_correction_round(c0, c1, error, phase_variant).map_err(|e| e.to_string())?;
                ensure(report.exit_beam == beam && report.fidelity >= 1.0 - FIDELITY_TOL, || {
                    format!("{error}: report disagrees")
                })?;
            }
            exits.push(exit.unwrap());
        }
        let mut distinct = exits.clone();
        distinct.sort_unstable();
        distinct.dedup();
        ensure(distinct.len() == 4, || format!("exit beams not distinct: {exits:?}"))?;
    }
    let (c0, c1) = (c(0.6, 0.1), c(-0.2, 0.77));
    let mut reg = encode_threefold(c0, c1);
    apply_flip(&mut reg, FlipTarget::Mid).map_err(|e| e.to_string())?;
    let mut expected = vec![c(0.0, 0.0); 8];
    expected[0b010] = c0;
    expected[0b101] = c1;
    ensure(reg.amplitudes() == expected.as_slice(), || "mid-flip intermediate state differs".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < AC3_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("4 errors x 100 inputs x 2 variants, {elapsed:?}"))
}

fn ac4_resources() -> Check {
    let b3 = resource_report(3, None).map_err(|e| e.to_string())?.beams;
    let b5 = resource_report(5, None).map_err(|e| e.to_string())?.beams;
    let m64 = max_cebits(1e64).map_err(|e| e.to_string())?;
    let m72 = max_cebits(1e72).map_err(|e| e.to_string())?;
    ensure((b3, b5, m64, m72) == (4, 16, 214, 240), || {
        format!("beams(3)={b3} beams(5)={b5} max(1e64)={m64} max(1e72)={m72}")
    })?;
    Ok("beams(3)=4 beams(5)=16 max_cebits(1e64)=214 max_cebits(1e72)=240".into())
}

// Kronecker oracle for AC5, independent of the library's lowering.

fn eye(n: usize) -> Matrix {
    Matrix::from_shape_fn((n, n), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    Matrix::from_shape_fn((ra * rb, ca * cb), |(i, j)| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

fn chain(n: usize, f: impl Fn(usize) -> Matrix) -> Matrix {
    (0..n - 1).rev().fold(f(n - 1), |m, k| kron(&m, &f(k)))
}

fn m2(u: [[C64; 2]; 2]) -> Matrix {
    Matrix::from_shape_fn((2, 2), |(i, j)| u[i][j])
}

fn proj(bit: usize) -> Matrix {
    Matrix::from_shape_fn((2, 2), |(i, j)| if i == bit && j == bit { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

fn oracle(gate: &Gate, n: usize) -> Matrix {
    let (o, z, h) = (c(1.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0));
    let x = m2([[z, o], [o, z]]);
    let single = |t: usize, u: Matrix| chain(n, |k| if k == t { u.clone() } else { eye(2) });
    let controlled = |ctl: &[usize], t: usize| {
        let mut total = Matrix::from_elem((1 << n, 1 << n), z);
        for pattern in 0..1usize << ctl.len() {
            let on = pattern == (1 << ctl.len()) - 1;
            total = total
                + chain(n, |k| match ctl.iter().position(|&q| q == k) {
                    Some(p) => proj((pattern >> p) & 1),
                    None if k == t && on => x.clone(),
                    None => eye(2),
                });
        }
        total
    };
    match gate {
        Gate::H { target } => single(*target, m2([[h, h], [h, -h]])),
        Gate::X { target } => single(*target, x.clone()),
        Gate::Z { target } => single(*target, m2([[o, z], [z, -o]])),
        Gate::S { target } => single(*target, m2([[o, z], [z, c(0.0, 1.0)]])),
        Gate::Phase { target, phase } => single(*target, m2([[o, z], [z, C64::from_polar(1.0, *phase)]])),
        Gate::U2 { target, matrix } => single(*target, m2(matrix.0)),
        Gate::Cnot { control, target } => controlled(&[*control], *target),
        Gate::Toffoli { controls, target } => controlled(controls, *target),
        Gate::Expect { .. } => eye(1 << n),
    }
}

fn phase_distance(a: &Matrix, b: &Matrix) -> f64 {
    let dot: C64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let ph = if dot.norm() > 0.0 { dot / dot.norm() } else { c(1.0, 0.0) };
    a.iter().zip(b.iter()).map(|(x, y)| (x * ph - y).norm()).fold(0.0, f64::max)
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| random_c(rng)).collect();
        for q in &cols {
            let p: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= p * qi);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Matrix::from_shape_fn((n, n), |(i, j)| cols[j][i])
}

fn ac5_compiler() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for n in 1..=5 {
        let mut gates = Vec::new();
        for t in 0..n {
            let u = random_unitary(2, &mut rng);
            gates.extend([
                Gate::H { target: t },
                Gate::X { target: t },
                Gate::Z { target: t },
                Gate::S { target: t },
                Gate::Phase { target: t, phase: rng.gen_range(-PI..PI) },
                Gate::U2 {
                    target: t,
                    matrix: Unitary2::new(u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]),
                },
            ]);
        }
        for k in 1..n {
            gates.push(Gate::Cnot { control: k, target: 0 });
            gates.push(Gate::Cnot { control: 0, target: k });
            for j in (1..n).filter(|&j| j != k) {
                gates.push(Gate::Toffoli { controls: [k, j], target: 0 });
            }
        }
        for gate in &gates {
            let circuit = GateCircuit::from_gates(n, vec![gate.clone()]).map_err(|e| e.to_string())?;
            let t = compile_circuit(&circuit)
                .and_then(|net| net.transfer_matrix())
                .map_err(|e| format!("{gate:?}: {e}"))?;
            let err = phase_distance(&t, &oracle(gate, n));
            ensure(err < COMPILER_TOL, || format!("n={n} {gate:?}: error {err:e}"))?;
            checked += 1;
        }
        for _ in 0..20 {
            let seq: Vec<Gate> = (0..8).map(|_| gates[rng.gen_range(0..gates.len())].clone()).collect();
            let expected = seq.iter().fold(eye(1 << n), |acc, g| oracle(g, n).dot(&acc));
            let circuit = GateCircuit::from_gates(n, seq).map_err(|e| e.to_string())?;
            let t = compile_circuit(&circuit)
                .and_then(|net| net.transfer_matrix())
                .map_err(|e| e.to_string())?;
            let err = phase_distance(&t, &expected);
            ensure(err < COMPILER_TOL, || format!("n={n} circuit error {err:e}"))?;
            checked += 1;
        }
    }
    let (mut su2_worst, mut mp_worst) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let m = random_unitary(2, &mut rng);
        let u = Unitary2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let a = decompose_su2_waveplates(&u).map_err(|e| e.to_string())?;
        su2_worst = su2_worst.max(phase_distance(&m2(a.matrix().0), &m));
        let p = decompose_su2_mz(&u).map_err(|e| e.to_string())?;
        su2_worst = su2_worst.max(phase_distance(&m2(p.matrix().0), &m));
    }
    for size in 2..=8 {
        for _ in 0..100 {
            let u = random_unitary(size, &mut rng);
            let mesh = decompose_multiport(&u).map_err(|e| e.to_string())?;
            mp_worst = mp_worst.max(phase_distance(&mesh.matrix().map_err(|e| e.to_string())?, &u));
        }
    }
    ensure(su2_worst < SU2_TOL, || format!("SU(2) reconstruction error {su2_worst:e}"))?;
    ensure(mp_worst < MULTIPORT_TOL, || format!("multiport reconstruction error {mp_worst:e}"))?;
    Ok(format!(
        "{checked} gate/circuit checks; SU(2) worst {su2_worst:.1e}; multiport worst {mp_worst:.1e}"
    ))
}

fn ac6_performance() -> Check {
    let mut reg = CebitRegister::new(20, &BasisLabel::zeros(20)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    reg.apply_on_cebit(10, &Unitary2::hadamard()).map_err(|e| e.to_string())?;
    let gate = start.elapsed();
    ensure(gate < AC6_GATE_BUDGET, || format!("n=20 gate took {gate:?}"))?;
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cebit_cli::dispatch(["cebit", "demo", "ghz", "--setting", "xyy"], &mut out, &mut err);
    let ghz = start.elapsed();
    ensure(code == 0, || "GHZ demo failed".into())?;
    ensure(ghz < AC6_GHZ_BUDGET, || format!("GHZ demo took {ghz:?}"))?;
    Ok(format!("n=20 gate {gate:?}; GHZ demo {ghz:?}"))
}

fn char_at(src: &str, line: usize, column: usize) -> Option<char> {
    src.split_inclusive('\n').nth(line - 1)?.chars().nth(column.checked_sub(1)?)
}

fn ac7_dsl() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut demos = 0;
    for entry in std::fs::read_dir(root.join("demos")).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_none_or(|e| e != "cbt") {
            continue;
        }
        let src = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let name = path.display().to_string();
        let ast = parse_source(&src).map_err(|e| format!("{name}: {e}"))?;
        let again = parse_source(&ast.pretty_print()).map_err(|e| format!("{name} reprint: {e}"))?;
        ensure(again == ast, || format!("{name}: round trip changed the AST"))?;
        let once = render_tokens(&tokenize(&src).map_err(|e| e.to_string())?);
        let twice = render_tokens(&tokenize(&once).map_err(|e| e.to_string())?);
        ensure(once == twice, || format!("{name}: token rendering not idempotent"))?;
        demos += 1;
    }
    ensure(demos > 0, || "no demo files".into())?;
    let mut malformed = 0;
    for entry in std::fs::read_dir(root.join("tests/data/malformed")).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let src = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let name = path.display().to_string();
        let e = match parse_source(&src) {
            Ok(_) => return Err(format!("{name} parsed")),
            Err(e) => e,
        };
        ensure(char_at(&src, e.line, e.column).is_some(), || {
            format!("{name}: position {}:{} outside source", e.line, e.column)
        })?;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cebit_cli::dispatch(["cebit", "run", name.as_str()], &mut out, &mut err);
        let msg = String::from_utf8_lossy(&err).to_string();
        ensure(code == 2, || format!("{name}: exit code {code}"))?;
        ensure(msg.contains(&format!(":{}:{}:", e.line, e.column)), || format!("{name}: {msg}"))?;
        malformed += 1;
    }
    ensure(malformed == 3, || format!("expected 3 malformed corpora, found {malformed}"))?;
    Ok(format!("{demos} demo files round-trip; {malformed} malformed files exit 2 with positions"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 GHZ correlation table", ac1_ghz),
        ("AC2 teleportation", ac2_teleport),
        ("AC3 error correction", ac3_error_correction),
        ("AC4 resource scaling", ac4_resources),
        ("AC5 compiler soundness", ac5_compiler),
        ("AC6 performance", ac6_performance),
        ("AC7 DSL robustness", ac7_dsl),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}

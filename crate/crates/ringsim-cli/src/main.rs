//! `ringsim` command-line front end.
//!
//! Every command writes a plain-text report to stdout starting with
//! `# ringsim-report v1`. Exit codes: 0 success (or decision `One`), 1 for a
//! `Zero`/`NotNecessary` decision, 2 for usage, parse and ring errors, 3 when a
//! requested verification fails.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ringsim::circuits::decide_state;
use ringsim::compiler::{
    build_affine_modkp, build_unitary_modkp, formula_to_reversible, formula_to_reversible_with_inputs,
    lower_to_small_gates, uncompute_wrap, Cnf, ReversiblePredicate,
};
use ringsim::gates::branching_gate_k;
use ringsim::gen::{random_cnf, rng};
use ringsim::oracle::sat_count_capped;
use ringsim::ring::four_squares;
use ringsim::{format_gate, parse_gate, BitString, Circuit, Decision, ModalState, RingElem, RingSpec, StateSpace};

const HEADER: &str = "# ringsim-report v1";

/// Largest support `--show-state` will print.
const MAX_SHOWN_SUPPORT: usize = 1 << 16;

#[derive(Parser)]
#[command(name = "ringsim", version, about = "Exact simulation of modal circuits over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Space {
    Generic,
    L1,
    L2,
}

impl From<Space> for StateSpace {
    fn from(s: Space) -> StateSpace {
        match s {
            Space::Generic => StateSpace::Generic,
            Space::L1 => StateSpace::L1,
            Space::L2 => StateSpace::L2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Invertible,
    Affine,
    Unitary,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Unitary,
    Affine,
    Uncompute,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit on a basis input and decide its output wire.
    Run {
        circuit: PathBuf,
        /// Input bits, e.g. `110`; `-` for a circuit without inputs.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Print the final state in the state-file format.
        #[arg(long)]
        show_state: bool,
        /// Decision space; defaults to the smallest space the gates preserve.
        #[arg(long, value_enum)]
        space: Option<Space>,
    },
    /// Classify a gate file.
    VerifyGate {
        gate: PathBuf,
        /// Exit 3 unless the gate has this property.
        #[arg(long, value_enum)]
        require: Vec<Property>,
    },
    /// Emit the branching gate K over Z_k and check K^T K = I.
    KGate {
        #[arg(long)]
        k: u64,
        /// Write the gate file here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a simulating circuit from a formula, a predicate or a circuit.
    Compile {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Target modulus (unitary and affine modes).
        #[arg(long)]
        k: Option<u64>,
        /// DIMACS formula; its first `--inputs` variables become inputs.
        #[arg(long, conflicts_with_all = ["predicate", "circuit"])]
        cnf: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        inputs: usize,
        /// Circuit file with a `registers n B m` line.
        #[arg(long, conflicts_with = "circuit")]
        predicate: Option<PathBuf>,
        /// Circuit file (uncompute mode).
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Replace wide controlled gates by gates of at most three wires.
        #[arg(long)]
        lower: bool,
        /// Write the circuit here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a formula with the Z_2 unitary pipeline and check it by counting.
    UniqueSat {
        #[arg(long)]
        cnf: PathBuf,
        /// Largest number of variables accepted.
        #[arg(long, default_value_t = 22)]
        max_bits: usize,
    },
    /// Report space membership and necessary values of a state file.
    CheckState { state: PathBuf },
    /// Generate a random DIMACS formula.
    GenCnf {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        clauses: usize,
        /// Literals per clause.
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<ringsim::Error> for Failure {
    fn from(e: ringsim::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

/// A report under construction plus the exit code it ends with.
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn new(command: &str) -> Report {
        Report { text: format!("{HEADER}\ncommand: {command}\n"), code: 0 }
    }

    fn field(&mut self, key: &str, value: impl fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    /// Appends a file body after a `begin <what>` line.
    fn block(&mut self, what: &str, body: &str) {
        let _ = write!(self.text, "begin {what}\n{body}end {what}\n");
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn space_name(s: StateSpace) -> &'static str {
    match s {
        StateSpace::Generic => "generic",
        StateSpace::L1 => "l1",
        StateSpace::L2 => "l2",
    }
}

fn decision_code(d: Decision) -> u8 {
    match d {
        Decision::One => 0,
        Decision::Zero | Decision::NotNecessary => 1,
    }
}

fn parse_bits(s: &str) -> Result<BitString, Failure> {
    match s {
        "-" => Ok(BitString::default()),
        s => Ok(s.parse()?),
    }
}

/// State-file text from sorted support entries.
fn state_text(ring: &RingSpec, n: usize, entries: &[(BitString, RingElem)]) -> String {
    let mut out = format!("{}\nbits {n}\n", ring.header());
    for (x, a) in entries {
        let label = if n == 0 { "-".to_string() } else { x.to_string() };
        let _ = writeln!(out, "{label} {}", ring.format_elem(*a));
    }
    out
}

fn cmd_run(path: &Path, input: &str, show_state: bool, space: Option<Space>) -> Result<Report, Failure> {
    let c = Circuit::parse(&read(path)?)?;
    let x = parse_bits(input)?;
    if x.len() != c.inputs() {
        return Err(Failure::usage(format!("circuit takes {} input bits, got {}", c.inputs(), x.len())));
    }
    let space = space.map(StateSpace::from).unwrap_or_else(|| c.default_space());
    let wire = c.output_wire();
    // Square circuits go through the decision-diagram executor; erasures need
    // the dense one.
    let (decision, entries, n) = if c.all_square() {
        let out = c.run_dd(&x)?;
        let entries = if show_state { Some(out.entries(MAX_SHOWN_SUPPORT)?) } else { None };
        (out.decide(wire, space)?, entries, out.n())
    } else {
        let out = c.run(&x)?;
        let entries = show_state.then(|| {
            out.support().map(|i| (BitString::from_index(i, out.n()), out.amps()[i])).collect()
        });
        (decide_state(&out, wire, space)?, entries, out.n())
    };
    let mut r = Report::new("run");
    r.field("ring", c.ring());
    r.field("inputs", c.inputs());
    r.field("width", c.width());
    r.field("input", if x.is_empty() { "-".to_string() } else { x.to_string() });
    r.field("output_wire", wire);
    r.field("space", space_name(space));
    r.field("decision", decision);
    if let Some(entries) = entries {
        r.block("state", &state_text(c.ring(), n, &entries));
    }
    r.code = decision_code(decision);
    Ok(r)
}

fn cmd_verify_gate(path: &Path, require: &[Property]) -> Result<Report, Failure> {
    let g = parse_gate(&read(path)?)?;
    let cl = g.classification();
    let mut r = Report::new("verify-gate");
    r.field("ring", g.ring());
    r.field("arity", format!("{} -> {}", g.arity(), g.out_arity()));
    r.text.push_str(&format!(
        "invertible: {}, affine: {}, unitary: {}\n",
        yes_no(cl.invertible),
        yes_no(cl.affine),
        yes_no(cl.unitary)
    ));
    for (p, t) in &cl.s2_threshold {
        r.field(&format!("unitary_mod_{p}^t"), format!("t = {t}"));
    }
    if let Some(ok) = cl.s2_congruence {
        r.field("s2_congruence", yes_no(ok));
    }
    let failed: Vec<&str> = require
        .iter()
        .filter(|p| match p {
            Property::Invertible => !cl.invertible,
            Property::Affine => !cl.affine,
            Property::Unitary => !cl.unitary,
        })
        .map(|p| match p {
            Property::Invertible => "invertible",
            Property::Affine => "affine",
            Property::Unitary => "unitary",
        })
        .collect();
    if !require.is_empty() {
        r.field("required", if failed.is_empty() { "pass".to_string() } else { format!("FAIL ({})", failed.join(", ")) });
    }
    if !failed.is_empty() {
        r.code = 3;
    }
    Ok(r)
}

fn cmd_k_gate(k: u64, out: Option<&Path>) -> Result<Report, Failure> {
    let ring = RingSpec::cyclic(k)?;
    let g = branching_gate_k(&ring)?;
    let m = g.matrix()?;
    let ok = m.transpose().mul(&ring, &m)?.is_identity(&ring);
    let (a, b, c, d) = four_squares(k - 1);
    let mut r = Report::new("k-gate");
    r.field("ring", &ring);
    r.field("four_squares", format!("({a},{b},{c},{d})  sum {}", a * a + b * b + c * c + d * d));
    r.field("verification", if ok { "K^T K = I pass" } else { "K^T K = I FAIL" });
    let text = format_gate(&g)?;
    match out {
        Some(p) => {
            write(p, &text)?;
            r.field("gate_file", p.display());
        }
        None => r.block("gate", &text),
    }
    if !ok {
        r.code = 3;
    }
    Ok(r)
}

struct CompileArgs<'a> {
    mode: Mode,
    k: Option<u64>,
    cnf: Option<&'a Path>,
    inputs: usize,
    predicate: Option<&'a Path>,
    circuit: Option<&'a Path>,
    lower: bool,
    out: Option<&'a Path>,
}

fn load_predicate(a: &CompileArgs<'_>) -> Result<ReversiblePredicate, Failure> {
    match (a.cnf, a.predicate) {
        (Some(p), _) => Ok(formula_to_reversible_with_inputs(&Cnf::parse_dimacs(&read(p)?)?, a.inputs)?),
        (None, Some(p)) => Ok(ReversiblePredicate::parse(&read(p)?)?),
        (None, None) => Err(Failure::usage("this mode needs --cnf or --predicate")),
    }
}

fn cmd_compile(a: CompileArgs<'_>) -> Result<Report, Failure> {
    let mut r = Report::new("compile");
    let ring = |k: Option<u64>| -> Result<RingSpec, Failure> {
        Ok(RingSpec::cyclic(k.ok_or_else(|| Failure::usage("this mode needs --k"))?)?)
    };
    let c = match a.mode {
        Mode::Unitary => {
            let ring = ring(a.k)?;
            let pred = load_predicate(&a)?;
            let (c, lay) = build_unitary_modkp(&pred, &ring)?;
            r.field("mode", "unitary");
            r.field("ring", &ring);
            r.field("registers", format!("n={} B={} m={}", pred.n(), pred.b(), pred.m()));
            for (name, wires) in lay.describe() {
                r.field(&format!("register {name}"), wire_list(&wires));
            }
            r.field("answer_wire", lay.a);
            r.field(
                "width",
                format!("{} = n+5B+3m+1 = {}", lay.width(), pred.n() + 5 * pred.b() + 3 * pred.m() + 1),
            );
            c
        }
        Mode::Affine => {
            let ring = ring(a.k)?;
            let pred = load_predicate(&a)?;
            let (c, lay) = build_affine_modkp(&pred, &ring)?;
            let (n, b, m) = (lay.n, lay.b, lay.m);
            r.field("mode", "affine");
            r.field("ring", &ring);
            r.field("registers", format!("n={n} B={b} m={m}"));
            r.field("register X", wire_list(&(1..=n).collect::<Vec<_>>()));
            r.field("register B", wire_list(&(n + 1..=n + b).collect::<Vec<_>>()));
            r.field("register W", wire_list(&(n + b + 1..=n + b + m).collect::<Vec<_>>()));
            r.field("register S", wire_list(&(n + b + m + 1..=n + 2 * b + m).collect::<Vec<_>>()));
            r.field("register c", lay.width);
            r.field("answer_wire", lay.answer);
            r.field("width", format!("{} before erasure, 1 after", lay.width));
            c
        }
        Mode::Uncompute => {
            let path = a.circuit.ok_or_else(|| Failure::usage("uncompute mode needs --circuit"))?;
            let src = Circuit::parse(&read(path)?)?;
            let c = uncompute_wrap(&src)?;
            r.field("mode", "uncompute");
            r.field("ring", c.ring());
            r.field("source_width", src.width());
            r.field("answer_wire", c.output_wire());
            r.field("width", c.width());
            c
        }
    };
    let c = if a.lower {
        let low = lower_to_small_gates(&c, 3)?;
        r.field("lowered", format!("max arity {}, pool {}", low.circuit.max_arity(), low.pool));
        r.field("lowered_width", low.circuit.width());
        low.circuit
    } else {
        c
    };
    r.field("gates", c.gates().count());
    let text = c.to_text();
    match a.out {
        Some(p) => {
            write(p, &text)?;
            r.field("circuit_file", p.display());
        }
        None => r.block("circuit", &text),
    }
    Ok(r)
}

fn wire_list(wires: &[usize]) -> String {
    if wires.is_empty() {
        return "-".into();
    }
    wires.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_unique_sat(path: &Path, max_bits: usize) -> Result<Report, Failure> {
    let cnf = Cnf::parse_dimacs(&read(path)?)?;
    let models = sat_count_capped(&cnf, max_bits)?;
    let ring = RingSpec::cyclic(2)?;
    let pred = formula_to_reversible(&cnf);
    let (c, lay) = build_unitary_modkp(&pred, &ring)?;
    let decision = c.run_dd(&BitString::default())?.decide(lay.a, StateSpace::L2)?;
    let parity = if models % 2 == 1 { Decision::One } else { Decision::Zero };
    let promise = models <= 1;
    let mut r = Report::new("unique-sat");
    r.field("vars", cnf.vars());
    r.field("clauses", cnf.clauses().len());
    r.field("width", c.width());
    r.text.push_str(&format!("circuit: {decision}, referee: {models}\n"));
    if !promise {
        r.field(
            "verdict",
            format!("PromiseViolated ({models} models; the circuit reports the count mod 2, {parity})"),
        );
    } else {
        r.field("verdict", decision);
    }
    if decision != parity {
        r.field("agreement", "FAIL");
        r.code = 3;
    } else {
        r.field("agreement", "pass");
        r.code = if promise { decision_code(decision) } else { 1 };
    }
    Ok(r)
}

fn cmd_check_state(path: &Path) -> Result<Report, Failure> {
    let s = ModalState::parse(&read(path)?)?;
    let ring = s.ring();
    let mem = s.membership();
    let mut r = Report::new("check-state");
    r.field("ring", ring);
    r.field("bits", s.n());
    r.field("support", s.support().count());
    r.field("norm", ring.format_elem(s.norm()));
    r.field("sum", ring.format_elem(s.sum()));
    r.field("generic", yes_no(mem.generic));
    r.field("l1", yes_no(mem.l1));
    r.field("l2", yes_no(mem.l2));
    let spaces = [StateSpace::Generic, StateSpace::L1, StateSpace::L2];
    for p in 1..=s.n() {
        let mut cells = Vec::new();
        for space in spaces {
            let val = [false, true]
                .into_iter()
                .map(|b| s.is_necessary(&[p], &BitString(vec![b]), space).map(|nec| nec.then_some(b)))
                .collect::<ringsim::Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            let cell = match val {
                Some(b) => u8::from(b).to_string(),
                None => "-".into(),
            };
            cells.push(format!("{}={cell}", space_name(space)));
        }
        r.field(&format!("necessary {p}"), cells.join(" "));
    }
    Ok(r)
}

fn cmd_gen_cnf(seed: u64, vars: usize, clauses: usize, width: usize, out: Option<&Path>) -> Result<Report, Failure> {
    if vars == 0 || width == 0 {
        return Err(Failure::usage("need at least one variable and one literal per clause"));
    }
    let cnf = random_cnf(&mut rng(seed), vars, clauses, width);
    let mut r = Report::new("gen-cnf");
    r.field("seed", seed);
    r.field("vars", vars);
    r.field("clauses", clauses);
    let text = cnf.to_dimacs();
    match out {
        Some(p) => {
            write(p, &text)?;
            r.field("cnf_file", p.display());
        }
        None => r.block("cnf", &text),
    }
    Ok(r)
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Run { circuit, input, show_state, space } => cmd_run(&circuit, &input, show_state, space),
        Command::VerifyGate { gate, require } => cmd_verify_gate(&gate, &require),
        Command::KGate { k, out } => cmd_k_gate(k, out.as_deref()),
        Command::Compile { mode, k, cnf, inputs, predicate, circuit, lower, out } => cmd_compile(CompileArgs {
            mode,
            k,
            cnf: cnf.as_deref(),
            inputs,
            predicate: predicate.as_deref(),
            circuit: circuit.as_deref(),
            lower,
            out: out.as_deref(),
        }),
        Command::UniqueSat { cnf, max_bits } => cmd_unique_sat(&cnf, max_bits),
        Command::CheckState { state } => cmd_check_state(&state),
        Command::GenCnf { seed, vars, clauses, width, out } => cmd_gen_cnf(seed, vars, clauses, width, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

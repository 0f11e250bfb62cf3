//! `tpencil`: singularity checks, principal minors, kernel vectors and
//! counterexample hunts for Töplitz pencils `T(x) = M0 + x·M1`.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tpencil_core::criteria::{evaluate_unchecked, sm_values, CriterionReport, Witness};
use tpencil_core::field::{parse_list, Field, FieldDescriptor, PrimeField, Rationals, Scalar};
use tpencil_core::hunt::{self, Counterexample, HuntConfig, HuntReport, Violation};
use tpencil_core::kronecker::BlockPencil;
use tpencil_core::minors::{principal_minors, MinorVector};
use tpencil_core::pencil::PencilInstance;

const EXIT_USAGE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;
const EXIT_ALARM: u8 = 4;

#[derive(Parser)]
#[command(name = "tpencil", version, about = "Exact singularity criteria for Töplitz pencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant test, criterion (S) and criterion (SM) for one instance.
    Verify(InstanceArgs),
    /// Principal minors of M0 and the (SM) objects X, y.
    Minors(InstanceArgs),
    /// A minimal-degree polynomial kernel vector of T(x).
    Kernel(InstanceArgs),
    /// Search for (SM) solutions with y != 0.
    Hunt(HuntArgs),
    /// Worked examples: a geometric instance and the n = 4 (SM) system.
    Demo(OutputArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Work in GF(p).
    #[arg(long, value_name = "p", conflicts_with = "rational")]
    prime: Option<u64>,
    /// Work over the rationals (default).
    #[arg(long)]
    rational: bool,
}

impl FieldArgs {
    fn descriptor(&self) -> Result<FieldDescriptor, Failure> {
        match self.prime {
            Some(p) => FieldDescriptor::prime(p).map_err(|e| Failure::Usage(e.to_string())),
            None => Ok(FieldDescriptor::Rational),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InstanceArgs {
    /// Coefficients c1,...,c_{n+1}, e.g. "1,2,4,8" or "1/2,3,-1".
    #[arg(long = "c", value_name = "list", allow_hyphen_values = true)]
    c: String,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long, value_name = "n")]
    n: usize,
    #[command(flatten)]
    field: FieldArgs,
    /// Enumerate every minor tuple (prime fields only).
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    /// Sample random coefficient lists (default).
    #[arg(long)]
    random: bool,
    #[arg(long, value_name = "t", default_value_t = 1000)]
    trials: u64,
    #[arg(long, value_name = "s", default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, value_name = "w")]
    workers: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
}

/// The structured output document. Every key is always present.
#[derive(Debug, Default, Serialize)]
struct Document {
    n: Option<usize>,
    c: Option<Vec<Scalar>>,
    singular: Option<bool>,
    geometric: Option<bool>,
    lambda: Option<Scalar>,
    minors: Option<Vec<Scalar>>,
    s_holds: Option<bool>,
    sm_holds: Option<bool>,
    s_witness: Option<Witness<Scalar>>,
    sm_witness: Option<Witness<Scalar>>,
    d: Option<usize>,
    /// Coefficients of each component of f(x), constant term first.
    kernel: Option<Vec<Vec<Scalar>>>,
    hunt: Option<HuntSummary>,
}

#[derive(Debug, Serialize)]
struct HuntSummary {
    scanned: u64,
    valid: u64,
    sm_solutions: u64,
    counterexamples: Vec<Counterexample>,
    violations: Vec<Violation>,
}

struct InstanceOutput {
    doc: Document,
    text: Vec<String>,
    alarm: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify(args) => instance_command(&args, Verify),
        Command::Minors(args) => instance_command(&args, Minors),
        Command::Kernel(args) => instance_command(&args, Kernel),
        Command::Hunt(args) => hunt_command(&args),
        Command::Demo(args) => Ok(demo(args.json)),
    }
}

trait InstanceCommand {
    fn apply<F: Field>(&self, p: &PencilInstance<F>) -> InstanceOutput;
}

macro_rules! instance_command {
    ($name:ident, $body:expr) => {
        struct $name;
        impl InstanceCommand for $name {
            fn apply<F: Field>(&self, p: &PencilInstance<F>) -> InstanceOutput {
                $body(p)
            }
        }
    };
}

instance_command!(Verify, verify_instance);
instance_command!(Minors, minors_instance);
instance_command!(Kernel, kernel_instance);

fn instance_command(args: &InstanceArgs, cmd: impl InstanceCommand) -> Result<u8, Failure> {
    let desc = args.field.descriptor()?;
    let scalars = parse_list(&args.c, desc).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = match desc {
        FieldDescriptor::Rational => cmd.apply(&load(Rationals, &scalars)?),
        FieldDescriptor::Prime(p) => {
            let f = PrimeField::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
            cmd.apply(&load(f, &scalars)?)
        }
    };
    emit(&out.doc, &out.text, args.output.json);
    Ok(if out.alarm { EXIT_ALARM } else { 0 })
}

fn load<F: Field>(f: F, scalars: &[Scalar]) -> Result<PencilInstance<F>, Failure> {
    PencilInstance::from_scalars(f, scalars).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(doc: &Document, text: &[String], json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn list(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn describe(holds: bool, witness: &Option<Witness<Scalar>>, det_name: &str) -> String {
    match (holds, witness) {
        (true, _) => "holds".into(),
        (false, Some(Witness::Determinant { value })) => format!("fails: {det_name} = {value}"),
        (false, Some(Witness::Power { k, value })) => format!("fails at k = {k}: value {value}"),
        (false, None) => "fails".into(),
    }
}

fn kernel_fields<F: Field>(p: &PencilInstance<F>, doc: &mut Document, text: &mut Vec<String>) {
    let f = p.field();
    match BlockPencil::from_instance(p).kernel_poly() {
        Ok(Some(res)) => {
            doc.d = Some(res.minimal_index);
            doc.kernel = Some(
                res.kernel
                    .iter()
                    .map(|q| (0..=res.minimal_index).map(|k| f.to_scalar(&q.coeff(f, k))).collect())
                    .collect(),
            );
            let comps: Vec<String> = res.kernel.iter().map(|q| q.display(f)).collect();
            text.push(format!("minimal index d = {}", res.minimal_index));
            text.push(format!("f(x) = ({})", comps.join(", ")));
        }
        Ok(None) => text.push("regular pencil".into()),
        Err(e) => text.push(format!("kernel extraction failed: {e}")),
    }
}

fn report_fields(report: &CriterionReport, doc: &mut Document) {
    doc.n = Some(report.n);
    doc.c = Some(report.c.clone());
    doc.singular = Some(report.singular_det);
    doc.geometric = Some(report.geometric.is_some());
    doc.lambda = report.geometric.clone();
    doc.s_holds = Some(report.s_holds);
    doc.sm_holds = Some(report.sm_holds);
    doc.s_witness = report.s_witness.clone();
    doc.sm_witness = report.sm_witness.clone();
}

fn verify_instance<F: Field>(p: &PencilInstance<F>) -> InstanceOutput {
    let f = p.field();
    let report = evaluate_unchecked(p);
    let mut doc = Document::default();
    report_fields(&report, &mut doc);
    doc.minors = Some(minor_scalars(&principal_minors(p)));
    let det = p.det_pencil();
    let mut text = vec![
        format!("n = {} over {}", report.n, report.field),
        format!("c = {}", list(&report.c)),
        format!("det T(x) = {}", det.display(f)),
        format!("singular: {}", report.singular_det),
        match &report.geometric {
            Some(l) => format!("geometric: yes, lambda = {l}"),
            None => "geometric: no".into(),
        },
        format!("(S): {}", describe(report.s_holds, &report.s_witness, "c_(n+1) - wQ^-1 v")),
        format!("(SM): {}", describe(report.sm_holds, &report.sm_witness, "m_n")),
    ];
    kernel_fields(p, &mut doc, &mut text);
    let alarm = !report.is_consistent();
    if alarm {
        text.push("ALARM: determinant test, (S) and (SM) disagree".into());
    }
    InstanceOutput { doc, text, alarm }
}

fn minor_scalars<F: Field>(mv: &MinorVector<F>) -> Vec<Scalar> {
    mv.as_slice().iter().map(|m| mv.field().to_scalar(m)).collect()
}

fn minors_instance<F: Field>(p: &PencilInstance<F>) -> InstanceOutput {
    let f = p.field();
    let mv = principal_minors(p);
    let ms = minor_scalars(&mv);
    let mut doc = Document {
        n: Some(p.n()),
        c: Some(p.to_scalars()),
        minors: Some(ms.clone()),
        ..Document::default()
    };
    let mut text = vec![
        format!("n = {} over {}", p.n(), f.descriptor()),
        format!("m = {}  (m_0..m_n, c_1 normalized to 1)", list(&ms)),
    ];
    if p.n() >= 3 {
        let obj = mv.sm_objects();
        text.push("X =".into());
        for row in obj.x.to_rows() {
            let row: Vec<Scalar> = row.iter().map(|e| f.to_scalar(e)).collect();
            text.push(format!("  {}", list(&row)));
        }
        let y: Vec<Scalar> = obj.y.iter().map(|e| f.to_scalar(e)).collect();
        text.push(format!("y = {}", list(&y)));
        let det_x = mv.det_x().expect("n >= 3");
        text.push(format!("det X = {}", f.to_scalar(&det_x)));
    } else {
        text.push("X and y are empty for n = 2".into());
    }
    doc.geometric = Some(p.is_geometric().is_some());
    InstanceOutput { doc, text, alarm: false }
}

fn kernel_instance<F: Field>(p: &PencilInstance<F>) -> InstanceOutput {
    let mut doc = Document {
        n: Some(p.n()),
        c: Some(p.to_scalars()),
        ..Document::default()
    };
    let mut text = vec![format!("n = {} over {}", p.n(), p.field().descriptor())];
    kernel_fields(p, &mut doc, &mut text);
    InstanceOutput { doc, text, alarm: false }
}

fn hunt_command(args: &HuntArgs) -> Result<u8, Failure> {
    let usage = |e: hunt::HuntError| Failure::Usage(e.to_string());
    let desc = args.field.descriptor()?;
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = if args.exhaustive {
        let FieldDescriptor::Prime(p) = desc else {
            return Err(usage(hunt::HuntError::RationalExhaustive));
        };
        HuntConfig::exhaustive(args.n, p).map_err(usage)?
    } else {
        HuntConfig::random(args.n, desc, args.trials, args.seed).map_err(usage)?
    };
    let cfg = cfg.with_workers(workers);
    cfg.validate().map_err(usage)?;
    let report = hunt::run(&cfg).map_err(usage)?;
    emit(&hunt_document(&report), &hunt_text(&report), args.output.json);
    Ok(hunt_exit(&report))
}

fn hunt_exit(report: &HuntReport) -> u8 {
    if !report.counterexamples.is_empty() {
        EXIT_COUNTEREXAMPLE
    } else if !report.equivalence_violations.is_empty() {
        EXIT_ALARM
    } else {
        0
    }
}

fn hunt_document(report: &HuntReport) -> Document {
    Document {
        n: Some(report.n),
        hunt: Some(HuntSummary {
            scanned: report.tuples_scanned,
            valid: report.valid_instances,
            sm_solutions: report.sm_solutions,
            counterexamples: report.counterexamples.clone(),
            violations: report.equivalence_violations.clone(),
        }),
        ..Document::default()
    }
}

fn hunt_text(report: &HuntReport) -> Vec<String> {
    let mode = match report.seed {
        Some(seed) => format!("random, seed {seed}"),
        None => "exhaustive".into(),
    };
    let mut text = vec![
        format!("hunt n = {} over {} ({mode})", report.n, report.field),
        format!("scanned: {}", report.tuples_scanned),
        format!("valid: {}", report.valid_instances),
        format!("sm_solutions: {}", report.sm_solutions),
        format!("counterexamples: {}", report.counterexamples.len()),
        format!("violations: {}", report.equivalence_violations.len()),
    ];
    for cx in &report.counterexamples {
        text.push(format!("  counterexample m = {}, c = {}", list(&cx.minors), list(&cx.c)));
    }
    for v in &report.equivalence_violations {
        text.push(format!("  violation {:?}: c = {}", v.kind, list(&v.c)));
    }
    if let Some(note) = &report.note {
        text.push(format!("note: {note}"));
    }
    text
}

fn demo(json: bool) -> u8 {
    let mut docs = Vec::new();
    let mut text = vec!["# geometric instance c = (1, 2, 4, 8), lambda = 2".to_string()];
    let geo = PencilInstance::from_i64(Rationals, &[1, 2, 4, 8]).expect("nonzero");
    let out = verify_instance(&geo);
    let mut code = if out.alarm { EXIT_ALARM } else { 0 };
    text.extend(out.text);
    docs.push(out.doc);

    text.push(String::new());
    text.push("# n = 4 (SM) system {-2 m2 m3, m2^3 + m3^2 + 2 m1 m2 m3}, m4 = 0".into());
    let f = Rationals;
    for m in [[1, 1, 1], [2, -1, 3], [3, 0, 0]] {
        let ms: Vec<_> = m.iter().map(|&v| f.from_i64(v)).chain([f.zero()]).collect();
        let mv = MinorVector::from_minors(f, &ms).expect("n = 4");
        let vals: Vec<Scalar> = sm_values(&mv, 1).iter().map(|v| f.to_scalar(v)).collect();
        text.push(format!("(m1, m2, m3) = {m:?}: (SM) values {}", list(&vals)));
    }
    for p in [5, 7] {
        let cfg = HuntConfig::exhaustive(4, p).expect("prime");
        let report = hunt::exhaustive_scan(&cfg).expect("valid config");
        text.push(format!(
            "GF({p}): {} (SM) solutions (expected {}), {} counterexamples",
            report.sm_solutions,
            p - 1,
            report.counterexamples.len()
        ));
        if report.sm_solutions != p - 1 || !report.conjecture_holds() {
            code = EXIT_ALARM;
        }
        docs.push(hunt_document(&report));
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&docs).expect("serializable"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
    code
}

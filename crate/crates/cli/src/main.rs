//! `pdvr`: batch front end for periodic-dvr.
//!
//! Inputs are file paths or inline JSON (anything starting with `{`).
//! Exit status: 0 success, 1 a verification came out false, 2 bad input.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use periodic_dvr::ar::{self, ARReport};
use periodic_dvr::classify::{self, IndecompLabel};
use periodic_dvr::complex::{self, ChainMap2, TwoPeriodicComplex};
use periodic_dvr::io;
use periodic_dvr::matrix::RMatrix;
use periodic_dvr::minimal;
use periodic_dvr::smith::Subquotient;
use periodic_dvr::strictify;
use periodic_dvr::{selftest, Error, FieldSpec};

#[derive(Parser, Debug)]
#[command(name = "pdvr", version, about = "2-periodic complexes over k[x]_(x)")]
struct Cli {
    /// Residue field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: FieldSpec,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a complex document parses and satisfies d^2 = 0.
    Validate {
        input: String,
    },
    /// Split into a minimal part and contractible summands.
    Reduce {
        input: String,
    },
    /// Invariant factors of H^0 and H^1.
    Cohomology {
        input: String,
    },
    /// Decompose into K(j) and K(j)[1].
    Decompose {
        input: String,
        /// Also emit the certificate maps.
        #[arg(long)]
        certificate: bool,
    },
    Dual {
        input: String,
    },
    Shift {
        input: String,
    },
    /// Direct sum of one or more complexes.
    Sum {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Tensor product X ⊗ Y.
    Tensor {
        x: String,
        y: String,
    },
    /// The Hom module H^0 Hom^c(X, Y) with generators.
    Hom {
        x: String,
        y: String,
    },
    /// The internal Hom complex Hom^c(X, Y).
    Homc {
        x: String,
        y: String,
    },
    /// Mapping cone of a chain map.
    Cone {
        map: String,
    },
    /// Whether a map is null-homotopic, or two maps are homotopic.
    Homotopic {
        map: String,
        other: Option<String>,
    },
    /// Strictify quasi-periodic data and check the window identity.
    Strictify {
        input: String,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// The AR-triangle ending at K(i) or K(i)[1].
    ArTriangle {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        shifted: bool,
    },
    /// Check the AR axioms for the triangle at K(i).
    ArVerify {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        shifted: bool,
        /// Test objects K(j), K(j)[1] with j <= bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// AR quiver on K(j), K(j)[1] with j <= max.
    Quiver {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Compare lengths of Hom(X, Y) and Hom(Y, F X).
    SerreCheck {
        x: String,
        y: String,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 8)]
        cases: usize,
    },
}

enum Failure {
    /// Exit 1, with the document describing the failed check.
    Verification(Output),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A result in all formats the command supports.
struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            dot: None,
        }
    }
}

struct Ctx {
    field: FieldSpec,
}

impl Ctx {
    fn load(&self, input: &str) -> Result<(Value, Option<PathBuf>), Failure> {
        if input.trim_start().starts_with('{') {
            return Ok((io::parse_json(input)?, None));
        }
        let path = Path::new(input);
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
        let v = io::parse_json(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
        Ok((v, path.parent().map(Path::to_path_buf)))
    }

    fn complex(&self, input: &str) -> Result<TwoPeriodicComplex, Failure> {
        let (v, _) = self.load(input)?;
        Ok(io::complex_from_value(&v, Some(self.field))?)
    }

    fn map(&self, input: &str) -> Result<ChainMap2, Failure> {
        let (v, dir) = self.load(input)?;
        let resolve = |s: &str| -> Result<Value, Error> {
            if s.trim_start().starts_with('{') {
                return io::parse_json(s);
            }
            let p = match &dir {
                Some(d) => d.join(s),
                None => PathBuf::from(s),
            };
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            io::parse_json(&text)
        };
        Ok(io::map_from_value(&v, Some(self.field), &resolve)?)
    }
}

fn matrix_text(name: &str, m: &RMatrix) -> String {
    let mut s = format!("{name} ({}x{}):\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn complex_text(x: &TwoPeriodicComplex) -> String {
    format!(
        "complex over {} with ranks ({}, {})\n{}{}",
        x.field(),
        x.r0(),
        x.r1(),
        matrix_text("d0", x.d0()),
        matrix_text("d1", x.d1())
    )
}

fn complex_output(x: &TwoPeriodicComplex) -> Output {
    Output::new(io::complex_to_json(x), complex_text(x))
}

fn map_text(name: &str, f: &ChainMap2) -> String {
    format!(
        "{name}:\n{}{}",
        matrix_text("f0", f.f0()),
        matrix_text("f1", f.f1())
    )
}

fn subquotient_json(s: &Subquotient) -> Value {
    json!({ "factors": s.factors, "free_rank": s.free_rank, "length": s.length() })
}

fn subquotient_text(s: &Subquotient) -> String {
    let mut parts: Vec<String> = s.factors.iter().map(|a| format!("R/x^{a}")).collect();
    if s.free_rank > 0 {
        parts.push(format!("R^{}", s.free_rank));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn report_text(label: IndecompLabel, r: &ARReport) -> String {
    let middle = r.middle.as_ref().map_or("?".into(), ToString::to_string);
    let mut s = format!(
        "AR-triangle at {label}: middle {middle}\n  axiom 1: {}\n  axiom 2: {}\n  axiom 3: {} ({} test objects, {} samples)\n",
        r.rar1_ok,
        r.rar2_ok,
        r.rar3_ok,
        r.tested_family.len(),
        r.samples
    );
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "  counterexample: {} generator {}", c.label, c.generator);
    }
    s
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = Ctx { field: cli.field };
    let f = cli.field;
    match &cli.command {
        Command::Validate { input } => {
            let (v, _) = ctx.load(input)?;
            match io::complex_from_value(&v, Some(f)) {
                Ok(x) => Ok(Output::new(
                    json!({ "valid": true, "r0": x.r0(), "r1": x.r1() }),
                    format!(
                        "valid complex over {f} with ranks ({}, {})\n",
                        x.r0(),
                        x.r1()
                    ),
                )),
                Err(e @ Error::CompositeNotZero(..)) => Err(Failure::Verification(Output::new(
                    json!({ "valid": false, "reason": e.to_string() }),
                    format!("invalid: {e}\n"),
                ))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Reduce { input } => {
            let x = ctx.complex(input)?;
            let sr = minimal::reduce(&x);
            if !sr.verify(&x) {
                return Err(Failure::Verification(Output::new(
                    json!({ "verified": false }),
                    "split certificate failed to verify\n".into(),
                )));
            }
            Ok(Output::new(
                json!({
                    "minimal": io::complex_to_json(&sr.minimal),
                    "trivials": sr.trivials,
                    "into": io::map_to_json(&sr.into),
                    "back": io::map_to_json(&sr.back),
                }),
                format!(
                    "minimal part:\n{}trivial summands: {} of type 1 (d1 = 1), {} of type 2 (d0 = 1)\n",
                    complex_text(&sr.minimal),
                    sr.trivials.type1,
                    sr.trivials.type2
                ),
            ))
        }
        Command::Cohomology { input } => {
            let c = ctx.complex(input)?.cohomology();
            Ok(Output::new(
                json!({ "h0": subquotient_json(&c.h0), "h1": subquotient_json(&c.h1) }),
                format!(
                    "H^0 = {}\nH^1 = {}\n",
                    subquotient_text(&c.h0),
                    subquotient_text(&c.h1)
                ),
            ))
        }
        Command::Decompose { input, certificate } => {
            let x = ctx.complex(input)?;
            let d = classify::decompose(&x)?;
            if !d.verify(&x) {
                return Err(Failure::Verification(Output::new(
                    json!({ "verified": false }),
                    "decomposition certificate failed to verify\n".into(),
                )));
            }
            let mut js = json!({ "multiset": d.multiset, "trivials": d.split.trivials });
            let mut text = format!(
                "{}\ntrivial summands: {} of type 1, {} of type 2\n",
                d.multiset, d.split.trivials.type1, d.split.trivials.type2
            );
            if *certificate {
                js["to_blocks"] = io::map_to_json(&d.to_blocks);
                js["from_blocks"] = io::map_to_json(&d.from_blocks);
                js["split"] = json!({
                    "into": io::map_to_json(&d.split.into),
                    "back": io::map_to_json(&d.split.back),
                });
                text.push_str(&map_text("to blocks", &d.to_blocks));
                text.push_str(&map_text("from blocks", &d.from_blocks));
            }
            Ok(Output::new(js, text))
        }
        Command::Dual { input } => Ok(complex_output(&ctx.complex(input)?.dual())),
        Command::Shift { input } => Ok(complex_output(&ctx.complex(input)?.shift())),
        Command::Sum { inputs } => {
            let xs = inputs
                .iter()
                .map(|i| ctx.complex(i))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(complex_output(&TwoPeriodicComplex::sum_all(f, xs.iter())?))
        }
        Command::Tensor { x, y } => Ok(complex_output(&complex::tensor2(
            &ctx.complex(x)?,
            &ctx.complex(y)?,
        )?)),
        Command::Homc { x, y } => Ok(complex_output(&complex::homc(
            &ctx.complex(x)?,
            &ctx.complex(y)?,
        )?)),
        Command::Hom { x, y } => {
            let hm = complex::hom_module(&ctx.complex(x)?, &ctx.complex(y)?)?;
            let gens: Vec<Value> = hm.generators.iter().map(io::map_to_json).collect();
            let mut text = format!(
                "Hom = {}\nlength: {}\n",
                subquotient_text(&Subquotient {
                    factors: hm.factors.clone(),
                    free_rank: hm.free_rank,
                    generators: Vec::new(),
                }),
                hm.length().map_or("infinite".into(), |l| l.to_string())
            );
            for (k, g) in hm.generators.iter().enumerate() {
                text.push_str(&map_text(&format!("generator {k}"), g));
            }
            Ok(Output::new(
                json!({
                    "factors": hm.factors,
                    "free_rank": hm.free_rank,
                    "length": hm.length(),
                    "generators": gens,
                }),
                text,
            ))
        }
        Command::Cone { map } => {
            let c = complex::cone(&ctx.map(map)?)?;
            Ok(Output::new(
                json!({
                    "cone": io::complex_to_json(&c.complex),
                    "u": io::map_to_json(&c.u),
                    "v": io::map_to_json(&c.v),
                }),
                complex_text(&c.complex),
            ))
        }
        Command::Homotopic { map, other } => {
            let phi = ctx.map(map)?;
            let g = match other {
                Some(o) => phi.sub(&ctx.map(o)?)?,
                None => phi,
            };
            let w = complex::is_null_homotopic(&g);
            let what = if other.is_some() {
                "homotopic"
            } else {
                "null-homotopic"
            };
            let mut text = format!("{what}: {}\n", w.is_some());
            if let Some(s) = &w {
                text.push_str(&matrix_text("s0", &s.s0));
                text.push_str(&matrix_text("s1", &s.s1));
            }
            Ok(Output::new(
                json!({ "homotopic": w.is_some(), "witness": w.as_ref().map(io::homotopy_to_json) }),
                text,
            ))
        }
        Command::Strictify { input, window } => {
            let (v, _) = ctx.load(input)?;
            let q = io::quasi_periodic_from_value(&v, Some(f))?;
            let x = strictify::strictify(&q)?;
            let w = strictify::window_chain_map(&q, *window)?;
            let failures = w.failures();
            let ok = w.verify();
            let out = Output::new(
                json!({
                    "complex": io::complex_to_json(&x),
                    "window": window,
                    "positions": w.positions(),
                    "failures": failures,
                    "verified": ok,
                }),
                format!(
                    "{}window |n| <= {window}: {} positions, {}\n",
                    complex_text(&x),
                    w.positions(),
                    if ok {
                        "identity holds"
                    } else {
                        "identity FAILS"
                    }
                ),
            );
            if ok {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::ArTriangle { i, shifted } => {
            let label = IndecompLabel::new(*i, *shifted);
            let t = ar::ar_triangle_at(f, label)?;
            let middle = classify::decompose(t.e()).ok().map(|d| d.multiset);
            let mut text = format!(
                "{} -> {} -> {label} -> {}\n",
                label.shift(),
                middle.as_ref().map_or("?".into(), ToString::to_string),
                label.shift().shift(),
            );
            text.push_str(&map_text("f", &t.f));
            text.push_str(&map_text("g", &t.g));
            text.push_str(&map_text("h", &t.h));
            Ok(Output::new(
                json!({
                    "label": label,
                    "middle": middle,
                    "f": io::map_to_json(&t.f),
                    "g": io::map_to_json(&t.g),
                    "h": io::map_to_json(&t.h),
                }),
                text,
            ))
        }
        Command::ArVerify { i, shifted, bound } => {
            let label = IndecompLabel::new(*i, *shifted);
            let t = ar::ar_triangle_at(f, label)?;
            let bound = bound.unwrap_or(i + 3);
            let right = ar::verify_right_ar(&t, bound);
            let left = ar::verify_left_ar(&t, bound);
            let ok = right.ok() && left.ok();
            let out = Output::new(
                json!({ "label": label, "bound": bound, "right": right, "left": left, "ok": ok }),
                format!(
                    "right axioms\n{}left axioms\n{}",
                    report_text(label, &right),
                    report_text(label, &left)
                ),
            );
            if ok {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Quiver { max } => {
            let g = ar::quiver(f, *max).map_err(|e| match e {
                Error::VerificationFailed(m) => Failure::Verification(Output::new(
                    json!({ "verified": false, "reason": m }),
                    format!("verification failed: {m}\n"),
                )),
                other => other.into(),
            })?;
            let mut text = String::new();
            for c in g.components() {
                let names: Vec<String> = c.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "component: {}", names.join(" "));
            }
            for e in &g.edges {
                let _ = writeln!(text, "{} -> {} (mult {})", e.from, e.to, e.mult);
            }
            let mut out = Output::new(g.to_json(), text);
            out.dot = Some(g.to_dot());
            Ok(out)
        }
        Command::SerreCheck { x, y } => {
            let (x, y) = (ctx.complex(x)?, ctx.complex(y)?);
            let (a, b) = ar::serre_lengths(&x, &y)?;
            let out = Output::new(
                json!({ "hom_xy": a, "hom_y_fx": b, "equal": a == b }),
                format!("l Hom(X, Y) = {a}\nl Hom(Y, F X) = {b}\n"),
            );
            if a == b {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Selftest { cases } => {
            let results = selftest::run(f, cli.seed, *cases);
            let ok = results.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(
                    text,
                    "{} {} ({} cases){}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.cases,
                    r.failure
                        .as_ref()
                        .map_or(String::new(), |e| format!(": {e}"))
                );
            }
            let out = Output::new(
                json!({ "seed": cli.seed, "results": results, "ok": ok }),
                text,
            );
            if ok {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn emit(format: Format, out: &Output) -> Result<(), String> {
    let body = match format {
        Format::Text => out.text.clone(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&out.json).expect("serializable")
        ),
        Format::Dot => match &out.dot {
            Some(d) => d.clone(),
            None => return Err("--format dot is only available for quiver".into()),
        },
    };
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.format == Format::Dot && !matches!(cli.command, Command::Quiver { .. }) {
        eprintln!("error: --format dot is only available for quiver");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => match emit(cli.format, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Verification(out)) => {
            let _ = emit(cli.format, &out);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

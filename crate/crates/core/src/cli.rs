//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative verdict (`NOT_MEMBER`,
//! `NOT_AUTOMORPHISM`, failed verification), 2 usage or input error,
//! 3 term budget exhausted.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{product_with_budget, Polynomial};
use crate::automorphisms::{decompose_tame, random_tame, Decomposition, ElementaryAuto, Endo2};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::onerelator::{freiheitssatz_probe, CertificateStep, Membership, MembershipCertificate, OneRelatorIdeal};
use crate::subalgebras::{reduce_pair, PairOutcome, ReductionStep};
use crate::text::{
    parse_normal_word, parse_polynomial_with_budget, parse_scaled_word, split_top_level, Alphabet, Printer,
};
use crate::words::{compare, enumerate_marked, enumerate_normal, Letter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "brace", version, about = "Computations in free brace algebras over the rationals")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of intermediate terms per invocation.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print words with ⟨ ⟩ instead of < >.
    #[arg(long, global = true)]
    unicode: bool,
    /// Comma-separated letter names, in increasing order. Other identifiers
    /// are rejected. Default: every identifier in the inputs except `y`.
    #[arg(long, global = true, value_name = "LIST")]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Brace product "A1,...,An;T".
    Mul {
        #[arg(allow_hyphen_values = true)]
        product: String,
    },
    /// Compare two normal words: LT, EQ or GT.
    Compare { left: String, right: String },
    /// Leading term of an expression.
    Lead {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List the normal words of a degree.
    Enum {
        #[arg(long)]
        letters: usize,
        #[arg(long)]
        degree: usize,
        /// Words containing the marker `y` exactly once.
        #[arg(long)]
        mark_y: bool,
    },
    /// Decide whether an element lies in the ideal generated by a relator.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        relator: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
        /// Print the membership certificate, one "c * u" line per step.
        #[arg(long)]
        certificate: bool,
    },
    /// Check a membership certificate file.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        relator: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
        #[arg(long, value_name = "FILE")]
        cert: std::path::PathBuf,
    },
    /// Reduce a pair of generators of a subalgebra.
    Subalg {
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Decompose the endomorphism x1 -> F1, x2 -> F2 into elementary factors.
    Auto {
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// A random composite of elementary transformations (uses --seed).
    RandomTame {
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
    },
    /// Check that a relator involving the last letter has no nonzero consequence
    /// free of it.
    Probe {
        #[arg(long, allow_hyphen_values = true)]
        relator: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let mut budget = Budget::new(cli.budget);
    match execute(&cli, &mut budget) {
        Ok(report) => {
            let written = if cli.json {
                let mut doc = json!({
                    "command": report.command,
                    "inputs": report.inputs,
                    "result": report.result,
                    "stats": { "terms": budget.used(), "time_ms": start.elapsed().as_millis() as u64 },
                });
                if let Some(steps) = report.steps {
                    doc["steps"] = steps;
                }
                writeln!(out, "{doc}")
            } else {
                report.text.iter().try_for_each(|line| writeln!(out, "{line}"))
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    steps: Option<Value>,
    text: Vec<String>,
    code: i32,
}

impl Report {
    fn new(command: &'static str, inputs: Value, result: Value, text: Vec<String>) -> Report {
        Report { command, inputs, result, steps: None, text, code: EXIT_OK }
    }

    fn steps(mut self, steps: Value) -> Report {
        self.steps = Some(steps);
        self
    }

    fn code(mut self, code: i32) -> Report {
        self.code = code;
        self
    }
}

struct Context {
    printer: Printer,
}

impl Context {
    fn new(cli: &Cli, inputs: &[&str]) -> Result<Context> {
        let alphabet = match &cli.alphabet {
            Some(list) => Alphabet::from_names(list.split(',').filter(|s| !s.trim().is_empty()))?,
            None => Alphabet::infer(inputs),
        };
        Ok(Context { printer: Printer::new(alphabet).unicode(cli.unicode) })
    }

    fn alphabet(&self) -> &Alphabet {
        self.printer.alphabet()
    }

    fn parse(&self, text: &str, budget: &mut Budget) -> Result<Polynomial> {
        parse_polynomial_with_budget(text, self.alphabet(), budget)
    }

    /// Parses an expression over the base letters only.
    fn parse_base(&self, text: &str, budget: &mut Budget) -> Result<Polynomial> {
        let f = self.parse(text, budget)?;
        if f.contains_letter(Letter::MARKER) {
            return Err(Error::ForeignLetter(Letter::MARKER));
        }
        Ok(f)
    }

    fn poly(&self, f: &Polynomial) -> String {
        self.printer.polynomial(f)
    }
}

fn execute(cli: &Cli, budget: &mut Budget) -> Result<Report> {
    match &cli.command {
        Command::Normalize { expr } => {
            let cx = Context::new(cli, &[expr])?;
            let f = cx.parse(expr, budget)?;
            let s = cx.poly(&f);
            Ok(Report::new("normalize", json!({ "expr": expr }), json!(s), vec![s]))
        }
        Command::Mul { product } => {
            let cx = Context::new(cli, &[product])?;
            let parts = split_top_level(product, ';');
            let [args, target] = parts.as_slice() else {
                return Err(usage(format!("expected \"A1,...,An;T\", got {product:?}")));
            };
            let args =
                split_top_level(args, ',').into_iter().map(|a| cx.parse(a, budget)).collect::<Result<Vec<_>>>()?;
            let target = cx.parse(target, budget)?;
            let f = product_with_budget(&args, &target, budget)?;
            let s = cx.poly(&f);
            Ok(Report::new("mul", json!({ "product": product }), json!(s), vec![s]))
        }
        Command::Compare { left, right } => {
            let cx = Context::new(cli, &[left, right])?;
            let u = parse_normal_word(left, cx.alphabet())?;
            let v = parse_normal_word(right, cx.alphabet())?;
            let verdict = match compare(&u, &v) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            let inputs = json!({ "left": left, "right": right });
            Ok(Report::new("compare", inputs, json!(verdict), vec![verdict.to_string()]))
        }
        Command::Lead { expr } => {
            let cx = Context::new(cli, &[expr])?;
            let f = cx.parse(expr, budget)?;
            let (w, c) = f.leading()?;
            let word = cx.printer.word(w);
            let result = json!({ "word": word, "coefficient": c.to_string() });
            Ok(Report::new("lead", json!({ "expr": expr }), result, vec![cx.printer.scaled_word(c, w)]))
        }
        Command::Enum { letters, degree, mark_y } => {
            let cx = match &cli.alphabet {
                Some(_) => Context::new(cli, &[])?,
                None => Context { printer: Printer::new(Alphabet::indexed(*letters)).unicode(cli.unicode) },
            };
            let words =
                if *mark_y { enumerate_marked(*letters, *degree, 1)? } else { enumerate_normal(*letters, *degree)? };
            budget.charge(words.len() as u64)?;
            let names: Vec<String> = words.iter().map(|w| cx.printer.word(w)).collect();
            let mut text = names.clone();
            text.push(format!("count: {}", names.len()));
            let inputs = json!({ "letters": letters, "degree": degree, "mark_y": mark_y });
            Ok(Report::new("enum", inputs, json!({ "count": names.len(), "words": names }), text))
        }
        Command::Member { relator, elem, certificate } => {
            let cx = Context::new(cli, &[relator, elem])?;
            let f = cx.parse_base(relator, budget)?;
            let h = cx.parse_base(elem, budget)?;
            let ideal = OneRelatorIdeal::new(cx.alphabet().len(), &f)?;
            let inputs = json!({ "relator": relator, "elem": elem });
            match ideal.decide_membership(&h, budget)? {
                Membership::Member(cert) => {
                    let lines: Vec<String> =
                        cert.steps.iter().map(|s| cx.printer.scaled_word(&s.coefficient, &s.marked)).collect();
                    let mut text = vec!["MEMBER".to_string()];
                    if *certificate {
                        text.push(format!("# h = sum of c * u(y -> {})", cx.poly(ideal.relator())));
                        text.extend(lines.iter().cloned());
                    }
                    let report = Report::new("member", inputs, json!("MEMBER"), text);
                    Ok(if *certificate { report.steps(json!(lines)) } else { report })
                }
                Membership::NotMember => {
                    Ok(Report::new("member", inputs, json!("NOT_MEMBER"), vec!["NOT_MEMBER".into()])
                        .code(EXIT_NEGATIVE))
                }
            }
        }
        Command::Verify { relator, elem, cert } => {
            let contents =
                std::fs::read_to_string(cert).map_err(|e| usage(format!("cannot read {}: {e}", cert.display())))?;
            let cx = Context::new(cli, &[relator, elem, &contents])?;
            let f = cx.parse_base(relator, budget)?;
            let h = cx.parse_base(elem, budget)?;
            let ideal = OneRelatorIdeal::new(cx.alphabet().len(), &f)?;
            let certificate = parse_certificate(&contents, cx.alphabet())?;
            let ok = ideal.verify_certificate(&h, &certificate);
            let verdict = if ok { "OK" } else { "FAIL" };
            let inputs = json!({ "relator": relator, "elem": elem, "cert": cert.display().to_string() });
            let report = Report::new("verify", inputs, json!(verdict), vec![verdict.into()]);
            Ok(if ok { report } else { report.code(EXIT_NEGATIVE) })
        }
        Command::Subalg { f1, f2 } => {
            let cx = Context::new(cli, &[f1, f2])?;
            let p1 = cx.parse_base(f1, budget)?;
            let p2 = cx.parse_base(f2, budget)?;
            let report = reduce_pair(&p1, &p2, budget)?;
            let (verdict, generators) = match &report.outcome {
                PairOutcome::FreeRank2(g1, g2) => ("FREE_RANK2", vec![cx.poly(g1), cx.poly(g2)]),
                PairOutcome::FreeRank1(g) => ("FREE_RANK1", vec![cx.poly(g)]),
                PairOutcome::ZeroPair => ("ZERO", vec![]),
            };
            let steps: Vec<String> = report.steps.iter().map(|s| reduction_text(&cx, s)).collect();
            let mut text = vec![verdict.to_string()];
            text.extend(steps.iter().enumerate().map(|(i, s)| format!("step {}: {s}", i + 1)));
            text.extend(generators.iter().map(|g| format!("generator: {g}")));
            let inputs = json!({ "f1": f1, "f2": f2 });
            let result = json!({ "outcome": verdict, "generators": generators });
            Ok(Report::new("subalg", inputs, result, text).steps(json!(steps)))
        }
        Command::Auto { f1, f2 } => {
            let cx = Context::new(cli, &[f1, f2])?;
            let phi = Endo2::new(cx.parse_base(f1, budget)?, cx.parse_base(f2, budget)?)?;
            let inputs = json!({ "f1": f1, "f2": f2 });
            match decompose_tame(&phi, budget)? {
                Decomposition::Tame(factors) => {
                    let lines: Vec<String> = factors.iter().map(|e| elementary_text(&cx, e)).collect();
                    let mut text = vec![
                        "TAME".to_string(),
                        "# factors compose left to right: apply 1, then 2, ... to (x1, x2)".to_string(),
                    ];
                    text.extend(lines.iter().enumerate().map(|(i, l)| format!("{}: {l}", i + 1)));
                    Ok(Report::new("auto", inputs, json!("TAME"), text).steps(json!(lines)))
                }
                Decomposition::NotAutomorphism { terminal } => {
                    let pair = vec![cx.poly(&terminal.0), cx.poly(&terminal.1)];
                    let text =
                        vec!["NOT_AUTOMORPHISM".to_string(), format!("reduced pair: ({}, {})", pair[0], pair[1])];
                    let result = json!({ "verdict": "NOT_AUTOMORPHISM", "reduced_pair": pair });
                    Ok(Report::new("auto", inputs, result, text).code(EXIT_NEGATIVE))
                }
            }
        }
        Command::RandomTame { steps, max_deg } => {
            let cx = match &cli.alphabet {
                Some(_) => Context::new(cli, &[])?,
                None => Context { printer: Printer::new(Alphabet::indexed(2)).unicode(cli.unicode) },
            };
            let (phi, factors) = random_tame(cli.seed, *steps, *max_deg);
            let (f1, f2) = (cx.poly(&phi.f1), cx.poly(&phi.f2));
            let lines: Vec<String> = factors.iter().map(|e| elementary_text(&cx, e)).collect();
            let mut text = vec![format!("x1 -> {f1}"), format!("x2 -> {f2}")];
            text.extend(lines.iter().enumerate().map(|(i, l)| format!("{}: {l}", i + 1)));
            let inputs = json!({ "seed": cli.seed, "steps": steps, "max_deg": max_deg });
            Ok(Report::new("random-tame", inputs, json!({ "f1": f1, "f2": f2 }), text).steps(json!(lines)))
        }
        Command::Probe { relator, elem } => {
            let cx = Context::new(cli, &[relator, elem])?;
            let f = cx.parse_base(relator, budget)?;
            let h = cx.parse_base(elem, budget)?;
            let holds = freiheitssatz_probe(cx.alphabet().len(), &f, &h, budget)?;
            let verdict = if holds { "NOT_MEMBER" } else { "MEMBER" };
            let inputs = json!({ "relator": relator, "elem": elem });
            let report = Report::new("probe", inputs, json!(verdict), vec![verdict.into()]);
            Ok(if holds { report } else { report.code(EXIT_NEGATIVE) })
        }
    }
}

fn usage(message: String) -> Error {
    Error::Parse(crate::text::ParseError { position: 0, message })
}

/// One `coefficient * marked-word` per line; blank lines and `#` comments are
/// skipped.
pub fn parse_certificate(text: &str, alphabet: &Alphabet) -> Result<MembershipCertificate> {
    let mut steps = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (coefficient, marked) = parse_scaled_word(line, alphabet)?;
        steps.push(CertificateStep { coefficient, marked });
    }
    Ok(MembershipCertificate { steps })
}

fn reduction_text(cx: &Context, step: &ReductionStep) -> String {
    let target = step.which;
    let base = step.which.other();
    format!("{target} <- {target} - {} * q({base}), q = {}", step.coefficient, cx.printer.word(&step.q))
}

fn elementary_text(cx: &Context, e: &ElementaryAuto) -> String {
    let x = e.index().letter();
    let moved = &Polynomial::letter(x).scale(e.scalar()) + e.shift();
    format!("{} -> {}", cx.alphabet().name(x), cx.poly(&moved))
}

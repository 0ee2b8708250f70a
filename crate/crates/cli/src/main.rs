use std::path::PathBuf;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use dgdm::amod::{base_change, tensor_over_a, AModule};
use dgdm::dcomplex::{homology, mapping_cone, FreeDComplex, HomologyPresentation};
use dgdm::doc::{ComplexDoc, Document};
use dgdm::groebner::FreeModuleElement;
use dgdm::model::{attach_cells, is_weq, pushout, pushout_product, GeneratingMap};
use dgdm::verify::{aggregate, catalog, run_check, run_suite, CheckParams, CheckReport, Verdict};
use dgdm::weyl::parse_operator;
use dgdm::Error;
use serde_json::{json, Value};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "dgdm", version, about = "Differential graded D-modules: homology, model structure and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Degree guard for Gröbner computations (WEYL_BOUND overrides it).
    #[arg(long, global = true)]
    bound: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Number of variables used when parsing operators.
    #[arg(long, global = true, default_value_t = 1)]
    vars: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Homology presentations of a complex document.
    Homology {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Mapping cone of a chain map document.
    Cone {
        #[arg(long)]
        file: PathBuf,
    },
    /// Decides whether a chain map is a weak equivalence.
    Weq {
        #[arg(long)]
        file: PathBuf,
    },
    /// Pushout of f along a cofibration g: `--file f --file g`.
    Pushout {
        #[arg(long, num_args = 1, required = true)]
        file: Vec<PathBuf>,
    },
    /// Pushout-product of generating cofibrations.
    Boxprod {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Use ζ_m as the first factor instead of ι_m.
        #[arg(long)]
        zeta: bool,
    },
    /// Attaches a cell of the given degree along a cycle.
    Attach {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Comma-separated coordinates of the attaching cycle.
        #[arg(long)]
        boundary: String,
    },
    /// Validates a Sullivan algebra or module document cell by cell.
    SullivanExtend {
        #[arg(long)]
        file: PathBuf,
    },
    /// Tensor product over A of two module documents: `--file M --file N`.
    TensorA {
        #[arg(long, num_args = 1, required = true)]
        file: Vec<PathBuf>,
    },
    /// Base change along A -> B: `--file B --file N`.
    BaseChange {
        #[arg(long, num_args = 1, required = true)]
        file: Vec<PathBuf>,
    },
    /// Runs one catalog check.
    Check {
        #[arg(long)]
        check: String,
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Runs the whole catalog, or the checks whose name starts with --check.
    Suite {
        #[arg(long)]
        check: Option<String>,
        /// A suite-config document; flags given on the command line win.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        instances: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAComplex { .. }
            | Error::NotAChainMap { .. }
            | Error::NotCertified(_)
            | Error::ConditionViolated { .. }
            | Error::NotFlat { .. }
            | Error::AlgebraMismatch
            | Error::ZeroAlgebra
            | Error::ZeroInput
            | Error::DegreeGuard { .. } => Failure::Math(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(bool, Value), Failure>;

fn read_doc(path: &PathBuf) -> std::result::Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Document::parse(&text)?)
}

fn two_docs(files: &[PathBuf]) -> std::result::Result<(Document, Document), Failure> {
    match files {
        [a, b] => Ok((read_doc(a)?, read_doc(b)?)),
        _ => Err(Failure::Usage(format!("expected two --file arguments, found {}", files.len()))),
    }
}

fn doc_value(doc: &Document) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn presentation_value(h: &HomologyPresentation) -> Value {
    json!({
        "degree": h.degree,
        "zero": h.is_zero(),
        "generators": h.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "relations": h.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "presentation": h.to_string(),
    })
}

fn show_module(m: &AModule) -> Value {
    let cells: Vec<Value> = m
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "name": c.name,
                "degree": c.degree,
                "differential": m.show(&m.d(&m.basis_element(i))),
            })
        })
        .collect();
    Value::Array(cells)
}

fn module_d_squared(m: AModule, truncation: u32) -> Outcome {
    let cells = show_module(&m);
    let m = Arc::new(m);
    let ok = m.as_obasis().check_d_squared(truncation).is_ok();
    Ok((ok, json!({ "cells": cells, "d_squared_zero": ok, "truncation": truncation })))
}

fn reports_value(reports: &[CheckReport]) -> Value {
    serde_json::to_value(reports).expect("reports serialize")
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    let truncation = g.truncation;
    match cli.command {
        Command::Homology { file, degree } => {
            let c = read_doc(&file)?.to_complex()?;
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![d],
                None => (0..=c.top()).collect(),
            };
            let hs = degrees.iter().map(|&n| homology(&c, n)).collect::<dgdm::Result<Vec<_>>>()?;
            Ok((true, json!({ "homology": hs.iter().map(presentation_value).collect::<Vec<_>>() })))
        }
        Command::Cone { file } => {
            let f = read_doc(&file)?.to_chain_map()?;
            Ok((true, doc_value(&Document::complex(&mapping_cone(&f)))))
        }
        Command::Weq { file } => {
            let f = read_doc(&file)?.to_chain_map()?;
            let w = is_weq(&f)?;
            let cone = mapping_cone(&f);
            Ok((w, json!({ "weak_equivalence": w, "cone": ComplexDoc::from_complex(&cone) })))
        }
        Command::Pushout { file } => {
            let (a, b) = two_docs(&file)?;
            let po = pushout(&a.to_chain_map()?, &b.to_chain_map()?)?;
            Ok((
                true,
                json!({
                    "object": doc_value(&Document::complex(&po.object)),
                    "from_y": doc_value(&Document::chain_map(&po.from_y)),
                    "from_w": doc_value(&Document::chain_map(&po.from_w)),
                }),
            ))
        }
        Command::Boxprod { m, n, zeta } => {
            let a = if zeta { GeneratingMap::zeta(m)? } else { GeneratingMap::Iota(m) };
            let b = GeneratingMap::Iota(n);
            let t = truncation.unwrap_or(4);
            let pp = pushout_product(a, b, g.vars)?;
            let name = format!("{a} □ {b}");
            if zeta {
                let v = pp.cone_acyclicity(t)?;
                let ok = v.passed();
                Ok((ok, json!({ "map": name, "cone_acyclicity": v })))
            } else {
                let report = pp.cokernel(t);
                let ok = report.holds();
                let summary = if ok {
                    format!("degree {}, D⊗_O D", report.expected_degree)
                } else {
                    "cokernel not of the expected shape".to_string()
                };
                Ok((ok, json!({ "map": name, "cokernel": report, "summary": summary })))
            }
        }
        Command::Attach { file, degree, boundary } => {
            let c: FreeDComplex = read_doc(&file)?.to_complex()?;
            let coords = boundary
                .split(',')
                .map(|s| parse_operator(s, c.nvars()))
                .collect::<dgdm::Result<Vec<_>>>()?;
            let a = FreeModuleElement::new(c.nvars(), coords)?;
            let incl = attach_cells(&c, &[(degree, a)])?;
            Ok((true, doc_value(&Document::chain_map(&incl))))
        }
        Command::SullivanExtend { file } => {
            let doc = read_doc(&file)?;
            match doc.kind() {
                "algebra" => {
                    let a = doc.to_algebra()?;
                    let gens: Vec<Value> = a
                        .generators()
                        .iter()
                        .enumerate()
                        .map(|(j, gen)| {
                            json!({
                                "name": gen.name,
                                "degree": gen.degree,
                                "differential": a.show(a.differential_of_generator(j)),
                            })
                        })
                        .collect();
                    Ok((true, json!({ "generators": gens, "document": doc_value(&Document::algebra(&a)) })))
                }
                _ => {
                    let m = doc.to_amodule()?;
                    Ok((true, json!({ "cells": show_module(&m), "document": doc_value(&Document::amodule(&m)?) })))
                }
            }
        }
        Command::TensorA { file } => {
            let (a, b) = two_docs(&file)?;
            let (m, n) = (Arc::new(a.to_amodule()?), Arc::new(b.to_amodule()?));
            module_d_squared(tensor_over_a(&m, &n)?, truncation.unwrap_or(4))
        }
        Command::BaseChange { file } => {
            let (a, b) = two_docs(&file)?;
            let alg = Arc::new(a.to_algebra()?);
            let bn = base_change(&alg, &b.to_amodule()?)?;
            let out = Document::amodule(&bn)?;
            let (ok, mut v) = module_d_squared(bn, truncation.unwrap_or(4))?;
            v["document"] = doc_value(&out);
            Ok((ok, v))
        }
        Command::Check { check, instances } => {
            let params = CheckParams {
                seed: g.seed,
                instances,
                truncation,
            };
            let report = run_check(&check, &params)?;
            Ok((report.passed(), serde_json::to_value(&report).expect("reports serialize")))
        }
        Command::Suite { check, file, instances } => {
            let config = match &file {
                Some(p) => read_doc(p)?.to_suite_config()?,
                None => Default::default(),
            };
            let seed = if g.seed != 0 || file.is_none() { g.seed } else { config.seed };
            let filter = check.or(config.filter);
            let instances = instances.or(config.instances);
            let truncation = truncation.or(config.truncation);
            let reports = if instances.is_none() && truncation.is_none() {
                run_suite(filter.as_deref(), seed)?
            } else {
                let params = CheckParams {
                    seed,
                    instances,
                    truncation,
                };
                catalog()
                    .into_iter()
                    .filter(|n| filter.as_deref().is_none_or(|f| n.starts_with(f)))
                    .map(|n| run_check(n, &params))
                    .collect::<dgdm::Result<Vec<_>>>()?
            };
            let verdict = aggregate(&reports);
            for r in &reports {
                eprintln!("{:<28} {:?}", r.name, r.verdict);
            }
            Ok((
                verdict != Verdict::Fail && !reports.is_empty(),
                json!({ "verdict": verdict, "count": reports.len(), "reports": reports_value(&reports) }),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if std::env::var_os("WEYL_BOUND").is_none() {
        if let Some(b) = cli.global.bound {
            std::env::set_var("WEYL_BOUND", b.to_string());
        }
    }
    match run(cli) {
        Ok((ok, mut value)) => {
            if let Value::Object(map) = &mut value {
                map.insert("status".into(), json!(if ok { "pass" } else { "fail" }));
            }
            emit(&serde_json::to_string_pretty(&value).expect("json"));
            ExitCode::from(if ok { PASS } else { FAIL })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::DegreeGuard { .. }) { GUARD } else { FAIL };
            let status = if code == GUARD { "aborted" } else { "fail" };
            emit(&json!({ "status": status, "error": e.to_string() }).to_string());
            ExitCode::from(code)
        }
    }
}

/// Writes to stdout, tolerating a reader that has gone away.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

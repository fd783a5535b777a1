use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tpm_causal::fixtures;
use tpm_causal::reproduce;
use tpm_causal::text::format_prob;
use tpm_causal::{compile_psdd, Assignment, Psdd, Sem, Spn, Vtree};

/// Queries, interventions and counterfactuals over PSDDs, SPNs and compiled
/// structural equation models.
#[derive(Parser)]
#[command(name = "tpm-causal", version)]
struct Cli {
    /// Tolerance for the reproduction checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Semantics {
    Surgery,
    Adjustment,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check model files (.vtree, .psdd, .sem, .spn).
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Vtree for .psdd files (default: the sibling .vtree file).
        #[arg(long)]
        vtree: Option<PathBuf>,
    },
    /// Marginal or conditional probability under a PSDD (default: the courses fixture).
    Query {
        psdd: Option<PathBuf>,
        #[arg(long)]
        vtree: Option<PathBuf>,
        #[arg(long, default_value = "")]
        query: String,
        #[arg(long, default_value = "")]
        evidence: String,
    },
    /// Compile a PSDD into `<out>.sem` plus a `<out>.naming` sidecar.
    Compile {
        psdd: PathBuf,
        #[arg(long)]
        vtree: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Interventional probability under a SEM (default: the courses fixture).
    Do {
        sem: Option<PathBuf>,
        #[arg(long = "do")]
        intervention: String,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum)]
        semantics: Option<Semantics>,
    },
    /// Counterfactual probability by abduction, action and prediction.
    Cf {
        sem: Option<PathBuf>,
        #[arg(long = "do")]
        intervention: String,
        #[arg(long, default_value = "")]
        evidence: String,
        #[arg(long)]
        query: String,
    },
    /// Graphviz export of a SEM, an SPN's latent topology, or a compiled PSDD.
    Dot {
        model: PathBuf,
        #[arg(long)]
        vtree: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Latent/observable topology of an SPN and the intervention triviality check.
    SpnBn {
        spn: PathBuf,
        /// Write the topology as DOT here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the worked numbers of the four-course example.
    Reproduce,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn load_vtree(psdd: &Path, explicit: Option<&Path>) -> Result<Vtree> {
    let path = explicit.map(Path::to_path_buf).unwrap_or_else(|| psdd.with_extension("vtree"));
    Vtree::parse(&read(&path)?).with_context(|| format!("in {}", path.display()))
}

fn load_psdd(path: Option<&Path>, vtree: Option<&Path>) -> Result<Psdd> {
    match path {
        None => Ok(fixtures::courses_psdd()),
        Some(p) => {
            let vt = load_vtree(p, vtree)?;
            Psdd::parse(&read(p)?, vt).with_context(|| format!("in {}", p.display()))
        }
    }
}

fn load_sem(path: Option<&Path>) -> Result<Sem> {
    match path {
        None => Ok(fixtures::courses_sem()),
        Some(p) => Sem::parse(&read(p)?).with_context(|| format!("in {}", p.display())),
    }
}

fn load_spn(path: &Path) -> Result<Spn> {
    Spn::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(format: Format, label: &str, value: f64) {
    match format {
        Format::Text => println!("{label} = {}", format_prob(value)),
        Format::Tsv => println!("{label}\t{}", format_prob(value)),
    }
}

fn conditioned(query: &Assignment, parts: &[String]) -> String {
    let given: Vec<&String> = parts.iter().filter(|p| !p.is_empty()).collect();
    if given.is_empty() {
        format!("Pr({query})")
    } else {
        let given: Vec<&str> = given.iter().map(|s| s.as_str()).collect();
        format!("Pr({query} | {})", given.join(", "))
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Validate { paths, vtree } => validate(paths, vtree.as_deref()),
        Command::Query { psdd, vtree, query, evidence } => {
            let m = load_psdd(psdd.as_deref(), vtree.as_deref())?;
            let q = Assignment::parse(query, m.universe())?;
            let e = Assignment::parse(evidence, m.universe())?;
            let value = if e.is_empty() { m.marginal(&q)? } else { m.conditional(&q, &e)? };
            let given = if e.is_empty() { String::new() } else { e.to_string() };
            emit(cli.format, &conditioned(&q, &[given]), value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Compile { psdd, vtree, out } => {
            let m = load_psdd(Some(psdd), vtree.as_deref())?;
            let compiled = compile_psdd(&m)?;
            let sem_path = out.with_extension("sem");
            let naming_path = out.with_extension("naming");
            fs::write(&sem_path, compiled.sem.to_text()).with_context(|| format!("writing {}", sem_path.display()))?;
            fs::write(&naming_path, compiled.naming_text())
                .with_context(|| format!("writing {}", naming_path.display()))?;
            println!(
                "wrote {} ({} augmented variables) and {}",
                sem_path.display(),
                compiled.naming.len(),
                naming_path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Do { sem, intervention, query, semantics } => {
            let m = load_sem(sem.as_deref())?;
            let d = Assignment::parse(intervention, m.universe())?;
            let q = Assignment::parse(query, m.universe())?;
            let semantics = semantics.unwrap_or_else(|| {
                eprintln!("note: using surgery semantics (equation replacement); --semantics adjustment selects parent adjustment");
                Semantics::Surgery
            });
            let value = match semantics {
                Semantics::Surgery => m.interventional_surgery_prob(&q, &d)?,
                Semantics::Adjustment => {
                    let ([(x, xv)], [(y, yv)]) = (pairs(&d)?, pairs(&q)?);
                    m.interventional_adjustment_prob(&y, yv, &x, xv)?
                }
            };
            emit(cli.format, &conditioned(&q, &[format!("do({d})")]), value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cf { sem, intervention, evidence, query } => {
            let m = load_sem(sem.as_deref())?;
            let d = Assignment::parse(intervention, m.universe())?;
            let e = Assignment::parse(evidence, m.universe())?;
            let q = Assignment::parse(query, m.universe())?;
            let value = m.counterfactual(&e, &d, &q)?;
            emit(cli.format, &conditioned(&q, &[format!("do({d})"), e.to_string()]), value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { model, vtree, out } => {
            let dot = match extension(model) {
                "sem" => load_sem(Some(model))?.to_dot(),
                "spn" => load_spn(model)?.to_bn_topology()?.graph().to_dot("spn"),
                "psdd" => compile_psdd(&load_psdd(Some(model), vtree.as_deref())?)?.sem.to_dot(),
                other => bail!("cannot export `.{other}` files; expected .sem, .spn or .psdd"),
            };
            write_or_print(out.as_deref(), &dot)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SpnBn { spn, out } => spn_bn(cli.format, spn, out.as_deref()),
        Command::Reproduce => reproduce_report(cli.format, cli.tol),
    }
}

fn pairs<const N: usize>(a: &Assignment) -> Result<[(tpm_causal::Var, bool); N]> {
    let v: Vec<_> = a.iter().map(|(v, b)| (v.clone(), b)).collect();
    v.try_into()
        .map_err(|_| anyhow::anyhow!("adjustment semantics takes exactly one variable in --do and in --query"))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validate(paths: &[PathBuf], vtree: Option<&Path>) -> Result<ExitCode> {
    let mut all_ok = true;
    for path in paths {
        let shown = path.display();
        let outcome: Result<Vec<String>> = (|| match extension(path) {
            "vtree" => {
                let vt = Vtree::parse(&read(path)?)?;
                println!("{shown}: ok, vtree with {} nodes over {} variables", vt.len(), vt.universe().len());
                Ok(vec![])
            }
            "psdd" => {
                let m = load_psdd(Some(path), vtree)?;
                let report = m.validate();
                if report.is_ok() {
                    println!("{shown}: ok, psdd with {} nodes over {} variables", m.len(), m.universe().len());
                }
                Ok(report.violations.iter().map(ToString::to_string).collect())
            }
            "sem" => {
                let m = Sem::parse(&read(path)?)?;
                println!(
                    "{shown}: ok, sem with {} exogenous and {} endogenous variables",
                    m.exogenous().len(),
                    m.endogenous().len()
                );
                Ok(vec![])
            }
            "spn" => {
                let m = load_spn(path)?;
                let r = m.check_structure();
                let selective = match r.selective {
                    Some(s) => s.to_string(),
                    None => "unchecked".into(),
                };
                println!(
                    "{shown}: spn with {} nodes; complete={} decomposable={} selective={selective}",
                    m.len(),
                    r.complete,
                    r.decomposable
                );
                let mut problems = vec![];
                if !r.complete {
                    problems.push("not complete".to_string());
                }
                if !r.decomposable {
                    problems.push("not decomposable".to_string());
                }
                Ok(problems)
            }
            other => bail!("unknown file type `.{other}`"),
        })();
        match outcome {
            Ok(problems) if problems.is_empty() => {}
            Ok(problems) => {
                all_ok = false;
                for p in problems {
                    println!("{shown}: {p}");
                }
            }
            Err(e) => {
                all_ok = false;
                println!("{shown}: error: {e:#}");
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn spn_bn(format: Format, path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    const MAX_SUBSETS_VARS: usize = 12;
    let spn = load_spn(path)?;
    let bn = spn.to_bn_topology()?;
    let g = bn.graph();
    let obs = bn.observables();
    let subsets: Vec<Vec<_>> = if obs.len() <= MAX_SUBSETS_VARS {
        (1u32..1 << obs.len())
            .map(|mask| (0..obs.len()).filter(|i| mask >> i & 1 == 1).map(|i| obs[i]).collect())
            .collect()
    } else {
        obs.iter().map(|&o| vec![o]).collect()
    };
    let mut holds = 0;
    for s in &subsets {
        if bn.verify_triviality(s)? {
            holds += 1;
        }
    }
    match format {
        Format::Text => {
            println!("latents: {}", bn.latents().len());
            println!("observables: {}", obs.len());
            println!("edges: {}", g.edge_count());
            println!("bipartite: {}", bn.is_bipartite());
            println!("triviality holds for {holds}/{} observable subsets", subsets.len());
        }
        Format::Tsv => {
            println!("latents\tobservables\tedges\tbipartite\tsubsets\ttrivial");
            println!(
                "{}\t{}\t{}\t{}\t{}\t{holds}",
                bn.latents().len(),
                obs.len(),
                g.edge_count(),
                bn.is_bipartite(),
                subsets.len()
            );
        }
    }
    if let Some(p) = out {
        write_or_print(Some(p), &g.to_dot("spn"))?;
    }
    Ok(if holds == subsets.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn reproduce_report(format: Format, tol: f64) -> Result<ExitCode> {
    let checks = reproduce::checks()?;
    let mut failed = 0;
    if format == Format::Tsv {
        println!("check\texpected\tactual\tstatus");
    }
    for c in &checks {
        let status = if c.passes(tol) { "ok" } else { "MISMATCH" };
        if !c.passes(tol) {
            failed += 1;
        }
        match format {
            Format::Text => println!(
                "{:<40} expected {:<16} got {:<16} {status}",
                c.name,
                format_prob(c.expected),
                format_prob(c.actual)
            ),
            Format::Tsv => println!(
                "{}\t{}\t{}\t{status}",
                c.name,
                format_prob(c.expected),
                format_prob(c.actual)
            ),
        }
    }
    let cmp = reproduce::comparison()?;
    match format {
        Format::Text => println!(
            "comparison: observational {} conditional {} counterfactual {}",
            format_prob(cmp.observational),
            format_prob(cmp.conditional),
            format_prob(cmp.counterfactual)
        ),
        Format::Tsv => {
            println!("observational\tconditional\tcounterfactual");
            println!(
                "{}\t{}\t{}",
                format_prob(cmp.observational),
                format_prob(cmp.conditional),
                format_prob(cmp.counterfactual)
            );
        }
    }
    if failed > 0 {
        eprintln!("{failed} of {} checks deviate by more than {tol:e}", checks.len());
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

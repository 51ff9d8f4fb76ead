use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsym::coideal::{closed_form, diagram_for_k, solve_mixture, verify_mixture};
use qsym::kmat::{build_k_unchecked, sample_params, verify_k, KKind, KParams};
use qsym::natrep::{check_defining_relations, Representation};
use qsym::report::VerificationReport;
use qsym::rmat::{build_r, verify_braid, verify_ybe};
use qsym::rootdata::{Family, RootSystem};
use qsym::satake::classical::{check_spherical, Realization};
use qsym::satake::{enumerate_pseudo_symmetric, enumerate_satake};
use qsym_cli::{bless, diff_golden, exit_code, parse_config, parse_params, render_jsonl, run_suite};

const CONFIG_ERROR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qsym",
    version,
    about = "Exact checks for quantum symmetric pairs of gl and osp superalgebras"
)]
struct Cli {
    /// Count CONJECTURE-FAIL as a failure.
    #[arg(long, global = true)]
    strict_conjectures: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the suite described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        parallelism: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify one identity on one algebra.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
        #[command(flatten)]
        alg: Algebra,
        #[command(flatten)]
        k: KArgs,
    },
    /// Enumerate graded Satake diagrams.
    Enumerate {
        #[arg(value_enum)]
        what: EnumWhat,
        #[command(flatten)]
        alg: Algebra,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Solve the mixture parameters of a K-matrix.
    Solve {
        #[arg(value_enum)]
        what: SolveWhat,
        #[command(flatten)]
        alg: Algebra,
        #[command(flatten)]
        k: KArgs,
    },
    /// Check sphericity of every pseudo-symmetric diagram.
    Check {
        #[arg(value_enum)]
        what: CheckWhat,
        #[command(flatten)]
        alg: Algebra,
    },
    /// Print root data or a matrix as JSON.
    Dump {
        #[arg(value_enum)]
        what: DumpWhat,
        #[command(flatten)]
        alg: Algebra,
        #[command(flatten)]
        k: KArgs,
    },
    /// Compare the suite output with the golden file, or rewrite it.
    Golden {
        #[arg(value_enum)]
        what: GoldenWhat,
        #[arg(long)]
        config: PathBuf,
        /// Overrides `golden` from the config.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        parallelism: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhat {
    Ybe,
    Braid,
    Relations,
    Re,
    Commutant,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumWhat {
    Satake,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveWhat {
    Mixture,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckWhat {
    Spherical,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpWhat {
    Rootdata,
    Rmatrix,
    Kmatrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoldenWhat {
    Diff,
    Bless,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

// Either `--algebra 'osp(1|2)'` or `--family osp-odd --bn 0 --bm 1`.
#[derive(Args)]
struct Algebra {
    /// Algebra by name: gl(2|2), osp(1|4), spo(2|2), ...
    #[arg(long)]
    algebra: Option<String>,
    /// gl, osp-odd, osp-even or spo; used with --bn and --bm.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    bn: Option<usize>,
    #[arg(long)]
    bm: Option<usize>,
}

#[derive(Args)]
struct KArgs {
    /// A, B, C, A-GL or one of the conjectured kinds.
    #[arg(long)]
    kind: Option<String>,
    /// Size m of the A, B or A-GL block.
    #[arg(long)]
    block: Option<usize>,
    /// JSON parameter file; a deterministic sample is used without it.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: usize,
}

type Fallible<T> = Result<T, String>;

impl Algebra {
    fn resolve(&self) -> Fallible<RootSystem> {
        if let Some(name) = &self.algebra {
            return RootSystem::from_name(name).map_err(|e| e.to_string());
        }
        let fam = self.family.as_deref().ok_or("give --algebra or --family/--bn/--bm")?;
        let fam = Family::parse(fam).ok_or_else(|| format!("unknown family {fam:?}"))?;
        let (bn, bm) = (self.bn.ok_or("missing --bn")?, self.bm.ok_or("missing --bm")?);
        RootSystem::new(fam, bn, bm).map_err(|e| e.to_string())
    }
}

impl KArgs {
    fn params(&self, rs: &RootSystem) -> Fallible<KParams> {
        let kind = self.kind.as_deref().ok_or("missing --kind")?;
        let kind = KKind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
        match &self.params {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_params(&text, kind, self.block).map_err(|e| format!("{}: {e}", path.display()))
            }
            None => sample_params(rs, kind, self.block, self.seed).map_err(|e| e.to_string()),
        }
    }
}

fn print_reports(reports: &[VerificationReport], strict: bool) -> u8 {
    print!("{}", render_jsonl(reports));
    exit_code(reports, strict) as u8
}

fn to_json_line(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("json")
}

fn run(cli: Cli) -> Fallible<u8> {
    let strict = cli.strict_conjectures;
    match cli.cmd {
        Cmd::Run {
            config,
            parallelism,
            output,
        } => {
            let mut cfg = load_config(&config)?;
            cfg.parallelism = parallelism.unwrap_or(cfg.parallelism).max(1);
            let reports = run_suite(&cfg);
            let text = render_jsonl(&reports);
            match output.or(cfg.output) {
                Some(path) => fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(exit_code(&reports, strict) as u8)
        }
        Cmd::Verify { what, alg, k } => {
            let rs = alg.resolve()?;
            let reports = match what {
                VerifyWhat::Ybe => vec![verify_ybe(&rs)],
                VerifyWhat::Braid => vec![verify_braid(&rs)],
                VerifyWhat::Relations => vec![check_defining_relations(&Representation::new(&rs))],
                VerifyWhat::Re => vec![verify_k(&rs, &k.params(&rs)?)],
                VerifyWhat::Commutant => verify_mixture(&rs, &k.params(&rs)?)
                    .into_iter()
                    .filter(|r| r.check == "commutant" || !r.is_pass())
                    .collect(),
            };
            Ok(print_reports(&reports, strict))
        }
        Cmd::Enumerate {
            what: EnumWhat::Satake,
            alg,
            format,
        } => {
            let rs = alg.resolve()?;
            for e in enumerate_satake(&rs) {
                match format {
                    Format::Json => println!("{}", to_json_line(&e.to_json())),
                    Format::Ascii => {
                        let tag = e.class.as_ref().map_or("UNCLASSIFIED".to_string(), |c| {
                            format!("{} {} {}", c.kind.as_str(), c.family, c.variant)
                                .trim_end()
                                .to_string()
                        });
                        println!("{}  {tag}", e.diagram.render());
                    }
                }
            }
            Ok(0)
        }
        Cmd::Solve {
            what: SolveWhat::Mixture,
            alg,
            k,
        } => {
            let rs = alg.resolve()?;
            let p = k.params(&rs)?;
            let d = diagram_for_k(&rs, p.kind, p.block).map_err(|e| e.to_string())?;
            let kmat = build_k_unchecked(&rs, &p).map_err(|e| e.to_string())?;
            match solve_mixture(&d, &Representation::new(&rs), &kmat) {
                Ok(mix) => {
                    let mut all = true;
                    for (i, m) in &mix {
                        let matches = closed_form(&rs, &p, *i).as_ref() == Some(m);
                        all &= matches;
                        println!(
                            "{}",
                            to_json_line(&serde_json::json!({
                                "alpha": i + 1,
                                "c": m.c.to_string(),
                                "c_grave": m.c_grave.to_string(),
                                "matches_paper": matches,
                            }))
                        );
                    }
                    Ok(if all { 0 } else { 2 })
                }
                Err(e) => Ok(print_reports(&[e.report(d.instance())], strict)),
            }
        }
        Cmd::Check {
            what: CheckWhat::Spherical,
            alg,
        } => {
            let rs = alg.resolve()?;
            let re = Realization::new(&rs);
            let reports: Vec<_> = enumerate_pseudo_symmetric(&rs)
                .iter()
                .map(|(d, _)| check_spherical(&re, d))
                .collect();
            Ok(print_reports(&reports, strict))
        }
        Cmd::Dump { what, alg, k } => {
            let rs = alg.resolve()?;
            let v = match what {
                DumpWhat::Rootdata => rs.to_json(),
                DumpWhat::Rmatrix => build_r(&rs).to_json(),
                DumpWhat::Kmatrix => build_k_unchecked(&rs, &k.params(&rs)?)
                    .map_err(|e| e.to_string())?
                    .to_json(),
            };
            println!("{}", to_json_line(&v));
            Ok(0)
        }
        Cmd::Golden {
            what,
            config,
            golden,
            parallelism,
        } => {
            let mut cfg = load_config(&config)?;
            cfg.parallelism = parallelism.unwrap_or(cfg.parallelism).max(1);
            let path = golden
                .or(cfg.golden.clone())
                .ok_or("no golden path in config or --golden")?;
            let text = render_jsonl(&run_suite(&cfg));
            match what {
                GoldenWhat::Bless => {
                    bless(&text, &path).map_err(|e| format!("{}: {e}", path.display()))?;
                    Ok(0)
                }
                GoldenWhat::Diff => match diff_golden(&text, &path).map_err(|e| format!("{}: {e}", path.display()))? {
                    None => Ok(0),
                    Some(d) => {
                        eprintln!("{d}");
                        Ok(1)
                    }
                },
            }
        }
    }
}

/// Reads a config; `output` and `golden` are taken relative to its directory.
fn load_config(path: &PathBuf) -> Fallible<qsym_cli::RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new(""));
    cfg.output = cfg.output.map(|p| base.join(p));
    cfg.golden = cfg.golden.map(|p| base.join(p));
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}

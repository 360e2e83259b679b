//! Command-line front end. Exit status 0 on success, 1 on verification or
//! audit failure (and other computational failures), 2 on usage errors.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sinksub::additive::{
    build_period_word_case2, candidate_word_case1, oracle_prefix_word, AdditiveParams, CaseDetail,
};
use sinksub::explorer::{duality_report, scan_additive, DEFAULT_HORIZON};
use sinksub::nim::{Convention, GrundySequence, Nimber, SubtractionSet};
use sinksub::period::detect_period;
use sinksub::render::{render_family, RenderMode};
use sinksub::verifier::{audit_report, audit_tables, verify_mex_consistency};

#[derive(Parser)]
#[command(
    name = "sinksub",
    version,
    about = "Subtraction games under the sink and wall conventions: nim-sequences, periods, \
             additive-family formulas and words, verification, scans, and rasters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Game selection: an explicit move set, or (m, delta) for the additive
/// family. The two forms are mutually exclusive.
#[derive(Args, Debug)]
struct GameArgs {
    /// Subtraction set as a comma list, e.g. 2,5
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
    /// Additive parameter m; pairs with --delta for S = {m, m+delta, 2m+delta}
    #[arg(long)]
    m: Option<usize>,
    /// Additive parameter delta
    #[arg(long)]
    delta: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first nim-values of a game
    Nimseq {
        #[command(flatten)]
        game: GameArgs,
        /// sink or wall
        #[arg(long, default_value = "sink")]
        convention: String,
        #[arg(long)]
        count: usize,
    },
    /// Detect the minimal pre-period and period
    Period {
        #[command(flatten)]
        game: GameArgs,
        /// sink or wall
        #[arg(long, default_value = "sink")]
        convention: String,
        /// Positions to search for a repeated window state
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Reduce (m, delta), evaluate the period formula, construct the word
    Additive {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        delta: usize,
        /// Verify the word against the sink recurrence
        #[arg(long)]
        check: bool,
        /// Also print the full word for case II
        #[arg(long)]
        word: bool,
    },
    /// Check a word against the sink mex recurrence
    Verify {
        #[command(flatten)]
        game: GameArgs,
        /// Word as digits, e.g. 2100110; defaults to the constructed word
        /// when --m/--delta select the game
        #[arg(long)]
        word: Option<String>,
    },
    /// Factor-level reachability and anti-collision audit of the case-II
    /// block construction
    Audit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        delta: usize,
        /// Print one witness line per factor
        #[arg(long)]
        trace: bool,
    },
    /// Scan the additive family and write a CSV report
    Scan {
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        delta_max: usize,
        #[arg(long)]
        out: PathBuf,
        /// Distribute rows over a thread pool (same output either way)
        #[arg(long)]
        parallel: bool,
    },
    /// Compare the sink and wall periods of one game
    Duality {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Render family periods as a binary PPM raster
    Render {
        #[arg(long)]
        m: usize,
        /// per-k or per-delta-class
        #[arg(long, default_value = "per-k")]
        mode: String,
        /// Residue for per-delta-class (delta = d + 2mn)
        #[arg(long)]
        d: Option<usize>,
        /// Bands for per-delta-class
        #[arg(long)]
        layers: Option<usize>,
        /// Pixel rows per band
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl GameArgs {
    fn resolve(&self) -> Result<(SubtractionSet, Option<AdditiveParams>), Failure> {
        match (&self.set, self.m, self.delta) {
            (Some(moves), None, None) => {
                let set = SubtractionSet::new(moves.clone())
                    .map_err(|e| Failure::usage(e.to_string()))?;
                Ok((set, None))
            }
            (None, Some(m), Some(delta)) => {
                if m == 0 || delta == 0 {
                    return Err(Failure::usage("--m and --delta must be positive"));
                }
                let params = AdditiveParams::new(m, delta);
                Ok((params.set(), Some(params)))
            }
            (None, Some(_), None) | (None, None, Some(_)) => {
                Err(Failure::usage("--m and --delta go together"))
            }
            (Some(_), _, _) => Err(Failure::usage("--set conflicts with --m/--delta")),
            (None, None, None) => Err(Failure::usage("specify --set or --m with --delta")),
        }
    }
}

fn parse_convention(s: &str) -> Result<Convention, Failure> {
    s.parse()
        .map_err(|_| Failure::usage(format!("unknown convention {s:?}, expected sink or wall")))
}

fn parse_word(s: &str) -> Result<Vec<Nimber>, Failure> {
    if s.is_empty() {
        return Err(Failure::usage("--word must be nonempty"));
    }
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as Nimber)
                .ok_or_else(|| Failure::usage(format!("word contains non-digit {c:?}")))
        })
        .collect()
}

/// Digits when every value is a single digit, comma-joined otherwise.
fn word_string(values: &[Nimber]) -> String {
    if values.iter().all(|&v| v <= 9) {
        values.iter().map(|&v| char::from(b'0' + v)).collect()
    } else {
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn default_horizon(params: Option<&AdditiveParams>) -> usize {
    match params {
        Some(p) => (8 * p.period()).max(DEFAULT_HORIZON),
        None => DEFAULT_HORIZON,
    }
}

fn resolve_horizon(
    horizon: Option<usize>,
    set: &SubtractionSet,
    params: Option<&AdditiveParams>,
) -> Result<usize, Failure> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(params));
    let floor = 2 * set.max_move() + 2;
    if horizon < floor {
        return Err(Failure::usage(format!(
            "--horizon must be at least {floor} for this set"
        )));
    }
    Ok(horizon)
}

fn additive_params(m: usize, delta: usize) -> Result<AdditiveParams, Failure> {
    if m == 0 || delta == 0 {
        return Err(Failure::usage("--m and --delta must be positive"));
    }
    Ok(AdditiveParams::new(m, delta))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Nimseq {
            game,
            convention,
            count,
        } => {
            let (set, _) = game.resolve()?;
            let convention = parse_convention(&convention)?;
            if count == 0 {
                return Err(Failure::usage("--count must be positive"));
            }
            let seq = GrundySequence::compute(&set, convention, count);
            let line = seq
                .values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Period {
            game,
            convention,
            horizon,
        } => {
            let (set, params) = game.resolve()?;
            let convention = parse_convention(&convention)?;
            let horizon = resolve_horizon(horizon, &set, params.as_ref())?;
            let info = detect_period(&set, convention, horizon)
                .map_err(|e| Failure::Computation(e.to_string()))?;
            println!(
                "preperiod={} period={} word={}",
                info.preperiod,
                info.period,
                word_string(&info.period_word)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Additive {
            m,
            delta,
            check,
            word,
        } => {
            let params = additive_params(m, delta)?;
            let p = params.period();
            let (mut line, values, inline_word) = match params.detail() {
                CaseDetail::I { a } => {
                    let w = candidate_word_case1(&params).expect("case I params");
                    let values = w.values();
                    (
                        format!("case=I a={a} p={p} word={}", word_string(&values)),
                        values,
                        true,
                    )
                }
                CaseDetail::II { k, .. } if params.delta() == params.d() => {
                    let w = build_period_word_case2(&params).expect("case II params");
                    (
                        format!("case=II k={k} p={p} blocks={}", w.block_string()),
                        w.values(),
                        false,
                    )
                }
                CaseDetail::II { k, .. } => {
                    let w = oracle_prefix_word(&params);
                    (format!("case=II k={k} p={p}"), w.values(), false)
                }
            };
            let mut violations = Vec::new();
            if check {
                violations = verify_mex_consistency(&values, &params.set());
                line.push_str(if violations.is_empty() {
                    " verified=pass"
                } else {
                    " verified=fail"
                });
            }
            println!("{line}");
            if word && !inline_word {
                println!("word={}", word_string(&values));
            }
            if let Some(v) = violations.first() {
                println!(
                    "violation position={} expected={} found={}",
                    v.position, v.expected, v.found
                );
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { game, word } => {
            let (set, params) = game.resolve()?;
            let values = match (word, params.as_ref()) {
                (Some(w), _) => parse_word(&w)?,
                (None, Some(p)) => match p.detail() {
                    CaseDetail::I { .. } => candidate_word_case1(p).expect("case I").values(),
                    CaseDetail::II { .. } if p.delta() == p.d() => {
                        build_period_word_case2(p).expect("case II").values()
                    }
                    CaseDetail::II { .. } => oracle_prefix_word(p).values(),
                },
                (None, None) => {
                    return Err(Failure::usage("--word is required with --set"));
                }
            };
            let violations = verify_mex_consistency(&values, &set);
            match violations.first() {
                None => {
                    println!("pass");
                    Ok(ExitCode::SUCCESS)
                }
                Some(v) => {
                    println!(
                        "violation position={} expected={} found={}",
                        v.position, v.expected, v.found
                    );
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Audit { m, delta, trace } => {
            let params = additive_params(m, delta)?;
            match audit_tables(&params) {
                Ok(records) => {
                    if trace {
                        print!("{}", audit_report(&records, &params));
                    }
                    println!("pass factors={}", records.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Scan {
            m_max,
            delta_max,
            out,
            parallel,
        } => {
            if m_max == 0 || delta_max == 0 {
                return Err(Failure::usage("--m-max and --delta-max must be positive"));
            }
            let file = File::create(&out)
                .map_err(|e| Failure::Computation(format!("{}: {e}", out.display())))?;
            let rows = scan_additive(m_max, delta_max, parallel, BufWriter::new(file))
                .map_err(|e| Failure::Computation(e.to_string()))?;
            let matches = rows.iter().filter(|r| r.matched).count();
            let rotations = rows.iter().filter(|r| r.rotation_dual).count();
            println!(
                "rows={} matches={} mismatches={} rotation_dual={}",
                rows.len(),
                matches,
                rows.len() - matches,
                rotations
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Duality { game, horizon } => {
            let (set, params) = game.resolve()?;
            let horizon = resolve_horizon(horizon, &set, params.as_ref())?;
            let report =
                duality_report(&set, horizon).map_err(|e| Failure::Computation(e.to_string()))?;
            println!(
                "sink preperiod={} period={} word={}",
                report.sink.preperiod,
                report.sink.period,
                word_string(&report.sink.period_word)
            );
            println!(
                "wall preperiod={} period={} word={}",
                report.wall.preperiod,
                report.wall.period,
                word_string(&report.wall.period_word)
            );
            println!(
                "same_length={} rotation_dual={}",
                report.same_length, report.rotation_dual
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            m,
            mode,
            d,
            layers,
            scale,
            out,
        } => {
            if m == 0 {
                return Err(Failure::usage("--m must be positive"));
            }
            let mode = match mode.as_str() {
                "per-k" => RenderMode::PerK,
                "per-delta-class" => {
                    let d = d.ok_or_else(|| Failure::usage("per-delta-class needs --d"))?;
                    let layers =
                        layers.ok_or_else(|| Failure::usage("per-delta-class needs --layers"))?;
                    RenderMode::PerDeltaClass { d, layers }
                }
                other => {
                    return Err(Failure::usage(format!(
                        "unknown mode {other:?}, expected per-k or per-delta-class"
                    )))
                }
            };
            let file = File::create(&out)
                .map_err(|e| Failure::Computation(format!("{}: {e}", out.display())))?;
            let mut writer = BufWriter::new(file);
            let raster = render_family(m, mode, scale, &mut writer)
                .map_err(|e| Failure::Computation(e.to_string()))?;
            println!(
                "wrote {} {}x{}",
                out.display(),
                raster.width,
                raster.rows.len() * scale
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

//! Command-line interface: validation, analysis, interval construction,
//! corpus generation and hom-lattice computations.
//!
//! Exit codes: 0 success, 1 parse/IO/internal error, 2 validation or
//! domain failure (axiom violations, inconsistent states, units that are
//! not strong). Reports are deterministic JSON: sorted keys, exact `p/q`
//! rationals, no timing unless `--timing` is given.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use pealab::fileio;
use pealab::pea::FiniteTable;
use pealab::pmv;
use pealab::pogroup::{self, Realization};
use pealab::ratio;
use pealab::report::{self, AnalysisReport};
use pealab::riesz;
use pealab::statespace;
use pealab::homlattice::{self, GroupHom};
use pealab::pogroup::{Cone, PoGroupPresentation};

#[derive(Parser)]
#[command(name = "pealab", version, about = "Exact analysis of finite pseudo effect algebras")]
struct Cli {
    /// Seed recorded in reports and used by any sampled subroutine.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock timing in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Emit JSON for the file-producing commands too.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .pea/.pmv/.grp file and check its axioms.
    Validate { path: PathBuf },
    /// Validate and run the requested analysis pipelines.
    Analyze {
        path: PathBuf,
        /// Decide the Riesz interpolation/decomposition ladder.
        #[arg(long)]
        riesz: bool,
        /// Enumerate the state polytope and classify it.
        #[arg(long)]
        states: bool,
        /// Read a state file and emit its representing measure(s).
        #[arg(long, value_name = "STATE_FILE")]
        decompose: Option<PathBuf>,
        /// Round-trip through the pseudo MV form (needs RDP2).
        #[arg(long)]
        pmv: bool,
        /// Window radius for lazy interval analyses.
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Build the interval algebra of a .grp presentation.
    Gamma {
        path: PathBuf,
        /// Window radius used when the interval is not finite.
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Output file (defaults to the input stem with .pea/.window).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the curated fixture corpus into a directory.
    Corpus { outdir: PathBuf },
    /// Hom-lattice computations on Z^n with the standard cone.
    Hom {
        #[command(subcommand)]
        op: HomOp,
    },
}

#[derive(Subcommand)]
enum HomOp {
    /// Pointwise supremum of homomorphisms at a cone point.
    Sup {
        /// Semicolon-separated homomorphisms, e.g. "1,0;0,1".
        #[arg(long)]
        gens: String,
        /// Integer cone point, e.g. "1,1".
        #[arg(long)]
        at: String,
    },
    /// Pointwise infimum of homomorphisms at a cone point.
    Inf {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        at: String,
    },
    /// Decompose one homomorphism into positive parts f = g - h.
    Jordan {
        #[arg(long)]
        gens: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(&cli, started) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    };
    ExitCode::from(code)
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

struct AnalyzeFlags {
    riesz: bool,
    states: bool,
    decompose: Option<PathBuf>,
    pmv: bool,
    radius: i64,
}

fn run(cli: &Cli, started: Instant) -> Result<u8, String> {
    match &cli.command {
        Command::Validate { path } => analyze_path(
            cli,
            path,
            &AnalyzeFlags {
                riesz: false,
                states: false,
                decompose: None,
                pmv: false,
                radius: 2,
            },
            started,
        ),
        Command::Analyze {
            path,
            riesz,
            states,
            decompose,
            pmv,
            radius,
        } => analyze_path(
            cli,
            path,
            &AnalyzeFlags {
                riesz: *riesz,
                states: *states,
                decompose: decompose.clone(),
                pmv: *pmv,
                radius: *radius,
            },
            started,
        ),
        Command::Gamma {
            path,
            radius,
            output,
        } => cmd_gamma(cli, path, *radius, output.as_deref()),
        Command::Corpus { outdir } => cmd_corpus(cli, outdir),
        Command::Hom { op } => cmd_hom(cli, op),
    }
}

fn finish_report(cli: &Cli, mut report: AnalysisReport, started: Instant, code: u8) -> u8 {
    report.seed = cli.seed;
    if cli.timing {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    print!("{}", report::to_canonical_json(&report));
    code
}

fn analyze_path(
    cli: &Cli,
    path: &Path,
    flags: &AnalyzeFlags,
    started: Instant,
) -> Result<u8, String> {
    let contents = read_file(path)?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default();
    match ext {
        "pea" => {
            let table = fileio::parse_pea(&contents).map_err(|e| e.to_string())?;
            analyze_table(cli, path, &contents, table, None, flags, started)
        }
        "pmv" => {
            let m = fileio::parse_pmv(&contents).map_err(|e| e.to_string())?;
            let mut report = AnalysisReport::default();
            let axioms = pmv::validate_pmv(&m);
            report.input = Some(report::input_info(
                &path.display().to_string(),
                "pmv",
                contents.as_bytes(),
                None,
            ));
            if !axioms.passed {
                report.axioms = Some(report::axioms_json(&axioms, m.labels()));
                return Ok(finish_report(cli, report, started, 2));
            }
            let table = pmv::pmv_to_pea(&m).map_err(|e| e.to_string())?;
            let round = pmv::pea_to_pmv(&table).map_err(|e| e.to_string())?;
            let mut base = AnalysisReport::default();
            base.pmv = Some(report::PmvJson {
                rdp2: true,
                converted: true,
                round_trip_identity: Some(round == m),
                vertex_sets_match: None,
                error: None,
            });
            analyze_table_with(cli, path, &contents, table, base, flags, started, "pmv")
        }
        "grp" => analyze_grp(cli, path, &contents, flags, started),
        other => Err(format!(
            "unsupported extension `{other}`; expected .pea, .pmv or .grp"
        )),
    }
}

fn analyze_table(
    cli: &Cli,
    path: &Path,
    contents: &str,
    table: FiniteTable,
    pmv_json: Option<report::PmvJson>,
    flags: &AnalyzeFlags,
    started: Instant,
) -> Result<u8, String> {
    let mut base = AnalysisReport::default();
    base.pmv = pmv_json;
    analyze_table_with(cli, path, contents, table, base, flags, started, "pea")
}

#[allow(clippy::too_many_arguments)]
fn analyze_table_with(
    cli: &Cli,
    path: &Path,
    contents: &str,
    table: FiniteTable,
    base: AnalysisReport,
    flags: &AnalyzeFlags,
    started: Instant,
    format: &str,
) -> Result<u8, String> {
    let mut report = base;
    report.input = Some(report::input_info(
        &path.display().to_string(),
        format,
        contents.as_bytes(),
        Some(&table),
    ));

    let axioms = table.validate_axioms();
    let passed = axioms.passed;
    report.axioms = Some(report::axioms_json(&axioms, table.labels()));
    if !passed {
        return Ok(finish_report(cli, report, started, 2));
    }
    report.structure = Some(report::StructureJson {
        commutative: table.is_commutative(),
        symmetric: table.is_symmetric().map_err(|e| e.to_string())?,
    });

    if flags.riesz {
        let ladder = riesz::ladder_report(&table).map_err(|e| e.to_string())?;
        report.riesz = Some(report::riesz_json(&ladder, table.labels()));
    }

    let mut sys_poly = None;
    if flags.states || flags.decompose.is_some() || flags.pmv {
        let sys = statespace::build_hrep(&table);
        let poly = statespace::enumerate_states(&sys).map_err(|e| e.to_string())?;
        let cls = statespace::classify(&poly);
        if flags.states {
            report.state_space = Some(report::state_space_json(&poly, &cls));
        }
        sys_poly = Some((sys, poly));
    }

    if let Some(state_path) = &flags.decompose {
        let (sys, poly) = sys_poly.as_ref().expect("states computed above");
        let state_src = read_file(state_path)?;
        let state = fileio::parse_state(&state_src, &table).map_err(|e| e.to_string())?;
        if let Err(e) = state.validate(&table) {
            eprintln!("error: state file inconsistent with table: {e}");
            finish_report(cli, report, started, 2);
            return Ok(2);
        }
        let measures =
            statespace::representing_measures(poly, sys, &state).map_err(|e| e.to_string())?;
        report.decomposition = Some(report::DecompositionJson {
            state: state
                .values()
                .iter()
                .map(pealab::ratio::format_ratio)
                .collect(),
            measure: report::measure_json(&measures.measure),
            second_witness: measures.second.as_ref().map(report::measure_json),
            unique_among_fans_only: measures.fans_exhausted,
        });
    }

    if flags.pmv && report.pmv.is_none() {
        let ladder = riesz::ladder_report(&table).map_err(|e| e.to_string())?;
        report.pmv = Some(if ladder.rdp2.holds {
            match pmv::pea_to_pmv(&table).and_then(|m| {
                let back = pmv::pmv_to_pea(&m)?;
                Ok((m, back))
            }) {
                Ok((_, back)) => {
                    let (_, poly) = sys_poly.as_ref().expect("states computed above");
                    let back_sys = statespace::build_hrep(&back);
                    let back_poly =
                        statespace::enumerate_states(&back_sys).map_err(|e| e.to_string())?;
                    report::PmvJson {
                        rdp2: true,
                        converted: true,
                        round_trip_identity: Some(back.same_algebra(&table)),
                        vertex_sets_match: Some(back_poly.vertices == poly.vertices),
                        error: None,
                    }
                }
                Err(e) => report::PmvJson {
                    rdp2: true,
                    converted: false,
                    round_trip_identity: None,
                    vertex_sets_match: None,
                    error: Some(e.to_string()),
                },
            }
        } else {
            report::PmvJson {
                rdp2: false,
                converted: false,
                round_trip_identity: None,
                vertex_sets_match: None,
                error: None,
            }
        });
    }

    Ok(finish_report(cli, report, started, 0))
}

fn analyze_grp(
    cli: &Cli,
    path: &Path,
    contents: &str,
    flags: &AnalyzeFlags,
    started: Instant,
) -> Result<u8, String> {
    let grp = fileio::parse_grp(contents).map_err(|e| e.to_string())?;
    let mut report = AnalysisReport::default();
    report.input = Some(report::input_info(
        &path.display().to_string(),
        "grp",
        contents.as_bytes(),
        None,
    ));

    let radius = flags.radius.max(grp.unit.max_abs()).max(1);
    if let Err(e) = grp.presentation.validate(flags.radius.max(2)) {
        eprintln!("error: presentation invalid: {e}");
        finish_report(cli, report, started, 2);
        return Ok(2);
    }
    let su = match grp.presentation.check_strong_unit(&grp.unit) {
        Ok(su) => su,
        Err(e) => {
            eprintln!("error: {e}");
            finish_report(cli, report, started, 2);
            return Ok(2);
        }
    };
    report.group = Some(report::group_json(
        grp.presentation.describe(),
        grp.presentation.rank(),
        &su,
    ));

    let interval = pogroup::gamma_interval(&grp.presentation, &grp.unit, pogroup::INTERVAL_CAP)
        .map_err(|e| e.to_string())?;
    match &interval.realization {
        Realization::Finite(fin) => {
            let mut table = fin.table.clone();
            if let Some(name) = &grp.name {
                table.set_name(name.clone());
            }
            let mut base = AnalysisReport::default();
            base.group = report.group.clone();
            analyze_table_with(cli, path, contents, table, base, flags, started, "grp")
        }
        Realization::Lazy { notice } => {
            let w = pogroup::window_table(&grp.presentation, &grp.unit, radius)
                .map_err(|e| e.to_string())?;
            let (symmetric, _) = w.symmetric().map_err(|e| e.to_string())?;
            let (commutative, witness) = w.commutative().map_err(|e| e.to_string())?;
            report.window = Some(report::window_json(
                &w,
                notice,
                symmetric,
                commutative,
                witness.as_ref(),
            ));
            Ok(finish_report(cli, report, started, 0))
        }
    }
}

fn cmd_gamma(cli: &Cli, path: &Path, radius: i64, output: Option<&Path>) -> Result<u8, String> {
    let contents = read_file(path)?;
    let grp = fileio::parse_grp(&contents).map_err(|e| e.to_string())?;
    grp.presentation
        .validate(radius.max(2))
        .map_err(|e| format!("presentation invalid: {e}"))?;
    let su = grp
        .presentation
        .check_strong_unit(&grp.unit)
        .map_err(|e| e.to_string())?;
    let name = grp
        .name
        .clone()
        .unwrap_or_else(|| path.file_stem().unwrap_or_default().to_string_lossy().into_owned());

    let interval = pogroup::gamma_interval(&grp.presentation, &grp.unit, pogroup::INTERVAL_CAP)
        .map_err(|e| e.to_string())?;
    match &interval.realization {
        Realization::Finite(fin) => {
            let out_path = output
                .map(PathBuf::from)
                .unwrap_or_else(|| path.with_extension("pea"));
            let mut comments = vec![
                format!("interval algebra of {} at unit {}", grp.presentation.describe(), grp.unit),
                format!("strong unit certified with multipliers up to {}",
                    su.bounds.iter().map(|(_, n)| *n).max().unwrap_or(1)),
                "element dictionary:".to_string(),
            ];
            for (i, e) in fin.elements.iter().enumerate() {
                comments.push(format!("  {} = {e}", fin.table.label(pealab::pea::ElementId(i))));
            }
            let text = fileio::write_pea(&fin.table, &comments);
            std::fs::write(&out_path, text).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "realization": "finite",
                        "elements": fin.table.size(),
                        "output": out_path.display().to_string(),
                        "name": name,
                    })
                );
            } else {
                println!(
                    "finite interval with {} elements written to {}",
                    fin.table.size(),
                    out_path.display()
                );
            }
            Ok(0)
        }
        Realization::Lazy { notice } => {
            let r = radius.max(grp.unit.max_abs()).max(1);
            let w = pogroup::window_table(&grp.presentation, &grp.unit, r)
                .map_err(|e| e.to_string())?;
            let out_path = output
                .map(PathBuf::from)
                .unwrap_or_else(|| path.with_extension("window"));
            let text = fileio::write_window(&w, &[format!("lazy interval: {notice}")]);
            std::fs::write(&out_path, text).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "realization": "lazy",
                        "notice": notice,
                        "window_elements": w.len(),
                        "radius": r,
                        "output": out_path.display().to_string(),
                        "name": name,
                    })
                );
            } else {
                println!("lazy interval ({notice}); window table with {} elements at radius {r} written to {}",
                    w.len(), out_path.display());
            }
            Ok(0)
        }
    }
}

fn cmd_corpus(cli: &Cli, outdir: &Path) -> Result<u8, String> {
    std::fs::create_dir_all(outdir).map_err(|e| e.to_string())?;
    let mut written = Vec::new();
    let mut write = |name: &str, text: String| -> Result<(), String> {
        let p = outdir.join(name);
        std::fs::write(&p, text).map_err(|e| e.to_string())?;
        written.push(name.to_string());
        Ok(())
    };

    for t in pealab::corpus::standard_tables() {
        let name = t.name().unwrap_or("table").to_string();
        let text = fileio::write_pea(&t, &[format!("pealab corpus fixture: {name}")]);
        write(&format!("{name}.pea"), text)?;
    }
    for f in pealab::corpus::presentations() {
        write(&format!("{}.grp", f.name), fileio::write_grp(f.name, &f.presentation, &f.unit))?;
    }
    // pseudo MV images of two RDP2 fixtures
    for table in [pealab::corpus::boolean_algebra(2), pealab::corpus::chain(3)] {
        let name = table.name().unwrap_or("table").to_string();
        let m = pmv::pea_to_pmv(&table).map_err(|e| e.to_string())?;
        write(
            &format!("{name}.pmv"),
            fileio::write_pmv(&m, &[format!("pseudo MV image of {name}")]),
        )?;
    }
    // the non-commutative window example
    let lex_semi = pealab::corpus::presentations()
        .into_iter()
        .find(|f| f.name == "lex-semidirect")
        .expect("fixture exists");
    let w = pogroup::window_table(&lex_semi.presentation, &lex_semi.unit, 2)
        .map_err(|e| e.to_string())?;
    write(
        "lex-semidirect.window",
        fileio::write_window(&w, &["symmetric non-commutative window example".into()]),
    )?;
    // a midpoint state for the Boolean square
    write(
        "bool2-mid.state",
        "# midpoint of the Boolean square state segment\nx = 1/2\ny = 1/2\n".to_string(),
    )?;

    written.sort();
    if cli.json {
        println!(
            "{}",
            serde_json::json!({ "outdir": outdir.display().to_string(), "written": written })
        );
    } else {
        println!("wrote {} corpus files to {}", written.len(), outdir.display());
    }
    Ok(0)
}

fn parse_hom_list(s: &str) -> Result<Vec<GroupHom>, String> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|tok| ratio::parse_ratio(tok))
                .collect::<Result<Vec<_>, String>>()
                .map(GroupHom::on_zn)
        })
        .collect()
}

fn parse_point(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid integer `{tok}`"))
        })
        .collect()
}

fn cmd_hom(cli: &Cli, op: &HomOp) -> Result<u8, String> {
    let result = match op {
        HomOp::Sup { gens, at } | HomOp::Inf { gens, at } => {
            let fs = parse_hom_list(gens)?;
            let x = parse_point(at)?;
            let rank = x.len();
            if fs.iter().any(|f| f.values.len() != rank) {
                return Err("homomorphism rank does not match the point".into());
            }
            let g = PoGroupPresentation::free_abelian(rank, Cone::Standard);
            let sup = matches!(op, HomOp::Sup { .. });
            let value = if sup {
                homlattice::sup_homs(&g, &fs, &x)
            } else {
                homlattice::inf_homs(&g, &fs, &x)
            }
            .map_err(|e| e.to_string())?;
            serde_json::json!({
                "op": if sup { "sup" } else { "inf" },
                "at": x,
                "value": ratio::format_ratio(&value),
            })
        }
        HomOp::Jordan { gens } => {
            let fs = parse_hom_list(gens)?;
            if fs.len() != 1 {
                return Err("jordan takes exactly one homomorphism".into());
            }
            let (g, h) = homlattice::jordan_decompose(&fs[0]).map_err(|e| e.to_string())?;
            serde_json::json!({
                "op": "jordan",
                "positive_part": g.values.iter().map(ratio::format_ratio).collect::<Vec<_>>(),
                "negative_part": h.values.iter().map(ratio::format_ratio).collect::<Vec<_>>(),
            })
        }
    };
    if cli.json {
        println!("{result}");
    } else {
        println!("{result}");
    }
    Ok(0)
}

//! Command-line front end: emit the classification table, verify toric
//! fixtures, list exceptional classes, and run the invariant suites.
//!
//! Exit codes: 0 success, 1 semantic mismatch or failed invariant, 2
//! usage or parse error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use tfd_core::classifier::{classify_all, TFDRecord};
use tfd_core::emit;
use tfd_core::error::Error;
use tfd_core::exceptional;
use tfd_core::lattice::{check_unimodular_lorentzian, SurfaceModel};
use tfd_core::localization::{
    case_iii_solutions, contribution_c13, enumerate_profile_solutions, laurent_c13_total,
    normalized_profile_solutions,
};
use tfd_core::splitting::{enumerate_splittings, enumerate_splittings_oracle};
use tfd_core::toric;

#[derive(Parser)]
#[command(
    name = "tfd",
    version,
    about = "Fixed point data classification for semifree circle actions on monotone symplectic six-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum CaseFilter {
    I,
    II,
    III,
    IV,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Lattice,
    Localization,
    Splitting,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classification table (21 records).
    Classify {
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        #[arg(long, value_enum, default_value = "all")]
        case: CaseFilter,
    },
    /// Verify fixture files against the classification.
    VerifyExample {
        /// Fixture files (or directories of .fixture files) to check.
        paths: Vec<PathBuf>,
        /// Directory of .fixture files to check, in addition to PATHS.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// List the exceptional classes of the k-point blow-up of P^2.
    ListExceptional {
        #[arg(long)]
        k: usize,
    },
    /// Run the module invariant suites.
    Check {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { format, case } => cmd_classify(format, case),
        Command::VerifyExample { paths, fixtures } => cmd_verify(paths, fixtures),
        Command::ListExceptional { k } => cmd_list_exceptional(k),
        Command::Check { suite } => cmd_check(suite),
    }
}

fn internal_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn cmd_classify(format: Format, case: CaseFilter) -> ExitCode {
    let classification = match classify_all() {
        Ok(c) => c,
        Err(e) => return internal_error(e),
    };
    let records: Vec<TFDRecord> = classification
        .records
        .into_iter()
        .filter(|r| match case {
            CaseFilter::All => true,
            CaseFilter::I => r.case_id.starts_with("I-"),
            CaseFilter::II => r.case_id.starts_with("II-"),
            CaseFilter::III => r.case_id.starts_with("III."),
            CaseFilter::IV => r.case_id.starts_with("IV-"),
        })
        .collect();
    match format {
        Format::Json => {
            let value = emit::records_to_json(&records);
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("valid json")
            );
        }
        Format::Markdown => print!("{}", emit::records_to_markdown(&records)),
        Format::Tsv => print!("{}", emit::records_to_tsv(&records)),
    }
    ExitCode::SUCCESS
}

fn collect_fixture_paths(
    paths: Vec<PathBuf>,
    dir: Option<PathBuf>,
) -> Result<Vec<PathBuf>, String> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            out.extend(fixtures_in_dir(&p)?);
        } else {
            out.push(p);
        }
    }
    if let Some(d) = dir {
        out.extend(fixtures_in_dir(&d)?);
    }
    if out.is_empty() {
        return Err("no fixture files given".into());
    }
    out.sort();
    Ok(out)
}

fn fixtures_in_dir(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let mut found = Vec::new();
    let entries =
        std::fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    for entry in entries {
        let entry = entry.map_err(|e| e.to_string())?;
        let path = entry.path();
        if path.extension().map(|x| x == "fixture").unwrap_or(false) {
            found.push(path);
        }
    }
    Ok(found)
}

fn cmd_verify(paths: Vec<PathBuf>, dir: Option<PathBuf>) -> ExitCode {
    let paths = match collect_fixture_paths(paths, dir) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let classification = match classify_all() {
        Ok(c) => c,
        Err(e) => return internal_error(e),
    };
    let mut worst = 0u8;
    for path in paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{name}: read error: {e}");
                worst = worst.max(2);
                continue;
            }
        };
        let fixture = match toric::parse_fixture(&text) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{name}: {e}");
                worst = worst.max(2);
                continue;
            }
        };
        match toric::verify_fixture(&fixture, &classification.records) {
            Ok(outcome) => {
                let summary: Vec<String> = outcome
                    .report
                    .components
                    .iter()
                    .map(|c| match c.shape {
                        tfd_core::localization::ComponentShape::Point => {
                            format!("pt@{}", c.level)
                        }
                        _ => format!("S2@{} area {}", c.level, c.area.unwrap_or(0)),
                    })
                    .collect();
                println!(
                    "{name}: matched {} (b_min {}, b_max {}; {})",
                    outcome.matched,
                    outcome.report.b_min,
                    outcome.report.b_max,
                    summary.join(", ")
                );
                if !outcome.passed() {
                    eprintln!(
                        "{name}: expected {}, matched {}",
                        outcome.expected.as_deref().unwrap_or("?"),
                        outcome.matched
                    );
                    worst = worst.max(1);
                }
            }
            Err(e) => {
                eprintln!("{name}: {e}");
                worst = worst.max(1);
            }
        }
    }
    ExitCode::from(worst)
}

fn cmd_list_exceptional(k: usize) -> ExitCode {
    if !(1..=8).contains(&k) {
        eprintln!("error: --k must be between 1 and 8");
        return ExitCode::from(2);
    }
    let model = SurfaceModel::p2().blow_up_times(k);
    match exceptional::exceptional_classes_on_xk(&model) {
        Ok(classes) => {
            let mut lines: Vec<String> = classes.iter().map(|c| model.format_class(c)).collect();
            lines.sort();
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => internal_error(e),
    }
}

fn cmd_check(suite: Suite) -> ExitCode {
    let mut failures = 0usize;
    let mut run = |name: &str, result: Result<String, String>| match result {
        Ok(detail) if detail.is_empty() => println!("ok   {name}"),
        Ok(detail) => println!("ok   {name}: {detail}"),
        Err(e) => {
            println!("FAIL {name}: {e}");
            failures += 1;
        }
    };
    let want = |which: Suite| suite == Suite::All || suite == which;

    if want(Suite::Lattice) {
        run(
            "lattice: unimodular Lorentzian forms",
            check_lattice_forms(),
        );
        run(
            "lattice: exceptional counts on X_1..X_4",
            check_exceptional_counts(),
        );
    }
    if want(Suite::Localization) {
        run("localization: profile solutions", check_profile_solutions());
        run("localization: case III closure", check_case_iii());
        run(
            "localization: Chern numbers vs contributions",
            check_chern_agreement(),
        );
    }
    if want(Suite::Splitting) {
        run("splitting: oracle agreement", check_splitting_oracle());
    }
    if suite == Suite::All {
        run("engine: record round trips", check_roundtrips());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_lattice_forms() -> Result<String, String> {
    let mut count = 0;
    for base in [
        SurfaceModel::p2(),
        SurfaceModel::s2xs2(),
        SurfaceModel::hirzebruch(),
    ] {
        let mut m = base;
        for _ in 0..=4 {
            check_unimodular_lorentzian(&m).map_err(|e| e.to_string())?;
            count += 1;
            m = m.blow_up();
        }
    }
    Ok(format!("{count} models checked"))
}

fn check_exceptional_counts() -> Result<String, String> {
    let expected = [1usize, 3, 6, 10];
    for (k, want) in (1..=4).zip(expected) {
        let model = SurfaceModel::p2().blow_up_times(k);
        let classes = exceptional::exceptional_classes_on_xk(&model).map_err(|e| e.to_string())?;
        if classes.len() != want {
            return Err(format!(
                "X_{k}: found {} classes, expected {want}",
                classes.len()
            ));
        }
        for c in &classes {
            if !exceptional::is_on_classical_list(c) {
                return Err(format!(
                    "X_{k}: class {:?} is not on the classical list",
                    c.coeffs()
                ));
            }
        }
    }
    Ok("1, 3, 6, 10".into())
}

fn check_profile_solutions() -> Result<String, String> {
    let all = enumerate_profile_solutions();
    let normalized = normalized_profile_solutions();
    if all.len() != 13 || normalized.len() != 8 {
        return Err(format!(
            "{} profile solutions / {} normalized",
            all.len(),
            normalized.len()
        ));
    }
    Ok("13 profile solutions / 8 normalized".into())
}

fn check_case_iii() -> Result<String, String> {
    let got = case_iii_solutions();
    if got == vec![(-1, 3), (0, 2), (1, 1)] {
        Ok("(b, m) in {(1,1), (0,2), (-1,3)}".into())
    } else {
        Err(format!("unexpected solution set {got:?}"))
    }
}

fn check_chern_agreement() -> Result<String, String> {
    let c = classify_all().map_err(|e| e.to_string())?;
    for r in &c.records {
        let contributions = r
            .fixed
            .iter()
            .map(|f| contribution_c13(f).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let total: i64 = contributions.iter().sum();
        if total != r.c1_cubed {
            return Err(format!(
                "{}: contributions {total} != {}",
                r.case_id, r.c1_cubed
            ));
        }
        let laurent = laurent_c13_total(&r.fixed).map_err(|e| e.to_string())?;
        if laurent != r.c1_cubed {
            return Err(format!(
                "{}: Laurent route {laurent} != {}",
                r.case_id, r.c1_cubed
            ));
        }
    }
    Ok(format!("{} records agree on both routes", c.records.len()))
}

fn check_splitting_oracle() -> Result<String, String> {
    let c = classify_all().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for inst in &c.splitting_instances {
        if inst.vol > 6 {
            continue;
        }
        let fast = enumerate_splittings(&inst.model, &inst.omega, &inst.total, inst.vol)
            .map_err(|e| e.to_string())?;
        let slow = enumerate_splittings_oracle(&inst.model, &inst.omega, &inst.total, inst.vol)
            .map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!(
                "disagreement on total {:?} (vol {}): {} vs {} splittings",
                inst.total.coeffs(),
                inst.vol,
                fast.len(),
                slow.len()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances agree"))
}

fn check_roundtrips() -> Result<String, String> {
    let c = classify_all().map_err(|e| e.to_string())?;
    for r in &c.records {
        let run = r.replay().map_err(|e| format!("{}: {e}", r.case_id))?;
        if run.b_max != r.b_max {
            return Err(format!("{}: replay b_max mismatch", r.case_id));
        }
    }
    Ok(format!("{} records replayed", c.records.len()))
}

//! Command-line entry point: named verification checks with JSON reports,
//! plus small inspection commands for words, hyperplanes, basis changes,
//! and homomorphism searches.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sautlab::checks::{all_passed, run_all, run_check, CheckId, CheckParams, CheckReport, Profile};
use sautlab::hyperplanes::{
    complete_basis, hyperplane_basis, lemma_a_change, s_basis, verify_lemma_a, Indicator,
};
use sautlab::presentations::{
    classify_surjections, enumerate_homs, parse_presentation, DEFAULT_HOM_WORK_LIMIT,
};
use sautlab::gf2::vector_to_bits;
use sautlab::smallgroups::{catalog_group, small_groups_catalog};
use sautlab::words::Word;

const WORK_LIMIT_ENV: &str = "SAUTLAB_HOM_WORK_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "sautlab")]
#[command(about = "verification workbench for free-group automorphisms and SL(n,2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one named check (see `check --list` for the registry)
    Check {
        /// Check name, e.g. counting-identity
        #[arg(default_value = "")]
        name: String,

        /// List registered checks and exit
        #[arg(long)]
        list: bool,

        /// Largest rank or dimension to cover (per-check meaning)
        #[arg(long)]
        n: Option<usize>,

        /// Seed for sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Sample count for sampled checks
        #[arg(long, default_value_t = 20)]
        samples: usize,

        /// Opt in to the ~10^7-element dimension-5 enumeration
        #[arg(long)]
        allow_n5: bool,

        /// Emit the report as one JSON line
        #[arg(long)]
        json: bool,

        /// Record real wall times (reports are then no longer byte-stable)
        #[arg(long)]
        timings: bool,
    },

    /// Run the complete registered suite
    All {
        /// quick caps tables at dimension 3, full at dimension 4
        #[arg(long, default_value = "quick")]
        profile: String,

        /// Emit newline-delimited JSON reports
        #[arg(long)]
        json: bool,

        /// Record real wall times (reports are then no longer byte-stable)
        #[arg(long)]
        timings: bool,
    },

    /// Parse, reduce, and abelianize a word like "x1*x2^-1*x1"
    Word {
        expr: String,

        /// Rank of the ambient free group (default: largest index used)
        #[arg(long)]
        rank: Option<usize>,

        #[arg(long)]
        json: bool,
    },

    /// Show the hyperplane, subgroup basis, and completed basis of an
    /// indicator bitstring like 11000
    Hyperplane {
        bits: String,

        #[arg(long)]
        json: bool,
    },

    /// Compute and verify the basis change for two indicator bitstrings
    #[command(name = "lemma-a")]
    LemmaA {
        bits: String,
        bits_prime: String,

        #[arg(long)]
        json: bool,
    },

    /// Enumerate homomorphisms from a presentation into a catalog group
    Homs {
        /// e.g. "<a,b ; a^4, a^2*b^-3>"
        presentation: String,

        /// Catalog group name, e.g. S3
        group: String,

        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check {
            name,
            list,
            n,
            seed,
            samples,
            allow_n5,
            json,
            timings,
        } => {
            if list {
                for id in CheckId::ALL {
                    println!("{:24} {}", id.name(), id.paper_ref());
                }
                return ExitCode::SUCCESS;
            }
            let Some(id) = CheckId::from_name(&name) else {
                eprintln!("unknown check {name:?}; try `sautlab check --list`");
                return ExitCode::from(2);
            };
            let params = CheckParams {
                n,
                seed,
                samples,
                allow_n5,
                timings,
                hom_work_limit: work_limit_from_env(),
            };
            let report = run_check(id, &params);
            emit_report(&report, json);
            exit_for_reports(std::slice::from_ref(&report))
        }

        Command::All {
            profile,
            json,
            timings,
        } => {
            let Some(profile) = Profile::parse(&profile) else {
                eprintln!("unknown profile {profile:?}; use quick or full");
                return ExitCode::from(2);
            };
            let params = CheckParams {
                timings,
                hom_work_limit: work_limit_from_env(),
                ..Default::default()
            };
            let reports = run_all(profile, &params);
            for report in &reports {
                emit_report(report, json);
            }
            exit_for_reports(&reports)
        }

        Command::Word { expr, rank, json } => {
            let rank = rank.unwrap_or_else(|| largest_index(&expr).max(1));
            let word = match Word::parse(&expr, rank) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "input": expr,
                        "rank": rank,
                        "reduced": word.render(),
                        "length": word.len(),
                        "abelianization": word.abelianize(),
                    })
                );
            } else {
                println!("reduced: {}", display_word(&word));
                println!("length: {}", word.len());
                println!("abelianization: {:?}", word.abelianize());
            }
            ExitCode::SUCCESS
        }

        Command::Hyperplane { bits, json } => {
            let indicator: Indicator = match bits.parse() {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let n = indicator.n();
            let plane = hyperplane_basis(&indicator);
            let words = s_basis(&indicator);
            let completed = match complete_basis(&indicator) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::FAILURE;
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "indicator": indicator.to_string(),
                        "hyperplane_basis": plane
                            .basis()
                            .iter()
                            .map(|&v| vector_to_bits(n, v))
                            .collect::<Vec<_>>(),
                        "s_basis": words.iter().map(Word::render).collect::<Vec<_>>(),
                        "completed_basis": completed.to_json(),
                    })
                );
            } else {
                println!("indicator: {indicator}");
                for &v in plane.basis() {
                    println!("plane basis: {}", vector_to_bits(n, v));
                }
                for w in &words {
                    println!("subgroup basis: {}", display_word(w));
                }
                println!("completed basis: {completed}");
            }
            ExitCode::SUCCESS
        }

        Command::LemmaA {
            bits,
            bits_prime,
            json,
        } => {
            let parse = |s: &str| -> Result<Indicator, String> {
                s.parse().map_err(|e| format!("{e}"))
            };
            let (ind, ind_prime) = match (parse(&bits), parse(&bits_prime)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let change = match lemma_a_change(&ind, &ind_prime) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let verified = verify_lemma_a(&ind, &ind_prime, &change).unwrap_or(false);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "indicator": ind.to_string(),
                        "indicator_prime": ind_prime.to_string(),
                        "basis_change": change.to_json(),
                        "verified": verified,
                    })
                );
            } else {
                println!("basis change: {change}");
                println!("verified: {verified}");
            }
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }

        Command::Homs {
            presentation,
            group,
            json,
        } => {
            let source = match parse_presentation(&presentation) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let target = match catalog_group(&group) {
                Ok(Some(g)) => g,
                Ok(None) => {
                    let names: Vec<String> = small_groups_catalog(8)
                        .expect("catalog builds")
                        .iter()
                        .map(|g| g.name().to_string())
                        .collect();
                    eprintln!("unknown group {group:?}; catalog: {}", names.join(", "));
                    return ExitCode::from(2);
                }
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::FAILURE;
                }
            };
            let homs = match enumerate_homs(&source, &target, work_limit_from_env()) {
                Ok(h) => h,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let surjections: Vec<_> = homs.iter().filter(|h| h.is_surjective(&target)).collect();
            let classes = match classify_surjections(&homs, &target, &[]) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::FAILURE;
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "presentation": source.to_string(),
                        "group": target.name(),
                        "homs": homs.len(),
                        "surjections": surjections.len(),
                        "surjection_classes": classes.len(),
                        "images": homs.iter().map(|h| h.images.clone()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("presentation: {source}");
                println!("group: {} (order {})", target.name(), target.order());
                println!("homs: {}", homs.len());
                println!("surjections: {}", surjections.len());
                println!("surjection classes: {}", classes.len());
            }
            ExitCode::SUCCESS
        }
    }
}

fn work_limit_from_env() -> u128 {
    std::env::var(WORK_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_HOM_WORK_LIMIT)
}

fn largest_index(expr: &str) -> usize {
    let bytes = expr.as_bytes();
    let mut best = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end > start {
                if let Ok(k) = expr[start..end].parse::<usize>() {
                    best = best.max(k);
                }
            }
            i = end;
        } else {
            i += 1;
        }
    }
    best
}

fn display_word(w: &Word) -> String {
    if w.is_identity() {
        "1".to_string()
    } else {
        w.render()
    }
}

fn emit_report(report: &CheckReport, json: bool) {
    if json {
        println!("{}", report.to_json_line());
        return;
    }
    let status = match report.status {
        sautlab::checks::CheckStatus::Pass => "pass",
        sautlab::checks::CheckStatus::Fail => "FAIL",
        sautlab::checks::CheckStatus::Refused => "refused",
    };
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let counts: Vec<String> = report
        .counts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut line = format!("{:24} {:7}", report.check, status);
    if !params.is_empty() {
        line.push_str(&format!(" [{}]", params.join(" ")));
    }
    if !counts.is_empty() {
        line.push_str(&format!(" {}", counts.join(" ")));
    }
    if report.elapsed_ms > 0 {
        line.push_str(&format!(" ({} ms)", report.elapsed_ms));
    }
    println!("{line}");
    if let Some(witness) = &report.witness {
        println!("    witness: {witness}");
    }
}

fn exit_for_reports(reports: &[CheckReport]) -> ExitCode {
    if reports.iter().any(CheckReport::refused) {
        ExitCode::from(2)
    } else if all_passed(reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

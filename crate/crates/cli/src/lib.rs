//! `powmon`: computes `Aut(G)` and `Aut(P₀(G))` for small finite abelian
//! groups, runs the lemma checks, and exports carrier and Cayley tables.
//!
//! Everything written to the data stream is deterministic. Timings go to a
//! separate metadata value that `main` prints on stderr.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use powmon_core::abelian_group::{
    abelian_groups_up_to, enumerate_group_automorphisms, parse_factor_list,
};
use powmon_core::automorphisms::{
    assemble, enumerate_trivial_pullback_automorphisms, pullback_map,
};
use powmon_core::lemma_harness::{skipped_report, verify_main_theorem, VerificationReport};
use powmon_core::{
    Error, GroupSpec, Limits, PowerMonoidContext, DEFAULT_BUDGET, DEFAULT_MAX_GROUP_ORDER,
};
use serde_json::{json, Value};

mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "powmon",
    version,
    about = "Automorphisms of reduced power monoids of finite abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Node limit for the automorphism search
    #[arg(long, env = "POWMON_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Worker threads (0 picks one per core)
    #[arg(long, default_value_t = 0, global = true)]
    pub parallelism: usize,
    /// Treat checks skipped over a resource bound as failures (exit 3)
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orders of Aut(G) and Aut(P0(G)) for one group
    Aut {
        #[command(flatten)]
        group: GroupArg,
        /// List every automorphism of P0(G)
        #[arg(long)]
        emit_maps: bool,
    },
    /// Run the full verification on every abelian group up to an order
    Verify {
        #[arg(long)]
        max_order: usize,
    },
    /// Run every named check on one group
    Lemmas {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Export the carrier and the sumset Cayley table
    Table {
        #[command(flatten)]
        group: GroupArg,
    },
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Comma-separated cyclic factor orders, e.g. 2,4 (empty for the trivial group)
    #[arg(long, allow_hyphen_values = true)]
    pub group: String,
    /// Also report the factor list exactly as given
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What a command produced: the exit code, the data stream, and timing
/// metadata.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub metadata: Value,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            output: String::new(),
            metadata: json!({ "error": e.to_string() }),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidFactor(_) | Error::Parse { .. } | Error::Contract(_) => EXIT_USAGE,
        Error::Resource { .. } | Error::BudgetExhausted { .. } => EXIT_RESOURCE,
        Error::Invariant(_) | Error::TheoremViolation { .. } => EXIT_FAILURE,
    }
}

struct Group {
    spec: GroupSpec,
    input: Option<Vec<u64>>,
}

fn parse_group(arg: &GroupArg) -> Result<Group, Error> {
    let factors = parse_factor_list(&arg.group)?;
    Ok(Group {
        spec: GroupSpec::new(&factors)?,
        input: arg.raw.then_some(factors),
    })
}

pub fn run(cli: &Cli) -> Outcome {
    let limits = Limits {
        max_group_order: DEFAULT_MAX_GROUP_ORDER,
        budget: cli.common.budget,
    };
    let result = match &cli.command {
        Command::Aut { group, emit_maps } => {
            parse_group(group).and_then(|g| cmd_aut(&g, *emit_maps, cli, &limits))
        }
        Command::Verify { max_order } => cmd_verify(*max_order, cli, &limits),
        Command::Lemmas { group } => parse_group(group).and_then(|g| cmd_lemmas(&g, cli, &limits)),
        Command::Table { group } => parse_group(group).and_then(|g| cmd_table(&g, cli)),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn cmd_aut(group: &Group, emit_maps: bool, cli: &Cli, limits: &Limits) -> Result<Outcome, Error> {
    if emit_maps && cli.common.format == Format::Csv {
        return Err(Error::Contract(
            "--emit-maps needs --format json or text".into(),
        ));
    }
    let start = Instant::now();
    let ctx = PowerMonoidContext::new(&group.spec)?;
    let group_auts = enumerate_group_automorphisms(&group.spec, limits.max_group_order)?;
    let search = enumerate_trivial_pullback_automorphisms(&ctx, limits.budget)?;
    let kernel_order = search.maps.len();
    let all = assemble(&ctx, &group_auts, &search.maps)?;
    let maps = if emit_maps {
        let mut out = Vec::with_capacity(all.len());
        for f in &all {
            out.push(render::MapEntry::new(&ctx, f, pullback_map(&ctx, f)?));
        }
        Some(out)
    } else {
        None
    };
    let report = render::AutReport {
        group: group.spec.factors().to_vec(),
        input: group.input.clone(),
        order: group.spec.order(),
        aut_g_order: group_auts.len(),
        aut_p0g_order: all.len(),
        trivial_pullback_order: kernel_order,
        exceptional: group.spec.is_klein_four(),
        automorphisms: maps,
    };
    Ok(Outcome {
        code: EXIT_OK,
        output: render::aut(&report, cli.common.format),
        metadata: json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3, "search": search.stats }),
    })
}

fn report_code(reports: &[VerificationReport], strict: bool) -> i32 {
    if reports.iter().any(|r| !r.passed()) {
        EXIT_FAILURE
    } else if strict && reports.iter().any(VerificationReport::has_skipped) {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    }
}

fn cmd_verify(max_order: usize, cli: &Cli, limits: &Limits) -> Result<Outcome, Error> {
    if max_order == 0 {
        return Err(Error::Contract("--max-order must be at least 1".into()));
    }
    let start = Instant::now();
    let mut reports = Vec::new();
    for spec in abelian_groups_up_to(max_order) {
        // groups past the bound are reported without building their context
        let report = if spec.order() > limits.max_group_order {
            let reason = format!(
                "|G| = {} exceeds the bound {}",
                spec.order(),
                limits.max_group_order
            );
            skipped_report(&spec, &reason)
        } else {
            verify_main_theorem(&PowerMonoidContext::new(&spec)?, limits)
        };
        reports.push(report);
    }
    let code = report_code(&reports, cli.common.strict);
    let metadata = json!({
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
        "groups": reports.iter().map(VerificationReport::metadata).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        code,
        output: render::verify(max_order, &reports, cli.common.format),
        metadata,
    })
}

fn cmd_lemmas(group: &Group, cli: &Cli, limits: &Limits) -> Result<Outcome, Error> {
    let ctx = PowerMonoidContext::new(&group.spec)?;
    let report = verify_main_theorem(&ctx, limits);
    Ok(Outcome {
        code: report_code(std::slice::from_ref(&report), cli.common.strict),
        output: render::lemmas(&report, group.input.as_deref(), cli.common.format),
        metadata: report.metadata(),
    })
}

fn cmd_table(group: &Group, cli: &Cli) -> Result<Outcome, Error> {
    let start = Instant::now();
    let ctx = PowerMonoidContext::new(&group.spec)?;
    let table = ctx.cayley_table()?;
    Ok(Outcome {
        code: EXIT_OK,
        output: render::table(&ctx, &table, group.input.as_deref(), cli.common.format),
        metadata: json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use powmon_core::lemma_harness::CheckResult;

    fn report(checks: Vec<CheckResult>) -> VerificationReport {
        let mut r = skipped_report(&GroupSpec::new(&[2]).unwrap(), "unused");
        r.checks = checks;
        r
    }

    #[test]
    fn failures_dominate_skips() {
        let pass = report(vec![CheckResult::pass("a")]);
        let skip = report(vec![CheckResult::skipped("a", "too big")]);
        let fail = report(vec![CheckResult::fail("a", json!({}))]);
        assert_eq!(report_code(&[pass.clone(), skip.clone()], false), EXIT_OK);
        assert_eq!(
            report_code(&[pass.clone(), skip.clone()], true),
            EXIT_RESOURCE
        );
        assert_eq!(report_code(&[skip, fail.clone()], true), EXIT_FAILURE);
        assert_eq!(report_code(&[fail], false), EXIT_FAILURE);
        assert_eq!(report_code(&[pass], true), EXIT_OK);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::InvalidFactor(1)), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Contract("x".into())), EXIT_USAGE);
        assert_eq!(
            exit_code(&Error::Resource {
                what: "group order",
                actual: 13,
                limit: 12
            }),
            EXIT_RESOURCE
        );
        assert_eq!(exit_code(&Error::Invariant("x".into())), EXIT_FAILURE);
    }

    #[test]
    fn flags_parse_before_or_after_the_subcommand() {
        let a =
            Cli::try_parse_from(["powmon", "--format", "json", "aut", "--group", "2,2"]).unwrap();
        let b =
            Cli::try_parse_from(["powmon", "aut", "--group", "2,2", "--format", "json"]).unwrap();
        assert_eq!(a.common.format, Format::Json);
        assert_eq!(b.common.format, Format::Json);
        assert!(Cli::try_parse_from(["powmon", "table"]).is_err());
    }
}

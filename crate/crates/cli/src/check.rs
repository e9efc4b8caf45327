use bayesent_core::suites;
use clap::Args;
use serde::Serialize;

use crate::failure::{to_json, Failure};

#[derive(Args)]
pub struct CheckArgs {
    /// Suite name: classicality, inconsistency, kolmogorov, paraconsistency,
    /// nonmonotonicity, threshold or all.
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the number of random instances per suite.
    #[arg(long)]
    cases: Option<usize>,
}

#[derive(Serialize)]
struct CheckOutput {
    passed: bool,
    suites: Vec<suites::SuiteReport>,
}

pub fn check(args: CheckArgs) -> Result<String, Failure> {
    if args.suite != "all" && !suites::SUITES.contains(&args.suite.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown suite `{}` (expected one of {}, all)",
            args.suite,
            suites::SUITES.join(", ")
        )));
    }
    let reports = suites::run(&args.suite, args.seed, args.cases)?;
    for r in &reports {
        eprintln!("{r}");
    }
    let passed = reports.iter().all(|r| r.passed());
    let out = to_json(&CheckOutput {
        passed,
        suites: reports,
    });
    if passed {
        Ok(out)
    } else {
        Err(Failure::Suite {
            report: out,
            message: "invariant suite failed".into(),
        })
    }
}

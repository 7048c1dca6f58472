mod cache;
mod cli;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use cyclobrauer::acceptance::AcceptanceReport;
use serde_json::json;

use crate::cache::Cache;
use crate::cli::Cli;
use crate::report::Report;

fn accept_table(report: &Report) -> Option<String> {
    let acc: AcceptanceReport = serde_json::from_value(report.payload.clone()).ok()?;
    let mut out = format!("accept --profile {}\n", acc.profile);
    for row in &acc.rows {
        let verdict = if row.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} criterion {}: {} ({})\n", row.id, row.title, row.summary()));
        for c in row.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("    {}: expected {}, got {}\n", c.name, c.expected, c.actual));
        }
    }
    if let Some(t) = &report.timing {
        out.push_str(&format!("timing: {t}\n"));
    }
    Some(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with success; usage errors exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let plan = match commands::plan(&cli.command) {
        Ok(plan) => plan,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let cache = cli.cache_dir.as_deref().map(Cache::new);
    let cached = match (&cache, &plan.cache_key) {
        (Some(c), Some(key)) => c.load(key),
        _ => None,
    };
    let (outcome, detail) = match cached {
        Some(outcome) => (outcome, None),
        None => match commands::execute(&plan) {
            Ok((outcome, detail)) => {
                if let (Some(c), Some(key)) = (&cache, &plan.cache_key) {
                    c.store(key, &outcome);
                }
                (outcome, detail)
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        },
    };
    let timing = cli.timing.then(|| {
        let mut t = json!({"total_ms": start.elapsed().as_millis() as u64});
        if let Some(rows) = detail {
            t["rows"] = rows;
        }
        t
    });
    let report = Report { command: plan.echo, status: outcome.status, payload: outcome.payload, timing };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        let text = if report.command.verb == "accept" { accept_table(&report) } else { None };
        print!("{}", text.unwrap_or_else(|| report.to_table()));
    }
    ExitCode::from(report.exit_code())
}

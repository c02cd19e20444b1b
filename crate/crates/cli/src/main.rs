//! `mapgerm`: invariants of map germs `(C², 0) → (C³, 0)` and verdicts for
//! their one-parameter families.

mod cache;
mod error;
mod render;
mod settings;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mapgerm_core::catalog::selftest_entry;
use mapgerm_core::{
    catalog, family_verdict, invariant_report, load_germ_spec, lookup, validate_map_germ, CatalogEntry,
    FamilyVerdict, GermSpec, InvariantReport, SelfTestOutcome, ValidatedGerm,
};
use rayon::prelude::*;
use serde::Serialize;

use error::Failure;
use settings::{Flags, Settings};

const PROXY_FAILURE: &str = "non-finite colength: finite determinacy proxy fails";

#[derive(Debug, Parser)]
#[command(name = "mapgerm", version, about = "Invariants and equisingularity of map germs (C^2,0) -> (C^3,0)")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariant report of a germ file.
    Invariants { file: PathBuf },
    /// Equisingularity verdict of an unfolding file.
    Family { file: PathBuf },
    /// Classical germs and families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Entry names.
    List,
    /// The germ file of one entry.
    Show { name: String },
    /// Recompute every entry and compare with its expected values.
    Selftest,
}

/// What a successful command prints, and its exit code.
struct Output {
    text: String,
    code: u8,
    warning: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: 0,
            warning: None,
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn read_spec(path: &Path) -> Result<GermSpec, Failure> {
    let doc = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    load_germ_spec(&doc).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn germ_report(spec: &GermSpec, s: &Settings) -> Result<InvariantReport, Failure> {
    let key = cache::key("invariants", spec, &s.analysis);
    cache::cached(s.cache_dir.as_deref(), &key, || match validate_map_germ(spec)? {
        ValidatedGerm::Germ(g) => Ok(invariant_report(&g, &s.analysis)?),
        ValidatedGerm::Unfolding(_) => Err(Failure::usage(
            "the file declares a parameter; use `mapgerm family` for unfoldings",
        )),
    })
}

fn family_report(spec: &GermSpec, s: &Settings) -> Result<FamilyVerdict, Failure> {
    let key = cache::key("family", spec, &s.analysis);
    cache::cached(s.cache_dir.as_deref(), &key, || match validate_map_germ(spec)? {
        ValidatedGerm::Unfolding(u) => Ok(family_verdict(&u, &s.analysis)?),
        ValidatedGerm::Germ(_) => Err(Failure::usage("not an unfolding: no parameter declared")),
    })
}

fn cmd_invariants(path: &Path, s: &Settings) -> Result<Output, Failure> {
    let r = germ_report(&read_spec(path)?, s)?;
    let text = if s.json { json(&r) } else { render::report(&r) };
    if r.finitely_determined_proxy {
        Ok(Output::ok(text))
    } else {
        Ok(Output {
            text,
            code: 2,
            warning: Some(format!("rejected: {PROXY_FAILURE}")),
        })
    }
}

fn cmd_family(path: &Path, s: &Settings) -> Result<Output, Failure> {
    let v = family_report(&read_spec(path)?, s)?;
    Ok(Output::ok(if s.json { json(&v) } else { render::verdict(&v) }))
}

fn selftest_one(e: &CatalogEntry, s: &Settings) -> SelfTestOutcome {
    if s.cache_dir.is_none() {
        return selftest_entry(e, &s.analysis);
    }
    let failed = |f: Failure| SelfTestOutcome {
        name: e.name.to_string(),
        pass: false,
        detail: f.message().to_string(),
    };
    if e.spec.is_unfolding() {
        family_report(&e.spec, s).map_or_else(failed, |v| e.check_verdict(&v))
    } else {
        germ_report(&e.spec, s).map_or_else(failed, |r| e.check_report(&r))
    }
}

fn cmd_catalog(action: &CatalogAction, s: &Settings) -> Result<Output, Failure> {
    match action {
        CatalogAction::List => {
            let names: Vec<&str> = catalog().iter().map(|e| e.name).collect();
            Ok(Output::ok(if s.json {
                json(&names)
            } else {
                names.iter().map(|n| format!("{n}\n")).collect()
            }))
        }
        CatalogAction::Show { name } => {
            let e = lookup(name).ok_or_else(|| Failure::usage(format!("unknown catalog entry '{name}'")))?;
            Ok(Output::ok(format!("{}\n", e.spec.to_canonical_json())))
        }
        CatalogAction::Selftest => {
            let entries = catalog();
            let outcomes: Vec<SelfTestOutcome> = entries.par_iter().map(|e| selftest_one(e, s)).collect();
            let all = outcomes.iter().all(|o| o.pass);
            Ok(Output {
                text: if s.json { json(&outcomes) } else { render::selftest(&outcomes) },
                code: if all { 0 } else { 2 },
                warning: (!all).then(|| "self-test failed".to_string()),
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let s = Settings::resolve(&cli.flags)?;
    match &cli.command {
        Command::Invariants { file } => cmd_invariants(file, &s),
        Command::Family { file } => cmd_family(file, &s),
        Command::Catalog { action } => cmd_catalog(action, &s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(w) = out.warning {
                eprintln!("mapgerm: {w}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("mapgerm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

//! Human-readable text for reports, verdicts and self-test outcomes.

use std::fmt::Write;

use mapgerm_core::{FamilyVerdict, InvariantReport, SelfTestOutcome};

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rows(r: &InvariantReport) -> [(&'static str, String); 8] {
    [
        ("C", r.C.to_string()),
        ("T", r.T.to_string()),
        ("mu_D2", r.mu_D2.to_string()),
        ("mu_D2tilde", opt(r.mu_D2tilde)),
        ("mu_D2tilde_mod_S2", opt(r.mu_D2tilde_mod_S2)),
        ("mu_image", opt(r.mu_image)),
        ("euler", opt(r.euler)),
        ("m0", opt(r.m0)),
    ]
}

pub fn report(r: &InvariantReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: &str| writeln!(out, "{k:<27}{v}").expect("string write");
    line("germ", &r.germ);
    for (k, v) in rows(r) {
        line(k, &v);
    }
    line("mu_D2tilde (Le-Greuel)", &opt(r.mu_D2tilde_le_greuel));
    line("double point curve", r.d2_curve.as_deref().unwrap_or("-"));
    line("finitely_determined_proxy", yn(r.finitely_determined_proxy));
    line("consistent", yn(r.consistent));
    if !r.identity_checks.is_empty() {
        out.push_str("identity checks\n");
        for c in &r.identity_checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            writeln!(out, "  {mark}  {}  ({} = {})", c.name, c.left, c.right).expect("string write");
        }
    }
    for d in &r.diagnostics {
        writeln!(out, "note: {d}").expect("string write");
    }
    out
}

pub fn verdict(v: &FamilyVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "family  {}", v.family).expect("string write");
    writeln!(out, "special fiber  {}", v.report_special.germ).expect("string write");

    let mut header = vec!["".to_string(), "generic".to_string(), "t = 0".to_string()];
    header.extend(v.sample_reports.iter().map(|s| format!("t = {}", s.t)));
    let mut table = vec![header];
    let columns: Vec<[(&str, String); 8]> = std::iter::once(&v.report_generic)
        .chain(std::iter::once(&v.report_special))
        .chain(v.sample_reports.iter().map(|s| &s.report))
        .map(rows)
        .collect();
    for i in 0..8 {
        let mut row = vec![columns[0][i].0.to_string()];
        row.extend(columns.iter().map(|c| c[i].1.clone()));
        table.push(row);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|j| table.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(j, (c, w))| if j == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).expect("string write");
    }

    out.push_str("equivalent conditions\n");
    for c in &v.equivalent_conditions {
        writeln!(out, "  {:<36}{}", c.name, yn(c.holds)).expect("string write");
    }
    writeln!(out, "m0 constant        {}", yn(v.m0_constant)).expect("string write");
    writeln!(out, "excellent          {} ({})", yn(v.excellent), v.excellent_basis).expect("string write");
    for d in &v.diagnostics {
        writeln!(out, "note: {d}").expect("string write");
    }
    writeln!(out, "{}", v.summary_line()).expect("string write");
    out
}

pub fn selftest(outcomes: &[SelfTestOutcome]) -> String {
    let mut out = String::new();
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    for o in outcomes {
        let mark = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{mark}  {:<width$}  {}", o.name, o.detail).expect("string write");
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    writeln!(out, "{passed}/{} entries passed", outcomes.len()).expect("string write");
    out
}

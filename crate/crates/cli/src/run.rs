use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lconf_core::central_ext::{h2, TwoCocycle};
use lconf_core::cohomology::named::verify_named_cocycles;
use lconf_core::cohomology::{
    check_homotopy, cohomology_tables, homogeneous_degree, CohomologyTable, DegreeRange, TauVariant,
};
use lconf_core::derivations::{derivation_report, ConformalLinearMap};
use lconf_core::modules::{classify_rank_one, solve_m_action};
use lconf_core::poly::{Polynomial, Rational};
use lconf_core::ConformalAlgebra;
use num::Zero;
use serde_json::{json, Value};

use crate::algfile::{describe_failures, parse_algebra, parse_unchecked, print_algebra};
use crate::BUNDLED;

#[derive(Parser, Debug)]
#[command(
    name = "lconf",
    version,
    about = "Exact computations for finite Lie conformal algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Algebra definition file, or one of the bundled names `w22`, `vir`, `abelian1`.
    #[arg(long, default_value = "w22")]
    pub algebra: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check skew-symmetry and the Jacobi identity.
    Check(#[command(flatten)] Common),
    /// Conformal derivations up to a degree bound, and the outer part.
    Derivations {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_deg: u32,
    },
    /// Central extensions by C: the second cohomology up to a degree bound.
    CentralExt {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_deg: u32,
    },
    /// Rank-one modules over W(2,2): actions of M compatible with L x v = (D + alpha + delta x) v.
    Rank1Modules {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_deg: u32,
        #[arg(long, value_parser = parse_rational, requires = "alpha", allow_hyphen_values = true)]
        delta: Option<Rational>,
        #[arg(long, value_parser = parse_rational, requires = "delta", allow_hyphen_values = true)]
        alpha: Option<Rational>,
    },
    /// Cohomology of the basic and reduced complexes.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// `trivial`, `eval:a` or `rank1:delta,alpha`.
        #[arg(long, default_value = "trivial", value_parser = parse_coeffs, allow_hyphen_values = true)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 7)]
        max_q: usize,
        #[arg(long, requires = "deg_hi")]
        deg_lo: Option<u32>,
        #[arg(long, requires = "deg_lo")]
        deg_hi: Option<u32>,
    },
    /// Check the named cocycles of W(2,2) and the relations between them.
    Verify(#[command(flatten)] Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Check(c) | Command::Verify(c) => c,
            Command::Derivations { common, .. }
            | Command::CentralExt { common, .. }
            | Command::Rank1Modules { common, .. }
            | Command::Cohomology { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Derivations { .. } => "derivations",
            Command::CentralExt { .. } => "central-ext",
            Command::Rank1Modules { .. } => "rank1-modules",
            Command::Cohomology { .. } => "cohomology",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    Trivial,
    Eval(Rational),
    RankOne { delta: Rational, alpha: Rational },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| format!("`{s}` is not an integer or p/q rational"))
}

fn parse_coeffs(s: &str) -> Result<Coeffs, String> {
    if s == "trivial" {
        return Ok(Coeffs::Trivial);
    }
    if let Some(a) = s.strip_prefix("eval:") {
        return Ok(Coeffs::Eval(parse_rational(a)?));
    }
    if let Some(rest) = s.strip_prefix("rank1:") {
        let (d, a) = rest.split_once(',').ok_or("expected rank1:delta,alpha")?;
        return Ok(Coeffs::RankOne {
            delta: parse_rational(d)?,
            alpha: parse_rational(a)?,
        });
    }
    Err(format!(
        "unknown coefficients `{s}`; use trivial, eval:a or rank1:delta,alpha"
    ))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A computed identity or expected property failed.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 2,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

fn load_source(spec: &str) -> Result<(String, String)> {
    let path = PathBuf::from(spec);
    if path.exists() {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {spec}"))?;
        return Ok((spec.to_string(), text));
    }
    match BUNDLED.iter().find(|(name, _)| *name == spec) {
        Some((name, text)) => Ok((format!("{name} (bundled)"), text.to_string())),
        None => bail!("no such algebra file: {spec}"),
    }
}

fn require_w22(alg: &ConformalAlgebra, what: &str) -> Result<()> {
    if *alg != ConformalAlgebra::w22() {
        bail!("{what} is defined for W(2,2) with generators L M only");
    }
    Ok(())
}

/// Runs one command. Errors are usage or input errors; failed checks are reported in the status.
pub fn execute(cli: &Cli) -> Result<Report> {
    let common = cli.command.common();
    let (source, text) = load_source(&common.algebra)?;
    let alg = match cli.command {
        Command::Check(_) => parse_unchecked(&text),
        _ => parse_algebra(&text),
    }
    .with_context(|| format!("in {source}"))?;

    let mut report = match &cli.command {
        Command::Check(_) => check(&alg),
        Command::Derivations { max_deg, .. } => derivations(&alg, *max_deg),
        Command::CentralExt { max_deg, .. } => central_ext(&alg, *max_deg),
        Command::Rank1Modules {
            max_deg, delta, alpha, ..
        } => {
            require_w22(&alg, "rank1-modules")?;
            rank1_modules(*max_deg, delta.clone().zip(alpha.clone()))
        }
        Command::Cohomology {
            coeffs,
            max_q,
            deg_lo,
            deg_hi,
            ..
        } => {
            let range = match (deg_lo, deg_hi) {
                (Some(lo), Some(hi)) if lo <= hi => DegreeRange::Fixed { lo: *lo, hi: *hi },
                (Some(_), Some(_)) => bail!("--deg-lo must not exceed --deg-hi"),
                _ => DegreeRange::Default,
            };
            cohomology(&alg, coeffs, *max_q, range)?
        }
        Command::Verify(_) => {
            require_w22(&alg, "verify")?;
            verify(&alg)?
        }
    };
    let obj = report.json.as_object_mut().expect("reports are objects");
    obj.insert("command".into(), json!(cli.command.name()));
    obj.insert(
        "algebra".into(),
        json!({ "source": source, "definition": print_algebra(&alg) }),
    );
    report.text = format!("{}: {}\n{}", cli.command.name(), source, report.text);
    Ok(report)
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn check(alg: &ConformalAlgebra) -> Report {
    let r = alg.check_axioms();
    let degree = alg.structure_degree().map(|d| d.map_or(json!("abelian"), |d| json!(d)));
    let mut text = print_algebra(alg);
    let _ = writeln!(text, "skew-symmetry: {}", ok_str(r.skew_ok));
    let _ = writeln!(text, "jacobi: {}", ok_str(r.jacobi_ok));
    text.push_str(&describe_failures(alg, &r));
    Report {
        json: json!({
            "skew_symmetry": r.skew_ok,
            "jacobi": r.jacobi_ok,
            "ok": r.ok(),
            "witnesses": describe_failures(alg, &r).lines().map(str::trim).collect::<Vec<_>>(),
            "structure_degree": degree,
            "perfect": r.ok() && alg.check_perfect(),
        }),
        text,
        status: Status::from_ok(r.ok()),
    }
}

fn format_map(alg: &ConformalAlgebra, d: &ConformalLinearMap) -> String {
    (0..alg.rank())
        .map(|i| format!("d_x {} = {}", alg.names()[i], alg.format_element(&d.image(i))))
        .collect::<Vec<_>>()
        .join("; ")
}

fn derivations(alg: &ConformalAlgebra, n: u32) -> Report {
    let r = derivation_report(alg, n);
    let ds: Vec<String> = r.derivations.iter().map(|d| format_map(alg, d)).collect();
    let mut text = String::new();
    let _ = writeln!(text, "degree bound: {n}");
    let _ = writeln!(text, "derivations: {}", r.derivations.len());
    let _ = writeln!(text, "inner: {}", r.inner.len());
    let _ = writeln!(text, "inner contained: {}", ok_str(r.inner_contained));
    let _ = writeln!(text, "outer dimension: {}", r.outer_dim);
    for d in &ds {
        let _ = writeln!(text, "  {d}");
    }
    Report {
        json: json!({
            "degree_bound": n,
            "derivation_dim": r.derivations.len(),
            "inner_dim": r.inner.len(),
            "inner_contained": r.inner_contained,
            "outer_dim": r.outer_dim,
            "derivations": ds,
        }),
        text,
        status: Status::from_ok(r.inner_contained),
    }
}

fn format_cocycle(alg: &ConformalAlgebra, f: &TwoCocycle) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.stored()
        .iter()
        .map(|(&(i, j), p)| format!("f_x({},{}) = {p}", alg.names()[i], alg.names()[j]))
        .collect::<Vec<_>>()
        .join("; ")
}

fn central_ext(alg: &ConformalAlgebra, n: u32) -> Report {
    let r = h2(alg, n);
    let reps: Vec<String> = r.representatives.iter().map(|f| format_cocycle(alg, f)).collect();
    let mut text = String::new();
    let _ = writeln!(text, "degree bound: {n}");
    let _ = writeln!(text, "2-cocycles: {}", r.cocycle_basis.len());
    let _ = writeln!(text, "trivial 2-cocycles: {}", r.trivial_basis.len());
    let _ = writeln!(text, "h2_dim: {}", r.h2_dim);
    for s in &reps {
        let _ = writeln!(text, "  {s}");
    }
    Report {
        json: json!({
            "degree_bound": n,
            "cocycle_dim": r.cocycle_basis.len(),
            "trivial_dim": r.trivial_basis.len(),
            "trivial_contained": r.trivial_contained,
            "h2_dim": r.h2_dim,
            "representatives": reps,
        }),
        text,
        status: Status::from_ok(r.trivial_contained),
    }
}

fn rank1_modules(n: u32, params: Option<(Rational, Rational)>) -> Report {
    if let Some((delta, alpha)) = params {
        let sol = solve_m_action(
            &Polynomial::constant(delta.clone()),
            &Polynomial::constant(alpha.clone()),
            n,
        );
        let basis: Vec<String> = sol.basis.iter().map(ToString::to_string).collect();
        let mut text = String::new();
        let _ = writeln!(text, "delta = {delta}, alpha = {alpha}, degree bound {n}");
        let _ = writeln!(text, "M-action space: {}", basis.len());
        for note in &sol.notes {
            let _ = writeln!(text, "  {note}");
        }
        return Report {
            json: json!({
                "degree_bound": n,
                "delta": delta.to_string(),
                "alpha": alpha.to_string(),
                "linear_dim": sol.linear_dim,
                "dim": basis.len(),
                "basis": basis,
                "notes": sol.notes,
            }),
            text,
            status: Status::Ok,
        };
    }
    let r = classify_rank_one(n);
    let mut text = String::new();
    let _ = writeln!(text, "degree bound: {n}");
    let _ = writeln!(text, "M_(delta,alpha) is a module: {}", ok_str(r.family_is_module));
    let _ = writeln!(
        text,
        "formal delta, alpha: M acts by {}",
        if r.formal_zero { "zero only" } else { "NONZERO actions" }
    );
    let _ = writeln!(text, "{:>6} {:>6} {:>4}", "delta", "alpha", "dim");
    for (d, a, dim) in &r.grid {
        let _ = writeln!(text, "{:>6} {:>6} {:>4}", d.to_string(), a.to_string(), dim);
    }
    Report {
        json: json!({
            "degree_bound": n,
            "family_is_module": r.family_is_module,
            "formal_zero": r.formal_zero,
            "grid": r.grid.iter().map(|(d, a, dim)| json!({"delta": d.to_string(), "alpha": a.to_string(), "dim": dim})).collect::<Vec<_>>(),
            "ok": r.checked,
        }),
        text,
        status: Status::from_ok(r.checked),
    }
}

fn cohomology(alg: &ConformalAlgebra, coeffs: &Coeffs, max_q: usize, range: DegreeRange) -> Result<Report> {
    match coeffs {
        Coeffs::Trivial => trivial_cohomology(alg, max_q, range, None),
        Coeffs::Eval(a) if a.is_zero() => trivial_cohomology(alg, max_q, range, Some("C_0 is the trivial module")),
        Coeffs::Eval(a) => Ok(homotopy_vanishing(
            alg,
            TauVariant::EvalA,
            max_q,
            range,
            format!("a = {a}"),
            true,
        )),
        Coeffs::RankOne { delta, alpha } => {
            require_w22(alg, "rank-one coefficients")?;
            let label = format!("delta = {delta}, alpha = {alpha}");
            Ok(homotopy_vanishing(
                alg,
                TauVariant::RankOne,
                max_q,
                range,
                label,
                !alpha.is_zero(),
            ))
        }
    }
}

fn dims_json(t: &CohomologyTable) -> Value {
    let mut by_q: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for (&(q, n), &d) in &t.dims {
        by_q.entry(q.to_string()).or_default().insert(n.to_string(), d);
    }
    json!(by_q)
}

fn table_text(t: &CohomologyTable, title: &str) -> String {
    let n_max = t.dims.keys().map(|&(_, n)| n).max().unwrap_or(0);
    let mut s = format!("{title}\n{:>3} {:>5} |", "q", "total");
    for n in 0..=n_max {
        let _ = write!(s, " {:>3}", format!("n{n}"));
    }
    s.push('\n');
    for q in 0..=t.q_max {
        let _ = write!(s, "{:>3} {:>5} |", q, t.total(q));
        for n in 0..=n_max {
            match t.dims.get(&(q, n)) {
                Some(d) => {
                    let _ = write!(s, " {d:>3}");
                }
                None => s.push_str("   ."),
            }
        }
        s.push('\n');
    }
    s
}

fn trivial_cohomology(alg: &ConformalAlgebra, max_q: usize, range: DegreeRange, note: Option<&str>) -> Result<Report> {
    let (basic, reduced) = cohomology_tables(alg, max_q, range)?;
    // The last identity needs basic(q + 1), which exists only below max_q.
    let les: Vec<(usize, bool)> = (0..max_q)
        .map(|q| (q, reduced.total(q) == basic.total(q) + basic.total(q + 1)))
        .collect();
    let les_ok = les.iter().all(|(_, ok)| *ok);
    let basic_concentrated = basic.dims.iter().all(|(&(q, n), &d)| d == 0 || n == q as u32);

    let mut reps = Vec::new();
    let mut rep_lines = String::new();
    for (kind, t) in [("basic", &basic), ("reduced", &reduced)] {
        for (q, cs) in &t.representatives {
            for c in cs {
                let n = homogeneous_degree(c)?.unwrap_or(0);
                let printed = c.display(alg.names()).to_string();
                let _ = writeln!(rep_lines, "  {kind} q={q} n={n}: {printed}");
                reps.push(json!({"complex": kind, "q": q, "n": n, "cochain": printed}));
            }
        }
    }

    let mut text = String::new();
    if let Some(n) = note {
        let _ = writeln!(text, "note: {n}");
    }
    text.push_str(&table_text(
        &basic,
        "basic complex: dim by cochain degree q and polynomial degree n",
    ));
    text.push_str(&table_text(&reduced, "reduced complex (quotient by the image of D)"));
    let _ = writeln!(text, "basic totals:   {:?}", basic.totals_vec());
    let _ = writeln!(text, "reduced totals: {:?}", reduced.totals_vec());
    let _ = writeln!(
        text,
        "basic cohomology concentrated in n = q: {}",
        if basic_concentrated { "yes" } else { "no" }
    );
    let _ = writeln!(
        text,
        "reduced(q) = basic(q) + basic(q+1) for q < {max_q}: {}",
        ok_str(les_ok)
    );
    text.push_str("representatives\n");
    text.push_str(&rep_lines);

    Ok(Report {
        json: json!({
            "coeffs": "trivial",
            "note": note,
            "basic": dims_json(&basic),
            "reduced": dims_json(&reduced),
            "basic_totals": basic.totals_vec(),
            "reduced_totals": reduced.totals_vec(),
            "basic_concentrated": basic_concentrated,
            "exact_sequence_identity": les_ok,
            "representatives": reps,
        }),
        text,
        status: Status::from_ok(les_ok),
    })
}

/// Certifies vanishing of reduced cohomology through the homotopy identity on every basis cochain.
fn homotopy_vanishing(
    alg: &ConformalAlgebra,
    variant: TauVariant,
    max_q: usize,
    range: DegreeRange,
    label: String,
    parameter_nonzero: bool,
) -> Report {
    let cells: Vec<(usize, u32)> = (1..=max_q).flat_map(|q| range.for_q(q).map(move |n| (q, n))).collect();
    let reports: Vec<_> = {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|&(q, n)| check_homotopy(alg, q, n, variant))
            .collect()
    };
    let all_ok = reports.iter().all(|r| r.ok);
    let note = reports.first().map_or("", |r| r.note);
    let (module, param) = match variant {
        TauVariant::EvalA => ("C_a", "a"),
        _ => ("M_(delta,alpha)", "alpha"),
    };
    let conclusion = match (all_ok, parameter_nonzero) {
        (true, true) => format!("reduced cohomology with coefficients in {module} vanishes for 1 <= q <= {max_q}"),
        (true, false) => format!("{param} = 0: the homotopy argument gives no conclusion"),
        (false, _) => "homotopy identity FAILED; no conclusion".to_string(),
    };
    let mut text = format!(
        "coefficients: {module}, {label}\n{:>3} {:>3} {:>6} {}\n",
        "q", "n", "basis", "identity"
    );
    for r in &reports {
        let _ = writeln!(text, "{:>3} {:>3} {:>6} {}", r.q, r.n, r.checked, ok_str(r.ok));
    }
    let _ = writeln!(text, "{note}");
    let _ = writeln!(text, "{conclusion}");
    Report {
        json: json!({
            "coeffs": module,
            "parameters": label,
            "cells": reports.iter().map(|r| json!({"q": r.q, "n": r.n, "checked": r.checked, "ok": r.ok})).collect::<Vec<_>>(),
            "homotopy_ok": all_ok,
            "requires": format!("{param} != 0"),
            "note": note,
            "conclusion": conclusion,
        }),
        text,
        status: Status::from_ok(all_ok),
    }
}

fn verify(alg: &ConformalAlgebra) -> Result<Report> {
    let checks = verify_named_cocycles(alg)?;
    let all = checks.iter().all(|c| c.pass);
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{:<6} {:<12} {}", ok_str(c.pass), c.name, c.statement);
    }
    let _ = writeln!(
        text,
        "{} of {} checks pass",
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    );
    Ok(Report {
        json: json!({
            "checks": checks.iter().map(|c| json!({"name": c.name, "statement": c.statement, "pass": c.pass})).collect::<Vec<_>>(),
            "ok": all,
        }),
        text,
        status: Status::from_ok(all),
    })
}

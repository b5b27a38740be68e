#![allow(clippy::result_large_err)]

mod args;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Common, Format, Param, VerifyArgs};
use hydrocone::algebra::{fmt_rat, rat_to_f64, Rat};
use hydrocone::channel::{check_admissibility, WeightData};
use hydrocone::green::{assemble_with, specialize_energy, substitute_parameters, AssembleOptions, GreenError};
use hydrocone::numerics::{
    end_to_end_check, evaluate_functional, q0_value, q1_value, CutoffTriple, NumericsError, QuadratureSpec,
};
use hydrocone::parametrix::{parametrix_coefficient, pole_inventory};
use hydrocone::verify::{verify, VerifyOptions};
use hydrocone::{Channel, Exec, ParamPoly};
use output::{emit, GroupRecord, ParametrixRecord, Record, ValueRecord};

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// A failed run: message plus exit status.
struct Failure(u8, String);

impl From<GreenError> for Failure {
    fn from(e: GreenError) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<NumericsError> for Failure {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::NonConvergence { .. } => Failure(EXIT_NUMERIC, e.to_string()),
            NumericsError::Green(g) => g.into(),
            other => Failure(EXIT_USAGE, other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Parametrix(c) => cmd_parametrix(c),
        Command::Green(c) => cmd_green(c),
        Command::Verify(v) => cmd_verify(v),
        Command::Qcheck(c) => cmd_qcheck(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn warn(format: Format, message: String) {
    match format {
        Format::Text => eprintln!("warning: {message}"),
        Format::JsonLines => emit(&Record::Warning { message }),
    }
}

fn cmd_parametrix(c: &Common) -> Result<(), Failure> {
    let order = c.order.unwrap_or(2);
    let range = c.channel_range(order);
    for l in range {
        if c.format == Format::Text {
            println!("channel l = {l}");
        }
        for i in 0..=order {
            let h = parametrix_coefficient(Channel(l), i);
            let poles = pole_inventory(Channel(l), i);
            match c.format {
                Format::Text => {
                    let inv = poles
                        .iter()
                        .map(|(q, m)| if *m == 1 { q.to_string() } else { format!("{q} (order {m})") })
                        .collect::<Vec<_>>()
                        .join(", ");
                    println!("  h⁻¹{}(w) = {h}", subscript(i));
                    println!("    poles: {inv}");
                }
                Format::JsonLines => emit(&Record::Parametrix(ParametrixRecord {
                    channel: Channel(l),
                    order: i,
                    symbol: h.to_string(),
                    poles,
                })),
            }
        }
    }
    Ok(())
}

fn subscript(n: u32) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn weights(c: &Common) -> WeightData {
    let w = WeightData::new(c.gamma.clone());
    match &c.gamma_tilde {
        Some(gt) => w.with_gamma_tilde(gt.clone()),
        None => w,
    }
}

fn check_weights(c: &Common, w: &WeightData) -> Result<(), Failure> {
    let report = check_admissibility(w, c.e_value());
    if report.all_pass() {
        return Ok(());
    }
    let mut why = Vec::new();
    if !report.in_regime || !report.weight_ok {
        why.push(format!("γ = {} must satisfy ½ < γ < 3/2 and γ ∉ ℤ + ½", fmt_rat(&c.gamma)));
    }
    if report.exit_ok == Some(false) {
        why.push("E must be negative".to_string());
    }
    if !report.gamma_tilde_ok {
        why.push("γ̃ must exceed γ".to_string());
    }
    Err(usage(format!("inadmissible parameters: {}", why.join("; "))))
}

fn cmd_green(c: &Common) -> Result<(), Failure> {
    let order = c.order.unwrap_or(2);
    let range = c.channel_range(order);
    let w = weights(c);
    check_weights(c, &w)?;
    if c.n == Some(0) {
        return Err(usage("n must be positive"));
    }
    let opts = AssembleOptions { weights: w, order, channels: *range.end(), exec: Exec::default() };
    let mut g = assemble_with(&opts)?;
    if let Some(n) = c.n {
        g = specialize_energy(&g, n);
    }
    let z = c.z_value().map(|v| ParamPoly::constant(v.clone())).unwrap_or_else(ParamPoly::z);
    let e = c.e_value().map(|v| ParamPoly::constant(v.clone())).unwrap_or_else(ParamPoly::e);
    if c.z_value().is_some() || c.e_value().is_some() {
        g = substitute_parameters(&g, &z, &e);
    }
    for msg in &g.warnings {
        warn(c.format, msg.clone());
    }
    let in_range = |ch: Channel| range.contains(&ch.l());
    match c.format {
        Format::Text => {
            println!(
                "Green expansion: N = {order}, channels {}..{}, γ = {}, γ̃ = {}",
                range.start(),
                range.end(),
                fmt_rat(&g.weights.gamma),
                g.weights.gamma_tilde.as_ref().map(fmt_rat).unwrap_or_default()
            );
            println!("term ledger:");
            for t in g.terms.iter().filter(|t| in_range(t.channel)) {
                println!("  [{:?} {:?} i={}] {t}", t.marker.source, t.family, t.order);
            }
            println!("grouped expansion:");
            for grp in g.groups.iter().filter(|grp| in_range(grp.channel)) {
                let l = grp.channel.l();
                match &grp.factored {
                    Ok((series, q)) => {
                        println!("  l = {l}: series_{l}(r) = {series}");
                        println!("         Q_{l} = {q}");
                    }
                    Err(f) => println!("  l = {l}: {f}"),
                }
            }
        }
        Format::JsonLines => {
            for t in g.terms.iter().filter(|t| in_range(t.channel)) {
                emit(&Record::Term(t));
            }
            for grp in g.groups.iter().filter(|grp| in_range(grp.channel)) {
                emit(&Record::Group(GroupRecord::new(grp)));
            }
        }
    }
    Ok(())
}

fn cmd_verify(v: &VerifyArgs) -> Result<(), Failure> {
    let c = &v.common;
    let order = c.order.unwrap_or(8);
    let range = c.channel_range(order.min(5));
    if c.z.is_some() || c.e.is_some() {
        warn(c.format, "verify works with symbolic Z and E; --Z/--E are ignored".into());
    }
    if c.n == Some(0) {
        return Err(usage("n must be positive"));
    }
    let w = weights(c);
    check_weights(c, &w)?;
    let opts = VerifyOptions {
        order,
        channels: *range.end(),
        gamma: c.gamma.clone(),
        n: c.n,
        inject_fault: v.inject_fault,
        exec: Exec::default(),
    };
    let report = verify(&opts)?;
    match c.format {
        Format::Text => {
            for check in &report.checks {
                println!("{check}");
            }
            println!("bound-state factors (relative to Z² for r², Z³ for r³):");
            println!(
                "  {:>3} {:>7} {:>5} {:>12} {:>12} {:>12}",
                "n", "channel", "power", "substituted", "oracle", "printed"
            );
            for row in &report.bound_state {
                println!(
                    "  {:>3} {:>7} {:>5} {:>12} {:>12} {:>12}{}",
                    row.n,
                    row.channel,
                    format!("r^{}", row.r_power),
                    fmt_rat(&row.substituted),
                    fmt_rat(&row.oracle),
                    fmt_rat(&row.printed),
                    if row.sign_discrepancy() { "  sign differs from printed" } else { "" }
                );
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {failed} failed", report.checks.len());
        }
        Format::JsonLines => {
            for check in &report.checks {
                emit(&Record::Check(check));
            }
            for row in &report.bound_state {
                emit(&Record::BoundState(row));
            }
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure(EXIT_CHECK, "exact checks failed".into()))
    }
}

struct QcheckLine {
    name: String,
    value: f64,
    expected: Option<f64>,
    passed: bool,
    detail: String,
}

fn cmd_qcheck(c: &Common) -> Result<(), Failure> {
    let n = c.n.unwrap_or(1);
    let l = c.l.unwrap_or(0);
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    if l >= n {
        return Err(usage(format!("no bound state with n = {n}, l = {l}: need l < n")));
    }
    if l > 1 {
        return Err(usage("qcheck covers channels l = 0 and l = 1"));
    }
    if c.e.is_some() {
        return Err(usage("qcheck fixes E = −Z²/(2n²); use --n instead of --E"));
    }
    let z = match &c.z {
        None => 1.0,
        Some(Param::Value(v)) if *v > Rat::from_integer(0.into()) => rat_to_f64(v),
        Some(_) => return Err(usage("qcheck needs a positive numeric --Z")),
    };
    let tol = c.tol.unwrap_or(if l == 0 { 1e-6 } else { 1e-5 });
    let e = -z * z / (2.0 * (n * n) as f64);
    let q = QuadratureSpec::default();
    let exec = Exec::default();
    let u = hydrocone::numerics::RadialProfile::hydrogen_radial(n, l, z);
    let expected = -1.0 / z.powi(l as i32);

    let mut lines = Vec::new();
    let mut run = || -> Result<(), NumericsError> {
        let printed =
            |cut: &CutoffTriple| if l == 0 { q0_value(&u, z, e, cut, &q) } else { q1_value(&u, z, e, cut, &q) };
        let base = printed(&CutoffTriple::default())?;
        lines.push(QcheckLine {
            name: format!("Q_{l} printed formula"),
            value: base,
            expected: Some(expected),
            passed: (base - expected).abs() <= tol,
            detail: format!("|Δ| = {:.3e}, tol {tol:.0e}", (base - expected).abs()),
        });

        let g = assemble_with(&AssembleOptions::new(Rat::from_integer(1.into()), l + 2, l))?;
        let functional = g
            .group(l)
            .and_then(|grp| grp.functional())
            .ok_or_else(|| NumericsError::NotFactorized(format!("channel {l} did not factor")))?;
        let assembled = evaluate_functional(functional, &u, z, e, &CutoffTriple::default(), &q, exec)?;
        lines.push(QcheckLine {
            name: format!("Q_{l} assembled functional"),
            value: assembled,
            expected: Some(expected),
            passed: (assembled - expected).abs() <= tol,
            detail: format!("|Δ| = {:.3e}, tol {tol:.0e}", (assembled - expected).abs()),
        });

        let mut values = Vec::new();
        for cut in CutoffTriple::variations() {
            values.push(printed(&cut)?);
        }
        let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - values.iter().cloned().fold(f64::INFINITY, f64::min);
        lines.push(QcheckLine {
            name: "cut-off variation spread".into(),
            value: spread,
            expected: None,
            passed: spread <= tol,
            detail: format!("{} cut-off triples, tol {tol:.0e}", values.len()),
        });

        let samples: Vec<f64> = (1..=10).map(|k| 0.01 * k as f64).collect();
        let bound = if n == 1 && l == 0 { 5e-4 } else { 1e-3 };
        let dev = end_to_end_check(n, l, z, 2, &samples, &CutoffTriple::default(), &q, exec)?;
        lines.push(QcheckLine {
            name: "end-to-end relative deviation, r ≤ 0.1".into(),
            value: dev,
            expected: None,
            passed: dev <= bound,
            detail: format!("series through r^{}, bound {bound:.0e}", l + 2),
        });
        Ok(())
    };
    let outcome = run();

    let header = format!("qcheck n = {n}, l = {l}, Z = {z}, E = {e}");
    match c.format {
        Format::Text => {
            println!("{header}");
            for line in &lines {
                let tag = if line.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {}: {:.10e} ({})", line.name, line.value, line.detail);
            }
        }
        Format::JsonLines => {
            for line in &lines {
                emit(&Record::Value(ValueRecord {
                    name: line.name.clone(),
                    value: line.value,
                    expected: line.expected,
                }));
                let check = hydrocone::verify::Check {
                    name: line.name.clone(),
                    passed: line.passed,
                    detail: line.detail.clone(),
                };
                emit(&Record::Check(&check));
            }
        }
    }
    outcome?;
    if lines.iter().all(|l| l.passed) {
        Ok(())
    } else {
        Err(Failure(EXIT_CHECK, "numeric checks failed".into()))
    }
}

//! Spec-file front end: parsing, the five pipelines and their reports.
//!
//! A spec file is line oriented:
//!
//! ```text
//! # swap on C^2, J = A
//! name swap
//! blocks 1 1
//! mult 0 1 ; 1 0
//! ideal 1 2
//! opt levels 3
//! ```
//!
//! Ideal indices are 1-based. Recognized options are `tol`, `levels`, `amp`,
//! `seed`, `trials` and `sweep`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BlockAlgebra, Ideal};
use crate::dynamics::{canonical_system, classify, DynSystem, Endomorphism, TABLE_ROWS};
use crate::error::{Error, Result};
use crate::fock::{
    associated_ideal, coisometric_check, covariance_check, covariant_from_toeplitz, fock_rep, gauge_rotate, round_trip,
    toeplitz_check, toeplitz_from_covariant, Amplification, CovariantPair, ISOMETRY_TOL,
};
use crate::reduction::{reduce_system, support_is_nilpotent};
use crate::sweep::{commutative_sweep, compare_oracles};
use crate::C64;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_LEVELS: usize = 3;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 20;
/// Number of unimodular scalars sampled by `verify`.
pub const GAUGE_SAMPLES: usize = 8;
const GAUGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Reduce,
    Canonical,
    Classify,
    Verify,
    OracleCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Reduce => "reduce",
            Command::Canonical => "canonical",
            Command::Classify => "classify",
            Command::Verify => "verify",
            Command::OracleCheck => "oracle-check",
        }
    }
}

/// Diagnostic codes of [`parse_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagCode {
    UnknownKey,
    DimensionMismatch,
    RowFit,
    BadNumber,
    MissingKey,
    DuplicateKey,
    IndexOutOfRange,
    BadOption,
}

impl DiagCode {
    pub fn code(self) -> &'static str {
        match self {
            DiagCode::UnknownKey => "E001",
            DiagCode::DimensionMismatch => "E002",
            DiagCode::RowFit => "E003",
            DiagCode::BadNumber => "E004",
            DiagCode::MissingKey => "E005",
            DiagCode::DuplicateKey => "E006",
            DiagCode::IndexOutOfRange => "E007",
            DiagCode::BadOption => "E008",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {} {message}", code.code())]
pub struct Diagnostic {
    /// 1-based; 0 when the problem is the absence of a line.
    pub line: usize,
    pub code: DiagCode,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpecOptions {
    pub tol: Option<f64>,
    pub levels: Option<usize>,
    pub amp: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub sweep: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub name: String,
    pub block_dims: Vec<usize>,
    pub mult: Vec<Vec<usize>>,
    /// 0-based block indices.
    pub ideal_support: BTreeSet<usize>,
    pub options: SpecOptions,
}

impl SystemSpec {
    pub fn system(&self) -> Result<DynSystem> {
        let algebra = BlockAlgebra::new(&self.block_dims)?;
        let endo = Endomorphism::new(&algebra, self.mult.clone())?;
        let ideal = algebra.ideal(self.ideal_support.iter().copied())?;
        DynSystem::new(endo, ideal)
    }
}

fn diag(line: usize, code: DiagCode, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line,
        code,
        message: message.into(),
    }
}

fn parse_uint(line: usize, token: &str) -> std::result::Result<usize, Diagnostic> {
    token.parse::<usize>().map_err(|_| {
        let what = if token.starts_with('-') {
            "negative value"
        } else {
            "not a non-negative integer"
        };
        diag(line, DiagCode::BadNumber, format!("{what}: {token:?}"))
    })
}

pub fn parse_spec(text: &str) -> std::result::Result<SystemSpec, Diagnostic> {
    let mut name = None;
    let mut blocks: Option<(usize, Vec<usize>)> = None;
    let mut mult: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut ideal: Option<(usize, Vec<usize>)> = None;
    let mut options = SpecOptions::default();
    let mut seen_opts = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let key = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        let duplicate = || diag(line, DiagCode::DuplicateKey, format!("key {key:?} given twice"));
        match key {
            "name" => {
                if name.is_some() {
                    return Err(duplicate());
                }
                name = Some(rest.join(" "));
            }
            "blocks" => {
                if blocks.is_some() {
                    return Err(duplicate());
                }
                let dims = rest
                    .iter()
                    .map(|t| parse_uint(line, t))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                if dims.is_empty() || dims.contains(&0) {
                    return Err(diag(
                        line,
                        DiagCode::BadNumber,
                        "block sizes must be positive and non-empty",
                    ));
                }
                blocks = Some((line, dims));
            }
            "mult" => {
                if mult.is_some() {
                    return Err(duplicate());
                }
                let joined = rest.join(" ");
                let rows = joined
                    .split(';')
                    .map(|row| row.split_whitespace().map(|t| parse_uint(line, t)).collect())
                    .collect::<std::result::Result<Vec<Vec<usize>>, _>>()?;
                mult = Some((line, rows));
            }
            "ideal" => {
                if ideal.is_some() {
                    return Err(duplicate());
                }
                let idx = rest
                    .iter()
                    .map(|t| parse_uint(line, t))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                ideal = Some((line, idx));
            }
            "opt" => {
                let [opt, value] = rest[..] else {
                    return Err(diag(line, DiagCode::BadOption, "expected `opt <key> <value>`"));
                };
                if !seen_opts.insert(opt.to_string()) {
                    return Err(diag(
                        line,
                        DiagCode::DuplicateKey,
                        format!("option {opt:?} given twice"),
                    ));
                }
                let bad = || {
                    diag(
                        line,
                        DiagCode::BadOption,
                        format!("invalid value {value:?} for option {opt:?}"),
                    )
                };
                match opt {
                    "tol" => {
                        let tol: f64 = value.parse().map_err(|_| bad())?;
                        if !(tol > 0.0 && tol.is_finite()) {
                            return Err(bad());
                        }
                        options.tol = Some(tol);
                    }
                    "levels" => options.levels = Some(value.parse().ok().filter(|&n| n >= 1).ok_or_else(bad)?),
                    "amp" => options.amp = Some(value.parse().map_err(|_| bad())?),
                    "seed" => options.seed = Some(value.parse().map_err(|_| bad())?),
                    "trials" => options.trials = Some(value.parse().map_err(|_| bad())?),
                    "sweep" => options.sweep = Some(value.parse().map_err(|_| bad())?),
                    _ => return Err(diag(line, DiagCode::UnknownKey, format!("unknown option {opt:?}"))),
                }
            }
            _ => return Err(diag(line, DiagCode::UnknownKey, format!("unknown key {key:?}"))),
        }
    }

    let (_, block_dims) = blocks.ok_or_else(|| diag(0, DiagCode::MissingKey, "missing `blocks`"))?;
    let (mult_line, mult) = mult.ok_or_else(|| diag(0, DiagCode::MissingKey, "missing `mult`"))?;
    let (ideal_line, ideal) = ideal.ok_or_else(|| diag(0, DiagCode::MissingKey, "missing `ideal`"))?;
    let k = block_dims.len();
    if mult.len() != k || mult.iter().any(|r| r.len() != k) {
        return Err(diag(
            mult_line,
            DiagCode::DimensionMismatch,
            format!("multiplicity matrix must be {k}x{k} for {k} blocks"),
        ));
    }
    for (i, row) in mult.iter().enumerate() {
        let needed: usize = row.iter().zip(&block_dims).map(|(m, n)| m * n).sum();
        if needed > block_dims[i] {
            return Err(diag(
                mult_line,
                DiagCode::RowFit,
                format!("row {} needs {needed} > block size {}", i + 1, block_dims[i]),
            ));
        }
    }
    let mut ideal_support = BTreeSet::new();
    for b in ideal {
        if b == 0 || b > k {
            return Err(diag(
                ideal_line,
                DiagCode::IndexOutOfRange,
                format!("block index {b} outside 1..={k}"),
            ));
        }
        ideal_support.insert(b - 1);
    }
    Ok(SystemSpec {
        name: name.unwrap_or_else(|| "unnamed".into()),
        block_dims,
        mult,
        ideal_support,
        options,
    })
}

/// Command-line overrides of the spec options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub levels: Option<usize>,
    pub amp: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
struct Settings {
    tol: f64,
    levels: usize,
    amp: usize,
    seed: u64,
    trials: usize,
    sweep: Option<usize>,
}

impl Settings {
    /// The amplification width defaults to the truncation level.
    fn resolve(spec: &SpecOptions, over: &Overrides) -> Self {
        let levels = over.levels.or(spec.levels).unwrap_or(DEFAULT_LEVELS);
        Self {
            tol: over.tol.or(spec.tol).unwrap_or(DEFAULT_TOL),
            levels,
            amp: over.amp.or(spec.amp).unwrap_or(levels),
            seed: over.seed.or(spec.seed).unwrap_or(DEFAULT_SEED),
            trials: spec.trials.unwrap_or(DEFAULT_TRIALS),
            sweep: spec.sweep,
        }
    }
}

/// Flat `key = value` sections, one per pipeline stage.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Report {
    fn section(&mut self, name: &str) {
        self.sections.push((name.to_string(), Vec::new()));
    }

    fn put(&mut self, key: &str, value: impl fmt::Display) {
        self.sections
            .last_mut()
            .expect("section opened first")
            .1
            .push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .filter(|(s, _)| s == section)
            .flat_map(|(_, kv)| kv)
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (i, (name, entries)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{name}]");
            for (k, v) in entries {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for (name, entries) in &self.sections {
            let width = entries.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            let _ = writeln!(out, "{name}");
            let _ = writeln!(out, "  {:-<w$}  {:-<8}", "", "", w = width);
            for (k, v) in entries {
                let _ = writeln!(out, "  {k:<width$}  {v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Result of a pipeline run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn mult_string(mult: &[Vec<usize>]) -> String {
    mult.iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn dims_string(dims: &[usize]) -> String {
    dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Parses and runs; malformed text becomes exit code 2 with an `[error]` section.
pub fn run_text(command: Command, text: &str, over: &Overrides) -> Outcome {
    match parse_spec(text) {
        Ok(spec) => run(command, &spec, over),
        Err(d) => failure(command, "malformed", &d.to_string(), 2),
    }
}

fn failure(command: Command, kind: &str, message: &str, exit_code: i32) -> Outcome {
    let mut report = Report::default();
    report.section("error");
    report.put("command", command.name());
    report.put("kind", kind);
    report.put("message", message);
    report.put("exit_code", exit_code);
    Outcome { report, exit_code }
}

pub fn run(command: Command, spec: &SystemSpec, over: &Overrides) -> Outcome {
    let settings = Settings::resolve(&spec.options, over);
    let mut report = Report::default();
    report.section("system");
    report.put("command", command.name());
    report.put("name", &spec.name);
    report.put("blocks", dims_string(&spec.block_dims));
    report.put("mult", mult_string(&spec.mult));
    let result = spec.system().and_then(|system| {
        report.put("algebra", system.algebra());
        report.put("ideal", system.ideal());
        match command {
            Command::Reduce => reduce_stage(&system, &mut report),
            Command::Canonical => canonical_stage(&system, &mut report),
            Command::Classify => classify_stage(&system, &mut report),
            Command::Verify => verify_stage(&system, &settings, &mut report),
            Command::OracleCheck => oracle_stage(&system, &settings, &mut report),
        }
    });
    match result {
        Ok(ok) => {
            let exit_code = if ok { 0 } else { 1 };
            report.section("status");
            report.put("exit_code", exit_code);
            Outcome { report, exit_code }
        }
        Err(e) => {
            let exit_code = e.exit_code();
            let kind = match exit_code {
                1 => "verification",
                3 => "resource-guard",
                _ => "malformed",
            };
            report.section("error");
            report.put("kind", kind);
            report.put("message", &e);
            report.put("exit_code", exit_code);
            Outcome { report, exit_code }
        }
    }
}

fn reduce_stage(system: &DynSystem, report: &mut Report) -> Result<bool> {
    let reduced = reduce_system(system)?;
    report.section("reduce");
    for (n, member) in reduced.chain().iter().enumerate() {
        report.put(&format!("J_{n}"), member);
    }
    report.put("j_infinity", reduced.j_infinity());
    report.put("stabilized_at", reduced.stabilized_at());
    report.put("reduced_algebra", reduced.reduced_algebra());
    report.put("reduced_blocks", dims_string(reduced.reduced_algebra().block_dims()));
    report.put("reduced_mult", mult_string(reduced.reduced_endo().mult()));
    report.put("reduced_ideal", reduced.reduced_ideal());
    report.put("degenerate", reduced.is_degenerate());
    if system.ideal().is_full() {
        report.put("support_nilpotent", support_is_nilpotent(system.endo()));
    }
    report.put("intertwining_residual", sci(reduced.intertwining_residual()));
    Ok(true)
}

fn canonical_stage(system: &DynSystem, report: &mut Report) -> Result<bool> {
    let ext = canonical_system(system)?;
    report.section("canonical");
    report.put("base_algebra", ext.system().algebra());
    report.put("base_ideal", ext.system().ideal());
    report.put("ext_algebra", ext.ext_algebra());
    report.put("ext_blocks", dims_string(ext.ext_algebra().block_dims()));
    report.put("ext_mult", mult_string(ext.ext_endo().mult()));
    report.put("ext_kernel", ext.ext_endo().kernel());
    report.put("degenerate", ext.is_degenerate());
    let cert = ext.certificate();
    report.section("certificate");
    report.put("embed_injective", cert.embed_injective);
    report.put("embed_residual", sci(cert.embed_residual));
    report.put("intertwining_residual", sci(cert.intertwining_residual));
    report.put("kernel_is_second_summand", cert.kernel_is_second_summand);
    report.put("verdict", verdict(cert.passed()));
    Ok(cert.passed())
}

fn classify_stage(system: &DynSystem, report: &mut Report) -> Result<bool> {
    let c = classify(system);
    report.section("classify");
    report.put("automorphism", c.is_automorphism);
    report.put("monomorphism", c.is_monomorphism);
    report.put("kernel_unital", c.kernel_unital);
    report.put("range_hereditary", c.range_hereditary);
    report.put("commutative", c.is_commutative);
    report.put("j_is_ortho_kernel", c.j_is_ortho_kernel);
    report.put("j_inside_ortho_kernel", c.j_inside_ortho_kernel);
    report.put("j_is_full", c.j_is_full);
    report.put("j_is_zero", c.j_is_zero);
    let rows: Vec<String> = c.rows.iter().map(ToString::to_string).collect();
    report.put("rows", rows.join(" "));
    report.section("table");
    for &r in &c.rows {
        report.put(&format!("row_{r}"), TABLE_ROWS[usize::from(r) - 1]);
    }
    Ok(true)
}

fn verify_stage(system: &DynSystem, s: &Settings, report: &mut Report) -> Result<bool> {
    let endo = system.endo();
    let rep = fock_rep(endo, s.levels)?;
    let pair = rep.toeplitz_pair();
    let mut ok = true;

    report.section("fock");
    report.put("levels", s.levels);
    report.put(
        "level_dims",
        rep.level_dims()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    report.put("module_dim", rep.module().dim());
    let iso = rep.isometry_residual();
    let ann = rep.annihilation_residual();
    report.put("isometry_residual", sci(iso));
    report.put("annihilation_residual", sci(ann));
    ok &= iso < ISOMETRY_TOL && ann < s.tol;

    report.section("toeplitz");
    let t = toeplitz_check(&pair);
    report.put("compressed_to_levels_below", s.levels);
    report.put("right_action", sci(t.right_action));
    report.put("inner_product", sci(t.inner_product));
    report.put("left_action", sci(t.left_action));
    report.put("verdict", verdict(t.passes(s.tol)));
    ok &= t.passes(s.tol);

    report.section("coisometry");
    let co = coisometric_check(&pair, system.ideal())?;
    report.put("ideal", system.ideal());
    report.put("generators", co.generators);
    report.put("fock_residual", sci(co.residual));
    report.put("fock_coisometric", co.passes(s.tol));

    report.section("correspondence");
    let rt = round_trip(&pair)?;
    report.put("psi_residual", sci(rt.psi_residual));
    report.put("u_residual", sci(rt.u_residual));
    report.put("conjugation", sci(rt.forward.conjugation));
    report.put("commutant", sci(rt.forward.commutant));
    report.put("partial_isometry", sci(rt.forward.partial_isometry));
    report.put("backward_toeplitz", sci(rt.backward.max()));
    let cov = covariant_from_toeplitz(&pair)?;
    report.put("associated_ideal", associated_ideal(&cov, s.tol.max(1e-8)));
    report.put("verdict", verdict(rt.passes(s.tol)));
    ok &= rt.passes(s.tol);

    if endo.is_automorphism() {
        report.section("unitary");
        let unitary = CovariantPair::unitary(endo)?;
        let c = covariance_check(&unitary);
        report.put("conjugation", sci(c.conjugation));
        report.put("commutant", sci(c.commutant));
        report.put("associated_ideal", associated_ideal(&unitary, s.tol.max(1e-8)));
        let induced = toeplitz_from_covariant(&unitary)?;
        let induced_co = coisometric_check(&induced, system.ideal())?;
        report.put("induced_coisometry", sci(induced_co.residual));
        let passed = c.passes(s.tol) && induced_co.passes(s.tol);
        report.put("verdict", verdict(passed));
        ok &= passed;
    }

    report.section("star");
    let degree = s.levels;
    report.put("width", s.amp);
    report.put("degree", degree);
    report.put("trials", s.trials);
    if s.amp < degree {
        return Err(Error::MalformedInput(format!(
            "amplification width {} is below the degree {degree}",
            s.amp
        )));
    }
    let amp = Amplification::new(&cov, s.amp)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut worst = f64::INFINITY;
    let mut all_hold = true;
    for _ in 0..s.trials {
        let coeffs: Vec<Vec<_>> = (0..=degree)
            .map(|_| {
                (0..=degree)
                    .map(|_| system.algebra().random_element(&mut rng))
                    .collect()
            })
            .collect();
        let r = amp.check(&coeffs)?;
        worst = worst.min(r.margin);
        all_hold &= r.holds;
    }
    if s.trials > 0 {
        report.put("min_margin", sci(worst));
    }
    report.put("verdict", verdict(all_hold));
    ok &= all_hold;

    report.section("gauge");
    let mut deviation: f64 = 0.0;
    for _ in 0..GAUGE_SAMPLES {
        let z = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        let rotated = gauge_rotate(&pair, z)?;
        let r = toeplitz_check(&rotated);
        deviation = deviation
            .max((r.right_action - t.right_action).abs())
            .max((r.inner_product - t.inner_product).abs())
            .max((r.left_action - t.left_action).abs());
        let c = coisometric_check(&rotated, system.ideal())?;
        deviation = deviation.max((c.residual - co.residual).abs());
    }
    report.put("samples", GAUGE_SAMPLES);
    report.put("max_deviation", sci(deviation));
    report.put("verdict", verdict(deviation < GAUGE_TOL));
    ok &= deviation < GAUGE_TOL;

    Ok(ok)
}

fn oracle_stage(system: &DynSystem, s: &Settings, report: &mut Report) -> Result<bool> {
    let endo = system.endo();
    report.section("oracle");
    let verdict_j = compare_oracles(endo, system.ideal())?;
    report.put("recursive", &verdict_j.recursive);
    report.put("closed_form", &verdict_j.closed_form);
    report.put("brute_force", &verdict_j.brute_force);
    let mut ok = verdict_j.agrees();
    let ideals: Vec<Ideal> = endo.algebra().enumerate_ideals()?;
    let mut disagreements = 0;
    for j in &ideals {
        if !compare_oracles(endo, j)?.agrees() {
            disagreements += 1;
        }
    }
    report.put("ideals_checked", ideals.len());
    report.put("disagreements", disagreements);
    ok &= disagreements == 0;
    report.put("verdict", if ok { "all agree" } else { "MISMATCH" });

    if let Some(n) = s.sweep {
        report.section("sweep");
        let sweep = commutative_sweep(n)?;
        report.put("points", n);
        report.put("systems", sweep.systems);
        report.put("cases", sweep.cases);
        report.put("mismatches", sweep.mismatches.len());
        for (i, m) in sweep.mismatches.iter().take(5).enumerate() {
            report.put(&format!("mismatch_{i}"), m);
        }
        report.put(
            "verdict",
            if sweep.mismatches.is_empty() {
                "all agree"
            } else {
                "MISMATCH"
            },
        );
        ok &= sweep.mismatches.is_empty();
    }
    Ok(ok)
}

use num_bigint::BigInt;
use serde_json::{json, Value};
use tdl_core::designs::{
    dual_count_from_lambda, lambda_dual, lambda_primal, lambda_primal_closed_form, supports_of_weight,
    verify_2_design, verify_steiner_claim, DesignReport,
};
use tdl_core::geometry::{pd_code_dimension, pg_lines, prm_star, steiner_blocks_squares};
use tdl_core::quadforms::{sample_oracle, sweep_oracle, OracleReport};
use tdl_core::spectra::{
    dual_closed_form, enumerate_distribution_with, macwilliams_transform, predicted_punctured,
    predicted_shortened, predicted_three_weight, puncture, shorten,
};
use tdl_core::{build_code, CyclicCode, Error, ExponentSet, FieldContext, PositionSet, Result, TernaryMatrix};

use crate::config::{Check, RunConfig, Task, Transform};
use crate::report::{compare, distribution_json, Report};

const SAMPLE_WORDS: u64 = 1_000_000;
const SAMPLE_SEED: u64 = 0;

pub fn run(config: &RunConfig) -> Result<Report> {
    let ctx = FieldContext::new(config.m)?;
    let code = build_code(&ctx, &config.exps)?;
    let mut report = match &config.task {
        Task::Spectrum => spectrum(config, &code)?,
        Task::Transform(kind, pos) => transform(config, &code, *kind, pos)?,
        Task::Verify {
            check,
            weight,
            max_k,
            fast,
        } => match check {
            Check::Steiner => steiner(config, &ctx, &code)?,
            Check::Design => design(config, &code, weight.expect("validated"))?,
            Check::DualDesign => dual_design(config, &code, *max_k)?,
            Check::QuadformOracle => quadform_oracle(config, &ctx, &code, *fast)?,
            Check::PrmEquality => prm_equality(config, &ctx)?,
        },
    };
    report.field("m", config.m);
    report.field("exps", json!(config.exps.exponents()));
    Ok(report)
}

fn code_name(config: &RunConfig) -> String {
    let e: Vec<String> = config.exps.exponents().iter().map(|k| k.to_string()).collect();
    format!("C({}) over GF(3^{})", e.join(","), config.m)
}

/// Whether `C(E)` is one of the two codes with the three-weight spectrum.
fn in_family(config: &RunConfig) -> bool {
    let m = config.m;
    if m % 2 == 0 {
        return false;
    }
    let e = config.exps.exponents();
    e == [0, 1] || e == [(m - 3) / 2, (m - 1) / 2]
}

fn spectrum(config: &RunConfig, code: &CyclicCode) -> Result<Report> {
    let enumerated = enumerate_distribution_with(code, config.budget)?;
    let predicted = in_family(config).then(|| predicted_three_weight(config.m as u32)).transpose()?;
    let mut report = Report::new(format!("spectrum of {}: [n={}, k={}]", code_name(config), code.n(), code.dim()));
    describe(&mut report, &enumerated, predicted.as_ref());
    report.field("command", "spectrum");
    Ok(report)
}

fn describe(
    report: &mut Report,
    enumerated: &tdl_core::WeightDistribution,
    predicted: Option<&tdl_core::WeightDistribution>,
) {
    report.line(format!("enumerated: {}", enumerated.enumerator_string()));
    report.field("enumerated", distribution_json(enumerated));
    match predicted {
        Some(p) => {
            report.line(format!("predicted:  {}", p.enumerator_string()));
            report.line(format!("verdict: {}", if p == enumerated { "MATCH" } else { "MISMATCH" }));
            report.field("predicted", distribution_json(p));
        }
        None => {
            report.line("predicted:  none for this exponent set");
            report.field("predicted", Value::Null);
        }
    }
    report.set_rows(compare(enumerated, predicted));
}

fn transform(config: &RunConfig, code: &CyclicCode, kind: Transform, pos: &[usize]) -> Result<Report> {
    let t = PositionSet::new(code.n(), pos)?;
    let (derived, predicted, name) = match kind {
        Transform::Shorten => (shorten(code, &t)?, predicted_shortened as fn(u32, u32) -> _, "shorten"),
        Transform::Puncture => (puncture(code, &t)?, predicted_punctured as fn(u32, u32) -> _, "puncture"),
    };
    let enumerated = enumerate_distribution_with(&derived, config.budget)?;
    let predicted = in_family(config)
        .then(|| predicted(config.m as u32, t.len() as u32))
        .transpose()?;
    let mut report = Report::new(format!(
        "{name} {} on {:?}: [n={}, k={}]",
        code_name(config),
        t.as_slice(),
        derived.n(),
        derived.dim()
    ));
    describe(&mut report, &enumerated, predicted.as_ref());
    report.field("command", name);
    report.field("positions", json!(t.as_slice()));
    Ok(report)
}

fn design_json(d: &DesignReport) -> Value {
    serde_json::to_value(d).expect("design report serializes")
}

/// Copies a design report into the top level of `report`.
fn absorb(report: &mut Report, d: &DesignReport) {
    if let Value::Object(obj) = design_json(d) {
        for (k, v) in obj {
            if k != "checks" {
                report.json.insert(k, v);
            }
        }
    }
    for (k, &v) in &d.checks {
        report.check(k.clone(), v);
    }
    report.line(format!("v = {}, k = {}, b = {}, λ = {}", d.v, d.k, d.b, lambda_text(d.lambda)));
}

fn lambda_text(lambda: Option<u64>) -> String {
    lambda.map_or_else(|| "not constant".into(), |l| l.to_string())
}

fn steiner(config: &RunConfig, ctx: &FieldContext, code: &CyclicCode) -> Result<Report> {
    let claim = verify_steiner_claim(ctx, code, config.budget)?;
    let squares = steiner_blocks_squares(ctx)?;
    let mut report = Report::new(format!("lines of PG({}, 3) against {}", config.m - 1, code_name(config)));
    absorb(&mut report, &claim.report);
    report.check("line_and_square_constructions_agree", squares == claim.blocks);
    report.line(format!("A_4 of the dual: {}", claim.dual_a4));
    report.field("command", "verify steiner");
    Ok(report)
}

fn design(config: &RunConfig, code: &CyclicCode, weight: usize) -> Result<Report> {
    let supports = supports_of_weight(code, weight, config.budget)?;
    if supports.blocks.is_empty() {
        return Err(Error::Domain(format!("no codewords of weight {weight}")));
    }
    let d = verify_2_design(&supports.blocks)?;
    let dr = DesignReport::from_design(&d);
    let mut report = Report::new(format!("supports of weight {weight} in {}", code_name(config)));
    absorb(&mut report, &dr);
    if in_family(config) {
        let m = config.m as u32;
        let counted = d.lambda.map(BigInt::from);
        let closed = lambda_primal_closed_form(m, weight)?;
        report.line(format!("closed-form λ = {closed}"));
        report.check("lambda_matches_closed_form", counted.as_ref() == Some(&closed));
        let counts: Vec<BigInt> = (0..=2)
            .map(|t| {
                let shortened = shorten(code, &PositionSet::prefix(code.n(), t)?)?;
                Ok(enumerate_distribution_with(&shortened, config.budget)?.get_int(weight))
            })
            .collect::<Result<_>>()?;
        let from_counts = lambda_primal(&counts[0], &counts[1], &counts[2])?;
        report.line(format!("λ from shortened counts = {from_counts}"));
        report.check("lambda_matches_shortened_counts", counted.as_ref() == Some(&from_counts));
    }
    report.field("command", "verify design");
    Ok(report)
}

fn dual_design(config: &RunConfig, code: &CyclicCode, max_k: usize) -> Result<Report> {
    if max_k < 4 {
        return Err(Error::Domain(format!("--max-k must be at least 4, got {max_k}")));
    }
    let m = config.m as u32;
    let family = in_family(config);
    let dual = code.dual();
    let enumerable = config.budget.check(dual.dim()).is_ok();
    let spectrum = if enumerable {
        enumerate_distribution_with(&dual, config.budget)?
    } else {
        macwilliams_transform(&enumerate_distribution_with(code, config.budget)?)?
    };
    let mut report = Report::new(format!(
        "dual of {}: [n={}, k={}], {}",
        code_name(config),
        dual.n(),
        dual.dim(),
        if enumerable { "supports enumerated" } else { "counts from the MacWilliams transform" }
    ));
    let mut entries = Vec::new();
    let mut lambdas = Vec::new();
    for k in 4..=max_k {
        let count = spectrum.get_int(k);
        let formula = if family && k <= 7 { Some(lambda_dual(m, k)?) } else { None };
        let mut entry = json!({ "k": k, "count": count.to_string() });
        if family {
            report.check(format!("A_{k}_matches_closed_form"), dual_closed_form(m, k)? == count);
        }
        if let Some(f) = &formula {
            entry["lambda_formula"] = json!(f.to_string());
        }
        if enumerable {
            let counted = if count == BigInt::from(0) {
                entry["design"] = Value::Null;
                0
            } else {
                let supports = supports_of_weight(&dual, k, config.budget)?;
                let d = verify_2_design(&supports.blocks)?;
                report.check(format!("weight_{k}_supports_form_2_design"), d.is_2_design());
                entry["design"] = design_json(&DesignReport::from_design(&d));
                d.lambda.unwrap_or(0)
            };
            lambdas.push(counted);
            entry["lambda_counted"] = json!(counted);
            report.line(format!(
                "k = {k}: A_k = {count}, counted λ = {counted}, formula λ = {}",
                formula.as_ref().map_or("-".into(), |f| f.to_string())
            ));
            if let Some(f) = &formula {
                report.check(format!("lambda_{k}_matches_formula"), BigInt::from(counted) == *f);
            }
        } else if let Some(f) = &formula {
            let expected = dual_count_from_lambda(m, k, f)?;
            report.line(format!("k = {k}: A_k = {count}, λ-derived A_k = {expected}"));
            entry["count_from_lambda"] = json!(expected.to_string());
            report.check(format!("A_{k}_matches_lambda_formula"), expected == count);
        } else {
            report.line(format!("k = {k}: A_k = {count}"));
        }
        entries.push(entry);
    }
    report.field("command", "verify dual-design");
    report.field("enumerated_dual", enumerable);
    report.field("weights", entries);
    if enumerable {
        report.field("lambda", json!(lambdas));
    }
    Ok(report)
}

fn oracle_json(r: &OracleReport) -> Value {
    let table: Vec<Value> = r
        .rank_weight
        .iter()
        .map(|(&(rank, weight), &count)| json!({ "rank": rank, "weight": weight, "count": count }))
        .collect();
    json!({
        "checked": r.checked,
        "mismatches": r.mismatches,
        "first_mismatch": r.first_mismatch,
        "rank_weight": table,
    })
}

fn quadform_oracle(config: &RunConfig, ctx: &FieldContext, code: &CyclicCode, fast: bool) -> Result<Report> {
    let r = if fast {
        sample_oracle(ctx, code, SAMPLE_WORDS, SAMPLE_SEED)?
    } else {
        sweep_oracle(ctx, code, config.budget)?
    };
    let mut report = Report::new(format!(
        "quadratic-form weights of {} ({})",
        code_name(config),
        if fast { "seeded sample" } else { "every codeword" }
    ));
    report.line(format!("checked {} words, {} mismatches", r.checked, r.mismatches));
    for (&(rank, weight), count) in &r.rank_weight {
        report.line(format!("  rank {rank}, weight {weight}: {count}"));
    }
    report.check("predicted_weight_equals_hamming_weight", r.passed());
    report.check("rank_parity", r.follows_rank_parity(config.m));
    report.field("command", "verify quadform-oracle");
    report.field("oracle", oracle_json(&r));
    Ok(report)
}

/// Largest m whose line incidence matrix is reduced.
const INCIDENCE_RANK_MAX_M: usize = 6;

fn prm_equality(config: &RunConfig, ctx: &FieldContext) -> Result<Report> {
    let m = config.m;
    let full = build_code(ctx, &ExponentSet::full(m))?;
    let star = prm_star(ctx, 1)?;
    let n = full.n() as u64;
    let dim = (m * (m + 1) / 2) as u64;
    let pd = pd_code_dimension(2, m)?;
    let mut report = Report::new(format!("PRM*(1,{},3) against C(0..{})", m - 1, m / 2));
    report.line(format!("n = {n}, dim C = {}, dim PRM* = {}, pd_code_dimension(2) = {pd}", full.dim(), star.dim()));
    report.check("row_spaces_equal", star.same_code(&full));
    report.check("dimension_is_m(m+1)/2", full.dim() as u64 == dim);
    report.check("pd_code_dimension_is_complement", pd == n - dim);
    if m <= INCIDENCE_RANK_MAX_M {
        let lines = pg_lines(ctx)?;
        let rows = (0..lines.len()).map(|i| lines.characteristic_vector(i)).collect();
        let rank = TernaryMatrix::new(full.n(), rows)?.rank() as u64;
        report.line(format!("rank of the line incidence matrix = {rank}"));
        report.check("line_code_rank_matches", rank == pd);
    }
    report.field("command", "verify prm-equality");
    report.field("n", n);
    report.field("dimension", full.dim());
    report.field("pd_code_dimension", pd);
    Ok(report)
}

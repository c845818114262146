//! Command dispatch and JSON reports.

use serde_json::{json, Map, Value};
use vuf_algebra::field::prime_power;
use vuf_algebra::{affine_point_count, parse_system, projective_point_count, GaloisField};
use vuf_core::chow::ChowTransfer;
use vuf_core::fibers::{
    self, first_projection_fixed_point_fiber, first_projection_generic_fiber, fixed_point_table,
    is_last_projection_birational, last_projection_generic_fiber, schubert_cell_thickening,
};
use vuf_core::varieties::{self, non_normality_certificate, point_count_vs_paving, ChartAnalysis};
use vuf_core::{BsdhWord, CoreError, ProjectiveIdealPresentation, RootSystem, ThickeningReport, WenzelDatum, WeylElement, WeylGroup};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberKind {
    First,
    Last,
    Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Root,
    Weyl,
    Parabolic,
    Chow,
    Fiber(FiberKind),
    Star,
    Qtype,
    Variety,
    Count,
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Value> {
    match command {
        Command::Root => root(cfg),
        Command::Weyl => weyl(cfg),
        Command::Parabolic => parabolic(cfg),
        Command::Chow => chow(cfg),
        Command::Fiber(kind) => fiber(kind, cfg),
        Command::Star => star(cfg),
        Command::Qtype => qtype(cfg),
        Command::Variety => variety(cfg),
        Command::Count => count(cfg),
    }
}

fn element_json(w: &WeylElement) -> Value {
    Value::String(w.to_string())
}

fn word_json(words: &[WeylElement]) -> Value {
    Value::Array(words.iter().map(element_json).collect())
}

pub fn thickening_json(sys: &RootSystem, report: &ThickeningReport) -> Value {
    let directions: Vec<Value> = report
        .directions
        .iter()
        .map(|d| {
            json!({
                "root": sys.format_root(d.root),
                "exponent": d.exponent,
                "source": sys.format_root(d.source),
                "flagged": d.flagged,
            })
        })
        .collect();
    json!({
        "directions": directions,
        "reduced": report.is_reduced(),
        "exactness": report.exactness.to_string(),
        "residual_word": word_json(&report.residual_word),
    })
}

fn datum_json(datum: &WenzelDatum) -> Value {
    let sys = datum.system();
    let j: Vec<Value> = datum
        .j()
        .map(|(r, n)| json!({"root": sys.format_root(r), "coeffs": sys.coeffs(r), "exponent": n}))
        .collect();
    json!({
        "system": sys.kind().to_string(),
        "levi": datum.levi().members().map(|i| sys.simple_name(i)).collect::<Vec<_>>(),
        "p": datum.characteristic(),
        "J": j,
        "thickening_length": datum.thickening_length(),
        "reduced": datum.is_reduced(),
        "warnings": datum.warnings(),
    })
}

fn element(cfg: &RunConfig, group: &WeylGroup) -> Result<WeylElement> {
    let text = cfg.element.as_deref().ok_or_else(|| CliError::Usage("no element given (--element)".into()))?;
    Ok(group.parse_element(text)?)
}

fn bsdh_word(cfg: &RunConfig, datum: &WenzelDatum) -> Result<BsdhWord> {
    let text = cfg.word.as_deref().ok_or_else(|| CliError::Usage("no word given (--word)".into()))?;
    Ok(BsdhWord::parse(datum, text)?)
}

fn root(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let sys = group.system();
    let rows: Vec<Value> = sys
        .positive_roots()
        .map(|r| json!({"root": sys.format_root(r), "coeffs": sys.coeffs(r), "height": sys.height(r)}))
        .collect();
    Ok(json!({
        "system": sys.kind().to_string(),
        "rank": sys.rank(),
        "positive_roots": sys.num_positive(),
        "cartan": sys.cartan(),
        "rows": rows,
    }))
}

fn weyl(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let sys = group.system();
    let levi = cfg.levi(sys)?;
    if cfg.element.is_none() {
        let reps = group.minimal_coset_reps(&levi)?;
        let rows: Vec<Value> =
            reps.iter().map(|w| json!({"rep": element_json(w), "length": w.length()})).collect();
        return Ok(json!({
            "system": sys.kind().to_string(),
            "order": group.order(),
            "w0": element_json(&group.w0()),
            "levi": levi.members().map(|i| sys.simple_name(i)).collect::<Vec<_>>(),
            "rows": rows,
        }));
    }
    let w = element(cfg, &group)?;
    let names = |idx: Vec<usize>| idx.into_iter().map(|i| sys.simple_name(i)).collect::<Vec<_>>();
    Ok(json!({
        "element": element_json(&w),
        "length": w.length(),
        "normal_word": group.format_word(&w.normal_word()),
        "reduced_words": w.reduced_words().len(),
        "left_descents": names(w.left_descents()),
        "right_descents": names(w.right_descents()),
        "inversions": w.inversions().iter().map(|&r| sys.format_root(r)).collect::<Vec<_>>(),
        "inverse": element_json(&w.inverse()),
        "minimal_rep": element_json(&group.minimal_rep(&levi, &w)),
        "below_in_bruhat": group.elements().iter().filter(|v| v.bruhat_leq(&w).unwrap_or(false)).count(),
    }))
}

fn parabolic(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let datum = cfg.datum(&group)?;
    let mut out = datum_json(&datum);
    let sys = datum.system();
    let profile: Map<String, Value> = datum
        .simple_profile()
        .into_iter()
        .map(|(i, e)| (format!("-{}", sys.simple_name(i)), e.map_or(json!("inf"), |n| json!(n))))
        .collect();
    out["simple_profile"] = Value::Object(profile);
    out["consistency_problems"] = json!(datum.consistency_problems());
    if datum.is_borel() {
        let closure = datum.func_closure()?;
        out["closed"] = json!(closure == datum);
    }
    Ok(out)
}

fn chow(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let datum = cfg.datum(&group)?;
    let transfer = ChowTransfer::new(&datum)?;
    let push = transfer.pushforward();
    let pull = transfer.pullback();
    let entry = |t: &vuf_core::DiagonalTransfer, i: usize| match t.entry(i) {
        Some(v) => json!(v),
        None => json!(format!("{}^{}", t.prime(), t.exponents()[i])),
    };
    let rows: Vec<Value> = transfer
        .basis()
        .reps()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            json!({
                "rep": element_json(w),
                "length": w.length(),
                "d_w": transfer.d()[i],
                "push": entry(&push, i),
                "pull": entry(&pull, i),
            })
        })
        .collect();
    let composite = push.compose(&pull)?;
    if composite.scalar_exponent() != Some(transfer.d_top()) {
        return Err(CoreError::InvariantBreach(format!("push∘pull is not p^{} times the identity", transfer.d_top())).into());
    }
    Ok(json!({
        "datum": datum.to_string(),
        "classes": transfer.basis().len(),
        "d_top": transfer.d_top(),
        "push_pull_scalar": composite.scalar_exponent().map(|e| format!("{}^{e}", datum.characteristic())),
        "cokernel_order": transfer.cokernel_order().to_string(),
        "rows": rows,
    }))
}

fn fiber(kind: FiberKind, cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let datum = cfg.datum(&group)?;
    let sys = datum.system();
    match kind {
        FiberKind::First => {
            let word = bsdh_word(cfg, &datum)?;
            let mut out = json!({
                "datum": datum.to_string(),
                "word": word.to_string(),
                "generic": thickening_json(sys, &first_projection_generic_fiber(&word)),
            });
            match cfg.at.as_deref() {
                None => {}
                Some("all") => {
                    let rows: Vec<Value> = fixed_point_table(&word)?
                        .iter()
                        .map(|(v, r)| {
                            let mut row = thickening_json(sys, r);
                            row["v"] = element_json(v);
                            row
                        })
                        .collect();
                    out["rows"] = Value::Array(rows);
                }
                Some(v) => {
                    let v = group.parse_element(v)?;
                    let report = first_projection_fixed_point_fiber(&word, &v)?;
                    out["at"] = element_json(&v);
                    out["fixed_point"] = thickening_json(sys, &report);
                }
            }
            Ok(out)
        }
        FiberKind::Last => {
            let word = bsdh_word(cfg, &datum)?;
            let reports = last_projection_generic_fiber(&word)?;
            let rows: Vec<Value> = reports
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let mut row = thickening_json(sys, r);
                    row["step"] = json!(k + 2);
                    row
                })
                .collect();
            Ok(json!({
                "datum": datum.to_string(),
                "word": word.to_string(),
                "birational": is_last_projection_birational(&word)?,
                "rows": rows,
            }))
        }
        FiberKind::Cell => {
            let w = element(cfg, &group)?;
            let report = schubert_cell_thickening(&datum, &w)?;
            Ok(json!({
                "datum": datum.to_string(),
                "element": element_json(&w),
                "cell": thickening_json(sys, &report),
            }))
        }
    }
}

fn star(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let datum = cfg.datum(&group)?;
    let word = bsdh_word(cfg, &datum)?;
    Ok(json!({
        "datum": datum.to_string(),
        "word": word.to_string(),
        "star": element_json(&fibers::geometric_star(&word)?),
        "dimension": fibers::dimension(&word)?,
    }))
}

fn qtype(cfg: &RunConfig) -> Result<Value> {
    let group = cfg.group()?;
    let datum = cfg.datum(&group)?;
    let levi_q = cfg.levi_q(datum.system())?;
    let mut out = json!({"datum": datum.to_string()});
    if let Some(text) = &cfg.element {
        let w = group.parse_element(text)?;
        out["element"] = element_json(&w);
        out["q_type"] = json!(fibers::is_q_type(&datum, &levi_q, &w)?);
    }
    if let Some(theta) = &cfg.theta {
        let word = bsdh_word(cfg, &datum)?;
        out["word"] = json!(word.to_string());
        out["targets"] = word_json(&fibers::convolution_targets(&datum, &levi_q, theta, &word)?);
    }
    if cfg.element.is_none() && cfg.theta.is_none() {
        return Err(CliError::Usage("qtype needs --element or --theta with --word".into()));
    }
    Ok(out)
}

pub fn build_variety(cfg: &RunConfig) -> Result<ProjectiveIdealPresentation> {
    let kind = cfg.variety.as_deref().ok_or_else(|| CliError::Usage("no variety given".into()))?;
    let p = cfg.characteristic();
    let n = cfg.ambient_dim.unwrap_or(2);
    let twisted = !cfg.untwisted.unwrap_or(false);
    let pres = match kind {
        "incidence" => varieties::incidence(n, p)?,
        "twisted-incidence" => varieties::twisted_incidence(n, p)?,
        "nonnormal-schubert" => varieties::nonnormal_schubert(n, p)?,
        "bsdh-sl3" => varieties::bsdh_sl3(p)?,
        "schubert" => match cfg.indices.as_deref() {
            Some(&[i, j]) => varieties::schubert_ideal(n, p, i, j, twisted)?,
            _ => return Err(CliError::Usage("schubert needs --indices i,j".into())),
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown variety `{other}` (incidence, twisted-incidence, schubert, nonnormal-schubert, bsdh-sl3)"
            )))
        }
    };
    Ok(pres)
}

fn chart_json(pres: &ProjectiveIdealPresentation, a: &ChartAnalysis) -> Value {
    json!({
        "chart": pres.chart_names(&a.chart),
        "variety_dimension": a.variety_dimension,
        "singular_dimension": a.singular_dimension,
        "codimension": a.codimension.to_string(),
    })
}

fn variety(cfg: &RunConfig) -> Result<Value> {
    let pres = build_variety(cfg)?;
    let mut out = json!({
        "label": pres.label(),
        "variables": pres.ring().var_names(),
        "generators": pres.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if let Some(names) = &cfg.chart {
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let chart = pres.chart_by_names(&names)?;
        let (_, gens) = pres.chart_ideal(&chart)?;
        out["chart_ideal"] = json!(gens.iter().map(ToString::to_string).collect::<Vec<_>>());
        out["chart"] = chart_json(&pres, &varieties::analyze_chart(&pres, &chart)?);
    }
    if cfg.certify_normality.unwrap_or(false) {
        let cert = non_normality_certificate(&pres)?;
        out["verdict"] = json!(cert.verdict.to_string());
        out["min_codimension"] = json!(cert.min_codimension.to_string());
        out["rows"] = Value::Array(cert.charts.iter().map(|a| chart_json(&pres, a)).collect());
    }
    if let Some(qs) = &cfg.count_points {
        out["counts"] = counts_json(cfg, &pres, qs)?;
    }
    Ok(out)
}

/// Counts, with the paving prediction for the incidence varieties.
fn counts_json(cfg: &RunConfig, pres: &ProjectiveIdealPresentation, qs: &[u64]) -> Result<Value> {
    let paving = match cfg.variety.as_deref() {
        Some("incidence" | "twisted-incidence") => Some(varieties::incidence_poincare(cfg.ambient_dim.unwrap_or(2))?),
        _ => None,
    };
    let rows = match paving {
        Some(poly) => {
            let comparisons = point_count_vs_paving(pres, &poly, qs, cfg.budget())?;
            if let Some(c) = comparisons.iter().find(|c| !c.matches()) {
                return Err(CoreError::InvariantBreach(format!(
                    "{} points over F_{} but the paving predicts {}",
                    c.counted, c.q, c.expected
                ))
                .into());
            }
            comparisons.iter().map(|c| json!({"q": c.q, "count": c.counted, "paving": c.expected})).collect()
        }
        None => qs
            .iter()
            .map(|&q| Ok(json!({"q": q, "count": pres.point_count(q, cfg.budget())?})))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(Value::Array(rows))
}

fn count(cfg: &RunConfig) -> Result<Value> {
    let qs = cfg.count_points.clone().unwrap_or_else(|| vec![cfg.characteristic()]);
    let Some(equations) = &cfg.equations else {
        let pres = build_variety(cfg)?;
        return Ok(json!({"label": pres.label(), "rows": counts_json(cfg, &pres, &qs)?}));
    };
    let p = cfg.characteristic();
    let base = GaloisField::prime(p)?;
    let exprs: Vec<&str> = equations.iter().map(String::as_str).collect();
    let vars: Vec<&str> = cfg.variables.iter().flatten().map(String::as_str).collect();
    let (ring, gens) = parse_system(&base, &exprs, &vars)?;
    let projective = cfg.projective.unwrap_or(false);
    let mut rows = Vec::new();
    for &q in &qs {
        let (qp, k) = prime_power(q).ok_or_else(|| CliError::Usage(format!("{q} is not a prime power")))?;
        if qp != p {
            return Err(CliError::Usage(format!("q = {q} does not have characteristic {p}")));
        }
        let field = GaloisField::new(p, k)?;
        let counted = if projective {
            let block: Vec<usize> = (0..ring.var_names().len()).collect();
            projective_point_count(&gens, &[block], &field, cfg.budget())?
        } else {
            affine_point_count(&gens, &field, cfg.budget())?
        };
        rows.push(json!({"q": q, "count": counted}));
    }
    Ok(json!({
        "variables": ring.var_names(),
        "equations": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "projective": projective,
        "rows": rows,
    }))
}

/// Plain-text rendering: scalars as `key: value`, `rows` as an aligned table.
pub fn render_table(report: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = report else {
        return format!("{}\n", scalar(report));
    };
    for (key, value) in map {
        if key == "rows" {
            continue;
        }
        match value {
            Value::Object(inner) => {
                out.push_str(&format!("{key}:\n"));
                for (k, v) in inner {
                    out.push_str(&format!("  {k}: {}\n", scalar(v)));
                }
            }
            _ => out.push_str(&format!("{key}: {}\n", scalar(value))),
        }
    }
    if let Some(Value::Array(rows)) = map.get("rows") {
        out.push_str(&rows_table(rows));
    }
    out
}

fn rows_table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(m) = row {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> =
        rows.iter().map(|row| columns.iter().map(|c| row.get(c).map(scalar).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.chars().count()))
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&columns);
    for row in &cells {
        out.push_str(&line(row));
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|i| i.get("root").is_some()) && !items.is_empty() => items
            .iter()
            .map(|d| format!("({},{})", scalar(&d["root"]), scalar(&d["exponent"])))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

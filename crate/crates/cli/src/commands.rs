use std::fmt::Write as _;

use anyhow::Context as _;
use serde_json::{json, Value};

use coxsplit::finite;
use coxsplit::gog::{self, Decomposer};
use coxsplit::measure::{Measure, StepStatus};
use coxsplit::splittings::{self, SeparatorTable};
use coxsplit::{Caps, CoxeterSystem, SpecialSubset, Word, WordEngine};

use crate::{Analyze, Format, WordCmd};

pub struct Context<'s> {
    pub sys: &'s CoxeterSystem,
    pub caps: Caps,
    pub search: usize,
}

/// A command result in both machine and human form. `finding` marks a
/// validation failure or potential violation (exit status 2).
pub struct Report {
    pub json: Value,
    pub text: String,
    pub finding: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, finding: false }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n",
            Format::Text | Format::Dot => self.text.clone(),
        }
    }
}

fn braces(sys: &CoxeterSystem, a: SpecialSubset) -> String {
    format!("{{{}}}", sys.format_subset(a))
}

fn parse_word(sys: &CoxeterSystem, text: &str) -> anyhow::Result<Word> {
    let text = text.replace(',', " ");
    let text = if text.trim() == "ε" { "" } else { text.as_str() };
    Ok(Word::parse(sys, text)?)
}

pub fn analyze(ctx: &Context<'_>, cmd: &Analyze) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    Ok(match cmd {
        Analyze::FiniteType(arg) => {
            let a = sys.parse_subset(&arg.subset)?;
            let verdict = finite::is_finite_type(sys, a);
            let order = verdict.order();
            let components: Vec<Value> = verdict
                .components
                .iter()
                .map(|(c, ty)| json!({ "generators": sys.subset_names(*c), "type": ty }))
                .collect();
            let mut text = format!(
                "⟨{}⟩ is {}\n",
                sys.format_subset(a),
                match order {
                    Some(o) => format!("finite of order {o}"),
                    None => "infinite".into(),
                }
            );
            for (c, ty) in &verdict.components {
                let _ = writeln!(text, "  {}: {ty}", braces(sys, *c));
            }
            Report::ok(
                json!({
                    "subset": sys.subset_names(a),
                    "finite": verdict.finite,
                    "order": order.map(|o| o.to_string()),
                    "components": components,
                }),
                text,
            )
        }
        Analyze::SplitEa(arg) => {
            let a = sys.parse_subset(&arg.subset)?;
            let split = finite::split_ea(sys, a);
            Report::ok(
                json!({
                    "subset": sys.subset_names(a),
                    "E": sys.subset_names(split.e),
                    "T": sys.subset_names(split.t),
                }),
                format!("E = {}\nT = {}\n", braces(sys, split.e), braces(sys, split.t)),
            )
        }
        Analyze::Lk2(arg) => {
            let a = sys.parse_subset(&arg.subset)?;
            let link = finite::lk2(sys, a);
            Report::ok(
                json!({ "subset": sys.subset_names(a), "lk2": sys.subset_names(link) }),
                format!("lk2 = {}\n", braces(sys, link)),
            )
        }
        Analyze::Separators => {
            let records = splittings::enumerate_separators(sys, &ctx.caps)?;
            let mut text = String::new();
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let _ = writeln!(
                        text,
                        "{}  components {}  E = {}",
                        braces(sys, r.separator),
                        r.components.iter().map(|c| braces(sys, *c)).collect::<Vec<_>>().join(" "),
                        braces(sys, r.essential)
                    );
                    json!({
                        "separator": sys.subset_names(r.separator),
                        "components": r.components.iter().map(|c| sys.subset_names(*c)).collect::<Vec<_>>(),
                        "essential": sys.subset_names(r.essential),
                    })
                })
                .collect();
            Report::ok(json!({ "separators": rows }), text)
        }
        Analyze::Minimal { conjugacy_search } => {
            let table = SeparatorTable::new(sys, &ctx.caps)?;
            let mut text = String::new();
            let rows: Vec<Value> = table
                .records()
                .iter()
                .map(|r| {
                    let _ = writeln!(
                        text,
                        "{}  E = {}  {}",
                        braces(sys, r.separator),
                        braces(sys, r.essential),
                        if r.minimal { "minimal" } else { "not minimal" }
                    );
                    json!({
                        "separator": sys.subset_names(r.separator),
                        "essential": sys.subset_names(r.essential),
                        "minimal": r.minimal,
                    })
                })
                .collect();
            let finite_separators: Vec<SpecialSubset> = table
                .records()
                .iter()
                .map(|r| r.separator)
                .filter(|&c| finite::is_finite(sys, c))
                .collect();
            let _ = writeln!(
                text,
                "finite separators: {}",
                if finite_separators.is_empty() {
                    "none".to_string()
                } else {
                    finite_separators.iter().map(|c| braces(sys, *c)).collect::<Vec<_>>().join(" ")
                }
            );
            let mut out = json!({
                "separators": rows,
                "finiteSeparators": finite_separators.iter().map(|c| sys.subset_names(*c)).collect::<Vec<_>>(),
            });
            if let Some(radius) = conjugacy_search {
                let engine = WordEngine::with_caps(sys, ctx.caps);
                let found = splittings::conjugacy_search(&engine, &table, *radius)?;
                let _ = writeln!(text, "conjugates of minimal separators (search bound {radius}):");
                let rows: Vec<Value> = found
                    .iter()
                    .map(|c| {
                        let _ = writeln!(
                            text,
                            "  {} -> {} by {}",
                            braces(sys, c.subset),
                            braces(sys, c.target),
                            c.conjugator.display(sys)
                        );
                        json!({
                            "subset": sys.subset_names(c.subset),
                            "target": sys.subset_names(c.target),
                            "conjugator": c.conjugator.names(sys),
                        })
                    })
                    .collect();
                out["conjugates"] = json!({ "searchBound": radius, "found": rows });
            }
            Report::ok(out, text)
        }
        Analyze::Kgroups { dedupe } => {
            let engine = WordEngine::with_caps(sys, ctx.caps);
            let raw = splittings::enumerate_k(&engine, false)?;
            let deduped = splittings::enumerate_k(&engine, true)?;
            let listed = if *dedupe { &deduped } else { &raw };
            let mut text = format!(
                "{} triples, {} distinct groups\n",
                raw.raw_count,
                deduped.groups.len()
            );
            let rows: Vec<Value> = listed
                .groups
                .iter()
                .map(|k| {
                    let gens: Vec<String> = k.factor_generators.iter().map(|w| w.display(sys).to_string()).collect();
                    let _ = writeln!(
                        text,
                        "⟨{}⟩ × F, |F| = {}, F = ⟨{}⟩",
                        sys.format_subset(k.essential),
                        k.finite_factor.len(),
                        gens.join(", ")
                    );
                    json!({
                        "essential": sys.subset_names(k.essential),
                        "factorOrder": k.finite_factor.len(),
                        "factorGenerators": k.factor_generators.iter().map(|w| w.names(sys)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Report::ok(
                json!({
                    "rawCount": raw.raw_count,
                    "count": deduped.groups.len(),
                    "deduped": dedupe,
                    "groups": rows,
                }),
                text,
            )
        }
    })
}

pub fn word(ctx: &Context<'_>, cmd: &WordCmd) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let engine = WordEngine::with_caps(sys, ctx.caps);
    Ok(match cmd {
        WordCmd::Reduce { word } => {
            let w = parse_word(sys, word)?;
            let class = engine.reduce(&w)?;
            Report::ok(
                json!({ "word": w.names(sys), "canonical": class.canonical.names(sys), "length": class.length }),
                format!("{} (length {})\n", class.canonical.display(sys), class.length),
            )
        }
        WordCmd::Equal { word, other } => {
            let (u, v) = (parse_word(sys, word)?, parse_word(sys, other)?);
            let equal = engine.equal(&u, &v)?;
            Report::ok(json!({ "equal": equal }), format!("{equal}\n"))
        }
        WordCmd::Lett { word } => {
            let letters = engine.lett(&parse_word(sys, word)?)?;
            Report::ok(json!({ "lett": sys.subset_names(letters) }), format!("{}\n", braces(sys, letters)))
        }
        WordCmd::Coset { word, left, right } => {
            let w = parse_word(sys, word)?;
            let (i, j) = (sys.parse_subset(left)?, sys.parse_subset(right)?);
            let rep = engine.min_double_coset_rep(i, &w, j)?;
            let (d, k) = engine.special_intersection(i, &w, j)?;
            Report::ok(
                json!({
                    "representative": rep.canonical.names(sys),
                    "length": rep.length,
                    "conjugator": d.names(sys),
                    "intersection": sys.subset_names(k),
                }),
                format!(
                    "representative {} (length {})\n⟨I⟩ ∩ d⟨J⟩d⁻¹ = ⟨{}⟩\n",
                    rep.canonical.display(sys),
                    rep.length,
                    sys.format_subset(k)
                ),
            )
        }
    })
}

fn gog_text(sys: &CoxeterSystem, g: &coxsplit::VisualGog) -> String {
    let mut text = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let _ = writeln!(text, "v{i} ⟨{}⟩", sys.format_subset(*v));
    }
    for e in g.edges() {
        let _ = writeln!(text, "v{} -- v{} over ⟨{}⟩", e.u, e.v, sys.format_subset(e.label));
    }
    text
}

pub fn decompose(ctx: &Context<'_>, with_trace: bool) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let dec = Decomposer::new(sys, ctx.caps)?;
    let (g, trace) = dec.irreducible_decomposition()?;
    let irreducible = dec.looks_irreducible(&g)?;
    let mut out = json!({
        "gog": gog::to_json_value(sys, &g),
        "looksIrreducible": irreducible,
    });
    let mut text = gog_text(sys, &g);
    let _ = writeln!(text, "looks irreducible: {irreducible}");
    if with_trace {
        out["trace"] = gog::moves_to_json(sys, &trace);
        for (i, mv) in trace.iter().enumerate() {
            let _ = writeln!(
                text,
                "step {}: split ⟨{}⟩ as ⟨{}⟩ *_⟨{}⟩ ⟨{}⟩",
                i + 1,
                sys.format_subset(mv.vertex),
                sys.format_subset(mv.left),
                sys.format_subset(mv.edge),
                sys.format_subset(mv.right)
            );
        }
    }
    Ok(Report::ok(out, text))
}

pub fn validate(ctx: &Context<'_>, gog_text_in: &str) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let g = gog::from_json(sys, gog_text_in).context("reading graph of groups")?;
    Ok(match gog::validate(sys, &g) {
        Ok(()) => Report::ok(json!({ "valid": true }), "valid\n".into()),
        Err(v) => {
            let message = v.describe(sys, &g);
            Report {
                json: json!({ "valid": false, "violation": { "kind": v.kind(), "message": message } }),
                text: format!("invalid: {message}\n"),
                finding: true,
            }
        }
    })
}

pub fn measure_c(ctx: &Context<'_>, gog_text_in: &str) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let g = gog::from_json(sys, gog_text_in).context("reading graph of groups")?;
    let engine = WordEngine::with_caps(sys, ctx.caps);
    let m = Measure::new(&engine, ctx.search)?;
    let report = m.c_of(&g)?;
    let mut text = String::new();
    for v in &report.vertices {
        let _ = writeln!(
            text,
            "⟨{}⟩  n = {}{}",
            sys.format_subset(v.label),
            v.n.n,
            if v.n.exact { "" } else { " (lower bound)" }
        );
    }
    let _ = writeln!(text, "c = {}\nbound = 3^{} = {}", report.c, report.k_count, report.bound);
    let mut json = report.to_json(sys);
    json["searchBound"] = json!(ctx.search);
    Ok(Report::ok(json, text))
}

pub fn measure_bound(ctx: &Context<'_>) -> anyhow::Result<Report> {
    let engine = WordEngine::with_caps(ctx.sys, ctx.caps);
    let m = Measure::new(&engine, ctx.search)?;
    Ok(Report::ok(
        json!({ "kCount": m.k_count(), "bound": m.bound().to_string() }),
        format!("3^{} = {}\n", m.k_count(), m.bound()),
    ))
}

pub fn certify(ctx: &Context<'_>, trace_text: &str) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let trace = gog::moves_from_json(sys, trace_text).context("reading trace")?;
    let engine = WordEngine::with_caps(sys, ctx.caps);
    let m = Measure::new(&engine, ctx.search)?;
    let dec = Decomposer::new(sys, ctx.caps)?;
    let report = m.certify(&dec, &trace)?;
    let mut text = format!("c0 = {}\n", report.initial.c);
    for (i, s) in report.steps.iter().enumerate() {
        let _ = writeln!(text, "step {}: c = {}  {:?}", i + 1, s.report.c, s.status);
    }
    let _ = writeln!(
        text,
        "length {} ≤ bound 3^{}: {}\nstatus: {:?}",
        report.steps.len(),
        report.initial.k_count,
        report.within_bound(),
        report.status()
    );
    let mut json = report.to_json(sys);
    json["searchBound"] = json!(ctx.search);
    Ok(Report {
        json,
        text,
        finding: report.status() == StepStatus::Violation || !report.within_bound(),
    })
}

pub fn export(ctx: &Context<'_>, gog_text_in: Option<&str>) -> anyhow::Result<Report> {
    let sys = ctx.sys;
    let g = match gog_text_in {
        Some(t) => gog::from_json(sys, t).context("reading graph of groups")?,
        None => Decomposer::new(sys, ctx.caps)?.irreducible_decomposition()?.0,
    };
    Ok(Report::ok(gog::to_json_value(sys, &g), gog::to_dot(sys, &g)))
}

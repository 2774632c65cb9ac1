//! Report serialization. Every report is built once as structured JSON plus
//! ordered text sections; `table` and `tex` render the sections.
//!
//! Claims are re-checked while the report is built: a form reported closed
//! is differentiated again, and an exact form must come with a primitive
//! that maps back onto it.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::cohomology::{CohomologyGroup, CohomologyKind, GeneratorFact, JbarConvention, JbarCounts, JbarSubgroupReport};
use crate::error::{Error, Result};
use crate::families::{AnalysisReport, SlReport, SweepResult};
use crate::forms::{render_real, Form};
use crate::hypercomplex::{Operator, Provenance, Structure};
use crate::instance::{Instance, Source};
use crate::linalg::{fmt_rational, Matrix, Rational};
use crate::metric::HktReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Tex,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "tex" => Ok(Format::Tex),
            _ => Err(Error::BadParameters(format!("unknown format {s:?} (expected json, table, tex)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Table => "table",
            Format::Tex => "tex",
        })
    }
}

/// A cell with a plain and a LaTeX spelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub text: String,
    pub tex: String,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        let text = s.into();
        Cell { tex: tex_escape(&text), text }
    }

    /// A rendered form (`phi13 - phi24`, `e12`).
    pub fn form(s: impl Into<String>) -> Self {
        let text = s.into();
        Cell { tex: format!("${}$", tex_form(&text)), text }
    }
}

impl<T: fmt::Display + ?Sized> From<&T> for Cell {
    fn from(v: &T) -> Self {
        Cell::text(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub rows: Vec<(String, Cell)>,
    /// A grid used by `tex` instead of the key/value rows.
    pub grid: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Section {
    fn new(title: &str) -> Self {
        Section { title: title.into(), rows: Vec::new(), grid: None }
    }

    fn row(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.rows.push((key.into(), value.into()));
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn emit(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                out = serde_json::to_string_pretty(&self.json).expect("values serialize");
                out.push('\n');
            }
            Format::Table => {
                for (n, s) in self.sections.iter().enumerate() {
                    if n > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("[{}]\n", s.title));
                    for (k, v) in &s.rows {
                        out.push_str(&format!("{k}: {}\n", v.text));
                    }
                }
            }
            Format::Tex => {
                for s in &self.sections {
                    out.push_str(&format!("% {}\n", s.title));
                    match &s.grid {
                        Some((header, rows)) => {
                            out.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(header.len())));
                            out.push_str(&format!(" & {} \\\\\n\\hline\n", header.join(" & ")));
                            for r in rows {
                                out.push_str(&format!("{} \\\\\n", r.join(" & ")));
                            }
                        }
                        None => {
                            out.push_str("\\begin{tabular}{ll}\n");
                            for (k, v) in &s.rows {
                                out.push_str(&format!("\\texttt{{{}}} & {} \\\\\n", tex_escape(k), v.tex));
                            }
                        }
                    }
                    out.push_str("\\end{tabular}\n\n");
                }
            }
        }
        out
    }
}

pub fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

/// `phi1b2` → `\varphi^{1\bar{2}}`, `e13` → `e^{13}`; coefficients pass through.
pub fn tex_form(s: &str) -> String {
    let word = |w: &str| -> String {
        let (head, rest) = if let Some(r) = w.strip_prefix("phi") {
            ("\\varphi", r)
        } else if let Some(r) = w.strip_prefix('e').filter(|r| r.starts_with(|c: char| c.is_ascii_digit())) {
            ("e", r)
        } else {
            return w.to_string();
        };
        let toks: Vec<String> = if rest.contains('.') {
            rest.split('.').map(str::to_string).collect()
        } else {
            let mut v = Vec::new();
            let mut bar = false;
            for c in rest.chars() {
                if c == 'b' {
                    bar = true;
                } else {
                    v.push(if bar { format!("b{c}") } else { c.to_string() });
                    bar = false;
                }
            }
            v
        };
        let sup: String =
            toks.iter().map(|t| t.strip_prefix('b').map_or_else(|| t.clone(), |d| format!("\\bar{{{d}}}"))).collect();
        format!("{head}^{{{sup}}}")
    };
    s.split(' ').map(word).collect::<Vec<_>>().join(" ")
}

fn rat_json(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn matrix_json(m: &Matrix) -> Value {
    (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|s| Value::String(s.to_string())).collect())).collect::<Vec<_>>().into()
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn predicate(value: bool, evidence: impl Into<String>) -> Value {
    json!({ "value": value, "evidence": evidence.into() })
}

fn internal(detail: String) -> Error {
    Error::MethodDisagreement { check: "report re-verification".into(), detail }
}

fn instance_json(inst: &Instance) -> Value {
    let g = inst.algebra();
    let brackets: Vec<Value> = g
        .brackets()
        .iter()
        .map(|b| {
            let terms: Map<String, Value> = b.terms.iter().map(|(k, c)| ((k + 1).to_string(), rat_json(c))).collect();
            json!({ "i": b.i + 1, "j": b.j + 1, "terms": terms })
        })
        .collect();
    let mut m = Map::new();
    m.insert("label".into(), inst.label.clone().into());
    m.insert("dimension".into(), inst.dim().into());
    match &inst.source {
        Source::Family(spec) => {
            let params: Map<String, Value> = spec.params.iter().map(|(k, v)| (k.clone(), rat_json(v))).collect();
            m.insert("family".into(), json!({ "id": spec.id.name(), "params": params }));
        }
        Source::Explicit => {
            m.insert("family".into(), Value::Null);
        }
    }
    m.insert("brackets".into(), brackets.into());
    let cf = match inst.complex.coframe.provenance {
        Provenance::UserSupplied => "user-supplied",
        Provenance::AutoConstructed => "auto-constructed",
    };
    m.insert("coframe".into(), cf.into());
    Value::Object(m)
}

fn instance_section(inst: &Instance) -> Section {
    let mut s = Section::new("instance");
    s.row("label", Cell::text(&inst.label));
    s.row("dimension", &inst.dim());
    let g = inst.algebra();
    let labels = g.labels();
    for b in g.brackets() {
        let rhs = Form::from_terms(b.terms.iter().map(|(k, c)| (vec![*k], crate::linalg::Scalar::real(c.clone()))));
        let rhs = crate::forms::render_form(&rhs, |idx| labels[idx[0]].clone());
        s.row(format!("[{},{}]", labels[b.i], labels[b.j]), Cell::text(rhs));
    }
    s
}

/// Re-checks the generator claims and serializes them.
fn generators(inst: &Instance, gens: &[GeneratorFact]) -> Result<(Vec<Value>, Section)> {
    let c = &inst.complex;
    let mut out = Vec::new();
    let mut s = Section::new("generators");
    for g in gens {
        let del = c.apply(Operator::Del, &g.form)?;
        if g.del_closed != del.is_zero() {
            return Err(internal(format!("{}: closedness changed on re-check", g.name)));
        }
        let primitive = match (&g.primitive, g.del_exact) {
            (Some(p), true) => {
                if c.apply(Operator::Del, p)? != g.form {
                    return Err(internal(format!("{}: stored primitive does not differentiate to the form", g.name)));
                }
                Some(c.render(p))
            }
            (None, false) => None,
            _ => return Err(internal(format!("{}: exactness claim without a primitive", g.name))),
        };
        let mut facts = vec![g.reality.name().to_string()];
        facts.push(if g.del_closed { "del-closed".into() } else { "not del-closed".into() });
        facts.push(if g.del_exact { "del-exact".into() } else { "not del-exact".into() });
        if let Some(p) = &primitive {
            facts.push(format!("= del({p})"));
        }
        s.row(g.name.clone(), Cell { text: format!("{} | {}", c.render(&g.form), facts.join(", ")), tex: format!("${}$ ({})", tex_form(&c.render(&g.form)), tex_escape(&facts.join(", "))) });
        out.push(json!({
            "name": g.name,
            "form": c.render(&g.form),
            "reality": g.reality.name(),
            "del_closed": g.del_closed,
            "delj_closed": g.delj_closed,
            "del_exact": g.del_exact,
            "primitive": primitive,
            "dolbeault_class_nonzero": g.dolbeault_class_nonzero,
            "bott_chern_class_nonzero": g.bott_chern_class_nonzero,
        }));
    }
    Ok((out, s))
}

fn counts_json(inst: &Instance, k: &JbarCounts) -> Value {
    let c = &inst.complex;
    json!({
        "real_dim_plus": k.real_dim_plus,
        "real_dim_minus": k.real_dim_minus,
        "plus_basis": k.plus_basis.iter().map(|f| c.render(f)).collect::<Vec<_>>(),
        "minus_basis": k.minus_basis.iter().map(|f| c.render(f)).collect::<Vec<_>>(),
        "pure": k.pure_over_r,
        "full": k.full_over_r,
    })
}

fn jbar_json(inst: &Instance, r: &JbarSubgroupReport) -> Value {
    json!({
        "complex_dim": r.complex_dim,
        "coframe_real": counts_json(inst, &r.coframe_real),
        "literal": counts_json(inst, &r.literal),
    })
}

fn kind_tex(k: CohomologyKind) -> &'static str {
    match k {
        CohomologyKind::Dolbeault => "$h^{p,0}_{\\partial}$",
        CohomologyKind::DelJ => "$h^{p,0}_{\\partial_J}$",
        CohomologyKind::BottChern => "$h^{p,0}_{BC}$",
        CohomologyKind::Aeppli => "$h^{p,0}_{A}$",
    }
}

pub fn analysis_report(inst: &Instance, r: &AnalysisReport) -> Result<Report> {
    let g = inst.algebra();
    let c = &inst.complex;
    let mut root = Map::new();
    root.insert("instance".into(), instance_json(inst));
    let mut sections = vec![instance_section(inst)];
    let mut warnings: Vec<String> = Vec::new();

    let mut preds = Map::new();
    let mut ps = Section::new("predicates");
    preds.insert("jacobi".into(), predicate(r.jacobi, "checked on every basis triple"));
    ps.row("jacobi", yes(r.jacobi).as_str());
    let mut integ = Map::new();
    for (s, ok) in Structure::ALL.iter().zip(r.integrable) {
        let n = c.nijenhuis(*s);
        let ev = match n.nonzero.first() {
            None => "Nijenhuis tensor vanishes on all basis pairs".to_string(),
            Some((a, b, _)) => format!("N(e{}, e{}) != 0", a + 1, b + 1),
        };
        integ.insert(s.name().into(), predicate(ok, ev));
        ps.row(format!("integrable {}", s.name()), yes(ok).as_str());
    }
    preds.insert("integrable".into(), Value::Object(integ));
    let lcs = g.lower_central_series().dims;
    let ds = g.derived_series().dims;
    preds.insert("nilpotent".into(), predicate(r.nilpotent, format!("lower central series dims {lcs:?}")));
    preds.insert("solvable".into(), predicate(r.solvable, format!("derived series dims {ds:?}")));
    preds.insert("unimodular".into(), predicate(r.unimodular, "trace of ad on every basis vector"));
    preds.insert("codim1_abelian_ideal".into(), predicate(r.codim1_abelian_ideal, "kernel of a closed covector"));
    for (k, v) in [("nilpotent", r.nilpotent), ("solvable", r.solvable), ("unimodular", r.unimodular), ("codim1 abelian ideal", r.codim1_abelian_ideal)] {
        ps.row(k, yes(v).as_str());
    }
    let block = r.block.as_ref().map(|b| {
        json!({
            "a": rat_json(&b.a),
            "f_tilde": matrix_json(&b.f_tilde),
            "v": b.v.iter().map(rat_json).collect::<Vec<_>>(),
        })
    });
    preds.insert("almost_abelian_block".into(), block.unwrap_or(Value::Null));
    if let Some(b) = &r.block {
        ps.row("block a", Cell::text(fmt_rational(&b.a)));
        ps.row("block v", Cell::text(format!("({})", b.v.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))));
    }
    preds.insert("omega_q_positive".into(), predicate(r.metric.q_positive, "Hermitian form Omega(E, J conj E) on the coframe dual"));
    ps.row("Omega", Cell::form(c.render(&r.metric.big_omega)));
    ps.row("Omega q-positive", yes(r.metric.q_positive).as_str());
    if !r.metric.q_positive {
        warnings.push("Omega is not q-positive for this metric".into());
    }

    let mut sec_coh = Section::new("cohomology");
    let mut sec_jbar = Section::new("jbar subgroups");
    let mut sec_lemma = Section::new("ddJ-lemma");
    let mut gens_json = Vec::new();
    let mut sec_gens = None;
    let mut sec_p = None;
    match &r.analysis {
        None => {
            warnings.push("hypercomplex structure is not integrable: cohomology, HKT and SL checks skipped".into());
            root.insert("predicates".into(), Value::Object(preds));
            root.insert("cohomology".into(), Value::Null);
        }
        Some(a) => {
            preds.insert("abelian_hypercomplex".into(), predicate(a.abelian_hypercomplex, "[Lx, Ly] = [x, y] for L = I, J, K"));
            if a.hkt.hkt && !a.hkt.del_omega.is_zero() {
                return Err(internal("HKT claimed with del Omega != 0".into()));
            }
            preds.insert(
                "hkt".into(),
                json!({
                    "value": a.hkt.hkt,
                    "method_a": a.hkt.method_a,
                    "method_b": a.hkt.method_b,
                    "evidence": format!("del Omega = {}", c.render(&a.hkt.del_omega)),
                }),
            );
            preds.insert("hyperkahler".into(), predicate(a.hyperkahler, "d omega_I = d omega_J = d omega_K = 0"));
            let sl_ev = match a.sl.method_b {
                Some(_) => "dbar of the coframe volume; trace formula agrees",
                None => "dbar of the coframe volume",
            };
            preds.insert(
                "sl".into(),
                json!({
                    "value": a.sl.sl,
                    "method_a": a.sl.method_a,
                    "method_b": a.sl.method_b,
                    "evidence": sl_ev,
                    "trivializing_form": a.sl.trivializing_form.as_ref().map(|f| c.render(f)),
                }),
            );
            ps.row("abelian hypercomplex", yes(a.abelian_hypercomplex).as_str());
            ps.row("hkt", Cell::text(format!("{} (method A: {}, method B: {})", a.hkt.hkt, a.hkt.method_a, a.hkt.method_b)));
            ps.row("del Omega", Cell::form(c.render(&a.hkt.del_omega)));
            ps.row("hyperkahler", yes(a.hyperkahler).as_str());
            let sl_b = a.sl.method_b.map_or("n/a".to_string(), |b| b.to_string());
            ps.row("sl", Cell::text(format!("{} (direct: {}, trace formula: {sl_b})", a.sl.sl, a.sl.method_a)));
            root.insert("predicates".into(), Value::Object(preds));

            let mut coh = Map::new();
            let half = c.half();
            let mut grid_rows = Vec::new();
            for kind in CohomologyKind::ALL {
                let dims = &a.dims[&kind];
                coh.insert(kind.name().into(), dims.clone().into());
                for (p, d) in dims.iter().enumerate() {
                    sec_coh.row(format!("H^{{{p},0}}_{}", kind.name()), d);
                }
                let mut row = vec![kind_tex(kind).to_string()];
                row.extend(dims.iter().map(|d| d.to_string()));
                grid_rows.push(row);
            }
            sec_coh.grid = Some(((0..=half).map(|p| format!("$p={p}$")).collect(), grid_rows));
            root.insert("cohomology".into(), Value::Object(coh));

            root.insert(
                "jbar".into(),
                json!({
                    "dolbeault": jbar_json(inst, &a.jbar_dolbeault),
                    "bott_chern": jbar_json(inst, &a.jbar_bott_chern),
                    "closed_nonexact_imaginary_dim": a.closed_nonexact_imaginary_dim,
                }),
            );
            for (name, rep) in [("dolbeault", &a.jbar_dolbeault), ("bott-chern", &a.jbar_bott_chern)] {
                for conv in [JbarConvention::CoframeReal, JbarConvention::Literal] {
                    let k = rep.counts(conv);
                    sec_jbar.row(
                        format!("{name} {}", conv.name()),
                        Cell::text(format!("+{} / -{} (pure: {}, full: {})", k.real_dim_plus, k.real_dim_minus, k.pure_over_r, k.full_over_r)),
                    );
                }
                let (cr, li) = (&rep.coframe_real, &rep.literal);
                if (cr.real_dim_plus, cr.real_dim_minus) != (li.real_dim_plus, li.real_dim_minus) {
                    warnings.push(format!(
                        "{name} Jbar counts depend on the reality convention: coframe-real +{}/-{}, literal +{}/-{}",
                        cr.real_dim_plus, cr.real_dim_minus, li.real_dim_plus, li.real_dim_minus
                    ));
                }
            }
            sec_jbar.row("closed non-exact imaginary", &a.closed_nonexact_imaginary_dim);

            let lemma: Vec<Value> = a
                .ddj_lemma
                .iter()
                .map(|l| {
                    json!({
                        "p": l.p,
                        "holds": l.holds,
                        "closed_exact_dim": l.closed_exact_dim,
                        "ddj_exact_dim": l.ddj_exact_dim,
                        "witness": l.witness.as_ref().map(|f| c.render(f)),
                    })
                })
                .collect();
            root.insert("ddj_lemma".into(), lemma.into());
            for l in &a.ddj_lemma {
                let mut v = format!("{} (ker del cap im delJ: {}, im del delJ: {})", l.holds, l.closed_exact_dim, l.ddj_exact_dim);
                if let Some(w) = &l.witness {
                    v.push_str(&format!(", witness {}", c.render(w)));
                }
                sec_lemma.row(format!("p={}", l.p), Cell::text(v));
            }
            let imp = &a.implication;
            root.insert(
                "implication".into(),
                json!({
                    "lemma": imp.lemma, "lemma_p2": imp.lemma_p2, "pure": imp.pure, "full": imp.full,
                    "literal_pure": imp.literal_pure, "literal_full": imp.literal_full, "holds": imp.holds,
                }),
            );
            sec_lemma.row("lemma => pure and full", yes(imp.holds).as_str());
            if imp.lemma_p2 != imp.lemma {
                warnings.push("the ddJ-lemma holds in degree 2 but fails in another degree".into());
            }
            let maps: Vec<Value> = a
                .natural_maps
                .iter()
                .map(|m| {
                    let side = |s: &crate::cohomology::NaturalMapSide| {
                        json!({ "bc_dim": s.bc_dim, "dolbeault_dim": s.dolbeault_dim, "image_dim": s.image_dim, "surjective": s.surjective, "injective": s.injective })
                    };
                    json!({ "convention": m.convention.name(), "plus": side(&m.plus), "minus": side(&m.minus) })
                })
                .collect();
            for m in &a.natural_maps {
                for (sign, s) in [("+", &m.plus), ("-", &m.minus)] {
                    sec_lemma.row(
                        format!("BC -> del ({}, {sign})", m.convention.name()),
                        Cell::text(format!("{} -> {}, image {} (surjective: {}, injective: {})", s.bc_dim, s.dolbeault_dim, s.image_dim, s.surjective, s.injective)),
                    );
                }
            }
            root.insert("natural_maps".into(), maps.into());

            let (gj, gs) = generators(inst, &a.named)?;
            gens_json = gj;
            if !gs.rows.is_empty() {
                sec_gens = Some(gs);
            }
            let pj = a.operator_p.as_ref().map(|p| {
                let mut s = Section::new("operator P");
                s.row("imaginary (2,0)-forms", &p.imaginary_dim);
                s.row("kernel", &p.kernel_dim);
                s.row("self-dual imaginary", &p.self_dual_imaginary_dim);
                for (n, f) in p.kernel_basis.iter().enumerate() {
                    s.row(format!("kernel[{n}]"), Cell::form(c.render(f)));
                }
                sec_p = Some(s);
                json!({
                    "imaginary_dim": p.imaginary_dim,
                    "kernel_dim": p.kernel_dim,
                    "kernel_basis": p.kernel_basis.iter().map(|f| c.render(f)).collect::<Vec<_>>(),
                    "self_dual_imaginary_dim": p.self_dual_imaginary_dim,
                })
            });
            root.insert("operator_p".into(), pj.unwrap_or(Value::Null));
        }
    }
    root.insert("generators".into(), gens_json.into());
    root.insert("warnings".into(), warnings.clone().into());

    sections.push(ps);
    if r.analysis.is_some() {
        sections.push(sec_coh);
        sections.push(sec_jbar);
        sections.push(sec_lemma);
    }
    sections.extend(sec_gens);
    sections.extend(sec_p);
    if !warnings.is_empty() {
        let mut w = Section::new("warnings");
        for (n, m) in warnings.iter().enumerate() {
            w.row(format!("warning {}", n + 1), Cell::text(m));
        }
        sections.push(w);
    }
    Ok(Report { json: Value::Object(root), sections })
}

pub fn emit_report(inst: &Instance, r: &AnalysisReport, format: Format) -> Result<String> {
    Ok(analysis_report(inst, r)?.emit(format))
}

pub fn cohomology_report(inst: &Instance, groups: &[CohomologyGroup]) -> Report {
    let c = &inst.complex;
    let mut s = Section::new("cohomology");
    let mut arr = Vec::new();
    for g in groups {
        s.row(format!("H^{{{},0}}_{}", g.p, g.kind.name()), &g.dim);
        for (n, f) in g.representatives.iter().enumerate() {
            s.row(format!("  [{n}]"), Cell::form(c.render(f)));
        }
        arr.push(json!({
            "kind": g.kind.name(),
            "p": g.p,
            "dim": g.dim,
            "representatives": g.representatives.iter().map(|f| c.render(f)).collect::<Vec<_>>(),
        }));
    }
    Report { json: json!({ "instance": instance_json(inst), "groups": arr }), sections: vec![instance_section(inst), s] }
}

pub fn hkt_report(inst: &Instance, h: &HktReport, hyperkahler: bool) -> Report {
    let c = &inst.complex;
    let mut s = Section::new("hkt");
    s.row("hkt", yes(h.hkt).as_str());
    s.row("method A (del Omega = 0)", yes(h.method_a).as_str());
    s.row("method B (torsions agree)", yes(h.method_b).as_str());
    s.row("del Omega", Cell::form(c.render(&h.del_omega)));
    for (st, t) in Structure::ALL.iter().zip(&h.torsion) {
        s.row(format!("T_{}", st.name()), Cell::form(render_real(t, inst.dim())));
    }
    s.row("hyperkahler", yes(hyperkahler).as_str());
    let json = json!({
        "instance": instance_json(inst),
        "hkt": h.hkt,
        "method_a": h.method_a,
        "method_b": h.method_b,
        "del_omega": c.render(&h.del_omega),
        "torsion": Structure::ALL.iter().zip(&h.torsion).map(|(st, t)| (st.name().to_string(), Value::String(render_real(t, inst.dim())))).collect::<Map<_, _>>(),
        "hyperkahler": hyperkahler,
    });
    Report { json, sections: vec![instance_section(inst), s] }
}

pub fn sl_report(inst: &Instance, r: &SlReport) -> Report {
    let c = &inst.complex;
    let mut s = Section::new("sl");
    s.row("sl", yes(r.sl).as_str());
    s.row("direct test", yes(r.method_a).as_str());
    s.row("trace formula", Cell::text(r.method_b.map_or("n/a".into(), |b| b.to_string())));
    if let Some(f) = &r.trivializing_form {
        s.row("trivializing form", Cell::form(c.render(f)));
    }
    let json = json!({
        "instance": instance_json(inst),
        "sl": r.sl,
        "method_a": r.method_a,
        "method_b": r.method_b,
        "trivializing_form": r.trivializing_form.as_ref().map(|f| c.render(f)),
    });
    Report { json, sections: vec![instance_section(inst), s] }
}

/// Semantic validation summary of a built instance.
pub fn validate_report(inst: &Instance) -> Report {
    let c = &inst.complex;
    let mut s = Section::new("validate");
    s.row("jacobi", "true");
    s.row("quaternionic triple", "true");
    let mut integ = Map::new();
    for st in Structure::ALL {
        let ok = c.nijenhuis(st).integrable;
        integ.insert(st.name().into(), ok.into());
        s.row(format!("integrable {}", st.name()), yes(ok).as_str());
    }
    let json = json!({ "instance": instance_json(inst), "valid": true, "integrable": integ });
    Report { json, sections: vec![instance_section(inst), s] }
}

pub fn sweep_report(r: &SweepResult) -> Report {
    let mut rows = Vec::new();
    let mut pts = Section::new("points");
    for p in &r.points {
        let key = p.spec.describe();
        match &p.report {
            Err(e) => {
                pts.row(key.clone(), Cell::text(format!("error {}: {e}", e.code())));
                rows.push(json!({ "point": key, "error": e.code(), "message": e.to_string() }));
            }
            Ok(a) => {
                let mut v = Map::new();
                v.insert("point".into(), key.clone().into());
                v.insert("integrable".into(), a.is_integrable().into());
                v.insert("unimodular".into(), a.unimodular.into());
                v.insert("nilpotent".into(), a.nilpotent.into());
                let mut text = format!("integrable={} unimodular={} nilpotent={}", a.is_integrable(), a.unimodular, a.nilpotent);
                if let Some(x) = &a.analysis {
                    v.insert("hkt".into(), x.hkt.hkt.into());
                    v.insert("hyperkahler".into(), x.hyperkahler.into());
                    v.insert("sl".into(), x.sl.sl.into());
                    let h2: Map<String, Value> = CohomologyKind::ALL.iter().map(|k| (k.name().to_string(), x.dim2(*k).into())).collect();
                    v.insert("h2".into(), h2.into());
                    let dims: Vec<String> = CohomologyKind::ALL.iter().map(|k| x.dim2(*k).to_string()).collect();
                    text.push_str(&format!(" hkt={} sl={} h2(del,delJ,bc,a)={}", x.hkt.hkt, x.sl.sl, dims.join(",")));
                }
                pts.row(key, Cell::text(text));
                rows.push(Value::Object(v));
            }
        }
    }
    let mut eqs = Section::new("equivalences");
    let mut grid_rows = Vec::new();
    let eq_json: Vec<Value> = r
        .summary
        .equivalences
        .iter()
        .map(|e| {
            let verdict = if e.holds() { "holds".to_string() } else { format!("FAILS at {}", e.counterexamples.join("; ")) };
            eqs.row(e.name.clone(), Cell::text(format!("{verdict} (checked {})", e.checked)));
            grid_rows.push(vec![
                format!("\\texttt{{{}}}", tex_escape(&e.name)),
                e.checked.to_string(),
                if e.holds() { "yes".into() } else { "no".into() },
                e.counterexamples.len().to_string(),
            ]);
            json!({ "name": e.name, "checked": e.checked, "holds": e.holds(), "counterexamples": e.counterexamples })
        })
        .collect();
    eqs.grid = Some((vec!["checked".into(), "holds".into(), "counterexamples".into()], grid_rows));
    let mut head = Section::new("sweep");
    head.row("family", Cell::text(r.family.name()));
    head.row("points", &r.summary.points);
    head.row("errors", &r.summary.errors);
    let json = json!({
        "family": r.family.name(),
        "points": r.summary.points,
        "errors": r.summary.errors,
        "equivalences": eq_json,
        "rows": rows,
    });
    Report { json, sections: vec![head, eqs, pts] }
}

//! One-stop analysis of an instance.

use std::collections::BTreeMap;

use super::{named_forms, recognize_block_form, sl_check, BlockDecomposition, SlReport};
use crate::cohomology::{
    cohomology_group, ddj_lemma_all, jbar_subgroups, natural_map_check, pure_full_implication, CohomologyKind, DdjLemma,
    GeneratorFact, ImplicationReport, JbarConvention, JbarSource, JbarSubgroupReport, NaturalMapReport,
};
use crate::error::Result;
use crate::forms::Form;
use crate::hypercomplex::{Operator, Structure};
use crate::instance::{Instance, Source};
use crate::metric::{build_metric, hkt_check, hyperkahler_check, operator_p_invariant, HktReport, Metric, OperatorPReport};

/// A named form with its facts, as used in the per-family analyses.
pub type NamedForm = GeneratorFact;

/// Everything that depends on the triple being integrable.
#[derive(Clone, Debug)]
pub struct IntegrableAnalysis {
    pub abelian_hypercomplex: bool,
    pub hkt: HktReport,
    pub hyperkahler: bool,
    pub sl: SlReport,
    /// `dim H^{p,0}` for `p = 0..=2n`, per kind.
    pub dims: BTreeMap<CohomologyKind, Vec<usize>>,
    pub jbar_dolbeault: JbarSubgroupReport,
    pub jbar_bott_chern: JbarSubgroupReport,
    /// Coframe-real count of `∂`-closed, non-exact, σ-anti-fixed classes.
    pub closed_nonexact_imaginary_dim: usize,
    pub ddj_lemma: Vec<DdjLemma>,
    pub natural_maps: Vec<NaturalMapReport>,
    pub implication: ImplicationReport,
    pub named: Vec<NamedForm>,
    /// Only in real dimension 8 on SL instances.
    pub operator_p: Option<OperatorPReport>,
}

impl IntegrableAnalysis {
    pub fn dim2(&self, kind: CohomologyKind) -> usize {
        self.dims[&kind].get(2).copied().unwrap_or(0)
    }

    pub fn named(&self, name: &str) -> Option<&NamedForm> {
        self.named.iter().find(|f| f.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub label: String,
    pub dim: usize,
    pub jacobi: bool,
    pub integrable: [bool; 3],
    pub nilpotent: bool,
    pub solvable: bool,
    pub unimodular: bool,
    pub codim1_abelian_ideal: bool,
    pub block: Option<BlockDecomposition>,
    pub metric: Metric,
    pub analysis: Option<IntegrableAnalysis>,
}

impl AnalysisReport {
    pub fn is_integrable(&self) -> bool {
        self.integrable.iter().all(|&b| b)
    }
}

/// How much work `classify` does; the P operator and natural maps are the
/// expensive parts and are skipped in bulk sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub operator_p: bool,
    pub natural_maps: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { operator_p: true, natural_maps: true }
    }
}

pub fn classify(inst: &Instance) -> Result<AnalysisReport> {
    classify_with(inst, ClassifyOptions::default())
}

pub fn classify_with(inst: &Instance, opts: ClassifyOptions) -> Result<AnalysisReport> {
    let g = inst.algebra();
    let c = &inst.complex;
    let metric = build_metric(c, &inst.gram)?;
    let integrable = Structure::ALL.map(|s| c.nijenhuis(s).integrable);
    let ideal = g.find_codim1_abelian_ideal();
    let block = ideal.as_ref().and_then(|_| recognize_block_form(g, inst.triple(), &inst.gram, None).ok());
    let analysis = if integrable.iter().all(|&b| b) { Some(integrable_analysis(inst, &metric, opts)?) } else { None };
    Ok(AnalysisReport {
        label: inst.label.clone(),
        dim: inst.dim(),
        jacobi: g.validate_jacobi().holds,
        integrable,
        nilpotent: g.is_nilpotent(),
        solvable: g.is_solvable(),
        unimodular: g.is_unimodular(),
        codim1_abelian_ideal: ideal.is_some(),
        block,
        metric,
        analysis,
    })
}

fn integrable_analysis(inst: &Instance, metric: &Metric, opts: ClassifyOptions) -> Result<IntegrableAnalysis> {
    let c = &inst.complex;
    let hkt = hkt_check(c, metric)?;
    let hyperkahler = hyperkahler_check(c, metric);
    let sl = sl_check(inst)?;
    let mut dims = BTreeMap::new();
    for kind in CohomologyKind::ALL {
        let v = (0..=c.half()).map(|p| cohomology_group(c, kind, p).map(|h| h.dim)).collect::<Result<Vec<_>>>()?;
        dims.insert(kind, v);
    }
    let named_list: Vec<(&str, Form)> = match &inst.source {
        Source::Family(spec) if inst.dim() == 8 => named_forms(spec),
        _ => Vec::new(),
    };
    let jbar_dolbeault = jbar_subgroups(c, JbarSource::Dolbeault, &named_list)?;
    let jbar_bott_chern = jbar_subgroups(c, JbarSource::BottChern, &[])?;
    let natural_maps = if opts.natural_maps {
        vec![natural_map_check(c, JbarConvention::CoframeReal)?, natural_map_check(c, JbarConvention::Literal)?]
    } else {
        Vec::new()
    };
    let operator_p = if opts.operator_p && inst.dim() == 8 && sl.sl { Some(operator_p_invariant(inst, metric)?) } else { None };
    Ok(IntegrableAnalysis {
        abelian_hypercomplex: inst.triple().is_abelian(inst.algebra()),
        hkt,
        hyperkahler,
        sl,
        dims,
        closed_nonexact_imaginary_dim: jbar_dolbeault.coframe_real.real_dim_minus,
        named: jbar_dolbeault.generators.clone(),
        jbar_dolbeault,
        jbar_bott_chern,
        ddj_lemma: ddj_lemma_all(c)?,
        natural_maps,
        implication: pure_full_implication(c)?,
        operator_p,
    })
}

/// Results of the operator identities that must hold on every integrable instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub d_squared: bool,
    pub del_squared: bool,
    pub delj_squared: bool,
    pub anticommute: bool,
    pub j_swaps_bidegree: bool,
    pub sigma_involution: bool,
    pub no_02_leak: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.d_squared
            && self.del_squared
            && self.delj_squared
            && self.anticommute
            && self.j_swaps_bidegree
            && self.sigma_involution
            && self.no_02_leak
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("d^2", self.d_squared),
            ("del^2", self.del_squared),
            ("delJ^2", self.delj_squared),
            ("del delJ + delJ del", self.anticommute),
            ("J swaps bidegree", self.j_swaps_bidegree),
            ("sigma^2", self.sigma_involution),
            ("no (0,2) leak", self.no_02_leak),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect()
    }
}

/// `d² = 0` on `Λ¹, Λ²`; `∂² = ∂_J² = ∂∂_J + ∂_J∂ = 0` on `A^{p,0}` for
/// `p ≤ min(2, 2n−2)`; `J : A^{p,q} → A^{q,p}`; `σ² = Id`; no `(0,2)`-leak.
///
/// The operators are derivations, so the low degrees already decide all of them.
pub fn operator_identities(inst: &Instance) -> Result<IdentityReport> {
    let c = &inst.complex;
    c.require_integrable()?;
    let g = inst.algebra();
    let d_squared = (1..=2).all(|k| {
        let a = g.ce_differential(k).expect("k ≤ dim");
        let b = g.ce_differential(k + 1).expect("k ≤ dim");
        b.matrix.mul(&a.matrix).is_zero()
    });
    let h = c.half();
    let top = 2.min(h.saturating_sub(2));
    let mat = |op: Operator, p: usize| c.operator_matrix(op, p).map(|m| m.matrix);
    let (mut del_squared, mut delj_squared, mut anticommute) = (true, true, true);
    for p in 0..=top {
        let (d0, d1) = (mat(Operator::Del, p)?, mat(Operator::Del, p + 1)?);
        let (j0, j1) = (mat(Operator::DelJ, p)?, mat(Operator::DelJ, p + 1)?);
        del_squared &= d1.mul(&d0).is_zero();
        delj_squared &= j1.mul(&j0).is_zero();
        anticommute &= d1.mul(&j0).add(&j1.mul(&d0)).is_zero();
    }
    let j_swaps_bidegree = (0..=2.min(h)).all(|p| (0..=2 - p.min(2)).all(|q| c.j_swaps_bidegree(p, q)));
    let s = c.sigma_matrix(2).matrix;
    let sigma_involution = s.mul(&s) == crate::linalg::Matrix::identity(s.rows());
    Ok(IdentityReport {
        d_squared,
        del_squared,
        delj_squared,
        anticommute,
        j_swaps_bidegree,
        sigma_involution,
        no_02_leak: c.no_02_leak(),
    })
}

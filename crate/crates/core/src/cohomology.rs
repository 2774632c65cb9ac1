//! Quaternionic Dolbeault, `∂_J`, Bott–Chern and Aeppli cohomology of
//! invariant `(p,0)`-forms, and the `J̄`-subgroups of `H^{2,0}`.
//!
//! Everything here is invariant-level: forms are left-invariant, so the
//! numbers describe the Lie algebra complex, not a compact quotient.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::hypercomplex::{BigradedComplex, Operator};
use crate::linalg::{complexify, realify_vector, FieldTag, Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CohomologyKind {
    Dolbeault,
    DelJ,
    BottChern,
    Aeppli,
}

impl CohomologyKind {
    pub const ALL: [CohomologyKind; 4] = [CohomologyKind::Dolbeault, CohomologyKind::DelJ, CohomologyKind::BottChern, CohomologyKind::Aeppli];

    pub fn name(self) -> &'static str {
        match self {
            CohomologyKind::Dolbeault => "dolbeault",
            CohomologyKind::DelJ => "delJ",
            CohomologyKind::BottChern => "bott-chern",
            CohomologyKind::Aeppli => "aeppli",
        }
    }
}

impl fmt::Display for CohomologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CohomologyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dolbeault" | "del" => Ok(CohomologyKind::Dolbeault),
            "delj" | "del-j" | "del_j" => Ok(CohomologyKind::DelJ),
            "bott-chern" | "bc" | "bottchern" => Ok(CohomologyKind::BottChern),
            "aeppli" | "a" => Ok(CohomologyKind::Aeppli),
            _ => Err(Error::Unsupported(format!("unknown cohomology kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub kind: CohomologyKind,
    pub p: usize,
    pub dim: usize,
    /// Coset representatives, one per basis class.
    pub representatives: Vec<Form>,
    pub field_tag: FieldTag,
}

/// `f = ∂β`, `∂_Jβ`, `∂∂_Jβ` or (Aeppli) `∂β + ∂_Jγ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitive {
    pub beta: Form,
    pub gamma: Option<Form>,
}

/// Linear-algebra view of the operators on `A^{•,0}`.
///
/// Matrices outside `0..=2n` are empty; this keeps the boundary degrees
/// uniform (`∂` on `A^{2n,0}` is the zero map to a zero space).
pub struct DelComplex<'a> {
    pub c: &'a BigradedComplex,
}

impl<'a> DelComplex<'a> {
    pub fn new(c: &'a BigradedComplex) -> Result<Self> {
        c.require_integrable()?;
        Ok(DelComplex { c })
    }

    /// `dim A^{p,0}` (zero for `p > 2n`).
    pub fn dim(&self, p: isize) -> usize {
        if p < 0 {
            0
        } else {
            self.c.basis(p as usize, 0).len()
        }
    }

    /// Matrix of `∂` or `∂_J` from `A^{p,0}` to `A^{p+1,0}`.
    pub fn op(&self, op: Operator, p: isize) -> Matrix {
        if p < 0 || p as usize > self.c.half() {
            return Matrix::zeros(self.dim(p + 1), self.dim(p));
        }
        self.c.operator_matrix(op, p as usize).expect("integrability checked and degree in range").matrix
    }

    /// `∂∂_J : A^{p,0} → A^{p+2,0}`.
    pub fn ddj(&self, p: isize) -> Matrix {
        self.op(Operator::Del, p + 1).mul(&self.op(Operator::DelJ, p))
    }

    fn tag() -> FieldTag {
        FieldTag::Complex
    }

    pub fn ker(&self, op: Operator, p: isize) -> Subspace {
        self.op(op, p).kernel(Self::tag())
    }

    pub fn im(&self, op: Operator, p: isize) -> Subspace {
        image_or_zero(&self.op(op, p - 1), self.dim(p))
    }

    pub fn ker_ddj(&self, p: isize) -> Subspace {
        self.ddj(p).kernel(Self::tag())
    }

    pub fn im_ddj(&self, p: isize) -> Subspace {
        image_or_zero(&self.ddj(p - 2), self.dim(p))
    }

    /// Numerator and denominator of the given cohomology in degree `p`.
    pub fn pair(&self, kind: CohomologyKind, p: isize) -> (Subspace, Subspace) {
        match kind {
            CohomologyKind::Dolbeault => (self.ker(Operator::Del, p), self.im(Operator::Del, p)),
            CohomologyKind::DelJ => (self.ker(Operator::DelJ, p), self.im(Operator::DelJ, p)),
            CohomologyKind::BottChern => (self.ker(Operator::Del, p).intersect(&self.ker(Operator::DelJ, p)), self.im_ddj(p)),
            CohomologyKind::Aeppli => (self.ker_ddj(p), self.im(Operator::Del, p).sum(&self.im(Operator::DelJ, p))),
        }
    }
}

fn image_or_zero(m: &Matrix, ambient: usize) -> Subspace {
    if m.cols() == 0 {
        Subspace::zero(ambient, FieldTag::Complex)
    } else {
        m.image(FieldTag::Complex)
    }
}

fn check_degree(c: &BigradedComplex, p: usize) -> Result<()> {
    if p > c.half() {
        return Err(Error::DegreeOutOfRange { degree: p, max: c.half() });
    }
    Ok(())
}

pub fn cohomology_group(c: &BigradedComplex, kind: CohomologyKind, p: usize) -> Result<CohomologyGroup> {
    let dc = DelComplex::new(c)?;
    check_degree(c, p)?;
    let (num, den) = dc.pair(kind, p as isize);
    let q = num.quotient(&den)?;
    let representatives = q.representatives.iter().map(|v| c.form_from_coords(v, p)).collect();
    Ok(CohomologyGroup { kind, p, dim: q.dim, representatives, field_tag: FieldTag::Complex })
}

/// A primitive witnessing that the `(p,0)`-form `f` is exact for `kind`,
/// re-checked by applying the operator. Dolbeault/`∂_J`/Bott–Chern exactness
/// does not presuppose closedness; callers test that separately.
pub fn exact_primitive(c: &BigradedComplex, kind: CohomologyKind, f: &Form, p: usize) -> Result<Option<Primitive>> {
    let dc = DelComplex::new(c)?;
    check_degree(c, p)?;
    let pi = p as isize;
    let b = c.coords(f, p);
    let (m, src_p) = match kind {
        CohomologyKind::Dolbeault => (dc.op(Operator::Del, pi - 1), pi - 1),
        CohomologyKind::DelJ => (dc.op(Operator::DelJ, pi - 1), pi - 1),
        CohomologyKind::BottChern => (dc.ddj(pi - 2), pi - 2),
        CohomologyKind::Aeppli => (dc.op(Operator::Del, pi - 1).hstack(&dc.op(Operator::DelJ, pi - 1)), pi - 1),
    };
    if src_p < 0 {
        return Ok(f.is_zero().then(|| Primitive { beta: Form::zero(), gamma: None }));
    }
    let Some(x) = m.solve(&b) else { return Ok(None) };
    let sp = src_p as usize;
    let prim = match kind {
        CohomologyKind::Aeppli => {
            let n = dc.dim(src_p);
            Primitive { beta: c.form_from_coords(&x[..n], sp), gamma: Some(c.form_from_coords(&x[n..], sp)) }
        }
        _ => Primitive { beta: c.form_from_coords(&x, sp), gamma: None },
    };
    let back = match kind {
        CohomologyKind::Dolbeault => c.apply(Operator::Del, &prim.beta)?,
        CohomologyKind::DelJ => c.apply(Operator::DelJ, &prim.beta)?,
        CohomologyKind::BottChern => c.apply(Operator::Del, &c.apply(Operator::DelJ, &prim.beta)?)?,
        CohomologyKind::Aeppli => {
            c.apply(Operator::Del, &prim.beta)?.add(&c.apply(Operator::DelJ, prim.gamma.as_ref().expect("set above"))?)
        }
    };
    if &back != f {
        return Err(Error::MethodDisagreement { check: "exactness".into(), detail: format!("primitive of {kind} class does not reproduce the form") });
    }
    Ok(Some(prim))
}

/// Replaces a `∂`-closed `α` by `α − ∂β` with `∂_J(α − ∂β) = 0`, if possible.
pub fn both_closed_representative(c: &BigradedComplex, alpha: &Form, p: usize) -> Result<Option<Form>> {
    let dc = DelComplex::new(c)?;
    check_degree(c, p)?;
    let pi = p as isize;
    // ∂_J ∂ β = ∂_J α
    let m = dc.op(Operator::DelJ, pi).mul(&dc.op(Operator::Del, pi - 1));
    let rhs = dc.op(Operator::DelJ, pi).mul_vec(&c.coords(alpha, p));
    if pi == 0 {
        return Ok(rhs.iter().all(Scalar::is_zero).then(|| alpha.clone()));
    }
    let Some(beta) = m.solve(&rhs) else { return Ok(None) };
    let beta = c.form_from_coords(&beta, p - 1);
    let out = alpha.sub(&c.apply(Operator::Del, &beta)?);
    debug_assert!(c.apply(Operator::DelJ, &out)?.is_zero());
    Ok(Some(out))
}

/// Whether `σ` fixes, anti-fixes, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reality {
    Real,
    Imaginary,
    Neither,
}

impl Reality {
    pub fn name(self) -> &'static str {
        match self {
            Reality::Real => "real",
            Reality::Imaginary => "imaginary",
            Reality::Neither => "neither",
        }
    }
}

pub fn reality(c: &BigradedComplex, f: &Form) -> Reality {
    let s = c.sigma(f);
    if s == *f {
        Reality::Real
    } else if s == f.neg() {
        Reality::Imaginary
    } else {
        Reality::Neither
    }
}

/// Facts about one named `(2,0)`-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFact {
    pub name: String,
    pub form: Form,
    pub reality: Reality,
    pub del_closed: bool,
    pub delj_closed: bool,
    pub del_exact: bool,
    pub primitive: Option<Form>,
    /// Nonzero in `H^{2,0}_∂` (closed and not exact).
    pub dolbeault_class_nonzero: bool,
    /// Both-closed and not `∂∂_J`-exact.
    pub bott_chern_class_nonzero: bool,
}

pub fn generator_fact(c: &BigradedComplex, name: &str, f: &Form) -> Result<GeneratorFact> {
    let p = 2;
    let del_closed = c.apply(Operator::Del, f)?.is_zero();
    let delj_closed = c.apply(Operator::DelJ, f)?.is_zero();
    let prim = exact_primitive(c, CohomologyKind::Dolbeault, f, p)?;
    let bc_exact = exact_primitive(c, CohomologyKind::BottChern, f, p)?.is_some();
    Ok(GeneratorFact {
        name: name.to_string(),
        form: f.clone(),
        reality: reality(c, f),
        del_closed,
        delj_closed,
        del_exact: prim.is_some(),
        dolbeault_class_nonzero: del_closed && prim.is_none(),
        bott_chern_class_nonzero: del_closed && delj_closed && !bc_exact,
        primitive: prim.map(|p| p.beta),
    })
}

/// True iff the classes of `forms` in the given cohomology are linearly
/// independent over ℂ (every form must be closed for that kind).
pub fn classes_independent(c: &BigradedComplex, kind: CohomologyKind, p: usize, forms: &[Form]) -> Result<bool> {
    let dc = DelComplex::new(c)?;
    check_degree(c, p)?;
    let (num, den) = dc.pair(kind, p as isize);
    let vs: Vec<Vec<Scalar>> = forms.iter().map(|f| c.coords(f, p)).collect();
    if vs.iter().any(|v| !num.contains(v)) {
        return Ok(false);
    }
    let span = Subspace::span(den.ambient_dim(), vs, FieldTag::Complex);
    Ok(span.sum(&den).dim() - den.dim() == forms.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JbarSource {
    Dolbeault,
    BottChern,
}

impl JbarSource {
    pub fn kind(self) -> CohomologyKind {
        match self {
            JbarSource::Dolbeault => CohomologyKind::Dolbeault,
            JbarSource::BottChern => CohomologyKind::BottChern,
        }
    }
}

/// How a σ-eigenclass is counted.
///
/// `Literal`: any complex `∂`-closed form with `σφ = ±φ`; since `σ` is
/// anti-linear, `φ ↦ iφ` swaps the two eigenspaces, so the counts are the
/// real dimensions of two real forms of the same space.
///
/// `CoframeReal`: only forms with real coefficients in the `(1,0)`-coframe
/// monomials. These are the counts the examples in the literature tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JbarConvention {
    CoframeReal,
    Literal,
}

impl JbarConvention {
    pub fn name(self) -> &'static str {
        match self {
            JbarConvention::CoframeReal => "coframe-real",
            JbarConvention::Literal => "literal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JbarCounts {
    pub convention: JbarConvention,
    pub real_dim_plus: usize,
    pub real_dim_minus: usize,
    pub plus_basis: Vec<Form>,
    pub minus_basis: Vec<Form>,
    pub pure_over_r: bool,
    pub full_over_r: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JbarSubgroupReport {
    pub source: JbarSource,
    /// `dim_ℂ H^{2,0}` of the source cohomology.
    pub complex_dim: usize,
    pub coframe_real: JbarCounts,
    pub literal: JbarCounts,
    pub generators: Vec<GeneratorFact>,
}

impl JbarSubgroupReport {
    pub fn counts(&self, conv: JbarConvention) -> &JbarCounts {
        match conv {
            JbarConvention::CoframeReal => &self.coframe_real,
            JbarConvention::Literal => &self.literal,
        }
    }
}

/// Realified data of the σ-eigenspaces on closed `(2,0)`-forms.
struct RealSpaces {
    /// Closed forms `Z_ℝ`, exact forms `B_ℝ`.
    z: Subspace,
    b: Subspace,
    plus: Subspace,
    minus: Subspace,
}

fn real_spaces(c: &BigradedComplex, source: JbarSource, conv: JbarConvention) -> Result<RealSpaces> {
    let dc = DelComplex::new(c)?;
    let (num, den) = dc.pair(source.kind(), 2);
    let z = num.realify()?;
    let b = den.realify()?;
    let s = c.sigma_matrix(2).matrix;
    let n = s.rows();
    let id = Matrix::identity(n);
    let mut fix_plus = s.sub(&id).kernel(FieldTag::Real);
    let mut fix_minus = s.add(&id).kernel(FieldTag::Real);
    if conv == JbarConvention::CoframeReal {
        // real-coefficient vectors [r; 0]
        let half = n / 2;
        let lattice =
            Subspace::span(n, (0..half).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect(), FieldTag::Real);
        fix_plus = fix_plus.intersect(&lattice);
        fix_minus = fix_minus.intersect(&lattice);
    }
    Ok(RealSpaces { plus: z.intersect(&fix_plus), minus: z.intersect(&fix_minus), z, b })
}

/// Vectors of `cands` extending a basis of `den`, greedily.
fn extend_reps(den: &Subspace, cands: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut acc = den.clone();
    let mut out = Vec::new();
    for v in cands {
        if !acc.contains(v) {
            acc = acc.sum(&Subspace::span(acc.ambient_dim(), vec![v.clone()], acc.tag()));
            out.push(v.clone());
        }
    }
    out
}

fn image_dim(v: &Subspace, b: &Subspace) -> usize {
    v.sum(b).dim() - b.dim()
}

fn counts(c: &BigradedComplex, source: JbarSource, conv: JbarConvention, complex_dim: usize) -> Result<JbarCounts> {
    let rs = real_spaces(c, source, conv)?;
    let to_forms = |vs: Vec<Vec<Scalar>>| -> Vec<Form> { vs.iter().map(|v| c.form_from_coords(&complexify(v), 2)).collect() };
    let plus_reps = extend_reps(&rs.b, rs.plus.basis());
    let minus_reps = extend_reps(&rs.b, rs.minus.basis());
    let plus_img = rs.plus.sum(&rs.b);
    let minus_img = rs.minus.sum(&rs.b);
    let pure = plus_img.intersect(&minus_img).dim() == rs.b.dim();
    let both = image_dim(&rs.plus.sum(&rs.minus), &rs.b);
    let full = match conv {
        JbarConvention::Literal => both == rs.z.dim() - rs.b.dim(),
        // the real-coefficient classes form a real structure on H iff they fill half the real dimension
        JbarConvention::CoframeReal => both == complex_dim,
    };
    Ok(JbarCounts {
        convention: conv,
        real_dim_plus: plus_reps.len(),
        real_dim_minus: minus_reps.len(),
        plus_basis: to_forms(plus_reps),
        minus_basis: to_forms(minus_reps),
        pure_over_r: pure,
        full_over_r: full,
    })
}

pub fn jbar_subgroups(c: &BigradedComplex, source: JbarSource, named: &[(&str, Form)]) -> Result<JbarSubgroupReport> {
    c.require_integrable()?;
    if c.half() < 2 {
        return Err(Error::DegreeOutOfRange { degree: 2, max: c.half() });
    }
    let complex_dim = cohomology_group(c, source.kind(), 2)?.dim;
    let generators = named.iter().map(|(n, f)| generator_fact(c, n, f)).collect::<Result<Vec<_>>>()?;
    Ok(JbarSubgroupReport {
        source,
        complex_dim,
        coframe_real: counts(c, source, JbarConvention::CoframeReal, complex_dim)?,
        literal: counts(c, source, JbarConvention::Literal, complex_dim)?,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdjLemma {
    pub p: usize,
    pub holds: bool,
    /// `dim(ker ∂ ∩ im ∂_J)`.
    pub closed_exact_dim: usize,
    /// `dim im ∂∂_J`.
    pub ddj_exact_dim: usize,
    /// A `∂`-closed, `∂_J`-exact form that is not `∂∂_J`-exact.
    pub witness: Option<Form>,
}

pub fn ddj_lemma_check(c: &BigradedComplex, p: usize) -> Result<DdjLemma> {
    let dc = DelComplex::new(c)?;
    check_degree(c, p)?;
    let pi = p as isize;
    let lhs = dc.ker(Operator::Del, pi).intersect(&dc.im(Operator::DelJ, pi));
    let rhs = dc.im_ddj(pi);
    debug_assert!(lhs.contains_subspace(&rhs));
    let witness = lhs.basis().iter().find(|v| !rhs.contains(v)).map(|v| c.form_from_coords(v, p));
    Ok(DdjLemma { p, holds: witness.is_none(), closed_exact_dim: lhs.dim(), ddj_exact_dim: rhs.dim(), witness })
}

/// The lemma in every degree `0..=2n`.
pub fn ddj_lemma_all(c: &BigradedComplex) -> Result<Vec<DdjLemma>> {
    (0..=c.half()).map(|p| ddj_lemma_check(c, p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMapSide {
    pub bc_dim: usize,
    pub dolbeault_dim: usize,
    pub image_dim: usize,
    pub surjective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMapReport {
    pub convention: JbarConvention,
    pub plus: NaturalMapSide,
    pub minus: NaturalMapSide,
}

/// `H^{J̄,±}_{BC} → H^{J̄,±}_∂` induced by the identity on both-closed forms.
pub fn natural_map_check(c: &BigradedComplex, conv: JbarConvention) -> Result<NaturalMapReport> {
    let bc = real_spaces(c, JbarSource::BottChern, conv)?;
    let del = real_spaces(c, JbarSource::Dolbeault, conv)?;
    let side = |src: &Subspace, tgt: &Subspace| -> NaturalMapSide {
        let bc_dim = image_dim(src, &bc.b);
        let dolbeault_dim = image_dim(tgt, &del.b);
        let img = image_dim(src, &del.b);
        NaturalMapSide { bc_dim, dolbeault_dim, image_dim: img, surjective: img == dolbeault_dim, injective: img == bc_dim }
    };
    Ok(NaturalMapReport { convention: conv, plus: side(&bc.plus, &del.plus), minus: side(&bc.minus, &del.minus) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationReport {
    /// The lemma holds in every degree.
    pub lemma: bool,
    pub lemma_p2: bool,
    pub pure: bool,
    pub full: bool,
    pub literal_pure: bool,
    pub literal_full: bool,
    /// `lemma ⇒ pure ∧ full` with the coframe-real counts.
    pub holds: bool,
}

pub fn pure_full_implication(c: &BigradedComplex) -> Result<ImplicationReport> {
    let lemmas = ddj_lemma_all(c)?;
    let lemma = lemmas.iter().all(|l| l.holds);
    let lemma_p2 = lemmas.get(2).map_or(true, |l| l.holds);
    let j = jbar_subgroups(c, JbarSource::Dolbeault, &[])?;
    let (pure, full) = (j.coframe_real.pure_over_r, j.coframe_real.full_over_r);
    Ok(ImplicationReport {
        lemma,
        lemma_p2,
        pure,
        full,
        literal_pure: j.literal.pure_over_r,
        literal_full: j.literal.full_over_r,
        holds: !lemma || (pure && full),
    })
}

/// Real realified vector of a form, for callers building their own spans.
pub fn realified_coords(c: &BigradedComplex, f: &Form, p: usize) -> Vec<Scalar> {
    realify_vector(&c.coords(f, p))
}

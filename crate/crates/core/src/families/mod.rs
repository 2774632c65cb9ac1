//! The built-in parametrized families.

mod block;
mod classify;
mod sl;
mod sweep;

pub use block::{block_instance, block_triple, commutant_basis, recognize_block_form, BlockData, BlockDecomposition};
pub use classify::{classify, classify_with, operator_identities, AnalysisReport, ClassifyOptions, IdentityReport, IntegrableAnalysis, NamedForm};
pub use sl::{sl_check, SlReport};
pub use sweep::{default_grid, default_values, random_almost_abelian, random_points, summarize, sweep, sweep_points, Equivalence, Grid, SweepPoint, SweepResult, SweepSummary, MAX_POINTS};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::hypercomplex::{BigradedComplex, HypercomplexTriple};
use crate::instance::{Instance, Source};
use crate::lie::{Bracket, LieAlgebra};
use crate::linalg::{fmt_rational, rat, Matrix, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Gt,
    Nilpotent8,
    AlmostAbelian,
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Gt => "gt",
            FamilyId::Nilpotent8 => "nilpotent8",
            FamilyId::AlmostAbelian => "almost-abelian",
        }
    }

    /// Accepted parameter names, in canonical order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            FamilyId::Gt => &["t"],
            FamilyId::Nilpotent8 => &["t1", "t2", "t3", "t4"],
            FamilyId::AlmostAbelian => &["a11", "a21", "a13", "a23", "a", "v2", "v3", "v4", "v5"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gt" => Ok(FamilyId::Gt),
            "nilpotent8" => Ok(FamilyId::Nilpotent8),
            "almost-abelian" => Ok(FamilyId::AlmostAbelian),
            _ => Err(Error::BadParameters(format!("unknown family {s:?} (expected gt, nilpotent8, almost-abelian)"))),
        }
    }
}

/// A family id with named rational parameters. Omitted parameters are zero,
/// except `t` for `gt`, which is required.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub params: BTreeMap<String, Rational>,
}

impl FamilySpec {
    pub fn new(id: FamilyId, params: &[(&str, Rational)]) -> Self {
        FamilySpec { id, params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect() }
    }

    pub fn get(&self, name: &str) -> Rational {
        self.params.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    fn validate(&self) -> Result<()> {
        let allowed = self.id.parameters();
        for k in self.params.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::BadParameters(format!(
                    "family {} has no parameter {k:?} (expected one of {})",
                    self.id,
                    allowed.join(", ")
                )));
            }
        }
        if self.id == FamilyId::Gt {
            let t = self.params.get("t").ok_or_else(|| Error::BadParameters("gt requires t".into()))?;
            if !t.is_positive() || *t >= Rational::one() {
                return Err(Error::BadParameters(format!("gt requires 0 < t < 1, got {}", fmt_rational(t))));
            }
        }
        Ok(())
    }

    /// `id(name=value, …)` in canonical parameter order.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .id
            .parameters()
            .iter()
            .filter(|p| self.id == FamilyId::Gt || self.params.contains_key(**p))
            .map(|p| format!("{p}={}", fmt_rational(&self.get(p))))
            .collect();
        format!("{}({})", self.id, parts.join(","))
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Instance> {
    spec.validate()?;
    let inst = match spec.id {
        FamilyId::Gt => gt(spec)?,
        FamilyId::Nilpotent8 => nilpotent8(spec)?,
        FamilyId::AlmostAbelian => {
            let data = BlockData {
                n: 2,
                f_tilde: almost_abelian_matrix(
                    &spec.get("a11"),
                    &spec.get("a21"),
                    &spec.get("a13"),
                    &spec.get("a23"),
                ),
                a: spec.get("a"),
                v: ["v2", "v3", "v4", "v5"].iter().map(|k| spec.get(k)).collect(),
            };
            let mut inst = block_instance(&data)?;
            inst.source = Source::Family(spec.clone());
            inst.label = spec.describe();
            inst
        }
    };
    let jac = inst.algebra().validate_jacobi();
    debug_assert!(jac.holds, "family {} violates Jacobi at {:?}", spec.describe(), jac.violation);
    Ok(inst)
}

/// Vector tables of the standard 8-dimensional triple:
/// `Ie₁=e₂, Ie₃=e₄, Ie₅=e₆, Ie₇=e₈`, `Je₁=e₃, Je₂=−e₄, Je₅=e₇, Je₆=−e₈`.
pub fn standard_triple() -> HypercomplexTriple {
    HypercomplexTriple::from_tables(
        8,
        &[(0, 1, 1), (2, 1, 3), (4, 1, 5), (6, 1, 7)],
        &[(0, 1, 2), (1, -1, 3), (4, 1, 6), (5, -1, 7)],
    )
    .expect("standard triple is quaternionic")
}

fn bracket(i: usize, j: usize, terms: Vec<(usize, Rational)>) -> Bracket {
    Bracket { i: i - 1, j: j - 1, terms: terms.into_iter().map(|(k, c)| (k - 1, c)).collect() }
}

fn gt(spec: &FamilySpec) -> Result<Instance> {
    let t = spec.get("t");
    let s = Rational::one() - &t;
    let brackets = vec![
        bracket(1, 2, vec![(6, -t.clone())]),
        bracket(3, 4, vec![(6, s.clone())]),
        bracket(1, 3, vec![(7, -t.clone())]),
        bracket(2, 4, vec![(7, -s.clone())]),
        bracket(1, 4, vec![(8, -t.clone())]),
        bracket(2, 3, vec![(8, s)]),
    ];
    let g = LieAlgebra::new(8, None, &brackets)?;
    Instance::new(spec.describe(), g, standard_triple(), None, None, Source::Family(spec.clone()))
}

/// `∂φ³ = A₃ φ¹², ∂φ⁴ = A₄ φ¹²` with `A₃ = ½(t₂ − i t₃)`, `A₄ = ½(t₄ + i t₁)`,
/// completed by the `(1,1)`-parts `∂̄φ³ = −Ā₄ φ¹ᵇ¹`, `∂̄φ⁴ = Ā₃ φ¹ᵇ¹` which
/// make `J` integrable; the real brackets are read off from these.
fn nilpotent8(spec: &FamilySpec) -> Result<Instance> {
    let half = rat(1, 2);
    let a3 = Scalar::new(&half * spec.get("t2"), -&half * spec.get("t3"));
    let a4 = Scalar::new(&half * spec.get("t4"), &half * spec.get("t1"));
    let flat = BigradedComplex::new(LieAlgebra::abelian(8), standard_triple(), None)?;
    // θ-generators: 0..4 are φ¹..φ⁴, 4..8 their conjugates.
    let phi12 = Form::monomial(vec![0, 1], Scalar::one());
    let phi1b1 = Form::monomial(vec![0, 4], Scalar::one());
    let dphi3 = phi12.scale(&a3).sub(&phi1b1.scale(&a4.conj()));
    let dphi4 = phi12.scale(&a4).add(&phi1b1.scale(&a3.conj()));
    let mut dtheta = vec![Form::zero(), Form::zero(), dphi3, dphi4];
    let conjugates: Vec<Form> = dtheta.iter().map(|f| flat.conj(f)).collect();
    dtheta.extend(conjugates);
    let mut brackets = Vec::new();
    for k in 0..8 {
        let ek = flat.from_e(&Form::generator(k));
        let dek = flat.to_e(&ek.derivation(&dtheta));
        for (idx, c) in dek.terms() {
            if !c.is_real() {
                return Err(Error::InvalidAlgebra("non-real structure equations".into()));
            }
            brackets.push((idx[0], idx[1], k, -c.re.clone()));
        }
    }
    let mut merged: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for (i, j, k, c) in brackets {
        merged.entry((i, j)).or_default().push((k, c));
    }
    let list: Vec<Bracket> = merged.into_iter().map(|((i, j), terms)| Bracket { i, j, terms }).collect();
    let g = LieAlgebra::new(8, None, &list)?;
    Instance::new(spec.describe(), g, standard_triple(), None, None, Source::Family(spec.clone()))
}

/// The general element of the commutant of `I, J` on `⟨e₂,…,e₅⟩` in the
/// 8-dimensional almost-abelian construction.
pub fn almost_abelian_matrix(a11: &Rational, a21: &Rational, a13: &Rational, a23: &Rational) -> Matrix {
    let r = |x: &Rational| Scalar::real(x.clone());
    let n = |x: &Rational| Scalar::real(-x.clone());
    Matrix::from_rows(vec![
        vec![r(a11), n(a21), r(a13), n(a23)],
        vec![r(a21), r(a11), r(a23), r(a13)],
        vec![n(a13), n(a23), r(a11), r(a21)],
        vec![r(a23), n(a13), n(a21), r(a11)],
    ])
}

/// Named (2,0)-forms used in the family analyses, in `θ`-generators.
pub fn named_forms(spec: &FamilySpec) -> Vec<(&'static str, Form)> {
    let m = |i: usize, j: usize| Form::monomial(vec![i - 1, j - 1], Scalar::one());
    match spec.id {
        FamilyId::Gt => vec![
            ("phi12", m(1, 2)),
            ("phi13+phi24", m(1, 3).add(&m(2, 4))),
            ("phi14-phi23", m(1, 4).sub(&m(2, 3))),
            ("phi13-phi24", m(1, 3).sub(&m(2, 4))),
            ("phi14+phi23", m(1, 4).add(&m(2, 3))),
        ],
        FamilyId::Nilpotent8 => vec![
            ("Phi1", m(1, 3).sub(&m(2, 4))),
            ("Phi2", m(1, 4).add(&m(2, 3))),
            ("Psi1", m(1, 2)),
            ("Psi2", m(3, 4)),
            ("Psi3", m(1, 3).add(&m(2, 4))),
            ("Psi4", m(1, 4).sub(&m(2, 3))),
        ],
        FamilyId::AlmostAbelian => vec![
            ("Omega", m(1, 4).add(&m(2, 3))),
            ("Phi1", m(1, 2).sub(&m(4, 3))),
            ("Phi2", m(1, 3).sub(&m(2, 4))),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::{Operator, Structure};
    use crate::linalg::int;

    fn t(n: i64, d: i64) -> FamilySpec {
        FamilySpec::new(FamilyId::Gt, &[("t", rat(n, d))])
    }

    #[test]
    fn gt_structure_equations() {
        let inst = build_family(&t(1, 3)).unwrap();
        let g = inst.algebra();
        assert!(g.validate_jacobi().holds);
        assert!(g.is_nilpotent());
        assert!(inst.complex.is_integrable());
        let de = g.de();
        // de⁶ = t e¹² − (1−t) e³⁴
        assert_eq!(de[5], Form::from_terms([(vec![0, 1], Scalar::real(rat(1, 3))), (vec![2, 3], Scalar::real(rat(-2, 3)))]));
        // de⁷ = t e¹³ − (t−1) e²⁴
        assert_eq!(de[6], Form::from_terms([(vec![0, 2], Scalar::real(rat(1, 3))), (vec![1, 3], Scalar::real(rat(2, 3)))]));
        assert!(g.find_codim1_abelian_ideal().is_none());
        assert!(build_family(&t(1, 1)).is_err());
        assert!(build_family(&FamilySpec::new(FamilyId::Gt, &[])).is_err());
    }

    #[test]
    fn gt_del_phi4() {
        let inst = build_family(&t(1, 3)).unwrap();
        let c = &inst.complex;
        // ∂φ⁴ = (t − ½) φ¹²
        let d = c.apply(Operator::Del, &c.theta(&[3])).unwrap();
        assert_eq!(d, Form::monomial(vec![0, 1], Scalar::real(rat(-1, 6))));
        assert_eq!(c.operator_matrix(Operator::Del, 1).unwrap().matrix.rank(), 1);
    }

    #[test]
    fn nilpotent8_regenerates_structure_equations() {
        let spec = FamilySpec::new(FamilyId::Nilpotent8, &[("t1", int(1)), ("t2", int(2)), ("t3", int(3)), ("t4", int(5))]);
        let inst = build_family(&spec).unwrap();
        let c = &inst.complex;
        assert!(inst.algebra().validate_jacobi().holds);
        assert!(c.is_integrable());
        assert!(inst.algebra().is_nilpotent());
        let del3 = c.apply(Operator::Del, &c.theta(&[2])).unwrap();
        let del4 = c.apply(Operator::Del, &c.theta(&[3])).unwrap();
        assert_eq!(del3, Form::monomial(vec![0, 1], Scalar::new(int(1), rat(-3, 2))));
        assert_eq!(del4, Form::monomial(vec![0, 1], Scalar::new(rat(5, 2), rat(1, 2))));
        for s in Structure::ALL {
            assert!(c.nijenhuis(s).integrable);
        }
        let zero = build_family(&FamilySpec::new(FamilyId::Nilpotent8, &[])).unwrap();
        assert!(zero.algebra().is_abelian());
    }

    #[test]
    fn unknown_parameter() {
        let spec = FamilySpec::new(FamilyId::Nilpotent8, &[("t9", int(1))]);
        assert!(matches!(build_family(&spec), Err(Error::BadParameters(_))));
    }
}

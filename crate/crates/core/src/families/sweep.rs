//! Parameter sweeps over the built-in families and random block-form instances.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use super::classify::{classify_with, AnalysisReport, ClassifyOptions};
use super::{build_family, commutant_basis, BlockData, FamilyId, FamilySpec};
use crate::cohomology::CohomologyKind;
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rational, Scalar};

/// Most instances a single sweep may build.
pub const MAX_POINTS: usize = 2000;

/// Per-parameter values; the sweep walks their cartesian product with the
/// last axis varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub family: FamilyId,
    pub axes: Vec<(String, Vec<Rational>)>,
}

impl Grid {
    pub fn new(family: FamilyId, axes: Vec<(String, Vec<Rational>)>) -> Self {
        Grid { family, axes }
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Result<Vec<FamilySpec>> {
        let n = self.len();
        if n > MAX_POINTS {
            return Err(Error::BadParameters(format!("grid has {n} points, the limit is {MAX_POINTS}")));
        }
        let mut out = Vec::with_capacity(n);
        for mut k in 0..n {
            let mut params = vec![(String::new(), Rational::zero()); self.axes.len()];
            for (slot, (name, vals)) in params.iter_mut().zip(&self.axes).rev() {
                *slot = (name.clone(), vals[k % vals.len()].clone());
                k /= vals.len();
            }
            let params: Vec<(&str, Rational)> = params.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
            out.push(FamilySpec::new(self.family, &params));
        }
        Ok(out)
    }
}

pub fn default_values() -> Vec<Rational> {
    vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]
}

/// `{−1, −½, 0, ½, 1}` on every parameter; for `gt` the interior points
/// `{¼, ⅓, ½, ⅔, ¾}`. The almost-abelian default varies `a₁₁, a₂₁, a, v₂`
/// only, since the full product exceeds the sweep limit.
pub fn default_grid(family: FamilyId) -> Grid {
    let axes: Vec<&str> = match family {
        FamilyId::Gt => vec!["t"],
        FamilyId::Nilpotent8 => vec!["t1", "t2", "t3", "t4"],
        FamilyId::AlmostAbelian => vec!["a11", "a21", "a", "v2"],
    };
    let vals = |name: &str| {
        if name == "t" {
            vec![rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)]
        } else {
            default_values()
        }
    };
    Grid::new(family, axes.into_iter().map(|a| (a.to_string(), vals(a))).collect())
}

/// Small random rational `p/q` with `|p| ≤ 3`, `q ∈ {1,2,3}`.
fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// Random block data in quaternionic dimension `n`. Each draw picks skew or
/// generic `f̃`, zero or random `v`, and `a` random, zero, on the SL locus
/// (`a = −¼ tr f̃`) or on the unimodular locus (`a = −⅓ tr f̃`), so every
/// branch of the classification is exercised.
pub fn random_almost_abelian<R: Rng>(rng: &mut R, n: usize) -> Result<BlockData> {
    let basis = commutant_basis(n)?;
    let m = 4 * (n - 1);
    let mut f = Matrix::zeros(m, m);
    for b in &basis {
        if rng.gen_bool(0.7) {
            f = f.add(&b.scale(&Scalar::real(small_rational(rng))));
        }
    }
    if rng.gen_bool(0.5) {
        f = f.sub(&f.transpose()).scale(&Scalar::real(rat(1, 2)));
    }
    let tr = (0..m).map(|i| f[(i, i)].re.clone()).fold(Rational::zero(), |a, b| a + b);
    let a = match rng.gen_range(0..4) {
        0 => small_rational(rng),
        1 => Rational::zero(),
        2 => -tr.clone() / Rational::from_integer(4.into()),
        _ => -tr / Rational::from_integer(3.into()),
    };
    let v = if rng.gen_bool(0.5) { vec![Rational::zero(); m] } else { (0..m).map(|_| small_rational(rng)).collect() };
    Ok(BlockData { n, f_tilde: f, a, v })
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub spec: FamilySpec,
    pub report: std::result::Result<AnalysisReport, Error>,
}

/// An equivalence tested at every grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub name: String,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub points: usize,
    pub errors: usize,
    pub equivalences: Vec<Equivalence>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub family: FamilyId,
    pub points: Vec<SweepPoint>,
    pub summary: SweepSummary,
}

pub fn sweep(grid: &Grid) -> Result<SweepResult> {
    sweep_points(grid.family, grid.points()?)
}

/// `count` random parameter choices, each parameter drawn independently as a
/// small rational (`gt` draws `t = p/q` strictly inside `(0,1)`).
pub fn random_points<R: Rng>(family: FamilyId, count: usize, rng: &mut R) -> Result<Vec<FamilySpec>> {
    if count > MAX_POINTS {
        return Err(Error::BadParameters(format!("{count} random points requested, the limit is {MAX_POINTS}")));
    }
    Ok((0..count)
        .map(|_| {
            let params: Vec<(&str, Rational)> = match family {
                FamilyId::Gt => {
                    let q = rng.gen_range(2..=6);
                    vec![("t", rat(rng.gen_range(1..q), q))]
                }
                _ => family.parameters().iter().map(|p| (*p, small_rational(rng))).collect(),
            };
            FamilySpec::new(family, &params)
        })
        .collect())
}

/// Classifies each point (without the P operator and natural maps) and
/// checks the family's equivalences. Output order follows `specs`.
pub fn sweep_points(family: FamilyId, specs: Vec<FamilySpec>) -> Result<SweepResult> {
    if specs.len() > MAX_POINTS {
        return Err(Error::BadParameters(format!("{} points, the limit is {MAX_POINTS}", specs.len())));
    }
    if let Some(s) = specs.iter().find(|s| s.id != family) {
        return Err(Error::BadParameters(format!("point {} is not in family {family}", s.describe())));
    }
    let opts = ClassifyOptions { operator_p: false, natural_maps: false };
    let points: Vec<SweepPoint> = specs
        .into_par_iter()
        .map(|spec| {
            let report = build_family(&spec).and_then(|i| classify_with(&i, opts));
            SweepPoint { spec, report }
        })
        .collect();
    let summary = summarize(family, &points);
    Ok(SweepResult { family, points, summary })
}

type Predicate = fn(&FamilySpec, &AnalysisReport) -> Option<bool>;

fn named(r: &AnalysisReport, name: &str) -> Option<crate::cohomology::GeneratorFact> {
    r.analysis.as_ref()?.named(name).cloned()
}

fn all_zero(spec: &FamilySpec, names: &[&str]) -> bool {
    names.iter().all(|n| spec.get(n).is_zero())
}

fn family_equivalences(family: FamilyId) -> Vec<(&'static str, Predicate)> {
    let common: Vec<(&'static str, Predicate)> = vec![
        ("hkt method A = method B", |_, r| r.analysis.as_ref().map(|a| a.hkt.method_a == a.hkt.method_b)),
        ("hyperkahler => hkt", |_, r| r.analysis.as_ref().map(|a| !a.hyperkahler || a.hkt.hkt)),
        ("SL => 0 <= h_BC - h_del <= 1", |_, r| {
            let a = r.analysis.as_ref()?;
            if !a.sl.sl {
                return Some(true);
            }
            let gap = a.dim2(CohomologyKind::BottChern) as i64 - a.dim2(CohomologyKind::Dolbeault) as i64;
            Some((0..=1).contains(&gap))
        }),
        ("SL => (h_BC = h_del <=> HKT)", |_, r| {
            let a = r.analysis.as_ref()?;
            if !a.sl.sl {
                return Some(true);
            }
            Some((a.dim2(CohomologyKind::BottChern) == a.dim2(CohomologyKind::Dolbeault)) == a.hkt.hkt)
        }),
        ("ddJ-lemma => pure and full", |_, r| r.analysis.as_ref().map(|a| a.implication.holds)),
    ];
    let specific: Vec<(&'static str, Predicate)> = match family {
        FamilyId::Gt => vec![
            ("abelian <=> t = 1/2", |s, r| r.analysis.as_ref().map(|a| a.abelian_hypercomplex == (s.get("t") == rat(1, 2)))),
            ("phi12 del-exact <=> t != 1/2", |s, r| named(r, "phi12").map(|f| f.del_exact == (s.get("t") != rat(1, 2)))),
        ],
        FamilyId::Nilpotent8 => vec![
            ("hkt <=> t = 0", |s, r| r.analysis.as_ref().map(|a| a.hkt.hkt == all_zero(s, &["t1", "t2", "t3", "t4"]))),
            ("hkt <=> abelian", |_, r| r.analysis.as_ref().map(|a| a.hkt.hkt == a.abelian_hypercomplex)),
            ("Phi1, Phi2 closed and not exact", |_, r| {
                let ok = |n| named(r, n).map(|f| f.del_closed && !f.del_exact);
                Some(ok("Phi1")? && ok("Phi2")?)
            }),
            ("Psi3, Psi4 closed", |_, r| Some(named(r, "Psi3")?.del_closed && named(r, "Psi4")?.del_closed)),
            ("Psi1 exact <=> t != 0", |s, r| named(r, "Psi1").map(|f| f.del_exact == !all_zero(s, &["t1", "t2", "t3", "t4"]))),
            ("Psi1 exact <=> Psi2 not closed", |_, r| Some(named(r, "Psi1")?.del_exact == !named(r, "Psi2")?.del_closed)),
        ],
        FamilyId::AlmostAbelian => vec![
            ("hkt <=> (f skew and v = 0)", |s, r| {
                let skew = all_zero(s, &["a11"]);
                r.analysis.as_ref().map(|a| a.hkt.hkt == (skew && all_zero(s, &["v2", "v3", "v4", "v5"])))
            }),
            ("hyperkahler <=> (hkt and a = 0)", |s, r| r.analysis.as_ref().map(|a| a.hyperkahler == (a.hkt.hkt && s.get("a").is_zero()))),
            ("SL <=> a + a11 = 0", |s, r| r.analysis.as_ref().map(|a| a.sl.sl == (s.get("a") + s.get("a11")).is_zero())),
            ("unimodular <=> 3a + 4a11 = 0", |s, r| {
                let three = Rational::from_integer(3.into());
                let four = Rational::from_integer(4.into());
                Some(r.unimodular == (three * s.get("a") + four * s.get("a11")).is_zero())
            }),
            ("unimodular => (hkt <=> hyperkahler)", |_, r| r.analysis.as_ref().map(|a| !r.unimodular || a.hkt.hkt == a.hyperkahler)),
            ("del Omega = 0 <=> a11 = v = 0", |s, r| {
                named(r, "Omega").map(|f| f.del_closed == all_zero(s, &["a11", "v2", "v3", "v4", "v5"]))
            }),
            ("del Phi1 = 0 <=> a11 = a, a21 = a13 = a23 = 0", |s, r| {
                named(r, "Phi1").map(|f| f.del_closed == (s.get("a11") == s.get("a") && all_zero(s, &["a21", "a13", "a23"])))
            }),
            ("del Phi2 = 0 <=> a11 = -a, a21 = a13 = a23 = 0", |s, r| {
                named(r, "Phi2").map(|f| f.del_closed == (s.get("a11") == -s.get("a") && all_zero(s, &["a21", "a13", "a23"])))
            }),
            ("unimodular and SL => (imaginary class <=> f = 0 and a = 0)", |s, r| {
                let a = r.analysis.as_ref()?;
                if !(r.unimodular && a.sl.sl) {
                    return Some(true);
                }
                let flat = all_zero(s, &["a11", "a21", "a13", "a23", "a"]);
                Some((a.closed_nonexact_imaginary_dim > 0) == flat && (!flat || r.nilpotent))
            }),
        ],
    };
    common.into_iter().chain(specific).collect()
}

pub fn summarize(family: FamilyId, points: &[SweepPoint]) -> SweepSummary {
    let mut equivalences: Vec<Equivalence> = family_equivalences(family)
        .iter()
        .map(|(name, _)| Equivalence { name: name.to_string(), checked: 0, counterexamples: Vec::new() })
        .collect();
    let mut errors = 0;
    for p in points {
        let Ok(r) = &p.report else {
            errors += 1;
            continue;
        };
        for (eq, (_, pred)) in equivalences.iter_mut().zip(family_equivalences(family)) {
            if let Some(ok) = pred(&p.spec, r) {
                eq.checked += 1;
                if !ok {
                    eq.counterexamples.push(p.spec.describe());
                }
            }
        }
    }
    SweepSummary { points: points.len(), errors, equivalences }
}

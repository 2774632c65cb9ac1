//! Almost-abelian hypercomplex algebras `ℝ ⋉_f 𝔲` in block form.

use num_traits::Zero;

use super::{FamilyId, FamilySpec};
use crate::error::{Error, Result};
use crate::hypercomplex::{HypercomplexTriple, Structure};
use crate::instance::{Instance, Source};
use crate::lie::{Bracket, LieAlgebra};
use crate::linalg::{FieldTag, Matrix, Rational, Scalar};

/// `(f̃, a, v)` for the derivation
/// `f = [[f̃, −Jv, Kv, v], [0, a, 0, 0], [0, 0, a, 0], [0, 0, 0, a]]` on
/// `𝔲 = 𝔲_{I,J} ⊕ ⟨KX⟩ ⊕ ⟨JX⟩ ⊕ ⟨IX⟩`, in the standard basis where
/// `X = e₁`, `𝔲_{I,J} = ⟨e₂,…,e_{4n−3}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    pub n: usize,
    pub f_tilde: Matrix,
    pub a: Rational,
    pub v: Vec<Rational>,
}

impl BlockData {
    pub fn is_skew(&self) -> bool {
        self.f_tilde.add(&self.f_tilde.transpose()).is_zero()
    }

    pub fn v_is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.f_tilde.rows()).map(|i| self.f_tilde[(i, i)].re.clone()).fold(Rational::zero(), |a, b| a + b)
    }
}

/// Result of recognizing an almost-abelian algebra in block form.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub x: Vec<Rational>,
    /// Basis of `𝔲_{I,J}` used for `f̃` and `v`.
    pub u_ij: Vec<Vec<Scalar>>,
    pub f_tilde: Matrix,
    pub a: Rational,
    pub v: Vec<Rational>,
}

/// The triple on `ℝ^{4n}`: `Ie₁ = e_{4n}`, `Je₁ = e_{4n−1}`, `Ke₁ = −e_{4n−2}`,
/// with `⟨e₂,…,e_{4n−3}⟩` in blocks of four
/// (`Ie_b = e_{b+1}`, `Ie_{b+2} = e_{b+3}`, `Je_b = e_{b+2}`, `Je_{b+1} = −e_{b+3}`).
pub fn block_triple(n: usize) -> Result<HypercomplexTriple> {
    if n == 0 {
        return Err(Error::BadParameters("n must be positive".into()));
    }
    let d = 4 * n;
    let mut i = vec![(0, 1, d - 1), (d - 3, 1, d - 2)];
    let mut j = vec![(0, 1, d - 2), (d - 3, -1, d - 1)];
    for b in 0..n - 1 {
        let base = 1 + 4 * b;
        i.extend([(base, 1, base + 1), (base + 2, 1, base + 3)]);
        j.extend([(base, 1, base + 2), (base + 1, -1, base + 3)]);
    }
    HypercomplexTriple::from_tables(d, &i, &j)
}

/// `φ¹ = e¹ + i e^{4n}`, the `𝔲_{I,J}` pairs `e^b + i e^{b+1}`, and
/// `φ^{2n} = e^{4n−1} − i e^{4n−2}`.
pub fn block_coframe(n: usize) -> Vec<Vec<Scalar>> {
    let d = 4 * n;
    let form = |re: usize, im: usize, sign: i64| {
        let mut v = vec![Scalar::zero(); d];
        v[re] = Scalar::one();
        v[im] = Scalar::new(Rational::zero(), Rational::from_integer(sign.into()));
        v
    };
    let mut out = vec![form(0, d - 1, 1)];
    for b in 0..n - 1 {
        let base = 1 + 4 * b;
        out.push(form(base, base + 1, 1));
        out.push(form(base + 2, base + 3, 1));
    }
    out.push(form(d - 2, d - 3, -1));
    out
}

/// Restriction of `L ∈ {I, J}` to `⟨e₂,…,e_{4n−3}⟩`.
fn restricted(triple: &HypercomplexTriple, s: Structure, n: usize) -> Matrix {
    let idx: Vec<usize> = (1..4 * n - 3).collect();
    triple.get(s).select(&idx, &idx)
}

/// Basis of `{A : [A, I] = [A, J] = 0}` on `𝔲_{I,J}`.
pub fn commutant_basis(n: usize) -> Result<Vec<Matrix>> {
    let t = block_triple(n)?;
    let m = 4 * (n - 1);
    let (ri, rj) = (restricted(&t, Structure::I, n), restricted(&t, Structure::J, n));
    let unit = |k: usize| {
        let mut a = Matrix::zeros(m, m);
        a[(k / m, k % m)] = Scalar::one();
        a
    };
    let cols: Vec<Vec<Scalar>> = (0..m * m)
        .map(|k| {
            let a = unit(k);
            let ci = a.mul(&ri).sub(&ri.mul(&a));
            let cj = a.mul(&rj).sub(&rj.mul(&a));
            let mut v: Vec<Scalar> = Vec::new();
            for c in [ci, cj] {
                for r in 0..m {
                    v.extend_from_slice(c.row(r));
                }
            }
            v
        })
        .collect();
    if m == 0 {
        return Ok(Vec::new());
    }
    let sys = Matrix::from_columns(2 * m * m, &cols);
    Ok(sys
        .kernel(FieldTag::Complex)
        .basis()
        .iter()
        .map(|v| {
            let mut a = Matrix::zeros(m, m);
            for (k, x) in v.iter().enumerate() {
                a[(k / m, k % m)] = x.clone();
            }
            a
        })
        .collect())
}

/// Builds the almost-abelian instance `ℝe₁ ⋉_f 𝔲` from block data.
pub fn block_instance(data: &BlockData) -> Result<Instance> {
    let n = data.n;
    let triple = block_triple(n)?;
    let m = 4 * (n - 1);
    if data.f_tilde.rows() != m || data.f_tilde.cols() != m || data.v.len() != m {
        return Err(Error::BadParameters(format!("block data for n = {n} needs a {m}x{m} matrix and {m}-vector")));
    }
    if !data.f_tilde.is_real() {
        return Err(Error::BadParameters("f̃ must be real".into()));
    }
    let (ri, rj) = (restricted(&triple, Structure::I, n), restricted(&triple, Structure::J, n));
    if data.f_tilde.mul(&ri) != ri.mul(&data.f_tilde) || data.f_tilde.mul(&rj) != rj.mul(&data.f_tilde) {
        return Err(Error::BadParameters("f̃ must commute with I and J on u_IJ".into()));
    }
    let d = 4 * n;
    let mut v_full = vec![Scalar::zero(); d];
    for (k, x) in data.v.iter().enumerate() {
        v_full[1 + k] = Scalar::real(x.clone());
    }
    let jv = triple.j.mul_vec(&v_full);
    let kv = triple.k.mul_vec(&v_full);
    // columns of ad_{e₁} on e₂..e_{4n}
    let mut f = Matrix::zeros(d, d);
    for c in 0..m {
        for r in 0..m {
            f[(1 + r, 1 + c)] = data.f_tilde[(r, c)].clone();
        }
    }
    let a = Scalar::real(data.a.clone());
    // KX = −e_{4n−2}:  [e₁, e_{4n−2}] = −f(KX) = a e_{4n−2} + Jv
    for r in 0..d {
        f[(r, d - 3)] = jv[r].clone();
        f[(r, d - 2)] = kv[r].clone();
        f[(r, d - 1)] = v_full[r].clone();
    }
    f[(d - 3, d - 3)] += &a;
    f[(d - 2, d - 2)] += &a;
    f[(d - 1, d - 1)] += &a;
    let algebra = algebra_from_ad(d, &f)?;
    let label = format!("almost-abelian(n={n})");
    let spec_source = if n == 2 { Some(spec_from_block(data)) } else { None };
    let source = spec_source.map_or(Source::Explicit, Source::Family);
    Instance::new(label, algebra, triple, Some(block_coframe(n)), None, source)
}

/// Semidirect product `ℝe₁ ⋉ 𝔲` with `[e₁, e_c] = Σ_r f[r][c] e_r`.
pub(crate) fn algebra_from_ad(d: usize, f: &Matrix) -> Result<LieAlgebra> {
    let brackets: Vec<Bracket> = (1..d)
        .filter_map(|c| {
            let terms: Vec<(usize, Rational)> =
                (0..d).filter(|&r| !f[(r, c)].is_zero()).map(|r| (r, f[(r, c)].re.clone())).collect();
            (!terms.is_empty()).then_some(Bracket { i: 0, j: c, terms })
        })
        .collect();
    LieAlgebra::new(d, None, &brackets)
}

fn spec_from_block(data: &BlockData) -> FamilySpec {
    let f = &data.f_tilde;
    let mut params = vec![
        ("a11", f[(0, 0)].re.clone()),
        ("a21", f[(1, 0)].re.clone()),
        ("a13", f[(0, 2)].re.clone()),
        ("a23", f[(1, 2)].re.clone()),
        ("a", data.a.clone()),
    ];
    for (k, name) in ["v2", "v3", "v4", "v5"].iter().enumerate() {
        params.push((name, data.v[k].clone()));
    }
    let params: Vec<(&str, Rational)> = params.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    FamilySpec::new(FamilyId::AlmostAbelian, &params)
}

/// Recovers `(f̃, a, v)` from an almost-abelian hypercomplex algebra.
///
/// `x` defaults to the metric normal of the codimension-one abelian ideal.
/// `X ∉ 𝔲` and `IX, JX, KX ∈ 𝔲` are required (`NOT_ALMOST_ABELIAN`); a
/// derivation not of the integrable block shape gives `NOT_INTEGRABLE_SHAPE`.
pub fn recognize_block_form(
    g: &LieAlgebra,
    triple: &HypercomplexTriple,
    gram: &Matrix,
    x: Option<Vec<Rational>>,
) -> Result<BlockDecomposition> {
    let d = g.dim();
    let ideal = g
        .find_codim1_abelian_ideal()
        .ok_or_else(|| Error::NotAlmostAbelian("no codimension-one abelian ideal".into()))?;
    let u = ideal.ideal;
    let x = match x {
        Some(x) => x,
        None => {
            let xi: Vec<Scalar> = ideal.annihilator.iter().cloned().map(Scalar::real).collect();
            let inv = gram.inverse().ok_or_else(|| Error::NotAlmostAbelian("degenerate metric".into()))?;
            inv.mul_vec(&xi).into_iter().map(|s| s.re).collect()
        }
    };
    if x.len() != d {
        return Err(Error::DimensionMismatch(format!("X has {} coordinates, expected {d}", x.len())));
    }
    let xs: Vec<Scalar> = x.iter().cloned().map(Scalar::real).collect();
    if u.contains(&xs) {
        return Err(Error::NotAlmostAbelian("X lies in the abelian ideal".into()));
    }
    let lx = |s: Structure| triple.get(s).mul_vec(&xs);
    let (ix, jx, kx) = (lx(Structure::I), lx(Structure::J), lx(Structure::K));
    for (name, v) in [("IX", &ix), ("JX", &jx), ("KX", &kx)] {
        if !u.contains(v) {
            return Err(Error::NotAlmostAbelian(format!("{name} is not in the abelian ideal")));
        }
    }
    let u_ij = u.intersect(&u.map(&triple.i)).intersect(&u.map(&triple.j)).intersect(&u.map(&triple.k));
    let m = u_ij.dim();
    if m + 3 != u.dim() {
        return Err(Error::NotAlmostAbelian("u_IJ does not have codimension 3 in u".into()));
    }
    // coordinates in the splitting basis (u_IJ, KX, JX, IX)
    let mut cols: Vec<Vec<Scalar>> = u_ij.basis().to_vec();
    cols.extend([kx.clone(), jx.clone(), ix.clone()]);
    let split = Matrix::from_columns(d, &cols);
    let ad_x = {
        let mut m = Matrix::zeros(d, d);
        for c in 0..d {
            let mut e = vec![Scalar::zero(); d];
            e[c] = Scalar::one();
            let col = g.bracket_scalar(&xs, &e);
            for r in 0..d {
                m[(r, c)] = col[r].clone();
            }
        }
        m
    };
    let coords = |w: &[Scalar]| -> Result<Vec<Scalar>> {
        split.solve(w).ok_or_else(|| Error::NotIntegrableShape("ad_X does not preserve u".into()))
    };
    let mut f = Matrix::zeros(m + 3, m + 3);
    for (c, col) in cols.iter().enumerate() {
        let img = coords(&ad_x.mul_vec(col))?;
        for r in 0..m + 3 {
            f[(r, c)] = img[r].clone();
        }
    }
    let inner: Vec<usize> = (0..m).collect();
    let f_tilde = f.select(&inner, &inner);
    let a = f[(m + 2, m + 2)].clone();
    let v_coords: Vec<Scalar> = (0..m).map(|r| f[(r, m + 2)].clone()).collect();
    let v_vec: Vec<Scalar> = {
        let mut acc = vec![Scalar::zero(); d];
        for (b, c) in u_ij.basis().iter().zip(&v_coords) {
            for (o, y) in acc.iter_mut().zip(b) {
                *o += &(y * c);
            }
        }
        acc
    };
    let shape_err = |what: &str| Err(Error::NotIntegrableShape(what.into()));
    for r in m..m + 3 {
        for c in 0..m {
            if !f[(r, c)].is_zero() {
                return shape_err("f does not preserve u_IJ");
            }
        }
        for c in m..m + 3 {
            let expect = if r == c { a.clone() } else { Scalar::zero() };
            if f[(r, c)] != expect {
                return shape_err("f is not a·Id on <KX, JX, IX> modulo u_IJ");
            }
        }
    }
    let expect_col = |c: usize, w: Vec<Scalar>| -> Result<bool> {
        let cw = coords(&w)?;
        Ok((0..m).all(|r| f[(r, c)] == cw[r]))
    };
    let minus_jv: Vec<Scalar> = triple.j.mul_vec(&v_vec).iter().map(|s| -s).collect();
    if !expect_col(m, minus_jv)? {
        return shape_err("f(KX) ≠ a·KX − Jv");
    }
    if !expect_col(m + 1, triple.k.mul_vec(&v_vec))? {
        return shape_err("f(JX) ≠ a·JX + Kv");
    }
    // f̃ must commute with I and J on u_IJ
    let basis_m = Matrix::from_columns(d, u_ij.basis());
    let restrict = |l: &Matrix| -> Result<Matrix> {
        let mut out = Matrix::zeros(m, m);
        for c in 0..m {
            let img = basis_m.solve(&l.mul_vec(&u_ij.basis()[c])).expect("u_IJ is I,J-invariant");
            for r in 0..m {
                out[(r, c)] = img[r].clone();
            }
        }
        Ok(out)
    };
    for s in [Structure::I, Structure::J] {
        let l = restrict(triple.get(s))?;
        if f_tilde.mul(&l) != l.mul(&f_tilde) {
            return shape_err(&format!("f̃ does not commute with {}", s.name()));
        }
    }
    Ok(BlockDecomposition {
        x,
        u_ij: u_ij.basis().to_vec(),
        f_tilde,
        a: a.re,
        v: v_coords.into_iter().map(|s| s.re).collect(),
    })
}

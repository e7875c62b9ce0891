//! Rank varieties as finite sets of canonical orbit representatives over
//! `F_{p^e}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{exponent_vectors, AlgebraElement, HopfAlgebra};
use crate::rep::{induce_r, induce_rq, quotient, regular_rep, ModuleRep, RModule, RqModule};
use crate::scalars::{Fe, Field, FieldCtx, Mat};

/// A point of `P^{n-1}(F_{p^e})` in normal form: the first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PPoint {
    degree: u32,
    coords: Vec<Fe>,
}

impl PPoint {
    /// Normalizes a nonzero vector over `field`.
    pub fn new(field: &Field, coords: Vec<Fe>) -> Result<PPoint> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = field.inv(*lead).expect("nonzero");
        let coords = coords.iter().map(|&c| field.mul(c, inv)).collect();
        Ok(PPoint { degree: field.degree(), coords })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.0).collect()
    }
}

/// Canonical orbit representatives per extension degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySet {
    sets: BTreeMap<u32, BTreeSet<PPoint>>,
}

impl VarietySet {
    /// The empty variety sampled at the given degrees.
    pub fn empty(degrees: &[u32]) -> VarietySet {
        VarietySet { sets: degrees.iter().map(|&e| (e, BTreeSet::new())).collect() }
    }

    /// Every orbit, i.e. `P^{n-1}/G`, at the given degrees.
    pub fn full(ctx: &FieldCtx, degrees: &[u32]) -> Result<VarietySet> {
        let mut v = VarietySet::empty(degrees);
        for &e in degrees {
            v.sets.insert(e, orbit_representatives(ctx, e)?.into_iter().collect());
        }
        Ok(v)
    }

    pub fn from_sets(sets: BTreeMap<u32, BTreeSet<PPoint>>) -> VarietySet {
        VarietySet { sets }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.sets.keys().copied().collect()
    }

    pub fn at(&self, e: u32) -> Option<&BTreeSet<PPoint>> {
        self.sets.get(&e)
    }

    pub fn sets(&self) -> &BTreeMap<u32, BTreeSet<PPoint>> {
        &self.sets
    }

    pub fn is_empty(&self) -> bool {
        self.sets.values().all(|s| s.is_empty())
    }

    pub fn len(&self) -> usize {
        self.sets.values().map(|s| s.len()).sum()
    }

    /// `self ⊆ other` at every degree.
    pub fn is_subset(&self, other: &VarietySet) -> Result<bool> {
        same_degrees(self, other)?;
        Ok(self.sets.iter().all(|(e, s)| s.is_subset(&other.sets[e])))
    }
}

fn same_degrees(v: &VarietySet, w: &VarietySet) -> Result<()> {
    if v.sets.keys().ne(w.sets.keys()) {
        return Err(Error::DegreeMismatch);
    }
    Ok(())
}

pub fn variety_eq(v: &VarietySet, w: &VarietySet) -> Result<bool> {
    same_degrees(v, w)?;
    Ok(v == w)
}

pub fn variety_cap(v: &VarietySet, w: &VarietySet) -> Result<VarietySet> {
    same_degrees(v, w)?;
    let sets = v
        .sets
        .iter()
        .map(|(e, s)| (*e, s.intersection(&w.sets[e]).cloned().collect()))
        .collect();
    Ok(VarietySet { sets })
}

pub fn variety_cup(v: &VarietySet, w: &VarietySet) -> Result<VarietySet> {
    same_degrees(v, w)?;
    let sets = v
        .sets
        .iter()
        .map(|(e, s)| (*e, s.union(&w.sets[e]).cloned().collect()))
        .collect();
    Ok(VarietySet { sets })
}

/// All points of `P^{n-1}(F_{p^e})`, grouped by the position of the leading
/// 1 and then in code order of the remaining coordinates.
pub fn enumerate_points(ctx: &FieldCtx, e: u32) -> Result<Vec<PPoint>> {
    let field = ctx.extend(e)?;
    let n = ctx.n();
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (q as u64).pow(free as u32);
        for code in 0..count {
            let mut coords = vec![Fe::ZERO; n];
            coords[lead] = Fe::ONE;
            let mut c = code;
            for slot in coords.iter_mut().skip(lead + 1).rev() {
                *slot = Fe((c % q as u64) as u32);
                c /= q as u64;
            }
            out.push(PPoint { degree: e, coords });
        }
    }
    Ok(out)
}

/// The least normalized translate of `λ` under `g_i: λ_i ↦ q λ_i`.
pub fn orbit_canonical(ctx: &FieldCtx, lambda: &PPoint) -> Result<PPoint> {
    let field = ctx.extend(lambda.degree)?;
    let n = ctx.n();
    if lambda.coords.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, expected {n}",
            lambda.coords.len()
        )));
    }
    // q lies in the prime field, whose codes are the same in every extension.
    let qs: Vec<Fe> = (0..ctx.ell()).map(|k| ctx.q_pow(k as i64)).collect();
    let mut best: Option<PPoint> = None;
    for b in exponent_vectors(ctx.ell(), n) {
        let coords: Vec<Fe> = lambda
            .coords
            .iter()
            .zip(&b)
            .map(|(&c, &k)| field.mul(c, qs[k as usize]))
            .collect();
        let p = PPoint::new(&field, coords)?;
        if best.as_ref().map_or(true, |cur| p < *cur) {
            best = Some(p);
        }
    }
    Ok(best.expect("the group is nonempty"))
}

/// Canonical representatives of all orbits at degree `e`, sorted.
pub fn orbit_representatives(ctx: &FieldCtx, e: u32) -> Result<Vec<PPoint>> {
    let mut reps = BTreeSet::new();
    for p in enumerate_points(ctx, e)? {
        reps.insert(orbit_canonical(ctx, &p)?);
    }
    Ok(reps.into_iter().collect())
}

/// `ρ_M(Y_i)` over `F_{p^e}`.
fn y_matrices_over(m: &ModuleRep, field: &Arc<Field>) -> Vec<Mat> {
    m.y_matrices().iter().map(|y| y.embed(field)).collect()
}

fn combine(field: &Arc<Field>, ys: &[Mat], lambda: &PPoint, dim: usize) -> Mat {
    let mut acc = Mat::zeros(field, dim, dim);
    for (y, &c) in ys.iter().zip(&lambda.coords) {
        if !c.is_zero() {
            acc.add_scaled(c, y);
        }
    }
    acc
}

/// `N_λ = Σ λ_i ρ_M(Y_i)` over the field of `λ`.
pub fn tau_matrix(m: &ModuleRep, lambda: &PPoint) -> Result<Mat> {
    if lambda.coords.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let field = m.ctx().extend(lambda.degree)?;
    let ys = y_matrices_over(m, &field);
    Ok(combine(&field, &ys, lambda, m.dim()))
}

/// Freeness of a module over `k[t]/(t^ell)` on which `t` acts by `n`.
/// All Jordan blocks have size at most `ell`, so the module is free iff
/// there are exactly `dim/ell` of them, i.e. iff `nullity(n) = dim/ell`.
fn nilpotent_is_free(n: &Mat, ell: usize) -> bool {
    let d = n.rows();
    d % ell == 0 && n.rank_blockwise() == d - d / ell
}

/// Whether `M` restricted to `k[τ_λ(t)]` is free.
pub fn point_is_projective(m: &ModuleRep, lambda: &PPoint) -> Result<bool> {
    let ell = m.ctx().ell() as usize;
    if m.dim() % ell != 0 {
        if lambda.coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPoint);
        }
        return Ok(false);
    }
    Ok(nilpotent_is_free(&tau_matrix(m, lambda)?, ell))
}

/// `rank(N^j)` for `j = 0..=ell`.
pub fn jordan_profile(n: &Mat, ell: usize) -> Vec<usize> {
    let mut power = Mat::identity(n.field(), n.rows());
    let mut out = Vec::with_capacity(ell + 1);
    for j in 0..=ell {
        out.push(power.rank());
        if j < ell {
            power = power.mul(n);
        }
    }
    out
}

/// The same verdict through `rank(N_λ^{ell-1}) = dim/ell`.
pub fn point_is_projective_by_powers(m: &ModuleRep, lambda: &PPoint) -> Result<bool> {
    let ell = m.ctx().ell() as usize;
    let n = tau_matrix(m, lambda)?;
    let d = m.dim();
    if d % ell != 0 {
        return Ok(false);
    }
    Ok(n.pow(ell as u64 - 1).rank() == d / ell)
}

/// `V_A(M)`: canonical representatives of the orbits where `M` is not free
/// over `k[τ_λ(t)]`. The verdict is constant on orbits, so one point per
/// orbit is tested. Runs on the current rayon pool; the result does not
/// depend on how the work is split.
pub fn rank_variety(m: &ModuleRep, degrees: &[u32]) -> Result<VarietySet> {
    let ctx = m.ctx();
    let ell = ctx.ell() as usize;
    let mut out = VarietySet::empty(degrees);
    for &e in degrees {
        let reps = orbit_representatives(ctx, e)?;
        if m.dim() % ell != 0 {
            out.sets.insert(e, reps.into_iter().collect());
            continue;
        }
        let field = ctx.extend(e)?;
        let ys = y_matrices_over(m, &field);
        let hits: Vec<Option<PPoint>> = reps
            .into_par_iter()
            .map(|p| {
                let n = combine(&field, &ys, &p, m.dim());
                (!nilpotent_is_free(&n, ell)).then_some(p)
            })
            .collect();
        out.sets.insert(e, hits.into_iter().flatten().collect());
    }
    Ok(out)
}

/// `V_A(M)` from a scan of every point (not only orbit representatives),
/// canonicalized afterwards. Slower; used to confirm orbit invariance.
pub fn rank_variety_all_points(m: &ModuleRep, degrees: &[u32]) -> Result<VarietySet> {
    let ctx = m.ctx();
    let mut out = VarietySet::empty(degrees);
    for &e in degrees {
        let points = enumerate_points(ctx, e)?;
        let hits: Vec<Option<PPoint>> = points
            .into_par_iter()
            .map(|p| match point_is_projective(m, &p) {
                Ok(false) => Some(orbit_canonical(ctx, &p).expect("valid point")),
                _ => None,
            })
            .collect();
        out.sets.insert(e, hits.into_iter().flatten().collect());
    }
    Ok(out)
}

/// `V_R(M) = V_A(M↑^A)`.
pub fn rank_variety_r(m: &RModule, degrees: &[u32]) -> Result<VarietySet> {
    rank_variety(&induce_r(m), degrees)
}

/// `V_{R_q}(M) = V_A(M↑^A)`.
pub fn rank_variety_rq(m: &RqModule, degrees: &[u32]) -> Result<VarietySet> {
    rank_variety(&induce_rq(m), degrees)
}

/// Coordinatewise `ell`-th powers of the orbit representatives. The result
/// holds plain normalized points (no quotient by `G`).
pub fn psi_image(ctx: &FieldCtx, v: &VarietySet) -> Result<VarietySet> {
    let ell = ctx.ell() as u64;
    let mut sets = BTreeMap::new();
    for (&e, s) in &v.sets {
        let field = ctx.extend(e)?;
        let mut image = BTreeSet::new();
        for p in s {
            let coords = p.coords.iter().map(|&c| field.pow(c, ell)).collect();
            image.insert(PPoint::new(&field, coords)?);
        }
        sets.insert(e, image);
    }
    Ok(VarietySet { sets })
}

/// The right multiplication map `a ↦ a u` on the monomial basis of `A`.
fn right_multiplication(alg: &HopfAlgebra, u: &AlgebraElement) -> Mat {
    let ctx = alg.ctx();
    let f = ctx.base();
    let basis = alg.basis();
    let d = basis.len();
    let mut m = Mat::zeros(f, d, d);
    for (j, b) in basis.iter().enumerate() {
        for (t, &c) in u.terms() {
            if let Some((coef, prod)) = alg.monomial_product(b, t) {
                let idx = prod.index(ctx.ell());
                m[(idx, j)] = f.add(m[(idx, j)], f.mul(c, coef));
            }
        }
    }
    m
}

/// `A / A·τ_λ(t)` with the action induced from left multiplication.
pub fn carlson_module(ctx: &Arc<FieldCtx>, lambda: &PPoint) -> Result<ModuleRep> {
    if lambda.coords.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    if lambda.degree != 1 {
        return Err(Error::DegreeMismatch);
    }
    let alg = HopfAlgebra::new(ctx);
    let tau = alg.tau(&lambda.coords)?;
    let image = right_multiplication(&alg, &tau).column_space();
    let reg = regular_rep(ctx);
    let gens: Vec<Mat> = reg.generators().cloned().collect();
    let mut q = quotient(&gens, &image);
    let g = q.split_off(ctx.n());
    Ok(ModuleRep::assemble(ctx, q, g))
}

/// `M ⊠ N` as a module over `A ⊗ A`, viewed as the rank-`2n` algebra with
/// generators ordered `X_1⊗1, 1⊗X_1, X_2⊗1, ..` and likewise for the `g`s.
pub fn outer_tensor(m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    if **m.ctx() != **n.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = m.ctx();
    let big = ctx.with_rank(2 * ctx.n());
    let f = ctx.base();
    let im = Mat::identity(f, m.dim());
    let inn = Mat::identity(f, n.dim());
    let mut x = Vec::with_capacity(2 * ctx.n());
    let mut g = Vec::with_capacity(2 * ctx.n());
    for i in 0..ctx.n() {
        x.push(m.x(i).kron(&inn));
        x.push(im.kron(n.x(i)));
        g.push(m.g(i).kron(&inn));
        g.push(im.kron(n.g(i)));
    }
    ModuleRep::new(&big, x, g)
}

/// `Δ^r(λ) = [λ_1:λ_1:λ_2:λ_2:..]`.
pub fn diagonal_point(lambda: &PPoint) -> PPoint {
    let coords = lambda.coords.iter().flat_map(|&c| [c, c]).collect();
    PPoint { degree: lambda.degree, coords }
}

/// `τ_{Δ^r λ}` on `M ⊠ N` equals `Δ(τ_λ)` acting on `M ⊗ N`.
pub fn diagonal_check(lambda: &PPoint, m: &ModuleRep, n: &ModuleRep) -> Result<bool> {
    let outer = outer_tensor(m, n)?;
    let lhs = tau_matrix(&outer, &diagonal_point(lambda))?;
    let rhs = tau_matrix(&crate::rep::tensor(m, n)?, lambda)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homol::is_projective_a;
    use crate::rep::{dsum, monomial_quotient, simple, tensor, trivial, Char};

    fn ctx(p: u32, ell: u32, n: usize) -> Arc<FieldCtx> {
        FieldCtx::new(p, ell, n).unwrap()
    }

    fn pt(c: &FieldCtx, coords: &[u32]) -> PPoint {
        PPoint::new(c.base(), coords.iter().map(|&x| Fe(x)).collect()).unwrap()
    }

    #[test]
    fn point_counts() {
        let c = ctx(7, 3, 2);
        assert_eq!(enumerate_points(&c, 1).unwrap().len(), 8);
        assert_eq!(enumerate_points(&c, 2).unwrap().len(), 50);
        let c = ctx(5, 2, 3);
        assert_eq!(enumerate_points(&c, 1).unwrap().len(), 31);
        assert_eq!(enumerate_points(&c, 2).unwrap().len(), 651);
        let c = ctx(11, 5, 2);
        assert_eq!(enumerate_points(&c, 1).unwrap().len(), 12);
    }

    #[test]
    fn normalization_and_zero_point() {
        let c = ctx(7, 3, 2);
        assert_eq!(pt(&c, &[3, 6]).coords(), &[Fe(1), Fe(2)]);
        assert_eq!(PPoint::new(c.base(), vec![Fe(0), Fe(0)]).unwrap_err(), Error::ZeroPoint);
    }

    #[test]
    fn orbits() {
        let c = ctx(7, 3, 2);
        let a = pt(&c, &[1, 0]);
        assert_eq!(orbit_canonical(&c, &a).unwrap(), a);
        // [1:x] ~ [1:qx]: orbits of size 3 on the six points with x != 0.
        let reps = orbit_representatives(&c, 1).unwrap();
        assert_eq!(reps.len(), 4);
        assert_eq!(orbit_canonical(&c, &pt(&c, &[1, 2])).unwrap(), pt(&c, &[1, 1]));
    }

    #[test]
    fn regular_module_has_empty_variety() {
        for (p, ell, n) in [(5, 2, 2), (7, 3, 2)] {
            let c = ctx(p, ell, n);
            let reg = regular_rep(&c);
            assert!(rank_variety(&reg, &[1, 2]).unwrap().is_empty());
            let d = reg.dim() / ell as usize;
            for lambda in enumerate_points(&c, 1).unwrap() {
                assert!(point_is_projective_by_powers(&reg, &lambda).unwrap());
                let profile = jordan_profile(&tau_matrix(&reg, &lambda).unwrap(), ell as usize);
                let expect: Vec<usize> = (0..=ell as usize).map(|j| d * (ell as usize - j)).collect();
                assert_eq!(profile, expect);
            }
        }
    }

    #[test]
    fn trivial_module_has_full_variety() {
        let c = ctx(7, 3, 2);
        let v = rank_variety(&trivial(&c), &[1, 2]).unwrap();
        assert_eq!(v, VarietySet::full(&c, &[1, 2]).unwrap());
    }

    #[test]
    fn tau_matrix_first_coordinate_is_x1() {
        let c = ctx(5, 2, 2);
        let reg = regular_rep(&c);
        assert_eq!(tau_matrix(&reg, &pt(&c, &[1, 0])).unwrap(), *reg.x(0));
    }

    #[test]
    fn psi_squares_coordinates() {
        let c = ctx(5, 2, 2);
        let v = VarietySet::from_sets(BTreeMap::from([(1, BTreeSet::from([pt(&c, &[1, 2])]))]));
        let img = psi_image(&c, &v).unwrap();
        assert_eq!(img.at(1).unwrap().iter().next().unwrap(), &pt(&c, &[1, 4]));
    }

    #[test]
    fn carlson_dimensions() {
        for (p, ell, n) in [(5, 2, 2), (7, 3, 2), (5, 2, 3)] {
            let c = ctx(p, ell, n);
            let lambda = pt(&c, &vec![1; n]);
            let alg = HopfAlgebra::new(&c);
            let rank = right_multiplication(&alg, &alg.tau(lambda.coords()).unwrap()).rank();
            let dim_a = c.algebra_dim();
            assert_eq!(rank, dim_a / ell as usize * (ell as usize - 1));
            let l = carlson_module(&c, &lambda).unwrap();
            assert_eq!(l.dim(), dim_a - rank);
            l.validate().unwrap();
        }
    }

    #[test]
    fn carlson_variety_is_its_orbit() {
        let c = ctx(7, 3, 2);
        for lambda in enumerate_points(&c, 1).unwrap() {
            let l = carlson_module(&c, &lambda).unwrap();
            let v = rank_variety(&l, &[1, 2]).unwrap();
            let orbit = orbit_canonical(&c, &lambda).unwrap();
            assert_eq!(v.at(1).unwrap(), &BTreeSet::from([orbit.clone()]));
            assert_eq!(v.at(2).unwrap(), &BTreeSet::from([PPoint { degree: 2, ..orbit }]));
        }
    }

    #[test]
    fn diagonal_identity() {
        let c = ctx(7, 3, 2);
        let m = monomial_quotient(&c, &Char(vec![1, 0]), &[vec![1, 1]]);
        let n = simple(&c, &Char(vec![2, 2]));
        for lambda in enumerate_points(&c, 1).unwrap() {
            assert!(diagonal_check(&lambda, &m, &n).unwrap());
            assert!(diagonal_check(&lambda, &n, &m).unwrap());
        }
    }

    #[test]
    fn unions_and_tensors() {
        let c = ctx(5, 2, 2);
        let a = carlson_module(&c, &pt(&c, &[1, 1])).unwrap();
        let b = carlson_module(&c, &pt(&c, &[1, 0])).unwrap();
        let va = rank_variety(&a, &[1]).unwrap();
        let vb = rank_variety(&b, &[1]).unwrap();
        let sum = rank_variety(&dsum(&a, &b).unwrap(), &[1]).unwrap();
        assert_eq!(sum, variety_cup(&va, &vb).unwrap());
        let t = tensor(&a, &b).unwrap();
        assert!(variety_cap(&va, &vb).unwrap().is_empty());
        assert!(is_projective_a(&t));
        assert!(rank_variety(&t, &[1]).unwrap().is_empty());
        assert_eq!(variety_cap(&va, &va).unwrap(), va);
        assert_eq!(variety_cup(&va, &VarietySet::empty(&[1])).unwrap(), va);
        assert_eq!(variety_eq(&va, &VarietySet::empty(&[1, 2])).unwrap_err(), Error::DegreeMismatch);
    }
}

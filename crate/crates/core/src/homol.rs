//! Hom-spaces, isomorphism tests, heads, projective covers and the Heller
//! shifts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{exponent_vectors, HopfAlgebra, Monomial};
use crate::rep::{dsum_all, dual, projective_indecomposable, restrict_to_subspace, Char, ModuleRep};
use crate::scalars::{Fe, FieldCtx, Mat};

/// Default number of random hom-space samples in [`is_isomorphic`].
pub const DEFAULT_ISO_TRIALS: usize = 8;

/// Above this dimension the head criterion for projectivity is replaced by
/// the equivalent socle-rank criterion.
const HEAD_TEST_LIMIT: usize = 400;

/// A basis of `Hom_A(M, N)`; each element is a `dim N x dim M` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Simultaneous eigenspaces of commuting diagonalizable `g`s, in
/// lexicographic character order. Each entry is a column basis.
pub fn weight_spaces(ctx: &FieldCtx, gs: &[Mat], dim: usize) -> Vec<(Char, Mat)> {
    let f = ctx.base();
    let ell = ctx.ell();
    if gs.iter().all(is_diagonal) {
        let log: BTreeMap<Fe, u8> = (0..ell).map(|k| (ctx.q_pow(k as i64), k as u8)).collect();
        let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
        for r in 0..dim {
            let c: Vec<u8> = gs.iter().map(|g| log[&g[(r, r)]]).collect();
            groups.entry(c).or_default().push(r);
        }
        return groups
            .into_iter()
            .map(|(c, rows)| {
                let mut b = Mat::zeros(f, dim, rows.len());
                for (j, &r) in rows.iter().enumerate() {
                    b[(r, j)] = Fe::ONE;
                }
                (Char(c), b)
            })
            .collect();
    }
    let mut spaces: Vec<(Vec<u8>, Mat)> = vec![(Vec::new(), Mat::identity(f, dim))];
    for g in gs {
        let mut next = Vec::new();
        for (prefix, w) in spaces {
            let a = restrict_to_subspace(std::slice::from_ref(g), &w).expect("weight spaces are g-stable")[0].clone();
            for c in 0..ell {
                let shifted = a.sub(&Mat::scalar(f, a.rows(), ctx.q_pow(c as i64)));
                let k = shifted.kernel_basis();
                if k.cols() > 0 {
                    let mut p = prefix.clone();
                    p.push(c as u8);
                    next.push((p, w.mul(&k)));
                }
            }
        }
        spaces = next;
    }
    spaces.into_iter().map(|(c, w)| (Char(c), w)).collect()
}

fn is_diagonal(m: &Mat) -> bool {
    (0..m.rows()).all(|r| m.row(r).iter().enumerate().all(|(c, x)| c == r || x.is_zero()))
}

/// Change of basis to a weight basis, with the weight blocks as
/// `(character, offset, length)`.
struct WeightBasis {
    basis: Mat,
    blocks: Vec<(Char, usize, usize)>,
}

impl WeightBasis {
    fn of(m: &ModuleRep) -> WeightBasis {
        let spaces = weight_spaces(m.ctx(), m.gs(), m.dim());
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (c, w) in &spaces {
            blocks.push((c.clone(), offset, w.cols()));
            offset += w.cols();
        }
        let parts: Vec<&Mat> = spaces.iter().map(|(_, w)| w).collect();
        let basis = if parts.is_empty() {
            Mat::zeros(m.ctx().base(), m.dim(), 0)
        } else {
            Mat::hstack(&parts)
        };
        WeightBasis { basis, blocks }
    }

    fn block(&self, c: &Char) -> Option<(usize, usize)> {
        self.blocks.iter().find(|(x, _, _)| x == c).map(|&(_, o, l)| (o, l))
    }
}

/// All `A`-linear maps `M -> N`. Maps are solved for weight-block by
/// weight-block, since they must commute with the `g`s.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    if **m.ctx() != **n.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = m.ctx();
    let f = ctx.base();
    let ell = ctx.ell();
    let wm = WeightBasis::of(m);
    let wn = WeightBasis::of(n);
    let wm_inv = wm.basis.inverse()?;
    let wn_inv = wn.basis.inverse()?;
    let xm: Vec<Mat> = m.xs().iter().map(|x| wm_inv.mul(x).mul(&wm.basis)).collect();
    let xn: Vec<Mat> = n.xs().iter().map(|x| wn_inv.mul(x).mul(&wn.basis)).collect();

    // Unknown blocks T_χ : M_χ -> N_χ.
    let mut unknowns: Vec<(Char, usize, usize, usize, usize, usize)> = Vec::new();
    let mut total = 0;
    for (c, om, lm) in &wm.blocks {
        if let Some((on, ln)) = wn.block(c) {
            unknowns.push((c.clone(), total, *om, *lm, on, ln));
            total += lm * ln;
        }
    }
    let var = |c: &Char| unknowns.iter().find(|u| &u.0 == c);

    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for i in 0..ctx.n() {
        let step = Char::generator(ctx.n(), i);
        for (c, om, lm) in &wm.blocks {
            let c2 = c.add(&step, ell);
            let Some((on2, ln2)) = wn.block(&c2) else { continue };
            // T_{c2} X_M[c2 <- c] - X_N[c2 <- c] T_c = 0, an ln2 x lm system.
            let src = var(&c2);
            let dst = var(c);
            let (om2, lm2) = wm.block(&c2).unwrap_or((0, 0));
            for r in 0..ln2 {
                for col in 0..*lm {
                    let mut eq = vec![Fe::ZERO; total];
                    if let Some(&(_, off, _, _, _, _)) = src {
                        for k in 0..lm2 {
                            let a = xm[i][(om2 + k, om + col)];
                            if !a.is_zero() {
                                let idx = off + r * lm2 + k;
                                eq[idx] = f.add(eq[idx], a);
                            }
                        }
                    }
                    if let Some(&(_, off, _, _, on, ln)) = dst {
                        for k in 0..ln {
                            let a = xn[i][(on2 + r, on + k)];
                            if !a.is_zero() {
                                let idx = off + k * lm + col;
                                eq[idx] = f.sub(eq[idx], a);
                            }
                        }
                    }
                    if eq.iter().any(|x| !x.is_zero()) {
                        rows.push(eq);
                    }
                }
            }
        }
    }
    let system = Mat::from_vec(f, rows.len(), total, rows.concat());
    let kernel = if rows.is_empty() {
        Mat::identity(f, total)
    } else {
        system.kernel_basis()
    };
    let basis = (0..kernel.cols())
        .map(|j| {
            let mut t = Mat::zeros(f, n.dim(), m.dim());
            for (_, off, om, lm, on, ln) in &unknowns {
                for r in 0..*ln {
                    for c in 0..*lm {
                        t[(on + r, om + c)] = kernel[(off + r * lm + c, j)];
                    }
                }
            }
            wn.basis.mul(&t).mul(&wm_inv)
        })
        .collect();
    Ok(HomSpace { source_dim: m.dim(), target_dim: n.dim(), basis })
}

/// `T ρ_M(u) = ρ_N(u) T` on every generator.
pub fn is_intertwiner(t: &Mat, m: &ModuleRep, n: &ModuleRep) -> bool {
    t.rows() == n.dim()
        && t.cols() == m.dim()
        && m.generators().zip(n.generators()).all(|(a, b)| t.mul(a) == b.mul(t))
}

#[derive(Clone, Debug)]
pub enum Isomorphism {
    /// An invertible intertwiner `M -> N`.
    IsoWitness(Mat),
    NotIso,
    Undetermined,
}

impl Isomorphism {
    pub fn is_iso(&self) -> bool {
        matches!(self, Isomorphism::IsoWitness(_))
    }
}

/// Randomized isomorphism test. Each trial samples a random element of
/// `Hom_A(M, N)` and then raises its rank greedily along the basis of the
/// hom space; the first invertible map found is returned. `NotIso` is
/// reported only on a certificate: different dimensions, different heads,
/// `Hom = 0`, or `dim Hom(M, N)` differing from `dim End(M)` or `dim End(N)`.
pub fn is_isomorphic(m: &ModuleRep, n: &ModuleRep, trials: usize) -> Result<Isomorphism> {
    if m.dim() != n.dim() {
        return Ok(Isomorphism::NotIso);
    }
    if m.dim() == 0 {
        return Ok(Isomorphism::IsoWitness(Mat::zeros(m.ctx().base(), 0, 0)));
    }
    if m == n {
        return Ok(Isomorphism::IsoWitness(Mat::identity(m.ctx().base(), m.dim())));
    }
    if head_decompose(m) != head_decompose(n) {
        return Ok(Isomorphism::NotIso);
    }
    let hom = hom_space(m, n)?;
    if hom.dim() == 0 || hom.dim() != hom_space(m, m)?.dim() || hom.dim() != hom_space(n, n)?.dim() {
        return Ok(Isomorphism::NotIso);
    }
    let f = m.ctx().base();
    let full = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0150 ^ (m.dim() as u64) << 20 ^ hom.dim() as u64);
    for _ in 0..trials {
        let mut t = Mat::zeros(f, n.dim(), m.dim());
        for b in &hom.basis {
            let c = Fe(rng.gen_range(0..f.order()));
            if !c.is_zero() {
                t.add_scaled(c, b);
            }
        }
        let mut rank = t.rank();
        let mut improved = true;
        while rank < full && improved {
            improved = false;
            for b in &hom.basis {
                for c in f.elements().filter(|c| !c.is_zero()) {
                    let mut candidate = t.clone();
                    candidate.add_scaled(c, b);
                    let r = candidate.rank();
                    if r > rank {
                        t = candidate;
                        rank = r;
                        improved = true;
                        break;
                    }
                }
                if rank == full {
                    break;
                }
            }
        }
        if rank == full {
            return Ok(Isomorphism::IsoWitness(t));
        }
    }
    Ok(Isomorphism::Undetermined)
}

/// Column basis of `rad M = X_1 M + .. + X_n M`.
pub fn radical(m: &ModuleRep) -> Mat {
    if m.dim() == 0 {
        return Mat::zeros(m.ctx().base(), 0, 0);
    }
    let parts: Vec<&Mat> = m.xs().iter().collect();
    Mat::hstack(&parts).column_space()
}

/// Multiplicity of each simple `S_χ` in `M / rad M`.
pub fn head_decompose(m: &ModuleRep) -> BTreeMap<Char, usize> {
    let rad = radical(m);
    let gs = crate::rep::quotient(m.gs(), &rad);
    let dim = m.dim() - rad.cols();
    weight_spaces(m.ctx(), &gs, dim)
        .into_iter()
        .map(|(c, w)| (c, w.cols()))
        .collect()
}

/// `M` is projective iff it is free over the local algebra `R`, i.e.
/// `dim M = ell^n * dim(M / rad M)`.
pub fn is_projective_a(m: &ModuleRep) -> bool {
    let group = m.ctx().group_order();
    if m.dim() % group != 0 {
        return false;
    }
    if m.dim() > HEAD_TEST_LIMIT {
        return is_projective_socle(m);
    }
    is_projective_head(m)
}

/// The head criterion: `dim M = ell^n * dim(head M)`.
pub fn is_projective_head(m: &ModuleRep) -> bool {
    let head = m.dim() - radical(m).cols();
    m.dim() == m.ctx().group_order() * head
}

/// The socle criterion: with `z = X_1^{ell-1}..X_n^{ell-1}` spanning the
/// socle of `R`, `rank ρ(z)` counts free summands, so `M` is free iff
/// `rank ρ(z) = dim M / ell^n`.
pub fn is_projective_socle(m: &ModuleRep) -> bool {
    let group = m.ctx().group_order();
    if m.dim() % group != 0 {
        return false;
    }
    let z = m.act_monomial(&norm_monomial(m.ctx()));
    z.rank_blockwise() == m.dim() / group
}

fn norm_monomial(ctx: &FieldCtx) -> Monomial {
    Monomial {
        a: vec![(ctx.ell() - 1) as u8; ctx.n()],
        b: vec![0; ctx.n()],
    }
}

/// `M` in a basis of simultaneous `g`-eigenvectors, with the character
/// exponents of each basis vector.
fn weight_basis(m: &ModuleRep) -> (ModuleRep, Vec<Vec<u8>>) {
    let spaces = weight_spaces(m.ctx(), m.gs(), m.dim());
    let mut labels = Vec::with_capacity(m.dim());
    let mut cols = Vec::with_capacity(spaces.len());
    for (chi, basis) in spaces {
        labels.extend(std::iter::repeat(chi.0).take(basis.cols()));
        cols.push(basis);
    }
    let p = Mat::hstack(&cols.iter().collect::<Vec<_>>());
    let conj = m.conjugate_by(&p).expect("weight vectors form a basis");
    (conj, labels)
}

/// Projectivity of `M ⊗ N` without forming its generators.
///
/// `ρ_{M⊗N}(z)` is assembled from `Δ(z)` in a weight basis, where it maps
/// each weight space `W_χ` into `W_{χ+w}` with `w` the weight of `z`; its
/// rank is the sum of the ranks of these blocks.
pub fn tensor_is_projective(m: &ModuleRep, n: &ModuleRep) -> Result<bool> {
    if **m.ctx() != **n.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = m.ctx();
    let ell = ctx.ell();
    let group = ctx.group_order();
    let dim = m.dim() * n.dim();
    if dim % group != 0 {
        return Ok(false);
    }
    if dim == 0 {
        return Ok(true);
    }
    let (mw, lm) = weight_basis(m);
    let (nw, ln) = weight_basis(n);
    let f = ctx.base();
    let alg = HopfAlgebra::new(ctx);
    let dz = alg.coproduct_monomial(&norm_monomial(ctx));
    let terms: Vec<(Mat, Mat, Fe)> = dz
        .terms()
        .iter()
        .map(|(key, &c)| (mw.act_monomial(&key[0]), nw.act_monomial(&key[1]), c))
        .filter(|(l, r, _)| !l.is_zero() && !r.is_zero())
        .collect();
    let mut by_weight: BTreeMap<Vec<u8>, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, a) in lm.iter().enumerate() {
        for (j, b) in ln.iter().enumerate() {
            let w: Vec<u8> = a.iter().zip(b).map(|(&x, &y)| ((x as u32 + y as u32) % ell) as u8).collect();
            by_weight.entry(w).or_default().push((i, j));
        }
    }
    let shift = |w: &[u8]| -> Vec<u8> { w.iter().map(|&x| ((x as u32 + ell - 1) % ell) as u8).collect() };
    let empty = Vec::new();
    let mut rank = 0;
    for (w, cols) in &by_weight {
        let rows = by_weight.get(&shift(w)).unwrap_or(&empty);
        if rows.is_empty() {
            continue;
        }
        let mut block = Mat::zeros(f, rows.len(), cols.len());
        for (l, r, c) in &terms {
            for (ri, &(i1, j1)) in rows.iter().enumerate() {
                for (ci, &(i2, j2)) in cols.iter().enumerate() {
                    let a = l[(i1, i2)];
                    if a.is_zero() {
                        continue;
                    }
                    let b = r[(j1, j2)];
                    if b.is_zero() {
                        continue;
                    }
                    block[(ri, ci)] = f.add(block[(ri, ci)], f.mul(*c, f.mul(a, b)));
                }
            }
        }
        rank += block.rank();
    }
    Ok(rank == dim / group)
}

/// A projective cover `P -> M` with its kernel.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub cover: ModuleRep,
    /// `dim M x dim P`, A-linear and surjective.
    pub surjection: Mat,
    /// Column basis of the kernel inside `P`.
    pub kernel_basis: Mat,
    /// The kernel with the action inherited from `P`.
    pub kernel: ModuleRep,
    /// Characters of the chosen head generators, in order.
    pub summands: Vec<Char>,
}

/// Minimal projective cover: one `P(χ)` for each basis vector of the head,
/// lifted greedily to weight vectors of `M` in basis order.
pub fn projective_cover(m: &ModuleRep) -> CoverData {
    let ctx = m.ctx();
    let f = ctx.base();
    let rad = radical(m);
    let (q, _) = crate::rep::quotient_map(&rad);
    let mut generators: Vec<(Char, Vec<Fe>)> = Vec::new();
    for (chi, w) in weight_spaces(ctx, m.gs(), m.dim()) {
        // Pivot columns of the projected block are independent modulo rad.
        let projected = q.mul(&w);
        for c in independent_columns(&projected) {
            generators.push((chi.clone(), w.col(c)));
        }
    }
    let exps = exponent_vectors(ctx.ell(), ctx.n());
    let pim_dim = exps.len();
    let mut surjection = Mat::zeros(f, m.dim(), generators.len() * pim_dim);
    let mut parts = Vec::with_capacity(generators.len());
    for (s, (chi, v)) in generators.iter().enumerate() {
        // Images X^a v in lexicographic order of a; each is X_i applied to an
        // earlier image.
        let mut images: Vec<Vec<Fe>> = Vec::with_capacity(pim_dim);
        for a in &exps {
            let img = match a.iter().rposition(|&e| e > 0) {
                None => v.clone(),
                Some(i) => {
                    let mut prev = a.clone();
                    prev[i] -= 1;
                    let idx = prev.iter().fold(0usize, |acc, &e| acc * ctx.ell() as usize + e as usize);
                    m.x(i).mul_vec(&images[idx])
                }
            };
            images.push(img);
        }
        for (j, img) in images.iter().enumerate() {
            for (r, &x) in img.iter().enumerate() {
                surjection[(r, s * pim_dim + j)] = x;
            }
        }
        parts.push(projective_indecomposable(ctx, chi));
    }
    let cover = dsum_all(ctx, &parts).expect("same context");
    let kernel_basis = surjection.kernel_basis();
    let kernel = if kernel_basis.cols() == 0 {
        ModuleRep::zero(ctx)
    } else {
        cover.submodule(&kernel_basis).expect("kernel of an A-linear map is a submodule")
    };
    CoverData {
        cover,
        surjection,
        kernel_basis,
        kernel,
        summands: generators.into_iter().map(|(c, _)| c).collect(),
    }
}

/// Indices of a maximal set of independent columns, chosen greedily left to
/// right.
fn independent_columns(m: &Mat) -> Vec<usize> {
    m.rref().1
}

/// `Ω(M)`: the kernel of the minimal projective cover.
pub fn omega(m: &ModuleRep) -> ModuleRep {
    if m.dim() == 0 {
        return m.clone();
    }
    projective_cover(m).kernel
}

/// `Ω^{-1}(M) = (Ω(M^#))^#`; `A` is self-injective so this is the cokernel
/// of an injective hull.
pub fn omega_inv(m: &ModuleRep) -> ModuleRep {
    dual(&omega(&dual(m)))
}

/// `Ω^{-1}Ω(M)`: `M` with its projective summands removed.
pub fn stable_reduce(m: &ModuleRep) -> ModuleRep {
    omega_inv(&omega(m))
}

/// `Ω` applied `s` times (negative `s` uses `Ω^{-1}`).
pub fn omega_shift(m: &ModuleRep, s: i32) -> ModuleRep {
    let mut out = m.clone();
    for _ in 0..s.unsigned_abs() {
        out = if s > 0 { omega(&out) } else { omega_inv(&out) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{dsum, monomial_quotient, regular_rep, simple, tensor, trivial};

    use std::sync::Arc;

    fn ctx(p: u32, ell: u32, n: usize) -> Arc<FieldCtx> {
        FieldCtx::new(p, ell, n).unwrap()
    }

    #[test]
    fn schur_for_simples() {
        let c = ctx(7, 3, 2);
        for a in Char::all(&c) {
            for b in Char::all(&c) {
                let h = hom_space(&simple(&c, &a), &simple(&c, &b)).unwrap();
                assert_eq!(h.dim(), usize::from(a == b));
            }
        }
    }

    #[test]
    fn hom_from_regular_to_simple() {
        // Brute force: solve T ρ(u) = ρ'(u) T over all 1x4 matrices T.
        let c = ctx(5, 2, 1);
        let reg = regular_rep(&c);
        for chi in Char::all(&c) {
            let s = simple(&c, &chi);
            let f = c.base();
            let mut count = 0;
            for code in 0..5u32.pow(4) {
                let entries: Vec<Fe> = (0..4).map(|k| Fe(code / 5u32.pow(k) % 5)).collect();
                let t = Mat::from_vec(f, 1, 4, entries);
                if is_intertwiner(&t, &reg, &s) {
                    count += 1;
                }
            }
            // A one-dimensional space over F_5 has 5 elements.
            assert_eq!(count, 5);
            assert_eq!(hom_space(&reg, &s).unwrap().dim(), 1);
        }
    }

    #[test]
    fn hom_basis_elements_intertwine() {
        let c = ctx(7, 3, 2);
        let m = monomial_quotient(&c, &Char(vec![1, 0]), &[vec![1, 1]]);
        let n = dual(&m);
        let t = tensor(&m, &n).unwrap();
        for (a, b) in [(&m, &m), (&m, &t), (&t, &m), (&n, &t)] {
            let h = hom_space(a, b).unwrap();
            assert!(h.dim() >= usize::from(a == b));
            for x in &h.basis {
                assert!(is_intertwiner(x, a, b));
            }
        }
    }

    #[test]
    fn isomorphism_outcomes() {
        let c = ctx(7, 3, 2);
        let m = monomial_quotient(&c, &Char(vec![2, 1]), &[vec![2, 0]]);
        assert!(is_isomorphic(&m, &m, 8).unwrap().is_iso());
        let s1 = simple(&c, &Char(vec![1, 0]));
        let s2 = simple(&c, &Char(vec![0, 1]));
        assert!(matches!(is_isomorphic(&s1, &s2, 8).unwrap(), Isomorphism::NotIso));
        let left = tensor(&m, &s1).unwrap();
        let right = tensor(&s1, &m).unwrap();
        match is_isomorphic(&left, &right, 8).unwrap() {
            Isomorphism::IsoWitness(t) => assert!(is_intertwiner(&t, &left, &right)),
            other => panic!("expected an isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn heads() {
        let c = ctx(5, 2, 1);
        let reg = regular_rep(&c);
        let head = head_decompose(&reg);
        assert_eq!(head.len(), 2);
        assert!(head.values().all(|&m| m == 1));
        let c = ctx(7, 3, 2);
        let reg = regular_rep(&c);
        let head = head_decompose(&reg);
        let total: usize = head.values().sum();
        assert_eq!(total * c.group_order(), c.algebra_dim());
        let s = simple(&c, &Char(vec![2, 1]));
        assert!(radical(&s).cols() == 0);
        assert_eq!(head_decompose(&s), BTreeMap::from([(Char(vec![2, 1]), 1)]));
        for chi in Char::all(&c) {
            let p = projective_indecomposable(&c, &chi);
            assert_eq!(head_decompose(&p), BTreeMap::from([(chi.clone(), 1)]));
            assert!(is_projective_a(&p));
        }
    }

    #[test]
    fn projectivity_criteria_agree() {
        let c = ctx(5, 2, 2);
        let mods = vec![
            regular_rep(&c),
            trivial(&c),
            projective_indecomposable(&c, &Char(vec![1, 0])),
            monomial_quotient(&c, &Char(vec![0, 1]), &[vec![1, 1]]),
            dsum(&trivial(&c), &regular_rep(&c)).unwrap(),
        ];
        let expected = [true, false, true, false, false];
        for (m, e) in mods.iter().zip(expected) {
            assert_eq!(is_projective_a(m), e);
            assert_eq!(is_projective_head(m), e);
            assert_eq!(is_projective_socle(m), e);
        }
    }

    #[test]
    fn tensor_projectivity_matches_full_tensor() {
        let c = ctx(7, 3, 2);
        let a = monomial_quotient(&c, &Char(vec![1, 0]), &[vec![0, 1]]);
        let b = monomial_quotient(&c, &Char(vec![0, 2]), &[vec![1, 0]]);
        let p = projective_indecomposable(&c, &Char(vec![1, 1]));
        for (x, y) in [(&a, &b), (&a, &a), (&a, &p), (&p, &b)] {
            let full = tensor(x, y).unwrap();
            assert_eq!(tensor_is_projective(x, y).unwrap(), is_projective_head(&full));
        }
    }

    #[test]
    fn omega_of_trivial() {
        for (p, ell, n) in [(5, 2, 2), (7, 3, 2), (5, 2, 3), (11, 5, 2)] {
            let c = ctx(p, ell, n);
            let om = omega(&trivial(&c));
            assert_eq!(om.dim(), c.group_order() - 1);
            om.validate().unwrap();
            let cover = projective_cover(&trivial(&c));
            assert!(is_intertwiner(&cover.surjection, &cover.cover, &trivial(&c)));
            assert_eq!(cover.surjection.rank(), 1);
        }
    }

    #[test]
    fn omega_of_projective_is_zero() {
        let c = ctx(7, 3, 2);
        assert_eq!(omega(&regular_rep(&c)).dim(), 0);
        assert_eq!(stable_reduce(&regular_rep(&c)).dim(), 0);
    }

    #[test]
    fn cover_kernel_lies_in_radical() {
        let c = ctx(7, 3, 2);
        let m = monomial_quotient(&c, &Char(vec![1, 2]), &[vec![2, 1], vec![0, 2]]);
        let m = dsum(&m, &dual(&m)).unwrap();
        let cd = projective_cover(&m);
        assert!(is_intertwiner(&cd.surjection, &cd.cover, &m));
        assert_eq!(cd.surjection.rank(), m.dim());
        let rad = radical(&cd.cover);
        let joint = Mat::hstack(&[&rad, &cd.kernel_basis]);
        assert_eq!(joint.rank(), rad.cols());
    }

    #[test]
    fn stable_reduce_strips_projectives() {
        let c = ctx(5, 2, 2);
        let m = monomial_quotient(&c, &Char(vec![1, 0]), &[vec![1, 1]]);
        let padded = dsum(&m, &regular_rep(&c)).unwrap();
        let a = stable_reduce(&m);
        let b = stable_reduce(&padded);
        assert!(is_isomorphic(&a, &b, 8).unwrap().is_iso());
        assert!(is_isomorphic(&a, &m, 8).unwrap().is_iso());
    }

    #[test]
    fn omega_inverse_undoes_omega() {
        let c = ctx(7, 3, 2);
        let k = trivial(&c);
        let back = omega_inv(&omega(&k));
        assert!(is_isomorphic(&back, &k, 8).unwrap().is_iso());
        assert_eq!(omega_shift(&k, 2).dim(), omega(&omega(&k)).dim());
    }
}

//! Finite-dimensional `A`-modules as matrix data, their constructors, and
//! the functors between them.

mod random;
mod subquotient;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{exponent_vectors, AlgebraElement, HopfAlgebra, Monomial};
use crate::scalars::{Fe, FieldCtx, Mat};

pub use random::{derive_seed, random_module, random_r_quotient, Recipe};
pub use subquotient::{quotient, quotient_map, restrict_to_subspace};

/// Modules up to this dimension re-validate after every functor in debug
/// builds.
const DEBUG_VALIDATE_LIMIT: usize = 160;

/// A one-dimensional character `χ(g_i) = q^{c_i}` of `G = (Z/ell)^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Char(pub Vec<u8>);

impl Char {
    pub fn trivial(n: usize) -> Char {
        Char(vec![0; n])
    }

    /// Every character, lexicographic in the exponent vector.
    pub fn all(ctx: &FieldCtx) -> Vec<Char> {
        exponent_vectors(ctx.ell(), ctx.n()).into_iter().map(Char).collect()
    }

    /// The generator character `χ_i(g_j) = q^{δ_ij}`.
    pub fn generator(n: usize, i: usize) -> Char {
        let mut c = vec![0; n];
        c[i] = 1;
        Char(c)
    }

    pub fn inverse(&self, ell: u32) -> Char {
        Char(self.0.iter().map(|&c| ((ell - c as u32) % ell) as u8).collect())
    }

    pub fn add(&self, other: &Char, ell: u32) -> Char {
        Char(self.0.iter().zip(&other.0).map(|(&a, &b)| ((a as u32 + b as u32) % ell) as u8).collect())
    }

    /// `χ(g^b) = q^{<c, b>}`.
    pub fn value(&self, ctx: &FieldCtx, b: &[u8]) -> Fe {
        let e: i64 = self.0.iter().zip(b).map(|(&c, &x)| c as i64 * x as i64).sum();
        ctx.q_pow(e)
    }
}

/// A finite-dimensional `A`-module: matrices for `X_1..X_n` and `g_1..g_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    ctx: Arc<FieldCtx>,
    dim: usize,
    x: Vec<Mat>,
    g: Vec<Mat>,
}

impl ModuleRep {
    /// Builds and validates a module from generator matrices.
    pub fn new(ctx: &Arc<FieldCtx>, x: Vec<Mat>, g: Vec<Mat>) -> Result<ModuleRep> {
        let m = ModuleRep::from_parts(ctx, x, g)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(ctx: &Arc<FieldCtx>, x: Vec<Mat>, g: Vec<Mat>) -> Result<ModuleRep> {
        let n = ctx.n();
        if x.len() != n || g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} X and {n} g matrices, got {} and {}",
                x.len(),
                g.len()
            )));
        }
        let dim = x.first().map_or(0, |m| m.rows());
        for m in x.iter().chain(&g) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field().degree() != 1 || m.field().characteristic() != ctx.p() {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(ModuleRep { ctx: ctx.clone(), dim, x, g })
    }

    /// Constructor for functor outputs that satisfy the relations by
    /// construction; small outputs are re-checked in debug builds.
    pub(crate) fn assemble(ctx: &Arc<FieldCtx>, x: Vec<Mat>, g: Vec<Mat>) -> ModuleRep {
        let m = ModuleRep::from_parts(ctx, x, g).expect("functor produced malformed matrices");
        if cfg!(debug_assertions) && m.dim <= DEBUG_VALIDATE_LIMIT {
            if let Err(e) = m.validate() {
                panic!("functor output failed validation: {e}");
            }
        }
        m
    }

    /// The zero module.
    pub fn zero(ctx: &Arc<FieldCtx>) -> ModuleRep {
        let z = Mat::zeros(ctx.base(), 0, 0);
        ModuleRep {
            ctx: ctx.clone(),
            dim: 0,
            x: vec![z.clone(); ctx.n()],
            g: vec![z; ctx.n()],
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self, i: usize) -> &Mat {
        &self.x[i]
    }

    pub fn g(&self, i: usize) -> &Mat {
        &self.g[i]
    }

    pub fn xs(&self) -> &[Mat] {
        &self.x
    }

    pub fn gs(&self) -> &[Mat] {
        &self.g
    }

    /// The `2n` generator matrices, `X`s first.
    pub fn generators(&self) -> impl Iterator<Item = &Mat> {
        self.x.iter().chain(&self.g)
    }

    /// Checks the defining relations of `A`, naming the first that fails.
    pub fn validate(&self) -> Result<()> {
        let n = self.ctx.n();
        let ell = self.ctx.ell() as u64;
        let f = self.ctx.base();
        let id = Mat::identity(f, self.dim);
        for i in 0..n {
            if !self.x[i].pow(ell).is_zero() {
                return Err(Error::Validation(format!("X{}^{} = 0", i + 1, ell)));
            }
            if self.g[i].pow(ell) != id {
                return Err(Error::Validation(format!("g{}^{} = 1", i + 1, ell)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if j > i {
                    if self.x[i].mul(&self.x[j]) != self.x[j].mul(&self.x[i]) {
                        return Err(Error::Validation(format!("X{}X{} = X{}X{}", i + 1, j + 1, j + 1, i + 1)));
                    }
                    if self.g[i].mul(&self.g[j]) != self.g[j].mul(&self.g[i]) {
                        return Err(Error::Validation(format!("g{}g{} = g{}g{}", i + 1, j + 1, j + 1, i + 1)));
                    }
                }
                let c = if i == j { self.ctx.q() } else { Fe::ONE };
                let lhs = self.g[i].mul(&self.x[j]);
                let rhs = self.x[j].mul(&self.g[i]).scale(c);
                if lhs != rhs {
                    let what = if i == j { "q·" } else { "" };
                    return Err(Error::Validation(format!(
                        "g{}X{} = {what}X{}g{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ρ(X^a g^b)`.
    pub fn act_monomial(&self, m: &Monomial) -> Mat {
        let f = self.ctx.base();
        let mut acc = Mat::identity(f, self.dim);
        for i in 0..self.ctx.n() {
            for _ in 0..m.a[i] {
                acc = acc.mul(&self.x[i]);
            }
        }
        for i in 0..self.ctx.n() {
            for _ in 0..m.b[i] {
                acc = acc.mul(&self.g[i]);
            }
        }
        acc
    }

    /// `ρ(u)` for an algebra element.
    pub fn act(&self, u: &AlgebraElement) -> Result<Mat> {
        if **u.ctx() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut acc = Mat::zeros(self.ctx.base(), self.dim, self.dim);
        for (m, &c) in u.terms() {
            acc.add_scaled(c, &self.act_monomial(m));
        }
        Ok(acc)
    }

    /// `ρ(g^b)`.
    pub fn group_action(&self, b: &[u8]) -> Mat {
        self.act_monomial(&Monomial::group(b.to_vec()))
    }

    /// `ρ(g_i)^{-1} = ρ(g_i)^{ell-1}`.
    pub fn g_inverse(&self, i: usize) -> Mat {
        self.g[i].pow(self.ctx.ell() as u64 - 1)
    }

    /// `ρ(Y_i) = ρ(X_i) ρ(g_1)..ρ(g_{i-1})` for `i = 1..n`.
    pub fn y_matrices(&self) -> Vec<Mat> {
        let f = self.ctx.base();
        let mut prefix = Mat::identity(f, self.dim);
        let mut out = Vec::with_capacity(self.ctx.n());
        for i in 0..self.ctx.n() {
            out.push(self.x[i].mul(&prefix));
            prefix = prefix.mul(&self.g[i]);
        }
        out
    }

    fn check_ctx(&self, other: &ModuleRep) -> Result<()> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Applies the same change of basis `T^{-1} ρ T` to every generator.
    pub fn conjugate_by(&self, t: &Mat) -> Result<ModuleRep> {
        let t_inv = t.inverse()?;
        let x = self.x.iter().map(|m| t_inv.mul(m).mul(t)).collect();
        let g = self.g.iter().map(|m| t_inv.mul(m).mul(t)).collect();
        Ok(ModuleRep::assemble(&self.ctx, x, g))
    }
}

/// The one-dimensional module `k` with `X_i = 0`, `g_i = 1`.
pub fn trivial(ctx: &Arc<FieldCtx>) -> ModuleRep {
    simple(ctx, &Char::trivial(ctx.n()))
}

/// `S_χ`: `X_i` acts as 0 and `g_i` as `χ(g_i)`.
pub fn simple(ctx: &Arc<FieldCtx>, chi: &Char) -> ModuleRep {
    let f = ctx.base();
    let x = vec![Mat::zeros(f, 1, 1); ctx.n()];
    let g = chi.0.iter().map(|&c| Mat::scalar(f, 1, ctx.q_pow(c as i64))).collect();
    ModuleRep::assemble(ctx, x, g)
}

/// Left multiplication on the monomial basis of `A`.
pub fn regular_rep(ctx: &Arc<FieldCtx>) -> ModuleRep {
    let alg = HopfAlgebra::new(ctx);
    let basis = alg.basis();
    let ell = ctx.ell();
    let d = basis.len();
    let left_mult = |gen: &Monomial| {
        let mut m = Mat::zeros(ctx.base(), d, d);
        for (j, b) in basis.iter().enumerate() {
            if let Some((c, prod)) = alg.monomial_product(gen, b) {
                m[(prod.index(ell), j)] = c;
            }
        }
        m
    };
    let n = ctx.n();
    let x = (0..n).map(|i| left_mult(&Monomial::x(n, i))).collect();
    let g = (0..n).map(|i| left_mult(&Monomial::g(n, i))).collect();
    ModuleRep::assemble(ctx, x, g)
}

/// The projective indecomposable `P(χ) = A ⊗_{kG} k_χ` on the basis
/// `X^a ⊗ 1`: `X_i` raises `a_i`, `g_j` scales by `q^{a_j + c_j}`.
pub fn projective_indecomposable(ctx: &Arc<FieldCtx>, chi: &Char) -> ModuleRep {
    monomial_quotient(ctx, chi, &[])
}

/// `R/I ⊗ k_χ` for a monomial ideal `I` generated by the given exponent
/// vectors, as an `A`-module: basis the standard monomials `X^a ∉ I`,
/// `X_i` multiplies, `g_j` scales by `q^{a_j + c_j}`.
pub fn monomial_quotient(ctx: &Arc<FieldCtx>, chi: &Char, ideal: &[Vec<u8>]) -> ModuleRep {
    let ell = ctx.ell();
    let n = ctx.n();
    let in_ideal = |a: &[u8]| ideal.iter().any(|gen| gen.iter().zip(a).all(|(g, x)| x >= g));
    let basis: Vec<Vec<u8>> = exponent_vectors(ell, n).into_iter().filter(|a| !in_ideal(a)).collect();
    let pos = |a: &[u8]| basis.iter().position(|b| b == a);
    let d = basis.len();
    let f = ctx.base();
    let mut x = vec![Mat::zeros(f, d, d); n];
    let mut g = vec![Mat::zeros(f, d, d); n];
    for (j, a) in basis.iter().enumerate() {
        for i in 0..n {
            if (a[i] as u32) + 1 < ell {
                let mut up = a.clone();
                up[i] += 1;
                if let Some(r) = pos(&up) {
                    x[i][(r, j)] = Fe::ONE;
                }
            }
            g[i][(j, j)] = ctx.q_pow(a[i] as i64 + chi.0[i] as i64);
        }
    }
    ModuleRep::assemble(ctx, x, g)
}

/// `M ⊗ N` with `X_i ↦ X_i ⊗ 1 + g_i ⊗ X_i`, `g_i ↦ g_i ⊗ g_i`; the left
/// factor is the outer index of the flattened basis.
pub fn tensor(m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    m.check_ctx(n)?;
    let f = m.ctx.base();
    let id_n = Mat::identity(f, n.dim);
    let x = (0..m.ctx.n())
        .map(|i| m.x[i].kron(&id_n).add(&m.g[i].kron(&n.x[i])))
        .collect();
    let g = (0..m.ctx.n()).map(|i| m.g[i].kron(&n.g[i])).collect();
    Ok(ModuleRep::assemble(&m.ctx, x, g))
}

/// `M^#` through the antipode: `ρ^#(u) = ρ(S(u))^T`.
pub fn dual(m: &ModuleRep) -> ModuleRep {
    let n = m.ctx.n();
    let g_inv: Vec<Mat> = (0..n).map(|i| m.g_inverse(i)).collect();
    let x = (0..n).map(|i| g_inv[i].mul(&m.x[i]).neg().transpose()).collect();
    let g = g_inv.iter().map(|gi| gi.transpose()).collect();
    ModuleRep::assemble(&m.ctx, x, g)
}

/// `M^#` through the inverse antipode: `ρ^#(u) = ρ(S^{-1}(u))^T`.
pub fn dual_inv(m: &ModuleRep) -> ModuleRep {
    let n = m.ctx.n();
    let f = m.ctx.base();
    let minus_q = f.neg(m.ctx.q());
    let g_inv: Vec<Mat> = (0..n).map(|i| m.g_inverse(i)).collect();
    let x = (0..n).map(|i| g_inv[i].mul(&m.x[i]).scale(minus_q).transpose()).collect();
    let g = g_inv.iter().map(|gi| gi.transpose()).collect();
    ModuleRep::assemble(&m.ctx, x, g)
}

/// Block-diagonal direct sum.
pub fn dsum(m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    m.check_ctx(n)?;
    let x = (0..m.ctx.n()).map(|i| Mat::block_diag(&[&m.x[i], &n.x[i]])).collect();
    let g = (0..m.ctx.n()).map(|i| Mat::block_diag(&[&m.g[i], &n.g[i]])).collect();
    Ok(ModuleRep::assemble(&m.ctx, x, g))
}

pub fn dsum_all(ctx: &Arc<FieldCtx>, parts: &[ModuleRep]) -> Result<ModuleRep> {
    parts.iter().try_fold(ModuleRep::zero(ctx), |acc, p| dsum(&acc, p))
}

/// Module over `R = k[X_1..X_n]/(X_i^ell)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    ctx: Arc<FieldCtx>,
    dim: usize,
    x: Vec<Mat>,
}

impl RModule {
    pub fn new(ctx: &Arc<FieldCtx>, x: Vec<Mat>) -> Result<RModule> {
        let m = RModule::assemble(ctx, x)?;
        m.validate()?;
        Ok(m)
    }

    fn assemble(ctx: &Arc<FieldCtx>, x: Vec<Mat>) -> Result<RModule> {
        if x.len() != ctx.n() {
            return Err(Error::DimensionMismatch(format!("expected {} X matrices", ctx.n())));
        }
        let dim = x.first().map_or(0, |m| m.rows());
        if x.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("X matrices must be square of one size".into()));
        }
        Ok(RModule { ctx: ctx.clone(), dim, x })
    }

    pub fn validate(&self) -> Result<()> {
        let ell = self.ctx.ell() as u64;
        for (i, xi) in self.x.iter().enumerate() {
            if !xi.pow(ell).is_zero() {
                return Err(Error::Validation(format!("X{}^{} = 0", i + 1, ell)));
            }
            for (j, xj) in self.x.iter().enumerate().skip(i + 1) {
                if xi.mul(xj) != xj.mul(xi) {
                    return Err(Error::Validation(format!("X{}X{} = X{}X{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn xs(&self) -> &[Mat] {
        &self.x
    }

    /// The free module `R` on the lexicographic monomial basis `X^a`.
    pub fn free_rank_one(ctx: &Arc<FieldCtx>) -> RModule {
        let chi = Char::trivial(ctx.n());
        let p = projective_indecomposable(ctx, &chi);
        RModule { ctx: ctx.clone(), dim: p.dim, x: p.x }
    }

    /// `k` with every `X_i` acting as 0.
    pub fn trivial(ctx: &Arc<FieldCtx>) -> RModule {
        RModule {
            ctx: ctx.clone(),
            dim: 1,
            x: vec![Mat::zeros(ctx.base(), 1, 1); ctx.n()],
        }
    }
}

/// Module over `R_q = k<Y_1..Y_n>/(Y_j Y_i - q Y_i Y_j, Y_i^ell)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RqModule {
    ctx: Arc<FieldCtx>,
    dim: usize,
    y: Vec<Mat>,
}

impl RqModule {
    pub fn new(ctx: &Arc<FieldCtx>, y: Vec<Mat>) -> Result<RqModule> {
        if y.len() != ctx.n() {
            return Err(Error::DimensionMismatch(format!("expected {} Y matrices", ctx.n())));
        }
        let dim = y.first().map_or(0, |m| m.rows());
        if y.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("Y matrices must be square of one size".into()));
        }
        let m = RqModule { ctx: ctx.clone(), dim, y };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let ell = self.ctx.ell() as u64;
        let q = self.ctx.q();
        for (i, yi) in self.y.iter().enumerate() {
            if !yi.pow(ell).is_zero() {
                return Err(Error::Validation(format!("Y{}^{} = 0", i + 1, ell)));
            }
            for (j, yj) in self.y.iter().enumerate().skip(i + 1) {
                if yj.mul(yi) != yi.mul(yj).scale(q) {
                    return Err(Error::Validation(format!("Y{}Y{} = q·Y{}Y{}", j + 1, i + 1, i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ys(&self) -> &[Mat] {
        &self.y
    }
}

pub fn restrict_to_r(m: &ModuleRep) -> RModule {
    RModule { ctx: m.ctx.clone(), dim: m.dim, x: m.x.clone() }
}

pub fn restrict_to_rq(m: &ModuleRep) -> RqModule {
    RqModule { ctx: m.ctx.clone(), dim: m.dim, y: m.y_matrices() }
}

/// Block `b` of an induced module sits at offset `index(b) * dim`.
fn group_block_index(b: &[u8], ell: u32) -> usize {
    b.iter().fold(0usize, |acc, &e| acc * ell as usize + e as usize)
}

fn shifted(b: &[u8], shift: &[i64], ell: u32) -> Vec<u8> {
    b.iter()
        .zip(shift)
        .map(|(&x, &s)| (x as i64 + s).rem_euclid(ell as i64) as u8)
        .collect()
}

/// Induced module on blocks `g^b ⊗ M`: `g_j` moves block `b` to `b + e_j`;
/// `op(i, b)` gives the target block and matrix for generator `X_i` on block
/// `b`.
fn induced_from_blocks(
    ctx: &Arc<FieldCtx>,
    d: usize,
    x_block: impl Fn(usize, &[u8]) -> (Vec<u8>, Mat),
) -> ModuleRep {
    let n = ctx.n();
    let ell = ctx.ell();
    let blocks = exponent_vectors(ell, n);
    let total = blocks.len() * d;
    let f = ctx.base();
    let id = Mat::identity(f, d);
    let mut x = vec![Mat::zeros(f, total, total); n];
    let mut g = vec![Mat::zeros(f, total, total); n];
    for b in &blocks {
        let src = group_block_index(b, ell) * d;
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let dst = group_block_index(&shifted(b, &e, ell), ell) * d;
            g[j].set_block(dst, src, &id);
        }
        for (i, xi) in x.iter_mut().enumerate() {
            let (target, blk) = x_block(i, b);
            let dst = group_block_index(&target, ell) * d;
            xi.set_block(dst, src, &blk);
        }
    }
    ModuleRep::assemble(ctx, x, g)
}

/// `A ⊗_R M` on the basis `g^b ⊗ m`: `X_i (g^b ⊗ m) = q^{-b_i} g^b ⊗ X_i m`.
pub fn induce_r(m: &RModule) -> ModuleRep {
    let ctx = &m.ctx;
    induced_from_blocks(ctx, m.dim, |i, b| (b.to_vec(), m.x[i].scale(ctx.q_pow(-(b[i] as i64)))))
}

/// `A ⊗_{R_q} M` through `R_q ⋊ G ≅ A`. On `g^b ⊗ m`,
/// `Y_i` acts by `q^{-b_i} g^b ⊗ Y_i m`, so
/// `X_i = Y_i (g_1..g_{i-1})^{-1}` sends block `b` to `b - (e_1+..+e_{i-1})`.
pub fn induce_rq(m: &RqModule) -> ModuleRep {
    let ctx = &m.ctx;
    let n = ctx.n();
    let ell = ctx.ell();
    induced_from_blocks(ctx, m.dim, |i, b| {
        let shift: Vec<i64> = (0..n).map(|j| if j < i { -1 } else { 0 }).collect();
        (shifted(b, &shift, ell), m.y[i].scale(ctx.q_pow(-(b[i] as i64))))
    })
}

/// `^g M`: `Y_i` acts as `χ_i(g^{-1}) Y_i = q^{-b_i} Y_i`.
pub fn twist_g(m: &RqModule, b: &[u8]) -> RqModule {
    let ctx = &m.ctx;
    let y = m.y.iter().enumerate().map(|(i, yi)| yi.scale(ctx.q_pow(-(b[i] as i64)))).collect();
    RqModule { ctx: ctx.clone(), dim: m.dim, y }
}

/// `φ(1 ⊗ m ⊗ 1) = g_i^{-1} m` as a matrix `S_{χ_i} ⊗ M ⊗ S_{χ_i}^# -> M`
/// (both sides share the basis of `M`).
pub fn conjugation_witness(m: &ModuleRep, i: usize) -> Mat {
    m.g_inverse(i)
}

/// The explicit maps
/// `φ: M↓_R↑^A -> ⊕_χ M ⊗ S_χ`, `φ(g ⊗ m) = (χ(g) g m ⊗ 1)_χ`, and
/// `ψ((m_χ ⊗ 1)_χ) = |G|^{-1} Σ_χ Σ_g χ(g^{-1}) g ⊗ g^{-1} m_χ`.
/// Blocks on both sides follow the lexicographic order of `b` resp. `χ`.
pub fn induction_witnesses(m: &ModuleRep) -> (Mat, Mat) {
    let ctx = &m.ctx;
    let f = ctx.base();
    let ell = ctx.ell();
    let d = m.dim;
    let group = exponent_vectors(ell, ctx.n());
    let chars = Char::all(ctx);
    let total = group.len() * d;
    let g_act: Vec<Mat> = group.iter().map(|b| m.group_action(b)).collect();
    let g_inv: Vec<Mat> = group
        .iter()
        .map(|b| m.group_action(&b.iter().map(|&x| ((ell - x as u32) % ell) as u8).collect::<Vec<_>>()))
        .collect();
    let order_inv = f.inv(f.from_int(group.len() as i64)).expect("|G| is invertible");
    let mut phi = Mat::zeros(f, total, total);
    let mut psi = Mat::zeros(f, total, total);
    for (bi, b) in group.iter().enumerate() {
        for (ci, chi) in chars.iter().enumerate() {
            phi.set_block(ci * d, bi * d, &g_act[bi].scale(chi.value(ctx, b)));
            let inv_b: Vec<u8> = b.iter().map(|&x| ((ell - x as u32) % ell) as u8).collect();
            let coeff = f.mul(order_inv, chi.value(ctx, &inv_b));
            psi.set_block(bi * d, ci * d, &g_inv[bi].scale(coeff));
        }
    }
    (phi, psi)
}

/// `⊕_χ M ⊗ S_χ` in lexicographic character order.
pub fn character_sum(m: &ModuleRep) -> Result<ModuleRep> {
    let parts: Result<Vec<ModuleRep>> =
        Char::all(&m.ctx).iter().map(|chi| tensor(m, &simple(&m.ctx, chi))).collect();
    dsum_all(&m.ctx, &parts?)
}

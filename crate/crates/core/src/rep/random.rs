//! Seeded random modules for test batteries.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{dsum, dual, induce_r, monomial_quotient, simple, tensor, trivial, Char, ModuleRep, RModule};
use crate::error::{Error, Result};
use crate::homol::omega_shift;
use crate::scalars::{Fe, FieldCtx, Mat};
use crate::variety::{carlson_module, PPoint};

const MAX_DEPTH: u32 = 3;
const MAX_TENSORS: u32 = 2;

/// How a random module was built; enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Trivial,
    Simple { chi: Vec<u8> },
    Carlson { lambda: Vec<u32> },
    Omega { shift: i32 },
    /// `induce_R(R / (relations))`, each relation a list of `(exponent, coefficient)`.
    InduceR { relations: Vec<Vec<(Vec<u8>, u32)>> },
    /// `P(χ)` modulo the monomial ideal with the given generators.
    Cyclic { chi: Vec<u8>, ideal: Vec<Vec<u8>> },
    Dual { inner: Box<Recipe> },
    Tensor { left: Box<Recipe>, right: Box<Recipe> },
    Dsum { left: Box<Recipe>, right: Box<Recipe> },
}

impl Recipe {
    pub fn build(&self, ctx: &Arc<FieldCtx>) -> Result<ModuleRep> {
        Ok(match self {
            Recipe::Trivial => trivial(ctx),
            Recipe::Simple { chi } => simple(ctx, &Char(chi.clone())),
            Recipe::Carlson { lambda } => {
                let coords: Vec<Fe> = lambda.iter().map(|&c| Fe(c)).collect();
                carlson_module(ctx, &PPoint::new(ctx.base(), coords)?)?
            }
            Recipe::Omega { shift } => omega_shift(&trivial(ctx), *shift),
            Recipe::InduceR { relations } => induce_r(&r_quotient(ctx, relations)),
            Recipe::Cyclic { chi, ideal } => monomial_quotient(ctx, &Char(chi.clone()), ideal),
            Recipe::Dual { inner } => dual(&inner.build(ctx)?),
            Recipe::Tensor { left, right } => tensor(&left.build(ctx)?, &right.build(ctx)?)?,
            Recipe::Dsum { left, right } => dsum(&left.build(ctx)?, &right.build(ctx)?)?,
        })
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            Recipe::Trivial => "k".into(),
            Recipe::Simple { chi } => format!("S{chi:?}"),
            Recipe::Carlson { lambda } => format!("L{lambda:?}"),
            Recipe::Omega { shift } => format!("Ω^{shift}(k)"),
            Recipe::InduceR { relations } => format!("Ind(R/{} rel)", relations.len()),
            Recipe::Cyclic { chi, ideal } => format!("P{chi:?}/{ideal:?}"),
            Recipe::Dual { inner } => format!("({})#", inner.describe()),
            Recipe::Tensor { left, right } => format!("({} ⊗ {})", left.describe(), right.describe()),
            Recipe::Dsum { left, right } => format!("({} ⊕ {})", left.describe(), right.describe()),
        }
    }
}

/// `R / I` where `I` is the ideal generated by the given elements.
pub(crate) fn r_quotient(ctx: &Arc<FieldCtx>, relations: &[Vec<(Vec<u8>, u32)>]) -> RModule {
    let free = RModule::free_rank_one(ctx);
    let ell = ctx.ell();
    let d = free.dim;
    let index = |a: &[u8]| a.iter().fold(0usize, |acc, &e| acc * ell as usize + e as usize);
    let mut v = Mat::zeros(ctx.base(), d, relations.len());
    for (j, rel) in relations.iter().enumerate() {
        for (a, c) in rel {
            v[(index(a), j)] = Fe(*c);
        }
    }
    let ideal = super::subquotient::generated_subspace(&free.x, &v);
    let x = super::subquotient::quotient(&free.x, &ideal);
    let dim = d - ideal.cols();
    RModule { ctx: ctx.clone(), dim, x }
}

struct Sampler<'a> {
    ctx: &'a Arc<FieldCtx>,
    rng: ChaCha8Rng,
    tensors_left: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ctor {
    Trivial,
    Simple,
    Carlson,
    Omega,
    InduceR,
    Cyclic,
    Dual,
    Tensor,
    Dsum,
}

const CTORS: [Ctor; 9] = [
    Ctor::Trivial,
    Ctor::Simple,
    Ctor::Carlson,
    Ctor::Omega,
    Ctor::InduceR,
    Ctor::Cyclic,
    Ctor::Dual,
    Ctor::Tensor,
    Ctor::Dsum,
];

impl Sampler<'_> {
    fn random_char(&mut self) -> Vec<u8> {
        let ell = self.ctx.ell();
        (0..self.ctx.n()).map(|_| self.rng.gen_range(0..ell) as u8).collect()
    }

    fn random_nonzero(&mut self) -> u32 {
        self.rng.gen_range(1..self.ctx.p())
    }

    fn random_exponent(&mut self, nonzero: bool) -> Vec<u8> {
        let ell = self.ctx.ell();
        loop {
            let a: Vec<u8> = (0..self.ctx.n()).map(|_| self.rng.gen_range(0..ell) as u8).collect();
            if !nonzero || a.iter().any(|&e| e > 0) {
                return a;
            }
        }
    }

    fn sample(&mut self, budget: usize, depth: u32) -> Option<(Recipe, ModuleRep)> {
        let mut candidates: Vec<Ctor> = CTORS
            .iter()
            .copied()
            .filter(|c| match c {
                Ctor::Dual | Ctor::Dsum => depth > 0,
                Ctor::Tensor => depth > 0 && self.tensors_left > 0,
                _ => true,
            })
            .collect();
        while !candidates.is_empty() {
            let pick = *candidates.choose(&mut self.rng).expect("nonempty");
            if let Some(out) = self.try_ctor(pick, budget, depth) {
                debug_assert!(out.1.dim() <= budget);
                return Some(out);
            }
            candidates.retain(|&c| c != pick);
        }
        None
    }

    fn try_ctor(&mut self, ctor: Ctor, budget: usize, depth: u32) -> Option<(Recipe, ModuleRep)> {
        let ctx = self.ctx;
        let n = ctx.n();
        let ell = ctx.ell();
        let group = ctx.group_order();
        let fits = |r: Recipe| -> Option<(Recipe, ModuleRep)> {
            let m = r.build(ctx).ok()?;
            (m.dim() <= budget).then_some((r, m))
        };
        match ctor {
            Ctor::Trivial => fits(Recipe::Trivial),
            Ctor::Simple => {
                let chi = self.random_char();
                fits(Recipe::Simple { chi })
            }
            Ctor::Carlson => {
                if ctx.algebra_dim() / ell as usize > budget {
                    return None;
                }
                let raw: Vec<Fe> = loop {
                    let v: Vec<Fe> = (0..n).map(|_| Fe(self.rng.gen_range(0..ctx.p()))).collect();
                    if v.iter().any(|x| !x.is_zero()) {
                        break v;
                    }
                };
                let lambda = PPoint::new(ctx.base(), raw).ok()?;
                fits(Recipe::Carlson { lambda: lambda.codes() })
            }
            Ctor::Omega => {
                let mut shifts = vec![-2, -1, 1, 2];
                shifts.shuffle(&mut self.rng);
                shifts.into_iter().find_map(|shift| fits(Recipe::Omega { shift }))
            }
            Ctor::InduceR => {
                if group > budget {
                    return None;
                }
                let mut relations = Vec::new();
                for _ in 0..2 * n + 2 {
                    relations.push(self.random_relation());
                    if group * r_quotient(ctx, &relations).dim <= budget {
                        return fits(Recipe::InduceR { relations });
                    }
                }
                None
            }
            Ctor::Cyclic => {
                let chi = self.random_char();
                let mut ideal: Vec<Vec<u8>> = Vec::new();
                let extra = self.rng.gen_range(0..=n);
                for _ in 0..extra {
                    ideal.push(self.random_exponent(true));
                }
                loop {
                    let m = monomial_quotient(ctx, &Char(chi.clone()), &ideal);
                    if m.dim() <= budget {
                        return Some((Recipe::Cyclic { chi, ideal }, m));
                    }
                    ideal.push(self.random_exponent(true));
                }
            }
            Ctor::Dual => {
                let (inner, m) = self.sample(budget, depth - 1)?;
                Some((Recipe::Dual { inner: Box::new(inner) }, dual(&m)))
            }
            Ctor::Tensor => {
                if budget < 2 {
                    return None;
                }
                self.tensors_left -= 1;
                let (l, ml) = self.sample((budget / 2).max(1), depth - 1)?;
                let (r, mr) = self.sample(budget / ml.dim().max(1), depth - 1)?;
                let m = tensor(&ml, &mr).ok()?;
                Some((Recipe::Tensor { left: Box::new(l), right: Box::new(r) }, m))
            }
            Ctor::Dsum => {
                if budget < 2 {
                    return None;
                }
                let (l, ml) = self.sample(budget - 1, depth - 1)?;
                let (r, mr) = self.sample(budget - ml.dim(), depth - 1)?;
                let m = dsum(&ml, &mr).ok()?;
                Some((Recipe::Dsum { left: Box::new(l), right: Box::new(r) }, m))
            }
        }
    }

    /// A sparse random element of the radical of `R`.
    fn random_relation(&mut self) -> Vec<(Vec<u8>, u32)> {
        let terms = self.rng.gen_range(1..=2);
        let mut rel: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
        for _ in 0..terms {
            let a = self.random_exponent(true);
            let c = self.random_nonzero();
            rel.insert(a, c);
        }
        rel.into_iter().collect()
    }
}

/// A random module of dimension at most `size_budget`, deterministic in
/// `seed`, together with the recipe that rebuilds it.
pub fn random_module(ctx: &Arc<FieldCtx>, seed: u64, size_budget: usize) -> Result<(Recipe, ModuleRep)> {
    if size_budget == 0 {
        return Err(Error::BudgetTooSmall { budget: size_budget });
    }
    let mut sampler = Sampler {
        ctx,
        rng: ChaCha8Rng::seed_from_u64(seed),
        tensors_left: MAX_TENSORS,
    };
    sampler
        .sample(size_budget, MAX_DEPTH)
        .ok_or(Error::BudgetTooSmall { budget: size_budget })
}

/// `R / I` for an ideal generated by random radical elements, of dimension
/// at most `max_dim` (which must be at least 1).
pub fn random_r_quotient(ctx: &Arc<FieldCtx>, seed: u64, max_dim: usize) -> Result<RModule> {
    if max_dim == 0 {
        return Err(Error::BudgetTooSmall { budget: max_dim });
    }
    let mut sampler = Sampler {
        ctx,
        rng: ChaCha8Rng::seed_from_u64(seed),
        tensors_left: 0,
    };
    let mut relations = Vec::new();
    loop {
        relations.push(sampler.random_relation());
        let q = r_quotient(ctx, &relations);
        if q.dim <= max_dim {
            return Ok(q);
        }
    }
}

/// Per-index seed derivation for batteries.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let c = FieldCtx::new(7, 3, 2).unwrap();
        for seed in 0..6 {
            let (r1, m1) = random_module(&c, seed, 20).unwrap();
            let (r2, m2) = random_module(&c, seed, 20).unwrap();
            assert_eq!(r1, r2);
            assert_eq!(m1, m2);
            assert!(m1.dim() <= 20);
            m1.validate().unwrap();
            assert_eq!(r1.build(&c).unwrap(), m1);
        }
    }

    #[test]
    fn zero_budget_is_rejected() {
        let c = FieldCtx::new(5, 2, 2).unwrap();
        assert_eq!(random_module(&c, 1, 0).unwrap_err(), Error::BudgetTooSmall { budget: 0 });
    }

    #[test]
    fn r_quotients_are_cyclic() {
        let c = FieldCtx::new(5, 2, 2).unwrap();
        for seed in 0..5 {
            let q = random_r_quotient(&c, seed, 3).unwrap();
            assert!(q.dim() >= 1 && q.dim() <= 3);
            q.validate().unwrap();
        }
        let full = r_quotient(&c, &[vec![(vec![1, 0], 1)], vec![(vec![0, 1], 1)]]);
        assert_eq!(full.dim(), 1);
    }

    #[test]
    fn seeds_spread() {
        let s: std::collections::BTreeSet<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 100);
    }
}

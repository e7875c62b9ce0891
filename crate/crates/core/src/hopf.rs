//! The algebra `A = k[X_1..X_n]/(X_i^ell) ⋊ (Z/ell)^n` on its PBW basis
//! `X^a g^b`, with its Hopf structure.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Fe, FieldCtx};

/// Basis monomial `X_1^{a_1}..X_n^{a_n} g_1^{b_1}..g_n^{b_n}`. The derived
/// order is lexicographic in `(a_1..a_n, b_1..b_n)`, which is the basis order
/// of every matrix representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.a.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("X{}", i + 1)),
                _ => parts.push(format!("X{}^{}", i + 1, e)),
            }
        }
        for (i, &e) in self.b.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("g{}", i + 1)),
                _ => parts.push(format!("g{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial { a: vec![0; n], b: vec![0; n] }
    }

    pub fn x(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.a[i] = 1;
        m
    }

    pub fn g(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.b[i] = 1;
        m
    }

    pub fn group(b: Vec<u8>) -> Monomial {
        Monomial { a: vec![0; b.len()], b }
    }

    /// Position in the lexicographic basis order.
    pub fn index(&self, ell: u32) -> usize {
        self.a
            .iter()
            .chain(&self.b)
            .fold(0usize, |acc, &e| acc * ell as usize + e as usize)
    }

    pub fn from_index(mut idx: usize, ell: u32, n: usize) -> Monomial {
        let mut digits = vec![0u8; 2 * n];
        for d in digits.iter_mut().rev() {
            *d = (idx % ell as usize) as u8;
            idx /= ell as usize;
        }
        let b = digits.split_off(n);
        Monomial { a: digits, b }
    }

    pub fn is_grouplike(&self) -> bool {
        self.a.iter().all(|&e| e == 0)
    }
}

/// All exponent vectors in `{0..ell-1}^n`, lexicographic.
pub fn exponent_vectors(ell: u32, n: usize) -> Vec<Vec<u8>> {
    let total = (ell as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0u8; n];
            for d in v.iter_mut().rev() {
                *d = (idx % ell as usize) as u8;
                idx /= ell as usize;
            }
            v
        })
        .collect()
}

/// Sparse linear combination of basis monomials of `A`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ctx: Arc<FieldCtx>,
    terms: BTreeMap<Monomial, Fe>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if *c == Fe::ONE { format!("{m:?}") } else { format!("{}·{m:?}", c.0) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<FieldCtx>) -> AlgebraElement {
        AlgebraElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn from_terms(ctx: &Arc<FieldCtx>, terms: impl IntoIterator<Item = (Monomial, Fe)>) -> AlgebraElement {
        let mut out = AlgebraElement::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, m: Monomial) -> AlgebraElement {
        AlgebraElement::from_terms(ctx, [(m, Fe::ONE)])
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> AlgebraElement {
        AlgebraElement::monomial(ctx, Monomial::one(ctx.n()))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).copied().unwrap_or(Fe::ZERO)
    }

    fn add_term(&mut self, m: Monomial, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = self.ctx.base();
        let entry = self.terms.entry(m.clone()).or_insert(Fe::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Fe) -> AlgebraElement {
        let f = self.ctx.base();
        AlgebraElement::from_terms(&self.ctx, self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))))
    }
}

/// Element of the `k`-fold tensor power `A^{⊗k}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Fe>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> TensorElement {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, Fe> {
        &self.terms
    }

    fn add_term(&mut self, ctx: &FieldCtx, key: Vec<Monomial>, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = ctx.base();
        let entry = self.terms.entry(key.clone()).or_insert(Fe::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

/// Which value the antipode takes on the grouplike generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AntipodeConvention {
    /// `S(g_i) = g_i^{-1}`, forced by `S(g) g = ε(g) 1`.
    Axiomatic,
    /// `S(g_i) = -g_i^{-1}`. Violates the antipode axiom; kept so the axiom
    /// suite can demonstrate the failure.
    NegatedGrouplike,
}

/// The Hopf algebra `A` over a fixed context.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    ctx: Arc<FieldCtx>,
    antipode: AntipodeConvention,
}

impl HopfAlgebra {
    pub fn new(ctx: &Arc<FieldCtx>) -> HopfAlgebra {
        HopfAlgebra { ctx: ctx.clone(), antipode: AntipodeConvention::Axiomatic }
    }

    pub fn with_antipode(ctx: &Arc<FieldCtx>, antipode: AntipodeConvention) -> HopfAlgebra {
        HopfAlgebra { ctx: ctx.clone(), antipode }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn basis(&self) -> Vec<Monomial> {
        let (ell, n) = (self.ctx.ell(), self.ctx.n());
        (0..self.ctx.algebra_dim()).map(|i| Monomial::from_index(i, ell, n)).collect()
    }

    pub fn x(&self, i: usize) -> AlgebraElement {
        AlgebraElement::monomial(&self.ctx, Monomial::x(self.n(), i))
    }

    pub fn g(&self, i: usize) -> AlgebraElement {
        AlgebraElement::monomial(&self.ctx, Monomial::g(self.n(), i))
    }

    /// `g^b` for an exponent vector.
    pub fn group_element(&self, b: &[u8]) -> AlgebraElement {
        let ell = self.ctx.ell() as u8;
        AlgebraElement::monomial(&self.ctx, Monomial::group(b.iter().map(|&x| x % ell).collect()))
    }

    fn check(&self, u: &AlgebraElement) -> Result<()> {
        if *u.ctx != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// `(X^a g^b)(X^c g^d) = q^{<b,c>} X^{a+c} g^{b+d}`, or `None` when some
    /// `a_i + c_i >= ell`.
    pub fn monomial_product(&self, u: &Monomial, v: &Monomial) -> Option<(Fe, Monomial)> {
        let ell = self.ctx.ell();
        let mut a = Vec::with_capacity(u.a.len());
        for (x, y) in u.a.iter().zip(&v.a) {
            let s = *x as u32 + *y as u32;
            if s >= ell {
                return None;
            }
            a.push(s as u8);
        }
        let b = u.b.iter().zip(&v.b).map(|(x, y)| ((*x as u32 + *y as u32) % ell) as u8).collect();
        let pairing: i64 = u.b.iter().zip(&v.a).map(|(x, y)| *x as i64 * *y as i64).sum();
        Some((self.ctx.q_pow(pairing), Monomial { a, b }))
    }

    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    fn mul_unchecked(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let f = self.ctx.base();
        let mut out = AlgebraElement::zero(&self.ctx);
        for (mu, &cu) in &u.terms {
            for (mv, &cv) in &v.terms {
                if let Some((c, m)) = self.monomial_product(mu, mv) {
                    out.add_term(m, f.mul(f.mul(cu, cv), c));
                }
            }
        }
        out
    }

    pub fn power(&self, u: &AlgebraElement, e: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one(&self.ctx);
        for _ in 0..e {
            acc = self.mul_unchecked(&acc, u);
        }
        acc
    }

    /// Product of a word of elements, left to right.
    fn product(&self, factors: &[AlgebraElement]) -> AlgebraElement {
        factors
            .iter()
            .fold(AlgebraElement::one(&self.ctx), |acc, x| self.mul_unchecked(&acc, x))
    }

    fn tensor_mul(&self, u: &TensorElement, v: &TensorElement) -> TensorElement {
        assert_eq!(u.arity, v.arity);
        let f = self.ctx.base();
        let mut out = TensorElement::zero(u.arity);
        for (ku, &cu) in &u.terms {
            'inner: for (kv, &cv) in &v.terms {
                let mut coeff = f.mul(cu, cv);
                let mut key = Vec::with_capacity(u.arity);
                for (x, y) in ku.iter().zip(kv) {
                    match self.monomial_product(x, y) {
                        Some((c, m)) => {
                            coeff = f.mul(coeff, c);
                            key.push(m);
                        }
                        None => continue 'inner,
                    }
                }
                out.add_term(&self.ctx, key, coeff);
            }
        }
        out
    }

    fn tensor_one(&self, arity: usize) -> TensorElement {
        let mut t = TensorElement::zero(arity);
        t.add_term(&self.ctx, vec![Monomial::one(self.n()); arity], Fe::ONE);
        t
    }

    /// Embeds an element of `A` as a tensor of arity 1.
    pub fn as_tensor(&self, u: &AlgebraElement) -> TensorElement {
        let mut t = TensorElement::zero(1);
        for (m, &c) in &u.terms {
            t.add_term(&self.ctx, vec![m.clone()], c);
        }
        t
    }

    fn coproduct_generator_x(&self, i: usize) -> TensorElement {
        let n = self.n();
        let mut t = TensorElement::zero(2);
        t.add_term(&self.ctx, vec![Monomial::x(n, i), Monomial::one(n)], Fe::ONE);
        t.add_term(&self.ctx, vec![Monomial::g(n, i), Monomial::x(n, i)], Fe::ONE);
        t
    }

    fn coproduct_generator_g(&self, i: usize) -> TensorElement {
        let n = self.n();
        let mut t = TensorElement::zero(2);
        t.add_term(&self.ctx, vec![Monomial::g(n, i), Monomial::g(n, i)], Fe::ONE);
        t
    }

    /// `Δ` on a basis monomial: the ordered product
    /// `Δ(X_1)^{a_1}..Δ(X_n)^{a_n} Δ(g_1)^{b_1}..Δ(g_n)^{b_n}`.
    pub fn coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        let mut acc = self.tensor_one(2);
        for i in 0..self.n() {
            let dx = self.coproduct_generator_x(i);
            for _ in 0..m.a[i] {
                acc = self.tensor_mul(&acc, &dx);
            }
        }
        for i in 0..self.n() {
            let dg = self.coproduct_generator_g(i);
            for _ in 0..m.b[i] {
                acc = self.tensor_mul(&acc, &dg);
            }
        }
        acc
    }

    pub fn coproduct(&self, u: &AlgebraElement) -> TensorElement {
        let f = self.ctx.base();
        let mut out = TensorElement::zero(2);
        for (m, &c) in &u.terms {
            for (k, &v) in &self.coproduct_monomial(m).terms {
                out.add_term(&self.ctx, k.clone(), f.mul(c, v));
            }
        }
        out
    }

    /// Applies `Δ` to tensor factor `pos`, raising the arity by one.
    pub fn coproduct_at(&self, t: &TensorElement, pos: usize) -> TensorElement {
        assert!(pos < t.arity);
        let f = self.ctx.base();
        let mut out = TensorElement::zero(t.arity + 1);
        for (key, &c) in &t.terms {
            for (split, &v) in &self.coproduct_monomial(&key[pos]).terms {
                let mut k = key[..pos].to_vec();
                k.extend(split.iter().cloned());
                k.extend(key[pos + 1..].iter().cloned());
                out.add_term(&self.ctx, k, f.mul(c, v));
            }
        }
        out
    }

    pub fn counit_monomial(&self, m: &Monomial) -> Fe {
        if m.a.iter().all(|&e| e == 0) {
            Fe::ONE
        } else {
            Fe::ZERO
        }
    }

    pub fn counit(&self, u: &AlgebraElement) -> Fe {
        let f = self.ctx.base();
        u.terms
            .iter()
            .fold(Fe::ZERO, |acc, (m, &c)| f.add(acc, f.mul(c, self.counit_monomial(m))))
    }

    /// Applies `ε` to tensor factor `pos`, lowering the arity by one.
    pub fn counit_at(&self, t: &TensorElement, pos: usize) -> TensorElement {
        let f = self.ctx.base();
        let mut out = TensorElement::zero(t.arity - 1);
        for (key, &c) in &t.terms {
            let e = self.counit_monomial(&key[pos]);
            let mut k = key.clone();
            k.remove(pos);
            out.add_term(&self.ctx, k, f.mul(c, e));
        }
        out
    }

    /// Anti-multiplicative extension of generator images over the word
    /// `X_1^{a_1}..X_n^{a_n} g^b`.
    fn anti_extend(&self, m: &Monomial, sx: &dyn Fn(usize) -> AlgebraElement, sg: &dyn Fn(usize) -> AlgebraElement) -> AlgebraElement {
        let mut word = Vec::new();
        for i in 0..self.n() {
            for _ in 0..m.a[i] {
                word.push(sx(i));
            }
        }
        for i in 0..self.n() {
            for _ in 0..m.b[i] {
                word.push(sg(i));
            }
        }
        word.reverse();
        self.product(&word)
    }

    fn g_inverse(&self, i: usize) -> AlgebraElement {
        let mut b = vec![0u8; self.n()];
        b[i] = (self.ctx.ell() - 1) as u8;
        self.group_element(&b)
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> AlgebraElement {
        let f = self.ctx.base();
        let minus_one = f.neg(Fe::ONE);
        let sx = |i: usize| self.mul_unchecked(&self.g_inverse(i), &self.x(i)).scale(minus_one);
        let sg = |i: usize| match self.antipode {
            AntipodeConvention::Axiomatic => self.g_inverse(i),
            AntipodeConvention::NegatedGrouplike => self.g_inverse(i).scale(minus_one),
        };
        self.anti_extend(m, &sx, &sg)
    }

    pub fn antipode(&self, u: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ctx);
        for (m, &c) in &u.terms {
            out = out.add(&self.antipode_monomial(m).scale(c));
        }
        out
    }

    /// `S^{-1}(g_i) = g_i^{-1}`, `S^{-1}(X_i) = -q g_i^{-1} X_i`, extended
    /// anti-multiplicatively.
    pub fn antipode_inv_monomial(&self, m: &Monomial) -> AlgebraElement {
        let f = self.ctx.base();
        let minus_q = f.neg(self.ctx.q());
        let sx = |i: usize| self.mul_unchecked(&self.g_inverse(i), &self.x(i)).scale(minus_q);
        let sg = |i: usize| self.g_inverse(i);
        self.anti_extend(m, &sx, &sg)
    }

    pub fn antipode_inv(&self, u: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ctx);
        for (m, &c) in &u.terms {
            out = out.add(&self.antipode_inv_monomial(m).scale(c));
        }
        out
    }

    /// Checks `S^{-1}(S(m)) = m = S(S^{-1}(m))` on the whole basis.
    pub fn antipode_inverse_is_consistent(&self) -> bool {
        self.basis().iter().all(|m| {
            let u = AlgebraElement::monomial(&self.ctx, m.clone());
            self.antipode_inv(&self.antipode(&u)) == u && self.antipode(&self.antipode_inv(&u)) == u
        })
    }

    /// `Y_i = X_i g_1..g_{i-1}` for `1 <= i <= n`.
    pub fn y_element(&self, i: usize) -> Result<AlgebraElement> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut m = Monomial::x(n, i - 1);
        for j in 0..i - 1 {
            m.b[j] = 1;
        }
        Ok(AlgebraElement::monomial(&self.ctx, m))
    }

    /// `τ_λ(t) = Σ λ_i Y_i` for a point with prime-field coordinates.
    pub fn tau(&self, lambda: &[Fe]) -> Result<AlgebraElement> {
        if lambda.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, expected {}",
                lambda.len(),
                self.n()
            )));
        }
        if lambda.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPoint);
        }
        let mut out = AlgebraElement::zero(&self.ctx);
        for (i, &c) in lambda.iter().enumerate() {
            out = out.add(&self.y_element(i + 1)?.scale(c));
        }
        Ok(out)
    }

    /// Multiplication map `A^{⊗2} -> A` applied after `op` on one factor.
    fn multiply_out(&self, t: &TensorElement, left: bool) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ctx);
        for (key, &c) in &t.terms {
            let (u, v) = if left {
                (self.antipode_monomial(&key[0]), AlgebraElement::monomial(&self.ctx, key[1].clone()))
            } else {
                (AlgebraElement::monomial(&self.ctx, key[0].clone()), self.antipode_monomial(&key[1]))
            };
            out = out.add(&self.mul_unchecked(&u, &v).scale(c));
        }
        out
    }

    /// `(Δ ⊗ id)Δ(m) = (id ⊗ Δ)Δ(m)`.
    pub fn coassociative_on(&self, m: &Monomial) -> bool {
        let d = self.coproduct_monomial(m);
        self.coproduct_at(&d, 0) == self.coproduct_at(&d, 1)
    }

    /// `(ε ⊗ id)Δ(m) = m = (id ⊗ ε)Δ(m)`.
    pub fn counital_on(&self, m: &Monomial) -> bool {
        let d = self.coproduct_monomial(m);
        let u = self.as_tensor(&AlgebraElement::monomial(&self.ctx, m.clone()));
        self.counit_at(&d, 0) == u && self.counit_at(&d, 1) == u
    }

    /// `Σ S(m_1) m_2 = ε(m) 1 = Σ m_1 S(m_2)`.
    pub fn antipode_axiom_on(&self, m: &Monomial) -> bool {
        let d = self.coproduct_monomial(m);
        let expect = AlgebraElement::one(&self.ctx).scale(self.counit_monomial(m));
        self.multiply_out(&d, true) == expect && self.multiply_out(&d, false) == expect
    }

    /// `Δ(uv) = Δ(u)Δ(v)`.
    pub fn multiplicative_on(&self, u: &AlgebraElement, v: &AlgebraElement) -> bool {
        let lhs = self.coproduct(&self.mul_unchecked(u, v));
        let rhs = self.tensor_mul(&self.coproduct(u), &self.coproduct(v));
        lhs == rhs
    }

    /// `S^2(m) = h m h^{-1}` with `h = (g_1..g_n)^{-1}`.
    pub fn antipode_square_is_inner_on(&self, m: &Monomial) -> bool {
        let u = AlgebraElement::monomial(&self.ctx, m.clone());
        let ell = self.ctx.ell() as u8;
        let h = self.group_element(&vec![ell - 1; self.n()]);
        let h_inv = self.group_element(&vec![1; self.n()]);
        let conj = self.product(&[h, u.clone(), h_inv]);
        self.antipode(&self.antipode(&u)) == conj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32, ell: u32, n: usize) -> HopfAlgebra {
        HopfAlgebra::new(&FieldCtx::new(p, ell, n).unwrap())
    }

    #[test]
    fn g_moves_past_x_with_q() {
        let a = alg(7, 3, 2);
        let prod = a.multiply(&a.g(0), &a.x(0)).unwrap();
        let mut m = Monomial::x(2, 0);
        m.b[0] = 1;
        let expect = AlgebraElement::from_terms(a.ctx(), [(m, a.ctx().q())]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn truncation_and_group_order() {
        let a = alg(7, 3, 2);
        let x2 = a.power(&a.x(0), 2);
        assert!(a.multiply(&x2, &a.x(0)).unwrap().is_zero());
        let g2 = a.power(&a.g(0), 2);
        assert_eq!(a.multiply(&a.g(0), &g2).unwrap(), AlgebraElement::one(a.ctx()));
    }

    #[test]
    fn defining_relations_on_generators() {
        for (p, ell, n) in [(5, 2, 2), (7, 3, 2), (5, 2, 3)] {
            let a = alg(p, ell, n);
            let q = a.ctx().q();
            for i in 0..n {
                assert!(a.power(&a.x(i), ell).is_zero());
                assert_eq!(a.power(&a.g(i), ell), AlgebraElement::one(a.ctx()));
                for j in 0..n {
                    let xx = a.multiply(&a.x(i), &a.x(j)).unwrap();
                    assert_eq!(xx, a.multiply(&a.x(j), &a.x(i)).unwrap());
                    let gg = a.multiply(&a.g(i), &a.g(j)).unwrap();
                    assert_eq!(gg, a.multiply(&a.g(j), &a.g(i)).unwrap());
                    let gx = a.multiply(&a.g(i), &a.x(j)).unwrap();
                    let xg = a.multiply(&a.x(j), &a.g(i)).unwrap();
                    let c = if i == j { q } else { Fe::ONE };
                    assert_eq!(gx, xg.scale(c));
                }
            }
        }
    }

    #[test]
    fn coproduct_of_generators() {
        let a = alg(5, 2, 2);
        let dg = a.coproduct(&a.g(0));
        assert_eq!(dg.terms().len(), 1);
        assert_eq!(dg.terms()[&vec![Monomial::g(2, 0), Monomial::g(2, 0)]], Fe::ONE);
        let dx = a.coproduct(&a.x(0));
        assert_eq!(dx.terms().len(), 2);
        assert_eq!(dx.terms()[&vec![Monomial::x(2, 0), Monomial::one(2)]], Fe::ONE);
        assert_eq!(dx.terms()[&vec![Monomial::g(2, 0), Monomial::x(2, 0)]], Fe::ONE);
        let d1 = a.coproduct(&AlgebraElement::one(a.ctx()));
        assert_eq!(d1.terms().len(), 1);
        assert_eq!(d1.terms()[&vec![Monomial::one(2), Monomial::one(2)]], Fe::ONE);
    }

    #[test]
    fn antipode_values() {
        let a = alg(7, 3, 2);
        assert_eq!(a.antipode(&a.g(0)), a.group_element(&[2, 0]));
        let mut m = Monomial::x(2, 0);
        m.b[0] = 2;
        let f = a.ctx().base();
        // -g^{-1} X = -q^{-1} X g^{-1} in normal order.
        let expect = AlgebraElement::from_terms(a.ctx(), [(m, f.neg(a.ctx().q_pow(-1)))]);
        assert_eq!(a.antipode(&a.x(0)), expect);
        assert_eq!(a.antipode_inv(&a.antipode(&a.x(0))), a.x(0));
        assert!(a.antipode_inverse_is_consistent());
    }

    #[test]
    fn hopf_axioms_small() {
        for (p, ell, n) in [(5, 2, 1), (5, 2, 2), (7, 3, 2)] {
            let a = alg(p, ell, n);
            for m in a.basis() {
                assert!(a.coassociative_on(&m), "{m:?}");
                assert!(a.counital_on(&m), "{m:?}");
                assert!(a.antipode_axiom_on(&m), "{m:?}");
                assert!(a.antipode_square_is_inner_on(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn negated_grouplike_antipode_breaks_the_axiom() {
        let ctx = FieldCtx::new(5, 2, 1).unwrap();
        let a = HopfAlgebra::with_antipode(&ctx, AntipodeConvention::NegatedGrouplike);
        assert!(!a.antipode_axiom_on(&Monomial::g(1, 0)));
    }

    #[test]
    fn y_elements_q_commute() {
        let a = alg(7, 3, 2);
        let y1 = a.y_element(1).unwrap();
        let y2 = a.y_element(2).unwrap();
        assert_eq!(y1, a.x(0));
        let mut m = Monomial::x(2, 1);
        m.b[0] = 1;
        assert_eq!(y2, AlgebraElement::monomial(a.ctx(), m));
        let lhs = a.multiply(&y2, &y1).unwrap();
        let rhs = a.multiply(&y1, &y2).unwrap().scale(a.ctx().q());
        assert_eq!(lhs, rhs);
        assert!(a.y_element(0).is_err());
        assert!(a.y_element(3).is_err());
    }

    #[test]
    fn tau_examples() {
        let a = alg(5, 2, 2);
        assert_eq!(a.tau(&[Fe(1), Fe(0)]).unwrap(), a.x(0));
        let t = a.tau(&[Fe(1), Fe(1)]).unwrap();
        assert_eq!(t, a.x(0).add(&a.y_element(2).unwrap()));
        assert!(a.power(&t, 2).is_zero());
        assert_eq!(a.tau(&[Fe(0), Fe(0)]), Err(Error::ZeroPoint));
    }

    #[test]
    fn monomial_index_roundtrip() {
        for i in 0..81 {
            let m = Monomial::from_index(i, 3, 2);
            assert_eq!(m.index(3), i);
        }
        let mut sorted: Vec<Monomial> = (0..81).map(|i| Monomial::from_index(i, 3, 2)).collect();
        let orig = sorted.clone();
        sorted.sort();
        assert_eq!(sorted, orig);
    }
}

//! Exact arithmetic in `F_p` and `F_{p^e}`, dense matrices over them, and the
//! context that fixes the prime, the root of unity `q` and the rank `n`.

mod field;
mod mat;
pub mod poly;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use field::{Fe, Field};
pub use mat::Mat;

use crate::error::{Error, Result};

/// Extension degrees whose fields are built eagerly with every context.
pub const DEFAULT_DEGREES: [u32; 2] = [1, 2];

/// A prime field `F_p` with a chosen primitive `ell`-th root of unity `q`,
/// the number `n` of generator pairs, and cached extension fields.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    ell: u32,
    n: usize,
    q: Fe,
    base: Arc<Field>,
    ext: BTreeMap<u32, Arc<Field>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.ell == other.ell && self.n == other.n
    }
}
impl Eq for FieldCtx {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest generator of `F_p^*`.
pub fn least_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let factors = poly::prime_factors((p - 1) as u64);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&r| poly::pow_mod(g, (p as u64 - 1) / r, p) != 1)
        })
        .expect("prime fields have primitive roots")
}

impl FieldCtx {
    /// Validates `(p, ell, n)` and picks `q = g^((p-1)/ell)` for the least
    /// primitive root `g`.
    pub fn new(p: u32, ell: u32, n: usize) -> Result<Arc<FieldCtx>> {
        if ell < 2 {
            return Err(Error::EllTooSmall(ell));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if (p - 1) % ell != 0 {
            return Err(Error::BadCongruence { p, ell });
        }
        if n == 0 {
            return Err(Error::RankTooSmall);
        }
        if p > u16::MAX as u32 {
            return Err(Error::Format(format!("prime {p} exceeds the supported range")));
        }
        let g = least_primitive_root(p);
        let q = Fe(poly::pow_mod(g, ((p - 1) / ell) as u64, p));
        let base = Arc::new(Field::prime(p));
        let mut ext = BTreeMap::new();
        for e in DEFAULT_DEGREES {
            let fld = if e == 1 { base.clone() } else { Arc::new(Field::extension(p, e)) };
            ext.insert(e, fld);
        }
        Ok(Arc::new(FieldCtx { p, ell, n, q, base, ext }))
    }

    /// Same field data, different number of generator pairs (used for
    /// `A ⊗ A`, which has rank `2n`).
    pub fn with_rank(&self, n: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx {
            n,
            base: self.base.clone(),
            ext: self.ext.clone(),
            ..*self
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Fe {
        self.q
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    /// `|G| = ell^n`.
    pub fn group_order(&self) -> usize {
        (self.ell as usize).pow(self.n as u32)
    }

    /// `dim A = ell^(2n)`.
    pub fn algebra_dim(&self) -> usize {
        self.group_order() * self.group_order()
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Fe {
        let e = k.rem_euclid(self.ell as i64) as u64;
        self.base.pow(self.q, e)
    }

    /// The field `F_{p^e}`; degree 1 is the base field itself. The modulus is
    /// the least monic irreducible of degree `e`, so the result depends only
    /// on `(p, e)`.
    pub fn extend(&self, e: u32) -> Result<Arc<Field>> {
        if e == 0 {
            return Err(Error::BadDegree);
        }
        Ok(match self.ext.get(&e) {
            Some(f) => f.clone(),
            None => Arc::new(Field::extension(self.p, e)),
        })
    }

    pub fn same_as(&self, other: &FieldCtx) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chosen_roots_of_unity() {
        let c = FieldCtx::new(7, 3, 2).unwrap();
        assert!(c.q() == Fe(2) || c.q() == Fe(4));
        assert_eq!(c.q(), Fe(2));
        assert_eq!(FieldCtx::new(5, 2, 2).unwrap().q(), Fe(4));
        assert_eq!(FieldCtx::new(7, 2, 1).unwrap().q(), Fe(6));
    }

    #[test]
    fn q_is_primitive() {
        for &(p, ell) in &[(5u32, 2u32), (7, 3), (11, 5), (13, 4), (31, 6)] {
            let c = FieldCtx::new(p, ell, 1).unwrap();
            let powers: std::collections::BTreeSet<Fe> =
                (0..ell as i64).map(|k| c.q_pow(k)).collect();
            assert_eq!(powers.len(), ell as usize);
            assert_eq!(c.q_pow(ell as i64), Fe::ONE);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(9, 2, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldCtx::new(7, 4, 1).unwrap_err(), Error::BadCongruence { p: 7, ell: 4 });
        assert_eq!(FieldCtx::new(7, 1, 1).unwrap_err(), Error::EllTooSmall(1));
        assert_eq!(FieldCtx::new(7, 3, 0).unwrap_err(), Error::RankTooSmall);
    }

    #[test]
    fn extension_is_deterministic() {
        let c = FieldCtx::new(5, 2, 2).unwrap();
        assert_eq!(c.extend(1).unwrap().order(), 5);
        let a = c.extend(2).unwrap();
        let b = Field::extension(5, 2);
        assert_eq!(*a, b);
        assert_eq!(a.order(), 25);
        assert_eq!(c.extend(3).unwrap().modulus(), Field::extension(5, 3).modulus());
    }
}

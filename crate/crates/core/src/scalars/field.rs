use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};

/// An element of a finite field, stored as its code `c_0 + c_1 p + ..` where
/// `c_i` are the coefficients in the power basis of the field's modulus.
///
/// For prime fields the code is the residue. The integer order on codes is
/// the fixed element order used by canonical forms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Full operation tables are kept for fields up to this order.
const TABLE_LIMIT: u32 = 1024;

enum Ops {
    Tables {
        add: Vec<u16>,
        mul: Vec<u16>,
        neg: Vec<u16>,
        inv: Vec<u16>,
    },
    Prime,
    LogExp {
        log: Vec<u32>,
        exp: Vec<u32>,
    },
}

/// The finite field `F_{p^e}` with a fixed monic irreducible modulus.
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Poly,
    ops: Ops,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// The prime field `F_p`. `p` must be prime.
    pub fn prime(p: u32) -> Field {
        Field::with_modulus(p, vec![0, 1])
    }

    /// `F_{p^e}` built on the least monic irreducible of degree `e`.
    pub fn extension(p: u32, e: u32) -> Field {
        if e == 1 {
            return Field::prime(p);
        }
        Field::with_modulus(p, poly::least_irreducible(p, e as usize))
    }

    fn with_modulus(p: u32, modulus: Poly) -> Field {
        let degree = (modulus.len() - 1) as u32;
        let order = (p as u64).pow(degree);
        assert!(order <= u32::MAX as u64 / 2, "field too large");
        let order = order as u32;
        let mut field = Field {
            p,
            degree,
            order,
            modulus,
            ops: Ops::Prime,
        };
        if order <= TABLE_LIMIT {
            field.ops = field.build_tables();
        } else if degree > 1 {
            field.ops = field.build_log_exp();
        }
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut c = a.0;
        (0..self.degree)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.p + d % self.p;
        }
        Fe(code)
    }

    /// Embeds an integer residue through the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    /// Every element in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let prod = poly::mulmod(
            &poly::trim(self.digits(a)),
            &poly::trim(self.digits(b)),
            &self.modulus,
            self.p,
        );
        self.from_digits(&prod)
    }

    fn digit_add(&self, a: Fe, b: Fe) -> Fe {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.degree {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * scale;
            scale = scale.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        Fe(out)
    }

    fn digit_neg(&self, a: Fe) -> Fe {
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.degree {
            let d = (self.p - x % self.p) % self.p;
            out += d * scale;
            scale = scale.wrapping_mul(self.p);
            x /= self.p;
        }
        Fe(out)
    }

    fn build_tables(&self) -> Ops {
        let q = self.order as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = self.digit_neg(Fe(a as u32)).0 as u16;
            for b in 0..q {
                add[a * q + b] = self.digit_add(Fe(a as u32), Fe(b as u32)).0 as u16;
                let m = if self.degree == 1 {
                    ((a as u64 * b as u64) % self.p as u64) as u32
                } else {
                    self.slow_mul(Fe(a as u32), Fe(b as u32)).0
                };
                mul[a * q + b] = m as u16;
                if m == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Ops::Tables { add, mul, neg, inv }
    }

    fn build_log_exp(&self) -> Ops {
        let q = self.order;
        let factors = poly::prime_factors((q - 1) as u64);
        let generator = (2..q)
            .map(Fe)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, (q as u64 - 1) / r) != Fe::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut cur = Fe::ONE;
        for k in 0..q - 1 {
            exp[k as usize] = cur.0;
            log[cur.0 as usize] = k;
            cur = self.slow_mul(cur, generator);
        }
        Ops::LogExp { log, exp }
    }

    fn slow_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.ops {
            Ops::Tables { add, .. } => Fe(add[(a.0 * self.order + b.0) as usize] as u32),
            Ops::Prime => {
                let s = a.0 + b.0;
                Fe(if s >= self.p { s - self.p } else { s })
            }
            Ops::LogExp { .. } => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.ops {
            Ops::Tables { neg, .. } => Fe(neg[a.0 as usize] as u32),
            Ops::Prime => Fe(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Ops::LogExp { .. } => self.digit_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.ops {
            Ops::Tables { mul, .. } => Fe(mul[(a.0 * self.order + b.0) as usize] as u32),
            Ops::Prime => Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Ops::LogExp { log, exp } => {
                if a.is_zero() || b.is_zero() {
                    return Fe::ZERO;
                }
                let s = (log[a.0 as usize] as u64 + log[b.0 as usize] as u64)
                    % (self.order as u64 - 1);
                Fe(exp[s as usize])
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.ops {
            Ops::Tables { inv, .. } => Fe(inv[a.0 as usize] as u32),
            Ops::Prime => Fe(poly::inv_mod(a.0, self.p)),
            Ops::LogExp { log, exp } => {
                let l = log[a.0 as usize];
                Fe(exp[((self.order - 1 - l) % (self.order - 1)) as usize])
            }
        })
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> u64 {
        assert!(!a.is_zero());
        let mut ord = self.order as u64 - 1;
        for r in poly::prime_factors(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Maps an element of the prime subfield of `sub` into `self`.
    /// Both fields must share the characteristic; only prime-field codes
    /// (`< p`) are valid inputs, and they embed coefficient-wise.
    #[inline]
    pub fn embed_prime(&self, a: Fe) -> Fe {
        debug_assert!(a.0 < self.p);
        a
    }

    /// `dst[k] += f * src[k]` for all `k`.
    pub fn axpy(&self, dst: &mut [Fe], f: Fe, src: &[Fe]) {
        debug_assert_eq!(dst.len(), src.len());
        if f.is_zero() {
            return;
        }
        match &self.ops {
            Ops::Tables { add, mul, .. } => {
                let q = self.order as usize;
                let row = &mul[f.0 as usize * q..(f.0 as usize + 1) * q];
                if self.degree == 1 {
                    let p = self.p;
                    for (d, s) in dst.iter_mut().zip(src) {
                        let t = d.0 + row[s.0 as usize] as u32;
                        d.0 = if t >= p { t - p } else { t };
                    }
                } else {
                    for (d, s) in dst.iter_mut().zip(src) {
                        if s.0 != 0 {
                            d.0 = add[d.0 as usize * q + row[s.0 as usize] as usize] as u32;
                        }
                    }
                }
            }
            Ops::Prime => {
                let p = self.p as u64;
                let f = f.0 as u64;
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 = ((d.0 as u64 + f * s.0 as u64) % p) as u32;
                }
            }
            Ops::LogExp { .. } => {
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d = self.add(*d, self.mul(f, *s));
                    }
                }
            }
        }
    }

    /// `v[k] *= f` for all `k`.
    pub fn scale(&self, v: &mut [Fe], f: Fe) {
        if f == Fe::ONE {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_squared_has_cyclic_group_of_order_48() {
        let f = Field::extension(7, 2);
        assert_eq!(f.order(), 49);
        // Exhaustive: some element has order exactly 48, none exceeds it.
        let orders: Vec<u64> = f.elements().skip(1).map(|a| f.mult_order(a)).collect();
        assert_eq!(*orders.iter().max().unwrap(), 48);
        assert!(orders.iter().all(|o| 48 % o == 0));
        // Brute-force order of a generator by repeated multiplication.
        let g = f.elements().skip(1).find(|&a| f.mult_order(a) == 48).unwrap();
        let mut cur = g;
        let mut k = 1;
        while cur != Fe::ONE {
            cur = f.mul(cur, g);
            k += 1;
        }
        assert_eq!(k, 48);
    }

    #[test]
    fn f25_modulus_is_least_irreducible() {
        let f = Field::extension(5, 2);
        assert_eq!(f.order(), 25);
        assert_eq!(f.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for f in [Field::prime(11), Field::extension(5, 2), Field::extension(3, 7), Field::prime(2003)] {
            for a in f.elements().skip(1).take(3000) {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), Fe::ONE);
            }
            assert!(f.inv(Fe::ZERO).is_none());
        }
    }

    #[test]
    fn log_exp_path_agrees_with_polynomial_arithmetic() {
        // 3^7 = 2187 exceeds the table limit.
        let f = Field::extension(3, 7);
        for (i, a) in f.elements().step_by(37).enumerate() {
            let b = Fe((a.0 * 7 + i as u32) % f.order());
            assert_eq!(f.mul(a, b), f.slow_mul(a, b));
        }
    }

    #[test]
    fn axpy_matches_scalar_ops() {
        for f in [Field::prime(7), Field::extension(7, 2), Field::prime(4099)] {
            let src: Vec<Fe> = (0..50).map(|i| Fe((i * 13 + 5) % f.order())).collect();
            let mut dst: Vec<Fe> = (0..50).map(|i| Fe((i * 29 + 1) % f.order())).collect();
            let expect: Vec<Fe> = dst
                .iter()
                .zip(&src)
                .map(|(&d, &s)| f.add(d, f.mul(Fe(3), s)))
                .collect();
            f.axpy(&mut dst, Fe(3), &src);
            assert_eq!(dst, expect);
        }
    }
}

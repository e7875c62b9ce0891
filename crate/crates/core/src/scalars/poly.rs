//! Dense polynomials over a prime field, just enough to select and verify
//! extension moduli.

/// Coefficients low degree first, reduced mod `p`, no trailing zeros.
pub type Poly = Vec<u32>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, (p - 2) as u64, p)
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> Poly {
    let len = f.len().max(g.len());
    let out = (0..len)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `f` modulo a nonzero `g`.
pub fn rem(f: &[u32], g: &[u32], p: u32) -> Poly {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p) as u64;
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dg;
        for (j, &gj) in g.iter().enumerate().take(dg + 1) {
            let t = c * gj as u64 % p as u64;
            r[shift + j] = ((r[shift + j] as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub fn gcd(f: &[u32], g: &[u32], p: u32) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

pub fn mulmod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(f, g, p), m, p)
}

/// `x^(p^k) mod m` by repeated `p`-th powering.
fn frobenius_power_of_x(k: usize, m: &[u32], p: u32) -> Poly {
    let mut cur = rem(&[0, 1], m, p);
    for _ in 0..k {
        cur = powmod_poly(&cur, p as u64, m, p);
    }
    cur
}

fn powmod_poly(f: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(f, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn prime_factors(n: u64) -> Vec<u64> {
    prime_divisors(n)
}

/// Rabin's irreducibility test for a monic `f` of degree `e >= 1`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(e) = degree(f) else { return false };
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    if sub(&frobenius_power_of_x(e, f, p), &rem(&x, f, p), p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_divisors(e as u64) {
        let k = e / r as usize;
        let h = sub(&frobenius_power_of_x(k, f, p), &x, p);
        let d = gcd(f, &h, p);
        if degree(&d) != Some(0) {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `e` whose lower coefficients
/// `(c_0, .., c_{e-1})`, read as the base-`p` number `c_0 + c_1 p + ..`, are
/// smallest.
pub fn least_irreducible(p: u32, e: usize) -> Poly {
    assert!(e >= 1);
    let count = (p as u64).pow(e as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(e + 1);
        let mut c = code;
        for _ in 0..e {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

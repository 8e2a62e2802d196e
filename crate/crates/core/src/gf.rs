//! Finite fields `F_{p^k}` with `p^k <= 2^16`.
//!
//! Elements are encoded as integers `sum c_i p^i` where `c_i` is the coefficient
//! of `X^i` modulo the defining polynomial. The defining polynomial is the least
//! monic primitive polynomial of degree `k` under the same encoding of its lower
//! coefficients, so the encoding (and hence every "smallest element" choice made
//! on top of it) is reproducible.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Splits `q = p^k`, or returns `None` when `q` is not a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Lower coefficients of the monic defining polynomial (empty for prime fields).
    modulus: Vec<u32>,
    zeta: u32,
    giant: u32,
    giant_factor: u32,
    baby: HashMap<u32, u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for GaloisField {}

fn poly_mulmod(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // X^k = -sum modulus_i X^i
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let t = (c * m as u64) % p as u64;
            prod[deg - k + i] = (prod[deg - k + i] + p as u64 - t) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(p: u32, modulus: &[u32], base: &[u32], mut e: u64) -> Vec<u32> {
    let k = modulus.len();
    let mut acc = vec![0u32; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, modulus, &acc, &b);
        }
        b = poly_mulmod(p, modulus, &b, &b);
        e >>= 1;
    }
    acc
}

fn least_primitive_modulus(p: u32, k: u32) -> Vec<u32> {
    let order = (p as u64).pow(k) - 1;
    let factors = prime_factors(order);
    let count = (p as u64).pow(k);
    for code in 1..count {
        let mut modulus = Vec::with_capacity(k as usize);
        let mut c = code;
        for _ in 0..k {
            modulus.push((c % p as u64) as u32);
            c /= p as u64;
        }
        if modulus[0] == 0 {
            continue;
        }
        let mut x = vec![0u32; k as usize];
        x[1 % k as usize] = 1;
        let one = {
            let mut v = vec![0u32; k as usize];
            v[0] = 1;
            v
        };
        if poly_powmod(p, &modulus, &x, order) != one {
            continue;
        }
        if factors.iter().all(|r| poly_powmod(p, &modulus, &x, order / r) != one) {
            return modulus;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

impl GaloisField {
    fn build(q: u32) -> Result<Self> {
        if q as u64 > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q as u64));
        }
        let (p, k) =
            prime_power(q as u64).ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            least_primitive_modulus(p, k)
        };
        let mut field = GaloisField {
            p,
            k,
            q,
            modulus,
            zeta: 0,
            giant: 0,
            giant_factor: 0,
            baby: HashMap::new(),
        };
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        field.zeta = (1..q)
            .find(|&a| factors.iter().all(|r| field.pow(a, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        // baby-step giant-step tables
        let m = (order as f64).sqrt().ceil().max(1.0) as u32;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = 1;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = field.mul(cur, field.zeta);
        }
        field.giant = m;
        field.giant_factor = field.inv(field.pow(field.zeta, m as u64));
        field.baby = baby;
        Ok(field)
    }

    pub fn size(&self) -> u32 {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    /// The least primitive element under the integer encoding.
    pub fn zeta(&self) -> u32 {
        self.zeta
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let r = poly_mulmod(self.p, &self.modulus, &self.digits(a), &self.digits(b));
        self.encode(&r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
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

    pub fn pow_signed(&self, a: u32, e: i64) -> u32 {
        let order = self.q as i64 - 1;
        self.pow(a, e.rem_euclid(order) as u64)
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q as u64 - 2)
    }

    /// The prime-field element `n mod p`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Discrete logarithm base `zeta` in `[0, q-1)`, by baby-step giant-step.
    pub fn dlog(&self, a: u32) -> u64 {
        assert!(a != 0, "discrete log of zero");
        let mut gamma = a;
        for i in 0..=self.giant {
            if let Some(&j) = self.baby.get(&gamma) {
                return (i as u64 * self.giant as u64 + j as u64) % (self.q as u64 - 1);
            }
            gamma = self.mul(gamma, self.giant_factor);
        }
        unreachable!("zeta generates the multiplicative group")
    }

    pub fn zeta_pow(&self, e: i64) -> u32 {
        self.pow_signed(self.zeta, e)
    }

    /// An `e`-th root of `a`, if one exists (the one with least exponent in base zeta).
    pub fn nth_root(&self, a: u32, e: u64) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let order = self.q as u64 - 1;
        let t = self.dlog(a);
        let g = gcd(e % order, order).max(1);
        let g = if e.is_multiple_of(order) { order } else { g };
        if !t.is_multiple_of(g) {
            return None;
        }
        let m = order / g;
        if m == 1 {
            return Some(1).filter(|_| t == 0);
        }
        let s = ((t / g) as i64 * inv_mod(((e / g) % m) as i64, m as i64)?).rem_euclid(m as i64);
        Some(self.zeta_pow(s))
    }

    /// `a^(q_sub)`: the Frobenius relative to the subfield of size `q_sub`.
    pub fn frobenius(&self, a: u32, q_sub: u32) -> u32 {
        self.pow(a, q_sub as u64)
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<GaloisField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<GaloisField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The (cached) field with `q` elements.
pub fn galois_field(q: u32) -> Result<Arc<GaloisField>> {
    if let Some(f) = cache().lock().unwrap().get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(GaloisField::build(q)?);
    Ok(cache().lock().unwrap().entry(q).or_insert(f).clone())
}

/// A fixed embedding `F_q -> F_Q` sending the defining root of `F_q` to the
/// least root of its defining polynomial in `F_Q`.
#[derive(Debug)]
pub struct Embedding {
    pub small: Arc<GaloisField>,
    pub large: Arc<GaloisField>,
    forward: Vec<u32>,
    backward: HashMap<u32, u32>,
}

impl Embedding {
    fn build(small: Arc<GaloisField>, large: Arc<GaloisField>) -> Result<Self> {
        if small.p != large.p || !large.k.is_multiple_of(small.k) {
            return Err(Error::InvalidParameter(format!(
                "F_{} is not a subfield of F_{}",
                small.q, large.q
            )));
        }
        let root = if small.k == 1 {
            0
        } else {
            (0..large.q)
                .find(|&r| {
                    // X^k + sum m_i X^i evaluated at r
                    let mut acc = large.pow(r, small.k as u64);
                    let mut rp = 1;
                    for &m in &small.modulus {
                        acc = large.add(acc, large.mul(m, rp));
                        rp = large.mul(rp, r);
                    }
                    acc == 0
                })
                .expect("a subfield's defining polynomial splits in the larger field")
        };
        let mut forward = Vec::with_capacity(small.q as usize);
        for a in 0..small.q {
            if small.k == 1 {
                forward.push(a);
                continue;
            }
            let mut acc = 0;
            let mut rp = 1;
            for c in small.digits(a) {
                acc = large.add(acc, large.mul(c, rp));
                rp = large.mul(rp, root);
            }
            forward.push(acc);
        }
        let backward = forward.iter().enumerate().map(|(i, &b)| (b, i as u32)).collect();
        Ok(Embedding {
            small,
            large,
            forward,
            backward,
        })
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.forward[a as usize]
    }

    /// Preimage of `b`, if `b` lies in the image of the small field.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        self.backward.get(&b).copied()
    }
}

pub fn embedding(small: u32, large: u32) -> Result<Arc<Embedding>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Embedding>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(small, large)) {
        return Ok(e.clone());
    }
    let e = Arc::new(Embedding::build(galois_field(small)?, galois_field(large)?)?);
    Ok(cache.lock().unwrap().entry((small, large)).or_insert(e).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = galois_field(7).unwrap();
        assert_eq!(f.zeta(), 3);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        for a in 1..7 {
            assert_eq!(f.zeta_pow(f.dlog(a) as i64), a);
        }
        assert_eq!(galois_field(3).unwrap().zeta(), 2);
        assert_eq!(galois_field(5).unwrap().zeta(), 2);
    }

    #[test]
    fn extension_field_is_a_field() {
        for q in [4u32, 8, 9, 25, 27, 49, 81, 343] {
            let f = galois_field(q).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                assert!(seen.insert(x));
                x = f.mul(x, f.zeta());
            }
            assert_eq!(x, 1);
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.zeta_pow(f.dlog(a) as i64), a);
            }
        }
    }

    #[test]
    fn distributivity_in_f81() {
        let f = galois_field(81).unwrap();
        for a in (0..81).step_by(7) {
            for b in (0..81).step_by(5) {
                for c in (0..81).step_by(11) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let e = embedding(9, 81).unwrap();
        let (s, l) = (&e.small, &e.large);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(e.apply(s.mul(a, b)), l.mul(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(s.add(a, b)), l.add(e.apply(a), e.apply(b)));
            }
            assert_eq!(e.preimage(e.apply(a)), Some(a));
            // image is fixed by the relative Frobenius
            assert_eq!(l.frobenius(e.apply(a), 9), e.apply(a));
        }
    }

    #[test]
    fn roots_and_limits() {
        let f = galois_field(5).unwrap();
        assert_eq!(f.nth_root(4, 2).map(|r| f.mul(r, r)), Some(4));
        assert_eq!(f.nth_root(2, 2), None);
        assert_eq!(f.nth_root(1, 4), Some(1));
        assert!(matches!(galois_field(1 << 17), Err(Error::FieldTooLarge(_))));
        assert!(galois_field(6).is_err());
    }
}

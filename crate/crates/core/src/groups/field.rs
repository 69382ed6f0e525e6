//! Finite fields GF(q) and their quadratic extensions.
//!
//! Elements of GF(p^f) are encoded as integers sum c_i p^i where
//! c_0 + c_1 x + ... is the residue modulo the defining polynomial.

use serde::{Deserialize, Serialize};

use crate::numtheory::{prime_divisors, prime_power};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime power")]
    InvalidQ(u64),
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - lead * bi % p) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for n in 0..p.pow(d as u32) {
            let mut cand: Vec<u64> = (0..d).map(|i| n / p.pow(i as u32) % p).collect();
            cand.push(1);
            if poly_rem(poly.to_vec(), &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    /// Monic defining polynomial, constant coefficient first.
    pub modulus: Vec<u64>,
    pub generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(q: u64) -> Result<GaloisField, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::InvalidQ(q))?;
        if p == 2 || q > 1 << 24 {
            return Err(FieldError::InvalidQ(q));
        }
        let mut modulus = vec![0, 1];
        if f > 1 {
            for n in 0..q {
                let mut cand: Vec<u64> = (0..f).map(|i| n / p.pow(i) % p).collect();
                cand.push(1);
                if is_irreducible(&cand, p) {
                    modulus = cand;
                    break;
                }
            }
        }
        let mut field = GaloisField { p, f, q, modulus, generator: 0, exp: vec![], log: vec![] };
        let primes = prime_divisors(q - 1);
        let gen = (1..q as u32)
            .find(|&x| primes.iter().all(|r| field.slow_pow(x, (q - 1) / r) != 1))
            .expect("multiplicative group is cyclic");
        field.generator = gen;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i as u32;
            x = field.slow_mul(x, gen);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn digits(&self, x: u32) -> Vec<u64> {
        let mut x = x as u64;
        let mut d = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u64, |acc, c| acc * self.p + c) as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; da.len() + db.len()];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        self.undigits(&r)
    }

    fn slow_pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.f {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.f == 1 {
            return ((self.p - a as u64) % self.p) as u32;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|c| (self.p - c) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let l = self.log[a as usize] as u64;
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as i64;
        self.exp[(l * e).rem_euclid(self.q as i64 - 1) as usize]
    }

    /// g^k for the fixed primitive element g.
    pub fn gen_pow(&self, k: i64) -> u32 {
        self.exp[k.rem_euclid(self.q as i64 - 1) as usize]
    }

    /// Discrete logarithm to base g.
    pub fn log(&self, a: u32) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.log[a as usize] % 2 == 0
    }

    /// Absolute trace to the prime field, returned as an integer in 0..p.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0u32;
        let mut x = a;
        for _ in 0..self.f {
            t = self.add(t, x);
            x = self.pow(x, self.p as i64);
        }
        t
    }

    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.modulus.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Element u + v y of GF(q^2) = GF(q)[y]/(y^2 + a y + b).
pub type Ext = (u32, u32);

#[derive(Debug, Clone)]
pub struct QuadExt {
    pub base: GaloisField,
    pub a: u32,
    pub b: u32,
}

impl QuadExt {
    /// The first irreducible y^2 + a y + b, ordered by b + a q.
    pub fn new(base: GaloisField) -> QuadExt {
        let q = base.q as u32;
        for n in 0..q * q {
            let (a, b) = (n / q, n % q);
            let disc = base.sub(base.mul(a, a), base.mul(base.from_i64(4), b));
            if !base.is_square(disc) {
                return QuadExt { base, a, b };
            }
        }
        unreachable!("an irreducible quadratic exists")
    }

    pub fn encode(&self, x: Ext) -> u64 {
        x.0 as u64 + x.1 as u64 * self.base.q
    }

    pub fn decode(&self, n: u64) -> Ext {
        ((n % self.base.q) as u32, (n / self.base.q) as u32)
    }

    pub fn mul(&self, x: Ext, y: Ext) -> Ext {
        let f = &self.base;
        let vv = f.mul(x.1, y.1);
        let u = f.sub(f.mul(x.0, y.0), f.mul(self.b, vv));
        let v = f.sub(f.add(f.mul(x.0, y.1), f.mul(x.1, y.0)), f.mul(self.a, vv));
        (u, v)
    }

    pub fn pow(&self, x: Ext, mut e: u64) -> Ext {
        let mut base = x;
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn norm(&self, x: Ext) -> u32 {
        let f = &self.base;
        let uu = f.mul(x.0, x.0);
        let uv = f.mul(f.mul(self.a, x.0), x.1);
        let vv = f.mul(self.b, f.mul(x.1, x.1));
        f.add(f.sub(uu, uv), vv)
    }

    pub fn trace(&self, x: Ext) -> u32 {
        // (u + v y) + (u + v ybar), y + ybar = -a
        let f = &self.base;
        f.sub(f.add(x.0, x.0), f.mul(self.a, x.1))
    }

    /// Multiplication by x on the basis {1, y}, as a 2x2 matrix [[m00, m01], [m10, m11]].
    pub fn mult_matrix(&self, x: Ext) -> [u32; 4] {
        let f = &self.base;
        [x.0, f.neg(f.mul(self.b, x.1)), x.1, f.sub(x.0, f.mul(self.a, x.1))]
    }

    /// Frobenius x -> x^q on the basis {1, y}.
    pub fn frobenius_matrix(&self) -> [u32; 4] {
        let f = &self.base;
        [1, f.neg(self.a), 0, f.neg(1)]
    }

    pub fn order(&self, x: Ext, group_order: u64) -> u64 {
        let mut n = group_order;
        for r in prime_divisors(group_order) {
            while n % r == 0 && self.pow(x, n / r) == (1, 0) {
                n /= r;
            }
        }
        n
    }
}

/// Fixed choices of field data used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    /// Defining polynomial of GF(q) over GF(p), constant coefficient first.
    pub modulus_poly: Vec<u64>,
    /// Primitive element of GF(q)^x.
    pub generator_g: u32,
    /// Quadratic extension y^2 + a y + b over GF(q), stored as [a, b].
    pub ext_poly: [u32; 2],
    /// Generator of the norm-one subgroup of order q + 1 in GF(q^2).
    pub generator_xi: Ext,
    /// Element of GF(q^2) of norm -1, used for the non-split normalizer.
    pub norm_minus_one: Ext,
    /// Smallest non-square in GF(q).
    pub nonsquare_z0: u32,
}

pub fn build_field(q: u64) -> Result<(FieldSpec, QuadExt), FieldError> {
    let base = GaloisField::new(q)?;
    let ext = QuadExt::new(base.clone());
    let minus_one = base.neg(1);
    let mut xi = None;
    let mut c = None;
    for n in 1..q * q {
        let x = ext.decode(n);
        let nm = ext.norm(x);
        if xi.is_none() && nm == 1 && ext.order(x, q + 1) == q + 1 {
            xi = Some(x);
        }
        if c.is_none() && nm == minus_one {
            c = Some(x);
        }
        if xi.is_some() && c.is_some() {
            break;
        }
    }
    let z0 = (1..q as u32).find(|&x| !base.is_square(x)).unwrap();
    let spec = FieldSpec {
        q,
        p: base.p,
        f: base.f,
        modulus_poly: base.modulus.clone(),
        generator_g: base.generator,
        ext_poly: [ext.a, ext.b],
        generator_xi: xi.unwrap(),
        norm_minus_one: c.unwrap(),
        nonsquare_z0: z0,
    };
    Ok((spec, ext))
}

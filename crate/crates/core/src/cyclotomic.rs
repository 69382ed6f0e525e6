//! Exact arithmetic in cyclotomic fields.
//!
//! An element of Q(zeta_m) is stored as a sparse rational combination of
//! powers of zeta_m = exp(2 pi i / m). Every value is kept in canonical form:
//! the modulus is the conductor of the element and the exponents lie in a
//! fixed basis (for each prime power p^e || m, the top p-adic digit of the
//! p-component is never 0 for odd p and never 1 for p = 2). Equal numbers
//! therefore have equal representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::groups::field::GaloisField;
use crate::numtheory::{factor, gcd, inv_mod, lcm, prime_power};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("value is not rational")]
    NotRational,
    #[error("{0} is not an odd prime power")]
    InvalidQ(u64),
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
}

type Coeffs = BTreeMap<u64, BigRational>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    m: u64,
    coeffs: Coeffs,
}

/// Floating point value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

fn add_to(c: &mut Coeffs, k: u64, v: BigRational) {
    if v.is_zero() {
        return;
    }
    match c.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Rewrite a combination of powers of zeta_m in the canonical basis of Q(zeta_m).
fn reduce_basis(m: u64, mut c: Coeffs) -> Coeffs {
    for (p, e) in factor(m) {
        let pe = p.pow(e);
        let top = pe / p;
        let w = inv_mod((m / pe) % pe, pe).unwrap_or(0);
        let step = m / p;
        let excluded = if p == 2 { 1 } else { 0 };
        if !c.keys().any(|&k| (k % pe) * w % pe / top == excluded) {
            continue;
        }
        let mut out = Coeffs::new();
        for (k, v) in c {
            if (k % pe) * w % pe / top == excluded {
                for j in 1..p {
                    add_to(&mut out, (k + j * step) % m, -v.clone());
                }
            } else {
                add_to(&mut out, k, v);
            }
        }
        c = out;
    }
    c
}

/// Shrink the modulus to the conductor. Input must already be in basis form.
fn minimize(mut m: u64, mut c: Coeffs) -> (u64, Coeffs) {
    if c.is_empty() {
        return (1, c);
    }
    'outer: loop {
        if m == 1 {
            break;
        }
        for (p, e) in factor(m) {
            if p == 2 && e == 1 {
                c = c.into_iter().map(|(k, v)| (k / 2, v)).collect();
                m /= 2;
                continue 'outer;
            }
            if e >= 2 {
                if c.keys().all(|k| k % p == 0) {
                    c = c.into_iter().map(|(k, v)| (k / p, v)).collect();
                    m /= p;
                    continue 'outer;
                }
                continue;
            }
            // p odd, p || m: every fibre over the p'-part must carry p-1 equal coefficients
            let m0 = m / p;
            let a_inv = inv_mod(m0 % p, p).unwrap();
            let b_inv = inv_mod(p % m0.max(1), m0.max(1)).unwrap_or(0);
            let mut fibres: BTreeMap<u64, Vec<(u64, &BigRational)>> = BTreeMap::new();
            for (k, v) in &c {
                let t = k % p * a_inv % p;
                let s = if m0 == 1 { 0 } else { k % m0 * b_inv % m0 };
                fibres.entry(s).or_default().push((t, v));
            }
            let ok = fibres
                .values()
                .all(|f| f.len() as u64 == p - 1 && f.iter().all(|(_, v)| *v == f[0].1));
            if ok {
                c = fibres.into_iter().map(|(s, f)| (s, -f[0].1.clone())).collect();
                m = m0;
                continue 'outer;
            }
        }
        break;
    }
    (m, c)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycNum {
    fn normalize(m: u64, c: Coeffs) -> CycNum {
        let (m, coeffs) = minimize(m, reduce_basis(m, c));
        CycNum { m, coeffs }
    }

    pub fn zero() -> CycNum {
        CycNum { m: 1, coeffs: Coeffs::new() }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rational(rat(n))
    }

    pub fn from_rational(r: BigRational) -> CycNum {
        let mut coeffs = Coeffs::new();
        add_to(&mut coeffs, 0, r);
        CycNum { m: 1, coeffs }
    }

    pub fn frac(num: i64, den: i64) -> CycNum {
        CycNum::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// zeta_m^k.
    pub fn zeta(m: u64, k: i64) -> CycNum {
        assert!(m >= 1, "modulus must be positive");
        let k = k.rem_euclid(m as i64) as u64;
        let mut c = Coeffs::new();
        c.insert(k, rat(1));
        CycNum::normalize(m, c)
    }

    /// zeta_m^k + zeta_m^-k.
    pub fn zeta_real(m: u64, k: i64) -> CycNum {
        let mut c = Coeffs::new();
        add_to(&mut c, k.rem_euclid(m as i64) as u64, rat(1));
        add_to(&mut c, (-k).rem_euclid(m as i64) as u64, rat(1));
        CycNum::normalize(m, c)
    }

    /// Build from arbitrary (exponent, coefficient) pairs over zeta_m.
    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, BigRational)>) -> CycNum {
        let mut c = Coeffs::new();
        for (k, v) in terms {
            add_to(&mut c, k.rem_euclid(m as i64) as u64, v);
        }
        CycNum::normalize(m, c)
    }

    /// Conductor of the element (1 for rationals).
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    pub fn to_rational(&self) -> Result<BigRational, CycError> {
        if self.m != 1 {
            return Err(CycError::NotRational);
        }
        Ok(self.coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero))
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational().ok()?;
        r.is_integer().then(|| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer()?.to_i64()
    }

    /// Canonical coordinates after embedding into Q(zeta_n); `n` must be a multiple of the conductor.
    pub fn coords_in(&self, n: u64) -> BTreeMap<u64, BigRational> {
        assert!(n % self.m == 0, "modulus {} does not divide {}", self.m, n);
        let s = n / self.m;
        let c = self.coeffs.iter().map(|(k, v)| (k * s % n, v.clone())).collect();
        reduce_basis(n, c)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> CycNum {
        self.scale(&rat(n))
    }

    /// Complex conjugation.
    pub fn conjugate(&self) -> CycNum {
        self.galois(-1)
    }

    /// The Galois automorphism zeta_m -> zeta_m^a (a coprime to the conductor).
    pub fn galois(&self, a: i64) -> CycNum {
        let m = self.m as i64;
        assert!(gcd(a.rem_euclid(m.max(1)) as u64, self.m) == 1 || self.m == 1);
        let c = self
            .coeffs
            .iter()
            .map(|(k, v)| (((*k as i64) * a).rem_euclid(m) as u64, v.clone()))
            .collect();
        CycNum::normalize(self.m, c)
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn combine(&self, other: &CycNum, sign: i64) -> CycNum {
        let n = lcm(self.m, other.m);
        let (sa, sb) = (n / self.m, n / other.m);
        let mut c = Coeffs::new();
        for (k, v) in &self.coeffs {
            add_to(&mut c, k * sa % n, v.clone());
        }
        for (k, v) in &other.coeffs {
            let v = if sign < 0 { -v.clone() } else { v.clone() };
            add_to(&mut c, k * sb % n, v);
        }
        CycNum::normalize(n, c)
    }

    fn product(&self, other: &CycNum) -> CycNum {
        if self.m == 1 {
            return other.scale(&self.to_rational().unwrap());
        }
        if other.m == 1 {
            return self.scale(&other.to_rational().unwrap());
        }
        let n = lcm(self.m, other.m);
        let (sa, sb) = (n / self.m, n / other.m);
        let mut c = Coeffs::new();
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                add_to(&mut c, (ka * sa + kb * sb) % n, va * vb);
            }
        }
        CycNum::normalize(n, c)
    }

    /// Floating point value with a bound on the absolute error.
    pub fn approx(&self) -> Approx {
        let mut re = 0.0;
        let mut im = 0.0;
        let mut mass = 0.0;
        for (k, v) in &self.coeffs {
            let c = v.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * (*k as f64) / (self.m as f64);
            re += c * t.cos();
            im += c * t.sin();
            mass += c.abs();
        }
        let n = self.coeffs.len() as f64;
        Approx { re, im, err: (n + 8.0) * 4.0 * f64::EPSILON * mass.max(f64::MIN_POSITIVE) }
    }

    /// Sum of absolute values of the coefficients; bounds |x| from above.
    pub fn mass(&self) -> BigRational {
        self.coeffs.values().map(|v| v.abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    fn fmt_with(&self, latex: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, v)) in self.coeffs.iter().enumerate() {
            let neg = v.is_negative();
            let a = v.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = if *k == 0 || self.m == 1 {
                String::new()
            } else {
                let e = if 2 * k > self.m { *k as i64 - self.m as i64 } else { *k as i64 };
                if latex {
                    if e == 1 {
                        format!("\\zeta_{{{}}}", self.m)
                    } else {
                        format!("\\zeta_{{{}}}^{{{}}}", self.m, e)
                    }
                } else if e == 1 {
                    format!("z{}", self.m)
                } else {
                    format!("z{}^{}", self.m, e)
                }
            };
            let coef = if latex && !a.is_integer() {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            } else {
                a.to_string()
            };
            if unit.is_empty() {
                out.push_str(&coef);
            } else if a.is_one() {
                out.push_str(&unit);
            } else if latex {
                out.push_str(&coef);
                out.push_str(&unit);
            } else {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&unit);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.fmt_with(true)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(false))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<BigRational> for CycNum {
    fn from(r: BigRational) -> Self {
        CycNum::from_rational(r)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.combine(o, 1)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.combine(o, -1)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.product(o)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.scale_int(-1)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        &self + &o
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        &self - &o
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        &self * &o
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        if o.is_zero() {
            return;
        }
        *self = &*self + o;
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        sum_all(iter)
    }
}

/// Sum many values with a single normalisation.
pub fn sum_all<I: IntoIterator<Item = CycNum>>(items: I) -> CycNum {
    let items: Vec<CycNum> = items.into_iter().collect();
    let n = items.iter().fold(1, |a, x| lcm(a, x.m));
    let mut c = Coeffs::new();
    for x in &items {
        let s = n / x.m;
        for (k, v) in &x.coeffs {
            add_to(&mut c, k * s % n, v.clone());
        }
    }
    CycNum::normalize(n, c)
}

/// Square root of q0 = (-1)^((q-1)/2) q realised as the quadratic Gauss sum
/// sum_{t in GF(q)} zeta_p^{Tr(t^2)}.
pub fn gauss_sqrt_q0(q: u64) -> Result<CycNum, CycError> {
    let (p, _) = prime_power(q).ok_or(CycError::InvalidQ(q))?;
    if p == 2 {
        return Err(CycError::InvalidQ(q));
    }
    let field = GaloisField::new(q).map_err(|_| CycError::InvalidQ(q))?;
    let mut counts = vec![0i64; p as usize];
    for t in 0..q as u32 {
        let tr = field.trace(field.mul(t, t));
        counts[tr as usize] += 1;
    }
    Ok(CycNum::from_terms(p, counts.iter().enumerate().map(|(r, c)| (r as i64, rat(*c)))))
}

// JSON form: {"m": 8, "coeffs": {"1": "1", "3": "-1/2"}}
#[derive(Serialize, Deserialize)]
struct CycRepr {
    m: u64,
    coeffs: BTreeMap<String, String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycRepr {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycRepr::deserialize(d)?;
        if r.m == 0 {
            return Err(serde::de::Error::custom("modulus must be positive"));
        }
        let mut terms = Vec::new();
        for (k, v) in r.coeffs {
            let k: i64 = k.parse().map_err(serde::de::Error::custom)?;
            let v = BigRational::from_str(&v).map_err(serde::de::Error::custom)?;
            terms.push((k, v));
        }
        Ok(CycNum::from_terms(r.m, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in 2..40u64 {
            let s = sum_all((0..m as i64).map(|k| CycNum::zeta(m, k)));
            assert!(s.is_zero(), "m = {m}: {s}");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        // zeta_3 + zeta_3^2 = -1
        let x = &CycNum::zeta(3, 1) + &CycNum::zeta(3, 2);
        assert_eq!(x, CycNum::from_int(-1));
        assert_eq!(CycNum::zeta(12, 4), CycNum::zeta(3, 1));
        assert_eq!(CycNum::zeta(10, 5), CycNum::from_int(-1));
        assert_eq!(CycNum::zeta(6, 1).modulus(), 3);
        let i = CycNum::zeta(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(-1));
    }

    #[test]
    fn to_rational_behaviour() {
        assert_eq!(CycNum::zeta(4, 1).to_rational(), Err(CycError::NotRational));
        let x = CycNum::zeta_real(8, 1);
        assert_eq!((&x * &x).to_rational().unwrap(), rat(2));
    }

    #[test]
    fn gauss_sums_square_to_q0() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81] {
            let s = gauss_sqrt_q0(q).unwrap();
            let q0 = if q % 4 == 1 { q as i64 } else { -(q as i64) };
            assert_eq!(&s * &s, CycNum::from_int(q0), "q = {q}");
        }
        assert_eq!(gauss_sqrt_q0(12), Err(CycError::InvalidQ(12)));
        assert_eq!(gauss_sqrt_q0(8), Err(CycError::InvalidQ(8)));
    }

    #[test]
    fn latex_and_text() {
        let x = CycNum::zeta_real(8, 1);
        assert_eq!(x.to_latex(), "\\zeta_{8} - \\zeta_{8}^{3}");
        assert_eq!(CycNum::frac(3, 2).to_latex(), "\\frac{3}{2}");
        assert_eq!(CycNum::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn json_round_trip() {
        let x = &CycNum::zeta(15, 2).scale(&BigRational::new(3.into(), 7.into())) + &CycNum::zeta(4, 1);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let z: CycNum = serde_json::from_str(r#"{"m":8,"coeffs":{"1":"1","7":"1"}}"#).unwrap();
        assert_eq!(z, CycNum::zeta_real(8, 1));
    }

    #[test]
    fn approx_values() {
        let a = CycNum::zeta_real(5, 1).approx();
        let exact = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((a.re - exact).abs() <= a.err);
        assert!(a.im.abs() <= a.err);
    }
}

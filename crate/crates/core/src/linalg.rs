//! Exact linear algebra for trivial source tables.
//!
//! * `TransposeSolver` solves T^t c = p for rational p and c. Each entry of T
//!   is expanded in the canonical basis of its cyclotomic field, which turns
//!   the system into an overdetermined rational one. The elimination is done
//!   once per table; the right hand side is kept symbolic.
//! * `det_certificate` proves det T != 0 by reducing modulo a prime that
//!   splits completely in the field of the entries.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycNum;
use crate::numtheory::{inv_mod, is_prime, lcm, mul_mod, pow_mod, prime_divisors};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("matrix is singular")]
    Singular,
    #[error("no rational solution")]
    Inconsistent,
}

/// Reduced elimination data for T^t c = p.
#[derive(Debug, Clone)]
pub struct TransposeSolver {
    n: usize,
    /// c = x p
    x: Vec<Vec<BigRational>>,
    /// every row k satisfies k . p = 0 when p is in the image
    constraints: Vec<Vec<BigRational>>,
}

fn reduce_row(row: &mut [BigRational], pivots: &[(usize, Vec<BigRational>)]) {
    for (pc, prow) in pivots {
        if row[*pc].is_zero() {
            continue;
        }
        let f = row[*pc].clone();
        for (a, b) in row.iter_mut().zip(prow) {
            if !b.is_zero() {
                *a -= &f * b;
            }
        }
    }
}

impl TransposeSolver {
    /// `t[i][v]`: row i, column v. The system has one unknown per row.
    pub fn new(t: &[Vec<CycNum>]) -> Result<TransposeSolver, SolveError> {
        let n = t.len();
        let ncols = t.first().map(|r| r.len()).unwrap_or(0);
        let width = n + ncols;
        // pivot rows are kept normalised (pivot entry 1) and reduced against earlier pivots
        let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut constraints: Vec<(usize, Vec<BigRational>)> = Vec::new();
        for v in 0..ncols {
            let m = t.iter().fold(1, |a, r| lcm(a, r[v].modulus()));
            let coords: Vec<_> = t.iter().map(|r| r[v].coords_in(m)).collect();
            let one = CycNum::one().coords_in(m);
            let mut basis: BTreeSet<u64> = one.keys().copied().collect();
            for c in &coords {
                basis.extend(c.keys().copied());
            }
            for b in basis {
                let mut row = vec![BigRational::zero(); width];
                for (i, c) in coords.iter().enumerate() {
                    if let Some(x) = c.get(&b) {
                        row[i] = x.clone();
                    }
                }
                // move the right hand side over: sum_i a_i c_i - r_b p_v = 0
                if let Some(r) = one.get(&b) {
                    row[n + v] = -r.clone();
                }
                reduce_row(&mut row, &pivots);
                match (0..n).find(|&i| !row[i].is_zero()) {
                    Some(pc) => {
                        let inv = row[pc].recip();
                        for a in row.iter_mut() {
                            if !a.is_zero() {
                                *a *= &inv;
                            }
                        }
                        for (_, prow) in pivots.iter_mut().chain(constraints.iter_mut()) {
                            if !prow[pc].is_zero() {
                                let f = prow[pc].clone();
                                for (a, b) in prow.iter_mut().zip(&row) {
                                    if !b.is_zero() {
                                        *a -= &f * b;
                                    }
                                }
                            }
                        }
                        pivots.push((pc, row));
                    }
                    None => {
                        if row[n..].iter().any(|a| !a.is_zero()) {
                            constraints.push((0, row));
                        }
                    }
                }
            }
        }
        if pivots.len() < n {
            return Err(SolveError::Singular);
        }
        // row of pivot pc reads c_pc + sum_v y_v p_v = 0
        let mut x = vec![vec![BigRational::zero(); ncols]; n];
        for (pc, row) in &pivots {
            x[*pc] = row[n..].iter().map(|a| -a.clone()).collect();
        }
        let constraints = constraints.into_iter().map(|(_, r)| r[n..].to_vec()).collect();
        Ok(TransposeSolver { n, x, constraints })
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn solve(&self, p: &[BigRational]) -> Result<Vec<BigRational>, SolveError> {
        for k in &self.constraints {
            let s: BigRational = k.iter().zip(p).map(|(a, b)| a * b).sum();
            if !s.is_zero() {
                return Err(SolveError::Inconsistent);
            }
        }
        Ok(self.x.iter().map(|r| r.iter().zip(p).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn solve_int(&self, p: &[i64]) -> Result<Vec<BigRational>, SolveError> {
        let p: Vec<BigRational> = p.iter().map(|v| BigRational::from_integer(BigInt::from(*v))).collect();
        self.solve(&p)
    }
}

/// A prime P = 1 mod m with a primitive m-th root of unity r modulo P.
fn split_prime(m: u64, skip: usize) -> (u64, u64) {
    let start = (1u64 << 40) / m + 1;
    let mut found = 0;
    let mut k = start;
    loop {
        let p = k * m + 1;
        if is_prime(p) {
            if found == skip {
                let primes = prime_divisors(m);
                for a in 2..p {
                    let r = pow_mod(a, (p - 1) / m, p);
                    if primes.iter().all(|&d| pow_mod(r, m / d, p) != 1) {
                        return (p, r);
                    }
                }
            }
            found += 1;
        }
        k += 1;
    }
}

fn rat_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = (x.numer() % &pb + &pb) % &pb;
    let den = (x.denom() % &pb + &pb) % &pb;
    let den = inv_mod(den.to_u64()?, p)?;
    Some(mul_mod(num.to_u64()?, den, p))
}

/// Image of x under zeta_m -> r^(m_total / m) modulo P.
pub fn reduce_mod(x: &CycNum, m_total: u64, p: u64, r: u64) -> Option<u64> {
    let s = m_total / x.modulus();
    let mut acc = 0u64;
    for (k, c) in x.terms() {
        let term = mul_mod(rat_mod(c, p)?, pow_mod(r, k * s, p), p);
        acc = (acc + term) % p;
    }
    Some(acc)
}

fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[col][col], p);
        let inv = inv_mod(a[col][col], p).unwrap();
        for r in col + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let f = mul_mod(a[r][col], inv, p);
            for c in col..n {
                let sub = mul_mod(f, a[col][c], p);
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
    }
    det
}

/// Some prime P with det(t) nonzero modulo a prime of Q(zeta_m) above P; this
/// proves det(t) != 0. None if the determinant vanishes modulo every prime tried.
pub fn det_certificate(t: &[Vec<CycNum>], tries: usize) -> Option<u64> {
    let n = t.len();
    if t.iter().any(|r| r.len() != n) {
        return None;
    }
    let m = t.iter().flatten().fold(1, |a, x| lcm(a, x.modulus()));
    for skip in 0..tries {
        let (p, r) = split_prime(m, skip);
        let a: Option<Vec<Vec<u64>>> =
            t.iter().map(|row| row.iter().map(|x| reduce_mod(x, m, p, r)).collect()).collect();
        if let Some(a) = a {
            if det_mod(a, p) != 0 {
                return Some(p);
            }
        }
    }
    None
}

/// True when every coordinate is a non-negative integer.
pub fn is_natural(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer() && !x.is_negative())
}

pub fn to_i64_vec(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_cyclotomic_system() {
        // T = [[1, 1], [z3 + z3^2 + 2, z4]] ; T^t c = p
        let t = vec![
            vec![CycNum::one(), CycNum::one()],
            vec![CycNum::from_int(1), CycNum::zeta(4, 1)],
        ];
        let s = TransposeSolver::new(&t).unwrap();
        // c = (2, 0): p = (2, 2)
        let c = s.solve_int(&[2, 2]).unwrap();
        assert_eq!(to_i64_vec(&c).unwrap(), vec![2, 0]);
        // p = (1, 0) needs c2 * i rational: impossible
        assert_eq!(s.solve_int(&[1, 0]), Err(SolveError::Inconsistent));
    }

    #[test]
    fn certificate() {
        let t = vec![vec![CycNum::zeta(5, 1), CycNum::one()], vec![CycNum::one(), CycNum::zeta(5, 4)]];
        // det = 1 - 1 = 0
        assert_eq!(det_certificate(&t, 2), None);
        let t = vec![vec![CycNum::zeta(5, 1), CycNum::one()], vec![CycNum::one(), CycNum::zeta(5, 1)]];
        assert!(det_certificate(&t, 2).is_some());
    }
}

//! SL2(q) and PSL2(q): matrices, conjugacy classes, l-subgroup chains.

pub mod chain;
pub mod field;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use chain::{ell_subgroup_chain, ellprime_columns, ChainLevel, Column, ColumnKind, NClass, SubgroupChain, TorusKind};
pub use field::{build_field, Ext, FieldError, FieldSpec, GaloisField, QuadExt};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "sl2")]
    SL2,
    #[serde(rename = "psl2")]
    PSL2,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::SL2 => "SL2",
            GroupKind::PSL2 => "PSL2",
        })
    }
}

impl GroupKind {
    pub fn order(self, q: u64) -> u64 {
        let o = q * (q * q - 1);
        match self {
            GroupKind::SL2 => o,
            GroupKind::PSL2 => o / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Conjugacy class of SL2(q).
///
/// `Split(k)` is the class of d(g^k), `NonSplit(k)` of d'(xi^k), with `k`
/// canonical up to inversion and excluding +-1. `Unipotent(e, t)` is e*u_t.
/// For PSL2(q) the same labels are used for a chosen preimage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    Central(Sign),
    Split(u64),
    NonSplit(u64),
    Unipotent(Sign, Sign),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Central(Sign::Plus) => write!(f, "I"),
            ClassLabel::Central(Sign::Minus) => write!(f, "-I"),
            ClassLabel::Split(k) => write!(f, "d(g^{k})"),
            ClassLabel::NonSplit(k) => write!(f, "d'(xi^{k})"),
            ClassLabel::Unipotent(e, t) => {
                write!(f, "{}u{}", if *e == Sign::Minus { "-" } else { "" }, t.symbol())
            }
        }
    }
}

/// Representative of `k` modulo `n` up to sign, in `0..=n/2`.
pub fn canon_exp(k: i64, n: u64) -> u64 {
    let r = k.rem_euclid(n as i64) as u64;
    r.min((n - r) % n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mat2 {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn from_array(m: [u32; 4]) -> Mat2 {
        Mat2::new(m[0], m[1], m[2], m[3])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Field data plus matrix arithmetic for SL2(q).
#[derive(Debug, Clone)]
pub struct Sl2 {
    pub q: u64,
    pub spec: FieldSpec,
    pub field: GaloisField,
    pub ext: QuadExt,
    trace_map: HashMap<u32, ClassLabel>,
}

impl Sl2 {
    pub fn new(q: u64) -> Result<Sl2, GroupError> {
        let (spec, ext) = build_field(q)?;
        let field = ext.base.clone();
        let mut s = Sl2 { q, spec, field, ext, trace_map: HashMap::new() };
        let mut map = HashMap::new();
        for k in 1..=(q - 3) / 2 {
            map.insert(s.trace(&s.split(k as i64)), ClassLabel::Split(k));
        }
        for k in 1..=(q - 1) / 2 {
            map.insert(s.trace(&s.nonsplit(k as i64)), ClassLabel::NonSplit(k));
        }
        s.trace_map = map;
        Ok(s)
    }

    pub fn identity(&self) -> Mat2 {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(
            f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        )
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self, x: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(x.d, f.neg(x.b), f.neg(x.c), x.a)
    }

    pub fn neg(&self, x: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(f.neg(x.a), f.neg(x.b), f.neg(x.c), f.neg(x.d))
    }

    pub fn scalar(&self, s: u32, x: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(f.mul(s, x.a), f.mul(s, x.b), f.mul(s, x.c), f.mul(s, x.d))
    }

    pub fn add(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(f.add(x.a, y.a), f.add(x.b, y.b), f.add(x.c, y.c), f.add(x.d, y.d))
    }

    pub fn det(&self, x: &Mat2) -> u32 {
        let f = &self.field;
        f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c))
    }

    pub fn trace(&self, x: &Mat2) -> u32 {
        self.field.add(x.a, x.d)
    }

    pub fn pow(&self, x: &Mat2, mut e: u64) -> Mat2 {
        let mut base = *x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self, g: &Mat2, x: &Mat2) -> Mat2 {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Element order in SL2(q), or in PSL2(q) when `psl` is set.
    pub fn order(&self, x: &Mat2, psl: bool) -> u64 {
        let id = self.identity();
        let mid = self.neg(&id);
        let mut y = *x;
        let mut n = 1;
        while y != id && !(psl && y == mid) {
            y = self.mul(&y, x);
            n += 1;
        }
        n
    }

    /// Canonical representative of x modulo {+-I}.
    pub fn canon_psl(&self, x: &Mat2) -> Mat2 {
        let y = self.neg(x);
        if y < *x {
            y
        } else {
            *x
        }
    }

    /// d(g^k) = diag(g^k, g^-k).
    pub fn split(&self, k: i64) -> Mat2 {
        let f = &self.field;
        Mat2::new(f.gen_pow(k), 0, 0, f.gen_pow(-k))
    }

    /// d'(xi^k): multiplication by xi^k on GF(q^2) in the basis {1, y}.
    pub fn nonsplit(&self, k: i64) -> Mat2 {
        let e = (k.rem_euclid(self.q as i64 + 1)) as u64;
        Mat2::from_array(self.ext.mult_matrix(self.ext.pow(self.spec.generator_xi, e)))
    }

    /// u_+ = [[1, 1], [0, 1]] and u_- = [[1, z0], [0, 1]].
    pub fn unipotent(&self, tau: Sign) -> Mat2 {
        let b = match tau {
            Sign::Plus => 1,
            Sign::Minus => self.spec.nonsquare_z0,
        };
        Mat2::new(1, b, 0, 1)
    }

    /// sigma = [[0, 1], [-1, 0]], normalising the split torus.
    pub fn sigma(&self) -> Mat2 {
        Mat2::new(0, 1, self.field.neg(1), 0)
    }

    /// sigma': Frobenius composed with multiplication by an element of norm -1.
    pub fn sigma_prime(&self) -> Mat2 {
        let fr = Mat2::from_array(self.ext.frobenius_matrix());
        let mc = Mat2::from_array(self.ext.mult_matrix(self.spec.norm_minus_one));
        self.mul(&fr, &mc)
    }

    pub fn class_rep(&self, label: ClassLabel) -> Mat2 {
        match label {
            ClassLabel::Central(Sign::Plus) => self.identity(),
            ClassLabel::Central(Sign::Minus) => self.neg(&self.identity()),
            ClassLabel::Split(k) => self.split(k as i64),
            ClassLabel::NonSplit(k) => self.nonsplit(k as i64),
            ClassLabel::Unipotent(e, t) => {
                let u = self.unipotent(t);
                if e == Sign::Minus {
                    self.neg(&u)
                } else {
                    u
                }
            }
        }
    }

    /// Class label in SL2(q) of a determinant-one matrix.
    pub fn identify_sl2(&self, x: &Mat2) -> ClassLabel {
        let f = &self.field;
        let id = self.identity();
        if *x == id {
            return ClassLabel::Central(Sign::Plus);
        }
        if *x == self.neg(&id) {
            return ClassLabel::Central(Sign::Minus);
        }
        let t = self.trace(x);
        let two = f.from_i64(2);
        let (eps, u) = if t == two {
            (Sign::Plus, *x)
        } else if t == f.neg(two) {
            (Sign::Minus, self.neg(x))
        } else {
            return self.trace_map[&t];
        };
        // u = [[1 + s, y], [z, 1 - s]] is conjugate to [[1, b], [0, 1]] with b ~ -z (z != 0) or y
        let v = if u.c != 0 { f.neg(u.c) } else { u.b };
        ClassLabel::Unipotent(eps, Sign::from_bool(f.is_square(v)))
    }

    /// Label of the PSL2(q) class containing the image of `label`.
    pub fn psl_label(&self, label: ClassLabel) -> ClassLabel {
        let q = self.q;
        match label {
            ClassLabel::Central(_) => ClassLabel::Central(Sign::Plus),
            ClassLabel::Split(k) => {
                ClassLabel::Split(k.min(canon_exp(k as i64 + (q as i64 - 1) / 2, q - 1)))
            }
            ClassLabel::NonSplit(k) => {
                ClassLabel::NonSplit(k.min(canon_exp(k as i64 + (q as i64 + 1) / 2, q + 1)))
            }
            ClassLabel::Unipotent(_, t) => ClassLabel::Unipotent(Sign::Plus, t),
        }
    }

    pub fn identify_class(&self, x: &Mat2, kind: GroupKind) -> ClassLabel {
        let l = self.identify_sl2(x);
        match kind {
            GroupKind::SL2 => l,
            GroupKind::PSL2 => self.psl_label(l),
        }
    }
}

/// Class labels of SL2(q) or PSL2(q) in the fixed order
/// central, split, non-split, unipotent.
pub fn class_labels(q: u64, kind: GroupKind) -> Vec<ClassLabel> {
    let mut out = vec![ClassLabel::Central(Sign::Plus)];
    if kind == GroupKind::SL2 {
        out.push(ClassLabel::Central(Sign::Minus));
    }
    let keep_split = |k: u64| kind == GroupKind::SL2 || k <= canon_exp(k as i64 + (q as i64 - 1) / 2, q - 1);
    let keep_nonsplit = |k: u64| kind == GroupKind::SL2 || k <= canon_exp(k as i64 + (q as i64 + 1) / 2, q + 1);
    out.extend((1..=(q - 3) / 2).filter(|&k| keep_split(k)).map(ClassLabel::Split));
    out.extend((1..=(q - 1) / 2).filter(|&k| keep_nonsplit(k)).map(ClassLabel::NonSplit));
    for e in [Sign::Plus, Sign::Minus] {
        if e == Sign::Minus && kind == GroupKind::PSL2 {
            continue;
        }
        for t in [Sign::Plus, Sign::Minus] {
            out.push(ClassLabel::Unipotent(e, t));
        }
    }
    out
}

/// Size of the class with the given label.
pub fn class_size(q: u64, kind: GroupKind, label: ClassLabel) -> u64 {
    let sl = match label {
        ClassLabel::Central(_) => 1,
        ClassLabel::Split(_) => q * (q + 1),
        ClassLabel::NonSplit(_) => q * (q - 1),
        ClassLabel::Unipotent(..) => (q * q - 1) / 2,
    };
    if kind == GroupKind::SL2 {
        return sl;
    }
    // x and -x conjugate halves the image class
    let self_paired = match label {
        ClassLabel::Central(_) => true,
        ClassLabel::Split(k) => canon_exp(k as i64 + (q as i64 - 1) / 2, q - 1) == k,
        ClassLabel::NonSplit(k) => canon_exp(k as i64 + (q as i64 + 1) / 2, q + 1) == k,
        ClassLabel::Unipotent(..) => false,
    };
    if self_paired && sl > 1 {
        sl / 2
    } else {
        sl
    }
}

/// Labels with representatives. For PSL2 the representative is a preimage.
pub fn class_reps(q: u64, kind: GroupKind) -> Result<Vec<(ClassLabel, Mat2)>, GroupError> {
    let g = Sl2::new(q)?;
    Ok(class_labels(q, kind).into_iter().map(|l| (l, g.class_rep(l))).collect())
}

pub fn identify_class(q: u64, kind: GroupKind, x: &Mat2) -> Result<ClassLabel, GroupError> {
    Ok(Sl2::new(q)?.identify_class(x, kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(class_labels(5, GroupKind::SL2).len(), 9);
        assert_eq!(class_labels(5, GroupKind::PSL2).len(), 5);
        assert_eq!(class_labels(3, GroupKind::SL2).len(), 7);
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            for kind in [GroupKind::SL2, GroupKind::PSL2] {
                let total: u64 = class_labels(q, kind).iter().map(|l| class_size(q, kind, *l)).sum();
                assert_eq!(total, kind.order(q), "q = {q} {kind}");
            }
        }
    }

    #[test]
    fn representatives_round_trip() {
        for q in [3u64, 5, 7, 9, 11, 13, 25] {
            let g = Sl2::new(q).unwrap();
            for kind in [GroupKind::SL2, GroupKind::PSL2] {
                for l in class_labels(q, kind) {
                    let x = g.class_rep(l);
                    assert_eq!(g.det(&x), 1);
                    assert_eq!(g.identify_class(&x, kind), l, "q = {q}");
                }
            }
        }
    }

    #[test]
    fn normaliser_elements() {
        for q in [3u64, 5, 7, 9, 11] {
            let g = Sl2::new(q).unwrap();
            let mid = g.neg(&g.identity());
            for sig in [g.sigma(), g.sigma_prime()] {
                assert_eq!(g.det(&sig), 1);
                assert_eq!(g.mul(&sig, &sig), mid);
            }
            let x = g.nonsplit(1);
            assert_eq!(g.conj(&g.sigma_prime(), &x), g.inv(&x));
            assert_eq!(g.order(&x, false), q + 1);
        }
    }
}

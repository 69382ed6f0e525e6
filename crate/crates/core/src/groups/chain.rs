//! Chains of l-subgroups 1 = Q_1 < Q_2 < ... and the l'-classes indexing
//! the columns of a trivial source character table.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{canon_exp, ClassLabel, GroupError, GroupKind, Mat2, Sign, Sl2};
use crate::numtheory::{is_prime_small, l_part, prime_power, valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TorusKind {
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "nonsplit")]
    NonSplit,
}

/// Which family of l-subgroups the chain runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// l odd dividing q - 1 (torus kind Split) or q + 1 (NonSplit).
    Odd { torus: TorusKind, n: u32 },
    /// l = 2 with q = 3 mod 8 (`plus3`) or q = 5 mod 8.
    Two { plus3: bool },
}

impl Regime {
    /// l-adic valuation of the group order; the chain has n + 1 levels.
    pub fn n(&self, kind: GroupKind) -> u32 {
        match self {
            Regime::Odd { n, .. } => *n,
            Regime::Two { .. } => match kind {
                GroupKind::SL2 => 3,
                GroupKind::PSL2 => 2,
            },
        }
    }
}

/// Classify (q, l, group) or explain why it is not covered.
pub fn regime(q: u64, ell: u64, kind: GroupKind) -> Result<Regime, GroupError> {
    let bad = |msg: String| Err(GroupError::UnsupportedRegime(msg));
    let Some((p, _)) = prime_power(q) else {
        return bad(format!("q = {q} is not a prime power"));
    };
    if p == 2 {
        return bad(format!("q = {q} is even"));
    }
    if !is_prime_small(ell) {
        return bad(format!("l = {ell} is not prime"));
    }
    if ell == p {
        return bad(format!("l = {ell} is the defining characteristic"));
    }
    if ell == 2 {
        return match q % 8 {
            3 => Ok(Regime::Two { plus3: true }),
            5 => Ok(Regime::Two { plus3: false }),
            _ => bad(format!("l = 2 needs q = +-3 mod 8, got q = {q}")),
        };
    }
    if kind == GroupKind::PSL2 {
        return bad("odd l is covered for SL2 only".into());
    }
    if (q - 1) % ell == 0 {
        if q == 3 {
            return bad("q = 3 with l | q - 1".into());
        }
        Ok(Regime::Odd { torus: TorusKind::Split, n: valuation(ell, q - 1) })
    } else if (q + 1) % ell == 0 {
        Ok(Regime::Odd { torus: TorusKind::NonSplit, n: valuation(ell, q + 1) })
    } else {
        bad(format!("l = {ell} does not divide |G| for q = {q}"))
    }
}

/// l'-class of a dicyclic normaliser N (split torus) or N' (non-split torus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NClass {
    Central(Sign),
    Torus(u64),
    Sigma(Sign),
}

impl NClass {
    pub fn name(&self, torus: TorusKind) -> String {
        let pr = if torus == TorusKind::NonSplit { "'" } else { "" };
        match self {
            NClass::Central(Sign::Plus) => "I".into(),
            NClass::Central(Sign::Minus) => "-I".into(),
            NClass::Torus(k) => match torus {
                TorusKind::Split => format!("d(g^{k})"),
                TorusKind::NonSplit => format!("d'(xi^{k})"),
            },
            NClass::Sigma(t) => format!("sigma{pr}{}", t.symbol()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColumnKind {
    /// l'-class of G.
    Class(ClassLabel),
    /// l'-class of N or N' modulo Q.
    Normalizer(TorusKind, NClass),
    /// s centralising a cyclic Q = <y>; the entry is chi(y s). `ys` is the class of y s.
    Twisted { s: ClassLabel, ys: ClassLabel },
    /// x^j, x of order 3 normalising Q8.
    Cyclic3(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub level: u32,
    pub label: String,
    pub param: String,
    pub kind: ColumnKind,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.label)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainLevel {
    pub level: u32,
    /// Order of Q_v in G.
    pub order: u64,
    pub name: String,
    /// Generators of Q_v, as matrices of SL2 (preimages for PSL2).
    pub generators: Vec<Mat2>,
    pub normalizer: String,
    pub normalizer_order: u64,
    pub normalizer_generators: Vec<Mat2>,
    pub columns: Vec<Column>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupChain {
    pub q: u64,
    pub ell: u64,
    pub group: GroupKind,
    pub n: u32,
    pub regime: Regime,
    pub levels: Vec<ChainLevel>,
}

/// Exponents k in 1..=(r-2)/2 of elements of l'-order in a cyclic group of order r.
pub fn lprime_exponents(ell: u64, r: u64) -> Vec<u64> {
    let lp = l_part(ell, r);
    (1..=(r - 1) / 2).filter(|k| k % lp == 0 && 2 * k != r).collect()
}

fn class_col(level: u32, l: ClassLabel) -> Column {
    let param = match l {
        ClassLabel::Split(k) | ClassLabel::NonSplit(k) => k.to_string(),
        _ => String::new(),
    };
    Column { level, label: l.to_string(), param, kind: ColumnKind::Class(l) }
}

fn level_one_columns(q: u64, ell: u64, with_minus: bool) -> Vec<Column> {
    let mut cols = vec![class_col(1, ClassLabel::Central(Sign::Plus))];
    if with_minus {
        cols.push(class_col(1, ClassLabel::Central(Sign::Minus)));
    }
    for k in lprime_exponents(ell, q - 1) {
        cols.push(class_col(1, ClassLabel::Split(k)));
    }
    for k in lprime_exponents(ell, q + 1) {
        cols.push(class_col(1, ClassLabel::NonSplit(k)));
    }
    let eps: &[Sign] = if with_minus { &[Sign::Plus, Sign::Minus] } else { &[Sign::Plus] };
    for &e in eps {
        for t in [Sign::Plus, Sign::Minus] {
            cols.push(class_col(1, ClassLabel::Unipotent(e, t)));
        }
    }
    cols
}

fn normalizer_columns(q: u64, ell: u64, level: u32, torus: TorusKind) -> Vec<Column> {
    let r = match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    };
    let mut classes = vec![NClass::Central(Sign::Plus), NClass::Central(Sign::Minus)];
    classes.extend(lprime_exponents(ell, r).into_iter().map(NClass::Torus));
    classes.push(NClass::Sigma(Sign::Plus));
    classes.push(NClass::Sigma(Sign::Minus));
    classes
        .into_iter()
        .map(|c| Column {
            level,
            label: c.name(torus),
            param: match c {
                NClass::Torus(k) => k.to_string(),
                _ => String::new(),
            },
            kind: ColumnKind::Normalizer(torus, c),
        })
        .collect()
}

/// Class of y*s where y = d(g^ky) or d'(xi^ky) and s is the class `s` of the same torus (or central).
fn shift_label(q: u64, s: ClassLabel, torus: TorusKind, ky: u64) -> ClassLabel {
    let (r, base) = match (torus, s) {
        (_, ClassLabel::Central(Sign::Plus)) => (0, 0),
        (_, ClassLabel::Central(Sign::Minus)) => (0, 0),
        (TorusKind::Split, ClassLabel::Split(k)) => (q - 1, k),
        (TorusKind::NonSplit, ClassLabel::NonSplit(k)) => (q + 1, k),
        _ => unreachable!("s must lie in the torus"),
    };
    let r = if r == 0 {
        match torus {
            TorusKind::Split => q - 1,
            TorusKind::NonSplit => q + 1,
        }
    } else {
        r
    };
    let base = match s {
        ClassLabel::Central(Sign::Minus) => r / 2,
        _ => base,
    };
    let e = canon_exp((base + ky) as i64, r);
    if e == 0 {
        ClassLabel::Central(Sign::Plus)
    } else if 2 * e == r {
        ClassLabel::Central(Sign::Minus)
    } else {
        match torus {
            TorusKind::Split => ClassLabel::Split(e),
            TorusKind::NonSplit => ClassLabel::NonSplit(e),
        }
    }
}

fn twisted_columns(level: u32, labels: &[(ClassLabel, ClassLabel)], yname: &str) -> Vec<Column> {
    labels
        .iter()
        .map(|&(s, ys)| {
            let param = match s {
                ClassLabel::Split(k) | ClassLabel::NonSplit(k) => k.to_string(),
                _ => String::new(),
            };
            Column { level, label: format!("{yname}*{s}"), param, kind: ColumnKind::Twisted { s, ys } }
        })
        .collect()
}

fn cyclic3_columns(level: u32) -> Vec<Column> {
    (0..3u8)
        .map(|j| Column {
            level,
            label: if j == 0 { "1".into() } else { format!("x^{j}") },
            param: j.to_string(),
            kind: ColumnKind::Cyclic3(j),
        })
        .collect()
}

/// Symbolic column data for every level; no field arithmetic needed.
pub fn chain_columns(q: u64, ell: u64, kind: GroupKind) -> Result<(Regime, Vec<Vec<Column>>), GroupError> {
    let reg = regime(q, ell, kind)?;
    let mut levels = Vec::new();
    match reg {
        Regime::Odd { torus, n } => {
            levels.push(level_one_columns(q, ell, true));
            for v in 2..=n + 1 {
                levels.push(normalizer_columns(q, ell, v, torus));
            }
        }
        Regime::Two { plus3 } => {
            let first = level_one_columns(q, 2, false);
            let (torus, r) = if plus3 { (TorusKind::NonSplit, q + 1) } else { (TorusKind::Split, q - 1) };
            let ky = r / 4;
            // s ranges over I and the odd-order part of the torus containing y
            let mut torus_s = vec![ClassLabel::Central(Sign::Plus)];
            for k in lprime_exponents(2, r) {
                torus_s.push(match torus {
                    TorusKind::Split => ClassLabel::Split(k),
                    TorusKind::NonSplit => ClassLabel::NonSplit(k),
                });
            }
            let by_y: Vec<(ClassLabel, ClassLabel)> =
                torus_s.iter().map(|&s| (s, shift_label(q, s, torus, ky))).collect();
            match kind {
                GroupKind::PSL2 => {
                    levels.push(first);
                    levels.push(twisted_columns(2, &by_y, "y"));
                    levels.push(cyclic3_columns(3));
                }
                GroupKind::SL2 => {
                    let by_minus: Vec<(ClassLabel, ClassLabel)> = first
                        .iter()
                        .map(|c| {
                            let ColumnKind::Class(s) = c.kind else { unreachable!() };
                            (s, negate_label(q, s))
                        })
                        .collect();
                    levels.push(first);
                    levels.push(twisted_columns(2, &by_minus, "-I"));
                    levels.push(twisted_columns(3, &by_y, "y"));
                    levels.push(cyclic3_columns(4));
                }
            }
        }
    }
    Ok((reg, levels))
}

/// Class of -x given the class of x in SL2(q).
pub fn negate_label(q: u64, l: ClassLabel) -> ClassLabel {
    let flip = |s: Sign| if s == Sign::Plus { Sign::Minus } else { Sign::Plus };
    match l {
        ClassLabel::Central(s) => ClassLabel::Central(flip(s)),
        ClassLabel::Split(k) => ClassLabel::Split(canon_exp(k as i64 + (q as i64 - 1) / 2, q - 1)),
        ClassLabel::NonSplit(k) => ClassLabel::NonSplit(canon_exp(k as i64 + (q as i64 + 1) / 2, q + 1)),
        ClassLabel::Unipotent(e, t) => ClassLabel::Unipotent(flip(e), t),
    }
}

impl Sl2 {
    /// Order-4 element y with y^2 = -I spanning the cyclic 2-subgroup of the torus, l = 2.
    pub fn two_y(&self, plus3: bool) -> Mat2 {
        if plus3 {
            self.nonsplit((self.q as i64 + 1) / 4)
        } else {
            self.split((self.q as i64 - 1) / 4)
        }
    }

    /// The element of the normaliser of the torus inverting it.
    pub fn two_j(&self, plus3: bool) -> Mat2 {
        if plus3 {
            self.sigma_prime()
        } else {
            self.sigma()
        }
    }

    /// x = (-I + y + j + y j) / 2, of order 3, normalising Q8 = <y, j>.
    pub fn two_x(&self, plus3: bool) -> Mat2 {
        let y = self.two_y(plus3);
        let j = self.two_j(plus3);
        let yj = self.mul(&y, &j);
        let s = self.add(&self.add(&self.neg(&self.identity()), &y), &self.add(&j, &yj));
        self.scalar(self.field.inv(2), &s)
    }

    /// Representative matrix of a column's l'-element s (a preimage in SL2).
    pub fn column_rep(&self, kind: &ColumnKind) -> Mat2 {
        match kind {
            ColumnKind::Class(l) => self.class_rep(*l),
            ColumnKind::Twisted { s, .. } => self.class_rep(*s),
            ColumnKind::Normalizer(torus, c) => match (torus, c) {
                (_, NClass::Central(s)) => self.class_rep(ClassLabel::Central(*s)),
                (TorusKind::Split, NClass::Torus(k)) => self.split(*k as i64),
                (TorusKind::NonSplit, NClass::Torus(k)) => self.nonsplit(*k as i64),
                (TorusKind::Split, NClass::Sigma(t)) => match t {
                    Sign::Plus => self.sigma(),
                    Sign::Minus => {
                        let z = self.spec.nonsquare_z0;
                        let d = Mat2::new(z, 0, 0, self.field.inv(z));
                        self.mul(&self.sigma(), &d)
                    }
                },
                (TorusKind::NonSplit, NClass::Sigma(t)) => match t {
                    Sign::Plus => self.sigma_prime(),
                    Sign::Minus => self.mul(&self.sigma_prime(), &self.nonsplit(1)),
                },
            },
            ColumnKind::Cyclic3(j) => {
                let plus3 = self.q % 8 == 3;
                self.pow(&self.two_x(plus3), *j as u64)
            }
        }
    }
}

/// The chain Q_1 < ... < Q_{n+1} with generators, normalisers and l'-columns.
pub fn ell_subgroup_chain(q: u64, ell: u64, kind: GroupKind) -> Result<SubgroupChain, GroupError> {
    let (reg, cols) = chain_columns(q, ell, kind)?;
    let g = Sl2::new(q)?;
    let n = reg.n(kind);
    let gorder = kind.order(q);
    let mut levels = Vec::new();
    let whole = vec![g.split(1), g.unipotent(Sign::Plus), g.sigma()];
    for (i, columns) in cols.into_iter().enumerate() {
        let v = i as u32 + 1;
        let (order, name, generators, nname, norder, ngens) = if v == 1 {
            (1, "1".to_string(), vec![], "G".to_string(), gorder, whole.clone())
        } else {
            match reg {
                Regime::Odd { torus, .. } => {
                    let ord = ell.pow(v - 1);
                    match torus {
                        TorusKind::Split => {
                            let y = g.split(((q - 1) / ord) as i64);
                            (ord, format!("C_{ord}"), vec![y], "N".into(), 2 * (q - 1), vec![g.split(1), g.sigma()])
                        }
                        TorusKind::NonSplit => {
                            let y = g.nonsplit(((q + 1) / ord) as i64);
                            (ord, format!("C_{ord}"), vec![y], "N'".into(), 2 * (q + 1), vec![g.nonsplit(1), g.sigma_prime()])
                        }
                    }
                }
                Regime::Two { plus3 } => {
                    let y = g.two_y(plus3);
                    let j = g.two_j(plus3);
                    let x = g.two_x(plus3);
                    let t1 = if plus3 { g.nonsplit(1) } else { g.split(1) };
                    let r = if plus3 { q + 1 } else { q - 1 };
                    let top = v == n + 1;
                    match (kind, v) {
                        (GroupKind::SL2, 2) => (2, "Z".into(), vec![g.neg(&g.identity())], "G".into(), gorder, whole.clone()),
                        _ if top => {
                            let (o, nm, no) = if kind == GroupKind::SL2 { (8, "Q_8", 24) } else { (4, "V_4", 12) };
                            let nn = if kind == GroupKind::SL2 { "SL2(3)" } else { "A_4" };
                            (o, nm.into(), vec![y, j], nn.into(), no, vec![y, j, x])
                        }
                        _ => {
                            let (o, no) = if kind == GroupKind::SL2 { (4, 2 * r) } else { (2, r) };
                            (o, format!("C_{o}"), vec![y], format!("N_G(C_{o})"), no, vec![t1, j])
                        }
                    }
                }
            }
        };
        levels.push(ChainLevel {
            level: v,
            order,
            name,
            generators,
            normalizer: nname,
            normalizer_order: norder,
            normalizer_generators: ngens,
            columns,
        });
    }
    Ok(SubgroupChain { q, ell, group: kind, n, regime: reg, levels })
}

/// The l'-columns of level `v` (1-based).
pub fn ellprime_columns(chain: &SubgroupChain, v: u32) -> &[Column] {
    &chain.levels[(v - 1) as usize].columns
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_counts() {
        let c = ell_subgroup_chain(7, 3, GroupKind::SL2).unwrap();
        assert_eq!(ellprime_columns(&c, 1).len(), 9);
        assert_eq!(ellprime_columns(&c, 2).len(), 4);
        let c = ell_subgroup_chain(5, 2, GroupKind::SL2).unwrap();
        let sizes: Vec<usize> = c.levels.iter().map(|l| l.columns.len()).collect();
        assert_eq!(sizes, vec![4, 4, 1, 3]);
    }

    #[test]
    fn unsupported() {
        assert!(regime(9, 3, GroupKind::SL2).is_err());
        assert!(regime(3, 2, GroupKind::SL2).is_ok());
        assert!(regime(7, 2, GroupKind::SL2).is_err());
        assert!(regime(7, 3, GroupKind::PSL2).is_err());
        assert!(regime(7, 5, GroupKind::SL2).is_err());
    }

    #[test]
    fn order_three_element() {
        for q in [3u64, 5, 11, 13, 19, 27, 29] {
            let g = Sl2::new(q).unwrap();
            let plus3 = q % 8 == 3;
            let x = g.two_x(plus3);
            assert_eq!(g.det(&x), 1);
            assert_eq!(g.order(&x, false), 3, "q = {q}");
            let y = g.two_y(plus3);
            let j = g.two_j(plus3);
            for h in [y, j] {
                let c = g.conj(&x, &h);
                let q8 = [y, j, g.mul(&y, &j)];
                assert!(q8.iter().any(|e| *e == c || g.neg(e) == c));
            }
        }
    }
}

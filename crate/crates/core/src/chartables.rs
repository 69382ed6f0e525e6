//! Ordinary character tables of SL2(q), PSL2(q) and the dicyclic normalisers
//! N (split torus) and N' (non-split torus).
//!
//! Characters of a cyclic group mu_r = <w> are indexed by exponents:
//! the j-th character sends w^k to zeta_r^(jk). alpha_j lives on the split
//! torus (r = q - 1), theta_j on the non-split torus (r = q + 1); alpha0 and
//! theta0 are the characters of order two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{gauss_sqrt_q0, sum_all, CycError, CycNum};
use crate::groups::{canon_exp, class_labels, class_size, ClassLabel, GroupKind, NClass, Sign, TorusKind};
use crate::numtheory::prime_power;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartabError {
    #[error("characters belong to different groups")]
    GroupMismatch,
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("unsupported group: {0}")]
    Unsupported(String),
}

/// Irreducible character of SL2(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharId {
    Trivial,
    Steinberg,
    /// R(alpha_j), j canonical in 1..=(q-3)/2.
    R(u64),
    /// R'(theta_j), j canonical in 1..=(q-1)/2.
    RPrime(u64),
    /// R+-(alpha0).
    RHalf(Sign),
    /// R'+-(theta0).
    RPrimeHalf(Sign),
}

/// Irreducible character of N or N'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NCharId {
    Trivial,
    Eps,
    /// chi+- extending the order-two character of the torus.
    ChiHalf(Sign),
    /// chi_j induced from the j-th torus character.
    Chi(u64),
}

impl fmt::Display for CharId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharId::Trivial => write!(f, "1"),
            CharId::Steinberg => write!(f, "St"),
            CharId::R(j) => write!(f, "R({j})"),
            CharId::RPrime(j) => write!(f, "R'({j})"),
            CharId::RHalf(s) => write!(f, "R{}", s.symbol()),
            CharId::RPrimeHalf(s) => write!(f, "R'{}", s.symbol()),
        }
    }
}

impl fmt::Display for NCharId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NCharId::Trivial => write!(f, "1_N"),
            NCharId::Eps => write!(f, "eps"),
            NCharId::ChiHalf(s) => write!(f, "chi{}", s.symbol()),
            NCharId::Chi(j) => write!(f, "chi({j})"),
        }
    }
}

fn parse_arg(s: &str, head: &str) -> Option<u64> {
    s.strip_prefix(head)?.strip_suffix(')')?.parse().ok()
}

impl FromStr for CharId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "1" => CharId::Trivial,
            "St" => CharId::Steinberg,
            "R+" => CharId::RHalf(Sign::Plus),
            "R-" => CharId::RHalf(Sign::Minus),
            "R'+" => CharId::RPrimeHalf(Sign::Plus),
            "R'-" => CharId::RPrimeHalf(Sign::Minus),
            _ => {
                if let Some(j) = parse_arg(s, "R(") {
                    CharId::R(j)
                } else if let Some(j) = parse_arg(s, "R'(") {
                    CharId::RPrime(j)
                } else {
                    return Err(format!("unknown character {s}"));
                }
            }
        })
    }
}

impl FromStr for NCharId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "1_N" => NCharId::Trivial,
            "eps" => NCharId::Eps,
            "chi+" => NCharId::ChiHalf(Sign::Plus),
            "chi-" => NCharId::ChiHalf(Sign::Minus),
            _ => NCharId::Chi(parse_arg(s, "chi(").ok_or(format!("unknown character {s}"))?),
        })
    }
}

fn pm(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Character values of SL2(q) and of N, N'. Holds the Gauss sum for q.
#[derive(Debug, Clone)]
pub struct Chars {
    pub q: u64,
    /// Square root of q0 = (-1)^((q-1)/2) q.
    pub s: CycNum,
}

impl Chars {
    pub fn new(q: u64) -> Result<Chars, ChartabError> {
        Ok(Chars { q, s: gauss_sqrt_q0(q)? })
    }

    /// R(alpha_j) for any exponent j (j = 0 gives 1 + St); the formula is valid for alpha_j^2 != 1.
    pub fn r(&self, j: i64, c: ClassLabel) -> CycNum {
        let q = self.q;
        let a_minus = pm(j.rem_euclid(2) as u64);
        match c {
            ClassLabel::Central(e) => CycNum::from_int((q as i64 + 1) * if e == Sign::Minus { a_minus } else { 1 }),
            ClassLabel::Split(k) => CycNum::zeta_real(q - 1, j * k as i64),
            ClassLabel::NonSplit(_) => CycNum::zero(),
            ClassLabel::Unipotent(e, _) => CycNum::from_int(if e == Sign::Minus { a_minus } else { 1 }),
        }
    }

    /// R'(theta_j) for any exponent j (j = 0 gives St - 1).
    pub fn rp(&self, j: i64, c: ClassLabel) -> CycNum {
        let q = self.q;
        let t_minus = pm(j.rem_euclid(2) as u64);
        match c {
            ClassLabel::Central(e) => CycNum::from_int((q as i64 - 1) * if e == Sign::Minus { t_minus } else { 1 }),
            ClassLabel::Split(_) => CycNum::zero(),
            ClassLabel::NonSplit(k) => -CycNum::zeta_real(q + 1, j * k as i64),
            ClassLabel::Unipotent(e, _) => CycNum::from_int(if e == Sign::Minus { -t_minus } else { -1 }),
        }
    }

    pub fn value(&self, id: CharId, c: ClassLabel) -> CycNum {
        let q = self.q as i64;
        match id {
            CharId::Trivial => CycNum::one(),
            CharId::Steinberg => CycNum::from_int(match c {
                ClassLabel::Central(_) => q,
                ClassLabel::Split(_) => 1,
                ClassLabel::NonSplit(_) => -1,
                ClassLabel::Unipotent(..) => 0,
            }),
            CharId::R(j) => self.r(j as i64, c),
            CharId::RPrime(j) => self.rp(j as i64, c),
            CharId::RHalf(sg) => {
                let a0m = pm(((q - 1) / 2) as u64);
                let at = |e: Sign| if e == Sign::Minus { a0m } else { 1 };
                match c {
                    ClassLabel::Central(e) => CycNum::from_int(at(e) * (q + 1) / 2),
                    ClassLabel::Split(k) => CycNum::from_int(pm(k)),
                    ClassLabel::NonSplit(_) => CycNum::zero(),
                    ClassLabel::Unipotent(e, t) => {
                        let x = &CycNum::one() + &self.s.scale_int(sg.value() * t.value());
                        x.scale(&num_rational::BigRational::new(at(e).into(), 2.into()))
                    }
                }
            }
            CharId::RPrimeHalf(sg) => {
                let t0m = pm(((q + 1) / 2) as u64);
                let at = |e: Sign| if e == Sign::Minus { t0m } else { 1 };
                match c {
                    ClassLabel::Central(e) => CycNum::from_int(at(e) * (q - 1) / 2),
                    ClassLabel::Split(_) => CycNum::zero(),
                    ClassLabel::NonSplit(k) => CycNum::from_int(-pm(k)),
                    ClassLabel::Unipotent(e, t) => {
                        let x = &CycNum::from_int(-1) + &self.s.scale_int(sg.value() * t.value());
                        x.scale(&num_rational::BigRational::new(at(e).into(), 2.into()))
                    }
                }
            }
        }
    }

    pub fn degree(&self, id: CharId) -> i64 {
        self.value(id, ClassLabel::Central(Sign::Plus)).to_i64().unwrap()
    }

    /// Square root of the value of the order-two torus character at -1:
    /// 1 or i. The two linear extensions take +-tau times this at sigma_tau.
    fn half_root(&self, torus: TorusKind) -> CycNum {
        let r = match torus {
            TorusKind::Split => self.q - 1,
            TorusKind::NonSplit => self.q + 1,
        };
        if (r / 2) % 2 == 0 {
            CycNum::one()
        } else {
            CycNum::zeta(4, 1)
        }
    }

    /// chi_j on N or N' for any exponent j.
    pub fn nchi(&self, torus: TorusKind, j: i64, c: NClass) -> CycNum {
        let r = match torus {
            TorusKind::Split => self.q - 1,
            TorusKind::NonSplit => self.q + 1,
        };
        match c {
            NClass::Central(Sign::Plus) => CycNum::from_int(2),
            NClass::Central(Sign::Minus) => CycNum::from_int(2 * pm(j.rem_euclid(2) as u64)),
            NClass::Torus(k) => CycNum::zeta_real(r, j * k as i64),
            NClass::Sigma(_) => CycNum::zero(),
        }
    }

    pub fn nvalue(&self, torus: TorusKind, id: NCharId, c: NClass) -> CycNum {
        let r = match torus {
            TorusKind::Split => self.q - 1,
            TorusKind::NonSplit => self.q + 1,
        };
        match id {
            NCharId::Trivial => CycNum::one(),
            NCharId::Eps => CycNum::from_int(match c {
                NClass::Sigma(_) => -1,
                _ => 1,
            }),
            NCharId::ChiHalf(sg) => match c {
                NClass::Central(Sign::Plus) => CycNum::one(),
                NClass::Central(Sign::Minus) => CycNum::from_int(pm(r / 2)),
                NClass::Torus(k) => CycNum::from_int(pm(k)),
                NClass::Sigma(t) => self.half_root(torus).scale_int(sg.value() * t.value()),
            },
            NCharId::Chi(j) => self.nchi(torus, j as i64, c),
        }
    }
}

/// Irreducible characters of SL2(q), in the fixed order
/// 1, St, R(alpha0)+-, R(alpha_j), R'(theta0)+-, R'(theta_j).
pub fn char_ids(q: u64, kind: GroupKind) -> Vec<CharId> {
    let mut out = vec![CharId::Trivial, CharId::Steinberg];
    let psl = kind == GroupKind::PSL2;
    if !psl || ((q - 1) / 2) % 2 == 0 {
        out.push(CharId::RHalf(Sign::Plus));
        out.push(CharId::RHalf(Sign::Minus));
    }
    out.extend((1..=(q - 3) / 2).filter(|j| !psl || j % 2 == 0).map(CharId::R));
    if !psl || ((q + 1) / 2) % 2 == 0 {
        out.push(CharId::RPrimeHalf(Sign::Plus));
        out.push(CharId::RPrimeHalf(Sign::Minus));
    }
    out.extend((1..=(q - 1) / 2).filter(|j| !psl || j % 2 == 0).map(CharId::RPrime));
    out
}

pub fn nchar_ids(q: u64, torus: TorusKind) -> Vec<NCharId> {
    let r = match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    };
    let mut out = vec![
        NCharId::Trivial,
        NCharId::Eps,
        NCharId::ChiHalf(Sign::Plus),
        NCharId::ChiHalf(Sign::Minus),
    ];
    out.extend((1..=(r - 2) / 2).map(NCharId::Chi));
    out
}

pub fn nclass_labels(q: u64, torus: TorusKind) -> Vec<NClass> {
    let r = match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    };
    let mut out = vec![NClass::Central(Sign::Plus), NClass::Central(Sign::Minus)];
    out.extend((1..=(r - 2) / 2).map(NClass::Torus));
    out.push(NClass::Sigma(Sign::Plus));
    out.push(NClass::Sigma(Sign::Minus));
    out
}

pub fn nclass_size(q: u64, torus: TorusKind, c: NClass) -> u64 {
    let r = match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    };
    match c {
        NClass::Central(_) => 1,
        NClass::Torus(_) => 2,
        NClass::Sigma(_) => r / 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableGroup {
    #[serde(rename = "sl2")]
    SL2,
    #[serde(rename = "psl2")]
    PSL2,
    #[serde(rename = "n")]
    N,
    #[serde(rename = "nprime")]
    NPrime,
}

impl fmt::Display for TableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableGroup::SL2 => "SL2",
            TableGroup::PSL2 => "PSL2",
            TableGroup::N => "N",
            TableGroup::NPrime => "N'",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableClass {
    G(ClassLabel),
    N(NClass),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub group: TableGroup,
    pub q: u64,
    pub id: String,
    pub degree: CycNum,
    /// Values in the order of the table's classes.
    pub values: Vec<CycNum>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group: TableGroup,
    pub q: u64,
    pub order: u64,
    pub classes: Vec<TableClass>,
    pub class_names: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub characters: Vec<Character>,
}

fn check_q(q: u64) -> Result<(), ChartabError> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => Ok(()),
        _ => Err(ChartabError::Unsupported(format!("q = {q} is not an odd prime power"))),
    }
}

fn g_table(q: u64, kind: GroupKind) -> Result<CharacterTable, ChartabError> {
    check_q(q)?;
    let ch = Chars::new(q)?;
    let group = match kind {
        GroupKind::SL2 => TableGroup::SL2,
        GroupKind::PSL2 => TableGroup::PSL2,
    };
    let labels = class_labels(q, kind);
    let characters = char_ids(q, kind)
        .into_iter()
        .map(|id| Character {
            group,
            q,
            id: id.to_string(),
            degree: CycNum::from_int(ch.degree(id)),
            values: labels.iter().map(|l| ch.value(id, *l)).collect(),
        })
        .collect();
    Ok(CharacterTable {
        group,
        q,
        order: kind.order(q),
        class_names: labels.iter().map(|l| l.to_string()).collect(),
        class_sizes: labels.iter().map(|l| class_size(q, kind, *l)).collect(),
        classes: labels.into_iter().map(TableClass::G).collect(),
        characters,
    })
}

pub fn irr_sl2(q: u64) -> Result<CharacterTable, ChartabError> {
    g_table(q, GroupKind::SL2)
}

pub fn irr_psl2(q: u64) -> Result<CharacterTable, ChartabError> {
    g_table(q, GroupKind::PSL2)
}

/// Character table of N = N_G(T) (split) or N' = N_G(T') (non-split).
pub fn irr_dicyclic(q: u64, torus: TorusKind) -> Result<CharacterTable, ChartabError> {
    check_q(q)?;
    if torus == TorusKind::Split && q < 5 {
        return Err(ChartabError::Unsupported("split torus of SL2(3) is central".into()));
    }
    let ch = Chars::new(q)?;
    let group = match torus {
        TorusKind::Split => TableGroup::N,
        TorusKind::NonSplit => TableGroup::NPrime,
    };
    let labels = nclass_labels(q, torus);
    let characters = nchar_ids(q, torus)
        .into_iter()
        .map(|id| Character {
            group,
            q,
            id: id.to_string(),
            degree: ch.nvalue(torus, id, NClass::Central(Sign::Plus)),
            values: labels.iter().map(|l| ch.nvalue(torus, id, *l)).collect(),
        })
        .collect();
    let r = match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    };
    Ok(CharacterTable {
        group,
        q,
        order: 2 * r,
        class_names: labels.iter().map(|l| l.name(torus)).collect(),
        class_sizes: labels.iter().map(|l| nclass_size(q, torus, *l)).collect(),
        classes: labels.into_iter().map(TableClass::N).collect(),
        characters,
    })
}

/// <chi, psi> = |G|^-1 sum_g chi(g) conj(psi(g)).
pub fn inner_product(table: &CharacterTable, chi: &Character, psi: &Character) -> Result<CycNum, ChartabError> {
    if chi.group != psi.group || chi.group != table.group || chi.q != psi.q || chi.q != table.q {
        return Err(ChartabError::GroupMismatch);
    }
    let total = sum_all(
        table
            .class_sizes
            .iter()
            .zip(chi.values.iter().zip(&psi.values))
            .map(|(n, (a, b))| (a * &b.conjugate()).scale_int(*n as i64)),
    );
    Ok(total.scale(&num_rational::BigRational::new(1.into(), (table.order as i64).into())))
}

/// Canonical exponent of a character of mu_r, or None when it has order at most two.
pub fn canon_char(j: i64, r: u64) -> Option<u64> {
    let c = canon_exp(j, r);
    (c != 0 && 2 * c != r).then_some(c)
}

//! Trivial source character tables.
//!
//! Rows are trivial source modules grouped by vertex level i (Q_i is the
//! vertex), columns are pairs (Q_v, s) with s an l'-element of N_G(Q_v)/Q_v.
//! The entry is the Brauer character of the Brauer quotient M[Q_v] at s; it
//! vanishes unless Q_v is contained in a vertex of M, so T is block lower
//! triangular.
//!
//! Exceptional characters of a cyclic block agree on l'-classes, so a sum
//! of them (a bundle) is stored as one representative with a multiplicity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks::{bundle_exponents, EtaSet};
use crate::chartables::{canon_char, CharId, Chars, ChartabError, NCharId};
use crate::cyclotomic::{sum_all, CycNum};
use crate::groups::chain::{chain_columns, lprime_exponents, Regime};
use crate::groups::{Column, ColumnKind, GroupError, GroupKind, Sign, TorusKind};
use crate::numtheory::l_part;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

/// Summand of the ordinary character of a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GTerm {
    Irr(CharId),
    /// One exceptional character R(alpha_base * eta) or R'(theta_base * eta);
    /// the multiplicity counts the members of the bundle.
    Bundle(TorusKind, u64),
}

/// Summand of the Green correspondent of a row (levels >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NTerm {
    Irr(NCharId),
    /// Exceptional chi_(base * eta) on N or N'.
    Bundle(u64),
    /// Linear character x -> omega^j of the cyclic group of order 3.
    Lin3(u8),
}

impl fmt::Display for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTerm::Irr(c) => c.fmt(f),
            GTerm::Bundle(TorusKind::Split, j) => write!(f, "Xi[R({j})]"),
            GTerm::Bundle(TorusKind::NonSplit, j) => write!(f, "Xi[R'({j})]"),
        }
    }
}

impl fmt::Display for NTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NTerm::Irr(c) => c.fmt(f),
            NTerm::Bundle(j) => write!(f, "Xi[chi({j})]"),
            NTerm::Lin3(j) => write!(f, "lambda^{j}"),
        }
    }
}

impl FromStr for GTerm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(inner) = s.strip_prefix("Xi[").and_then(|r| r.strip_suffix(']')) {
            let (torus, rest) = if let Some(r) = inner.strip_prefix("R'(") {
                (TorusKind::NonSplit, r)
            } else if let Some(r) = inner.strip_prefix("R(") {
                (TorusKind::Split, r)
            } else {
                return Err(format!("bad bundle {s}"));
            };
            let j = rest.strip_suffix(')').and_then(|x| x.parse().ok()).ok_or(format!("bad bundle {s}"))?;
            return Ok(GTerm::Bundle(torus, j));
        }
        Ok(GTerm::Irr(s.parse()?))
    }
}

impl FromStr for NTerm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(inner) = s.strip_prefix("Xi[chi(").and_then(|r| r.strip_suffix(")]")) {
            return Ok(NTerm::Bundle(inner.parse().map_err(|_| format!("bad bundle {s}"))?));
        }
        if let Some(j) = s.strip_prefix("lambda^") {
            return Ok(NTerm::Lin3(j.parse().map_err(|_| format!("bad term {s}"))?));
        }
        Ok(NTerm::Irr(s.parse()?))
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(GTerm);
string_serde!(NTerm);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsRow {
    pub level: u32,
    pub block: String,
    pub tag: String,
    pub character: Vec<(GTerm, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub green: Vec<(NTerm, u64)>,
}

impl TsRow {
    fn new(level: u32, block: &str, character: Vec<(GTerm, u64)>, green: Vec<(NTerm, u64)>) -> TsRow {
        let tag = if level == 1 {
            "projective"
        } else if character.iter().any(|(t, _)| *t == GTerm::Irr(CharId::Trivial)) {
            "scott"
        } else {
            "trivial-source"
        };
        let character = character.into_iter().filter(|(_, m)| *m > 0).collect();
        let green = green.into_iter().filter(|(_, m)| *m > 0).collect();
        TsRow { level, block: block.to_string(), tag: tag.to_string(), character, green }
    }

    /// Human readable character, e.g. "St + 4 Xi[R'(0)]".
    pub fn character_name(&self) -> String {
        fmt_sum(self.character.iter().map(|(t, m)| (t.to_string(), *m)))
    }

    pub fn green_name(&self) -> String {
        fmt_sum(self.green.iter().map(|(t, m)| (t.to_string(), *m)))
    }

    pub fn degree(&self, ch: &Chars) -> i64 {
        g_value(ch, &self.character, crate::groups::ClassLabel::Central(Sign::Plus))
            .to_i64()
            .expect("degree is an integer")
    }
}

fn fmt_sum(it: impl Iterator<Item = (String, u64)>) -> String {
    let parts: Vec<String> = it.map(|(s, m)| if m == 1 { s } else { format!("{m} {s}") }).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub pi_prime_fix: String,
    pub sqrt_sign: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivSourceTable {
    pub q: u64,
    pub ell: u64,
    pub group: GroupKind,
    pub n: u32,
    pub columns: Vec<Column>,
    pub rows: Vec<TsRow>,
    pub matrix: Vec<Vec<CycNum>>,
    pub conventions: Conventions,
}

fn ir(c: CharId) -> GTerm {
    GTerm::Irr(c)
}

fn torus_order(q: u64, torus: TorusKind) -> u64 {
    match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    }
}

fn half_pair(torus: TorusKind) -> (CharId, CharId) {
    match torus {
        TorusKind::Split => (CharId::RHalf(Sign::Plus), CharId::RHalf(Sign::Minus)),
        TorusKind::NonSplit => (CharId::RPrimeHalf(Sign::Plus), CharId::RPrimeHalf(Sign::Minus)),
    }
}

fn gchar(torus: TorusKind, j: u64) -> CharId {
    match torus {
        TorusKind::Split => CharId::R(j),
        TorusKind::NonSplit => CharId::RPrime(j),
    }
}

fn other(torus: TorusKind) -> TorusKind {
    match torus {
        TorusKind::Split => TorusKind::NonSplit,
        TorusKind::NonSplit => TorusKind::Split,
    }
}

/// Number of exceptional characters in a bundle.
fn count(q: u64, ell: u64, torus: TorusKind, base: u64, set: EtaSet) -> u64 {
    bundle_exponents(q, ell, torus, base, set).len() as u64
}

fn odd_rows(q: u64, ell: u64, torus: TorusKind, n: u32) -> Vec<TsRow> {
    let r = torus_order(q, torus);
    let half = r / 2;
    let (hp, hm) = half_pair(torus);
    let bx = |base: u64| GTerm::Bundle(torus, base);
    let nx = NTerm::Bundle;
    let full0 = count(q, ell, torus, 0, EtaSet::All);
    let fullh = count(q, ell, torus, half, EtaSet::All);
    let lp = lprime_exponents(ell, r);
    let mut rows = Vec::new();
    let blk_h = format!("A[{hp}]");
    // projective indecomposables
    match torus {
        TorusKind::Split => {
            rows.push(TsRow::new(1, "B0", vec![(ir(CharId::Trivial), 1), (bx(0), full0)], vec![]));
            rows.push(TsRow::new(1, "B0", vec![(ir(CharId::Steinberg), 1), (bx(0), full0)], vec![]));
        }
        TorusKind::NonSplit => {
            rows.push(TsRow::new(1, "B0", vec![(ir(CharId::Trivial), 1), (ir(CharId::Steinberg), 1)], vec![]));
            rows.push(TsRow::new(1, "B0", vec![(ir(CharId::Steinberg), 1), (bx(0), full0)], vec![]));
        }
    }
    rows.push(TsRow::new(1, &blk_h, vec![(ir(hp), 1), (bx(half), fullh)], vec![]));
    rows.push(TsRow::new(1, &blk_h, vec![(ir(hm), 1), (bx(half), fullh)], vec![]));
    for &j in &lp {
        let c = gchar(torus, j);
        rows.push(TsRow::new(1, &format!("A[{c}]"), vec![(ir(c), 1), (bx(j), count(q, ell, torus, j, EtaSet::All))], vec![]));
    }
    let ot = other(torus);
    let (op, om) = half_pair(ot);
    rows.push(TsRow::new(1, &format!("A[{op}]"), vec![(ir(op), 1)], vec![]));
    rows.push(TsRow::new(1, &format!("A[{om}]"), vec![(ir(om), 1)], vec![]));
    for j in 1..=(torus_order(q, ot) - 2) / 2 {
        let c = gchar(ot, j);
        rows.push(TsRow::new(1, &format!("A[{c}]"), vec![(ir(c), 1)], vec![]));
    }
    // vertex C_(l^j) at level i = j + 1
    for j in 1..=n {
        let i = j + 1;
        let low = |base| count(q, ell, torus, base, EtaSet::Low(j));
        let high = |base| count(q, ell, torus, base, EtaSet::High(j));
        let gr = |c: NCharId, base: u64| vec![(NTerm::Irr(c), 1), (nx(base), low(base))];
        match torus {
            TorusKind::Split => {
                rows.push(TsRow::new(i, "B0", vec![(ir(CharId::Trivial), 1), (bx(0), low(0))], gr(NCharId::Trivial, 0)));
                rows.push(TsRow::new(i, "B0", vec![(ir(CharId::Steinberg), 1), (bx(0), low(0))], gr(NCharId::Eps, 0)));
                rows.push(TsRow::new(i, &blk_h, vec![(ir(hp), 1), (bx(half), low(half))], gr(NCharId::ChiHalf(Sign::Plus), half)));
                rows.push(TsRow::new(i, &blk_h, vec![(ir(hm), 1), (bx(half), low(half))], gr(NCharId::ChiHalf(Sign::Minus), half)));
                for &a in &lp {
                    let c = gchar(torus, a);
                    rows.push(TsRow::new(i, &format!("A[{c}]"), vec![(ir(c), 1), (bx(a), low(a))], gr(NCharId::Chi(a), a)));
                }
            }
            TorusKind::NonSplit => {
                let first = if j == n {
                    vec![(ir(CharId::Trivial), 1)]
                } else {
                    vec![(ir(CharId::Trivial), 1), (ir(CharId::Steinberg), 1), (bx(0), high(0))]
                };
                rows.push(TsRow::new(i, "B0", first, gr(NCharId::Trivial, 0)));
                rows.push(TsRow::new(i, "B0", vec![(bx(0), high(0))], gr(NCharId::Eps, 0)));
                rows.push(TsRow::new(i, &blk_h, vec![(bx(half), high(half))], gr(NCharId::ChiHalf(Sign::Plus), half)));
                rows.push(TsRow::new(i, &blk_h, vec![(bx(half), high(half))], gr(NCharId::ChiHalf(Sign::Minus), half)));
                for &a in &lp {
                    let c = gchar(torus, a);
                    rows.push(TsRow::new(i, &format!("A[{c}]"), vec![(bx(a), high(a))], gr(NCharId::Chi(a), a)));
                }
            }
        }
    }
    rows
}

/// Rows for PSL2(q), l = 2, at levels 1..3 shifted by `shift`.
fn two_psl_rows(q: u64, plus3: bool, shift: u32) -> Vec<TsRow> {
    let mut rows = Vec::new();
    let (tc, tz) = if plus3 { (TorusKind::NonSplit, TorusKind::Split) } else { (TorusKind::Split, TorusKind::NonSplit) };
    let rc = torus_order(q, tc);
    let rz = torus_order(q, tz);
    let (hp, hm) = half_pair(tc);
    let t = |c: CharId| (ir(c), 1u64);
    let one = CharId::Trivial;
    let st = CharId::Steinberg;
    let partner = |j: u64| gchar(tc, canon_char((j + rc / 2) as i64, rc).unwrap());
    let lvl = |v: u32| v + shift;
    // level 1
    if plus3 {
        rows.push(TsRow::new(lvl(1), "B0", vec![t(one), t(st)], vec![]));
    } else {
        rows.push(TsRow::new(lvl(1), "B0", vec![t(one), t(st), t(hp), t(hm)], vec![]));
    }
    rows.push(TsRow::new(lvl(1), "B0", vec![t(st), t(hp)], vec![]));
    rows.push(TsRow::new(lvl(1), "B0", vec![t(st), t(hm)], vec![]));
    for j in lprime_exponents(2, rc) {
        let c = gchar(tc, j);
        rows.push(TsRow::new(lvl(1), &format!("A[{c}]"), vec![t(c), t(partner(j))], vec![]));
    }
    for j in lprime_exponents(2, rz) {
        let c = gchar(tz, j);
        rows.push(TsRow::new(lvl(1), &format!("A[{c}]"), vec![t(c)], vec![]));
    }
    // level 2: vertex of order 2
    if plus3 {
        rows.push(TsRow::new(lvl(2), "B0", vec![t(one), t(st), t(hp), t(hm)], vec![]));
    } else {
        rows.push(TsRow::new(lvl(2), "B0", vec![t(one), t(st)], vec![]));
    }
    for j in lprime_exponents(2, rc) {
        let c = gchar(tc, j);
        let ch = if plus3 { partner(j) } else { c };
        rows.push(TsRow::new(lvl(2), &format!("A[{c}]"), vec![t(ch)], vec![]));
    }
    // level 3: Klein four vertex, Green correspondents are the linear characters of C3
    let tops: [CharId; 3] = if plus3 { [one, hp, hm] } else { [one, st, st] };
    for (k, c) in tops.iter().enumerate() {
        rows.push(TsRow::new(lvl(3), "B0", vec![t(*c)], vec![(NTerm::Lin3(k as u8), 1)]));
    }
    rows
}

fn two_sl_rows(q: u64, plus3: bool) -> Vec<TsRow> {
    let mut rows = Vec::new();
    let (tc, tz) = if plus3 { (TorusKind::NonSplit, TorusKind::Split) } else { (TorusKind::Split, TorusKind::NonSplit) };
    let rc = torus_order(q, tc);
    let rz = torus_order(q, tz);
    let t = |c: CharId, m: u64| (ir(c), m);
    let (rp, rm) = half_pair(TorusKind::Split);
    let (sp, sm) = half_pair(TorusKind::NonSplit);
    let one = CharId::Trivial;
    let st = CharId::Steinberg;
    if plus3 {
        let t1 = CharId::RPrime((q + 1) / 4);
        rows.push(TsRow::new(1, "B0", vec![t(one, 1), t(st, 1), t(rp, 1), t(rm, 1)], vec![]));
        rows.push(TsRow::new(1, "B0", vec![t(st, 1), t(rp, 1), t(sp, 1), t(t1, 1)], vec![]));
        rows.push(TsRow::new(1, "B0", vec![t(st, 1), t(rm, 1), t(sm, 1), t(t1, 1)], vec![]));
    } else {
        let a1 = CharId::R((q - 1) / 4);
        rows.push(TsRow::new(1, "B0", vec![t(one, 1), t(st, 1), t(rp, 1), t(rm, 1), t(a1, 2)], vec![]));
        rows.push(TsRow::new(1, "B0", vec![t(st, 1), t(rp, 1), t(sp, 1), t(a1, 1)], vec![]));
        rows.push(TsRow::new(1, "B0", vec![t(st, 1), t(rm, 1), t(sm, 1), t(a1, 1)], vec![]));
    }
    for j in lprime_exponents(2, rc) {
        let c = gchar(tc, j);
        let mut ch = vec![t(c, 1)];
        for s in 1..4 {
            ch.push(t(gchar(tc, canon_char((j + s * rc / 4) as i64, rc).unwrap()), 1));
        }
        rows.push(TsRow::new(1, &format!("A[{c}]"), ch, vec![]));
    }
    for j in lprime_exponents(2, rz) {
        let c = gchar(tz, j);
        let p = gchar(tz, canon_char((j + rz / 2) as i64, rz).unwrap());
        rows.push(TsRow::new(1, &format!("A[{c}]"), vec![t(c, 1), t(p, 1)], vec![]));
    }
    // higher levels are inflated from PSL2(q)
    rows.extend(two_psl_rows(q, plus3, 1));
    rows
}

/// Rows of the trivial source character table, ordered by level then block.
pub fn ts_rows(q: u64, ell: u64, group: GroupKind) -> Result<Vec<TsRow>, TsError> {
    let (reg, _) = chain_columns(q, ell, group)?;
    Ok(match reg {
        Regime::Odd { torus, n } => odd_rows(q, ell, torus, n),
        Regime::Two { plus3 } => match group {
            GroupKind::PSL2 => two_psl_rows(q, plus3, 0),
            GroupKind::SL2 => two_sl_rows(q, plus3),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenRow {
    pub level: u32,
    pub block: String,
    /// Split for N, NonSplit for N'; absent for the cyclic group of order 3.
    pub torus: Option<TorusKind>,
    pub green: Vec<(NTerm, u64)>,
}

/// Green correspondents (over N_G(Q_i)) of the rows with nontrivial vertex that carry one.
pub fn green_rows(q: u64, ell: u64, group: GroupKind) -> Result<Vec<GreenRow>, TsError> {
    let (reg, _) = chain_columns(q, ell, group)?;
    let torus = match reg {
        Regime::Odd { torus, .. } => Some(torus),
        Regime::Two { .. } => None,
    };
    Ok(ts_rows(q, ell, group)?
        .into_iter()
        .filter(|r| !r.green.is_empty())
        .map(|r| GreenRow { level: r.level, block: r.block, torus, green: r.green })
        .collect())
}

/// Value of a sum of G-terms at an l'-class.
pub fn g_value(ch: &Chars, terms: &[(GTerm, u64)], c: crate::groups::ClassLabel) -> CycNum {
    sum_all(terms.iter().map(|(t, m)| {
        let v = match t {
            GTerm::Irr(id) => ch.value(*id, c),
            GTerm::Bundle(TorusKind::Split, j) => ch.r(*j as i64, c),
            GTerm::Bundle(TorusKind::NonSplit, j) => ch.rp(*j as i64, c),
        };
        v.scale_int(*m as i64)
    }))
}

fn n_value(ch: &Chars, torus: Option<TorusKind>, terms: &[(NTerm, u64)], kind: &ColumnKind) -> CycNum {
    sum_all(terms.iter().map(|(t, m)| {
        let v = match (t, kind) {
            (NTerm::Irr(id), ColumnKind::Normalizer(tk, c)) => ch.nvalue(*tk, *id, *c),
            (NTerm::Bundle(j), ColumnKind::Normalizer(tk, c)) => ch.nchi(*tk, *j as i64, *c),
            (NTerm::Lin3(a), ColumnKind::Cyclic3(b)) => CycNum::zeta(3, (*a as i64) * (*b as i64)),
            _ => panic!("green term {t} does not match column {kind:?} (torus {torus:?})"),
        };
        v.scale_int(*m as i64)
    }))
}

/// Entry T[row, column].
pub fn entry(ch: &Chars, row: &TsRow, col: &Column) -> CycNum {
    if col.level > row.level {
        return CycNum::zero();
    }
    match &col.kind {
        ColumnKind::Class(l) => g_value(ch, &row.character, *l),
        ColumnKind::Twisted { ys, .. } => g_value(ch, &row.character, *ys),
        k @ ColumnKind::Normalizer(tk, _) => n_value(ch, Some(*tk), &row.green, k),
        k @ ColumnKind::Cyclic3(_) => n_value(ch, None, &row.green, k),
    }
}

/// The full table with exact entries.
pub fn assemble(q: u64, ell: u64, group: GroupKind) -> Result<TrivSourceTable, TsError> {
    let (reg, levels) = chain_columns(q, ell, group)?;
    let ch = Chars::new(q)?;
    let rows = ts_rows(q, ell, group)?;
    let columns: Vec<Column> = levels.into_iter().flatten().collect();
    let matrix = rows.iter().map(|r| columns.iter().map(|c| entry(&ch, r, c)).collect()).collect();
    let pi_prime_fix = match reg {
        Regime::Odd { torus: TorusKind::NonSplit, .. } => {
            "full bundle Xi' has ((q+1)_l - 1)/2 members; intermediate G-side bundles omit eta of order dividing (q+1)_l/l^j; N'-side bundles keep only those"
        }
        _ => "not applicable",
    };
    let sqrt_sign = "sqrt(q0) is the Gauss sum sum_t zeta_p^Tr(t^2); sqrt(-1) = zeta_4";
    Ok(TrivSourceTable {
        q,
        ell,
        group,
        n: reg.n(group),
        columns,
        rows,
        matrix,
        conventions: Conventions { pi_prime_fix: pi_prime_fix.into(), sqrt_sign: sqrt_sign.into() },
    })
}

impl TrivSourceTable {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }

    pub fn from_json(s: &str) -> Result<TrivSourceTable, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Indices of the rows (or columns) at each level.
    pub fn level_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let levels = self.n + 1;
        for v in 1..=levels {
            let s = self.columns.iter().position(|c| c.level == v).unwrap_or(self.columns.len());
            let e = self.columns.iter().rposition(|c| c.level == v).map(|x| x + 1).unwrap_or(s);
            out.push(s..e);
        }
        out
    }

    fn cell(&self, x: &CycNum, approx: bool, latex: bool) -> String {
        if approx {
            let a = x.approx();
            if a.im.abs() <= a.err {
                format!("{:.6}", a.re)
            } else {
                format!("{:.6}{:+.6}i", a.re, a.im)
            }
        } else if latex {
            x.to_latex()
        } else {
            x.to_string()
        }
    }

    pub fn to_text(&self, approx: bool) -> String {
        let mut out = format!(
            "Trivial source character table of {}({}) at l = {} ({} rows)\n",
            self.group, self.q, self.ell, self.rows.len()
        );
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("row {i}: level {} block {} [{}] {}", row.level, row.block, row.tag, row.character_name()));
            if !row.green.is_empty() {
                out.push_str(&format!(" | green {}", row.green_name()));
            }
            out.push('\n');
            for (c, col) in self.columns.iter().enumerate() {
                if col.level > row.level {
                    continue;
                }
                out.push_str(&format!("  {} = {}\n", col, self.cell(&self.matrix[i][c], approx, false)));
            }
        }
        out
    }

    pub fn to_latex(&self, approx: bool) -> String {
        let ncols = self.columns.len();
        let mut out = String::new();
        out.push_str(&format!("\\begin{{array}}{{l|{}}}\n", "c".repeat(ncols)));
        let head: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("({},\\,\\mathrm{{{}}})", c.level, c.label.replace('_', "\\_")))
            .collect();
        out.push_str(&format!(" & {} \\\\\n\\hline\n", head.join(" & ")));
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = self.matrix[i].iter().map(|x| self.cell(x, approx, true)).collect();
            out.push_str(&format!(
                "\\mathrm{{{}}} & {} \\\\\n",
                row.character_name().replace('_', "\\_").replace(' ', "\\,"),
                cells.join(" & ")
            ));
        }
        out.push_str("\\end{array}\n");
        out
    }

    /// CSV with floating point approximations; imaginary parts in separate columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,level,block,character");
        for c in &self.columns {
            out.push_str(&format!(",\"re({})\",\"im({})\"", c, c));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("{},{},{},\"{}\"", i, row.level, row.block, row.character_name()));
            for x in &self.matrix[i] {
                let a = x.approx();
                out.push_str(&format!(",{:.12},{:.12}", a.re, a.im));
            }
            out.push('\n');
        }
        out
    }
}

/// l-part of the group order.
pub fn sylow_order(q: u64, ell: u64, group: GroupKind) -> u64 {
    l_part(ell, group.order(q))
}

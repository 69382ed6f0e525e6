//! l-blocks of SL2(q) and PSL2(q): distribution of characters, Brauer trees,
//! projective indecomposable characters and Brauer correspondents.

use std::fmt;

use serde::Serialize;

use crate::chartables::{canon_char, char_ids, CharId, Chars, NCharId};
use crate::cyclotomic::{sum_all, CycNum};
use crate::groups::chain::{lprime_exponents, regime, NClass, Regime};
use crate::groups::{ClassLabel, GroupError, GroupKind, Sign, TorusKind};
use crate::numtheory::l_part;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("block {0} does not have cyclic defect group")]
    NotCyclicDefect(String),
    #[error("block {0} has trivial defect; no correspondent needed")]
    NoCorrespondentNeeded(String),
    #[error("no Brauer correspondent available for block {0}")]
    Unsupported(String),
}

/// A character of G or of the normaliser N / N'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyChar {
    G(CharId),
    N(NCharId),
}

impl fmt::Display for AnyChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyChar::G(c) => c.fmt(f),
            AnyChar::N(c) => c.fmt(f),
        }
    }
}

impl Serialize for AnyChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockGroup {
    #[serde(rename = "G")]
    G(GroupKind),
    #[serde(rename = "N")]
    N(TorusKind),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeVertex {
    pub chars: Vec<AnyChar>,
    pub exceptional: bool,
    /// Sign of the vertex character at an element of order l of the defect group.
    pub sign: i8,
}

/// Brauer tree; edges are the projective indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrauerTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub id: String,
    pub group: BlockGroup,
    pub ell: u64,
    /// Order of the defect group.
    pub defect_order: u64,
    pub defect: String,
    pub members: Vec<AnyChar>,
    /// Inertial index and exceptional multiplicity, for cyclic defect.
    pub e: Option<u64>,
    pub m: Option<u64>,
    #[serde(rename = "W_is_trivial")]
    pub w_is_trivial: bool,
    pub tree: Option<BrauerTree>,
    /// Rows of the decomposition matrix for non-cyclic defect.
    pub decomposition: Option<Vec<(AnyChar, Vec<u64>)>>,
}

fn torus_order(q: u64, torus: TorusKind) -> u64 {
    match torus {
        TorusKind::Split => q - 1,
        TorusKind::NonSplit => q + 1,
    }
}

fn gchar(torus: TorusKind, j: u64) -> CharId {
    match torus {
        TorusKind::Split => CharId::R(j),
        TorusKind::NonSplit => CharId::RPrime(j),
    }
}

/// Which l-power order characters eta of the torus enter a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaSet {
    /// All eta != 1.
    All,
    /// eta != 1 with eta^(l^(n-j)) = 1.
    Low(u32),
    /// eta with eta^(l^(n-j)) != 1.
    High(u32),
}

/// Exponents of the torus characters base * eta, eta in `set`, taken up to
/// inversion when base has order at most two.
pub fn bundle_exponents(q: u64, ell: u64, torus: TorusKind, base: u64, set: EtaSet) -> Vec<u64> {
    let r = torus_order(q, torus);
    let ln = l_part(ell, r);
    let mp = r / ln;
    let self_dual = base == 0 || 2 * base == r;
    let keep = |t: u64| match set {
        EtaSet::All => true,
        EtaSet::Low(j) => t % ell.pow(j) == 0,
        EtaSet::High(j) => t % ell.pow(j) != 0,
    };
    (1..ln)
        .filter(|&t| keep(t))
        .filter(|&t| !self_dual || 2 * t < ln)
        .map(|t| canon_char((base + t * mp) as i64, r).expect("bundle character of order > 2"))
        .collect()
}

pub fn bundle_members(q: u64, ell: u64, torus: TorusKind, base: u64, set: EtaSet) -> Vec<CharId> {
    bundle_exponents(q, ell, torus, base, set).into_iter().map(|j| gchar(torus, j)).collect()
}

fn g(c: CharId) -> AnyChar {
    AnyChar::G(c)
}

fn tree_block(
    id: String,
    kind: GroupKind,
    ell: u64,
    d: u64,
    vertices: Vec<TreeVertex>,
    edges: Vec<(usize, usize)>,
) -> Block {
    let members = vertices.iter().flat_map(|v| v.chars.clone()).collect();
    let e = edges.len() as u64;
    Block {
        id,
        group: BlockGroup::G(kind),
        ell,
        defect_order: d,
        defect: format!("C_{d}"),
        members,
        e: Some(e),
        m: Some((d - 1) / e),
        w_is_trivial: true,
        tree: Some(BrauerTree { vertices, edges }),
        decomposition: None,
    }
}

fn vtx(chars: Vec<CharId>, exceptional: bool) -> TreeVertex {
    TreeVertex { chars: chars.into_iter().map(g).collect(), exceptional, sign: 0 }
}

fn defect_zero(kind: GroupKind, ell: u64, c: CharId) -> Block {
    Block {
        id: format!("A[{c}]"),
        group: BlockGroup::G(kind),
        ell,
        defect_order: 1,
        defect: "1".into(),
        members: vec![g(c)],
        e: Some(0),
        m: Some(0),
        w_is_trivial: true,
        tree: None,
        decomposition: None,
    }
}

fn odd_blocks(q: u64, ell: u64, torus: TorusKind) -> Vec<Block> {
    let kind = GroupKind::SL2;
    let r = torus_order(q, torus);
    let d = l_part(ell, r);
    let half = r / 2;
    let (hp, hm) = match torus {
        TorusKind::Split => (CharId::RHalf(Sign::Plus), CharId::RHalf(Sign::Minus)),
        TorusKind::NonSplit => (CharId::RPrimeHalf(Sign::Plus), CharId::RPrimeHalf(Sign::Minus)),
    };
    let mut out = Vec::new();
    let xi0 = bundle_members(q, ell, torus, 0, EtaSet::All);
    let b0 = match torus {
        // 1 - Xi - St
        TorusKind::Split => vec![vtx(vec![CharId::Trivial], false), vtx(xi0, true), vtx(vec![CharId::Steinberg], false)],
        // 1 - St - Xi'
        TorusKind::NonSplit => vec![vtx(vec![CharId::Trivial], false), vtx(vec![CharId::Steinberg], false), vtx(xi0, true)],
    };
    out.push(tree_block("B0".into(), kind, ell, d, b0, vec![(0, 1), (1, 2)]));
    let xh = bundle_members(q, ell, torus, half, EtaSet::All);
    out.push(tree_block(
        format!("A[{hp}]"),
        kind,
        ell,
        d,
        vec![vtx(vec![hp], false), vtx(xh, true), vtx(vec![hm], false)],
        vec![(0, 1), (1, 2)],
    ));
    for j in lprime_exponents(ell, r) {
        let c = gchar(torus, j);
        let x = bundle_members(q, ell, torus, j, EtaSet::All);
        out.push(tree_block(format!("A[{c}]"), kind, ell, d, vec![vtx(vec![c], false), vtx(x, true)], vec![(0, 1)]));
    }
    // the other torus family has defect zero
    let other = match torus {
        TorusKind::Split => TorusKind::NonSplit,
        TorusKind::NonSplit => TorusKind::Split,
    };
    let (op, om) = match other {
        TorusKind::Split => (CharId::RHalf(Sign::Plus), CharId::RHalf(Sign::Minus)),
        TorusKind::NonSplit => (CharId::RPrimeHalf(Sign::Plus), CharId::RPrimeHalf(Sign::Minus)),
    };
    out.push(defect_zero(kind, ell, op));
    out.push(defect_zero(kind, ell, om));
    let ro = torus_order(q, other);
    for j in 1..=(ro - 2) / 2 {
        out.push(defect_zero(kind, ell, gchar(other, j)));
    }
    out
}

fn two_blocks(q: u64, kind: GroupKind, plus3: bool) -> Vec<Block> {
    let mut out = Vec::new();
    let (tor_c, tor_z) = if plus3 { (TorusKind::NonSplit, TorusKind::Split) } else { (TorusKind::Split, TorusKind::NonSplit) };
    // tor_c carries the cyclic 2-part of order 4 in SL2 (2 in PSL2); tor_z has 2-part of order 2
    let rc = torus_order(q, tor_c);
    let rz = torus_order(q, tor_z);
    let rows: Vec<(CharId, Vec<u64>)> = {
        let mut v = vec![(CharId::Trivial, vec![1, 0, 0]), (CharId::Steinberg, vec![1, 1, 1])];
        let split_half = |s: Sign| CharId::RHalf(s);
        let ns_half = |s: Sign| CharId::RPrimeHalf(s);
        if plus3 {
            v.push((ns_half(Sign::Plus), vec![0, 1, 0]));
            v.push((ns_half(Sign::Minus), vec![0, 0, 1]));
            if kind == GroupKind::SL2 {
                v.push((split_half(Sign::Plus), vec![1, 1, 0]));
                v.push((split_half(Sign::Minus), vec![1, 0, 1]));
                v.push((CharId::RPrime((q + 1) / 4), vec![0, 1, 1]));
            }
        } else {
            v.push((split_half(Sign::Plus), vec![1, 1, 0]));
            v.push((split_half(Sign::Minus), vec![1, 0, 1]));
            if kind == GroupKind::SL2 {
                v.push((ns_half(Sign::Plus), vec![0, 1, 0]));
                v.push((ns_half(Sign::Minus), vec![0, 0, 1]));
                v.push((CharId::R((q - 1) / 4), vec![2, 1, 1]));
            }
        }
        v
    };
    let (d0, dname) = if kind == GroupKind::SL2 { (8, "Q_8") } else { (4, "V_4") };
    out.push(Block {
        id: "B0".into(),
        group: BlockGroup::G(kind),
        ell: 2,
        defect_order: d0,
        defect: dname.into(),
        members: rows.iter().map(|(c, _)| g(*c)).collect(),
        e: None,
        m: None,
        w_is_trivial: true,
        tree: None,
        decomposition: Some(rows.into_iter().map(|(c, r)| (g(c), r)).collect()),
    });
    let psl = kind == GroupKind::PSL2;
    // odd-order characters of each torus, up to inversion
    let odd = |r: u64| -> Vec<u64> { lprime_exponents(2, r) };
    for j in odd(rc) {
        let base = gchar(tor_c, j);
        let ex: Vec<CharId> = if psl {
            vec![gchar(tor_c, canon_char((j + rc / 2) as i64, rc).unwrap())]
        } else {
            (1..4).map(|t| gchar(tor_c, canon_char((j + t * rc / 4) as i64, rc).unwrap())).collect()
        };
        let d = if psl { 2 } else { 4 };
        out.push(tree_block(
            format!("A[{base}]"),
            kind,
            2,
            d,
            vec![vtx(vec![base], false), vtx(ex, true)],
            vec![(0, 1)],
        ));
    }
    for j in odd(rz) {
        let base = gchar(tor_z, j);
        if psl {
            out.push(defect_zero(kind, 2, base));
        } else {
            let other = gchar(tor_z, canon_char((j + rz / 2) as i64, rz).unwrap());
            out.push(tree_block(
                format!("A[{base}]"),
                kind,
                2,
                2,
                vec![vtx(vec![base], false), vtx(vec![other], true)],
                vec![(0, 1)],
            ));
        }
    }
    out
}

/// An element of order l in every non-trivial cyclic defect group, as a class of G
/// and, for odd l, as a class of the torus normaliser.
fn defect_element(q: u64, ell: u64, reg: Regime, kind: GroupKind) -> (ClassLabel, Option<(TorusKind, NClass)>) {
    let label = |torus: TorusKind, k: u64| match torus {
        TorusKind::Split => ClassLabel::Split(k),
        TorusKind::NonSplit => ClassLabel::NonSplit(k),
    };
    match reg {
        Regime::Odd { torus, .. } => {
            let k = torus_order(q, torus) / ell;
            (label(torus, k), Some((torus, NClass::Torus(k))))
        }
        Regime::Two { .. } if kind == GroupKind::SL2 => (ClassLabel::Central(Sign::Minus), None),
        Regime::Two { plus3 } => {
            // PSL2: image of an element of order 4 of the torus with the larger 2-part
            let torus = if plus3 { TorusKind::NonSplit } else { TorusKind::Split };
            (label(torus, torus_order(q, torus) / 4), None)
        }
    }
}

fn sign_of(x: &CycNum) -> i8 {
    let a = x.approx();
    if a.re.abs() <= a.err {
        0
    } else if a.re > 0.0 {
        1
    } else {
        -1
    }
}

fn assign_signs(ch: &Chars, block: &mut Block, g_class: ClassLabel, n_class: Option<(TorusKind, NClass)>) {
    let Some(tree) = block.tree.as_mut() else { return };
    for v in tree.vertices.iter_mut() {
        let total = sum_all(v.chars.iter().map(|c| match c {
            AnyChar::G(id) => ch.value(*id, g_class),
            AnyChar::N(id) => match n_class {
                Some((torus, nc)) => ch.nvalue(torus, *id, nc),
                None => CycNum::zero(),
            },
        }));
        v.sign = sign_of(&total);
    }
}

/// All blocks of G = SL2(q) or PSL2(q) for the prime l.
pub fn block_distribution(q: u64, ell: u64, kind: GroupKind) -> Result<Vec<Block>, BlockError> {
    let reg = regime(q, ell, kind)?;
    let mut blocks = match reg {
        Regime::Odd { torus, .. } => odd_blocks(q, ell, torus),
        Regime::Two { plus3 } => two_blocks(q, kind, plus3),
    };
    let ch = Chars::new(q).expect("q is an odd prime power");
    let (x, _) = defect_element(q, ell, reg, kind);
    for b in blocks.iter_mut() {
        assign_signs(&ch, b, x, None);
    }
    Ok(blocks)
}

pub fn brauer_tree(block: &Block) -> Result<&BrauerTree, BlockError> {
    block.tree.as_ref().ok_or_else(|| BlockError::NotCyclicDefect(block.id.clone()))
}

/// Characters of the projective indecomposables, each a list of (character, multiplicity).
pub fn pim_characters(block: &Block) -> Vec<Vec<(AnyChar, u64)>> {
    if let Some(tree) = &block.tree {
        return tree
            .edges
            .iter()
            .map(|&(a, b)| {
                let mut v: Vec<(AnyChar, u64)> = Vec::new();
                for c in tree.vertices[a].chars.iter().chain(&tree.vertices[b].chars) {
                    v.push((*c, 1));
                }
                v
            })
            .collect();
    }
    if let Some(dec) = &block.decomposition {
        let cols = dec.first().map(|r| r.1.len()).unwrap_or(0);
        return (0..cols)
            .map(|k| dec.iter().filter(|r| r.1[k] > 0).map(|r| (r.0, r.1[k])).collect())
            .collect();
    }
    // defect zero
    block.members.iter().map(|c| vec![(*c, 1)]).collect()
}

fn nvtx(chars: Vec<NCharId>, exceptional: bool) -> TreeVertex {
    TreeVertex { chars: chars.into_iter().map(AnyChar::N).collect(), exceptional, sign: 0 }
}

/// The block of N or N' (odd l) in Brauer correspondence with `block`.
pub fn brauer_correspondent(q: u64, block: &Block) -> Result<Block, BlockError> {
    if block.defect_order == 1 {
        return Err(BlockError::NoCorrespondentNeeded(block.id.clone()));
    }
    let ell = block.ell;
    let kind = match block.group {
        BlockGroup::G(k) => k,
        BlockGroup::N(_) => return Err(BlockError::Unsupported(block.id.clone())),
    };
    let torus = match regime(q, ell, kind)? {
        Regime::Odd { torus, .. } => torus,
        Regime::Two { .. } => return Err(BlockError::Unsupported(block.id.clone())),
    };
    let r = torus_order(q, torus);
    let nexc = |base: u64| -> Vec<NCharId> {
        bundle_exponents(q, ell, torus, base, EtaSet::All).into_iter().map(NCharId::Chi).collect()
    };
    let first = block.members[0];
    let (vertices, edges) = match first {
        AnyChar::G(CharId::Trivial) => (
            vec![nvtx(vec![NCharId::Trivial], false), nvtx(nexc(0), true), nvtx(vec![NCharId::Eps], false)],
            vec![(0, 1), (1, 2)],
        ),
        AnyChar::G(CharId::RHalf(_)) | AnyChar::G(CharId::RPrimeHalf(_)) => (
            vec![
                nvtx(vec![NCharId::ChiHalf(Sign::Plus)], false),
                nvtx(nexc(r / 2), true),
                nvtx(vec![NCharId::ChiHalf(Sign::Minus)], false),
            ],
            vec![(0, 1), (1, 2)],
        ),
        AnyChar::G(CharId::R(j)) | AnyChar::G(CharId::RPrime(j)) => {
            (vec![nvtx(vec![NCharId::Chi(j)], false), nvtx(nexc(j), true)], vec![(0, 1)])
        }
        _ => return Err(BlockError::Unsupported(block.id.clone())),
    };
    let members = vertices.iter().flat_map(|v| v.chars.clone()).collect();
    let e = edges.len() as u64;
    let mut out = Block {
        id: format!("{}^N", block.id),
        group: BlockGroup::N(torus),
        ell,
        defect_order: block.defect_order,
        defect: block.defect.clone(),
        members,
        e: Some(e),
        m: Some((block.defect_order - 1) / e),
        w_is_trivial: true,
        tree: Some(BrauerTree { vertices, edges }),
        decomposition: None,
    };
    let ch = Chars::new(q).expect("q is an odd prime power");
    let (x, nx) = defect_element(q, ell, regime(q, ell, kind)?, kind);
    assign_signs(&ch, &mut out, x, nx);
    Ok(out)
}

/// Every irreducible character of G appears in exactly one block.
pub fn is_partition(q: u64, kind: GroupKind, blocks: &[Block]) -> bool {
    let mut seen: Vec<AnyChar> = blocks.iter().flat_map(|b| b.members.clone()).collect();
    seen.sort();
    let mut all: Vec<AnyChar> = char_ids(q, kind).into_iter().map(AnyChar::G).collect();
    all.sort();
    seen == all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        for (q, l) in [(7u64, 3u64), (13, 3), (19, 3), (5, 3), (17, 3), (9, 5), (11, 5)] {
            let b = block_distribution(q, l, GroupKind::SL2).unwrap();
            assert!(is_partition(q, GroupKind::SL2, &b), "q = {q}, l = {l}");
        }
        for q in [3u64, 5, 11, 13, 19, 27, 29] {
            for kind in [GroupKind::SL2, GroupKind::PSL2] {
                let b = block_distribution(q, 2, kind).unwrap();
                assert!(is_partition(q, kind, &b), "q = {q} {kind}");
            }
        }
    }

    #[test]
    fn cyclic_invariants() {
        let b = block_distribution(19, 3, GroupKind::SL2).unwrap();
        for blk in b.iter().filter(|b| b.defect_order > 1) {
            assert_eq!(blk.e.unwrap() * blk.m.unwrap(), blk.defect_order - 1);
            assert_eq!(blk.members.len() as u64, blk.e.unwrap() + blk.m.unwrap());
        }
        assert!(matches!(brauer_tree(&block_distribution(5, 2, GroupKind::PSL2).unwrap()[0]), Err(BlockError::NotCyclicDefect(_))));
    }

    #[test]
    fn correspondents() {
        let b = block_distribution(7, 3, GroupKind::SL2).unwrap();
        let c = brauer_correspondent(7, &b[0]).unwrap();
        assert_eq!(c.members.len(), 3);
        let dz = b.iter().find(|x| x.defect_order == 1).unwrap();
        assert!(matches!(brauer_correspondent(7, dz), Err(BlockError::NoCorrespondentNeeded(_))));
    }
}

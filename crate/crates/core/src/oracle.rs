//! Brute-force species oracle.
//!
//! The group is enumerated, permutation modules k[G/P] are evaluated at every
//! column (Q_v, s) by counting cosets fixed by <Q_v, s~>, and the resulting
//! vectors are decomposed against the assembled table.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blocks::{block_distribution, pim_characters, AnyChar};
use crate::chartables::{inner_product, irr_dicyclic, irr_psl2, irr_sl2, CharId, CharacterTable, Chars};
use crate::cyclotomic::{sum_all, CycNum};
use crate::groups::chain::{ell_subgroup_chain, regime, ColumnKind, NClass, Regime, SubgroupChain, TorusKind};
use crate::groups::{class_labels, ClassLabel, GroupError, GroupKind, Mat2, Sign, Sl2};
use crate::linalg::{det_certificate, is_natural, SolveError, TransposeSolver};
use crate::trivsource::{assemble, GTerm, TrivSourceTable, TsError};

pub const DEFAULT_BUDGET: u64 = 5000;
pub const DEFAULT_SEED: u64 = 20240611;
pub const BUDGET_ENV: &str = "TRIVSRC_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TsError),
    #[error("|G| = {order} exceeds the enumeration budget {budget}")]
    TooLarge { order: u64, budget: u64 },
    #[error("table is singular")]
    SingularTable,
    #[error("column index {0} out of range")]
    BadColumn(usize),
}

/// Budget from the environment, or the default.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// All elements of SL2(q) or PSL2(q), with PSL2 elements stored as canonical
/// representatives modulo -I.
pub struct Enumerated {
    pub sl: Sl2,
    pub kind: GroupKind,
    pub elements: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
}

impl Enumerated {
    /// Closure of {u+, d(g), sigma}.
    pub fn new(q: u64, kind: GroupKind, budget: u64) -> Result<Enumerated, OracleError> {
        let order = kind.order(q);
        if order > budget {
            return Err(OracleError::TooLarge { order, budget });
        }
        let sl = Sl2::new(q)?;
        let mut g = Enumerated { sl, kind, elements: Vec::new(), index: HashMap::new() };
        let gens: Vec<Mat2> = [g.sl.unipotent(Sign::Plus), g.sl.split(1), g.sl.sigma()].iter().map(|x| g.canon(x)).collect();
        let e = g.canon(&g.sl.identity());
        g.elements.push(e);
        g.index.insert(e, 0);
        let mut i = 0;
        while i < g.elements.len() {
            let x = g.elements[i];
            for h in &gens {
                let y = g.canon(&g.sl.mul(&x, h));
                if !g.index.contains_key(&y) {
                    g.index.insert(y, g.elements.len() as u32);
                    g.elements.push(y);
                }
            }
            i += 1;
        }
        debug_assert_eq!(g.elements.len() as u64, order);
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn canon(&self, x: &Mat2) -> Mat2 {
        match self.kind {
            GroupKind::SL2 => *x,
            GroupKind::PSL2 => self.sl.canon_psl(x),
        }
    }

    pub fn idx(&self, x: &Mat2) -> u32 {
        self.index[&self.canon(x)]
    }

    /// Elements of the subgroup generated by `gens`, as indices.
    pub fn closure(&self, gens: &[Mat2]) -> Vec<u32> {
        let gens: Vec<Mat2> = gens.iter().map(|x| self.canon(x)).collect();
        let mut seen = vec![false; self.order()];
        let e = self.idx(&self.sl.identity());
        seen[e as usize] = true;
        let mut out = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some(i) = queue.pop_front() {
            let x = self.elements[i as usize];
            for h in &gens {
                let j = self.idx(&self.sl.mul(&x, h));
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    out.push(j);
                    queue.push_back(j);
                }
            }
        }
        out
    }

    /// Left cosets xP.
    pub fn cosets(&self, p: &[u32]) -> Cosets {
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x as u32);
            let xm = self.elements[x];
            for &h in p {
                let y = self.idx(&self.sl.mul(&xm, &self.elements[h as usize]));
                coset_of[y as usize] = id;
            }
        }
        Cosets { coset_of, reps }
    }

    /// Number of cosets fixed by every element of `gens`.
    pub fn fixed_points(&self, cosets: &Cosets, gens: &[Mat2]) -> u64 {
        let gens: Vec<Mat2> = gens.iter().map(|x| self.canon(x)).collect();
        cosets
            .reps
            .iter()
            .filter(|&&x| {
                let xm = self.elements[x as usize];
                gens.iter().all(|h| cosets.coset_of[self.idx(&self.sl.mul(h, &xm)) as usize] == cosets.coset_of[x as usize])
            })
            .count() as u64
    }

    /// Order of the normaliser of the subgroup with elements `q`.
    pub fn normalizer_order(&self, q: &[u32], qgens: &[Mat2]) -> u64 {
        let mut member = vec![false; self.order()];
        for &x in q {
            member[x as usize] = true;
        }
        self.elements
            .iter()
            .filter(|g| qgens.iter().all(|h| member[self.idx(&self.sl.conj(g, h)) as usize]))
            .count() as u64
    }
}

pub struct Cosets {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl Cosets {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Species values of one permutation module k[G/P].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpeciesVector {
    pub subgroup: String,
    pub order: u64,
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub subgroup: String,
    /// Exact coefficients, one per table row, as "a" or "a/b".
    pub coefficients: Vec<String>,
    pub natural: bool,
}

/// Enumerated group together with the chain and table it certifies.
pub struct Oracle {
    pub group: Enumerated,
    pub chain: SubgroupChain,
    pub table: TrivSourceTable,
    /// Generators of <Q_v, s~> per column.
    column_gens: Vec<Vec<Mat2>>,
}

impl Oracle {
    pub fn new(q: u64, ell: u64, kind: GroupKind, budget: u64) -> Result<Oracle, OracleError> {
        regime(q, ell, kind)?;
        let group = Enumerated::new(q, kind, budget)?;
        let chain = ell_subgroup_chain(q, ell, kind)?;
        let table = assemble(q, ell, kind)?;
        let column_gens = table
            .columns
            .iter()
            .map(|c| {
                let mut gens = chain.levels[(c.level - 1) as usize].generators.clone();
                gens.push(group.sl.column_rep(&c.kind));
                gens
            })
            .collect();
        Ok(Oracle { group, chain, table, column_gens })
    }

    pub fn column_generators(&self, col: usize) -> Result<&[Mat2], OracleError> {
        self.column_gens.get(col).map(|v| v.as_slice()).ok_or(OracleError::BadColumn(col))
    }

    /// Fixed points of <Q_v, s~> on G/P for the given column.
    pub fn perm_species(&self, p_gens: &[Mat2], col: usize) -> Result<u64, OracleError> {
        let p = self.group.closure(p_gens);
        let cosets = self.group.cosets(&p);
        Ok(self.group.fixed_points(&cosets, self.column_generators(col)?))
    }

    pub fn species_vector(&self, name: &str, p_gens: &[Mat2]) -> PermSpeciesVector {
        let p = self.group.closure(p_gens);
        let cosets = self.group.cosets(&p);
        let values = self.column_gens.iter().map(|gens| self.group.fixed_points(&cosets, gens)).collect();
        PermSpeciesVector { subgroup: name.to_string(), order: p.len() as u64, values }
    }
}

/// Unique rational c with T^t c = vec.
pub fn decompose(vec: &PermSpeciesVector, table: &TrivSourceTable) -> Result<Decomposition, OracleError> {
    let solver = TransposeSolver::new(&table.matrix).map_err(|_| OracleError::SingularTable)?;
    decompose_with(&solver, vec)
}

fn decompose_with(solver: &TransposeSolver, vec: &PermSpeciesVector) -> Result<Decomposition, OracleError> {
    let p: Vec<i64> = vec.values.iter().map(|&v| v as i64).collect();
    match solver.solve_int(&p) {
        Ok(c) => Ok(Decomposition {
            subgroup: vec.subgroup.clone(),
            natural: is_natural(&c),
            coefficients: c.iter().map(|x| x.to_string()).collect(),
        }),
        Err(SolveError::Inconsistent) => Ok(Decomposition {
            subgroup: vec.subgroup.clone(),
            coefficients: vec!["inconsistent".into()],
            natural: false,
        }),
        Err(SolveError::Singular) => Err(OracleError::SingularTable),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Offending row/column/coefficient on failure, a summary otherwise.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub q: u64,
    pub ell: u64,
    pub group: GroupKind,
    pub size: usize,
    pub group_order: u64,
    pub enumerated: bool,
    pub checks: Vec<Check>,
    pub decompositions: Vec<Decomposition>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify q={} ell={} group={} ({}x{} table, |G|={})", self.q, self.ell, self.group, self.size, self.size, self.group_order)?;
        for c in &self.checks {
            let s = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(f, "  {s:4}  {:28} {}", c.name, c.witness)?;
        }
        write!(f, "{}", if self.passed() { "all checks pass" } else { "verification FAILED" })
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, fail: Option<String>, ok: impl Into<String>) {
        let (status, witness) = match fail {
            Some(w) => (Status::Fail, w),
            None => (Status::Pass, ok.into()),
        };
        self.0.push(Check { name: name.into(), status, witness });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.0.push(Check { name: name.into(), status: Status::Skipped, witness: why.into() });
    }
}

fn is_identity_column(k: &ColumnKind) -> bool {
    matches!(
        k,
        ColumnKind::Class(ClassLabel::Central(Sign::Plus))
            | ColumnKind::Normalizer(_, NClass::Central(Sign::Plus))
            | ColumnKind::Twisted { s: ClassLabel::Central(Sign::Plus), .. }
            | ColumnKind::Cyclic3(0)
    )
}

fn orthonormal(t: &CharacterTable) -> Option<String> {
    for (i, a) in t.characters.iter().enumerate() {
        for b in &t.characters[i..] {
            let ip = match inner_product(t, a, b) {
                Ok(v) => v,
                Err(e) => return Some(e.to_string()),
            };
            let want = if a.id == b.id { CycNum::one() } else { CycNum::zero() };
            if ip != want {
                return Some(format!("{}: <{}, {}> = {}", t.group, a.id, b.id, ip));
            }
        }
    }
    None
}

/// Largest q for which verify runs the exact orthogonality check.
pub const ORTHOGONALITY_MAX_Q: u64 = 31;

/// Orthogonality of the character tables of G and of the relevant torus normalisers.
pub fn orthogonality(q: u64, kind: GroupKind) -> Option<String> {
    let g = match kind {
        GroupKind::SL2 => irr_sl2(q),
        GroupKind::PSL2 => irr_psl2(q),
    };
    let mut tables = vec![g];
    if q >= 5 {
        tables.push(irr_dicyclic(q, TorusKind::Split));
    }
    tables.push(irr_dicyclic(q, TorusKind::NonSplit));
    tables.into_iter().find_map(|t| match t {
        Ok(t) => orthonormal(&t),
        Err(e) => Some(e.to_string()),
    })
}

/// Structural checks that need no enumeration.
fn structural(t: &TrivSourceTable, checks: &mut Checks) {
    let q = t.q;
    let ch = Chars::new(q).expect("valid q");
    let ranges = t.level_ranges();
    let levels_ok = t.rows.len() == t.columns.len()
        && ranges.iter().enumerate().all(|(i, r)| {
            t.rows.iter().filter(|row| row.level == i as u32 + 1).count() == r.len()
        });
    checks.push(
        "square",
        (!levels_ok).then(|| format!("{} rows, {} columns", t.rows.len(), t.columns.len())),
        format!("{} x {}, level sizes {:?}", t.size(), t.size(), ranges.iter().map(|r| r.len()).collect::<Vec<_>>()),
    );

    match det_certificate(&t.matrix, 3) {
        Some(p) => checks.push("invertible", None, format!("det nonzero modulo a prime above {p}")),
        None => checks.push("invertible", Some("det vanishes modulo every tested prime".into()), ""),
    }

    let mut zp = None;
    for (i, row) in t.rows.iter().enumerate() {
        for (j, col) in t.columns.iter().enumerate() {
            if col.level > row.level && !t.matrix[i][j].is_zero() {
                zp.get_or_insert(format!("row {} ({}) column {}", i, row.character_name(), col));
            }
        }
    }
    checks.push("zero_pattern", zp, "T_ij = 0 for j > i");

    let triv = t.rows.iter().position(|r| r.character == vec![(GTerm::Irr(CharId::Trivial), 1)] && r.level == t.n + 1);
    let tr_fail = match triv {
        None => Some("no top-level row with character 1".into()),
        Some(i) => t.matrix[i].iter().position(|x| *x != CycNum::one()).map(|j| format!("entry at {} is {}", t.columns[j], t.matrix[i][j])),
    };
    checks.push("trivial_row", tr_fail, "all entries 1");

    let mut integ = None;
    for (j, col) in t.columns.iter().enumerate().filter(|(_, c)| is_identity_column(&c.kind)) {
        for (i, row) in t.rows.iter().enumerate() {
            let ok = t.matrix[i][j].to_integer().map(|v| !v.is_negative()).unwrap_or(false);
            if !ok {
                integ.get_or_insert(format!("row {} ({}) at {}: {}", i, row.character_name(), col, t.matrix[i][j]));
            }
        }
    }
    checks.push("tau_identity_integrality", integ, "dimensions of Brauer quotients are natural numbers");

    let sylow = crate::trivsource::sylow_order(q, t.ell, t.group) as i64;
    let pim = t
        .rows
        .iter()
        .filter(|r| r.level == 1)
        .find(|r| r.degree(&ch) % sylow != 0)
        .map(|r| format!("{} has degree {}", r.character_name(), r.degree(&ch)));
    checks.push("pim_divisibility", pim, format!("level-1 degrees divisible by {sylow}"));

    // level-1 rows against the projective indecomposables of the block list
    let level1: Vec<usize> = (0..t.columns.len()).filter(|&j| t.columns[j].level == 1).collect();
    let mut from_rows: Vec<Vec<CycNum>> =
        t.rows.iter().enumerate().filter(|(_, r)| r.level == 1).map(|(i, _)| level1.iter().map(|&j| t.matrix[i][j].clone()).collect()).collect();
    let blocks = block_distribution(q, t.ell, t.group).expect("covered regime");
    let mut from_blocks: Vec<Vec<CycNum>> = Vec::new();
    for b in &blocks {
        for pim in pim_characters(b) {
            from_blocks.push(
                level1
                    .iter()
                    .map(|&j| match t.columns[j].kind {
                        ColumnKind::Class(l) => sum_all(pim.iter().map(|(c, m)| match c {
                            AnyChar::G(id) => ch.value(*id, l).scale_int(*m as i64),
                            AnyChar::N(_) => CycNum::zero(),
                        })),
                        _ => CycNum::zero(),
                    })
                    .collect(),
            );
        }
    }
    let key = |v: &Vec<CycNum>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("|");
    from_rows.sort_by_key(key);
    from_blocks.sort_by_key(key);
    checks.push(
        "pims_match_blocks",
        (from_rows != from_blocks).then(|| format!("{} level-1 rows vs {} PIMs from the block list", from_rows.len(), from_blocks.len())),
        format!("{} blocks", blocks.len()),
    );

    if q <= ORTHOGONALITY_MAX_Q {
        checks.push("orthogonality", orthogonality(q, t.group), "G, N and N' tables orthonormal");
    } else {
        checks.skip("orthogonality", &format!("q > {ORTHOGONALITY_MAX_Q}"));
    }
}

/// Named generating sets of the tested permutation modules.
pub fn subgroup_family(o: &Oracle, seed: u64) -> Vec<(String, Vec<Mat2>)> {
    let sl = &o.group.sl;
    let mut fam: Vec<(String, Vec<Mat2>)> = vec![("G".into(), vec![sl.unipotent(Sign::Plus), sl.split(1), sl.sigma()]), ("1".into(), vec![])];
    for lv in &o.chain.levels {
        if lv.level > 1 {
            fam.push((format!("Q_{} = {}", lv.level, lv.name), lv.generators.clone()));
            fam.push((format!("N_G(Q_{}) = {}", lv.level, lv.normalizer), lv.normalizer_generators.clone()));
        }
    }
    fam.push(("T".into(), vec![sl.split(1)]));
    fam.push(("T'".into(), vec![sl.nonsplit(1)]));
    fam.push(("N".into(), vec![sl.split(1), sl.sigma()]));
    fam.push(("N'".into(), vec![sl.nonsplit(1), sl.sigma_prime()]));
    fam.push(("B".into(), vec![sl.split(1), sl.unipotent(Sign::Plus), sl.unipotent(Sign::Minus)]));
    fam.push(("U".into(), vec![sl.unipotent(Sign::Plus), sl.unipotent(Sign::Minus)]));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..20 {
        let x = o.group.elements[rng.gen_range(0..o.group.order())];
        fam.push((format!("random cyclic #{i} <{x}>"), vec![x]));
    }
    fam
}

/// Permutation character of G on G/P at the level-1 classes, via inner products with Irr(G).
fn induced_character(o: &Oracle, irr: &CharacterTable, p: &[u32]) -> Vec<Option<CycNum>> {
    let labels = class_labels(o.table.q, o.table.group);
    let mut counts: HashMap<ClassLabel, i64> = HashMap::new();
    for &x in p {
        *counts.entry(o.group.sl.identify_class(&o.group.elements[x as usize], o.table.group)).or_default() += 1;
    }
    let inv = BigRational::new(1.into(), (p.len() as i64).into());
    let mult: Vec<CycNum> = irr
        .characters
        .iter()
        .map(|chi| {
            sum_all(labels.iter().zip(&chi.values).map(|(l, v)| v.scale_int(*counts.get(l).unwrap_or(&0)))).scale(&inv)
        })
        .collect();
    o.table
        .columns
        .iter()
        .map(|c| match c.kind {
            ColumnKind::Class(l) if c.level == 1 => {
                let k = labels.iter().position(|x| *x == l)?;
                Some(sum_all(irr.characters.iter().zip(&mult).map(|(chi, m)| &chi.values[k] * m)))
            }
            _ => None,
        })
        .collect()
}

/// All checks for (q, l, group). Oracle checks are skipped when |G| exceeds `budget`.
pub fn verify(q: u64, ell: u64, kind: GroupKind, budget: u64, seed: u64) -> Result<Report, OracleError> {
    let table = assemble(q, ell, kind)?;
    let mut checks = Checks(Vec::new());
    structural(&table, &mut checks);
    let mut report = Report {
        q,
        ell,
        group: kind,
        size: table.size(),
        group_order: kind.order(q),
        enumerated: false,
        checks: Vec::new(),
        decompositions: Vec::new(),
    };
    let oracle = match Oracle::new(q, ell, kind, budget) {
        Ok(o) => o,
        Err(OracleError::TooLarge { order, budget }) => {
            let why = format!("|G| = {order} exceeds budget {budget}");
            for name in ["normalizers", "oracle_decomposition", "row_coverage", "scott_uniqueness", "induced_character", "conjugation_invariance"] {
                checks.skip(name, &why);
            }
            report.checks = checks.0;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.enumerated = true;
    let g = &oracle.group;

    // normalisers of the chain subgroups
    let mut nf = None;
    for lv in oracle.chain.levels.iter().filter(|l| l.level > 1) {
        let qel = g.closure(&lv.generators);
        let found = g.normalizer_order(&qel, &lv.generators);
        let listed = g.closure(&lv.normalizer_generators).len() as u64;
        if qel.len() as u64 != lv.order || found != lv.normalizer_order || listed != found {
            nf.get_or_insert(format!(
                "Q_{}: |Q| = {} (expected {}), |N_G(Q)| = {} (expected {}), listed generators give {}",
                lv.level,
                qel.len(),
                lv.order,
                found,
                lv.normalizer_order,
                listed
            ));
        }
    }
    checks.push("normalizers", nf, "chain subgroup and normaliser orders confirmed");

    let solver = match TransposeSolver::new(&table.matrix) {
        Ok(s) => s,
        Err(_) => {
            checks.push("oracle_decomposition", Some("table is singular".into()), "");
            report.checks = checks.0;
            return Ok(report);
        }
    };
    let irr = match kind {
        GroupKind::SL2 => irr_sl2(q),
        GroupKind::PSL2 => irr_psl2(q),
    }
    .expect("valid q");

    let family = subgroup_family(&oracle, seed);
    let mut bad = None;
    let mut covered = vec![false; table.size()];
    let mut scott = None;
    let mut induced = None;
    for (name, gens) in &family {
        let p = g.closure(gens);
        let cosets = g.cosets(&p);
        let values: Vec<u64> = oracle.column_gens.iter().map(|cg| g.fixed_points(&cosets, cg)).collect();
        let vec = PermSpeciesVector { subgroup: name.clone(), order: p.len() as u64, values };
        let d = decompose_with(&solver, &vec)?;
        if !d.natural {
            bad.get_or_insert(format!("k[G/P], P = {name}: coefficients {:?}", d.coefficients));
        } else {
            let nonzero: Vec<usize> = d.coefficients.iter().enumerate().filter(|(_, c)| c.as_str() != "0").map(|(i, _)| i).collect();
            for &i in &nonzero {
                covered[i] = true;
            }
            if name.starts_with("Q_") || name == "1" {
                let with_one: Vec<(usize, &String)> = nonzero
                    .iter()
                    .filter(|&&i| table.rows[i].character.iter().any(|(t, _)| *t == GTerm::Irr(CharId::Trivial)))
                    .map(|&i| (i, &d.coefficients[i]))
                    .collect();
                if with_one.len() != 1 || with_one[0].1 != "1" {
                    scott.get_or_insert(format!("P = {name}: rows containing 1_G with coefficients {with_one:?}"));
                }
            }
        }
        for (j, want) in induced_character(&oracle, &irr, &p).into_iter().enumerate() {
            if let Some(w) = want {
                if w != CycNum::from_int(vec.values[j] as i64) {
                    induced.get_or_insert(format!("P = {name} at {}: {} fixed points, Ind = {}", table.columns[j], vec.values[j], w));
                }
            }
        }
        report.decompositions.push(d);
    }
    checks.push("oracle_decomposition", bad, format!("{} permutation modules decompose with natural coefficients", family.len()));
    let missing: Vec<String> = covered.iter().enumerate().filter(|(_, c)| !**c).map(|(i, _)| format!("row {} ({})", i, table.rows[i].character_name())).collect();
    checks.push("row_coverage", (!missing.is_empty()).then(|| format!("never realised: {}", missing.join(", "))), "every row occurs");
    checks.push("scott_uniqueness", scott, "exactly one summand with 1_G in k[G/Q_v]");
    checks.push("induced_character", induced, "level-1 fixed points equal Ind_P^G 1");

    // conjugating (Q_v, s~) by random elements does not change fixed point counts
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let top = oracle.chain.levels.last().expect("nonempty chain");
    let p = g.closure(&top.generators);
    let cosets = g.cosets(&p);
    let mut conj = None;
    for (j, cg) in oracle.column_gens.iter().enumerate() {
        let x = g.elements[rng.gen_range(0..g.order())];
        let moved: Vec<Mat2> = cg.iter().map(|h| g.sl.conj(&x, h)).collect();
        let (a, b) = (g.fixed_points(&cosets, cg), g.fixed_points(&cosets, &moved));
        if a != b {
            conj.get_or_insert(format!("column {}: {} vs {} after conjugating by {}", table.columns[j], a, b, x));
        }
    }
    checks.push("conjugation_invariance", conj, "fixed points unchanged under conjugation");

    report.checks = checks.0;
    Ok(report)
}

/// Generic checks only, for any covered (q, l).
pub fn verify_structure(q: u64, ell: u64, kind: GroupKind) -> Result<Report, OracleError> {
    verify(q, ell, kind, 0, DEFAULT_SEED)
}

/// The regime description used in error messages.
pub fn regime_name(q: u64, ell: u64, kind: GroupKind) -> Option<String> {
    regime(q, ell, kind).ok().map(|r| match r {
        Regime::Odd { torus: TorusKind::Split, n } => format!("l | q-1, (q-1)_l = {}^{}", ell, n),
        Regime::Odd { torus: TorusKind::NonSplit, n } => format!("l | q+1, (q+1)_l = {}^{}", ell, n),
        Regime::Two { plus3: true } => "l = 2, q = 3 mod 8".into(),
        Regime::Two { plus3: false } => "l = 2, q = -3 mod 8".into(),
    })
}

//! Structural predicates: Oliver groups, CP and EP groups, large subgroups,
//! proper pairs and their parity, gap groups and the classification cases.

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::catalog;
use crate::chartab::{class_counts, fixed_dim, CharacterTable, TABLE_ORDER_CAP};
use crate::error::{Error, Result};
use crate::group::{Fingerprint, FiniteGroup, Quotient, Structure, Subgroup};
use crate::invariants::{laitinen_number, npp};
use crate::linalg;
use crate::lp::{strict_positive_combination, Feasibility};
use crate::util::{is_prime_power_or_one, prime_power};

/// An isthmus series `P ⊴ H ⊴ G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isthmus {
    pub p_order: usize,
    pub h_order: usize,
    pub g_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OliverVerdict {
    pub is_oliver: bool,
    pub witness: Option<Isthmus>,
}

/// Order of the coset `xK`.
fn coset_order(g: &FiniteGroup, k: &Subgroup, x: usize) -> u64 {
    let mut y = x;
    let mut n = 1;
    while !k.contains(y) {
        y = g.mul(y, x);
        n += 1;
    }
    n
}

/// Looks for `P ⊴ H` of prime power order with `H/P` cyclic, for normal `H`.
///
/// Such `P` contains the derived subgroup `H'`, so `H'` must be a `p`-group
/// and every Sylow subgroup of `H/H'` away from `p` must be cyclic.
fn cyclic_over_prime_power(g: &FiniteGroup, h: &Subgroup) -> Option<Subgroup> {
    if h.order() == 1 {
        return Some(h.clone());
    }
    let d = g.derived_subgroup(h);
    let candidates: Vec<u64> = match prime_power(d.order() as u64) {
        Some((p, _)) => vec![p],
        None if d.order() == 1 => crate::util::prime_divisors(h.order() as u64),
        None => return None,
    };
    let orders: Vec<(usize, u64)> = h.elements().map(|x| (x, coset_order(g, &d, x))).collect();
    let index = (h.order() / d.order()) as u64;
    if orders.iter().any(|&(_, o)| o == index) {
        return Some(d);
    }
    for p in candidates {
        let ok = crate::util::prime_divisors(index)
            .into_iter()
            .filter(|&r| r != p)
            .all(|r| {
                let part = crate::util::p_part(index, r);
                orders.iter().any(|&(_, o)| o % part == 0)
            });
        if ok {
            let mut set = FixedBitSet::with_capacity(g.order());
            for &(x, o) in &orders {
                if crate::group::is_power_of(o, p) {
                    set.insert(x);
                }
            }
            return Some(g.subgroup_from_set(&set));
        }
    }
    None
}

pub fn is_oliver(g: &FiniteGroup) -> OliverVerdict {
    for h in g.normal_subgroups().iter().rev() {
        if !is_prime_power_or_one((g.order() / h.order()) as u64)
            || !g.subgroup_structure(h, Structure::Solvable)
        {
            continue;
        }
        if let Some(p) = cyclic_over_prime_power(g, h) {
            return OliverVerdict {
                is_oliver: false,
                witness: Some(Isthmus {
                    p_order: p.order(),
                    h_order: h.order(),
                    g_order: g.order(),
                }),
            };
        }
    }
    OliverVerdict {
        is_oliver: true,
        witness: None,
    }
}

/// Number of noncyclic Sylow subgroups.
pub fn noncyclic_sylow_count(g: &FiniteGroup) -> usize {
    g.prime_divisors()
        .iter()
        .filter(|&&p| !g.subgroup_structure(&g.sylow(p), Structure::Cyclic))
        .count()
}

/// Every element has prime power order.
pub fn is_cp(g: &FiniteGroup) -> bool {
    laitinen_number(g) == 0
}

/// All NPP elements share one order, and every normal subgroup meeting
/// `NPP(G)` contains all of it.
pub fn is_ep(g: &FiniteGroup) -> bool {
    let elems = npp(g);
    let mut orders: Vec<u32> = elems.iter().map(|&e| g.element_order(e)).collect();
    orders.sort_unstable();
    orders.dedup();
    if orders.len() > 1 {
        return false;
    }
    g.normal_subgroups().iter().all(|k| {
        let meets = elems.iter().any(|&e| k.contains(e));
        !meets || elems.iter().all(|&e| k.contains(e))
    })
}

/// `O^p(G) ≤ H` for some prime `p`.
pub fn is_large(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.prime_divisors()
        .iter()
        .any(|&p| g.residual_p(p).is_subgroup_of(h))
}

/// `𝒫(G) ∩ 𝓛(G) = ∅`, i.e. no `O^q(G)` has prime power order.
pub fn p_l_disjoint(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    g.prime_divisors()
        .iter()
        .all(|&q| !is_prime_power_or_one(g.residual_p(q).order() as u64))
}

pub fn is_conjugate(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    if a.order() != b.order() || class_counts(g, a) != class_counts(g, b) {
        return false;
    }
    (0..g.order()).any(|y| a.generators().iter().all(|&s| b.contains(g.conj(s, y))))
}

/// Subgroups of prime power order (the trivial one included) up to conjugacy.
pub fn prime_power_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut reps = vec![g.trivial_subgroup()];
    for &p in g.prime_divisors() {
        let mut frontier = vec![g.trivial_subgroup()];
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for q in &frontier {
                let n = g.normalizer(q);
                for x in n.elements() {
                    if q.contains(x) || !crate::group::is_power_of(u64::from(g.element_order(x)), p)
                    {
                        continue;
                    }
                    let k = g.extend(q, &[x]);
                    if !seen.insert(k.members().clone()) {
                        continue;
                    }
                    if reps
                        .iter()
                        .chain(&next)
                        .all(|r: &Subgroup| !is_conjugate(g, r, &k))
                    {
                        next.push(k);
                    }
                }
            }
            reps.extend(next.iter().cloned());
            frontier = next;
        }
    }
    reps.sort_by_key(|s| (s.order(), s.elements().collect::<Vec<_>>()));
    reps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug)]
pub struct ProperPair {
    pub p: Subgroup,
    pub h: Subgroup,
    pub parity: Parity,
}

fn product_order(a: &Subgroup, n: &Subgroup) -> usize {
    let mut both = a.members().clone();
    both.intersect_with(n.members());
    a.order() * n.order() / both.count_ones(..)
}

/// Odd iff `|H:P| = |H·O²(G) : P·O²(G)| = 2` and `P·O^p(G) = G` for every odd `p`.
pub fn pair_parity(g: &FiniteGroup, p: &Subgroup, h: &Subgroup) -> Result<Parity> {
    if !is_prime_power_or_one(p.order() as u64) {
        return Err(Error::BadPair(format!(
            "|P| = {} is not a prime power",
            p.order()
        )));
    }
    if !p.is_subgroup_of(h) || p.order() == h.order() {
        return Err(Error::BadPair("P is not a proper subgroup of H".into()));
    }
    Ok(parity_unchecked(g, p, h, &Residuals::of(g)))
}

struct Residuals {
    o2: Subgroup,
    odd: Vec<Subgroup>,
}

impl Residuals {
    fn of(g: &FiniteGroup) -> Residuals {
        Residuals {
            o2: g.residual_p(2),
            odd: g
                .prime_divisors()
                .iter()
                .filter(|&&r| r != 2)
                .map(|&r| g.residual_p(r))
                .collect(),
        }
    }
}

fn parity_unchecked(g: &FiniteGroup, p: &Subgroup, h: &Subgroup, res: &Residuals) -> Parity {
    let odd = h.order() == 2 * p.order()
        && product_order(h, &res.o2) == 2 * product_order(p, &res.o2)
        && res.odd.iter().all(|o| product_order(p, o) == g.order());
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Proper pairs `(P, ⟨P, x⟩)` with `P` up to conjugacy and `x` up to
/// `P`-translation and `N_G(P)`-conjugation.
pub fn proper_pairs(g: &FiniteGroup) -> Vec<ProperPair> {
    let res = Residuals::of(g);
    let mut out = Vec::new();
    for p in prime_power_subgroups(g) {
        let n = g.normalizer(&p);
        let mut visited = p.members().clone();
        let mut hs: HashSet<FixedBitSet> = HashSet::new();
        for x in 0..g.order() {
            if visited.contains(x) {
                continue;
            }
            visited.insert(x);
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                let left = p.generators().iter().map(|&s| g.mul(s, y));
                let conj = n.generators().iter().map(|&s| g.conj(y, s));
                for z in left.chain(conj).collect::<Vec<_>>() {
                    if !visited.contains(z) {
                        visited.insert(z);
                        stack.push(z);
                    }
                }
            }
            let h = g.extend(&p, &[x]);
            if hs.insert(h.members().clone()) {
                let parity = parity_unchecked(g, &p, &h, &res);
                out.push(ProperPair {
                    p: p.clone(),
                    h,
                    parity,
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapStatus {
    Gap,
    NotGap,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapMode {
    Sufficient,
    Exact,
}

/// The sufficient conditions: two odd primes with `O^p ≠ G`, or `O²(G) = G`,
/// or a quotient that is a gap group by these rules.
pub fn gap_sufficient(g: &FiniteGroup) -> GapStatus {
    if !p_l_disjoint(g) {
        return GapStatus::NotGap;
    }
    let n = g.order();
    let odd_proper = g
        .prime_divisors()
        .iter()
        .filter(|&&p| p != 2 && g.residual_p(p).order() != n)
        .count();
    if odd_proper >= 2 || g.residual_p(2).order() == n {
        return GapStatus::Gap;
    }
    for k in g.normal_subgroups() {
        if k.order() == 1 || k.order() == n {
            continue;
        }
        let q = g.quotient(k).expect("normal");
        if gap_sufficient(&q.group) == GapStatus::Gap {
            return GapStatus::Gap;
        }
    }
    GapStatus::Unknown
}

#[derive(Clone, Debug, Serialize)]
pub struct GapDecision {
    pub status: GapStatus,
    pub p_l_disjoint: bool,
    /// Real irreducibles with no fixed vectors under any `O^p(G)`.
    pub admissible: usize,
    pub pairs: usize,
    pub distinct_rows: usize,
    /// Multiplicities of an `𝓛`-free gap module, over the admissible irreducibles.
    pub module: Option<Vec<i64>>,
}

/// Decides the gap property by linear programming over real irreducible characters.
pub fn gap_exact(g: &FiniteGroup, cap: usize) -> Result<GapDecision> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            name: g.name().to_string(),
            cap,
        });
    }
    let disjoint = p_l_disjoint(g);
    let table = CharacterTable::compute_with_cap(g, cap)?;
    let basis = table.real_basis()?;
    let residual_counts: Vec<Vec<usize>> = g
        .prime_divisors()
        .iter()
        .map(|&p| class_counts(g, &g.residual_p(p)))
        .collect();
    let mut admissible = Vec::new();
    for irr in &basis {
        let mut free = true;
        for c in &residual_counts {
            free &= fixed_dim(&irr.values, c)? == 0;
        }
        if free {
            admissible.push(irr);
        }
    }
    let pairs = proper_pairs(g);
    let mut dims_cache: HashMap<FixedBitSet, Vec<i64>> = HashMap::new();
    let mut dims = |s: &Subgroup| -> Result<Vec<i64>> {
        if let Some(d) = dims_cache.get(s.members()) {
            return Ok(d.clone());
        }
        let c = class_counts(g, s);
        let d = admissible
            .iter()
            .map(|irr| fixed_dim(&irr.values, &c))
            .collect::<Result<Vec<_>>>()?;
        dims_cache.insert(s.members().clone(), d.clone());
        Ok(d)
    };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut seen = HashSet::new();
    for pair in &pairs {
        let dp = dims(&pair.p)?;
        let dh = dims(&pair.h)?;
        let row: Vec<i64> = dp.iter().zip(&dh).map(|(a, b)| a - 2 * b).collect();
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    rows.sort();
    let outcome = strict_positive_combination(&rows);
    let module = match &outcome {
        Feasibility::Feasible(m) => Some(linalg::to_integers(m)),
        Feasibility::Infeasible(_) => None,
    };
    let status = if outcome.is_feasible() && disjoint {
        GapStatus::Gap
    } else {
        GapStatus::NotGap
    };
    Ok(GapDecision {
        status,
        p_l_disjoint: disjoint,
        admissible: admissible.len(),
        pairs: pairs.len(),
        distinct_rows: rows.len(),
        module,
    })
}

pub fn gap_status(g: &FiniteGroup, mode: GapMode, cap: usize) -> GapStatus {
    match mode {
        GapMode::Sufficient => gap_sufficient(g),
        GapMode::Exact => gap_exact(g, cap).map_or(GapStatus::Unknown, |d| d.status),
    }
}

pub fn default_gap_cap() -> usize {
    TABLE_ORDER_CAP
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub check: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationVerdict {
    pub group: String,
    pub is_oliver: bool,
    pub a_g: usize,
    pub matched_case: Option<u8>,
    /// Every case whose assertions all hold.
    pub matching_cases: Vec<u8>,
    pub checks: Vec<Assertion>,
    /// Exactly one case for `a_G ≤ 1`, none for `a_G ≥ 2`; vacuous for non-Oliver groups.
    pub consistent: bool,
}

fn fingerprint_of(expr: &str) -> Option<Fingerprint> {
    static CACHE: OnceLock<Mutex<HashMap<String, Option<Fingerprint>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(expr) {
        return f.clone();
    }
    let f = catalog::shared(expr).ok().map(|g| g.fingerprint());
    cache.lock().unwrap().insert(expr.to_string(), f.clone());
    f
}

fn order_of(expr: &str) -> Option<u64> {
    if let Some(e) = catalog::lookup(expr) {
        return Some(e.order);
    }
    catalog::shared(expr).ok().map(|g| g.order() as u64)
}

/// Which of `names` the group looks like, by order then fingerprint.
fn matches_any(g: &FiniteGroup, names: &[&str]) -> Option<String> {
    let fp = g.fingerprint();
    names
        .iter()
        .filter(|n| order_of(n) == Some(g.order() as u64))
        .find(|n| fingerprint_of(n).as_ref() == Some(&fp))
        .map(|n| n.to_string())
}

fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    if let Some(x) = (0..n).find(|&x| g.element_order(x) as usize == n) {
        return vec![x];
    }
    for c in g.conjugacy_classes() {
        for b in 0..n {
            if g.subgroup(&[c.rep, b]).order() == n {
                return vec![c.rep, b];
            }
        }
    }
    g.whole().generators().to_vec()
}

const COMPLEMENT_SEARCH_LIMIT: usize = 2_000_000;

/// Some `K ≤ G` with `K ∩ N = 1` and `KN = G`.
fn find_complement(g: &FiniteGroup, n: &Subgroup, q: &Quotient) -> Option<Subgroup> {
    let gens = small_generating_set(&q.group);
    let target = q.group.order();
    let ns: Vec<usize> = n.elements().collect();
    let total = ns.len().checked_pow(gens.len() as u32)?;
    if total > COMPLEMENT_SEARCH_LIMIT {
        return None;
    }
    let base: Vec<usize> = gens.iter().map(|&x| q.lift(x)).collect();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let lifts: Vec<usize> = base
            .iter()
            .zip(&idx)
            .map(|(&b, &i)| g.mul(ns[i], b))
            .collect();
        let k = g.subgroup(&lifts);
        if k.order() == target {
            return Some(k);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < ns.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn is_elementary_abelian(g: &FiniteGroup, h: &Subgroup, p: u64, k: Option<u32>) -> bool {
    match prime_power(h.order() as u64) {
        Some((q, e)) if q == p && k.is_none_or(|k| k == e) => {
            g.subgroup_structure(h, Structure::ElementaryAbelian(p))
        }
        _ => false,
    }
}

struct Evidence<'a> {
    g: &'a FiniteGroup,
    fitting: Subgroup,
    quotient: OnceLock<Quotient>,
}

impl Evidence<'_> {
    fn over_fitting(&self) -> &Quotient {
        self.quotient
            .get_or_init(|| self.g.quotient(&self.fitting).expect("F(G) is normal"))
    }
}

fn push(checks: &mut Vec<Assertion>, check: impl Into<String>, pass: bool) -> bool {
    checks.push(Assertion {
        check: check.into(),
        pass,
    });
    pass
}

fn case_named(ev: &Evidence, names: &[&str], checks: &mut Vec<Assertion>) -> bool {
    match matches_any(ev.g, names) {
        Some(n) => push(checks, format!("G ≅ {n} by fingerprint"), true),
        None => push(checks, format!("G ≅ one of {}", names.join(", ")), false),
    }
}

fn quotient_named(ev: &Evidence, names: &[&str], checks: &mut Vec<Assertion>) -> bool {
    let q = &ev.over_fitting().group;
    match matches_any(q, names) {
        Some(n) => push(checks, format!("G/F(G) ≅ {n} by fingerprint"), true),
        None => push(
            checks,
            format!("G/F(G) ≅ one of {}", names.join(", ")),
            false,
        ),
    }
}

fn fitting_elementary(ev: &Evidence, p: u64, k: Option<u32>, checks: &mut Vec<Assertion>) -> bool {
    let label = match k {
        Some(k) => format!("F(G) ≅ C{p}^{k}"),
        None => format!("F(G) is a nontrivial elementary abelian {p}-group"),
    };
    push(
        checks,
        label,
        ev.fitting.order() > 1 && is_elementary_abelian(ev.g, &ev.fitting, p, k),
    )
}

fn complement_named(
    ev: &Evidence,
    names: &[&str],
    checks: &mut Vec<Assertion>,
) -> Option<Subgroup> {
    if !quotient_named(ev, names, checks) {
        return None;
    }
    let k = find_complement(ev.g, &ev.fitting, ev.over_fitting());
    push(checks, "G splits over F(G)", k.is_some());
    k
}

fn check_case(ev: &Evidence, case: u8, checks: &mut Vec<Assertion>) -> bool {
    let g = ev.g;
    let f = &ev.fitting;
    match case {
        1 => case_named(
            ev,
            &[
                "PSL(2,5)",
                "PSL(2,7)",
                "PSL(2,8)",
                "PSL(2,9)",
                "PSL(2,11)",
                "PSL(2,13)",
                "PSL(2,17)",
            ],
            checks,
        ),
        2 => case_named(
            ev,
            &[
                "PSL(3,3)", "PSL(3,4)", "Sz(8)", "Sz(32)", "A7", "M11", "M22",
            ],
            checks,
        ),
        3 => case_named(ev, &["PGL(2,5)", "PGL(2,7)", "PSigmaL(2,8)", "M10"], checks),
        4 => case_named(ev, &["PSL(3,4):u"], checks),
        5 => {
            let fit = f.order() == 12
                && g.subgroup_structure(f, Structure::Abelian)
                && !g.subgroup_structure(f, Structure::Cyclic);
            push(checks, "F(G) ≅ C2^2×C3", fit)
                && case_named(ev, &["Stab_A7({1,2,3})", "2^2:D9"], checks)
        }
        6 => {
            let abelian_odd = f.order() > 1
                && g.subgroup_structure(f, Structure::Abelian)
                && prime_power(f.order() as u64).is_some_and(|(p, _)| p % 2 == 1);
            if !push(checks, "F(G) is an abelian p-group, p odd", abelian_odd) {
                return false;
            }
            let Some(h) = complement_named(ev, &["SL(2,3)", "2.S4"], checks) else {
                return false;
            };
            let involutions: Vec<usize> =
                h.elements().filter(|&x| g.element_order(x) == 2).collect();
            if !push(
                checks,
                "the complement has a unique involution",
                involutions.len() == 1,
            ) {
                return false;
            }
            let z = involutions[0];
            push(
                checks,
                "the involution inverts F(G)",
                f.elements().all(|x| g.conj(x, z) == g.inv(x)),
            )
        }
        7 => {
            fitting_elementary(ev, 3, Some(3), checks)
                && complement_named(ev, &["A4"], checks).is_some()
        }
        8 => {
            if !fitting_elementary(ev, 2, Some(4), checks) {
                return false;
            }
            let f2 = g.fitting2();
            let f2_group = g.subgroup_as_group(&f2, "F2");
            if !push(
                checks,
                "F²(G) ≅ A4×A4 by fingerprint",
                f2.order() == 144 && fingerprint_of("A4xA4") == Some(f2_group.fingerprint()),
            ) {
                return false;
            }
            let q = g.quotient(&f2).expect("F²(G) is normal");
            if !push(
                checks,
                "G/F²(G) ≅ C4",
                q.group.order() == 4 && q.group.is_cyclic(),
            ) {
                return false;
            }
            let split =
                (0..g.order()).any(|x| g.element_order(x) == 4 && !f2.contains(g.mul(x, x)));
            push(checks, "G splits over F²(G)", split)
        }
        9 => {
            fitting_elementary(ev, 2, Some(8), checks)
                && complement_named(ev, &["PSU(3,2)", "3^2:8"], checks).is_some()
        }
        10 => {
            fitting_elementary(ev, 2, Some(3), checks) && quotient_named(ev, &["PSL(2,7)"], checks)
        }
        11 => fitting_elementary(ev, 2, Some(4), checks) && quotient_named(ev, &["A6"], checks),
        12 => fitting_elementary(ev, 2, Some(8), checks) && quotient_named(ev, &["M10"], checks),
        13 => {
            if !fitting_elementary(ev, 2, None, checks)
                || !quotient_named(ev, &["A5", "S5", "PSL(2,8)", "Sz(8)", "Sz(32)"], checks)
            {
                return false;
            }
            let free = g
                .conjugacy_classes()
                .iter()
                .filter(|c| c.order % 2 == 1 && c.order > 1)
                .all(|c| {
                    f.elements()
                        .all(|x| x == 0 || g.mul(x, c.rep) != g.mul(c.rep, x))
                });
            push(checks, "C_F(x) = 1 for every x of odd order", free)
        }
        _ => false,
    }
}

pub fn classification_match(g: &FiniteGroup) -> ClassificationVerdict {
    let oliver = is_oliver(g).is_oliver;
    let a = laitinen_number(g);
    let ev = Evidence {
        g,
        fitting: g.fitting(),
        quotient: OnceLock::new(),
    };
    let mut matching = Vec::new();
    let mut attempts: Vec<(u8, Vec<Assertion>)> = Vec::new();
    for case in 1..=13u8 {
        let mut checks = Vec::new();
        if check_case(&ev, case, &mut checks) {
            matching.push(case);
        }
        attempts.push((case, checks));
    }
    let (matched_case, consistent) = if !oliver {
        (None, true)
    } else if a <= 1 {
        (
            matching.first().copied().filter(|_| matching.len() == 1),
            matching.len() == 1,
        )
    } else {
        (None, matching.is_empty())
    };
    let mut checks = Vec::new();
    match matched_case.or(matching.first().copied()) {
        Some(c) => {
            for mut a in attempts.into_iter().find(|(k, _)| *k == c).unwrap().1 {
                a.check = format!("case ({c}): {}", a.check);
                checks.push(a);
            }
        }
        None => {
            for (c, list) in attempts {
                if let Some(first_fail) = list.into_iter().find(|a| !a.pass) {
                    checks.push(Assertion {
                        check: format!("case ({c}): {}", first_fail.check),
                        pass: false,
                    });
                }
            }
        }
    }
    ClassificationVerdict {
        group: g.name().to_string(),
        is_oliver: oliver,
        a_g: a,
        matched_case,
        matching_cases: matching,
        checks,
        consistent,
    }
}

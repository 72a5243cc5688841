//! Verification suites over the catalog and machine-readable reports.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, Tag};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::invariants::{
    self, b_invariant, laitinen_number, lo_rank_bounds, npp_orders, BRow, RankKind,
};
use crate::predicates::{
    self, classification_match, gap_exact, gap_sufficient, is_large, is_oliver,
    noncyclic_sylow_count, proper_pairs, GapStatus, Parity,
};
use crate::repmod::{self, MemberKind, VirtualCharacter};
use crate::util::prime_power;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// What the check asserts, in words.
    pub about: String,
    pub status: Status,
    pub got: Value,
    pub expected: Value,
}

impl Check {
    fn equal<T: Serialize + PartialEq>(id: &str, what: &str, got: T, expected: T) -> Check {
        let status = if got == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            id: id.into(),
            about: what.into(),
            status,
            got: json!(got),
            expected: json!(expected),
        }
    }

    /// Passes when the list of counterexamples is empty.
    fn none<T: Serialize>(id: &str, what: &str, bad: Vec<T>) -> Check {
        let status = if bad.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            id: id.into(),
            about: what.into(),
            status,
            got: json!(bad),
            expected: json!([]),
        }
    }

    fn with_status(id: &str, what: &str, status: Status, got: Value, expected: Value) -> Check {
        Check {
            id: id.into(),
            about: what.into(),
            status,
            got,
            expected,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ranks {
    pub io: usize,
    pub io_gg: usize,
    pub lo_lower: usize,
    pub lo_upper: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub order: usize,
    pub a_g: usize,
    pub b_table: Vec<BRow>,
    pub ranks: Ranks,
    pub oliver: bool,
    pub gap: Option<GapStatus>,
    pub classification_case: Option<u8>,
    pub checks: Vec<Check>,
}

impl GroupReport {
    pub fn new(g: &FiniteGroup) -> GroupReport {
        let inv = invariants::InvariantReport::compute(g);
        GroupReport {
            group: g.name().to_string(),
            order: g.order(),
            a_g: inv.a_g,
            b_table: inv.b_table,
            ranks: Ranks {
                io: inv.rank_io,
                io_gg: inv.rank_io_gg,
                lo_lower: inv.lo_lower,
                lo_upper: inv.lo_upper,
            },
            oliver: is_oliver(g).is_oliver,
            gap: None,
            classification_case: None,
            checks: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub suite: String,
    pub groups: Vec<GroupReport>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(suite: Suite, groups: Vec<GroupReport>) -> VerificationReport {
        let mut summary = Summary::default();
        for c in groups.iter().flat_map(|g| &g.checks) {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Warn => summary.warn += 1,
                Status::Skip => summary.skipped += 1,
            }
        }
        VerificationReport {
            tool_version: TOOL_VERSION.into(),
            suite: suite.name().into(),
            groups,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.groups {
            for c in &g.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Warn => "WARN",
                    Status::Skip => "SKIP",
                };
                s.push_str(&format!(
                    "{tag} {} {}: got {} expected {}\n",
                    g.group, c.id, c.got, c.expected
                ));
            }
        }
        let m = &self.summary;
        s.push_str(&format!(
            "{} pass, {} fail, {} warn, {} skipped\n",
            m.pass, m.fail, m.warn, m.skipped
        ));
        s
    }

    /// `group, check, status, got, expected` rows.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("group\tcheck\tstatus\tgot\texpected\n");
        for g in &self.groups {
            for c in &g.checks {
                let status = serde_json::to_value(c.status).unwrap();
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    g.group,
                    c.id,
                    status.as_str().unwrap(),
                    c.got,
                    c.expected
                ));
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ranks,
    Classification,
    Vgg,
    A2,
    Orientation,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ranks => "ranks",
            Suite::Classification => "classification",
            Suite::Vgg => "vgg",
            Suite::A2 => "a2",
            Suite::Orientation => "keylemma",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "ranks" => Suite::Ranks,
            "classification" => Suite::Classification,
            "vgg" => Suite::Vgg,
            "a2" => Suite::A2,
            "keylemma" => Suite::Orientation,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite '{s}'"))),
        })
    }
}

/// A group under test with its catalog metadata.
#[derive(Clone, Debug)]
pub struct Subject {
    pub id: String,
    pub group: Arc<FiniteGroup>,
    pub expected_a: Option<u64>,
    pub case: Option<u8>,
}

impl Subject {
    pub fn from_catalog(id: &str) -> Result<Subject> {
        let entry = catalog::lookup(id);
        Ok(Subject {
            id: id.to_string(),
            group: catalog::shared(id)?,
            expected_a: entry.and_then(|e| e.a_g),
            case: entry.and_then(|e| e.case()),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_order: usize,
    pub exact_gap: bool,
    pub include_heavy: bool,
    /// Groups from user files, verified alongside the catalog.
    pub extra: Vec<Subject>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_order: 200_000,
            exact_gap: false,
            include_heavy: false,
            extra: Vec::new(),
        }
    }
}

fn selected(opts: &Options) -> Result<Vec<Subject>> {
    let mut out = Vec::new();
    for e in catalog::entries() {
        let wanted = e.is_default()
            || (opts.include_heavy && e.has(Tag::Heavy) && !e.has(Tag::MetadataOnly));
        if wanted && e.order as usize <= opts.max_order {
            out.push(Subject::from_catalog(e.id)?);
        }
    }
    out.extend(
        opts.extra
            .iter()
            .filter(|s| s.group.order() <= opts.max_order)
            .cloned(),
    );
    Ok(out)
}

fn named(ids: &[&str], opts: &Options) -> Result<Vec<Subject>> {
    ids.iter()
        .filter(|id| catalog::lookup(id).is_some_and(|e| e.order as usize <= opts.max_order))
        .map(|id| Subject::from_catalog(id))
        .collect()
}

pub fn run(suite: Suite, opts: &Options) -> Result<VerificationReport> {
    let groups = match suite {
        Suite::Ranks => ranks_suite(opts)?,
        Suite::Classification => classification_suite(opts)?,
        Suite::Vgg => vgg_suite(opts)?,
        Suite::A2 => a2_suite(opts)?,
        Suite::Orientation => orientation_suite(opts)?,
        Suite::All => {
            let mut merged: Vec<GroupReport> = Vec::new();
            let mut index: HashMap<String, usize> = HashMap::new();
            for s in [
                Suite::Ranks,
                Suite::Classification,
                Suite::Vgg,
                Suite::A2,
                Suite::Orientation,
            ] {
                for r in run(s, opts)?.groups {
                    match index.get(&r.group) {
                        Some(&i) => {
                            let m = &mut merged[i];
                            m.checks.extend(r.checks);
                            m.gap = m.gap.or(r.gap);
                            m.classification_case = m.classification_case.or(r.classification_case);
                        }
                        None => {
                            index.insert(r.group.clone(), merged.len());
                            merged.push(r);
                        }
                    }
                }
            }
            merged
        }
    };
    Ok(VerificationReport::new(suite, groups))
}

fn report_for(s: &Subject) -> GroupReport {
    let mut r = GroupReport::new(&s.group);
    r.group = s.id.clone();
    r
}

// ---- ranks ----

fn ranks_suite(opts: &Options) -> Result<Vec<GroupReport>> {
    let mut out = Vec::new();
    for s in selected(opts)? {
        let g = &*s.group;
        let mut r = report_for(&s);
        let a = r.a_g;
        if let Some(e) = s.expected_a {
            r.checks.push(Check::equal(
                "laitinen_number",
                "number of real classes of NPP elements",
                a as u64,
                e,
            ));
        }
        r.checks.push(Check::equal(
            "rank_io",
            "rank of IO(G) equals a_G",
            invariants::rank(g, RankKind::Io, None)?,
            a,
        ));
        r.checks.push(Check::equal(
            "rank_io_gg",
            "rank of IO(G,G) equals a_G − min(a_G, 1)",
            invariants::rank(g, RankKind::IoGG, None)?,
            a.saturating_sub(1),
        ));
        r.checks.extend(coset_checks(g)?);
        r.checks.extend(structural_checks(&s)?);
        r.checks.extend(fixtures(&s)?);
        out.push(r);
    }
    Ok(out)
}

fn coset_checks(g: &FiniteGroup) -> Result<Vec<Check>> {
    let a = laitinen_number(g);
    let normals = g.normal_subgroups();
    let npp_classes: Vec<usize> = g
        .real_classes()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_npp)
        .map(|(i, _)| i)
        .collect();
    let mut b = Vec::with_capacity(normals.len());
    let mut rank_mismatch = Vec::new();
    let mut bounds = Vec::new();
    let mut two_classes = Vec::new();
    let mut two_orders = Vec::new();
    for h in normals {
        let q = g.quotient(h)?;
        let bh = invariants::b_invariant_in(g, &q);
        let fr = linalg_rank(g, &q);
        if fr != bh {
            rank_mismatch.push(json!({"h": h.order(), "b": bh, "fix_rank": fr}));
        }
        let aq = laitinen_number(&q.group);
        if !(a >= bh && bh >= aq) {
            bounds.push(json!({"h": h.order(), "a": a, "b": bh, "a_quotient": aq}));
        }
        let inside: Vec<usize> = npp_classes
            .iter()
            .copied()
            .filter(|&c| h.contains(g.real_classes()[c].rep))
            .collect();
        if inside.len() >= 2 && a <= bh {
            two_classes.push(json!({"h": h.order(), "b": bh}));
        }
        let mut orders: Vec<u32> = inside.iter().map(|&c| g.real_classes()[c].order).collect();
        orders.sort_unstable();
        orders.dedup();
        if orders.len() >= 2 && a <= bh {
            two_orders.push(json!({"h": h.order(), "b": bh}));
        }
        b.push(bh);
    }
    let mut monotone = Vec::new();
    for (i, h) in normals.iter().enumerate() {
        for (j, k) in normals.iter().enumerate() {
            if i != j && h.is_subgroup_of(k) && b[i] < b[j] {
                monotone.push(json!({"h": h.order(), "k": k.order(), "b_h": b[i], "b_k": b[j]}));
            }
        }
    }
    let mut checks = vec![
        Check::none(
            "fix_rank_equals_b",
            "rank of the Fix^H image equals the coset count b_{G/H}",
            rank_mismatch,
        ),
        Check::none(
            "coset_bounds",
            "a_G ≥ b_{G/H} ≥ a_{G/H} for every normal H",
            bounds,
        ),
        Check::none(
            "coset_monotone",
            "H ≤ K normal implies b_{G/H} ≥ b_{G/K}",
            monotone,
        ),
        Check::none(
            "two_npp_classes",
            "a normal H holding two NPP real classes forces a_G > b_{G/H}",
            two_classes,
        ),
        Check::none(
            "two_npp_orders",
            "a normal H holding NPP elements of two orders forces a_G > b_{G/H}",
            two_orders,
        ),
    ];
    checks.push(inherited_equality(g, &b)?);
    Ok(checks)
}

fn linalg_rank(g: &FiniteGroup, q: &crate::Quotient) -> usize {
    crate::linalg::rank(&invariants::fix_matrix_in(g, q))
}

const INHERIT_PAIR_LIMIT: usize = 400;

/// `a_G = b_{G/H}` and `K ⊆ H` normal imply `a_{G/K} = b_{(G/K)/(H/K)}`.
fn inherited_equality(g: &FiniteGroup, b: &[usize]) -> Result<Check> {
    let id = "equality_passes_to_quotients";
    let what = "a_G = b_{G/H} passes to G/K for normal K ⊆ H";
    let a = laitinen_number(g);
    let normals = g.normal_subgroups();
    let pairs: Vec<(usize, usize)> = (0..normals.len())
        .filter(|&i| b[i] == a)
        .flat_map(|i| {
            (0..normals.len())
                .filter(move |&j| j != i)
                .map(move |j| (i, j))
        })
        .filter(|&(i, j)| normals[j].is_subgroup_of(&normals[i]) && normals[j].order() > 1)
        .collect();
    if pairs.len() > INHERIT_PAIR_LIMIT || g.order() > 40_000 {
        return Ok(Check::with_status(
            id,
            what,
            Status::Skip,
            json!(pairs.len()),
            json!("at most 400 pairs"),
        ));
    }
    let mut bad = Vec::new();
    for (i, j) in pairs {
        let q = g.quotient(&normals[j])?;
        let image = q.image(&normals[i]);
        let bq = b_invariant(&q.group, &image)?;
        let aq = laitinen_number(&q.group);
        if aq != bq {
            bad.push(json!({"h": normals[i].order(), "k": normals[j].order(), "a": aq, "b": bq}));
        }
    }
    Ok(Check::none(id, what, bad))
}

fn structural_checks(s: &Subject) -> Result<Vec<Check>> {
    let g = &*s.group;
    let a = laitinen_number(g);
    let mut checks = Vec::new();
    if !g.is_solvable() {
        let sol = g.solvable_residual();
        let bsol = b_invariant(g, &sol)?;
        let exceptional = matches!(s.id.as_str(), "Aut(A6)" | "PSigmaL(2,27)");
        let ok = a != bsol || a <= 1 || (exceptional && a == 2);
        checks.push(Check::with_status(
            "solvable_residual_equality",
            "for nonsolvable G, a_G = b_{G/G^sol} only when a_G ≤ 1 or G is Aut(A6) or PΣL(2,27) with a_G = 2",
            if ok { Status::Pass } else { Status::Fail },
            json!({"a": a, "b": bsol}),
            json!(true),
        ));
        let rank = a - bsol;
        let expected_zero = a <= 1 || exceptional;
        checks.push(Check::equal(
            "io_over_solvable_residual_vanishes",
            "rank IO(G,G^sol) is zero exactly when a_G ≤ 1 or G is Aut(A6) or PΣL(2,27)",
            rank == 0,
            expected_zero,
        ));
        let mut bad = Vec::new();
        for c in g.conjugacy_classes() {
            if c.rep == 0 || !sol.elements().all(|y| g.mul(y, c.rep) == g.mul(c.rep, y)) {
                continue;
            }
            let z = g.subgroup(&[c.rep]);
            if g.intersection(&z, &sol).order() == 1 && !(a >= 2 && a > bsol) {
                bad.push(json!({"order": c.order, "a": a, "b": bsol}));
            }
        }
        checks.push(Check::none(
            "direct_cyclic_factor",
            "a nonsolvable B with a commuting cyclic C, B ∩ C = 1, gives a_G ≥ 2 and a_G > b_{G/G^sol}",
            bad,
        ));
    }
    if g.order() % 2 == 1 && is_oliver(g).is_oliver {
        let cyclic_pp = repmod::cyclic_quotients(g)
            .iter()
            .all(|(_, c)| prime_power(c.n).is_some());
        if cyclic_pp {
            let bnil = b_invariant(g, &g.nilpotent_residual())?;
            checks.push(Check::with_status(
                "odd_oliver_nilpotent_residual",
                "odd-order Oliver G whose cyclic quotients have prime power order has a_G > b_{G/G^nil} ≥ 1",
                if a > bnil && bnil >= 1 { Status::Pass } else { Status::Fail },
                json!({"a": a, "b": bnil}),
                json!("a > b ≥ 1"),
            ));
        }
    }
    Ok(checks)
}

fn b_of(s: &Subject, h: &Subgroup) -> Result<usize> {
    b_invariant(&s.group, h)
}

fn fixtures(s: &Subject) -> Result<Vec<Check>> {
    let g = &*s.group;
    let mut c = Vec::new();
    let sol = g.solvable_residual();
    match s.id.as_str() {
        "S5" => c.push(Check::equal(
            "b_solvable_residual",
            "b_{S5/A5}",
            b_of(s, &sol)?,
            1,
        )),
        "S6" => {
            c.push(Check::equal(
                "b_solvable_residual",
                "b_{S6/A6}",
                b_of(s, &sol)?,
                1,
            ));
            c.push(Check::equal(
                "rank_io_gh",
                "rank IO(S6, A6)",
                invariants::rank(g, RankKind::IoGH, Some(&sol))?,
                1,
            ));
            c.push(Check::equal(
                "lo_bounds",
                "rank of LO(S6)",
                lo_rank_bounds(g),
                (1, 1),
            ));
        }
        "S7" => {
            c.push(Check::equal(
                "b_solvable_residual",
                "b_{S7/A7}",
                b_of(s, &sol)?,
                2,
            ));
            c.push(Check::equal(
                "rank_io_gh",
                "rank IO(S7, A7)",
                invariants::rank(g, RankKind::IoGH, Some(&sol))?,
                3,
            ));
            c.push(Check::equal(
                "rank_io_gg_value",
                "rank IO(S7, S7)",
                invariants::rank(g, RankKind::IoGG, None)?,
                4,
            ));
            c.push(Check::equal(
                "lo_bounds",
                "rank of LO(S7)",
                lo_rank_bounds(g),
                (3, 3),
            ));
        }
        "A8" => c.push(Check::equal(
            "rank_io_gg_value",
            "rank IO(A8, A8)",
            invariants::rank(g, RankKind::IoGG, None)?,
            2,
        )),
        "A9" => c.push(Check::equal(
            "rank_io_gg_value",
            "rank IO(A9, A9)",
            invariants::rank(g, RankKind::IoGG, None)?,
            5,
        )),
        "Aut(A6)" => {
            c.push(Check::equal(
                "npp_orders",
                "NPP element orders of Aut(A6)",
                npp_orders(g),
                vec![6, 10],
            ));
            c.push(Check::equal(
                "b_solvable_residual",
                "b over the solvable residual equals a_G",
                b_of(s, &sol)?,
                2,
            ));
            c.push(Check::equal(
                "lo_bounds",
                "LO(Aut(A6)) vanishes",
                lo_rank_bounds(g),
                (0, 0),
            ));
        }
        "PSigmaL(2,27)" => {
            c.push(Check::equal(
                "npp_orders",
                "NPP element orders of PΣL(2,27)",
                npp_orders(g),
                vec![6, 14],
            ));
            c.push(Check::equal(
                "b_solvable_residual",
                "b over the solvable residual equals a_G",
                b_of(s, &sol)?,
                2,
            ));
        }
        "PSL(2,11)" | "PSL(2,13)" | "PSL(3,3)" | "A7" | "M11" | "M22" => {
            c.push(Check::equal(
                "npp_orders",
                "the single NPP real class has order 6",
                npp_orders(g),
                vec![6],
            ));
        }
        "PSL(2,5)" | "PSL(2,7)" | "PSL(2,8)" | "PSL(2,9)" | "PSL(2,17)" | "PSL(3,4)" | "Sz(8)" => {
            c.push(Check::equal(
                "cp",
                "every element has prime power order",
                predicates::is_cp(g),
                true,
            ));
        }
        "SL(2,3)" => {
            let mut orders: Vec<u32> = g.conjugacy_classes().iter().map(|c| c.order).collect();
            orders.sort_unstable();
            orders.dedup();
            c.push(Check::equal(
                "element_orders",
                "element orders of SL(2,3)",
                orders,
                vec![1, 2, 3, 4, 6],
            ));
        }
        "A5xZ3" => {
            let b = b_of(s, &sol)?;
            let status = if b > 1 { Status::Pass } else { Status::Warn };
            c.push(Check::with_status(
                "b_solvable_residual_claim",
                "printed example of a_G > b_{G/H} > 1 with H = A5; the literal coset count disagrees",
                status,
                json!({"a": laitinen_number(g), "b": b}),
                json!("b > 1 (printed claim)"),
            ));
        }
        _ => {}
    }
    Ok(c)
}

// ---- classification and gap ----

const NON_OLIVER: &[&str] = &["Z2^2", "S3", "S4", "Z8"];
const GAP_FIXTURES: &[(&str, GapStatus)] = &[
    ("A5", GapStatus::Gap),
    ("A6", GapStatus::Gap),
    ("S5", GapStatus::NotGap),
    ("S6", GapStatus::Gap),
    ("Aut(A6)", GapStatus::NotGap),
    ("PSigmaL(2,27)", GapStatus::Gap),
];

fn classification_suite(opts: &Options) -> Result<Vec<GroupReport>> {
    let mut out = Vec::new();
    for s in selected(opts)? {
        let g = &*s.group;
        let mut r = report_for(&s);
        let verdict = is_oliver(g);
        if !g.is_solvable() {
            r.checks.push(Check::equal(
                "oliver_nonsolvable",
                "nonsolvable groups are Oliver",
                verdict.is_oliver,
                true,
            ));
        }
        if g.is_cyclic() || NON_OLIVER.contains(&s.id.as_str()) {
            r.checks.push(Check::equal(
                "not_oliver",
                "has an isthmus series P ⊴ H ⊴ G",
                verdict.is_oliver,
                false,
            ));
        }
        if g.is_nilpotent() {
            r.checks.push(Check::equal(
                "nilpotent_oliver",
                "a nilpotent group is Oliver iff at least three Sylow subgroups are noncyclic",
                verdict.is_oliver,
                noncyclic_sylow_count(g) >= 3,
            ));
        }
        let m = classification_match(g);
        r.classification_case = m.matched_case;
        if verdict.is_oliver {
            let a = m.a_g;
            let what = if a <= 1 {
                "an Oliver group with a_G ≤ 1 meets exactly one classification case"
            } else {
                "an Oliver group with a_G ≥ 2 meets no classification case"
            };
            r.checks.push(Check::with_status(
                "classification",
                what,
                if m.consistent {
                    Status::Pass
                } else {
                    Status::Fail
                },
                json!(m.matching_cases),
                if a <= 1 {
                    json!("exactly one case")
                } else {
                    json!([])
                },
            ));
            if let Some(case) = s.case {
                r.checks.push(Check::equal(
                    "classification_case",
                    "case recorded in the catalog",
                    m.matched_case,
                    Some(case),
                ));
            }
        } else if let Some(case) = s.case {
            r.checks.push(Check::with_status(
                "classification_case_not_oliver",
                "listed as a classification instance but the group has an isthmus series",
                Status::Warn,
                json!({"oliver": false, "witness": verdict.witness, "structural_cases": m.matching_cases}),
                json!({"case": case}),
            ));
        }
        if let Some(&(_, expected)) = GAP_FIXTURES.iter().find(|(id, _)| *id == s.id) {
            let heavy = s.id == "PSigmaL(2,27)";
            if heavy && !opts.include_heavy {
                r.checks.push(Check::with_status(
                    "gap",
                    "gap decision",
                    Status::Skip,
                    json!(null),
                    json!(expected),
                ));
            } else if opts.exact_gap {
                let cap = if heavy {
                    g.order()
                } else {
                    predicates::default_gap_cap()
                };
                let d = gap_exact(g, cap)?;
                r.gap = Some(d.status);
                r.checks.push(Check::equal(
                    "gap",
                    "gap decision by linear programming",
                    d.status,
                    expected,
                ));
            } else {
                let st = gap_sufficient(g);
                r.gap = Some(st);
                if st == GapStatus::Unknown {
                    r.checks.push(Check::with_status(
                        "gap",
                        "gap decision by sufficient conditions; rerun with --exact-gap",
                        Status::Skip,
                        json!(st),
                        json!(expected),
                    ));
                } else {
                    r.checks.push(Check::equal(
                        "gap",
                        "gap decision by sufficient conditions",
                        st,
                        expected,
                    ));
                }
            }
        }
        out.push(r);
    }
    Ok(out)
}

// ---- V(G) ----

pub const VGG_GROUPS: &[&str] = &["S4", "S5", "S6", "A4", "A5", "SL(2,3)"];

#[derive(Clone, Debug, Serialize)]
pub struct PairDefect {
    pub p_order: usize,
    pub h_order: usize,
    pub parity: Parity,
    pub defect: i64,
}

/// `d_{V(G)}(P,H)` on every reduced proper pair, from indices alone.
pub fn vgg_defects(g: &FiniteGroup) -> Vec<PairDefect> {
    proper_pairs(g)
        .into_iter()
        .map(|pair| PairDefect {
            p_order: pair.p.order(),
            h_order: pair.h.order(),
            parity: pair.parity,
            defect: repmod::v_g_fixed_dim(g, &pair.p) - 2 * repmod::v_g_fixed_dim(g, &pair.h),
        })
        .collect()
}

fn vgg_suite(opts: &Options) -> Result<Vec<GroupReport>> {
    let mut out = Vec::new();
    for s in named(VGG_GROUPS, opts)? {
        let g = &*s.group;
        let mut r = report_for(&s);
        let pairs = proper_pairs(g);
        let v = repmod::v_g_character(g).net_char();
        let mut wrong = Vec::new();
        let mut formula = Vec::new();
        let mut negative = Vec::new();
        let mut large = Vec::new();
        for pair in &pairs {
            let dp = repmod::v_g_fixed_dim(g, &pair.p);
            let dh = repmod::v_g_fixed_dim(g, &pair.h);
            let d = dp - 2 * dh;
            let ok = match pair.parity {
                Parity::Odd => d == 0,
                Parity::Even => d >= 1,
            };
            if !ok {
                wrong.push(PairDefect {
                    p_order: pair.p.order(),
                    h_order: pair.h.order(),
                    parity: pair.parity,
                    defect: d,
                });
            }
            for (sub, dim) in [(&pair.p, dp), (&pair.h, dh)] {
                let by_char = repmod::dim_fixed(g, &v, sub)?;
                if by_char != dim {
                    formula
                        .push(json!({"order": sub.order(), "character": by_char, "formula": dim}));
                }
                if dim < 0 {
                    negative.push(json!({"order": sub.order(), "dim": dim}));
                }
                if (dim == 0) != is_large(g, sub) {
                    large.push(json!({"order": sub.order(), "dim": dim}));
                }
            }
        }
        r.checks.push(Check::none(
            "vgg_dichotomy",
            "d_{V(G)} vanishes on odd pairs and is positive on even pairs",
            wrong,
        ));
        r.checks.push(Check::none(
            "vgg_formula",
            "character and index formula give the same fixed dimensions",
            formula,
        ));
        if r.oliver {
            r.checks.push(Check::none(
                "vgg_genuine",
                "V(G) has nonnegative fixed dimensions",
                negative,
            ));
            r.checks.push(Check::none(
                "vgg_large",
                "dim V(G)^H = 0 exactly for large H",
                large,
            ));
        }
        out.push(r);
    }
    Ok(out)
}

// ---- A2 ----

fn a2_suite(opts: &Options) -> Result<Vec<GroupReport>> {
    let mut out = Vec::new();
    for s in selected(opts)? {
        let g = &*s.group;
        if g.order() > 5_000 {
            continue;
        }
        let quotients = repmod::a2_quotients(g);
        if quotients.is_empty() {
            continue;
        }
        let mut r = report_for(&s);
        for h in quotients {
            let pair = repmod::construct_a2(g, &h)?;
            let tag = format!("[{}]", pair.n);
            let (p, q) = (pair.p, pair.q);
            let crt = pair.a % p == 1 % p
                && pair.a % q == 2 % q
                && pair.b % p == 2 % p
                && pair.b % q == 1 % q;
            r.checks.push(Check::equal(
                &format!("a2_crt{tag}"),
                "a ≡ 1, b ≡ 2 mod p and a ≡ 2, b ≡ 1 mod q",
                crt,
                true,
            ));
            if s.id == "Z15" {
                r.checks.push(Check::equal(
                    "a2_exponents",
                    "exponents for p = 3, q = 5",
                    (pair.a, pair.b),
                    (7, 11),
                ));
            }
            let d = VirtualCharacter::new(pair.u.clone(), pair.v.clone(), "A2");
            let free = repmod::is_l_free(g, &pair.u)? && repmod::is_l_free(g, &pair.v)?;
            r.checks.push(Check::equal(
                &format!("a2_l_free{tag}"),
                "both modules are L-free",
                free,
                true,
            ));
            let io = repmod::membership(g, &d, MemberKind::Io, None)?;
            r.checks.push(Check::equal(
                &format!("a2_io{tag}"),
                "characters agree on prime power elements",
                io,
                true,
            ));
            let lo = repmod::membership(g, &d, MemberKind::Lo, None)?;
            r.checks.push(Check::equal(
                &format!("a2_lo{tag}"),
                "the difference lies in LO(G)",
                lo,
                true,
            ));
            r.checks.push(Check::equal(
                &format!("a2_nonzero{tag}"),
                "the two characters differ",
                !pair.u.approx_eq(&pair.v),
                true,
            ));
            r.checks.push(Check::equal(
                &format!("a2_laitinen{tag}"),
                "a_G ≥ 2",
                laitinen_number(g) >= 2,
                true,
            ));
        }
        out.push(r);
    }
    Ok(out)
}

// ---- orientation ----

pub const ORIENTATION_GROUPS: &[&str] = &["Z15", "S4", "SL(2,3)", "S5"];
pub const ORIENTATION_PAIRS: usize = 50;

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrientationOutcome {
    pub pairs: usize,
    pub oriented: usize,
    /// Pairs whose characters differ somewhere.
    pub distinct: usize,
    pub det_checks: usize,
    pub det_failures: usize,
    pub errors: Vec<String>,
}

/// Orientation and determinant checks on random module pairs with equal
/// characters on prime-power elements.
pub fn orientation_trials(g: &FiniteGroup, pairs: usize, seed: u64) -> Result<OrientationOutcome> {
    let lib = repmod::BlockLibrary::new(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = OrientationOutcome {
        pairs,
        ..Default::default()
    };
    for _ in 0..pairs {
        let (u, v) = repmod::random_io_pair(g, &lib, &mut rng)?;
        if !u.character().approx_eq(v.character()) {
            out.distinct += 1;
        }
        match repmod::orientation_check(g, &u, &v) {
            Ok(rep) if rep.pass => out.oriented += 1,
            Ok(_) => {}
            Err(e) => out.errors.push(e.to_string()),
        }
        match repmod::det_agreement(g, &u, &v) {
            Ok(list) => {
                out.det_checks += list.len();
                out.det_failures += list.iter().filter(|d| !d.pass).count();
            }
            Err(e) => out.errors.push(e.to_string()),
        }
    }
    Ok(out)
}

fn orientation_suite(opts: &Options) -> Result<Vec<GroupReport>> {
    let mut out = Vec::new();
    for (i, s) in named(ORIENTATION_GROUPS, opts)?.into_iter().enumerate() {
        let g = &*s.group;
        let mut r = report_for(&s);
        let o = orientation_trials(g, ORIENTATION_PAIRS, 1000 + i as u64)?;
        r.checks.push(Check::equal(
            "orientation",
            "U ⊕ V is oriented on every prime power fixed space for random U − V in IO(G)",
            o.oriented,
            o.pairs,
        ));
        r.checks.push(Check::equal(
            "det_agreement",
            "det of t on U and V agree for 2-power t with matching fixed-space parity",
            o.det_failures,
            0,
        ));
        r.checks.push(Check::none(
            "numerics",
            "determinants within 1e-6 of ±1",
            o.errors,
        ));
        out.push(r);
    }
    Ok(out)
}

// ---- info ----

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub group: String,
    pub order: usize,
    pub a_g: usize,
    pub npp_orders: Vec<u32>,
    pub oliver: bool,
    pub oliver_witness: Option<predicates::Isthmus>,
    pub cp: bool,
    pub ep: bool,
    pub gap: GapStatus,
    pub gap_mode: &'static str,
    pub b_table: Vec<BRow>,
    pub ranks: Ranks,
}

pub fn group_info(g: &FiniteGroup, exact_gap: bool) -> Result<GroupInfo> {
    let r = GroupReport::new(g);
    let ov = is_oliver(g);
    let (gap, gap_mode) = if exact_gap {
        (
            gap_exact(g, g.order().max(predicates::default_gap_cap()))?.status,
            "exact",
        )
    } else {
        (gap_sufficient(g), "sufficient")
    };
    Ok(GroupInfo {
        group: g.name().to_string(),
        order: g.order(),
        a_g: r.a_g,
        npp_orders: npp_orders(g),
        oliver: ov.is_oliver,
        oliver_witness: ov.witness,
        cp: predicates::is_cp(g),
        ep: predicates::is_ep(g),
        gap,
        gap_mode,
        b_table: r.b_table,
        ranks: r.ranks,
    })
}

impl GroupInfo {
    pub fn to_text(&self) -> String {
        let mut s = format!("group      {}\norder      {}\n", self.group, self.order);
        s.push_str(&format!(
            "a_G        {}\nNPP orders {:?}\n",
            self.a_g, self.npp_orders
        ));
        match &self.oliver_witness {
            Some(w) => s.push_str(&format!(
                "oliver     false (P ⊴ H ⊴ G with |P| = {}, |H| = {}, |G| = {})\n",
                w.p_order, w.h_order, w.g_order
            )),
            None => s.push_str("oliver     true\n"),
        }
        s.push_str(&format!("CP {}  EP {}\n", self.cp, self.ep));
        s.push_str(&format!(
            "gap        {} ({})\n",
            serde_json::to_value(self.gap).unwrap().as_str().unwrap(),
            self.gap_mode
        ));
        s.push_str(&format!(
            "rk IO(G) = {}  rk IO(G,G) = {}  LO rank in [{}, {}]\n",
            self.ranks.io, self.ranks.io_gg, self.ranks.lo_lower, self.ranks.lo_upper
        ));
        s.push_str("|H|\tb_{G/H}\trk IO(G,H)\n");
        for row in &self.b_table {
            s.push_str(&format!("{}\t{}\t{}\n", row.order, row.b, row.rank_io_gh));
        }
        s
    }

    pub fn rank_tsv(&self) -> String {
        let mut s = String::from("group\th_order\tb\trank_io_gh\n");
        for row in &self.b_table {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                self.group, row.order, row.b, row.rank_io_gh
            ));
        }
        s
    }
}

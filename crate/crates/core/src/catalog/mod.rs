//! The bundled group catalog, constructor expressions and group files.

pub mod bundled;
pub mod constructors;
pub mod field;
pub mod file;
pub mod matrix;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use constructors as c;
use constructors::Linear;

pub use field::FiniteField;
pub use file::{load, load_specs, parse_group_file, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    Simple,
    Perfect,
    Solvable,
    Nilpotent,
    /// Excluded from default runs for time.
    Heavy,
    /// Above the element cap; only metadata is available.
    MetadataOnly,
    /// Expected classification case.
    Case(u8),
    /// Member of the nilpotent Oliver-criterion family.
    NilpotentFamily,
}

pub struct Entry {
    pub id: &'static str,
    /// Isomorphism labels, the first being the preferred one.
    pub aliases: &'static [&'static str],
    pub order: u64,
    /// Laitinen number where known in advance.
    pub a_g: Option<u64>,
    pub tags: &'static [Tag],
    build: fn() -> Result<FiniteGroup>,
}

impl Entry {
    pub fn build(&self) -> Result<FiniteGroup> {
        if self.tags.contains(&Tag::MetadataOnly) {
            return Err(Error::CapExceeded {
                name: self.id.to_string(),
                cap: crate::group::DEFAULT_ELEMENT_CAP,
            });
        }
        let g = (self.build)()?
            .with_name(self.id)
            .with_label(self.aliases[0]);
        if g.order() as u64 != self.order {
            return Err(Error::OrderMismatch {
                name: self.id.into(),
                expected: self.order,
                got: g.order() as u64,
            });
        }
        Ok(g)
    }

    pub fn has(&self, t: Tag) -> bool {
        self.tags.contains(&t)
    }

    pub fn case(&self) -> Option<u8> {
        self.tags
            .iter()
            .find_map(|t| if let Tag::Case(n) = t { Some(*n) } else { None })
    }

    pub fn is_default(&self) -> bool {
        !self.has(Tag::Heavy) && !self.has(Tag::MetadataOnly)
    }
}

macro_rules! entry {
    ($id:expr, [$($al:expr),*], $order:expr, $ag:expr, [$($t:expr),*], $b:expr) => {
        Entry { id: $id, aliases: &[$($al),*], order: $order, a_g: $ag, tags: &[$($t),*], build: $b }
    };
}

use Tag::*;

static ENTRIES: &[Entry] = &[
    entry!("Z2", ["Z2"], 2, Some(0), [Nilpotent], || c::cyclic(2)),
    entry!("Z3", ["Z3"], 3, Some(0), [Nilpotent], || c::cyclic(3)),
    entry!("Z4", ["Z4"], 4, Some(0), [Nilpotent], || c::cyclic(4)),
    entry!("Z5", ["Z5"], 5, Some(0), [Nilpotent], || c::cyclic(5)),
    entry!("Z6", ["Z6"], 6, None, [Nilpotent], || c::cyclic(6)),
    entry!("Z8", ["Z8"], 8, Some(0), [Nilpotent], || c::cyclic(8)),
    entry!("Z12", ["Z12"], 12, None, [Nilpotent], || c::cyclic(12)),
    entry!("Z15", ["Z15"], 15, None, [Nilpotent], || c::cyclic(15)),
    entry!("Z21", ["Z21"], 21, None, [Nilpotent], || c::cyclic(21)),
    entry!("Z30", ["Z30", "Z3xZ5xZ2"], 30, None, [Nilpotent], || {
        c::cyclic(30)
    }),
    entry!("Z2^2", ["Z2xZ2"], 4, Some(0), [Nilpotent], || {
        c::elementary_abelian(2, 2)
    }),
    entry!("Z2^3", ["Z2xZ2xZ2"], 8, Some(0), [Nilpotent], || {
        c::elementary_abelian(2, 3)
    }),
    entry!("Q8", ["Q8"], 8, Some(0), [Nilpotent], c::quaternion8),
    entry!("D6", ["Dih(6)"], 12, None, [Solvable], || c::dihedral(6)),
    entry!("D15", ["Dih(15)"], 30, None, [Solvable], || c::dihedral(15)),
    entry!("S3", ["S3"], 6, Some(0), [Solvable], || c::symmetric(3)),
    entry!("S4", ["S4"], 24, Some(0), [Solvable], || c::symmetric(4)),
    entry!("S5", ["S5", "PGL(2,5)"], 120, Some(1), [Case(3)], || {
        c::symmetric(5)
    }),
    entry!("S6", ["S6", "PSigmaL(2,9)"], 720, Some(2), [], || {
        c::symmetric(6)
    }),
    entry!("S7", ["S7"], 5040, Some(5), [], || c::symmetric(7)),
    entry!("A4", ["A4"], 12, Some(0), [Solvable], || c::alternating(4)),
    entry!(
        "A5",
        ["A5", "PSL(2,5)", "PSL(2,4)"],
        60,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::alternating(5)
    ),
    entry!(
        "A6",
        ["A6", "PSL(2,9)"],
        360,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::alternating(6)
    ),
    entry!(
        "A7",
        ["A7"],
        2520,
        Some(1),
        [Simple, Perfect, Case(2)],
        || c::alternating(7)
    ),
    entry!(
        "A8",
        ["A8", "PSL(4,2)"],
        20160,
        Some(3),
        [Simple, Perfect],
        || c::alternating(8)
    ),
    entry!("A9", ["A9"], 181440, Some(6), [Simple, Perfect], || {
        c::alternating(9)
    }),
    entry!("SL(2,3)", ["SL(2,3)"], 24, Some(1), [Solvable], || {
        c::linear(Linear::SL, 2, 3)
    }),
    entry!("2.S4", ["2.S4"], 48, None, [Solvable], c::binary_octahedral),
    entry!(
        "PSU(3,2)",
        ["PSU(3,2)", "3^2:Q8"],
        72,
        None,
        [Solvable],
        c::psu32
    ),
    entry!(
        "3^2:8",
        ["3^2:8", "AGL(1,9)"],
        72,
        None,
        [Solvable],
        c::agl19
    ),
    entry!(
        "PSL(2,5)",
        ["PSL(2,5)", "A5"],
        60,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 5)
    ),
    entry!(
        "PSL(2,7)",
        ["PSL(2,7)", "PSL(3,2)", "GL(3,2)"],
        168,
        Some(0),
        [Simple, Perfect, Case(1)],
        || { c::linear(Linear::PSL, 2, 7) }
    ),
    entry!(
        "PSL(2,8)",
        ["PSL(2,8)", "SL(2,8)"],
        504,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 8)
    ),
    entry!(
        "PSL(2,9)",
        ["PSL(2,9)", "A6"],
        360,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 9)
    ),
    entry!(
        "PSL(2,11)",
        ["PSL(2,11)"],
        660,
        Some(1),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 11)
    ),
    entry!(
        "PSL(2,13)",
        ["PSL(2,13)"],
        1092,
        Some(1),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 13)
    ),
    entry!(
        "PSL(2,17)",
        ["PSL(2,17)"],
        2448,
        Some(0),
        [Simple, Perfect, Case(1)],
        || c::linear(Linear::PSL, 2, 17)
    ),
    entry!(
        "PSL(3,3)",
        ["PSL(3,3)"],
        5616,
        Some(1),
        [Simple, Perfect, Case(2)],
        || c::linear(Linear::PSL, 3, 3)
    ),
    entry!(
        "PSL(3,4)",
        ["PSL(3,4)"],
        20160,
        Some(0),
        [Simple, Perfect, Case(2)],
        || c::linear(Linear::PSL, 3, 4)
    ),
    entry!(
        "Sz(8)",
        ["Sz(8)"],
        29120,
        Some(0),
        [Simple, Perfect, Case(2)],
        bundled::suzuki8
    ),
    entry!(
        "M11",
        ["M11"],
        7920,
        Some(1),
        [Simple, Perfect, Case(2)],
        bundled::mathieu11
    ),
    entry!(
        "M22",
        ["M22"],
        443520,
        Some(1),
        [Simple, Perfect, Case(2), Heavy],
        bundled::mathieu22
    ),
    entry!(
        "Sz(32)",
        ["Sz(32)"],
        32537600,
        Some(0),
        [Simple, Perfect, Case(2), MetadataOnly],
        || {
            Err(Error::CapExceeded {
                name: "Sz(32)".into(),
                cap: crate::group::DEFAULT_ELEMENT_CAP,
            })
        }
    ),
    entry!(
        "PGL(2,5)",
        ["PGL(2,5)", "S5"],
        120,
        Some(1),
        [Case(3)],
        || c::linear(Linear::PGL, 2, 5)
    ),
    entry!(
        "PGL(2,7)",
        ["PGL(2,7)"],
        336,
        None,
        [Case(3)],
        || c::linear(Linear::PGL, 2, 7)
    ),
    entry!(
        "PSigmaL(2,8)",
        ["PSigmaL(2,8)"],
        1512,
        None,
        [Case(3)],
        || c::linear(Linear::PSigmaL, 2, 8)
    ),
    entry!("M10", ["M10"], 720, Some(0), [Case(3)], c::mathieu10),
    entry!(
        "Aut(A6)",
        ["Aut(A6)", "PGammaL(2,9)"],
        1440,
        Some(2),
        [],
        || c::linear(Linear::PGammaL, 2, 9)
    ),
    entry!(
        "PSigmaL(2,27)",
        ["PSigmaL(2,27)"],
        29484,
        Some(2),
        [],
        || c::linear(Linear::PSigmaL, 2, 27)
    ),
    entry!(
        "PSL(3,4):u",
        ["PSL(3,4):u"],
        40320,
        None,
        [Case(4)],
        c::psl34_graph_field
    ),
    entry!("A5xZ3", ["A5xZ3"], 180, None, [], || c::direct_product(
        &c::alternating(5)?,
        &c::cyclic(3)?
    )),
    entry!("S3xZ5", ["S3xZ5"], 30, None, [Solvable], || {
        c::direct_product(&c::symmetric(3)?, &c::cyclic(5)?)
    }),
    entry!(
        "Z2^2xZ3^2",
        ["Z2^2xZ3^2"],
        36,
        None,
        [Nilpotent, NilpotentFamily],
        || { c::direct_product(&c::elementary_abelian(2, 2)?, &c::elementary_abelian(3, 2)?) }
    ),
    entry!(
        "Z2^2xZ3^2xZ5",
        ["Z2^2xZ3^2xZ5"],
        180,
        None,
        [Nilpotent, NilpotentFamily],
        || {
            let a =
                c::direct_product(&c::elementary_abelian(2, 2)?, &c::elementary_abelian(3, 2)?)?;
            c::direct_product(&a, &c::cyclic(5)?)
        }
    ),
    entry!(
        "Z2^2xZ3^2xZ5^2",
        ["Z2^2xZ3^2xZ5^2"],
        900,
        None,
        [Nilpotent, NilpotentFamily],
        || {
            let a =
                c::direct_product(&c::elementary_abelian(2, 2)?, &c::elementary_abelian(3, 2)?)?;
            c::direct_product(&a, &c::elementary_abelian(5, 2)?)
        }
    ),
    entry!(
        "Q8xZ3^2xZ5^2",
        ["Q8xZ3^2xZ5^2"],
        1800,
        None,
        [Nilpotent, NilpotentFamily],
        || {
            let a = c::direct_product(&c::quaternion8()?, &c::elementary_abelian(3, 2)?)?;
            c::direct_product(&a, &c::elementary_abelian(5, 2)?)
        }
    ),
    entry!(
        "Stab_A7({1,2,3})",
        ["Stab_A7({1,2,3})"],
        72,
        None,
        [Solvable, Case(5)],
        c::a7_set_stabilizer
    ),
    entry!(
        "2^2:D9",
        ["2^2:D9"],
        72,
        None,
        [Solvable, Case(5)],
        c::c2sq_d9
    ),
    entry!(
        "5^2:SL(2,3)",
        ["5^2:SL(2,3)"],
        600,
        None,
        [Solvable, Case(6)],
        c::c5sq_sl23
    ),
    entry!(
        "3^3:A4",
        ["3^3:A4"],
        324,
        None,
        [Solvable, Case(7)],
        c::c3cube_a4
    ),
    entry!(
        "(A4xA4):4",
        ["(A4xA4):4"],
        576,
        None,
        [Solvable, Case(8)],
        c::a4sq_c4
    ),
    entry!(
        "AGL(3,2)",
        ["AGL(3,2)", "2^3:GL(3,2)"],
        1344,
        None,
        [Case(10)],
        || c::agl(3, 2)
    ),
    entry!("2^4:A6", ["2^4:A6"], 5760, None, [Case(11)], c::c2four_a6),
    entry!(
        "4^2:SL(2,4)",
        ["4^2:SL(2,4)"],
        960,
        None,
        [Case(13)],
        || c::affine_sl2(4, false)
    ),
    entry!(
        "4^2:SigmaL(2,4)",
        ["4^2:SigmaL(2,4)"],
        1920,
        None,
        [Case(13)],
        || c::affine_sl2(4, true)
    ),
    entry!(
        "8^2:SL(2,8)",
        ["8^2:SL(2,8)"],
        32256,
        None,
        [Case(13)],
        || c::affine_sl2(8, false)
    ),
    entry!(
        "(5^2x7^2):3",
        ["(5^2x7^2):3"],
        3675,
        None,
        [Solvable],
        c::odd_oliver
    ),
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn default_entries() -> impl Iterator<Item = &'static Entry> {
    ENTRIES.iter().filter(|e| e.is_default())
}

pub fn lookup(id: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.id == id)
}

/// Catalog groups built once per process.
pub fn shared(id: &str) -> Result<Arc<FiniteGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<FiniteGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(id) {
        return Ok(g.clone());
    }
    let g = Arc::new(build(id)?);
    cache.lock().unwrap().insert(id.to_string(), g.clone());
    Ok(g)
}

/// Builds a group from a catalog id or constructor expression,
/// e.g. `S7`, `Alt(6)`, `PSL(2,7)`, `Z2^2xZ3`, `ElemAb(2,3)`.
pub fn build(expr: &str) -> Result<FiniteGroup> {
    let e = expr.trim();
    if let Some(entry) = lookup(e) {
        return entry.build();
    }
    let parts = split_product(e);
    if parts.len() > 1 {
        let mut g = build(parts[0])?;
        for p in &parts[1..] {
            g = c::direct_product(&g, &build(p)?)?;
        }
        return Ok(g.with_name(e));
    }
    Ok(atom(e)?.with_name(e))
}

fn split_product(e: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in e.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' if depth == 0 => {
                out.push(&e[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&e[start..]);
    out.into_iter().map(str::trim).collect()
}

fn args(e: &str, head: &str) -> Option<Vec<u64>> {
    let rest = e.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    rest.split(',').map(|s| s.trim().parse().ok()).collect()
}

fn atom(e: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownName(e.to_string());
    let small = |n: u64| -> Result<usize> {
        if n == 0 || n > 64 {
            Err(Error::Invalid(format!("{e}: parameter {n} out of range")))
        } else {
            Ok(n as usize)
        }
    };
    if let Some((base, k)) = e.split_once('^') {
        if let (Some(p), Ok(k)) = (
            base.strip_prefix('Z').and_then(|s| s.parse::<u64>().ok()),
            k.parse::<u64>(),
        ) {
            return c::elementary_abelian(small(p)?, small(k)?);
        }
    }
    for (prefixes, f) in [
        (
            &["S", "Sym"][..],
            c::symmetric as fn(usize) -> Result<FiniteGroup>,
        ),
        (&["A", "Alt"][..], c::alternating),
        (&["Z", "C", "Cyc"][..], c::cyclic),
        (&["D", "Dih"][..], c::dihedral),
    ] {
        for p in prefixes {
            if let Some(n) = e.strip_prefix(p).and_then(|s| s.parse::<u64>().ok()) {
                if (*p == "S" || *p == "A" || *p == "Sym" || *p == "Alt") && n > 10 {
                    return Err(Error::Invalid(format!("{e}: degree above 10")));
                }
                return f(small(n)?);
            }
            if let Some(a) = args(e, p) {
                if a.len() == 1 {
                    return f(small(a[0])?);
                }
            }
        }
    }
    if let Some(a) = args(e, "ElemAb") {
        if a.len() == 2 {
            return c::elementary_abelian(small(a[0])?, small(a[1])?);
        }
    }
    for (head, kind) in [
        ("SL", Linear::SL),
        ("GL", Linear::GL),
        ("PSL", Linear::PSL),
        ("PGL", Linear::PGL),
        ("PSigmaL", Linear::PSigmaL),
        ("PΣL", Linear::PSigmaL),
        ("PGammaL", Linear::PGammaL),
        ("PΓL", Linear::PGammaL),
        ("SigmaL", Linear::SigmaL),
        ("ΣL", Linear::SigmaL),
    ] {
        if let Some(a) = args(e, head) {
            if a.len() == 2 && (2..=3).contains(&a[0]) {
                return c::linear(kind, a[0] as usize, a[1]);
            }
        }
    }
    if let Some(a) = args(e, "AGL") {
        if a.len() == 2 {
            return c::agl(a[0] as usize, a[1]);
        }
    }
    let alias = ENTRIES.iter().find(|en| en.aliases.contains(&e));
    if let Some(en) = alias {
        return en.build();
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(build("S7").unwrap().order(), 5040);
        assert_eq!(build("Alt(6)").unwrap().order(), 360);
        assert_eq!(build("Z2^2xZ3").unwrap().order(), 12);
        assert_eq!(build("ElemAb(3,2)").unwrap().order(), 9);
        assert_eq!(build("PGL(2,7)").unwrap().order(), 336);
        assert_eq!(build("GL(3,2)").unwrap().order(), 168);
        assert!(matches!(build("Foo(3)"), Err(Error::UnknownName(_))));
        assert!(matches!(build("Sz(32)"), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn alternating_and_linear_fingerprints_agree() {
        assert_eq!(
            build("A5").unwrap().fingerprint(),
            build("PSL(2,5)").unwrap().fingerprint()
        );
        assert_eq!(
            build("A5").unwrap().fingerprint(),
            build("PSL(2,4)").unwrap().fingerprint()
        );
        assert_eq!(
            build("S5").unwrap().fingerprint(),
            build("PGL(2,5)").unwrap().fingerprint()
        );
        assert_eq!(
            build("A6").unwrap().fingerprint(),
            build("PSL(2,9)").unwrap().fingerprint()
        );
        assert_eq!(
            build("PSL(2,7)").unwrap().fingerprint(),
            build("PSL(3,2)").unwrap().fingerprint()
        );
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = entries().iter().map(|e| e.id).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}

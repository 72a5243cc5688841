//! Counting invariants: NPP elements, the Laitinen number `a_G`, the coset
//! invariant `b_{G/H}`, the rank formulas and the `Fix^H` pushforward.

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Quotient, Subgroup};
use crate::linalg::{self, Q};

/// Elements whose order has at least two distinct prime divisors.
pub fn npp(g: &FiniteGroup) -> Vec<usize> {
    let npp_order: Vec<bool> = g.real_classes().iter().map(|r| r.is_npp).collect();
    (0..g.order())
        .filter(|&e| npp_order[g.real_class_of(e)])
        .collect()
}

/// Sorted set of NPP element orders.
pub fn npp_orders(g: &FiniteGroup) -> Vec<u32> {
    let mut v: Vec<u32> = g
        .real_classes()
        .iter()
        .filter(|r| r.is_npp)
        .map(|r| r.order)
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Number of real conjugacy classes of NPP elements.
pub fn laitinen_number(g: &FiniteGroup) -> usize {
    g.real_classes().iter().filter(|r| r.is_npp).count()
}

fn require_normal(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if g.is_normal(h) {
        Ok(())
    } else {
        Err(Error::NotNormal)
    }
}

/// Real classes of `G/H` that contain a coset meeting `NPP(G)`.
pub fn b_invariant_in(g: &FiniteGroup, q: &Quotient) -> usize {
    let qg = &q.group;
    let mut marked = FixedBitSet::with_capacity(qg.real_classes().len());
    for r in g.real_classes().iter().filter(|r| r.is_npp) {
        for &c in &r.classes {
            for &x in &g.conjugacy_classes()[c].members {
                marked.insert(qg.real_class_of(q.project(x as usize)));
            }
        }
    }
    marked.count_ones(..)
}

/// `b_{G/H}` by marking cosets.
pub fn b_invariant(g: &FiniteGroup, h: &Subgroup) -> Result<usize> {
    let q = g.quotient(h)?;
    Ok(b_invariant_in(g, &q))
}

/// A class function on `G` given by one exact value per conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Q>,
}

impl ClassFunction {
    pub fn indicator(g: &FiniteGroup, classes: &[usize]) -> ClassFunction {
        let mut values = vec![Q::zero(); g.conjugacy_classes().len()];
        for &c in classes {
            values[c] = linalg::q(1);
        }
        ClassFunction { values }
    }

    pub fn trivial(g: &FiniteGroup) -> ClassFunction {
        ClassFunction {
            values: vec![linalg::q(1); g.conjugacy_classes().len()],
        }
    }

    pub fn regular(g: &FiniteGroup) -> ClassFunction {
        let mut values = vec![Q::zero(); g.conjugacy_classes().len()];
        values[g.class_of(0)] = linalg::q(g.order() as i64);
        ClassFunction { values }
    }

    pub fn at(&self, g: &FiniteGroup, e: usize) -> &Q {
        &self.values[g.class_of(e)]
    }
}

/// `(Fix^H f)(gH) = (1/|H|) Σ_{h∈H} f(gh)`, as a class function on `G/H`.
pub fn fix_pushforward_in(g: &FiniteGroup, q: &Quotient, f: &ClassFunction) -> ClassFunction {
    let qg = &q.group;
    let mut sums = vec![Q::zero(); qg.order()];
    for x in 0..g.order() {
        let v = f.at(g, x);
        if !v.is_zero() {
            sums[q.project(x)] += v;
        }
    }
    let h = linalg::q(q.kernel().order() as i64);
    let values = qg
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let v = &sums[c.rep] / &h;
            debug_assert!(c.members.iter().all(|&m| sums[m as usize] == sums[c.rep]));
            v
        })
        .collect();
    ClassFunction { values }
}

pub fn fix_pushforward(g: &FiniteGroup, h: &Subgroup, f: &ClassFunction) -> Result<ClassFunction> {
    let q = g.quotient(h)?;
    Ok(fix_pushforward_in(g, &q, f))
}

/// Matrix whose rows are `Fix^H` of each NPP real-class indicator, read on
/// the real classes of `G/H`.
pub fn fix_matrix_in(g: &FiniteGroup, q: &Quotient) -> Vec<Vec<Q>> {
    let qg = &q.group;
    g.real_classes()
        .iter()
        .filter(|r| r.is_npp)
        .map(|r| {
            let f = ClassFunction::indicator(g, &r.classes);
            let pushed = fix_pushforward_in(g, q, &f);
            qg.real_classes()
                .iter()
                .map(|rc| pushed.values[rc.classes[0]].clone())
                .collect()
        })
        .collect()
}

/// Rank of the `Fix^H` image of the NPP indicators.
pub fn fix_rank_oracle(g: &FiniteGroup, h: &Subgroup) -> Result<usize> {
    let q = g.quotient(h)?;
    Ok(linalg::rank(&fix_matrix_in(g, &q)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankKind {
    Io,
    IoGG,
    IoGH,
}

pub fn rank(g: &FiniteGroup, kind: RankKind, h: Option<&Subgroup>) -> Result<usize> {
    let a = laitinen_number(g);
    match kind {
        RankKind::Io => Ok(a),
        RankKind::IoGG => Ok(a - a.min(1)),
        RankKind::IoGH => {
            let h = h.ok_or_else(|| Error::Invalid("IO(G,H) needs a normal subgroup".into()))?;
            require_normal(g, h)?;
            Ok(a - b_invariant(g, h)?)
        }
    }
}

/// `(a_G − b_{G/G^nil}, min_p a_G − b_{G/O^p(G)})`.
pub fn lo_rank_bounds(g: &FiniteGroup) -> (usize, usize) {
    let a = laitinen_number(g);
    let lower = a - b_invariant(g, &g.nilpotent_residual()).expect("residuals are normal");
    let upper = g
        .prime_divisors()
        .iter()
        .map(|&p| a - b_invariant(g, &g.residual_p(p)).expect("residuals are normal"))
        .min()
        .unwrap_or(a);
    (lower, upper)
}

#[derive(Clone, Debug, Serialize)]
pub struct BRow {
    pub order: usize,
    pub b: usize,
    pub rank_io_gh: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub group: String,
    pub a_g: usize,
    pub npp_orders: Vec<u32>,
    pub b_table: Vec<BRow>,
    pub rank_io: usize,
    pub rank_io_gg: usize,
    pub lo_lower: usize,
    pub lo_upper: usize,
}

impl InvariantReport {
    pub fn compute(g: &FiniteGroup) -> InvariantReport {
        let a = laitinen_number(g);
        let b_table = g
            .normal_subgroups()
            .iter()
            .map(|h| {
                let b = b_invariant(g, h).expect("normal");
                BRow {
                    order: h.order(),
                    b,
                    rank_io_gh: a - b,
                }
            })
            .collect();
        let (lo_lower, lo_upper) = lo_rank_bounds(g);
        let report = InvariantReport {
            group: g.name().to_string(),
            a_g: a,
            npp_orders: npp_orders(g),
            b_table,
            rank_io: a,
            rank_io_gg: a - a.min(1),
            lo_lower,
            lo_upper,
        };
        debug_assert!(report.lo_lower <= report.lo_upper && report.lo_upper <= report.rank_io_gg);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn npp_counts() {
        let s5 = catalog::build("S5").unwrap();
        assert_eq!(npp(&s5).len(), 20);
        assert!(npp(&catalog::build("A6").unwrap()).is_empty());
        let z6 = catalog::build("Z6").unwrap();
        let n = npp(&z6);
        assert_eq!(n.len(), 2);
        assert!(n.iter().all(|&e| z6.element_order(e) == 6));
    }

    #[test]
    fn laitinen_numbers() {
        for (name, a) in [
            ("A7", 1),
            ("S6", 2),
            ("S7", 5),
            ("A8", 3),
            ("S5", 1),
            ("A5", 0),
        ] {
            assert_eq!(laitinen_number(&catalog::build(name).unwrap()), a, "{name}");
        }
    }

    #[test]
    fn coset_invariant() {
        let s6 = catalog::build("S6").unwrap();
        let a6 = s6.solvable_residual();
        assert_eq!(b_invariant(&s6, &a6).unwrap(), 1);
        assert_eq!(fix_rank_oracle(&s6, &a6).unwrap(), 1);
        assert_eq!(b_invariant(&s6, &s6.whole()).unwrap(), 1);
        assert_eq!(fix_rank_oracle(&s6, &s6.trivial_subgroup()).unwrap(), 2);
        let s7 = catalog::build("S7").unwrap();
        assert_eq!(b_invariant(&s7, &s7.solvable_residual()).unwrap(), 2);
        assert_eq!(
            rank(&s7, RankKind::IoGH, Some(&s7.solvable_residual())).unwrap(),
            3
        );
        assert_eq!(rank(&s7, RankKind::IoGG, None).unwrap(), 4);
    }

    #[test]
    fn pushforward_of_regular_and_trivial() {
        let s4 = catalog::build("S4").unwrap();
        let v4 = s4.fitting();
        let q = s4.quotient(&v4).unwrap();
        let reg = fix_pushforward_in(&s4, &q, &ClassFunction::regular(&s4));
        assert_eq!(reg, ClassFunction::regular(&q.group));
        let triv = fix_pushforward_in(&s4, &q, &ClassFunction::trivial(&s4));
        assert_eq!(triv, ClassFunction::trivial(&q.group));
    }

    #[test]
    fn lo_bounds() {
        assert_eq!(lo_rank_bounds(&catalog::build("S6").unwrap()), (1, 1));
        assert_eq!(lo_rank_bounds(&catalog::build("S7").unwrap()), (3, 3));
        assert_eq!(lo_rank_bounds(&catalog::build("Aut(A6)").unwrap()), (0, 0));
    }

    #[test]
    fn not_normal_is_rejected() {
        let s4 = catalog::build("S4").unwrap();
        let t = s4
            .find(&crate::Permutation::from_cycles(4, &[vec![0, 1]]).unwrap())
            .unwrap();
        let h = s4.subgroup(&[t]);
        assert!(matches!(b_invariant(&s4, &h), Err(Error::NotNormal)));
        assert!(matches!(
            rank(&s4, RankKind::IoGH, Some(&h)),
            Err(Error::NotNormal)
        ));
    }
}

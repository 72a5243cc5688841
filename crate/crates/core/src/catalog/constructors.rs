//! Group constructors: classical families, linear groups, products and affine extensions.

use crate::catalog::field::FiniteField;
use crate::catalog::matrix::{self, Mat, Semilinear};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{parse_cycles, Permutation};

fn cycle(degree: usize, pts: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = pts.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).unwrap()
}

fn make(name: &str, degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup> {
    FiniteGroup::new(name, degree, gens)
}

pub fn perms(degree: usize, gens: &[&str]) -> Result<Vec<Permutation>> {
    gens.iter().map(|s| parse_cycles(s, degree)).collect()
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let name = format!("S{n}");
    if n < 2 {
        return make(&name, n.max(1), vec![]);
    }
    make(&name, n, vec![cycle(n, [0, 1]), cycle(n, 0..n)])
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let name = format!("A{n}");
    if n < 3 {
        return make(&name, n.max(1), vec![]);
    }
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    make(&name, n, gens)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 1 {
        return make("Z1", 1, vec![]);
    }
    make(&format!("Z{n}"), n, vec![cycle(n, 0..n)])
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::Invalid("Dih(n) needs n ≥ 3".into()));
    }
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    make(
        &format!("D{n}"),
        n,
        vec![cycle(n, 0..n), Permutation::from_images(refl)?],
    )
}

/// `Z_p^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    let d = p * k;
    let gens = (0..k).map(|i| cycle(d, i * p..(i + 1) * p)).collect();
    make(&format!("Z{p}^{k}"), d, gens)
}

/// Quaternion group acting regularly on 8 points.
pub fn quaternion8() -> Result<FiniteGroup> {
    make(
        "Q8",
        8,
        perms(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])?,
    )
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (da, db) = (a.degree(), b.degree());
    let d = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.extend(d));
    }
    for g in b.generators() {
        let mut img: Vec<usize> = (0..da).collect();
        img.extend(g.images().iter().map(|&x| x as usize + da));
        gens.push(Permutation::from_images(img)?);
    }
    make(&format!("{}x{}", a.name(), b.name()), d, gens)
}

pub fn field(q: u64) -> Result<FiniteField> {
    FiniteField::new(q)
}

fn lin(ms: Vec<Mat>) -> Vec<Semilinear> {
    ms.into_iter().map(Semilinear::linear).collect()
}

fn frobenius(f: &FiniteField, n: usize) -> Semilinear {
    Semilinear {
        m: matrix::identity(n),
        frob: 1 % f.degree().max(1),
    }
}

/// Variants of the linear groups in dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linear {
    SL,
    GL,
    PSL,
    PGL,
    PSigmaL,
    PGammaL,
    SigmaL,
}

pub fn linear(kind: Linear, n: usize, q: u64) -> Result<FiniteGroup> {
    let f = field(q)?;
    let mut maps = lin(matrix::sl_generators(&f, n));
    if matches!(kind, Linear::GL | Linear::PGL | Linear::PGammaL) && q > 2 {
        maps.push(Semilinear::linear(matrix::gl_extra(&f, n)));
    }
    if matches!(kind, Linear::PSigmaL | Linear::PGammaL | Linear::SigmaL) && f.degree() > 1 {
        maps.push(frobenius(&f, n));
    }
    let (name, (degree, gens)) = match kind {
        Linear::SL => (format!("SL({n},{q})"), matrix::vector_action(&f, n, &maps)),
        Linear::GL => (format!("GL({n},{q})"), matrix::vector_action(&f, n, &maps)),
        Linear::SigmaL => (
            format!("SigmaL({n},{q})"),
            matrix::vector_action(&f, n, &maps),
        ),
        Linear::PSL => (
            format!("PSL({n},{q})"),
            matrix::projective_action(&f, n, &maps),
        ),
        Linear::PGL => (
            format!("PGL({n},{q})"),
            matrix::projective_action(&f, n, &maps),
        ),
        Linear::PSigmaL => (
            format!("PSigmaL({n},{q})"),
            matrix::projective_action(&f, n, &maps),
        ),
        Linear::PGammaL => (
            format!("PGammaL({n},{q})"),
            matrix::projective_action(&f, n, &maps),
        ),
    };
    make(&name, degree, gens)
}

/// `M₁₀ = ⟨PSL(2,9), diag(ω,1)∘σ⟩` on the projective line.
pub fn mathieu10() -> Result<FiniteGroup> {
    let f = field(9)?;
    let mut maps = lin(matrix::sl_generators(&f, 2));
    maps.push(Semilinear {
        m: matrix::diag(&[f.primitive(), 1]),
        frob: 1,
    });
    let (d, gens) = matrix::projective_action(&f, 2, &maps);
    make("M10", d, gens)
}

/// `PSL(3,4)` extended by a graph-field automorphism, on the 42 points and lines.
pub fn psl34_graph_field() -> Result<FiniteGroup> {
    let f = field(4)?;
    let (d, gens) = matrix::points_and_lines(&f, &matrix::sl_generators(&f, 3), true);
    make("PSL(3,4):u", d, gens)
}

/// `F_q^n ⋊ H` for a group `H` of semilinear maps.
pub fn affine(name: &str, q: u64, n: usize, maps: &[Semilinear]) -> Result<FiniteGroup> {
    let f = field(q)?;
    let (d, gens) = matrix::affine_action(&f, n, maps);
    make(name, d, gens)
}

pub fn agl(n: usize, q: u64) -> Result<FiniteGroup> {
    let f = field(q)?;
    let mut maps = lin(matrix::sl_generators(&f, n));
    if q > 2 {
        maps.push(Semilinear::linear(matrix::gl_extra(&f, n)));
    }
    affine(&format!("AGL({n},{q})"), q, n, &maps)
}

/// Linear maps of the given group, found by a breadth-first search over products.
fn find_in(
    f: &FiniteField,
    elems: &[Semilinear],
    pred: impl Fn(&Semilinear) -> bool,
) -> Option<Semilinear> {
    let _ = f;
    elems.iter().find(|m| pred(m)).cloned()
}

/// `SL(2,3)` inside `SL(2,p)` for `p ≡ ±1 mod 8` or `p = 5`: the normalizer of a quaternion subgroup.
pub fn sl23_in_sl2(p: u64) -> Result<Vec<Semilinear>> {
    let f = field(p)?;
    let m1 = f.neg(1);
    let elems = matrix::closure(&f, &lin(matrix::sl_generators(&f, 2)));
    let i = Semilinear::linear(vec![vec![0, 1], vec![m1, 0]]);
    let inv_i = Semilinear::linear(matrix::inverse(&f, &i.m));
    let conj = |x: &Semilinear, y: &Semilinear| {
        let yi = matrix::inverse(&f, &y.m);
        matrix::mat_mul(&f, &matrix::mat_mul(&f, &yi, &x.m), &y.m)
    };
    let j = find_in(&f, &elems, |y| {
        matrix::mat_order(&f, &y.m) == 4 && conj(&i, y) == inv_i.m
    })
    .ok_or_else(|| Error::Invalid("no quaternion pair".into()))?;
    let k = Semilinear::linear(matrix::mat_mul(&f, &i.m, &j.m));
    let q8 = matrix::closure(&f, &[i.clone(), j.clone()]);
    assert_eq!(q8.len(), 8);
    let w = find_in(&f, &elems, |y| {
        matrix::mat_order(&f, &y.m) == 3 && conj(&i, y) == j.m && conj(&j, y) == k.m
    })
    .or_else(|| {
        find_in(&f, &elems, |y| {
            matrix::mat_order(&f, &y.m) == 3
                && q8.iter().all(|x| q8.iter().any(|z| z.m == conj(x, y)))
        })
    })
    .ok_or_else(|| Error::Invalid("no element of order 3 normalizing Q8".into()))?;
    Ok(vec![i, j, w])
}

/// Binary octahedral group `N_{SL(2,7)}(Q₈)` as linear maps of `F₇²`.
pub fn binary_octahedral_maps() -> Result<Vec<Semilinear>> {
    let f = field(7)?;
    let base = sl23_in_sl2(7)?;
    let h = matrix::closure(&f, &base);
    assert_eq!(h.len(), 24);
    let elems = matrix::closure(&f, &lin(matrix::sl_generators(&f, 2)));
    let norm = |y: &Semilinear| {
        let yi = matrix::inverse(&f, &y.m);
        h.iter().all(|x| {
            let c = matrix::mat_mul(&f, &matrix::mat_mul(&f, &yi, &x.m), &y.m);
            h.iter().any(|z| z.m == c)
        })
    };
    let extra = elems
        .iter()
        .find(|y| !h.iter().any(|z| z.m == y.m) && norm(y))
        .cloned()
        .ok_or_else(|| Error::Invalid("SL(2,3) is self-normalizing".into()))?;
    let mut maps = base;
    maps.push(extra);
    Ok(maps)
}

pub fn binary_octahedral() -> Result<FiniteGroup> {
    let f = field(7)?;
    let (d, gens) = matrix::vector_action(&f, 2, &binary_octahedral_maps()?);
    make("2.S4", d, gens)
}

/// `C₅² ⋊ SL(2,3)` with `SL(2,3) ≤ SL(2,5)`.
pub fn c5sq_sl23() -> Result<FiniteGroup> {
    affine("5^2:SL(2,3)", 5, 2, &sl23_in_sl2(5)?)
}

/// `C₃³ ⋊ A₄` with `A₄` acting by monomial matrices.
pub fn c3cube_a4() -> Result<FiniteGroup> {
    let m1 = 2;
    let maps = vec![
        Semilinear::linear(matrix::diag(&[1, m1, m1])),
        Semilinear::linear(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]),
    ];
    affine("3^3:A4", 3, 3, &maps)
}

/// `C₃² ⋊ Q₈ ≅ PSU(3,2)`.
pub fn psu32() -> Result<FiniteGroup> {
    let maps = sl23_in_sl2(3)?;
    affine("PSU(3,2)", 3, 2, &maps[..2])
}

/// `C₃² ⋊ C₈ ≅ AGL(1,9)`.
pub fn agl19() -> Result<FiniteGroup> {
    let f = field(9)?;
    affine(
        "3^2:8",
        9,
        1,
        &[Semilinear::linear(vec![vec![f.primitive()]])],
    )
}

/// `F_q² ⋊ SL(2,q)`, with the Frobenius when `semilinear`.
pub fn affine_sl2(q: u64, semilinear: bool) -> Result<FiniteGroup> {
    let f = field(q)?;
    let mut maps = lin(matrix::sl_generators(&f, 2));
    if semilinear {
        maps.push(frobenius(&f, 2));
    }
    let name = if semilinear {
        format!("{q}^2:SigmaL(2,{q})")
    } else {
        format!("{q}^2:SL(2,{q})")
    };
    affine(&name, q, 2, &maps)
}

/// `C₂⁴ ⋊ A₆`, the derived subgroup of `F₂⁴ ⋊ Sp(4,2)`.
pub fn c2four_a6() -> Result<FiniteGroup> {
    let f = field(2)?;
    // symplectic form B(x,y) = x₀y₂ + x₂y₀ + x₁y₃ + x₃y₁
    let b = |x: &[u16], y: &[u16]| (x[0] * y[2] + x[2] * y[0] + x[1] * y[3] + x[3] * y[1]) % 2;
    let mut maps = Vec::new();
    for v in matrix::nonzero_vectors(&f, 4) {
        // x ↦ x + B(x,v)v has matrix rows e_i + B(e_i,v)v
        let m: Mat = (0..4)
            .map(|i| {
                let mut e = vec![0u16; 4];
                e[i] = 1;
                let c = b(&e, &v);
                (0..4).map(|j| (e[j] + c * v[j]) % 2).collect()
            })
            .collect();
        maps.push(Semilinear::linear(m));
    }
    let full = affine("2^4:Sp(4,2)", 2, 4, &maps)?;
    assert_eq!(full.order(), 11520);
    let d = full.derived_subgroup(&full.whole());
    Ok(full.subgroup_as_group(&d, "2^4:A6"))
}

/// `(C₅² × C₇²) ⋊ C₃`, an odd-order Oliver group, on 25 + 49 points.
pub fn odd_oliver() -> Result<FiniteGroup> {
    let f5 = field(5)?;
    let f7 = field(7)?;
    let (_, g5) =
        matrix::affine_action(&f5, 2, &[Semilinear::linear(vec![vec![0, 4], vec![1, 4]])]);
    let (_, g7) = matrix::affine_action(&f7, 2, &[Semilinear::linear(matrix::diag(&[2, 2]))]);
    let d = 25 + 49;
    let shift = |p: &Permutation| {
        let mut img: Vec<usize> = (0..25).collect();
        img.extend(p.images().iter().map(|&x| x as usize + 25));
        Permutation::from_images(img).unwrap()
    };
    let c3 = g5[0].extend(d).then(&shift(&g7[0]));
    let mut gens = vec![c3];
    gens.extend(g5[1..].iter().map(|p| p.extend(d)));
    gens.extend(g7[1..].iter().map(shift));
    make("(5^2x7^2):3", d, gens)
}

/// The stabilizer of `{1,2,3}` in `A₇`.
pub fn a7_set_stabilizer() -> Result<FiniteGroup> {
    make(
        "Stab_A7({1,2,3})",
        7,
        perms(7, &["(1 2 3)", "(4 5 6 7)(1 2)", "(4 5)(1 2)", "(4 5 6)"])?,
    )
}

/// `C₂² ⋊ D₉`, with `D₉` acting through `S₃ ≅ GL(2,2)`, on 4 + 9 points.
pub fn c2sq_d9() -> Result<FiniteGroup> {
    make(
        "2^2:D9",
        13,
        perms(
            13,
            &[
                "(1 2)(3 4)",
                "(2 3 4)(5 6 7 8 9 10 11 12 13)",
                "(3 4)(6 13)(7 12)(8 11)(9 10)",
            ],
        )?,
    )
}

/// `(A₄ × A₄) ⋊ C₄`.
pub fn a4sq_c4() -> Result<FiniteGroup> {
    make(
        "(A4xA4):4",
        8,
        perms(
            8,
            &[
                "(1 2 3)",
                "(2 3 4)",
                "(5 6 7)",
                "(6 7 8)",
                "(1 5 2 6)(3 7)(4 8)",
            ],
        )?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_orders() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(cyclic(8).unwrap().order(), 8);
        assert_eq!(dihedral(6).unwrap().order(), 12);
        assert_eq!(elementary_abelian(2, 3).unwrap().order(), 8);
        assert_eq!(quaternion8().unwrap().order(), 8);
        let p = direct_product(&alternating(5).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(p.order(), 180);
    }

    #[test]
    fn linear_orders() {
        assert_eq!(linear(Linear::PSL, 2, 7).unwrap().order(), 168);
        assert_eq!(linear(Linear::PSL, 2, 7).unwrap().degree(), 8);
        assert_eq!(linear(Linear::PGL, 2, 5).unwrap().order(), 120);
        assert_eq!(linear(Linear::PSigmaL, 2, 8).unwrap().order(), 1512);
        assert_eq!(linear(Linear::PGammaL, 2, 9).unwrap().order(), 1440);
        assert_eq!(linear(Linear::SL, 2, 3).unwrap().order(), 24);
        assert_eq!(linear(Linear::PSL, 3, 3).unwrap().order(), 5616);
        assert_eq!(mathieu10().unwrap().order(), 720);
    }

    #[test]
    fn solvable_constructions() {
        assert_eq!(c5sq_sl23().unwrap().order(), 600);
        assert_eq!(c3cube_a4().unwrap().order(), 324);
        assert_eq!(psu32().unwrap().order(), 72);
        assert_eq!(agl19().unwrap().order(), 72);
        assert_eq!(affine_sl2(4, false).unwrap().order(), 960);
        assert_eq!(affine_sl2(4, true).unwrap().order(), 1920);
        assert_eq!(agl(3, 2).unwrap().order(), 1344);
        assert_eq!(a7_set_stabilizer().unwrap().order(), 72);
        assert_eq!(c2sq_d9().unwrap().order(), 72);
        assert_eq!(a4sq_c4().unwrap().order(), 576);
        assert_eq!(odd_oliver().unwrap().order(), 3675);
        assert_eq!(binary_octahedral().unwrap().order(), 48);
    }
}

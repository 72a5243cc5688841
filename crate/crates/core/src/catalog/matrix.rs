//! Matrix and semilinear groups over small fields, turned into permutation actions.
//!
//! Vectors are rows; a [`Semilinear`] map sends `v` to `σᵉ(v)·M` where `σ` is the Frobenius.
//! Point sets are sorted lexicographically on the integer encoding of coordinates.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::catalog::field::FiniteField;
use crate::error::Result;
use crate::perm::Permutation;

pub type Mat = Vec<Vec<u16>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Semilinear {
    pub m: Mat,
    pub frob: u32,
}

impl Semilinear {
    pub fn linear(m: Mat) -> Self {
        Semilinear { m, frob: 0 }
    }

    pub fn apply(&self, f: &FiniteField, v: &[u16]) -> Vec<u16> {
        let mut w: Vec<u16> = v.to_vec();
        for _ in 0..self.frob {
            w = w.iter().map(|&x| f.frobenius(x)).collect();
        }
        vec_mat(f, &w, &self.m)
    }
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| u16::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(f: &FiniteField, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(0u16, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn vec_mat(f: &FiniteField, v: &[u16], m: &Mat) -> Vec<u16> {
    let n = m.len();
    (0..n)
        .map(|j| (0..n).fold(0u16, |acc, k| f.add(acc, f.mul(v[k], m[k][j]))))
        .collect()
}

pub fn det(f: &FiniteField, m: &Mat) -> u16 {
    let n = m.len();
    let mut a = m.clone();
    let mut d = 1u16;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            d = f.neg(d);
        }
        d = f.mul(d, a[col][col]);
        let inv = f.inv(a[col][col]);
        for r in col + 1..n {
            let factor = f.mul(a[r][col], inv);
            for c in col..n {
                let t = f.mul(factor, a[col][c]);
                a[r][c] = f.sub(a[r][c], t);
            }
        }
    }
    d
}

pub fn transpose(m: &Mat) -> Mat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn inverse(f: &FiniteField, m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Vec<Vec<u16>> = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().chain(&e).copied().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != 0)
            .expect("matrix is invertible");
        a.swap(piv, col);
        let inv = f.inv(a[col][col]);
        for c in 0..2 * n {
            a[col][c] = f.mul(a[col][c], inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..2 * n {
                    let t = f.mul(factor, a[col][c]);
                    a[r][c] = f.sub(a[r][c], t);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn diag(entries: &[u16]) -> Mat {
    let n = entries.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { entries[i] } else { 0 })
                .collect()
        })
        .collect()
}

/// `I + a·E_ij`.
pub fn transvection(n: usize, i: usize, j: usize, a: u16) -> Mat {
    let mut m = identity(n);
    m[i][j] = a;
    m
}

/// Generators of `SL(n, q)`: elementary transvections with entries in an `F_p`-basis.
pub fn sl_generators(f: &FiniteField, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &a in &f.prime_basis() {
                    gens.push(transvection(n, i, j, a));
                }
            }
        }
    }
    gens
}

/// `diag(ω, 1, …, 1)`, which with `SL` generates `GL`.
pub fn gl_extra(f: &FiniteField, n: usize) -> Mat {
    let mut d = vec![1u16; n];
    d[0] = f.primitive();
    diag(&d)
}

pub fn all_vectors(f: &FiniteField, n: usize) -> Vec<Vec<u16>> {
    let q = f.size();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![0u16; n];
            for c in v.iter_mut().rev() {
                *c = (x % q) as u16;
                x /= q;
            }
            v
        })
        .collect()
}

pub fn nonzero_vectors(f: &FiniteField, n: usize) -> Vec<Vec<u16>> {
    all_vectors(f, n)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalize(f: &FiniteField, v: &[u16]) -> Vec<u16> {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    let inv = f.inv(lead);
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

pub fn projective_points(f: &FiniteField, n: usize) -> Vec<Vec<u16>> {
    nonzero_vectors(f, n)
        .into_iter()
        .filter(|v| normalize(f, v) == *v)
        .collect()
}

fn action(points: &[Vec<u16>], map: impl Fn(&[u16]) -> Vec<u16>) -> Permutation {
    let index: HashMap<&[u16], usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let images = points.iter().map(|p| index[map(p).as_slice()]).collect();
    Permutation::from_images(images).expect("semilinear maps permute the point set")
}

/// Action on projective points `P^{n-1}(F_q)`.
pub fn projective_action(
    f: &FiniteField,
    n: usize,
    maps: &[Semilinear],
) -> (usize, Vec<Permutation>) {
    let pts = projective_points(f, n);
    let gens = maps
        .iter()
        .map(|s| action(&pts, |v| normalize(f, &s.apply(f, v))))
        .collect();
    (pts.len(), gens)
}

/// Action on the nonzero vectors of `F_q^n`.
pub fn vector_action(f: &FiniteField, n: usize, maps: &[Semilinear]) -> (usize, Vec<Permutation>) {
    let pts = nonzero_vectors(f, n);
    let gens = maps
        .iter()
        .map(|s| action(&pts, |v| s.apply(f, v)))
        .collect();
    (pts.len(), gens)
}

/// Affine action `v ↦ σᵉ(v)M` plus translations by `F_p`-multiples of the basis vectors.
pub fn affine_action(f: &FiniteField, n: usize, maps: &[Semilinear]) -> (usize, Vec<Permutation>) {
    let pts = all_vectors(f, n);
    let mut gens: Vec<Permutation> = maps
        .iter()
        .map(|s| action(&pts, |v| s.apply(f, v)))
        .collect();
    for i in 0..n {
        for &b in &f.prime_basis() {
            gens.push(action(&pts, |v| {
                let mut w = v.to_vec();
                w[i] = f.add(w[i], b);
                w
            }));
        }
    }
    (pts.len(), gens)
}

/// Action of `PΓL(3, q)`-type maps on points and lines of the plane, optionally with
/// the polarity-type map sending point `x` to line `σ(x)` and line `ℓ` to point `σ(ℓ)`.
pub fn points_and_lines(
    f: &FiniteField,
    maps: &[Mat],
    with_polarity: bool,
) -> (usize, Vec<Permutation>) {
    let pts = projective_points(f, 3);
    let n = pts.len();
    let mut objects: Vec<Vec<u16>> = Vec::with_capacity(2 * n);
    // tag 0 = point, 1 = line
    for p in &pts {
        let mut v = vec![0u16];
        v.extend(p);
        objects.push(v);
    }
    for l in &pts {
        let mut v = vec![1u16];
        v.extend(l);
        objects.push(v);
    }
    let mut gens = Vec::new();
    for m in maps {
        let dual = transpose(&inverse(f, m));
        gens.push(action(&objects, |o| {
            let body = &o[1..];
            let img = if o[0] == 0 {
                vec_mat(f, body, m)
            } else {
                vec_mat(f, body, &dual)
            };
            let mut r = vec![o[0]];
            r.extend(normalize(f, &img));
            r
        }));
    }
    if with_polarity {
        gens.push(action(&objects, |o| {
            let mut r = vec![1 - o[0]];
            r.extend(o[1..].iter().map(|&x| f.frobenius(x)));
            r
        }));
    }
    (2 * n, gens)
}

/// All products of the generating maps (breadth-first).
pub fn closure(f: &FiniteField, gens: &[Semilinear]) -> Vec<Semilinear> {
    let n = gens[0].m.len();
    let k = f.degree();
    let id = Semilinear::linear(identity(n));
    let mut seen: HashSet<Semilinear> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(f, &x, g, k);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// `x` followed by `g`: `v ↦ σ^{eg}(σ^{ex}(v)Mx)Mg`.
pub fn compose(f: &FiniteField, x: &Semilinear, g: &Semilinear, k: u32) -> Semilinear {
    let mut mx = x.m.clone();
    for _ in 0..g.frob {
        mx = mx
            .iter()
            .map(|r| r.iter().map(|&a| f.frobenius(a)).collect())
            .collect();
    }
    Semilinear {
        m: mat_mul(f, &mx, &g.m),
        frob: (x.frob + g.frob) % k.max(1),
    }
}

pub fn mat_order(f: &FiniteField, m: &Mat) -> usize {
    let id = identity(m.len());
    let mut x = m.clone();
    let mut k = 1;
    while x != id {
        x = mat_mul(f, &x, m);
        k += 1;
    }
    k
}

pub fn field(q: u64) -> Result<FiniteField> {
    FiniteField::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn inverse_and_det() {
        let f = FiniteField::new(9).unwrap();
        let m = vec![vec![1, 2], vec![3, 5]];
        let prod = mat_mul(&f, &m, &inverse(&f, &m));
        assert_eq!(prod, identity(2));
        let d = det(&f, &m);
        assert_eq!(d, f.sub(f.mul(1, 5), f.mul(2, 3)));
    }

    #[test]
    fn sl_orders() {
        for (q, order) in [(2u64, 6usize), (3, 24), (4, 60), (5, 120)] {
            let f = FiniteField::new(q).unwrap();
            let maps: Vec<Semilinear> = sl_generators(&f, 2)
                .into_iter()
                .map(Semilinear::linear)
                .collect();
            assert_eq!(closure(&f, &maps).len(), order);
            let (d, gens) = vector_action(&f, 2, &maps);
            assert_eq!(FiniteGroup::new("SL", d, gens).unwrap().order(), order);
        }
    }

    #[test]
    fn projective_point_counts() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(projective_points(&f, 2).len(), 5);
        assert_eq!(projective_points(&f, 3).len(), 21);
        assert_eq!(projective_points(&f, 2)[0], vec![0, 1]);
    }
}

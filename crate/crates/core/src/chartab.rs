//! Complex character tables by Dixon's modular method, Frobenius–Schur
//! indicators and the real irreducible characters.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::util::{is_prime, prime_divisors};

pub const TABLE_ORDER_CAP: usize = 10_080;
pub const TABLE_CLASS_CAP: usize = 120;
const TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: String,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<u32>,
    /// `chars[i][j]` is the value of the i-th irreducible on class j.
    pub chars: Vec<Vec<Complex64>>,
    pub indicators: Vec<i32>,
    /// The modular prime used.
    pub prime: u64,
    square_class: Vec<usize>,
    order: usize,
}

/// A real irreducible character.
#[derive(Clone, Debug)]
pub struct RealIrreducible {
    pub values: Vec<f64>,
    /// Values as rationals with denominator at most `10⁶`.
    pub exact: Vec<Rational64>,
    /// Largest distance between `values` and `exact`.
    pub residual: f64,
    pub indicator: i32,
    /// Complex irreducibles it is built from.
    pub sources: Vec<usize>,
}

impl RealIrreducible {
    pub fn degree(&self) -> usize {
        self.values[0].round() as usize
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn choose_prime(exponent: u64, order: usize) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut p = exponent + 1;
    while !(is_prime(p) && p as f64 > bound) {
        p += exponent;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("Fₚ* is cyclic")
}

/// Row-reduces vectors mod p, returning a basis in reduced echelon form.
fn echelon(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = mod_inv(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn pivots(basis: &[Vec<u64>]) -> Vec<usize> {
    basis
        .iter()
        .map(|v| v.iter().position(|&x| x != 0).unwrap())
        .collect()
}

/// Null space of a square matrix mod p as row vectors `x` with `A x = 0`.
fn kernel(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = a.len();
    let red = echelon(a.to_vec(), p);
    let piv = pivots(&red);
    (0..k)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![0u64; k];
            v[f] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = (p - red[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial mod p, lowest degree first, via Hessenberg form.
fn char_poly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = mod_inv(h[m][m - 1], p);
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + (p - u) * h[m][j]) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + (p - h[k][k]) * c) % p;
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = t * h[i + 1][i] % p;
            let coef = t * h[i][k] % p;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + (p - coef) * c) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = (acc * x + c) % p;
            }
            acc == 0
        })
        .collect()
}

struct Dixon<'a> {
    g: &'a FiniteGroup,
    p: u64,
    matrices: Vec<Option<Vec<Vec<u64>>>>,
}

impl Dixon<'_> {
    /// `(M_i)_{j,l} = #{x ∈ C_i : x⁻¹ z_l ∈ C_j}`.
    fn matrix(&mut self, i: usize) -> &Vec<Vec<u64>> {
        if self.matrices[i].is_none() {
            let classes = self.g.conjugacy_classes();
            let r = classes.len();
            let mut m = vec![vec![0u64; r]; r];
            for &x in &classes[i].members {
                let xi = self.g.inv(x as usize);
                for (l, c) in classes.iter().enumerate() {
                    let j = self.g.class_of(self.g.mul(xi, c.rep));
                    m[j][l] += 1;
                }
            }
            for row in m.iter_mut() {
                for v in row.iter_mut() {
                    *v %= self.p;
                }
            }
            self.matrices[i] = Some(m);
        }
        self.matrices[i].as_ref().unwrap()
    }

    /// Splits the space into common eigenlines of the class matrices.
    fn eigenlines(&mut self) -> Result<Vec<Vec<u64>>> {
        let r = self.g.conjugacy_classes().len();
        let p = self.p;
        let mut done: Vec<Vec<u64>> = Vec::new();
        let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect()];
        for i in 1..r {
            if pending.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for basis in pending {
                if basis.len() == 1 {
                    done.push(basis.into_iter().next().unwrap());
                    continue;
                }
                let piv = pivots(&basis);
                let k = basis.len();
                let m = self.matrix(i);
                let images: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|b| {
                        (0..r)
                            .map(|row| {
                                m[row]
                                    .iter()
                                    .zip(b)
                                    .fold(0, |acc, (x, y)| (acc + x * y) % p)
                            })
                            .collect()
                    })
                    .collect();
                // a[c][a] is the coordinate along basis c of M b_a.
                let a: Vec<Vec<u64>> = (0..k)
                    .map(|c| (0..k).map(|col| images[col][piv[c]]).collect())
                    .collect();
                let mut total = 0;
                for lambda in roots(&char_poly(&a, p), p) {
                    let shifted: Vec<Vec<u64>> = (0..k)
                        .map(|c| {
                            (0..k)
                                .map(|col| (a[c][col] + if c == col { p - lambda } else { 0 }) % p)
                                .collect()
                        })
                        .collect();
                    let xs = kernel(&shifted, p);
                    total += xs.len();
                    let vecs: Vec<Vec<u64>> = xs
                        .iter()
                        .map(|x| {
                            (0..r)
                                .map(|j| {
                                    basis
                                        .iter()
                                        .zip(x)
                                        .fold(0, |acc, (b, c)| (acc + b[j] * c) % p)
                                })
                                .collect()
                        })
                        .collect();
                    next.push(echelon(vecs, p));
                }
                if total != k {
                    return Err(Error::NumericalFailure(format!(
                        "class matrix {i} is not diagonalizable mod {p}"
                    )));
                }
            }
            pending = next;
        }
        for basis in pending {
            if basis.len() != 1 {
                return Err(Error::NumericalFailure(
                    "class matrices did not separate characters".into(),
                ));
            }
            done.extend(basis);
        }
        Ok(done)
    }
}

fn approximate(x: f64, max_den: i64) -> Rational64 {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i64;
        let (h2, k2) = (
            ai.saturating_mul(h1).saturating_add(h0),
            ai.saturating_mul(k1).saturating_add(k0),
        );
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    Rational64::new(h1, k1)
}

impl CharacterTable {
    pub fn compute(g: &FiniteGroup) -> Result<CharacterTable> {
        Self::compute_with_cap(g, TABLE_ORDER_CAP)
    }

    pub fn compute_with_cap(g: &FiniteGroup, cap: usize) -> Result<CharacterTable> {
        let classes = g.conjugacy_classes();
        let r = classes.len();
        if g.order() > cap || r > TABLE_CLASS_CAP {
            return Err(Error::CapExceeded {
                name: g.name().to_string(),
                cap,
            });
        }
        let n = g.order();
        let exponent = classes
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&u64::from(c.order)));
        let p = choose_prime(exponent, n);
        let z = mod_pow(primitive_root(p), (p - 1) / exponent, p);
        let mut dixon = Dixon {
            g,
            p,
            matrices: vec![None; r],
        };
        let lines = dixon.eigenlines()?;
        let id = g.class_of(0);
        let inverse: Vec<usize> = classes.iter().map(|c| c.inverse).collect();
        let power: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                (0..c.order as u64)
                    .map(|k| g.class_of(g.pow(c.rep, k)))
                    .collect()
            })
            .collect();
        let max_degree = (n as f64).sqrt().floor() as u64;
        let mut chars = Vec::with_capacity(r);
        for v in lines {
            let scale = mod_inv(v[id], p);
            let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
            let mut s = 0u64;
            for j in 0..r {
                s = (s + omega[j] * omega[inverse[j]] % p * mod_inv(classes[j].size as u64 % p, p))
                    % p;
            }
            let d2 = (n as u64 % p) * mod_inv(s, p) % p;
            let d = (1..=max_degree)
                .find(|&d| d * d % p == d2)
                .ok_or_else(|| Error::NumericalFailure("no integral degree".into()))?;
            let modular: Vec<u64> = (0..r)
                .map(|j| omega[j] * d % p * mod_inv(classes[j].size as u64 % p, p) % p)
                .collect();
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let o = classes[j].order as u64;
                let zo = mod_pow(z, exponent / o, p);
                let inv_o = mod_inv(o % p, p);
                let mut value = Complex64::new(0.0, 0.0);
                let mut total = 0u64;
                for s in 0..o {
                    let mut m = 0u64;
                    for k in 0..o {
                        let w = mod_pow(zo, (o - (s * k) % o) % o, p);
                        m = (m + modular[power[j][k as usize]] * w) % p;
                    }
                    m = m * inv_o % p;
                    if m > d {
                        return Err(Error::NumericalFailure(format!(
                            "eigenvalue multiplicity {m} exceeds degree {d}"
                        )));
                    }
                    total += m;
                    value += Complex64::from_polar(m as f64, 2.0 * PI * s as f64 / o as f64);
                }
                if total != d {
                    return Err(Error::NumericalFailure(
                        "eigenvalue multiplicities do not sum to the degree".into(),
                    ));
                }
                row.push(value);
            }
            chars.push(row);
        }
        let key = |row: &Vec<Complex64>| -> Vec<i64> {
            let mut k = vec![row[id].re.round() as i64];
            k.extend(
                row.iter()
                    .flat_map(|c| [(-c.re * 1e6).round() as i64, (-c.im * 1e6).round() as i64]),
            );
            k
        };
        chars.sort_by_key(|a| key(a));
        let square_class: Vec<usize> = classes
            .iter()
            .map(|c| g.class_of(g.mul(c.rep, c.rep)))
            .collect();
        let mut table = CharacterTable {
            group: g.name().to_string(),
            class_sizes: classes.iter().map(|c| c.size).collect(),
            class_orders: classes.iter().map(|c| c.order).collect(),
            chars,
            indicators: Vec::new(),
            prime: p,
            square_class,
            order: n,
        };
        table.check_orthogonality()?;
        table.indicators = (0..r)
            .map(|i| {
                let nu = table.frobenius_schur(&table.chars[i]);
                let k = nu.re.round();
                if (nu.re - k).abs() > 1e-6 || nu.im.abs() > 1e-6 || !(-1.0..=1.0).contains(&k) {
                    Err(Error::NumericalFailure(format!(
                        "indicator {nu} of an irreducible"
                    )))
                } else {
                    Ok(k as i32)
                }
            })
            .collect::<Result<_>>()?;
        Ok(table)
    }

    fn check_orthogonality(&self) -> Result<()> {
        let degrees: usize = self.degrees().iter().map(|d| d * d).sum();
        if degrees != self.order {
            return Err(Error::NumericalFailure(format!(
                "Σχ(1)² = {degrees} ≠ {}",
                self.order
            )));
        }
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                let ip = self.inner(a, b);
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip.re - expected).abs() > TOL || ip.im.abs() > TOL {
                    return Err(Error::NumericalFailure(format!("⟨χ{i}, χ{j}⟩ = {ip}")));
                }
            }
        }
        Ok(())
    }

    /// `(1/|G|) Σ_k |C_k| a(g_k) conj(b(g_k))`.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 = a
            .iter()
            .zip(b)
            .zip(&self.class_sizes)
            .map(|((x, y), &n)| x * y.conj() * n as f64)
            .sum();
        s / self.order as f64
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.chars
            .iter()
            .map(|c| c[0].re.round() as usize)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// `ν(χ) = (1/|G|) Σ_g χ(g²)`.
    pub fn frobenius_schur(&self, chi: &[Complex64]) -> Complex64 {
        let s: Complex64 = self
            .square_class
            .iter()
            .zip(&self.class_sizes)
            .map(|(&sq, &n)| chi[sq] * n as f64)
            .sum();
        s / self.order as f64
    }

    pub fn real_basis(&self) -> Result<Vec<RealIrreducible>> {
        let mut used = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let nu = self.indicators[i];
            let chi = &self.chars[i];
            let (complex, sources): (Vec<Complex64>, Vec<usize>) = match nu {
                1 => (chi.clone(), vec![i]),
                -1 => (chi.iter().map(|c| c * 2.0).collect(), vec![i]),
                _ => {
                    let j = (0..self.len())
                        .find(|&j| {
                            !used[j]
                                && chi
                                    .iter()
                                    .zip(&self.chars[j])
                                    .all(|(a, b)| (a.conj() - b).norm() < 1e-6)
                        })
                        .ok_or_else(|| {
                            Error::NumericalFailure(
                                "complex character without its conjugate".into(),
                            )
                        })?;
                    used[j] = true;
                    (
                        chi.iter().zip(&self.chars[j]).map(|(a, b)| a + b).collect(),
                        vec![i, j],
                    )
                }
            };
            if complex.iter().any(|c| c.im.abs() > TOL) {
                return Err(Error::NumericalFailure(
                    "real character with imaginary values".into(),
                ));
            }
            let values: Vec<f64> = complex.iter().map(|c| c.re).collect();
            let exact: Vec<Rational64> =
                values.iter().map(|&v| approximate(v, 1_000_000)).collect();
            let residual = values
                .iter()
                .zip(&exact)
                .map(|(v, e)| (v - *e.numer() as f64 / *e.denom() as f64).abs())
                .fold(0.0, f64::max);
            out.push(RealIrreducible {
                values,
                exact,
                residual,
                indicator: nu,
                sources,
            });
        }
        Ok(out)
    }

    /// Tab-separated table: one row per character, one column per class.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("char\tnu");
        for (j, (size, ord)) in self.class_sizes.iter().zip(&self.class_orders).enumerate() {
            write!(s, "\tC{j}[{ord};{size}]").unwrap();
        }
        s.push('\n');
        for (i, row) in self.chars.iter().enumerate() {
            write!(s, "X{i}\t{}", self.indicators[i]).unwrap();
            for c in row {
                let re = if c.re.abs() < 5e-7 { 0.0 } else { c.re };
                if c.im.abs() < 5e-7 {
                    write!(s, "\t{re:.6}").unwrap();
                } else {
                    write!(s, "\t{re:.6}{:+.6}i", c.im).unwrap();
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Number of elements of `h` in each conjugacy class of `g`.
pub fn class_counts(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut counts = vec![0; g.conjugacy_classes().len()];
    for x in h.elements() {
        counts[g.class_of(x)] += 1;
    }
    counts
}

/// `(1/|H|) Σ_{h∈H} χ(h)` from class counts, rounded; errors if not integral.
pub fn fixed_dim(values: &[f64], counts: &[usize]) -> Result<i64> {
    let total: usize = counts.iter().sum();
    let s: f64 = values
        .iter()
        .zip(counts)
        .map(|(v, &c)| v * c as f64)
        .sum::<f64>()
        / total as f64;
    let k = s.round();
    if (s - k).abs() > 1e-6 {
        return Err(Error::NumericalFailure(format!(
            "fixed-space dimension {s} is not an integer"
        )));
    }
    Ok(k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn table(name: &str) -> CharacterTable {
        CharacterTable::compute(&catalog::build(name).unwrap()).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(table("S3").degrees(), vec![1, 1, 2]);
        assert_eq!(table("A5").degrees(), vec![1, 3, 3, 4, 5]);
        let z4 = table("Z4");
        assert_eq!(z4.degrees(), vec![1; 4]);
        for row in &z4.chars {
            for c in row {
                assert!((c.norm() - 1.0).abs() < 1e-9);
                assert!((c.powu(4) - 1.0).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn indicators() {
        let q8 = table("Q8");
        let two = q8.degrees().iter().position(|&d| d == 2).unwrap();
        assert_eq!(q8.indicators[two], -1);
        let z3 = table("Z3");
        assert_eq!(z3.indicators, vec![1, 0, 0]);
        assert_eq!(
            q8.real_basis()
                .unwrap()
                .iter()
                .map(|r| r.degree())
                .collect::<Vec<_>>(),
            vec![1, 1, 1, 1, 4]
        );
        assert_eq!(
            z3.real_basis()
                .unwrap()
                .iter()
                .map(|r| r.degree())
                .collect::<Vec<_>>(),
            vec![1, 2]
        );
    }

    #[test]
    fn char_poly_of_companion() {
        // x² − 3x + 2 over F₇
        let a = vec![vec![0, 5], vec![1, 3]];
        assert_eq!(char_poly(&a, 7), vec![2, 4, 1]);
        assert_eq!(roots(&char_poly(&a, 7), 7), vec![1, 2]);
    }

    #[test]
    fn rational_approximation() {
        assert_eq!(approximate(0.5, 1000), Rational64::new(1, 2));
        assert_eq!(approximate(-1.0, 1000), Rational64::from_integer(-1));
        assert_eq!(
            approximate(((5f64).sqrt() - 1.0) / 2.0, 10),
            Rational64::new(5, 8)
        );
    }
}

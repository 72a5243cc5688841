//! Real `G`-modules, held as characters and, where determinants are needed,
//! as tuples of orthogonal generator matrices.

use std::collections::HashSet;
use std::f64::consts::PI;

use fixedbitset::FixedBitSet;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chartab::{class_counts, fixed_dim};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, q};
use crate::predicates::{pair_parity, prime_power_subgroups, proper_pairs};
use crate::util::{is_prime, is_prime_power_or_one};

const CHAR_TOL: f64 = 1e-6;
const MATRIX_TOL: f64 = 1e-8;

/// Character of a real module, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealModuleChar {
    pub values: Vec<f64>,
    identity_class: usize,
}

impl RealModuleChar {
    pub fn new(g: &FiniteGroup, values: Vec<f64>) -> Result<RealModuleChar> {
        let classes = g.conjugacy_classes();
        if values.len() != classes.len() {
            return Err(Error::Invalid(format!(
                "{} values for {} classes",
                values.len(),
                classes.len()
            )));
        }
        for (c, class) in classes.iter().enumerate() {
            if (values[c] - values[class.inverse]).abs() > CHAR_TOL {
                return Err(Error::Invalid("character is not real".into()));
            }
        }
        Ok(RealModuleChar {
            values,
            identity_class: g.class_of(0),
        })
    }

    pub fn zero(g: &FiniteGroup) -> RealModuleChar {
        RealModuleChar {
            values: vec![0.0; g.conjugacy_classes().len()],
            identity_class: g.class_of(0),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> RealModuleChar {
        RealModuleChar {
            values: vec![1.0; g.conjugacy_classes().len()],
            identity_class: g.class_of(0),
        }
    }

    pub fn dim(&self) -> i64 {
        self.values[self.identity_class].round() as i64
    }

    pub fn at(&self, g: &FiniteGroup, e: usize) -> f64 {
        self.values[g.class_of(e)]
    }

    pub fn add(&self, other: &RealModuleChar) -> RealModuleChar {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        RealModuleChar {
            values,
            identity_class: self.identity_class,
        }
    }

    pub fn scaled(&self, k: f64) -> RealModuleChar {
        RealModuleChar {
            values: self.values.iter().map(|a| a * k).collect(),
            identity_class: self.identity_class,
        }
    }

    /// Every fixed dimension over `subgroups` is a nonnegative integer.
    pub fn check_genuine(&self, g: &FiniteGroup, subgroups: &[Subgroup]) -> Result<()> {
        for h in subgroups {
            let d = dim_fixed(g, self, h)?;
            if d < 0 {
                return Err(Error::NumericalFailure(format!(
                    "negative fixed dimension {d} on |H| = {}",
                    h.order()
                )));
            }
        }
        Ok(())
    }

    pub fn approx_eq(&self, other: &RealModuleChar) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| (a - b).abs() <= CHAR_TOL)
    }
}

/// A formal difference `U − V`.
#[derive(Clone, Debug, Serialize)]
pub struct VirtualCharacter {
    pub plus: RealModuleChar,
    pub minus: RealModuleChar,
    pub provenance: String,
}

impl VirtualCharacter {
    pub fn new(
        plus: RealModuleChar,
        minus: RealModuleChar,
        provenance: impl Into<String>,
    ) -> VirtualCharacter {
        VirtualCharacter {
            plus,
            minus,
            provenance: provenance.into(),
        }
    }

    pub fn net(&self) -> Vec<f64> {
        self.plus
            .values
            .iter()
            .zip(&self.minus.values)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn net_char(&self) -> RealModuleChar {
        RealModuleChar {
            values: self.net(),
            identity_class: self.plus.identity_class,
        }
    }

    pub fn to_json(&self, g: &FiniteGroup) -> serde_json::Value {
        let orders: Vec<u32> = g.conjugacy_classes().iter().map(|c| c.order).collect();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
        serde_json::json!({
            "group": g.name(),
            "class_orders": orders,
            "class_sizes": sizes,
            "plus": self.plus.values,
            "minus": self.minus.values,
            "net": self.net(),
            "provenance": self.provenance,
        })
    }
}

/// Number of cosets `Hx` fixed by each class.
pub fn permutation_character(g: &FiniteGroup, h: &Subgroup) -> RealModuleChar {
    let counts = class_counts(g, h);
    let values = g
        .conjugacy_classes()
        .iter()
        .zip(&counts)
        .map(|(c, &k)| (g.order() * k) as f64 / (h.order() * c.size) as f64)
        .collect();
    RealModuleChar {
        values,
        identity_class: g.class_of(0),
    }
}

pub fn regular_character(g: &FiniteGroup) -> RealModuleChar {
    permutation_character(g, &g.trivial_subgroup())
}

pub fn dim_fixed(g: &FiniteGroup, v: &RealModuleChar, h: &Subgroup) -> Result<i64> {
    fixed_dim(&v.values, &class_counts(g, h))
}

/// No vectors fixed by any `O^p(G)`.
pub fn is_l_free(g: &FiniteGroup, v: &RealModuleChar) -> Result<bool> {
    for &p in g.prime_divisors() {
        if dim_fixed(g, v, &g.residual_p(p))? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MemberKind {
    Io,
    IoGG,
    IoGH,
    Lo,
}

fn agree_on_prime_powers(g: &FiniteGroup, net: &[f64]) -> bool {
    g.conjugacy_classes()
        .iter()
        .zip(net)
        .all(|(c, v)| !is_prime_power_or_one(c.order as u64) || v.abs() <= CHAR_TOL)
}

/// `(1/|H|) Σ_{h∈H} χ(xh)`, one value per element of `G/H`.
fn pushforward(g: &FiniteGroup, q: &crate::Quotient, values: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0; q.group.order()];
    for x in 0..g.order() {
        sums[q.project(x)] += values[g.class_of(x)];
    }
    let h = q.kernel().order() as f64;
    sums.iter().map(|s| s / h).collect()
}

pub fn membership(
    g: &FiniteGroup,
    d: &VirtualCharacter,
    kind: MemberKind,
    h: Option<&Subgroup>,
) -> Result<bool> {
    let net = d.net();
    let io = agree_on_prime_powers(g, &net);
    match kind {
        MemberKind::Io => Ok(io),
        MemberKind::IoGG => {
            Ok(io && dim_fixed(g, &d.plus, &g.whole())? == dim_fixed(g, &d.minus, &g.whole())?)
        }
        MemberKind::IoGH => {
            let h = h.ok_or_else(|| Error::Invalid("IO(G,H) needs a normal subgroup".into()))?;
            let q = g.quotient(h)?;
            Ok(io && pushforward(g, &q, &net).iter().all(|v| v.abs() <= CHAR_TOL))
        }
        MemberKind::Lo => Ok(io && is_l_free(g, &d.plus)? && is_l_free(g, &d.minus)?),
    }
}

/// `(ℝ[G] − ℝ) − Σ_p (ℝ[G/O^p(G)] − ℝ)`.
pub fn v_g_character(g: &FiniteGroup) -> VirtualCharacter {
    let trivial = RealModuleChar::trivial(g);
    let mut minus = trivial.clone();
    for &p in g.prime_divisors() {
        let perm = permutation_character(g, &g.residual_p(p));
        minus = minus.add(&perm).add(&trivial.scaled(-1.0));
    }
    VirtualCharacter::new(regular_character(g), minus, "V(G)")
}

/// `dim V(G)^K = |G:K| − 1 − Σ_p (|G : K·O^p(G)| − 1)`, computed from indices alone.
pub fn v_g_fixed_dim(g: &FiniteGroup, k: &Subgroup) -> i64 {
    let n = g.order() as i64;
    let mut d = n / k.order() as i64 - 1;
    for &p in g.prime_divisors() {
        let kop = g
            .normal_product(k, &g.residual_p(p))
            .expect("residuals are normal");
        d -= n / kop.order() as i64 - 1;
    }
    d
}

/// `dim V^P − 2 dim V^H` for a proper pair.
pub fn gap_defect(g: &FiniteGroup, v: &RealModuleChar, p: &Subgroup, h: &Subgroup) -> Result<i64> {
    pair_parity(g, p, h)?;
    Ok(dim_fixed(g, v, p)? - 2 * dim_fixed(g, v, h)?)
}

pub fn is_gap_module(g: &FiniteGroup, v: &RealModuleChar) -> Result<bool> {
    if !is_l_free(g, v)? {
        return Ok(false);
    }
    for pair in proper_pairs(g) {
        if dim_fixed(g, v, &pair.p)? - 2 * dim_fixed(g, v, &pair.h)? <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A homomorphism `G → Z_n` with kernel `N`, for cyclic `G/N`.
#[derive(Clone, Debug)]
pub struct CyclicCoordinate {
    pub n: u64,
    /// Exponent of the canonical generator, per element of `G`.
    pub exponent: Vec<u64>,
}

impl CyclicCoordinate {
    pub fn new(g: &FiniteGroup, kernel: &Subgroup) -> Result<CyclicCoordinate> {
        let q = g.quotient(kernel)?;
        let qg = &q.group;
        let n = qg.order();
        let gen = (0..n)
            .find(|&e| qg.element_order(e) as usize == n)
            .ok_or_else(|| Error::BadQuotient(format!("G/N of order {n} is not cyclic")))?;
        let mut pos = vec![0u64; n];
        let mut x = 0;
        for j in 0..n {
            pos[x] = j as u64;
            x = qg.mul(x, gen);
        }
        let exponent = (0..g.order()).map(|e| pos[q.project(e)]).collect();
        Ok(CyclicCoordinate {
            n: n as u64,
            exponent,
        })
    }

    fn angle(&self, e: usize, k: u64) -> f64 {
        2.0 * PI * ((k * self.exponent[e]) % self.n) as f64 / self.n as f64
    }

    /// `2 cos(2πk j(x)/n)` on each class: the realified linear character.
    pub fn realified(&self, g: &FiniteGroup, k: u64) -> RealModuleChar {
        let values = g
            .conjugacy_classes()
            .iter()
            .map(|c| 2.0 * self.angle(c.rep, k).cos())
            .collect();
        RealModuleChar {
            values,
            identity_class: g.class_of(0),
        }
    }
}

/// Normal subgroups whose quotient is cyclic.
pub fn cyclic_quotients(g: &FiniteGroup) -> Vec<(Subgroup, CyclicCoordinate)> {
    g.normal_subgroups()
        .iter()
        .filter(|n| n.order() < g.order())
        .filter_map(|n| CyclicCoordinate::new(g, n).ok().map(|c| (n.clone(), c)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct A2Pair {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub kernel: Subgroup,
    pub u: RealModuleChar,
    pub v: RealModuleChar,
}

/// `a ≡ 1 (mod p), a ≡ 2 (mod q)` and `b ≡ 2 (mod p), b ≡ 1 (mod q)`, in `(0, pq)`.
pub fn a2_exponents(p: u64, q: u64) -> (u64, u64) {
    let n = p * q;
    let solve = |rp: u64, rq: u64| {
        (1..n)
            .find(|x| x % p == rp % p && x % q == rq % q)
            .expect("p and q are coprime")
    };
    (solve(1, 2), solve(2, 1))
}

fn odd_prime_pair(n: u64) -> Option<(u64, u64)> {
    let p = (3..n).find(|&p| n.is_multiple_of(p) && is_prime(p))?;
    let q = n / p;
    (q != p && q > 2 && is_prime(q)).then_some((p, q))
}

/// Normal subgroups with quotient cyclic of order `pq`, `p ≠ q` odd primes.
pub fn a2_quotients(g: &FiniteGroup) -> Vec<Subgroup> {
    g.normal_subgroups()
        .iter()
        .filter(|h| {
            let n = (g.order() / h.order()) as u64;
            odd_prime_pair(n).is_some() && CyclicCoordinate::new(g, h).is_ok()
        })
        .cloned()
        .collect()
}

pub fn construct_a2(g: &FiniteGroup, h: &Subgroup) -> Result<A2Pair> {
    let n = (g.order() / h.order()) as u64;
    let (p, q) = odd_prime_pair(n).ok_or_else(|| {
        Error::BadQuotient(format!("|G/H| = {n} is not a product of two odd primes"))
    })?;
    let coord = CyclicCoordinate::new(g, h)?;
    let (a, b) = a2_exponents(p, q);
    let u = coord.realified(g, 1).add(&coord.realified(g, 2));
    let v = coord.realified(g, a).add(&coord.realified(g, b));
    let d = VirtualCharacter::new(u.clone(), v.clone(), "A2");
    assert!(
        is_l_free(g, &u)? && is_l_free(g, &v)?,
        "A2 modules must be L-free"
    );
    assert!(
        membership(g, &d, MemberKind::Lo, None)?,
        "A2 difference must lie in LO(G)"
    );
    assert!(!u.approx_eq(&v), "A2 modules must differ");
    Ok(A2Pair {
        p,
        q,
        n,
        a,
        b,
        kernel: h.clone(),
        u,
        v,
    })
}

/// Building blocks of matrix modules.
#[derive(Clone, Debug)]
pub enum Block {
    Trivial,
    /// `±1` through a homomorphism onto `Z_2`.
    Sign(Subgroup),
    /// Rotation by `2πk j(x)/n` through `G → Z_n`.
    Rotation {
        kernel: Subgroup,
        k: u64,
    },
    /// The permutation module on right cosets.
    Permutation(Subgroup),
}

impl Block {
    pub fn dim(&self, g: &FiniteGroup) -> usize {
        match self {
            Block::Trivial | Block::Sign(_) => 1,
            Block::Rotation { .. } => 2,
            Block::Permutation(k) => g.order() / k.order(),
        }
    }

    pub fn character(&self, g: &FiniteGroup) -> Result<RealModuleChar> {
        Ok(match self {
            Block::Trivial => RealModuleChar::trivial(g),
            Block::Sign(n) => CyclicCoordinate::new(g, n)?.realified(g, 1).scaled(0.5),
            Block::Rotation { kernel, k } => CyclicCoordinate::new(g, kernel)?.realified(g, *k),
            Block::Permutation(k) => permutation_character(g, k),
        })
    }

    /// One matrix per generator of `g`, acting on row vectors.
    fn generator_matrices(&self, g: &FiniteGroup) -> Result<Vec<DMatrix<f64>>> {
        let gens = g.generator_ids();
        Ok(match self {
            Block::Trivial => gens.iter().map(|_| DMatrix::identity(1, 1)).collect(),
            Block::Sign(n) => {
                let c = CyclicCoordinate::new(g, n)?;
                if c.n != 2 {
                    return Err(Error::BadQuotient("sign block needs index 2".into()));
                }
                gens.iter()
                    .map(|&s| {
                        DMatrix::from_element(1, 1, if c.exponent[s] == 0 { 1.0 } else { -1.0 })
                    })
                    .collect()
            }
            Block::Rotation { kernel, k } => {
                let c = CyclicCoordinate::new(g, kernel)?;
                gens.iter()
                    .map(|&s| {
                        let (sn, cs) = c.angle(s, *k).sin_cos();
                        DMatrix::from_row_slice(2, 2, &[cs, sn, -sn, cs])
                    })
                    .collect()
            }
            Block::Permutation(k) => {
                let (ids, count) = crate::group::right_coset_ids(g, k);
                let mut reps = vec![usize::MAX; count];
                for x in 0..g.order() {
                    let i = ids[x] as usize;
                    if reps[i] == usize::MAX {
                        reps[i] = x;
                    }
                }
                gens.iter()
                    .map(|&s| {
                        let mut m = DMatrix::zeros(count, count);
                        for (i, &x) in reps.iter().enumerate() {
                            m[(i, ids[g.mul(x, s)] as usize)] = 1.0;
                        }
                        m
                    })
                    .collect()
            }
        })
    }
}

/// An orthogonal representation, stored on every element.
#[derive(Clone, Debug)]
pub struct MatrixModule {
    pub dim: usize,
    generators: Vec<DMatrix<f64>>,
    elements: Vec<DMatrix<f64>>,
    character: RealModuleChar,
}

fn block_generators(
    g: &FiniteGroup,
    blocks: &[Block],
) -> Result<(Vec<DMatrix<f64>>, RealModuleChar)> {
    let mut per_gen: Vec<Vec<DMatrix<f64>>> = vec![Vec::new(); g.generator_ids().len()];
    let mut character = RealModuleChar::zero(g);
    for b in blocks {
        for (i, m) in b.generator_matrices(g)?.into_iter().enumerate() {
            per_gen[i].push(m);
        }
        character = character.add(&b.character(g)?);
    }
    Ok((
        per_gen.iter().map(|parts| block_diagonal(parts)).collect(),
        character,
    ))
}

fn block_diagonal(parts: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n: usize = parts.iter().map(|m| m.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut at = 0;
    for m in parts {
        out.view_mut((at, at), (m.nrows(), m.nrows())).copy_from(m);
        at += m.nrows();
    }
    out
}

/// A random orthogonal matrix, from the QR factorization of a random matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    a.qr().q()
}

impl MatrixModule {
    /// Direct sum of blocks.
    pub fn from_blocks(g: &FiniteGroup, blocks: &[Block]) -> Result<MatrixModule> {
        let (gens, character) = block_generators(g, blocks)?;
        Self::from_generators(g, gens, character)
    }

    /// Direct sum of blocks in a random orthonormal basis.
    pub fn from_blocks_rotated<R: Rng + ?Sized>(
        g: &FiniteGroup,
        blocks: &[Block],
        rng: &mut R,
    ) -> Result<MatrixModule> {
        let (gens, character) = block_generators(g, blocks)?;
        let q = random_orthogonal(character.dim().max(0) as usize, rng);
        let qt = q.transpose();
        Self::from_generators(g, gens.iter().map(|m| &qt * m * &q).collect(), character)
    }

    /// Extends generator matrices to all of `G` along the Schreier tree.
    pub fn from_generators(
        g: &FiniteGroup,
        gens: Vec<DMatrix<f64>>,
        character: RealModuleChar,
    ) -> Result<MatrixModule> {
        if gens.len() != g.generator_ids().len() {
            return Err(Error::Invalid("one matrix per generator expected".into()));
        }
        let dim = character.dim().max(0) as usize;
        if gens.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Invalid(format!(
                "generator matrices must be {dim}×{dim}"
            )));
        }
        let mut elements: Vec<DMatrix<f64>> = Vec::with_capacity(g.order());
        elements.push(DMatrix::identity(dim, dim));
        for e in 1..g.order() {
            let (p, s) = g.tree_parent(e).expect("non-identity");
            elements.push(&elements[p] * &gens[s]);
        }
        let m = MatrixModule {
            dim,
            generators: gens,
            elements,
            character,
        };
        m.validate(g)?;
        Ok(m)
    }

    /// `Qᵀ ρ Q` for a random orthogonal `Q`.
    pub fn conjugated<R: Rng + ?Sized>(
        &self,
        g: &FiniteGroup,
        rng: &mut R,
    ) -> Result<MatrixModule> {
        let q = random_orthogonal(self.dim, rng);
        let qt = q.transpose();
        let gens = self.generators.iter().map(|m| &qt * m * &q).collect();
        Self::from_generators(g, gens, self.character.clone())
    }

    pub fn matrix(&self, e: usize) -> &DMatrix<f64> {
        &self.elements[e]
    }

    pub fn character(&self) -> &RealModuleChar {
        &self.character
    }

    pub fn trace_character(&self, g: &FiniteGroup) -> RealModuleChar {
        let values = g
            .conjugacy_classes()
            .iter()
            .map(|c| self.elements[c.rep].trace())
            .collect();
        RealModuleChar {
            values,
            identity_class: g.class_of(0),
        }
    }

    /// Orthogonality of generators, a sampled multiplication table and the trace character.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let id = DMatrix::<f64>::identity(self.dim, self.dim);
        for &s in g.generator_ids() {
            let m = &self.elements[s];
            if (m.transpose() * m - &id).amax() > MATRIX_TOL {
                return Err(Error::NumericalFailure(
                    "generator matrix is not orthogonal".into(),
                ));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let a = rng.random_range(0..g.order());
            let b = rng.random_range(0..g.order());
            let err = (&self.elements[a] * &self.elements[b] - &self.elements[g.mul(a, b)]).amax();
            if err > MATRIX_TOL {
                return Err(Error::NumericalFailure(format!(
                    "ρ(a)ρ(b) ≠ ρ(ab), error {err:e}"
                )));
            }
        }
        if !self.trace_character(g).approx_eq(&self.character) {
            return Err(Error::NumericalFailure(
                "trace does not match the character".into(),
            ));
        }
        Ok(())
    }

    /// `π = (1/|H|) Σ_{h∈H} ρ(h)`.
    pub fn projection(&self, h: &Subgroup) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.dim, self.dim);
        for x in h.elements() {
            p += &self.elements[x];
        }
        p / h.order() as f64
    }

    pub fn fixed_dim_by_rank(&self, h: &Subgroup) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.projection(h).rank(CHAR_TOL)
    }

    /// Orthonormal columns spanning the `H`-fixed vectors.
    pub fn fixed_basis(&self, h: &Subgroup) -> DMatrix<f64> {
        if self.dim == 0 {
            return DMatrix::zeros(0, 0);
        }
        let p = self.projection(h);
        let sym = (&p + p.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let cols: Vec<usize> = (0..self.dim)
            .filter(|&i| eig.eigenvalues[i] > 0.5)
            .collect();
        DMatrix::from_fn(self.dim, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
    }

    /// Determinant of `x` on the `H`-fixed subspace; `x` must normalize `H`.
    pub fn restricted_det(&self, h: &Subgroup, x: usize) -> Result<f64> {
        let b = self.fixed_basis(h);
        if b.ncols() == 0 {
            return Ok(1.0);
        }
        let m = b.transpose() * &self.elements[x] * &b;
        checked_unit(m.determinant())
    }

    pub fn det(&self, x: usize) -> Result<f64> {
        if self.dim == 0 {
            return Ok(1.0);
        }
        checked_unit(self.elements[x].determinant())
    }
}

fn checked_unit(d: f64) -> Result<f64> {
    if (d.abs() - 1.0).abs() > CHAR_TOL {
        return Err(Error::NumericalFailure(format!(
            "determinant {d} is not ±1"
        )));
    }
    Ok(d.signum())
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientationEntry {
    pub p_order: usize,
    /// Element of `N_G(P)` tested.
    pub element: usize,
    pub det_u: f64,
    pub det_v: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientationReport {
    pub entries: Vec<OrientationEntry>,
    pub pass: bool,
}

/// Determinants of `N_G(P)` on `U^P` and `V^P` for every prime-power `P` up to conjugacy.
pub fn orientation_check(
    g: &FiniteGroup,
    u: &MatrixModule,
    v: &MatrixModule,
) -> Result<OrientationReport> {
    let d = VirtualCharacter::new(u.trace_character(g), v.trace_character(g), "orientation");
    if !membership(g, &d, MemberKind::Io, None)? {
        return Err(Error::Invalid("U − V is not in IO(G)".into()));
    }
    let mut entries = Vec::new();
    for p in prime_power_subgroups(g) {
        let n = g.normalizer(&p);
        let bu = u.fixed_basis(&p);
        let bv = v.fixed_basis(&p);
        for &x in n.generators() {
            let det_on = |m: &MatrixModule, b: &DMatrix<f64>| -> Result<f64> {
                if b.ncols() == 0 {
                    return Ok(1.0);
                }
                checked_unit((b.transpose() * m.matrix(x) * b).determinant())
            };
            let det_u = det_on(u, &bu)?;
            let det_v = det_on(v, &bv)?;
            entries.push(OrientationEntry {
                p_order: p.order(),
                element: x,
                det_u,
                det_v,
                pass: det_u * det_v > 0.0,
            });
        }
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(OrientationReport { entries, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct DetAgreement {
    pub element: usize,
    pub order: u32,
    pub det_u: f64,
    pub det_v: f64,
    /// `(−1)^{dim − dim U^T}`.
    pub predicted: f64,
    pub pass: bool,
}

/// For each class of elements `t` of 2-power order where `U` and `V` have the same
/// dimension and `dim U^T ≡ dim V^T (mod 2)`, compares `det(t|_U)` with `det(t|_V)`.
pub fn det_agreement(
    g: &FiniteGroup,
    u: &MatrixModule,
    v: &MatrixModule,
) -> Result<Vec<DetAgreement>> {
    let mut out = Vec::new();
    if u.dim != v.dim {
        return Ok(out);
    }
    for c in g.conjugacy_classes() {
        if c.order < 2 || !c.order.is_power_of_two() {
            continue;
        }
        let t = g.subgroup(&[c.rep]);
        let fu = dim_fixed(g, u.character(), &t)?;
        let fv = dim_fixed(g, v.character(), &t)?;
        if (fu - fv) % 2 != 0 {
            continue;
        }
        let det_u = u.det(c.rep)?;
        let det_v = v.det(c.rep)?;
        let predicted = if (u.dim as i64 - fu) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        out.push(DetAgreement {
            element: c.rep,
            order: c.order,
            det_u,
            det_v,
            predicted,
            pass: det_u == det_v && det_u == predicted,
        });
    }
    Ok(out)
}

/// Blocks of a module pair whose characters agree on prime-power elements.
#[derive(Clone, Debug)]
pub struct IoCore {
    pub plus: Vec<Block>,
    pub minus: Vec<Block>,
    pub label: String,
    pub dim: usize,
    /// The two characters differ somewhere.
    pub nontrivial: bool,
}

/// Blocks and `IO` cores available for random module pairs.
#[derive(Clone, Debug)]
pub struct BlockLibrary {
    pub blocks: Vec<Block>,
    pub cores: Vec<IoCore>,
}

const MAX_BLOCK_DIM: usize = 30;
const MAX_CORE_DIM: usize = 240;
const SMALL_CORE_DIM: usize = 60;

fn candidate_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |s: Subgroup, out: &mut Vec<Subgroup>| {
        if g.order() / s.order() <= MAX_CORE_DIM && seen.insert(s.members().clone()) {
            out.push(s);
        }
    };
    let mut base: Vec<Subgroup> = Vec::new();
    for c in g.conjugacy_classes() {
        let z = g.subgroup(&[c.rep]);
        base.push(g.normalizer(&z));
        base.push(z);
    }
    for p in prime_power_subgroups(g) {
        base.push(g.normalizer(&p));
        base.push(p);
    }
    base.extend(g.normal_subgroups().iter().cloned());
    for s in base {
        if !g.is_normal(&s) {
            let x = g
                .generator_ids()
                .iter()
                .copied()
                .find(|&x| g.conjugate_subgroup(&s, x) != s);
            if let Some(x) = x {
                push(g.conjugate_subgroup(&s, x), &mut out);
            }
        }
        push(s, &mut out);
    }
    out
}

impl BlockLibrary {
    pub fn new(g: &FiniteGroup) -> Result<BlockLibrary> {
        let mut integral: Vec<Block> = vec![Block::Trivial];
        let mut rotations = Vec::new();
        for (n, c) in cyclic_quotients(g) {
            if c.n == 2 {
                integral.push(Block::Sign(n.clone()));
            }
            for k in 1..=(c.n - 1) / 2 {
                rotations.push(Block::Rotation {
                    kernel: n.clone(),
                    k,
                });
            }
        }
        integral.extend(
            candidate_subgroups(g)
                .into_iter()
                .filter(|s| s.order() < g.order())
                .map(Block::Permutation),
        );
        let chars: Vec<RealModuleChar> = integral
            .iter()
            .map(|b| b.character(g))
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<linalg::Q>> = g
            .conjugacy_classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| is_prime_power_or_one(c.order as u64))
            .map(|(j, _)| {
                chars
                    .iter()
                    .map(|ch| q(ch.values[j].round() as i64))
                    .collect()
            })
            .collect();
        let basis: Vec<Vec<i64>> = linalg::nullspace(&rows, integral.len())
            .iter()
            .map(|v| linalg::to_integers(v))
            .collect();
        let mut relations = basis.clone();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                relations.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect());
                relations.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a - b).collect());
            }
        }
        let dims: Vec<usize> = integral.iter().map(|b| b.dim(g)).collect();
        let mut cores = Vec::new();
        let mut seen = HashSet::new();
        for rel in relations {
            let side = |sign: i64| -> usize {
                rel.iter()
                    .zip(&dims)
                    .filter(|(c, _)| c.signum() == sign)
                    .map(|(c, d)| c.unsigned_abs() as usize * d)
                    .sum()
            };
            if side(1).max(side(-1)) > MAX_CORE_DIM || !seen.insert(rel.clone()) {
                continue;
            }
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for (c, b) in rel.iter().zip(&integral) {
                let target = if *c > 0 { &mut plus } else { &mut minus };
                for _ in 0..c.unsigned_abs() {
                    target.push(b.clone());
                }
            }
            cores.push(IoCore::new(g, plus, minus, "permutation relation")?);
        }
        for h in a2_quotients(g) {
            let a2 = construct_a2(g, &h)?;
            let rot = |k| Block::Rotation {
                kernel: h.clone(),
                k,
            };
            cores.push(IoCore::new(
                g,
                vec![rot(1), rot(2)],
                vec![rot(a2.a), rot(a2.b)],
                "A2",
            )?);
        }
        let mut blocks: Vec<Block> = integral
            .into_iter()
            .filter(|b| b.dim(g) <= MAX_BLOCK_DIM)
            .collect();
        blocks.extend(rotations);
        Ok(BlockLibrary { blocks, cores })
    }

    pub fn nontrivial_cores(&self) -> usize {
        self.cores.iter().filter(|c| c.nontrivial).count()
    }

    /// Half the time the smallest cores with distinct characters, otherwise
    /// small cores with equal characters.
    fn pick_core<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<&IoCore> {
        let nontrivial: Vec<&IoCore> = self.cores.iter().filter(|c| c.nontrivial).collect();
        if !nontrivial.is_empty() && rng.random_bool(0.5) {
            let least = nontrivial.iter().map(|c| c.dim).min().unwrap();
            let small: Vec<&IoCore> = nontrivial
                .into_iter()
                .filter(|c| c.dim <= least + SMALL_CORE_DIM / 2)
                .collect();
            return Some(small[rng.random_range(0..small.len())]);
        }
        let small: Vec<&IoCore> = self
            .cores
            .iter()
            .filter(|c| !c.nontrivial && c.dim <= SMALL_CORE_DIM)
            .collect();
        (!small.is_empty()).then(|| small[rng.random_range(0..small.len())])
    }
}

impl IoCore {
    fn new(g: &FiniteGroup, plus: Vec<Block>, minus: Vec<Block>, label: &str) -> Result<IoCore> {
        let u = sum_character(g, &plus)?;
        let v = sum_character(g, &minus)?;
        Ok(IoCore {
            dim: u.dim().max(0) as usize,
            nontrivial: !u.approx_eq(&v),
            plus,
            minus,
            label: label.into(),
        })
    }
}

fn sum_character(g: &FiniteGroup, blocks: &[Block]) -> Result<RealModuleChar> {
    let mut ch = RealModuleChar::zero(g);
    for b in blocks {
        ch = ch.add(&b.character(g)?);
    }
    Ok(ch)
}

/// A random pair `U`, `V` with `U − V ∈ IO(G)`: a core plus shared extra
/// blocks, shuffled and each conjugated by its own random orthogonal matrix.
pub fn random_io_pair<R: Rng + ?Sized>(
    g: &FiniteGroup,
    lib: &BlockLibrary,
    rng: &mut R,
) -> Result<(MatrixModule, MatrixModule)> {
    let (mut u, mut v) = match lib.pick_core(rng) {
        None => (Vec::new(), Vec::new()),
        Some(c) if rng.random_bool(0.5) => (c.plus.clone(), c.minus.clone()),
        Some(c) => (c.minus.clone(), c.plus.clone()),
    };
    let extras = rng.random_range(0..=2);
    for _ in 0..extras {
        let b = lib.blocks[rng.random_range(0..lib.blocks.len())].clone();
        u.push(b.clone());
        v.push(b);
    }
    if u.is_empty() && v.is_empty() {
        u.push(Block::Trivial);
        v.push(Block::Trivial);
    }
    u.shuffle(rng);
    v.shuffle(rng);
    let mu = MatrixModule::from_blocks_rotated(g, &u, rng)?;
    let mv = MatrixModule::from_blocks_rotated(g, &v, rng)?;
    Ok((mu, mv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn permutation_character_of_s3() {
        let s3 = catalog::build("S3").unwrap();
        let t = s3
            .find(&crate::Permutation::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let chi = permutation_character(&s3, &s3.subgroup(&[t]));
        for (c, v) in s3.conjugacy_classes().iter().zip(&chi.values) {
            let expected = match c.order {
                1 => 3.0,
                2 => 1.0,
                _ => 0.0,
            };
            assert_eq!(*v, expected);
        }
    }

    #[test]
    fn a2_on_z15() {
        assert_eq!(a2_exponents(3, 5), (7, 11));
        let z15 = catalog::build("Z15").unwrap();
        let pair = construct_a2(&z15, &z15.trivial_subgroup()).unwrap();
        let gen = z15.generator_ids()[0];
        let coord = CyclicCoordinate::new(&z15, &z15.trivial_subgroup()).unwrap();
        let j = coord.exponent[gen] as f64;
        let expected = 2.0 * (2.0 * PI * j / 15.0).cos() + 2.0 * (4.0 * PI * j / 15.0).cos();
        assert!((pair.u.at(&z15, gen) - expected).abs() < 1e-12);
        let g1 = (0..15).find(|&e| coord.exponent[e] == 1).unwrap();
        assert!((pair.u.at(&z15, g1) - 3.165_352_128).abs() < 1e-8);
    }

    #[test]
    fn v_g_of_s6() {
        let s6 = catalog::build("S6").unwrap();
        let v = v_g_character(&s6);
        assert_eq!(v.net_char().dim(), 718);
        assert_eq!(v_g_fixed_dim(&s6, &s6.trivial_subgroup()), 718);
    }

    #[test]
    fn matrix_module_round_trip() {
        let s4 = catalog::build("S4").unwrap();
        let lib = BlockLibrary::new(&s4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (u, v) = random_io_pair(&s4, &lib, &mut rng).unwrap();
        u.validate(&s4).unwrap();
        assert!(orientation_check(&s4, &u, &v).unwrap().pass);
    }
}

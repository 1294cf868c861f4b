//! Finite-dimensional C*-algebras as direct sums of full matrix blocks.
//!
//! An algebra `M_{n_1} ⊕ … ⊕ M_{n_k}` acts on `C^d`, `d = Σ n_i`, through its
//! identity (block-diagonal) representation. Closed two-sided ideals are exactly
//! the sums of a subset of blocks, so the ideal lattice is the Boolean lattice
//! of block indices. Block indices are 0-based throughout the library.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Default absolute tolerance for entrywise equality of elements.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest block count accepted by [`BlockAlgebra::enumerate_ideals`].
pub const MAX_ENUMERATION_BLOCKS: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockAlgebra {
    dims: Vec<usize>,
}

impl fmt::Debug for BlockAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            write!(f, "BlockAlgebra(0)")
        } else {
            write!(f, "BlockAlgebra{:?}", self.dims)
        }
    }
}

impl fmt::Display for BlockAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|&n| if n == 1 { "C".to_string() } else { format!("M{n}") })
            .collect();
        write!(f, "{}", parts.join("⊕"))
    }
}

impl BlockAlgebra {
    /// Builds `M_{n_1} ⊕ … ⊕ M_{n_k}`. The list must be non-empty with positive entries.
    pub fn new(block_dims: &[usize]) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::MalformedInput("block list is empty".into()));
        }
        if let Some(pos) = block_dims.iter().position(|&n| n == 0) {
            return Err(Error::MalformedInput(format!(
                "block {} has non-positive size",
                pos + 1
            )));
        }
        Ok(Self {
            dims: block_dims.to_vec(),
        })
    }

    /// The zero algebra. Only produced by quotients by the whole algebra and
    /// by constructions that consume such quotients.
    pub fn zero() -> Self {
        Self { dims: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_blocks(&self) -> usize {
        self.dims.len()
    }

    /// Dimension `d` of the identity representation space.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Dimension of the algebra as a complex vector space, `Σ n_i²`.
    pub fn linear_dim(&self) -> usize {
        self.dims.iter().map(|n| n * n).sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.dims.iter().all(|&n| n == 1)
    }

    /// Start of each block's coordinate range inside `C^d`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|&n| {
                let o = acc;
                acc += n;
                o
            })
            .collect()
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            blocks: self.dims.iter().map(|&n| CMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            blocks: self.dims.iter().map(|&n| CMatrix::identity(n, n)).collect(),
        }
    }

    /// Unit of block `b`, the generator of the ideal supported on `{b}`.
    pub fn block_unit(&self, b: usize) -> AlgebraElement {
        let mut e = self.zero_element();
        e.blocks[b] = CMatrix::identity(self.dims[b], self.dims[b]);
        e
    }

    /// Matrix unit `e_{row,col}` inside block `b`.
    pub fn matrix_unit(&self, b: usize, row: usize, col: usize) -> AlgebraElement {
        let mut e = self.zero_element();
        e.blocks[b][(row, col)] = C64::new(1.0, 0.0);
        e
    }

    /// All matrix units `(block, row, col)` in block-major, row-major order.
    /// Their images determine any linear map on the algebra.
    pub fn matrix_unit_labels(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.linear_dim());
        for (b, &n) in self.dims.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    out.push((b, r, c));
                }
            }
        }
        out
    }

    /// Element with independent standard complex Gaussian-like entries in `[-1,1]²`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            blocks: self
                .dims
                .iter()
                .map(|&n| {
                    CMatrix::from_fn(n, n, |_, _| {
                        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    })
                })
                .collect(),
        }
    }

    pub fn ideal<I: IntoIterator<Item = usize>>(&self, support: I) -> Result<Ideal> {
        let support: BTreeSet<usize> = support.into_iter().collect();
        if let Some(&b) = support.iter().find(|&&b| b >= self.num_blocks()) {
            return Err(Error::MalformedInput(format!(
                "block index {} out of range for {} blocks",
                b + 1,
                self.num_blocks()
            )));
        }
        Ok(Ideal {
            owner: self.clone(),
            support,
        })
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal {
            owner: self.clone(),
            support: BTreeSet::new(),
        }
    }

    pub fn full_ideal(&self) -> Ideal {
        Ideal {
            owner: self.clone(),
            support: (0..self.num_blocks()).collect(),
        }
    }

    /// All `2^k` ideals, ordered by the bitmask of their support.
    pub fn enumerate_ideals(&self) -> Result<Vec<Ideal>> {
        let k = self.num_blocks();
        if k > MAX_ENUMERATION_BLOCKS {
            return Err(Error::ResourceGuard(format!(
                "enumerating ideals of {k} blocks exceeds the limit of {MAX_ENUMERATION_BLOCKS}"
            )));
        }
        Ok((0u32..(1u32 << k))
            .map(|mask| Ideal {
                owner: self.clone(),
                support: (0..k).filter(|b| mask >> b & 1 == 1).collect(),
            })
            .collect())
    }
}

/// An element `a = a_1 ⊕ … ⊕ a_k` of a block algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: BlockAlgebra,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn from_blocks(algebra: &BlockAlgebra, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks() {
            return Err(Error::MalformedInput(format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                blocks.len()
            )));
        }
        for (i, (m, &n)) in blocks.iter().zip(algebra.block_dims()).enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::MalformedInput(format!(
                    "block {} is {}x{}, expected {n}x{n}",
                    i + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Self {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &CMatrix {
        &self.blocks[b]
    }

    pub(crate) fn block_mut(&mut self, b: usize) -> &mut CMatrix {
        &mut self.blocks[b]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m * z).collect(),
        }
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(operator_norm).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus difference.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_same_owner(&self.algebra, &other.algebra);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.blocks.iter().all(|m| max_abs(m) <= tol)
    }

    /// Block-diagonal matrix of the identity representation on `C^d`.
    pub fn to_dense(&self) -> CMatrix {
        let d = self.algebra.total_dim();
        let mut out = CMatrix::zeros(d, d);
        for (m, o) in self.blocks.iter().zip(self.algebra.offsets()) {
            out.view_mut((o, o), (m.nrows(), m.ncols())).copy_from(m);
        }
        out
    }

    /// Coefficients on the matrix units, in the order of
    /// [`BlockAlgebra::matrix_unit_labels`].
    pub fn coefficients(&self) -> Vec<C64> {
        self.blocks
            .iter()
            .flat_map(|m| {
                let n = m.nrows();
                (0..n).flat_map(move |r| (0..n).map(move |c| m[(r, c)]))
            })
            .collect()
    }
}

fn assert_same_owner(a: &BlockAlgebra, b: &BlockAlgebra) {
    assert_eq!(a, b, "elements of different algebras");
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        assert_same_owner(&self.algebra, &rhs.algebra);
        AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        assert_same_owner(&self.algebra, &rhs.algebra);
        AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Self) -> AlgebraElement {
        assert_same_owner(&self.algebra, &rhs.algebra);
        AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect(),
        }
    }
}

/// A closed two-sided ideal, i.e. the direct sum of the blocks in `support`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    owner: BlockAlgebra,
    support: BTreeSet<usize>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.support)
    }
}

impl fmt::Display for Ideal {
    /// 1-based support, `{}` for the zero ideal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|b| (b + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Ideal {
    pub fn owner(&self) -> &BlockAlgebra {
        &self.owner
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn contains_block(&self, b: usize) -> bool {
        self.support.contains(&b)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.support.len() == self.owner.num_blocks()
    }

    pub(crate) fn check_owner(&self, algebra: &BlockAlgebra) -> Result<()> {
        if &self.owner != algebra {
            return Err(Error::OwnershipMismatch(format!(
                "ideal of {:?} used with {:?}",
                self.owner, algebra
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        other.check_owner(&self.owner)?;
        Ok(self.support.is_subset(&other.support))
    }

    pub fn meet(&self, other: &Ideal) -> Result<Ideal> {
        other.check_owner(&self.owner)?;
        Ok(Ideal {
            owner: self.owner.clone(),
            support: self.support.intersection(&other.support).copied().collect(),
        })
    }

    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        other.check_owner(&self.owner)?;
        Ok(Ideal {
            owner: self.owner.clone(),
            support: self.support.union(&other.support).copied().collect(),
        })
    }

    /// Primitive ideals containing this ideal. Primitive ideals of a block
    /// algebra are indexed by blocks (the kernel of the `b`-th block
    /// representation), and that kernel contains `I` iff `b ∉ supp I`.
    pub fn hull(&self) -> BTreeSet<usize> {
        (0..self.owner.num_blocks())
            .filter(|b| !self.support.contains(b))
            .collect()
    }

    /// The largest ideal meeting this one in `{0}`, `⋂_{x ∉ hull(I)} x`.
    pub fn ortho_complement(&self) -> Ideal {
        // Each primitive ideal outside the hull is "all blocks but b" for some
        // b in the support; intersecting those removes exactly the support.
        let k = self.owner.num_blocks();
        let mut support: BTreeSet<usize> = (0..k).collect();
        for b in (0..k).filter(|b| !self.hull().contains(b)) {
            support.remove(&b);
        }
        Ideal {
            owner: self.owner.clone(),
            support,
        }
    }

    /// Whether `a` lies in the ideal, i.e. vanishes outside the support.
    pub fn contains(&self, a: &AlgebraElement, tol: f64) -> Result<bool> {
        self.check_owner(a.algebra())?;
        Ok(a.blocks()
            .iter()
            .enumerate()
            .all(|(b, m)| self.support.contains(&b) || max_abs(m) <= tol))
    }

    /// Zeroes the blocks outside the support (multiplication by the ideal's unit).
    pub fn project(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owner(a.algebra())?;
        let mut out = a.clone();
        for b in 0..self.owner.num_blocks() {
            if !self.support.contains(&b) {
                out.block_mut(b).fill(C64::new(0.0, 0.0));
            }
        }
        Ok(out)
    }

    /// The unit of the ideal, `Σ_{b ∈ S} 1_b`.
    pub fn unit(&self) -> AlgebraElement {
        let mut e = self.owner.zero_element();
        for &b in &self.support {
            *e.block_mut(b) = CMatrix::identity(self.owner.block_dims()[b], self.owner.block_dims()[b]);
        }
        e
    }
}

/// `A/I` together with the quotient map that drops the blocks of `I`.
#[derive(Clone, Debug)]
pub struct QuotientData {
    source: BlockAlgebra,
    ideal: Ideal,
    target: BlockAlgebra,
    index_map: Vec<usize>,
}

impl QuotientData {
    pub fn source(&self) -> &BlockAlgebra {
        &self.source
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn target(&self) -> &BlockAlgebra {
        &self.target
    }

    /// `index_map[t]` is the source block that became target block `t`.
    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    /// Quotient by the whole algebra.
    pub fn is_degenerate(&self) -> bool {
        self.target.is_zero()
    }

    /// Target index of a surviving source block.
    pub fn target_index(&self, source_block: usize) -> Option<usize> {
        self.index_map.iter().position(|&s| s == source_block)
    }

    /// The quotient map `q^I`.
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.algebra() != &self.source {
            return Err(Error::OwnershipMismatch(
                "element is not in the quotient's source".into(),
            ));
        }
        Ok(AlgebraElement {
            algebra: self.target.clone(),
            blocks: self.index_map.iter().map(|&s| a.block(s).clone()).collect(),
        })
    }

    /// Image `q^I(L)` of an ideal of the source.
    pub fn map_ideal(&self, other: &Ideal) -> Result<Ideal> {
        other.check_owner(&self.source)?;
        Ok(Ideal {
            owner: self.target.clone(),
            support: other.support().iter().filter_map(|&b| self.target_index(b)).collect(),
        })
    }

    /// Preimage `(q^I)^{-1}(L)` of an ideal of the target; always contains `I`.
    pub fn pull_ideal(&self, other: &Ideal) -> Result<Ideal> {
        other.check_owner(&self.target)?;
        let mut support = self.ideal.support().clone();
        support.extend(other.support().iter().map(|&t| self.index_map[t]));
        Ok(Ideal {
            owner: self.source.clone(),
            support,
        })
    }
}

pub fn quotient(algebra: &BlockAlgebra, ideal: &Ideal) -> Result<QuotientData> {
    ideal.check_owner(algebra)?;
    let index_map: Vec<usize> = ideal.hull().into_iter().collect();
    let target = if index_map.is_empty() {
        BlockAlgebra::zero()
    } else {
        BlockAlgebra {
            dims: index_map.iter().map(|&s| algebra.block_dims()[s]).collect(),
        }
    };
    Ok(QuotientData {
        source: algebra.clone(),
        ideal: ideal.clone(),
        target,
        index_map,
    })
}

/// `A_1 ⊕ A_2` with the two canonical embeddings.
#[derive(Clone, Debug)]
pub struct DirectSum {
    algebra: BlockAlgebra,
    left_dims: usize,
}

impl DirectSum {
    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    /// Blocks of the sum coming from the first summand.
    pub fn left_blocks(&self) -> std::ops::Range<usize> {
        0..self.left_dims
    }

    pub fn right_blocks(&self) -> std::ops::Range<usize> {
        self.left_dims..self.algebra.num_blocks()
    }

    pub fn left_ideal(&self) -> Ideal {
        Ideal {
            owner: self.algebra.clone(),
            support: self.left_blocks().collect(),
        }
    }

    pub fn right_ideal(&self) -> Ideal {
        Ideal {
            owner: self.algebra.clone(),
            support: self.right_blocks().collect(),
        }
    }

    pub fn embed_left(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.algebra.zero_element();
        for (i, m) in a.blocks().iter().enumerate() {
            *out.block_mut(i) = m.clone();
        }
        out
    }

    pub fn embed_right(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.algebra.zero_element();
        for (i, m) in a.blocks().iter().enumerate() {
            *out.block_mut(self.left_dims + i) = m.clone();
        }
        out
    }
}

pub fn direct_sum(first: &BlockAlgebra, second: &BlockAlgebra) -> DirectSum {
    let mut dims = first.block_dims().to_vec();
    dims.extend_from_slice(second.block_dims());
    DirectSum {
        algebra: BlockAlgebra { dims },
        left_dims: first.num_blocks(),
    }
}

/// Largest singular value; `0` for empty matrices.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Numerical rank of the span of the given vectors (relative cutoff).
pub(crate) fn span_rank(vectors: &[CMatrix], rel_tol: f64) -> usize {
    let vectors: Vec<&CMatrix> = vectors.iter().filter(|v| !v.is_empty()).collect();
    if vectors.is_empty() {
        return 0;
    }
    let len = vectors[0].len();
    let stacked = DMatrix::from_fn(len, vectors.len(), |r, c| vectors[c][r]);
    let sv = stacked.svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn make_algebra_examples() {
        let a = BlockAlgebra::new(&[1, 1]).unwrap();
        assert_eq!(a.total_dim(), 2);
        let b = BlockAlgebra::new(&[1, 2]).unwrap();
        assert_eq!(b.total_dim(), 3);
        assert_eq!(b.to_string(), "C⊕M2");
        assert!(matches!(BlockAlgebra::new(&[]), Err(Error::MalformedInput(_))));
        assert!(matches!(BlockAlgebra::new(&[2, 0]), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn hull_examples() {
        let a = BlockAlgebra::new(&[1, 1, 1]).unwrap();
        assert_eq!(a.ideal([0]).unwrap().hull(), BTreeSet::from([1, 2]));
        assert_eq!(a.zero_ideal().hull(), BTreeSet::from([0, 1, 2]));
        assert!(a.full_ideal().hull().is_empty());
    }

    #[test]
    fn ortho_complement_examples() {
        let a = BlockAlgebra::new(&[1, 1, 1]).unwrap();
        assert_eq!(a.ideal([0]).unwrap().ortho_complement(), a.ideal([1, 2]).unwrap());
        assert_eq!(a.zero_ideal().ortho_complement(), a.full_ideal());
        assert_eq!(a.full_ideal().ortho_complement(), a.zero_ideal());
    }

    #[test]
    fn ortho_complement_is_largest_disjoint_ideal() {
        for dims in [&[1][..], &[1, 2], &[2, 1, 1], &[1, 1, 1, 1], &[1, 2, 1, 3, 1]] {
            let a = BlockAlgebra::new(dims).unwrap();
            let ideals = a.enumerate_ideals().unwrap();
            for i in &ideals {
                let perp = i.ortho_complement();
                assert!(i.meet(&perp).unwrap().is_zero());
                assert_eq!(perp.support(), &i.hull());
                for l in &ideals {
                    if l.meet(i).unwrap().is_zero() {
                        assert!(l.is_subset(&perp).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let q = quotient(&a, &a.ideal([1]).unwrap()).unwrap();
        assert_eq!(q.target().block_dims(), &[1]);
        assert_eq!(q.index_map(), &[0]);

        let b = BlockAlgebra::new(&[1, 1]).unwrap();
        let q = quotient(&b, &b.zero_ideal()).unwrap();
        assert_eq!(q.target(), &b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = b.random_element(&mut rng);
        assert_eq!(q.apply(&x).unwrap().blocks(), x.blocks());

        let q = quotient(&b, &b.full_ideal()).unwrap();
        assert!(q.is_degenerate());
        assert!(q.target().is_zero());
    }

    #[test]
    fn quotient_map_is_unital_star_homomorphism_with_kernel_ideal() {
        let a = BlockAlgebra::new(&[2, 1, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ideal in a.enumerate_ideals().unwrap() {
            let q = quotient(&a, &ideal).unwrap();
            assert!(q.apply(&a.unit()).unwrap().approx_eq(&q.target().unit(), 0.0));
            for _ in 0..10 {
                let x = a.random_element(&mut rng);
                let y = a.random_element(&mut rng);
                let lhs = q.apply(&(&x * &y)).unwrap();
                let rhs = &q.apply(&x).unwrap() * &q.apply(&y).unwrap();
                assert!(lhs.distance(&rhs) < 1e-12);
                assert!(q.apply(&x.adjoint()).unwrap().distance(&q.apply(&x).unwrap().adjoint()) < 1e-12);
                // kernel = ideal
                let in_ideal = ideal.project(&x).unwrap();
                assert!(q.apply(&in_ideal).unwrap().is_zero(0.0));
                let outside = &x - &in_ideal;
                let image_norm = q.apply(&outside).unwrap().norm();
                assert!((image_norm - outside.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&BlockAlgebra::new(&[1]).unwrap(), &BlockAlgebra::new(&[2]).unwrap());
        assert_eq!(s.algebra().block_dims(), &[1, 2]);

        let s = direct_sum(&BlockAlgebra::new(&[1, 1]).unwrap(), &BlockAlgebra::zero());
        assert_eq!(s.algebra().block_dims(), &[1, 1]);
        assert!(s.right_ideal().is_zero());

        let two = BlockAlgebra::new(&[2]).unwrap();
        let s = direct_sum(&two, &two);
        assert_eq!(s.algebra().block_dims(), &[2, 2]);
        assert!(s.left_ideal().meet(&s.right_ideal()).unwrap().is_zero());
        let sum = &s.embed_left(&two.unit()) + &s.embed_right(&two.unit());
        assert!(sum.approx_eq(&s.algebra().unit(), 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = two.random_element(&mut rng);
        let y = two.random_element(&mut rng);
        let lhs = s.embed_right(&(&x * &y));
        let rhs = &s.embed_right(&x) * &s.embed_right(&y);
        assert!(lhs.distance(&rhs) < 1e-12);
        assert!(s.left_ideal().contains(&s.embed_left(&x), 0.0).unwrap());
    }

    #[test]
    fn enumerate_ideals_counts_and_guard() {
        assert_eq!(BlockAlgebra::new(&[1, 1]).unwrap().enumerate_ideals().unwrap().len(), 4);
        let ideals = BlockAlgebra::new(&[1, 2, 1]).unwrap().enumerate_ideals().unwrap();
        assert_eq!(ideals.len(), 8);
        let distinct: BTreeSet<Vec<usize>> = ideals.iter().map(|i| i.support().iter().copied().collect()).collect();
        assert_eq!(distinct.len(), 8);
        let big = BlockAlgebra::new(&[1; 25]).unwrap();
        assert!(matches!(big.enumerate_ideals(), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn ideal_sets_are_two_sided_star_closed() {
        let a = BlockAlgebra::new(&[2, 1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ideal in a.enumerate_ideals().unwrap() {
            for _ in 0..5 {
                let i1 = ideal.project(&a.random_element(&mut rng)).unwrap();
                let i2 = ideal.project(&a.random_element(&mut rng)).unwrap();
                let x = a.random_element(&mut rng);
                for y in [&i1 + &i2, &x * &i1, &i1 * &x, i1.adjoint()] {
                    assert!(ideal.contains(&y, 1e-14).unwrap());
                }
            }
            for other in a.enumerate_ideals().unwrap() {
                let u = other.unit();
                assert_eq!(ideal.contains(&u, 0.0).unwrap(), other.is_subset(&ideal).unwrap());
            }
        }
    }

    #[test]
    fn ownership_mismatch_is_reported() {
        let a = BlockAlgebra::new(&[1, 1]).unwrap();
        let b = BlockAlgebra::new(&[1, 2]).unwrap();
        assert!(matches!(
            a.zero_ideal().meet(&b.zero_ideal()),
            Err(Error::OwnershipMismatch(_))
        ));
        assert!(quotient(&a, &b.zero_ideal()).is_err());
    }
}

//! Concrete numerics for the dynamical bimodule `E = δ(1)A`.
//!
//! Every level `E^{⊗n}` is localized through the identity representation of
//! `A`: `H_0 = C^d` and `H_{n+1} = E ⊗_A H_n`, where `H_n` carries the
//! representation `π_n = φ^{(n)}` of `A`. A level is built from the algebraic
//! tensor of a spanning family by forming the Gram matrix
//! `⟨x⊗h, y⊗k⟩ = ⟨h, π_n(x*y) k⟩`, discarding its numerical null space and
//! keeping an orthonormal basis of the quotient.

mod relations;

pub use relations::{
    associated_ideal, coisometric_check, covariance_check, covariant_from_toeplitz, gauge_rotate, round_trip,
    star_property_check, toeplitz_check, toeplitz_from_covariant, Amplification, CoisometryReport, CovarianceReport,
    CovariantPair, RoundTripReport, StarReport, ToeplitzPair, ToeplitzReport,
};

use nalgebra::SymmetricEigen;

use crate::algebra::{operator_norm, AlgebraElement, BlockAlgebra};
use crate::dynamics::Endomorphism;
use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Eigenvalues below this fraction of the largest one span the null space.
pub const NULL_TOL: f64 = 1e-10;
/// A Gram eigenvalue below this is treated as a modelling failure.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = -1e-9;
/// Limit on `Σ_n dim H_n`.
pub const MAX_FOCK_DIM: usize = 4096;
/// Limit on the size of a single Gram matrix.
pub const MAX_GRAM_DIM: usize = 4096;

/// `E = δ(1)A` with `a·x = δ(a)x`, `x·a = xa` and `⟨x, y⟩_A = x*y`.
///
/// In the canonical realization `δ(1)` is diagonal, so `E` is spanned by the
/// matrix units `e^{(b)}_{r,c}` with `r` below the rank of `δ(1)` in block `b`;
/// these form the module basis, in block-major, row-major order.
#[derive(Clone, Debug)]
pub struct ConcreteBimodule {
    endo: Endomorphism,
    unit_image: AlgebraElement,
    basis: Vec<(usize, usize, usize)>,
}

impl ConcreteBimodule {
    pub fn new(endo: &Endomorphism) -> Self {
        let ranks = endo.unit_ranks();
        let basis = endo
            .algebra()
            .matrix_unit_labels()
            .into_iter()
            .filter(|&(b, r, _)| r < ranks[b])
            .collect();
        Self {
            endo: endo.clone(),
            unit_image: endo.unit_image(),
            basis,
        }
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        self.endo.algebra()
    }

    pub fn endo(&self) -> &Endomorphism {
        &self.endo
    }

    /// `δ(1)`, itself a vector of `E`.
    pub fn unit_image(&self) -> &AlgebraElement {
        &self.unit_image
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> &[(usize, usize, usize)] {
        &self.basis
    }

    pub fn basis_vector(&self, s: usize) -> AlgebraElement {
        let (b, r, c) = self.basis[s];
        self.algebra().matrix_unit(b, r, c)
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dim()).map(|s| self.basis_vector(s)).collect()
    }

    pub fn contains(&self, x: &AlgebraElement, tol: f64) -> bool {
        (&self.unit_image * x).distance(x) <= tol
    }

    /// Coefficients of `x` on the module basis.
    pub fn coordinates(&self, x: &AlgebraElement) -> Result<Vec<C64>> {
        if x.algebra() != self.algebra() {
            return Err(Error::OwnershipMismatch("vector of a different algebra".into()));
        }
        if !self.contains(x, 1e-12) {
            return Err(Error::MalformedInput("element does not lie in δ(1)A".into()));
        }
        Ok(self.basis.iter().map(|&(b, r, c)| x.block(b)[(r, c)]).collect())
    }

    pub fn inner(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        &x.adjoint() * y
    }

    pub fn left(&self, a: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
        &self.endo.apply(a) * x
    }

    pub fn right(&self, x: &AlgebraElement, a: &AlgebraElement) -> AlgebraElement {
        x * a
    }
}

/// A localized level `H_n` with its representation `π_n`, stored on the
/// matrix units of `A`.
#[derive(Clone, Debug)]
pub struct LevelSpace {
    algebra: BlockAlgebra,
    dim: usize,
    pi_units: Vec<CMatrix>,
}

impl LevelSpace {
    /// `H_0 = C^d` with the identity representation.
    pub fn ground(algebra: &BlockAlgebra) -> Self {
        Self {
            algebra: algebra.clone(),
            dim: algebra.total_dim(),
            pi_units: algebra
                .matrix_unit_labels()
                .into_iter()
                .map(|(b, r, c)| algebra.matrix_unit(b, r, c).to_dense())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pi_units(&self) -> &[CMatrix] {
        &self.pi_units
    }

    pub fn pi(&self, a: &AlgebraElement) -> CMatrix {
        expand(&a.coefficients(), &self.pi_units, self.dim)
    }
}

/// Product that skips zero entries. Fock operators are block-sparse by level,
/// and skipping exact zeros leaves the floating-point result unchanged.
pub(crate) fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch in product");
    let zero = C64::new(0.0, 0.0);
    let support: Vec<Vec<usize>> = (0..a.ncols())
        .map(|k| (0..a.nrows()).filter(|&i| a[(i, k)] != zero).collect())
        .collect();
    let mut out = CMatrix::zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for (k, rows) in support.iter().enumerate() {
            let z = b[(k, j)];
            if z == zero {
                continue;
            }
            for &i in rows {
                out[(i, j)] += a[(i, k)] * z;
            }
        }
    }
    out
}

pub(crate) fn expand(coeffs: &[C64], images: &[CMatrix], dim: usize) -> CMatrix {
    let mut out = CMatrix::zeros(dim, dim);
    for (z, m) in coeffs.iter().zip(images) {
        if *z != C64::new(0.0, 0.0) {
            out += m * *z;
        }
    }
    out
}

/// Result of one tensoring step `H_{n+1} = E ⊗_A H_n`.
#[derive(Clone, Debug)]
pub struct TensorStep {
    pub space: LevelSpace,
    /// `h ↦ x_s ⊗ h` as a `dim H_{n+1} × dim H_n` matrix, per module basis vector.
    pub creation: Vec<CMatrix>,
    /// Smallest Gram eigenvalue before the null-space cut.
    pub min_eigenvalue: f64,
}

/// `⟨x⊗h, y⊗k⟩ = ⟨h, π_n(x*y)k⟩` for arbitrary module vectors and level vectors.
pub fn tensor_inner(
    level: &LevelSpace,
    module: &ConcreteBimodule,
    x: &AlgebraElement,
    h: &CMatrix,
    y: &AlgebraElement,
    k: &CMatrix,
) -> C64 {
    (h.adjoint() * level.pi(&module.inner(x, y)) * k)[(0, 0)]
}

impl TensorStep {
    /// Coordinates of `x ⊗ h` in the orthonormal basis of the new level.
    pub fn embed(&self, module: &ConcreteBimodule, x: &AlgebraElement, h: &CMatrix) -> Result<CMatrix> {
        let coeffs = module.coordinates(x)?;
        let mut out = CMatrix::zeros(self.space.dim(), h.ncols());
        for (s, z) in coeffs.iter().enumerate() {
            if *z != C64::new(0.0, 0.0) {
                out += &self.creation[s] * h * *z;
            }
        }
        Ok(out)
    }

    /// Norm of `(x·a)⊗h − x⊗π_n(a)h`, which must vanish in `E ⊗_A H_n`.
    pub fn balancing_residual(
        &self,
        prev: &LevelSpace,
        module: &ConcreteBimodule,
        x: &AlgebraElement,
        a: &AlgebraElement,
        h: &CMatrix,
    ) -> Result<f64> {
        let lhs = self.embed(module, &module.right(x, a), h)?;
        let rhs = self.embed(module, x, &(prev.pi(a) * h))?;
        Ok((lhs - rhs).norm())
    }
}

pub fn internal_tensor(prev: &LevelSpace, module: &ConcreteBimodule) -> Result<TensorStep> {
    let algebra = module.algebra();
    if &prev.algebra != algebra {
        return Err(Error::OwnershipMismatch("level space of a different algebra".into()));
    }
    let m = module.dim();
    let p = prev.dim;
    let n_units = prev.pi_units.len();
    let family = m * p;
    if family == 0 {
        return Ok(TensorStep {
            space: LevelSpace {
                algebra: algebra.clone(),
                dim: 0,
                pi_units: vec![CMatrix::zeros(0, 0); n_units],
            },
            creation: vec![CMatrix::zeros(0, p); m],
            min_eigenvalue: 0.0,
        });
    }
    if family > MAX_GRAM_DIM {
        return Err(Error::ResourceGuard(format!(
            "Gram matrix of size {family} exceeds the limit of {MAX_GRAM_DIM}"
        )));
    }

    let basis = module.basis();
    let mut gram = CMatrix::zeros(family, family);
    for (s, xs) in basis.iter().enumerate() {
        for (s2, xs2) in basis.iter().enumerate() {
            let block = prev.pi(&module.inner(xs, xs2));
            gram.view_mut((s * p, s2 * p), (p, p)).copy_from(&block);
        }
    }
    let gram = (&gram + gram.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(gram.clone());
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < NEGATIVE_EIGENVALUE_TOL {
        return Err(Error::NumericalFailure(format!(
            "Gram matrix has eigenvalue {min_eigenvalue:e}"
        )));
    }
    let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..family)
        .filter(|&i| top > 0.0 && eig.eigenvalues[i] > NULL_TOL * top)
        .collect();
    let rank = keep.len();

    // Orthonormal basis e_k = Σ_f coeff[f,k] f, and coordinates ⟨e_k, f⟩ = (coeff* G)[k,f].
    let coeff = CMatrix::from_fn(family, rank, |f, k| {
        let i = keep[k];
        eig.eigenvectors[(f, i)] / eig.eigenvalues[i].sqrt()
    });
    let coords = coeff.adjoint() * &gram;

    let creation: Vec<CMatrix> = (0..m).map(|s| coords.columns(s * p, p).into_owned()).collect();

    // π_{n+1}(u)(x_s ⊗ h) = (δ(u)x_s) ⊗ h, with δ(u)x_s expanded on the module basis.
    let mut pi_units = Vec::with_capacity(n_units);
    for (b, r, c) in algebra.matrix_unit_labels() {
        let u = algebra.matrix_unit(b, r, c);
        let mut image = CMatrix::zeros(rank, rank);
        for (s, xs) in basis.iter().enumerate() {
            let moved = module.left(&u, xs);
            let coeffs = module.coordinates(&moved)?;
            for (s2, z) in coeffs.iter().enumerate() {
                if *z != C64::new(0.0, 0.0) {
                    image += &creation[s2] * coeff.rows(s * p, p) * *z;
                }
            }
        }
        pi_units.push(image);
    }

    Ok(TensorStep {
        space: LevelSpace {
            algebra: algebra.clone(),
            dim: rank,
            pi_units,
        },
        creation,
        min_eigenvalue,
    })
}

/// Truncated Fock representation on `H_0 ⊕ … ⊕ H_N`.
#[derive(Clone, Debug)]
pub struct FockRep {
    module: ConcreteBimodule,
    levels: Vec<LevelSpace>,
    creation: Vec<Vec<CMatrix>>,
    offsets: Vec<usize>,
    total_dim: usize,
}

/// Tolerance of the isometry certificate `‖T(x)‖ = ‖x‖`.
pub const ISOMETRY_TOL: f64 = 1e-8;

pub fn fock_rep(endo: &Endomorphism, truncation: usize) -> Result<FockRep> {
    if truncation == 0 {
        return Err(Error::MalformedInput("Fock truncation level must be at least 1".into()));
    }
    let module = ConcreteBimodule::new(endo);
    let mut levels = vec![LevelSpace::ground(endo.algebra())];
    let mut creation = Vec::with_capacity(truncation);
    let mut total = levels[0].dim();
    for _ in 0..truncation {
        let step = internal_tensor(levels.last().expect("non-empty"), &module)?;
        total += step.space.dim();
        if total > MAX_FOCK_DIM {
            return Err(Error::ResourceGuard(format!(
                "Fock space dimension exceeds {MAX_FOCK_DIM} by level {}",
                levels.len()
            )));
        }
        creation.push(step.creation);
        levels.push(step.space);
    }
    let mut offsets = Vec::with_capacity(levels.len());
    let mut acc = 0;
    for l in &levels {
        offsets.push(acc);
        acc += l.dim();
    }
    let rep = FockRep {
        module,
        levels,
        creation,
        offsets,
        total_dim: acc,
    };
    let residual = rep.isometry_residual();
    if residual > ISOMETRY_TOL {
        return Err(Error::Verification(format!(
            "creation operators are not isometric: residual {residual:e}"
        )));
    }
    Ok(rep)
}

impl FockRep {
    pub fn module(&self) -> &ConcreteBimodule {
        &self.module
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &LevelSpace {
        &self.levels[n]
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.levels.iter().map(LevelSpace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// `φ_∞(a)`, block diagonal over the levels.
    pub fn pi(&self, a: &AlgebraElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.total_dim, self.total_dim);
        for (l, &o) in self.levels.iter().zip(&self.offsets) {
            if l.dim() > 0 {
                out.view_mut((o, o), (l.dim(), l.dim())).copy_from(&l.pi(a));
            }
        }
        out
    }

    pub fn pi_units(&self) -> Vec<CMatrix> {
        let algebra = self.module.algebra();
        algebra
            .matrix_unit_labels()
            .into_iter()
            .map(|(b, r, c)| self.pi(&algebra.matrix_unit(b, r, c)))
            .collect()
    }

    /// `T_N(e_s)` for the `s`-th module basis vector.
    pub fn creation_basis(&self, s: usize) -> CMatrix {
        let mut out = CMatrix::zeros(self.total_dim, self.total_dim);
        for (n, per_level) in self.creation.iter().enumerate() {
            let block = &per_level[s];
            if !block.is_empty() {
                out.view_mut((self.offsets[n + 1], self.offsets[n]), block.shape())
                    .copy_from(block);
            }
        }
        out
    }

    /// Creation operator `T_N(x)`; zero on the top level.
    pub fn creation(&self, x: &AlgebraElement) -> Result<CMatrix> {
        let coeffs = self.module.coordinates(x)?;
        let mut out = CMatrix::zeros(self.total_dim, self.total_dim);
        for (s, z) in coeffs.iter().enumerate() {
            if *z != C64::new(0.0, 0.0) {
                out += self.creation_basis(s) * *z;
            }
        }
        Ok(out)
    }

    pub fn annihilation(&self, x: &AlgebraElement) -> Result<CMatrix> {
        Ok(self.creation(x)?.adjoint())
    }

    fn level_projection_up_to(&self, top: usize) -> CMatrix {
        let mut out = CMatrix::zeros(self.total_dim, self.total_dim);
        for n in 0..=top.min(self.truncation()) {
            for i in 0..self.levels[n].dim() {
                out[(self.offsets[n] + i, self.offsets[n] + i)] = C64::new(1.0, 0.0);
            }
        }
        out
    }

    /// `P_0`, the projection onto `H_0`.
    pub fn vacuum_projection(&self) -> CMatrix {
        self.level_projection_up_to(0)
    }

    /// Projection onto the levels `≤ N−1`, where truncated operators are exact.
    pub fn exact_domain(&self) -> CMatrix {
        self.level_projection_up_to(self.truncation() - 1)
    }

    /// `max | ‖T(x)‖ − ‖x‖ |` over the module basis, `δ(1)` and a fixed combination.
    pub fn isometry_residual(&self) -> f64 {
        let mut probes = self.module.basis();
        probes.push(self.module.unit_image().clone());
        if !probes.is_empty() {
            let mut combo = self.module.algebra().zero_element();
            for (i, x) in self.module.basis().iter().enumerate() {
                let w = C64::new(1.0 / (i as f64 + 1.0), (i as f64 * 0.7).sin());
                combo = &combo + &x.scale(w);
            }
            probes.push(combo);
        }
        probes
            .iter()
            .map(|x| {
                let t = self.creation(x).expect("probe lies in E");
                (operator_norm(&t) - x.norm()).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `T(x)*(x_1 ⊗ h) = π_n(⟨x, x_1⟩_A) h` on the spanning vectors of every
    /// level below the top.
    pub fn annihilation_residual(&self) -> f64 {
        let basis = self.module.basis();
        let mut worst: f64 = 0.0;
        for n in 0..self.truncation() {
            let p = self.levels[n].dim();
            for (s1, x1) in basis.iter().enumerate() {
                let up = &self.creation[n][s1];
                for (s, x) in basis.iter().enumerate() {
                    let down = self.creation[n][s].adjoint();
                    let expected = self.levels[n].pi(&self.module.inner(x, x1));
                    // columns are the images of the spanning vectors x_1 ⊗ b_t
                    let got = &down * up;
                    for t in 0..p {
                        let diff = got.column(t) - expected.column(t);
                        worst = worst.max(diff.norm());
                    }
                }
            }
        }
        worst
    }

    /// The Fock pair `(T, φ_∞)`, restricted to levels `≤ N−1` for checks.
    pub fn toeplitz_pair(&self) -> ToeplitzPair {
        ToeplitzPair::from_parts(
            self.module.clone(),
            (0..self.module.dim()).map(|s| self.creation_basis(s)).collect(),
            self.pi_units(),
            Some(self.exact_domain()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sparse_product_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = CMatrix::from_fn(5, 4, |i, j| {
            if (i + j) % 3 == 0 {
                C64::new(rng_f(&mut rng), rng_f(&mut rng))
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let b = CMatrix::from_fn(4, 3, |i, j| {
            if i != j {
                C64::new(rng_f(&mut rng), 0.5)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!((mul(&a, &b) - &a * &b).norm() < 1e-15);
    }

    fn endo(dims: &[usize], m: &[&[usize]]) -> Endomorphism {
        Endomorphism::new(
            &BlockAlgebra::new(dims).unwrap(),
            m.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    /// dim H_n = rank δ^n(1): `E^{⊗n} ⊗_A C^d ≅ δ^n(1)C^d` via
    /// `x_1⊗…⊗x_n⊗ξ ↦ δ^{n-1}(x_1)⋯x_n ξ`.
    fn rank_oracle(d: &Endomorphism, n: usize) -> usize {
        d.iterate(n).unit_ranks().iter().sum()
    }

    #[test]
    fn module_axioms_hold() {
        let d = endo(&[2, 1], &[&[0, 2], &[0, 1]]);
        let module = ConcreteBimodule::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let alg = module.algebra().clone();
        for _ in 0..20 {
            let x = &module.unit_image().clone() * &alg.random_element(&mut rng);
            let y = &module.unit_image().clone() * &alg.random_element(&mut rng);
            let a = alg.random_element(&mut rng);
            assert!(
                module
                    .inner(&x, &module.right(&y, &a))
                    .distance(&(&module.inner(&x, &y) * &a))
                    < 1e-12
            );
            assert!(module.inner(&x, &y).adjoint().distance(&module.inner(&y, &x)) < 1e-12);
            let xx = module.inner(&x, &x).to_dense();
            let eig = SymmetricEigen::new(xx);
            assert!(eig.eigenvalues.iter().all(|&l| l > -1e-12));
            let lhs = module.inner(&module.left(&a, &x), &y);
            let rhs = module.inner(&x, &module.left(&a.adjoint(), &y));
            assert!(lhs.distance(&rhs) < 1e-12);
        }
    }

    #[test]
    fn internal_tensor_examples() {
        let swap = endo(&[1, 1], &[&[0, 1], &[1, 0]]);
        let module = ConcreteBimodule::new(&swap);
        let step = internal_tensor(&LevelSpace::ground(swap.algebra()), &module).unwrap();
        assert_eq!(step.space.dim(), 2);

        let diag = endo(&[1, 1], &[&[1, 0], &[1, 0]]);
        let module = ConcreteBimodule::new(&diag);
        let h1 = internal_tensor(&LevelSpace::ground(diag.algebra()), &module).unwrap();
        assert_eq!(h1.space.dim(), 2);
        let h2 = internal_tensor(&h1.space, &module).unwrap();
        assert_eq!(h2.space.dim(), rank_oracle(&diag, 2));

        let zero = endo(&[1, 2], &[&[0, 0], &[0, 0]]);
        let rep = fock_rep(&zero, 3).unwrap();
        assert_eq!(rep.level_dims(), vec![3, 0, 0, 0]);
    }

    #[test]
    fn balancing_relation_lies_in_null_space() {
        let d = endo(&[1, 2, 1], &[&[0, 0, 1], &[1, 0, 1], &[0, 0, 1]]);
        let module = ConcreteBimodule::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut level = LevelSpace::ground(d.algebra());
        for _ in 0..3 {
            let step = internal_tensor(&level, &module).unwrap();
            for _ in 0..10 {
                let x = &module.unit_image().clone() * &d.algebra().random_element(&mut rng);
                let y = &module.unit_image().clone() * &d.algebra().random_element(&mut rng);
                let a = d.algebra().random_element(&mut rng);
                let h = CMatrix::from_fn(level.dim(), 1, |_, _| C64::new(rng_f(&mut rng), rng_f(&mut rng)));
                let k = CMatrix::from_fn(level.dim(), 1, |_, _| C64::new(rng_f(&mut rng), rng_f(&mut rng)));
                assert!(step.balancing_residual(&level, &module, &x, &a, &h).unwrap() < 1e-9);
                // the orthonormal coordinates reproduce the tensor inner product
                let got =
                    (step.embed(&module, &x, &h).unwrap().adjoint() * step.embed(&module, &y, &k).unwrap())[(0, 0)];
                let want = tensor_inner(&level, &module, &x, &h, &y, &k);
                assert!((got - want).norm() < 1e-10);
            }
            level = step.space;
        }
    }

    fn rng_f(rng: &mut ChaCha8Rng) -> f64 {
        use rand::Rng;
        rng.gen_range(-1.0..1.0)
    }

    #[test]
    fn fock_rep_examples() {
        let swap = endo(&[1, 1], &[&[0, 1], &[1, 0]]);
        let rep = fock_rep(&swap, 3).unwrap();
        assert_eq!(rep.total_dim(), 8);

        let zero = endo(&[1, 1], &[&[0, 0], &[0, 0]]);
        let rep = fock_rep(&zero, 2).unwrap();
        assert_eq!(rep.total_dim(), 2);
        assert_eq!(rep.module().dim(), 0);
        let t = rep.creation(&zero.unit_image()).unwrap();
        assert_eq!(t, CMatrix::zeros(2, 2));

        let unital = endo(&[1, 2], &[&[1, 0], &[2, 0]]);
        let rep = fock_rep(&unital, 2).unwrap();
        let t = rep.creation(&unital.unit_image()).unwrap();
        assert!((operator_norm(&t) - 1.0).abs() < 1e-12);

        assert!(matches!(fock_rep(&swap, 0), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn level_dimensions_match_rank_oracle() {
        let cases = [
            endo(&[1, 2], &[&[1, 0], &[2, 0]]),
            endo(&[2, 1, 1], &[&[0, 1, 1], &[0, 0, 1], &[0, 1, 0]]),
            endo(&[3, 1], &[&[0, 3], &[0, 0]]),
            endo(&[2, 2], &[&[1, 0], &[0, 0]]),
        ];
        for d in &cases {
            let rep = fock_rep(d, 4).unwrap();
            let expected: Vec<usize> = (0..=4).map(|n| rank_oracle(d, n)).collect();
            assert_eq!(rep.level_dims(), expected, "{:?}", d.mult());
        }
    }

    #[test]
    fn fock_dimension_guard() {
        let big = endo(&[40], &[&[1]]);
        assert!(matches!(fock_rep(&big, 2), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn vacuum_projection_commutes_with_pi() {
        let d = endo(&[2, 1], &[&[0, 2], &[0, 1]]);
        let rep = fock_rep(&d, 3).unwrap();
        let p0 = rep.vacuum_projection();
        assert!((&p0 * &p0 - &p0).norm() < 1e-14);
        assert!((p0.adjoint() - &p0).norm() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let a = d.algebra().random_element(&mut rng);
            let pa = rep.pi(&a);
            assert!((&p0 * &pa - &pa * &p0).norm() < 1e-12);
        }
    }

    #[test]
    fn creation_raises_level_and_kills_top() {
        let d = endo(&[1, 2], &[&[1, 0], &[2, 0]]);
        let rep = fock_rep(&d, 3).unwrap();
        let t = rep.creation(&d.unit_image()).unwrap();
        let dims = rep.level_dims();
        let top = dims[..3].iter().sum::<usize>();
        assert!(t.columns(top, dims[3]).norm() < 1e-15);
        // nothing lands in level 0
        assert!(t.rows(0, dims[0]).norm() < 1e-15);
        assert!(rep.annihilation_residual() < 1e-10);
    }
}

//! Toeplitz and covariant representations, and the checks relating them.
//!
//! Pairs may carry a `domain` projection. Relations are then evaluated as
//! `‖(lhs − rhs)P‖`, which is how truncated Fock operators are compared with
//! the untruncated ones: below the top level they agree exactly.

use super::{expand, mul, ConcreteBimodule};
use crate::algebra::{operator_norm, AlgebraElement, Ideal};
use crate::dynamics::Endomorphism;
use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Acceptance threshold for pairs fed into the correspondence.
pub const PAIR_TOL: f64 = 1e-8;

fn residual(m: &CMatrix, domain: Option<&CMatrix>) -> f64 {
    let mut worst = WorstNorm::default();
    worst.push(m, domain);
    worst.0
}

/// Running maximum of operator norms. The Frobenius norm bounds the operator
/// norm from above, so an SVD is only needed when it could raise the maximum.
#[derive(Default)]
struct WorstNorm(f64);

impl WorstNorm {
    fn push(&mut self, m: &CMatrix, domain: Option<&CMatrix>) {
        let m = match domain {
            Some(p) => mul(m, p),
            None => m.clone(),
        };
        if m.norm() > self.0 {
            self.0 = self.0.max(operator_norm(&m));
        }
    }
}

/// `(ψ, π)` given on the module basis of `E` and the matrix units of `A`.
#[derive(Clone, Debug)]
pub struct ToeplitzPair {
    module: ConcreteBimodule,
    psi_basis: Vec<CMatrix>,
    pi_units: Vec<CMatrix>,
    domain: Option<CMatrix>,
    dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToeplitzReport {
    /// `ψ(x·a) = ψ(x)π(a)`
    pub right_action: f64,
    /// `ψ(x)*ψ(y) = π(⟨x, y⟩_A)`
    pub inner_product: f64,
    /// `ψ(a·x) = π(a)ψ(x)`
    pub left_action: f64,
    /// Residuals were taken on a compression (truncated representation).
    pub compressed: bool,
}

impl ToeplitzReport {
    pub fn max(&self) -> f64 {
        self.right_action.max(self.inner_product).max(self.left_action)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() < tol
    }

    pub fn worst(&self) -> (&'static str, f64) {
        [
            ("right action", self.right_action),
            ("inner product", self.inner_product),
            ("left action", self.left_action),
        ]
        .into_iter()
        .fold(
            ("right action", f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        )
    }
}

impl ToeplitzPair {
    /// Panics if the matrices do not all have the same square shape or the
    /// counts do not match the module basis and matrix units.
    pub fn from_parts(
        module: ConcreteBimodule,
        psi_basis: Vec<CMatrix>,
        pi_units: Vec<CMatrix>,
        domain: Option<CMatrix>,
    ) -> Self {
        assert_eq!(psi_basis.len(), module.dim());
        assert_eq!(pi_units.len(), module.algebra().linear_dim());
        let dim = pi_units.first().map_or(0, |m| m.nrows());
        for m in psi_basis.iter().chain(&pi_units).chain(domain.iter()) {
            assert_eq!(m.shape(), (dim, dim), "operators on different spaces");
        }
        Self {
            module,
            psi_basis,
            pi_units,
            domain,
            dim,
        }
    }

    pub fn module(&self) -> &ConcreteBimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Option<&CMatrix> {
        self.domain.as_ref()
    }

    pub fn psi_basis(&self) -> &[CMatrix] {
        &self.psi_basis
    }

    pub fn pi_units(&self) -> &[CMatrix] {
        &self.pi_units
    }

    pub fn psi(&self, x: &AlgebraElement) -> Result<CMatrix> {
        let coeffs = self.module.coordinates(x)?;
        Ok(expand(&coeffs, &self.psi_basis, self.dim))
    }

    pub fn pi(&self, a: &AlgebraElement) -> CMatrix {
        expand(&a.coefficients(), &self.pi_units, self.dim)
    }

    /// Same pair with `π` on the matrix unit `u` replaced.
    pub fn with_pi_unit(&self, u: usize, m: CMatrix) -> Self {
        let mut out = self.clone();
        out.pi_units[u] = m;
        out
    }

    /// Same pair with `ψ` on the basis vector `s` replaced.
    pub fn with_psi_basis(&self, s: usize, m: CMatrix) -> Self {
        let mut out = self.clone();
        out.psi_basis[s] = m;
        out
    }
}

/// Residuals of the three Toeplitz axioms over the module basis and the matrix units.
pub fn toeplitz_check(pair: &ToeplitzPair) -> ToeplitzReport {
    let module = &pair.module;
    let algebra = module.algebra();
    let domain = pair.domain.as_ref();
    let basis = module.basis();
    let units: Vec<AlgebraElement> = algebra
        .matrix_unit_labels()
        .into_iter()
        .map(|(b, r, c)| algebra.matrix_unit(b, r, c))
        .collect();

    let mut right_action = WorstNorm::default();
    let mut left_action = WorstNorm::default();
    let mut inner_product = WorstNorm::default();
    for (s, x) in basis.iter().enumerate() {
        let psi_adj = pair.psi_basis[s].adjoint();
        for (u, a) in units.iter().enumerate() {
            let xa = pair.psi(&module.right(x, a)).expect("x·a lies in E");
            right_action.push(&(xa - mul(&pair.psi_basis[s], &pair.pi_units[u])), domain);
            let ax = pair.psi(&module.left(a, x)).expect("a·x lies in E");
            left_action.push(&(ax - mul(&pair.pi_units[u], &pair.psi_basis[s])), domain);
        }
        for (t, y) in basis.iter().enumerate() {
            let lhs = mul(&psi_adj, &pair.psi_basis[t]);
            let rhs = pair.pi(&module.inner(x, y));
            inner_product.push(&(lhs - rhs), domain);
        }
    }
    ToeplitzReport {
        right_action: right_action.0,
        inner_product: inner_product.0,
        left_action: left_action.0,
        compressed: domain.is_some(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoisometryReport {
    pub residual: f64,
    pub generators: usize,
}

impl CoisometryReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.residual < tol
    }
}

/// `‖ψ(δ(a))ψ(δ(1))* − π(a)‖` over the matrix units `a` of `J`.
pub fn coisometric_check(pair: &ToeplitzPair, ideal: &Ideal) -> Result<CoisometryReport> {
    let module = &pair.module;
    let algebra = module.algebra();
    ideal.check_owner(algebra)?;
    let unit_adj = pair.psi(module.unit_image())?.adjoint();
    let mut worst = WorstNorm::default();
    let mut generators = 0;
    for (b, r, c) in algebra.matrix_unit_labels() {
        if !ideal.contains_block(b) {
            continue;
        }
        generators += 1;
        let a = algebra.matrix_unit(b, r, c);
        let lhs = mul(&pair.psi(&module.endo().apply(&a))?, &unit_adj);
        worst.push(&(lhs - pair.pi(&a)), pair.domain.as_ref());
    }
    Ok(CoisometryReport {
        residual: worst.0,
        generators,
    })
}

/// `(π, U)` on a common space, with `π` stored on matrix units.
#[derive(Clone, Debug)]
pub struct CovariantPair {
    endo: Endomorphism,
    pi_units: Vec<CMatrix>,
    u: CMatrix,
    domain: Option<CMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceReport {
    /// `Uπ(a)U* = π(δ(a))`
    pub conjugation: f64,
    /// `[U*U, π(a)] = 0`
    pub commutant: f64,
    /// `‖UU*U − U‖`
    pub partial_isometry: f64,
}

impl CovarianceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.conjugation < tol && self.commutant < tol
    }
}

impl CovariantPair {
    pub fn new(endo: &Endomorphism, pi_units: Vec<CMatrix>, u: CMatrix, domain: Option<CMatrix>) -> Self {
        assert_eq!(pi_units.len(), endo.algebra().linear_dim());
        let dim = u.nrows();
        for m in pi_units.iter().chain(std::iter::once(&u)).chain(domain.iter()) {
            assert_eq!(m.shape(), (dim, dim), "operators on different spaces");
        }
        Self {
            endo: endo.clone(),
            pi_units,
            u,
            domain,
        }
    }

    /// `π` = identity representation on `C^d`, `U` the coordinate
    /// permutation implementing the automorphism `δ`.
    pub fn unitary(endo: &Endomorphism) -> Result<Self> {
        if !endo.is_automorphism() {
            return Err(Error::MalformedInput("unitary pair needs an automorphism".into()));
        }
        let algebra = endo.algebra();
        let offsets = algebra.offsets();
        let d = algebra.total_dim();
        let mut u = CMatrix::zeros(d, d);
        for (i, row) in endo.mult().iter().enumerate() {
            let j = row.iter().position(|&m| m == 1).expect("permutation row");
            for r in 0..algebra.block_dims()[i] {
                u[(offsets[i] + r, offsets[j] + r)] = C64::new(1.0, 0.0);
            }
        }
        let pi_units = algebra
            .matrix_unit_labels()
            .into_iter()
            .map(|(b, r, c)| algebra.matrix_unit(b, r, c).to_dense())
            .collect();
        Ok(Self::new(endo, pi_units, u, None))
    }

    /// `ν` on `H^{2L+1}`: `π` on every site and `U` followed by the shift to
    /// the next site, cut off at the last site. The domain keeps sites `1..=2L`,
    /// where covariance survives the cut.
    pub fn amplified(&self, width: usize) -> Self {
        let sites = 2 * width + 1;
        let h = self.dim();
        let big = sites * h;
        let mut u = CMatrix::zeros(big, big);
        for s in 0..sites - 1 {
            u.view_mut(((s + 1) * h, s * h), (h, h)).copy_from(&self.u);
        }
        let pi_units = self
            .pi_units
            .iter()
            .map(|m| {
                let mut out = CMatrix::zeros(big, big);
                for s in 0..sites {
                    out.view_mut((s * h, s * h), (h, h)).copy_from(m);
                }
                out
            })
            .collect();
        let inner = self.domain.clone().unwrap_or_else(|| CMatrix::identity(h, h));
        let mut domain = CMatrix::zeros(big, big);
        for s in 1..sites {
            domain.view_mut((s * h, s * h), (h, h)).copy_from(&inner);
        }
        Self::new(&self.endo, pi_units, u, Some(domain))
    }

    pub fn endo(&self) -> &Endomorphism {
        &self.endo
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    pub fn pi_units(&self) -> &[CMatrix] {
        &self.pi_units
    }

    pub fn domain(&self) -> Option<&CMatrix> {
        self.domain.as_ref()
    }

    pub fn pi(&self, a: &AlgebraElement) -> CMatrix {
        expand(&a.coefficients(), &self.pi_units, self.dim())
    }

    pub fn partial_isometry_residual(&self) -> f64 {
        let u = &self.u;
        residual(&(u * u.adjoint() * u - u), self.domain.as_ref())
    }
}

pub fn covariance_check(pair: &CovariantPair) -> CovarianceReport {
    let algebra = pair.endo.algebra();
    let domain = pair.domain.as_ref();
    let u = &pair.u;
    let u_adj = u.adjoint();
    let support = mul(&u_adj, u);
    let mut conjugation = WorstNorm::default();
    let mut commutant = WorstNorm::default();
    for ((b, r, c), pa) in algebra.matrix_unit_labels().into_iter().zip(&pair.pi_units) {
        let a = algebra.matrix_unit(b, r, c);
        let lhs = mul(&mul(u, pa), &u_adj);
        conjugation.push(&(lhs - pair.pi(&pair.endo.apply(&a))), domain);
        commutant.push(&(mul(&support, pa) - mul(pa, &support)), domain);
    }
    CovarianceReport {
        conjugation: conjugation.0,
        commutant: commutant.0,
        partial_isometry: pair.partial_isometry_residual(),
    }
}

/// Largest block-supported ideal on which `U*Uπ(a) = π(a)` within `tol`:
/// a block belongs to it when every one of its matrix units satisfies the relation.
pub fn associated_ideal(pair: &CovariantPair, tol: f64) -> Ideal {
    let algebra = pair.endo.algebra();
    let support = pair.u.adjoint() * &pair.u;
    let domain = pair.domain.as_ref();
    let mut good = vec![true; algebra.num_blocks()];
    for ((b, _, _), pa) in algebra.matrix_unit_labels().into_iter().zip(&pair.pi_units) {
        if good[b] && residual(&(&support * pa - pa), domain) >= tol {
            good[b] = false;
        }
    }
    algebra
        .ideal((0..good.len()).filter(|&b| good[b]))
        .expect("indices in range")
}

/// `U := ψ(δ(1))*`, after checking the Toeplitz axioms.
pub fn covariant_from_toeplitz(pair: &ToeplitzPair) -> Result<CovariantPair> {
    let report = toeplitz_check(pair);
    if !report.passes(PAIR_TOL) {
        let (relation, residual) = report.worst();
        return Err(Error::Rejected {
            relation,
            residual,
            tol: PAIR_TOL,
        });
    }
    let u = pair.psi(pair.module.unit_image())?.adjoint();
    Ok(CovariantPair::new(
        pair.module.endo(),
        pair.pi_units.clone(),
        u,
        pair.domain.clone(),
    ))
}

/// `ψ(x) := U*π(x)`, after checking covariance.
pub fn toeplitz_from_covariant(pair: &CovariantPair) -> Result<ToeplitzPair> {
    let report = covariance_check(pair);
    if !report.passes(PAIR_TOL) {
        let (relation, residual) = if report.conjugation >= report.commutant {
            ("conjugation", report.conjugation)
        } else {
            ("commutant", report.commutant)
        };
        return Err(Error::Rejected {
            relation,
            residual,
            tol: PAIR_TOL,
        });
    }
    let module = ConcreteBimodule::new(&pair.endo);
    let u_adj = pair.u.adjoint();
    let psi_basis = module.basis().iter().map(|x| mul(&u_adj, &pair.pi(x))).collect();
    Ok(ToeplitzPair::from_parts(
        module,
        psi_basis,
        pair.pi_units.clone(),
        pair.domain.clone(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundTripReport {
    /// `max_s ‖ψ(x_s) − ψ″(x_s)‖`
    pub psi_residual: f64,
    /// `‖U − U″‖`
    pub u_residual: f64,
    pub forward: CovarianceReport,
    pub backward: ToeplitzReport,
}

impl RoundTripReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.psi_residual < tol
            && self.u_residual < tol
            && self.forward.passes(tol)
            && self.forward.partial_isometry < tol
            && self.backward.passes(tol)
    }
}

/// Toeplitz → covariant → Toeplitz → covariant, comparing each side with its image.
pub fn round_trip(pair: &ToeplitzPair) -> Result<RoundTripReport> {
    let cov = covariant_from_toeplitz(pair)?;
    let back = toeplitz_from_covariant(&cov)?;
    let u2 = back.psi(back.module.unit_image())?.adjoint();
    let domain = pair.domain.as_ref();
    let psi_residual = pair
        .psi_basis
        .iter()
        .zip(&back.psi_basis)
        .map(|(a, b)| residual(&(a - b), domain))
        .fold(0.0, f64::max);
    let u_residual = residual(&(&cov.u - u2), domain);
    Ok(RoundTripReport {
        psi_residual,
        u_residual,
        forward: covariance_check(&cov),
        backward: toeplitz_check(&back),
    })
}

/// `ψ′ = zψ`, `π′ = π`.
pub fn gauge_rotate(pair: &ToeplitzPair, z: C64) -> Result<ToeplitzPair> {
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::MalformedInput(format!("gauge parameter {z} is not unimodular")));
    }
    let mut out = pair.clone();
    for m in &mut out.psi_basis {
        *m *= z;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarReport {
    /// `‖Σ_m U*^m π(a_mm) U^m‖`
    pub lhs: f64,
    /// `‖ν(Σ_{m,n} u*^m a_mn u^n)‖` on the sites the cut-off shift does not reach.
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

/// A covariant pair together with its amplification `ν` of a fixed width,
/// reusable across many coefficient families.
#[derive(Clone, Debug)]
pub struct Amplification {
    pair: CovariantPair,
    amplified: CovariantPair,
    width: usize,
    /// `U^n` on the base space.
    u_pow: Vec<CMatrix>,
    /// `ν(u)^n` on the amplified space.
    nu_pow: Vec<CMatrix>,
    nu_pow_adj: Vec<CMatrix>,
}

impl Amplification {
    /// Accepts coefficient families of degree up to `width`. Rejects pairs
    /// failing covariance.
    pub fn new(pair: &CovariantPair, width: usize) -> Result<Self> {
        let report = covariance_check(pair);
        if !report.passes(PAIR_TOL) {
            return Err(Error::Rejected {
                relation: "covariance",
                residual: report.conjugation.max(report.commutant),
                tol: PAIR_TOL,
            });
        }
        let powers = |u: &CMatrix| {
            let mut out = vec![CMatrix::identity(u.nrows(), u.ncols())];
            for _ in 0..width {
                out.push(mul(u, out.last().expect("non-empty")));
            }
            out
        };
        let amplified = pair.amplified(width);
        let nu_pow = powers(&amplified.u);
        Ok(Self {
            u_pow: powers(&pair.u),
            nu_pow_adj: nu_pow.iter().map(CMatrix::adjoint).collect(),
            nu_pow,
            pair: pair.clone(),
            amplified,
            width,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `coeffs[m][n]` is the coefficient of `u*^m a u^n`; the family must be square.
    pub fn check(&self, coeffs: &[Vec<AlgebraElement>]) -> Result<StarReport> {
        let n = coeffs.len();
        if n == 0 || coeffs.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedInput(
                "coefficient family must be a non-empty square".into(),
            ));
        }
        let degree = n - 1;
        if self.width < degree {
            return Err(Error::MalformedInput(format!(
                "amplification width {} is below the degree {degree}",
                self.width
            )));
        }
        let algebra = self.pair.endo.algebra();
        if coeffs.iter().flatten().any(|a| a.algebra() != algebra) {
            return Err(Error::OwnershipMismatch("coefficient of a different algebra".into()));
        }

        let h = self.pair.dim();
        let mut diag = CMatrix::zeros(h, h);
        for (m, row) in coeffs.iter().enumerate() {
            diag += mul(&mul(&self.u_pow[m].adjoint(), &self.pair.pi(&row[m])), &self.u_pow[m]);
        }
        let lhs = operator_norm(&diag);

        // sites degree..=2L-degree: every shift in the element stays on the lattice
        let first = degree * h;
        let cols = (2 * self.width + 1 - 2 * degree) * h;
        let big = self.amplified.dim();
        let mut full = CMatrix::zeros(big, cols);
        let sites = 2 * self.width + 1;
        for (k, shifted) in self.nu_pow.iter().take(n).enumerate() {
            let shifted = shifted.columns(first, cols).into_owned();
            for (m, row) in coeffs.iter().enumerate() {
                // ν(a) = π(a) on every site
                let pa = self.pair.pi(&row[k]);
                let mut inner = CMatrix::zeros(big, cols);
                for site in 0..sites {
                    let block = mul(&pa, &shifted.rows(site * h, h).into_owned());
                    inner.rows_mut(site * h, h).copy_from(&block);
                }
                full += mul(&self.nu_pow_adj[m], &inner);
            }
        }
        let rhs = operator_norm(&full);
        let margin = rhs - lhs;
        Ok(StarReport {
            lhs,
            rhs,
            margin,
            holds: margin >= -1e-8,
        })
    }
}

/// Compare the diagonal part against the amplified full element.
///
/// `coeffs[m][n]` is the coefficient of `u*^m a u^n`; the family must be square
/// and its degree at most `width`.
pub fn star_property_check(pair: &CovariantPair, coeffs: &[Vec<AlgebraElement>], width: usize) -> Result<StarReport> {
    let degree = coeffs.len().saturating_sub(1);
    if width < degree {
        return Err(Error::MalformedInput(format!(
            "amplification width {width} is below the degree {degree}"
        )));
    }
    Amplification::new(pair, width)?.check(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BlockAlgebra;
    use crate::fock::fock_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn endo(dims: &[usize], m: &[&[usize]]) -> Endomorphism {
        Endomorphism::new(
            &BlockAlgebra::new(dims).unwrap(),
            m.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn swap() -> Endomorphism {
        endo(&[1, 1], &[&[0, 1], &[1, 0]])
    }

    fn fock_pair(d: &Endomorphism, n: usize) -> ToeplitzPair {
        fock_rep(d, n).unwrap().toeplitz_pair()
    }

    /// Negates `π` on the first matrix unit.
    fn corrupt(pair: &ToeplitzPair) -> ToeplitzPair {
        pair.with_pi_unit(0, -pair.pi_units()[0].clone())
    }

    #[test]
    fn fock_pair_is_toeplitz_below_the_top_level() {
        let report = toeplitz_check(&fock_pair(&swap(), 3));
        assert!(report.passes(1e-10), "{report:?}");
        assert!(report.compressed);
    }

    #[test]
    fn zero_vectors_give_zero_residuals() {
        let d = endo(&[1, 1], &[&[0, 0], &[0, 0]]);
        let report = toeplitz_check(&fock_pair(&d, 2));
        assert_eq!(report.max(), 0.0);
    }

    #[test]
    fn corrupted_psi_is_flagged() {
        let pair = fock_pair(&swap(), 3);
        let bad = corrupt(&pair);
        assert!(toeplitz_check(&bad).max() > 0.1);
    }

    #[test]
    fn coisometry_examples() {
        let d = endo(&[1, 2], &[&[1, 0], &[2, 0]]);
        let pair = fock_pair(&d, 3);
        let a = d.algebra();
        let zero = coisometric_check(&pair, &a.zero_ideal()).unwrap();
        assert_eq!(zero.residual, 0.0);
        assert_eq!(zero.generators, 0);
        assert!(coisometric_check(&pair, &a.ideal([0]).unwrap()).unwrap().residual > 0.5);

        let induced = toeplitz_from_covariant(&CovariantPair::unitary(&swap()).unwrap()).unwrap();
        let full = swap().algebra().full_ideal();
        assert!(coisometric_check(&induced, &full).unwrap().residual < 1e-10);
    }

    #[test]
    fn fock_covariant_pair() {
        let pair = fock_pair(&swap(), 3);
        let cov = covariant_from_toeplitz(&pair).unwrap();
        assert!(cov.partial_isometry_residual() < 1e-10);
        let report = covariance_check(&cov);
        assert!(report.passes(1e-10), "{report:?}");
        assert!(associated_ideal(&cov, 1e-8).is_zero());
    }

    #[test]
    fn round_trip_on_fock_pairs() {
        for d in [
            swap(),
            endo(&[1, 2], &[&[1, 0], &[2, 0]]),
            endo(&[2, 1], &[&[0, 2], &[0, 1]]),
        ] {
            let report = round_trip(&fock_pair(&d, 3)).unwrap();
            assert!(report.passes(1e-10), "{report:?}");
        }
    }

    #[test]
    fn zero_bimodule_round_trip() {
        let d = endo(&[1, 1], &[&[0, 0], &[0, 0]]);
        let pair = fock_pair(&d, 2);
        let cov = covariant_from_toeplitz(&pair).unwrap();
        assert_eq!(cov.u(), &CMatrix::zeros(2, 2));
        let back = toeplitz_from_covariant(&cov).unwrap();
        assert!(back.psi_basis().is_empty());
    }

    #[test]
    fn unitary_pair_for_swap() {
        let cov = CovariantPair::unitary(&swap()).unwrap();
        let report = covariance_check(&cov);
        assert!(report.conjugation < 1e-12 && report.commutant < 1e-12);
        assert!(associated_ideal(&cov, 1e-8).is_full());
        assert!(CovariantPair::unitary(&endo(&[1, 1], &[&[1, 0], &[1, 0]])).is_err());
    }

    #[test]
    fn zero_u_flags_conjugation_unless_delta_vanishes() {
        let d = swap();
        let cov = CovariantPair::new(
            &d,
            CovariantPair::unitary(&d).unwrap().pi_units().to_vec(),
            CMatrix::zeros(2, 2),
            None,
        );
        let report = covariance_check(&cov);
        assert_eq!(report.commutant, 0.0);
        assert!(report.conjugation > 0.5);
        assert!(associated_ideal(&cov, 1e-8).is_zero());

        let z = endo(&[1, 1], &[&[0, 0], &[0, 0]]);
        let cov = CovariantPair::new(&z, cov.pi_units().to_vec(), CMatrix::zeros(2, 2), None);
        assert_eq!(covariance_check(&cov).conjugation, 0.0);
    }

    #[test]
    fn rejected_inputs() {
        let pair = fock_pair(&swap(), 3);
        let bad = corrupt(&pair);
        assert!(matches!(covariant_from_toeplitz(&bad), Err(Error::Rejected { .. })));
        let d = swap();
        let cov = CovariantPair::new(
            &d,
            CovariantPair::unitary(&d).unwrap().pi_units().to_vec(),
            CMatrix::zeros(2, 2),
            None,
        );
        assert!(matches!(toeplitz_from_covariant(&cov), Err(Error::Rejected { .. })));
    }

    #[test]
    fn gauge_rotation_keeps_residuals() {
        let pair = fock_pair(&endo(&[1, 2], &[&[1, 0], &[2, 0]]), 3);
        let base = toeplitz_check(&pair);
        for z in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0)] {
            let rotated = gauge_rotate(&pair, z).unwrap();
            let r = toeplitz_check(&rotated);
            assert!((r.max() - base.max()).abs() < 1e-12);
        }
        let id = gauge_rotate(&pair, C64::new(1.0, 0.0)).unwrap();
        assert_eq!(id.psi_basis(), pair.psi_basis());
        let i = gauge_rotate(&pair, C64::new(0.0, 1.0)).unwrap();
        let zero = pair.module().algebra().zero_ideal();
        assert_eq!(
            coisometric_check(&i, &zero).unwrap(),
            coisometric_check(&pair, &zero).unwrap()
        );
        assert!(gauge_rotate(&pair, C64::new(1.1, 0.0)).is_err());
    }

    #[test]
    fn star_property_examples() {
        let d = swap();
        let cov = CovariantPair::unitary(&d).unwrap();
        let one = vec![vec![d.algebra().unit()]];
        let r = star_property_check(&cov, &one, 0).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12 && r.holds);

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = d.algebra().clone();
        let diag: Vec<Vec<AlgebraElement>> = (0..3)
            .map(|m| {
                (0..3)
                    .map(|n| {
                        if m == n {
                            a.random_element(&mut rng)
                        } else {
                            a.zero_element()
                        }
                    })
                    .collect()
            })
            .collect();
        let r = star_property_check(&cov, &diag, 2).unwrap();
        assert!(r.margin.abs() < 1e-8, "{r:?}");

        let amp = Amplification::new(&cov, 2).unwrap();
        for _ in 0..100 {
            let c: Vec<Vec<AlgebraElement>> = (0..3)
                .map(|_| (0..3).map(|_| a.random_element(&mut rng)).collect())
                .collect();
            let r = amp.check(&c).unwrap();
            assert!(r.holds);
            assert_eq!(r, star_property_check(&cov, &c, 2).unwrap());
        }
        assert!(matches!(
            star_property_check(&cov, &diag, 1),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn star_property_on_fock_pair() {
        let d = endo(&[1, 2], &[&[1, 0], &[2, 0]]);
        let cov = covariant_from_toeplitz(&fock_pair(&d, 3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let c: Vec<Vec<AlgebraElement>> = (0..3)
                .map(|_| (0..3).map(|_| d.algebra().random_element(&mut rng)).collect())
                .collect();
            assert!(star_property_check(&cov, &c, 2).unwrap().holds);
        }
    }

    #[test]
    fn amplified_pair_is_covariant_on_its_domain() {
        let cov = CovariantPair::unitary(&swap()).unwrap().amplified(2);
        let report = covariance_check(&cov);
        assert!(report.passes(1e-12), "{report:?}");
        assert!(cov.partial_isometry_residual() < 1e-12);
    }
}

//! Lattice-level shapes of Hilbert bimodules over block algebras.
//!
//! A shape records which isotypic components `(left block i, right block j)`
//! of `E` are non-zero. Everything the reduction procedure needs (kernel of
//! the left action, E-invariance, the ideal acting into `E·T`) is read off
//! this 0/1 matrix.

use crate::algebra::{quotient, BlockAlgebra, Ideal};
use crate::dynamics::Endomorphism;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorrespondenceShape {
    algebra: BlockAlgebra,
    act: Vec<Vec<bool>>,
}

impl CorrespondenceShape {
    pub fn new(algebra: &BlockAlgebra, act: Vec<Vec<bool>>) -> Result<Self> {
        let k = algebra.num_blocks();
        if act.len() != k || act.iter().any(|r| r.len() != k) {
            return Err(Error::MalformedInput(format!("shape matrix must be {k}x{k}")));
        }
        Ok(Self {
            algebra: algebra.clone(),
            act,
        })
    }

    /// Shape of `E = δ(1)A` with `a·x = δ(a)x`: left block `j` meets right
    /// block `i` exactly when `δ` places a copy of block `j` in block `i`.
    pub fn from_dynamics(endo: &Endomorphism) -> Self {
        let k = endo.algebra().num_blocks();
        let m = endo.mult();
        Self {
            algebra: endo.algebra().clone(),
            act: (0..k).map(|j| (0..k).map(|i| m[i][j] > 0).collect()).collect(),
        }
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn act(&self) -> &[Vec<bool>] {
        &self.act
    }

    /// Right blocks reached from left block `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.act[i].iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)
    }

    /// `ker φ`: left blocks acting as zero.
    pub fn left_kernel(&self) -> Ideal {
        let k = self.algebra.num_blocks();
        self.algebra
            .ideal((0..k).filter(|&i| self.row(i).next().is_none()))
            .expect("indices in range")
    }

    /// `J(E) = φ^{-1}(K(E))`. In finite dimension every adjointable operator
    /// is compact, so this is all of `A`.
    pub fn j_of_e(&self) -> Ideal {
        self.algebra.full_ideal()
    }

    /// `(ker φ)^⊥ ∩ J(E)`.
    pub fn suggested_ideal(&self) -> Ideal {
        self.left_kernel()
            .ortho_complement()
            .meet(&self.j_of_e())
            .expect("same owner")
    }

    /// Largest ideal `L` with `φ(L)E ⊆ E·T`: left blocks whose whole row lies in `T`.
    pub fn acts_into(&self, target: &Ideal) -> Result<Ideal> {
        target.check_owner(&self.algebra)?;
        let k = self.algebra.num_blocks();
        Ok(self
            .algebra
            .ideal((0..k).filter(|&i| self.row(i).all(|j| target.contains_block(j))))
            .expect("indices in range"))
    }

    /// `φ(I)E ⊆ E·I`.
    pub fn is_invariant(&self, ideal: &Ideal) -> Result<bool> {
        ideal.is_subset(&self.acts_into(ideal)?)
    }

    /// Shape of `E/EI` over `A/I` for an E-invariant `I`.
    ///
    /// Components with a dead left index and a live right index survive in
    /// `E/EI` with zero left action; they never influence `acts_into` and are
    /// not represented in the square shape.
    pub fn quotient_shape(&self, ideal: &Ideal) -> Result<CorrespondenceShape> {
        if !self.is_invariant(ideal)? {
            return Err(Error::InvarianceViolation(
                ideal.support().iter().map(|b| b + 1).collect(),
            ));
        }
        let q = quotient(&self.algebra, ideal)?;
        let map = q.index_map();
        Ok(CorrespondenceShape {
            algebra: q.target().clone(),
            act: map
                .iter()
                .map(|&i| map.iter().map(|&j| self.act[i][j]).collect())
                .collect(),
        })
    }
}

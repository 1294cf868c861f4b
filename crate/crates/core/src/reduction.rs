//! The reduction ideals `J_n`, their limit `J_∞`, and the reduced system.
//!
//! `J_∞` is computed three ways: the recursion `J_0 = ker φ ∩ J`,
//! `J_{n+1} = {a ∈ J : φ(a)E ⊆ E·J_n}` on the bimodule shape; the closed form
//! `J_n = δ^{-n}(ker δ) ∩ ⋂_{k≤n} δ^{-k}(J)` on the endomorphism; and a brute
//! force search for the smallest E-invariant ideal containing `ker φ ∩ J`
//! that is closed under `a ∈ J ∧ φ(a)E ⊆ E·I ⟹ a ∈ I`. Closure bars vanish in
//! finite dimension: every ideal is closed and the union stabilizes.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{quotient, BlockAlgebra, Ideal, QuotientData};
use crate::bimodule::CorrespondenceShape;
use crate::dynamics::{DynSystem, Endomorphism};
use crate::error::{Error, Result};

/// Largest block count accepted by [`brute_force_j_infinity`].
pub const MAX_BRUTE_FORCE_BLOCKS: usize = 12;

/// The recursive chain, including the first repeated member.
pub fn ideal_chain(shape: &CorrespondenceShape, j: &Ideal) -> Result<Vec<Ideal>> {
    let mut chain = vec![shape.left_kernel().meet(j)?];
    loop {
        let last = chain.last().expect("non-empty");
        let next = shape.acts_into(last)?.meet(j)?;
        let done = &next == last;
        chain.push(next);
        if done {
            return Ok(chain);
        }
        if chain.len() > shape.algebra().num_blocks() + 2 {
            return Err(Error::Verification("ideal chain failed to stabilize".into()));
        }
    }
}

/// `J_n` from iterated preimages, for every `n ≤ k` (the chain cannot grow
/// more than `k` times).
pub fn closed_form_chain(endo: &Endomorphism, j: &Ideal) -> Result<Vec<Ideal>> {
    j.check_owner(endo.algebra())?;
    let k = endo.algebra().num_blocks();
    let kernel = endo.kernel();
    let mut out = Vec::with_capacity(k + 1);
    // meet_j = ⋂_{m ≤ n} δ^{-m}(J)
    let mut meet_j = j.clone();
    for n in 0..=k {
        let power = endo.iterate(n);
        if n > 0 {
            meet_j = meet_j.meet(&power.preimage_ideal(j)?)?;
        }
        out.push(power.preimage_ideal(&kernel)?.meet(&meet_j)?);
    }
    Ok(out)
}

pub fn j_infinity_closed_form(endo: &Endomorphism, j: &Ideal) -> Result<Ideal> {
    let chain = closed_form_chain(endo, j)?;
    let mut union = endo.algebra().zero_ideal();
    for member in &chain {
        union = union.join(member)?;
    }
    Ok(union)
}

/// Minimum of the ideals that are E-invariant, contain `ker φ ∩ J` and satisfy
/// `(acts_into(I) ∩ J) ⊆ I`. The conditions are evaluated directly on the
/// shape matrix over all `2^k` ideals.
pub fn brute_force_j_infinity(shape: &CorrespondenceShape, j: &Ideal) -> Result<Ideal> {
    let algebra = shape.algebra();
    j.check_owner(algebra)?;
    let k = algebra.num_blocks();
    if k > MAX_BRUTE_FORCE_BLOCKS {
        return Err(Error::ResourceGuard(format!(
            "brute-force search over 2^{k} ideals exceeds the limit of 2^{MAX_BRUTE_FORCE_BLOCKS}"
        )));
    }
    let act = shape.act();
    let in_j = |b: usize| j.contains_block(b);
    let dead = |b: usize| act[b].iter().all(|&x| !x);
    let lands_in = |b: usize, set: u32| (0..k).all(|c| !act[b][c] || set >> c & 1 == 1);

    let qualifies = |set: u32| {
        let member = |b: usize| set >> b & 1 == 1;
        (0..k).all(|b| {
            let invariant = !member(b) || lands_in(b, set);
            let contains_base = !(dead(b) && in_j(b)) || member(b);
            let closed = !(in_j(b) && lands_in(b, set)) || member(b);
            invariant && contains_base && closed
        })
    };
    let family: Vec<u32> = (0u32..(1u32 << k)).filter(|&s| qualifies(s)).collect();
    let min = family
        .iter()
        .copied()
        .find(|&s| family.iter().all(|&t| s & t == s))
        .ok_or_else(|| Error::Verification(format!("no unique minimal ideal among {} candidates", family.len())))?;
    algebra.ideal((0..k).filter(|b| min >> b & 1 == 1))
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    system: DynSystem,
    chain: Vec<Ideal>,
    j_infinity: Ideal,
    stabilized_at: usize,
    quotient: QuotientData,
    reduced_endo: Endomorphism,
    reduced_ideal: Ideal,
    intertwining_residual: f64,
}

impl ReductionResult {
    pub fn system(&self) -> &DynSystem {
        &self.system
    }

    /// `J_0, J_1, …, J_n, J_{n+1}` with `J_n = J_{n+1}`.
    pub fn chain(&self) -> &[Ideal] {
        &self.chain
    }

    pub fn j_infinity(&self) -> &Ideal {
        &self.j_infinity
    }

    /// First `n` with `J_n = J_{n+1}`.
    pub fn stabilized_at(&self) -> usize {
        self.stabilized_at
    }

    pub fn quotient(&self) -> &QuotientData {
        &self.quotient
    }

    pub fn reduced_algebra(&self) -> &BlockAlgebra {
        self.quotient.target()
    }

    /// `δ_∞(a + J_∞) = δ(a) + J_∞`.
    pub fn reduced_endo(&self) -> &Endomorphism {
        &self.reduced_endo
    }

    /// `q^{J_∞}(J)`.
    pub fn reduced_ideal(&self) -> &Ideal {
        &self.reduced_ideal
    }

    /// `J_∞ = A`.
    pub fn is_degenerate(&self) -> bool {
        self.j_infinity.is_full()
    }

    /// `‖δ_∞(q(a)) − q(δ(a))‖` over the sampled elements.
    pub fn intertwining_residual(&self) -> f64 {
        self.intertwining_residual
    }
}

const INTERTWINING_SAMPLES: usize = 4;
const INTERTWINING_SEED: u64 = 0x0dd_ba11;

/// Runs the reduction and checks every certificate: the recursive and
/// closed-form limits agree, the chain is increasing and E-invariant, it
/// stabilizes within `k` steps, `ker δ_∞ ∩ q(J) = {0}`, and `δ_∞ ∘ q = q ∘ δ`.
pub fn reduce_system(system: &DynSystem) -> Result<ReductionResult> {
    let algebra = system.algebra();
    let endo = system.endo();
    let j = system.ideal();
    let shape = CorrespondenceShape::from_dynamics(endo);

    let chain = ideal_chain(&shape, j)?;
    let j_infinity = chain.last().expect("non-empty").clone();
    let stabilized_at = chain.len() - 2;

    let closed = j_infinity_closed_form(endo, j)?;
    if closed != j_infinity {
        return Err(Error::Verification(format!(
            "recursive J_∞ = {j_infinity} but closed form gives {closed}"
        )));
    }
    for pair in chain.windows(2) {
        if !pair[0].is_subset(&pair[1])? {
            return Err(Error::Verification(format!(
                "chain decreases: {} ⊄ {}",
                pair[0], pair[1]
            )));
        }
    }
    for member in &chain {
        if !shape.is_invariant(member)? {
            return Err(Error::Verification(format!("chain member {member} is not E-invariant")));
        }
    }
    if stabilized_at > algebra.num_blocks() {
        return Err(Error::Verification(format!(
            "chain stabilized at {stabilized_at} > {} blocks",
            algebra.num_blocks()
        )));
    }

    let q = quotient(algebra, &j_infinity)?;
    let reduced_endo = endo.descend(&q)?;
    let reduced_ideal = q.map_ideal(j)?;
    let clash = reduced_endo.kernel().meet(&reduced_ideal)?;
    if !clash.is_zero() {
        return Err(Error::Verification(format!("ker δ_∞ ∩ q(J) = {clash} after reduction")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(INTERTWINING_SEED);
    let mut intertwining_residual: f64 = 0.0;
    for _ in 0..INTERTWINING_SAMPLES {
        let a = algebra.random_element(&mut rng);
        let lhs = reduced_endo.apply(&q.apply(&a)?);
        let rhs = q.apply(&endo.apply(&a))?;
        intertwining_residual = intertwining_residual.max(lhs.distance(&rhs));
    }
    if intertwining_residual >= 1e-12 {
        return Err(Error::Verification(format!(
            "δ_∞ ∘ q differs from q ∘ δ by {intertwining_residual:e}"
        )));
    }

    Ok(ReductionResult {
        system: system.clone(),
        chain,
        j_infinity,
        stabilized_at,
        quotient: q,
        reduced_endo,
        reduced_ideal,
        intertwining_residual,
    })
}

/// Whether `𝒪(J, E)` collapses, i.e. `J_∞ = A`. For `J = A` this is also
/// decided independently by nilpotency of the support of the multiplicity
/// matrix, and the two answers must agree.
pub fn is_degenerate(system: &DynSystem) -> Result<bool> {
    let reduced = reduce_system(system)?.is_degenerate();
    if system.ideal().is_full() {
        let nilpotent = support_is_nilpotent(system.endo());
        if nilpotent != reduced {
            return Err(Error::Verification(format!(
                "nilpotency says {nilpotent}, reduction says {reduced}"
            )));
        }
    }
    Ok(reduced)
}

/// Boolean nilpotency of `supp M`: no block has an infinite forward orbit
/// under "copies into". Equivalent to every element being killed by some `δ^n`.
pub fn support_is_nilpotent(endo: &Endomorphism) -> bool {
    let k = endo.algebra().num_blocks();
    let support = &endo.support_matrix();
    // power = supp(M)^n as a boolean matrix; nilpotent iff supp(M)^k = 0.
    let mut power: Vec<BTreeSet<(usize, usize)>> = vec![(0..k).map(|i| (i, i)).collect()];
    for _ in 0..k {
        let last = power.last().expect("non-empty");
        let next: BTreeSet<(usize, usize)> = last
            .iter()
            .flat_map(|&(i, l)| (0..k).filter(move |&j| support[l][j]).map(move |j| (i, j)))
            .collect();
        power.push(next);
    }
    power.last().is_none_or(|p| p.is_empty())
}

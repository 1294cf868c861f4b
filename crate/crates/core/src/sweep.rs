//! Enumerators for exhaustive and random sweeps over small systems.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{BlockAlgebra, Ideal};
use crate::bimodule::CorrespondenceShape;
use crate::dynamics::Endomorphism;
use crate::error::{Error, Result};
use crate::reduction::{brute_force_j_infinity, ideal_chain, j_infinity_closed_form};

/// Nondecreasing block dimension lists summing to exactly `total`.
pub fn block_partitions(total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total > 0 {
        go(total, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Every multiplicity row for target block `i` that satisfies row-fit.
fn fitting_rows(dims: &[usize], capacity: usize) -> Vec<Vec<usize>> {
    fn go(dims: &[usize], j: usize, room: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == dims.len() {
            out.push(cur.clone());
            return;
        }
        for m in 0..=room / dims[j] {
            cur.push(m);
            go(dims, j + 1, room - m * dims[j], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dims, 0, capacity, &mut Vec::new(), &mut out);
    out
}

/// Permutations of block indices that only exchange blocks of equal size.
fn dimension_preserving_permutations(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut perms = vec![Vec::new()];
    let mut start = 0;
    while start < dims.len() {
        let end = (start..dims.len())
            .find(|&i| dims[i] != dims[start])
            .unwrap_or(dims.len());
        let group: Vec<usize> = (start..end).collect();
        let mut group_perms = Vec::new();
        permute(&group, &mut Vec::new(), &mut vec![false; group.len()], &mut group_perms);
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                group_perms.iter().map(move |g| {
                    let mut q = p.clone();
                    q.extend(g);
                    q
                })
            })
            .collect();
        start = end;
    }
    perms
}

fn permute(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// One representative per isomorphism class of `(A, δ)` with `1 ≤ d ≤ max_dim`.
///
/// Blocks are sorted by size; among relabelings of equal-size blocks the
/// lexicographically smallest multiplicity matrix is kept.
pub fn isomorphism_classes(max_dim: usize) -> Vec<Endomorphism> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        for dims in block_partitions(d) {
            let algebra = BlockAlgebra::new(&dims).expect("positive dims");
            let rows: Vec<Vec<Vec<usize>>> = dims.iter().map(|&n| fitting_rows(&dims, n)).collect();
            let perms = dimension_preserving_permutations(&dims);
            let mut idx = vec![0usize; dims.len()];
            loop {
                let mult: Vec<Vec<usize>> = idx.iter().enumerate().map(|(i, &r)| rows[i][r].clone()).collect();
                let minimal = perms.iter().all(|p| {
                    let permuted: Vec<Vec<usize>> = (0..dims.len())
                        .map(|i| (0..dims.len()).map(|j| mult[p[i]][p[j]]).collect())
                        .collect();
                    mult <= permuted
                });
                if minimal {
                    out.push(Endomorphism::new(&algebra, mult).expect("rows fit"));
                }
                // odometer over row choices
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < rows[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
    }
    out
}

/// All `(n+1)^n` systems on `C^n` given by partial self-maps `f`, with `δ(a)_i = a_{f(i)}`.
pub fn commutative_systems(n: usize) -> Vec<Endomorphism> {
    let algebra = BlockAlgebra::new(&vec![1; n]).expect("positive dims");
    let count = (n + 1).pow(n as u32);
    (0..count)
        .map(|mut code| {
            let mult = (0..n)
                .map(|_| {
                    let target = code % (n + 1);
                    code /= n + 1;
                    (0..n).map(|j| usize::from(target == j + 1)).collect()
                })
                .collect();
            Endomorphism::new(&algebra, mult).expect("commutative rows fit")
        })
        .collect()
}

/// Random block system: up to `max_blocks` blocks of size up to `max_dim`,
/// multiplicities up to `max_mult`, always satisfying row-fit.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, max_blocks: usize, max_dim: usize, max_mult: usize) -> Endomorphism {
    let k = rng.gen_range(1..=max_blocks);
    let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_dim)).collect();
    let algebra = BlockAlgebra::new(&dims).expect("positive dims");
    let mut order: Vec<usize> = (0..k).collect();
    let mult = dims
        .iter()
        .map(|&capacity| {
            let mut row = vec![0; k];
            let mut room = capacity;
            order.shuffle(rng);
            for &j in &order {
                let most = max_mult.min(room / dims[j]);
                row[j] = rng.gen_range(0..=most);
                room -= row[j] * dims[j];
            }
            row
        })
        .collect();
    Endomorphism::new(&algebra, mult).expect("rows fit by construction")
}

/// The three `J_∞` computations for one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub recursive: Ideal,
    pub closed_form: Ideal,
    pub brute_force: Ideal,
}

impl OracleVerdict {
    pub fn agrees(&self) -> bool {
        self.recursive == self.closed_form && self.closed_form == self.brute_force
    }
}

pub fn compare_oracles(endo: &Endomorphism, j: &Ideal) -> Result<OracleVerdict> {
    let shape = CorrespondenceShape::from_dynamics(endo);
    let recursive = ideal_chain(&shape, j)?.pop().expect("non-empty");
    Ok(OracleVerdict {
        recursive,
        closed_form: j_infinity_closed_form(endo, j)?,
        brute_force: brute_force_j_infinity(&shape, j)?,
    })
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub systems: usize,
    pub cases: usize,
    /// Description of every disagreeing case.
    pub mismatches: Vec<String>,
}

/// Three-way comparison over every commutative system on `n` points and every ideal.
pub fn commutative_sweep(n: usize) -> Result<SweepReport> {
    if n > 6 {
        return Err(Error::ResourceGuard(format!(
            "exhaustive sweep on {n} points exceeds the limit of 6"
        )));
    }
    let mut report = SweepReport::default();
    for endo in commutative_systems(n) {
        report.systems += 1;
        for j in endo.algebra().enumerate_ideals()? {
            report.cases += 1;
            let verdict = compare_oracles(&endo, &j)?;
            if !verdict.agrees() {
                report.mismatches.push(format!(
                    "mult {:?}, J = {j}: recursive {}, closed form {}, brute force {}",
                    endo.mult(),
                    verdict.recursive,
                    verdict.closed_form,
                    verdict.brute_force
                ));
            }
        }
    }
    Ok(report)
}

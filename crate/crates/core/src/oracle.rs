//! Brute-force ground truth: ball intersections, subspace enumeration, root counts.
//!
//! Nothing here shares a code path with the algebraic builders beyond field
//! arithmetic and the rank computation; every loop checks its size against an
//! [`EnumGuard`] before it starts.

use num_bigint::BigUint;

use crate::adversary::gaussian_binomial;
use crate::codes::{rank_weight, RankCode, Word};
use crate::error::{Error, Result};
use crate::galois::{Fe, FieldTower};
use crate::linearized::{SigmaPoly, Subspace};

pub const GUARD_ENV: &str = "RANKMETRIC_GUARD";

/// Upper limit on the number of states an exhaustive loop may visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumGuard {
    pub max_states: BigUint,
}

impl Default for EnumGuard {
    fn default() -> Self {
        EnumGuard { max_states: BigUint::from(1u32 << 24) }
    }
}

impl EnumGuard {
    pub fn new(max_states: impl Into<BigUint>) -> Self {
        EnumGuard { max_states: max_states.into() }
    }

    /// The default guard, overridden by `RANKMETRIC_GUARD` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(GUARD_ENV) {
            Ok(v) => v
                .trim()
                .parse::<BigUint>()
                .map(EnumGuard::new)
                .map_err(|e| Error::Parse(format!("{GUARD_ENV}={v}: {e}"))),
            Err(_) => Ok(EnumGuard::default()),
        }
    }

    pub fn check(&self, needed: &BigUint) -> Result<()> {
        if needed > &self.max_states {
            return Err(Error::GuardExceeded { needed: needed.clone(), guard: self.max_states.clone() });
        }
        Ok(())
    }

    pub fn allows(&self, needed: &BigUint) -> bool {
        needed <= &self.max_states
    }
}

/// `|{c ∈ code : rk(center − c) ≤ τ}|` by full enumeration.
pub fn ball_intersection_count(code: &RankCode, center: &Word, tau: usize, guard: &EnumGuard) -> Result<BigUint> {
    if center.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: center.len() });
    }
    let tower = code.tower();
    let mut count = 0u64;
    code.for_each_codeword(guard, |c| {
        if rank_weight(tower, &center.sub(tower, c)) <= tau {
            count += 1;
        }
        true
    })?;
    Ok(BigUint::from(count))
}

/// The ball count, or `None` when the code is too large for the guard.
pub fn ball_count_if_enumerable(code: &RankCode, center: &Word, tau: usize, guard: &EnumGuard) -> Result<Option<BigUint>> {
    if !guard.allows(&code.size()) {
        return Ok(None);
    }
    ball_intersection_count(code, center, tau, guard).map(Some)
}

/// Ball counts for every radius `0..=n` in a single pass.
pub fn ball_profile(code: &RankCode, center: &Word, guard: &EnumGuard) -> Result<Vec<BigUint>> {
    let tower = code.tower();
    let mut hist = vec![0u64; code.n() + 1];
    code.for_each_codeword(guard, |c| {
        hist[rank_weight(tower, &center.sub(tower, c))] += 1;
        true
    })?;
    let mut acc = 0u64;
    Ok(hist
        .into_iter()
        .map(|h| {
            acc += h;
            BigUint::from(acc)
        })
        .collect())
}

/// Every `r`-dimensional `F_q`-subspace of `space`, each exactly once.
///
/// Subspaces are produced as reduced row echelon matrices over `F_q` in the
/// coordinates of `space`'s basis; pivot sets ascend lexicographically and the
/// free entries run through `F_q` in encoding order.
pub fn enumerate_subspaces<'a>(
    tower: &'a FieldTower,
    space: &Subspace,
    r: usize,
    guard: &EnumGuard,
) -> Result<impl Iterator<Item = Subspace> + 'a> {
    let n = space.dim();
    if r > n {
        return Err(Error::InvalidParameter(format!("r={r} exceeds the dimension {n}")));
    }
    guard.check(&gaussian_binomial(n, r, tower.q()))?;
    let fq = tower.fq_elements();
    let q = fq.len();
    let one_idx = fq.iter().position(|&x| x == Fe::ONE).expect("F_q contains one");
    let basis = space.basis().to_vec();
    let top = tower.top();
    Ok(combinations(n, r).into_iter().flat_map(move |pivots| {
        // (row, column) positions that are free in this echelon shape
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| ((pc + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (row, c)))
            .collect();
        let total = (q as u64).pow(free.len() as u32);
        let fq = fq.clone();
        let basis = basis.clone();
        (0..total).map(move |mut idx| {
            let mut rows = vec![vec![0usize; n]; pivots.len()];
            for (row, &pc) in pivots.iter().enumerate() {
                rows[row][pc] = one_idx;
            }
            for &(row, col) in &free {
                rows[row][col] = (idx % q as u64) as usize;
                idx /= q as u64;
            }
            let elems: Vec<Fe> = rows
                .iter()
                .map(|coords| {
                    coords
                        .iter()
                        .zip(&basis)
                        .fold(Fe::ZERO, |acc, (&ci, &b)| top.add(acc, top.mul(fq[ci], b)))
                })
                .collect();
            Subspace::new(tower, elems).expect("echelon rows are independent")
        })
    }))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Number of zeros of `f` in `ambient`, by evaluation at every point.
///
/// The zero set is a subspace, so any count that is not a power of `q`
/// signals an arithmetic bug.
pub fn root_count(tower: &FieldTower, f: &SigmaPoly, ambient: &Subspace, guard: &EnumGuard) -> Result<u64> {
    let size = BigUint::from(tower.q()).pow(ambient.dim() as u32);
    guard.check(&size)?;
    let count = ambient.elements(tower).into_iter().filter(|&x| f.eval(tower, x).is_zero()).count() as u64;
    let q = tower.q();
    let mut c = count;
    while c > 1 && c.is_multiple_of(q) {
        c /= q;
    }
    if c != 1 {
        return Err(Error::Precondition(format!("root count {count} is not a power of q={q}")));
    }
    Ok(count)
}

//! Families of σ-subspace polynomials that agree on their top coefficients.
//!
//! Differences of two members have small σ-degree, which is what puts all the
//! corresponding codewords into one rank-metric ball.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::adversary::gaussian_binomial;
use crate::error::{Error, Result};
use crate::galois::{coprime, Fe, FieldTower};
use crate::linearized::{subspace_polynomial, SigmaPoly, Subspace};
use crate::oracle::{enumerate_subspaces, EnumGuard};

/// Subspace counts above this are refused by the pigeonhole builder.
pub const PIGEONHOLE_LIMIT: u32 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Pigeonhole,
    Trace,
    Trinomial,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Pigeonhole => "pigeonhole",
            FamilyKind::Trace => "trace",
            FamilyKind::Trinomial => "trinomial",
        }
    }
}

/// A set of monic σ-polynomials of equal σ-degree sharing their top coefficients.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    pub members: Vec<SigmaPoly>,
    pub kind: FamilyKind,
    /// `(index, coefficient)` pairs every member agrees on.
    pub shared_top: Vec<(usize, Fe)>,
    pub kernel_dim: usize,
    /// Where every member's kernel lives.
    pub ambient: Subspace,
    /// Whether the members were composed with `x^σ` on the right.
    pub shifted: bool,
    pub s: usize,
}

impl PolyFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Common σ-degree of the members.
    pub fn degree(&self) -> Option<usize> {
        self.members.first().and_then(|f| f.degree())
    }
}

/// Outcome of the pigeonhole partition.
#[derive(Clone, Debug)]
pub struct Pigeonhole {
    /// A largest class (smallest key on ties).
    pub largest: PolyFamily,
    /// Class sizes in key order.
    pub class_sizes: Vec<usize>,
    /// Number of subspace polynomials partitioned.
    pub total: usize,
    /// `⌈[n r]_q / q^(m(g−1))⌉`.
    pub bound: BigUint,
}

/// Partitions the subspace polynomials of all `r`-dimensional subspaces of
/// `space` by their top `g` σ-coefficients and returns a largest class.
///
/// The top `g` coefficients are `c_{r−g+1}, …, c_r`; the leading one is 1 by
/// monicity, so classes are keyed by the `g − 1` coefficients below it.
pub fn pigeonhole_family(
    tower: &FieldTower,
    space: &Subspace,
    r: usize,
    g: usize,
    s: usize,
    guard: &EnumGuard,
) -> Result<Pigeonhole> {
    let n = space.dim();
    if g == 0 || g > r || r >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= g <= r < n, got g={g}, r={r}, n={n}")));
    }
    if !coprime(s, tower.m()) {
        return Err(Error::TwistNotCoprime { s, m: tower.m() });
    }
    let count = gaussian_binomial(n, r, tower.q());
    EnumGuard::new(PIGEONHOLE_LIMIT).check(&count)?;
    let mut classes: BTreeMap<Vec<Fe>, Vec<SigmaPoly>> = BTreeMap::new();
    let mut total = 0;
    for u in enumerate_subspaces(tower, space, r, guard)? {
        let f = subspace_polynomial(tower, &u, s)?;
        let key: Vec<Fe> = (r + 1 - g..r).map(|i| f.coeff(i)).collect();
        classes.entry(key).or_default().push(f);
        total += 1;
    }
    let class_sizes: Vec<usize> = classes.values().map(Vec::len).collect();
    let (key, members) = classes
        .into_iter()
        .fold(None::<(Vec<Fe>, Vec<SigmaPoly>)>, |best, (k, v)| match best {
            Some(b) if b.1.len() >= v.len() => Some(b),
            _ => Some((k, v)),
        })
        .expect("r < n leaves at least one subspace");
    let mut shared_top: Vec<(usize, Fe)> = (r + 1 - g..r).zip(key).collect();
    shared_top.push((r, Fe::ONE));
    let denom = BigUint::from(tower.q()).pow((tower.m() * (g - 1)) as u32);
    let bound = count.div_ceil(&denom);
    Ok(Pigeonhole {
        largest: PolyFamily {
            members,
            kind: FamilyKind::Pigeonhole,
            shared_top,
            kernel_dim: r,
            ambient: space.clone(),
            shifted: false,
            s,
        },
        class_sizes,
        total,
        bound,
    })
}

/// The trace family `{f_β : β ∈ F_{q^n}^*}` with
/// `f_β = Σ_{i < n/t} β^(σ^(it)) (β^(σ^(n−t)))^(−1) x^(σ^(it))`.
///
/// Each member is the monic σ-polynomial of σ-degree `n − t` vanishing on the
/// kernel of `x ↦ Tr_{q^n/q^t}(βx)`-type maps; two values of `β` give the same
/// member exactly when their ratio lies in `F_{q^t}`, leaving `(q^n−1)/(q^t−1)`
/// members. They are listed in order of the first `β` (by encoding) that yields them.
pub fn trace_family(tower: &FieldTower, t: usize, s: usize) -> Result<PolyFamily> {
    let (n, m) = (tower.n(), tower.m());
    if t == 0 || n % t != 0 {
        return Err(Error::Precondition(format!("t={t} must divide n={n}")));
    }
    if !tower.has_embedding() {
        return Err(Error::NoEmbedding { n, m });
    }
    if !coprime(s, m) {
        return Err(Error::TwistNotCoprime { s, m });
    }
    let top = tower.top();
    let sigma = |x: Fe, j: usize| tower.frobenius(x, s * j);
    let mut seen = HashSet::new();
    let mut members = Vec::new();
    for beta in tower.sub_elements()?.into_iter().filter(|b| !b.is_zero()) {
        let lead_inv = top.inv(sigma(beta, n - t))?;
        let mut coeffs = vec![Fe::ZERO; n - t + 1];
        for i in 0..n / t {
            coeffs[i * t] = top.mul(sigma(beta, i * t), lead_inv);
        }
        let f = SigmaPoly::new(coeffs, s);
        if seen.insert(f.clone()) {
            members.push(f);
        }
    }
    let lo = (n + 1).saturating_sub(2 * t);
    let shared_top = (lo..=n - t).map(|i| (i, if i == n - t { Fe::ONE } else { Fe::ZERO })).collect();
    Ok(PolyFamily {
        members,
        kind: FamilyKind::Trace,
        shared_top,
        kernel_dim: n - t,
        ambient: Subspace::subfield(tower)?,
        shifted: false,
        s,
    })
}

/// The subspace trinomials `x^(q^t) − b x^q − a x` with
/// `N_{q^n/q}(a) = (−1)^(t−1)` and `b = −a^(1 + (q^n−q)/(q^t−1))`, where
/// `n = (t−1)t + 1` and `t − 1` is a power of the characteristic.
///
/// The exponent `(q^n−q)/(q^t−1)` without the `1 +` leaves most members with
/// a single root (e.g. only one of the seven at `q = 2, n = 3`).
///
/// Members use twist `s = 1` and are listed by `a` in encoding order.
pub fn trinomial_family(tower: &FieldTower, t: usize) -> Result<PolyFamily> {
    let (n, m, p) = (tower.n(), tower.m(), tower.p() as usize);
    if t < 2 || n != (t - 1) * t + 1 {
        return Err(Error::Precondition(format!("n={n} must equal (t-1)t+1 for t={t}")));
    }
    if !is_power_of(t - 1, p) {
        return Err(Error::Precondition(format!("t-1={} is not a power of the characteristic {p}", t - 1)));
    }
    if !tower.has_embedding() {
        return Err(Error::NoEmbedding { n, m });
    }
    let top = tower.top();
    let q = BigUint::from(tower.q());
    let norm_exp = (q.pow(n as u32) - 1u32) / (&q - 1u32);
    let b_exp = (q.pow(n as u32) - &q) / (q.pow(t as u32) - 1u32) + 1u32;
    let target = if (t - 1).is_multiple_of(2) { Fe::ONE } else { tower.minus_one() };
    let members = tower
        .sub_elements()?
        .into_iter()
        .filter(|a| !a.is_zero() && top.pow_big(*a, &norm_exp) == target)
        .map(|a| {
            let b = top.neg(top.pow_big(a, &b_exp));
            let mut coeffs = vec![Fe::ZERO; t + 1];
            coeffs[0] = top.neg(a);
            coeffs[1] = top.neg(b);
            coeffs[t] = Fe::ONE;
            SigmaPoly::new(coeffs, 1)
        })
        .collect();
    let shared_top = (2..=t).map(|i| (i, if i == t { Fe::ONE } else { Fe::ZERO })).collect();
    Ok(PolyFamily {
        members,
        kind: FamilyKind::Trinomial,
        shared_top,
        kernel_dim: t,
        ambient: Subspace::subfield(tower)?,
        shifted: false,
        s: 1,
    })
}

/// `N_{q^n/q}` on the embedded `F_{q^n}`, computed in the top field.
pub fn norm_to_fq_from_sub(tower: &FieldTower, x: Fe) -> Fe {
    let q = BigUint::from(tower.q());
    let e = (q.pow(tower.n() as u32) - 1u32) / (q - 1u32);
    tower.top().pow_big(x, &e)
}

/// Composes every member with `x^σ` on the right.
///
/// `x^σ` is a bijection, so kernels keep their dimension and move to `σ^(−1)`
/// of the old kernels; the constant coefficient becomes zero.
pub fn shift_compose(tower: &FieldTower, fam: &PolyFamily) -> Result<PolyFamily> {
    let s = fam.s;
    let x_sigma = SigmaPoly::monomial(Fe::ONE, 1, s);
    let members = fam
        .members
        .iter()
        .map(|f| f.compose(tower, &x_sigma))
        .collect::<Result<Vec<_>>>()?;
    let m = tower.m();
    let back = (m - s % m) % m;
    let preimages: Vec<Fe> = fam.ambient.basis().iter().map(|&b| tower.frobenius(b, back)).collect();
    let mut shared_top: Vec<(usize, Fe)> = fam.shared_top.iter().map(|&(i, c)| (i + 1, c)).collect();
    shared_top.insert(0, (0, Fe::ZERO));
    Ok(PolyFamily {
        members,
        kind: fam.kind,
        shared_top,
        kernel_dim: fam.kernel_dim,
        ambient: Subspace::new(tower, preimages)?,
        shifted: true,
        s,
    })
}

/// `σ(U)`: the image of a subspace under `x ↦ x^σ`.
pub fn sigma_image(tower: &FieldTower, u: &Subspace, s: usize) -> Result<Subspace> {
    Subspace::new(tower, u.basis().iter().map(|&b| tower.frobenius(b, s)).collect())
}

fn is_power_of(x: usize, p: usize) -> bool {
    let mut x = x;
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// `(q^n − 1)/(q^t − 1)` for `t | n`.
pub fn trace_family_size(q: u64, n: usize, t: usize) -> BigUint {
    let q = BigUint::from(q);
    (q.pow(n as u32) - 1u32) / (q.pow(t as u32) - 1u32)
}

/// Checks the family invariants directly: monic, equal degree, agreement on
/// `shared_top`, and kernel dimension inside the ambient space.
pub fn check_family(tower: &FieldTower, fam: &PolyFamily) -> Result<()> {
    let deg = fam.degree();
    for (idx, f) in fam.members.iter().enumerate() {
        if !f.is_monic() || f.degree() != deg {
            return Err(Error::Precondition(format!("member {idx} is not monic of the common degree")));
        }
        if let Some(&(i, _)) = fam.shared_top.iter().find(|&&(i, c)| f.coeff(i) != c) {
            return Err(Error::Precondition(format!("member {idx} disagrees at index {i}")));
        }
        let ker = f.kernel_basis(tower, &fam.ambient);
        if ker.dim() != fam.kernel_dim {
            return Err(Error::Precondition(format!(
                "member {idx} has kernel dimension {} instead of {}",
                ker.dim(),
                fam.kernel_dim
            )));
        }
    }
    Ok(())
}

//! σ-linearized polynomials over `F_{q^m}` with `σ: x ↦ x^(q^s)`.
//!
//! A [`SigmaPoly`] `c_0 x + c_1 x^σ + … + c_l x^(σ^l)` acts on `F_{q^m}` as an
//! `F_q`-linear map. σ-exponents live modulo `m` because `x^(σ^m) = x` on
//! `F_{q^m}`; composition folds them accordingly.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{coprime, Fe, FieldTower};
use crate::linalg::{fp_nullspace, solve, FqSpan};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaPoly {
    coeffs: Vec<Fe>,
    s: usize,
}

impl SigmaPoly {
    pub fn new(mut coeffs: Vec<Fe>, s: usize) -> Self {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        SigmaPoly { coeffs, s }
    }

    pub fn zero(s: usize) -> Self {
        SigmaPoly { coeffs: Vec::new(), s }
    }

    /// The identity map `x`.
    pub fn identity(s: usize) -> Self {
        SigmaPoly { coeffs: vec![Fe::ONE], s }
    }

    /// `c · x^(σ^i)`.
    pub fn monomial(c: Fe, i: usize, s: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs, s)
    }

    /// Builds from sparse `(index, coefficient)` terms; repeated indices are summed.
    pub fn from_terms(tower: &FieldTower, terms: &[(usize, Fe)], s: usize) -> Self {
        let len = terms.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut coeffs = vec![Fe::ZERO; len];
        for &(i, c) in terms {
            coeffs[i] = tower.top().add(coeffs[i], c);
        }
        Self::new(coeffs, s)
    }

    pub fn twist(&self) -> usize {
        self.s
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// Nonzero terms as `(index, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, Fe)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// σ-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    fn check_twist(&self, other: &SigmaPoly) -> Result<()> {
        if self.s != other.s {
            return Err(Error::TwistMismatch(self.s, other.s));
        }
        Ok(())
    }

    /// `Σ c_i · x^(q^(s·i))`.
    pub fn eval(&self, tower: &FieldTower, x: Fe) -> Fe {
        let f = tower.top();
        self.coeffs.iter().enumerate().fold(Fe::ZERO, |acc, (i, &c)| {
            if c.is_zero() {
                acc
            } else {
                f.add(acc, f.mul(c, tower.frobenius(x, self.s * i)))
            }
        })
    }

    pub fn add(&self, tower: &FieldTower, other: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_twist(other)?;
        let f = tower.top();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(SigmaPoly::new(coeffs, self.s))
    }

    pub fn sub(&self, tower: &FieldTower, other: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_twist(other)?;
        let f = tower.top();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(SigmaPoly::new(coeffs, self.s))
    }

    /// Left scalar multiple `c · f`.
    pub fn scale(&self, tower: &FieldTower, c: Fe) -> SigmaPoly {
        let f = tower.top();
        SigmaPoly::new(self.coeffs.iter().map(|&a| f.mul(c, a)).collect(), self.s)
    }

    /// Folds σ-exponents into `0..m`.
    pub fn fold(&self, tower: &FieldTower) -> SigmaPoly {
        let m = tower.m();
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let f = tower.top();
        let mut out = vec![Fe::ZERO; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % m] = f.add(out[i % m], c);
        }
        SigmaPoly::new(out, self.s)
    }

    /// `self ∘ g`, with σ-exponents reduced modulo `m`.
    pub fn compose(&self, tower: &FieldTower, g: &SigmaPoly) -> Result<SigmaPoly> {
        self.check_twist(g)?;
        if self.is_zero() || g.is_zero() {
            return Ok(SigmaPoly::zero(self.s));
        }
        let f = tower.top();
        let m = tower.m();
        let width = (self.coeffs.len() + g.coeffs.len() - 1).min(m);
        let mut out = vec![Fe::ZERO; width];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                let term = f.mul(a, tower.frobenius(b, self.s * i));
                out[k] = f.add(out[k], term);
            }
        }
        Ok(SigmaPoly::new(out, self.s))
    }

    /// Right division: `self = quot ∘ g + rem` with `deg rem < deg g`.
    pub fn right_divide(&self, tower: &FieldTower, g: &SigmaPoly) -> Result<(SigmaPoly, SigmaPoly)> {
        self.check_twist(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = tower.top();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let lead = *rem.last().unwrap();
            let d = rem.len() - 1 - dg;
            if !lead.is_zero() {
                let c = f.div(lead, tower.frobenius(g.leading(), self.s * d))?;
                quot[d] = f.add(quot[d], c);
                for (j, &b) in g.coeffs.iter().enumerate() {
                    let term = f.mul(c, tower.frobenius(b, self.s * d));
                    rem[j + d] = f.sub(rem[j + d], term);
                }
            }
            rem.pop();
        }
        Ok((SigmaPoly::new(quot, self.s), SigmaPoly::new(rem, self.s)))
    }

    /// `F_q`-basis of `{x ∈ ambient : f(x) = 0}`.
    pub fn kernel_basis(&self, tower: &FieldTower, ambient: &Subspace) -> Subspace {
        let top = tower.top();
        let pre: Vec<Fe> = ambient
            .basis()
            .iter()
            .flat_map(|&b| tower.fq_basis().iter().map(move |&g| top.mul(g, b)))
            .collect();
        let images: Vec<Vec<u32>> = pre.iter().map(|&x| top.digits(self.eval(tower, x))).collect();
        let null = fp_nullspace(tower.p(), &images, top.degree());
        let mut span = FqSpan::new(tower);
        for combo in null {
            let x = combo
                .iter()
                .zip(&pre)
                .fold(Fe::ZERO, |acc, (&c, &e)| top.add(acc, top.scale(c, e)));
            span.insert(x);
        }
        Subspace { basis: span.basis().to_vec() }
    }

    /// Dimension of the image of the restriction to `ambient`.
    pub fn rank_on(&self, tower: &FieldTower, ambient: &Subspace) -> usize {
        ambient.dim() - self.kernel_basis(tower, ambient).dim()
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .rev()
            .map(|(i, c)| match i {
                0 => format!("{c}*x"),
                _ => format!("{c}*x^(s^{i})"),
            })
            .collect();
        write!(f, "{} [s={}]", parts.join(" + "), self.s)
    }
}

/// An `F_q`-subspace of `F_{q^m}` given by an independent basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Vec<Fe>,
}

impl Subspace {
    /// Validates `F_q`-independence of `basis`.
    pub fn new(tower: &FieldTower, basis: Vec<Fe>) -> Result<Self> {
        let mut span = FqSpan::new(tower);
        for &b in &basis {
            if !tower.top().contains(b) {
                return Err(Error::LevelMismatch { level: "F_q^m", value: b.0 });
            }
            if !span.insert(b) {
                return Err(Error::DependentBasis);
            }
        }
        Ok(Subspace { basis })
    }

    /// The span of `elems`, keeping the first independent ones as basis.
    pub fn span_of(tower: &FieldTower, elems: &[Fe]) -> Self {
        let mut span = FqSpan::new(tower);
        for &e in elems {
            span.insert(e);
        }
        Subspace { basis: span.basis().to_vec() }
    }

    pub fn zero() -> Self {
        Subspace { basis: Vec::new() }
    }

    /// `F_{q^m}` itself.
    pub fn whole(tower: &FieldTower) -> Self {
        let top = tower.top();
        let powers: Vec<Fe> = (0..top.degree()).map(|i| Fe((tower.p() as u64).pow(i as u32) as u32)).collect();
        Self::span_of(tower, &powers)
    }

    /// The embedded `F_{q^n}`.
    pub fn subfield(tower: &FieldTower) -> Result<Self> {
        Ok(Self::span_of(tower, tower.sub_basis_images()?))
    }

    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, tower: &FieldTower, x: Fe) -> bool {
        let mut span = FqSpan::new(tower);
        for &b in &self.basis {
            span.insert(b);
        }
        span.contains(x)
    }

    /// All `q^dim` elements, as `F_q`-combinations of the basis.
    pub fn elements(&self, tower: &FieldTower) -> Vec<Fe> {
        let top = tower.top();
        let fq = tower.fq_elements();
        let mut out = vec![Fe::ZERO];
        for &b in &self.basis {
            let multiples: Vec<Fe> = fq.iter().map(|&c| top.mul(c, b)).collect();
            out = out
                .iter()
                .flat_map(|&x| multiples.iter().map(move |&y| top.add(x, y)))
                .collect();
        }
        out
    }
}

/// `(i, j) ↦ elems[i]^(σ^j)` for `j < cols`.
pub fn moore_matrix(tower: &FieldTower, elems: &[Fe], s: usize, cols: usize) -> Vec<Vec<Fe>> {
    elems
        .iter()
        .map(|&u| (0..cols).map(|j| tower.frobenius(u, s * j)).collect())
        .collect()
}

fn check_twist(tower: &FieldTower, s: usize) -> Result<()> {
    if !coprime(s, tower.m()) {
        return Err(Error::TwistNotCoprime { s, m: tower.m() });
    }
    Ok(())
}

/// The monic σ-polynomial of σ-degree `dim U` whose roots are exactly `U`.
///
/// Solves the Moore system for the non-leading coefficients.
pub fn subspace_polynomial(tower: &FieldTower, u: &Subspace, s: usize) -> Result<SigmaPoly> {
    check_twist(tower, s)?;
    let r = u.dim();
    if r == 0 {
        return Ok(SigmaPoly::identity(s));
    }
    let top = tower.top();
    let full = moore_matrix(tower, u.basis(), s, r + 1);
    let a: Vec<Vec<Fe>> = full.iter().map(|row| row[..r].to_vec()).collect();
    let b: Vec<Fe> = full.iter().map(|row| top.neg(row[r])).collect();
    let mut coeffs = solve(top, a, b).ok_or(Error::DependentBasis)?;
    coeffs.push(Fe::ONE);
    Ok(SigmaPoly::new(coeffs, s))
}

/// `θ_S`: the monic annihilator of `U_S` in σ-form.
pub fn annihilator_theta(tower: &FieldTower, u: &Subspace, s: usize) -> Result<SigmaPoly> {
    subspace_polynomial(tower, u, s)
}

/// `π_S(f)`: the representative of σ-degree below `dim U_S` agreeing with `f` on `U_S`.
pub fn reduce_mod_theta(tower: &FieldTower, f: &SigmaPoly, u: &Subspace) -> Result<SigmaPoly> {
    let theta = annihilator_theta(tower, u, f.twist())?;
    Ok(f.right_divide(tower, &theta)?.1)
}

/// The unique σ-polynomial of σ-degree `< len(points)` with `g(points[i]) = values[i]`.
///
/// `points` must be `F_q`-independent.
pub fn interpolate(tower: &FieldTower, points: &[Fe], values: &[Fe], s: usize) -> Result<SigmaPoly> {
    check_twist(tower, s)?;
    if points.len() != values.len() {
        return Err(Error::LengthMismatch { expected: points.len(), found: values.len() });
    }
    if points.is_empty() {
        return Ok(SigmaPoly::zero(s));
    }
    let a = moore_matrix(tower, points, s, points.len());
    let coeffs = solve(tower.top(), a, values.to_vec()).ok_or(Error::DependentBasis)?;
    Ok(SigmaPoly::new(coeffs, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use std::collections::BTreeSet;

    fn f16() -> FieldTower {
        FieldTower::new(2, 1, 4, 4).unwrap()
    }

    /// All 2-dimensional subspaces of F_16 over F_2, by brute force on element sets.
    fn brute_planes(t: &FieldTower) -> Vec<(Vec<Fe>, BTreeSet<Fe>)> {
        let f = t.top();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for a in f.nonzero_elements() {
            for b in f.nonzero_elements() {
                if a >= b {
                    continue;
                }
                let set: BTreeSet<Fe> = [Fe::ZERO, a, b, f.add(a, b)].into_iter().collect();
                if set.len() == 4 && seen.insert(set.clone()) {
                    out.push((vec![a, b], set));
                }
            }
        }
        out
    }

    #[test]
    fn eval_identity_and_artin_schreier() {
        let t = f16();
        let id = SigmaPoly::identity(1);
        let xq_minus_x = SigmaPoly::new(vec![t.minus_one(), Fe::ONE], 1);
        let mut zeros = Vec::new();
        for x in t.top().elements() {
            assert_eq!(id.eval(&t, x), x);
            if xq_minus_x.eval(&t, x).is_zero() {
                zeros.push(x);
            }
        }
        assert_eq!(zeros, vec![Fe(0), Fe(1)]);
    }

    #[test]
    fn trace_member_has_four_zeros_in_f16() {
        let t = f16();
        let f = t.top();
        let beta = f.generator();
        // f_β = β^(1 - σ^2) x + x^(σ^2)
        let c0 = f.div(beta, t.frobenius(beta, 2)).unwrap();
        let fb = SigmaPoly::new(vec![c0, Fe::ZERO, Fe::ONE], 1);
        let zeros = f.elements().filter(|&x| fb.eval(&t, x).is_zero()).count();
        assert_eq!(zeros, 4);
        assert_eq!(fb.kernel_basis(&t, &Subspace::whole(&t)).dim(), 2);
    }

    #[test]
    fn compose_identities() {
        let t = f16();
        let g = SigmaPoly::new(vec![Fe(3), Fe(7), Fe(1)], 1);
        assert_eq!(g.compose(&t, &SigmaPoly::identity(1)).unwrap(), g);
        let xs = SigmaPoly::monomial(Fe::ONE, 1, 1);
        assert_eq!(xs.compose(&t, &xs).unwrap(), SigmaPoly::monomial(Fe::ONE, 2, 1));
        // wraps modulo m
        let x3 = SigmaPoly::monomial(Fe::ONE, 3, 1);
        assert_eq!(x3.compose(&t, &xs).unwrap(), SigmaPoly::identity(1));
        let other = SigmaPoly::identity(3);
        assert_eq!(g.compose(&t, &other), Err(Error::TwistMismatch(1, 3)));
    }

    #[test]
    fn compose_matches_pointwise_composition() {
        let t = FieldTower::new(3, 1, 3, 3).unwrap();
        let f = SigmaPoly::new(vec![Fe(5), Fe(0), Fe(11)], 2);
        let g = SigmaPoly::new(vec![Fe(1), Fe(20)], 2);
        let fg = f.compose(&t, &g).unwrap();
        for x in t.top().elements() {
            assert_eq!(fg.eval(&t, x), f.eval(&t, g.eval(&t, x)));
        }
    }

    #[test]
    fn right_divide_trivial_cases() {
        let t = f16();
        let f = SigmaPoly::new(vec![Fe(3), Fe(7), Fe(1)], 1);
        let (q, r) = f.right_divide(&t, &SigmaPoly::identity(1)).unwrap();
        assert_eq!((q, r.is_zero()), (f.clone(), true));
        let (q, r) = f.right_divide(&t, &f).unwrap();
        assert_eq!(q, SigmaPoly::identity(1));
        assert!(r.is_zero());
        assert_eq!(f.right_divide(&t, &SigmaPoly::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn kernel_of_identity_and_artin_schreier() {
        let t = f16();
        let whole = Subspace::whole(&t);
        assert_eq!(SigmaPoly::identity(1).kernel_basis(&t, &whole).dim(), 0);
        let as_poly = SigmaPoly::new(vec![t.minus_one(), Fe::ONE], 1);
        let k = as_poly.kernel_basis(&t, &whole);
        assert_eq!(k.basis(), &[Fe::ONE]);
        assert_eq!(as_poly.rank_on(&t, &whole), 3);
    }

    #[test]
    fn moore_matrix_shapes() {
        let t = f16();
        assert_eq!(moore_matrix(&t, &[Fe(6)], 1, 1), vec![vec![Fe(6)]]);
        let f = t.top();
        // basis of F_4 inside F_16
        let w = f.elements().find(|&x| x.0 > 1 && t.frobenius(x, 2) == x).unwrap();
        let m = moore_matrix(&t, &[Fe::ONE, w], 1, 2);
        assert_eq!(m[0][1], Fe::ONE);
        assert_eq!(m[1][1], f.mul(w, w));
    }

    #[test]
    fn moore_determinants_of_all_planes_are_nonzero() {
        let t = f16();
        let planes = brute_planes(&t);
        assert_eq!(planes.len(), 35);
        for (basis, _) in &planes {
            assert_ne!(determinant(t.top(), moore_matrix(&t, basis, 1, 2)), Fe::ZERO);
        }
    }

    #[test]
    fn subspace_polynomials_of_all_planes() {
        let t = f16();
        let mut polys = BTreeSet::new();
        for (basis, set) in brute_planes(&t) {
            let u = Subspace::new(&t, basis).unwrap();
            let sp = subspace_polynomial(&t, &u, 1).unwrap();
            assert!(sp.is_monic());
            assert_eq!(sp.degree(), Some(2));
            let roots: BTreeSet<Fe> = t.top().elements().filter(|&x| sp.eval(&t, x).is_zero()).collect();
            assert_eq!(roots, set);
            polys.insert(sp);
        }
        assert_eq!(polys.len(), 35);
    }

    /// Expansion of the (r+1)×(r+1) Moore determinant along its first row.
    fn determinant_oracle(t: &FieldTower, basis: &[Fe], s: usize) -> SigmaPoly {
        let f = t.top();
        let r = basis.len();
        let rows = moore_matrix(t, basis, s, r + 1);
        let mut coeffs = Vec::new();
        for j in 0..=r {
            let minor: Vec<Vec<Fe>> = rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                .collect();
            let d = determinant(f, minor);
            coeffs.push(if j % 2 == 0 { d } else { f.neg(d) });
        }
        let lead = *coeffs.last().unwrap();
        let inv = f.inv(lead).unwrap();
        SigmaPoly::new(coeffs.into_iter().map(|c| f.mul(c, inv)).collect(), s)
    }

    #[test]
    fn moore_solve_matches_determinant_formula() {
        let t = FieldTower::new(3, 1, 3, 3).unwrap();
        for s in [1usize, 2] {
            for r in 1..=3 {
                for start in [1u32, 5, 9] {
                    let cand: Vec<Fe> = (0..27u32).map(|i| Fe((start + 7 * i) % 27)).collect();
                    let u = Subspace::span_of(&t, &cand);
                    let basis = &u.basis()[..r.min(u.dim())];
                    let u = Subspace::new(&t, basis.to_vec()).unwrap();
                    let sp = subspace_polynomial(&t, &u, s).unwrap();
                    assert_eq!(sp, determinant_oracle(&t, u.basis(), s));
                    for x in u.elements(&t) {
                        assert!(sp.eval(&t, x).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn subspace_polynomial_edge_cases() {
        let t = f16();
        assert_eq!(subspace_polynomial(&t, &Subspace::zero(), 1).unwrap(), SigmaPoly::identity(1));
        let fq = Subspace::new(&t, vec![Fe::ONE]).unwrap();
        assert_eq!(
            subspace_polynomial(&t, &fq, 1).unwrap(),
            SigmaPoly::new(vec![t.minus_one(), Fe::ONE], 1)
        );
        assert_eq!(Subspace::new(&t, vec![Fe(3), Fe(5), Fe(6)]), Err(Error::DependentBasis));
        assert_eq!(
            subspace_polynomial(&t, &fq, 2),
            Err(Error::TwistNotCoprime { s: 2, m: 4 })
        );
    }

    #[test]
    fn theta_of_prime_subfield_and_subfield() {
        let t = f16();
        let fq = Subspace::new(&t, vec![Fe::ONE]).unwrap();
        // x^2 + x
        assert_eq!(annihilator_theta(&t, &fq, 1).unwrap(), SigmaPoly::new(vec![Fe::ONE, Fe::ONE], 1));
        let t = FieldTower::new(2, 1, 2, 4).unwrap();
        let sub = Subspace::subfield(&t).unwrap();
        let theta = annihilator_theta(&t, &sub, 1).unwrap();
        assert_eq!(theta, SigmaPoly::new(vec![t.minus_one(), Fe::ZERO, Fe::ONE], 1));
        let theta3 = annihilator_theta(&t, &sub, 3).unwrap();
        assert_eq!(theta3, SigmaPoly::new(vec![t.minus_one(), Fe::ZERO, Fe::ONE], 3));
    }

    /// Expands ∏_{u ∈ U}(x − u) as an ordinary polynomial.
    fn product_over_subspace(t: &FieldTower, u: &Subspace) -> Vec<Fe> {
        let f = t.top();
        let mut poly = vec![Fe::ONE];
        for root in u.elements(t) {
            let mut next = vec![Fe::ZERO; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(c, root));
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn theta_equals_product_of_linear_factors() {
        for (p, m, dims) in [(2u32, 4usize, [1usize, 2, 3]), (3, 3, [1, 2, 2])] {
            let t = FieldTower::new(p, 1, m, m).unwrap();
            let whole = Subspace::whole(&t);
            for (k, &d) in dims.iter().enumerate() {
                let basis: Vec<Fe> = whole.basis().iter().skip(k % 2).take(d).copied().collect();
                let u = Subspace::new(&t, basis).unwrap();
                let theta = annihilator_theta(&t, &u, 1).unwrap();
                let expanded = product_over_subspace(&t, &u);
                let q = p as usize;
                for (deg, &c) in expanded.iter().enumerate() {
                    let qi = (0..=d).find(|&i| q.pow(i as u32) == deg);
                    match qi {
                        Some(i) => assert_eq!(c, theta.coeff(i)),
                        None => assert_eq!(c, Fe::ZERO, "degree {deg}"),
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_mod_theta_basics() {
        let t = FieldTower::new(2, 1, 3, 6).unwrap();
        let s = Subspace::subfield(&t).unwrap();
        let low = SigmaPoly::new(vec![Fe(9), Fe(33)], 1);
        assert_eq!(reduce_mod_theta(&t, &low, &s).unwrap(), low);
        let theta = annihilator_theta(&t, &s, 1).unwrap();
        assert!(reduce_mod_theta(&t, &theta, &s).unwrap().is_zero());
        let high = SigmaPoly::new(vec![Fe(9), Fe(33), Fe(2), Fe(17), Fe(40), Fe(1)], 1);
        let red = reduce_mod_theta(&t, &high, &s).unwrap();
        assert!(red.degree().unwrap() < 3);
        let pts = s.basis().to_vec();
        let vals: Vec<Fe> = pts.iter().map(|&a| high.eval(&t, a)).collect();
        assert_eq!(interpolate(&t, &pts, &vals, 1).unwrap(), red);
        for x in s.elements(&t) {
            assert_eq!(red.eval(&t, x), high.eval(&t, x));
        }
    }

    #[test]
    fn rank_nullity_on_whole_field() {
        let t = FieldTower::new(3, 1, 4, 4).unwrap();
        let whole = Subspace::whole(&t);
        let f = SigmaPoly::new(vec![Fe(4), Fe(1), Fe(0), Fe(50)], 1);
        let k = f.kernel_basis(&t, &whole);
        let image: Vec<Fe> = whole.basis().iter().map(|&b| f.eval(&t, b)).collect();
        assert_eq!(crate::linalg::fq_rank(&t, &image) + k.dim(), 4);
        let zeros = t.top().elements().filter(|&x| f.eval(&t, x).is_zero()).count();
        assert_eq!(zeros, 3usize.pow(k.dim() as u32));
    }

    #[test]
    fn kernel_over_fq_with_ell_two() {
        // q = 4, m = 2: x^q - x vanishes exactly on F_4
        let t = FieldTower::new(2, 2, 2, 2).unwrap();
        let f = SigmaPoly::new(vec![t.minus_one(), Fe::ONE], 1);
        let k = f.kernel_basis(&t, &Subspace::whole(&t));
        assert_eq!(k.dim(), 1);
        let elems: BTreeSet<Fe> = k.elements(&t).into_iter().collect();
        let fq: BTreeSet<Fe> = t.fq_elements().into_iter().collect();
        assert_eq!(elems, fq);
    }
}

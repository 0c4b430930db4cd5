//! Evaluation codes `H_{n,k,σ}(f1,f2)[α] = {(g(α_1), …, g(α_n)) : g ∈ H_{m,k,σ}(f1,f2)}`.
//!
//! Codes are intensional: a [`RankCode`] stores the family and its parameters.
//! Membership is decided by interpolating the unique σ-polynomial of σ-degree
//! below `n` through the word and inspecting its coefficients, so it never
//! enumerates the code. Enumeration is provided separately for the oracles.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{coprime, Fe, FieldTower, NormTarget};
use crate::linalg::{fq_rank, FpSpan};
use crate::linearized::{interpolate, SigmaPoly, Subspace};
use crate::oracle::EnumGuard;

/// The code families that fit the shape `f1(a) x + Σ a_i x^(σ^i) + f2(a) x^(σ^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Generalized Gabidulin `G_{m,k,σ}`: `f1(a) = a`, `f2 = 0`.
    Gabidulin,
    /// Generalized twisted Gabidulin `H_{m,k,σ}(η,h)`: `f2(a) = η a^(q^h)`.
    Twisted { eta: Fe, h: usize },
    /// The additive variant `H̄_{m,k,σ}(η,h)`: `f2(a) = η a^(p^h)`.
    TwistedAdditive { eta: Fe, h: usize },
    /// Trombetti–Zhou `D_{m,k,σ}(η)`: `a x + … + η b x^(σ^k)` with `a, b ∈ F_{q^(m/2)}`.
    TrombettiZhou { eta: Fe },
    /// Any code containing `G_{m,2,σ}`: the Gabidulin part plus the `F_q`-span of `extras`.
    ContainingG2 { extras: Vec<SigmaPoly> },
}

impl Family {
    pub fn tag(&self, s: usize) -> &'static str {
        match self {
            Family::Gabidulin if s == 1 => "G",
            Family::Gabidulin => "G_sigma",
            Family::Twisted { .. } => "H",
            Family::TwistedAdditive { .. } => "Hbar",
            Family::TrombettiZhou { .. } => "D",
            Family::ContainingG2 { .. } => "custom-g2",
        }
    }
}

/// A vector of `F_{q^m}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Fe>);

impl Word {
    pub fn zero(n: usize) -> Self {
        Word(vec![Fe::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Fe] {
        &self.0
    }

    pub fn add(&self, tower: &FieldTower, other: &Word) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| tower.top().add(a, b)).collect())
    }

    pub fn sub(&self, tower: &FieldTower, other: &Word) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| tower.top().sub(a, b)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `dim_{F_q} ⟨w_1, …, w_n⟩`.
pub fn rank_weight(tower: &FieldTower, w: &Word) -> usize {
    fq_rank(tower, &w.0)
}

/// `rank_weight(u - v)`.
pub fn distance(tower: &FieldTower, u: &Word, v: &Word) -> usize {
    rank_weight(tower, &u.sub(tower, v))
}

/// `q^(mk)`, the size of an MRD code with these parameters.
pub fn singleton_size(m: usize, n: usize, k: usize, q: u64) -> BigUint {
    debug_assert!(1 <= k && k <= n && n <= m);
    BigUint::from(q).pow((m * k) as u32)
}

/// The rank-metric Singleton bound `q^(max(m,n)·(min(m,n) − d + 1))`.
pub fn singleton_bound(m: usize, n: usize, d: usize, q: u64) -> BigUint {
    let (hi, lo) = (m.max(n), m.min(n));
    BigUint::from(q).pow((hi * (lo + 1 - d)) as u32)
}

/// A validated code descriptor.
#[derive(Clone, Debug)]
pub struct RankCode {
    tower: Arc<FieldTower>,
    family: Family,
    k: usize,
    s: usize,
    alpha: Vec<Fe>,
    gabidulin_index: Option<usize>,
}

/// The default evaluation points: an `F_q`-basis of `F_{q^n}` when `n | m`,
/// otherwise the first `n` powers of the generator of `F_{q^m}`.
pub fn default_alpha(tower: &FieldTower) -> Vec<Fe> {
    match Subspace::subfield(tower) {
        Ok(s) => s.basis().to_vec(),
        Err(_) => Subspace::whole(tower).basis()[..tower.n()].to_vec(),
    }
}

impl RankCode {
    pub fn new(
        tower: Arc<FieldTower>,
        family: Family,
        k: usize,
        s: usize,
        alpha: Option<Vec<Fe>>,
    ) -> Result<Self> {
        let m = tower.m();
        if !coprime(s, m) {
            return Err(Error::TwistNotCoprime { s, m });
        }
        let alpha = alpha.unwrap_or_else(|| default_alpha(&tower));
        let n = alpha.len();
        if n != tower.n() {
            return Err(Error::LengthMismatch { expected: tower.n(), found: n });
        }
        Subspace::new(&tower, alpha.clone())?;
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let top = tower.top();
        let target = if (m * k).is_multiple_of(2) { Fe::ONE } else { tower.minus_one() };
        let gabidulin_index = match &family {
            Family::Gabidulin => Some(k),
            Family::Twisted { eta, .. } | Family::TwistedAdditive { eta, .. } => {
                check_eta(&tower, *eta)?;
                if k >= m {
                    return Err(Error::InvalidParameter(format!("need k <= m-1, got k={k}")));
                }
                let (nm, name) = match family {
                    Family::Twisted { .. } => (tower.norm(*eta, NormTarget::Fq), "N_{q^m/q}"),
                    _ => (tower.norm(*eta, NormTarget::Fp), "N_{q^m/p}"),
                };
                if nm == target {
                    let mut msg = format!("{name}(eta) = {nm} equals (-1)^(mk) = {target}");
                    if tower.q() == 2 {
                        msg.push_str("; over F_2 every nonzero eta has norm 1, so the condition is unsatisfiable");
                    }
                    return Err(Error::NormCondition(msg));
                }
                Some(k - 1)
            }
            Family::TrombettiZhou { eta } => {
                check_eta(&tower, *eta)?;
                if !m.is_multiple_of(2) {
                    return Err(Error::InvalidParameter(format!("D family needs m even, got m={m}")));
                }
                if k >= m {
                    return Err(Error::InvalidParameter(format!("need k <= m-1, got k={k}")));
                }
                if tower.q().is_multiple_of(2) {
                    return Err(Error::NormCondition(
                        "every element of F_q is a square in even characteristic".into(),
                    ));
                }
                let nm = tower.norm(*eta, NormTarget::Fq);
                // Euler's criterion inside F_q
                let euler = top.pow(nm, (tower.q() - 1) / 2);
                if euler == Fe::ONE {
                    return Err(Error::NormCondition(format!("N_{{q^m/q}}(eta) = {nm} is a square in F_q")));
                }
                Some(k - 1)
            }
            Family::ContainingG2 { extras } => {
                if k < 2 {
                    return Err(Error::InvalidParameter("a code containing G_{m,2} needs k >= 2".into()));
                }
                if let Some(bad) = extras.iter().find(|e| e.twist() != s) {
                    return Err(Error::TwistMismatch(bad.twist(), s));
                }
                None
            }
        };
        Ok(RankCode { tower, family, k, s, alpha, gabidulin_index })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> Arc<FieldTower> {
        self.tower.clone()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn tag(&self) -> &'static str {
        self.family.tag(self.s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn m(&self) -> usize {
        self.tower.m()
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    /// Designed minimum distance `n − k + 1`.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn alpha(&self) -> &[Fe] {
        &self.alpha
    }

    /// `U_S`, the span of the evaluation points.
    pub fn evaluation_space(&self) -> Subspace {
        Subspace::new(&self.tower, self.alpha.clone()).expect("validated at construction")
    }

    /// Gabidulin index known by construction (metadata only).
    pub fn gabidulin_index(&self) -> Option<usize> {
        self.gabidulin_index
    }

    /// Whether the polynomial code contains `G_{m,2,σ}`.
    pub fn contains_g2(&self) -> bool {
        match self.family {
            Family::Gabidulin => self.k >= 2,
            Family::ContainingG2 { .. } => true,
            _ => false,
        }
    }

    /// Number of codewords.
    pub fn size(&self) -> BigUint {
        match &self.family {
            Family::ContainingG2 { .. } => BigUint::from(self.tower.p()).pow(self.generator_words().len() as u32),
            _ => singleton_size(self.m(), self.n(), self.k, self.q()),
        }
    }

    /// `f2(a)` for the families with a twisted top coefficient.
    fn f2(&self, a: Fe) -> Fe {
        let t = &self.tower;
        match self.family {
            Family::Twisted { eta, h } => t.top().mul(eta, t.frobenius(a, h)),
            Family::TwistedAdditive { eta, h } => t.top().mul(eta, t.top().frob_p(a, h)),
            _ => Fe::ZERO,
        }
    }

    /// `(g(α_1), …, g(α_n))`.
    pub fn codeword_from_poly(&self, g: &SigmaPoly) -> Word {
        Word(self.alpha.iter().map(|&a| g.eval(&self.tower, a)).collect())
    }

    /// The σ-polynomial of σ-degree `< n` whose evaluation is `w`.
    pub fn interpolate(&self, w: &Word) -> Result<SigmaPoly> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: w.len() });
        }
        interpolate(&self.tower, &self.alpha, &w.0, self.s)
    }

    /// Whether a σ-polynomial of σ-degree `< n` belongs to the polynomial code.
    pub fn poly_in_code(&self, g: &SigmaPoly) -> bool {
        if g.twist() != self.s {
            return false;
        }
        let t = &self.tower;
        let top = t.top();
        let k = self.k;
        if matches!(self.family, Family::ContainingG2 { .. }) {
            return self.contains(&self.codeword_from_poly(g)).unwrap_or(false);
        }
        if g.degree().is_some_and(|d| d > k) {
            return false;
        }
        let (a0, ak) = (g.coeff(0), g.coeff(k));
        match &self.family {
            Family::Gabidulin => ak.is_zero(),
            Family::Twisted { .. } | Family::TwistedAdditive { .. } => ak == self.f2(a0),
            Family::TrombettiZhou { eta } => {
                let half = t.m() / 2;
                let b = top.div(ak, *eta).expect("eta is nonzero");
                t.in_subfield(a0, half) && t.in_subfield(b, half)
            }
            Family::ContainingG2 { .. } => unreachable!(),
        }
    }

    /// Membership of a received word, decided algebraically.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: w.len() });
        }
        if let Family::ContainingG2 { .. } = self.family {
            let mut span = self.word_span();
            return Ok(!span_grows(&mut span, &self.tower, w));
        }
        if self.k >= self.n() {
            // q^(mn) codewords: the whole space
            return Ok(true);
        }
        let g = self.interpolate(w)?;
        Ok(self.poly_in_code(&g))
    }

    /// An `F_p`-basis of the polynomial code.
    pub fn generator_polys(&self) -> Vec<SigmaPoly> {
        let t = &self.tower;
        let top = t.top();
        let s = self.s;
        let k = self.k;
        let fp_basis: Vec<Fe> = (0..top.degree()).map(|i| Fe((t.p() as u64).pow(i as u32) as u32)).collect();
        let mut out = Vec::new();
        let middle = |out: &mut Vec<SigmaPoly>, upto: usize| {
            for i in 1..upto {
                for &e in &fp_basis {
                    out.push(SigmaPoly::monomial(e, i, s));
                }
            }
        };
        match &self.family {
            Family::Gabidulin | Family::Twisted { .. } | Family::TwistedAdditive { .. } => {
                for &e in &fp_basis {
                    let top_term = self.f2(e);
                    let mut coeffs = vec![Fe::ZERO; k + 1];
                    coeffs[0] = e;
                    coeffs[k] = top.add(coeffs[k], top_term);
                    out.push(SigmaPoly::new(coeffs, s));
                }
                middle(&mut out, k);
            }
            Family::TrombettiZhou { eta } => {
                let half = half_field_basis(t);
                for &e in &half {
                    out.push(SigmaPoly::monomial(e, 0, s));
                    out.push(SigmaPoly::monomial(top.mul(*eta, e), k, s));
                }
                middle(&mut out, k);
            }
            Family::ContainingG2 { extras } => {
                for &e in &fp_basis {
                    out.push(SigmaPoly::monomial(e, 0, s));
                }
                middle(&mut out, 2);
                for x in extras {
                    for &g in t.fq_basis() {
                        out.push(x.scale(t, g));
                    }
                }
            }
        }
        out
    }

    fn word_span(&self) -> FpSpan {
        let mut span = FpSpan::new(self.tower.p(), self.n() * self.tower.top().degree());
        for g in self.generator_polys() {
            span_grows(&mut span, &self.tower, &self.codeword_from_poly(&g));
        }
        span
    }

    /// `F_p`-independent codewords generating the code.
    pub fn generator_words(&self) -> Vec<Word> {
        let mut span = FpSpan::new(self.tower.p(), self.n() * self.tower.top().degree());
        self.generator_polys()
            .iter()
            .map(|g| self.codeword_from_poly(g))
            .filter(|w| span_grows(&mut span, &self.tower, w))
            .collect()
    }

    /// Calls `visit` on every codeword (the zero word first); stops early when it returns `false`.
    pub fn for_each_codeword(&self, guard: &EnumGuard, mut visit: impl FnMut(&Word) -> bool) -> Result<()> {
        guard.check(&self.size())?;
        let gens = self.generator_words();
        let p = self.tower.p();
        let top = self.tower.top();
        let mut digits = vec![0u32; gens.len()];
        let mut word = Word::zero(self.n());
        if !visit(&word) {
            return Ok(());
        }
        loop {
            // odometer step: adding a generator p times is the identity, so wrapping needs no undo
            let mut j = 0;
            loop {
                if j == gens.len() {
                    return Ok(());
                }
                for (x, &g) in word.0.iter_mut().zip(&gens[j].0) {
                    *x = top.add(*x, g);
                }
                digits[j] += 1;
                if digits[j] < p {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
            if !visit(&word) {
                return Ok(());
            }
        }
    }

    /// All codewords (for small codes).
    pub fn codewords(&self, guard: &EnumGuard) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        self.for_each_codeword(guard, |w| {
            out.push(w.clone());
            true
        })?;
        Ok(out)
    }
}

fn check_eta(tower: &FieldTower, eta: Fe) -> Result<()> {
    if eta.is_zero() || !tower.top().contains(eta) {
        return Err(Error::InvalidParameter(format!("eta must be a nonzero element of F_q^m, got {eta}")));
    }
    Ok(())
}

/// An `F_p`-basis of `F_{q^(m/2)}` inside `F_{q^m}`.
fn half_field_basis(tower: &FieldTower) -> Vec<Fe> {
    let half = tower.m() / 2;
    let top = tower.top();
    let mut span = FpSpan::for_field(top);
    top.elements()
        .filter(|&x| tower.in_subfield(x, half))
        .filter(|&x| span.insert_element(top, x))
        .take(tower.ell() * half)
        .collect()
}

fn span_grows(span: &mut FpSpan, tower: &FieldTower, w: &Word) -> bool {
    let top = tower.top();
    let digits: Vec<u32> = w.0.iter().flat_map(|&x| top.digits(x)).collect();
    span.insert_digits(digits)
}

/// Minimum rank weight over nonzero codewords.
///
/// All families here are closed under addition, so this is the minimum distance.
pub fn min_distance_exhaustive(code: &RankCode, guard: &EnumGuard) -> Result<usize> {
    let tower = code.tower();
    let mut best = usize::MAX;
    let mut first = true;
    code.for_each_codeword(guard, |w| {
        if first {
            first = false;
            return true;
        }
        best = best.min(rank_weight(tower, w));
        best > 1
    })?;
    Ok(if best == usize::MAX { 0 } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16_gab(k: usize) -> RankCode {
        let t = Arc::new(FieldTower::new(2, 1, 4, 4).unwrap());
        RankCode::new(t, Family::Gabidulin, k, 1, None).unwrap()
    }

    #[test]
    fn gabidulin_4_2_metadata() {
        let c = f16_gab(2);
        assert_eq!(c.d(), 3);
        assert_eq!(c.size(), BigUint::from(256u32));
        assert_eq!(c.gabidulin_index(), Some(2));
        assert_eq!(c.tag(), "G");
    }

    #[test]
    fn twisted_family_is_impossible_over_f2() {
        let t = Arc::new(FieldTower::new(2, 1, 4, 4).unwrap());
        for eta in t.top().nonzero_elements() {
            for k in 1..4 {
                let err = RankCode::new(t.clone(), Family::Twisted { eta, h: 1 }, k, 1, None).unwrap_err();
                match err {
                    Error::NormCondition(msg) => assert!(msg.contains("unsatisfiable")),
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
    }

    #[test]
    fn codeword_from_simple_polys() {
        let c = f16_gab(2);
        let t = c.tower();
        assert_eq!(c.codeword_from_poly(&SigmaPoly::zero(1)), Word::zero(4));
        assert_eq!(c.codeword_from_poly(&SigmaPoly::identity(1)).0, c.alpha());
        let sq = c.codeword_from_poly(&SigmaPoly::monomial(Fe::ONE, 1, 1));
        let expected: Vec<Fe> = c.alpha().iter().map(|&a| t.top().mul(a, a)).collect();
        assert_eq!(sq.0, expected);
        assert_eq!(c.alpha(), &[Fe(1), Fe(2), Fe(4), Fe(8)]);
    }

    #[test]
    fn rank_weight_basics() {
        let c = f16_gab(2);
        let t = c.tower();
        assert_eq!(rank_weight(t, &Word::zero(4)), 0);
        assert_eq!(rank_weight(t, &Word(c.alpha().to_vec())), 4);
    }

    #[test]
    fn every_gabidulin_codeword_is_a_member() {
        let c = f16_gab(2);
        let guard = EnumGuard::default();
        let words = c.codewords(&guard).unwrap();
        assert_eq!(words.len(), 256);
        let distinct: std::collections::BTreeSet<_> = words.iter().cloned().collect();
        assert_eq!(distinct.len(), 256);
        for w in &words {
            assert!(c.contains(w).unwrap());
        }
        // and nothing else of low σ-degree with a nonzero x^σ^2 coefficient
        let outside = c.codeword_from_poly(&SigmaPoly::monomial(Fe::ONE, 2, 1));
        assert!(!c.contains(&outside).unwrap());
    }

    #[test]
    fn min_distances_small() {
        assert_eq!(min_distance_exhaustive(&f16_gab(2), &EnumGuard::default()).unwrap(), 3);
        assert_eq!(min_distance_exhaustive(&f16_gab(4), &EnumGuard::default()).unwrap(), 1);
    }

    #[test]
    fn guard_is_enforced() {
        let c = f16_gab(2);
        let err = min_distance_exhaustive(&c, &EnumGuard::new(100u32)).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn trombetti_zhou_validation_and_distance() {
        let t = Arc::new(FieldTower::new(3, 1, 4, 4).unwrap());
        let top = t.top();
        let eta = top
            .nonzero_elements()
            .find(|&e| {
                let nm = t.norm(e, NormTarget::Fq);
                nm == t.minus_one()
            })
            .unwrap();
        let code = RankCode::new(t.clone(), Family::TrombettiZhou { eta }, 2, 1, None).unwrap();
        assert_eq!(code.size(), BigUint::from(3u32).pow(8));
        assert_eq!(code.gabidulin_index(), Some(1));
        let square = top.nonzero_elements().find(|&e| t.norm(e, NormTarget::Fq) == Fe::ONE).unwrap();
        assert!(matches!(
            RankCode::new(t.clone(), Family::TrombettiZhou { eta: square }, 2, 1, None),
            Err(Error::NormCondition(_))
        ));
        let words = code.codewords(&EnumGuard::default()).unwrap();
        assert_eq!(words.len(), 6561);
        assert!(words.iter().step_by(97).all(|w| code.contains(w).unwrap()));
    }

    #[test]
    fn odd_m_rejected_for_d_family() {
        let t = Arc::new(FieldTower::new(3, 1, 3, 3).unwrap());
        let err = RankCode::new(t, Family::TrombettiZhou { eta: Fe(2) }, 2, 1, None).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_size(4, 4, 2, 2), BigUint::from(256u32));
        assert_eq!(singleton_size(6, 6, 3, 2), BigUint::from(1u32 << 18));
        assert_eq!(singleton_size(7, 7, 2, 2), BigUint::from(1u32 << 14));
        for (m, n, k, q) in [(4, 4, 2, 2), (6, 6, 3, 2), (7, 7, 2, 2), (6, 4, 2, 3)] {
            assert_eq!(singleton_size(m, n, k, q), singleton_bound(m, n, n - k + 1, q));
        }
    }

    #[test]
    fn containing_g2_with_extras() {
        let t = Arc::new(FieldTower::new(2, 1, 4, 4).unwrap());
        let extra = SigmaPoly::monomial(Fe(3), 3, 1);
        let code = RankCode::new(t.clone(), Family::ContainingG2 { extras: vec![extra.clone()] }, 2, 1, None).unwrap();
        assert_eq!(code.size(), BigUint::from(1u32 << 9));
        assert!(code.contains(&code.codeword_from_poly(&extra)).unwrap());
        let g2 = SigmaPoly::new(vec![Fe(7), Fe(9)], 1);
        assert!(code.contains(&code.codeword_from_poly(&g2)).unwrap());
        assert!(!code.contains(&code.codeword_from_poly(&SigmaPoly::monomial(Fe::ONE, 2, 1))).unwrap());
        assert!(code.contains_g2());
    }

    #[test]
    fn length_mismatch() {
        let c = f16_gab(2);
        assert_eq!(c.contains(&Word::zero(3)), Err(Error::LengthMismatch { expected: 4, found: 3 }));
    }
}

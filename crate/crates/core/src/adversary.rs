//! List-size bounds and builders for received words with large decoding lists.
//!
//! A builder picks a family of σ-subspace polynomials whose members agree on
//! their top coefficients, takes the first member `R` as the center `c_R`,
//! and lists the codewords `c_{R−P}`. Every check it records is algebraic;
//! [`verify_adversary`] recomputes them from the words alone and can ask the
//! oracle for the true ball count.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{rank_weight, RankCode, Word};
use crate::constructions::{
    pigeonhole_family, shift_compose, sigma_image, trace_family, trace_family_size, trinomial_family, PolyFamily,
};
use crate::error::{Error, Result};
use crate::linearized::SigmaPoly;
use crate::oracle::{ball_intersection_count, EnumGuard};

/// `[n r]_q`, the number of `r`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// The radius threshold `(m+n)/2 − sqrt((m+n)²/c − m(d−ε))` and its ceiling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusBound {
    pub value: f64,
    pub first_integer: usize,
}

/// Radius above which generic rank-metric codes have exponential lists.
///
/// `c = 4` by default; `half_radicand` switches to `c = 2`, the other version
/// of the formula in circulation.
pub fn bound_wz_radius(m: usize, n: usize, d: usize, eps: f64, half_radicand: bool) -> Result<RadiusBound> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("need 0 <= eps < 1, got {eps}")));
    }
    let sum = (m + n) as f64;
    let c = if half_radicand { 2.0 } else { 4.0 };
    let radicand = sum * sum / c - m as f64 * (d as f64 - eps);
    if radicand < 0.0 {
        return Err(Error::Precondition(format!(
            "no exponential regime at these parameters (radicand {radicand} < 0)"
        )));
    }
    let value = sum / 2.0 - radicand.sqrt();
    let first_integer = value.ceil().max(0.0) as usize;
    Ok(RadiusBound { value, first_integer })
}

fn check_tau_range(d: usize, tau: usize) -> Result<()> {
    let lo = (d - 1) / 2 + 1;
    if tau < lo || tau + 1 > d {
        return Err(Error::InvalidParameter(format!("tau={tau} outside [{lo}, {}]", d - 1)));
    }
    Ok(())
}

/// `⌊[n, n−τ]_q / q^(m(n−τ−k))⌋`.
pub fn bound_thm_gab(n: usize, m: usize, k: usize, tau: usize, q: u64) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    check_tau_range(n - k + 1, tau)?;
    let den = BigUint::from(q).pow((m * (n - tau - k)) as u32);
    Ok(gaussian_binomial(n, n - tau, q) / den)
}

/// `⌊[n, n−τ]_q / q^(m(d−τ))⌋`.
pub fn bound_thm_gen(n: usize, m: usize, d: usize, tau: usize, q: u64) -> Result<BigUint> {
    if d == 0 || d > n {
        return Err(Error::InvalidParameter(format!("need 1 <= d <= n, got d={d}")));
    }
    check_tau_range(d, tau)?;
    let den = BigUint::from(q).pow((m * (d - tau)) as u32);
    Ok(gaussian_binomial(n, n - tau, q) / den)
}

/// The radius `τ` with `n = (n−τ)(n−τ−1) + 1`, if it is an integer.
pub fn feasible_tau(n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let disc = 4 * n - 3;
    let root = disc.sqrt();
    if root * root != disc || (2 * n - 1) < root || !(2 * n - 1 - root).is_multiple_of(2) {
        return None;
    }
    let tau = (2 * n - 1 - root) / 2;
    let t = n - tau;
    (t >= 1 && t * (t - 1) + 1 == n).then_some(tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Strategy {
    /// Trace family with `t = τ` (Gabidulin codes).
    Trace,
    /// Trace family with `t = τ+1`, shifted by `x^σ`; ball radius `τ+1`.
    TraceGen,
    /// Subspace trinomials, for codes containing `G_{m,2}`.
    Trinomial,
    /// Pigeonhole class of subspace polynomials (Gabidulin exponent).
    Pigeonhole,
    /// Pigeonhole class shifted by `x^σ`.
    PigeonholeGen,
}

impl Strategy {
    pub const ALL: [Strategy; 5] =
        [Strategy::Trace, Strategy::TraceGen, Strategy::Trinomial, Strategy::Pigeonhole, Strategy::PigeonholeGen];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Trace => "trace",
            Strategy::TraceGen => "trace-gen",
            Strategy::Trinomial => "trinomial",
            Strategy::Pigeonhole => "pigeonhole",
            Strategy::PigeonholeGen => "pigeonhole-gen",
        }
    }

    /// Ball radius used for a nominal `τ`.
    pub fn radius(self, tau: usize) -> usize {
        match self {
            Strategy::TraceGen => tau + 1,
            _ => tau,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.name().to_string()
    }
}

impl TryFrom<String> for Strategy {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" | "trace-gab" => Ok(Strategy::Trace),
            "trace-gen" => Ok(Strategy::TraceGen),
            "trinomial" => Ok(Strategy::Trinomial),
            "pigeonhole" | "pigeonhole-gab" => Ok(Strategy::Pigeonhole),
            "pigeonhole-gen" => Ok(Strategy::PigeonholeGen),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// The four checks that make a report valid (together with the size bound).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Checks {
    pub center_outside: bool,
    pub all_members_in_code: bool,
    pub all_within_radius: bool,
    pub all_distinct: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.center_outside && self.all_members_in_code && self.all_within_radius && self.all_distinct
    }
}

/// The first offending element for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub index: Option<usize>,
    pub detail: String,
}

/// Extra data for the pigeonhole strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeInfo {
    pub r: usize,
    pub g: usize,
    pub subspaces: usize,
    pub classes: usize,
    /// `⌈[n r]_q / q^(m(g−1))⌉`, the class-size guarantee.
    pub class_bound: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryReport {
    pub strategy: Strategy,
    pub tau: usize,
    pub radius: usize,
    pub center: Word,
    pub list: Vec<Word>,
    pub claimed_bound: BigUint,
    pub checks: Checks,
    pub witnesses: Vec<Witness>,
    /// Rank weight of the center.
    pub center_rank: usize,
    pub oracle_count: Option<BigUint>,
    pub pigeonhole: Option<PigeonholeInfo>,
}

impl AdversaryReport {
    pub fn achieved(&self) -> usize {
        self.list.len()
    }

    /// All checks hold, the list reaches the bound, and the oracle (if run) agrees.
    pub fn valid(&self) -> bool {
        let count_ok = BigUint::from(self.list.len()) >= self.claimed_bound;
        let oracle_ok = self.oracle_count.as_ref().is_none_or(|c| c >= &self.claimed_bound);
        self.checks.all() && count_ok && oracle_ok
    }
}

/// The bound each strategy claims at `(code, τ)`.
pub fn claimed_bound(code: &RankCode, strategy: Strategy, tau: usize) -> Result<BigUint> {
    let (n, m, k, q) = (code.n(), code.m(), code.k(), code.q());
    match strategy {
        Strategy::Trace => {
            nonzero_divisor(tau, n)?;
            Ok(trace_family_size(q, n, tau))
        }
        Strategy::TraceGen => {
            nonzero_divisor(tau + 1, n)?;
            Ok(trace_family_size(q, n, tau + 1))
        }
        Strategy::Trinomial => Ok(trace_family_size(q, n, 1)),
        Strategy::Pigeonhole => bound_thm_gab(n, m, k, tau, q),
        Strategy::PigeonholeGen => bound_thm_gen(n, m, code.d(), tau, q),
    }
}

fn nonzero_divisor(t: usize, n: usize) -> Result<()> {
    if t == 0 || !n.is_multiple_of(t) {
        return Err(Error::Precondition(format!("{t} does not divide n={n}")));
    }
    Ok(())
}

/// The smallest admissible radius for a strategy, if any.
pub fn auto_tau(code: &RankCode, strategy: Strategy) -> Result<usize> {
    let (n, d) = (code.n(), code.d());
    let unique = (d - 1) / 2;
    let found = match strategy {
        Strategy::Trinomial => feasible_tau(n),
        Strategy::Trace => (unique + 1..n).find(|&t| n % t == 0),
        Strategy::TraceGen => (unique.max(1)..n).find(|&t| n % (t + 1) == 0 && 2 * t + 1 >= d),
        Strategy::Pigeonhole | Strategy::PigeonholeGen => (unique + 1 < d).then_some(unique + 1),
    };
    found.ok_or_else(|| Error::Precondition(format!("no admissible tau for {strategy} at n={n}, d={d}")))
}

/// Builds the family of polynomials a strategy uses.
fn strategy_family(
    code: &RankCode,
    strategy: Strategy,
    tau: usize,
    guard: &EnumGuard,
) -> Result<(PolyFamily, Option<PigeonholeInfo>)> {
    let tower = code.tower();
    let (n, m, s, d) = (code.n(), code.m(), code.s(), code.d());
    let u_s = code.evaluation_space();
    let needs_subfield = || -> Result<()> {
        if !tower.has_embedding() {
            return Err(Error::Precondition(format!("n={n} must divide m={m}")));
        }
        if code.alpha().iter().any(|&a| !tower.in_subfield(a, n)) {
            return Err(Error::Precondition("the evaluation points must span F_{q^n}".into()));
        }
        Ok(())
    };
    match strategy {
        Strategy::Trace => {
            if tau == 0 || n % tau != 0 {
                return Err(Error::Precondition(format!("tau={tau} must divide n={n}")));
            }
            needs_subfield()?;
            if tau <= (d - 1) / 2 {
                return Err(Error::Precondition(format!(
                    "tau={tau} must exceed the unique decoding radius {}",
                    (d - 1) / 2
                )));
            }
            Ok((trace_family(tower, tau, s)?, None))
        }
        Strategy::TraceGen => {
            if n % (tau + 1) != 0 {
                return Err(Error::Precondition(format!("tau+1={} must divide n={n}", tau + 1)));
            }
            needs_subfield()?;
            let fam = trace_family(tower, tau + 1, s)?;
            Ok((shift_compose(tower, &fam)?, None))
        }
        Strategy::Trinomial => {
            if feasible_tau(n) != Some(tau) {
                return Err(Error::Precondition(format!("n={n} is not (n-tau)(n-tau-1)+1 for tau={tau}")));
            }
            if s != 1 {
                return Err(Error::Precondition(format!("trinomials need the twist s=1, got s={s}")));
            }
            if !code.contains_g2() {
                return Err(Error::Precondition(format!("the {} code does not contain G_(m,2)", code.tag())));
            }
            needs_subfield()?;
            Ok((trinomial_family(tower, n - tau)?, None))
        }
        Strategy::Pigeonhole | Strategy::PigeonholeGen => {
            check_tau_range(d, tau).map_err(|e| Error::Precondition(e.to_string()))?;
            let r = n - tau;
            let gen = strategy == Strategy::PigeonholeGen;
            // agreement on g top coefficients leaves σ-degree ≤ k−1 in R − P
            let g = if gen { d - tau + 1 } else { d - tau };
            // for the shifted family, kernels of F∘x^σ must land in U_S
            let space = if gen { sigma_image(tower, &u_s, s)? } else { u_s };
            let ph = pigeonhole_family(tower, &space, r, g, s, guard)?;
            let info = PigeonholeInfo {
                r,
                g,
                subspaces: ph.total,
                classes: ph.class_sizes.len(),
                class_bound: ph.bound.clone(),
            };
            let fam = if gen { shift_compose(tower, &ph.largest)? } else { ph.largest };
            Ok((fam, Some(info)))
        }
    }
}

/// Builds the center and list for a strategy and checks them algebraically.
pub fn build_adversary(code: &RankCode, strategy: Strategy, tau: usize, guard: &EnumGuard) -> Result<AdversaryReport> {
    let tower = code.tower();
    let (fam, pigeonhole) = strategy_family(code, strategy, tau, guard)?;
    let claimed = claimed_bound(code, strategy, tau)?;
    let radius = strategy.radius(tau);
    let r = fam.members.first().ok_or_else(|| Error::Precondition("empty family".into()))?.clone();
    let center = code.codeword_from_poly(&r);
    let diffs: Vec<SigmaPoly> = fam.members.iter().map(|p| r.sub(tower, p)).collect::<Result<_>>()?;
    let list: Vec<Word> = diffs.iter().map(|g| code.codeword_from_poly(g)).collect();

    let mut witnesses = Vec::new();
    let center_rank = rank_weight(tower, &center);
    let center_outside = !code.contains(&center)?;
    if !center_outside {
        witnesses.push(Witness {
            check: "center_outside".into(),
            index: None,
            detail: format!("the center (rank {center_rank}) is a codeword"),
        });
    }
    // membership from the coefficient pattern of R − P, which has σ-degree < n
    let bad_member = diffs.iter().position(|g| {
        if g.degree().is_none_or(|dg| dg < code.n()) {
            !code.poly_in_code(g)
        } else {
            !code.contains(&code.codeword_from_poly(g)).unwrap_or(false)
        }
    });
    if let Some(i) = bad_member {
        witnesses.push(Witness {
            check: "all_members_in_code".into(),
            index: Some(i),
            detail: format!("R - P = {} is not in the {} code", diffs[i], code.tag()),
        });
    }
    let far = first_outside_radius(code, &center, &list, radius);
    if let Some((i, rk)) = far {
        witnesses.push(Witness {
            check: "all_within_radius".into(),
            index: Some(i),
            detail: format!("rank distance {rk} exceeds {radius}"),
        });
    }
    // distinct polynomials of σ-degree < n give distinct words; check the words too
    let poly_distinct = diffs.iter().collect::<HashSet<_>>().len() == diffs.len();
    let dup = first_duplicate(&list);
    if let Some(i) = dup {
        witnesses.push(Witness { check: "all_distinct".into(), index: Some(i), detail: "repeated word".into() });
    }
    let checks = Checks {
        center_outside,
        all_members_in_code: bad_member.is_none(),
        all_within_radius: far.is_none(),
        all_distinct: poly_distinct && dup.is_none(),
    };
    Ok(AdversaryReport {
        strategy,
        tau,
        radius,
        center,
        list,
        claimed_bound: claimed,
        checks,
        witnesses,
        center_rank,
        oracle_count: None,
        pigeonhole,
    })
}

fn first_outside_radius(code: &RankCode, center: &Word, list: &[Word], radius: usize) -> Option<(usize, usize)> {
    let tower = code.tower();
    list.iter().enumerate().find_map(|(i, w)| {
        let rk = rank_weight(tower, &center.sub(tower, w));
        (rk > radius).then_some((i, rk))
    })
}

fn first_duplicate(list: &[Word]) -> Option<usize> {
    let mut seen = HashSet::new();
    list.iter().position(|w| !seen.insert(w))
}

/// Recomputes every check of `report` from its words, ignoring the recorded
/// results; with `oracle`, also counts the true ball intersection.
pub fn verify_adversary(
    code: &RankCode,
    report: &AdversaryReport,
    oracle: bool,
    guard: &EnumGuard,
) -> Result<AdversaryReport> {
    let tower = code.tower();
    let n = code.n();
    let mut out = report.clone();
    out.witnesses.clear();
    out.oracle_count = None;
    out.claimed_bound = claimed_bound(code, report.strategy, report.tau)?;

    let well_formed = report.center.len() == n && report.list.iter().all(|w| w.len() == n);
    if !well_formed {
        out.checks = Checks::default();
        out.witnesses.push(Witness {
            check: "well_formed".into(),
            index: report.list.iter().position(|w| w.len() != n),
            detail: format!("words must have length {n}"),
        });
        return Ok(out);
    }
    out.center_rank = rank_weight(tower, &report.center);
    out.checks.center_outside = !code.contains(&report.center)?;
    if !out.checks.center_outside {
        out.witnesses.push(Witness {
            check: "center_outside".into(),
            index: None,
            detail: "the center is a codeword".into(),
        });
    }
    let mut bad = None;
    for (i, w) in report.list.iter().enumerate() {
        if !code.contains(w)? {
            bad = Some(i);
            break;
        }
    }
    out.checks.all_members_in_code = bad.is_none();
    if let Some(i) = bad {
        out.witnesses.push(Witness {
            check: "all_members_in_code".into(),
            index: Some(i),
            detail: format!("{} is not a codeword", report.list[i]),
        });
    }
    let far = first_outside_radius(code, &report.center, &report.list, report.radius);
    out.checks.all_within_radius = far.is_none();
    if let Some((i, rk)) = far {
        out.witnesses.push(Witness {
            check: "all_within_radius".into(),
            index: Some(i),
            detail: format!("rank distance {rk} exceeds {}", report.radius),
        });
    }
    let dup = first_duplicate(&report.list);
    out.checks.all_distinct = dup.is_none();
    if let Some(i) = dup {
        out.witnesses.push(Witness { check: "all_distinct".into(), index: Some(i), detail: "repeated word".into() });
    }
    if BigUint::from(report.list.len()) < out.claimed_bound {
        out.witnesses.push(Witness {
            check: "list_size".into(),
            index: None,
            detail: format!("{} words, claimed at least {}", report.list.len(), out.claimed_bound),
        });
    }
    if oracle {
        let count = ball_intersection_count(code, &report.center, report.radius, guard)?;
        if count < out.claimed_bound {
            out.witnesses.push(Witness {
                check: "oracle_count".into(),
                index: None,
                detail: format!("ball holds {count} codewords, claimed at least {}", out.claimed_bound),
            });
        }
        out.oracle_count = Some(count);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Family;
    use crate::galois::{Fe, FieldTower, NormTarget};
    use crate::linearized::Subspace;
    use crate::oracle::enumerate_subspaces;
    use std::sync::Arc;

    fn gab(p: u32, n: usize, m: usize, k: usize) -> RankCode {
        let t = Arc::new(FieldTower::new(p, 1, n, m).unwrap());
        RankCode::new(t, Family::Gabidulin, k, 1, None).unwrap()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(5, 0, 3), BigUint::one());
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(7, 3, 2), BigUint::from(11811u32));
        assert_eq!(gaussian_binomial(6, 3, 2), BigUint::from(1395u32));
        assert_eq!(gaussian_binomial(2, 3, 2), BigUint::zero());
    }

    #[test]
    fn gaussian_binomial_matches_enumeration() {
        let t = FieldTower::new(2, 1, 7, 7).unwrap();
        let whole = Subspace::whole(&t);
        let count = enumerate_subspaces(&t, &whole, 3, &EnumGuard::default()).unwrap().count();
        assert_eq!(BigUint::from(count), gaussian_binomial(7, 3, 2));
    }

    #[test]
    fn radius_threshold() {
        let b = bound_wz_radius(7, 7, 5, 0.0, false).unwrap();
        assert!((b.value - (7.0 - 14f64.sqrt())).abs() < 1e-12);
        assert_eq!(b.first_integer, 4);
        let b = bound_wz_radius(6, 6, 3, 0.0, false).unwrap();
        assert!((b.value - (6.0 - 18f64.sqrt())).abs() < 1e-12);
        assert!(bound_wz_radius(2, 2, 3, 0.0, false).is_err());
        assert!(bound_wz_radius(2, 2, 3, 0.0, true).is_ok());
        assert!(bound_wz_radius(7, 7, 5, 1.0, false).is_err());
    }

    #[test]
    fn construction_radius_never_exceeds_threshold_for_square_codes() {
        for n in 2..12 {
            for d in 1..=n {
                let b = bound_wz_radius(n, n, d, 0.0, false).unwrap();
                assert!(b.first_integer > (d - 1) / 2, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn list_size_bounds() {
        assert_eq!(bound_thm_gab(4, 4, 2, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(bound_thm_gen(6, 6, 4, 3, 2).unwrap(), BigUint::from(21u32));
        // τ = d−1 with n−τ−k = 0
        assert_eq!(bound_thm_gab(5, 5, 2, 3, 2).unwrap(), gaussian_binomial(5, 2, 2));
        assert!(bound_thm_gab(4, 4, 2, 1, 2).is_err());
        assert!(bound_thm_gen(6, 6, 4, 4, 2).is_err());
    }

    #[test]
    fn feasible_taus() {
        assert_eq!(feasible_tau(7), Some(4));
        assert_eq!(feasible_tau(3), Some(1));
        assert_eq!(feasible_tau(4), None);
        assert_eq!(feasible_tau(13), Some(9));
        assert_eq!(feasible_tau(1), Some(0));
        for n in 1..200 {
            if let Some(tau) = feasible_tau(n) {
                let t = n - tau;
                assert_eq!(t * (t - 1) + 1, n);
            }
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("nope".parse::<Strategy>().is_err());
    }

    #[test]
    fn trace_on_small_gabidulin() {
        let code = gab(2, 4, 4, 2);
        let rep = build_adversary(&code, Strategy::Trace, 2, &EnumGuard::default()).unwrap();
        assert_eq!(rep.list.len(), 5);
        assert_eq!(rep.center_rank, 2);
        assert!(rep.valid(), "{:?}", rep.witnesses);
        let checked = verify_adversary(&code, &rep, true, &EnumGuard::default()).unwrap();
        assert!(checked.valid());
        assert!(checked.oracle_count.unwrap() >= BigUint::from(5u32));
    }

    #[test]
    fn tampered_report_is_caught() {
        let code = gab(2, 4, 4, 2);
        let mut rep = build_adversary(&code, Strategy::Trace, 2, &EnumGuard::default()).unwrap();
        // a codeword at rank distance ≥ 3 from the center
        let far = code
            .codewords(&EnumGuard::default())
            .unwrap()
            .into_iter()
            .find(|c| rank_weight(code.tower(), &rep.center.sub(code.tower(), c)) > 2)
            .unwrap();
        rep.list[3] = far;
        let checked = verify_adversary(&code, &rep, false, &EnumGuard::default()).unwrap();
        assert!(!checked.checks.all_within_radius);
        assert!(!checked.valid());
        assert_eq!(checked.witnesses[0].index, Some(3));
    }

    #[test]
    fn mismatched_code_fails_membership() {
        let code = gab(2, 4, 4, 2);
        let rep = build_adversary(&code, Strategy::Trace, 2, &EnumGuard::default()).unwrap();
        // same parameters, different evaluation points
        let alpha = vec![Fe(1), Fe(3), Fe(5), Fe(9)];
        let other = RankCode::new(code.tower_arc(), Family::Gabidulin, 2, 1, Some(alpha)).unwrap();
        let checked = verify_adversary(&other, &rep, false, &EnumGuard::default()).unwrap();
        assert!(!checked.checks.all_members_in_code);
        assert!(!checked.valid());
    }

    #[test]
    fn validity_is_monotone_in_radius() {
        let code = gab(2, 6, 6, 3);
        let rep = build_adversary(&code, Strategy::Trace, 3, &EnumGuard::default()).unwrap();
        assert!(rep.valid());
        for extra in 1..=2 {
            let mut wider = rep.clone();
            wider.radius += extra;
            let checked = verify_adversary(&code, &wider, false, &EnumGuard::default()).unwrap();
            assert!(checked.valid(), "radius {}", wider.radius);
        }
    }

    #[test]
    fn trinomial_on_g3() {
        let code = gab(2, 3, 3, 2);
        let rep = build_adversary(&code, Strategy::Trinomial, 1, &EnumGuard::default()).unwrap();
        assert_eq!(rep.list.len(), 7);
        let checked = verify_adversary(&code, &rep, true, &EnumGuard::default()).unwrap();
        assert!(checked.valid(), "{:?}", checked.witnesses);
    }

    #[test]
    fn trace_gen_on_twisted_code() {
        let t = Arc::new(FieldTower::new(3, 1, 4, 4).unwrap());
        // (−1)^(mk) = 1 here, so any η of norm ≠ 1 works
        let eta = t.top().nonzero_elements().find(|&e| t.norm(e, NormTarget::Fq) != Fe::ONE).unwrap();
        let code = RankCode::new(t, Family::Twisted { eta, h: 1 }, 2, 1, None).unwrap();
        let rep = build_adversary(&code, Strategy::TraceGen, 1, &EnumGuard::default()).unwrap();
        assert_eq!(rep.list.len(), 10);
        assert_eq!(rep.radius, 2);
        assert!(rep.valid(), "{:?}", rep.witnesses);
        let checked = verify_adversary(&code, &rep, true, &EnumGuard::default()).unwrap();
        assert!(checked.valid(), "{:?}", checked.witnesses);
    }

    #[test]
    fn pigeonhole_strategies() {
        let code = gab(2, 4, 4, 2);
        let rep = build_adversary(&code, Strategy::Pigeonhole, 2, &EnumGuard::default()).unwrap();
        assert_eq!(rep.claimed_bound, BigUint::from(35u32));
        assert_eq!(rep.list.len(), 35);
        assert!(rep.valid(), "{:?}", rep.witnesses);
        let code = gab(2, 5, 5, 2);
        let rep = build_adversary(&code, Strategy::PigeonholeGen, 3, &EnumGuard::default()).unwrap();
        assert!(rep.checks.all(), "{:?}", rep.witnesses);
        let checked = verify_adversary(&code, &rep, false, &EnumGuard::default()).unwrap();
        assert!(checked.checks.all(), "{:?}", checked.witnesses);
    }

    #[test]
    fn preconditions_are_named() {
        let code = gab(2, 4, 4, 2);
        let e = build_adversary(&code, Strategy::Trace, 3, &EnumGuard::default()).unwrap_err();
        assert!(e.to_string().contains("divide"), "{e}");
        let e = build_adversary(&code, Strategy::Trinomial, 1, &EnumGuard::default()).unwrap_err();
        assert!(e.to_string().contains("(n-tau)"), "{e}");
        let e = build_adversary(&code, Strategy::Trace, 1, &EnumGuard::default()).unwrap_err();
        assert!(e.to_string().contains("unique decoding"), "{e}");
    }

    #[test]
    fn auto_tau_choices() {
        assert_eq!(auto_tau(&gab(2, 4, 4, 2), Strategy::Trace).unwrap(), 2);
        assert_eq!(auto_tau(&gab(2, 7, 7, 2), Strategy::Trinomial).unwrap(), 4);
        assert_eq!(auto_tau(&gab(2, 6, 6, 3), Strategy::TraceGen).unwrap(), 2);
    }
}

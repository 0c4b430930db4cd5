//! The acceptance suite as plain functions, shared by `rankmetric selftest`
//! and the `acceptance` test target.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversary::{bound_wz_radius, build_adversary, feasible_tau, gaussian_binomial, verify_adversary, Strategy};
use crate::codes::{min_distance_exhaustive, rank_weight, Family, RankCode, Word};
use crate::constructions::{pigeonhole_family, trinomial_family};
use crate::error::Result;
use crate::galois::{Fe, FieldTower, NormTarget};
use crate::linearized::{reduce_mod_theta, SigmaPoly, Subspace};
use crate::oracle::{enumerate_subspaces, root_count, EnumGuard};

/// Cases per randomized property.
pub const PROPERTY_CASES: usize = 1000;
const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u32, name: &'static str, limit: Option<Duration>, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; exceeded {}s", limit.as_secs()));
        }
    }
    CriterionResult { id, name, passed, detail, elapsed }
}

fn tower(p: u32, n: usize, m: usize) -> Result<Arc<FieldTower>> {
    Ok(Arc::new(FieldTower::new(p, 1, n, m)?))
}

/// The smallest `η` (by encoding) whose `F_q`-norm satisfies `pred`.
pub fn smallest_eta(t: &FieldTower, pred: impl Fn(Fe) -> bool) -> Option<Fe> {
    t.top().nonzero_elements().find(|&e| pred(t.norm(e, NormTarget::Fq)))
}

/// `D_{4,2}(η)` over `F_{3^4}` with the smallest admissible `η`.
pub fn d_code_4_2() -> Result<RankCode> {
    let t = tower(3, 4, 4)?;
    let minus_one = t.minus_one();
    // the only non-square of F_3 is −1
    let eta = smallest_eta(&t, |nm| nm == minus_one).expect("the norm is onto F_3^*");
    RankCode::new(t, Family::TrombettiZhou { eta }, 2, 1, None)
}

/// `H_{6,3}(η,1)` over `F_{3^6}` with the smallest admissible `η`.
pub fn h_code_6_3() -> Result<RankCode> {
    let t = tower(3, 6, 6)?;
    // (−1)^(mk) = 1
    let eta = smallest_eta(&t, |nm| nm != Fe::ONE).expect("norm takes the value −1");
    RankCode::new(t, Family::Twisted { eta, h: 1 }, 3, 1, None)
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "MRD minimum distance", Some(Duration::from_secs(60)), || {
        let guard = EnumGuard::default();
        let g42 = RankCode::new(tower(2, 4, 4)?, Family::Gabidulin, 2, 1, None)?;
        let g63 = RankCode::new(tower(2, 6, 6)?, Family::Gabidulin, 3, 1, None)?;
        let d42 = d_code_4_2()?;
        let got = [
            min_distance_exhaustive(&g42, &guard)?,
            min_distance_exhaustive(&g63, &guard)?,
            min_distance_exhaustive(&d42, &guard)?,
        ];
        let want = [g42.d(), g63.d(), d42.d()];
        Ok((got == [3, 4, 3] && got == want, format!("G_(4,2)={} G_(6,3)={} D_(4,2)={}", got[0], got[1], got[2])))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "trace list at q=2, n=m=4, k=2, tau=2", Some(Duration::from_secs(5)), || {
        let guard = EnumGuard::default();
        let code = RankCode::new(tower(2, 4, 4)?, Family::Gabidulin, 2, 1, None)?;
        let rep = build_adversary(&code, Strategy::Trace, 2, &guard)?;
        let checked = verify_adversary(&code, &rep, true, &guard)?;
        let count = checked.oracle_count.clone().unwrap_or_default();
        let ok = rep.list.len() == 5 && checked.valid() && count >= BigUint::from(5u32);
        Ok((ok, format!("list={} checks={} oracle_count={count}", rep.list.len(), checked.checks.all())))
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "trinomial list on G_(7,2), tau=4", Some(Duration::from_secs(30)), || {
        let guard = EnumGuard::default();
        let code = RankCode::new(tower(2, 7, 7)?, Family::Gabidulin, 2, 1, None)?;
        let tau = feasible_tau(7).unwrap_or(0);
        let rep = build_adversary(&code, Strategy::Trinomial, tau, &guard)?;
        let checked = verify_adversary(&code, &rep, true, &guard)?;
        let count = checked.oracle_count.clone().unwrap_or_default();
        let ok = tau == 4 && rep.list.len() == 127 && checked.valid() && count >= BigUint::from(127u32);
        Ok((ok, format!("tau={tau} list={} checks={} oracle_count={count}", rep.list.len(), checked.checks.all())))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "trinomial root counts", None, || {
        let guard = EnumGuard::default();
        let mut parts = Vec::new();
        let mut ok = true;
        for (n, t, roots, size) in [(7usize, 3usize, 8u64, 127usize), (3, 2, 4, 7)] {
            let tw = FieldTower::new(2, 1, n, n)?;
            let fam = trinomial_family(&tw, t)?;
            let sub = Subspace::subfield(&tw)?;
            let mut good = 0;
            for f in &fam.members {
                if root_count(&tw, f, &sub, &guard)? == roots {
                    good += 1;
                }
            }
            ok &= fam.len() == size && good == size;
            parts.push(format!("n={n}: {good}/{} with {roots} roots", fam.len()));
        }
        Ok((ok, parts.join(", ")))
    })
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "trace-gen list on H_(6,3) over F_(3^6), tau=2", Some(Duration::from_secs(30)), || {
        let guard = EnumGuard::default();
        let code = h_code_6_3()?;
        let rep = build_adversary(&code, Strategy::TraceGen, 2, &guard)?;
        // algebraic re-check: contains() on every word, ranks, distinctness
        let checked = verify_adversary(&code, &rep, false, &guard)?;
        let ok = rep.list.len() == 28 && rep.radius == 3 && rep.valid() && checked.valid();
        Ok((ok, format!("list={} radius={} center_rank={} checks={}", rep.list.len(), rep.radius, rep.center_rank, checked.checks.all())))
    })
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "pigeonhole class at n=4, r=2, g=1", None, || {
        let guard = EnumGuard::default();
        let t = FieldTower::new(2, 1, 4, 4)?;
        let whole = Subspace::whole(&t);
        let ph = pigeonhole_family(&t, &whole, 2, 1, 1, &guard)?;
        let union: usize = ph.class_sizes.iter().sum();
        let gb = gaussian_binomial(4, 2, 2);
        let enumerated = enumerate_subspaces(&t, &whole, 2, &guard)?.count();
        let ok = ph.largest.len() >= 3 && union == 35 && gb == BigUint::from(35u32) && enumerated == 35;
        Ok((ok, format!("largest={} union={union} gaussian={gb} enumerated={enumerated}", ph.largest.len())))
    })
}

fn random_poly(rng: &mut ChaCha8Rng, t: &FieldTower, max_len: usize, s: usize) -> SigmaPoly {
    let len = rng.gen_range(1..=max_len);
    let size = t.top().size() as u32;
    SigmaPoly::new((0..len).map(|_| Fe(rng.gen_range(0..size))).collect(), s)
}

fn random_independent(rng: &mut ChaCha8Rng, t: &FieldTower, dim: usize) -> Vec<Fe> {
    let size = t.top().size() as u32;
    loop {
        let v: Vec<Fe> = (0..dim).map(|_| Fe(rng.gen_range(1..size))).collect();
        if Subspace::new(t, v.clone()).is_ok() {
            return v;
        }
    }
}

/// Each property returns its number of failing cases.
pub fn prop_right_divide(rng: &mut ChaCha8Rng) -> Result<usize> {
    let t = FieldTower::new(2, 1, 4, 4)?;
    let mut bad = 0;
    for i in 0..PROPERTY_CASES {
        let s = if i % 2 == 0 { 1 } else { 3 };
        let f = random_poly(rng, &t, 4, s);
        let g = loop {
            let g = random_poly(rng, &t, 4, s);
            if !g.is_zero() {
                break g;
            }
        };
        let (q, r) = f.right_divide(&t, &g)?;
        let back = q.compose(&t, &g)?.add(&t, &r)?;
        let deg_ok = r.degree().is_none_or(|dr| dr < g.degree().unwrap());
        let pointwise = t.top().elements().all(|x| back.eval(&t, x) == f.eval(&t, x));
        if back.fold(&t) != f.fold(&t) || !deg_ok || !pointwise {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn prop_reduce_mod_theta(rng: &mut ChaCha8Rng) -> Result<usize> {
    let t = FieldTower::new(2, 1, 6, 6)?;
    let mut bad = 0;
    for _ in 0..PROPERTY_CASES {
        let dim = rng.gen_range(1..=5);
        let u = Subspace::new(&t, random_independent(rng, &t, dim))?;
        let f = random_poly(rng, &t, 6, 1);
        let r = reduce_mod_theta(&t, &f, &u)?;
        let agrees = u.elements(&t).into_iter().all(|x| r.eval(&t, x) == f.eval(&t, x));
        let idem = reduce_mod_theta(&t, &r, &u)? == r;
        let small = r.degree().is_none_or(|d| d < dim);
        if !(agrees && idem && small) {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn prop_rank_vs_kernel(rng: &mut ChaCha8Rng) -> Result<usize> {
    let t = Arc::new(FieldTower::new(2, 1, 6, 6)?);
    let mut bad = 0;
    for _ in 0..PROPERTY_CASES {
        let n = rng.gen_range(1..=6);
        let alpha = random_independent(rng, &t, n);
        let u = Subspace::new(&t, alpha.clone())?;
        let p = random_poly(rng, &t, 6, 1);
        let word = Word(alpha.iter().map(|&a| p.eval(&t, a)).collect());
        if rank_weight(&t, &word) != n - p.kernel_basis(&t, &u).dim() {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Reduces every `G_{4,2}` polynomial modulo `θ_S` for several random bases; returns
/// the number of bases for which the image count differs from `q^(mk) = 256`.
pub fn prop_pi_s_injective(rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let t = FieldTower::new(2, 1, 4, 4)?;
    let mut bad = 0;
    let mut cases = 0;
    let rounds = PROPERTY_CASES.div_ceil(256);
    for _ in 0..rounds {
        let u = Subspace::new(&t, random_independent(rng, &t, 4))?;
        let mut images = HashSet::new();
        for a0 in t.top().elements() {
            for a1 in t.top().elements() {
                images.insert(reduce_mod_theta(&t, &SigmaPoly::new(vec![a0, a1], 1), &u)?);
                cases += 1;
            }
        }
        if images.len() != 256 {
            bad += 1;
        }
    }
    Ok((bad, cases))
}

pub fn prop_norm_multiplicative(rng: &mut ChaCha8Rng) -> Result<usize> {
    let towers = [FieldTower::new(3, 1, 4, 4)?, FieldTower::new(2, 2, 3, 3)?];
    let mut bad = 0;
    for i in 0..PROPERTY_CASES {
        let t = &towers[i % 2];
        let size = t.top().size() as u32;
        let (x, y) = (Fe(rng.gen_range(0..size)), Fe(rng.gen_range(0..size)));
        for target in [NormTarget::Fq, NormTarget::Fp] {
            let lhs = t.norm(t.top().mul(x, y), target);
            let rhs = t.top().mul(t.norm(x, target), t.norm(y, target));
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

pub fn prop_frobenius_additive(rng: &mut ChaCha8Rng) -> Result<usize> {
    let t = FieldTower::new(3, 1, 5, 5)?;
    let size = t.top().size() as u32;
    let mut bad = 0;
    for _ in 0..PROPERTY_CASES {
        let (x, y) = (Fe(rng.gen_range(0..size)), Fe(rng.gen_range(0..size)));
        let s = rng.gen_range(0..10);
        let top = t.top();
        if t.frobenius(top.add(x, y), s) != top.add(t.frobenius(x, s), t.frobenius(y, s))
            || t.frobenius(top.mul(x, y), s) != top.mul(t.frobenius(x, s), t.frobenius(y, s))
        {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "randomized property suites", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut parts = Vec::new();
        let mut failures = 0;
        let mut record = |name: &str, bad: usize, cases: usize| {
            failures += bad;
            parts.push(format!("{name} {bad}/{cases}"));
        };
        record("right_divide", prop_right_divide(&mut rng)?, PROPERTY_CASES);
        record("reduce_mod_theta", prop_reduce_mod_theta(&mut rng)?, PROPERTY_CASES);
        record("rank_vs_kernel", prop_rank_vs_kernel(&mut rng)?, PROPERTY_CASES);
        let (bad, cases) = prop_pi_s_injective(&mut rng)?;
        record("pi_s_injective", bad, cases);
        record("norm_multiplicative", prop_norm_multiplicative(&mut rng)?, PROPERTY_CASES);
        record("frobenius_additive", prop_frobenius_additive(&mut rng)?, PROPERTY_CASES);
        Ok((failures == 0, format!("failures: {}", parts.join(", "))))
    })
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "radius threshold at (7,7,5,0)", None, || {
        let b = bound_wz_radius(7, 7, 5, 0.0, false)?;
        let exact = 7.0 - 14f64.sqrt();
        let ok = b.value > 3.25 && b.value < 3.27 && (b.value - exact).abs() < 1e-6 && b.first_integer == 4;
        Ok((ok, format!("value={:.6} ceiling={}", b.value, b.first_integer)))
    })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}

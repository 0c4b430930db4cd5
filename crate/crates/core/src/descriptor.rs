//! Text and JSON forms: field specs, code descriptors, polynomials, reports.
//!
//! Field elements and big integers are written as decimal strings of their
//! integer encoding; small structural integers (k, s, h, τ, indices) are plain
//! JSON numbers.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::adversary::{AdversaryReport, Checks, PigeonholeInfo, Strategy, Witness};
use crate::codes::{Family, RankCode, Word};
use crate::constructions::PolyFamily;
use crate::error::{Error, Result};
use crate::galois::{fp_poly, Fe, FieldTower, Moduli};
use crate::linearized::SigmaPoly;

/// `p^ell:n:m[:modulus_hex]`, the hex being the integer encoding of the `F_{q^m}` modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub ell: usize,
    pub n: usize,
    pub m: usize,
    pub modulus: Option<u64>,
}

impl FieldSpec {
    pub fn new(p: u32, ell: usize, n: usize, m: usize) -> Self {
        FieldSpec { p, ell, n, m, modulus: None }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.ell as u32)
    }

    pub fn build(&self) -> Result<FieldTower> {
        let moduli = Moduli { top: self.modulus.map(|v| fp_poly::from_int(self.p, v)), ..Moduli::default() };
        FieldTower::with_moduli(self.p, self.ell, self.n, self.m, moduli)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{}:{}", self.p, self.ell, self.n, self.m)?;
        if let Some(v) = self.modulus {
            write!(f, ":{v:x}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("field spec {s:?}: {what}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad("expected p^ell:n:m[:modulus_hex]"));
        }
        let (p, ell) = match parts[0].split_once('^') {
            Some((p, e)) => (p, e),
            None => (parts[0], "1"),
        };
        let num = |x: &str, name: &str| x.trim().parse::<usize>().map_err(|_| bad(&format!("bad {name} {x:?}")));
        let p = num(p, "p")? as u32;
        let ell = num(ell, "ell")?;
        let n = num(parts[1], "n")?;
        let m = num(parts[2], "m")?;
        let modulus = match parts.get(3) {
            Some(h) => Some(u64::from_str_radix(h.trim(), 16).map_err(|_| bad(&format!("bad modulus hex {h:?}")))?),
            None => None,
        };
        Ok(FieldSpec { p, ell, n, m, modulus })
    }
}

pub fn parse_fe(s: &str) -> Result<Fe> {
    s.trim().parse::<u32>().map(Fe).map_err(|_| Error::Parse(format!("bad field element {s:?}")))
}

fn fe_str(x: Fe) -> String {
    x.0.to_string()
}

/// `{"s":1,"terms":[[0,"3"],[2,"1"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub s: usize,
    pub terms: Vec<(usize, String)>,
}

impl PolyJson {
    pub fn from_poly(f: &SigmaPoly) -> Self {
        PolyJson { s: f.twist(), terms: f.terms().into_iter().map(|(i, c)| (i, fe_str(c))).collect() }
    }

    pub fn to_poly(&self, tower: &FieldTower) -> Result<SigmaPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, c) in &self.terms {
            let c = parse_fe(c)?;
            if !tower.top().contains(c) {
                return Err(Error::Parse(format!("coefficient {c} is not in F_q^m")));
            }
            terms.push((*i, c));
        }
        Ok(SigmaPoly::from_terms(tower, &terms, self.s))
    }
}

/// Evaluation points: `"default"` or a list of element encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Named(String),
    Points(Vec<String>),
}

impl Default for AlphaSpec {
    fn default() -> Self {
        AlphaSpec::Named("default".into())
    }
}

fn default_s() -> usize {
    1
}

/// `{"field":"2^1:4:4:13","family":"G","k":2,"s":1,"eta":"3","h":1,"alpha":"default"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: String,
    pub family: String,
    pub k: usize,
    #[serde(default = "default_s")]
    pub s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default)]
    pub alpha: AlphaSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extras: Option<Vec<PolyJson>>,
}

impl CodeDescriptor {
    pub fn gabidulin(field: &FieldSpec, k: usize, s: usize) -> Self {
        CodeDescriptor {
            field: field.to_string(),
            family: "G".into(),
            k,
            s,
            eta: None,
            h: None,
            alpha: AlphaSpec::default(),
            extras: None,
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    pub fn build(&self) -> Result<RankCode> {
        let tower = Arc::new(self.field_spec()?.build()?);
        let eta = || -> Result<Fe> {
            parse_fe(self.eta.as_deref().ok_or_else(|| Error::Parse(format!("family {} needs eta", self.family)))?)
        };
        let h = self.h.unwrap_or(1);
        let family = match self.family.as_str() {
            "G" | "G_sigma" | "G_σ" => Family::Gabidulin,
            "H" => Family::Twisted { eta: eta()?, h },
            "Hbar" => Family::TwistedAdditive { eta: eta()?, h },
            "D" => Family::TrombettiZhou { eta: eta()? },
            "custom-g2" => {
                let extras = self
                    .extras
                    .iter()
                    .flatten()
                    .map(|p| p.to_poly(&tower))
                    .collect::<Result<Vec<_>>>()?;
                Family::ContainingG2 { extras }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        let alpha = match &self.alpha {
            AlphaSpec::Named(s) if s == "default" => None,
            AlphaSpec::Named(s) => return Err(Error::Parse(format!("unknown alpha {s:?}"))),
            AlphaSpec::Points(v) => Some(v.iter().map(|x| parse_fe(x)).collect::<Result<Vec<_>>>()?),
        };
        RankCode::new(tower, family, self.k, self.s, alpha)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("code descriptor: {e}")))
    }
}

/// A fixed radius or `"auto"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauSpec {
    Auto,
    Fixed(usize),
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauSpec::Auto => f.write_str("auto"),
            TauSpec::Fixed(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for TauSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" => Ok(TauSpec::Auto),
            t => t.parse().map(TauSpec::Fixed).map_err(|_| Error::Parse(format!("bad tau {s:?}"))),
        }
    }
}

impl Serialize for TauSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TauSpec::Auto => ser.serialize_str("auto"),
            TauSpec::Fixed(t) => ser.serialize_u64(*t as u64),
        }
    }
}

impl<'de> Deserialize<'de> for TauSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(de)? {
            Value::Number(n) => n
                .as_u64()
                .map(|t| TauSpec::Fixed(t as usize))
                .ok_or_else(|| serde::de::Error::custom("tau must be a non-negative integer")),
            Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom("tau must be a number or \"auto\"")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything needed to replay one attack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub code: CodeDescriptor,
    pub strategy: Strategy,
    pub tau: TauSpec,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

impl ExperimentConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub center_outside: bool,
    pub all_members_in_code: bool,
    pub all_within_radius: bool,
    pub all_distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeJson {
    pub r: usize,
    pub g: usize,
    pub subspaces: String,
    pub classes: String,
    pub class_bound: String,
}

/// The on-disk form of an [`AdversaryReport`] plus the config that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub config: ExperimentConfig,
    pub code_tag: String,
    pub strategy: Strategy,
    pub tau: usize,
    pub radius: usize,
    pub center: Vec<String>,
    pub center_rank: usize,
    pub list: Vec<Vec<String>>,
    pub claimed_bound: String,
    pub achieved: String,
    pub checks: ChecksJson,
    pub witnesses: Vec<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_count: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pigeonhole: Option<PigeonholeJson>,
    pub valid: bool,
}

fn word_json(w: &Word) -> Vec<String> {
    w.entries().iter().map(|&x| fe_str(x)).collect()
}

fn parse_word(v: &[String]) -> Result<Word> {
    v.iter().map(|x| parse_fe(x)).collect::<Result<Vec<_>>>().map(Word)
}

fn parse_big(s: &str) -> Result<BigUint> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

impl ReportJson {
    pub fn new(config: &ExperimentConfig, code: &RankCode, r: &AdversaryReport) -> Self {
        ReportJson {
            config: config.clone(),
            code_tag: code.tag().to_string(),
            strategy: r.strategy,
            tau: r.tau,
            radius: r.radius,
            center: word_json(&r.center),
            center_rank: r.center_rank,
            list: r.list.iter().map(word_json).collect(),
            claimed_bound: r.claimed_bound.to_string(),
            achieved: r.list.len().to_string(),
            checks: ChecksJson {
                center_outside: r.checks.center_outside,
                all_members_in_code: r.checks.all_members_in_code,
                all_within_radius: r.checks.all_within_radius,
                all_distinct: r.checks.all_distinct,
            },
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson { check: w.check.clone(), index: w.index, detail: w.detail.clone() })
                .collect(),
            oracle_count: r.oracle_count.as_ref().map(|c| c.to_string()),
            pigeonhole: r.pigeonhole.as_ref().map(|p| PigeonholeJson {
                r: p.r,
                g: p.g,
                subspaces: p.subspaces.to_string(),
                classes: p.classes.to_string(),
                class_bound: p.class_bound.to_string(),
            }),
            valid: r.valid(),
        }
    }

    pub fn to_report(&self) -> Result<AdversaryReport> {
        let pigeonhole = match &self.pigeonhole {
            Some(p) => Some(PigeonholeInfo {
                r: p.r,
                g: p.g,
                subspaces: p.subspaces.parse().map_err(|_| Error::Parse("bad subspace count".into()))?,
                classes: p.classes.parse().map_err(|_| Error::Parse("bad class count".into()))?,
                class_bound: parse_big(&p.class_bound)?,
            }),
            None => None,
        };
        Ok(AdversaryReport {
            strategy: self.strategy,
            tau: self.tau,
            radius: self.radius,
            center: parse_word(&self.center)?,
            list: self.list.iter().map(|w| parse_word(w)).collect::<Result<_>>()?,
            claimed_bound: parse_big(&self.claimed_bound)?,
            checks: Checks {
                center_outside: self.checks.center_outside,
                all_members_in_code: self.checks.all_members_in_code,
                all_within_radius: self.checks.all_within_radius,
                all_distinct: self.checks.all_distinct,
            },
            witnesses: self
                .witnesses
                .iter()
                .map(|w| Witness { check: w.check.clone(), index: w.index, detail: w.detail.clone() })
                .collect(),
            center_rank: self.center_rank,
            oracle_count: self.oracle_count.as_deref().map(parse_big).transpose()?,
            pigeonhole,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}

/// JSON listing of a polynomial family, as emitted by `construct`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub family: String,
    pub field: String,
    pub shifted: bool,
    pub size: String,
    pub kernel_dim: usize,
    pub shared_top: Vec<(usize, String)>,
    pub members: Vec<PolyJson>,
}

impl FamilyJson {
    pub fn new(field: &FieldSpec, fam: &PolyFamily) -> Self {
        FamilyJson {
            family: fam.kind.name().to_string(),
            field: field.to_string(),
            shifted: fam.shifted,
            size: fam.len().to_string(),
            kernel_dim: fam.kernel_dim,
            shared_top: fam.shared_top.iter().map(|&(i, c)| (i, fe_str(c))).collect(),
            members: fam.members.iter().map(PolyJson::from_poly).collect(),
        }
    }
}

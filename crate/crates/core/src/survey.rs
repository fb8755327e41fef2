//! Exhaustive classification of circulant connection sets.
//!
//! Connection sets of `Z_n` are indexed by a bitmask over the
//! representatives `1..=n/2` (bit `i` for residue `i + 1`), and enumerated
//! by increasing mask. Output is JSON Lines in that order for each `n`,
//! followed by one `{"summary": ...}` line.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use crate::lab::{classify_type, conditions, ConditionSummary, Flag, TypeVerdict};
use crate::search::Budget;
use crate::stability::{stability_status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dedup {
    #[default]
    None,
    /// one spec per orbit of `S -> rS` over units `r`
    Mult,
}

impl FromStr for Dedup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Dedup> {
        match s {
            "none" => Ok(Dedup::None),
            "mult" | "multiplier" | "multiplier-orbit" => Ok(Dedup::Mult),
            _ => Err(Error::Parse(format!("unknown dedup mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyOptions {
    pub max_order: usize,
    pub budget: Budget,
    pub jobs: usize,
    pub dedup: Dedup,
    /// Records already present here are reused; the finished survey
    /// replaces the file.
    pub out: Option<PathBuf>,
}

impl SurveyOptions {
    pub fn new(max_order: usize) -> SurveyOptions {
        SurveyOptions { max_order, budget: Budget::DEFAULT, jobs: 1, dedup: Dedup::None, out: None }
    }
}

fn spec_from_mask(n: usize, mask: u64) -> CirculantSpec {
    CirculantSpec::from_predicate(n, |x| mask >> (x.min(n - x) - 1) & 1 == 1)
}

fn mask_of(spec: &CirculantSpec) -> u64 {
    let n = spec.n();
    spec.s().iter().filter(|&&x| x <= n / 2).fold(0, |m, &x| m | 1 << (x - 1))
}

/// Every nonempty inverse-closed connection set of `Z_n`, by increasing
/// mask; with [`Dedup::Mult`] only the least mask of each multiplier orbit.
pub fn enumerate_connection_sets(n: usize, dedup: Dedup) -> Result<Vec<CirculantSpec>> {
    if n < 2 {
        return Err(Error::BadParameters(format!("modulus must be at least 2, got {n}")));
    }
    let reps = n / 2;
    if reps > 40 {
        return Err(Error::BadParameters(format!("modulus {n} is too large to enumerate")));
    }
    let units: Vec<usize> = CirculantSpec::units(n).filter(|&r| r != 1).collect();
    let scale = |mask: u64, r: usize| -> u64 {
        let mut out = 0;
        for i in (0..reps).filter(|i| mask >> i & 1 == 1) {
            let y = (i + 1) * r % n;
            out |= 1 << (y.min(n - y) - 1);
        }
        out
    };
    Ok((1..1u64 << reps)
        .filter(|&mask| dedup == Dedup::None || units.iter().all(|&r| scale(mask, r) >= mask))
        .map(|mask| spec_from_mask(n, mask))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub n: usize,
    pub s: Vec<usize>,
    /// `None` when the automorphism searches ran out of budget.
    pub verdict: Option<Verdict>,
    #[serde(rename = "type")]
    pub kind: TypeVerdict,
    pub conditions: ConditionSummary,
    #[serde(with = "crate::json::opt_biguint")]
    pub aut_order: Option<BigUint>,
    #[serde(with = "crate::json::opt_biguint")]
    pub double_cover_aut_order: Option<BigUint>,
    /// Witness of every condition that holds, keyed by condition.
    pub witnesses: BTreeMap<String, serde_json::Value>,
}

impl SurveyRecord {
    fn key(&self) -> (usize, Vec<usize>) {
        (self.n, self.s.clone())
    }

    /// Nontrivially unstable with none of the four subgroup, shift,
    /// lift and involution conditions holding.
    pub fn unexplained(&self) -> bool {
        let c = &self.conditions;
        self.verdict == Some(Verdict::NontriviallyUnstable)
            && [c.t3_2, c.p3_7, c.p3_12, c.ncon].iter().all(|&f| f == Flag::No)
    }

    /// Some condition holds although the graph is stable.
    pub fn unsound(&self) -> bool {
        self.verdict == Some(Verdict::Stable) && self.conditions.any_yes()
    }

    fn check(&self) -> Result<()> {
        if self.verdict == Some(Verdict::NontriviallyUnstable) {
            let (Some(a), Some(d)) = (&self.aut_order, &self.double_cover_aut_order) else {
                return Err(Error::Unsound(format!("n={} s={:?}: missing group orders", self.n, self.s)));
            };
            if *d <= a * 2u32 {
                return Err(Error::Unsound(format!("n={} s={:?}: {d} <= 2 * {a}", self.n, self.s)));
            }
        }
        Ok(())
    }
}

pub fn survey_record(spec: &CirculantSpec, budget: Budget) -> SurveyRecord {
    let stab = stability_status(&spec.graph(), budget).ok();
    let report = conditions(spec, budget);
    let kind = match &stab {
        Some(_) => classify_type(spec, budget),
        None => TypeVerdict::Unknown(budget.0),
    };
    let mut witnesses = BTreeMap::new();
    let value = serde_json::to_value(&report).expect("report serializes");
    for (name, v) in value.as_object().expect("object") {
        if v.get("status").and_then(|s| s.as_str()) == Some("yes") {
            witnesses.insert(name.clone(), v["witness"].clone());
        } else if name == "oldtonew" && !v.is_null() {
            witnesses.insert(name.clone(), v.clone());
        }
    }
    if let TypeVerdict::TypeI(pair) = &kind {
        witnesses.insert("type_i".to_string(), serde_json::to_value(pair).expect("pair serializes"));
    }
    SurveyRecord {
        n: spec.n(),
        s: spec.s().to_vec(),
        verdict: stab.as_ref().map(|v| v.verdict),
        kind,
        conditions: report.summary(),
        aut_order: stab.as_ref().map(|v| v.aut_order.clone()),
        double_cover_aut_order: stab.map(|v| v.double_cover_aut_order),
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SurveySummary {
    pub records: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub types: BTreeMap<String, usize>,
    /// Count of records on which each condition holds.
    pub conditions: BTreeMap<String, usize>,
    pub inconclusive: usize,
    /// Nontrivially unstable specs satisfying none of the four conditions.
    pub unexplained: Vec<String>,
    /// Stable specs on which some condition holds.
    pub unsound: Vec<String>,
}

impl SurveySummary {
    fn add(&mut self, r: &SurveyRecord) {
        self.records += 1;
        let verdict = match r.verdict {
            Some(Verdict::Stable) => "stable",
            Some(Verdict::TriviallyUnstable(_)) => "trivially_unstable",
            Some(Verdict::NontriviallyUnstable) => "nontrivially_unstable",
            None => "inconclusive",
        };
        *self.verdicts.entry(verdict.to_string()).or_default() += 1;
        let kind = match r.kind {
            TypeVerdict::Stable => "stable",
            TypeVerdict::TriviallyUnstable => "trivially_unstable",
            TypeVerdict::TypeI(_) => "type_i",
            TypeVerdict::TypeII => "type_ii",
            TypeVerdict::Unknown(_) => "unknown",
        };
        *self.types.entry(kind.to_string()).or_default() += 1;
        let flags = r.conditions.flags();
        for (name, flag) in ConditionSummary::NAMES.iter().zip(flags) {
            let count = self.conditions.entry(name.to_string()).or_default();
            *count += (flag == Flag::Yes) as usize;
        }
        let inconclusive = r.verdict.is_none()
            || matches!(r.kind, TypeVerdict::Unknown(_))
            || flags.contains(&Flag::Inconclusive);
        self.inconclusive += inconclusive as usize;
        let label = || CirculantSpec::new(r.n, &r.s).map_or_else(|_| format!("{}:{:?}", r.n, r.s), |s| s.to_string());
        if r.unexplained() {
            self.unexplained.push(label());
        }
        if r.unsound() {
            self.unsound.push(label());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyOutput {
    pub records: Vec<SurveyRecord>,
    pub summary: SurveySummary,
}

impl SurveyOutput {
    /// The JSON Lines text, summary last.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&serde_json::json!({ "summary": self.summary })).expect("summary"));
        out.push('\n');
        out
    }
}

/// Records already written to `path`; a truncated last line is dropped.
fn load_existing(path: &PathBuf) -> Result<HashMap<(usize, Vec<usize>), SurveyRecord>> {
    let mut found = HashMap::new();
    let Ok(file) = fs::File::open(path) else { return Ok(found) };
    for line in BufReader::new(file).lines() {
        let line = line?;
        if let Ok(r) = serde_json::from_str::<SurveyRecord>(&line) {
            found.insert(r.key(), r);
        }
    }
    Ok(found)
}

pub fn survey(opts: &SurveyOptions) -> Result<SurveyOutput> {
    if opts.max_order < 2 {
        return Err(Error::BadParameters(format!("max_order must be at least 2, got {}", opts.max_order)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::BadParameters(e.to_string()))?;
    let mut existing = match &opts.out {
        Some(path) => load_existing(path)?,
        None => HashMap::new(),
    };
    // progress goes to the output file order by order, so an interrupted
    // run leaves complete records behind
    let mut progress = match &opts.out {
        Some(path) => {
            let mut f = fs::File::create(path)?;
            let mut kept: Vec<&SurveyRecord> = existing.values().collect();
            kept.sort_by_key(|r| (r.n, mask_of(&CirculantSpec::new(r.n, &r.s).expect("stored spec"))));
            for r in kept {
                writeln!(f, "{}", serde_json::to_string(r).expect("record serializes"))?;
            }
            Some(f)
        }
        None => None,
    };
    let mut records = Vec::new();
    for n in 2..=opts.max_order {
        let specs = enumerate_connection_sets(n, opts.dedup)?;
        let todo: Vec<&CirculantSpec> =
            specs.iter().filter(|s| !existing.contains_key(&(n, s.s().to_vec()))).collect();
        let fresh: Vec<SurveyRecord> = pool.install(|| todo.par_iter().map(|s| survey_record(s, opts.budget)).collect());
        for r in &fresh {
            r.check()?;
            if let Some(f) = progress.as_mut() {
                writeln!(f, "{}", serde_json::to_string(r).expect("record serializes"))?;
            }
        }
        let mut fresh = fresh.into_iter();
        for s in &specs {
            let r = match existing.remove(&(n, s.s().to_vec())) {
                Some(r) => r,
                None => fresh.next().expect("one record per new spec"),
            };
            records.push(r);
        }
    }
    let mut summary = SurveySummary::default();
    for r in &records {
        summary.add(r);
    }
    let output = SurveyOutput { records, summary };
    if let Some(path) = &opts.out {
        drop(progress);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, output.to_jsonl())?;
        fs::rename(&tmp, path)?;
    }
    Ok(output)
}

//! The four classical sufficient conditions and the combined report.

use serde::{Deserialize, Serialize};

use super::hmm::{
    hmm_p312, hmm_p37, hmm_t32, hmmtype_combine, ncon_check, oldtonew_check, HmmTypeWitness, NconWitness,
    P312Witness, T32Witness,
};
use super::Subgroup;
use crate::circulant::{gcd, CirculantSpec};
use crate::perm::Permutation;
use crate::search::Budget;
use crate::stability::SearchOutcome;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C3Witness {
    pub h: Subgroup,
    /// `{s in S : s + H not inside S}`
    pub r: Vec<usize>,
    /// `gcd(R, n)`
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilsonReport {
    /// nonzero even `h` with `h + S_e = S_e`
    pub c1: SearchOutcome<usize>,
    /// odd `h`, `4 | n`, `2h + S_o = S_o`, and `s + h` in `S` for each
    /// `s` in `S` congruent to 0 or `-h` mod 4
    pub c2: SearchOutcome<usize>,
    pub c3: SearchOutcome<C3Witness>,
    /// unit `r` with `n/2 + rS = S`
    pub c4: SearchOutcome<usize>,
}

fn first<W>(w: Option<W>) -> SearchOutcome<W> {
    w.map_or(SearchOutcome::No, SearchOutcome::Yes)
}

fn c1(n: usize, s: &[bool]) -> Option<usize> {
    let se: Vec<bool> = (0..n).map(|x| s[x] && x % 2 == 0).collect();
    (2..n).step_by(2).find(|&h| (0..n).all(|x| se[x] == se[(x + n - h) % n]))
}

fn c2(n: usize, s: &[bool]) -> Option<usize> {
    if n % 4 != 0 {
        return None;
    }
    let so: Vec<bool> = (0..n).map(|x| s[x] && x % 2 == 1).collect();
    (1..n).step_by(2).find(|&h| {
        let a = (0..n).all(|x| so[x] == so[(x + n - 2 * h % n) % n]);
        let b = (0..n).filter(|&x| s[x] && (x % 4 == 0 || (x + h) % 4 == 0)).all(|x| s[(x + h) % n]);
        a && b
    })
}

fn c3(n: usize, s: &[bool]) -> Option<C3Witness> {
    Subgroup::all(n).find_map(|h| {
        let r: Vec<usize> = (0..n).filter(|&x| s[x] && !h.elements().all(|y| s[(x + y) % n])).collect();
        if r.is_empty() {
            return None;
        }
        let d = r.iter().fold(n, |g, &x| gcd(g, x));
        let parity = (n / d) % 2 == 0 && r.iter().all(|&x| (x / d) % 2 == 1);
        let g = h.generator();
        // H inside dZ_n iff d | g
        let placed = g % d != 0 || g % (2 * d) == 0;
        (parity && placed).then_some(C3Witness { h, r, d })
    })
}

fn c4(n: usize, spec: &CirculantSpec) -> Option<usize> {
    let m = n / 2;
    CirculantSpec::units(n).find(|&r| {
        let scaled = spec.scaled(r);
        scaled.s().iter().all(|&x| spec.contains(x + m))
    })
}

pub fn wilson_conditions(spec: &CirculantSpec) -> WilsonReport {
    let n = spec.n();
    if n % 2 != 0 {
        return WilsonReport {
            c1: SearchOutcome::No,
            c2: SearchOutcome::No,
            c3: SearchOutcome::No,
            c4: SearchOutcome::No,
        };
    }
    let s = spec.mask();
    WilsonReport { c1: first(c1(n, &s)), c2: first(c2(n, &s)), c3: first(c3(n, &s)), c4: first(c4(n, spec)) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    #[serde(flatten)]
    pub wilson: WilsonReport,
    pub t3_2: SearchOutcome<T32Witness>,
    pub p3_7: SearchOutcome<Permutation>,
    pub p3_12: SearchOutcome<P312Witness>,
    pub ncon: SearchOutcome<NconWitness>,
    pub hmmtype: SearchOutcome<HmmTypeWitness>,
    /// Some `(h, K)` with `n = 4h`, `|K|` twice odd, passing the
    /// involution-shift construction.
    pub oldtonew: Option<(usize, Subgroup)>,
}

/// Tri-state flags, one per condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Yes,
    No,
    Inconclusive,
}

impl<W> From<&SearchOutcome<W>> for Flag {
    fn from(o: &SearchOutcome<W>) -> Flag {
        match o {
            SearchOutcome::Yes(_) => Flag::Yes,
            SearchOutcome::No => Flag::No,
            SearchOutcome::Inconclusive(_) => Flag::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub c1: Flag,
    pub c2: Flag,
    pub c3: Flag,
    pub c4: Flag,
    pub t3_2: Flag,
    pub p3_7: Flag,
    pub p3_12: Flag,
    pub ncon: Flag,
    pub hmmtype: Flag,
    pub oldtonew: bool,
}

impl ConditionSummary {
    pub const NAMES: [&'static str; 10] =
        ["c1", "c2", "c3", "c4", "t3_2", "p3_7", "p3_12", "ncon", "hmmtype", "oldtonew"];

    pub fn flags(&self) -> [Flag; 10] {
        let old = if self.oldtonew { Flag::Yes } else { Flag::No };
        [self.c1, self.c2, self.c3, self.c4, self.t3_2, self.p3_7, self.p3_12, self.ncon, self.hmmtype, old]
    }

    pub fn any_yes(&self) -> bool {
        self.flags().contains(&Flag::Yes)
    }
}

impl ConditionReport {
    pub fn summary(&self) -> ConditionSummary {
        ConditionSummary {
            c1: (&self.wilson.c1).into(),
            c2: (&self.wilson.c2).into(),
            c3: (&self.wilson.c3).into(),
            c4: (&self.wilson.c4).into(),
            t3_2: (&self.t3_2).into(),
            p3_7: (&self.p3_7).into(),
            p3_12: (&self.p3_12).into(),
            ncon: (&self.ncon).into(),
            hmmtype: (&self.hmmtype).into(),
            oldtonew: self.oldtonew.is_some(),
        }
    }
}

fn oldtonew_any(spec: &CirculantSpec) -> Option<(usize, Subgroup)> {
    let n = spec.n();
    if n % 4 != 0 {
        return None;
    }
    let h = n / 4;
    Subgroup::all(n)
        .filter(|k| k.order() % 4 == 2)
        .find(|k| oldtonew_check(spec, h, k).is_ok_and(|r| r.sigma.is_some()))
        .map(|k| (h, k))
}

pub fn conditions(spec: &CirculantSpec, budget: Budget) -> ConditionReport {
    let p3_7 = hmm_p37(spec, budget);
    let ncon = ncon_check(spec, budget);
    let hmmtype = hmmtype_combine(spec, &p3_7, &ncon);
    ConditionReport {
        wilson: wilson_conditions(spec),
        t3_2: hmm_t32(spec),
        p3_7,
        p3_12: hmm_p312(spec, budget),
        ncon,
        hmmtype,
        oldtonew: oldtonew_any(spec),
    }
}

//! Claim-by-claim verification against the brute-force oracle.
//!
//! Each [`CheckId`] covers one counting claim. A check has up to two parts:
//! an oracle part that compares against exhaustive enumeration for lengths up
//! to `max_n` (bounded by the enumeration cap), and an arithmetic part that
//! checks closed-form identities over a longer range, at least the per-id
//! default. Closed forms are reached through [`Formulas`] so a deliberately
//! broken implementation can be swapped in to exercise the harness itself.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bijection::{
    ascent_insert, ascent_remove, ddp_to_plain, plain_to_ddp, r_pair_decomposition, updown_forward,
    updown_inverse, SlotRef,
};
use crate::closed::{self, binomial, BigCount};
use crate::enumerate::{count_ddp_dp, CountRow, Enumerator};
use crate::error::{Error, Result};
use crate::path::{count_k_ascents, PathWord, Step};

/// Oracle range used when the caller does not ask for one.
pub const DEFAULT_MAX_N: usize = 14;

const ARITH_DEFAULT: u64 = 400;
const IDENTITY_K_DEFAULT: u64 = 200;
const CONV_DEFAULT: u64 = 300;
const ASYM_TOLERANCE: f64 = 0.01;
const ASYM_POINTS: [u64; 2] = [1_000, 10_000];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    L1Count,
    L1Bijection,
    L2Recursion,
    L2Decomposition,
    L3Recursion,
    L3Bijection,
    L4Closed,
    L5Bijection,
    L5Count,
    Thm1,
    Conv,
    EqStar,
    Asym,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::L1Count,
        CheckId::L1Bijection,
        CheckId::L2Recursion,
        CheckId::L2Decomposition,
        CheckId::L3Recursion,
        CheckId::L3Bijection,
        CheckId::L4Closed,
        CheckId::L5Bijection,
        CheckId::L5Count,
        CheckId::Thm1,
        CheckId::Conv,
        CheckId::EqStar,
        CheckId::Asym,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::L1Count => "L1-count",
            CheckId::L1Bijection => "L1-bijection",
            CheckId::L2Recursion => "L2-recursion",
            CheckId::L2Decomposition => "L2-decomposition",
            CheckId::L3Recursion => "L3-recursion",
            CheckId::L3Bijection => "L3-bijection",
            CheckId::L4Closed => "L4-closed",
            CheckId::L5Bijection => "L5-bijection",
            CheckId::L5Count => "L5-count",
            CheckId::Thm1 => "THM1",
            CheckId::Conv => "CONV",
            CheckId::EqStar => "EQSTAR",
            CheckId::Asym => "ASYM",
        }
    }

    /// Ids whose whole range is enumerated; `max_n` must respect the cap.
    pub fn oracle_only(&self) -> bool {
        matches!(
            self,
            CheckId::L1Count
                | CheckId::L1Bijection
                | CheckId::L2Decomposition
                | CheckId::L3Bijection
                | CheckId::L5Bijection
                | CheckId::Thm1
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Concrete witness of a failed comparison, replayable through the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    Value {
        quantity: String,
        at: u64,
        expected: String,
        actual: String,
    },
    Path {
        length: usize,
        word: String,
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub range: String,
    pub pass: bool,
    pub comparisons: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let overall = checks.iter().all(|c| c.pass);
        VerificationReport { checks, overall }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The closed forms under test.
pub trait Formulas: Sync {
    fn central_binomial(&self, n: u64) -> BigCount {
        closed::central_binomial(n)
    }
    fn catalan(&self, k: u64) -> BigCount {
        closed::catalan(k)
    }
    fn r_closed(&self, n: u64) -> BigCount {
        closed::r_closed(n)
    }
    fn u_closed(&self, n: u64) -> BigCount {
        closed::u_closed(n)
    }
    fn a_closed(&self, m: u64) -> BigCount {
        closed::a_closed(m)
    }
    fn r_convolution(&self, n: u64) -> BigCount {
        closed::r_convolution(n)
    }
}

/// The real implementations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Formulas for Exact {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    CentralBinomial,
    Catalan,
    RClosed,
    UClosed,
    AClosed,
    RConvolution,
}

impl Formula {
    pub const ALL: [Formula; 6] = [
        Formula::CentralBinomial,
        Formula::Catalan,
        Formula::RClosed,
        Formula::UClosed,
        Formula::AClosed,
        Formula::RConvolution,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Formula::CentralBinomial => "central-binomial",
            Formula::Catalan => "catalan",
            Formula::RClosed => "r-closed",
            Formula::UClosed => "u-closed",
            Formula::AClosed => "a-closed",
            Formula::RConvolution => "r-convolution",
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown formula {s:?}")))
    }
}

/// Exact formulas with one of them returning its true value plus one.
#[derive(Clone, Copy, Debug)]
pub struct OffByOne(pub Formula);

impl OffByOne {
    fn bump(&self, which: Formula, v: BigCount) -> BigCount {
        if self.0 == which {
            v + 1u32
        } else {
            v
        }
    }
}

impl Formulas for OffByOne {
    fn central_binomial(&self, n: u64) -> BigCount {
        self.bump(Formula::CentralBinomial, closed::central_binomial(n))
    }
    fn catalan(&self, k: u64) -> BigCount {
        self.bump(Formula::Catalan, closed::catalan(k))
    }
    fn r_closed(&self, n: u64) -> BigCount {
        self.bump(Formula::RClosed, closed::r_closed(n))
    }
    fn u_closed(&self, n: u64) -> BigCount {
        self.bump(Formula::UClosed, closed::u_closed(n))
    }
    fn a_closed(&self, m: u64) -> BigCount {
        self.bump(Formula::AClosed, closed::a_closed(m))
    }
    fn r_convolution(&self, n: u64) -> BigCount {
        self.bump(Formula::RConvolution, closed::r_convolution(n))
    }
}

/// Collects comparisons and keeps the first failure.
#[derive(Default)]
struct Tally {
    comparisons: u64,
    failure: Option<Counterexample>,
}

impl Tally {
    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn values(&mut self, quantity: &str, at: u64, expected: &BigCount, actual: &BigCount) {
        self.comparisons += 1;
        if self.failure.is_none() && expected != actual {
            self.failure = Some(Counterexample::Value {
                quantity: quantity.to_string(),
                at,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn path(&mut self, ok: bool, word: &PathWord, detail: impl FnOnce() -> String) {
        self.comparisons += 1;
        if self.failure.is_none() && !ok {
            self.failure = Some(Counterexample::Path {
                length: word.len(),
                word: word.to_string(),
                detail: detail(),
            });
        }
    }

    fn finish(self, id: CheckId, range: String) -> CheckResult {
        CheckResult {
            id,
            range,
            pass: self.failure.is_none(),
            comparisons: self.comparisons,
            counterexample: self.failure,
        }
    }
}

fn big(v: u64) -> BigCount {
    BigCount::from(v)
}

/// Runs checks against a set of formulas, memoizing brute-force rows.
pub struct Harness<'f> {
    forms: &'f dyn Formulas,
    enumerator: Enumerator,
    rows: Mutex<BTreeMap<usize, CountRow>>,
}

impl Default for Harness<'static> {
    fn default() -> Self {
        Harness::new(&Exact, Enumerator::default())
    }
}

impl<'f> Harness<'f> {
    pub fn new(forms: &'f dyn Formulas, enumerator: Enumerator) -> Self {
        Harness {
            forms,
            enumerator,
            rows: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn enumerator(&self) -> &Enumerator {
        &self.enumerator
    }

    fn row(&self, n: usize) -> Result<CountRow> {
        if let Some(r) = self.rows.lock().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let r = self.enumerator.totals(n)?;
        self.rows.lock().unwrap().insert(n, r.clone());
        Ok(r)
    }

    /// Fills the row cache for `0..=max_n` in parallel.
    fn warm(&self, max_n: usize) -> Result<()> {
        let missing: Vec<usize> = {
            let rows = self.rows.lock().unwrap();
            (0..=max_n).filter(|n| !rows.contains_key(n)).collect()
        };
        let fresh: Vec<CountRow> = missing
            .into_par_iter()
            .map(|n| self.enumerator.totals(n))
            .collect::<Result<_>>()?;
        let mut rows = self.rows.lock().unwrap();
        for r in fresh {
            rows.insert(r.n, r);
        }
        Ok(())
    }

    /// Every check, run concurrently; the report order follows [`CheckId::ALL`].
    pub fn verify_all(&self, max_n: usize) -> Result<VerificationReport> {
        self.verify_ids(&CheckId::ALL, max_n)
    }

    pub fn verify_ids(&self, ids: &[CheckId], max_n: usize) -> Result<VerificationReport> {
        self.warm(max_n.min(self.enumerator.cap()))?;
        let checks = ids
            .par_iter()
            .map(|&id| self.verify_lemma(id, max_n))
            .collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport::new(checks))
    }

    pub fn verify_lemma(&self, id: CheckId, max_n: usize) -> Result<CheckResult> {
        if id.oracle_only() {
            self.enumerator.check(max_n)?;
        }
        let oracle = max_n.min(self.enumerator.cap());
        let arith = |default: u64| (max_n as u64).max(default);
        match id {
            CheckId::L1Count => self.l1_count(oracle),
            CheckId::L1Bijection => self.l1_bijection(oracle),
            CheckId::L2Recursion => self.l2_recursion(oracle, arith(ARITH_DEFAULT)),
            CheckId::L2Decomposition => self.l2_decomposition(oracle),
            CheckId::L3Recursion => {
                self.l3_recursion(oracle, arith(ARITH_DEFAULT), arith(IDENTITY_K_DEFAULT))
            }
            CheckId::L3Bijection => self.l3_bijection(oracle),
            CheckId::L4Closed => self.l4_closed(oracle, arith(ARITH_DEFAULT), arith(IDENTITY_K_DEFAULT)),
            CheckId::L5Bijection => self.l5_bijection(oracle),
            CheckId::L5Count => self.l5_count(oracle, arith(ARITH_DEFAULT)),
            CheckId::Thm1 => self.thm1(oracle),
            CheckId::Conv => Ok(self.conv(arith(CONV_DEFAULT))),
            CheckId::EqStar => self.eq_star(oracle, arith(ARITH_DEFAULT)),
            CheckId::Asym => Ok(self.asym()),
        }
    }

    fn l1_count(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in 0..=max_n {
            let streamed = big(self.enumerator.ddp(n)?.count() as u64);
            let dp = count_ddp_dp(n);
            t.values("dD enumerated vs dp", n as u64, &streamed, &dp);
            t.values("dD enumerated vs closed", n as u64, &streamed, &self.forms.central_binomial(n as u64));
        }
        Ok(t.finish(CheckId::L1Count, format!("n=0..={max_n}")))
    }

    /// Both roundtrips over both families, which together make the
    /// reflection a bijection between them.
    fn l1_bijection(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in 0..=max_n {
            for p in self.enumerator.plain(n)? {
                match plain_to_ddp(&p) {
                    Ok(q) => {
                        let back = ddp_to_plain(&q).ok();
                        t.path(q.is_ddp() && q.len() == n && back.as_ref() == Some(&p), &p, || {
                            format!("reflection gave {q}, inverse gave {back:?}")
                        });
                    }
                    Err(e) => t.path(false, &p, || e.to_string()),
                }
                if t.failed() {
                    break;
                }
            }
            for q in self.enumerator.ddp(n)? {
                match ddp_to_plain(&q) {
                    Ok(p) => {
                        let back = plain_to_ddp(&p).ok();
                        t.path(p.is_plain() && back.as_ref() == Some(&q), &q, || {
                            format!("inverse reflection gave {p}, reflection gave {back:?}")
                        });
                    }
                    Err(e) => t.path(false, &q, || e.to_string()),
                }
                if t.failed() {
                    break;
                }
            }
        }
        Ok(t.finish(CheckId::L1Bijection, format!("n=0..={max_n}")))
    }

    fn l2_recursion(&self, max_n: usize, arith: u64) -> Result<CheckResult> {
        let mut t = Tally::default();
        for two_k in (2..=max_n).step_by(2) {
            let odd = self.row(two_k - 1)?.rights * 2u32;
            t.values("R(2k) vs 2R(2k-1) brute", two_k as u64, &odd, &self.row(two_k)?.rights);
        }
        for two_k in (2..=arith).step_by(2) {
            let lhs = self.forms.r_closed(two_k);
            t.values("R(2k) vs 2R(2k-1) closed", two_k, &(self.forms.r_closed(two_k - 1) * 2u32), &lhs);
            // the halving step for even central binomials
            t.values(
                "C(l,l/2) vs 2C(l-1,l/2-1)",
                two_k,
                &(binomial(two_k - 1, two_k / 2 - 1) * 2u32),
                &self.forms.central_binomial(two_k),
            );
        }
        Ok(t.finish(CheckId::L2Recursion, format!("brute n=2..={max_n}; closed n=2..={arith}")))
    }

    fn l2_decomposition(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for two_k in (2..=max_n).step_by(2) {
            let brute = self.row(two_k)?.rights;
            t.values("R(2k) pair decomposition", two_k as u64, &brute, &r_pair_decomposition(two_k)?);
        }
        Ok(t.finish(CheckId::L2Decomposition, format!("n=2..={max_n} even")))
    }

    fn l3_recursion(&self, max_n: usize, arith: u64, max_k: u64) -> Result<CheckResult> {
        let mut t = Tally::default();
        for two_k in (2..max_n).step_by(2) {
            let expected = self.row(two_k)?.ups * 2u32;
            t.values("U(2k+1) vs 2U(2k) brute", two_k as u64 + 1, &expected, &self.row(two_k + 1)?.ups);
        }
        for k in 0..=max_n as u64 / 2 {
            let dyck = big(self.enumerator.dyck(2 * k as usize)?.count() as u64);
            t.values("catalan vs Dyck enumeration", k, &dyck, &self.forms.catalan(k));
        }
        for two_k in (2..arith).step_by(2) {
            let expected = self.forms.u_closed(two_k) * 2u32;
            t.values("U(2k+1) vs 2U(2k) closed", two_k + 1, &expected, &self.forms.u_closed(two_k + 1));
        }
        for k in 1..=max_k {
            let c = binomial(2 * k, k - 1);
            t.values("k catalan(k) vs C(2k,k-1)", k, &c, &(self.forms.catalan(k) * k));
            let diff = binomial(2 * k + 1, k) - binomial(2 * k, k);
            t.values("C(2k+1,k)-C(2k,k) vs C(2k,k-1)", k, &c, &diff);
        }
        Ok(t.finish(
            CheckId::L3Recursion,
            format!("brute n=3..={max_n}; closed n=3..={arith}; identities k=1..={max_k}"),
        ))
    }

    fn l3_bijection(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in (1..=max_n).step_by(2) {
            for p in self.enumerator.ddp(n)? {
                if p.steps().last() != Some(&Step::Down) {
                    continue;
                }
                let q = updown_forward(&p);
                let ok = match &q {
                    Ok(q) => {
                        q.is_ddp()
                            && q.len() == n - 1
                            && q.count(Step::Right) >= 1
                            && q.count(Step::Up) + 1 == p.count(Step::Down)
                            && updown_inverse(q).as_ref() == Ok(&p)
                    }
                    Err(_) => false,
                };
                t.path(ok, &p, || format!("forward gave {q:?}"));
                if t.failed() {
                    break;
                }
            }
            for q in self.enumerator.ddp(n - 1)? {
                if q.count(Step::Right) == 0 {
                    continue;
                }
                let p = updown_inverse(&q);
                let ok = match &p {
                    Ok(p) => {
                        p.is_ddp()
                            && p.len() == n
                            && p.steps().last() == Some(&Step::Down)
                            && updown_forward(p).as_ref() == Ok(&q)
                    }
                    Err(_) => false,
                };
                t.path(ok, &q, || format!("inverse gave {p:?}"));
                if t.failed() {
                    break;
                }
            }
        }
        Ok(t.finish(CheckId::L3Bijection, format!("n=1..={max_n} odd")))
    }

    fn l4_closed(&self, max_n: usize, arith: u64, max_k: u64) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in 0..=max_n {
            t.values("R brute vs closed", n as u64, &self.row(n)?.rights, &self.forms.r_closed(n as u64));
        }
        for k in 0..=max_k {
            let lhs = binomial(2 * k + 1, k) * (k + 1);
            let rhs = binomial(2 * k, k) * (2 * k + 1);
            t.values("(k+1)C(2k+1,k) vs (2k+1)C(2k,k)", k, &rhs, &lhs);
        }
        // R(2k+1) = 2R(2k) + (2k+1)C(2k+1,k) - 4kC(2k,k), moved to one side
        for k in 1..=(arith.saturating_sub(1)) / 2 {
            let lhs = self.forms.r_closed(2 * k + 1) + binomial(2 * k, k) * (4 * k);
            let rhs = self.forms.r_closed(2 * k) * 2u32 + binomial(2 * k + 1, k) * (2 * k + 1);
            t.values("R(2k+1) recursion", 2 * k + 1, &rhs, &lhs);
        }
        Ok(t.finish(
            CheckId::L4Closed,
            format!("brute n=0..={max_n}; identities k=0..={max_k}; recursion n=3..={arith}"),
        ))
    }

    /// Both directions of the (path, 1-ascent) <-> (shorter path, slot)
    /// correspondence; `max_n` bounds the longer path.
    fn l5_bijection(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in 0..=max_n.saturating_sub(2) {
            if max_n < 2 {
                break;
            }
            let mut pairs_long = 0u64;
            for p in self.enumerator.ddp(n + 2)? {
                for pos in one_ascent_positions(p.steps()) {
                    pairs_long += 1;
                    let removed = ascent_remove(&p, pos);
                    let ok = match &removed {
                        Ok((q, slot)) => {
                            q.is_ddp() && q.len() == n && ascent_insert(q, *slot).as_ref() == Ok(&p)
                        }
                        Err(_) => false,
                    };
                    t.path(ok, &p, || format!("removing 1-ascent at {pos} gave {removed:?}"));
                }
                if t.failed() {
                    break;
                }
            }
            let mut pairs_short = 0u64;
            for q in self.enumerator.ddp(n)? {
                for slot in SlotRef::all_in(&q) {
                    pairs_short += 1;
                    let pos = slot.index().map_or(0, |i| i + 1);
                    let inserted = ascent_insert(&q, slot);
                    let ok = match &inserted {
                        Ok(p) => {
                            p.is_ddp()
                                && one_ascent_positions(p.steps()).contains(&pos)
                                && ascent_remove(p, pos).as_ref() == Ok(&(q.clone(), slot))
                        }
                        Err(_) => false,
                    };
                    t.path(ok, &q, || format!("inserting at {slot} gave {inserted:?}"));
                }
                if t.failed() {
                    break;
                }
            }
            t.values("(path, 1-ascent) pairs vs (path, slot) pairs", n as u64, &big(pairs_short), &big(pairs_long));
        }
        Ok(t.finish(CheckId::L5Bijection, format!("short n=0..={}", max_n.saturating_sub(2))))
    }

    fn l5_count(&self, max_n: usize, arith: u64) -> Result<CheckResult> {
        let mut t = Tally::default();
        for m in 0..=max_n.min(1) {
            t.values("A at length < 2", m as u64, &self.row(m)?.one_ascents, &self.forms.a_closed(m as u64));
        }
        for n in 0..=max_n.saturating_sub(2) {
            if max_n < 2 {
                break;
            }
            let short = self.row(n)?;
            let expected = &short.paths + &short.downs + &short.rights;
            t.values("A(n+2) vs dD+D+R brute", n as u64 + 2, &expected, &self.row(n + 2)?.one_ascents);
        }
        for n in 0..=arith {
            let expected = self.forms.central_binomial(n) + self.forms.u_closed(n) + self.forms.r_closed(n);
            t.values("A(n+2) vs dD+D+R closed", n + 2, &expected, &self.forms.a_closed(n + 2));
        }
        Ok(t.finish(CheckId::L5Count, format!("brute m=0..={max_n}; closed n=0..={arith}")))
    }

    fn thm1(&self, max_n: usize) -> Result<CheckResult> {
        let mut t = Tally::default();
        for m in 2..=max_n {
            t.values("A brute vs closed", m as u64, &self.row(m)?.one_ascents, &self.forms.a_closed(m as u64));
        }
        let range = if max_n >= 2 { format!("m=2..={max_n}") } else { "m=2..=1 (empty)".to_string() };
        Ok(t.finish(CheckId::Thm1, range))
    }

    fn conv(&self, arith: u64) -> CheckResult {
        let mut t = Tally::default();
        for n in 0..=arith {
            t.values("R closed vs convolution", n, &self.forms.r_closed(n), &self.forms.r_convolution(n));
        }
        t.finish(CheckId::Conv, format!("n=0..={arith}"))
    }

    fn eq_star(&self, max_n: usize, arith: u64) -> Result<CheckResult> {
        let mut t = Tally::default();
        for n in 0..=max_n {
            let r = self.row(n)?;
            t.values("U vs D brute", n as u64, &r.ups, &r.downs);
            t.values("n dD vs R+U+D brute", n as u64, &(&r.paths * n), &(&r.rights + &r.ups + &r.downs));
            t.values("U brute vs closed", n as u64, &r.ups, &self.forms.u_closed(n as u64));
        }
        for n in 0..=arith {
            let total = self.forms.central_binomial(n) * n;
            let split = self.forms.r_closed(n) + self.forms.u_closed(n) * 2u32;
            t.values("n dD vs R+2U closed", n, &total, &split);
        }
        Ok(t.finish(CheckId::EqStar, format!("brute n=0..={max_n}; closed n=0..={arith}")))
    }

    fn asym(&self) -> CheckResult {
        let mut t = Tally::default();
        let mut deviations = Vec::new();
        for m in ASYM_POINTS {
            let exact = self.forms.a_closed(m);
            let estimate = closed::a_asymptotic(m);
            let ratio = if exact.is_zero() {
                0.0
            } else {
                (closed::log2_big(&exact) - estimate.log2).exp2()
            };
            deviations.push((m, (ratio - 1.0).abs(), exact, estimate));
        }
        let (m0, d0, exact0, est0) = &deviations[0];
        t.comparisons += 1;
        if d0.is_nan() || *d0 > ASYM_TOLERANCE {
            t.failure = Some(Counterexample::Value {
                quantity: format!("|A/estimate - 1| <= {ASYM_TOLERANCE}"),
                at: *m0,
                expected: format!("log2 {}", est0.log2),
                actual: format!("log2 {}", closed::log2_big(exact0)),
            });
        }
        let (m1, d1, _, _) = &deviations[1];
        t.comparisons += 1;
        if t.failure.is_none() && (d1.is_nan() || d1 >= d0) {
            t.failure = Some(Counterexample::Value {
                quantity: "deviation shrinks".to_string(),
                at: *m1,
                expected: format!("< {d0}"),
                actual: d1.to_string(),
            });
        }
        let e1 = closed::a_asymptotic(1);
        t.comparisons += 1;
        if t.failure.is_none() && !e1.value.is_some_and(|v| v.is_finite() && v > 0.0) {
            t.failure = Some(Counterexample::Value {
                quantity: "estimate finite and positive".to_string(),
                at: 1,
                expected: "> 0".to_string(),
                actual: format!("{:?}", e1.value),
            });
        }
        t.finish(CheckId::Asym, "m in {1, 1000, 10000}".to_string())
    }
}

fn one_ascent_positions(steps: &[Step]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        if steps[i] == Step::Up {
            let start = i;
            while i < steps.len() && steps[i] == Step::Up {
                i += 1;
            }
            if i - start == 1 {
                out.push(start);
            }
        } else {
            i += 1;
        }
    }
    debug_assert_eq!(out.len(), count_k_ascents(steps, 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
        }
        assert_eq!("bogus".parse::<CheckId>().unwrap_err(), Error::UnknownCheck("bogus".into()));
        for f in Formula::ALL {
            assert_eq!(f.as_str().parse::<Formula>().unwrap(), f);
        }
    }

    #[test]
    fn thm1_small() {
        let h = Harness::default();
        let r = h.verify_lemma(CheckId::Thm1, 6).unwrap();
        assert!(r.pass);
        assert_eq!(r.comparisons, 5);
        assert_eq!(r.range, "m=2..=6");
        let r = h.verify_lemma(CheckId::Thm1, 12).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn bijection_checks_pass() {
        let h = Harness::default();
        for id in [CheckId::L1Bijection, CheckId::L3Bijection, CheckId::L5Bijection] {
            let r = h.verify_lemma(id, 10).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.comparisons > 0);
        }
    }

    #[test]
    fn conv_at_300() {
        let r = Harness::default().verify_lemma(CheckId::Conv, 300).unwrap();
        assert!(r.pass);
        assert_eq!(r.comparisons, 301);
    }

    #[test]
    fn oracle_only_ids_respect_cap() {
        let h = Harness::new(&Exact, Enumerator::with_cap(8));
        assert!(matches!(h.verify_lemma(CheckId::Thm1, 9), Err(Error::CapExceeded { .. })));
        // mixed ids clamp their oracle part instead
        let r = h.verify_lemma(CheckId::L4Closed, 9).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn verify_all_small_and_empty() {
        let h = Harness::default();
        let report = h.verify_all(8).unwrap();
        assert!(report.overall, "{}", report.to_json_pretty());
        assert_eq!(report.checks.len(), CheckId::ALL.len());
        let ids: Vec<_> = report.checks.iter().map(|c| c.id).collect();
        assert_eq!(ids, CheckId::ALL);

        let empty = Harness::default().verify_all(0).unwrap();
        assert!(empty.overall);
        let thm = &empty.checks[CheckId::ALL.iter().position(|&i| i == CheckId::Thm1).unwrap()];
        assert_eq!(thm.comparisons, 0);
    }

    #[test]
    fn faults_are_caught() {
        for f in Formula::ALL {
            let forms = OffByOne(f);
            let h = Harness::new(&forms, Enumerator::default());
            let report = h.verify_all(6).unwrap();
            assert!(!report.overall, "fault in {} went unnoticed", f.as_str());
            for c in report.checks.iter().filter(|c| !c.pass) {
                assert!(c.counterexample.is_some());
            }
        }
        let forms = OffByOne(Formula::AClosed);
        let r = Harness::new(&forms, Enumerator::default()).verify_lemma(CheckId::Thm1, 6).unwrap();
        assert_eq!(
            r.counterexample,
            Some(Counterexample::Value {
                quantity: "A brute vs closed".into(),
                at: 2,
                expected: "1".into(),
                actual: "2".into(),
            })
        );
    }

    #[test]
    fn report_json_shape() {
        let r = Harness::default().verify_ids(&[CheckId::Thm1], 4).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"checks":[{"id":"THM1","range":"m=2..=4","pass":true,"comparisons":3,"counterexample":null}],"overall":true}"#
        );
    }

    #[test]
    fn deterministic_across_runs() {
        let a = Harness::default().verify_all(9).unwrap();
        let b = Harness::default().verify_all(9).unwrap();
        assert_eq!(a, b);
    }
}

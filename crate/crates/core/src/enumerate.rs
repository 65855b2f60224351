//! Exhaustive generation and brute-force totals.
//!
//! Generators walk words in lexicographic order under `U < D < R`, pruning any
//! prefix that can no longer be completed to a member of the family. The
//! brute-force aggregates here are the oracle every closed form is checked
//! against, so they only ever count what they enumerate.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed::BigCount;
use crate::error::{Error, Result};
use crate::path::{count_k_ascents, PathWord, Step};

/// Default refusal threshold for exhaustive enumeration; `dD(26) = 10,400,600`.
pub const DEFAULT_CAP: usize = 26;

/// Lengths from which the brute-force aggregator splits work across threads.
const PARALLEL_FROM: usize = 16;
const PARTITION_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Dispersed Dyck paths.
    Ddp,
    Dyck,
    /// Right-free words ending at height `-(n mod 2)`.
    Plain,
}

impl Family {
    fn allows(self, step: Step, height: i64) -> bool {
        match (self, step) {
            (Family::Ddp, Step::Right) => height == 0,
            (_, Step::Right) => false,
            (Family::Plain, _) => true,
            (_, Step::Down) => height > 0,
            (_, Step::Up) => true,
        }
    }

    /// Whether a prefix ending at `height` with `remaining` steps left can
    /// still be completed.
    fn feasible(self, height: i64, remaining: usize, n: usize) -> bool {
        let r = remaining as i64;
        let target = match self {
            Family::Plain => -((n % 2) as i64),
            _ => 0,
        };
        let gap = (height - target).abs();
        match self {
            // right steps at the axis absorb any leftover parity
            Family::Ddp => height >= 0 && height <= r,
            Family::Dyck => height >= 0 && gap <= r && (r - gap) % 2 == 0,
            Family::Plain => gap <= r && (r - gap) % 2 == 0,
        }
    }
}

/// Lexicographic stream of all words of one family and length.
#[derive(Clone, Debug)]
pub struct PathIter {
    family: Family,
    n: usize,
    steps: Vec<Step>,
    heights: Vec<i64>,
    state: IterState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl PathIter {
    fn new(family: Family, n: usize) -> Self {
        PathIter {
            family,
            n,
            steps: Vec::with_capacity(n),
            heights: vec![0],
            state: IterState::Fresh,
        }
    }

    fn height(&self) -> i64 {
        *self.heights.last().unwrap()
    }

    fn try_push_from(&mut self, candidates: &[Step]) -> bool {
        let h = self.height();
        let remaining = self.n - self.steps.len() - 1;
        for &s in candidates {
            let next = h + s.delta();
            if self.family.allows(s, h) && self.family.feasible(next, remaining, self.n) {
                self.steps.push(s);
                self.heights.push(next);
                return true;
            }
        }
        false
    }

    /// Smallest completion of the current (feasible) prefix.
    fn fill(&mut self) {
        while self.steps.len() < self.n {
            let pushed = self.try_push_from(&Step::ALL);
            debug_assert!(pushed, "feasible prefix must extend");
        }
    }

    fn advance(&mut self) -> bool {
        while let Some(last) = self.steps.pop() {
            self.heights.pop();
            let later: Vec<Step> = Step::ALL.iter().copied().filter(|&s| s > last).collect();
            if self.try_push_from(&later) {
                self.fill();
                return true;
            }
        }
        false
    }
}

impl Iterator for PathIter {
    type Item = PathWord;

    fn next(&mut self) -> Option<PathWord> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                if !self.family.feasible(0, self.n, self.n) {
                    self.state = IterState::Done;
                    return None;
                }
                self.fill();
                self.state = IterState::Running;
            }
            IterState::Running => {
                if !self.advance() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        Some(PathWord::new(self.steps.clone()))
    }
}

impl std::iter::FusedIterator for PathIter {}

/// Calls `visit` on every completion of `prefix`, in lexicographic order,
/// without allocating per word.
fn visit_from<F: FnMut(&[Step])>(family: Family, n: usize, prefix: &[Step], visit: &mut F) {
    let mut buf = Vec::with_capacity(n);
    let mut h = 0i64;
    for &s in prefix {
        if !family.allows(s, h) {
            return;
        }
        h += s.delta();
        buf.push(s);
    }
    if prefix.len() > n || !family.feasible(h, n - prefix.len(), n) {
        return;
    }
    fn go<F: FnMut(&[Step])>(family: Family, n: usize, buf: &mut Vec<Step>, h: i64, visit: &mut F) {
        if buf.len() == n {
            visit(buf);
            return;
        }
        let remaining = n - buf.len() - 1;
        for s in Step::ALL {
            let next = h + s.delta();
            if family.allows(s, h) && family.feasible(next, remaining, n) {
                buf.push(s);
                go(family, n, buf, next, visit);
                buf.pop();
            }
        }
    }
    go(family, n, &mut buf, h, visit);
}

/// All feasible prefixes of length `min(depth, n)`, lexicographically.
fn prefixes(family: Family, n: usize, depth: usize) -> Vec<Vec<Step>> {
    let depth = depth.min(n);
    let mut out = Vec::new();
    fn go(family: Family, n: usize, depth: usize, buf: &mut Vec<Step>, h: i64, out: &mut Vec<Vec<Step>>) {
        if buf.len() == depth {
            out.push(buf.clone());
            return;
        }
        let remaining = n - buf.len() - 1;
        for s in Step::ALL {
            let next = h + s.delta();
            if family.allows(s, h) && family.feasible(next, remaining, n) {
                buf.push(s);
                go(family, n, depth, buf, next, out);
                buf.pop();
            }
        }
    }
    if family.feasible(0, n, n) {
        go(family, n, depth, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// Exact per-length totals over all dispersed Dyck paths of one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    #[serde(rename = "dD", serialize_with = "crate::json::big")]
    pub paths: BigCount,
    #[serde(serialize_with = "crate::json::big")]
    pub dyck: BigCount,
    #[serde(rename = "U", serialize_with = "crate::json::big")]
    pub ups: BigCount,
    #[serde(rename = "D", serialize_with = "crate::json::big")]
    pub downs: BigCount,
    #[serde(rename = "R", serialize_with = "crate::json::big")]
    pub rights: BigCount,
    #[serde(rename = "A", serialize_with = "crate::json::big")]
    pub one_ascents: BigCount,
}

impl CountRow {
    pub const CSV_HEADER: &'static str = "n,dD,dyck,U,D,R,A";

    pub fn zero(n: usize) -> Self {
        CountRow {
            n,
            paths: BigCount::zero(),
            dyck: BigCount::zero(),
            ups: BigCount::zero(),
            downs: BigCount::zero(),
            rights: BigCount::zero(),
            one_ascents: BigCount::zero(),
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n, self.paths, self.dyck, self.ups, self.downs, self.rights, self.one_ascents
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("CountRow serializes")
    }

    /// Sums two partial rows of the same length.
    pub fn merge(mut self, other: &CountRow) -> CountRow {
        assert_eq!(self.n, other.n, "merging rows of different lengths");
        self.paths += &other.paths;
        self.dyck += &other.dyck;
        self.ups += &other.ups;
        self.downs += &other.downs;
        self.rights += &other.rights;
        self.one_ascents += &other.one_ascents;
        self
    }
}

/// Running totals for one slice of the search space.
#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    paths: u64,
    ups: u64,
    downs: u64,
    rights: u64,
    one_ascents: u64,
}

impl Tally {
    fn add(&mut self, steps: &[Step]) {
        self.paths += 1;
        let mut run = 0u32;
        for &s in steps {
            match s {
                Step::Up => {
                    self.ups += 1;
                    run += 1;
                    continue;
                }
                Step::Down => self.downs += 1,
                Step::Right => self.rights += 1,
            }
            if run == 1 {
                self.one_ascents += 1;
            }
            run = 0;
        }
        // a DDP never ends on an up step, but this tallies arbitrary slices
        if run == 1 {
            self.one_ascents += 1;
        }
    }

    fn merge(self, o: Tally) -> Tally {
        Tally {
            paths: self.paths + o.paths,
            ups: self.ups + o.ups,
            downs: self.downs + o.downs,
            rights: self.rights + o.rights,
            one_ascents: self.one_ascents + o.one_ascents,
        }
    }
}

/// Entry point for everything that enumerates, guarded by a length cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { cap: DEFAULT_CAP }
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Self {
        Enumerator { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn iter(&self, family: Family, n: usize) -> Result<PathIter> {
        self.check(n)?;
        Ok(PathIter::new(family, n))
    }

    pub fn ddp(&self, n: usize) -> Result<PathIter> {
        self.iter(Family::Ddp, n)
    }

    pub fn dyck(&self, n: usize) -> Result<PathIter> {
        self.iter(Family::Dyck, n)
    }

    pub fn plain(&self, n: usize) -> Result<PathIter> {
        self.iter(Family::Plain, n)
    }

    /// Visits every word of the family without materializing `PathWord`s.
    pub fn for_each<F: FnMut(&[Step])>(&self, family: Family, n: usize, mut visit: F) -> Result<()> {
        self.check(n)?;
        visit_from(family, n, &[], &mut visit);
        Ok(())
    }

    /// Brute-force totals over all DDPs of length `n` (and Dyck paths for
    /// the `dyck` column).
    pub fn totals(&self, n: usize) -> Result<CountRow> {
        self.check(n)?;
        let tally = if n >= PARALLEL_FROM {
            prefixes(Family::Ddp, n, PARTITION_DEPTH)
                .par_iter()
                .map(|prefix| {
                    let mut t = Tally::default();
                    visit_from(Family::Ddp, n, prefix, &mut |w| t.add(w));
                    t
                })
                .reduce(Tally::default, Tally::merge)
        } else {
            let mut t = Tally::default();
            visit_from(Family::Ddp, n, &[], &mut |w| t.add(w));
            t
        };
        let mut dyck = 0u64;
        visit_from(Family::Dyck, n, &[], &mut |_| dyck += 1);
        Ok(CountRow {
            n,
            paths: tally.paths.into(),
            dyck: dyck.into(),
            ups: tally.ups.into(),
            downs: tally.downs.into(),
            rights: tally.rights.into(),
            one_ascents: tally.one_ascents.into(),
        })
    }

    /// Brute-force rows for every length in `0..=max_n`, computed in parallel.
    pub fn totals_table(&self, max_n: usize) -> Result<Vec<CountRow>> {
        self.check(max_n)?;
        (0..=max_n).into_par_iter().map(|n| self.totals(n)).collect()
    }

    /// Histogram of the number of 1-ascents per DDP of length `n`.
    pub fn one_ascent_distribution(&self, n: usize) -> Result<DistributionTable> {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        self.for_each(Family::Ddp, n, |w| {
            *counts.entry(count_k_ascents(w, 1)).or_insert(0) += 1;
        })?;
        Ok(DistributionTable {
            n,
            row: counts.into_iter().map(|(t, c)| (t, BigUint::from(c))).collect(),
        })
    }

    /// Total number of maximal up-runs of length exactly `k` over all DDPs
    /// of length `n`.
    pub fn k_ascent_total(&self, n: usize, k: usize) -> Result<BigCount> {
        if k == 0 {
            return Err(Error::domain("k_ascent_total", "k must be at least 1"));
        }
        let mut total = 0u64;
        self.for_each(Family::Ddp, n, |w| total += count_k_ascents(w, k) as u64)?;
        Ok(total.into())
    }
}

/// Number of DDPs of length `n` with exactly `t` 1-ascents, for each `t`
/// that occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionTable {
    pub n: usize,
    #[serde(serialize_with = "crate::json::big_map")]
    pub row: BTreeMap<usize, BigCount>,
}

impl DistributionTable {
    pub fn total_paths(&self) -> BigCount {
        self.row.values().sum()
    }

    pub fn total_one_ascents(&self) -> BigCount {
        self.row.iter().map(|(&t, c)| c * t).sum()
    }
}

fn count_dp(n: usize, with_rights: bool) -> BigCount {
    // ways[h] = number of valid prefixes ending at height h
    let mut ways = vec![BigCount::zero(); n + 2];
    ways[0] = BigCount::one();
    for _ in 0..n {
        let mut next = vec![BigCount::zero(); n + 2];
        for h in 0..=n {
            if ways[h].is_zero() {
                continue;
            }
            next[h + 1] += &ways[h];
            if h > 0 {
                next[h - 1] += &ways[h];
            } else if with_rights {
                next[0] += &ways[0];
            }
        }
        ways = next;
    }
    ways.swap_remove(0)
}

/// Counts DDPs over a (position, height) table; right steps only at height 0.
pub fn count_ddp_dp(n: usize) -> BigCount {
    count_dp(n, true)
}

pub fn count_dyck_dp(n: usize) -> BigCount {
    count_dp(n, false)
}

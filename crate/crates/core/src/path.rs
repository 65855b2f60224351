//! Steps, path words and per-path statistics.
//!
//! A path word is a finite sequence of `U` (up), `D` (down) and `R` (right)
//! steps starting at height 0. Three families live inside the same word type:
//!
//! * dispersed Dyck paths: never below the axis, end at height 0, right steps
//!   only at height 0;
//! * Dyck paths: dispersed Dyck paths without right steps;
//! * plain paths: right-free words ending at height `-(n mod 2)` with no sign
//!   constraint on intermediate heights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A single lattice step. The derived order `Up < Down < Right` is the
/// canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
    Right,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::Up, Step::Down, Step::Right];

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Right => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::Up),
            'D' => Some(Step::Down),
            'R' => Some(Step::Right),
            _ => None,
        }
    }

    /// Height change contributed by this step.
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
            Step::Right => 0,
        }
    }

    /// U and D swap, R is fixed.
    pub fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            Step::Right => Step::Right,
        }
    }
}

/// Validity classification, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PathClass {
    Dyck,
    DispersedDyck,
    PlainPath,
    Invalid,
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathClass::Dyck => "Dyck",
            PathClass::DispersedDyck => "DispersedDyck",
            PathClass::PlainPath => "PlainPath",
            PathClass::Invalid => "Invalid",
        };
        f.write_str(s)
    }
}

/// An ordered sequence of steps. The empty word is the length-0 path.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord {
    steps: Vec<Step>,
}

impl PathWord {
    pub fn new(steps: Vec<Step>) -> Self {
        PathWord { steps }
    }

    pub fn empty() -> Self {
        PathWord::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Height after each prefix, starting with the empty prefix (always 0).
    /// The result has `len() + 1` entries.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0i64;
        out.push(h);
        for s in &self.steps {
            h += s.delta();
            out.push(h);
        }
        out
    }

    pub fn final_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn is_ddp(&self) -> bool {
        is_ddp(&self.steps)
    }

    pub fn is_dyck(&self) -> bool {
        self.is_ddp() && !self.steps.contains(&Step::Right)
    }

    pub fn is_plain(&self) -> bool {
        is_plain(&self.steps)
    }

    pub fn classify(&self) -> PathClass {
        classify(&self.steps)
    }

    pub fn stats(&self) -> PathStats {
        PathStats::of(&self.steps)
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

impl From<Vec<Step>> for PathWord {
    fn from(steps: Vec<Step>) -> Self {
        PathWord { steps }
    }
}

impl Serialize for PathWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a word over `{U, D, R}`. Positions in errors are 0-based character
/// offsets.
pub fn parse_path(text: &str) -> Result<PathWord> {
    text.chars()
        .enumerate()
        .map(|(position, c)| Step::from_letter(c).ok_or(Error::Parse { position, found: c }))
        .collect::<Result<Vec<_>>>()
        .map(PathWord::new)
}

pub(crate) fn is_ddp(steps: &[Step]) -> bool {
    let mut h = 0i64;
    for &s in steps {
        match s {
            Step::Up => h += 1,
            Step::Down => {
                if h == 0 {
                    return false;
                }
                h -= 1;
            }
            Step::Right => {
                if h != 0 {
                    return false;
                }
            }
        }
    }
    h == 0
}

pub(crate) fn is_plain(steps: &[Step]) -> bool {
    if steps.contains(&Step::Right) {
        return false;
    }
    let h: i64 = steps.iter().map(|s| s.delta()).sum();
    h == -((steps.len() % 2) as i64)
}

/// Most specific class. A word that is both a Dyck path and a plain path is
/// reported as `Dyck`; [`PathWord::is_plain`] answers the plain predicate on
/// its own.
pub fn classify(steps: &[Step]) -> PathClass {
    if is_ddp(steps) {
        if steps.contains(&Step::Right) {
            PathClass::DispersedDyck
        } else {
            PathClass::Dyck
        }
    } else if is_plain(steps) {
        PathClass::PlainPath
    } else {
        PathClass::Invalid
    }
}

/// Step counts and the decomposition into maximal runs of up steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub n: usize,
    pub ups: usize,
    pub downs: usize,
    pub rights: usize,
    /// Lengths of the maximal up-runs, in path order.
    #[serde(skip)]
    pub ascent_runs: Vec<usize>,
    /// Run length `k` to the number of maximal up-runs of exactly that length.
    pub k_ascents: BTreeMap<usize, usize>,
}

impl PathStats {
    pub fn of(steps: &[Step]) -> Self {
        let mut stats = PathStats {
            n: steps.len(),
            ..Default::default()
        };
        let mut run = 0usize;
        for &s in steps {
            match s {
                Step::Up => {
                    stats.ups += 1;
                    run += 1;
                    continue;
                }
                Step::Down => stats.downs += 1,
                Step::Right => stats.rights += 1,
            }
            if run > 0 {
                stats.push_run(run);
                run = 0;
            }
        }
        if run > 0 {
            stats.push_run(run);
        }
        stats
    }

    fn push_run(&mut self, len: usize) {
        self.ascent_runs.push(len);
        *self.k_ascents.entry(len).or_insert(0) += 1;
    }

    pub fn one_ascents(&self) -> usize {
        self.k_ascent_count(1)
    }

    pub fn k_ascent_count(&self, k: usize) -> usize {
        self.k_ascents.get(&k).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("PathStats serializes")
    }
}

/// Number of maximal up-runs of length exactly `k`, without building a
/// [`PathStats`].
pub(crate) fn count_k_ascents(steps: &[Step], k: usize) -> usize {
    let mut total = 0;
    let mut run = 0;
    for &s in steps {
        if s == Step::Up {
            run += 1;
        } else {
            if run == k {
                total += 1;
            }
            run = 0;
        }
    }
    if run == k && k > 0 {
        total += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PathWord {
        parse_path(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("").len(), 0);
        assert_eq!(p("UDR").steps(), &[Step::Up, Step::Down, Step::Right]);
        match parse_path("UXD") {
            Err(Error::Parse { position, found }) => {
                assert_eq!(position, 1);
                assert_eq!(found, 'X');
            }
            other => panic!("unexpected {other:?}"),
        }
        // case-sensitive
        assert!(parse_path("u").is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(p("UDR").classify(), PathClass::DispersedDyck);
        assert_eq!(p("UUDD").classify(), PathClass::Dyck);
        assert_eq!(p("DU").classify(), PathClass::PlainPath);
        assert_eq!(p("").classify(), PathClass::Dyck);
        assert_eq!(p("URD").classify(), PathClass::Invalid);
        assert_eq!(p("UU").classify(), PathClass::Invalid);
        // odd plain path ends at -1
        assert_eq!(p("D").classify(), PathClass::PlainPath);
        assert_eq!(p("UDD").classify(), PathClass::PlainPath);
        // Dyck words are also plain when n is even
        assert!(p("UDUD").is_plain());
        assert!(!p("UDR").is_plain());
    }

    #[test]
    fn stats_examples() {
        let s = p("UDUD").stats();
        assert_eq!((s.ups, s.downs, s.rights), (2, 2, 0));
        assert_eq!(s.k_ascents, BTreeMap::from([(1, 2)]));

        let s = p("UUDD").stats();
        assert_eq!(s.k_ascents, BTreeMap::from([(2, 1)]));
        assert_eq!(s.one_ascents(), 0);

        let s = p("").stats();
        assert_eq!(s, PathStats::default());
        assert!(s.ascent_runs.is_empty());
    }

    #[test]
    fn stats_json_key_order() {
        assert_eq!(
            p("UDUUDDR").stats().to_json(),
            r#"{"n":7,"ups":3,"downs":3,"rights":1,"k_ascents":{"1":1,"2":1}}"#
        );
        assert_eq!(
            p("").stats().to_json(),
            r#"{"n":0,"ups":0,"downs":0,"rights":0,"k_ascents":{}}"#
        );
    }

    fn arb_word() -> impl Strategy<Value = PathWord> {
        prop::collection::vec(prop::sample::select(Step::ALL.to_vec()), 0..40).prop_map(PathWord::new)
    }

    proptest! {
        #[test]
        fn stats_counts_are_consistent(w in arb_word()) {
            let s = w.stats();
            prop_assert_eq!(s.ups + s.downs + s.rights, s.n);
            prop_assert_eq!(s.k_ascents.iter().map(|(k, c)| k * c).sum::<usize>(), s.ups);
            prop_assert_eq!(s.ascent_runs.iter().sum::<usize>(), s.ups);
            prop_assert_eq!(w.heights().last().copied(), Some(s.ups as i64 - s.downs as i64));
            for k in 1..5 {
                prop_assert_eq!(count_k_ascents(w.steps(), k), s.k_ascent_count(k));
            }
        }

        #[test]
        fn ddp_class_rechecked_by_scan(w in arb_word()) {
            let class = w.classify();
            if matches!(class, PathClass::DispersedDyck | PathClass::Dyck) {
                let h = w.heights();
                prop_assert!(h.iter().all(|&x| x >= 0));
                prop_assert_eq!(*h.last().unwrap(), 0);
                for (i, s) in w.steps().iter().enumerate() {
                    if *s == Step::Right {
                        prop_assert_eq!(h[i], 0);
                    }
                }
            }
        }

        #[test]
        fn stats_survive_print_parse(w in arb_word()) {
            let back = parse_path(&w.to_string()).unwrap();
            prop_assert_eq!(&back, &w);
            prop_assert_eq!(back.stats(), w.stats());
        }
    }
}

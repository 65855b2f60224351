//! Invertible maps between path families.
//!
//! * reflection: plain paths of length `n` <-> DDPs of length `n`;
//! * up/down: odd DDPs ending in a down step <-> even DDPs with a right step;
//! * ascent removal: (DDP, 1-ascent) <-> (shorter DDP, insertion slot).
//!
//! Every map checks its domain up front and never returns an invalid path.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::closed::{central_binomial, dyck_count, BigCount};
use crate::error::{Error, Result};
use crate::path::{PathWord, Step};

/// Where a removed 1-ascent sat, as seen from the shortened path: at the
/// start, or right after the down/right step at `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotRef {
    Start,
    DownStep(usize),
    RightStep(usize),
}

impl SlotRef {
    pub fn kind(&self) -> &'static str {
        match self {
            SlotRef::Start => "Start",
            SlotRef::DownStep(_) => "DownStep",
            SlotRef::RightStep(_) => "RightStep",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match *self {
            SlotRef::Start => None,
            SlotRef::DownStep(i) | SlotRef::RightStep(i) => Some(i),
        }
    }

    /// All slots of a path: the start, then every down or right step.
    pub fn all_in(path: &PathWord) -> Vec<SlotRef> {
        std::iter::once(SlotRef::Start)
            .chain(path.steps().iter().enumerate().filter_map(|(i, s)| match s {
                Step::Down => Some(SlotRef::DownStep(i)),
                Step::Right => Some(SlotRef::RightStep(i)),
                Step::Up => None,
            }))
            .collect()
    }
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotRef::Start => f.write_str("start"),
            SlotRef::DownStep(i) => write!(f, "down:{i}"),
            SlotRef::RightStep(i) => write!(f, "right:{i}"),
        }
    }
}

/// Accepts `start`, `down:<i>` and `right:<i>`.
impl FromStr for SlotRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain("slot", format!("expected start, down:<i> or right:<i>, got {s:?}"));
        if s == "start" {
            return Ok(SlotRef::Start);
        }
        let (kind, idx) = s.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "down" => Ok(SlotRef::DownStep(idx)),
            "right" => Ok(SlotRef::RightStep(idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for SlotRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SlotRef", 2)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("index", &self.index())?;
        st.end()
    }
}

/// One application of a bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionRecord {
    pub input: PathWord,
    pub output: PathWord,
    pub slot: Option<SlotRef>,
}

impl BijectionRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("BijectionRecord serializes")
    }
}

fn require_ddp(op: &'static str, p: &PathWord) -> Result<()> {
    if p.is_ddp() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{:?} is not a dispersed Dyck path", p.to_string())))
    }
}

/// Reflection map from plain paths to DDPs.
///
/// A down step leaving height 0 becomes a right step; the steps of the
/// below-axis excursion it opens are flipped, and the up step that closes the
/// excursion (returning from -1 to 0) becomes a right step too. A final
/// excursion that never closes is flipped through the end.
pub fn plain_to_ddp(p: &PathWord) -> Result<PathWord> {
    if !p.is_plain() {
        return Err(Error::domain(
            "plain_to_ddp",
            format!("{:?} is not a plain path", p.to_string()),
        ));
    }
    let mut out = Vec::with_capacity(p.len());
    let mut h = 0i64;
    for &s in p.steps() {
        let next = h + s.delta();
        let mapped = if (h == 0 && next == -1) || (h == -1 && next == 0) {
            Step::Right
        } else if h < 0 {
            s.flipped()
        } else {
            s
        };
        out.push(mapped);
        h = next;
    }
    Ok(PathWord::new(out))
}

/// Inverse of [`plain_to_ddp`]. Right steps are numbered from 0; even ones
/// become down steps and open a flipped stretch, odd ones become up steps
/// and close it.
pub fn ddp_to_plain(q: &PathWord) -> Result<PathWord> {
    require_ddp("ddp_to_plain", q)?;
    let mut out = Vec::with_capacity(q.len());
    let mut inside = false;
    for &s in q.steps() {
        out.push(match s {
            Step::Right if !inside => {
                inside = true;
                Step::Down
            }
            Step::Right => {
                inside = false;
                Step::Up
            }
            _ if inside => s.flipped(),
            _ => s,
        });
    }
    Ok(PathWord::new(out))
}

/// Odd-length DDP ending in a down step -> even-length DDP with a right step:
/// the last up step leaving the axis becomes a right step and the final down
/// step is dropped.
pub fn updown_forward(p: &PathWord) -> Result<PathWord> {
    const OP: &str = "updown_forward";
    require_ddp(OP, p)?;
    if p.len().is_multiple_of(2) {
        return Err(Error::domain(OP, "length must be odd"));
    }
    if p.steps().last() != Some(&Step::Down) {
        return Err(Error::domain(OP, "last step must be a down step"));
    }
    let heights = p.heights();
    let x = p
        .steps()
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &s)| s == Step::Up && heights[i] == 0)
        .map(|(i, _)| i)
        .expect("a path ending in a down step leaves the axis somewhere");
    let mut steps = p.steps().to_vec();
    steps[x] = Step::Right;
    steps.pop();
    Ok(PathWord::new(steps))
}

/// Inverse of [`updown_forward`]: the last right step becomes an up step and
/// a final down step is appended.
pub fn updown_inverse(q: &PathWord) -> Result<PathWord> {
    const OP: &str = "updown_inverse";
    require_ddp(OP, q)?;
    if !q.len().is_multiple_of(2) {
        return Err(Error::domain(OP, "length must be even"));
    }
    let x = q
        .steps()
        .iter()
        .rposition(|&s| s == Step::Right)
        .ok_or_else(|| Error::domain(OP, "path has no right step"))?;
    let mut steps = q.steps().to_vec();
    steps[x] = Step::Up;
    steps.push(Step::Down);
    Ok(PathWord::new(steps))
}

/// Deletes the 1-ascent whose up step is at `pos` together with the down step
/// that must follow it, and reports the slot it occupied.
pub fn ascent_remove(p: &PathWord, pos: usize) -> Result<(PathWord, SlotRef)> {
    const OP: &str = "ascent_remove";
    require_ddp(OP, p)?;
    let steps = p.steps();
    let not_one_ascent = || Error::domain(OP, format!("position {pos} is not the up step of a 1-ascent"));
    if steps.get(pos) != Some(&Step::Up) {
        return Err(not_one_ascent());
    }
    if pos > 0 && steps[pos - 1] == Step::Up {
        return Err(not_one_ascent());
    }
    match steps.get(pos + 1) {
        Some(Step::Down) => {}
        Some(Step::Up) => return Err(not_one_ascent()),
        // a valid DDP never follows an up step with a right step or the end
        _ => unreachable!("up step in a DDP not followed by up or down"),
    }
    let slot = if pos == 0 {
        SlotRef::Start
    } else {
        match steps[pos - 1] {
            Step::Down => SlotRef::DownStep(pos - 1),
            Step::Right => SlotRef::RightStep(pos - 1),
            Step::Up => unreachable!(),
        }
    };
    let mut out = steps.to_vec();
    out.drain(pos..pos + 2);
    Ok((PathWord::new(out), slot))
}

/// Inserts an up-down pair right after `slot`; inverse of [`ascent_remove`].
pub fn ascent_insert(q: &PathWord, slot: SlotRef) -> Result<PathWord> {
    const OP: &str = "ascent_insert";
    require_ddp(OP, q)?;
    let at = match slot {
        SlotRef::Start => 0,
        SlotRef::DownStep(i) | SlotRef::RightStep(i) => {
            let want = if matches!(slot, SlotRef::DownStep(_)) { Step::Down } else { Step::Right };
            if q.steps().get(i) != Some(&want) {
                return Err(Error::domain(
                    OP,
                    format!("slot {slot} does not reference a {want:?} step of {:?}", q.to_string()),
                ));
            }
            i + 1
        }
    };
    let mut out = q.steps().to_vec();
    out.splice(at..at, [Step::Up, Step::Down]);
    Ok(PathWord::new(out))
}

/// Total right steps over DDPs of even length `n`, counted by pairs of
/// consecutive right steps `(x, x')`: an arbitrary DDP before `x`, a Dyck
/// path between the two, and an arbitrary DDP after `x'`, doubled.
pub fn r_pair_decomposition(n: usize) -> Result<BigCount> {
    if n % 2 == 1 {
        return Err(Error::domain("r_pair_decomposition", "length must be even"));
    }
    let n = n as u64;
    let mut sum = BigCount::default();
    for x in (0..n).step_by(2) {
        for x2 in ((x + 1)..n).step_by(2) {
            let tail = n - x2 - 1;
            debug_assert!(tail.is_multiple_of(2));
            sum += central_binomial(x) * dyck_count(x2 - x - 1) * central_binomial(tail);
        }
    }
    Ok(sum * 2u32)
}

/// A named map with its extra arguments, for callers that pick one at run
/// time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bijection {
    Reflection,
    ReflectionInverse,
    UpDown,
    UpDownInverse,
    AscentRemove { pos: usize },
    AscentInsert { slot: SlotRef },
}

impl Bijection {
    pub fn apply(&self, input: &PathWord) -> Result<BijectionRecord> {
        let (output, slot) = match *self {
            Bijection::Reflection => (plain_to_ddp(input)?, None),
            Bijection::ReflectionInverse => (ddp_to_plain(input)?, None),
            Bijection::UpDown => (updown_forward(input)?, None),
            Bijection::UpDownInverse => (updown_inverse(input)?, None),
            Bijection::AscentRemove { pos } => {
                let (out, slot) = ascent_remove(input, pos)?;
                (out, Some(slot))
            }
            Bijection::AscentInsert { slot } => (ascent_insert(input, slot)?, Some(slot)),
        };
        Ok(BijectionRecord {
            input: input.clone(),
            output,
            slot,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Enumerator;
    use crate::path::parse_path;

    fn p(s: &str) -> PathWord {
        parse_path(s).unwrap()
    }

    fn s(w: Result<PathWord>) -> String {
        w.unwrap().to_string()
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(s(plain_to_ddp(&p("DU"))), "RR");
        assert_eq!(s(plain_to_ddp(&p("DDU"))), "RUD");
        assert_eq!(s(plain_to_ddp(&p("UDD"))), "UDR");
        assert_eq!(s(ddp_to_plain(&p("RR"))), "DU");
        assert_eq!(s(ddp_to_plain(&p("UDR"))), "UDD");
        assert_eq!(s(ddp_to_plain(&p("UUDD"))), "UUDD");
        assert_eq!(s(plain_to_ddp(&p(""))), "");
        assert!(plain_to_ddp(&p("UDR")).is_err());
        assert!(plain_to_ddp(&p("UU")).is_err());
        assert!(ddp_to_plain(&p("DU")).is_err());
    }

    #[test]
    fn reflection_touching_axis_inside_excursion() {
        // plain heights -1,-2,-1,-2,-1,0: one excursion, touches -1 twice
        let q = plain_to_ddp(&p("DDUDUU")).unwrap();
        assert_eq!(q.to_string(), "RUDUDR");
        assert_eq!(ddp_to_plain(&q).unwrap(), p("DDUDUU"));
    }

    #[test]
    fn updown_examples() {
        assert_eq!(s(updown_forward(&p("RRRUD"))), "RRRR");
        assert_eq!(s(updown_forward(&p("UDRUD"))), "UDRR");
        assert_eq!(s(updown_forward(&p("RUUDD"))), "RRUD");
        assert_eq!(s(updown_inverse(&p("RRRR"))), "RRRUD");
        assert_eq!(s(updown_inverse(&p("UDRR"))), "UDRUD");
        assert!(updown_inverse(&p("UUDD")).is_err());
        assert!(updown_inverse(&p("RRR")).is_err());
        assert!(updown_forward(&p("UDR")).is_err());
        assert!(updown_forward(&p("UUDD")).is_err());
    }

    #[test]
    fn ascent_examples() {
        assert_eq!(ascent_remove(&p("RUD"), 1).unwrap(), (p("R"), SlotRef::RightStep(0)));
        assert_eq!(ascent_remove(&p("UDR"), 0).unwrap(), (p("R"), SlotRef::Start));
        assert_eq!(ascent_remove(&p("UDUD"), 2).unwrap(), (p("UD"), SlotRef::DownStep(1)));
        assert_eq!(s(ascent_insert(&p("R"), SlotRef::RightStep(0))), "RUD");
        assert_eq!(s(ascent_insert(&p(""), SlotRef::Start)), "UD");
        assert_eq!(s(ascent_insert(&p("UD"), SlotRef::DownStep(1))), "UDUD");
    }

    #[test]
    fn ascent_errors() {
        // part of a 2-ascent
        assert!(ascent_remove(&p("UUDD"), 0).is_err());
        assert!(ascent_remove(&p("UUDD"), 1).is_err());
        // not an up step / out of range
        assert!(ascent_remove(&p("UDR"), 1).is_err());
        assert!(ascent_remove(&p("UDR"), 9).is_err());
        assert!(ascent_insert(&p("UD"), SlotRef::DownStep(0)).is_err());
        assert!(ascent_insert(&p("UD"), SlotRef::RightStep(1)).is_err());
        assert!(ascent_insert(&p("UD"), SlotRef::DownStep(5)).is_err());
    }

    #[test]
    fn pair_decomposition_examples() {
        assert_eq!(r_pair_decomposition(2).unwrap(), BigCount::from(2u32));
        assert_eq!(r_pair_decomposition(4).unwrap(), BigCount::from(10u32));
        assert!(r_pair_decomposition(5).is_err());
        let brute = Enumerator::default().totals(4).unwrap().rights;
        assert_eq!(r_pair_decomposition(4).unwrap(), brute);
    }

    #[test]
    fn slot_text_and_json() {
        for slot in [SlotRef::Start, SlotRef::DownStep(3), SlotRef::RightStep(0)] {
            assert_eq!(slot.to_string().parse::<SlotRef>().unwrap(), slot);
        }
        assert!("left:1".parse::<SlotRef>().is_err());
        assert!("down".parse::<SlotRef>().is_err());
        let rec = Bijection::AscentRemove { pos: 1 }.apply(&p("RUD")).unwrap();
        assert_eq!(
            rec.to_json(),
            r#"{"input":"RUD","output":"R","slot":{"kind":"RightStep","index":0}}"#
        );
        let rec = Bijection::Reflection.apply(&p("DDU")).unwrap();
        assert_eq!(rec.to_json(), r#"{"input":"DDU","output":"RUD","slot":null}"#);
        let rec = Bijection::AscentInsert { slot: SlotRef::Start }.apply(&p("")).unwrap();
        assert_eq!(
            rec.to_json(),
            r#"{"input":"","output":"UD","slot":{"kind":"Start","index":null}}"#
        );
    }
}

//! Singular links for the two finite type theories: clasp-labelled insertion
//! slots in a generator word, and ordered pairs of crossings in a diagram.
//! Extended invariants are alternating sums over all resolutions.

use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freeword::{FreewordError, GroupWord, SimpleCommutatorSpec};
use crate::stringlink::{CrossingEvent, EventList, GaussDiagram, LinkError, MuBarValue, MuIndex, Sign, StringLinkDiagram};

mod sweep;

pub use sweep::{
    clasp_labels, find_type_witness, label_classes, positive_right_normed_labels, reduced_words, sample_clasp, sample_dc, sweep_clasp, sweep_dc, type_check_clasp, type_check_dc, ClaspBudget, Counterexample, DcBudget, PairStrands,
    TypeReport,
};

/// Most singularities a link may carry; resolutions grow as `2^m`.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Word(#[from] FreewordError),
    #[error("slot position {position} past the end of a base word of length {len}")]
    SlotOutOfRange { position: usize, len: usize },
    #[error("label {0} uses a strand outside 1..={1}")]
    LabelOutOfRange(String, usize),
    #[error("degree {0} exceeds the limit of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("crossing position {0} is used twice")]
    RepeatedPosition(usize),
    #[error("crossing position {0} does not exist")]
    PositionOutOfRange(usize),
    #[error("pair {0} joins different strand pairs")]
    MixedPair(usize),
    #[error("resolutions fall in different linking classes")]
    IncoherentClass,
    #[error("resolutions disagree on the indeterminacy: {0} vs {1}")]
    IncoherentDelta(UBig, UBig),
}

/// One insertion slot: `label` goes in front of base letter `position`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClaspSlot {
    pub position: usize,
    pub label: SimpleCommutatorSpec,
}

/// A generator word with `m` labelled insertion slots. Slots sharing a
/// position are inserted in the order they are listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClaspSingularLink {
    base: GroupWord,
    num_strands: usize,
    slots: Vec<ClaspSlot>,
}

impl ClaspSingularLink {
    pub fn new(base: GroupWord, num_strands: usize, slots: Vec<ClaspSlot>) -> Result<Self, SingularError> {
        if slots.len() > MAX_DEGREE {
            return Err(SingularError::DegreeTooLarge(slots.len()));
        }
        EventList::compile(&base, num_strands)?;
        for s in &slots {
            if s.position > base.len() {
                return Err(SingularError::SlotOutOfRange { position: s.position, len: base.len() });
            }
            let w = s.label.expand()?;
            if EventList::compile(&w, num_strands).is_err() || s.label.target > num_strands {
                return Err(SingularError::LabelOutOfRange(s.label.to_string(), num_strands));
            }
        }
        Ok(ClaspSingularLink { base, num_strands, slots })
    }

    pub fn base(&self) -> &GroupWord {
        &self.base
    }

    pub fn slots(&self) -> &[ClaspSlot] {
        &self.slots
    }

    pub fn num_strands(&self) -> usize {
        self.num_strands
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    /// The word with the labels of the slots in `subset` (bit `t` for slot `t`) inserted.
    pub fn resolve_word(&self, subset: u64) -> GroupWord {
        let letters = self.base.letters();
        let mut out = Vec::new();
        for pos in 0..=letters.len() {
            for (t, s) in self.slots.iter().enumerate() {
                if s.position == pos && subset & (1 << t) != 0 {
                    out.extend_from_slice(s.label.expand().expect("validated label").letters());
                }
            }
            if pos < letters.len() {
                out.push(letters[pos]);
            }
        }
        GroupWord::reduce(out)
    }

    /// Event list of one resolution. Letters are compiled as written, with
    /// no free reduction across slot boundaries.
    pub fn resolve_clasp(&self, subset: u64) -> EventList {
        let letters = self.base.letters();
        let mut events = EventList::empty(self.num_strands);
        let compile = |w: &GroupWord| EventList::compile(w, self.num_strands).expect("validated word");
        for pos in 0..=letters.len() {
            for (t, s) in self.slots.iter().enumerate() {
                if s.position == pos && subset & (1 << t) != 0 {
                    events = events.concat(&compile(&s.label.expand().expect("validated label"))).expect("same strands");
                }
            }
            if pos < letters.len() {
                events = events.concat(&compile(&GroupWord::reduce([letters[pos]]))).expect("same strands");
            }
        }
        events
    }

    /// `Σ_T (-1)^{m-|T|} μ(resolve(T))` modulo the common `Δ`.
    pub fn extended_mu_bar_clasp(&self, idx: &MuIndex) -> Result<MuBarValue, SingularError> {
        let m = self.degree();
        let resolutions: Vec<EventList> = (0..1u64 << m).map(|t| self.resolve_clasp(t)).collect();
        alternating_mu_bar(&resolutions, idx, |t| (m - t.count_ones() as usize) % 2 == 1)
    }
}

/// Alternating sum of `μ` over resolutions, reduced modulo their shared `Δ`.
fn alternating_mu_bar<D: StringLinkDiagram>(resolutions: &[D], idx: &MuIndex, negative: impl Fn(u64) -> bool) -> Result<MuBarValue, SingularError> {
    let mut sum = IBig::ZERO;
    let mut delta: Option<UBig> = None;
    for (t, r) in resolutions.iter().enumerate() {
        let v = r.mu_bar(idx)?;
        match &delta {
            None => delta = Some(v.modulus.clone()),
            Some(d) if *d != v.modulus => return Err(SingularError::IncoherentDelta(d.clone(), v.modulus)),
            Some(_) => {}
        }
        let mu = r.mu(idx)?;
        if negative(t as u64) {
            sum -= mu;
        } else {
            sum += mu;
        }
    }
    Ok(MuBarValue::new(sum, delta.unwrap_or(UBig::ZERO)))
}

/// Diagrams whose crossings can be addressed by position and re-signed.
pub trait CrossingDiagram: StringLinkDiagram + Clone {
    fn crossing_count(&self) -> usize;
    fn crossing(&self, id: usize) -> CrossingEvent;
    fn with_sign(&self, id: usize, sign: Sign) -> Self;
}

impl CrossingDiagram for EventList {
    fn crossing_count(&self) -> usize {
        self.len()
    }

    fn crossing(&self, id: usize) -> CrossingEvent {
        self.events()[id]
    }

    fn with_sign(&self, id: usize, sign: Sign) -> Self {
        let mut events = self.events().to_vec();
        events[id].sign = sign;
        EventList::new(self.num_strands(), events).expect("signs do not affect validity")
    }
}

impl CrossingDiagram for GaussDiagram {
    fn crossing_count(&self) -> usize {
        self.crossing_list().len()
    }

    fn crossing(&self, id: usize) -> CrossingEvent {
        self.crossing_list()[id]
    }

    fn with_sign(&self, id: usize, sign: Sign) -> Self {
        let mut crossings = self.crossing_list().to_vec();
        crossings[id].sign = sign;
        let orders = (1..=self.num_strands()).map(|s| self.strand_order(s).to_vec()).collect();
        GaussDiagram::new(self.num_strands(), crossings, orders).expect("signs do not affect validity")
    }
}

/// A diagram with `m` ordered pairs of crossings whose signs are left open.
/// Choice bit 0 for a pair resolves it as `(+, -)`, bit 1 as `(-, +)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DCSingularLink<D = EventList> {
    base: D,
    pairs: Vec<(usize, usize)>,
}

impl<D: CrossingDiagram> DCSingularLink<D> {
    pub fn new(base: D, pairs: Vec<(usize, usize)>) -> Result<Self, SingularError> {
        if pairs.len() > MAX_DEGREE {
            return Err(SingularError::DegreeTooLarge(pairs.len()));
        }
        let mut used = std::collections::BTreeSet::new();
        for (n, &(a, b)) in pairs.iter().enumerate() {
            for p in [a, b] {
                if p >= base.crossing_count() {
                    return Err(SingularError::PositionOutOfRange(p));
                }
                if !used.insert(p) {
                    return Err(SingularError::RepeatedPosition(p));
                }
            }
            let (x, y) = (base.crossing(a), base.crossing(b));
            let key = |c: CrossingEvent| (c.under.min(c.over), c.under.max(c.over));
            if key(x) != key(y) {
                return Err(SingularError::MixedPair(n));
            }
        }
        let link = DCSingularLink { base, pairs };
        let reference = link.resolve_dc(0).linking_matrix()?;
        for c in 1..1u64 << link.degree() {
            if link.resolve_dc(c).linking_matrix()? != reference {
                return Err(SingularError::IncoherentClass);
            }
        }
        Ok(link)
    }

    pub fn base(&self) -> &D {
        &self.base
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn resolve_dc(&self, choice: u64) -> D {
        let mut d = self.base.clone();
        for (t, &(a, b)) in self.pairs.iter().enumerate() {
            let (sa, sb) = if choice & (1 << t) == 0 { (Sign::Plus, Sign::Minus) } else { (Sign::Minus, Sign::Plus) };
            d = d.with_sign(a, sa).with_sign(b, sb);
        }
        d
    }

    /// `Σ_c (-1)^{#(-,+)} μ(resolve(c))` modulo the common `Δ`.
    pub fn extended_mu_bar_dc(&self, idx: &MuIndex) -> Result<MuBarValue, SingularError> {
        let resolutions: Vec<D> = (0..1u64 << self.degree()).map(|c| self.resolve_dc(c)).collect();
        alternating_mu_bar(&resolutions, idx, |c| c.count_ones() % 2 == 1)
    }

    /// The same singular link with pair `t`'s two crossings swapped.
    pub fn swap_pair(&self, t: usize) -> Self {
        let mut out = self.clone();
        let (a, b) = out.pairs[t];
        out.pairs[t] = (b, a);
        out
    }
}

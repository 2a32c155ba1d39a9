//! String links as crossing-event lists, their longitudes, and the Milnor
//! invariants read off from them.
//!
//! Strands are numbered from 1. An event `(u, o, ε)` is a crossing where
//! strand `u` passes under strand `o` with sign `ε`; events are read bottom
//! to top. Each strand carries its current meridian `M_s` and a longitude
//! accumulator `Λ_s`, and an event does
//!
//! ```text
//! Λ_u <- Λ_u · M_o^ε
//! M_u <- M_o^ε · M_u · M_o^-ε
//! ```
//!
//! with everything held as truncated Magnus series.

use std::fmt;

use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freeword::{FreewordError, Generator, GroupWord, Letter};
use crate::magnus::{MagnusError, MagnusSeries, SeriesShape};

mod gauss;

pub use gauss::{GaussCrossing, GaussDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("strand {strand} out of range 1..={num_strands}")]
    StrandOutOfRange { strand: usize, num_strands: usize },
    #[error("strand {0} cannot cross itself")]
    SelfCrossing(usize),
    #[error("index sequence repeats strand {0}")]
    RepeatedIndex(usize),
    #[error("index sequence needs at least one prefix index")]
    EmptyPrefix,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("unclosable diagram: strand {a} passes under {b} with total sign {ab}, but {b} under {a} totals {ba}")]
    Unclosable { a: usize, b: usize, ab: i64, ba: i64 },
    #[error("generator {0} cannot be compiled to crossings")]
    NotPairGenerator(Generator),
    #[error("malformed Gauss diagram: {0}")]
    BadGauss(String),
    #[error("longitude iteration did not settle")]
    NoFixedPoint,
    #[error(transparent)]
    Word(#[from] FreewordError),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub under: usize,
    pub over: usize,
    pub sign: Sign,
}

impl CrossingEvent {
    pub fn new(under: usize, over: usize, sign: Sign) -> Self {
        CrossingEvent { under, over, sign }
    }

    pub fn flipped(self) -> Self {
        CrossingEvent { sign: self.sign.flipped(), ..self }
    }
}

impl fmt::Display for CrossingEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} under {}, {})", self.under, self.over, self.sign)
    }
}

fn check_strand(s: usize, k: usize) -> Result<(), LinkError> {
    if s == 0 || s > k {
        return Err(LinkError::StrandOutOfRange { strand: s, num_strands: k });
    }
    Ok(())
}

fn check_event(e: &CrossingEvent, k: usize) -> Result<(), LinkError> {
    check_strand(e.under, k)?;
    check_strand(e.over, k)?;
    if e.under == e.over {
        return Err(LinkError::SelfCrossing(e.under));
    }
    Ok(())
}

/// A string link on `num_strands` strands as an ordered list of crossings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventList {
    num_strands: usize,
    events: Vec<CrossingEvent>,
}

impl EventList {
    pub fn new(num_strands: usize, events: Vec<CrossingEvent>) -> Result<Self, LinkError> {
        for e in &events {
            check_event(e, num_strands)?;
        }
        Ok(EventList { num_strands, events })
    }

    pub fn empty(num_strands: usize) -> Self {
        EventList { num_strands, events: Vec::new() }
    }

    /// `x_ij^ε` becomes the clasp `(j under i, ε), (i under j, ε)`.
    pub fn compile(word: &GroupWord, num_strands: usize) -> Result<Self, LinkError> {
        let mut events = Vec::with_capacity(2 * word.len());
        for l in word.letters() {
            let Generator::Pair(i, j) = l.generator else {
                return Err(LinkError::NotPairGenerator(l.generator));
            };
            check_strand(j, num_strands)?;
            let sign = if l.is_inverse() { Sign::Minus } else { Sign::Plus };
            events.push(CrossingEvent::new(j, i, sign));
            events.push(CrossingEvent::new(i, j, sign));
        }
        Ok(EventList { num_strands, events })
    }

    pub fn events(&self) -> &[CrossingEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn concat(&self, other: &EventList) -> Result<EventList, LinkError> {
        if self.num_strands != other.num_strands {
            return Err(LinkError::StrandMismatch(self.num_strands, other.num_strands));
        }
        let events = self.events.iter().chain(&other.events).copied().collect();
        Ok(EventList { num_strands: self.num_strands, events })
    }

    /// `compile(by) · self · compile(by^-1)`.
    pub fn conjugate(&self, by: &GroupWord) -> Result<EventList, LinkError> {
        let k = self.num_strands;
        EventList::compile(by, k)?.concat(self)?.concat(&EventList::compile(&by.inverse(), k)?)
    }

    /// Exact longitude words in the meridians, with no truncation. Word
    /// length can grow exponentially in the number of events.
    pub fn longitude_words(&self) -> Vec<GroupWord> {
        let k = self.num_strands;
        let mut meridian: Vec<GroupWord> = (1..=k).map(|s| GroupWord::generator(Generator::Meridian(s))).collect();
        let mut longitude = vec![GroupWord::identity(); k];
        for e in &self.events {
            let (u, o) = (e.under - 1, e.over - 1);
            let m = meridian[o].pow(e.sign.value());
            longitude[u] = longitude[u].mul(&m);
            meridian[u] = meridian[u].conjugate_by(&m);
        }
        longitude
    }
}

impl fmt::Display for EventList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.num_strands)?;
        for e in &self.events {
            writeln!(f, "{} {} {}", e.under, e.over, e.sign)?;
        }
        Ok(())
    }
}

/// Meridian and longitude state for the event-by-event rule. Cloning a
/// state lets several event suffixes share one evaluated prefix.
/// Two states are equal exactly when every continuation acts on them alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeState {
    meridians: Vec<MagnusSeries>,
    meridian_inverses: Vec<MagnusSeries>,
    longitudes: Vec<MagnusSeries>,
}

impl LongitudeState {
    pub fn new(shape: SeriesShape) -> Result<Self, LinkError> {
        let k = shape.num_vars;
        let mut meridians = Vec::with_capacity(k);
        let mut meridian_inverses = Vec::with_capacity(k);
        for s in 1..=k {
            meridians.push(MagnusSeries::generator(shape, s, false)?);
            meridian_inverses.push(MagnusSeries::generator(shape, s, true)?);
        }
        let longitudes = vec![MagnusSeries::one(shape)?; k];
        Ok(LongitudeState { meridians, meridian_inverses, longitudes })
    }

    /// Applies one event; strands are assumed already validated.
    pub fn apply(&mut self, e: &CrossingEvent) {
        let (u, o) = (e.under - 1, e.over - 1);
        let (m, mi) = match e.sign {
            Sign::Plus => (&self.meridians[o], &self.meridian_inverses[o]),
            Sign::Minus => (&self.meridian_inverses[o], &self.meridians[o]),
        };
        let lu = self.longitudes[u].mul_same(m);
        let mu = m.mul_same(&self.meridians[u]).mul_same(mi);
        let mui = m.mul_same(&self.meridian_inverses[u]).mul_same(mi);
        self.longitudes[u] = lu;
        self.meridians[u] = mu;
        self.meridian_inverses[u] = mui;
    }

    pub fn longitudes(&self) -> &[MagnusSeries] {
        &self.longitudes
    }

    pub fn meridians(&self) -> &[MagnusSeries] {
        &self.meridians
    }

    pub fn into_longitudes(self) -> Vec<MagnusSeries> {
        self.longitudes
    }
}

/// A validated Milnor index `(i_1 ... i_n, j)` with all indices distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuIndex {
    prefix: Vec<usize>,
    target: usize,
}

impl MuIndex {
    pub fn new(prefix: Vec<usize>, target: usize) -> Result<Self, LinkError> {
        if prefix.is_empty() {
            return Err(LinkError::EmptyPrefix);
        }
        let mut seen = std::collections::BTreeSet::new();
        for &i in prefix.iter().chain([&target]) {
            if i == 0 {
                return Err(LinkError::StrandOutOfRange { strand: 0, num_strands: 0 });
            }
            if !seen.insert(i) {
                return Err(LinkError::RepeatedIndex(i));
            }
        }
        Ok(MuIndex { prefix, target })
    }

    /// Splits a full sequence `i_1 ... i_n j` into prefix and target.
    pub fn from_sequence(seq: &[usize]) -> Result<Self, LinkError> {
        match seq.split_last() {
            Some((&t, p)) => MuIndex::new(p.to_vec(), t),
            None => Err(LinkError::EmptyPrefix),
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Number of indices including the target.
    pub fn len(&self) -> usize {
        self.prefix.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sequence(&self) -> Vec<usize> {
        self.prefix.iter().copied().chain([self.target]).collect()
    }

    pub fn check(&self, num_strands: usize) -> Result<(), LinkError> {
        for i in self.sequence() {
            check_strand(i, num_strands)?;
        }
        Ok(())
    }
}

impl fmt::Display for MuIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.prefix.iter().map(|i| i.to_string()).collect();
        write!(f, "{}->{}", p.join(","), self.target)
    }
}

/// A Milnor invariant modulo its indeterminacy. A zero modulus means the
/// value is an honest integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MuBarValue {
    pub residue: IBig,
    pub modulus: UBig,
}

impl MuBarValue {
    pub fn new(value: IBig, modulus: UBig) -> Self {
        let residue = if modulus == UBig::ZERO {
            value
        } else {
            let m = IBig::from(modulus.clone());
            let r = value % &m;
            if r < IBig::ZERO {
                r + m
            } else {
                r
            }
        };
        MuBarValue { residue, modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.residue == IBig::ZERO
    }
}

impl fmt::Display for MuBarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == UBig::ZERO {
            write!(f, "{}", self.residue)
        } else {
            write!(f, "{} mod {}", self.residue, self.modulus)
        }
    }
}

pub(crate) fn gcd(a: &UBig, b: &UBig) -> UBig {
    use dashu_int::ops::Gcd;
    if *a == UBig::ZERO {
        return b.clone();
    }
    if *b == UBig::ZERO {
        return a.clone();
    }
    a.gcd(b)
}

fn magnitude(x: &IBig) -> UBig {
    use dashu_int::ops::UnsignedAbs;
    x.unsigned_abs()
}

/// Anything with per-strand longitudes: sequential event lists and Gauss
/// diagrams with independent crossing orders along each strand.
pub trait StringLinkDiagram: Sized {
    fn num_strands(&self) -> usize;

    /// Longitude series `Λ_1 .. Λ_k`, truncated at degree `d`.
    fn longitudes(&self, d: usize, squarefree: bool) -> Result<Vec<MagnusSeries>, LinkError>;

    /// The sub-link on `strands`, relabelled so that `strands[t]` becomes `t + 1`.
    fn restrict(&self, strands: &[usize]) -> Self;

    /// Every crossing as `(under, over, sign)`, in no particular order.
    fn crossings(&self) -> Vec<CrossingEvent>;

    /// `counts[j][i]`: signed number of crossings with `j + 1` under `i + 1`.
    fn under_counts(&self) -> Vec<Vec<i64>> {
        let k = self.num_strands();
        let mut c = vec![vec![0i64; k]; k];
        for e in self.crossings() {
            c[e.under - 1][e.over - 1] += e.sign.value();
        }
        c
    }

    /// Symmetric linking matrix; fails when the two under-count conventions
    /// disagree for some pair.
    fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, LinkError> {
        let c = self.under_counts();
        let k = self.num_strands();
        for a in 0..k {
            for b in a + 1..k {
                if c[a][b] != c[b][a] {
                    return Err(LinkError::Unclosable { a: a + 1, b: b + 1, ab: c[a][b], ba: c[b][a] });
                }
            }
        }
        let mut lk = c;
        for (a, row) in lk.iter_mut().enumerate() {
            row[a] = 0;
        }
        Ok(lk)
    }

    /// `μ(i_1 ... i_n, j)` of the string link itself.
    fn mu(&self, idx: &MuIndex) -> Result<IBig, LinkError> {
        idx.check(self.num_strands())?;
        let sub = self.restrict(&idx.sequence());
        let n = idx.prefix().len();
        let lon = sub.longitudes(n, true)?;
        let mono: Vec<usize> = (1..=n).collect();
        Ok(lon[n].coefficient(&mono)?)
    }

    /// `Δ` for `idx`: the gcd of all `μ` whose index is a cyclic permutation
    /// of a proper subsequence of length at least 2.
    fn delta(&self, idx: &MuIndex) -> Result<UBig, LinkError> {
        idx.check(self.num_strands())?;
        let sub = self.restrict(&idx.sequence());
        sub.linking_matrix()?;
        let n = idx.len();
        if n <= 2 {
            return Ok(UBig::ZERO);
        }
        let lon = sub.longitudes(n - 2, true)?;
        delta_from(&lon, n)
    }

    fn mu_bar(&self, idx: &MuIndex) -> Result<MuBarValue, LinkError> {
        idx.check(self.num_strands())?;
        let sub = self.restrict(&idx.sequence());
        sub.linking_matrix()?;
        let n = idx.len();
        let lon = sub.longitudes(n - 1, true)?;
        let mono: Vec<usize> = (1..n).collect();
        let value = lon[n - 1].coefficient(&mono)?;
        let delta = if n <= 2 { UBig::ZERO } else { delta_from(&lon, n)? };
        Ok(MuBarValue::new(value, delta))
    }
}

/// Δ for the index `1 2 ... n` read from longitudes of the relabelled sub-link.
fn delta_from(lon: &[MagnusSeries], n: usize) -> Result<UBig, LinkError> {
    let mut g = UBig::ZERO;
    for mask in 1u32..(1 << n) - 1 {
        let sub: Vec<usize> = (0..n).filter(|&t| mask & (1 << t) != 0).map(|t| t + 1).collect();
        if sub.len() < 2 {
            continue;
        }
        for r in 0..sub.len() {
            let rot: Vec<usize> = sub[r..].iter().chain(&sub[..r]).copied().collect();
            let (&target, prefix) = rot.split_last().expect("nonempty");
            let v = lon[target - 1].coefficient(prefix)?;
            g = gcd(&g, &magnitude(&v));
            if g == UBig::ONE {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

impl StringLinkDiagram for EventList {
    fn num_strands(&self) -> usize {
        self.num_strands
    }

    fn longitudes(&self, d: usize, squarefree: bool) -> Result<Vec<MagnusSeries>, LinkError> {
        let mut state = LongitudeState::new(SeriesShape::new(self.num_strands, d, squarefree))?;
        for e in &self.events {
            state.apply(e);
        }
        Ok(state.into_longitudes())
    }

    fn restrict(&self, strands: &[usize]) -> Self {
        let label = |s: usize| strands.iter().position(|&t| t == s).map(|p| p + 1);
        let events = self
            .events
            .iter()
            .filter_map(|e| Some(CrossingEvent::new(label(e.under)?, label(e.over)?, e.sign)))
            .collect();
        EventList { num_strands: strands.len(), events }
    }

    fn crossings(&self) -> Vec<CrossingEvent> {
        self.events.clone()
    }
}

/// Builds `x_ij^ε` letters; convenience for tests and callers.
pub fn pair_letter(i: usize, j: usize, inverse: bool) -> Result<Letter, LinkError> {
    Ok(Letter::new(Generator::pair(i, j)?, inverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::expand_word;

    fn x(i: usize, j: usize) -> GroupWord {
        GroupWord::generator(Generator::pair(i, j).unwrap())
    }
    fn comm(a: &GroupWord, b: &GroupWord) -> GroupWord {
        GroupWord::commutator(a, b)
    }
    fn idx(p: &[usize], t: usize) -> MuIndex {
        MuIndex::new(p.to_vec(), t).unwrap()
    }
    fn int(v: i64) -> IBig {
        IBig::from(v)
    }

    #[test]
    fn compile_examples() {
        let l = EventList::compile(&x(1, 3), 3).unwrap();
        assert_eq!(l.events(), &[CrossingEvent::new(3, 1, Sign::Plus), CrossingEvent::new(1, 3, Sign::Plus)]);
        assert_eq!(EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap().len(), 8);
        assert!(EventList::compile(&GroupWord::identity(), 3).unwrap().is_empty());
        assert!(matches!(EventList::compile(&x(1, 4), 3), Err(LinkError::StrandOutOfRange { .. })));
        let m = GroupWord::generator(Generator::Meridian(1));
        assert!(matches!(EventList::compile(&m, 3), Err(LinkError::NotPairGenerator(_))));
    }

    #[test]
    fn event_validation() {
        assert_eq!(EventList::new(3, vec![CrossingEvent::new(2, 2, Sign::Plus)]), Err(LinkError::SelfCrossing(2)));
        assert!(EventList::new(2, vec![CrossingEvent::new(3, 1, Sign::Plus)]).is_err());
    }

    #[test]
    fn longitudes_of_one_clasp() {
        let l = EventList::compile(&x(1, 3), 3).unwrap();
        let lon = l.longitudes(3, false).unwrap();
        assert_eq!(lon[2].to_string(), "1 + K1");
        // Strand 1 picks up m3 conjugated by m1: 1 + K3 + K1K3 - K3K1 + ...
        assert_eq!(lon[0].coefficient(&[3]).unwrap(), int(1));
        assert_eq!(lon[0].coefficient(&[1, 3]).unwrap(), int(1));
        assert_eq!(lon[0].coefficient(&[3, 1]).unwrap(), int(-1));
        assert!(lon[1].is_one());
        for s in EventList::empty(3).longitudes(2, true).unwrap() {
            assert!(s.is_one());
        }
    }

    #[test]
    fn longitude_words_agree_with_series() {
        let w = comm(&x(1, 3), &x(2, 3)).mul(&x(1, 2)).mul(&comm(&x(2, 3).inverse(), &x(1, 2)));
        let l = EventList::compile(&w, 3).unwrap();
        let words = l.longitude_words();
        let series = l.longitudes(4, false).unwrap();
        for (w, s) in words.iter().zip(&series) {
            assert_eq!(&expand_word(w, s.shape()).unwrap(), s);
        }
    }

    #[test]
    fn mu_examples() {
        let l = EventList::compile(&x(1, 3), 3).unwrap();
        assert_eq!(l.mu(&idx(&[1], 3)).unwrap(), int(1));
        let b = EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap();
        assert_eq!(b.mu(&idx(&[1, 2], 3)).unwrap(), int(1));
        let lon = b.longitudes(2, true).unwrap();
        assert_eq!(lon[2].coefficient(&[1, 2]).unwrap(), int(1));
        let c = EventList::compile(&comm(&x(1, 4), &comm(&x(2, 4), &x(3, 4))), 4).unwrap();
        assert_eq!(c.mu(&idx(&[1, 2, 3], 4)).unwrap(), int(1));
    }

    #[test]
    fn index_validation() {
        assert_eq!(MuIndex::new(vec![1, 1], 3), Err(LinkError::RepeatedIndex(1)));
        assert_eq!(MuIndex::new(vec![1, 3], 3), Err(LinkError::RepeatedIndex(3)));
        assert_eq!(MuIndex::new(vec![], 3), Err(LinkError::EmptyPrefix));
        let l = EventList::empty(3);
        assert!(matches!(l.mu(&idx(&[1, 2], 4)), Err(LinkError::StrandOutOfRange { .. })));
    }

    #[test]
    fn linking_matrices() {
        let l = EventList::compile(&x(1, 3).pow(2), 3).unwrap();
        let lk = l.linking_matrix().unwrap();
        assert_eq!(lk, vec![vec![0, 0, 2], vec![0, 0, 0], vec![2, 0, 0]]);
        let b = EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap();
        assert!(b.linking_matrix().unwrap().iter().flatten().all(|&v| v == 0));
        assert!(EventList::empty(2).linking_matrix().unwrap().iter().flatten().all(|&v| v == 0));
        let raw = EventList::new(2, vec![CrossingEvent::new(1, 2, Sign::Plus)]).unwrap();
        assert!(matches!(raw.linking_matrix(), Err(LinkError::Unclosable { .. })));
        assert!(raw.mu_bar(&idx(&[1], 2)).is_err());
        assert_eq!(raw.mu(&idx(&[2], 1)).unwrap(), int(1));
    }

    #[test]
    fn delta_examples() {
        let b = EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap();
        assert_eq!(b.delta(&idx(&[1, 2], 3)).unwrap(), UBig::ZERO);
        let w = x(1, 2).pow(2).mul(&x(1, 3).pow(4)).mul(&x(2, 3).pow(6));
        let l = EventList::compile(&w, 3).unwrap();
        assert_eq!(l.delta(&idx(&[1, 2], 3)).unwrap(), UBig::from(2u8));
        let l = EventList::compile(&x(1, 2).mul(&x(3, 4)), 4).unwrap();
        assert_eq!(l.delta(&idx(&[1, 2, 3], 4)).unwrap(), UBig::ONE);
    }

    #[test]
    fn mu_bar_examples() {
        let b = EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap();
        let v = b.mu_bar(&idx(&[1, 2], 3)).unwrap();
        assert_eq!((v.residue.clone(), v.modulus.clone()), (int(1), UBig::ZERO));
        assert_eq!(v.to_string(), "1");
        assert!(EventList::empty(3).mu_bar(&idx(&[1, 2], 3)).unwrap().is_zero());
        let l = EventList::compile(&x(1, 2).mul(&comm(&x(1, 3), &x(2, 3))), 3).unwrap();
        let v = l.mu_bar(&idx(&[1, 2], 3)).unwrap();
        assert_eq!(v.modulus, UBig::ONE);
        assert!(v.is_zero());
        assert_eq!(MuBarValue::new(int(-7), UBig::from(3u8)).residue, int(2));
    }

    #[test]
    fn concat_and_conjugate() {
        let a = EventList::compile(&x(1, 3), 3).unwrap();
        let b = EventList::compile(&x(2, 3), 3).unwrap();
        assert_eq!(a.concat(&b).unwrap().mu(&idx(&[1, 2], 3)).unwrap(), int(1));
        assert_eq!(a.concat(&EventList::empty(3)).unwrap(), a);
        let inv = EventList::compile(&x(1, 3).inverse(), 3).unwrap();
        let t = a.concat(&inv).unwrap();
        for (p, q) in [(vec![1], 3), (vec![3], 1), (vec![1, 2], 3), (vec![2, 1], 3)] {
            assert_eq!(t.mu(&idx(&p, q)).unwrap(), int(0));
        }
        assert!(matches!(a.concat(&EventList::empty(4)), Err(LinkError::StrandMismatch(3, 4))));
        assert_eq!(a.conjugate(&GroupWord::identity()).unwrap(), a);
        let bor = EventList::compile(&comm(&x(1, 3), &x(2, 3)), 3).unwrap();
        let c = bor.conjugate(&x(1, 2)).unwrap();
        assert_eq!(c.mu_bar(&idx(&[1, 2], 3)).unwrap(), bor.mu_bar(&idx(&[1, 2], 3)).unwrap());
        let e = EventList::empty(3).conjugate(&comm(&x(1, 2), &x(2, 3))).unwrap();
        assert_eq!(e.mu(&idx(&[1, 2], 3)).unwrap(), int(0));
    }

    #[test]
    fn restriction_relabels() {
        let l = EventList::compile(&comm(&x(2, 4), &x(3, 4)).mul(&x(1, 2)), 4).unwrap();
        let r = l.restrict(&[2, 3, 4]);
        assert_eq!(r.num_strands(), 3);
        assert_eq!(r.mu(&idx(&[1, 2], 3)).unwrap(), int(1));
    }
}

//! Exhaustive sweeps over singular links inside explicit budgets.
//!
//! Every resolution of a singular link is tracked at once: a sweep keeps
//! `2^j` longitude states (bit `t` of the index says how singularity `t` was
//! resolved) and walks the base diagram left to right, so shared prefixes are
//! evaluated once.

use std::collections::BTreeSet;

use dashu_int::IBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ClaspSingularLink, ClaspSlot, DCSingularLink, SingularError, MAX_DEGREE};
use crate::freeword::{Generator, GroupWord, Letter, Side, SimpleCommutatorSpec};
use crate::magnus::{MagnusSeries, SeriesShape};
use crate::stringlink::{CrossingEvent, EventList, LongitudeState, MuBarValue, MuIndex, Sign, StringLinkDiagram};

/// A singular link on which the extended invariant did not vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    Clasp { base: String, slots: Vec<(usize, String)>, value: String },
    Dc { events: Vec<(usize, usize, i64)>, pairs: Vec<(usize, usize)>, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub theory: String,
    pub index: String,
    pub degree: usize,
    pub checked: u64,
    pub all_zero: bool,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaspBudget {
    pub num_strands: usize,
    pub max_base_len: usize,
    pub labels: Vec<SimpleCommutatorSpec>,
    pub max_counterexamples: usize,
}

/// Which strands the marked pairs may join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStrands {
    /// Every pair on any two strands, either one under.
    Any,
    /// All pairs between the same two strands.
    SameComponents,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcBudget {
    pub num_strands: usize,
    pub max_unmarked: usize,
    pub pair_strands: PairStrands,
    pub max_counterexamples: usize,
}

fn shape_for(idx: &MuIndex, k: usize) -> SeriesShape {
    SeriesShape::new(k, idx.prefix().len(), true)
}

fn alternating(states: &[LongitudeState], idx: &MuIndex, negative: impl Fn(usize) -> bool) -> IBig {
    let target = idx.target() - 1;
    let mut sum = IBig::ZERO;
    for (t, s) in states.iter().enumerate() {
        let c = s.longitudes()[target].coefficient(idx.prefix()).expect("index checked against shape");
        if negative(t) {
            sum -= c;
        } else {
            sum += c;
        }
    }
    sum
}

/// Every freely reduced word of length `<= max_len` in the `x_ij` of `k` strands.
pub fn reduced_words(k: usize, max_len: usize) -> Vec<GroupWord> {
    let mut letters = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            let g = Generator::Pair(i, j);
            letters.push(Letter::new(g, false));
            letters.push(Letter::new(g, true));
        }
    }
    let mut out = vec![GroupWord::identity()];
    let mut frontier = vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.letters().last() == Some(&l.inverted()) {
                    continue;
                }
                next.push(GroupWord::reduce(w.letters().iter().copied().chain([l])));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// All simple n-commutator labels on `components` (n + 1 strands): every
/// target, source order, generator sign, side and inversion, deduplicated by
/// the word they expand to.
pub fn clasp_labels(components: &[usize]) -> Vec<SimpleCommutatorSpec> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &target in components {
        let sources: Vec<usize> = components.iter().copied().filter(|&c| c != target).collect();
        for order in permutations(&sources) {
            let (&first, rest) = order.split_first().expect("at least one source");
            let mut partial = vec![SimpleCommutatorSpec::generator(target, first, false), SimpleCommutatorSpec::generator(target, first, true)];
            for &s in rest {
                let mut next = Vec::new();
                for p in &partial {
                    for inverse in [false, true] {
                        for side in [Side::Left, Side::Right] {
                            let w = p.clone().wrap(s, inverse, side);
                            next.push(w.clone());
                            next.push(w.inverted());
                        }
                    }
                }
                partial = next;
            }
            for spec in partial {
                let word = spec.expand().expect("valid by construction").to_string();
                if seen.insert(word) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// `[a_1,[a_2,...,[a_{n-1},a_n]]]` over every ordering of `sources`, all positive.
pub fn positive_right_normed_labels(target: usize, sources: &[usize]) -> Vec<SimpleCommutatorSpec> {
    permutations(sources)
        .into_iter()
        .map(|p| SimpleCommutatorSpec::right_normed(target, &p).expect("valid by construction"))
        .collect()
}

fn compile_word(w: &GroupWord, k: usize) -> Result<Vec<CrossingEvent>, SingularError> {
    Ok(EventList::compile(w, k)?.events().to_vec())
}

struct ClaspSweep<'a, F> {
    idx: &'a MuIndex,
    degree: usize,
    labels: Vec<Vec<CrossingEvent>>,
    letters: Vec<Vec<CrossingEvent>>,
    slots: Vec<(usize, usize)>,
    visit: F,
    stop: bool,
}

impl<F: FnMut(&[(usize, usize)], IBig) -> bool> ClaspSweep<'_, F> {
    fn run(&mut self, states: Vec<LongitudeState>, pos: usize) {
        if self.stop {
            return;
        }
        let j = self.slots.len();
        if j < self.degree {
            for li in 0..self.labels.len() {
                let mut next = states.clone();
                for s in &states {
                    let mut s = s.clone();
                    for e in &self.labels[li] {
                        s.apply(e);
                    }
                    next.push(s);
                }
                self.slots.push((pos, li));
                self.run(next, pos);
                self.slots.pop();
                if self.stop {
                    return;
                }
            }
        }
        if pos < self.letters.len() {
            let mut states = states;
            for s in &mut states {
                for e in &self.letters[pos] {
                    s.apply(e);
                }
            }
            self.run(states, pos + 1);
        } else if j == self.degree {
            let m = self.degree;
            let v = alternating(&states, self.idx, |t| (m - t.count_ones() as usize) % 2 == 1);
            if !(self.visit)(&self.slots, v) {
                self.stop = true;
            }
        }
    }
}

/// Groups labels whose insertion acts identically on every longitude state.
///
/// Starting from the identity state, a label ends at longitudes `L_u` and
/// meridians `c_u`, each the expansion of a word in the meridians. From any
/// other state the label acts by substituting that state's meridians into
/// those words. Substitution is a ring map on the truncation, and in
/// squarefree mode each meridian minus one has every monomial containing its
/// own variable, so it also respects the squarefree quotient. Equal end
/// states therefore mean equal action everywhere.
pub fn label_classes(labels: &[Vec<CrossingEvent>], shape: SeriesShape) -> Result<Vec<(usize, u64)>, SingularError> {
    let root = LongitudeState::new(shape)?;
    let mut seen: Vec<LongitudeState> = Vec::new();
    let mut classes: Vec<(usize, u64)> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let mut s = root.clone();
        for e in l {
            s.apply(e);
        }
        match seen.iter().position(|t| *t == s) {
            Some(c) => classes[c].1 += 1,
            None => {
                seen.push(s);
                classes.push((i, 1));
            }
        }
    }
    Ok(classes)
}

/// Calls `visit(base, slots, exact extended μ)` once per class of clasp
/// singular links in the budget; `slots` holds `(position, label index)` with
/// the first label of each class standing in for the rest. Returns the number
/// of singular links covered. Stops early when `visit` returns false.
pub fn sweep_clasp<F>(idx: &MuIndex, degree: usize, budget: &ClaspBudget, visit: F) -> Result<u64, SingularError>
where
    F: FnMut(&GroupWord, &[(usize, usize)], IBig) -> bool,
{
    sweep_clasp_with(idx, degree, budget, true, visit)
}

fn sweep_clasp_with<F>(idx: &MuIndex, degree: usize, budget: &ClaspBudget, fast: bool, mut visit: F) -> Result<u64, SingularError>
where
    F: FnMut(&GroupWord, &[(usize, usize)], IBig) -> bool,
{
    let k = budget.num_strands;
    idx.check(k)?;
    if degree > MAX_DEGREE {
        return Err(SingularError::DegreeTooLarge(degree));
    }
    let shape = shape_for(idx, k);
    let compiled = budget.labels.iter().map(|l| compile_word(&l.expand()?, k)).collect::<Result<Vec<_>, _>>()?;
    let classes = label_classes(&compiled, shape)?;
    let labels: Vec<Vec<CrossingEvent>> = classes.iter().map(|&(i, _)| compiled[i].clone()).collect();
    let root = LongitudeState::new(shape)?;
    let multipliers = if fast { multiplier_parts(&labels, &root, idx)? } else { None };
    let mut count = 0u64;
    for base in reduced_words(k, budget.max_base_len) {
        let letters = base.letters().iter().map(|&l| compile_word(&GroupWord::reduce([l]), k)).collect::<Result<Vec<_>, _>>()?;
        let mut stopped = false;
        let mut rep: Vec<(usize, usize)> = Vec::with_capacity(degree);
        let mut counted = |slots: &[(usize, usize)], v: IBig| {
            count += slots.iter().map(|&(_, c)| classes[c].1).product::<u64>();
            rep.clear();
            rep.extend(slots.iter().map(|&(p, c)| (p, classes[c].0)));
            let go = visit(&base, &rep, v);
            stopped |= !go;
            go
        };
        match &multipliers {
            Some(parts) => {
                let mut sweep = MultiplierSweep::new(idx, degree, parts, &root, &letters, &mut counted)?;
                sweep.run(MagnusSeries::one(shape).map_err(crate::stringlink::LinkError::from)?, 0);
            }
            None => {
                let mut sweep = ClaspSweep { idx, degree, labels: labels.clone(), letters, slots: Vec::new(), visit: &mut counted, stop: false };
                sweep.run(vec![root.clone()], 0);
            }
        }
        if stopped {
            break;
        }
    }
    Ok(count)
}

/// When every label leaves the meridians alone and multiplies the target
/// longitude by a series whose terms free of the target variable start at the
/// truncation degree, inserting it anywhere multiplies the target longitude
/// by that constant as far as the target monomial can see: substituting
/// meridians into top-degree terms only sees their leading `K_i`, and terms
/// containing the target variable stay in the ideal it generates, which never
/// reaches a monomial without it. Returns each label's part free of the
/// target variable, minus one, in that case.
fn multiplier_parts(labels: &[Vec<CrossingEvent>], root: &LongitudeState, idx: &MuIndex) -> Result<Option<Vec<MagnusSeries>>, SingularError> {
    let d = idx.prefix().len();
    let t = idx.target();
    let shape = root.longitudes()[0].shape();
    let mut parts = Vec::with_capacity(labels.len());
    for l in labels {
        let mut s = root.clone();
        for e in l {
            s.apply(e);
        }
        if s.meridians() != root.meridians() {
            return Ok(None);
        }
        let terms = s.longitudes()[t - 1].terms().into_iter().filter(|(m, _)| !m.is_empty() && !m.contains(&t));
        let part = MagnusSeries::from_terms(shape, terms).map_err(crate::stringlink::LinkError::from)?;
        if part.min_degree().is_some_and(|g| g < d) {
            return Ok(None);
        }
        parts.push(part);
    }
    Ok(Some(parts))
}

/// Clasp sweep for multiplier labels. Expanding the alternating sum over
/// resolutions of `P_0 (1 + D_1) Q_1 ... (1 + D_m) Q_m` leaves the single
/// product `P_0 D_1 Q_1 ... D_m Q_m`, so one series per branch suffices, and
/// the last slot is read off by splitting the target monomial.
struct MultiplierSweep<'a, F> {
    degree: usize,
    parts: &'a [MagnusSeries],
    /// Target longitude gained across each base letter.
    steps: Vec<MagnusSeries>,
    /// Target longitude gained from each position to the end.
    suffix: Vec<MagnusSeries>,
    monomial: Vec<usize>,
    /// Nonzero `pieces` `(i, j, c)` of each part, for reading off the last slot.
    part_pieces: Vec<Vec<(usize, usize, IBig)>>,
    slots: Vec<(usize, usize)>,
    visit: F,
    stop: bool,
}

impl<'a, F: FnMut(&[(usize, usize)], IBig) -> bool> MultiplierSweep<'a, F> {
    fn new(idx: &MuIndex, degree: usize, parts: &'a [MagnusSeries], root: &LongitudeState, letters: &[Vec<CrossingEvent>], visit: F) -> Result<Self, SingularError> {
        let t = idx.target() - 1;
        let mut state = root.clone();
        let mut lam = vec![state.longitudes()[t].clone()];
        for l in letters {
            for e in l {
                state.apply(e);
            }
            lam.push(state.longitudes()[t].clone());
        }
        let inv = |x: &MagnusSeries| x.inverse().map_err(crate::stringlink::LinkError::from);
        let mut steps = Vec::with_capacity(letters.len());
        let mut suffix = Vec::with_capacity(letters.len() + 1);
        let last = lam.last().expect("nonempty");
        for p in 0..=letters.len() {
            let i = inv(&lam[p])?;
            if p < letters.len() {
                steps.push(i.mul_same(&lam[p + 1]));
            }
            suffix.push(i.mul_same(last));
        }
        let mut sweep =
            MultiplierSweep { degree, parts, steps, suffix, monomial: idx.prefix().to_vec(), part_pieces: Vec::new(), slots: Vec::new(), visit, stop: false };
        sweep.part_pieces = parts
            .iter()
            .map(|p| {
                let pieces = sweep.pieces(p);
                let mut nonzero = Vec::new();
                for (i, row) in pieces.into_iter().enumerate() {
                    for (j, c) in row.into_iter().enumerate() {
                        if j > i && c != IBig::ZERO {
                            nonzero.push((i, j, c));
                        }
                    }
                }
                nonzero
            })
            .collect();
        Ok(sweep)
    }

    fn coefficient(x: &MagnusSeries, m: &[usize]) -> IBig {
        x.coefficient(m).expect("monomial fits the shape")
    }

    /// Coefficients of every contiguous piece `m[i..j]` of the target monomial.
    fn pieces(&self, x: &MagnusSeries) -> Vec<Vec<IBig>> {
        let m = &self.monomial;
        (0..=m.len()).map(|i| (0..=m.len()).map(|j| if i <= j { Self::coefficient(x, &m[i..j]) } else { IBig::ZERO }).collect()).collect()
    }
    fn run(&mut self, r: MagnusSeries, pos: usize) {
        let j = self.slots.len();
        if self.degree == 0 {
            let v = Self::coefficient(&r.mul_same(&self.suffix[0]), &self.monomial);
            self.stop = !(self.visit)(&[], v);
            return;
        }
        let mut x = r;
        for p in pos..self.suffix.len() {
            // Coefficient of the target monomial in x · part · suffix, over
            // every split of the monomial into three pieces.
            let last = (j + 1 == self.degree).then(|| {
                let m = self.monomial.len();
                let xs: Vec<IBig> = (0..=m).map(|i| Self::coefficient(&x, &self.monomial[..i])).collect();
                let ss: Vec<IBig> = (0..=m).map(|i| Self::coefficient(&self.suffix[p], &self.monomial[i..])).collect();
                (xs, ss)
            });
            for c in 0..self.parts.len() {
                self.slots.push((p, c));
                if let Some((xs, ss)) = &last {
                    let mut v = IBig::ZERO;
                    for (i, jj, pc) in &self.part_pieces[c] {
                        v += &xs[*i] * pc * &ss[*jj];
                    }
                    self.stop = !(self.visit)(&self.slots, v);
                } else {
                    let next = x.mul_same(&self.parts[c]);
                    self.run(next, p);
                }
                self.slots.pop();
                if self.stop {
                    return;
                }
            }
            if p < self.steps.len() {
                x = x.mul_same(&self.steps[p]);
            }
        }
    }
}

/// Checks that the extended invariant vanishes (modulo `Δ`) on every clasp
/// singular link of the given degree within the budget.
pub fn type_check_clasp(idx: &MuIndex, degree: usize, budget: &ClaspBudget) -> Result<TypeReport, SingularError> {
    let k = budget.num_strands;
    let mut counterexamples = Vec::new();
    let mut nonzero = 0u64;
    let mut error = None;
    let checked = sweep_clasp(idx, degree, budget, |base, slots, v| {
        if v == IBig::ZERO {
            return true;
        }
        let link = ClaspSingularLink::new(
            base.clone(),
            k,
            slots.iter().map(|&(p, l)| ClaspSlot { position: p, label: budget.labels[l].clone() }).collect(),
        );
        let value = link.and_then(|s| Ok(MuBarValue::new(v, s.resolve_clasp(0).delta(idx)?)));
        match value {
            Ok(value) if value.is_zero() => {}
            Ok(value) => {
                nonzero += 1;
                if counterexamples.len() < budget.max_counterexamples {
                    counterexamples.push(Counterexample::Clasp {
                        base: base.to_string(),
                        slots: slots.iter().map(|&(p, l)| (p, budget.labels[l].to_string())).collect(),
                        value: value.to_string(),
                    });
                }
            }
            Err(e) => {
                error = Some(e);
                return false;
            }
        }
        true
    })?;
    if let Some(e) = error {
        return Err(e);
    }
    Ok(TypeReport {
        theory: format!("clasp:{}", idx.prefix().len()),
        index: idx.to_string(),
        degree,
        checked,
        all_zero: nonzero == 0,
        counterexamples,
    })
}

/// A marked crossing: pair, chord (0 is resolved `+` by choice bit 0).
#[derive(Clone, Copy)]
struct Marked {
    pair: usize,
    chord: usize,
    under: usize,
    over: usize,
}

struct DcSweep<'a, F> {
    idx: &'a MuIndex,
    k: usize,
    degree: usize,
    max_unmarked: usize,
    unmarked_types: Vec<(usize, usize)>,
    marked: Vec<Marked>,
    events: Vec<(CrossingEvent, Option<usize>)>,
    counts: Vec<Vec<i64>>,
    visit: F,
    stop: bool,
}

impl<F: FnMut(&[(CrossingEvent, Option<usize>)], IBig) -> bool> DcSweep<'_, F> {
    fn imbalance(&self) -> i64 {
        let mut total = 0;
        for a in 0..self.k {
            for b in a + 1..self.k {
                total += (self.counts[a][b] - self.counts[b][a]).abs();
            }
        }
        total
    }

    fn apply_marked(&self, states: &[LongitudeState], m: Marked) -> Vec<LongitudeState> {
        let mut out = states.to_vec();
        for (c, s) in out.iter_mut().enumerate() {
            let flip = (c >> m.pair) & 1 == 1;
            let plus = (m.chord == 0) != flip;
            s.apply(&CrossingEvent::new(m.under, m.over, if plus { Sign::Plus } else { Sign::Minus }));
        }
        out
    }

    fn run(&mut self, states: Vec<LongitudeState>, next_marked: usize, unmarked: usize) {
        if self.stop {
            return;
        }
        let remaining = (self.max_unmarked - unmarked) as i64;
        if self.imbalance() > remaining {
            return;
        }
        if next_marked == self.marked.len() && self.imbalance() == 0 {
            let v = alternating(&states, self.idx, |c| c.count_ones() % 2 == 1);
            if !(self.visit)(&self.events, v) {
                self.stop = true;
                return;
            }
        }
        if next_marked < self.marked.len() {
            let m = self.marked[next_marked];
            let next = self.apply_marked(&states, m);
            self.events.push((CrossingEvent::new(m.under, m.over, Sign::Plus), Some(m.pair * 2 + m.chord)));
            self.run(next, next_marked + 1, unmarked);
            self.events.pop();
        }
        if unmarked < self.max_unmarked {
            for t in 0..self.unmarked_types.len() {
                let (u, o) = self.unmarked_types[t];
                for sign in [Sign::Plus, Sign::Minus] {
                    let e = CrossingEvent::new(u, o, sign);
                    let mut next = states.clone();
                    for s in &mut next {
                        s.apply(&e);
                    }
                    self.counts[u - 1][o - 1] += sign.value();
                    self.events.push((e, None));
                    self.run(next, next_marked, unmarked + 1);
                    self.events.pop();
                    self.counts[u - 1][o - 1] -= sign.value();
                    if self.stop {
                        return;
                    }
                }
            }
        }
    }
}

/// Orders of the `2m` marked crossings with pairs first appearing in index
/// order and each pair's `+` crossing before its `-` crossing. Relabelling
/// pairs and swapping a pair (which only negates the value) reach the rest.
fn marked_patterns(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(m: usize, opened: usize, open: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if acc.len() == 2 * m {
            out.push(acc.clone());
            return;
        }
        if opened < m {
            acc.push((opened, 0));
            open.push(opened);
            go(m, opened + 1, open, acc, out);
            open.pop();
            acc.pop();
        }
        for i in 0..open.len() {
            let p = open.remove(i);
            acc.push((p, 1));
            go(m, opened, open, acc, out);
            acc.pop();
            open.insert(i, p);
        }
    }
    let mut out = Vec::new();
    go(m, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn pair_configs(k: usize, m: usize, strands: PairStrands) -> Vec<Vec<(usize, usize)>> {
    let ordered: Vec<(usize, usize)> = (1..=k).flat_map(|u| (1..=k).filter(move |&o| o != u).map(move |o| (u, o))).collect();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for c in &out {
            for &p in &ordered {
                if strands == PairStrands::SameComponents {
                    if let Some(&(u, o)) = c.first() {
                        if (u.min(o), u.max(o)) != (p.0.min(p.1), p.0.max(p.1)) {
                            continue;
                        }
                    }
                }
                let mut c = c.clone();
                c.push(p);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Calls `visit(events, exact extended μ)` for every closable double-crossing
/// singular link in the budget. `events` lists `(event, marker)` with marker
/// `2 * pair + chord` on marked crossings.
pub fn sweep_dc<F>(idx: &MuIndex, degree: usize, budget: &DcBudget, visit: F) -> Result<u64, SingularError>
where
    F: FnMut(&[(CrossingEvent, Option<usize>)], IBig) -> bool,
{
    let k = budget.num_strands;
    idx.check(k)?;
    if degree > MAX_DEGREE {
        return Err(SingularError::DegreeTooLarge(degree));
    }
    let root = LongitudeState::new(shape_for(idx, k))?;
    let mut count = 0u64;
    let mut visit = visit;
    let mut counted = |ev: &[(CrossingEvent, Option<usize>)], v: IBig| {
        count += 1;
        visit(ev, v)
    };
    let unmarked_types: Vec<(usize, usize)> = (1..=k).flat_map(|u| (1..=k).filter(move |&o| o != u).map(move |o| (u, o))).collect();
    'outer: for config in pair_configs(k, degree, budget.pair_strands) {
        for pattern in marked_patterns(degree) {
            let marked = pattern.iter().map(|&(p, c)| Marked { pair: p, chord: c, under: config[p].0, over: config[p].1 }).collect();
            let mut sweep = DcSweep {
                idx,
                k,
                degree,
                max_unmarked: budget.max_unmarked,
                unmarked_types: unmarked_types.clone(),
                marked,
                events: Vec::new(),
                counts: vec![vec![0; k]; k],
                visit: &mut counted,
                stop: false,
            };
            sweep.run(vec![root.clone(); 1 << degree], 0, 0);
            let _ = sweep.degree;
            if sweep.stop {
                break 'outer;
            }
        }
    }
    Ok(count)
}

/// Rebuilds a [`DCSingularLink`] from sweep output.
fn dc_link(events: &[(CrossingEvent, Option<usize>)], k: usize, degree: usize) -> Result<DCSingularLink, SingularError> {
    let mut pairs = vec![(usize::MAX, usize::MAX); degree];
    for (pos, (_, marker)) in events.iter().enumerate() {
        if let Some(mk) = marker {
            if mk % 2 == 0 {
                pairs[mk / 2].0 = pos;
            } else {
                pairs[mk / 2].1 = pos;
            }
        }
    }
    let base = EventList::new(k, events.iter().map(|(e, _)| *e).collect())?;
    DCSingularLink::new(base, pairs)
}

fn dc_counterexample(link: &DCSingularLink, value: &MuBarValue) -> Counterexample {
    Counterexample::Dc {
        events: link.base().events().iter().map(|e| (e.under, e.over, e.sign.value())).collect(),
        pairs: link.pairs().to_vec(),
        value: value.to_string(),
    }
}

pub fn type_check_dc(idx: &MuIndex, degree: usize, budget: &DcBudget) -> Result<TypeReport, SingularError> {
    let k = budget.num_strands;
    let mut counterexamples = Vec::new();
    let mut nonzero = 0u64;
    let mut error = None;
    let checked = sweep_dc(idx, degree, budget, |events, v| {
        if v == IBig::ZERO {
            return true;
        }
        let found = dc_link(events, k, degree).and_then(|l| Ok((l.extended_mu_bar_dc(idx)?, l)));
        match found {
            Ok((value, _)) if value.is_zero() => {}
            Ok((value, link)) => {
                nonzero += 1;
                if counterexamples.len() < budget.max_counterexamples {
                    counterexamples.push(dc_counterexample(&link, &value));
                }
            }
            Err(e) => {
                error = Some(e);
                return false;
            }
        }
        true
    })?;
    if let Some(e) = error {
        return Err(e);
    }
    Ok(TypeReport { theory: "dc".into(), index: idx.to_string(), degree, checked, all_zero: nonzero == 0, counterexamples })
}

/// Searches for a double-crossing singular link of the given degree with
/// nonzero extended `μ̄`, trying fewer unmarked crossings first.
pub fn find_type_witness(idx: &MuIndex, degree: usize, budget: &DcBudget) -> Result<Option<(DCSingularLink, MuBarValue)>, SingularError> {
    let k = budget.num_strands;
    for unmarked in 0..=budget.max_unmarked {
        let b = DcBudget { max_unmarked: unmarked, ..budget.clone() };
        let mut found = None;
        let mut error = None;
        sweep_dc(idx, degree, &b, |events, v| {
            let fresh = events.iter().filter(|(_, m)| m.is_none()).count() == unmarked;
            if v == IBig::ZERO || !fresh {
                return true;
            }
            match dc_link(events, k, degree).and_then(|l| Ok((l.extended_mu_bar_dc(idx)?, l))) {
                Ok((value, _)) if value.is_zero() => true,
                Ok((value, link)) => {
                    found = Some((link, value));
                    false
                }
                Err(e) => {
                    error = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn random_base(r: &mut ChaCha8Rng, k: usize, max_len: usize) -> GroupWord {
    let gens: Vec<Generator> = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).map(|(i, j)| Generator::pair(i, j).expect("i < j")).collect();
    if gens.is_empty() {
        return GroupWord::identity();
    }
    let n = r.random_range(0..=max_len);
    GroupWord::reduce((0..n).map(|_| Letter::new(gens[r.random_range(0..gens.len())], r.random_bool(0.5))))
}

/// Like [`type_check_clasp`] on `samples` random singular links of the
/// budget instead of all of them. Deterministic in `seed`.
pub fn sample_clasp(idx: &MuIndex, degree: usize, budget: &ClaspBudget, samples: u64, seed: u64) -> Result<TypeReport, SingularError> {
    idx.check(budget.num_strands)?;
    if budget.labels.is_empty() && degree > 0 {
        return Err(SingularError::LabelOutOfRange("no labels".into(), budget.num_strands));
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut nonzero = 0u64;
    for _ in 0..samples {
        let base = random_base(&mut r, budget.num_strands, budget.max_base_len);
        let mut slots: Vec<ClaspSlot> = (0..degree)
            .map(|_| ClaspSlot { position: r.random_range(0..=base.len()), label: budget.labels[r.random_range(0..budget.labels.len())].clone() })
            .collect();
        slots.sort_by_key(|s| s.position);
        let link = ClaspSingularLink::new(base, budget.num_strands, slots)?;
        let value = link.extended_mu_bar_clasp(idx)?;
        if !value.is_zero() {
            nonzero += 1;
            if counterexamples.len() < budget.max_counterexamples {
                counterexamples.push(Counterexample::Clasp {
                    base: link.base().to_string(),
                    slots: link.slots().iter().map(|s| (s.position, s.label.to_string())).collect(),
                    value: value.to_string(),
                });
            }
        }
    }
    Ok(TypeReport { theory: format!("clasp (sampled, seed {seed})"), index: idx.to_string(), degree, checked: samples, all_zero: nonzero == 0, counterexamples })
}

/// Random closable double-crossing link: a compiled random base with up to
/// `max_unmarked` letters, plus `degree` marked `(+, -)` pairs spliced in.
fn random_dc(r: &mut ChaCha8Rng, degree: usize, budget: &DcBudget) -> Result<DCSingularLink, SingularError> {
    let k = budget.num_strands;
    let base = EventList::compile(&random_base(r, k, budget.max_unmarked), k)?;
    let mut events: Vec<(CrossingEvent, Option<usize>)> = base.events().iter().map(|e| (*e, None)).collect();
    let mut first = None;
    for p in 0..degree {
        let (u, o) = match (budget.pair_strands, first) {
            (PairStrands::SameComponents, Some((a, b))) => {
                if r.random_bool(0.5) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            _ => {
                let u = r.random_range(1..=k);
                let mut o = r.random_range(1..k);
                if o >= u {
                    o += 1;
                }
                (u, o)
            }
        };
        first.get_or_insert((u, o));
        for chord in 0..2 {
            let at = r.random_range(0..=events.len());
            let sign = if chord == 0 { Sign::Plus } else { Sign::Minus };
            events.insert(at, (CrossingEvent::new(u, o, sign), Some(2 * p + chord)));
        }
    }
    dc_link(&events, k, degree)
}

/// Like [`type_check_dc`] on `samples` random singular links. Deterministic
/// in `seed`; `max_unmarked` bounds the base word length.
pub fn sample_dc(idx: &MuIndex, degree: usize, budget: &DcBudget, samples: u64, seed: u64) -> Result<TypeReport, SingularError> {
    idx.check(budget.num_strands)?;
    if degree > MAX_DEGREE {
        return Err(SingularError::DegreeTooLarge(degree));
    }
    if budget.num_strands < 2 && degree > 0 {
        return Err(SingularError::Link(crate::stringlink::LinkError::StrandOutOfRange { strand: 2, num_strands: budget.num_strands }));
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut nonzero = 0u64;
    for _ in 0..samples {
        let link = random_dc(&mut r, degree, budget)?;
        let value = link.extended_mu_bar_dc(idx)?;
        if !value.is_zero() {
            nonzero += 1;
            if counterexamples.len() < budget.max_counterexamples {
                counterexamples.push(dc_counterexample(&link, &value));
            }
        }
    }
    Ok(TypeReport { theory: format!("dc (sampled, seed {seed})"), index: idx.to_string(), degree, checked: samples, all_zero: nonzero == 0, counterexamples })
}

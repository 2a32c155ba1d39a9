//! Double dating diagrams: circles carrying ordered pairs of chords, where
//! both chords of a pair join the same two circles. Includes the degree-3
//! census, the antisymmetry and 1-term relations, realization as
//! double-crossing singular links and the induced functional `W`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use dashu_int::IBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::singular::{DCSingularLink, SingularError};
use crate::stringlink::{CrossingEvent, GaussDiagram, LinkError, MuBarValue, MuIndex, Sign, StringLinkDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DdError {
    #[error("pair {pair} joins circle {circle} to itself or to a missing circle")]
    BadPair { pair: usize, circle: usize },
    #[error("endpoint {0} appears {1} times")]
    Endpoint(String, usize),
    #[error("linking class: {0}")]
    BadClass(String),
    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("W not well-defined at this degree: samples gave {0} and {1}")]
    NotWellDefined(MuBarValue, MuBarValue),
    #[error("diagram text line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// One chord end: chord `mark` (0 for `+`, 1 for `-`) of pair `pair`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Endpoint {
    pub pair: usize,
    pub mark: u8,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}{}", self.pair + 1, if self.mark == 0 { '+' } else { '-' })
    }
}

/// A diagram with `circles.len()` circles. `pairs[p]` is the circle pair
/// `(a, b)`, `a < b`, 1-based. Each circle lists its endpoints in cyclic
/// order, stored at its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DDDiagram {
    pairs: Vec<(usize, usize)>,
    circles: Vec<Vec<Endpoint>>,
}

fn least_rotation(seq: &[Endpoint]) -> Vec<Endpoint> {
    (0..seq.len().max(1))
        .map(|r| {
            let mut s = seq.to_vec();
            if !s.is_empty() {
                s.rotate_left(r);
            }
            s
        })
        .min()
        .unwrap_or_default()
}

/// Which 1-term rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum OneTermMode {
    /// The pair's chords are consecutive on both circles and run in the same
    /// order on both.
    #[default]
    Matching,
    /// Consecutive on both circles, either order. Both orders bound a bigon
    /// that a Reidemeister II move removes, one with parallel and one with
    /// antiparallel strands.
    Adjacent,
}

impl DDDiagram {
    pub fn new(num_circles: usize, pairs: Vec<(usize, usize)>, circles: Vec<Vec<Endpoint>>) -> Result<Self, DdError> {
        if circles.len() != num_circles {
            return Err(DdError::BadPair { pair: 0, circle: circles.len() });
        }
        let mut count: BTreeMap<(Endpoint, usize), usize> = BTreeMap::new();
        for (c, circle) in circles.iter().enumerate() {
            for &e in circle {
                if e.pair >= pairs.len() || e.mark > 1 {
                    return Err(DdError::Endpoint(e.to_string(), 0));
                }
                *count.entry((e, c + 1)).or_default() += 1;
            }
        }
        for (p, &(a, b)) in pairs.iter().enumerate() {
            if a == 0 || a >= b || b > num_circles {
                return Err(DdError::BadPair { pair: p + 1, circle: if a == 0 || a == b { a } else { b } });
            }
            for mark in [0, 1] {
                for c in [a, b] {
                    let e = Endpoint { pair: p, mark };
                    let n = count.remove(&(e, c)).unwrap_or(0);
                    if n != 1 {
                        return Err(DdError::Endpoint(format!("{e} on circle {c}"), n));
                    }
                }
            }
        }
        if let Some(((e, c), n)) = count.into_iter().next() {
            return Err(DdError::Endpoint(format!("{e} on circle {c}"), n));
        }
        Ok(DDDiagram { pairs, circles: circles.iter().map(|c| least_rotation(c)).collect() })
    }

    pub fn empty(num_circles: usize) -> Self {
        DDDiagram { pairs: Vec::new(), circles: vec![Vec::new(); num_circles] }
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Endpoints of circle `c` (1-based) in cyclic order.
    pub fn circle(&self, c: usize) -> &[Endpoint] {
        &self.circles[c - 1]
    }

    /// The same diagram with circle `c` read from a different starting point.
    /// Equal to `self`: storage is always the least rotation.
    pub fn rotated(&self, c: usize, r: usize) -> Self {
        let mut circles = self.circles.clone();
        if !circles[c - 1].is_empty() {
            let n = circles[c - 1].len();
            circles[c - 1].rotate_left(r % n);
        }
        DDDiagram { pairs: self.pairs.clone(), circles }.canonicalize()
    }

    /// Least representative under per-circle rotations.
    pub fn canonicalize(&self) -> Self {
        DDDiagram { pairs: self.pairs.clone(), circles: self.circles.iter().map(|c| least_rotation(c)).collect() }
    }

    /// Exchanges the `+` and `-` chords of pair `p`.
    pub fn swap_pair(&self, p: usize) -> Self {
        self.swap_pairs(1 << p)
    }

    /// Exchanges the chords of every pair whose bit is set in `mask`.
    pub fn swap_pairs(&self, mask: u64) -> Self {
        let circles = self
            .circles
            .iter()
            .map(|c| c.iter().map(|&e| if mask >> e.pair & 1 == 1 { Endpoint { pair: e.pair, mark: 1 - e.mark } } else { e }).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        DDDiagram { pairs: self.pairs.clone(), circles }.canonicalize()
    }

    /// Least diagram reachable by swapping chords within pairs.
    pub fn orbit_canonical(&self) -> Self {
        (0..1u64 << self.degree()).map(|m| self.swap_pairs(m)).min().expect("at least the empty swap")
    }

    /// Whether two pairs join the same two circles.
    pub fn has_repeated_circle_pair(&self) -> bool {
        let set: BTreeSet<_> = self.pairs.iter().collect();
        set.len() != self.pairs.len()
    }

    fn positions(&self, c: usize, p: usize) -> (usize, usize) {
        let circle = &self.circles[c - 1];
        let at = |mark| circle.iter().position(|e| *e == Endpoint { pair: p, mark }).expect("validated");
        (at(0), at(1))
    }

    /// True when some pair bounds a removable bigon (see [`OneTermMode`]).
    pub fn one_term_test(&self, mode: OneTermMode) -> bool {
        (0..self.degree()).any(|p| {
            let (a, b) = self.pairs[p];
            let step = |c: usize| {
                let n = self.circles[c - 1].len();
                let (plus, minus) = self.positions(c, p);
                ((minus + n - plus) % n == 1, (plus + n - minus) % n == 1)
            };
            let (fa, ba) = step(a);
            let (fb, bb) = step(b);
            match mode {
                OneTermMode::Matching => (fa && fb) || (ba && bb),
                OneTermMode::Adjacent => (fa || ba) && (fb || bb),
            }
        })
    }

    /// Renders the line format read by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.circles {
            out.push_str("circle");
            for e in c {
                out.push_str(&format!(" {e}"));
            }
            out.push('\n');
        }
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            let pos = |c: usize, mark: u8| self.circles[c - 1].iter().position(|e| *e == Endpoint { pair: p, mark }).expect("validated") + 1;
            out.push_str(&format!("pair {} {a}:{} {b}:{} / {a}:{} {b}:{}\n", p + 1, pos(a, 0), pos(b, 0), pos(a, 1), pos(b, 1)));
        }
        out
    }
}

impl fmt::Display for DDDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .circles
            .iter()
            .map(|c| c.iter().map(Endpoint::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({})", parts.join(" | "))
    }
}

/// Diagram text: one `circle <label>...` line per circle (labels only fix the
/// number of endpoints), then one line per pair,
/// `pair <id> <a>:<pos> <b>:<pos> / <a>:<pos> <b>:<pos>`, giving the `+`
/// chord then the `-` chord; circles and positions are 1-based. Blank lines
/// and `#` comments are ignored.
impl FromStr for DDDiagram {
    type Err = DdError;

    fn from_str(text: &str) -> Result<Self, DdError> {
        let mut sizes = Vec::new();
        let mut pair_lines = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let err = |msg: String| DdError::Syntax { line: n + 1, msg };
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                None => {}
                Some("circle") => {
                    if !pair_lines.is_empty() {
                        return Err(err("circle lines must come before pair lines".into()));
                    }
                    sizes.push(tokens.count());
                }
                Some("pair") => pair_lines.push((n + 1, line.to_string())),
                Some(t) => return Err(err(format!("unexpected `{t}`"))),
            }
        }
        let mut slots: Vec<Vec<Option<Endpoint>>> = sizes.iter().map(|&s| vec![None; s]).collect();
        let mut pairs = Vec::new();
        for (line, text) in pair_lines {
            let err = |msg: String| DdError::Syntax { line, msg };
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != 7 || tokens[4] != "/" {
                return Err(err("expected `pair <id> <a>:<pos> <b>:<pos> / <a>:<pos> <b>:<pos>`".into()));
            }
            let id: usize = tokens[1].parse().map_err(|_| err(format!("bad pair id `{}`", tokens[1])))?;
            if id != pairs.len() + 1 {
                return Err(err(format!("pair ids must run 1, 2, ...; got {id}")));
            }
            let mut ends = Vec::new();
            for t in [tokens[2], tokens[3], tokens[5], tokens[6]] {
                let (c, p) = t.split_once(':').ok_or_else(|| err(format!("expected <circle>:<pos>, got `{t}`")))?;
                let c: usize = c.parse().map_err(|_| err(format!("bad circle `{c}`")))?;
                let p: usize = p.parse().map_err(|_| err(format!("bad position `{p}`")))?;
                if c == 0 || c > sizes.len() || p == 0 || p > sizes[c - 1] {
                    return Err(err(format!("no endpoint {c}:{p}")));
                }
                ends.push((c, p));
            }
            let (a, b) = (ends[0].0.min(ends[1].0), ends[0].0.max(ends[1].0));
            if (ends[2].0.min(ends[3].0), ends[2].0.max(ends[3].0)) != (a, b) || ends[0].0 == ends[1].0 || ends[2].0 == ends[3].0 {
                return Err(err("both chords of a pair must join the same two distinct circles".into()));
            }
            let p = pairs.len();
            for (i, &(c, pos)) in ends.iter().enumerate() {
                let slot = &mut slots[c - 1][pos - 1];
                if slot.is_some() {
                    return Err(err(format!("endpoint {c}:{pos} used twice")));
                }
                *slot = Some(Endpoint { pair: p, mark: (i / 2) as u8 });
            }
            pairs.push((a, b));
        }
        let mut circles = Vec::new();
        for (c, s) in slots.into_iter().enumerate() {
            let filled: Option<Vec<Endpoint>> = s.iter().copied().collect();
            circles.push(filled.ok_or_else(|| DdError::Syntax { line: 0, msg: format!("circle {} has an unused endpoint", c + 1) })?);
        }
        DDDiagram::new(sizes.len(), pairs, circles)
    }
}

/// Counts from the degree-3 census on three circles with one pair per
/// circle pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Every diagram with ordered pairs, up to rotation.
    pub labeled: Vec<DDDiagram>,
    /// `labeled / 2^m`, the count if every swap orbit were free.
    pub naive: usize,
    /// Orbits under swapping chords within pairs, keyed by least member.
    pub orbits: BTreeMap<DDDiagram, Vec<DDDiagram>>,
}

fn cyclic_orders(items: &[Endpoint]) -> Vec<Vec<Endpoint>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let mut perm = rest.to_vec();
    permute(&mut perm, 0, &mut |p| {
        let mut c = vec![first];
        c.extend_from_slice(p);
        out.push(least_rotation(&c));
    });
    out
}

fn permute(v: &mut Vec<Endpoint>, i: usize, f: &mut impl FnMut(&[Endpoint])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

/// All diagrams with the given circle pairs, up to rotation.
pub fn enumerate(num_circles: usize, pairs: &[(usize, usize)]) -> Vec<DDDiagram> {
    let per_circle: Vec<Vec<Vec<Endpoint>>> = (1..=num_circles)
        .map(|c| {
            let ends: Vec<Endpoint> =
                (0..pairs.len()).filter(|&p| pairs[p].0 == c || pairs[p].1 == c).flat_map(|p| [0, 1].map(|mark| Endpoint { pair: p, mark })).collect();
            cyclic_orders(&ends)
        })
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per_circle {
        let mut next = Vec::new();
        for partial in &out {
            for o in options {
                let mut p: Vec<Vec<Endpoint>> = partial.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    let mut diagrams: Vec<DDDiagram> = out.into_iter().map(|circles| DDDiagram { pairs: pairs.to_vec(), circles }).collect();
    diagrams.sort();
    diagrams.dedup();
    diagrams
}

pub fn census_degree3() -> Census {
    let labeled = enumerate(3, &[(1, 2), (1, 3), (2, 3)]);
    let naive = labeled.len() >> 3;
    let mut orbits: BTreeMap<DDDiagram, Vec<DDDiagram>> = BTreeMap::new();
    for d in &labeled {
        orbits.entry(d.orbit_canonical()).or_default().push(d.clone());
    }
    Census { labeled, naive, orbits }
}

/// A symmetric integer matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkingClass(Vec<Vec<i64>>);

impl LinkingClass {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, DdError> {
        let k = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != k {
                return Err(DdError::BadClass(format!("row {} has {} entries, expected {k}", i + 1, row.len())));
            }
            if row[i] != 0 {
                return Err(DdError::BadClass(format!("diagonal entry {} is nonzero", i + 1)));
            }
            for (j, &v) in row.iter().enumerate() {
                if m[j][i] != v {
                    return Err(DdError::BadClass(format!("entries ({},{}) and ({},{}) differ", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(LinkingClass(m))
    }

    pub fn split(k: usize) -> Self {
        LinkingClass(vec![vec![0; k]; k])
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.0[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.0
    }
}

impl fmt::Display for LinkingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().flatten().all(|&x| x == 0) {
            return write!(f, "split");
        }
        let rows: Vec<String> = self.0.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl LinkingClass {
    /// `split` (for `k` strands) or rows separated by `;` and entries by `,`,
    /// e.g. `0,1;1,0`.
    pub fn parse(s: &str, k: usize) -> Result<Self, DdError> {
        let s = s.trim();
        if s == "split" {
            return Ok(LinkingClass::split(k));
        }
        let rows = s
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| DdError::BadClass(format!("bad entry `{x}`")))).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        let c = LinkingClass::new(rows)?;
        if c.size() != k {
            return Err(DdError::BadClass(format!("expected a {k}x{k} matrix, got {}x{}", c.size(), c.size())));
        }
        Ok(c)
    }
}

/// Singular links inducing `d` in the given linking class.
///
/// Each chord becomes a crossing with the lower-indexed circle under, and
/// each circle is cut into a strand just before its least endpoint. Below
/// all marked crossings sit the crossings of `Π x_ij^{lk(i,j)}`. Sample 0 is
/// exactly that; later samples cut every strand at a random point and add
/// up to two random Reidemeister II pairs of unmarked crossings.
pub fn realize(d: &DDDiagram, class: &LinkingClass, samples: usize, seed: u64) -> Result<Vec<DCSingularLink<GaussDiagram>>, DdError> {
    let k = d.num_circles();
    if class.size() != k {
        return Err(DdError::BadClass(format!("{} circles but a {}x{} class", k, class.size(), class.size())));
    }
    let mut crossings = Vec::new();
    let mut orders: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 1..=k {
        for j in i + 1..=k {
            let lk = class.lk(i, j);
            let sign = if lk < 0 { Sign::Minus } else { Sign::Plus };
            for _ in 0..lk.unsigned_abs() {
                for (u, o) in [(j, i), (i, j)] {
                    orders[u - 1].push(crossings.len());
                    orders[o - 1].push(crossings.len());
                    crossings.push(CrossingEvent::new(u, o, sign));
                }
            }
        }
    }
    let mut ids = BTreeMap::new();
    for (p, &(a, b)) in d.pairs().iter().enumerate() {
        for mark in [0u8, 1] {
            ids.insert(Endpoint { pair: p, mark }, crossings.len());
            crossings.push(CrossingEvent::new(a, b, if mark == 0 { Sign::Plus } else { Sign::Minus }));
        }
    }
    for c in 1..=k {
        orders[c - 1].extend(d.circle(c).iter().map(|e| ids[e]));
    }
    let pairs: Vec<(usize, usize)> = (0..d.degree()).map(|p| (ids[&Endpoint { pair: p, mark: 0 }], ids[&Endpoint { pair: p, mark: 1 }])).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for s in 0..samples {
        let mut crossings = crossings.clone();
        let mut orders = orders.clone();
        if s > 0 && k >= 2 {
            for _ in 0..rng.random_range(0..=2) {
                let a = rng.random_range(1..=k);
                let b = (a + rng.random_range(1..k) - 1) % k + 1;
                let first = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
                let id = crossings.len();
                crossings.push(CrossingEvent::new(a, b, first));
                crossings.push(CrossingEvent::new(a, b, first.flipped()));
                for strand in [a, b] {
                    let order = &mut orders[strand - 1];
                    let at = rng.random_range(0..=order.len());
                    order.splice(at..at, [id, id + 1]);
                }
            }
            for order in &mut orders {
                if !order.is_empty() {
                    let r = rng.random_range(0..order.len());
                    order.rotate_left(r);
                }
            }
        }
        let base = GaussDiagram::new(k, crossings, orders)?;
        out.push(DCSingularLink::new(base, pairs.clone())?);
    }
    Ok(out)
}

/// The diagram traced out by the marked pairs of a singular link.
pub fn induced_diagram(link: &DCSingularLink<GaussDiagram>) -> Result<DDDiagram, DdError> {
    let base = link.base();
    let mut which = BTreeMap::new();
    let mut pairs = Vec::new();
    for (p, &(plus, minus)) in link.pairs().iter().enumerate() {
        which.insert(plus, Endpoint { pair: p, mark: 0 });
        which.insert(minus, Endpoint { pair: p, mark: 1 });
        let c = base.crossing_list()[plus];
        pairs.push((c.under.min(c.over), c.under.max(c.over)));
    }
    let circles = (1..=base.num_strands()).map(|s| base.strand_order(s).iter().filter_map(|id| which.get(id).copied()).collect()).collect();
    DDDiagram::new(base.num_strands(), pairs, circles)
}

/// `W(μ̄)(d)`: the extended invariant on realizations of `d`, which must
/// agree across all `samples` (at least 3) of them.
pub fn evaluate_w(d: &DDDiagram, idx: &MuIndex, class: &LinkingClass, samples: usize, seed: u64) -> Result<MuBarValue, DdError> {
    if samples < 3 {
        return Err(DdError::TooFewSamples(samples));
    }
    let links = realize(d, class, samples, seed)?;
    let first = links[0].extended_mu_bar_dc(idx)?;
    for l in &links[1..] {
        let v = l.extended_mu_bar_dc(idx)?;
        if v != first {
            return Err(DdError::NotWellDefined(first, v));
        }
    }
    Ok(first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `D = (-1)^{|S|} swap_S(D)` for every set `S` of pairs.
    Antisymmetry,
    /// `D = 0` when [`DDDiagram::one_term_test`] holds.
    OneTerm(OneTermMode),
    /// `D = 0` when two pairs join the same two circles.
    SamePairVanishing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRank {
    pub diagrams: usize,
    pub rank: usize,
    pub quotient: usize,
}

/// Rank of the relations among the span of `diagrams` (taken as a basis,
/// after canonicalizing) and the dimension of the quotient.
pub fn relation_space_rank(diagrams: &[DDDiagram], relations: &[Relation]) -> RelationRank {
    let basis: Vec<DDDiagram> = diagrams.iter().map(DDDiagram::canonicalize).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&DDDiagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let n = basis.len();
    let unit = |i: usize| {
        let mut r = vec![IBig::ZERO; n];
        r[i] = IBig::ONE;
        r
    };
    let mut rows = Vec::new();
    for rel in relations {
        for (i, d) in basis.iter().enumerate() {
            match rel {
                Relation::Antisymmetry => {
                    for mask in 1..1u64 << d.degree() {
                        if let Some(&j) = index.get(&d.swap_pairs(mask)) {
                            let mut r = unit(i);
                            let sign = if mask.count_ones() % 2 == 0 { -1 } else { 1 };
                            r[j] += IBig::from(sign);
                            rows.push(r);
                        }
                    }
                }
                Relation::OneTerm(mode) => {
                    if d.one_term_test(*mode) {
                        rows.push(unit(i));
                    }
                }
                Relation::SamePairVanishing => {
                    if d.has_repeated_circle_pair() {
                        rows.push(unit(i));
                    }
                }
            }
        }
    }
    let rank = linalg::rank(&rows);
    RelationRank { diagrams: n, rank, quotient: n - rank }
}

#[cfg(test)]
mod tests;

//! Lower-central-series degree, Hall collection and decomposition into
//! simple commutators, all driven by the Magnus expansion.
//!
//! The Hall basis is the Lyndon basis on the word's generators (ordered as
//! [`Generator`] orders), with basic commutators listed by weight and then
//! lexicographically. A Lyndon word `w = uv` (with `v` its longest proper
//! Lyndon suffix) gives the group commutator `[b(u), b(v)]`; its leading Lie
//! term contains `w` with coefficient 1 and otherwise only lexicographically
//! larger words, which makes the exponents solvable one at a time.

use std::collections::BTreeMap;

use dashu_int::IBig;
use thiserror::Error;

use super::{FreewordError, Generator, GroupWord, SimpleCommutatorSpec};
use crate::magnus::{expand_word_over, is_squarefree, MagnusError, MagnusSeries, SeriesShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error(transparent)]
    Word(#[from] FreewordError),
    #[error("generator {0} is not of the form x_ij")]
    NotPairGenerator(Generator),
    #[error("generators share no common component")]
    NoCommonTarget,
    #[error("word is not in level {level} of the lower central series (found degree {found})")]
    NotInLevel { level: usize, found: usize },
    #[error("degree-{level} part has a term with a repeated generator: {monomial}")]
    NonSquarefree { level: usize, monomial: String },
    #[error("residual at level {level} is not in the next level")]
    Residual { level: usize },
    #[error("exponent {0} does not fit in 64 bits")]
    ExponentOverflow(IBig),
    #[error("level must be >= 1")]
    BadLevel,
}

/// Result of [`lcs_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsDegree {
    /// The word lies in `F_q` but not in `F_{q+1}`.
    Exactly(usize),
    /// The word lies in `F_cap`; nothing more was examined.
    AtLeast(usize),
}

impl LcsDegree {
    pub fn at_least(&self, q: usize) -> bool {
        match *self {
            LcsDegree::Exactly(d) => d >= q,
            LcsDegree::AtLeast(c) => c >= q,
        }
    }
}

impl std::fmt::Display for LcsDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LcsDegree::Exactly(d) => write!(f, "{d}"),
            LcsDegree::AtLeast(c) => write!(f, ">={c}"),
        }
    }
}

fn min_degree_in(w: &GroupWord, alphabet: &[Generator], shape: SeriesShape) -> Result<Option<usize>, MagnusError> {
    Ok(expand_word_over(w, alphabet, shape)?.min_degree())
}

/// Largest `q <= cap` with `w` in the q-th lower central subgroup of the free
/// group on its generators.
pub fn lcs_degree(w: &GroupWord, cap: usize) -> Result<LcsDegree, MagnusError> {
    let cap = cap.max(1);
    let alphabet = w.generators();
    if alphabet.is_empty() || cap == 1 {
        return Ok(LcsDegree::AtLeast(cap));
    }
    let shape = SeriesShape::new(alphabet.len(), cap - 1, false);
    Ok(match min_degree_in(w, &alphabet, shape)? {
        Some(q) => LcsDegree::Exactly(q),
        None => LcsDegree::AtLeast(cap),
    })
}

/// Lyndon words over `0..r` of length `1..=max_len`, by length then lexicographically.
fn lyndon_words(r: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r == 0 || max_len == 0 {
        return out;
    }
    // Duval's generation in lexicographic order.
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let base = w.clone();
        while w.len() < max_len {
            w.push(base[(w.len()) % base.len()]);
        }
        while matches!(w.last(), Some(&c) if c == r - 1) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard factorization point: start of the longest proper Lyndon suffix.
fn standard_split(w: &[usize]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon words of length >= 2 have a proper Lyndon suffix")
}

type LiePoly = BTreeMap<Vec<usize>, i64>;

fn lie_bracket(a: &LiePoly, b: &LiePoly) -> LiePoly {
    let mut out = LiePoly::new();
    for (u, x) in a {
        for (v, y) in b {
            let uv: Vec<usize> = u.iter().chain(v).copied().collect();
            let vu: Vec<usize> = v.iter().chain(u).copied().collect();
            *out.entry(uv).or_default() += x * y;
            *out.entry(vu).or_default() -= x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

struct Basic {
    lie: LiePoly,
    word: GroupWord,
    bracket: String,
}

fn basic(w: &[usize], alphabet: &[Generator], memo: &mut BTreeMap<Vec<usize>, Basic>) {
    if memo.contains_key(w) {
        return;
    }
    let b = if w.len() == 1 {
        let g = alphabet[w[0]];
        Basic { lie: LiePoly::from([(w.to_vec(), 1)]), word: GroupWord::generator(g), bracket: g.to_string() }
    } else {
        let s = standard_split(w);
        basic(&w[..s], alphabet, memo);
        basic(&w[s..], alphabet, memo);
        let (u, v) = (&memo[&w[..s]], &memo[&w[s..]]);
        Basic {
            lie: lie_bracket(&u.lie, &v.lie),
            word: GroupWord::commutator(&u.word, &v.word),
            bracket: format!("[{},{}]", u.bracket, v.bracket),
        }
    };
    memo.insert(w.to_vec(), b);
}

/// One factor `b^e` of a Hall collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallFactor {
    pub lyndon: Vec<Generator>,
    pub bracket: String,
    pub word: GroupWord,
    pub exponent: i64,
}

impl HallFactor {
    pub fn weight(&self) -> usize {
        self.lyndon.len()
    }
}

/// `w = b_1^{e_1} ... b_s^{e_s}` modulo `F_{class+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallCollection {
    pub alphabet: Vec<Generator>,
    pub class: usize,
    pub factors: Vec<HallFactor>,
}

impl HallCollection {
    pub fn product(&self) -> GroupWord {
        self.factors.iter().fold(GroupWord::identity(), |acc, f| acc.mul(&f.word.pow(f.exponent)))
    }
}

fn to_i64(c: &IBig) -> Result<i64, DecomposeError> {
    i64::try_from(c).map_err(|_| DecomposeError::ExponentOverflow(c.clone()))
}

/// Collects `w` into basic commutators of weights `1..=class`.
pub fn hall_collect(w: &GroupWord, class: usize) -> Result<HallCollection, DecomposeError> {
    if class == 0 {
        return Err(DecomposeError::BadLevel);
    }
    let alphabet = w.generators();
    let mut out = HallCollection { alphabet: alphabet.clone(), class, factors: Vec::new() };
    if alphabet.is_empty() {
        return Ok(out);
    }
    let shape = SeriesShape::new(alphabet.len(), class, false);
    let lyndon = lyndon_words(alphabet.len(), class);
    let mut memo = BTreeMap::new();
    let mut residual = w.clone();
    for weight in 1..=class {
        let series = expand_word_over(&residual, &alphabet, shape)?;
        let mut part: BTreeMap<Vec<usize>, IBig> =
            series.degree_part(weight).into_iter().map(|(m, c)| (m.iter().map(|v| v - 1).collect(), c)).collect();
        let mut level = GroupWord::identity();
        for lw in lyndon.iter().filter(|l| l.len() == weight) {
            let c = part.get(lw).cloned().unwrap_or(IBig::ZERO);
            if c == IBig::ZERO {
                continue;
            }
            basic(lw, &alphabet, &mut memo);
            let b = &memo[lw];
            for (m, x) in &b.lie {
                let e = part.entry(m.clone()).or_insert(IBig::ZERO);
                *e -= &c * IBig::from(*x);
            }
            let e = to_i64(&c)?;
            level = level.mul(&b.word.pow(e));
            out.factors.push(HallFactor {
                lyndon: lw.iter().map(|&i| alphabet[i]).collect(),
                bracket: b.bracket.clone(),
                word: b.word.clone(),
                exponent: e,
            });
        }
        if part.values().any(|c| *c != IBig::ZERO) {
            return Err(DecomposeError::Residual { level: weight });
        }
        residual = level.inverse().mul(&residual);
    }
    let check = w.mul(&out.product().inverse());
    if !lcs_degree(&check, class + 1)?.at_least(class + 1) {
        return Err(DecomposeError::Residual { level: class });
    }
    Ok(out)
}

/// Common component of all generators and the sorted list of partners.
fn target_and_sources(w: &GroupWord) -> Result<Option<(usize, Vec<usize>)>, DecomposeError> {
    let gens = w.generators();
    let mut candidates: Option<Vec<usize>> = None;
    for g in &gens {
        let Generator::Pair(i, j) = *g else {
            return Err(DecomposeError::NotPairGenerator(*g));
        };
        candidates = Some(match candidates {
            None => vec![i, j],
            Some(c) => c.into_iter().filter(|&t| t == i || t == j).collect(),
        });
    }
    let Some(candidates) = candidates else {
        return Ok(None);
    };
    let &target = candidates.iter().max().ok_or(DecomposeError::NoCommonTarget)?;
    let mut sources: Vec<usize> = gens
        .iter()
        .map(|g| match *g {
            Generator::Pair(i, j) if i == target => j,
            Generator::Pair(i, _) => i,
            Generator::Meridian(_) => unreachable!(),
        })
        .collect();
    sources.sort();
    Ok(Some((target, sources)))
}

fn decompose_level(w: &GroupWord, n: usize, reduced: bool) -> Result<(Vec<SimpleCommutatorSpec>, GroupWord), DecomposeError> {
    if n == 0 {
        return Err(DecomposeError::BadLevel);
    }
    let Some((target, sources)) = target_and_sources(w)? else {
        return Ok((Vec::new(), GroupWord::identity()));
    };
    let alphabet: Vec<Generator> = sources.iter().map(|&s| Generator::joining(s, target)).collect::<Result<_, _>>()?;
    let shape = SeriesShape::new(alphabet.len(), n, reduced);
    let series: MagnusSeries = expand_word_over(w, &alphabet, shape)?;
    if let Some(found) = series.min_degree() {
        if found < n {
            return Err(DecomposeError::NotInLevel { level: n, found });
        }
    }
    let mut specs = Vec::new();
    for (m, c) in series.degree_part(n) {
        if !is_squarefree(&m) {
            let monomial = m.iter().map(|&v| alphabet[v - 1].to_string()).collect::<Vec<_>>().join(" ");
            return Err(DecomposeError::NonSquarefree { level: n, monomial });
        }
        // Among right-normed brackets ending in the largest letter, the word
        // a_1...a_n appears only in [a_1,[a_2,...,a_n]].
        if m.last() != m.iter().max() {
            continue;
        }
        let srcs: Vec<usize> = m.iter().map(|&v| sources[v - 1]).collect();
        let spec = SimpleCommutatorSpec::right_normed(target, &srcs)?;
        let e = to_i64(&c)?;
        let spec = if e < 0 { spec.inverted() } else { spec };
        specs.extend(std::iter::repeat_n(spec, e.unsigned_abs() as usize));
    }
    let mut product = GroupWord::identity();
    for s in &specs {
        product = product.mul(&s.expand()?);
    }
    let residual = product.inverse().mul(w);
    let check = w.mul(&product.inverse());
    if let Some(d) = min_degree_in(&check, &alphabet, shape)? {
        if d <= n {
            return Err(DecomposeError::Residual { level: n });
        }
    }
    Ok((specs, residual))
}

/// Writes `w`, which must lie in `F_n` of the free group on its generators
/// `x_{i,t}` (all sharing the component `t`), as a product of simple
/// n-commutators modulo `F_{n+1}`.
pub fn decompose_to_simple(w: &GroupWord, n: usize) -> Result<Vec<SimpleCommutatorSpec>, DecomposeError> {
    decompose_level(w, n, false).map(|(specs, _)| specs)
}

/// Repeats the decomposition on the residual for levels `n..=max_level`,
/// working modulo terms with a repeated generator (the link-homotopy
/// quotient, where the group is nilpotent). Returns the specs of each level.
pub fn decompose_iterated(w: &GroupWord, n: usize, max_level: usize) -> Result<Vec<(usize, Vec<SimpleCommutatorSpec>)>, DecomposeError> {
    let mut out = Vec::new();
    let mut residual = w.clone();
    for level in n..=max_level {
        let (specs, next) = decompose_level(&residual, level, true)?;
        out.push((level, specs));
        residual = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> GroupWord {
        GroupWord::generator(Generator::pair(i, j).unwrap())
    }
    fn comm(a: &GroupWord, b: &GroupWord) -> GroupWord {
        GroupWord::commutator(a, b)
    }

    #[test]
    fn lyndon_counts_match_witt_formula() {
        // Necklace polynomial: 2 letters give 2, 1, 2, 3, 6 Lyndon words of length 1..5.
        let ws = lyndon_words(2, 5);
        let counts: Vec<usize> = (1..=5).map(|n| ws.iter().filter(|w| w.len() == n).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        let ws = lyndon_words(3, 4);
        let counts: Vec<usize> = (1..=4).map(|n| ws.iter().filter(|w| w.len() == n).count()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
        assert!(ws.iter().all(|w| is_lyndon(w)));
    }

    #[test]
    fn standard_bracket_leading_word() {
        let alphabet = [Generator::Meridian(1), Generator::Meridian(2), Generator::Meridian(3)];
        let mut memo = BTreeMap::new();
        for w in lyndon_words(3, 4) {
            basic(&w, &alphabet, &mut memo);
            let lie = &memo[&w].lie;
            assert_eq!(lie.get(&w), Some(&1));
            assert!(lie.keys().all(|u| u >= &w));
        }
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_degree(&GroupWord::identity(), 5).unwrap(), LcsDegree::AtLeast(5));
        assert_eq!(lcs_degree(&comm(&x(1, 3), &x(2, 3)), 5).unwrap(), LcsDegree::Exactly(2));
        assert_eq!(lcs_degree(&x(1, 3), 5).unwrap(), LcsDegree::Exactly(1));
        assert_eq!(lcs_degree(&comm(&x(1, 3), &x(2, 3)), 2).unwrap(), LcsDegree::AtLeast(2));
    }

    #[test]
    fn collect_single_commutator() {
        let (a, b) = (x(1, 2), x(1, 3));
        let c = hall_collect(&comm(&a, &b), 2).unwrap();
        assert_eq!(c.factors.len(), 1);
        assert_eq!(c.factors[0].bracket, "[x12,x13]");
        assert_eq!(c.factors[0].exponent, 1);
    }

    #[test]
    fn collect_swapped_pair() {
        let (a, b) = (x(1, 2), x(1, 3));
        let w = b.mul(&a);
        let c = hall_collect(&w, 2).unwrap();
        let summary: Vec<(String, i64)> = c.factors.iter().map(|f| (f.bracket.clone(), f.exponent)).collect();
        assert_eq!(summary, vec![("x12".into(), 1), ("x13".into(), 1), ("[x12,x13]".into(), -1)]);
        let resid = w.mul(&c.product().inverse());
        assert!(lcs_degree(&resid, 3).unwrap().at_least(3));
        assert!(hall_collect(&GroupWord::identity(), 4).unwrap().factors.is_empty());
    }

    #[test]
    fn collect_higher_class() {
        let (a, b, c) = (x(1, 4), x(2, 4), x(3, 4));
        let w = b.mul(&comm(&c, &a)).mul(&a.pow(2)).mul(&comm(&b, &comm(&a, &c)));
        for class in 1..=4 {
            let h = hall_collect(&w, class).unwrap();
            let resid = w.mul(&h.product().inverse());
            assert!(lcs_degree(&resid, class + 1).unwrap().at_least(class + 1));
        }
    }

    #[test]
    fn decompose_examples() {
        let s = decompose_to_simple(&comm(&x(1, 3), &x(2, 3)), 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "[x13,x23]");
        assert!(decompose_to_simple(&GroupWord::identity(), 3).unwrap().is_empty());
        // The degree-2 parts of these two clasps cancel, so the product is
        // already in the next level and nothing needs removing.
        let w = comm(&x(1, 3), &x(2, 3)).mul(&comm(&x(1, 3).inverse(), &x(2, 3)));
        assert!(lcs_degree(&w, 3).unwrap().at_least(3));
        assert!(decompose_to_simple(&w, 2).unwrap().is_empty());
    }

    #[test]
    fn decompose_level_three() {
        let (a, b, c) = (x(1, 4), x(2, 4), x(3, 4));
        let w = comm(&b, &comm(&c, &a)).mul(&comm(&comm(&a, &b), &c).pow(2));
        let specs = decompose_to_simple(&w, 3).unwrap();
        let mut p = GroupWord::identity();
        for s in &specs {
            assert_eq!(s.target, 4);
            p = p.mul(&s.expand().unwrap());
        }
        assert!(lcs_degree(&w.mul(&p.inverse()), 4).unwrap().at_least(4));
    }

    #[test]
    fn decompose_errors() {
        assert!(matches!(decompose_to_simple(&x(1, 3), 2), Err(DecomposeError::NotInLevel { level: 2, found: 1 })));
        let w = comm(&x(1, 3), &x(2, 4));
        assert_eq!(decompose_to_simple(&w, 2), Err(DecomposeError::NoCommonTarget));
        let w = GroupWord::generator(Generator::Meridian(1));
        assert!(matches!(decompose_to_simple(&w, 1), Err(DecomposeError::NotPairGenerator(_))));
        let (a, b) = (x(1, 3), x(2, 3));
        let w = comm(&a, &comm(&a, &b));
        assert!(matches!(decompose_to_simple(&w, 3), Err(DecomposeError::NonSquarefree { .. })));
        assert_eq!(decompose_to_simple(&a, 0), Err(DecomposeError::BadLevel));
    }

    #[test]
    fn iterated_decomposition_reaches_trivial_residual() {
        let (a, b, c) = (x(1, 4), x(2, 4), x(3, 4));
        let w = comm(&a, &b).mul(&comm(&a, &comm(&a, &b))).mul(&comm(&c, &comm(&a, &b)).pow(-1)).mul(&comm(&b, &c));
        let levels = decompose_iterated(&w, 2, 3).unwrap();
        let mut p = GroupWord::identity();
        for (_, specs) in &levels {
            for s in specs {
                p = p.mul(&s.expand().unwrap());
            }
        }
        // Equal in the link-homotopy quotient: no squarefree term survives.
        let resid = p.inverse().mul(&w);
        let s = expand_word_over(&resid, &w.generators(), SeriesShape::new(3, 3, true)).unwrap();
        assert!(s.is_one());
    }
}

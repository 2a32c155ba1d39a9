//! Truncated noncommutative power series in variables `K_1..K_k` with exact
//! integer coefficients, and the Magnus expansion `m_i -> 1 + K_i`.
//!
//! A series lives on a [`SeriesShape`]: the number of variables, the
//! truncation degree and whether monomials with a repeated variable are
//! killed (squarefree mode, the link-homotopy setting). All series of one
//! shape share a canonical monomial basis ordered by degree and then
//! lexicographically, so iteration order and printed output are
//! deterministic.
//!
//! Coefficients are stored densely over that basis. Arithmetic runs on `i64`
//! and promotes the whole series to arbitrary precision the moment a checked
//! operation overflows, so results are always exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashu_int::IBig;
use thiserror::Error;

use crate::freeword::{Generator, GroupWord};

/// Hard cap on the number of monomials in one basis.
const MAX_BASIS: usize = 1 << 22;
const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagnusError {
    #[error("generator {0} is not in the expansion alphabet")]
    UnknownGenerator(String),
    #[error("series shapes differ: {0} vs {1}")]
    ShapeMismatch(SeriesShape, SeriesShape),
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(IBig),
    #[error("monomial of length {len} exceeds truncation degree {max}")]
    MonomialTooLong { len: usize, max: usize },
    #[error("monomial repeats a variable in squarefree mode")]
    RepeatedIndex,
    #[error("variable K{var} out of range 1..={num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("basis for {0} exceeds {MAX_BASIS} monomials")]
    BasisTooLarge(SeriesShape),
}

/// Number of variables, truncation degree and squarefree flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesShape {
    pub num_vars: usize,
    pub max_degree: usize,
    pub squarefree: bool,
}

impl SeriesShape {
    pub fn new(num_vars: usize, max_degree: usize, squarefree: bool) -> Self {
        SeriesShape { num_vars, max_degree, squarefree }
    }
}

impl fmt::Display for SeriesShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} d={}{}",
            self.num_vars,
            self.max_degree,
            if self.squarefree { " squarefree" } else { "" }
        )
    }
}

/// Canonical monomial basis for one shape.
#[derive(Debug)]
struct Basis {
    shape: SeriesShape,
    degree: Vec<u8>,
    code: Vec<u64>,
    mask: Vec<u64>,
    /// `degree_end[g]` is one past the last index of degree `g`.
    degree_end: Vec<usize>,
    pow: Vec<u64>,
    /// Per degree, base-k code -> dense index (or `NONE`).
    lookup: Vec<Vec<u32>>,
}

impl Basis {
    fn build(shape: SeriesShape) -> Result<Basis, MagnusError> {
        let k = shape.num_vars as u64;
        let d = shape.max_degree;
        if shape.num_vars > 64 {
            return Err(MagnusError::BasisTooLarge(shape));
        }
        let mut pow = vec![1u64; d + 1];
        let mut full = 1usize;
        for g in 1..=d {
            pow[g] = pow[g - 1].saturating_mul(k);
            full = full.saturating_add(pow[g] as usize);
            if full > MAX_BASIS {
                return Err(MagnusError::BasisTooLarge(shape));
            }
        }
        let mut degree = Vec::new();
        let mut code = Vec::new();
        let mut mask = Vec::new();
        let mut degree_end = Vec::with_capacity(d + 1);
        let mut lookup = Vec::with_capacity(d + 1);
        for g in 0..=d {
            let mut table = vec![NONE; pow[g] as usize];
            for c in 0..pow[g] {
                let mut m = 0u64;
                let mut rest = c;
                let mut ok = true;
                for _ in 0..g {
                    let v = rest % k.max(1);
                    rest /= k.max(1);
                    if m & (1 << v) != 0 {
                        ok = false;
                    }
                    m |= 1 << v;
                }
                if shape.squarefree && !ok {
                    continue;
                }
                table[c as usize] = degree.len() as u32;
                degree.push(g as u8);
                code.push(c);
                mask.push(m);
            }
            lookup.push(table);
            degree_end.push(degree.len());
        }
        Ok(Basis { shape, degree, code, mask, degree_end, pow, lookup })
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    fn index(&self, degree: usize, code: u64) -> Option<usize> {
        let i = self.lookup[degree][code as usize];
        (i != NONE).then_some(i as usize)
    }

    #[inline]
    fn product_index(&self, a: usize, b: usize) -> Option<usize> {
        if self.shape.squarefree && self.mask[a] & self.mask[b] != 0 {
            return None;
        }
        let gb = self.degree[b] as usize;
        let g = self.degree[a] as usize + gb;
        if g > self.shape.max_degree {
            return None;
        }
        self.index(g, self.code[a] * self.pow[gb] + self.code[b])
    }

    fn monomial(&self, i: usize) -> Vec<usize> {
        let k = self.shape.num_vars as u64;
        let g = self.degree[i] as usize;
        let mut out = vec![0; g];
        let mut rest = self.code[i];
        for slot in out.iter_mut().rev() {
            *slot = (rest % k) as usize + 1;
            rest /= k;
        }
        out
    }

    fn encode(&self, monomial: &[usize]) -> Result<usize, MagnusError> {
        let shape = self.shape;
        if monomial.len() > shape.max_degree {
            return Err(MagnusError::MonomialTooLong { len: monomial.len(), max: shape.max_degree });
        }
        let mut c = 0u64;
        let mut seen = 0u64;
        for &v in monomial {
            if v == 0 || v > shape.num_vars {
                return Err(MagnusError::VariableOutOfRange { var: v, num_vars: shape.num_vars });
            }
            if seen & (1 << (v - 1)) != 0 && shape.squarefree {
                return Err(MagnusError::RepeatedIndex);
            }
            seen |= 1 << (v - 1);
            c = c * shape.num_vars as u64 + (v - 1) as u64;
        }
        Ok(self.index(monomial.len(), c).expect("validated monomial is in the basis"))
    }
}

fn basis_for(shape: SeriesShape) -> Result<Arc<Basis>, MagnusError> {
    static CACHE: OnceLock<Mutex<HashMap<SeriesShape, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&shape) {
        return Ok(b.clone());
    }
    let built = Arc::new(Basis::build(shape)?);
    Ok(cache.lock().unwrap().entry(shape).or_insert(built).clone())
}

trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `acc += a * b`; false on overflow.
    fn fma(acc: &mut Self, a: &Self, b: &Self) -> bool;
    fn fms(acc: &mut Self, a: &Self, b: &Self) -> bool;
    fn add_to(acc: &mut Self, a: &Self) -> bool;
    fn negated(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn fma(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| acc.checked_add(p)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    #[inline]
    fn fms(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| acc.checked_sub(p)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    #[inline]
    fn add_to(acc: &mut Self, a: &Self) -> bool {
        match acc.checked_add(*a) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Scalar for IBig {
    fn zero() -> Self {
        IBig::ZERO
    }
    fn is_zero(&self) -> bool {
        *self == IBig::ZERO
    }
    fn fma(acc: &mut Self, a: &Self, b: &Self) -> bool {
        *acc += a * b;
        true
    }
    fn fms(acc: &mut Self, a: &Self, b: &Self) -> bool {
        *acc -= a * b;
        true
    }
    fn add_to(acc: &mut Self, a: &Self) -> bool {
        *acc += a;
        true
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
}

#[derive(Clone, Debug)]
enum Coeffs {
    Small(Vec<i64>),
    Big(Vec<IBig>),
}

impl Coeffs {
    fn to_big(&self) -> Vec<IBig> {
        match self {
            Coeffs::Small(v) => v.iter().map(|&x| IBig::from(x)).collect(),
            Coeffs::Big(v) => v.clone(),
        }
    }

    fn get(&self, i: usize) -> IBig {
        match self {
            Coeffs::Small(v) => IBig::from(v[i]),
            Coeffs::Big(v) => v[i].clone(),
        }
    }

    fn is_zero_at(&self, i: usize) -> bool {
        match self {
            Coeffs::Small(v) => v[i] == 0,
            Coeffs::Big(v) => v[i] == IBig::ZERO,
        }
    }

    /// Demote to the small representation when every entry fits.
    fn normalized(self) -> Coeffs {
        match self {
            Coeffs::Big(v) => {
                let small: Option<Vec<i64>> = v.iter().map(|x| i64::try_from(x).ok()).collect();
                match small {
                    Some(s) => Coeffs::Small(s),
                    None => Coeffs::Big(v),
                }
            }
            s => s,
        }
    }
}

fn mul_kernel<T: Scalar>(basis: &Basis, a: &[T], b: &[T]) -> Option<Vec<T>> {
    let d = basis.shape.max_degree;
    let mut out = vec![T::zero(); basis.len()];
    let nz_b: Vec<usize> = (0..b.len()).filter(|&j| !b[j].is_zero()).collect();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let room = d - basis.degree[i] as usize;
        let end = basis.degree_end[room];
        for &j in &nz_b {
            if j >= end {
                break;
            }
            if let Some(idx) = basis.product_index(i, j) {
                if !T::fma(&mut out[idx], ai, &b[j]) {
                    return None;
                }
            }
        }
    }
    Some(out)
}

/// Inverse of a series whose constant term is `unit` (either 1 or -1).
fn inverse_kernel<T: Scalar>(basis: &Basis, a: &[T], unit: &T) -> Option<Vec<T>> {
    let mut out = vec![T::zero(); basis.len()];
    out[0] = unit.clone();
    for m in 1..basis.len() {
        let g = basis.degree[m] as usize;
        let code = basis.code[m];
        let mut acc = T::zero();
        for s in 1..=g {
            let tail = g - s;
            let p = basis.pow[tail];
            let u = basis.index(s, code / p)?;
            let v = basis.index(tail, code % p)?;
            if !a[u].is_zero() && !out[v].is_zero() && !T::fma(&mut acc, &a[u], &out[v]) {
                return None;
            }
        }
        // out[m] = -unit * acc, and unit is its own inverse.
        let mut val = T::zero();
        if !T::fms(&mut val, unit, &acc) {
            return None;
        }
        out[m] = val;
    }
    Some(out)
}

/// `a * (1 + K_v)^{±1}` without a full product.
fn mul_generator_kernel<T: Scalar>(basis: &Basis, a: &[T], var: usize, inverse: bool) -> Option<Vec<T>> {
    let d = basis.shape.max_degree;
    let k = basis.shape.num_vars as u64;
    let shift = |src: &[T], dst: &mut Vec<T>, negate: bool| -> Option<bool> {
        let mut any = false;
        for (i, c) in src.iter().enumerate() {
            if c.is_zero() || basis.degree[i] as usize >= d {
                continue;
            }
            if basis.shape.squarefree && basis.mask[i] & (1 << var) != 0 {
                continue;
            }
            let g = basis.degree[i] as usize + 1;
            let j = basis.index(g, basis.code[i] * k + var as u64)?;
            let val = if negate { c.negated()? } else { c.clone() };
            if !T::add_to(&mut dst[j], &val) {
                return None;
            }
            any = true;
        }
        Some(any)
    };
    let mut out = a.to_vec();
    if !inverse {
        shift(a, &mut out, false)?;
        return Some(out);
    }
    // a * sum_n (-K_v)^n
    let mut term = a.to_vec();
    loop {
        let mut next = vec![T::zero(); basis.len()];
        if !shift(&term, &mut next, true)? {
            break;
        }
        for (o, n) in out.iter_mut().zip(&next) {
            if !n.is_zero() && !T::add_to(o, n) {
                return None;
            }
        }
        term = next;
    }
    Some(out)
}

/// An element of the truncated Magnus algebra.
#[derive(Clone)]
pub struct MagnusSeries {
    basis: Arc<Basis>,
    coeffs: Coeffs,
}

impl MagnusSeries {
    fn from_coeffs(basis: Arc<Basis>, coeffs: Coeffs) -> Self {
        MagnusSeries { basis, coeffs }
    }

    pub fn zero(shape: SeriesShape) -> Result<Self, MagnusError> {
        let basis = basis_for(shape)?;
        let n = basis.len();
        Ok(Self::from_coeffs(basis, Coeffs::Small(vec![0; n])))
    }

    pub fn one(shape: SeriesShape) -> Result<Self, MagnusError> {
        let mut s = Self::zero(shape)?;
        if let Coeffs::Small(v) = &mut s.coeffs {
            v[0] = 1;
        }
        Ok(s)
    }

    /// `1 + K_var`, or its inverse `1 - K_var + K_var^2 - ...`.
    pub fn generator(shape: SeriesShape, var: usize, inverse: bool) -> Result<Self, MagnusError> {
        Self::one(shape)?.mul_generator(var, inverse)
    }

    /// Builds a series from explicit terms; repeated monomials accumulate.
    pub fn from_terms<I>(shape: SeriesShape, terms: I) -> Result<Self, MagnusError>
    where
        I: IntoIterator<Item = (Vec<usize>, IBig)>,
    {
        let basis = basis_for(shape)?;
        let mut coeffs = vec![IBig::ZERO; basis.len()];
        for (m, c) in terms {
            let i = basis.encode(&m)?;
            coeffs[i] += c;
        }
        Ok(Self::from_coeffs(basis, Coeffs::Big(coeffs).normalized()))
    }

    pub fn shape(&self) -> SeriesShape {
        self.basis.shape
    }

    pub fn num_vars(&self) -> usize {
        self.basis.shape.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.basis.shape.max_degree
    }

    pub fn is_squarefree(&self) -> bool {
        self.basis.shape.squarefree
    }

    fn check_shape(&self, other: &Self) -> Result<(), MagnusError> {
        if self.shape() != other.shape() {
            return Err(MagnusError::ShapeMismatch(self.shape(), other.shape()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check_shape(other)?;
        Ok(self.mul_same(other))
    }

    /// Product of two series already known to share a shape.
    pub(crate) fn mul_same(&self, other: &Self) -> Self {
        let basis = &self.basis;
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            if let Some(v) = mul_kernel(basis, a, b) {
                return Self::from_coeffs(basis.clone(), Coeffs::Small(v));
            }
        }
        let v = mul_kernel(basis, &self.coeffs.to_big(), &other.coeffs.to_big()).expect("bignum arithmetic cannot overflow");
        Self::from_coeffs(basis.clone(), Coeffs::Big(v).normalized())
    }

    /// Right multiplication by `m_var^{±1}` (1-based variable).
    pub fn mul_generator(&self, var: usize, inverse: bool) -> Result<Self, MagnusError> {
        let k = self.num_vars();
        if var == 0 || var > k {
            return Err(MagnusError::VariableOutOfRange { var, num_vars: k });
        }
        let basis = &self.basis;
        if let Coeffs::Small(a) = &self.coeffs {
            if let Some(v) = mul_generator_kernel(basis, a, var - 1, inverse) {
                return Ok(Self::from_coeffs(basis.clone(), Coeffs::Small(v)));
            }
        }
        let v = mul_generator_kernel(basis, &self.coeffs.to_big(), var - 1, inverse).expect("bignum arithmetic cannot overflow");
        Ok(Self::from_coeffs(basis.clone(), Coeffs::Big(v).normalized()))
    }

    pub fn inverse(&self) -> Result<Self, MagnusError> {
        let c = self.constant_term();
        let unit = if c == IBig::ONE {
            1i64
        } else if c == -IBig::ONE {
            -1
        } else {
            return Err(MagnusError::NonUnitConstant(c));
        };
        let basis = &self.basis;
        if let Coeffs::Small(a) = &self.coeffs {
            if let Some(v) = inverse_kernel(basis, a, &unit) {
                return Ok(Self::from_coeffs(basis.clone(), Coeffs::Small(v)));
            }
        }
        let v = inverse_kernel(basis, &self.coeffs.to_big(), &IBig::from(unit)).expect("bignum arithmetic cannot overflow");
        Ok(Self::from_coeffs(basis.clone(), Coeffs::Big(v).normalized()))
    }

    pub fn constant_term(&self) -> IBig {
        self.coeffs.get(0)
    }

    /// Coefficient of `K_{m_1} ... K_{m_r}` (1-based variables).
    pub fn coefficient(&self, monomial: &[usize]) -> Result<IBig, MagnusError> {
        let i = self.basis.encode(monomial)?;
        Ok(self.coeffs.get(i))
    }

    /// Smallest degree >= 1 carrying a nonzero coefficient; `None` when the
    /// series is constant up to the truncation degree.
    pub fn min_degree(&self) -> Option<usize> {
        (1..self.basis.len()).find(|&i| !self.coeffs.is_zero_at(i)).map(|i| self.basis.degree[i] as usize)
    }

    pub fn is_one(&self) -> bool {
        self.constant_term() == IBig::ONE && self.min_degree().is_none()
    }

    /// Nonzero terms in canonical order (degree, then lexicographic).
    pub fn terms(&self) -> Vec<(Vec<usize>, IBig)> {
        (0..self.basis.len())
            .filter(|&i| !self.coeffs.is_zero_at(i))
            .map(|i| (self.basis.monomial(i), self.coeffs.get(i)))
            .collect()
    }

    /// Nonzero terms of exactly degree `g`.
    pub fn degree_part(&self, g: usize) -> Vec<(Vec<usize>, IBig)> {
        if g > self.max_degree() {
            return Vec::new();
        }
        let start = if g == 0 { 0 } else { self.basis.degree_end[g - 1] };
        (start..self.basis.degree_end[g])
            .filter(|&i| !self.coeffs.is_zero_at(i))
            .map(|i| (self.basis.monomial(i), self.coeffs.get(i)))
            .collect()
    }

    /// Drops every monomial with a repeated variable, landing in squarefree mode.
    pub fn squarefree_projection(&self) -> Result<Self, MagnusError> {
        let mut shape = self.shape();
        shape.squarefree = true;
        Self::from_terms(shape, self.terms().into_iter().filter(|(m, _)| is_squarefree(m)))
    }

    pub fn neg(&self) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Small(v) => match v.iter().map(|x| x.checked_neg()).collect::<Option<Vec<_>>>() {
                Some(n) => Coeffs::Small(n),
                None => Coeffs::Big(v.iter().map(|&x| -IBig::from(x)).collect()),
            },
            Coeffs::Big(v) => Coeffs::Big(v.iter().map(|x| -x).collect()).normalized(),
        };
        Self::from_coeffs(self.basis.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check_shape(other)?;
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            if let Some(v) = a.iter().zip(b).map(|(x, y)| x.checked_add(*y)).collect::<Option<Vec<_>>>() {
                return Ok(Self::from_coeffs(self.basis.clone(), Coeffs::Small(v)));
            }
        }
        let v = self.coeffs.to_big().into_iter().zip(other.coeffs.to_big()).map(|(x, y)| x + y).collect();
        Ok(Self::from_coeffs(self.basis.clone(), Coeffs::Big(v).normalized()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MagnusError> {
        self.add(&other.neg())
    }
}

pub(crate) fn is_squarefree(m: &[usize]) -> bool {
    let mut seen = 0u128;
    m.iter().all(|&v| {
        let bit = 1u128 << (v % 128);
        let fresh = seen & bit == 0;
        seen |= bit;
        fresh
    })
}

impl PartialEq for MagnusSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Small(a), Coeffs::Small(b)) => a == b,
            _ => self.coeffs.to_big() == other.coeffs.to_big(),
        }
    }
}

impl Eq for MagnusSeries {}

impl fmt::Debug for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MagnusSeries[{}]({})", self.shape(), self)
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in terms.iter().enumerate() {
            let negative = *c < IBig::ZERO;
            let mag = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != IBig::ONE {
                write!(f, "{mag}")?;
            }
            for v in m {
                write!(f, "K{v}")?;
            }
        }
        Ok(())
    }
}

/// Magnus expansion of a word in the meridians `m_1..m_k`.
pub fn expand_word(word: &GroupWord, shape: SeriesShape) -> Result<MagnusSeries, MagnusError> {
    let mut s = MagnusSeries::one(shape)?;
    for letter in word.letters() {
        match letter.generator {
            Generator::Meridian(v) if v >= 1 && v <= shape.num_vars => {
                s = s.mul_generator(v, letter.is_inverse())?;
            }
            g => return Err(MagnusError::UnknownGenerator(g.to_string())),
        }
    }
    Ok(s)
}

/// Magnus expansion with `alphabet[i]` sent to `1 + K_{i+1}`.
pub fn expand_word_over(word: &GroupWord, alphabet: &[Generator], shape: SeriesShape) -> Result<MagnusSeries, MagnusError> {
    let mut s = MagnusSeries::one(shape)?;
    for letter in word.letters() {
        let v = alphabet
            .iter()
            .position(|g| *g == letter.generator)
            .ok_or_else(|| MagnusError::UnknownGenerator(letter.generator.to_string()))?;
        s = s.mul_generator(v + 1, letter.is_inverse())?;
    }
    Ok(s)
}

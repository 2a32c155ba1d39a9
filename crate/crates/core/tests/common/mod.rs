#![allow(dead_code)]

use mubar_core::freeword::{Generator, GroupWord, Letter};
use mubar_core::stringlink::{EventList, MuIndex, StringLinkDiagram};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pair_alphabet(k: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            out.push(Generator::pair(i, j).unwrap());
        }
    }
    out
}

pub fn meridian_alphabet(k: usize) -> Vec<Generator> {
    (1..=k).map(|i| Generator::meridian(i).unwrap()).collect()
}

/// Raw letter sequence (not reduced) of length `0..=max_len`.
pub fn random_letters(r: &mut ChaCha8Rng, alphabet: &[Generator], max_len: usize) -> Vec<Letter> {
    let n = r.random_range(0..=max_len);
    (0..n).map(|_| Letter::new(alphabet[r.random_range(0..alphabet.len())], r.random_bool(0.5))).collect()
}

pub fn random_word(r: &mut ChaCha8Rng, alphabet: &[Generator], max_len: usize) -> GroupWord {
    GroupWord::reduce(random_letters(r, alphabet, max_len))
}

/// Nonempty after reduction.
pub fn random_nontrivial(r: &mut ChaCha8Rng, alphabet: &[Generator], max_len: usize) -> GroupWord {
    loop {
        let w = random_word(r, alphabet, max_len);
        if !w.is_identity() {
            return w;
        }
    }
}

pub fn compile(w: &GroupWord, k: usize) -> EventList {
    EventList::compile(w, k).unwrap()
}

pub fn idx(seq: &[usize]) -> MuIndex {
    MuIndex::from_sequence(seq).unwrap()
}

/// `μ` with an empty prefix read as 1, so convolution sums can use it uniformly.
pub fn mu_or_one(l: &EventList, prefix: &[usize], target: usize) -> i64 {
    if prefix.is_empty() {
        return 1;
    }
    let v = l.mu(&MuIndex::new(prefix.to_vec(), target).unwrap()).unwrap();
    i64::try_from(&v).unwrap()
}

/// Every sequence of distinct indices from `1..=k` with length in `2..=max_len`.
pub fn index_sequences(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(k: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for s in 1..=k {
            if !cur.contains(&s) {
                cur.push(s);
                go(k, max_len, cur, out);
                cur.pop();
            }
        }
    }
    go(k, max_len, &mut cur, &mut out);
    out
}

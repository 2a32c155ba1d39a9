//! Exact rank of integer matrices by fraction-free elimination.

use dashu_int::IBig;

/// Rank over the rationals of the matrix with the given rows (Bareiss
/// elimination, so every intermediate entry stays an integer).
pub fn rank(rows: &[Vec<IBig>]) -> usize {
    let mut m: Vec<Vec<IBig>> = rows.iter().filter(|r| r.iter().any(|x| *x != IBig::ZERO)).cloned().collect();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    for r in &mut m {
        r.resize(cols, IBig::ZERO);
    }
    let mut rank = 0;
    let mut prev = IBig::ONE;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != IBig::ZERO) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for cc in c + 1..cols {
                let v = (&m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc]) / &prev;
                m[r][cc] = v;
            }
            m[r][c] = IBig::ZERO;
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<IBig>> {
        rows.iter().map(|r| r.iter().map(|&x| IBig::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(&mat(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        assert_eq!(rank(&mat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        assert_eq!(rank(&mat(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[1, 0, -1, 0], &[0, 0, 0, 2]])), 3);
    }

    #[test]
    fn matches_rank_of_transpose() {
        let a = mat(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[8, 10, 6, 7], &[-2, 8, -2, 5]]);
        let t: Vec<Vec<IBig>> = (0..4).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect();
        assert_eq!(rank(&a), rank(&t));
        assert_eq!(rank(&a), 3);
    }
}

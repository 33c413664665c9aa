//! Invariant factors of small integer matrices.

/// Invariant factors `d₁ | d₂ | …` (nonnegative, zeros last), one per
/// diagonal position of the Smith normal form.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    assert!(rows <= 8 && cols <= 8, "matrix larger than 8×8");
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return finish(&a, n);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                None => break,
                Some((i, _)) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
            }
        }
    }
    finish(&a, n)
}

fn finish(a: &[Vec<i128>], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| i64::try_from(a[i][i].abs()).expect("invariant factor fits in i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
        assert_eq!(smith_invariants(&[vec![5]]), vec![5]);
    }

    #[test]
    fn mixed() {
        assert_eq!(
            smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(smith_invariants(&[vec![0, 4], vec![6, 0]]), vec![2, 12]);
        assert_eq!(smith_invariants(&[vec![2, -3]]), vec![1]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 0]]), vec![2, 0]);
    }
}

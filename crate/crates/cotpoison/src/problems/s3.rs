use super::{Answer, Symbol};
use crate::error::{Error, Result};

/// Subsequence-family answers, all via O(n^2) dynamic programming.
///
/// * `f` — length of the longest strictly increasing subsequence.
/// * `g` — minimum removals to make the array strictly increasing, `g = n - f`.
/// * `h` — number of distinct longest strictly increasing subsequences,
///   counted as distinct index sets.
/// * `i` — length of the longest bitonic subsequence (strictly increasing,
///   then strictly decreasing; either side may be empty).
///
/// Empty arrays yield 0 for `f`, `g` and `i`; `h` on an empty array is
/// rejected as ill-posed.
pub fn solve_s3(symbol: Symbol, array: &[i64]) -> Result<Answer> {
    if array.is_empty() {
        return match symbol {
            Symbol::H => Err(Error::invalid(
                "distinct-LIS count is undefined for an empty array",
            )),
            _ => Ok(Answer::count(0)),
        };
    }
    let value = match symbol {
        Symbol::F => lis_lengths(array).into_iter().max().unwrap_or(0),
        Symbol::G => {
            let lis = lis_lengths(array).into_iter().max().unwrap_or(0);
            array.len() as u64 - lis
        }
        Symbol::H => count_distinct_lis(array),
        Symbol::I => longest_bitonic(array),
    };
    Ok(Answer::count(value))
}

/// `lengths[j]` = length of the longest strictly increasing subsequence
/// ending at index `j`.
fn lis_lengths(array: &[i64]) -> Vec<u64> {
    let n = array.len();
    let mut lengths = vec![1u64; n];
    for j in 1..n {
        for k in 0..j {
            if array[k] < array[j] {
                lengths[j] = lengths[j].max(lengths[k] + 1);
            }
        }
    }
    lengths
}

fn count_distinct_lis(array: &[i64]) -> u64 {
    let n = array.len();
    let mut lengths = vec![1u64; n];
    let mut counts = vec![1u64; n];
    for j in 1..n {
        for k in 0..j {
            if array[k] < array[j] {
                if lengths[k] + 1 > lengths[j] {
                    lengths[j] = lengths[k] + 1;
                    counts[j] = counts[k];
                } else if lengths[k] + 1 == lengths[j] {
                    counts[j] += counts[k];
                }
            }
        }
    }
    let best = lengths.iter().copied().max().unwrap_or(0);
    lengths
        .iter()
        .zip(&counts)
        .filter(|(len, _)| **len == best)
        .map(|(_, c)| *c)
        .sum()
}

fn longest_bitonic(array: &[i64]) -> u64 {
    let n = array.len();
    let inc = lis_lengths(array);
    // Longest strictly decreasing subsequence starting at each index is the
    // LIS of the reversed array, read back-to-front.
    let reversed: Vec<i64> = array.iter().rev().copied().collect();
    let dec_rev = lis_lengths(&reversed);
    (0..n)
        .map(|j| inc[j] + dec_rev[n - 1 - j] - 1)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DESCENDING: [i64; 5] = [2, 1, 0, -1, -2];

    #[test]
    fn descending_array_answers() {
        assert_eq!(solve_s3(Symbol::F, &DESCENDING).unwrap().value, 1);
        assert_eq!(solve_s3(Symbol::G, &DESCENDING).unwrap().value, 4);
        assert_eq!(solve_s3(Symbol::H, &DESCENDING).unwrap().value, 5);
        assert_eq!(solve_s3(Symbol::I, &DESCENDING).unwrap().value, 5);
    }

    #[test]
    fn singleton_bitonic_is_one() {
        assert_eq!(solve_s3(Symbol::I, &[1]).unwrap().value, 1);
    }

    #[test]
    fn strictness_rules_out_duplicates() {
        assert_eq!(solve_s3(Symbol::F, &[3, 3, 3]).unwrap().value, 1);
        // Index sets are distinct even though the values repeat.
        assert_eq!(solve_s3(Symbol::H, &[3, 3, 3]).unwrap().value, 3);
    }

    #[test]
    fn classic_lis_example() {
        let a = [10, 9, 2, 5, 3, 7, 101, 18];
        assert_eq!(solve_s3(Symbol::F, &a).unwrap().value, 4);
        assert_eq!(solve_s3(Symbol::G, &a).unwrap().value, 4);
    }

    #[test]
    fn bitonic_peak_in_middle() {
        assert_eq!(solve_s3(Symbol::I, &[1, 3, 5, 4, 2]).unwrap().value, 5);
        assert_eq!(solve_s3(Symbol::I, &[1, 2, 3]).unwrap().value, 3);
    }

    #[test]
    fn empty_array_behavior() {
        assert_eq!(solve_s3(Symbol::F, &[]).unwrap().value, 0);
        assert_eq!(solve_s3(Symbol::G, &[]).unwrap().value, 0);
        assert_eq!(solve_s3(Symbol::I, &[]).unwrap().value, 0);
        assert!(solve_s3(Symbol::H, &[]).is_err());
    }
}

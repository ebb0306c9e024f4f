use super::{Answer, Symbol};
use crate::error::{Error, Result};

/// Interval-family answers.
///
/// * `f` — size of the largest subset of pairwise non-overlapping intervals
///   (end-time greedy).
/// * `g` — minimum removals so the rest are non-overlapping, `g = n - f`.
/// * `h` — minimum rooms so no two overlapping meetings share one (sweep of
///   simultaneous overlaps).
/// * `i` — fewest arrows so every interval contains an arrow (end-point
///   greedy stabbing).
///
/// Touching intervals (`end == next start`) count as non-overlapping, and an
/// arrow at a shared endpoint bursts both intervals.
pub fn solve_s2(symbol: Symbol, intervals: &[(i64, i64)]) -> Result<Answer> {
    for (s, e) in intervals {
        if s >= e {
            return Err(Error::invalid(format!(
                "interval ({s}, {e}) must have start < end"
            )));
        }
    }
    let value = match symbol {
        Symbol::F => max_non_overlapping(intervals),
        Symbol::G => intervals.len() as u64 - max_non_overlapping(intervals),
        Symbol::H => min_rooms(intervals),
        Symbol::I => min_arrows(intervals),
    };
    Ok(Answer::count(value))
}

fn max_non_overlapping(intervals: &[(i64, i64)]) -> u64 {
    let mut sorted: Vec<(i64, i64)> = intervals.to_vec();
    sorted.sort_by_key(|&(s, e)| (e, s));
    let mut count = 0u64;
    let mut last_end = i64::MIN;
    for (s, e) in sorted {
        if s >= last_end {
            count += 1;
            last_end = e;
        }
    }
    count
}

fn min_rooms(intervals: &[(i64, i64)]) -> u64 {
    // Sweep events; at a shared coordinate the departure is processed first,
    // so back-to-back meetings reuse a room.
    let mut events: Vec<(i64, i32)> = Vec::with_capacity(intervals.len() * 2);
    for &(s, e) in intervals {
        events.push((s, 1));
        events.push((e, -1));
    }
    events.sort_by_key(|&(t, delta)| (t, delta));
    let mut open = 0i64;
    let mut peak = 0i64;
    for (_, delta) in events {
        open += delta as i64;
        peak = peak.max(open);
    }
    peak as u64
}

fn min_arrows(intervals: &[(i64, i64)]) -> u64 {
    if intervals.is_empty() {
        return 0;
    }
    let mut sorted: Vec<(i64, i64)> = intervals.to_vec();
    sorted.sort_by_key(|&(s, e)| (e, s));
    let mut arrows = 0u64;
    let mut last_shot = i64::MIN;
    let mut have_shot = false;
    for (s, e) in sorted {
        if !have_shot || s > last_shot {
            arrows += 1;
            last_shot = e;
            have_shot = true;
        }
    }
    arrows
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIPLE: [(i64, i64); 3] = [(-6, -5), (-18, -13), (-16, -8)];

    #[test]
    fn triple_interval_answers() {
        assert_eq!(solve_s2(Symbol::F, &TRIPLE).unwrap().value, 2);
        assert_eq!(solve_s2(Symbol::G, &TRIPLE).unwrap().value, 1);
        assert_eq!(solve_s2(Symbol::H, &TRIPLE).unwrap().value, 2);
        assert_eq!(solve_s2(Symbol::I, &TRIPLE).unwrap().value, 2);
    }

    #[test]
    fn empty_input_yields_zero() {
        for sym in Symbol::ALL {
            assert_eq!(solve_s2(sym, &[]).unwrap().value, 0);
        }
    }

    #[test]
    fn touching_intervals_do_not_overlap() {
        let touching = [(0, 2), (2, 4)];
        assert_eq!(solve_s2(Symbol::F, &touching).unwrap().value, 2);
        assert_eq!(solve_s2(Symbol::G, &touching).unwrap().value, 0);
        assert_eq!(solve_s2(Symbol::H, &touching).unwrap().value, 1);
    }

    #[test]
    fn arrow_at_shared_endpoint_bursts_both() {
        // (1,3) and (3,5) share the point 3.
        assert_eq!(solve_s2(Symbol::I, &[(1, 3), (3, 5)]).unwrap().value, 1);
        assert_eq!(solve_s2(Symbol::I, &[(0, 1), (2, 3)]).unwrap().value, 2);
    }

    #[test]
    fn rejects_malformed_interval() {
        assert!(solve_s2(Symbol::F, &[(3, 3)]).is_err());
        assert!(solve_s2(Symbol::F, &[(5, 2)]).is_err());
    }

    #[test]
    fn removals_complement_kept_set() {
        let ivs = [(0, 10), (1, 3), (4, 6), (5, 9), (11, 12)];
        let f = solve_s2(Symbol::F, &ivs).unwrap().value;
        let g = solve_s2(Symbol::G, &ivs).unwrap().value;
        assert_eq!(f + g, ivs.len() as i64);
    }
}

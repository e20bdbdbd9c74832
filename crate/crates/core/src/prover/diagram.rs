use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::{green_restrict, macaulay_next, macaulay_prev, within_green};
use crate::sequences::{first_macaulay_violation, is_o_sequence, is_symmetric, HVector};

/// Rows of the exact sequence
/// `0 -> R/(I:L)(-1) -> R/I -> R/(I,L) -> 0` for a general linear form `L`.
///
/// `top` is the h-vector being decomposed; `mid` is the shifted
/// Gorenstein quotient (`mid[0] = 0`) and `bot` the hyperplane
/// restriction, so `top[i] = mid[i] + bot[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    pub mid: Vec<u64>,
    pub bot: Vec<u64>,
}

impl Diagram {
    /// The Gorenstein candidate `(mid[1], ..., mid[e])`.
    pub fn mid_candidate(&self) -> Result<HVector> {
        HVector::new(self.mid.get(1..).unwrap_or_default().to_vec())
    }

    /// Checks every diagram invariant against `top`.
    pub fn validate(&self, top: &HVector) -> Result<()> {
        let e = top.socle_degree();
        let fail = |msg: &str| Err(Error::domain(format!("diagram {self:?}: {msg}")));
        if self.mid.len() != e + 1 || self.bot.len() != e + 1 {
            return fail("rows must have length e + 1");
        }
        if (0..=e).any(|i| self.mid[i].checked_add(self.bot[i]) != Some(top.get(i))) {
            return fail("top != mid + bot");
        }
        if self.mid[0] != 0 || self.mid[1] != 1 {
            return fail("mid must start 0, 1");
        }
        let shifted = &self.mid[1..];
        if !shifted.iter().eq(shifted.iter().rev()) {
            return fail("mid is not symmetric");
        }
        if !is_o_sequence(&self.mid_candidate()?) {
            return fail("mid is not an O-sequence");
        }
        if (1..=e).any(|d| !within_green(self.bot[d], top.get(d), d)) {
            return fail("bot exceeds the Green bound");
        }
        if first_macaulay_violation(&self.bot).is_some() {
            return fail("bot is not an O-sequence");
        }
        Ok(())
    }
}

fn check_top(top: &HVector) -> Result<usize> {
    let e = top.socle_degree();
    if e < 3 || !is_symmetric(top) || top.get(e) != 1 {
        return Err(Error::domain(format!(
            "diagrams need a symmetric h-vector with socle degree >= 3 ending in 1, got {top}"
        )));
    }
    Ok(e)
}

/// Visits every Green-admissible decomposition of `top` in lexicographic
/// order of `mid`: `mid` symmetric with `mid[1] = 1` and an O-sequence,
/// `bot[d] <= green_restrict(top[d], d)`. The bottom row is *not* required
/// to be an O-sequence here.
pub fn for_each_candidate<F>(top: &HVector, mut visit: F) -> Result<()>
where
    F: FnMut(Diagram) -> ControlFlow<()>,
{
    let e = check_top(top)?;
    // free positions 2..=k, mirrored to e + 1 - i
    let k = e.div_ceil(2);
    let mut ranges = Vec::new();
    for i in 2..=k {
        let j = e + 1 - i;
        let hi = top.get(i).min(top.get(j));
        let lo_at = |d: usize| -> Result<u64> {
            Ok(top.get(d).saturating_sub(green_restrict(top.get(d), d)?))
        };
        let lo = lo_at(i)?.max(lo_at(j)?);
        if lo > hi {
            return Ok(());
        }
        ranges.push(lo..=hi);
    }

    let mut mid = vec![0u64; e + 1];
    mid[1] = 1;
    mid[e] = 1;
    let mut counters: Vec<u64> = ranges.iter().map(|r| *r.start()).collect();
    loop {
        for (offset, &value) in counters.iter().enumerate() {
            mid[2 + offset] = value;
            mid[e - 1 - offset] = value;
        }
        let bot: Vec<u64> = (0..=e).map(|i| top.get(i) - mid[i]).collect();
        let admissible = (1..=e).all(|d| within_green(bot[d], top.get(d), d))
            && HVector::new(mid[1..].to_vec()).is_ok_and(|m| is_o_sequence(&m));
        if admissible {
            if let ControlFlow::Break(()) = visit(Diagram { mid: mid.clone(), bot }) {
                return Ok(());
            }
        }
        // odometer, last position fastest
        let mut pos = counters.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            if counters[pos] < *ranges[pos].end() {
                counters[pos] += 1;
                for (p, c) in counters.iter_mut().enumerate().skip(pos + 1) {
                    *c = *ranges[p].start();
                }
                break;
            }
        }
    }
}

/// All Green-admissible decompositions, bottom row unconstrained.
pub fn diagram_candidates(top: &HVector) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for_each_candidate(top, |d| {
        out.push(d);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// All diagrams satisfying every invariant, bottom row an O-sequence,
/// in lexicographic order of `mid`. Does not consult any fact base.
pub fn enumerate_diagrams(top: &HVector) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for_each_candidate(top, |d| {
        if first_macaulay_violation(&d.bot).is_none() {
            out.push(d);
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Dimension of the socle forced in degree `d - 1` by maximal growth
/// from `h_d` to `h_{d+1}`; 0 when the hypotheses fail.
pub fn detect_forced_socle(h_prev: u64, h_d: u64, h_next: u64, d: usize) -> Result<u64> {
    if h_prev == 0 || h_d == 0 || h_next == 0 || d < 2 {
        return Err(Error::domain(format!(
            "forced socle needs positive values and d >= 2, got ({h_prev},{h_d},{h_next}) at {d}"
        )));
    }
    let least = macaulay_prev(h_d, d)?;
    let next = macaulay_next(h_d, d)?;
    Ok(if least <= h_prev && next == h_next {
        h_prev - least
    } else {
        0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(s: &str) -> HVector {
        s.parse().unwrap()
    }

    fn diagram(mid: &[u64], bot: &[u64]) -> Diagram {
        Diagram {
            mid: mid.to_vec(),
            bot: bot.to_vec(),
        }
    }

    #[test]
    fn socle_four_unique_diagram() {
        let found = enumerate_diagrams(&hv("1,12,11,12,1")).unwrap();
        assert_eq!(found, vec![diagram(&[0, 1, 8, 8, 1], &[1, 11, 3, 4, 0])]);
        let found = enumerate_diagrams(&hv("1,17,15,17,1")).unwrap();
        assert_eq!(found, vec![diagram(&[0, 1, 10, 10, 1], &[1, 16, 5, 7, 0])]);
    }

    #[test]
    fn socle_five_diagrams() {
        let found = enumerate_diagrams(&hv("1,17,15,15,17,1")).unwrap();
        assert_eq!(found, vec![diagram(&[0, 1, 12, 11, 12, 1], &[1, 16, 3, 4, 5, 0])]);
        let found = enumerate_diagrams(&hv("1,16,15,15,16,1")).unwrap();
        assert_eq!(
            found,
            vec![
                diagram(&[0, 1, 11, 10, 11, 1], &[1, 15, 4, 5, 5, 0]),
                diagram(&[0, 1, 11, 11, 11, 1], &[1, 15, 4, 4, 5, 0]),
                diagram(&[0, 1, 12, 11, 12, 1], &[1, 15, 3, 4, 4, 0]),
            ]
        );
        let found = enumerate_diagrams(&hv("1,25,22,22,25,1")).unwrap();
        let mids: Vec<Vec<u64>> = found.iter().map(|d| d.mid.clone()).collect();
        assert_eq!(
            mids,
            vec![
                vec![0, 1, 16, 12, 16, 1],
                vec![0, 1, 16, 13, 16, 1],
                vec![0, 1, 16, 14, 16, 1],
                vec![0, 1, 16, 15, 16, 1],
                vec![0, 1, 17, 15, 17, 1],
            ]
        );
    }

    #[test]
    fn candidates_include_bottom_violations() {
        let all = diagram_candidates(&hv("1,17,15,15,17,1")).unwrap();
        assert!(all.len() > 1);
        assert!(all.windows(2).all(|w| w[0].mid < w[1].mid));
        let valid: Vec<_> = all
            .iter()
            .filter(|d| first_macaulay_violation(&d.bot).is_none())
            .collect();
        assert_eq!(valid.len(), 1);
    }

    #[test]
    fn every_enumerated_diagram_validates() {
        for top in ["1,12,11,12,1", "1,16,15,15,16,1", "1,25,22,22,25,1", "1,10,30,30,10,1", "1,5,9,9,9,5,1"] {
            let top = hv(top);
            for d in enumerate_diagrams(&top).unwrap() {
                d.validate(&top).unwrap();
            }
        }
    }

    #[test]
    fn bad_tops_rejected() {
        assert!(enumerate_diagrams(&hv("1,3,6,10,14")).is_err());
        assert!(enumerate_diagrams(&hv("1,3,1")).is_err());
        assert!(enumerate_diagrams(&hv("1,2,3,2,2")).is_err());
    }

    #[test]
    fn forced_socle_examples() {
        assert_eq!(detect_forced_socle(11, 12, 17, 3), Ok(3));
        assert_eq!(detect_forced_socle(22, 25, 36, 4), Ok(6));
        assert_eq!(detect_forced_socle(8, 12, 16, 3), Ok(0));
        // least predecessor not reached
        assert_eq!(detect_forced_socle(7, 12, 17, 3), Ok(0));
        assert!(detect_forced_socle(0, 12, 17, 3).is_err());
    }
}

//! Octant walk of a closed chain of polynomial pieces in the punctured plane.
//!
//! Positions are counted in eighths of a turn: even values are the half-axes
//! (0 is the positive x-axis), odd values the open quadrants. Between two
//! consecutive samples at most one coordinate changes sign, so every step is
//! at most a quarter turn and the total over the closed chain is a multiple
//! of eight.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

use super::roots::{RootInterval, SturmData};
use super::upoly::{half, UniPoly};

/// A polynomial map `[lo, hi] -> R^2`; the end of each piece is the start of the next.
#[derive(Debug, Clone)]
pub(crate) struct Piece {
    pub f1: UniPoly,
    pub f2: UniPoly,
    pub lo: BigRational,
    pub hi: BigRational,
}

/// One sample of the itinerary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stop {
    pub piece: usize,
    pub t: String,
    pub octant: u8,
    pub region: &'static str,
}

/// Exact winding number together with the itinerary that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindingDetails {
    pub winding: i64,
    /// Signed quarter turns summed around the loop (always a multiple of 4).
    pub quarter_turns: i64,
    pub itinerary: Vec<Stop>,
}

const REGIONS: [&str; 8] = ["+x", "Q1", "+y", "Q2", "-x", "Q3", "-y", "Q4"];

fn octant(s1: i32, s2: i32) -> Option<u8> {
    Some(match (s1, s2) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => return None,
    })
}

/// Common zero of `f1, f2` in `[lo, hi]`, as an isolating interval.
pub(crate) fn common_zero(piece: &Piece) -> Option<RootInterval> {
    let g = if piece.f1.is_zero() {
        piece.f2.clone()
    } else if piece.f2.is_zero() {
        piece.f1.clone()
    } else {
        piece.f1.gcd(&piece.f2)
    };
    if g.is_zero() {
        return Some(RootInterval::Open {
            lo: piece.lo.clone(),
            hi: piece.hi.clone(),
        });
    }
    SturmData::new(&g).isolate(&piece.lo, &piece.hi).into_iter().next()
}

/// Roots of `f1^2 + f2^2` in `[lo, hi]`, counted by Sturm's theorem.
pub(crate) fn norm_root_count(piece: &Piece) -> usize {
    let norm = piece.f1.mul(&piece.f1).add(&piece.f2.mul(&piece.f2));
    if norm.is_zero() {
        return usize::MAX;
    }
    SturmData::new(&norm).count_closed(&piece.lo, &piece.hi)
}

fn roots_of(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> (Option<SturmData>, Vec<RootInterval>) {
    if p.is_zero() {
        return (None, Vec::new());
    }
    let s = SturmData::new(p);
    let ivs = s
        .isolate(lo, hi)
        .into_iter()
        .filter(|iv| !matches!(iv, RootInterval::Exact(r) if r == hi))
        .collect();
    (Some(s), ivs)
}

const MAX_BISECTIONS: usize = 100_000;

/// Sorted root intervals of both coordinates, refined until strictly separated
/// from each other and from `hi`.
fn separated(piece: &Piece) -> Result<Vec<RootInterval>> {
    let (s1, r1) = roots_of(&piece.f1, &piece.lo, &piece.hi);
    let (s2, r2) = roots_of(&piece.f2, &piece.lo, &piece.hi);
    let mut all: Vec<(RootInterval, usize)> =
        r1.into_iter().map(|r| (r, 0)).chain(r2.into_iter().map(|r| (r, 1))).collect();
    let sturm = [s1, s2];
    let bisect = |iv: &mut (RootInterval, usize)| {
        let s = sturm[iv.1].as_ref().expect("roots come from a nonzero polynomial");
        iv.0 = s.bisect(&iv.0);
    };
    for _ in 0..MAX_BISECTIONS {
        all.sort_by(|a, b| a.0.start().cmp(b.0.start()).then(a.0.end().cmp(b.0.end())));
        let clash = (0..all.len().saturating_sub(1)).find(|&i| all[i].0.end() >= all[i + 1].0.start());
        if let Some(i) = clash {
            if all[i].0.is_exact() && all[i + 1].0.is_exact() {
                return Err(Error::Precondition(format!(
                    "both coordinates vanish at {}",
                    all[i].0.start()
                )));
            }
            for k in [i, i + 1] {
                if !all[k].0.is_exact() {
                    bisect(&mut all[k]);
                }
            }
            continue;
        }
        match all.last_mut() {
            Some(last) if *last.0.end() >= piece.hi => bisect(last),
            _ => return Ok(all.into_iter().map(|(iv, _)| iv).collect()),
        }
    }
    Err(Error::Internal("root intervals failed to separate".into()))
}

fn samples(piece: &Piece) -> Result<Vec<BigRational>> {
    let ivs = separated(piece)?;
    let mut out = vec![piece.lo.clone()];
    for w in ivs.windows(2) {
        out.push((w[0].end() + w[1].start()) * half());
    }
    if let Some(last) = ivs.last() {
        out.push((last.end() + &piece.hi) * half());
    }
    Ok(out)
}

/// Walks the closed chain `pieces` and sums the signed eighth turns.
pub(crate) fn walk(pieces: &[Piece]) -> Result<WindingDetails> {
    let mut itinerary = Vec::new();
    for (k, piece) in pieces.iter().enumerate() {
        for t in samples(piece)? {
            let (s1, s2) = (piece.f1.sign_at(&t), piece.f2.sign_at(&t));
            let o = octant(s1, s2)
                .ok_or_else(|| Error::Precondition(format!("the loop passes through the origin at {t}")))?;
            itinerary.push(Stop {
                piece: k,
                t: t.to_string(),
                octant: o,
                region: REGIONS[o as usize],
            });
        }
    }
    let n = itinerary.len();
    let mut total: i64 = 0;
    for i in 0..n {
        let (a, b) = (itinerary[i].octant, itinerary[(i + 1) % n].octant);
        total += match (b + 8 - a) % 8 {
            0 => 0,
            1 => 1,
            2 => 2,
            6 => -2,
            7 => -1,
            d => {
                return Err(Error::Internal(format!(
                    "walk jumped {d} eighths between samples {} and {}",
                    itinerary[i].t,
                    itinerary[(i + 1) % n].t
                )))
            }
        };
    }
    if total % 8 != 0 {
        return Err(Error::Internal(format!("walk does not close: {total} eighth turns")));
    }
    Ok(WindingDetails {
        winding: total / 8,
        quarter_turns: total / 2,
        itinerary,
    })
}

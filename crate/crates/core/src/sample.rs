//! Generators of valid diagram codes: braid closures and random diagrams.
//!
//! Used to build the bundled catalog and to drive randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codec::{OrientedPDCode, PdCrossing, Sign};

/// Code of the closure of a braid word on `strands` strands. Generator `i`
/// (1-based, sign gives the crossing sign) crosses strands at positions `i-1`
/// and `i`. Returns `None` when some strand position is never used or the
/// closure would be split, since such closures are not connected diagrams.
pub fn braid_closure(strands: usize, word: &[i32]) -> Option<OrientedPDCode> {
    if strands < 2 || word.is_empty() {
        return None;
    }
    let used: std::collections::BTreeSet<usize> =
        word.iter().map(|g| g.unsigned_abs() as usize).collect();
    if used.iter().any(|&g| g == 0 || g >= strands) || used.len() != strands - 1 {
        return None;
    }
    // union-find over provisional labels; closing arcs get merged at the end
    let mut parent: Vec<usize> = (0..strands).collect();
    let mut current: Vec<usize> = (0..strands).collect();
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (left, right) = (current[i], current[i + 1]);
        let (new_left, new_right) = (parent.len(), parent.len() + 1);
        parent.push(new_left);
        parent.push(new_right);
        // strands run upward; the left strand moves right and vice versa
        let crossing = if g > 0 {
            // over strand runs bottom-left to top-right
            ([right, left, new_left, new_right], Sign::Positive)
        } else {
            ([left, right, new_right, new_left], Sign::Negative)
        };
        raw.push(crossing);
        current[i] = new_left;
        current[i + 1] = new_right;
    }
    for (bottom, &top) in current.iter().enumerate() {
        parent[top] = bottom;
    }
    fn root(parent: &[usize], mut a: usize) -> usize {
        while parent[a] != a {
            a = parent[a];
        }
        a
    }
    let mut label = vec![0u32; parent.len()];
    let mut next = 0;
    for a in 0..parent.len() {
        let r = root(&parent, a);
        if label[r] == 0 {
            next += 1;
            label[r] = next;
        }
        label[a] = label[r];
    }
    let crossings = raw
        .into_iter()
        .map(|(l, s)| PdCrossing::new(l.map(|a| label[root(&parent, a)]), s))
        .collect();
    OrientedPDCode::new(crossings).ok()
}

/// Random connected diagram with at most `max_crossings` crossings (and at
/// least one), built as a braid closure with randomly permuted arc labels.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize) -> OrientedPDCode {
    assert!(max_crossings >= 1);
    loop {
        let len = rng.gen_range(1..=max_crossings);
        let strands = rng.gen_range(2..=(len + 1).min(5));
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        if let Some(code) = braid_closure(strands, &word) {
            let mut perm: Vec<u32> = (1..=2 * code.crossing_count() as u32).collect();
            perm.shuffle(rng);
            return code.relabel(&perm).expect("relabeling keeps validity");
        }
    }
}

/// A knot containing the ♯-move tangle: two parallel strands crossing two
/// parallel strands in an alternating square (crossings 0..4), closed up with
/// one extra crossing.
pub fn sharp_move_closure() -> OrientedPDCode {
    braid_closure(4, &[2, -1, -3, 2, 3]).expect("connected closure")
}

/// The square face bounded by the four crossings of [`sharp_move_closure`].
pub fn sharp_square(diagram: &crate::diagram::Diagram) -> Option<usize> {
    diagram
        .faces()
        .iter()
        .find(|f| f.quadrants.len() == 4 && f.boundary_crossings == [0, 1, 2, 3])
        .map(|f| f.id)
}

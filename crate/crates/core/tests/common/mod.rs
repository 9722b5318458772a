//! Oracles that work on codes directly, without the library's diagram,
//! solver or Arf code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rcc::codec::{parse_pd, CatalogEntry, OrientedPDCode, PdCrossing, Sign};

pub fn catalog() -> Vec<CatalogEntry> {
    let cat = rcc::codec::bundled_catalog();
    assert!(cat.diagnostics.is_empty(), "{:?}", cat.diagnostics);
    cat.entries
}

pub fn entry(name: &str) -> OrientedPDCode {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("no catalog entry {name}"))
        .code
}

pub fn code(text: &str) -> OrientedPDCode {
    parse_pd(text).unwrap()
}

/// `[under_in, over_in, under_out, over_out]` as 0-based arcs, plus sign.
pub fn quads(code: &OrientedPDCode) -> Vec<([usize; 4], i64)> {
    code.crossings()
        .iter()
        .map(|x| {
            let l = x.labels();
            (
                l.map(|v| v as usize - 1),
                if x.sign == Sign::Positive { 1 } else { -1 },
            )
        })
        .collect()
}

/// Component index of every arc, numbering components by lowest arc.
pub fn arc_components(code: &OrientedPDCode) -> (Vec<usize>, usize) {
    let q = quads(code);
    let arcs = 2 * q.len();
    let mut next = vec![0; arcs];
    for (l, _) in &q {
        next[l[0]] = l[2];
        next[l[1]] = l[3];
    }
    let mut comp = vec![usize::MAX; arcs];
    let mut n = 0;
    for start in 0..arcs {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut a = start;
        while comp[a] == usize::MAX {
            comp[a] = n;
            a = next[a];
        }
        n += 1;
    }
    (comp, n.max(1))
}

/// `(under component, over component)` at each crossing.
pub fn strands(code: &OrientedPDCode) -> Vec<(usize, usize)> {
    let (comp, _) = arc_components(code);
    quads(code)
        .iter()
        .map(|(l, _)| (comp[l[0]], comp[l[1]]))
        .collect()
}

/// Entry `(i, j)` sums the signs of the crossings where `K_i` passes over
/// `K_j`; that count alone is `lk(K_i, K_j)`.
pub fn linking_over(code: &OrientedPDCode) -> Vec<Vec<i64>> {
    let (_, n) = arc_components(code);
    let mut lk = vec![vec![0; n]; n];
    for ((u, o), (_, s)) in strands(code).into_iter().zip(quads(code)) {
        if u != o {
            lk[o][u] += s;
        }
    }
    lk
}

pub fn parity_vector(code: &OrientedPDCode) -> Vec<i64> {
    linking_over(code)
        .iter()
        .map(|row| row.iter().sum::<i64>().rem_euclid(2))
        .collect()
}

pub fn proper(code: &OrientedPDCode) -> bool {
    parity_vector(code).iter().all(|&p| p == 0)
}

/// Every component of the graph with one edge per selected inter-component
/// crossing has even degree.
pub fn parity_admissible(code: &OrientedPDCode, q: &[usize]) -> bool {
    let (_, n) = arc_components(code);
    let st = strands(code);
    let mut deg = vec![0; n];
    for &x in q {
        let (u, o) = st[x];
        if u != o {
            deg[u] += 1;
            deg[o] += 1;
        }
    }
    deg.iter().all(|d| d % 2 == 0)
}

/// Swaps over and under at the listed crossings.
pub fn flip(code: &OrientedPDCode, xs: impl IntoIterator<Item = usize>) -> OrientedPDCode {
    let set: BTreeSet<usize> = xs.into_iter().collect();
    let crossings = code
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if set.contains(&i) {
                let [ui, oi, uo, oo] = x.labels();
                PdCrossing::new([oi, ui, oo, uo], x.sign.flipped())
            } else {
                *x
            }
        })
        .collect();
    OrientedPDCode::new(crossings).unwrap()
}

/// Faces as lists of corners `(crossing, k)`, traced from the rotation at
/// each crossing.
pub fn faces(code: &OrientedPDCode) -> Vec<Vec<(usize, usize)>> {
    let q = quads(code);
    if q.is_empty() {
        return vec![vec![], vec![]];
    }
    // ccw arc order; the role at each position tells which end the arc is
    let rot: Vec<[(usize, bool); 4]> = q
        .iter()
        .map(|&([ui, oi, uo, oo], s)| {
            if s > 0 {
                [(ui, true), (oo, false), (uo, false), (oi, true)]
            } else {
                [(ui, true), (oi, true), (uo, false), (oo, false)]
            }
        })
        .collect();
    let mut head = vec![(0, 0); 2 * q.len()];
    let mut tail = vec![(0, 0); 2 * q.len()];
    for (x, r) in rot.iter().enumerate() {
        for (p, &(a, incoming)) in r.iter().enumerate() {
            if incoming {
                head[a] = (x, p);
            } else {
                tail[a] = (x, p);
            }
        }
    }
    let mut seen = vec![[false; 4]; q.len()];
    let mut out = Vec::new();
    for x in 0..q.len() {
        for k in 0..4 {
            if seen[x][k] {
                continue;
            }
            let mut face = Vec::new();
            let (mut y, mut j) = (x, k);
            while !seen[y][j] {
                seen[y][j] = true;
                face.push((y, j));
                let p = (j + 1) % 4;
                let (a, incoming) = rot[y][p];
                (y, j) = if incoming { tail[a] } else { head[a] };
            }
            out.push(face);
        }
    }
    out
}

/// Boundary crossings of each face as a bit mask.
pub fn face_masks(code: &OrientedPDCode) -> Vec<u64> {
    faces(code)
        .iter()
        .map(|f| f.iter().fold(0u64, |m, &(x, _)| m | 1 << x))
        .collect()
}

pub fn rank_gf2(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Smallest number of faces whose combined flips equal `target`.
pub fn brute_min(masks: &[u64], target: u64) -> Option<usize> {
    assert!(masks.len() <= 24);
    let mut best: Option<usize> = None;
    for subset in 0u32..1 << masks.len() {
        let effect = (0..masks.len())
            .filter(|&i| subset >> i & 1 == 1)
            .fold(0u64, |e, i| e ^ masks[i]);
        if effect == target {
            let k = subset.count_ones() as usize;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best
}

/// Walks each listed `(component, start arc, forward)` and reports whether
/// every crossing is first met on its over-strand.
pub fn descending(code: &OrientedPDCode, order: &[(usize, usize, bool)]) -> bool {
    let q = quads(code);
    let arcs = 2 * q.len();
    // per arc: (crossing it enters, entering as over), (crossing it leaves, leaving as over)
    let mut enters = vec![(0, false); arcs];
    let mut leaves = vec![(0, false); arcs];
    for (x, (l, _)) in q.iter().enumerate() {
        enters[l[0]] = (x, false);
        enters[l[1]] = (x, true);
        leaves[l[2]] = (x, false);
        leaves[l[3]] = (x, true);
    }
    let mut next = vec![0; arcs];
    let mut prev = vec![0; arcs];
    for (l, _) in &q {
        next[l[0]] = l[2];
        next[l[1]] = l[3];
        prev[l[2]] = l[0];
        prev[l[3]] = l[1];
    }
    let mut seen = vec![false; q.len()];
    for &(_, start, forward) in order {
        let mut a = start;
        loop {
            let (x, over) = if forward { enters[a] } else { leaves[a] };
            if !seen[x] {
                seen[x] = true;
                if !over {
                    return false;
                }
            }
            a = if forward { next[a] } else { prev[a] };
            if a == start {
                break;
            }
        }
    }
    true
}

/// `|det|` of a knot from its Fox coloring matrix with one row and one
/// column removed.
pub fn knot_determinant(code: &OrientedPDCode) -> u64 {
    let q = quads(code);
    let c = q.len();
    if c == 0 {
        return 1;
    }
    // over-arcs: merge the two halves of every over-strand
    let mut parent: Vec<usize> = (0..2 * c).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for (l, _) in &q {
        let (a, b) = (find(&mut parent, l[1]), find(&mut parent, l[3]));
        parent[a] = b;
    }
    let roots: Vec<usize> = {
        let mut r: Vec<usize> = (0..2 * c).map(|a| find(&mut parent, a)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    assert_eq!(roots.len(), c, "knot diagrams have c over-arcs");
    let idx = |p: &mut Vec<usize>, a: usize| roots.binary_search(&find(p, a)).unwrap();
    let mut m = vec![vec![0f64; c]; c];
    for (i, (l, _)) in q.iter().enumerate() {
        m[i][idx(&mut parent, l[1])] += 2.0;
        m[i][idx(&mut parent, l[0])] -= 1.0;
        m[i][idx(&mut parent, l[2])] -= 1.0;
    }
    let minor: Vec<Vec<f64>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    det_f64(minor).abs().round() as u64
}

fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let Some(p) = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())) else {
            return det;
        };
        if a[p][col].abs() < 1e-9 {
            return 0.0;
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let f = row[col] / pivot[col];
            for (v, p) in row.iter_mut().zip(&pivot).skip(col) {
                *v -= f * p;
            }
        }
    }
    det
}

pub fn arf_from_determinant(det: u64) -> u8 {
    match det % 8 {
        1 | 7 => 0,
        3 | 5 => 1,
        d => panic!("knot determinant {det} is even (residue {d})"),
    }
}

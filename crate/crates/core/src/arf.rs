//! Arf invariants of proper links and how region crossing changes move them.
//!
//! For a face `R` colored white, each boundary crossing `c` carries its writhe
//! sign `a(c)` and a checkerboard sign `w(c)`. `A(R) = ½ Σ (a(c) − w(c))` is
//! always even, and a region crossing change at `R` changes the Arf invariant
//! exactly when `A(R) ≡ 2 (mod 4)`. Nugatory crossings that `R` meets in two
//! opposite corners are left out of the sum.
//!
//! The Arf invariant itself is computed independently: smooth inter-component
//! crossings along the orientation until one component remains, then read the
//! knot determinant (from a Goeritz matrix) modulo 8.

use crate::diagram::{Color, Diagram, Role};
use crate::error::{Error, Result};
use crate::region_solver::RegionSelection;
use crate::unknotter::{self, BasePointOrdering};

/// Checkerboard sign convention. Looking along the over-strand, `w(c) = +1`
/// when the white quadrants at `c` are front-left and back-right, multiplied
/// by this constant. With `-1` the ♯-move square has `A = 2`.
pub const W_FRONT_LEFT_SIGN: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSigns {
    pub crossing: usize,
    /// Writhe sign.
    pub a: i64,
    /// Checkerboard sign relative to the white region.
    pub w: i64,
    /// The face meets this crossing in two opposite corners.
    pub nugatory: bool,
}

/// Sign data of one face with that face colored white.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSignData {
    pub region: usize,
    pub crossings: Vec<CrossingSigns>,
    /// Counts of `(a, w)` = (−,+), (+,−), (+,+), (−,−) over the crossings
    /// that are not nugatory for this face.
    pub m_minus_plus: usize,
    pub m_plus_minus: usize,
    pub m_plus_plus: usize,
    pub m_minus_minus: usize,
    pub a_value: i64,
}

/// `w(c)` for the coloring `colors`.
pub fn checkerboard_sign(diagram: &Diagram, colors: &[Color], x: usize) -> i64 {
    let over_in = diagram.crossing(x).position(Role::OverIn);
    // corner over_in is back-right, corner over_in + 2 front-left
    if colors[diagram.corner_face(x, over_in)] == Color::White {
        W_FRONT_LEFT_SIGN
    } else {
        -W_FRONT_LEFT_SIGN
    }
}

pub fn region_signs(diagram: &Diagram, region: usize) -> RegionSignData {
    let colors = diagram.checkerboard(region);
    let crossings: Vec<CrossingSigns> = diagram
        .face(region)
        .boundary_crossings
        .iter()
        .map(|&x| CrossingSigns {
            crossing: x,
            a: diagram.crossing_sign(x),
            w: checkerboard_sign(diagram, &colors, x),
            nugatory: (0..4).filter(|&k| diagram.corner_face(x, k) == region).count() == 2,
        })
        .collect();
    let counted = || crossings.iter().filter(|s| !s.nugatory);
    let count = |a: i64, w: i64| counted().filter(|s| s.a == a && s.w == w).count();
    let sum: i64 = counted().map(|s| s.a - s.w).sum();
    RegionSignData {
        region,
        m_minus_plus: count(-1, 1),
        m_plus_minus: count(1, -1),
        m_plus_plus: count(1, 1),
        m_minus_minus: count(-1, -1),
        a_value: sum / 2,
        crossings,
    }
}

/// Goeritz matrix on the white faces of `colors`, one row/column per white
/// face in increasing face id.
pub fn goeritz_matrix(diagram: &Diagram, colors: &[Color]) -> Vec<Vec<i64>> {
    let white: Vec<usize> = (0..diagram.face_count())
        .filter(|&f| colors[f] == Color::White)
        .collect();
    let index = |f: usize| white.binary_search(&f).expect("white face");
    let mut g = vec![vec![0i64; white.len()]; white.len()];
    for x in 0..diagram.crossing_count() {
        let eta = checkerboard_sign(diagram, colors, x);
        let k = (0..4)
            .find(|&k| colors[diagram.corner_face(x, k)] == Color::White)
            .expect("two white corners per crossing");
        let (i, j) = (
            index(diagram.corner_face(x, k)),
            index(diagram.corner_face(x, k + 2)),
        );
        if i != j {
            g[i][j] += eta;
            g[j][i] += eta;
            g[i][i] -= eta;
            g[j][j] -= eta;
        }
    }
    g
}

/// Exact integer determinant (fraction-free Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `|det|` of the link, from the Goeritz matrix of the default white faces
/// with the first white face deleted.
pub fn link_determinant(diagram: &Diagram) -> u128 {
    if diagram.crossing_count() == 0 {
        return 1;
    }
    reduced_goeritz_determinant(diagram, diagram.coloring(), 0)
}

/// `|det|` of the Goeritz matrix of `colors` with white face number `skip`
/// (in increasing face order) deleted.
pub fn reduced_goeritz_determinant(diagram: &Diagram, colors: &[Color], skip: usize) -> u128 {
    let g = goeritz_matrix(diagram, colors);
    let reduced: Vec<Vec<i64>> = g
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    determinant(&reduced).unsigned_abs()
}

/// Arf invariant of a knot: 0 iff `det ≡ ±1 (mod 8)`.
pub fn arf_knot(diagram: &Diagram) -> Result<u8> {
    let n = diagram.component_count();
    if n != 1 {
        return Err(Error::MultiComponent(n));
    }
    let det = link_determinant(diagram);
    debug_assert!(det % 2 == 1, "knot determinants are odd, got {det}");
    Ok(match det % 8 {
        1 | 7 => 0,
        _ => 1,
    })
}

/// First crossing between two different components.
pub fn first_inter_component_crossing(diagram: &Diagram) -> Option<usize> {
    (0..diagram.crossing_count()).find(|&x| !diagram.is_self_crossing(x))
}

/// Arf invariant of a proper link: smooth inter-component crossings (lowest
/// id first) down to a knot.
pub fn arf_link(diagram: &Diagram) -> Result<u8> {
    arf_link_by(diagram, first_inter_component_crossing)
}

/// [`arf_link`] with a caller-chosen crossing at every smoothing step.
pub fn arf_link_by(
    diagram: &Diagram,
    mut choose: impl FnMut(&Diagram) -> Option<usize>,
) -> Result<u8> {
    if !diagram.is_proper() {
        return Err(Error::NotProper);
    }
    let mut current = diagram.clone();
    while current.component_count() > 1 {
        let x = choose(&current).ok_or(Error::Split)?;
        current = current.smooth_crossing(x)?;
    }
    arf_knot(&current)
}

/// Predicted `Arf(L) + Arf(L')` where `L'` is `L` after a region crossing
/// change at `region`.
pub fn arf_delta(diagram: &Diagram, region: usize) -> Result<u8> {
    if !diagram.is_proper() {
        return Err(Error::NotProper);
    }
    Ok(delta_bit(region_signs(diagram, region).a_value))
}

fn delta_bit(a: i64) -> u8 {
    debug_assert!(a % 2 == 0, "A(R) = {a} is odd");
    if a.rem_euclid(4) == 0 {
        0
    } else {
        1
    }
}

/// Arf invariant read off an unknotting region set: apply the faces one at a
/// time (increasing id) and add up `A(R)` of each face in the diagram it is
/// applied to. The result must be descending for `ord`.
pub fn arf_via_regions_with(
    diagram: &Diagram,
    regions: &RegionSelection,
    ord: &BasePointOrdering,
) -> Result<u8> {
    if !diagram.is_proper() {
        return Err(Error::NotProper);
    }
    let mut current = diagram.clone();
    let mut total = 0i64;
    for f in regions.ids() {
        total += region_signs(&current, f).a_value;
        current = current.flip_crossings(current.face(f).boundary_crossings.clone());
    }
    if !unknotter::is_descending(&current, ord) {
        return Err(Error::NotUnknotting);
    }
    Ok(delta_bit(total))
}

pub fn arf_via_regions(diagram: &Diagram, regions: &RegionSelection) -> Result<u8> {
    arf_via_regions_with(diagram, regions, &BasePointOrdering::default_for(diagram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_pd;
    use crate::diagram::build_diagram;
    use crate::sample::braid_closure;

    fn braid(strands: usize, w: &[i32]) -> Diagram {
        build_diagram(&braid_closure(strands, w).unwrap()).unwrap()
    }

    #[test]
    fn bareiss() {
        assert_eq!(determinant(&[]), 1);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), 4);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            determinant(&[vec![0, 0, 1], vec![0, 3, 0], vec![5, 0, 0]]),
            -15
        );
    }

    #[test]
    fn determinants_of_small_links() {
        assert_eq!(link_determinant(&Diagram::unknot()), 1);
        assert_eq!(link_determinant(&braid(2, &[1])), 1);
        assert_eq!(link_determinant(&braid(2, &[1, 1])), 2);
        assert_eq!(link_determinant(&braid(2, &[1, 1, 1])), 3);
        assert_eq!(link_determinant(&braid(2, &[1, 1, 1, 1])), 4);
        assert_eq!(link_determinant(&braid(3, &[1, -2, 1, -2])), 5);
        assert_eq!(link_determinant(&braid(3, &[1, -2, 1, -2, 1, -2])), 16);
    }

    #[test]
    fn determinant_ignores_face_choice() {
        let d = braid(3, &[1, -2, 1, -2]);
        for white in 0..d.face_count() {
            let colors = d.checkerboard(white);
            let whites = colors.iter().filter(|c| **c == Color::White).count();
            for skip in 0..whites {
                assert_eq!(reduced_goeritz_determinant(&d, &colors, skip), 5);
            }
        }
    }

    #[test]
    fn knot_arf_values() {
        assert_eq!(arf_knot(&Diagram::unknot()), Ok(0));
        assert_eq!(arf_knot(&braid(2, &[1, 1, 1])), Ok(1));
        assert_eq!(arf_knot(&braid(3, &[1, -2, 1, -2])), Ok(1));
        assert_eq!(arf_knot(&braid(2, &[1, 1])), Err(Error::MultiComponent(2)));
    }

    #[test]
    fn hopf_refused() {
        let h = build_diagram(&parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap()).unwrap();
        assert_eq!(arf_link(&h), Err(Error::NotProper));
        assert_eq!(arf_delta(&h, 0), Err(Error::NotProper));
    }

    #[test]
    fn sign_data_is_consistent() {
        let d = braid(3, &[1, -2, 1, -2, 1, -2]);
        for f in 0..d.face_count() {
            let s = region_signs(&d, f);
            assert_eq!(
                s.m_minus_plus + s.m_plus_minus + s.m_plus_plus + s.m_minus_minus,
                d.face(f).boundary_crossings.len()
            );
            assert_eq!(s.a_value, s.m_plus_minus as i64 - s.m_minus_plus as i64);
            assert_eq!(s.a_value % 2, 0);
        }
    }

    #[test]
    fn nugatory_crossings_do_not_count() {
        let curl = build_diagram(&parse_pd("X(1,2,2,1)").unwrap()).unwrap();
        let outer = (0..3)
            .find(|&f| region_signs(&curl, f).crossings[0].nugatory)
            .unwrap();
        let s = region_signs(&curl, outer);
        assert_eq!(s.a_value, 0);
        assert_eq!(s.m_minus_plus + s.m_plus_minus + s.m_plus_plus + s.m_minus_minus, 0);

        // trefoil with a curl: flipping any face agrees with the oracle
        let d = braid(3, &[1, 1, 1, 2]);
        let base = arf_link(&d).unwrap();
        for f in d.faces() {
            let a = region_signs(&d, f.id).a_value;
            assert_eq!(a % 2, 0, "face {}", f.id);
            let flipped = d.flip_crossings(f.boundary_crossings.iter().copied());
            assert_eq!(base ^ arf_link(&flipped).unwrap(), arf_delta(&d, f.id).unwrap());
        }
    }

    #[test]
    fn zero_when_signs_agree() {
        let d = braid(2, &[1, 1, 1]);
        for f in 0..d.face_count() {
            let s = region_signs(&d, f);
            if s.crossings.iter().all(|c| c.a == c.w) {
                assert_eq!(s.a_value, 0);
                assert_eq!(arf_delta(&d, f), Ok(0));
            }
        }
    }

    #[test]
    fn sharp_square_changes_arf() {
        let d = build_diagram(&crate::sample::sharp_move_closure()).unwrap();
        let r = crate::sample::sharp_square(&d).expect("square face");
        assert_eq!(region_signs(&d, r).a_value, 2);
        assert_eq!(arf_delta(&d, r), Ok(1));
    }

    #[test]
    fn unknotting_regions_give_arf() {
        let t = braid(2, &[1, 1, 1]);
        let s = unknotter::unknot_regions(&t).unwrap();
        assert_eq!(arf_via_regions(&t, &s), Ok(1));
        assert_eq!(arf_via_regions(&Diagram::unknot(), &RegionSelection::empty(2)), Ok(0));
        assert_eq!(
            arf_via_regions(&t, &RegionSelection::empty(t.face_count())),
            Err(Error::NotUnknotting)
        );
    }
}

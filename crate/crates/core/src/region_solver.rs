//! Region crossing changes as linear algebra over GF(2).
//!
//! Row `f` of the incidence matrix marks the crossings on the boundary of
//! face `f`; a set of faces flips exactly the crossings in the XOR of its
//! rows. A crossing set `Q` is reachable iff its indicator lies in the row
//! space, which happens iff every component meets an even number of the
//! inter-component crossings of `Q`.

use std::cmp::Ordering;

use crate::diagram::{Color, Diagram};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};

/// A set of crossing ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingSelection(BitVec);

/// A set of face ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionSelection(BitVec);

macro_rules! selection {
    ($t:ident) => {
        impl $t {
            pub fn empty(len: usize) -> Self {
                $t(BitVec::zeros(len))
            }

            pub fn from_indices(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
                $t(BitVec::from_indices(len, ids))
            }

            pub fn bits(&self) -> &BitVec {
                &self.0
            }

            pub fn contains(&self, id: usize) -> bool {
                self.0.get(id)
            }

            pub fn len(&self) -> usize {
                self.0.count_ones()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_zero()
            }

            /// Sorted member ids.
            pub fn ids(&self) -> Vec<usize> {
                self.0.to_indices()
            }

            pub fn universe(&self) -> usize {
                self.0.len()
            }
        }

        impl From<BitVec> for $t {
            fn from(bits: BitVec) -> Self {
                $t(bits)
            }
        }
    };
}

selection!(CrossingSelection);
selection!(RegionSelection);

/// Orders region sets by size, then lexicographically on sorted ids.
pub fn smaller(a: &RegionSelection, b: &RegionSelection) -> bool {
    match a.len().cmp(&b.len()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.ids() < b.ids(),
    }
}

/// The `(c+2) × c` face/crossing incidence matrix, rows ordered black faces
/// then white faces of the default coloring.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    matrix: BitMatrix,
    row_faces: Vec<usize>,
    echelon: Echelon,
}

impl IncidenceMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Face id of each row.
    pub fn row_faces(&self) -> &[usize] {
        &self.row_faces
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    fn rows_to_faces(&self, rows: &BitVec, faces: usize) -> RegionSelection {
        RegionSelection::from_indices(faces, rows.iter_ones().map(|r| self.row_faces[r]))
    }
}

pub fn incidence_matrix(diagram: &Diagram) -> IncidenceMatrix {
    let c = diagram.crossing_count();
    let mut row_faces: Vec<usize> = Vec::with_capacity(diagram.face_count());
    for color in [Color::Black, Color::White] {
        row_faces.extend((0..diagram.face_count()).filter(|&f| diagram.coloring()[f] == color));
    }
    let rows = row_faces
        .iter()
        .map(|&f| BitVec::from_indices(c, diagram.face(f).boundary_crossings.iter().copied()))
        .collect();
    let matrix = BitMatrix::from_rows(c, rows);
    let echelon = Echelon::new(&matrix);
    IncidenceMatrix {
        matrix,
        row_faces,
        echelon,
    }
}

/// Crossings flipped by applying region crossing changes at every face of
/// `regions`.
pub fn region_effect(diagram: &Diagram, regions: &RegionSelection) -> CrossingSelection {
    let mut out = BitVec::zeros(diagram.crossing_count());
    for f in regions.ids() {
        for &x in &diagram.face(f).boundary_crossings {
            out.toggle(x);
        }
    }
    out.into()
}

/// Vertex degrees of the graph with one vertex per component and one edge per
/// selected inter-component crossing.
pub fn admissibility_degrees(diagram: &Diagram, q: &CrossingSelection) -> Vec<usize> {
    let mut degree = vec![0; diagram.component_count()];
    for x in q.ids() {
        let (u, o) = diagram.strand_components(x);
        if u != o {
            degree[u] += 1;
            degree[o] += 1;
        }
    }
    degree
}

pub fn admissible_by_parity(diagram: &Diagram, q: &CrossingSelection) -> bool {
    admissibility_degrees(diagram, q).iter().all(|d| d % 2 == 0)
}

/// Full solution coset of `Q` as face sets.
#[derive(Debug, Clone)]
pub struct RegionCoset {
    pub particular: RegionSelection,
    pub nullspace: Vec<RegionSelection>,
}

impl RegionCoset {
    /// Number of solutions, `2^dim`.
    pub fn dimension(&self) -> usize {
        self.nullspace.len()
    }
}

/// All region sets realizing `q`, or `None` if `q` is not reachable.
pub fn solve_coset(
    diagram: &Diagram,
    incidence: &IncidenceMatrix,
    q: &CrossingSelection,
) -> Option<RegionCoset> {
    let faces = diagram.face_count();
    let sol = incidence.echelon.solve(q.bits())?;
    Some(RegionCoset {
        particular: incidence.rows_to_faces(&sol.particular, faces),
        nullspace: sol
            .nullspace
            .iter()
            .map(|v| incidence.rows_to_faces(v, faces))
            .collect(),
    })
}

/// Some face set whose region crossing changes flip exactly `q`.
pub fn solve_regions(diagram: &Diagram, q: &CrossingSelection) -> Option<RegionSelection> {
    if diagram.crossing_count() == 0 {
        return Some(RegionSelection::empty(diagram.face_count()));
    }
    let incidence = incidence_matrix(diagram);
    let coset = solve_coset(diagram, &incidence, q);
    debug_assert_eq!(
        coset.is_some(),
        admissible_by_parity(diagram, q),
        "parity criterion and linear solve disagree"
    );
    coset.map(|c| c.particular)
}

/// Coset enumeration bound on the nullspace dimension.
pub const MAX_COSET_DIMENSION: usize = 24;

/// Smallest member of the coset (ties: lexicographically smallest ids).
pub fn minimal_in_coset(coset: &RegionCoset) -> Result<RegionSelection> {
    let k = coset.dimension();
    if k > MAX_COSET_DIMENSION {
        return Err(Error::TooLarge(format!(
            "solution coset of dimension {k} exceeds {MAX_COSET_DIMENSION}"
        )));
    }
    let mut current = coset.particular.bits().clone();
    let mut best = RegionSelection::from(current.clone());
    // Gray code: step i toggles basis vector trailing_zeros(i)
    for i in 1u64..(1u64 << k) {
        current.xor_assign(coset.nullspace[i.trailing_zeros() as usize].bits());
        let candidate = RegionSelection::from(current.clone());
        if smaller(&candidate, &best) {
            best = candidate;
        }
    }
    Ok(best)
}

/// A minimum-cardinality face set flipping exactly `q`.
pub fn minimal_regions(diagram: &Diagram, q: &CrossingSelection) -> Result<Option<RegionSelection>> {
    if diagram.crossing_count() == 0 {
        return Ok(Some(RegionSelection::empty(diagram.face_count())));
    }
    let incidence = incidence_matrix(diagram);
    solve_coset(diagram, &incidence, q)
        .map(|c| minimal_in_coset(&c))
        .transpose()
}

/// Largest face count the exhaustive search accepts.
pub const BRUTE_FORCE_MAX_FACES: usize = 22;

/// Exhaustive search over all face subsets, applying region crossing changes
/// one face at a time. Returns a minimum solution (same tie-break as
/// [`minimal_regions`]) or `None`.
pub fn brute_force_regions(
    diagram: &Diagram,
    q: &CrossingSelection,
) -> Result<Option<RegionSelection>> {
    let f = diagram.face_count();
    if f > BRUTE_FORCE_MAX_FACES {
        return Err(Error::TooLarge(format!(
            "{f} faces exceed the exhaustive bound {BRUTE_FORCE_MAX_FACES}"
        )));
    }
    let target: u64 = q.ids().iter().map(|&x| 1u64 << x).sum();
    let face_flips: Vec<u64> = diagram
        .faces()
        .iter()
        .map(|r| {
            let mut m = 0u64;
            for &x in &r.boundary_crossings {
                m ^= 1 << x;
            }
            m
        })
        .collect();
    let mut best: Option<u32> = None;
    for subset in 0u32..(1u32 << f) {
        let mut flipped = 0u64;
        for (i, m) in face_flips.iter().enumerate() {
            if subset >> i & 1 == 1 {
                flipped ^= m;
            }
        }
        if flipped != target {
            continue;
        }
        best = Some(match best {
            None => subset,
            Some(b) => {
                let (cs, cb) = (subset.count_ones(), b.count_ones());
                // equal sizes: the set holding the lowest differing face is lexicographically smaller
                if cs < cb || (cs == cb && subset & (subset ^ b) & (subset ^ b).wrapping_neg() != 0) {
                    subset
                } else {
                    b
                }
            }
        });
    }
    Ok(best.map(|b| RegionSelection::from_indices(f, (0..f).filter(|i| b >> i & 1 == 1))))
}

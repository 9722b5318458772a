//! Combinatorial planar maps of oriented link diagrams.
//!
//! Each crossing stores its four arc-ends in counterclockwise order. Corner
//! `k` of a crossing is the quadrant between positions `k` and `k + 1`. Faces
//! are traced by entering a crossing through position `q` and leaving through
//! `q + 1`, which records corner `q`; every corner lies on exactly one face.

use std::collections::BTreeSet;

use crate::codec::{OrientedPDCode, PdCrossing, Sign};
use crate::error::{Error, Result};

/// Strand roles at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    UnderIn,
    OverIn,
    UnderOut,
    OverOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Arc index at each counterclockwise position.
    ends: [usize; 4],
    /// Position of the incoming under-strand end.
    under_in: usize,
    sign: Sign,
}

impl Crossing {
    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Counterclockwise position of an end by role.
    pub fn position(&self, role: Role) -> usize {
        let over_in = match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        };
        let offset = match role {
            Role::UnderIn => 0,
            Role::UnderOut => 2,
            Role::OverIn => over_in,
            Role::OverOut => over_in + 2,
        };
        (self.under_in + offset) % 4
    }

    pub fn arc(&self, role: Role) -> usize {
        self.ends[self.position(role)]
    }

    pub fn role_at(&self, position: usize) -> Role {
        [Role::UnderIn, Role::OverIn, Role::UnderOut, Role::OverOut]
            .into_iter()
            .find(|&r| self.position(r) == position)
            .expect("every position has a role")
    }

    /// Arc indices at counterclockwise positions `0..4`.
    pub fn ends(&self) -> [usize; 4] {
        self.ends
    }

    fn flipped(&self) -> Crossing {
        Crossing {
            ends: self.ends,
            under_in: self.position(Role::OverIn),
            sign: self.sign.flipped(),
        }
    }
}

/// A crossing position `(crossing, position)` or corner `(crossing, corner)`.
pub type End = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcInfo {
    /// End where the arc leaves a crossing.
    pub tail: End,
    /// End where the arc enters a crossing.
    pub head: End,
    pub component: usize,
}

/// A face of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    /// Crossings touching the face, each listed once.
    pub boundary_crossings: Vec<usize>,
    /// Corners `(crossing, corner)` in traversal order.
    pub quadrants: Vec<End>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// Pairwise linking numbers of a link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    n: usize,
    values: Vec<i64>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.values[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.values[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn parity(&self, i: usize, j: usize) -> bool {
        self.get(i, j).rem_euclid(2) == 1
    }

    /// `Σ_{j≠i} lk(K_i, K_j) mod 2` for every component.
    pub fn total_parities(&self) -> Vec<bool> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| j != i)
                    .map(|j| self.get(i, j))
                    .sum::<i64>()
                    .rem_euclid(2)
                    == 1
            })
            .collect()
    }
}

/// A validated, connected, planar link diagram. Immutable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    arcs: Vec<ArcInfo>,
    /// Arc indices of each component in orientation order.
    components: Vec<Vec<usize>>,
    faces: Vec<Region>,
    corner_face: Vec<[usize; 4]>,
    coloring: Vec<Color>,
}

/// Builds and validates a diagram.
pub fn build_diagram(code: &OrientedPDCode) -> Result<Diagram> {
    Diagram::from_code(code)
}

impl Diagram {
    pub fn from_code(code: &OrientedPDCode) -> Result<Diagram> {
        if code.crossing_count() == 0 {
            return Ok(Diagram::unknot());
        }
        let crossings: Vec<Crossing> = code
            .crossings()
            .iter()
            .map(|x| {
                let a = |l: u32| (l - 1) as usize;
                let ends = match x.sign {
                    Sign::Positive => [x.under_in, x.over_out, x.under_out, x.over_in],
                    Sign::Negative => [x.under_in, x.over_in, x.under_out, x.over_out],
                };
                Crossing {
                    ends: ends.map(a),
                    under_in: 0,
                    sign: x.sign,
                }
            })
            .collect();
        Diagram::assemble(crossings)
    }

    /// The crossingless unknot: one component, two faces.
    pub fn unknot() -> Diagram {
        Diagram {
            crossings: Vec::new(),
            arcs: Vec::new(),
            components: vec![Vec::new()],
            faces: (0..2)
                .map(|id| Region {
                    id,
                    boundary_crossings: Vec::new(),
                    quadrants: Vec::new(),
                })
                .collect(),
            corner_face: Vec::new(),
            coloring: vec![Color::Black, Color::White],
        }
    }

    fn assemble(crossings: Vec<Crossing>) -> Result<Diagram> {
        let c = crossings.len();
        let unset = (usize::MAX, usize::MAX);
        let mut arcs = vec![
            ArcInfo {
                tail: unset,
                head: unset,
                component: usize::MAX,
            };
            2 * c
        ];
        for (x, cr) in crossings.iter().enumerate() {
            for (p, &a) in cr.ends.iter().enumerate() {
                match cr.role_at(p) {
                    Role::UnderIn | Role::OverIn => arcs[a].head = (x, p),
                    Role::UnderOut | Role::OverOut => arcs[a].tail = (x, p),
                }
            }
        }

        // connectivity of the underlying 4-valent graph
        let mut parent: Vec<usize> = (0..c).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for arc in &arcs {
            let (a, b) = (find(&mut parent, arc.tail.0), find(&mut parent, arc.head.0));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..c).any(|x| find(&mut parent, x) != root) {
            return Err(Error::Split);
        }

        // components, discovered in order of their lowest arc
        let mut components = Vec::new();
        for start in 0..2 * c {
            if arcs[start].component != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut comp = Vec::new();
            let mut a = start;
            while arcs[a].component == usize::MAX {
                arcs[a].component = id;
                comp.push(a);
                let (x, p) = arcs[a].head;
                let out = match crossings[x].role_at(p) {
                    Role::UnderIn => Role::UnderOut,
                    _ => Role::OverOut,
                };
                a = crossings[x].arc(out);
            }
            components.push(comp);
        }

        // faces
        let mut corner_face = vec![[usize::MAX; 4]; c];
        let mut faces = Vec::new();
        for x0 in 0..c {
            for k0 in 0..4 {
                if corner_face[x0][k0] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut quadrants = Vec::new();
                let (mut x, mut k) = (x0, k0);
                while corner_face[x][k] == usize::MAX {
                    corner_face[x][k] = id;
                    quadrants.push((x, k));
                    let leave = (k + 1) % 4;
                    let arc = &arcs[crossings[x].ends[leave]];
                    (x, k) = if arc.tail == (x, leave) {
                        arc.head
                    } else {
                        arc.tail
                    };
                }
                let boundary_crossings: BTreeSet<usize> =
                    quadrants.iter().map(|&(x, _)| x).collect();
                faces.push(Region {
                    id,
                    boundary_crossings: boundary_crossings.into_iter().collect(),
                    quadrants,
                });
            }
        }
        if faces.len() != c + 2 {
            return Err(Error::NonPlanar {
                faces: faces.len(),
                expected: c + 2,
            });
        }

        let mut d = Diagram {
            crossings,
            arcs,
            components,
            faces,
            corner_face,
            coloring: Vec::new(),
        };
        d.coloring = d.color_from(0, Color::Black)?;
        Ok(d)
    }

    /// Faces on the two sides of every arc.
    fn arc_sides(&self, arc: &ArcInfo) -> (usize, usize) {
        let (tx, tp) = arc.tail;
        let (hx, hp) = arc.head;
        (self.corner_face[hx][hp], self.corner_face[tx][tp])
    }

    fn color_from(&self, face: usize, color: Color) -> Result<Vec<Color>> {
        let f = self.faces.len();
        let mut adjacent = vec![Vec::new(); f];
        for arc in &self.arcs {
            let (a, b) = self.arc_sides(arc);
            adjacent[a].push(b);
            adjacent[b].push(a);
        }
        let mut colors: Vec<Option<Color>> = vec![None; f];
        colors[face] = Some(color);
        let mut stack = vec![face];
        while let Some(u) = stack.pop() {
            let cu = colors[u].unwrap();
            for &v in &adjacent[u] {
                match colors[v] {
                    None => {
                        colors[v] = Some(cu.other());
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => {
                        return Err(Error::NonPlanar {
                            faces: f,
                            expected: self.crossings.len() + 2,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        colors
            .into_iter()
            .map(|c| c.ok_or(Error::Split))
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, x: usize) -> &Crossing {
        &self.crossings[x]
    }

    pub fn arcs(&self) -> &[ArcInfo] {
        &self.arcs
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn faces(&self) -> &[Region] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Region {
        &self.faces[id]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face containing corner `k` of crossing `x`.
    pub fn corner_face(&self, x: usize, k: usize) -> usize {
        self.corner_face[x][k]
    }

    /// Default checkerboard coloring: face 0 is black.
    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    /// Checkerboard coloring with `white_face` white.
    pub fn checkerboard(&self, white_face: usize) -> Vec<Color> {
        assert!(white_face < self.faces.len(), "face {white_face} out of range");
        if self.coloring[white_face] == Color::White {
            self.coloring.clone()
        } else {
            self.coloring.iter().map(|c| c.other()).collect()
        }
    }

    pub fn crossing_sign(&self, x: usize) -> i64 {
        self.crossings[x].sign.value()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign.value()).sum()
    }

    /// Components of the under- and over-strand at a crossing.
    pub fn strand_components(&self, x: usize) -> (usize, usize) {
        let cr = &self.crossings[x];
        (
            self.arcs[cr.arc(Role::UnderIn)].component,
            self.arcs[cr.arc(Role::OverIn)].component,
        )
    }

    pub fn is_self_crossing(&self, x: usize) -> bool {
        let (u, o) = self.strand_components(x);
        u == o
    }

    pub fn linking_matrix(&self) -> LinkingMatrix {
        let n = self.components.len();
        let mut twice = vec![0i64; n * n];
        for x in 0..self.crossings.len() {
            let (u, o) = self.strand_components(x);
            if u != o {
                let s = self.crossing_sign(x);
                twice[u * n + o] += s;
                twice[o * n + u] += s;
            }
        }
        debug_assert!(twice.iter().all(|v| v % 2 == 0), "odd inter-component count");
        LinkingMatrix {
            n,
            values: twice.into_iter().map(|v| v / 2).collect(),
        }
    }

    /// Every component has even total linking number with the others.
    pub fn is_proper(&self) -> bool {
        self.linking_matrix().total_parities().iter().all(|p| !p)
    }

    /// Switches over and under at every selected crossing. The planar map,
    /// face ids and arc indices are unchanged.
    pub fn flip_crossings(&self, selection: impl IntoIterator<Item = usize>) -> Diagram {
        let mut d = self.clone();
        for x in selection {
            d.crossings[x] = d.crossings[x].flipped();
        }
        d
    }

    /// Reflection in the plane.
    pub fn mirror(&self) -> Diagram {
        Diagram::from_code(&self.to_code().mirror()).expect("mirror of a valid diagram")
    }

    pub fn to_code(&self) -> OrientedPDCode {
        let l = |a: usize| a as u32 + 1;
        let crossings = self
            .crossings
            .iter()
            .map(|cr| {
                PdCrossing::new(
                    [
                        l(cr.arc(Role::UnderIn)),
                        l(cr.arc(Role::OverIn)),
                        l(cr.arc(Role::UnderOut)),
                        l(cr.arc(Role::OverOut)),
                    ],
                    cr.sign,
                )
            })
            .collect();
        OrientedPDCode::new(crossings).expect("diagram arcs form a valid code")
    }

    /// Oriented smoothing of an inter-component crossing: the incoming under
    /// arc joins the outgoing over arc and the incoming over arc joins the
    /// outgoing under arc.
    pub fn smooth_crossing(&self, x: usize) -> Result<Diagram> {
        if self.is_self_crossing(x) {
            return Err(Error::SelfCrossing(x));
        }
        let cr = &self.crossings[x];
        // merged[a] = representative arc after joining
        let mut merged: Vec<usize> = (0..self.arcs.len()).collect();
        merged[cr.arc(Role::OverOut)] = cr.arc(Role::UnderIn);
        merged[cr.arc(Role::UnderOut)] = cr.arc(Role::OverIn);
        let mut label = vec![0u32; self.arcs.len()];
        let mut next = 1;
        for a in 0..self.arcs.len() {
            if merged[a] == a {
                label[a] = next;
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(y, _)| y != x)
            .map(|(_, cr)| {
                let l = |r: Role| label[merged[cr.arc(r)]];
                PdCrossing::new(
                    [
                        l(Role::UnderIn),
                        l(Role::OverIn),
                        l(Role::UnderOut),
                        l(Role::OverOut),
                    ],
                    cr.sign,
                )
            })
            .collect();
        Diagram::from_code(&OrientedPDCode::new(crossings)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_pd;

    fn d(s: &str) -> Diagram {
        build_diagram(&parse_pd(s).unwrap()).unwrap()
    }

    const HOPF: &str = "X(1,4,2,3) X(3,2,4,1)";
    const TREFOIL: &str = "X(4,1,5,2) X(2,5,3,6) X(6,3,1,4)";

    #[test]
    fn curl() {
        let dg = d("X(1,2,2,1)");
        assert_eq!(dg.crossing_count(), 1);
        assert_eq!(dg.component_count(), 1);
        assert_eq!(dg.face_count(), 3);
        for f in dg.faces() {
            assert_eq!(f.boundary_crossings, [0]);
        }
        assert_eq!(dg.mirror().crossing_sign(0), -dg.crossing_sign(0));
    }

    #[test]
    fn hopf_shape() {
        let dg = d(HOPF);
        assert_eq!(dg.crossing_count(), 2);
        assert_eq!(dg.component_count(), 2);
        assert_eq!(dg.face_count(), 4);
        assert_eq!(dg.linking_matrix().get(0, 1).abs(), 1);
        assert!(!dg.is_proper());
        for f in dg.faces() {
            assert_eq!(f.boundary_crossings, [0, 1]);
        }
    }

    #[test]
    fn trefoil_shape() {
        let dg = d(TREFOIL);
        assert_eq!(dg.component_count(), 1);
        assert_eq!(dg.face_count(), 5);
        assert_eq!(dg.writhe(), 3);
        assert!(dg.is_proper());
        assert!(dg.linking_matrix().size() == 1);
        let mut sizes: Vec<usize> = [Color::Black, Color::White]
            .iter()
            .map(|c| dg.coloring().iter().filter(|x| *x == c).count())
            .collect();
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
    }

    #[test]
    fn quadrants_partition_corners() {
        for s in [HOPF, TREFOIL, "X(1,2,2,1)"] {
            let dg = d(s);
            let total: usize = dg.faces().iter().map(|f| f.quadrants.len()).sum();
            assert_eq!(total, 4 * dg.crossing_count());
            let mut seen = BTreeSet::new();
            for f in dg.faces() {
                for &q in &f.quadrants {
                    assert!(seen.insert(q));
                    assert_eq!(dg.corner_face(q.0, q.1), f.id);
                }
            }
        }
    }

    #[test]
    fn checkerboard_alternates_at_crossings() {
        let dg = d(TREFOIL);
        for w in 0..dg.face_count() {
            let col = dg.checkerboard(w);
            assert_eq!(col[w], Color::White);
            for x in 0..dg.crossing_count() {
                let c: Vec<Color> = (0..4).map(|k| col[dg.corner_face(x, k)]).collect();
                assert_eq!(c[0], c[2]);
                assert_eq!(c[1], c[3]);
                assert_ne!(c[0], c[1]);
            }
        }
        // adjacent face white gives the global swap
        let a = dg.checkerboard(dg.corner_face(0, 0));
        let b = dg.checkerboard(dg.corner_face(0, 1));
        assert!(a.iter().zip(&b).all(|(x, y)| *x == y.other()));
    }

    #[test]
    fn split_and_empty() {
        assert_eq!(
            build_diagram(&parse_pd("X(1,2,2,1) X(3,4,4,3)").unwrap()),
            Err(Error::Split)
        );
        let u = build_diagram(&parse_pd("").unwrap()).unwrap();
        assert_eq!(u.face_count(), 2);
        assert_eq!(u.component_count(), 1);
        assert!(u.is_proper());
    }

    #[test]
    fn wrong_rotation_is_not_planar() {
        let ok = parse_pd("X(2,1,4,5) Xm(5,3,7,6) X(6,4,1,8) Xm(8,7,3,2)").unwrap();
        assert_eq!(build_diagram(&ok).unwrap().face_count(), 6);
        // same figure-eight with one crossing's rotation reversed
        let bad = parse_pd("X(2,1,4,5) X(5,3,7,6) X(6,4,1,8) Xm(8,7,3,2)").unwrap();
        assert!(matches!(build_diagram(&bad), Err(Error::NonPlanar { .. })));
        // swapping the two incoming slots of one crossing
        let swapped = parse_pd("X(1,2,4,5) Xm(5,3,7,6) X(6,4,1,8) Xm(8,7,3,2)").unwrap();
        assert!(matches!(build_diagram(&swapped), Err(Error::NonPlanar { .. })));
    }

    #[test]
    fn flips() {
        let dg = d(HOPF);
        assert_eq!(dg.flip_crossings([]), dg);
        let once = dg.flip_crossings([0]);
        assert_eq!(once.faces(), dg.faces());
        assert_eq!(once.linking_matrix().get(0, 1), 0);
        assert!(once.is_proper());
        assert_eq!(once.flip_crossings([0]), dg);
        let t = d(TREFOIL);
        assert_eq!(t.flip_crossings([0, 2]).flip_crossings([1]), t.flip_crossings([0, 1, 2]));
        for x in 0..3 {
            assert_eq!(t.flip_crossings([x]).crossing_sign(x), -t.crossing_sign(x));
        }
        // a flipped diagram survives a trip through the codec
        let f = t.flip_crossings([1]);
        let back = build_diagram(&parse_pd(&f.to_code().to_string()).unwrap()).unwrap();
        assert_eq!(back.to_code(), f.to_code());
        assert_eq!(back.face_count(), f.face_count());
    }

    #[test]
    fn smoothing() {
        let dg = d(HOPF);
        for x in 0..2 {
            let s = dg.smooth_crossing(x).unwrap();
            assert_eq!(s.crossing_count(), 1);
            assert_eq!(s.component_count(), 1);
            assert_eq!(s.face_count(), 3);
        }
        assert_eq!(d(TREFOIL).smooth_crossing(0), Err(Error::SelfCrossing(0)));
    }
}

//! Descending diagrams and the region pipeline that trivializes proper links.
//!
//! Components are traversed in a chosen order, each from a base arc in a
//! chosen direction. A diagram is descending when every crossing is first
//! reached along its over-strand; descending diagrams present trivial links.

use std::fmt;
use std::str::FromStr;

use crate::diagram::{Diagram, Role};
use crate::error::{Error, Result};
use crate::region_solver::{self, CrossingSelection, RegionSelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasePoint {
    pub component: usize,
    /// Arc index (label − 1) on that component.
    pub arc: usize,
    /// Traverse along the orientation (`true`) or against it.
    pub forward: bool,
}

/// Component order plus a base point per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePointOrdering(Vec<BasePoint>);

impl BasePointOrdering {
    /// Components in index order, each starting at its lowest arc, forward.
    pub fn default_for(diagram: &Diagram) -> Self {
        BasePointOrdering(
            diagram
                .components()
                .iter()
                .enumerate()
                .map(|(i, arcs)| BasePoint {
                    component: i,
                    arc: arcs.iter().copied().min().unwrap_or(0),
                    forward: true,
                })
                .collect(),
        )
    }

    /// Checks the ordering against a diagram: every component exactly once,
    /// every base arc on its component.
    pub fn new(diagram: &Diagram, points: Vec<BasePoint>) -> Result<Self> {
        let n = diagram.component_count();
        let mut seen = vec![false; n];
        for p in &points {
            if p.component >= n || std::mem::replace(&mut seen[p.component], true) {
                return Err(Error::InvalidArgument(format!(
                    "component {} missing, repeated or out of range",
                    p.component
                )));
            }
            let on_component = diagram
                .arcs()
                .get(p.arc)
                .is_some_and(|a| a.component == p.component);
            if diagram.crossing_count() > 0 && !on_component {
                return Err(Error::InvalidArgument(format!(
                    "arc {} is not on component {}",
                    p.arc + 1,
                    p.component
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument(
                "ordering must list every component".into(),
            ));
        }
        Ok(BasePointOrdering(points))
    }

    pub fn points(&self) -> &[BasePoint] {
        &self.0
    }
}

/// Textual form: comma separated `component:label` entries, with a trailing
/// `-` on the label to traverse against the orientation, e.g. `1:4,0:1-`.
/// Arc labels are 1-based as in the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingText(pub Vec<BasePoint>);

impl FromStr for OrderingText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |e: &str| Error::InvalidArgument(format!("bad ordering entry '{e}'"));
        s.split(',')
            .map(str::trim)
            .filter(|e| !e.is_empty())
            .map(|entry| {
                let (comp, arc) = entry.split_once(':').ok_or_else(|| bad(entry))?;
                let (arc, forward) = match arc.strip_suffix('-') {
                    Some(a) => (a, false),
                    None => (arc.strip_suffix('+').unwrap_or(arc), true),
                };
                let component = comp.trim().parse().map_err(|_| bad(entry))?;
                let label: usize = arc.trim().parse().map_err(|_| bad(entry))?;
                if label == 0 {
                    return Err(bad(entry));
                }
                Ok(BasePoint {
                    component,
                    arc: label - 1,
                    forward,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(OrderingText)
    }
}

impl fmt::Display for BasePointOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| format!("{}:{}{}", p.component, p.arc + 1, if p.forward { "" } else { "-" }))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Crossing visits `(crossing, over)` in traversal order.
fn visits(diagram: &Diagram, ord: &BasePointOrdering) -> Vec<(usize, bool)> {
    let mut out = Vec::with_capacity(2 * diagram.crossing_count());
    if diagram.crossing_count() == 0 {
        return out;
    }
    for p in ord.points() {
        let len = diagram.components()[p.component].len();
        let mut arc = p.arc;
        for _ in 0..len {
            let info = &diagram.arcs()[arc];
            let (x, pos) = if p.forward { info.head } else { info.tail };
            let cr = diagram.crossing(x);
            let role = cr.role_at(pos);
            let over = matches!(role, Role::OverIn | Role::OverOut);
            out.push((x, over));
            arc = match role {
                Role::UnderIn => cr.arc(Role::UnderOut),
                Role::OverIn => cr.arc(Role::OverOut),
                Role::UnderOut => cr.arc(Role::UnderIn),
                Role::OverOut => cr.arc(Role::OverIn),
            };
        }
    }
    out
}

/// Crossings first reached along their under-strand.
pub fn descending_selection(diagram: &Diagram, ord: &BasePointOrdering) -> CrossingSelection {
    let c = diagram.crossing_count();
    let mut seen = vec![false; c];
    let mut bad = Vec::new();
    for (x, over) in visits(diagram, ord) {
        if !std::mem::replace(&mut seen[x], true) && !over {
            bad.push(x);
        }
    }
    CrossingSelection::from_indices(c, bad)
}

pub fn is_descending(diagram: &Diagram, ord: &BasePointOrdering) -> bool {
    descending_selection(diagram, ord).is_empty()
}

/// Faces whose region crossing changes make the diagram descending with
/// respect to `ord`.
pub fn unknot_regions_with(diagram: &Diagram, ord: &BasePointOrdering) -> Result<RegionSelection> {
    if !diagram.is_proper() {
        return Err(Error::NotProper);
    }
    let q = descending_selection(diagram, ord);
    debug_assert!(region_solver::admissible_by_parity(diagram, &q));
    Ok(region_solver::solve_regions(diagram, &q)
        .expect("every unknotting selection of a proper diagram is reachable"))
}

pub fn unknot_regions(diagram: &Diagram) -> Result<RegionSelection> {
    unknot_regions_with(diagram, &BasePointOrdering::default_for(diagram))
}

/// Like [`unknot_regions_with`] but returns a smallest face set for the same
/// unknotting selection.
pub fn minimal_unknot_regions_with(
    diagram: &Diagram,
    ord: &BasePointOrdering,
) -> Result<RegionSelection> {
    if !diagram.is_proper() {
        return Err(Error::NotProper);
    }
    let q = descending_selection(diagram, ord);
    Ok(region_solver::minimal_regions(diagram, &q)?
        .expect("every unknotting selection of a proper diagram is reachable"))
}

/// Applies region crossing changes at every face of `regions`.
pub fn apply_regions(diagram: &Diagram, regions: &RegionSelection) -> Diagram {
    diagram.flip_crossings(region_solver::region_effect(diagram, regions).ids())
}

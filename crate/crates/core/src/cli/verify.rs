//! Property suites run by `rcc verify`.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arf;
use crate::codec::CatalogEntry;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::region_solver::{self, CrossingSelection};
use crate::unknotter::{self, BasePoint, BasePointOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub diagram: String,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<std::result::Result<String, String>>;
type Suite = fn(&Diagram, &mut StdRng) -> Check;

const SUITES: &[(&str, Suite)] = &[
    ("rank_law", rank_law),
    ("admissibility", admissibility),
    ("unknotting", unknotting),
    ("linking_parity", linking_parity),
    ("a_even", a_even),
    ("arf_delta", arf_delta),
    ("arf_regions", arf_regions),
    ("smoothing_order", smoothing_order),
];

/// All suites on one catalog entry. Randomized suites are seeded from the
/// entry's line number, so results are reproducible.
pub fn verify_entry(entry: &CatalogEntry) -> Vec<SuiteResult> {
    let result = |suite, passed, detail| SuiteResult {
        suite,
        diagram: entry.name.clone(),
        passed,
        detail,
    };
    let d = match Diagram::from_code(&entry.code) {
        Ok(d) => d,
        Err(e) => return vec![result("build", false, format!("{}: {e}", e.kind()))],
    };
    SUITES
        .iter()
        .map(|(name, suite)| {
            let mut rng = StdRng::seed_from_u64(entry.line as u64);
            match suite(&d, &mut rng) {
                Ok(Ok(detail)) => result(name, true, detail),
                Ok(Err(detail)) => result(name, false, detail),
                Err(e) => result(name, false, format!("{}: {e}", e.kind())),
            }
        })
        .collect()
}

fn rank_law(d: &Diagram, _: &mut StdRng) -> Check {
    let rank = region_solver::incidence_matrix(d).rank();
    let expected = d.crossing_count() + 1 - d.component_count();
    let detail = format!("rank {rank}, c - n + 1 = {expected}");
    Ok(if rank == expected { Ok(detail) } else { Err(detail) })
}

fn admissibility(d: &Diagram, rng: &mut StdRng) -> Check {
    let c = d.crossing_count();
    let brute = d.face_count() <= region_solver::BRUTE_FORCE_MAX_FACES;
    let selections: Vec<CrossingSelection> = if c <= 5 {
        (0u32..1 << c)
            .map(|m| CrossingSelection::from_indices(c, (0..c).filter(|&x| m >> x & 1 == 1)))
            .collect()
    } else {
        (0..200)
            .map(|_| CrossingSelection::from_indices(c, (0..c).filter(|_| rng.gen_bool(0.5))))
            .collect()
    };
    let mut admissible = 0;
    for q in &selections {
        let parity = region_solver::admissible_by_parity(d, q);
        let minimal = region_solver::minimal_regions(d, q)?;
        if parity != minimal.is_some() {
            return Ok(Err(format!("parity and linear solve disagree on {:?}", q.ids())));
        }
        if let Some(s) = &minimal {
            if region_solver::region_effect(d, s) != *q {
                return Ok(Err(format!("minimal set misses {:?}", q.ids())));
            }
        }
        if brute {
            let b = region_solver::brute_force_regions(d, q)?;
            if b.as_ref().map(|s| s.len()) != minimal.as_ref().map(|s| s.len()) {
                return Ok(Err(format!("brute force disagrees on {:?}", q.ids())));
            }
        }
        admissible += usize::from(parity);
    }
    Ok(Ok(format!(
        "{} selections, {admissible} admissible{}",
        selections.len(),
        if brute { "" } else { ", brute force skipped" }
    )))
}

fn random_ordering(d: &Diagram, rng: &mut StdRng) -> Result<BasePointOrdering> {
    let mut order: Vec<usize> = (0..d.component_count()).collect();
    order.shuffle(rng);
    let points = order
        .into_iter()
        .map(|component| BasePoint {
            component,
            arc: *d.components()[component].choose(rng).unwrap_or(&0),
            forward: rng.gen_bool(0.5),
        })
        .collect();
    BasePointOrdering::new(d, points)
}

fn unknotting(d: &Diagram, rng: &mut StdRng) -> Check {
    if d.is_proper() {
        let s = unknotter::unknot_regions(d)?;
        let ord = BasePointOrdering::default_for(d);
        let after = unknotter::apply_regions(d, &s);
        return Ok(if unknotter::is_descending(&after, &ord) {
            Ok(format!("regions {:?} give a descending diagram", s.ids()))
        } else {
            Err(format!("regions {:?} leave the diagram non-descending", s.ids()))
        });
    }
    if unknotter::unknot_regions(d) != Err(Error::NotProper) {
        return Ok(Err("non-proper diagram was not refused".into()));
    }
    for _ in 0..5 {
        let ord = random_ordering(d, rng)?;
        let q = unknotter::descending_selection(d, &ord);
        if region_solver::admissible_by_parity(d, &q) || region_solver::solve_regions(d, &q).is_some()
        {
            return Ok(Err(format!("ordering {ord} gives an admissible selection")));
        }
    }
    Ok(Ok("refused; 5 random orderings non-admissible".into()))
}

fn linking_parity(d: &Diagram, _: &mut StdRng) -> Check {
    let before = d.linking_matrix().total_parities();
    for f in d.faces() {
        let after = d
            .flip_crossings(f.boundary_crossings.iter().copied())
            .linking_matrix()
            .total_parities();
        if after != before {
            return Ok(Err(format!("face {} changes the parity vector", f.id)));
        }
    }
    Ok(Ok(format!("{} faces preserve {before:?}", d.face_count())))
}

fn a_even(d: &Diagram, _: &mut StdRng) -> Check {
    let values: Vec<i64> = (0..d.face_count())
        .map(|f| arf::region_signs(d, f).a_value)
        .collect();
    Ok(match values.iter().position(|a| a % 2 != 0) {
        None => Ok(format!("A = {values:?}")),
        Some(f) => Err(format!("A({f}) = {} is odd", values[f])),
    })
}

fn arf_delta(d: &Diagram, _: &mut StdRng) -> Check {
    if !d.is_proper() {
        return Ok(Ok("not proper, skipped".into()));
    }
    let base = arf::arf_link(d)?;
    for f in d.faces() {
        let flipped = d.flip_crossings(f.boundary_crossings.iter().copied());
        let observed = base ^ arf::arf_link(&flipped)?;
        let predicted = arf::arf_delta(d, f.id)?;
        if observed != predicted {
            return Ok(Err(format!(
                "face {}: determinant change {observed}, A(R) predicts {predicted}",
                f.id
            )));
        }
    }
    Ok(Ok(format!("{} faces agree", d.face_count())))
}

fn arf_regions(d: &Diagram, _: &mut StdRng) -> Check {
    if !d.is_proper() {
        return Ok(Ok("not proper, skipped".into()));
    }
    let s = unknotter::unknot_regions(d)?;
    let direct = arf::arf_link(d)?;
    let via = arf::arf_via_regions(d, &s)?;
    let detail = format!("determinant {direct}, regions {via}");
    Ok(if direct == via { Ok(detail) } else { Err(detail) })
}

/// Arf values reached by every sequence of inter-component smoothings.
fn all_smoothings(d: &Diagram, out: &mut BTreeSet<u8>) -> Result<()> {
    if d.component_count() == 1 {
        out.insert(arf::arf_knot(d)?);
        return Ok(());
    }
    for x in (0..d.crossing_count()).filter(|&x| !d.is_self_crossing(x)) {
        all_smoothings(&d.smooth_crossing(x)?, out)?;
    }
    Ok(())
}

fn smoothing_order(d: &Diagram, rng: &mut StdRng) -> Check {
    let n = d.component_count();
    if !d.is_proper() || n == 1 {
        return Ok(Ok("not a proper link, skipped".into()));
    }
    let mut values = BTreeSet::new();
    let how = if n <= 3 {
        all_smoothings(d, &mut values)?;
        "all orders"
    } else {
        for _ in 0..16 {
            let v = arf::arf_link_by(d, |cur| {
                let inter: Vec<usize> = (0..cur.crossing_count())
                    .filter(|&x| !cur.is_self_crossing(x))
                    .collect();
                inter.choose(rng).copied()
            })?;
            values.insert(v);
        }
        "16 random orders"
    };
    let detail = format!("{how}: {values:?}");
    Ok(if values.len() == 1 { Ok(detail) } else { Err(detail) })
}

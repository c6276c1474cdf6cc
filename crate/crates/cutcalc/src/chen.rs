//! Reduction maps onto nilpotent quotients.
//!
//! The group of a cut-diagram with `n` components maps onto the free
//! nilpotent group of class `q − 1` on generators `R₁ … R_n` (one per
//! component) through a tower of maps defined recursively on region
//! generators:
//!
//! * level 1 sends every region of component `i` to `R_i`;
//! * at level `q + 1`, the basepoint region still goes to `R_i`, and any
//!   other region goes to the conjugate of `R_i` by the level-`q` image of
//!   the raw word carried by a *road* — a forward path from the basepoint to
//!   the region.
//!
//! On an interval the road is forced; on a circle it may wind any number of
//! extra full turns before stopping, and different choices change images
//! only within the indeterminacy tracked by the invariant tables.  A
//! [`RoadNetwork`] records one choice of winding per region; the canonical
//! network uses none.

use crate::diagram::{ComponentKind, CutDiagram, RegionRef};
use crate::group::{longitude, prefix_word, traversal_word};
use crate::word::Word;
use std::collections::BTreeMap;
use std::fmt;

/// A choice of road (extra full windings) for every region of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoadNetwork {
    /// `windings[c - 1][j]` = extra full turns taken by the road of region
    /// `c.j`.  Always zero on intervals, where the road is unique.
    windings: Vec<Vec<usize>>,
}

impl RoadNetwork {
    /// The canonical network: every road follows the orientation from the
    /// basepoint with no extra windings.
    pub fn canonical(d: &CutDiagram) -> Self {
        let windings = (1..=d.component_count())
            .map(|c| vec![0; d.region_count(c)])
            .collect();
        RoadNetwork { windings }
    }

    /// Sets the winding count of region `c.j`'s road.
    ///
    /// # Panics
    /// Panics when asked to wind a road on an interval component.
    pub fn set_winding(&mut self, d: &CutDiagram, c: usize, j: usize, turns: usize) {
        assert!(
            turns == 0 || d.skeleton.kind(c) == ComponentKind::Circle,
            "roads on intervals cannot wind"
        );
        self.windings[c - 1][j] = turns;
    }

    pub fn winding(&self, c: usize, j: usize) -> usize {
        self.windings[c - 1][j]
    }

    /// Raw word `w̃` of the road of region `r`: the full traversal word taken
    /// once per extra winding, followed by the prefix across `p₁ … p_j`.
    pub fn road_word(&self, d: &CutDiagram, r: RegionRef) -> Word<RegionRef> {
        let mut w = traversal_word(d, r.component).pow(self.winding(r.component, r.region) as i64);
        w = w.mul(&prefix_word(d, r.component, r.region));
        w
    }
}

/// The level-`q` reduction map, tabulated on region generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenMap {
    pub level: usize,
    images: BTreeMap<RegionRef, Word<usize>>,
}

impl ChenMap {
    /// Image of a single region generator.
    pub fn image(&self, r: RegionRef) -> &Word<usize> {
        &self.images[&r]
    }

    /// Homomorphic image of a word on region generators.
    pub fn apply(&self, w: &Word<RegionRef>) -> Word<usize> {
        w.map(|r| self.images[r].clone())
    }
}

/// Computes the level-`q` reduction map of `d` with respect to `net`.
pub fn chen_map(d: &CutDiagram, net: &RoadNetwork, q: usize) -> ChenMap {
    assert!(q >= 1);
    let mut images: BTreeMap<RegionRef, Word<usize>> = d
        .regions()
        .map(|r| (r, Word::generator(r.component, 1)))
        .collect();
    for _level in 2..=q {
        let mut next = BTreeMap::new();
        for r in d.regions() {
            let img = if r.region == 0 {
                Word::generator(r.component, 1)
            } else {
                let v = net.road_word(d, r);
                let v_img = v.map(|g| images[g].clone());
                Word::generator(r.component, 1).conjugated_by(&v_img)
            };
            next.insert(r, img);
        }
        images = next;
    }
    ChenMap { level: q, images }
}

/// Level-`q` image of the longitude of component `c`.
pub fn chen_longitude(d: &CutDiagram, net: &RoadNetwork, q: usize, c: usize) -> Word<usize> {
    chen_map(d, net, q).apply(&longitude(d, c))
}

/// A presentation of the class-`(q − 1)` nilpotent quotient of the group of
/// a diagram: free generators `R₁ … R_n` subject to the lower central series
/// relations (implicit) and one peripheral commutation relation
/// `[R_i, η_q(λ_i)]` per circle component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentPresentation {
    pub level: usize,
    pub generator_count: usize,
    /// `(component, longitude image, commutation relation)` per circle.
    pub peripheral_relations: Vec<(usize, Word<usize>, Word<usize>)>,
}

pub fn nilpotent_presentation(d: &CutDiagram, q: usize) -> NilpotentPresentation {
    let net = RoadNetwork::canonical(d);
    let map = chen_map(d, &net, q);
    let mut peripheral_relations = Vec::new();
    for c in 1..=d.component_count() {
        if d.skeleton.kind(c) == ComponentKind::Circle {
            let l = map.apply(&longitude(d, c));
            let rel = Word::generator(c, 1).commutator(&l);
            peripheral_relations.push((c, l, rel));
        }
    }
    NilpotentPresentation {
        level: q,
        generator_count: d.component_count(),
        peripheral_relations,
    }
}

impl fmt::Display for NilpotentPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count)
            .map(|i| format!("R{i}"))
            .collect();
        writeln!(
            f,
            "nilpotent quotient, class {}",
            self.level.saturating_sub(1)
        )?;
        writeln!(f, "generators: {}", gens.join(" "))?;
        writeln!(
            f,
            "relations: lower central series terms of weight {}",
            self.level
        )?;
        for (c, l, _) in &self.peripheral_relations {
            writeln!(f, "  [R{}, {}]", c, l.fmt_with("R"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_gauss, parse_gauss_text};

    fn hopf() -> CutDiagram {
        parse_gauss(&parse_gauss_text("circle O1+ U2+\ncircle O2+ U1+").unwrap()).unwrap()
    }

    #[test]
    fn level_one_collapses_to_component_generators() {
        let d = hopf();
        let map = chen_map(&d, &RoadNetwork::canonical(&d), 1);
        for r in d.regions() {
            assert_eq!(map.image(r), &Word::generator(r.component, 1));
        }
    }

    #[test]
    fn basepoint_regions_are_fixed_at_every_level() {
        let d = hopf();
        for q in 1..=4 {
            let map = chen_map(&d, &RoadNetwork::canonical(&d), q);
            assert_eq!(map.image(RegionRef::new(1, 0)), &Word::generator(1, 1));
            assert_eq!(map.image(RegionRef::new(2, 0)), &Word::generator(2, 1));
        }
    }

    #[test]
    fn trefoil_level_two_conjugates_by_road_images() {
        let d = parse_gauss(&parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap()).unwrap();
        let map = chen_map(&d, &RoadNetwork::canonical(&d), 2);
        // Road of region 1.1 crosses p₁ only; level-1 images collapse its
        // label to R₁, so the image is R₁⁻¹ R₁ R₁ = R₁.
        assert_eq!(map.image(RegionRef::new(1, 1)), &Word::generator(1, 1));
    }

    #[test]
    fn hopf_longitudes_reduce_to_the_other_generator() {
        let d = hopf();
        for q in 1..=4 {
            assert_eq!(
                chen_longitude(&d, &RoadNetwork::canonical(&d), q, 1),
                Word::generator(2, 1)
            );
            assert_eq!(
                chen_longitude(&d, &RoadNetwork::canonical(&d), q, 2),
                Word::generator(1, 1)
            );
        }
    }

    #[test]
    fn winding_roads_change_images_by_longitude_conjugation() {
        let d = hopf();
        let mut net = RoadNetwork::canonical(&d);
        net.set_winding(&d, 1, 0, 1);
        // Region 1.0 is a basepoint region: its image ignores the road.
        let map = chen_map(&d, &net, 3);
        assert_eq!(map.image(RegionRef::new(1, 0)), &Word::generator(1, 1));
    }

    #[test]
    #[should_panic(expected = "intervals cannot wind")]
    fn interval_roads_cannot_wind() {
        let code = parse_gauss_text("interval U1+ O2+\ncircle O1+ U2+").unwrap();
        let d = parse_gauss(&code).unwrap();
        let mut net = RoadNetwork::canonical(&d);
        net.set_winding(&d, 1, 1, 1);
    }

    #[test]
    fn unlink_presentation_has_trivial_peripheral_relations() {
        let d = CutDiagram::new(
            crate::diagram::Skeleton::new(vec![
                crate::diagram::ComponentKind::Circle,
                crate::diagram::ComponentKind::Circle,
            ]),
            vec![Vec::new(), Vec::new()],
        );
        let p = nilpotent_presentation(&d, 3);
        assert_eq!(p.generator_count, 2);
        assert!(p.peripheral_relations.iter().all(|(_, l, _)| l.is_one()));
    }
}

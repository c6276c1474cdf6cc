//! The slice state a certificate acts on.
//!
//! A slice holds, per component, the transits in order and the union-find
//! nodes of the gaps between them.  Gap indexing matches region indexing of
//! cut-diagrams: an interval with `m` transits has gaps `0..=m`, a circle
//! has gaps `0..max(m,1)` with gap 0 containing the basepoint.

use super::{Dir, Event, OverStrand};
use crate::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Skeleton};
use crate::moves::split_parts;
use crate::union_find::UnionFind;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy)]
pub(super) struct Transit {
    pub dir: Dir,
    /// Union-find node of the labelling region.
    pub label: usize,
}

/// A snapshot of one transit for the rule-1 witness search: its label and
/// neighbouring gaps (as nodes) and its direction sign.
#[derive(Debug, Clone, Copy)]
pub(super) struct LogTuple {
    pub label: usize,
    pub before: usize,
    pub after: usize,
    pub sign: i64,
}

/// A condition to check once the movie has finished and all classes are
/// final.
#[derive(Debug, Clone)]
pub(super) enum Obligation {
    /// Rule 2 at `event`: the vertex label must equal the adjacent region.
    Rule2 {
        event: usize,
        label: usize,
        gap: usize,
    },
    /// Rule 1 at `event`: label `a` jumped to `b` across an arc labelled
    /// `c_label`, which needs a witness of sign `delta` in the log.
    Rule1 {
        event: usize,
        a: usize,
        b: usize,
        c_label: usize,
        delta: i64,
    },
}

#[derive(Debug, Clone)]
pub(super) struct SliceState {
    skeleton: Skeleton,
    transits: Vec<Vec<Transit>>,
    gaps: Vec<Vec<usize>>,
    pub uf: UnionFind,
    node_component: Vec<usize>,
}

impl SliceState {
    pub fn init(d: &CutDiagram) -> SliceState {
        let mut uf = UnionFind::new();
        let mut node_component = Vec::new();
        let gaps: Vec<Vec<usize>> = (1..=d.component_count())
            .map(|c| {
                (0..d.region_count(c))
                    .map(|_| {
                        node_component.push(c);
                        uf.add()
                    })
                    .collect()
            })
            .collect();
        let transits = (1..=d.component_count())
            .map(|c| {
                d.component(c)
                    .iter()
                    .map(|p| Transit {
                        dir: Dir::from_sign(p.sign),
                        label: gaps[p.label.component - 1][p.label.region],
                    })
                    .collect()
            })
            .collect();
        SliceState {
            skeleton: d.skeleton.clone(),
            transits,
            gaps,
            uf,
            node_component,
        }
    }

    fn kind(&self, c: usize) -> ComponentKind {
        self.skeleton.kind(c)
    }

    fn fresh_node(&mut self, component: usize) -> usize {
        self.node_component.push(component);
        self.uf.add()
    }

    fn check_component(&self, c: usize) -> Result<(), String> {
        if c >= 1 && c <= self.skeleton.len() {
            Ok(())
        } else {
            Err(format!("component {c} does not exist"))
        }
    }

    fn check_position(&self, c: usize, pos: usize) -> Result<(), String> {
        self.check_component(c)?;
        if pos >= 1 && pos <= self.transits[c - 1].len() {
            Ok(())
        } else {
            Err(format!("no transit at position {pos} of component {c}"))
        }
    }

    fn check_slot(&self, c: usize, pos: usize) -> Result<(), String> {
        self.check_component(c)?;
        if pos >= 1 && pos <= self.transits[c - 1].len() + 1 {
            Ok(())
        } else {
            Err(format!("cannot insert at position {pos} of component {c}"))
        }
    }

    fn check_pair(&self, c: usize, pos: usize) -> Result<(), String> {
        self.check_position(c, pos)?;
        if pos < self.transits[c - 1].len() {
            Ok(())
        } else {
            Err(format!(
                "pair at positions {pos}..{} would wrap around component {c}",
                pos + 1
            ))
        }
    }

    /// Resolves a gap reference against the current slice.
    fn resolve(&self, label: RegionRef) -> Result<usize, String> {
        self.check_component(label.component)?;
        self.gaps[label.component - 1]
            .get(label.region)
            .copied()
            .ok_or_else(|| format!("label reference {label} is out of range"))
    }

    /// Nodes of the gaps on either side of a transit.
    fn adjacent_gaps(&self, c: usize, pos: usize) -> (usize, usize) {
        let g = &self.gaps[c - 1];
        match self.kind(c) {
            ComponentKind::Interval => (g[pos - 1], g[pos]),
            ComponentKind::Circle => {
                let m = self.transits[c - 1].len();
                (g[pos - 1], g[pos % m])
            }
        }
    }

    /// Appends every transit's snapshot to the witness log.
    pub fn log_tuples(&self, out: &mut Vec<LogTuple>) {
        for c in 1..=self.skeleton.len() {
            for pos in 1..=self.transits[c - 1].len() {
                let t = self.transits[c - 1][pos - 1];
                let (before, after) = self.adjacent_gaps(c, pos);
                out.push(LogTuple {
                    label: t.label,
                    before,
                    after,
                    sign: t.dir.as_i64(),
                });
            }
        }
    }

    /// Splits the gap at insertion slot `slot` of component `c`.  Births
    /// keep the gap's node on both sides (`fresh == None`); a minimum adds
    /// a fresh node for the new middle region between its two transits.
    fn split_gap_vector(&mut self, c: usize, slot: usize, fresh: Option<usize>) {
        let kind = self.kind(c);
        let m = self.transits[c - 1].len();
        let g = &mut self.gaps[c - 1];
        match kind {
            ComponentKind::Circle if m == 0 => {
                if let Some(fnode) = fresh {
                    g.push(fnode);
                }
            }
            ComponentKind::Circle if slot == m => {
                let node = g[0];
                g.push(node);
                if let Some(fnode) = fresh {
                    g.push(fnode);
                }
            }
            _ => {
                let node = g[slot];
                g.insert(slot + 1, node);
                if let Some(fnode) = fresh {
                    g.insert(slot + 1, fnode);
                }
            }
        }
    }

    /// Contracts the gap vector after removing `removed` transits starting
    /// at `pos` (unions are the caller's responsibility).
    fn merge_gap_vector(&mut self, c: usize, pos: usize, removed: usize) {
        let kind = self.kind(c);
        let m = self.transits[c - 1].len();
        let g = &mut self.gaps[c - 1];
        match kind {
            ComponentKind::Circle if m == removed => {
                g.truncate(1);
            }
            ComponentKind::Circle if pos - 1 + removed == m => {
                g.truncate(m - removed);
            }
            _ => {
                g.drain(pos..pos + removed);
            }
        }
    }

    /// Applies one event, recording any deferred obligations.
    pub fn apply(
        &mut self,
        ev: &Event,
        event_idx: usize,
        obligations: &mut Vec<Obligation>,
    ) -> Result<(), String> {
        match ev {
            Event::Product => Ok(()),
            Event::VertexDeath {
                component,
                position,
            }
            | Event::SvDeath {
                component,
                position,
            } => {
                let (c, pos) = (*component, *position);
                self.check_position(c, pos)?;
                let t = self.transits[c - 1][pos - 1];
                let (gb, ga) = self.adjacent_gaps(c, pos);
                if ev.is_sv() {
                    if self.node_component[t.label] != c {
                        return Err(
                            "self-virtualization label must lie on its own component".into()
                        );
                    }
                } else {
                    obligations.push(Obligation::Rule2 {
                        event: event_idx,
                        label: t.label,
                        gap: gb,
                    });
                }
                self.uf.union(gb, ga);
                self.merge_gap_vector(c, pos, 1);
                self.transits[c - 1].remove(pos - 1);
                Ok(())
            }
            Event::VertexBirth {
                component,
                position,
                dir,
                label,
            }
            | Event::SvBirth {
                component,
                position,
                dir,
                label,
            } => {
                let (c, pos) = (*component, *position);
                self.check_slot(c, pos)?;
                let node = self.resolve(*label)?;
                let slot = pos - 1;
                let m = self.transits[c - 1].len();
                let (sigma, _, _, _) = split_parts(self.kind(c), m, slot, 1);
                if ev.is_sv() {
                    if self.node_component[node] != c {
                        return Err(
                            "self-virtualization label must lie on its own component".into()
                        );
                    }
                } else {
                    obligations.push(Obligation::Rule2 {
                        event: event_idx,
                        label: node,
                        gap: self.gaps[c - 1][sigma],
                    });
                }
                self.split_gap_vector(c, slot, None);
                self.transits[c - 1].insert(
                    slot,
                    Transit {
                        dir: *dir,
                        label: node,
                    },
                );
                Ok(())
            }
            Event::Min {
                component,
                position,
                dirs,
                label,
            } => {
                let (c, pos) = (*component, *position);
                self.check_slot(c, pos)?;
                if dirs.0 == dirs.1 {
                    return Err("minimum requires opposite directions".into());
                }
                let node = self.resolve(*label)?;
                let slot = pos - 1;
                let fresh = self.fresh_node(c);
                self.split_gap_vector(c, slot, Some(fresh));
                self.transits[c - 1].insert(
                    slot,
                    Transit {
                        dir: dirs.1,
                        label: node,
                    },
                );
                self.transits[c - 1].insert(
                    slot,
                    Transit {
                        dir: dirs.0,
                        label: node,
                    },
                );
                Ok(())
            }
            Event::Max {
                component,
                position,
            } => {
                let (c, pos) = (*component, *position);
                self.check_pair(c, pos)?;
                let t1 = self.transits[c - 1][pos - 1];
                let t2 = self.transits[c - 1][pos];
                if t1.dir == t2.dir {
                    return Err("maximum requires opposite directions".into());
                }
                if !self.uf.same(t1.label, t2.label) {
                    return Err("maximum joins differently labelled strands".into());
                }
                let g = &self.gaps[c - 1];
                let before = g[pos - 1];
                let after = match self.kind(c) {
                    ComponentKind::Interval => g[pos + 1],
                    ComponentKind::Circle => g[(pos + 1) % self.transits[c - 1].len()],
                };
                self.uf.union(before, after);
                self.merge_gap_vector(c, pos, 2);
                self.transits[c - 1].drain(pos - 1..=pos);
                Ok(())
            }
            Event::Pass {
                component,
                position,
                over,
                new_label,
            } => {
                let (c, pos) = (*component, *position);
                self.check_pair(c, pos)?;
                let (over_idx, under_idx) = match over {
                    OverStrand::Left => (pos - 1, pos),
                    OverStrand::Right => (pos, pos - 1),
                };
                let over_t = self.transits[c - 1][over_idx];
                let a = self.transits[c - 1][under_idx].label;
                let b = self.resolve(*new_label)?;
                let delta = match over {
                    OverStrand::Left => -over_t.dir.as_i64(),
                    OverStrand::Right => over_t.dir.as_i64(),
                };
                obligations.push(Obligation::Rule1 {
                    event: event_idx,
                    a,
                    b,
                    c_label: over_t.label,
                    delta,
                });
                let fresh = self.fresh_node(c);
                self.gaps[c - 1][pos] = fresh;
                self.transits[c - 1][under_idx].label = b;
                self.transits[c - 1].swap(pos - 1, pos);
                Ok(())
            }
        }
    }

    /// Reads the final slice off as a cut-diagram, resolving each label to
    /// the smallest visible gap of its class.
    pub fn read_off(&mut self) -> Result<CutDiagram, String> {
        let mut rep: BTreeMap<usize, RegionRef> = BTreeMap::new();
        for c in 1..=self.skeleton.len() {
            for j in 0..self.gaps[c - 1].len() {
                let root = self.uf.find(self.gaps[c - 1][j]);
                rep.entry(root).or_insert_with(|| RegionRef::new(c, j));
            }
        }
        let mut cut_points = Vec::new();
        for c in 1..=self.skeleton.len() {
            let mut pts = Vec::new();
            for t in &self.transits[c - 1] {
                let root = self.uf.find(t.label);
                let label = rep
                    .get(&root)
                    .copied()
                    .ok_or("a final label is not visible in the last slice")?;
                pts.push(CutPoint::new(t.dir.sign(), label));
            }
            cut_points.push(pts);
        }
        Ok(CutDiagram::new(self.skeleton.clone(), cut_points))
    }

    /// Checks that the final slice matches a claimed boundary diagram
    /// (same skeleton, transits, directions, and label classes).
    pub fn matches(&mut self, to: &CutDiagram) -> Result<(), String> {
        if to.skeleton != self.skeleton {
            return Err("final slice does not match the target diagram (skeleton)".into());
        }
        for c in 1..=self.skeleton.len() {
            if to.component(c).len() != self.transits[c - 1].len() {
                return Err(format!(
                    "final slice has {} cut-points on component {c}, target has {}",
                    self.transits[c - 1].len(),
                    to.component(c).len()
                ));
            }
            for (pos, (t, p)) in self.transits[c - 1].iter().zip(to.component(c)).enumerate() {
                if t.dir.sign() != p.sign {
                    return Err(format!(
                        "sign mismatch at cut-point {}.{} of the target",
                        c,
                        pos + 1
                    ));
                }
            }
        }
        for c in 1..=self.skeleton.len() {
            for (pos, p) in to.component(c).iter().enumerate() {
                let node = self.gaps[p.label.component - 1][p.label.region];
                let t = self.transits[c - 1][pos];
                if !self.uf.same(t.label, node) {
                    return Err(format!(
                        "label mismatch at cut-point {}.{} of the target",
                        c,
                        pos + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

//! Recognition of open-family members with a class-labeling witness.
//!
//! The partition into parts is taken as given. What is searched for is a
//! class label per vertex such that edges always join different classes, and
//! non-adjacent vertices of different parts share a class unless both parts
//! belong to the deletion zone (at most `(k − 1)!` parts). The resulting class
//! table must then be a valid parameter table after renumbering parts and
//! classes.
//!
//! Any part outside the deletion zone is balanced with every class present,
//! and its vertices of one class have identical neighborhoods. Using such a
//! part as an anchor, the class of every other vertex is forced: it is the
//! single anchor class it sees none of. Trying every part as the anchor
//! therefore decides membership whenever the graph has more than `(k − 1)!`
//! parts. With exactly `(k − 1)!` parts every part may sit in the zone, and a
//! budgeted backtracking over labelings is used instead.

use std::collections::BTreeSet;

use super::{factorial, permutations, sorted_along, ClassColoring, ExtremalParams};
use crate::error::{Error, Result};
use crate::graph::{BitSet, MultipartiteGraph, Vertex};
use crate::scalar::Rational;

pub const DEFAULT_MEMBERSHIP_BUDGET: u64 = 2_000_000;

/// Whether parts may be renumbered when matching against the family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PartOrder {
    /// Any `(k − 1)!` parts may form the deletion zone.
    #[default]
    Free,
    /// The deletion zone is the first `(k − 1)!` parts, in graph order.
    /// Classes may still be renumbered.
    Fixed,
}

#[derive(Clone, Copy, Debug)]
pub struct MembershipOptions {
    pub part_order: PartOrder,
    /// Node budget of the labeling backtracker.
    pub budget: u64,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions {
            part_order: PartOrder::Free,
            budget: DEFAULT_MEMBERSHIP_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub coloring: ClassColoring,
    /// Non-adjacent cross-part pairs of different classes, `u < v`.
    pub deleted: Vec<(Vertex, Vertex)>,
    /// `part_order[i]` is the graph part placed at row `i` of `params`.
    pub part_order: Vec<usize>,
    /// Valid parameter table reproducing the graph, rows in `part_order`.
    pub params: ExtremalParams,
    /// Densities of the part pairs inside the deletion zone, graph indices.
    /// For `k = 3` the single entry is the density that decides whether the
    /// member also meets the density condition.
    pub zone_densities: Vec<((usize, usize), Rational)>,
}

#[derive(Clone, Debug)]
pub enum MembershipVerdict {
    Member(Box<Membership>),
    Rejected(String),
}

impl MembershipVerdict {
    pub fn witness(&self) -> Option<&Membership> {
        match self {
            MembershipVerdict::Member(m) => Some(m),
            MembershipVerdict::Rejected(_) => None,
        }
    }
}

/// Membership with free part order and the default budget.
pub fn is_member(g: &MultipartiteGraph, k: usize) -> Result<Option<Membership>> {
    is_member_with(g, k, MembershipOptions::default())
}

pub fn is_member_with(
    g: &MultipartiteGraph,
    k: usize,
    options: MembershipOptions,
) -> Result<Option<Membership>> {
    Ok(match check_membership(g, k, options)? {
        MembershipVerdict::Member(m) => Some(*m),
        MembershipVerdict::Rejected(_) => None,
    })
}

/// Decides membership of `g` in the open family for cliques `K^k`, with a
/// human-readable reason on rejection.
pub fn check_membership(
    g: &MultipartiteGraph,
    k: usize,
    options: MembershipOptions,
) -> Result<MembershipVerdict> {
    if k < 3 {
        return Err(Error::invalid(format!("membership needs k >= 3, got {k}")));
    }
    let classes = k - 1;
    let special = factorial(classes);
    if g.part_count() < special {
        return Err(Error::invalid(format!(
            "membership for k = {k} needs at least {special} parts, graph has {}",
            g.part_count()
        )));
    }
    let ctx = Context {
        g,
        classes,
        special,
        perms: permutations(classes),
        order: options.part_order,
    };

    let anchors = match options.part_order {
        PartOrder::Free => 0..g.part_count(),
        PartOrder::Fixed => special..g.part_count(),
    };
    let mut first_reason = None;
    for anchor in anchors {
        let attempt = ctx
            .labels_from_anchor(anchor)
            .and_then(|labels| ctx.evaluate(labels));
        match attempt {
            Ok(m) => return Ok(MembershipVerdict::Member(Box::new(m))),
            Err(reason) => {
                first_reason.get_or_insert(format!("with part {anchor} as anchor: {reason}"));
            }
        }
    }

    if g.part_count() == special {
        if let Some(m) = ctx.backtrack(options.budget)? {
            return Ok(MembershipVerdict::Member(Box::new(m)));
        }
        first_reason = Some("no class labeling satisfies the family constraints".into());
    }
    Ok(MembershipVerdict::Rejected(
        first_reason.unwrap_or_else(|| "no anchor part available".into()),
    ))
}

struct Context<'a> {
    g: &'a MultipartiteGraph,
    classes: usize,
    special: usize,
    perms: Vec<Vec<usize>>,
    order: PartOrder,
}

impl Context<'_> {
    fn labels_from_anchor(&self, anchor: usize) -> std::result::Result<Vec<usize>, String> {
        let g = self.g;
        let mut reps: Vec<Vertex> = Vec::new();
        let mut groups: Vec<BitSet> = Vec::new();
        for v in g.part_range(anchor) {
            match reps.iter().position(|&r| g.neighbors(r) == g.neighbors(v)) {
                Some(i) => groups[i].insert(v),
                None => {
                    reps.push(v);
                    let mut group = BitSet::new(g.vertex_count());
                    group.insert(v);
                    groups.push(group);
                }
            }
        }
        if groups.len() != self.classes {
            return Err(format!(
                "its vertices have {} distinct neighborhoods, expected {}",
                groups.len(),
                self.classes
            ));
        }
        let size = groups[0].count();
        if groups.iter().any(|grp| grp.count() != size) {
            return Err("its neighborhood classes differ in size".into());
        }

        let mut labels = vec![usize::MAX; g.vertex_count()];
        for (s, grp) in groups.iter().enumerate() {
            for v in grp.iter() {
                labels[v] = s;
            }
        }
        for (v, label) in labels.iter_mut().enumerate() {
            if g.part_of(v) == anchor {
                continue;
            }
            let mut class = None;
            for (s, grp) in groups.iter().enumerate() {
                match g.neighbors(v).intersection_count(grp) {
                    0 if class.is_none() => class = Some(s),
                    0 => return Err(format!("vertex {v} misses two anchor classes entirely")),
                    c if c == size => {}
                    _ => return Err(format!("vertex {v} sees an anchor class only partially")),
                }
            }
            *label =
                class.ok_or_else(|| format!("vertex {v} is adjacent to every anchor class"))?;
        }
        Ok(labels)
    }

    /// Checks a complete labeling and assembles the witness.
    fn evaluate(&self, labels: Vec<usize>) -> std::result::Result<Membership, String> {
        let g = self.g;
        for (u, v) in g.edges() {
            if labels[u] == labels[v] {
                return Err(format!(
                    "edge ({u}, {v}) joins two vertices of class {}",
                    labels[u]
                ));
            }
        }
        let coloring = ClassColoring {
            classes: self.classes,
            labels,
        };
        let table = coloring.class_size_table(g);

        let mut deleted = Vec::new();
        let mut zone: BTreeSet<usize> = BTreeSet::new();
        let n = g.vertex_count();
        for u in 0..n {
            for v in g.part_range(g.part_of(u)).end..n {
                if !g.has_edge(u, v) && coloring.label(u) != coloring.label(v) {
                    deleted.push((u, v));
                    zone.insert(g.part_of(u));
                    zone.insert(g.part_of(v));
                }
            }
        }
        for (p, row) in table.iter().enumerate() {
            if row.iter().any(|&c| c != row[0]) {
                zone.insert(p);
            }
        }
        if zone.len() > self.special {
            return Err(format!(
                "{} parts need to be unbalanced or lose edges, at most {} may",
                zone.len(),
                self.special
            ));
        }

        let (part_order, coloring) = match self.order {
            PartOrder::Free => (self.free_order(&zone, &table)?, coloring),
            PartOrder::Fixed => {
                if let Some(&p) = zone.iter().find(|&&p| p >= self.special) {
                    return Err(format!(
                        "part {p} is unbalanced or lost edges but lies outside the first {} parts",
                        self.special
                    ));
                }
                let relabel = self.fixed_relabel(&table)?;
                let labels = coloring.labels.iter().map(|&s| relabel[s]).collect();
                let coloring = ClassColoring {
                    classes: self.classes,
                    labels,
                };
                ((0..g.part_count()).collect(), coloring)
            }
        };

        let table = coloring.class_size_table(g);
        let params = ExtremalParams {
            k: self.classes + 1,
            part_count: g.part_count(),
            class_sizes: part_order.iter().map(|&p| table[p].clone()).collect(),
        };
        debug_assert!(params.is_valid(), "{:?}", params.validate());

        let mut zone_parts: Vec<usize> = part_order[..self.special].to_vec();
        zone_parts.sort_unstable();
        let mut zone_densities = Vec::new();
        for (a, &i) in zone_parts.iter().enumerate() {
            for &j in &zone_parts[a + 1..] {
                let d = g.pairwise_density(i, j).expect("distinct valid parts");
                zone_densities.push(((i, j), d));
            }
        }

        Ok(Membership {
            coloring,
            deleted,
            part_order,
            params,
            zone_densities,
        })
    }

    /// Places every zone part on a distinct permutation it is sorted along,
    /// then fills the remaining leading rows with balanced parts.
    fn free_order(
        &self,
        zone: &BTreeSet<usize>,
        table: &[Vec<usize>],
    ) -> std::result::Result<Vec<usize>, String> {
        let zone: Vec<usize> = zone.iter().copied().collect();
        let compatible = |p: usize, perm: usize| sorted_along(&table[p], &self.perms[perm]);
        let mut owner: Vec<Option<usize>> = vec![None; self.perms.len()];
        for (idx, &p) in zone.iter().enumerate() {
            let mut seen = vec![false; self.perms.len()];
            if !augment(idx, &zone, &compatible, &mut owner, &mut seen) {
                return Err(format!(
                    "parts {zone:?} cannot be sorted along distinct class permutations (part {p})"
                ));
            }
        }
        let mut rest = (0..self.g.part_count()).filter(|p| !zone.contains(p));
        let mut order: Vec<usize> = owner
            .iter()
            .map(|slot| match slot {
                Some(idx) => zone[*idx],
                None => rest.next().expect("at least (k-1)! parts"),
            })
            .collect();
        order.extend(rest);
        Ok(order)
    }

    /// Class renumbering `old → new` under which every leading part is sorted
    /// along its own permutation.
    fn fixed_relabel(&self, table: &[Vec<usize>]) -> std::result::Result<Vec<usize>, String> {
        for rho in &self.perms {
            // new class s is old class rho[s]
            let fits = (0..self.special).all(|i| {
                let row: Vec<usize> = rho.iter().map(|&old| table[i][old]).collect();
                sorted_along(&row, &self.perms[i])
            });
            if fits {
                let mut old_to_new = vec![0; self.classes];
                for (new, &old) in rho.iter().enumerate() {
                    old_to_new[old] = new;
                }
                return Ok(old_to_new);
            }
        }
        Err("no class renumbering orders the leading parts along their permutations".into())
    }

    fn backtrack(&self, budget: u64) -> Result<Option<Membership>> {
        let mut labels = vec![usize::MAX; self.g.vertex_count()];
        let mut nodes = 0u64;
        self.assign(0, 0, &mut labels, &mut nodes, budget)
    }

    fn assign(
        &self,
        v: Vertex,
        used: usize,
        labels: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Option<Membership>> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::ResourceLimit {
                what: "membership labeling search",
                budget,
            });
        }
        if v == labels.len() {
            return Ok(self.evaluate(labels.clone()).ok());
        }
        for s in 0..(used + 1).min(self.classes) {
            if self.g.neighbors(v).iter().any(|u| u < v && labels[u] == s) {
                continue;
            }
            labels[v] = s;
            if let Some(m) = self.assign(v + 1, used.max(s + 1), labels, nodes, budget)? {
                return Ok(Some(m));
            }
        }
        labels[v] = usize::MAX;
        Ok(None)
    }
}

fn augment(
    idx: usize,
    zone: &[usize],
    compatible: &impl Fn(usize, usize) -> bool,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for perm in 0..owner.len() {
        if seen[perm] || !compatible(zone[idx], perm) {
            continue;
        }
        seen[perm] = true;
        let free = match owner[perm] {
            None => true,
            Some(other) => augment(other, zone, compatible, owner, seen),
        };
        if free {
            owner[perm] = Some(idx);
            return true;
        }
    }
    false
}

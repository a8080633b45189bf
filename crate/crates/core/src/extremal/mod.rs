//! The class-structured extremal families.
//!
//! A member of the closed family is described by a table `n[i][s]`: part `i`
//! holds `n[i][s]` vertices of class `s` for `s < k − 1`, and two vertices are
//! adjacent exactly when they lie in different parts and different classes.
//! Only the first `(k − 1)!` parts may be unbalanced, each sorted along its
//! own permutation of the classes (lexicographic enumeration). The open family
//! additionally allows deleting cross-class edges between two of those first
//! parts.
//!
//! Part and class indices are 0-based throughout.

mod membership;

pub use membership::{
    check_membership, is_member, is_member_with, Membership, MembershipOptions, MembershipVerdict,
    PartOrder, DEFAULT_MEMBERSHIP_BUDGET,
};

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, MultipartiteGraph, Vertex};
use crate::scalar::{turan_density, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub k: usize,
    #[serde(rename = "l")]
    pub part_count: usize,
    pub class_sizes: Vec<Vec<usize>>,
}

/// `m!`, saturating at `usize::MAX`.
pub fn factorial(m: usize) -> usize {
    (1..=m)
        .try_fold(1usize, |acc, x| acc.checked_mul(x))
        .unwrap_or(usize::MAX)
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    (0..m).permutations(m).collect()
}

/// True when `sizes[perm[0]] ≥ sizes[perm[1]] ≥ …`.
pub(crate) fn sorted_along(sizes: &[usize], perm: &[usize]) -> bool {
    perm.windows(2).all(|w| sizes[w[0]] >= sizes[w[1]])
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamViolation {
    CliqueTooSmall {
        k: usize,
    },
    TooFewParts {
        parts: usize,
        required: usize,
    },
    RowCount {
        declared: usize,
        rows: usize,
    },
    RowLength {
        part: usize,
        expected: usize,
        found: usize,
    },
    NotOrdered {
        part: usize,
        permutation: Vec<usize>,
    },
    NotBalanced {
        part: usize,
    },
    EmptyPart {
        part: usize,
    },
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamViolation::CliqueTooSmall { k } => write!(f, "k = {k} but k must be at least 3"),
            ParamViolation::TooFewParts { parts, required } => {
                write!(
                    f,
                    "{parts} parts but at least (k-1)! = {required} are required"
                )
            }
            ParamViolation::RowCount { declared, rows } => {
                write!(f, "l = {declared} but class_sizes has {rows} rows")
            }
            ParamViolation::RowLength {
                part,
                expected,
                found,
            } => {
                write!(
                    f,
                    "part {part}: expected {expected} class sizes, found {found}"
                )
            }
            ParamViolation::NotOrdered { part, permutation } => write!(
                f,
                "part {part}: class sizes are not non-increasing along permutation {permutation:?}"
            ),
            ParamViolation::NotBalanced { part } => {
                write!(
                    f,
                    "part {part}: parts beyond the first (k-1)! must have equal class sizes"
                )
            }
            ParamViolation::EmptyPart { part } => write!(f, "part {part}: class sizes sum to zero"),
        }
    }
}

impl ExtremalParams {
    /// Every class of every part has `per_class` vertices.
    pub fn balanced(k: usize, part_count: usize, per_class: usize) -> Self {
        ExtremalParams {
            k,
            part_count,
            class_sizes: vec![vec![per_class; k.saturating_sub(1)]; part_count],
        }
    }

    pub fn classes(&self) -> usize {
        self.k.saturating_sub(1)
    }

    /// Number of leading parts that may be unbalanced, `(k − 1)!`.
    pub fn special_parts(&self) -> usize {
        factorial(self.classes())
    }

    /// Lists every violated constraint; an empty list means the table is valid.
    pub fn validate(&self) -> Vec<ParamViolation> {
        let mut out = Vec::new();
        if self.k < 3 {
            out.push(ParamViolation::CliqueTooSmall { k: self.k });
            return out;
        }
        let special = self.special_parts();
        if self.part_count < special {
            out.push(ParamViolation::TooFewParts {
                parts: self.part_count,
                required: special,
            });
        }
        if self.class_sizes.len() != self.part_count {
            out.push(ParamViolation::RowCount {
                declared: self.part_count,
                rows: self.class_sizes.len(),
            });
        }
        let perms = if self.part_count >= special {
            permutations(self.classes())
        } else {
            Vec::new()
        };
        for (part, row) in self.class_sizes.iter().enumerate() {
            if row.len() != self.classes() {
                out.push(ParamViolation::RowLength {
                    part,
                    expected: self.classes(),
                    found: row.len(),
                });
                continue;
            }
            if part < special {
                if let Some(perm) = perms.get(part) {
                    if !sorted_along(row, perm) {
                        out.push(ParamViolation::NotOrdered {
                            part,
                            permutation: perm.clone(),
                        });
                    }
                }
            } else if row.iter().any(|&n| n != row[0]) {
                out.push(ParamViolation::NotBalanced { part });
            }
            if row.iter().sum::<usize>() == 0 {
                out.push(ParamViolation::EmptyPart { part });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Class label (0-based, `< classes`) of every vertex.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassColoring {
    pub classes: usize,
    pub labels: Vec<usize>,
}

impl ClassColoring {
    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    /// `table[part][class]` = number of vertices of that class in that part.
    pub fn class_size_table(&self, g: &MultipartiteGraph) -> Vec<Vec<usize>> {
        (0..g.part_count())
            .map(|p| {
                let mut row = vec![0; self.classes];
                for v in g.part_range(p) {
                    row[self.labels[v]] += 1;
                }
                row
            })
            .collect()
    }
}

/// Edges removed from a closed-family member. Pairs are stored with `u < v`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct DeletionSpec {
    pub removed: BTreeSet<(Vertex, Vertex)>,
}

impl DeletionSpec {
    pub fn none() -> Self {
        DeletionSpec::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        DeletionSpec {
            removed: pairs
                .into_iter()
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalGraph {
    pub graph: MultipartiteGraph,
    pub coloring: ClassColoring,
}

/// Id of the `t`-th vertex of class `s` in part `i`: parts in order, classes
/// in order inside a part.
pub fn vertex_id(class_sizes: &[Vec<usize>], part: usize, class: usize, t: usize) -> Vertex {
    let before: usize = class_sizes[..part].iter().flatten().sum();
    before + class_sizes[part][..class].iter().sum::<usize>() + t
}

/// Builds the class-structured graph of a size table without checking the
/// ordering constraints. Every part must be nonempty.
pub fn class_structured(class_sizes: &[Vec<usize>]) -> Result<ExtremalGraph> {
    let classes = class_sizes.first().map_or(0, Vec::len);
    if class_sizes.iter().any(|row| row.len() != classes) {
        return Err(Error::invalid("class size rows differ in length"));
    }
    let part_sizes: Vec<usize> = class_sizes.iter().map(|row| row.iter().sum()).collect();
    let mut builder = GraphBuilder::new(&part_sizes)?;
    let mut labels = Vec::with_capacity(part_sizes.iter().sum());
    for row in class_sizes {
        for (s, &count) in row.iter().enumerate() {
            labels.extend(std::iter::repeat_n(s, count));
        }
    }
    let n = labels.len();
    for u in 0..n {
        let pu = builder.graph().part_of(u);
        for v in builder.graph().part_range(pu).end..n {
            if labels[u] != labels[v] {
                builder.insert_unchecked(u, v);
            }
        }
    }
    Ok(ExtremalGraph {
        graph: builder.build(),
        coloring: ClassColoring { classes, labels },
    })
}

/// Builds the member of the closed family given by `params`, then removes the
/// edges in `deletions`, each of which must join different classes of two
/// distinct parts among the first `(k − 1)!`.
pub fn generate(params: &ExtremalParams, deletions: &DeletionSpec) -> Result<ExtremalGraph> {
    let violations = params.validate();
    if !violations.is_empty() {
        let listed: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::invalid(format!(
            "invalid extremal parameters: {}",
            listed.join("; ")
        )));
    }
    let ExtremalGraph { graph, coloring } = class_structured(&params.class_sizes)?;
    let special = params.special_parts();
    let mut builder = graph.to_builder();
    for &(u, v) in &deletions.removed {
        graph.check_vertex(u)?;
        graph.check_vertex(v)?;
        let (pu, pv) = (graph.part_of(u), graph.part_of(v));
        if pu == pv {
            return Err(Error::invalid(format!(
                "deletion ({u}, {v}) lies inside part {pu}"
            )));
        }
        if pu >= special || pv >= special {
            return Err(Error::invalid(format!(
                "deletion ({u}, {v}) joins parts {pu} and {pv}; only parts below {special} may lose edges"
            )));
        }
        if coloring.label(u) == coloring.label(v) {
            return Err(Error::invalid(format!(
                "deletion ({u}, {v}) joins two vertices of class {}",
                coloring.label(u)
            )));
        }
        builder.remove_unchecked(u, v);
    }
    Ok(ExtremalGraph {
        graph: builder.build(),
        coloring,
    })
}

/// A pair of parts whose density is below `(k − 2)/(k − 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensityShortfall {
    pub parts: (usize, usize),
    pub density: Rational,
}

/// Every pair `i < j` with `d_ij < (k − 2)/(k − 1)`; empty when the density
/// condition holds.
pub fn check_density_condition(g: &MultipartiteGraph, k: usize) -> Result<Vec<DensityShortfall>> {
    if k < 2 {
        return Err(Error::invalid(format!("clique size {k} is below 2")));
    }
    let threshold = turan_density(k);
    Ok(g.density_matrix()
        .pairs()
        .filter(|(_, _, d)| **d < threshold)
        .map(|(i, j, d)| DensityShortfall {
            parts: (i, j),
            density: *d,
        })
        .collect())
}

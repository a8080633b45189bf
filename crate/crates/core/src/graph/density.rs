use super::MultipartiteGraph;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Symmetric table of pairwise part densities. The diagonal is unused.
#[derive(Clone, PartialEq, Debug)]
pub struct DensityMatrix<T = Rational> {
    parts: usize,
    // upper triangle, row-major over i < j
    entries: Vec<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * self.parts - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn part_count(&self) -> usize {
        self.parts
    }

    /// Entry for `i ≠ j`; `None` on the diagonal or out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        if i == j || i >= self.parts || j >= self.parts {
            return None;
        }
        Some(&self.entries[self.index(i, j)])
    }

    /// `(i, j, d_ij)` for all `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        let n = self.parts;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(&self.entries)
            .map(|((i, j), d)| (i, j, d))
    }

    pub fn min(&self) -> Option<&T> {
        self.entries.iter().reduce(|a, b| if b < a { b } else { a })
    }

    /// Entries for `i < j` sorted ascending.
    pub fn sorted(&self) -> Vec<T> {
        let mut values = self.entries.clone();
        values.sort_by(|a, b| a.partial_cmp(b).expect("densities are comparable"));
        values
    }
}

impl MultipartiteGraph {
    fn check_pair_of_parts(&self, i: usize, j: usize) -> Result<()> {
        self.check_part(i)?;
        self.check_part(j)?;
        if i == j {
            return Err(Error::invalid(format!(
                "density needs two distinct parts, got {i} twice"
            )));
        }
        Ok(())
    }

    /// Exact density `e(V_i, V_j) / (|V_i| |V_j|)` in lowest terms.
    pub fn pairwise_density(&self, i: usize, j: usize) -> Result<Rational> {
        self.pairwise_density_as(i, j)
    }

    pub fn pairwise_density_as<T: Scalar>(&self, i: usize, j: usize) -> Result<T> {
        self.check_pair_of_parts(i, j)?;
        Ok(T::from_counts(
            self.edge_count_between(i, j) as u64,
            (self.part_size(i) * self.part_size(j)) as u64,
        ))
    }

    pub fn density_matrix(&self) -> DensityMatrix<Rational> {
        self.density_matrix_as()
    }

    pub fn density_matrix_as<T: Scalar>(&self) -> DensityMatrix<T> {
        let parts = self.part_count();
        let mut entries = Vec::with_capacity(parts * parts.saturating_sub(1) / 2);
        for i in 0..parts {
            for j in i + 1..parts {
                entries.push(T::from_counts(
                    self.edge_count_between(i, j) as u64,
                    (self.part_size(i) * self.part_size(j)) as u64,
                ));
            }
        }
        DensityMatrix { parts, entries }
    }

    /// `min_{i<j} d_ij`.
    pub fn min_pairwise_density(&self) -> Result<Rational> {
        if self.part_count() < 2 {
            return Err(Error::invalid("minimum density needs at least two parts"));
        }
        Ok(*self.density_matrix().min().expect("at least one pair"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_traits::{One, Zero};

    #[test]
    fn single_edge_pair_is_one() {
        let g = MultipartiteGraph::from_edges(&[1, 1], &[(0, 1)]).unwrap();
        assert_eq!(g.pairwise_density(0, 1).unwrap(), Rational::one());
        assert_eq!(g.pairwise_density(1, 0).unwrap(), Rational::one());
    }

    #[test]
    fn empty_pair_is_zero() {
        let g = MultipartiteGraph::empty(&[2, 3]).unwrap();
        assert_eq!(g.pairwise_density(0, 1).unwrap(), Rational::zero());
        assert_eq!(g.min_pairwise_density().unwrap(), Rational::zero());
    }

    #[test]
    fn rejects_diagonal_and_out_of_range() {
        let g = MultipartiteGraph::empty(&[2, 3]).unwrap();
        assert!(matches!(
            g.pairwise_density(1, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            g.pairwise_density(0, 2),
            Err(Error::InvalidArgument(_))
        ));
        let single = MultipartiteGraph::empty(&[4]).unwrap();
        assert!(single.min_pairwise_density().is_err());
    }

    #[test]
    fn one_missing_edge_in_two_by_two() {
        let g = MultipartiteGraph::from_edges(&[2, 2], &[(0, 2), (0, 3), (1, 2)]).unwrap();
        assert_eq!(g.density_matrix().get(0, 1), Some(&ratio(3, 4)));
    }

    #[test]
    fn complete_multipartite_is_all_ones() {
        let g = MultipartiteGraph::complete(&[2, 3, 1, 4]).unwrap();
        let m = g.density_matrix();
        assert_eq!(m.pairs().count(), 6);
        assert!(m.pairs().all(|(_, _, d)| d.is_one()));
        assert_eq!(g.min_pairwise_density().unwrap(), Rational::one());
    }

    #[test]
    fn float_matrix_matches_exact() {
        let g = MultipartiteGraph::from_edges(&[2, 3], &[(0, 2), (1, 4)]).unwrap();
        let exact = g.density_matrix();
        let float = g.density_matrix_as::<f64>();
        assert_eq!(exact.get(0, 1), Some(&ratio(1, 3)));
        assert!((float.get(0, 1).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(exact.sorted(), vec![ratio(1, 3)]);
    }
}

//! Exact Gaussian elimination over ℚ on sparse vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::{LinComb, Rational};

/// An incrementally built echelon basis.
///
/// Each stored row has a distinct pivot (its smallest key) and remembers
/// which inserted vectors it combines, so dependencies can be reported.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, (LinComb<K>, LinComb<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`Echelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_tracked(
        &self,
        v: &LinComb<K>,
        mut track: LinComb<usize>,
    ) -> (LinComb<K>, LinComb<usize>) {
        let mut v = v.clone();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.keys().find(|k| *k > c).cloned(),
            };
            let Some(p) = next else { break };
            if let Some((row, prov)) = self.rows.get(&p) {
                let f = -(v.coeff(&p) / row.coeff(&p));
                v.add_scaled(&f, row);
                track.add_scaled(&f, prov);
            }
            cursor = Some(p);
        }
        (v, track)
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        self.reduce_tracked(v, LinComb::zero()).0
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` as input number `inserted()`. Returns `None` if the rank
    /// grew, otherwise a relation `Σ c_i v_i = 0` among inserted inputs.
    pub fn insert(&mut self, v: &LinComb<K>) -> Option<LinComb<usize>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, prov) = self.reduce_tracked(v, LinComb::basis(idx));
        match r.leading() {
            None => Some(prov),
            Some((p, _)) => {
                let p = p.clone();
                self.rows.insert(p, (r, prov));
                None
            }
        }
    }

    /// The stored basis rows.
    pub fn basis(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values().map(|(r, _)| r)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vs: &[LinComb<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Whether two families span the same subspace.
pub fn same_span<K: Ord + Clone>(a: &[LinComb<K>], b: &[LinComb<K>]) -> bool {
    let mut ea = Echelon::new();
    for v in a {
        ea.insert(v);
    }
    let mut eb = Echelon::new();
    for v in b {
        eb.insert(v);
    }
    a.iter().all(|v| eb.contains(v)) && b.iter().all(|v| ea.contains(v))
}

/// A basis of `{x ∈ ℚⁿ : ⟨r, x⟩ = 0 for every row r}`.
pub fn nullspace(rows: &[LinComb<usize>], n: usize) -> Vec<LinComb<usize>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| (0..n).map(|j| r.coeff(&j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..n {
        let Some(p) = (lead..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(lead, p);
        let inv = Rational::from_integer(1.into()) / &m[lead][col];
        for x in m[lead].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != lead && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let d = &f * &m[lead][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = LinComb::basis(f);
            for (i, &p) in pivots.iter().enumerate() {
                v.add_term(p, -m[i][f].clone());
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use proptest::prelude::*;

    fn vec_of(xs: &[i64]) -> LinComb<usize> {
        xs.iter().enumerate().map(|(i, &x)| (i, int(x))).collect()
    }

    fn dot(a: &LinComb<usize>, b: &LinComb<usize>) -> Rational {
        a.iter().map(|(k, c)| c * b.coeff(k)).sum()
    }

    #[test]
    fn small_rank() {
        let vs = [vec_of(&[1, 2, 3]), vec_of(&[2, 4, 6]), vec_of(&[0, 1, 1])];
        assert_eq!(rank(&vs), 2);
        let mut e = Echelon::new();
        assert!(e.insert(&vs[0]).is_none());
        let dep = e.insert(&vs[1]).unwrap();
        assert_eq!(dep, vec_of(&[-2, 1]));
        assert!(e.insert(&vs[2]).is_none());
        assert!(e.contains(&vec_of(&[1, 3, 4])));
        assert!(!e.contains(&vec_of(&[0, 0, 1])));
    }

    #[test]
    fn kernel_example() {
        let k = nullspace(&[vec_of(&[1, 1, 0]), vec_of(&[0, 1, 1])], 3);
        assert_eq!(k, vec![vec_of(&[1, -1, 1])]);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 0..6)) {
            let rows: Vec<_> = rows.iter().map(|r| vec_of(r)).collect();
            let k = nullspace(&rows, 5);
            prop_assert_eq!(rank(&rows) + k.len(), 5);
            prop_assert_eq!(rank(&k), k.len());
            for r in &rows {
                for v in &k {
                    prop_assert!(dot(r, v).is_zero());
                }
            }
        }

        #[test]
        fn dependencies_are_relations(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 1..7)) {
            let rows: Vec<_> = rows.iter().map(|r| vec_of(r)).collect();
            let mut e = Echelon::new();
            for v in &rows {
                if let Some(dep) = e.insert(v) {
                    let mut s = LinComb::zero();
                    for (i, c) in &dep {
                        s.add_scaled(c, &rows[*i]);
                    }
                    prop_assert!(s.is_zero());
                    prop_assert!(!dep.is_zero());
                }
            }
            prop_assert!(same_span(&rows, &e.basis().cloned().collect::<Vec<_>>()));
        }
    }
}

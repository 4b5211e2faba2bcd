use std::collections::HashSet;

use itertools::Itertools;
use thiserror::Error;

use super::is_valid_name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("invalid element name `{0}`")]
    InvalidName(String),
    #[error("duplicate element `{0}`")]
    DuplicateName(String),
    #[error("table must have {expected} rows of {expected} entries")]
    TableShape { expected: usize },
    #[error("table entry ({row}, {col}) = {entry} is out of range")]
    EntryOutOfRange { row: usize, col: usize, entry: usize },
    #[error("identity law fails: {identity}·{element} or {element}·{identity} is not {element}")]
    IdentityLaw { identity: String, element: String },
    #[error("associativity fails on ({a}, {b}, {c})")]
    AssocViolation { a: String, b: String, c: String },
    #[error("element `{0}` has no inverse")]
    NoInverse(String),
}

/// A finite group given by its full Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl FinGroup {
    /// Validates a Cayley table. `rows[r][c]` is the index of `r·c`, and the
    /// first element must be the identity.
    pub fn from_table(names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_valid_name(name) {
                return Err(GroupError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::TableShape { expected: n });
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &entry) in row.iter().enumerate() {
                if entry >= n {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, entry });
                }
            }
        }
        let mul: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |a: usize, b: usize| mul[a * n + b];

        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::IdentityLaw {
                    identity: names[0].clone(),
                    element: names[a].clone(),
                });
            }
        }
        for (a, b, c) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::AssocViolation {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    c: names[c].clone(),
                });
            }
        }
        let mut inv = Vec::with_capacity(n);
        for (a, name) in names.iter().enumerate() {
            match (0..n).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inv.push(b),
                None => return Err(GroupError::NoInverse(name.clone())),
            }
        }
        Ok(Self { names, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cayley table rows, `rows()[r][c] == mul(r, c)`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    /// First pair `(a, b)` with `a·b != b·a`, scanning in element order.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .cartesian_product(0..n)
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    /// Same table up to element names.
    pub fn same_table(&self, other: &FinGroup) -> bool {
        self.mul == other.mul
    }

    /// `phi[a]` is the image of element `a`.
    pub fn is_homomorphism_to(&self, target: &FinGroup, phi: &[usize]) -> bool {
        let n = self.order();
        phi.len() == n
            && phi.iter().all(|&x| x < target.order())
            && (0..n)
                .cartesian_product(0..n)
                .all(|(a, b)| phi[self.mul(a, b)] == target.mul(phi[a], phi[b]))
    }

    /// Brute-force isomorphism test over all bijections fixing the identity.
    pub fn is_isomorphic(&self, other: &FinGroup) -> bool {
        let n = self.order();
        if n != other.order() {
            return false;
        }
        (1..n).permutations(n - 1).any(|perm| {
            let phi: Vec<usize> = std::iter::once(0).chain(perm).collect();
            self.is_homomorphism_to(other, &phi)
        })
    }

    /// Every check `from_table` performs, re-run on the stored table.
    pub fn satisfies_laws(&self) -> bool {
        FinGroup::from_table(self.names.clone(), self.rows()).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn z2_table_is_a_group() {
        let g = FinGroup::from_table(names(&["e", "g"]), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.inv(1), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn idempotent_non_identity_rejected() {
        let err = FinGroup::from_table(names(&["e", "g"]), vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse("g".into()));
    }

    #[test]
    fn first_element_must_be_identity() {
        let err = FinGroup::from_table(names(&["g", "e"]), vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::IdentityLaw { .. }));
    }

    #[test]
    fn non_associative_table_rejected() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FinGroup::from_table(names(&["e", "a", "b", "c", "d"]), rows).unwrap_err();
        assert!(matches!(err, GroupError::AssocViolation { .. }), "{err:?}");
    }

    #[test]
    fn shape_errors() {
        assert_eq!(FinGroup::from_table(vec![], vec![]).unwrap_err(), GroupError::Empty);
        assert!(matches!(
            FinGroup::from_table(names(&["e", "g"]), vec![vec![0, 1]]).unwrap_err(),
            GroupError::TableShape { expected: 2 }
        ));
        assert!(matches!(
            FinGroup::from_table(names(&["e", "e"]), vec![vec![0, 1], vec![1, 0]]).unwrap_err(),
            GroupError::DuplicateName(_)
        ));
    }
}

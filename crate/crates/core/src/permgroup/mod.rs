//! Permutation groups with fully enumerated element sets.
//!
//! Every [`Group`] stores all of its elements in lexicographic order of their
//! image sequences; an element's position in that order is its index, which
//! the rest of the crate uses as a compact handle. Groups are immutable once
//! built and can be shared freely across threads.

mod perm;
mod primes;

use std::fmt;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

pub use perm::Permutation;
pub use primes::{factorize, is_prime, PrimeSet};

/// Default upper bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators act on different degrees ({expected} and {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

type ElementSet = IndexSet<Permutation, FxBuildHasher>;

/// Incremental closure: the element set stays closed under right
/// multiplication by every generator added so far.
struct Closer {
    gens: Vec<Permutation>,
    set: ElementSet,
    cap: usize,
}

impl Closer {
    fn new(degree: usize, cap: usize) -> Self {
        let mut set = ElementSet::default();
        set.insert(Permutation::identity(degree));
        Closer {
            gens: Vec::new(),
            set,
            cap,
        }
    }

    fn insert(&mut self, p: Permutation) -> Result<(), GroupError> {
        if self.set.insert(p) && self.set.len() > self.cap {
            return Err(GroupError::CapExceeded { cap: self.cap });
        }
        Ok(())
    }

    /// Adds `s` unless it is already generated. Returns whether it was new.
    fn add(&mut self, s: &Permutation) -> Result<bool, GroupError> {
        if self.set.contains(s) {
            return Ok(false);
        }
        let old = self.set.len();
        self.gens.push(s.clone());
        for i in 0..old {
            let p = self.set[i].mul(s);
            self.insert(p)?;
        }
        let mut i = old;
        while i < self.set.len() {
            for g in 0..self.gens.len() {
                let p = self.set[i].mul(&self.gens[g]);
                self.insert(p)?;
            }
            i += 1;
        }
        Ok(true)
    }

    fn finish(self, degree: usize) -> Group {
        let mut elements: Vec<Permutation> = self.set.into_iter().collect();
        elements.sort_unstable();
        Group {
            degree,
            generators: self.gens,
            elements: elements.into_iter().collect(),
        }
    }
}

/// A finite permutation group together with its full element list.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    elements: ElementSet,
}

impl Group {
    /// Closes `generators` under multiplication. Fails with
    /// [`GroupError::CapExceeded`] once more than `cap` elements appear.
    ///
    /// Generators that are already products of earlier ones are dropped, so
    /// the stored generating set may be shorter than the input.
    pub fn generate(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Group, GroupError> {
        let mut closer = Closer::new(degree, cap.max(1));
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            closer.add(g)?;
        }
        Ok(closer.finish(degree))
    }

    pub fn trivial(degree: usize) -> Group {
        Closer::new(degree, 1).finish(degree)
    }

    /// The smallest subgroup of `self` containing `seed`.
    ///
    /// Panics in debug builds if a seed element lies outside the group.
    pub fn subgroup<'a>(&self, seed: impl IntoIterator<Item = &'a Permutation>) -> Group {
        let mut closer = Closer::new(self.degree, self.order() as usize);
        for s in seed {
            debug_assert!(self.contains(s), "seed element {s} not in group");
            if closer.set.len() == self.elements.len() {
                break;
            }
            closer
                .add(s)
                .expect("subgroup of an enumerated group cannot exceed its order");
        }
        closer.finish(self.degree)
    }

    /// Subgroup generated by the elements at the given indices.
    pub fn subgroup_from_indices(&self, seed: impl IntoIterator<Item = usize>) -> Group {
        let mut closer = Closer::new(self.degree, self.order() as usize);
        for i in seed {
            if closer.set.len() == self.elements.len() {
                break;
            }
            closer
                .add(&self.elements[i])
                .expect("subgroup of an enumerated group cannot exceed its order");
        }
        closer.finish(self.degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Never zero: a group contains its identity.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Permutation> + '_ {
        self.elements.iter()
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.get_index_of(p)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    /// Index of the product of two members. Panics if the product is missing,
    /// which can only happen if the element set is not closed.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.elements
            .get_index_of(&p)
            .expect("group element set is closed under multiplication")
    }

    /// π(G).
    pub fn prime_set(&self) -> PrimeSet {
        PrimeSet::of(self.order())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Element-wise equality of two groups on the same points.
    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `C_G(g)`.
    pub fn centralizer(&self, g: &Permutation) -> Group {
        self.subgroup(self.elements.iter().filter(|h| h.commutes_with(g)))
    }

    /// Centralizer of a subgroup: elements commuting with each of its generators.
    pub fn centralizer_of(&self, h: &Group) -> Group {
        self.subgroup(
            self.elements
                .iter()
                .filter(|x| h.generators.iter().all(|g| x.commutes_with(g))),
        )
    }

    /// `Z(G)`.
    pub fn center(&self) -> Group {
        self.centralizer_of(self)
    }

    /// `N_G(H)`.
    pub fn normalizer(&self, h: &Group) -> Group {
        self.subgroup(
            self.elements
                .iter()
                .filter(|x| h.generators.iter().all(|g| h.contains(&g.conjugate_by(x)))),
        )
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Group, g: &Permutation) -> Group {
        let gens: Vec<Permutation> = h.generators.iter().map(|x| x.conjugate_by(g)).collect();
        self.subgroup(gens.iter())
    }

    /// Whether `H ⊴ G`: every generator of `H` conjugated by every generator of `G` stays in `H`.
    pub fn is_normal_subgroup(&self, h: &Group) -> bool {
        h.is_subgroup_of(self)
            && self
                .generators
                .iter()
                .all(|g| h.generators.iter().all(|x| h.contains(&x.conjugate_by(g))))
    }

    pub fn intersection(&self, other: &Group) -> Group {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        small.subgroup(small.elements.iter().filter(|x| large.contains(x)))
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Group, b: &Group) -> Group {
        self.subgroup(a.generators.iter().chain(b.generators.iter()))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Convenience wrapper: closure with the default cap.
pub fn closure(degree: usize, generators: &[Permutation]) -> Result<Group, GroupError> {
    Group::generate(degree, generators, DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let cycles: Vec<Vec<u32>> = c.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    /// Brute-force closure oracle: repeatedly multiply every pair until stable.
    fn closure_oracle(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
        let mut set = vec![Permutation::identity(degree)];
        set.extend(gens.iter().cloned());
        loop {
            let mut next = set.clone();
            for a in &set {
                for b in &set {
                    let c = a.mul(b);
                    if !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            if next.len() == set.len() {
                next.sort();
                return next;
            }
            set = next;
        }
    }

    fn s3() -> Group {
        closure(3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap()
    }

    fn f42() -> Group {
        let t = Permutation::from_images((0..7).map(|x| (x + 1) % 7).collect()).unwrap();
        let m = Permutation::from_images((0..7).map(|x| (3 * x) % 7).collect()).unwrap();
        closure(7, &[t, m]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let trivial = closure(3, &[Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.order(), 1);

        let gens = [cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])];
        let g = s3();
        assert_eq!(g.order(), 6);
        let oracle = closure_oracle(3, &gens);
        assert_eq!(g.elements().cloned().collect::<Vec<_>>(), oracle);

        let f = f42();
        assert_eq!(f.order(), 42);
        assert!(f.identity().is_identity());
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])];
        assert_eq!(
            Group::generate(5, &gens, 100).unwrap_err(),
            GroupError::CapExceeded { cap: 100 }
        );
        assert_eq!(Group::generate(5, &gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn degree_mismatch() {
        let err = closure(3, &[cyc(4, &[&[0, 1]])]).unwrap_err();
        assert!(matches!(err, GroupError::DegreeMismatch { .. }));
    }

    #[test]
    fn centralizers() {
        let g = s3();
        assert_eq!(g.centralizer(&cyc(3, &[&[0, 1, 2]])).order(), 3);
        let f = f42();
        let seven = f.elements().find(|x| x.order() == 7).unwrap().clone();
        assert_eq!(f.centralizer(&seven).order(), 7);
        // orbit-stabilizer
        let class_size = f
            .elements()
            .map(|h| seven.conjugate_by(h))
            .collect::<std::collections::BTreeSet<_>>()
            .len() as u64;
        assert_eq!(class_size * 7, 42);
        let c6 = closure(6, &[cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c6.centralizer(c6.element(3)).order(), 6);
    }

    #[test]
    fn centers() {
        assert_eq!(s3().center().order(), 1);
        assert_eq!(f42().center().order(), 1);
        let c6 = closure(6, &[cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c6.center().order(), 6);
    }

    #[test]
    fn generated_subgroups_and_normality() {
        let g = s3();
        assert!(g.subgroup([]).is_trivial());
        let a3 = g.subgroup([&cyc(3, &[&[0, 1, 2]])]);
        assert_eq!(a3.order(), 3);
        assert!(g.is_normal_subgroup(&a3));
        let t = g.subgroup([&cyc(3, &[&[0, 1]])]);
        assert!(!g.is_normal_subgroup(&t));
        assert!(g.is_normal_subgroup(&g.subgroup([])));

        let f = f42();
        let kernel_class: Vec<Permutation> =
            f.elements().filter(|x| x.order() == 7).cloned().collect();
        assert_eq!(kernel_class.len(), 6);
        let c7 = f.subgroup(kernel_class.iter());
        assert_eq!(c7.order(), 7);
        assert!(f.is_normal_subgroup(&c7));
    }

    #[test]
    fn closure_is_idempotent_and_canonical() {
        let f = f42();
        let all: Vec<Permutation> = f.elements().cloned().collect();
        let again = closure(7, &all).unwrap();
        assert_eq!(again.elements().cloned().collect::<Vec<_>>(), all);
        let reversed: Vec<Permutation> = f.generators().iter().rev().cloned().collect();
        let other = closure(7, &reversed).unwrap();
        assert_eq!(other.elements().cloned().collect::<Vec<_>>(), all);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lagrange_on_subgroups() {
        let f = f42();
        for x in f.elements() {
            let h = f.subgroup([x]);
            assert_eq!(f.order() % h.order(), 0);
            let c = f.centralizer(x);
            assert_eq!(f.order() % c.order(), 0);
        }
    }

    #[test]
    fn normalizer_and_intersection() {
        let g = s3();
        let t = g.subgroup([&cyc(3, &[&[0, 1]])]);
        assert_eq!(g.normalizer(&t).order(), 2);
        let a3 = g.subgroup([&cyc(3, &[&[0, 1, 2]])]);
        assert!(g.intersection(&a3).order() == 3);
        assert!(t.intersection(&a3).is_trivial());
        assert_eq!(g.join(&t, &a3).order(), 6);
    }
}

//! Conjugacy classes, p-regular filtering, σ-parts and class products.
//!
//! Classes are stored with their full member lists (as element indices of
//! the ambient group). A class is identified by its position in the table,
//! which is sorted by `(size, representative)`; the representative is the
//! lexicographically least member.

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::permgroup::{Group, Permutation, PrimeSet};

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Permutation,
    pub rep_index: usize,
    /// Element indices, ascending.
    pub members: Vec<u32>,
    pub size: u64,
    /// π(size).
    pub primes: PrimeSet,
    /// Order of every member.
    pub element_order: u64,
}

impl ConjClass {
    pub fn is_central(&self) -> bool {
        self.size == 1
    }

    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.element_order.is_multiple_of(p)
    }

    pub fn members<'g>(&'g self, group: &'g Group) -> impl Iterator<Item = &'g Permutation> + 'g {
        self.members.iter().map(move |&i| group.element(i as usize))
    }
}

/// A set of classes, as a bitset over class indices.
pub type ClassSet = FixedBitSet;

pub struct ClassTable {
    group: Arc<Group>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    product_rows: Vec<OnceLock<Vec<Vec<u32>>>>,
}

impl Clone for ClassTable {
    fn clone(&self) -> Self {
        ClassTable {
            group: self.group.clone(),
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
            product_rows: (0..self.classes.len()).map(|_| OnceLock::new()).collect(),
        }
    }
}

impl std::fmt::Debug for ClassTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassTable")
            .field("order", &self.group.order())
            .field("sizes", &self.sizes())
            .finish()
    }
}

/// Partitions `group` into conjugacy classes.
pub fn conjugacy_classes(group: impl Into<Arc<Group>>) -> ClassTable {
    ClassTable::new(group.into())
}

impl ClassTable {
    pub fn new(group: Arc<Group>) -> ClassTable {
        let n = group.len();
        let mut assigned = vec![false; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = group.element(orbit[head] as usize);
                head += 1;
                for g in group.generators() {
                    let y = group
                        .index_of(&x.conjugate_by(g))
                        .expect("group is closed under conjugation");
                    if !assigned[y] {
                        assigned[y] = true;
                        orbit.push(y as u32);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        // the first member is the least index, hence the least permutation
        raw.sort_by_key(|m| (m.len(), m[0]));
        let classes: Vec<ConjClass> = raw
            .into_iter()
            .map(|members| {
                let rep_index = members[0] as usize;
                let rep = group.element(rep_index).clone();
                let size = members.len() as u64;
                ConjClass {
                    element_order: rep.order(),
                    rep,
                    rep_index,
                    members,
                    size,
                    primes: PrimeSet::of(size),
                }
            })
            .collect();
        let mut class_of = vec![0u32; n];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m as usize] = ci as u32;
            }
        }
        let product_rows = (0..classes.len()).map(|_| OnceLock::new()).collect();
        ClassTable {
            group,
            classes,
            class_of,
            product_rows,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Class index of the element with the given group index.
    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.group.index_of(g).map(|i| self.class_of_index(i))
    }

    /// Indices of the classes whose elements have order prime to `p`, in table order.
    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.classes[i].is_p_regular(p))
            .collect()
    }

    /// Classes of π-elements.
    pub fn pi_element_classes(&self, pi: &PrimeSet) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| pi.is_pi_number(self.classes[i].element_order))
            .collect()
    }

    /// Fault-injection hook: a copy of the table with one class size replaced.
    /// Member lists are untouched, so the result is deliberately inconsistent.
    #[doc(hidden)]
    pub fn with_overridden_size(&self, class: usize, size: u64) -> ClassTable {
        let mut t = self.clone();
        t.classes[class].size = size;
        t.classes[class].primes = PrimeSet::of(size);
        t
    }

    /// The classes met by `B_i · B_j`, for every `j`, computed as `rep_i · B_j`.
    pub fn product_row(&self, i: usize) -> &[Vec<u32>] {
        self.product_rows[i].get_or_init(|| {
            let k = self.len();
            let rep = &self.classes[i].rep;
            let mut hits: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(k); k];
            for (y, el) in self.group.elements().enumerate() {
                let prod = self.group.index_of(&rep.mul(el)).expect("group is closed");
                hits[self.class_of[y] as usize].insert(self.class_of[prod] as usize);
            }
            hits.into_iter()
                .map(|b| b.ones().map(|x| x as u32).collect())
                .collect()
        })
    }

    /// Class indices whose union is `B_i · B_j`.
    pub fn product_classes(&self, i: usize, j: usize) -> &[u32] {
        &self.product_row(i)[j]
    }

    pub fn empty_set(&self) -> ClassSet {
        ClassSet::with_capacity(self.len())
    }

    pub fn set_of(&self, classes: impl IntoIterator<Item = usize>) -> ClassSet {
        let mut s = self.empty_set();
        for c in classes {
            s.insert(c);
        }
        s
    }

    /// Number of elements in a union of classes, counted from the member lists.
    pub fn set_order(&self, set: &ClassSet) -> u64 {
        set.ones()
            .map(|c| self.classes[c].members.len() as u64)
            .sum()
    }

    /// Whether a union of classes is closed under multiplication.
    pub fn is_closed(&self, set: &ClassSet) -> bool {
        set.ones().all(|i| {
            let row = self.product_row(i);
            set.ones()
                .all(|j| row[j].iter().all(|&k| set.contains(k as usize)))
        })
    }

    /// The (normal) subgroup generated by a union of classes, as a class set.
    pub fn closure(&self, set: &ClassSet) -> ClassSet {
        let mut out = set.clone();
        out.insert(0);
        let mut order: Vec<usize> = out.ones().collect();
        let mut head = 0;
        while head < order.len() {
            let a = order[head];
            head += 1;
            let mut found = Vec::new();
            for &b in &order[..head] {
                for &k in self
                    .product_classes(a, b)
                    .iter()
                    .chain(self.product_classes(b, a))
                {
                    if !out.contains(k as usize) {
                        out.insert(k as usize);
                        found.push(k as usize);
                    }
                }
            }
            order.extend(found);
        }
        out
    }

    /// Product `AB` of two normal subgroups given as closed class sets.
    pub fn normal_product(&self, a: &ClassSet, b: &ClassSet) -> ClassSet {
        if a.is_superset(b) {
            return a.clone();
        }
        if b.is_superset(a) {
            return b.clone();
        }
        let mut out = a.clone();
        out.union_with(b);
        for i in a.ones() {
            let row = self.product_row(i);
            for j in b.ones() {
                for &k in &row[j] {
                    out.insert(k as usize);
                }
            }
        }
        out
    }

    /// Element indices in a union of classes, ascending.
    pub fn elements_of(&self, set: &ClassSet) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .ones()
            .flat_map(|c| self.classes[c].members.iter().map(|&m| m as usize))
            .collect();
        out.sort_unstable();
        out
    }

    /// Materialises a closed class set as a subgroup.
    pub fn subgroup_of(&self, set: &ClassSet) -> Group {
        self.group.subgroup_from_indices(self.elements_of(set))
    }

    /// `{b·c : b ∈ B_i, c ∈ B_j}` by brute force, plus whether that set is a single class.
    pub fn class_product(&self, i: usize, j: usize) -> ClassProduct {
        let g = &self.group;
        let mut seen = FixedBitSet::with_capacity(g.len());
        for b in self.classes[i].members(g) {
            for c in self.classes[j].members(g) {
                seen.insert(g.index_of(&b.mul(c)).expect("group is closed"));
            }
        }
        let elements: Vec<usize> = seen.ones().collect();
        let first = self.class_of_index(elements[0]);
        let single_class = elements.len() as u64 == self.classes[first].size
            && elements.iter().all(|&e| self.class_of_index(e) == first);
        ClassProduct {
            elements,
            single_class,
        }
    }

    /// `⟨C C⁻¹⟩`, generated by `rep · c⁻¹` for `c ∈ C`.
    pub fn generated_by_quotients(&self, i: usize) -> Group {
        let c = &self.classes[i];
        let seeds: Vec<Permutation> = c
            .members(&self.group)
            .map(|x| c.rep.mul(&x.inverse()))
            .collect();
        self.group.subgroup(seeds.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassProduct {
    /// Element indices, ascending.
    pub elements: Vec<usize>,
    pub single_class: bool,
}

/// Whether `p` does not divide the order of `g`.
pub fn is_p_regular(g: &Permutation, p: u64) -> bool {
    !g.order().is_multiple_of(p)
}

/// The σ-part of `g`: the power `g^m` whose order is the σ-part of `o(g)`,
/// with `m ≡ 1 (mod o_σ)` and `m ≡ 0 (mod o_σ′)`.
pub fn sigma_part(g: &Permutation, sigma: &PrimeSet) -> Permutation {
    let o = g.order();
    let o_sigma = sigma.pi_part(o);
    if o_sigma == 1 {
        return Permutation::identity(g.degree());
    }
    let rest = o / o_sigma;
    // rest · inv ≡ 1 (mod o_sigma)
    let e = (rest as i64).extended_gcd(&(o_sigma as i64));
    debug_assert_eq!(e.gcd, 1);
    let inv = e.x.rem_euclid(o_sigma as i64) as u64;
    g.pow((rest * inv) % o)
}

use crate::permgroup::{Group, Permutation, DEFAULT_CAP};

use super::StructureError;

/// `G/N` as a permutation group, with the projection `G → G/N` on element indices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// `projection[i]` is the quotient element index of `G.element(i)`.
    pub projection: Vec<u32>,
}

impl Quotient {
    pub fn project(&self, g: &Group, x: &Permutation) -> &Permutation {
        let i = g.index_of(x).expect("element of the parent group");
        self.group.element(self.projection[i] as usize)
    }
}

/// Right-regular action of `G` on the cosets `Ng`.
pub fn quotient(g: &Group, n: &Group) -> Result<Quotient, StructureError> {
    if !n.is_subgroup_of(g) || !g.is_normal_subgroup(n) {
        return Err(StructureError::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; g.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        if coset_of[i] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(i);
        let x = g.element(i);
        for m in n.elements() {
            coset_of[g.index_of(&m.mul(x)).expect("closed")] = id;
        }
    }
    let image_of = |x: &Permutation| -> Permutation {
        let images: Vec<u32> = reps
            .iter()
            .map(|&r| coset_of[g.index_of(&g.element(r).mul(x)).expect("closed")])
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    };
    let degree = reps.len();
    let gens: Vec<Permutation> = g.generators().iter().map(image_of).collect();
    let q = Group::generate(degree, &gens, DEFAULT_CAP.max(degree))
        .expect("quotient is no larger than G");
    // every element of a coset Ng acts identically, so one image per coset suffices
    let mut per_coset = Vec::with_capacity(degree);
    for &r in &reps {
        let img = image_of(g.element(r));
        per_coset.push(q.index_of(&img).expect("image lies in the quotient") as u32);
    }
    let projection = coset_of.iter().map(|&c| per_coset[c as usize]).collect();
    Ok(Quotient {
        group: q,
        projection,
    })
}

/// `G/Z(G)` realised by conjugation on the union of the classes of `G`'s
/// generators; the kernel of that action is the centre.
pub fn quotient_by_center(g: &Group) -> Quotient {
    let mut points: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.len()];
    for s in g.generators() {
        let start = g.index_of(s).expect("generator in group");
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut head = points.len();
        points.push(start);
        while head < points.len() {
            let x = g.element(points[head]).clone();
            head += 1;
            for t in g.generators() {
                let y = g.index_of(&x.conjugate_by(t)).expect("closed");
                if !seen[y] {
                    seen[y] = true;
                    points.push(y);
                }
            }
        }
    }
    points.sort_unstable();
    let position: rustc_hash::FxHashMap<usize, u32> = points
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k as u32))
        .collect();
    let act = |x: &Permutation| -> Permutation {
        let images = points
            .iter()
            .map(|&p| position[&g.index_of(&g.element(p).conjugate_by(x)).expect("closed")])
            .collect();
        Permutation::from_images(images).expect("conjugation permutes a union of classes")
    };
    let degree = points.len();
    let gens: Vec<Permutation> = g.generators().iter().map(act).collect();
    let q = Group::generate(degree, &gens, DEFAULT_CAP.max(g.len()))
        .expect("image is no larger than G");
    let projection = g
        .elements()
        .map(|x| q.index_of(&act(x)).expect("image lies in the quotient") as u32)
        .collect();
    Quotient {
        group: q,
        projection,
    }
}

use rustc_hash::FxHashSet;

use crate::permgroup::{Group, GroupError, Permutation, PrimeSet};

use super::Analysis;

#[derive(Clone, Debug)]
pub enum HallOutcome {
    Found(Group),
    /// The search stopped after `nodes` generation attempts.
    BudgetExhausted {
        nodes: u64,
    },
    /// The search space was exhausted: no Hall subgroup exists.
    DoesNotExist,
}

impl HallOutcome {
    pub fn found(self) -> Option<Group> {
        match self {
            HallOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

fn is_p_element(x: &Permutation, p: u64) -> bool {
    PrimeSet::single(p).is_pi_number(x.order())
}

/// A Sylow p-subgroup, grown from the least p-element through normalizers.
pub fn sylow_subgroup(g: &Group, p: u64) -> Group {
    let target = PrimeSet::single(p).pi_part(g.order());
    let Some(start) = g
        .elements()
        .find(|x| !x.is_identity() && is_p_element(x, p))
    else {
        return g.subgroup(std::iter::empty());
    };
    let mut sylow = g.subgroup([start]);
    while sylow.order() < target {
        let n = g.normalizer(&sylow);
        let x = n
            .elements()
            .find(|x| is_p_element(x, p) && !sylow.contains(x))
            .expect("a proper p-subgroup is properly contained in its normalizer's p-part")
            .clone();
        let mut seed: Vec<Permutation> = sylow.generators().to_vec();
        seed.push(x);
        sylow = g.subgroup(seed.iter());
    }
    sylow
}

/// Key identifying a subgroup by its element indices in `g`.
fn key(g: &Group, h: &Group) -> Vec<u32> {
    let mut k: Vec<u32> = h
        .elements()
        .map(|x| g.index_of(x).expect("subgroup of g") as u32)
        .collect();
    k.sort_unstable();
    k
}

/// All distinct conjugates `h^x`, in order of first appearance over `x ∈ g`.
pub fn sylow_conjugates(g: &Group, h: &Group) -> Vec<Group> {
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut out = Vec::new();
    let n = g.normalizer(h);
    let expected = (g.order() / n.order()) as usize;
    for x in g.elements() {
        let c = g.conjugate_subgroup(h, x);
        if seen.insert(key(g, &c)) {
            out.push(c);
            if out.len() == expected {
                break;
            }
        }
    }
    out
}

struct HallSearch<'a> {
    g: &'a Group,
    pi: PrimeSet,
    target: u64,
    /// Conjugates of one Sylow subgroup per prime, first prime fixed to one entry.
    levels: Vec<(u64, Vec<Group>)>,
    budget: u64,
    nodes: u64,
}

enum Step {
    Found(Group),
    Exhausted,
    Dead,
}

impl HallSearch<'_> {
    fn join(&mut self, current: &Group, extra: &Group) -> Option<Option<Group>> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        let mut gens: Vec<Permutation> = current.generators().to_vec();
        gens.extend(extra.generators().iter().cloned());
        match Group::generate(self.g.degree(), &gens, self.target as usize) {
            Ok(h) if self.pi.is_pi_number(h.order()) && self.target.is_multiple_of(h.order()) => {
                Some(Some(h))
            }
            Ok(_) | Err(GroupError::CapExceeded { .. }) => Some(None),
            Err(e) => panic!("generation inside an enumerated group failed: {e}"),
        }
    }

    fn descend(&mut self, current: Group, level: usize) -> Step {
        if current.order() == self.target {
            return Step::Found(current);
        }
        let Some((q, _)) = self.levels.get(level) else {
            return Step::Dead;
        };
        let q = *q;
        let full = PrimeSet::single(q).pi_part(self.target);
        if PrimeSet::single(q).pi_part(current.order()) == full {
            return self.descend(current, level + 1);
        }
        let count = self.levels[level].1.len();
        for i in 0..count {
            let candidate = self.levels[level].1[i].clone();
            match self.join(&current, &candidate) {
                None => return Step::Exhausted,
                Some(None) => continue,
                Some(Some(h)) => match self.descend(h, level + 1) {
                    Step::Dead => continue,
                    done => return done,
                },
            }
        }
        Step::Dead
    }
}

/// A subgroup of order `|G|_π`, searched within `budget` generation attempts.
pub fn hall_pi_subgroup(a: &Analysis, pi: &PrimeSet, budget: u64) -> HallOutcome {
    let g = a.group();
    let primes = pi.intersection(&g.prime_set());
    let target = primes.pi_part(g.order());
    if target == 1 {
        return HallOutcome::Found(g.subgroup(std::iter::empty()));
    }
    if target == g.order() {
        return HallOutcome::Found((**g).clone());
    }
    if primes.len() == 1 {
        return HallOutcome::Found(sylow_subgroup(g, primes.as_slice()[0]));
    }
    if let Some(set) = a.closed_pi_elements(&primes) {
        return HallOutcome::Found(a.subgroup(&set));
    }
    let mut levels: Vec<(u64, Vec<Group>)> = primes
        .iter()
        .map(|q| (q, sylow_conjugates(g, &sylow_subgroup(g, q))))
        .collect();
    // every Hall subgroup has a conjugate containing any fixed Sylow subgroup
    // of the first prime, so the prime with the most conjugates is pinned
    levels.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then(x.0.cmp(&y.0)));
    levels[0].1.truncate(1);
    let mut search = HallSearch {
        g,
        pi: primes,
        target,
        levels,
        budget,
        nodes: 0,
    };
    let start = search.levels[0].1[0].clone();
    match search.descend(start, 1) {
        Step::Found(h) => HallOutcome::Found(g.subgroup(h.generators())),
        Step::Exhausted => HallOutcome::BudgetExhausted {
            nodes: search.nodes,
        },
        Step::Dead => HallOutcome::DoesNotExist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, GroupSpec};
    use std::sync::Arc;

    fn analysis(spec: GroupSpec) -> Analysis {
        Analysis::new(build(&spec).unwrap())
    }

    #[test]
    fn sylow_examples() {
        let s3 = build(&GroupSpec::Symmetric { n: 3 }).unwrap();
        assert_eq!(sylow_subgroup(&s3, 3).order(), 3);
        assert_eq!(sylow_subgroup(&s3, 2).order(), 2);
        assert!(sylow_subgroup(&s3, 5).is_trivial());
        let b = build(&GroupSpec::example_31b()).unwrap();
        assert_eq!(sylow_subgroup(&b, 3).order(), 3);
        assert_eq!(sylow_subgroup(&b, 5).order(), 125);
        let s4 = build(&GroupSpec::Symmetric { n: 4 }).unwrap();
        let p = sylow_subgroup(&s4, 2);
        assert_eq!(p.order(), 8);
        assert_eq!(sylow_conjugates(&s4, &p).len(), 3);
    }

    /// Sylow subgroups grown from every p-element are conjugate to the canonical one.
    #[test]
    fn sylow_subgroups_are_conjugate() {
        for spec in [
            GroupSpec::Symmetric { n: 4 },
            GroupSpec::Alternating { n: 5 },
            GroupSpec::Dihedral { order: 24 },
            GroupSpec::FrobeniusMetacyclic { q: 13, d: 4 },
        ] {
            let g = build(&spec).unwrap();
            for p in g.prime_set().iter() {
                let canonical = sylow_subgroup(&g, p);
                let keys: FxHashSet<Vec<u32>> = sylow_conjugates(&g, &canonical)
                    .iter()
                    .map(|c| key(&g, c))
                    .collect();
                let target = PrimeSet::single(p).pi_part(g.order());
                for x in g
                    .elements()
                    .filter(|x| !x.is_identity() && is_p_element(x, p))
                {
                    let mut s = g.subgroup([x]);
                    while s.order() < target {
                        let n = g.normalizer(&s);
                        let y = n
                            .elements()
                            .find(|y| is_p_element(y, p) && !s.contains(y))
                            .unwrap()
                            .clone();
                        let mut seed = s.generators().to_vec();
                        seed.push(y);
                        s = g.subgroup(seed.iter());
                    }
                    assert!(keys.contains(&key(&g, &s)));
                }
            }
        }
    }

    #[test]
    fn hall_examples() {
        let a = analysis(GroupSpec::example_31a());
        let odd = PrimeSet::new([3, 5, 7]);
        let h = hall_pi_subgroup(&a, &odd, super::super::DEFAULT_BUDGET)
            .found()
            .unwrap();
        assert_eq!(h.order(), 2625);

        let f = analysis(GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 });
        let h = hall_pi_subgroup(&f, &PrimeSet::new([2, 3]), super::super::DEFAULT_BUDGET)
            .found()
            .unwrap();
        assert_eq!(h.order(), 6);
        assert!(h.is_subgroup_of(f.group()));

        let s4 = analysis(GroupSpec::Symmetric { n: 4 });
        assert_eq!(
            hall_pi_subgroup(&s4, &PrimeSet::new([2, 3]), 10)
                .found()
                .unwrap()
                .order(),
            24
        );

        let a5 = analysis(GroupSpec::Alternating { n: 5 });
        let h = hall_pi_subgroup(&a5, &PrimeSet::new([2, 3]), super::super::DEFAULT_BUDGET)
            .found()
            .unwrap();
        assert_eq!(h.order(), 12);
        assert!(matches!(
            hall_pi_subgroup(&a5, &PrimeSet::new([2, 5]), super::super::DEFAULT_BUDGET),
            HallOutcome::DoesNotExist
        ));
        assert!(matches!(
            hall_pi_subgroup(&a5, &PrimeSet::new([3, 5]), super::super::DEFAULT_BUDGET),
            HallOutcome::DoesNotExist
        ));
        assert!(matches!(
            hall_pi_subgroup(&a5, &PrimeSet::new([2, 5]), 0),
            HallOutcome::BudgetExhausted { nodes: 0 }
        ));
    }

    /// Hall subgroups exist for every π in solvable groups; the result has the right order.
    #[test]
    fn hall_orders_on_solvable_groups() {
        for spec in [
            GroupSpec::Symmetric { n: 4 },
            GroupSpec::Dihedral { order: 30 },
            GroupSpec::Direct {
                parts: vec![
                    GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 },
                    GroupSpec::Symmetric { n: 3 },
                ],
            },
        ] {
            let a = Analysis::new(Arc::new(build(&spec).unwrap()));
            for pi in a.group().prime_set().subsets() {
                let h = hall_pi_subgroup(&a, &pi, super::super::DEFAULT_BUDGET)
                    .found()
                    .unwrap();
                assert_eq!(h.order(), pi.pi_part(a.order()), "pi = {pi}");
                assert!(h.is_subgroup_of(a.group()));
            }
        }
    }
}

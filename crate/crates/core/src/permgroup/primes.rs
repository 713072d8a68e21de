use std::fmt;

use serde::{Deserialize, Serialize};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite set of primes, kept sorted.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::default()
    }

    /// Panics if any member is not prime.
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Self {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        assert!(
            primes.iter().all(|&p| is_prime(p)),
            "non-prime in {primes:?}"
        );
        primes.sort_unstable();
        primes.dedup();
        PrimeSet { primes }
    }

    pub fn single(p: u64) -> Self {
        PrimeSet::new([p])
    }

    /// π(n): the prime divisors of `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet {
            primes: factorize(n).into_iter().map(|(p, _)| p).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.iter().filter(|&p| other.contains(p)).collect(),
        }
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.iter().filter(|&p| !other.contains(p)).collect(),
        }
    }

    /// π′ relative to the declared universe.
    pub fn complement_in(&self, universe: &PrimeSet) -> PrimeSet {
        universe.difference(self)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| !other.contains(p))
    }

    /// Whether every prime divisor of `n` lies in the set. `1` is a π-number for every π.
    pub fn is_pi_number(&self, n: u64) -> bool {
        debug_assert!(n > 0);
        self.pi_part(n) == n
    }

    /// Whether no prime divisor of `n` lies in the set.
    pub fn is_pi_prime_number(&self, n: u64) -> bool {
        self.pi_part(n) == 1
    }

    /// `n_π`: the largest π-number dividing `n`.
    pub fn pi_part(&self, mut n: u64) -> u64 {
        let mut part = 1;
        for p in self.iter() {
            while n.is_multiple_of(p) {
                n /= p;
                part *= p;
            }
        }
        part
    }

    /// All subsets, in a fixed order (by bitmask over the sorted members).
    pub fn subsets(&self) -> Vec<PrimeSet> {
        let n = self.primes.len();
        (0u32..1 << n)
            .map(|mask| PrimeSet {
                primes: (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.primes[i])
                    .collect(),
            })
            .collect()
    }
}

impl FromIterator<u64> for PrimeSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        PrimeSet::new(iter)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(5250), vec![(2, 1), (3, 1), (5, 3), (7, 1)]);
        assert_eq!(PrimeSet::of(42).as_slice(), &[2, 3, 7]);
    }

    #[test]
    fn pi_numbers() {
        let pi = PrimeSet::new([2, 3]);
        assert!(pi.is_pi_number(1));
        assert!(pi.is_pi_number(12));
        assert!(!pi.is_pi_number(14));
        assert!(pi.is_pi_prime_number(35));
        assert!(pi.is_pi_prime_number(1));
        assert_eq!(pi.pi_part(5250), 6);
        let universe = PrimeSet::of(5250);
        assert_eq!(pi.complement_in(&universe).as_slice(), &[5, 7]);
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = PrimeSet::new([2, 3, 5]);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs[0].is_empty());
        assert_eq!(subs[7], s);
    }

    #[test]
    #[should_panic]
    fn rejects_composites() {
        PrimeSet::new([4]);
    }
}

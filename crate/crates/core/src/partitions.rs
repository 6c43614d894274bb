//! Integer partitions, the partition power `T^a`, and the arithmetic that
//! goes with them (orders, totients, permutation counts in `S_n`).
//!
//! A [`Partition`] stores its parts in ascending order, so two equal
//! partitions always compare and hash equal. The normal form
//! `[m_1^{t_1}, ..., m_k^{t_k}]` is derived on demand and never carries a
//! zero multiplicity.
//!
//! ```
//! use powergraph::partitions::{Partition, PowerKind};
//!
//! let t: Partition = "[2,3]".parse().unwrap();
//! assert_eq!(t.order(), 6);
//! assert_eq!(t.power(2).to_string(), "[1,1,3]");
//! assert_eq!(t.classify_power(2), PowerKind::Proper);
//! assert_eq!(t.mu_symmetric().to_string(), "20");
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{parse_err, Error, Result};

/// Exact, arbitrary-precision count. Factorials such as `(n-2)!+1` leave
/// machine words behind quickly.
pub type BigCount = BigUint;

/// A partition of `n` with parts kept in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// How an exponent acts on a partition; see [`Partition::classify_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    /// `T^a = T`, i.e. `gcd(a, o(T)) = 1`.
    Identity,
    /// `T^a = [1^n]`, i.e. `o(T) | a`.
    Trivializing,
    /// `T^a` is neither `T` nor trivial.
    Proper,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts and empty
    /// input are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("a partition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    /// Builds a partition from `(part, multiplicity)` pairs. Entries with
    /// multiplicity zero are dropped.
    pub fn from_normal_form(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(m, t) in pairs {
            parts.extend(std::iter::repeat(m).take(t as usize));
        }
        Partition::new(parts)
    }

    /// The trivial partition `[1^n]`, the type of the identity.
    pub fn trivial(n: u32) -> Result<Self> {
        Partition::new(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts (with repetition).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Distinct parts with their multiplicities, parts strictly ascending.
    pub fn normal_form(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((m, t)) if *m == p => *t += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `o(T)`: the lcm of the distinct parts.
    pub fn order(&self) -> u64 {
        self.normal_form()
            .iter()
            .fold(1u64, |acc, &(m, _)| acc.lcm(&(m as u64)))
    }

    /// The gcd of the distinct parts.
    pub fn gcd(&self) -> u64 {
        self.normal_form()
            .iter()
            .fold(0u64, |acc, &(m, _)| acc.gcd(&(m as u64)))
    }

    /// The power `T^a`: every part `m` becomes `m / gcd(a, m)`, repeated
    /// `gcd(a, m)` times. `a = 0` is treated like any multiple of `o(T)`.
    pub fn power(&self, a: u64) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len());
        for &(m, t) in &self.normal_form() {
            let g = if a == 0 { m as u64 } else { a.gcd(&(m as u64)) };
            let reps = t as u64 * g;
            let part = (m as u64 / g) as u32;
            parts.extend(std::iter::repeat(part).take(reps as usize));
        }
        parts.sort_unstable();
        Partition { parts }
    }

    /// `T^a` computed through the reduced exponent `gcd(a, o(T))`. Equal
    /// to [`Partition::power`] because every part divides `o(T)`.
    pub fn power_class(&self, a: u64) -> Partition {
        let o = self.order();
        let reduced = if a == 0 { o } else { a.gcd(&o) };
        self.power(reduced)
    }

    /// Classifies the exponent `a` against `o(T)`. When `o(T) = 1` the
    /// identity and trivializing cases coincide and `Trivializing` wins.
    pub fn classify_power(&self, a: u64) -> PowerKind {
        let o = self.order();
        let g = if a == 0 { o } else { a.gcd(&o) };
        if g == o {
            PowerKind::Trivializing
        } else if g == 1 {
            PowerKind::Identity
        } else {
            PowerKind::Proper
        }
    }

    /// True when `self` is a proper power of `other`.
    pub fn is_proper_power_of(&self, other: &Partition) -> bool {
        if self.n() != other.n() || self.is_trivial() || self == other {
            return false;
        }
        divisors(other.order())
            .into_iter()
            .any(|d| other.power(d) == *self)
    }

    /// `μ_T(S_n) = n! / (∏ m_j^{t_j} · ∏ t_j!)`, the number of permutations
    /// of `S_n` with this cycle type.
    pub fn mu_symmetric(&self) -> BigCount {
        let mut denom = BigUint::one();
        for &(m, t) in &self.normal_form() {
            denom *= BigUint::from(m).pow(t);
            denom *= factorial(t as u64);
        }
        factorial(self.n() as u64) / denom
    }

    /// Key for the deterministic "least type" choice: fewer parts first,
    /// then lexicographic on the ascending parts.
    pub fn selection_key(&self) -> (usize, &[u32]) {
        (self.parts.len(), &self.parts)
    }

    /// Normal-form text such as `"1^2 2"`; multiplicity one is omitted.
    pub fn to_normal_form_string(&self) -> String {
        self.normal_form()
            .iter()
            .map(|&(m, t)| if t == 1 { m.to_string() } else { format!("{m}^{t}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Every partition of `n`, each exactly once, in lexicographic order of the
/// ascending part lists (so `[1^n]` comes first and `[n]` last).
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidInput("partitions_of needs n >= 1".into()));
    }
    fn rec(remaining: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in min_part..=remaining {
            // a part p is only viable if the rest can still be split into parts >= p
            let rest = remaining - p;
            if rest != 0 && rest < p {
                continue;
            }
            prefix.push(p);
            rec(rest, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Euler's totient `φ(m)`. `m = 0` is rejected.
pub fn totient(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("totient needs m >= 1".into()));
    }
    let mut result = m;
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// All positive divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisors `d` of `m` with `1 < d < m`.
pub fn proper_divisors(m: u64) -> Vec<u64> {
    divisors(m)
        .into_iter()
        .filter(|&d| d != 1 && d != m)
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: u64) -> BigCount {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts bracket lists (`"[1,1,2]"`, `"[1^2,2]"`) and normal-form text
    /// (`"1^2 2"`).
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(parse_err("partition", s, "unbalanced brackets")),
        };
        let mut parts = Vec::new();
        for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let (base, mult) = match token.split_once('^') {
                Some((b, e)) => (b, e),
                None => (token, "1"),
            };
            let m: u32 = base
                .parse()
                .map_err(|_| parse_err("partition", s, format!("bad part {base:?}")))?;
            let t: u32 = mult
                .parse()
                .map_err(|_| parse_err("partition", s, format!("bad multiplicity {mult:?}")))?;
            parts.extend(std::iter::repeat(m).take(t as usize));
        }
        Partition::new(parts).map_err(|e| parse_err("partition", s, e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    // Oracle: every non-decreasing sequence of positive integers summing to n,
    // found by scanning all compositions of n (bitmask over the n-1 gaps).
    fn brute_partitions(n: u32) -> Vec<Vec<u32>> {
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for gap in 0..n - 1 {
                if mask & (1 << gap) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts.sort_unstable();
            seen.insert(parts);
        }
        seen.into_iter().collect()
    }

    // Oracle: all permutations of 0..n as image vectors.
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for smaller in all_perms(n - 1) {
            for pos in 0..n {
                let mut v: Vec<usize> = smaller.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }

    fn orbit_lengths(images: &[usize]) -> Vec<u32> {
        let mut seen = vec![false; images.len()];
        let mut out = Vec::new();
        for start in 0..images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = images[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn partitions_of_small() {
        assert_eq!(partitions_of(1).unwrap(), vec![p("[1]")]);
        let four: Vec<String> = partitions_of(4).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(four, ["[1,1,1,1]", "[1,1,2]", "[1,3]", "[2,2]", "[4]"]);
        assert_eq!(partitions_of(7).unwrap().len(), 15);
        assert!(partitions_of(0).is_err());
    }

    #[test]
    fn partitions_of_matches_composition_oracle() {
        for n in 1..=12 {
            let ours: Vec<Vec<u32>> = partitions_of(n)
                .unwrap()
                .into_iter()
                .map(|t| t.parts().to_vec())
                .collect();
            assert_eq!(ours, brute_partitions(n), "n = {n}");
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(Partition::trivial(6).unwrap().order(), 1);
        assert_eq!(p("[2,3]").order(), 6);
        assert_eq!(p("[1,2,4]").order(), 4);
        assert_eq!(p("[4,6]").gcd(), 2);
    }

    #[test]
    fn power_examples() {
        assert_eq!(p("[4]").power(2), p("[2,2]"));
        assert_eq!(p("[2,3]").power(2), p("[1,1,3]"));
        for t in partitions_of(6).unwrap() {
            assert_eq!(t.power(1), t);
        }
        assert_eq!(p("[6]").power_class(8), p("[3,3]"));
        assert_eq!(p("[6]").power(8), p("[3,3]"));
        assert_eq!(p("[4]").power_class(5), p("[4]"));
        assert_eq!(p("[2,2]").power_class(2), p("[1^4]"));
    }

    #[test]
    fn power_matches_permutation_power_oracle() {
        // square (1 2)(3 4 5) by hand: (3 5 4), fixing 1 and 2
        let psi = [1usize, 0, 3, 4, 2];
        let squared: Vec<usize> = (0..5).map(|i| psi[psi[i]]).collect();
        assert_eq!(orbit_lengths(&squared), vec![1, 1, 3]);
        assert_eq!(p("[2,3]").power(2).parts(), &[1, 1, 3]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(p("[2,3]").classify_power(5), PowerKind::Identity);
        assert_eq!(p("[2,3]").classify_power(6), PowerKind::Trivializing);
        assert_eq!(p("[2,3]").classify_power(2), PowerKind::Proper);
        assert_eq!(p("[1,1]").classify_power(1), PowerKind::Trivializing);
    }

    #[test]
    fn mu_symmetric_examples() {
        assert_eq!(Partition::trivial(5).unwrap().mu_symmetric(), BigUint::from(1u32));
        assert_eq!(p("[1,4]").mu_symmetric(), BigUint::from(30u32));
        assert_eq!(p("[2,3]").mu_symmetric(), BigUint::from(20u32));
    }

    #[test]
    fn mu_symmetric_matches_enumeration_of_s5_and_s6() {
        for n in [5usize, 6] {
            let mut census = std::collections::BTreeMap::<Vec<u32>, u64>::new();
            for perm in all_perms(n) {
                *census.entry(orbit_lengths(&perm)).or_default() += 1;
            }
            for t in partitions_of(n as u32).unwrap() {
                assert_eq!(t.mu_symmetric(), BigUint::from(census[t.parts()]), "{t}");
            }
        }
    }

    #[test]
    fn mu_sums_to_factorial() {
        for n in 1..=10u32 {
            let total: BigUint = partitions_of(n).unwrap().iter().map(|t| t.mu_symmetric()).sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn totient_examples_and_oracle() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(4).unwrap(), 2);
        assert_eq!(totient(6).unwrap(), 2);
        assert!(totient(0).is_err());
        for m in 1..=500u64 {
            let brute = (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64;
            assert_eq!(totient(m).unwrap(), brute, "m = {m}");
        }
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(proper_divisors(12), vec![2, 3, 4, 6]);
        assert!(proper_divisors(7).is_empty());
        assert_eq!(divisors(1), vec![1]);
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn text_forms() {
        let t = p("[2,1,1]");
        assert_eq!(t.to_string(), "[1,1,2]");
        assert_eq!(t.to_normal_form_string(), "1^2 2");
        assert_eq!(p("1^2 2"), t);
        assert_eq!(p("[1^2,2]"), t);
        assert_eq!(t.normal_form(), vec![(1, 2), (2, 1)]);
        assert_eq!(Partition::from_normal_form(&[(1, 2), (3, 0), (2, 1)]).unwrap(), t);
        assert!("[1,0]".parse::<Partition>().is_err());
        assert!("[1,2".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn proper_power_relation() {
        assert!(p("[2,2]").is_proper_power_of(&p("[4]")));
        assert!(!p("[4]").is_proper_power_of(&p("[2,2]")));
        assert!(!p("[1^4]").is_proper_power_of(&p("[4]")));
        assert!(!p("[4]").is_proper_power_of(&p("[4]")));
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        (1u32..=10).prop_flat_map(|n| {
            // random composition of n, then sorted
            proptest::collection::vec(any::<bool>(), (n - 1) as usize).prop_map(move |gaps| {
                let mut parts = Vec::new();
                let mut run = 1;
                for cut in gaps {
                    if cut {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Partition::new(parts).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trips(t in arb_partition()) {
            prop_assert_eq!(t.to_string().parse::<Partition>().unwrap(), t.clone());
            prop_assert_eq!(t.to_normal_form_string().parse::<Partition>().unwrap(), t);
        }

        #[test]
        fn power_composes(t in arb_partition(), a in 1u64..=30, b in 1u64..=30) {
            prop_assert_eq!(t.power(a).power(b), t.power(a * b));
            prop_assert_eq!(t.power(a).n(), t.n());
            prop_assert_eq!(t.power_class(a), t.power(a));
        }

        #[test]
        fn power_fixed_and_trivial(t in arb_partition(), a in 1u64..=30) {
            let o = t.order();
            prop_assert_eq!(t.power(a) == t, a.gcd(&o) == 1);
            prop_assert_eq!(t.power(a).is_trivial(), a % o == 0);
            prop_assert_eq!(t.power(a).order(), o / a.gcd(&o));
        }

        #[test]
        fn proper_powers_shape(t in arb_partition(), a in 1u64..=30) {
            if t.classify_power(a) == PowerKind::Proper {
                let q = t.power(a);
                let o = t.order();
                prop_assert!(o % q.order() == 0 && q.order() != 1 && q.order() != o);
                let nf = q.normal_form();
                prop_assert!(nf.iter().any(|&(_, mult)| mult >= 2));
                for (x, mult) in nf {
                    if mult == 1 {
                        prop_assert_eq!((x as u64).gcd(&a), 1);
                        prop_assert!(t.parts().contains(&x));
                    }
                }
            }
        }
    }
}

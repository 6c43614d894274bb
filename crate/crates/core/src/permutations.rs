//! Permutations of `{1..n}`, explicitly enumerated permutation groups,
//! cyclic-generator classes, normalizers in `S_n` and the fusion-control
//! test.
//!
//! Conventions used throughout the crate:
//!
//! * composition is right-to-left: `a.compose(&b)` maps `i` to `a(b(i))`;
//! * conjugation is `ψ^x = x⁻¹ ∘ ψ ∘ x`;
//! * points are `1..=n` in text and in [`Permutation::from_cycles`], and
//!   `0..n` in [`Permutation::images`].
//!
//! ```
//! use powergraph::permutations::Permutation;
//!
//! let a: Permutation = "(1 2)".parse().unwrap();
//! let b = Permutation::parse("(2 3)", Some(3)).unwrap();
//! let a = a.extend_to(3);
//! assert_eq!(a.compose(&b).unwrap().to_string(), "(1 2 3)");
//! assert_eq!(a.conjugate(&Permutation::parse("(1 3)", Some(3)).unwrap()).unwrap().to_string(), "(2 3)");
//! ```

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{parse_err, Error, Result};
use crate::partitions::{totient, Partition};
use crate::Caps;

/// A bijection of `{0..n}` stored as its image word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from zero-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("degree {n} is too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `degree` from disjoint cycles written
    /// with one-based points, e.g. `&[vec![1, 2], vec![3, 4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidInput(format!("point {pt} outside 1..={degree}")));
                }
                if used[pt - 1] {
                    return Err(Error::InvalidInput(format!("point {pt} repeated in cycles")));
                }
                used[pt - 1] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses `"id"`, disjoint-cycle notation `"(1 2)(3 4 5)"` or an image
    /// word `"2 1 4 5 3"`. Cycle notation and `"id"` take their degree from
    /// `degree` when given; otherwise cycle notation uses the largest point
    /// and `"id"` is rejected.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let s = text.trim();
        let perm = if s == "id" {
            let n = degree.ok_or_else(|| parse_err("permutation", text, "\"id\" needs a degree"))?;
            Permutation::identity(n)
        } else if s.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let body_start = rest
                    .strip_prefix('(')
                    .ok_or_else(|| parse_err("permutation", text, "expected '('"))?;
                let close = body_start
                    .find(')')
                    .ok_or_else(|| parse_err("permutation", text, "missing ')'"))?;
                let cycle = body_start[..close]
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| parse_err("permutation", text, format!("bad point {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if cycle.is_empty() {
                    return Err(parse_err("permutation", text, "empty cycle"));
                }
                cycles.push(cycle);
                rest = body_start[close + 1..].trim_start();
            }
            let max_point = cycles.iter().flatten().copied().max().unwrap_or(0);
            let n = degree.unwrap_or(max_point);
            Permutation::from_cycles(n, &cycles).map_err(|e| parse_err("permutation", text, e.to_string()))?
        } else {
            let images = s
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(parse_err("permutation", text, format!("bad image {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if images.is_empty() {
                return Err(parse_err("permutation", text, "empty input"));
            }
            let p = Permutation::from_images(images).map_err(|e| parse_err("permutation", text, e.to_string()))?;
            match degree {
                Some(n) if n != p.degree() => {
                    return Err(parse_err("permutation", text, format!("image word has degree {}, expected {n}", p.degree())))
                }
                _ => p,
            }
        };
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image word.
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Image of the zero-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// The same permutation acting on `{1..degree}`, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..degree.max(self.degree()) as u16);
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u16;
        }
        Permutation { images }
    }

    /// `ψ^a`; negative exponents give powers of the inverse.
    pub fn pow(&self, a: i64) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for cycle in self.zero_based_cycles() {
            let len = cycle.len() as i64;
            let shift = a.rem_euclid(len) as usize;
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(k + shift) % cycle.len()] as u16;
            }
        }
        Permutation { images }
    }

    /// `ψ^x = x⁻¹ ∘ ψ ∘ x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation> {
        self.check_degree(x)?;
        let inv = x.inverse();
        Ok(Permutation {
            images: x
                .images
                .iter()
                .map(|&xi| inv.images[self.images[xi as usize] as usize])
                .collect(),
        })
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.zero_based_cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Moved points, one-based and ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i != v as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Orbit lengths as a partition of the degree; fixed points count as 1.
    pub fn cycle_type(&self) -> Partition {
        let parts = self.zero_based_cycles().iter().map(|c| c.len() as u32).collect();
        Partition::new(parts).expect("a permutation of positive degree has at least one orbit")
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.zero_based_cycles().len();
        (self.degree() - cycles) % 2 == 0
    }

    /// Non-trivial cycles with one-based points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.zero_based_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    /// All orbits including fixed points, zero-based, ordered by least point.
    fn zero_based_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Space-separated one-based image word.
    pub fn to_image_word(&self) -> String {
        self.images
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

/// The class `[x]` of all generators of the cyclic subgroup `⟨x⟩`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicClass {
    /// Lexicographically least image word among the generators.
    pub representative: Permutation,
    /// `φ(o(x))`.
    pub class_size: u64,
    /// `o(x)`.
    pub subgroup_order: u64,
}

impl CyclicClass {
    pub fn cycle_type(&self) -> Partition {
        self.representative.cycle_type()
    }

    /// Every generator of the subgroup, in ascending image-word order.
    pub fn members(&self) -> Vec<Permutation> {
        let m = self.subgroup_order;
        let mut out: Vec<Permutation> = (1..=m)
            .filter(|k| k.gcd(&m) == 1)
            .map(|k| self.representative.pow(k as i64))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

impl fmt::Debug for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical class of `ψ`. The identity has no proper class.
pub fn cyclic_class(psi: &Permutation) -> Result<CyclicClass> {
    if psi.is_identity() {
        return Err(Error::IdentityClass);
    }
    let m = psi.order();
    let representative = (1..=m)
        .filter(|k| k.gcd(&m) == 1)
        .map(|k| psi.pow(k as i64))
        .min()
        .expect("k = 1 is always coprime");
    Ok(CyclicClass {
        representative,
        class_size: totient(m)?,
        subgroup_order: m,
    })
}

/// Which group a [`PermGroup`] was built as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Symmetric,
    Alternating,
    Generated,
}

/// An explicitly enumerated permutation group. Elements are kept sorted by
/// image word, so lookups are binary searches and every derived structure
/// is deterministic.
#[derive(Clone, Debug)]
pub struct PermGroup {
    kind: GroupKind,
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn symmetric(n: usize, caps: &Caps) -> Result<Self> {
        enumerate_group(GroupKind::Symmetric, n, &[], caps)
    }

    pub fn alternating(n: usize, caps: &Caps) -> Result<Self> {
        enumerate_group(GroupKind::Alternating, n, &[], caps)
    }

    pub fn generated(n: usize, generators: &[Permutation], caps: &Caps) -> Result<Self> {
        enumerate_group(GroupKind::Generated, n, generators, caps)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, ascending by image word (the identity is first).
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// The defining generators; empty for the named kinds.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// A generating set: the defining generators, or the standard ones
    /// for `S_n` (`(1 2)`, `(1 2 ... n)`) and `A_n` (`(1 2 k)`, `3 ≤ k ≤ n`).
    pub fn generating_set(&self) -> Vec<Permutation> {
        let n = self.degree;
        match self.kind {
            GroupKind::Generated => self.generators.clone(),
            GroupKind::Symmetric if n >= 2 => vec![
                Permutation::from_cycles(n, &[vec![1, 2]]).unwrap(),
                Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap(),
            ],
            GroupKind::Alternating => (3..=n)
                .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
                .collect(),
            GroupKind::Symmetric => Vec::new(),
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Wraps an already closed, sorted element list, choosing a small
    /// generating set greedily.
    fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for e in &elements {
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            span = closure(degree, &generators, usize::MAX).expect("no cap");
        }
        PermGroup {
            kind: GroupKind::Generated,
            degree,
            elements,
            generators,
        }
    }
}

fn closure(degree: usize, generators: &[Permutation], max_order: usize) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.compose(s)?;
            if seen.insert(h.clone()) {
                if seen.len() > max_order {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        limit: max_order,
                        actual: seen.len(),
                    });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

fn next_permutation(v: &mut [u16]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Enumerates `S_n`, `A_n`, or the closure of `generators`.
pub fn enumerate_group(kind: GroupKind, n: usize, generators: &[Permutation], caps: &Caps) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let elements = match kind {
        GroupKind::Symmetric | GroupKind::Alternating => {
            if n > caps.max_enumeration_degree {
                return Err(Error::CapExceeded {
                    what: "enumeration degree",
                    limit: caps.max_enumeration_degree,
                    actual: n,
                });
            }
            let mut word: Vec<u16> = (0..n as u16).collect();
            let mut out = Vec::new();
            loop {
                let p = Permutation { images: word.clone() };
                if kind == GroupKind::Symmetric || p.is_even() {
                    out.push(p);
                }
                if !next_permutation(&mut word) {
                    break;
                }
            }
            out
        }
        GroupKind::Generated => {
            if let Some(g) = generators.iter().find(|g| g.degree() != n) {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
            let mut out: Vec<Permutation> = closure(n, generators, caps.max_group_order)?.into_iter().collect();
            out.sort();
            out
        }
    };
    Ok(PermGroup {
        kind,
        degree: n,
        elements,
        generators: if kind == GroupKind::Generated {
            generators.to_vec()
        } else {
            Vec::new()
        },
    })
}

fn check_bruteforce_cap(n: usize, caps: &Caps) -> Result<()> {
    if n > caps.max_bruteforce_degree {
        return Err(Error::CapExceeded {
            what: "brute-force degree",
            limit: caps.max_bruteforce_degree,
            actual: n,
        });
    }
    Ok(())
}

fn normalizes(x: &Permutation, group: &PermGroup, generators: &[Permutation]) -> bool {
    generators
        .iter()
        .all(|g| group.contains(&g.conjugate(x).expect("same degree")))
}

/// `N_{S_n}(G) = {x ∈ S_n : G^x = G}` by brute force over `S_n`.
pub fn normalizer_in_symmetric(group: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    let n = group.degree();
    check_bruteforce_cap(n, caps)?;
    let gens = group.generating_set();
    let symmetric = enumerate_group(GroupKind::Symmetric, n, &[], &Caps::unbounded())?;
    let elements: Vec<Permutation> = symmetric
        .elements
        .into_iter()
        .filter(|x| normalizes(x, group, &gens))
        .collect();
    Ok(PermGroup::from_closed_elements(n, elements))
}

/// A failure of fusion control: `ψ^x ∈ G` for some `x ∈ S_n`, but no element
/// of the normalizer conjugates `ψ` to the same place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionWitness {
    pub psi: Permutation,
    pub x: Permutation,
    pub conjugate: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionCheck {
    pub controlled: bool,
    pub witness: Option<FusionWitness>,
}

/// Some `x ∈ S_n` with `ψ^x = φ`, for `ψ`, `φ` of equal cycle type.
fn conjugator(psi: &Permutation, phi: &Permutation) -> Permutation {
    let by_len = |p: &Permutation| {
        let mut cycles = p.zero_based_cycles();
        cycles.sort_by_key(|c| c.len());
        cycles
    };
    let psi_cycles = by_len(psi);
    let phi_cycles = by_len(phi);
    // ψ^x = φ  ⇔  x ∘ φ = ψ ∘ x: send the k-th point of each φ-cycle to the
    // k-th point of the matching ψ-cycle.
    let mut images = vec![0usize; psi.degree()];
    for (a, b) in phi_cycles.iter().zip(&psi_cycles) {
        for (&from, &to) in a.iter().zip(b) {
            images[from] = to;
        }
    }
    Permutation::from_images(images).expect("cycle alignment is a bijection")
}

/// Whether `N_{S_n}(G)` controls fusion in `G`: every `S_n`-conjugacy class
/// meets `G` in a single `N_{S_n}(G)`-orbit.
pub fn is_fusion_controlled(group: &PermGroup, caps: &Caps) -> Result<FusionCheck> {
    let normalizer = normalizer_in_symmetric(group, caps)?;
    let mut by_type: BTreeMap<Partition, Vec<&Permutation>> = BTreeMap::new();
    for e in group.elements() {
        by_type.entry(e.cycle_type()).or_default().push(e);
    }
    for members in by_type.values() {
        let psi = members[0];
        let orbit: HashSet<Permutation> = normalizer
            .elements()
            .iter()
            .map(|y| psi.conjugate(y).expect("same degree"))
            .collect();
        if let Some(&phi) = members.iter().find(|m| !orbit.contains(**m)) {
            let x = conjugator(psi, phi);
            return Ok(FusionCheck {
                controlled: false,
                witness: Some(FusionWitness {
                    psi: psi.clone(),
                    conjugate: psi.conjugate(&x)?,
                    x,
                }),
            });
        }
    }
    Ok(FusionCheck {
        controlled: true,
        witness: None,
    })
}

/// `F_x([ψ]) = [ψ^x]` as an index map on `classes`. Fails when some image
/// class is missing, i.e. `x` does not normalize the underlying group.
pub fn fx_automorphism(x: &Permutation, classes: &[CyclicClass]) -> Result<Vec<usize>> {
    let index: HashMap<&Permutation, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.representative, i))
        .collect();
    classes
        .iter()
        .map(|c| {
            let image = cyclic_class(&c.representative.conjugate(x)?)?;
            index
                .get(&image.representative)
                .copied()
                .ok_or_else(|| Error::NotInNormalizer(x.to_string()))
        })
        .collect()
}

/// Parses a group file: a `degree n` header line, then one generator per
/// line in cycle notation. Blank lines and `#` comments are skipped.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| parse_err("group file", text, "missing \"degree n\" header"))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .ok_or_else(|| parse_err("group file", header, "expected \"degree n\""))?;
    let gens = lines
        .map(|l| Permutation::parse(l, Some(degree)))
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, gens))
}

/// Parses a comma-separated generator list such as `"(1 3),(1 2 3 4)"`.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' | ';' if depth == 0 => {
                if !current.trim().is_empty() {
                    out.push(Permutation::parse(&current, Some(degree))?);
                }
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        out.push(Permutation::parse(&current, Some(degree))?);
    }
    Ok(out)
}

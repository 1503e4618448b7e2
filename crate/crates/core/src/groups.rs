//! Permutation groups small enough to list element by element: closure,
//! the automorphism, inner and transvection groups of a finite quandle,
//! structural fingerprints, reference groups and isomorphism testing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_GROUP_CAP: usize = 10080;

/// A permutation of `0..degree`. Products read left to right:
/// `p.then(q)` applies `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation((0..degree as u16).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: &[usize]) -> Option<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images.iter().map(|&i| i as u16).collect()))
    }

    /// Builds from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images).expect("cycles must be disjoint and in range")
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> usize {
        crate::quandle::cycle_type(&self.images())
            .into_iter()
            .fold(1, lcm)
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self` acting on `offset..offset + degree` inside `0..total`.
    fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u16> = (0..total as u16).collect();
        for (i, &x) in self.0.iter().enumerate() {
            images[offset + i] = offset as u16 + x;
        }
        Permutation(images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on `1..=degree`; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.apply(x);
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

/// A permutation group with its full element list.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: OnceLock<MulTable>,
    fingerprint: OnceLock<GroupFingerprint>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::assemble(self.degree, self.generators.clone(), self.elements.clone())
    }
}

/// Breadth-first closure of `gens` under composition. Elements are listed
/// in discovery order starting from the identity.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    assert!(
        gens.iter().all(|g| g.degree() == degree),
        "generators must act on {degree} points"
    );
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: HashSet<Permutation> = elements.iter().cloned().collect();
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let p = elements[i].then(g);
            if !seen.contains(&p) {
                if elements.len() >= cap {
                    return Err(Error::GroupCapExceeded { cap });
                }
                seen.insert(p.clone());
                elements.push(p);
            }
        }
        i += 1;
    }
    Ok(PermGroup::assemble(degree, gens.to_vec(), elements))
}

impl PermGroup {
    fn assemble(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> PermGroup {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            table: OnceLock::new(),
            fingerprint: OnceLock::new(),
        }
    }

    /// The group whose elements are exactly `elements`, with a small
    /// generating subset picked greedily. Fails if they do not form a group.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<PermGroup> {
        let wanted: HashSet<&Permutation> = elements.iter().collect();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut group = closure(degree, &gens, wanted.len().max(1))?;
        for p in &elements {
            if !group.contains(p) {
                gens.push(p.clone());
                group = closure(degree, &gens, wanted.len())?;
            }
        }
        if group.order() != wanted.len() || !group.elements.iter().all(|p| wanted.contains(p)) {
            return Err(Error::AxiomViolation("element set is not closed under composition".into()));
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        closure(degree, &[], 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Element-set inclusion (both groups act on the same points).
    pub fn is_subset_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn mul_table(&self) -> &MulTable {
        self.table.get_or_init(|| MulTable::from_group(self))
    }

    pub fn fingerprint(&self) -> &GroupFingerprint {
        self.fingerprint.get_or_init(|| GroupFingerprint::of(self.mul_table()))
    }
}

/// Multiplication table over element indices; `mul(i, j)` is element `i`
/// followed by element `j`.
#[derive(Clone, Debug)]
pub struct MulTable {
    n: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
}

impl MulTable {
    fn from_group(g: &PermGroup) -> MulTable {
        let n = g.order();
        let mut mul = vec![0u32; n * n];
        for (i, a) in g.elements.iter().enumerate() {
            for (j, b) in g.elements.iter().enumerate() {
                mul[i * n + j] = g.index[&a.then(b)] as u32;
            }
        }
        let identity = g.index[&Permutation::identity(g.degree)];
        let mut inverse = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] as usize == identity {
                    inverse[i] = j;
                    break;
                }
            }
        }
        MulTable {
            n,
            mul,
            identity,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn centralizer_size(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.commute(a, b)).count()
    }

    /// Subgroup generated by `seeds`, as a membership mask.
    fn generated(&self, seeds: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &s in seeds {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        inside
    }
}

/// Isomorphism invariants used to rule out matches quickly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<usize, usize>,
}

impl GroupFingerprint {
    fn of(t: &MulTable) -> GroupFingerprint {
        let n = t.n;
        let center_order = (0..n).filter(|&a| t.centralizer_size(a) == n).count();
        let mut commutators = HashSet::new();
        for a in 0..n {
            for b in 0..n {
                // a^-1 b^-1 a b
                let c = t.mul(t.mul(t.inverse[a], t.inverse[b]), t.mul(a, b));
                commutators.insert(c);
            }
        }
        let commutators: Vec<usize> = commutators.into_iter().collect();
        let derived_order = t.generated(&commutators).iter().filter(|&&x| x).count();
        let mut order_histogram = BTreeMap::new();
        for a in 0..n {
            *order_histogram.entry(t.element_order(a)).or_insert(0) += 1;
        }
        GroupFingerprint {
            order: n,
            abelian: center_order == n,
            center_order,
            derived_order,
            order_histogram,
        }
    }
}

pub fn fingerprint(g: &PermGroup) -> &GroupFingerprint {
    g.fingerprint()
}

/// Inn(Q): generated by the point symmetries.
pub fn inner_group(q: &FiniteQuandle) -> PermGroup {
    let gens = point_symmetries(q);
    closure(q.size(), &dedup(gens), usize::MAX).expect("no cap")
}

/// Trans(Q): generated by all `S_x S_y^-1`.
pub fn transvection_group(q: &FiniteQuandle) -> PermGroup {
    let sym = point_symmetries(q);
    let mut gens = Vec::new();
    for sx in &sym {
        for sy in &sym {
            let t = sx.then(&sy.inverse());
            if !t.is_identity() {
                gens.push(t);
            }
        }
    }
    closure(q.size(), &dedup(gens), usize::MAX).expect("no cap")
}

/// Aut(Q): every operation-preserving bijection, found by backtracking over
/// images of a minimal generating set.
pub fn automorphism_group(q: &FiniteQuandle) -> PermGroup {
    let mut autos = Vec::new();
    q.for_each_isomorphism(q, |phi| {
        autos.push(Permutation::from_images(phi).expect("isomorphisms are bijections"));
        true
    });
    PermGroup::from_elements(q.size(), autos).expect("automorphisms form a group")
}

fn point_symmetries(q: &FiniteQuandle) -> Vec<Permutation> {
    (0..q.size())
        .map(|x| Permutation::from_images(&q.point_symmetry(x)).expect("A2 makes S_x a bijection"))
        .collect()
}

fn dedup(mut perms: Vec<Permutation>) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    perms.retain(|p| !p.is_identity() && seen.insert(p.clone()));
    perms
}

/// Whether `g` and `h` are isomorphic as abstract groups.
pub fn group_isomorphic(g: &PermGroup, h: &PermGroup) -> bool {
    if g.fingerprint() != h.fingerprint() {
        return false;
    }
    IsoSearch::new(g.mul_table(), h.mul_table()).run()
}

/// Backtracking over images of a generating set of `g`, extending each
/// partial assignment along the Cayley graph and rejecting conflicts.
struct IsoSearch<'a> {
    g: &'a MulTable,
    h: &'a MulTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    fn new(g: &'a MulTable, h: &'a MulTable) -> IsoSearch<'a> {
        let class = |t: &MulTable, a: usize| (t.element_order(a), t.centralizer_size(a));
        let h_classes: Vec<_> = (0..h.n).map(|b| class(h, b)).collect();
        let candidates_for = |a: usize| -> Vec<usize> {
            let c = class(g, a);
            (0..h.n).filter(|&b| h_classes[b] == c).collect()
        };

        // greedy: next generator is the uncovered element with fewest candidates
        let mut gens = Vec::new();
        let mut candidates = Vec::new();
        let mut covered = g.generated(&[]);
        let per_element: Vec<Vec<usize>> = (0..g.n).map(candidates_for).collect();
        while covered.iter().any(|&c| !c) {
            let next = (0..g.n)
                .filter(|&a| !covered[a])
                .min_by_key(|&a| (per_element[a].len(), std::cmp::Reverse(g.element_order(a)), a))
                .expect("some element is uncovered");
            gens.push(next);
            candidates.push(per_element[next].clone());
            covered = g.generated(&gens);
        }
        IsoSearch { g, h, gens, candidates }
    }

    fn run(&self) -> bool {
        let mut images = Vec::with_capacity(self.gens.len());
        self.assign(&mut images)
    }

    fn assign(&self, images: &mut Vec<usize>) -> bool {
        let depth = images.len();
        if depth == self.gens.len() {
            return true;
        }
        for &b in &self.candidates[depth] {
            images.push(b);
            if self.consistent(images) && self.assign(images) {
                return true;
            }
            images.pop();
        }
        false
    }

    /// Extends `gens[k] ↦ images[k]` over the subgroup they generate;
    /// false on a clash or a non-injective map.
    fn consistent(&self, images: &[usize]) -> bool {
        let gens = &self.gens[..images.len()];
        let mut phi = vec![usize::MAX; self.g.n];
        let mut used = vec![false; self.h.n];
        phi[self.g.identity] = self.h.identity;
        used[self.h.identity] = true;
        let mut queue = vec![self.g.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (k, &s) in gens.iter().enumerate() {
                let y = self.g.mul(x, s);
                let image = self.h.mul(phi[x], images[k]);
                if phi[y] == usize::MAX {
                    if used[image] {
                        return false;
                    }
                    phi[y] = image;
                    used[image] = true;
                    queue.push(y);
                } else if phi[y] != image {
                    return false;
                }
            }
        }
        true
    }
}

/// Named groups with explicit permutation realizations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `Z_n`
    Cyclic(usize),
    /// `D_n`, the symmetries of an `n`-gon, of order `2n`
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `Z_n ⋊ Z_n^*`, the affine maps `x ↦ a x + b` on `Z_n` with `a` a unit
    Holomorph(usize),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn product(factors: impl IntoIterator<Item = GroupSpec>) -> GroupSpec {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().expect("one factor")
        } else {
            GroupSpec::Product(flat)
        }
    }

    /// Order of the group, computed from the formula for each family.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            GroupSpec::Holomorph(n) => n * totient(*n),
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::order).product(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Holomorph(n) => write!(f, "Hol(Z{n})"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `Z4`, `D5`, `S4`, `A5`, `Hol(Z10)`, and products such as `Z2 x S4`.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let unknown = || Error::UnknownGroup(s.to_string());
        let factors = s
            .split_whitespace()
            .filter(|t| *t != "x")
            .map(|t| {
                let number = |digits: &str| digits.parse::<usize>().ok().filter(|&n| n >= 1);
                if let Some(inner) = t.strip_prefix("Hol(Z").and_then(|r| r.strip_suffix(')')) {
                    return number(inner).map(GroupSpec::Holomorph);
                }
                let (head, digits) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
                let n = number(digits)?;
                match head {
                    "Z" => Some(GroupSpec::Cyclic(n)),
                    "D" => Some(GroupSpec::Dihedral(n)),
                    "S" => Some(GroupSpec::Symmetric(n)),
                    "A" => Some(GroupSpec::Alternating(n)),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(unknown)?;
        if factors.is_empty() {
            return Err(unknown());
        }
        Ok(GroupSpec::product(factors))
    }
}

/// Natural permutation realization of `spec`; direct products act on the
/// disjoint union of the factors' points.
pub fn reference_group(spec: &GroupSpec) -> Result<PermGroup> {
    let (degree, gens) = realization(spec)?;
    closure(degree, &gens, DEFAULT_GROUP_CAP)
}

fn realization(spec: &GroupSpec) -> Result<(usize, Vec<Permutation>)> {
    let cycle = |n: usize| Permutation::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()).expect("rotation");
    Ok(match *spec {
        GroupSpec::Cyclic(n) => (n, vec![cycle(n)]),
        GroupSpec::Dihedral(1) => (2, vec![cycle(2)]),
        GroupSpec::Dihedral(2) => {
            (4, vec![Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]), Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])])
        }
        GroupSpec::Dihedral(n) => {
            let reflection = Permutation::from_images(&(0..n).map(|i| (n - i) % n).collect::<Vec<_>>()).expect("reflection");
            (n, vec![cycle(n), reflection])
        }
        GroupSpec::Symmetric(n) => {
            let gens = (0..n.saturating_sub(1))
                .map(|i| Permutation::from_cycles(n, &[&[i, i + 1]]))
                .collect();
            (n, gens)
        }
        GroupSpec::Alternating(n) => {
            let gens = (0..n.saturating_sub(2))
                .map(|i| Permutation::from_cycles(n, &[&[i, i + 1, i + 2]]))
                .collect();
            (n, gens)
        }
        GroupSpec::Holomorph(n) => {
            let mut gens = vec![cycle(n)];
            for a in 2..n {
                if gcd(a, n) == 1 {
                    let images: Vec<usize> = (0..n).map(|x| a * x % n).collect();
                    gens.push(Permutation::from_images(&images).expect("units act bijectively"));
                }
            }
            (n, gens)
        }
        GroupSpec::Product(ref factors) => {
            let parts = factors.iter().map(realization).collect::<Result<Vec<_>>>()?;
            let total: usize = parts.iter().map(|(d, _)| d).sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            for (degree, factor_gens) in parts {
                gens.extend(factor_gens.iter().map(|g| g.shifted(offset, total)));
                offset += degree;
            }
            (total, gens)
        }
    })
}

/// One isomorphism class of the catalog, with every name it was added under.
#[derive(Debug)]
pub struct CatalogEntry {
    names: Vec<GroupSpec>,
    group: PermGroup,
}

impl CatalogEntry {
    /// The name it was first added under.
    pub fn name(&self) -> String {
        self.names[0].to_string()
    }

    pub fn names(&self) -> &[GroupSpec] {
        &self.names
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.names.iter().any(|n| n.to_string() == name)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
}

/// Reference groups for identification. Isomorphic additions merge into one
/// entry under several names.
#[derive(Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Catalog {
        Catalog::default()
    }

    /// The structures appearing in the automorphism-group tables for
    /// parameters up to `q_max`: cyclic, dihedral and holomorph families up
    /// to `2 q_max`, small symmetric and alternating groups, and the direct
    /// products that occur.
    pub fn for_tables(q_max: usize) -> Catalog {
        use GroupSpec::*;
        let n_max = (2 * q_max).max(16);
        let mut catalog = Catalog::new();
        let z2 = || Cyclic(2);
        for n in 1..=n_max {
            catalog.add(Cyclic(n));
        }
        catalog.add(GroupSpec::product([z2(), z2()]));
        for n in 1..=n_max {
            catalog.add(Dihedral(n));
        }
        for n in 3..=5 {
            catalog.add(Symmetric(n));
        }
        catalog.add(Alternating(4));
        catalog.add(Alternating(5));
        for n in 1..=n_max {
            catalog.add(Holomorph(n));
        }
        for spec in [
            GroupSpec::product([z2(), Alternating(4)]),
            GroupSpec::product([z2(), Symmetric(4)]),
            GroupSpec::product([z2(), Symmetric(5)]),
            GroupSpec::product([z2(), z2(), Symmetric(4)]),
        ] {
            catalog.add(spec);
        }
        for q in 3..=q_max.max(3) {
            catalog.add(GroupSpec::product([z2(), Holomorph(2 * q)]));
        }
        catalog
    }

    /// Adds `spec`, merging it into an existing entry when isomorphic.
    pub fn add(&mut self, spec: GroupSpec) {
        if self.entries.iter().any(|e| e.names.contains(&spec)) {
            return;
        }
        let group = reference_group(&spec).expect("catalog groups are small");
        if let Some(entry) = self.entries.iter_mut().find(|e| group_isomorphic(&e.group, &group)) {
            entry.names.push(spec);
            return;
        }
        self.entries.push(CatalogEntry {
            names: vec![spec],
            group,
        });
    }

    /// Adds `spec` as its own entry without merging.
    pub fn add_unmerged(&mut self, spec: GroupSpec) -> Result<()> {
        let group = reference_group(&spec)?;
        self.entries.push(CatalogEntry {
            names: vec![spec],
            group,
        });
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// The unique entry isomorphic to `g`, or `None` when unrecognized.
    pub fn identify(&self, g: &PermGroup) -> Result<Option<&CatalogEntry>> {
        let matches: Vec<&CatalogEntry> = self
            .entries
            .iter()
            .filter(|e| e.group.order() == g.order() && group_isomorphic(&e.group, g))
            .collect();
        match matches.as_slice() {
            [] => Ok(None),
            [one] => Ok(Some(one)),
            many => Err(Error::AmbiguousIdentification(many.iter().map(|e| e.name()).collect())),
        }
    }
}

/// Name of the catalog entry isomorphic to `g`, or `"unrecognized"`.
pub fn identify(g: &PermGroup, catalog: &Catalog) -> Result<String> {
    Ok(catalog
        .identify(g)?
        .map_or_else(|| "unrecognized".to_string(), CatalogEntry::name))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> PermGroup {
        reference_group(&name.parse().unwrap()).unwrap()
    }

    #[test]
    fn closure_orders() {
        let t = Permutation::from_cycles(3, &[&[0, 1]]);
        assert_eq!(closure(3, std::slice::from_ref(&t), DEFAULT_GROUP_CAP).unwrap().order(), 2);
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]);
        assert_eq!(closure(3, &[t, c], DEFAULT_GROUP_CAP).unwrap().order(), 6);
        let s5 = group("S5");
        assert!(matches!(closure(5, s5.generators(), 100), Err(Error::GroupCapExceeded { cap: 100 })));
    }

    #[test]
    fn closure_is_deterministic() {
        let a = group("Hol(Z9)");
        let b = group("Hol(Z9)");
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_cycles(4, &[&[0, 1, 2]]);
        assert_eq!(p.order(), 3);
        assert_eq!(p.to_string(), "(1 2 3)");
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::from_images(&[0, 0]).is_none());
    }

    #[test]
    fn reference_orders() {
        for (name, order, degree) in [
            ("D5", 10, 5),
            ("Hol(Z5)", 20, 5),
            ("Z2 x S4", 48, 6),
            ("Z2 x Z2 x S4", 96, 8),
            ("A5", 60, 5),
            ("D1", 2, 2),
            ("D2", 4, 4),
            ("Z1", 1, 1),
            ("Hol(Z16)", 128, 16),
        ] {
            let g = group(name);
            assert_eq!((g.order(), g.degree()), (order, degree), "{name}");
            assert_eq!(name.parse::<GroupSpec>().unwrap().order(), order);
        }
        assert!("Q8".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("Z0".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn spec_names_round_trip() {
        for name in ["Z2 x Z2", "Hol(Z10)", "Z2 x Hol(Z6)", "A4"] {
            assert_eq!(name.parse::<GroupSpec>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn fingerprints() {
        let s4 = group("S4");
        let f = s4.fingerprint();
        assert_eq!((f.order, f.center_order, f.derived_order, f.abelian), (24, 1, 12, false));
        let z2a4 = group("Z2 x A4");
        assert_eq!((z2a4.fingerprint().order, z2a4.fingerprint().center_order), (24, 2));
        let z6 = group("Z6");
        assert!(z6.fingerprint().abelian);
        assert_eq!(z6.fingerprint().derived_order, 1);
    }

    #[test]
    fn isomorphism_tests() {
        assert!(!group_isomorphic(&group("S4"), &group("Z2 x A4")));
        assert!(group_isomorphic(&group("S4"), &group("S4")));
        assert!(group_isomorphic(&group("D3"), &group("S3")));
        assert!(group_isomorphic(&group("Hol(Z6)"), &group("D6")));
        assert!(group_isomorphic(&group("Z2 x Z3"), &group("Z6")));
        assert!(!group_isomorphic(&group("Z2 x Z2"), &group("Z4")));
        assert!(group_isomorphic(&group("D6"), &group("Z2 x S3")));
        assert!(!group_isomorphic(&group("D12"), &group("Z2 x Z2 x S3")));
    }

    #[test]
    fn inner_group_of_dihedral_quandle() {
        let r7 = FiniteQuandle::dihedral(7);
        assert!(group_isomorphic(&inner_group(&r7), &group("D7")));
        assert_eq!(inner_group(&FiniteQuandle::dihedral(5)).order(), 10);
        assert_eq!(inner_group(&FiniteQuandle::trivial(1)).order(), 1);
    }

    #[test]
    fn transvections_of_trivial_quandle() {
        assert_eq!(transvection_group(&FiniteQuandle::trivial(2)).order(), 1);
    }

    #[test]
    fn dihedral_automorphisms_are_affine() {
        for q in 1..=15 {
            let r = FiniteQuandle::dihedral(q);
            let aut = automorphism_group(&r);
            assert_eq!(aut.order(), q * totient(q), "q = {q}");
            for p in aut.elements() {
                assert!((0..q).all(|x| (0..q).all(|y| p.apply(r.op(x, y)) == r.op(p.apply(x), p.apply(y)))));
            }
        }
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let t = Permutation::from_cycles(3, &[&[0, 1]]);
        let u = Permutation::from_cycles(3, &[&[1, 2]]);
        assert!(PermGroup::from_elements(3, vec![Permutation::identity(3), t, u]).is_err());
    }

    #[test]
    fn catalog_merges_aliases() {
        let catalog = Catalog::for_tables(8);
        let s3 = catalog.identify(&group("S3")).unwrap().unwrap();
        assert!(s3.has_name("D3") && s3.has_name("S3") && s3.has_name("Hol(Z3)"));
        let v4 = catalog.identify(&group("D2")).unwrap().unwrap();
        assert_eq!(v4.name(), "Z2 x Z2");
        assert_eq!(identify(&group("A4"), &catalog).unwrap(), "A4");
        assert_eq!(identify(&group("Z7 x Z7"), &catalog).unwrap(), "unrecognized");
    }

    #[test]
    fn catalog_fingerprints_separate_entries() {
        let catalog = Catalog::for_tables(8);
        let entries = catalog.entries();
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                assert_ne!(
                    a.group().fingerprint(),
                    b.group().fingerprint(),
                    "{} and {} share a fingerprint",
                    a.name(),
                    b.name()
                );
            }
        }
    }

    #[test]
    fn unmerged_duplicates_are_ambiguous() {
        let mut catalog = Catalog::new();
        catalog.add_unmerged("D3".parse().unwrap()).unwrap();
        catalog.add_unmerged("S3".parse().unwrap()).unwrap();
        assert!(matches!(catalog.identify(&group("S3")), Err(Error::AmbiguousIdentification(_))));
    }
}

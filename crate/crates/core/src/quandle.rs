//! Finite quandles as full operation tables.

use serde::Serialize;

use crate::enumerator::CayleyTable;
use crate::error::{Error, Result};
use crate::presentation::QuandlePresentation;
use crate::words::{Letter, Sign};

/// Where a quandle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub presentation: QuandlePresentation,
    /// Each element written as `base^{word}`.
    pub words: Vec<String>,
}

/// A finite quandle on `0..size` with `op[x][y] = x ▷ y` and
/// `inv_op[x][y] = x ▷⁻¹ y`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    size: usize,
    op: Vec<usize>,
    inv_op: Vec<usize>,
    provenance: Option<Provenance>,
}

impl FiniteQuandle {
    /// Builds a quandle from its `▷` table (`table[x][y] = x ▷ y`), checking
    /// all three axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteQuandle> {
        let size = table.len();
        if table.iter().any(|row| row.len() != size) {
            return Err(Error::AxiomViolation("operation table is not square".into()));
        }
        let op: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = op.iter().find(|&&v| v >= size) {
            return Err(Error::AxiomViolation(format!("entry {bad} outside 0..{size}")));
        }
        let inv_op = invert_columns(size, &op)?;
        let q = FiniteQuandle {
            size,
            op,
            inv_op,
            provenance: None,
        };
        q.check_axioms()?;
        Ok(q)
    }

    /// Operation table of the quandle whose Cayley graph is `t`. The point
    /// symmetry of `x_i^w` is the `w`-conjugate of the generator action,
    /// `y ↦ y ~w x_i w`.
    pub fn from_cayley(t: &CayleyTable) -> Result<FiniteQuandle> {
        let size = t.size();
        let mut op = vec![0; size * size];
        for e in 0..size {
            let (base, w) = t.word(e);
            let inverse = w.inverse();
            let generator = Letter {
                gen: *base,
                sign: Sign::Pos,
            };
            for y in 0..size {
                let image = t.act(t.act_letter(t.act(y, &inverse), generator), w);
                op[y * size + e] = image;
            }
        }
        let inv_op = invert_columns(size, &op)?;
        let q = FiniteQuandle {
            size,
            op,
            inv_op,
            provenance: Some(Provenance {
                presentation: t.presentation().clone(),
                words: (0..size).map(|e| t.element_name(e)).collect(),
            }),
        };
        q.check_axioms()?;
        Ok(q)
    }

    /// The dihedral quandle `R_q`: `i ▷ j = 2j - i mod q`.
    pub fn dihedral(q: usize) -> FiniteQuandle {
        assert!(q >= 1, "dihedral quandle needs q >= 1");
        let table = (0..q)
            .map(|i| (0..q).map(|j| (2 * j + q - i) % q).collect())
            .collect();
        FiniteQuandle::from_table(table).expect("dihedral quandles satisfy the axioms")
    }

    /// `m` points, every `x ▷ y = x`.
    pub fn trivial(m: usize) -> FiniteQuandle {
        let table = (0..m).map(|i| vec![i; m]).collect();
        FiniteQuandle::from_table(table).expect("trivial quandles satisfy the axioms")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y]
    }

    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_op[x * self.size + y]
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn exponent(&self) -> Option<u32> {
        self.provenance.as_ref().and_then(|p| p.presentation.exponent)
    }

    /// `S_x : y ↦ y ▷ x`.
    pub fn point_symmetry(&self, x: usize) -> Vec<usize> {
        (0..self.size).map(|y| self.op(y, x)).collect()
    }

    /// A1, A2 and A3, checked exhaustively.
    pub fn check_axioms(&self) -> Result<()> {
        let m = self.size;
        for x in 0..m {
            if self.op(x, x) != x {
                return Err(Error::AxiomViolation(format!("A1 fails: {x} ▷ {x} != {x}")));
            }
        }
        for x in 0..m {
            for y in 0..m {
                if self.inv_op(self.op(x, y), y) != x || self.op(self.inv_op(x, y), y) != x {
                    return Err(Error::AxiomViolation(format!("A2 fails at ({x}, {y})")));
                }
            }
        }
        for x in 0..m {
            for y in 0..m {
                let xy = self.op(x, y);
                for z in 0..m {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Error::AxiomViolation(format!("A3 fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_involutory(&self) -> bool {
        self.op == self.inv_op
    }

    /// Orbits of the inner automorphism group, as sorted lists in order of
    /// their smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for x in 0..self.size {
            for y in 0..self.size {
                let (a, b) = (find(&mut parent, x), find(&mut parent, self.op(x, y)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.size];
        for x in 0..self.size {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(x);
        }
        comps
    }

    /// `(x ▷ y) ▷ (z ▷ w) = (x ▷ z) ▷ (y ▷ w)` for all `x, y, z, w`.
    pub fn is_medial(&self) -> bool {
        let m = self.size;
        for x in 0..m {
            for y in 0..m {
                let xy = self.op(x, y);
                for z in 0..m {
                    let xz = self.op(x, z);
                    for w in 0..m {
                        if self.op(xy, self.op(z, w)) != self.op(xz, self.op(y, w)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Smallest subquandle containing `seeds`, as a sorted list.
    pub fn subquandle_closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        let mut members = Vec::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        self.close(&mut inside, &mut members, |_, _, _, _| {});
        members.sort_unstable();
        members
    }

    /// Extends `members` to a subquandle, reporting each new element as
    /// `(element, a, b, sign)` with `element = a ▷^sign b`.
    fn close<F>(&self, inside: &mut [bool], members: &mut Vec<usize>, mut added: F)
    where
        F: FnMut(usize, usize, usize, Sign),
    {
        // members[..done] have been combined with each other
        let mut done = 0;
        while done < members.len() {
            let a = members[done];
            done += 1;
            let mut i = 0;
            while i < done {
                let b = members[i];
                i += 1;
                for (x, y) in [(a, b), (b, a)] {
                    for sign in [Sign::Pos, Sign::Neg] {
                        let e = match sign {
                            Sign::Pos => self.op(x, y),
                            Sign::Neg => self.inv_op(x, y),
                        };
                        if !inside[e] {
                            inside[e] = true;
                            members.push(e);
                            added(e, x, y, sign);
                        }
                    }
                }
            }
        }
    }

    /// An inclusion-minimal generating set: greedy in element order, then
    /// pruned. A one-point quandle is generated by its point.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = vec![false; self.size];
        for x in 0..self.size {
            if !covered[x] {
                gens.push(x);
                for e in self.subquandle_closure(&gens) {
                    covered[e] = true;
                }
            }
        }
        let mut i = 0;
        while i < gens.len() && gens.len() > 1 {
            let without: Vec<usize> = gens.iter().copied().filter(|&g| g != gens[i]).collect();
            if self.subquandle_closure(&without).len() == self.size {
                gens = without;
            } else {
                i += 1;
            }
        }
        gens
    }

    /// Cycle type of `S_x` (sorted cycle lengths) and the size of the
    /// component of `x`; preserved by isomorphisms.
    fn profiles(&self) -> Vec<(Vec<usize>, usize)> {
        let comps = self.components();
        let mut comp_size = vec![0; self.size];
        for c in &comps {
            for &x in c {
                comp_size[x] = c.len();
            }
        }
        (0..self.size)
            .map(|x| (cycle_type(&self.point_symmetry(x)), comp_size[x]))
            .collect()
    }

    /// A bijection `φ` with `φ(x ▷ y) = φ(x) ▷ φ(y)`, if one exists.
    pub fn is_isomorphic(&self, other: &FiniteQuandle) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |phi| {
            found = Some(phi.to_vec());
            false
        });
        found
    }

    /// Calls `visit` with every isomorphism onto `other` until it returns
    /// `false`.
    pub fn for_each_isomorphism<F>(&self, other: &FiniteQuandle, mut visit: F)
    where
        F: FnMut(&[usize]) -> bool,
    {
        if self.size != other.size {
            return;
        }
        if self.size == 0 {
            visit(&[]);
            return;
        }
        let mine = self.profiles();
        let theirs = other.profiles();
        let mut sorted_mine = mine.clone();
        let mut sorted_theirs = theirs.clone();
        sorted_mine.sort();
        sorted_theirs.sort();
        if sorted_mine != sorted_theirs {
            return;
        }
        let plan = SearchPlan::new(self);
        let candidates: Vec<Vec<usize>> = plan
            .stages
            .iter()
            .map(|stage| (0..other.size).filter(|&y| theirs[y] == mine[stage.generator]).collect())
            .collect();
        let mut search = Search {
            source: self,
            target: other,
            plan: &plan,
            candidates: &candidates,
            phi: vec![usize::MAX; self.size],
            used: vec![false; other.size],
        };
        search.run(0, &mut visit);
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            size: usize,
            op: Vec<usize>,
            inv_op: Vec<usize>,
            provenance: Option<ProvenanceExport<'a>>,
        }
        #[derive(Serialize)]
        struct ProvenanceExport<'a> {
            presentation: String,
            words: &'a [String],
        }
        let export = Export {
            size: self.size,
            op: self.op.iter().map(|v| v + 1).collect(),
            inv_op: self.inv_op.iter().map(|v| v + 1).collect(),
            provenance: self.provenance.as_ref().map(|p| ProvenanceExport {
                presentation: p.presentation.to_string(),
                words: &p.words,
            }),
        };
        serde_json::to_value(export).expect("plain data serializes")
    }
}

/// Inverse of each column permutation `x ↦ x ▷ y`.
fn invert_columns(size: usize, op: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; size * size];
    for y in 0..size {
        for x in 0..size {
            let image = op[x * size + y];
            if inv[image * size + y] != usize::MAX {
                return Err(Error::AxiomViolation(format!(
                    "A2 fails: the point symmetry of {y} is not a bijection"
                )));
            }
            inv[image * size + y] = x;
        }
    }
    Ok(inv)
}

pub(crate) fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// One generator per stage; `recipe` rebuilds the elements its stage adds.
struct Stage {
    generator: usize,
    recipe: Vec<(usize, usize, usize, Sign)>,
    /// All elements generated so far, this stage included.
    members: Vec<usize>,
}

struct SearchPlan {
    stages: Vec<Stage>,
}

impl SearchPlan {
    fn new(q: &FiniteQuandle) -> SearchPlan {
        let gens = q.minimal_generating_set();
        let mut inside = vec![false; q.size];
        let mut members: Vec<usize> = Vec::new();
        let mut stages = Vec::new();
        for &g in &gens {
            let mut recipe = Vec::new();
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
            q.close(&mut inside, &mut members, |e, a, b, s| recipe.push((e, a, b, s)));
            stages.push(Stage {
                generator: g,
                recipe,
                members: members.clone(),
            });
        }
        SearchPlan { stages }
    }
}

struct Search<'a> {
    source: &'a FiniteQuandle,
    target: &'a FiniteQuandle,
    plan: &'a SearchPlan,
    candidates: &'a [Vec<usize>],
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Returns `false` once the visitor asks to stop.
    fn run<F: FnMut(&[usize]) -> bool>(&mut self, depth: usize, visit: &mut F) -> bool {
        if depth == self.plan.stages.len() {
            return visit(&self.phi);
        }
        let stage = &self.plan.stages[depth];
        for &image in &self.candidates[depth] {
            if self.used[image] {
                continue;
            }
            let mut assigned = vec![stage.generator];
            self.phi[stage.generator] = image;
            self.used[image] = true;
            let ok = self.extend(stage, &mut assigned);
            let keep_going = if ok { self.run(depth + 1, visit) } else { true };
            for x in assigned {
                self.used[self.phi[x]] = false;
                self.phi[x] = usize::MAX;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, stage: &Stage, assigned: &mut Vec<usize>) -> bool {
        for &(e, a, b, sign) in &stage.recipe {
            let (pa, pb) = (self.phi[a], self.phi[b]);
            let image = match sign {
                Sign::Pos => self.target.op(pa, pb),
                Sign::Neg => self.target.inv_op(pa, pb),
            };
            if self.used[image] {
                return false;
            }
            self.phi[e] = image;
            self.used[image] = true;
            assigned.push(e);
        }
        stage.members.iter().all(|&x| {
            stage.members.iter().all(|&y| {
                self.phi[self.source.op(x, y)] == self.target.op(self.phi[x], self.phi[y])
            })
        })
    }
}

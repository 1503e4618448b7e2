//! Winker's diagramming method: build the Cayley graph of a finitely
//! presented n-quandle by tracing relations and collapsing coincidences.
//!
//! Vertices are elements, and the edge labelled `x` from `y` leads to
//! `y ▷ x` (backwards: `y ▷⁻¹ x`). The run seeds one vertex per generator
//! with its A1 loop, traces each primary relation as a path forced to end at
//! its target, then walks the vertices in ascending order tracing every
//! n-quandle and secondary relation as a closed loop. Coincidences are merged
//! with union-find; the smaller vertex id survives.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{QuandlePresentation, UniversalRelation};
use crate::words::{GeneratorId, Letter, Sign, Word};

pub const DEFAULT_CAP: usize = 100_000;

const NONE: u32 = u32::MAX;

/// Mutable state of one enumeration run.
#[derive(Debug)]
pub struct EnumerationState {
    gens: usize,
    parent: Vec<u32>,
    /// `forward[v * gens + g]`: vertex reached from `v` along `g`.
    forward: Vec<u32>,
    backward: Vec<u32>,
    /// How each vertex was first reached, `None` for the seeds.
    origin: Vec<Option<(u32, Letter)>>,
    pending: VecDeque<(u32, u32)>,
    live: usize,
    merged: usize,
}

impl EnumerationState {
    /// Seed vertices `0..gens`, each with its A1 loop.
    pub fn new(gens: usize) -> EnumerationState {
        let mut state = EnumerationState {
            gens,
            parent: Vec::new(),
            forward: Vec::new(),
            backward: Vec::new(),
            origin: Vec::new(),
            pending: VecDeque::new(),
            live: 0,
            merged: 0,
        };
        for g in 0..gens {
            let v = state.add_vertex(None);
            state.define(v, Letter::pos(g), v);
        }
        state
    }

    /// Vertices ever created, including merged ones.
    pub fn created(&self) -> usize {
        self.parent.len()
    }

    pub fn live(&self) -> usize {
        self.live
    }

    pub fn merged(&self) -> usize {
        self.merged
    }

    fn add_vertex(&mut self, origin: Option<(u32, Letter)>) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.forward.extend(std::iter::repeat_n(NONE, self.gens));
        self.backward.extend(std::iter::repeat_n(NONE, self.gens));
        self.origin.push(origin);
        self.live += 1;
        id
    }

    pub fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let grand = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grand;
            v = grand;
        }
        v
    }

    fn slot(&self, v: u32, g: GeneratorId) -> usize {
        v as usize * self.gens + g.0
    }

    /// Target of the edge from `v` along `l`, if known (canonical).
    pub fn edge(&mut self, v: u32, l: Letter) -> Option<u32> {
        let slot = self.slot(v, l.gen);
        let raw = match l.sign {
            Sign::Pos => self.forward[slot],
            Sign::Neg => self.backward[slot],
        };
        (raw != NONE).then(|| self.find(raw))
    }

    /// Installs `from --l--> to` and its reverse, queueing a coincidence
    /// wherever a different edge with the same label is already present.
    fn define(&mut self, from: u32, l: Letter, to: u32) {
        let from_slot = self.slot(from, l.gen);
        let to_slot = self.slot(to, l.gen);
        let (out_table, in_table) = match l.sign {
            Sign::Pos => (&mut self.forward, &mut self.backward),
            Sign::Neg => (&mut self.backward, &mut self.forward),
        };
        let existing_out = out_table[from_slot];
        let existing_in = in_table[to_slot];
        if existing_out == NONE {
            out_table[from_slot] = to;
        } else {
            self.pending.push_back((existing_out, to));
        }
        if existing_in == NONE {
            in_table[to_slot] = from;
        } else {
            self.pending.push_back((existing_in, from));
        }
    }

    /// Walks `word` from `start`, creating vertices for missing edges. With a
    /// forced end the last letter is attached to it instead of a new vertex,
    /// and a differing endpoint is queued as a coincidence. Returns the end.
    pub fn trace(&mut self, start: u32, word: &Word, forced_end: Option<u32>) -> u32 {
        let mut cur = self.find(start);
        let letters = word.letters();
        for (i, &l) in letters.iter().enumerate() {
            let last = i + 1 == letters.len();
            cur = match self.edge(cur, l) {
                Some(next) => next,
                None => match forced_end {
                    Some(end) if last => {
                        let end = self.find(end);
                        self.define(cur, l, end);
                        end
                    }
                    _ => {
                        let v = self.add_vertex(Some((cur, l)));
                        self.define(cur, l, v);
                        v
                    }
                },
            };
        }
        if let Some(end) = forced_end {
            let end = self.find(end);
            if cur != end {
                self.pending.push_back((cur, end));
            }
        }
        cur
    }

    pub fn coincide(&mut self, u: u32, v: u32) {
        self.pending.push_back((u, v));
    }

    /// Processes queued coincidences until none remain.
    pub fn collapse(&mut self) {
        while let Some((u, v)) = self.pending.pop_front() {
            let (u, v) = (self.find(u), self.find(v));
            if u == v {
                continue;
            }
            let (keep, gone) = if u < v { (u, v) } else { (v, u) };
            self.parent[gone as usize] = keep;
            self.live -= 1;
            self.merged += 1;
            for g in 0..self.gens {
                let (ks, gs) = (keep as usize * self.gens + g, gone as usize * self.gens + g);
                for table in [&mut self.forward, &mut self.backward] {
                    let moved = table[gs];
                    if moved == NONE {
                        continue;
                    }
                    if table[ks] == NONE {
                        table[ks] = moved;
                    } else {
                        self.pending.push_back((table[ks], moved));
                    }
                }
            }
        }
    }

    fn is_complete(&mut self, v: u32) -> bool {
        (0..self.gens).all(|g| {
            let s = v as usize * self.gens + g;
            self.forward[s] != NONE && self.backward[s] != NONE
        })
    }

    /// Adds vertices for any missing edge at `v`.
    fn fill(&mut self, v: u32) {
        for g in 0..self.gens {
            for l in [Letter::pos(g), Letter::neg(g)] {
                let v = self.find(v);
                if self.edge(v, l).is_none() {
                    let w = self.add_vertex(Some((v, l)));
                    self.define(v, l, w);
                    self.collapse();
                }
            }
        }
    }
}

fn check_cap(state: &EnumerationState, cap: usize) -> Result<()> {
    if state.created() > cap {
        Err(Error::CapExceeded {
            created: state.created(),
            live: state.live(),
        })
    } else {
        Ok(())
    }
}

/// Enumerates the quandle presented by `p`, failing with
/// [`Error::CapExceeded`] once more than `cap` vertices have been created.
pub fn enumerate(p: &QuandlePresentation, cap: usize) -> Result<CayleyTable> {
    let universal = p.universal_relations();
    enumerate_with(p, &universal, cap)
}

/// Like [`enumerate`] but tracing the given universal relations at each
/// vertex instead of the ones derived from `p`.
pub fn enumerate_with(
    p: &QuandlePresentation,
    universal: &[UniversalRelation],
    cap: usize,
) -> Result<CayleyTable> {
    p.check()?;
    let gens = p.generator_count();
    let mut state = EnumerationState::new(gens);

    for rel in &p.relations {
        state.trace(rel.base.0 as u32, &rel.exponent, Some(rel.target.0 as u32));
        state.collapse();
        check_cap(&state, cap)?;
    }

    let mut cursor: u32 = 0;
    while (cursor as usize) < state.created() {
        if state.find(cursor) == cursor {
            for rel in universal {
                state.trace(cursor, rel.word(), Some(cursor));
                state.collapse();
                check_cap(&state, cap)?;
                if state.find(cursor) != cursor {
                    break;
                }
            }
            if state.find(cursor) == cursor && !state.is_complete(cursor) {
                state.fill(cursor);
                check_cap(&state, cap)?;
            }
        }
        cursor += 1;
    }

    CayleyTable::from_state(p.clone(), &mut state)
}

/// The finished Cayley graph: generator actions on elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    size: usize,
    /// `actions[g][y] = y ▷ g`.
    actions: Vec<Vec<usize>>,
    /// Element carrying each generator.
    generator_elements: Vec<usize>,
    /// Every element as `base^word`.
    words: Vec<(GeneratorId, Word)>,
    presentation: QuandlePresentation,
}

impl CayleyTable {
    fn from_state(presentation: QuandlePresentation, state: &mut EnumerationState) -> Result<CayleyTable> {
        let gens = state.gens;
        let mut index: HashMap<u32, usize> = HashMap::new();
        let mut survivors = Vec::new();
        for v in 0..state.created() as u32 {
            if state.find(v) == v {
                index.insert(v, survivors.len());
                survivors.push(v);
            }
        }
        let size = survivors.len();

        let mut actions = vec![vec![0; size]; gens];
        for (i, &v) in survivors.iter().enumerate() {
            for (g, action) in actions.iter_mut().enumerate() {
                let image = state
                    .edge(v, Letter::pos(g))
                    .ok_or_else(|| Error::AxiomViolation(format!("vertex {v} lacks an edge for generator {g}")))?;
                action[i] = index[&image];
            }
        }

        // representative words: parent's word plus the creating letter
        let mut words: Vec<Option<(GeneratorId, Word)>> = vec![None; state.created()];
        for v in 0..state.created() as u32 {
            let w = match state.origin[v as usize] {
                None => (GeneratorId(v as usize), Word::empty()),
                Some((parent, letter)) => {
                    let p = state.find(parent) as usize;
                    let (base, w) = words[p].clone().expect("parents precede children");
                    (base, w.push(letter))
                }
            };
            words[v as usize] = Some(w);
        }
        let words = survivors
            .iter()
            .map(|&v| words[v as usize].clone().expect("every vertex has a word"))
            .collect();

        let generator_elements = (0..gens as u32).map(|g| index[&state.find(g)]).collect();
        Ok(CayleyTable {
            size,
            actions,
            generator_elements,
            words,
            presentation,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator_count(&self) -> usize {
        self.actions.len()
    }

    pub fn action(&self, g: GeneratorId) -> &[usize] {
        &self.actions[g.0]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn generator_element(&self, g: GeneratorId) -> usize {
        self.generator_elements[g.0]
    }

    pub fn word(&self, element: usize) -> &(GeneratorId, Word) {
        &self.words[element]
    }

    pub fn presentation(&self) -> &QuandlePresentation {
        &self.presentation
    }

    /// Image of `y` under the letters of `w` applied left to right.
    pub fn act(&self, y: usize, w: &Word) -> usize {
        w.letters().iter().fold(y, |y, l| self.act_letter(y, *l))
    }

    pub fn act_letter(&self, y: usize, l: Letter) -> usize {
        let action = &self.actions[l.gen.0];
        match l.sign {
            Sign::Pos => action[y],
            // inverse: walk the cycle backwards
            Sign::Neg => {
                let mut x = y;
                loop {
                    let next = action[x];
                    if next == y {
                        return x;
                    }
                    x = next;
                }
            }
        }
    }

    /// Connected components of the graph, as sorted element lists.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.size];
        let mut comps = Vec::new();
        for start in 0..self.size {
            if label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                i += 1;
                for action in &self.actions {
                    let z = action[y];
                    if label[z] == usize::MAX {
                        label[z] = id;
                        members.push(z);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        // backward edges connect the same cycles, so forward reach is enough
        comps
    }

    /// `base^word` using the presentation's generator names.
    pub fn element_name(&self, element: usize) -> String {
        let names = &self.presentation.generators;
        let (base, w) = &self.words[element];
        if w.is_empty() {
            names[base.0].clone()
        } else {
            format!("{}^{{{}}}", names[base.0], w.display(names))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            elements: usize,
            generators: &'a [String],
            actions: BTreeMap<&'a str, Vec<usize>>,
            words: Vec<String>,
            presentation: String,
        }
        let names = &self.presentation.generators;
        let actions = names
            .iter()
            .zip(&self.actions)
            .map(|(name, action)| (name.as_str(), action.iter().map(|&y| y + 1).collect()))
            .collect();
        let export = Export {
            elements: self.size,
            generators: names,
            actions,
            words: (0..self.size).map(|e| self.element_name(e)).collect(),
            presentation: self.presentation.to_string(),
        };
        serde_json::to_value(export).expect("plain data serializes")
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, options: &DotOptions) -> String {
        let involutory = self.presentation.exponent == Some(2);
        let (kind, arrow) = if involutory { ("graph", "--") } else { ("digraph", "->") };
        let mut out = String::new();
        let _ = writeln!(out, "{kind} cayley {{");
        let _ = writeln!(out, "  node [shape=circle];");
        for e in 0..self.size {
            let _ = writeln!(out, "  {} [label=\"{}\"];", e + 1, self.element_name(e));
        }
        for (g, action) in self.actions.iter().enumerate() {
            let style = edge_style(g);
            let own = self.generator_elements[g];
            for (y, &z) in action.iter().enumerate() {
                if y == z && y == own && !options.show_axiom_loops {
                    continue;
                }
                if involutory && z < y {
                    continue;
                }
                let _ = writeln!(out, "  {} {arrow} {} [{style}];", y + 1, z + 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Draw the loop of each generator at its own vertex.
    pub show_axiom_loops: bool,
}

/// solid, dashed, dotted, then colours.
fn edge_style(g: usize) -> String {
    const STYLES: [&str; 3] = ["solid", "dashed", "dotted"];
    const COLORS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];
    if g < STYLES.len() {
        format!("style={}", STYLES[g])
    } else {
        format!("style=solid, color={}", COLORS[(g - STYLES.len()) % COLORS.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::{torus, torus_with_axis, two_bridge, Orientation};
    use crate::presentation::parse_presentation;

    fn figure_eight() -> QuandlePresentation {
        parse_presentation("gens a b\nn 2\nrel a : b a b a = b").unwrap()
    }

    #[test]
    fn figure_eight_has_five_elements() {
        let t = enumerate(&figure_eight(), DEFAULT_CAP).unwrap();
        assert_eq!(t.size(), 5);
        assert_eq!(t.connected_components().len(), 1);
    }

    #[test]
    fn unknot_is_a_point() {
        let p = parse_presentation("gens a\nn 2").unwrap();
        let t = enumerate(&p, DEFAULT_CAP).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.action(GeneratorId(0)), &[0]);
    }

    #[test]
    fn two_bridge_even_splits_in_two() {
        let t = enumerate(&two_bridge(1, 8, Some(2)).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(t.size(), 8);
        let sizes: Vec<_> = t.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, [4, 4]);
    }

    #[test]
    fn trefoil_six_quandle_is_infinite() {
        let p = torus(2, 3, &Orientation::forward(1), Some(6)).unwrap();
        assert!(matches!(enumerate(&p, DEFAULT_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn trace_primary_creates_interior_path() {
        let p = figure_eight();
        let mut state = EnumerationState::new(2);
        let rel = &p.relations[0];
        let end = state.trace(0, &rel.exponent, Some(1));
        assert_eq!(end, 1);
        assert_eq!(state.created(), 5);
        // retracing the same path creates nothing
        state.trace(0, &rel.exponent, Some(1));
        assert_eq!(state.created(), 5);
        assert!(state.pending.is_empty());
    }

    #[test]
    fn trace_involution_closes_without_growth() {
        let mut state = EnumerationState::new(2);
        // vertex 0 --b--> new vertex 2
        state.trace(0, &Word::positive(&[1]), None);
        assert_eq!(state.created(), 3);
        state.trace(0, &Word::positive(&[1, 1]), Some(0));
        state.collapse();
        assert_eq!(state.created(), 3);
        assert_eq!(state.edge(2, Letter::pos(1)), Some(0));
        assert_eq!(state.edge(0, Letter::neg(1)), Some(2));
    }

    #[test]
    fn collapse_cascades_through_shared_labels() {
        let mut state = EnumerationState::new(1);
        let v: Vec<u32> = (0..6).map(|_| state.add_vertex(None)).collect();
        // v1 --a--> v2, v3 --a--> v4
        state.define(v[1], Letter::pos(0), v[2]);
        state.define(v[3], Letter::pos(0), v[4]);
        state.coincide(v[1], v[3]);
        state.collapse();
        assert_eq!(state.find(v[3]), v[1]);
        assert_eq!(state.find(v[4]), v[2]);
        assert_eq!(state.merged(), 2);

        // disjoint edges: no cascade
        state.coincide(v[0], v[5]);
        state.collapse();
        assert_eq!(state.merged(), 3);

        state.collapse();
        assert_eq!(state.merged(), 3);
    }

    #[test]
    fn relation_order_does_not_change_result() {
        let p = torus_with_axis(5).unwrap();
        let mut rels = p.universal_relations();
        let forward = enumerate_with(&p, &rels, DEFAULT_CAP).unwrap();
        rels.reverse();
        let backward = enumerate_with(&p, &rels, DEFAULT_CAP).unwrap();
        assert_eq!(forward.size(), 12);
        assert_eq!(backward.size(), 12);
    }

    #[test]
    fn deterministic_output() {
        let p = torus(3, 4, &Orientation::forward(1), Some(2)).unwrap();
        let a = enumerate(&p, DEFAULT_CAP).unwrap();
        let b = enumerate(&p, DEFAULT_CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn dot_for_single_point_has_no_edges() {
        let p = parse_presentation("gens a\nn 2").unwrap();
        let dot = enumerate(&p, DEFAULT_CAP).unwrap().to_dot(&DotOptions::default());
        assert!(!dot.contains("--"));
        assert!(dot.contains("1 [label=\"a\"]"));
    }

    #[test]
    fn dot_for_l13_draws_triangle_edges() {
        let t = enumerate(&two_bridge(1, 3, Some(2)).unwrap(), DEFAULT_CAP).unwrap();
        let dot = t.to_dot(&DotOptions::default());
        assert!(dot.starts_with("graph"));
        assert_eq!(dot.matches("[label=").count(), 3);
        let solid = dot.matches("style=solid").count();
        let dashed = dot.matches("style=dashed").count();
        // each generator swaps the two other points
        assert_eq!((solid, dashed), (1, 1));
    }

    #[test]
    fn json_lists_one_based_actions() {
        let t = enumerate(&figure_eight(), DEFAULT_CAP).unwrap();
        let json = t.to_json();
        assert_eq!(json["elements"], 5);
        let a = json["actions"]["a"].as_array().unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0], 1);
        assert_eq!(json["words"][0], "a");
    }
}

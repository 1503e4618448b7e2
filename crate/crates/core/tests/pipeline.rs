use knotq::enumerator::{enumerate_with, DotOptions};
use knotq::links::{braid_closure_with_axis, torus, torus_with_axis, two_bridge, BraidWord, Orientation};
use knotq::presentation::{n_relations, UniversalRelation};
use knotq::words::{cyclic_reduce, normalize_mod_n, Letter, Word};
use knotq::{enumerate, parse_presentation, CayleyTable, FiniteQuandle, QuandlePresentation, DEFAULT_CAP};

fn links() -> Vec<QuandlePresentation> {
    vec![
        two_bridge(3, 5, Some(2)).unwrap(),
        two_bridge(5, 12, Some(2)).unwrap(),
        torus(2, 3, &Orientation::forward(1), Some(5)).unwrap(),
        torus(2, 4, &"+-".parse().unwrap(), Some(3)).unwrap(),
        torus(3, 4, &Orientation::forward(1), Some(2)).unwrap(),
        torus_with_axis(5).unwrap(),
        braid_closure_with_axis(&BraidWord::torus(3, 2).unwrap(), Some(2)).unwrap(),
    ]
}

fn same(a: &CayleyTable, b: &CayleyTable) -> bool {
    a.size() == b.size() && a.actions() == b.actions()
}

/// Secondary relations one per primary relation, each word passed
/// through `shape`.
fn universal_with(p: &QuandlePresentation, shape: impl Fn(Word) -> Word) -> Vec<UniversalRelation> {
    let mut all = n_relations(p).unwrap();
    for r in &p.relations {
        let w = r.exponent.inverse().push(Letter::pos(r.base.0)).concat(&r.exponent).push(Letter::neg(r.target.0));
        all.extend(UniversalRelation::new(shape(w)));
    }
    all
}

#[test]
fn cyclic_reduction_does_not_change_tables() {
    for p in links() {
        let raw = enumerate_with(&p, &universal_with(&p, |w| w), DEFAULT_CAP).unwrap();
        let cyclic = enumerate_with(&p, &universal_with(&p, |w| cyclic_reduce(&w)), DEFAULT_CAP).unwrap();
        assert!(same(&raw, &cyclic));
        assert_eq!(raw.size(), enumerate(&p, DEFAULT_CAP).unwrap().size());
    }
}

#[test]
fn exponent_normalization_does_not_change_tables() {
    for p in links().into_iter().filter(|p| p.exponent == Some(2)) {
        let cyclic = enumerate_with(&p, &universal_with(&p, |w| cyclic_reduce(&w)), DEFAULT_CAP).unwrap();
        let normal = enumerate_with(&p, &universal_with(&p, |w| normalize_mod_n(&cyclic_reduce(&w), 2)), DEFAULT_CAP)
            .unwrap();
        assert!(same(&cyclic, &normal));
    }
}

#[test]
fn deduplicated_relations_give_isomorphic_quandles() {
    // dropping a rotated duplicate can renumber vertices, nothing more
    for p in links() {
        let raw = enumerate_with(&p, &universal_with(&p, |w| w), DEFAULT_CAP).unwrap();
        let std = enumerate(&p, DEFAULT_CAP).unwrap();
        let a = FiniteQuandle::from_cayley(&raw).unwrap();
        let b = FiniteQuandle::from_cayley(&std).unwrap();
        assert!(a.is_isomorphic(&b).is_some());
    }
}

#[test]
fn secondary_order_does_not_change_size() {
    for p in links() {
        let base = enumerate(&p, DEFAULT_CAP).unwrap().size();
        let universal = p.universal_relations();
        for k in 0..universal.len() {
            let mut rotated = universal.clone();
            rotated.rotate_left(k);
            assert_eq!(enumerate_with(&p, &rotated, DEFAULT_CAP).unwrap().size(), base);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for p in links() {
        let a = enumerate(&p, DEFAULT_CAP).unwrap();
        let b = enumerate(&p, DEFAULT_CAP).unwrap();
        assert!(same(&a, &b));
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_dot(&DotOptions::default()), b.to_dot(&DotOptions::default()));
    }
}

#[test]
fn text_format_round_trip_gives_same_table() {
    for p in links() {
        let reparsed = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(reparsed, p);
        assert!(same(&enumerate(&p, DEFAULT_CAP).unwrap(), &enumerate(&reparsed, DEFAULT_CAP).unwrap()));
    }
}

#[test]
fn representative_words_reach_their_elements() {
    for p in links() {
        let t = enumerate(&p, DEFAULT_CAP).unwrap();
        for e in 0..t.size() {
            let (base, w) = t.word(e);
            assert_eq!(t.act(t.generator_element(*base), w), e);
        }
    }
}

//! Small worked instances with known answers, one test per routine.

mod common;

use ltdkit::construct::{
    construct_auto, construct_block, construct_cobipartite, construct_outerplanar, construct_split,
    construct_subcubic, smallbridge_construct, Theorem,
};
use ltdkit::families::{self, enumerate_connected, random_instance, EnumFilter, RandomModel};
use ltdkit::ltd::{exact_min_ltd, exact_min_td, is_ltd_set, is_td_set, location_profile};
use ltdkit::recognize::{
    ham_cycle_outerplanar, is_outerplanar, leg_decomposition, recognize_block_graph, recognize_cobipartite,
    recognize_split, recognize_subcubic, ClassWitness, GraphClass,
};
use ltdkit::structure::{block_cut_tree, bridges, connected_components, is_twin_free, twin_report, TwinKind};
use ltdkit::{Graph, LtdError, VertexSet};

use common::{adjacency, naive_min_ltd};

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

fn set<const N: usize>(vs: [usize; N]) -> VertexSet {
    VertexSet::from(vs)
}

fn exact(g: &Graph) -> usize {
    let r = exact_min_ltd(g, None).unwrap();
    assert!(r.optimality_checked);
    r.value
}

#[test]
fn degrees_and_components() {
    assert_eq!(families::complete(4).degree(2).unwrap(), 3);
    assert_eq!(families::path(3).degree(1).unwrap(), 2);
    assert_eq!(Graph::empty(1).degree(0).unwrap(), 0);
    assert!(matches!(families::path(3).degree(3), Err(LtdError::VertexOutOfRange { .. })));

    let k3_k2 = families::complete(3).disjoint_union(&families::complete(2));
    assert_eq!(connected_components(&k3_k2), vec![set([0, 1, 2]), set([3, 4])]);
    assert!(connected_components(&Graph::empty(0)).is_empty());
    assert_eq!(connected_components(&families::cycle(6)), vec![(0..6).collect::<VertexSet>()]);
}

#[test]
fn bridges_and_blocks() {
    assert_eq!(bridges(&families::path(4)).len(), 3);
    assert!(bridges(&families::cycle(5)).is_empty());
    let paw = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
    assert_eq!(bridges(&paw), vec![(2, 3)]);

    let bowtie = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
    let bct = block_cut_tree(&bowtie);
    assert_eq!(bct.blocks.len(), 2);
    assert_eq!(bct.cut_vertices, set([2]));
    let bct = block_cut_tree(&families::path(5));
    assert_eq!((bct.blocks.len(), bct.cut_vertices.len()), (4, 3));
}

#[test]
fn twins_and_isolates() {
    let report = twin_report(&families::complete(2));
    assert_eq!(report.classes.len(), 1);
    assert_eq!((report.classes[0].kind, &report.classes[0].vertices), (TwinKind::Closed, &set([0, 1])));
    let report = twin_report(&families::star(3));
    assert_eq!(report.classes.len(), 1);
    assert_eq!((report.classes[0].kind, &report.classes[0].vertices), (TwinKind::Open, &set([1, 2, 3])));
    assert!(is_twin_free(&families::cycle(6)));

    assert!(families::cycle(6).is_isolate_free());
    assert!(!Graph::empty(1).is_isolate_free());
    assert!(!families::complete(2).disjoint_union(&Graph::empty(1)).is_isolate_free());
}

#[test]
fn class_recognizers() {
    let k3 = families::complete(3);
    assert!(recognize_cobipartite(&k3).is_some() || recognize_split(&k3).is_some());
    assert!(recognize_cobipartite(&families::cycle(5)).is_none());
    let half = families::half_graph_complement(3).unwrap();
    match recognize_cobipartite(&half) {
        Some(ClassWitness::Cobipartite { c1, c2 }) => assert_eq!((c1.len(), c2.len()), (3, 3)),
        other => panic!("{other:?}"),
    }

    let star = families::star(3);
    let w = recognize_split(&star).unwrap();
    w.validate(&star).unwrap();
    assert!(recognize_split(&families::cycle(4)).is_none());
    match recognize_split(&families::split_tight(3).unwrap()) {
        Some(ClassWitness::Split { q, s }) => assert_eq!((q.len(), s.len()), (6, 3)),
        other => panic!("{other:?}"),
    }

    assert!(recognize_block_graph(&families::path(7)));
    assert!(!recognize_block_graph(&families::cycle(4)));

    let corona = families::two_corona(&families::cycle(6)).unwrap();
    assert!(recognize_subcubic(&corona));
    assert!(!recognize_subcubic(&families::complete(5)));
    assert!(recognize_subcubic(&Graph::empty(0)));
    assert!(is_outerplanar(&families::cycle(11)));
}

#[test]
fn boundary_cycles_and_legs() {
    assert_eq!(ham_cycle_outerplanar(&families::cycle(5)).unwrap().order, vec![0, 1, 2, 3, 4]);
    let c4_chord = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]);
    assert_eq!(ham_cycle_outerplanar(&c4_chord).unwrap().order, vec![0, 1, 2, 3]);

    let corona = families::two_corona(&families::cycle(6)).unwrap();
    let legs = leg_decomposition(&corona).unwrap();
    assert_eq!(legs.legs.len(), 6);
    assert!(legs.legs.iter().all(|l| l.len() == 3));
    assert_eq!(legs.core, (0..6).collect());
    let c5 = leg_decomposition(&families::cycle(5)).unwrap();
    assert!(c5.legs.is_empty());
}

#[test]
fn leg_rules_by_length() {
    // C8 with legs of length 1 at 0, 2 at 3 and 3 at 6.
    let mut edges = families::cycle(8).edges();
    edges.extend([(0, 8), (3, 9), (9, 10), (6, 11), (11, 12), (12, 13)]);
    let g = graph(14, &edges);
    let ld = leg_decomposition(&g).unwrap();
    let cert = smallbridge_construct(&g, &ld).unwrap();
    assert!(cert.verified);
    let s = &cert.set;
    assert!(s.contains(0) && !s.contains(8));
    assert!(s.contains(3) && s.contains(9) && !s.contains(10));
    assert!(s.contains(11) && s.contains(12) && !s.contains(13));
}

#[test]
fn membership_examples() {
    let c6 = families::cycle(6);
    assert!(is_td_set(&c6, &set([0, 1, 3, 4])));
    assert!(!is_td_set(&families::complete(2), &set([0])));
    assert!(is_td_set(&c6, &(0..6).collect()));
    assert!(!is_td_set(&Graph::empty(1), &set([0])));

    assert!(is_ltd_set(&families::path(3), &set([0, 1])));
    assert!(!is_ltd_set(&families::star(3), &set([0, 1])));
    assert!(is_ltd_set(&c6, &set([0, 1, 2, 3])));

    let profile = location_profile(&families::path(3), &set([0, 1])).profiles;
    assert_eq!(profile.into_iter().collect::<Vec<_>>(), vec![(2, set([1]))]);
    let profile = location_profile(&families::cycle(4), &set([0, 1])).profiles;
    assert_eq!(profile.into_iter().collect::<Vec<_>>(), vec![(2, set([1])), (3, set([0]))]);
    assert!(location_profile(&c6, &(0..6).collect()).profiles.is_empty());
}

#[test]
fn exact_values() {
    assert_eq!(exact(&families::complete(4)), 3);
    assert_eq!(exact(&families::cycle(6)), 4);
    let p4 = exact_min_ltd(&families::path(4), None).unwrap();
    assert_eq!((p4.value, p4.witness), (2, set([1, 2])));
    assert_eq!(exact(&families::split_tight(3).unwrap()), 5);

    assert_eq!(exact_min_td(&families::cycle(6)).unwrap().value, 4);
    for n in 2..=7 {
        assert_eq!(exact_min_td(&families::complete(n)).unwrap().value, 2);
    }
    for h in [families::path(2), families::path(3), families::cycle(4), families::star(3)] {
        let k = h.order();
        assert_eq!(exact_min_td(&families::two_corona(&h).unwrap()).unwrap().value, 2 * k);
    }
}

#[test]
fn cobipartite_construction() {
    let half = families::half_graph_complement(2).unwrap();
    let cert = construct_cobipartite(&half, &recognize_cobipartite(&half).unwrap()).unwrap();
    assert_eq!(cert.set.len(), 2);
    assert_eq!(exact(&half), 2);

    let k4 = families::complete(4);
    let w = recognize_cobipartite(&k4).unwrap();
    assert!(matches!(construct_cobipartite(&k4, &w), Err(LtdError::HasTwins(..))));
}

#[test]
fn split_construction() {
    let g3 = families::split_tight(3).unwrap();
    let cert = construct_split(&g3, &recognize_split(&g3).unwrap()).unwrap();
    assert_eq!(cert.set.len(), 5);
    assert!(is_ltd_set(&g3, &cert.set));

    let g5 = families::split_tight(5).unwrap();
    let cert = construct_split(&g5, &recognize_split(&g5).unwrap()).unwrap();
    assert!(cert.verified && cert.set.len() <= 9);
    assert_eq!(exact(&g5), 9);

    let p3 = families::path(3);
    let err = construct_split(&p3, &recognize_split(&p3).unwrap()).unwrap_err();
    assert!(matches!(err, LtdError::Hypothesis(_)), "{err:?}");
}

#[test]
fn block_construction() {
    assert_eq!(construct_block(&families::path(3)).unwrap().set, set([0, 1]));
    let corona = families::two_corona(&families::complete(6)).unwrap();
    let cert = construct_block(&corona).unwrap();
    assert!(cert.verified && cert.set.len() <= 12);
    assert_eq!(exact(&corona), 12);
}

#[test]
fn subcubic_construction() {
    assert_eq!(construct_subcubic(&families::complete(3)).unwrap().set.len(), 2);
    let diamond = graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    let cert = construct_subcubic(&diamond).unwrap();
    assert_eq!(cert.set.len(), 2);
    let degrees: Vec<usize> = cert.set.iter().map(|v| diamond.deg(v)).collect();
    assert!(degrees.contains(&2) && degrees.contains(&3));

    let corona = families::two_corona(&families::cycle(6)).unwrap();
    assert!(construct_subcubic(&corona).unwrap().set.len() <= 12);
    assert_eq!(exact(&corona), 12);
    assert_eq!(construct_subcubic(&families::cycle(5)).unwrap().set.len(), 3);
    assert!(matches!(construct_subcubic(&families::complete(4)), Err(LtdError::ExcludedFamily(_))));
}

#[test]
fn outerplanar_construction() {
    let c7 = families::cycle(7);
    assert!(construct_outerplanar(&c7).unwrap().set.len() <= 4);
    assert_eq!(exact(&c7), 4);

    let c9 = families::cycle(9);
    let cert = construct_outerplanar(&c9).unwrap();
    assert_eq!(cert.set.len(), 6);
    assert!(is_ltd_set(&c9, &cert.set));
    assert_eq!(naive_min_ltd(&adjacency(&c9)), Some(exact(&c9)));
    assert_eq!(exact(&c9), 5);
}

#[test]
fn automatic_dispatch() {
    let cert = construct_auto(&families::cycle(6)).unwrap();
    assert_eq!((cert.theorem, cert.set.len()), (Theorem::Outerplanar, 4));
    let cert = construct_auto(&families::complete(4)).unwrap();
    assert_eq!((cert.theorem, cert.set.len()), (Theorem::Exact, 3));
    let g = random_instance(&RandomModel::new(GraphClass::Split, 30, 1)).unwrap();
    let cert = construct_auto(&g).unwrap();
    assert!(cert.verified && cert.set.len() < 20);
    assert!(matches!(cert.theorem, Theorem::Split | Theorem::Block));
}

#[test]
fn named_families() {
    assert_eq!(families::two_corona(&families::complete(6)).unwrap().order(), 18);
    assert_eq!(families::two_corona(&families::cycle(6)).unwrap().order(), 18);
    assert!(families::two_corona(&Graph::empty(1)).unwrap() == families::path(3));
    let g4 = families::split_tight(4).unwrap();
    assert_eq!(g4.order(), 12);
    assert_eq!(exact(&g4), 7);
    assert_eq!(exact(&families::half_graph_complement(3).unwrap()), 3);
}

#[test]
fn random_instances_meet_their_postconditions() {
    let g = random_instance(&RandomModel::new(GraphClass::Split, 30, 1)).unwrap();
    assert!(recognize_split(&g).is_some() && twin_report(&g).is_twin_free());
    let g = random_instance(&RandomModel::new(GraphClass::Outerplanar, 25, 7)).unwrap();
    assert!(is_outerplanar(&g));
    let g = random_instance(&RandomModel::new(GraphClass::Subcubic, 40, 3)).unwrap();
    assert!(g.max_degree() <= 3);
    let again = random_instance(&RandomModel::new(GraphClass::Subcubic, 40, 3)).unwrap();
    assert!(g == again);
}

#[test]
fn enumeration() {
    let counts: Vec<usize> =
        (1..=7).map(|n| enumerate_connected(n, &EnumFilter::default()).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);

    let twin_free = EnumFilter { twin_free: true, classes: Vec::new() };
    let has_shape = |list: &[Graph], degrees: &[usize]| {
        list.iter().any(|g| {
            let mut d = g.degrees();
            d.sort_unstable();
            d == degrees
        })
    };
    let four_graphs = enumerate_connected(4, &twin_free).unwrap();
    assert!(has_shape(&four_graphs, &[1, 1, 2, 2]));
    assert!(!has_shape(&four_graphs, &[1, 1, 1, 3]));

    let six = enumerate_connected(6, &EnumFilter { twin_free: true, classes: vec![GraphClass::Subcubic] }).unwrap();
    assert!(has_shape(&six, &[2; 6]) && six.iter().all(|g| g.max_degree() <= 3));
}

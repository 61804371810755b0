//! Worked examples whose vertex draws are found by searching seeds against
//! the colour tape directly.

use hglca::global::{global_base, global_improved};
use hglca::hypergraph::{generate, GenParams};
use hglca::lca::{EdgeKind, Workspace};
use hglca::state::VertexStatus;
use hglca::tape::RandomTape;
use hglca::verify::check_proper;
use hglca::{Color, Engine, Hypergraph, LllParams, Mode};

fn draws(seed: u64, vs: impl IntoIterator<Item = usize>) -> Vec<Color> {
    let tape = RandomTape::new(seed);
    vs.into_iter().map(|v| tape.color_draw(v, 0)).collect()
}

fn all_equal(c: &[Color]) -> bool {
    c.windows(2).all(|w| w[0] == w[1])
}

fn find_seed(pred: impl Fn(u64) -> bool) -> u64 {
    (0..100_000).find(|&s| pred(s)).expect("seed within search range")
}

/// Three 6-edges through vertex 0.
fn star() -> Hypergraph {
    Hypergraph::new(16, 6, vec![(0..6).collect(), vec![0, 6, 7, 8, 9, 10], vec![0, 11, 12, 13, 14, 15]]).unwrap()
}

/// e0 = {0..5} and e1 = {5..10}.
fn pair() -> Hypergraph {
    Hypergraph::new(11, 6, vec![(0..6).collect(), (5..11).collect()]).unwrap()
}

#[test]
fn equal_first_draws_make_a_bad_edge() {
    let h = star();
    // k = 6, t = 2: four equal accepted colours make an edge bad.
    let seed = find_seed(|s| all_equal(&draws(s, 0..4)));
    let mut ws = Workspace::new(&h, LllParams::new(6, 2, 2, seed).unwrap(), Mode::Base);
    let class = ws.determine_edge_status(0);
    assert_eq!(class.kind, EdgeKind::Bad);
    assert_eq!(ws.state().status(4), VertexStatus::Troubled);
    assert_eq!(ws.state().status(5), VertexStatus::Troubled);

    let seed = find_seed(|s| !all_equal(&draws(s, 0..2)));
    let mut ws = Workspace::new(&h, LllParams::new(6, 2, 2, seed).unwrap(), Mode::Base);
    assert_eq!(ws.determine_edge_status(0).kind, EdgeKind::Safe);
    assert_eq!(ws.state().status(2), VertexStatus::Uncolored);
}

#[test]
fn intersecting_bad_edges_share_a_component() {
    let h = pair();
    let seed = find_seed(|s| all_equal(&draws(s, 0..4)) && all_equal(&draws(s, 6..10)));
    let mut p = LllParams::new(6, 2, 1, seed).unwrap();
    p.steps_factor = 50.0;
    let mut engine = Engine::new(&h, p, Mode::Base).unwrap();
    for v in 0..4 {
        assert_eq!(engine.query(v).unwrap(), draws(seed, [v])[0]);
    }
    engine.query(4).unwrap();
    let comp = &engine.components()[0];
    assert_eq!(comp.bad, vec![0, 1]);
    let coloring = engine.state().accepted_coloring();
    assert!(check_proper(&h, &coloring).is_proper());
    assert!(coloring.iter().all(Option::is_some));
}

#[test]
fn troubled_query_leaves_its_component_properly_coloured() {
    let h = pair();
    let seed = find_seed(|s| all_equal(&draws(s, 0..4)) && !all_equal(&draws(s, 6..8)));
    let mut p = LllParams::new(6, 2, 1, seed).unwrap();
    p.steps_factor = 50.0;
    let mut engine = Engine::new(&h, p, Mode::Base).unwrap();
    for v in 0..5 {
        engine.query(v).unwrap();
    }
    assert_eq!(engine.components()[0].bad, vec![0]);
    let report = check_proper(&h, &engine.state().accepted_coloring());
    assert!(!report.violations.contains(&0));
    assert!(engine.state().is_accepted(4) && engine.state().is_accepted(5));
}

#[test]
fn single_bad_edge_is_the_only_global_component() {
    let h = Hypergraph::new(12, 6, vec![(0..6).collect(), (6..12).collect()]).unwrap();
    let seed = find_seed(|s| all_equal(&draws(s, 0..4)) && !all_equal(&draws(s, 6..8)));
    let mut p = LllParams::new(6, 2, 0, seed).unwrap();
    p.steps_factor = 50.0;
    let order: Vec<usize> = (0..12).collect();
    let out = global_base(&h, &order, &p).unwrap();
    assert_eq!(out.final_components, vec![vec![0]]);
    assert!(check_proper(&h, &out.state.accepted_coloring()).is_proper());
}

#[test]
fn without_monochromatic_edges_proposed_colours_stand() {
    let h = pair();
    // e0 bad, but its troubled vertices disagree with the accepted colour
    // and e1 is mixed.
    let seed = find_seed(|s| {
        let d = draws(s, 0..11);
        all_equal(&d[0..4]) && d[4] != d[0] && !all_equal(&d[6..10])
    });
    let p = LllParams::new(6, 2, 1, seed).unwrap();
    let order: Vec<usize> = (0..11).collect();
    let out = global_improved(&h, &order, &p).unwrap();
    assert_eq!(out.components.nodes.len(), 1);
    assert!(out.components.active.iter().all(|a| !a));
    assert!(out.final_components.is_empty());
    assert_eq!(out.steps, 0);
    let expect: Vec<Option<Color>> = draws(seed, 0..11).into_iter().map(Some).collect();
    assert_eq!(out.state.accepted_coloring(), expect);
    assert!(check_proper(&h, &out.state.accepted_coloring()).is_proper());
}

#[test]
fn monochromatic_bad_edge_is_activated_and_recoloured() {
    let h = Hypergraph::new(12, 6, vec![(0..6).collect(), (6..12).collect()]).unwrap();
    let seed = find_seed(|s| all_equal(&draws(s, 0..6)) && !all_equal(&draws(s, 6..8)));
    let mut p = LllParams::new(6, 2, 0, seed).unwrap();
    p.steps_factor = 50.0;
    let order: Vec<usize> = (0..12).collect();
    let out = global_improved(&h, &order, &p).unwrap();
    assert_eq!(out.components.active, vec![true]);
    assert_eq!(out.final_components, vec![vec![0]]);
    let c = out.state.accepted_coloring();
    assert!(check_proper(&h, &c).is_proper());
    // The untouched edge keeps its first draws.
    let first: Vec<Option<Color>> = draws(seed, 6..12).into_iter().map(Some).collect();
    assert_eq!(&c[6..12], &first[..]);
}

#[test]
fn activation_exclusion_happens_on_random_instances() {
    // Search for a run whose improved queries settle some troubled area by
    // accepting proposed colours. A fully processed unsafe edge holds more
    // than t troubled vertices, so the search rule needs t >= 3.
    let mut found = false;
    'outer: for seed in 100..2000u64 {
        let Ok(h) = generate(&GenParams {
            n: 150,
            m: 40,
            k: 9,
            max_edge_degree: 8,
            seed,
            clustering: None,
        }) else {
            continue;
        };
        let mut e = Engine::new(&h, LllParams::new(9, 3, h.max_edge_degree(), seed).unwrap(), Mode::Improved).unwrap();
        for v in 0..h.n() {
            if e.query(v).is_err() {
                continue 'outer;
            }
        }
        if e.stats().exclusions > 0 {
            assert!(check_proper(&h, &e.state().accepted_coloring()).is_proper());
            found = true;
            break;
        }
    }
    assert!(found);
}

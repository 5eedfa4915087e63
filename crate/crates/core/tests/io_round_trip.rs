use crystallize::catalog;
use crystallize::io::{export_dot, parse_gem, parse_pst, write_gem, write_pst};
use crystallize::{CellComplex, ColoredGraph};

fn samples() -> Vec<ColoredGraph> {
    vec![catalog::s4(), catalog::cp2(), catalog::s2xs2().unwrap(), ColoredGraph::dipole(3)]
}

#[test]
fn gem_text_round_trips() {
    for g in samples() {
        let text = write_gem(&g);
        assert_eq!(parse_gem(&text).unwrap(), g);
        assert_eq!(write_gem(&parse_gem(&text).unwrap()), text);
    }
}

#[test]
fn pst_text_round_trips() {
    for g in samples() {
        let c = CellComplex::realize(&g);
        let text = write_pst(&c);
        let back = parse_pst(&text).unwrap();
        assert_eq!(back, c);
        assert!(back.dual_graph_coloring().unwrap().is_isomorphic(&g).unwrap());
    }
}

#[test]
fn dot_lists_every_edge() {
    let g = catalog::cp2();
    let dot = export_dot(&g);
    assert_eq!(dot.matches("--").count(), g.edges().count());
}

#[test]
fn malformed_inputs_are_rejected() {
    for text in ["", "gem", "gem 4 2\n0: 0-1\n", "gem 1 2\n0: 0-0\n1: 0-1\n"] {
        assert!(parse_gem(text).is_err(), "{text:?}");
    }
    assert!(parse_pst("pst x").is_err());
}

use proptest::prelude::*;

use crystallize::catalog;
use crystallize::census::census_3manifold;
use crystallize::moves::{apply, available_moves};
use crystallize::{abelianize, CellComplex, Move};

fn homology(c: &CellComplex) -> (usize, Vec<String>) {
    let h = abelianize(&c.pi1());
    (h.free_rank, h.torsion.iter().map(|t| t.to_string()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_moves_preserve_invariants(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let mut c = CellComplex::realize(&catalog::cp2());
        let chi = c.euler_characteristic();
        let h = homology(&c);
        for pick in picks {
            let moves: Vec<Move> = available_moves(&c);
            prop_assume!(!moves.is_empty());
            c = apply(&c, pick.get(&moves)).unwrap();
            prop_assert_eq!(c.euler_characteristic(), chi);
            prop_assert!(c.is_orientable());
            prop_assert_eq!(homology(&c), h.clone());
        }
    }

    #[test]
    fn census_is_relabel_invariant(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let classes = census_3manifold(6).unwrap();
        for g in &classes {
            let h = g.relabel(&perm);
            let hits = classes.iter().filter(|k| k.is_isomorphic(&h).unwrap()).count();
            prop_assert_eq!(hits, 1);
        }
    }
}

//! Randomised invariants of the parser, Newton geometry, links, contact
//! invariants and the arc oracle.

mod common;

use common::props;

macro_rules! property {
    ($($name:ident),* $(,)?) => {$(
        #[test]
        fn $name() {
            if let Err(e) = props::$name() {
                panic!("{}: {e}", stringify!($name));
            }
        }
    )*};
}

property!(
    parse_print_roundtrip,
    conj_swap,
    wirtinger_leibniz,
    rescale_consistency,
    hull_vs_brute_force,
    hull_idempotent,
    weight_edge_duality,
    gamma_inn_dominance,
    rdeg_minimality,
    strand_permutation_bijective,
    grid_doubling_stable,
    contact_data_swap_invariant,
    contact_symmetry_and_bounds,
    compare_symmetric,
    non_archimedean,
    nondegeneracy_no_is_sound,
);

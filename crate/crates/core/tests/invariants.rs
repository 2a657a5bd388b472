use gds_core::builtin::from_spec;
use gds_core::chartable::{character_table_mod_p, character_table_with_prime, restriction_multiplicities};
use gds_core::group::group_from_generators;
use gds_core::metrics::{commuting_pairs_bruteforce, compute_metrics, half_bound_witness, ratio};
use gds_core::quotient::quotient_group;
use gds_core::structure::structural_predicates;
use gds_core::subgroup::{center, derived_subgroup, normal_subgroups, trivial_subgroup};
use gds_core::PermutationGroup;
use proptest::prelude::*;

fn shuffled(degree: usize, keys: &[u32]) -> Vec<u32> {
    let mut idx: Vec<u32> = (1..=degree as u32).collect();
    idx.sort_by_key(|&i| (keys[i as usize - 1], i));
    idx
}

prop_compose! {
    fn small_group()(degree in 1usize..=6, n_gens in 0usize..=3, keys in prop::collection::vec(prop::collection::vec(0u32..100, 6), 3)) -> PermutationGroup {
        let gens: Vec<Vec<u32>> = keys.iter().take(n_gens).map(|k| shuffled(degree, k)).collect();
        group_from_generators(degree, &gens).unwrap()
    }
}

fn check_group(g: &PermutationGroup) {
    let n = g.order();
    // closure
    for a in g.elements() {
        for b in g.elements().take(8) {
            assert!(g.mul(a, b) < n as u32);
        }
    }
    let sizes = g.class_sizes();
    assert_eq!(sizes.iter().sum::<usize>(), n);
    assert!(sizes.iter().all(|s| n % s == 0));
    assert_eq!(sizes[0], 1);

    let table = character_table_mod_p(g).unwrap();
    assert_eq!(table.degrees.iter().map(|d| d * d).sum::<u64>(), n as u64);
    assert_eq!(table.degrees.len(), g.class_count());
    let m = compute_metrics(g, &table.degrees).unwrap();
    assert_eq!(commuting_pairs_bruteforce(g).unwrap(), ratio(m.class_number, m.order));
    assert!(m.involution_count <= m.degree_sum);
    assert!((m.degree_sum as u128).pow(2) <= m.class_number as u128 * m.order as u128);
    let w = half_bound_witness(g, &table.degrees).unwrap();
    assert_eq!(w.verdict, 2 * m.degree_sum > m.order);

    let p = structural_predicates(g).unwrap();
    assert!(!p.abelian || p.nilpotent);
    assert!(!p.nilpotent || p.supersolvable);
    assert!(!p.supersolvable || p.solvable);
    assert_eq!(p.chief_factor_orders.iter().product::<u64>(), n as u64);
    assert_eq!(p.fitting_height == Some(0), n == 1);

    let d = derived_subgroup(g);
    assert!(d.is_normal());
    let ab = quotient_group(g, &d).unwrap();
    assert_eq!(ab.group().class_count(), ab.group().order());
    let same = quotient_group(g, &trivial_subgroup(g)).unwrap();
    assert_eq!((same.group().order(), same.group().class_count()), (n, g.class_count()));
    assert!(center(g).elements().iter().all(|&z| g.elements().all(|x| g.commute(x, z))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_permutation_groups_satisfy_invariants(g in small_group()) {
        check_group(&g);
    }

    #[test]
    fn induced_mass_matches_index(g in small_group()) {
        prop_assume!(g.order() <= 48);
        let cg = character_table_mod_p(&g).unwrap();
        for n in normal_subgroups(&g, 200).unwrap() {
            let ng = PermutationGroup::from_elements_of(&g, "N", n.generators()).unwrap();
            let cn = character_table_with_prime(&ng, cg.modulus).unwrap();
            let m = restriction_multiplicities(&g, &n, &ng, &cg, &cn).unwrap();
            for (j, &theta) in cn.degrees.iter().enumerate() {
                let mass: u64 = m.iter().zip(&cg.degrees).map(|(row, &d)| row[j] * d).sum();
                prop_assert_eq!(mass, (g.order() / n.order()) as u64 * theta);
            }
        }
    }
}

#[test]
fn named_groups_satisfy_invariants() {
    for spec in ["symmetric:5", "sl2:5", "extraspecial:27:3", "psl2:8", "product:dihedral:4,quaternion:8", "frobenius:11:5"] {
        check_group(&from_spec(spec).unwrap());
    }
}

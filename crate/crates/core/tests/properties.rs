use proptest::prelude::*;

use zonotodd::algebra::poly::Polynomial;
use zonotodd::algebra::rational::int;
use zonotodd::geometry::Zonotope;
use zonotodd::matroid::{graphic_config, VectorConfig};
use zonotodd::pspace::{internal_space, ProjectionTable};
use zonotodd::splines::partition_count;
use zonotodd::toddcalc::f_z;

const K4_EDGES: [(usize, usize); 6] = [(0, 3), (1, 3), (2, 3), (0, 1), (0, 2), (1, 2)];

/// Spanning subgraphs of K4, given as edge masks.
fn spanning_subgraph() -> impl Strategy<Value = VectorConfig> {
    (1u32..64)
        .prop_map(|mask| {
            let edges: Vec<_> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| K4_EDGES[i]).collect();
            graphic_config(4, &edges)
        })
        .prop_filter("spanning", |x| x.spans())
}

fn brute_count(x: &VectorConfig, u: &[i64], k: usize) -> u64 {
    if k == x.len() {
        return u64::from(u.iter().all(|&a| a == 0));
    }
    let col = x.column(k);
    let mut total = 0;
    let mut cur = u.to_vec();
    // graph columns e_a - e_b, a < b, have positive weight on (3, 2, 1)
    let weight = |v: &[i64]| v[0] * 3 + v[1] * 2 + v[2];
    while weight(&cur) >= 0 {
        total += brute_count(x, &cur, k + 1);
        for (c, x) in cur.iter_mut().zip(col) {
            *c -= x;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interior_f_z_lie_in_internal_space(x in spanning_subgraph()) {
        let space = internal_space(&x).unwrap();
        let interior = Zonotope::new(&x).unwrap().interior_points();
        prop_assert_eq!(space.dimension(), interior.len());
        for z in &interior {
            let f = f_z(&x, z).unwrap();
            prop_assert!(space.contains(&f), "f_{:?} = {}", z, f);
            prop_assert_eq!(f.eval(&vec![int(0); 3]), int(1));
        }
    }

    #[test]
    fn projection_is_idempotent(x in spanning_subgraph(), e in prop::collection::vec(0u32..4, 3), c in -5i64..5) {
        let table = ProjectionTable::new(&x).unwrap();
        let p = Polynomial::from_terms(3, vec![(e, int(c)), (vec![0, 0, 0], int(1))]).unwrap();
        let once = table.project(&p).unwrap();
        prop_assert_eq!(table.project(&once).unwrap(), once);
    }

    #[test]
    fn partition_count_matches_enumeration(x in spanning_subgraph(), u in prop::collection::vec(-3i64..5, 3)) {
        prop_assert_eq!(partition_count(&x, &u).unwrap(), brute_count(&x, &u, 0));
    }
}

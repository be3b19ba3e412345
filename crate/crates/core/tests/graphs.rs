use kdilate_core::abelian::FgAbelianGroup;
use kdilate_core::graphalg::{
    crossed_subquotient_k, enumerate_hereditary_saturated, hereditary_saturated_closure, ideal_lattice_hasse,
    prim_poset, strongly_connected_components, subquotient_k, Graph, VertexSet,
};
use kdilate_core::matrix::IntMatrix;
use kdilate_core::BigInt;
use kdilate_oracle::{det_cofactor, hereditary_saturated_masks};
use num_traits::Signed;
use proptest::prelude::*;

/// Sparse multigraphs without sinks, as adjacency rows.
fn adjacency(max_n: usize, loops: bool) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1..=max_n).prop_flat_map(move |n| {
        let cell = prop_oneof![6 => Just(0u64), 2 => Just(1u64), 1 => 2u64..=4];
        prop::collection::vec(prop::collection::vec(cell, n), n).prop_map(move |mut rows| {
            for v in 0..n {
                if loops && rows[v][v] == 0 {
                    rows[v][v] = 1;
                }
                if rows[v].iter().all(|&c| c == 0) {
                    rows[v][(v + 1) % n] = 1;
                }
            }
            rows
        })
    })
}

fn graph(rows: &[Vec<u64>]) -> Graph {
    let n = rows.len();
    let names = (0..n).map(|i| format!("v{}", i + 1)).collect();
    let data = rows.iter().flatten().map(|&c| BigInt::from(c)).collect();
    Graph::new(names, IntMatrix::new(n, n, data).unwrap()).unwrap()
}

fn from_mask(mask: u64) -> VertexSet {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn to_mask(s: &VertexSet) -> u64 {
    s.iter().map(|v| 1u64 << v).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn closure_is_a_closure_operator(rows in adjacency(8, false), a in any::<u64>(), b in any::<u64>()) {
        let g = graph(&rows);
        let all = (1u64 << g.len()) - 1;
        let s = from_mask(a & all);
        let t = from_mask((a | b) & all);
        let cs = hereditary_saturated_closure(&g, &s).unwrap();
        let ct = hereditary_saturated_closure(&g, &t).unwrap();
        prop_assert!(s.is_subset(&cs));
        prop_assert_eq!(&hereditary_saturated_closure(&g, &cs).unwrap(), &cs);
        prop_assert!(cs.is_subset(&ct));
    }

    #[test]
    fn enumeration_matches_brute_force(rows in adjacency(12, false)) {
        let g = graph(&rows);
        let got: Vec<u64> = enumerate_hereditary_saturated(&g).iter().map(to_mask).collect();
        let mut sorted = got.clone();
        sorted.sort();
        prop_assert_eq!(sorted, hereditary_saturated_masks(&rows));
        // sorted by size, then lexicographically
        let sizes: Vec<u32> = got.iter().map(|m| m.count_ones()).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn family_is_closed_under_intersection(rows in adjacency(8, false)) {
        let g = graph(&rows);
        let family = enumerate_hereditary_saturated(&g);
        prop_assert!(family.contains(&VertexSet::full(g.len())));
        prop_assert!(family.contains(&hereditary_saturated_closure(&g, &VertexSet::new()).unwrap()));
        for a in &family {
            for b in &family {
                prop_assert!(family.contains(&a.intersection(b)));
            }
        }
        prop_assert!(ideal_lattice_hasse(&g).is_transitively_reduced());
    }

    #[test]
    fn prim_poset_is_reduced_on_components(rows in adjacency(8, true)) {
        let g = graph(&rows);
        let p = prim_poset(&g).unwrap();
        prop_assert_eq!(p.elements().len(), strongly_connected_components(&g).len());
        prop_assert!(p.is_transitively_reduced());
        // acyclic: no cover goes back down
        for &(a, b) in p.covers() {
            prop_assert!(!p.covers().contains(&(b, a)));
        }
    }

    #[test]
    fn subquotient_order_is_determinant(rows in adjacency(5, false)) {
        let g = graph(&rows);
        let family = enumerate_hereditary_saturated(&g);
        for z in &family {
            for y in family.iter().filter(|y| y.is_subset(z)) {
                let x: Vec<usize> = z.difference(y).iter().collect();
                let m: Vec<Vec<i64>> = x
                    .iter()
                    .map(|&w| x.iter().map(|&v| rows[v][w] as i64 - i64::from(v == w)).collect())
                    .collect();
                let det = det_cofactor(&m);
                let (k0, k1) = subquotient_k(&g, z, y).unwrap();
                if det != BigInt::from(0) {
                    prop_assert_eq!(k0.order(), Some(det.abs()));
                    prop_assert!(k1.is_trivial());
                } else {
                    prop_assert!(k1.free_rank() > 0 && k1.free_rank() == k0.free_rank());
                }
            }
        }
    }
}

fn graph_e() -> Graph {
    graph(&[vec![8, 1, 1, 0], vec![0, 3, 0, 1], vec![0, 0, 4, 1], vec![0, 0, 0, 6]])
}

#[test]
fn graph_e_subquotients() {
    let g = graph_e();
    let family = enumerate_hereditary_saturated(&g);
    let labels: Vec<String> = family.iter().map(|s| g.label(s)).collect();
    assert_eq!(labels, ["{}", "{v4}", "{v2,v4}", "{v3,v4}", "{v2,v3,v4}", "{v1,v2,v3,v4}"]);

    let empty = VertexSet::new();
    let cyc = |n: &[u64]| FgAbelianGroup::from_cyclic_orders(n.iter().map(|&x| BigInt::from(x)));
    let expected = [(1, cyc(&[5])), (2, cyc(&[5, 2])), (3, cyc(&[5, 3])), (4, cyc(&[5, 3, 2])), (5, cyc(&[7, 5, 3, 2]))];
    for (i, k0) in expected {
        let (got0, got1) = subquotient_k(&g, &family[i], &empty).unwrap();
        assert_eq!(got0, k0, "Z = {}", labels[i]);
        assert!(got1.is_trivial());
    }
    for z in &family {
        for y in family.iter().filter(|y| y.is_subset(z)) {
            let (k0, _) = subquotient_k(&g, z, y).unwrap();
            let out = crossed_subquotient_k(&g, z, y).unwrap();
            assert!(out.is_resolved());
            for piece in [&out.k0, &out.k1] {
                assert_eq!(piece.resolved.as_ref().and_then(|d| d.as_fg()), Some(&k0));
            }
        }
    }
}

#[test]
fn graph_e_prim_and_lattice() {
    let g = graph_e();
    let p = prim_poset(&g).unwrap();
    let covers: Vec<(String, String)> = p.undirected_covers();
    let pair = |a: &str, b: &str| (a.to_string(), b.to_string());
    assert_eq!(covers, vec![pair("v1", "v2"), pair("v1", "v3"), pair("v2", "v4"), pair("v3", "v4")]);
    let names = |idx: Vec<usize>| idx.into_iter().map(|i| p.elements()[i].clone()).collect::<Vec<_>>();
    assert_eq!(names(p.minimal()), ["v4"]);
    assert_eq!(names(p.maximal()), ["v1"]);

    let lattice = ideal_lattice_hasse(&g);
    assert_eq!(lattice.covers().len(), 6);
    assert!(lattice.is_transitively_reduced());
}

#[test]
fn small_lattices() {
    let single = graph(&[vec![1]]);
    assert_eq!(enumerate_hereditary_saturated(&single).len(), 2);
    assert_eq!(ideal_lattice_hasse(&single).covers().len(), 1);
    let two = graph(&[vec![1, 0], vec![0, 1]]);
    let lattice = ideal_lattice_hasse(&two);
    assert_eq!(lattice.elements().len(), 4);
    assert_eq!(lattice.covers().len(), 4);
    let chain = graph(&[vec![1, 1], vec![0, 1]]);
    assert_eq!(prim_poset(&chain).unwrap().covers().len(), 1);
    assert!(prim_poset(&graph(&[vec![0, 1], vec![0, 1]])).is_err());
}

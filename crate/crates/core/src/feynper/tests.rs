use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::numkernel::BigReal;

fn doubled_triangle() -> MultiGraph {
    MultiGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap()
}

#[test]
fn loop_numbers() {
    assert_eq!(
        MultiGraph::new(2, vec![(0, 1)]).unwrap().loop_number().unwrap(),
        0
    );
    assert_eq!(MultiGraph::bubble().loop_number().unwrap(), 1);
    assert_eq!(MultiGraph::complete4().loop_number().unwrap(), 3);
    assert_eq!(MultiGraph::wheel(4).loop_number().unwrap(), 4);
    let split = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
    assert_eq!(split.loop_number(), Err(Error::Disconnected));
}

#[test]
fn rejects_bad_graphs() {
    assert!(MultiGraph::new(2, vec![(0, 0)]).is_err());
    assert!(MultiGraph::new(2, vec![(0, 2)]).is_err());
    let g = MultiGraph::from_json(r#"{"vertices": 2, "edges": [[0,1],[1,0]]}"#).unwrap();
    assert_eq!(g.edge_count(), 2);
    assert!(MultiGraph::from_json(r#"{"vertices": 2}"#).is_err());
}

#[test]
fn tree_counts() {
    assert_eq!(spanning_trees(&MultiGraph::triangle()).unwrap().len(), 3);
    assert_eq!(spanning_trees(&MultiGraph::complete4()).unwrap().len(), 16);
    assert_eq!(spanning_trees(&MultiGraph::bubble()).unwrap().len(), 2);
    assert_eq!(spanning_trees(&MultiGraph::wheel(4)).unwrap().len(), 45);
    for g in [
        MultiGraph::complete4(),
        MultiGraph::wheel(4),
        MultiGraph::wheel(5),
        doubled_triangle(),
    ] {
        let n = spanning_trees(&g).unwrap().len();
        assert_eq!(matrix_tree_count(&g), n as u64);
    }
}

#[test]
fn size_caps() {
    let big = MultiGraph::new(2, vec![(0, 1); 25]).unwrap();
    assert!(matches!(
        spanning_trees(&big),
        Err(Error::TooLarge { edges: 25, limit: 24 })
    ));
    let mid = MultiGraph::new(2, vec![(0, 1); 17]).unwrap();
    assert!(matches!(divergent_subgraph(&mid), Err(Error::TooLarge { .. })));
}

#[test]
fn kirchhoff_examples() {
    assert_eq!(
        kirchhoff_polynomial(&MultiGraph::bubble()).unwrap().to_string(),
        "a1 + a2"
    );
    assert_eq!(
        kirchhoff_polynomial(&MultiGraph::triangle()).unwrap().to_string(),
        "a1 + a2 + a3"
    );
    let k4 = kirchhoff_polynomial(&MultiGraph::complete4()).unwrap();
    assert_eq!(k4.monomial_count(), 16);
    assert_eq!(k4.homogeneous_degree(), Some(3));
    for (e, c) in k4.terms() {
        assert_eq!(c, 1);
        assert!(e.iter().all(|&k| k <= 1));
    }
    // of the 20 three-edge monomials, the 4 vertex stars are missing:
    // their complements are triangles, not trees
    let g = MultiGraph::complete4();
    for v in 0..4 {
        let star: Vec<u32> = g
            .edges()
            .iter()
            .map(|&(a, b)| u32::from(a == v || b == v))
            .collect();
        assert!(k4.terms().all(|(e, _)| e != star.as_slice()));
    }
}

#[test]
fn homogeneity() {
    for g in [
        MultiGraph::bubble(),
        MultiGraph::triangle(),
        MultiGraph::complete4(),
        MultiGraph::wheel(4),
    ] {
        let psi = kirchhoff_polynomial(&g).unwrap();
        let h = g.loop_number().unwrap() as u32;
        assert_eq!(psi.homogeneous_degree(), Some(h));
        let a: Vec<f64> = (0..g.edge_count()).map(|i| 0.3 + 0.17 * i as f64).collect();
        let la: Vec<f64> = a.iter().map(|x| x * 2.0).collect();
        let ratio = psi.eval(&la) / psi.eval(&a);
        assert!((ratio - 2f64.powi(h as i32)).abs() < 1e-12);
    }
}

#[test]
fn deletion_contraction() {
    assert!(deletion_contraction_holds(&MultiGraph::bubble(), 0).unwrap());
    for e in 0..3 {
        assert!(deletion_contraction_holds(&MultiGraph::triangle(), e).unwrap());
    }
    for e in 0..6 {
        assert!(deletion_contraction_holds(&MultiGraph::complete4(), e).unwrap());
    }
    for e in 0..4 {
        assert!(deletion_contraction_holds(&doubled_triangle(), e).unwrap());
    }
    let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    assert!(deletion_contraction_holds(&path, 0).is_err());
}

#[test]
fn primitivity() {
    assert!(is_primitive_log_divergent(&MultiGraph::bubble()).unwrap());
    assert!(is_primitive_log_divergent(&MultiGraph::complete4()).unwrap());
    assert!(is_primitive_log_divergent(&MultiGraph::wheel(4)).unwrap());
    assert!(!is_primitive_log_divergent(&MultiGraph::triangle()).unwrap());
    let d = doubled_triangle();
    assert!(!is_primitive_log_divergent(&d).unwrap());
    assert_eq!(divergent_subgraph(&d).unwrap(), Some(vec![0, 1]));
}

#[test]
fn no_primitive_two_loop_graph() {
    // n = 4, h = 2 forces 3 vertices; try every multiset of 4 edges.
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut seen = 0;
    for a in 0..3 {
        for b in a..3 {
            for c in b..3 {
                for d in c..3 {
                    let edges = [a, b, c, d].iter().map(|&i| pairs[i]).collect();
                    let g = MultiGraph::new(3, edges).unwrap();
                    if g.is_connected() {
                        seen += 1;
                        assert!(!is_primitive_log_divergent(&g).unwrap());
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn bubble_period() {
    let g = MultiGraph::bubble();
    let mut errs = Vec::new();
    for n in [10_000u64, 100_000, 1_000_000] {
        let e = period_mc(&g, n, 7).unwrap();
        assert!((e.estimate - 1.0).abs() <= 3.0 * e.stderr, "{e:?}");
        errs.push(e.stderr);
    }
    for w in errs.windows(2) {
        let r = w[0] / w[1];
        let ideal = 10f64.sqrt();
        assert!(r > ideal / 2.0 && r < ideal * 2.0);
    }
}

#[test]
fn deterministic_by_seed() {
    let g = MultiGraph::complete4();
    let a = period_mc(&g, 20_000, 3).unwrap();
    let b = period_mc(&g, 20_000, 3).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    let c = period_mc(&g, 20_000, 4).unwrap();
    assert_ne!(a.estimate, c.estimate);
}

#[test]
fn not_primitive_rejected() {
    assert_eq!(
        period_mc(&MultiGraph::triangle(), 1000, 1),
        Err(Error::NotPrimitive)
    );
    assert_eq!(period_mc(&doubled_triangle(), 1000, 1), Err(Error::NotPrimitive));
}

#[test]
fn snapping() {
    let z3 = BigReal::exact(rug::Float::with_val(64, 1.2020569031595942), 15);
    let e = PeriodEstimate {
        estimate: 7.21,
        stderr: 0.03,
        samples: 1,
        seed: 0,
    };
    let (m, s) = snap_to_multiple(&e, &z3);
    assert_eq!(m, 6);
    assert!(s <= 1.0);
    let one = BigReal::from_int(1, 15);
    let e = PeriodEstimate {
        estimate: 1.0,
        stderr: 0.01,
        samples: 1,
        seed: 0,
    };
    assert_eq!(snap_to_multiple(&e, &one), (1, 0.0));
    let z5 = BigReal::exact(rug::Float::with_val(64, 1.036_927_755_143_37_f64), 15);
    let e = PeriodEstimate {
        estimate: 20.7,
        stderr: 0.2,
        samples: 1,
        seed: 0,
    };
    let (m, s) = snap_to_multiple(&e, &z5);
    assert_eq!(m, 20);
    assert!(s <= 1.0);
}

#[test]
fn selftest_cases() {
    let r = integrator_selftest(200_000, 42).unwrap();
    assert_eq!(r.len(), 4);
    for c in &r {
        assert!(c.passed(), "{c:?}");
    }
    assert_eq!(r[2].estimate, 1.0);
    assert!((r[0].estimate - 2f64.sqrt()).abs() < 0.01);
    assert!((r[3].estimate - std::f64::consts::PI).abs() < 0.02);
    assert!(integrator_selftest(100, 1).is_err());
}

fn arb_graph() -> impl Strategy<Value = MultiGraph> {
    (2usize..=5).prop_flat_map(|v| {
        proptest::collection::vec((0..v, 0..v), 1..=9).prop_filter_map("connected, loopless", move |es| {
            let es: Vec<_> = es.into_iter().filter(|(a, b)| a != b).collect();
            let g = MultiGraph::new(v, es).ok()?;
            g.is_connected().then_some(g)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enumeration_matches_determinant(g in arb_graph()) {
        let trees = spanning_trees(&g).unwrap();
        prop_assert_eq!(matrix_tree_count(&g), trees.len() as u64);
        let psi = kirchhoff_polynomial(&g).unwrap();
        prop_assert_eq!(psi.monomial_count(), trees.len());
        prop_assert_eq!(psi.homogeneous_degree(), Some(g.loop_number().unwrap() as u32));
    }

    #[test]
    fn deletion_contraction_random(g in arb_graph(), pick in 0usize..16) {
        let e = pick % g.edge_count();
        if g.delete(e).is_connected() {
            prop_assert!(deletion_contraction_holds(&g, e).unwrap());
        }
    }
}

use std::path::PathBuf;

use spexlab::canon::are_isomorphic;
use spexlab::extremal::{ExtremalValue, Mode};
use spexlab::graph::Graph;
use spexlab::subgraph::{chromatic_number, ForbiddenFamily};
use spexlab::theorems::{self, ckm_parameters, predicted_construction, theorem16_family};
use spexlab::{ex_search, spex_search, Catalog, SearchError};

fn single(g: Graph) -> ForbiddenFamily {
    ForbiddenFamily::single(g).unwrap()
}

fn cache_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn ex_witnesses_are_maximal_and_free() {
    let cat = Catalog::new();
    let fam = single(Graph::cycle(4).unwrap());
    for n in 3..=7 {
        let rep = ex_search(&cat, n, &fam).unwrap();
        assert_eq!(rep.mode, Mode::Edges);
        let ExtremalValue::Edges(e) = rep.extremal_value else { panic!("edge mode") };
        for g in rep.witness_graphs() {
            assert!(fam.is_free(&g));
            assert_eq!(g.edge_count(), e);
        }
        // no free class has more edges
        let best = cat.graphs(n).unwrap().iter().filter(|g| fam.is_free(g)).map(Graph::edge_count).max().unwrap();
        assert_eq!(best, e);
        // witnesses are distinct classes
        let ws = rep.witness_graphs();
        for (i, a) in ws.iter().enumerate() {
            for b in &ws[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }
}

#[test]
fn known_c4_free_values() {
    // ex(n, C4) for n = 4..7 is 4, 6, 7, 9
    let cat = Catalog::new();
    let fam = single(Graph::cycle(4).unwrap());
    let got: Vec<f64> = (4..=7).map(|n| ex_search(&cat, n, &fam).unwrap().extremal_value.as_f64()).collect();
    assert_eq!(got, vec![4.0, 6.0, 7.0, 9.0]);
}

#[test]
fn spex_witnesses_reach_the_max() {
    let cat = Catalog::new();
    let fam = single(Graph::complete(4).unwrap());
    for n in 4..=7 {
        let rep = spex_search(&cat, n, &fam, 1e-10).unwrap();
        let mut predicted = rep.clone();
        predicted.compare_with(&Graph::turan(n, 3).unwrap());
        assert_eq!(predicted.agrees, Some(true), "n = {n}");
        assert!(rep.unique);
        if let Some(r) = &rep.runner_up {
            assert!(r.gap > 1e-6);
            assert!(fam.is_free(&r.graph()));
        }
    }
}

#[test]
fn budget_errors() {
    let cat = Catalog::new();
    let fam = single(Graph::complete(3).unwrap());
    assert!(matches!(ex_search(&cat, 10, &fam), Err(SearchError::Budget { .. })));
    assert!(matches!(spex_search(&cat, 10, &fam, 1e-10), Err(SearchError::Budget { .. })));
    assert!(matches!(theorems::lemma27_check(&cat, 10, &[3]), Err(SearchError::Budget { .. })));
}

#[test]
fn disk_cache_is_reused_across_catalogs() {
    let dir = cache_dir("search-cache-reuse");
    let first = Catalog::new().with_cache_dir(&dir);
    let a = first.graphs(7).unwrap();
    assert!(dir.join("graphs_n7.g6").exists());
    let second = Catalog::new().with_cache_dir(&dir);
    let b = second.graphs(7).unwrap();
    assert_eq!(a, b);
    assert_eq!(second.cache_hits(), 1);
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let cat = Catalog::new();
            let fam = single(Graph::join(&[Graph::complete(2).unwrap(), Graph::empty(2).unwrap()]).unwrap());
            (cat.graphs(7).unwrap(), spex_search(&cat, 7, &fam, 1e-10).unwrap())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn cycle_power_parameter_examples() {
    for (m, k, p, h, s, r) in [(8, 2, 2, 2, 2, 3), (7, 2, 2, 1, 1, 3), (11, 3, 2, 3, 1, 5), (10, 3, 2, 2, 2, 4)] {
        let t = ckm_parameters(m, k).unwrap();
        assert_eq!((t.p, t.h, t.s, t.r, t.b), (Some(p), Some(h), s, r, Some(s)));
    }
    assert!(matches!(ckm_parameters(12, 3), Err(SearchError::InvalidParameter(_))));
}

#[test]
fn reduction_chain_facts() {
    // the cycle power contains the matching member's structure and avoids the
    // predicted extremal graph, so the matching-family harness applies to it
    for (m, k) in [(7, 2), (8, 2)] {
        let t = ckm_parameters(m, k).unwrap();
        let fam = theorem16_family(t.s, t.m, t.r).unwrap();
        assert_eq!(spexlab::subgraph::q_value(&fam).unwrap(), t.s);
        let ckm = theorems::cycle_power(m, k).unwrap();
        assert_eq!(chromatic_number(&ckm), t.r + 1);
        let rep = theorems::verify_theorem17_combinatorics(m, k).unwrap();
        assert!(rep.passes());
        assert!(rep.prediction_hosts.iter().all(|&(_, contained)| !contained));
    }
}

#[test]
fn predicted_radius_increases() {
    for (s, r) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let radii: Vec<f64> =
            (s + r..=20).map(|n| spexlab::spectral::rho(&predicted_construction(s, n, r).unwrap()).unwrap()).collect();
        assert!(radii.windows(2).all(|w| w[1] > w[0]));
    }
}

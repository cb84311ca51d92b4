mod common;

use common::{family_corpus, g, misc_graphs, rel_close, shannon, taylor_exp_diagonal};
use walkgauge::{
    diagonal_sequence, exp_diagonal, generate, partition_function, subgraph_centrality,
    walk_entropy, FamilySpec, Graph, Spectrum,
};

fn corpus() -> Vec<(String, Graph)> {
    let mut v: Vec<(String, Graph)> = family_corpus()
        .into_iter()
        .map(|s| (s.to_string(), generate(&s).unwrap()))
        .collect();
    v.extend(
        misc_graphs()
            .into_iter()
            .map(|(name, g)| (name.to_string(), g)),
    );
    v
}

#[test]
fn exp_diagonal_matches_taylor() {
    for (name, graph) in corpus().into_iter().filter(|(_, g)| g.n() <= 12) {
        let s = Spectrum::of(&graph).unwrap();
        for beta in [0.5, 1.0, 2.0] {
            let want = taylor_exp_diagonal(&graph, beta);
            let got = exp_diagonal(&s, beta).unwrap().y();
            for (i, (a, b)) in got.iter().zip(&want).enumerate() {
                assert!(
                    rel_close(*a, *b, 1e-9),
                    "{name} beta={beta} vertex {i}: {a} vs {b}"
                );
            }
            let z = partition_function(&s, beta).unwrap().value();
            assert!(
                rel_close(z, want.iter().sum(), 1e-9),
                "{name} beta={beta}: Z"
            );
        }
    }
}

#[test]
fn entropy_matches_taylor_entropy() {
    for (name, graph) in corpus().into_iter().filter(|(_, g)| g.n() <= 12) {
        for beta in [0.5, 1.0, 2.0] {
            let want = shannon(&taylor_exp_diagonal(&graph, beta));
            let pt = walk_entropy(&graph, beta).unwrap();
            assert!((pt.entropy - want).abs() <= 1e-9, "{name} beta={beta}");
            assert!(
                (pt.entropy_via_z - pt.entropy).abs() <= 1e-9,
                "{name} beta={beta}"
            );
        }
    }
}

#[test]
fn subgraph_centrality_of_p3() {
    // (e^A)_ii for P3: ends (cosh sqrt2 + 1) / 2, middle cosh sqrt2.
    let c = 2f64.sqrt().cosh();
    let sc = subgraph_centrality(&Spectrum::of(&g(FamilySpec::Path(3))).unwrap());
    let want = [(c + 1.0) / 2.0, c, (c + 1.0) / 2.0];
    for (a, b) in sc.iter().zip(want) {
        assert!((a - b).abs() < 1e-13);
    }
}

#[test]
fn power_traces_match_eigenvalue_sums() {
    for (name, graph) in corpus().into_iter().filter(|(_, g)| g.n() <= 16) {
        let s = Spectrum::of(&graph).unwrap();
        let seq = diagonal_sequence(&graph, 8);
        for k in 0..=8 {
            let exact: f64 = seq.trace(k).to_string().parse().unwrap();
            let spectral: f64 = s.eigenvalues().iter().map(|l| l.powi(k as i32)).sum();
            let scale = s
                .eigenvalues()
                .iter()
                .map(|l| l.abs().powi(k as i32))
                .sum::<f64>();
            assert!(
                (exact - spectral).abs() <= 1e-10 * scale.max(1.0),
                "{name} k={k}: {exact} vs {spectral}"
            );
        }
    }
}

#[test]
fn huge_beta_stays_finite() {
    let graph = g(FamilySpec::Complete(8));
    for beta in [100.0, 1e3, 1e5] {
        let pt = walk_entropy(&graph, beta).unwrap();
        assert!(pt.entropy.is_finite() && pt.ln_z.is_finite());
        assert!(rel_close(pt.ln_z, 7.0 * beta, 1e-12));
        assert!(pt.deficit <= 1e-9);
    }
}

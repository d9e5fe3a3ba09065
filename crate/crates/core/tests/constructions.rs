mod common;

use bookram::books::{has_mono_book, max_book, verify_certificate, SpineSearch};
use bookram::constructions::{
    find_hyper_base, hyper_has_mono_clique, hyper_max_book, hypergraph_blowup, multicolour_blowup, random_colouring,
    rng_from_seed, verify_no_book_multicolour, BlowupSpec,
};
use bookram::graph::{emit_colouring, Colouring, HyperColouring, BLUE, RED};
use common::{is_clique, matrix, subsets};
use rand::Rng;

#[test]
fn random_colouring_is_reproducible() {
    assert_eq!(emit_colouring(&random_colouring(50, 7)), emit_colouring(&random_colouring(50, 7)));
    assert_ne!(random_colouring(50, 7), random_colouring(50, 8));
    assert_eq!(random_colouring(1, 3).n(), 1);
}

#[test]
fn red_fraction_within_four_sigma() {
    let n = 2048usize;
    let pairs = (n * (n - 1) / 2) as f64;
    let sigma = 0.5 / pairs.sqrt();
    for seed in 0..30 {
        let frac = random_colouring(n, seed).edge_count(RED) as f64 / pairs;
        assert!((frac - 0.5).abs() <= 4.0 * sigma, "seed {seed}: {frac}");
    }
}

#[test]
fn seed_streams_look_alike() {
    // mean and spread of red counts over two disjoint seed ranges
    let stats = |seeds: std::ops::Range<u64>| {
        let v: Vec<f64> = seeds.map(|s| random_colouring(64, s).edge_count(RED) as f64).collect();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64;
        (mean, var.sqrt())
    };
    let (m1, s1) = stats(0..30);
    let (m2, s2) = stats(1000..1030);
    let expect_sd = (2016.0f64 / 4.0).sqrt();
    for (m, s) in [(m1, s1), (m2, s2)] {
        assert!((m - 1008.0).abs() < 4.0 * expect_sd / 30f64.sqrt());
        assert!(s > 0.5 * expect_sd && s < 1.6 * expect_sd);
    }
}

#[test]
fn blowup_rule_by_hand() {
    // base: a single red edge with colour 1 unused; internal colour 2
    let base = Colouring::from_fn(2, 2, |_, _| RED).unwrap();
    let col = multicolour_blowup(&base, 2).unwrap();
    assert_eq!(col.q(), 3);
    assert_eq!(col.colour(0, 1), Some(2));
    assert_eq!(col.colour(2, 3), Some(2));
    for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        assert_eq!(col.colour(u, v), Some(RED));
    }
    let spec = BlowupSpec::new(Colouring::pentagon(), 3).unwrap();
    assert_eq!(spec.vertex_count(), 15);
    assert!((0..15).all(|v| spec.part_of(v) == v / 3));
}

#[test]
fn pentagon_blowup_has_no_book() {
    let col = multicolour_blowup(&Colouring::pentagon(), 3).unwrap();
    assert!(verify_no_book_multicolour(&col, 3, 3).is_ok());
    // pages cannot exceed N - k
    assert!(verify_no_book_multicolour(&random_colouring(9, 1), 3, 7).is_ok());
    let red = Colouring::monochromatic(5, 2, RED).unwrap();
    let cert = verify_no_book_multicolour(&red, 2, 1).unwrap_err();
    verify_certificate(&red, &cert, 1).unwrap();
}

/// All two-colourings of `K_t` without a monochromatic `K_k`.
fn clique_free_bases(t: usize, k: usize) -> Vec<Colouring> {
    let edges = subsets(t, 2);
    (0u32..1 << edges.len())
        .filter_map(|mask| {
            let col = Colouring::from_fn(t, 2, |u, v| {
                let i = edges.iter().position(|e| e == &[u, v]).unwrap();
                (mask >> i & 1) as u8
            })
            .unwrap();
            let m = matrix(&col);
            let free = subsets(t, k).iter().all(|s| !is_clique(&m, RED, s) && !is_clique(&m, BLUE, s));
            free.then_some(col)
        })
        .collect()
}

#[test]
fn blowups_of_clique_free_bases_have_no_book() {
    for t in 2..=5 {
        for base in clique_free_bases(t, 3) {
            for n in 1..=4 {
                let col = multicolour_blowup(&base, n).unwrap();
                assert!(verify_no_book_multicolour(&col, 3, n).is_ok(), "t={t} n={n}");
            }
        }
    }
    // k = 4 on six vertices: a sample of bases
    let mut rng = rng_from_seed(6);
    let mut checked = 0;
    while checked < 20 {
        let base = Colouring::from_fn(6, 2, |_, _| rng.gen_range(0..2)).unwrap();
        let m = matrix(&base);
        if subsets(6, 4).iter().any(|s| is_clique(&m, RED, s) || is_clique(&m, BLUE, s)) {
            continue;
        }
        for n in 1..=4 {
            assert!(verify_no_book_multicolour(&multicolour_blowup(&base, n).unwrap(), 4, n).is_ok());
        }
        checked += 1;
    }
}

#[test]
fn internal_colour_books_scale_with_part_size() {
    let base = Colouring::pentagon();
    for n in 1..=4 {
        let col = multicolour_blowup(&base, n).unwrap();
        let internal = col.q() as u8 - 1;
        for k in 1..=3 {
            // spines and pages of the internal colour stay inside one part
            let mut best: Option<usize> = None;
            for spine in bookram::graph::mono_cliques(&col, internal, k) {
                let p = bookram::graph::common_pages(&col, internal, &spine).count();
                best = Some(best.map_or(p, |b| b.max(p)));
            }
            let expect = (k <= n).then(|| n - k);
            assert_eq!(best, expect, "n={n} k={k}");
        }
    }
}

#[test]
fn hypergraph_rule_audit() {
    let base = find_hyper_base(5, 3, 4, 0, 10_000).unwrap().expect("base exists");
    assert!(!hyper_has_mono_clique(&base, 4));
    for n in [1, 2, 3] {
        let h = hypergraph_blowup(&base, n, 12, 3).unwrap();
        assert_eq!(h.n(), 5 * n);
        for e in subsets(5 * n, 3) {
            let parts: Vec<usize> = e.iter().map(|v| v / n).collect();
            let expect = if parts[0] != parts[1] && parts[1] != parts[2] && parts[0] != parts[2] {
                base.colour(&parts)
            } else if parts[0] == parts[1] && parts[1] == parts[2] {
                RED
            } else {
                BLUE
            };
            assert_eq!(h.colour(&e), expect, "edge {e:?} n={n}");
        }
        if n == 1 {
            assert_eq!(h, base);
        }
    }
    assert!(hypergraph_blowup(&base, 2, 4, 3).is_err());
}

#[test]
fn hypergraph_book_examples() {
    let red = HyperColouring::from_fn(5, 3, |_| RED).unwrap();
    assert_eq!(hyper_max_book(&red, 3).unwrap().pages(), Some(2));
    assert_eq!(hyper_max_book(&red, 5).unwrap().pages(), Some(0));

    let base = find_hyper_base(5, 3, 4, 0, 10_000).unwrap().unwrap();
    let h = hypergraph_blowup(&base, 3, 12, 3).unwrap();
    match hyper_max_book(&h, 12).unwrap() {
        SpineSearch::NoSpine => {}
        SpineSearch::Book(c) => assert!(c.page_count() < 3),
    }
}

#[test]
fn random_colourings_respect_ramsey_six() {
    for seed in 0..200 {
        assert!(has_mono_book(&random_colouring(6, seed), 2, 1));
    }
    assert!(!has_mono_book(&Colouring::pentagon(), 2, 1));
    assert_eq!(max_book(&Colouring::pentagon(), 1).unwrap().pages(), Some(2));
}

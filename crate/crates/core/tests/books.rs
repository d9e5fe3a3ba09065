mod common;

use bookram::books::{find_mono_book, has_mono_book, local_profile, max_book, verify_certificate, Rejection, SpineSearch};
use bookram::constructions::{random_colouring, rng_from_seed};
use bookram::graph::{count_mono_cliques, BookCertificate, Colouring, BLUE, RED};
use common::{is_clique, matrix, max_pages, pages, Matrix};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn max_book_matches_subset_oracle() {
    for seed in 0..12 {
        let n = 6 + (seed as usize % 7);
        let col = random_colouring(n, seed);
        let m = matrix(&col);
        for k in 1..=3 {
            let got = max_book(&col, k).unwrap();
            assert_eq!(got.pages(), max_pages(&m, 2, k), "seed {seed} k {k}");
            if let Some(cert) = got.certificate() {
                assert!(is_clique(&m, cert.colour, &cert.spine));
                assert_eq!(cert.pages, pages(&m, cert.colour, &cert.spine));
            }
        }
    }
}

#[test]
fn small_examples() {
    let red = Colouring::monochromatic(5, 2, RED).unwrap();
    let cert = max_book(&red, 2).unwrap().into_certificate().unwrap();
    assert_eq!((cert.colour, cert.spine.clone(), cert.page_count()), (RED, vec![0, 1], 3));
    verify_certificate(&red, &cert, 3).unwrap();

    let p = Colouring::pentagon();
    assert_eq!(max_book(&p, 2).unwrap().pages(), Some(0));
    assert_eq!(max_book(&p, 3).unwrap(), SpineSearch::NoSpine);
    assert!(max_book(&p, 0).is_err());
    assert!(max_book(&p, 5).is_err());
}

#[test]
fn tie_break_prefers_red_then_lexicographic() {
    // swapping colours must give the same page count but possibly a different witness
    for seed in 0..6 {
        let col = random_colouring(14, seed);
        let a = max_book(&col, 2).unwrap();
        let b = max_book(&col.swap_colours(RED, BLUE), 2).unwrap();
        assert_eq!(a.pages(), b.pages());
        let cert = a.certificate().unwrap();
        let m = matrix(&col);
        // no earlier (colour, spine) reaches the same count
        for c in 0..=cert.colour {
            for s in common::subsets(14, 2) {
                if (c, &s) >= (cert.colour, &cert.spine) {
                    break;
                }
                if is_clique(&m, c, &s) {
                    assert!(pages(&m, c, &s).len() < cert.page_count());
                }
            }
        }
    }
}

#[test]
fn find_mono_book_agrees_with_max() {
    for seed in 0..10 {
        let col = random_colouring(12, seed);
        for k in 1..=3 {
            let best = max_book(&col, k).unwrap().pages().unwrap_or(0);
            for n in 1..=best + 1 {
                let found = find_mono_book(&col, k, n);
                assert_eq!(found.is_some(), n <= best);
                assert_eq!(has_mono_book(&col, k, n), n <= best);
                if let Some(cert) = found {
                    verify_certificate(&col, &cert, n).unwrap();
                }
            }
        }
    }
}

#[test]
fn profile_identities() {
    for seed in 0..6 {
        let col = random_colouring(16, seed);
        for k in 1..=3 {
            let prof = local_profile(&col, k).unwrap();
            let up = count_mono_cliques(&col, k + 1);
            let down = count_mono_cliques(&col, k);
            for c in [RED, BLUE] {
                // each (k+1)-clique is counted once per spine it contains
                assert_eq!(prof.page_sum(c), (k as u64 + 1) * up[c as usize]);
                assert_eq!(prof.spine_count(c), down[c as usize]);
            }
            assert_eq!(prof.best.pages(), max_book(&col, k).unwrap().pages());
        }
    }
}

#[test]
fn max_book_monotone_in_vertices_and_spine() {
    let col = random_colouring(40, 77);
    for k in 1..=3 {
        let mut last = 0;
        for n in (k + 1..=40).step_by(3) {
            let keep: Vec<usize> = (0..n).collect();
            let p = max_book(&col.induced(&keep), k).unwrap().pages().unwrap_or(0);
            assert!(p >= last);
            last = p;
        }
    }
    // a larger spine never has more pages than the best smaller spine
    let p: Vec<Option<usize>> = (1..=4).map(|k| max_book(&col, k).unwrap().pages()).collect();
    for w in p.windows(2) {
        if let (Some(a), Some(b)) = (w[0], w[1]) {
            assert!(b < a);
        }
    }
}

/// Independent restatement of the certificate conditions.
fn violations(m: &Matrix, q: usize, cert: &BookCertificate, n: usize) -> Vec<&'static str> {
    let nv = m.len();
    let mut out = Vec::new();
    if cert.spine.iter().chain(&cert.pages).any(|&v| v >= nv) {
        out.push("range");
        return out;
    }
    if cert.colour as usize >= q {
        out.push("colour");
    }
    if cert.spine.is_empty() {
        out.push("empty-spine");
    }
    let dup = |l: &Vec<usize>| (0..l.len()).any(|i| l[i + 1..].contains(&l[i]));
    if dup(&cert.spine) || dup(&cert.pages) {
        out.push("repeated-vertex");
    }
    if !is_clique(m, cert.colour, &cert.spine) {
        out.push("spine-not-clique");
    }
    if cert.pages.iter().any(|p| cert.spine.contains(p)) {
        out.push("page-in-spine");
    }
    if cert
        .pages
        .iter()
        .any(|&p| cert.spine.iter().any(|&s| p != s && m[p][s] != cert.colour))
    {
        out.push("page-not-joined");
    }
    if cert.pages.len() < n {
        out.push("too-few-pages");
    }
    out
}

#[test]
fn fuzzed_certificates_are_rejected_for_real_reasons() {
    let col = random_colouring(24, 8);
    let m = matrix(&col);
    let base = max_book(&col, 3).unwrap().into_certificate().unwrap();
    let need = base.page_count();
    verify_certificate(&col, &base, need).unwrap();
    let mut rng = rng_from_seed(2024);
    let mut rejected = 0;
    let mut attempts = 0;
    while rejected < 100 {
        attempts += 1;
        assert!(attempts < 10_000);
        let mut cert = base.clone();
        match rng.gen_range(0..6) {
            0 => {
                let i = rng.gen_range(0..cert.pages.len());
                cert.pages[i] = rng.gen_range(0..24);
            }
            1 => {
                let i = rng.gen_range(0..cert.spine.len());
                cert.spine[i] = rng.gen_range(0..24);
            }
            2 => {
                cert.pages.pop();
            }
            3 => cert.colour = 1 - cert.colour,
            4 => cert.pages.push(rng.gen_range(0..30)),
            _ => {
                let i = rng.gen_range(0..cert.spine.len());
                cert.spine.remove(i);
                cert.pages.push(rng.gen_range(0..24));
            }
        }
        let independent = violations(&m, 2, &cert, need);
        match verify_certificate(&col, &cert, need) {
            Ok(()) => assert!(independent.is_empty(), "accepted {cert:?} despite {independent:?}"),
            Err(why) => {
                assert!(
                    independent.contains(&why.reason()),
                    "{why} not among {independent:?} for {cert:?}"
                );
                rejected += 1;
            }
        }
    }
}

#[test]
fn swapped_page_names_the_pair() {
    let red = Colouring::from_fn(6, 2, |u, v| if v == 5 && u == 0 { BLUE } else { RED }).unwrap();
    let cert = BookCertificate {
        colour: RED,
        spine: vec![0, 1],
        pages: vec![2, 3, 5],
    };
    assert_eq!(
        verify_certificate(&red, &cert, 3),
        Err(Rejection::PageNotJoined {
            page: 5,
            spine_vertex: 0,
            colour: Some(BLUE)
        })
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn certificates_from_max_book_verify(n in 3usize..=30, k in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(k < n);
        let col = random_colouring(n, seed);
        if let SpineSearch::Book(cert) = max_book(&col, k).unwrap() {
            let p = cert.page_count();
            prop_assert!(verify_certificate(&col, &cert, p).is_ok());
            prop_assert!(!has_mono_book(&col, k, p + 1));
        }
    }
}

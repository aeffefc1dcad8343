mod common;

use common::path;
use proptest::prelude::*;
use pzero::embed::EmbeddedCoordinates;
use pzero::{
    build_signatures, center_of_gravity, embed, generate_er, rank_nodes, run_cascade, score_nodes,
    CascadeParams, ProjectionMatrix,
};

/// Hand-entered P5 distances for I = {0, 1, 2}; column u lists the
/// distances from 0, 1, 2 to u.
const P5_COLUMNS: [[f64; 3]; 5] = [
    [0.0, 1.0, 2.0],
    [1.0, 0.0, 1.0],
    [2.0, 1.0, 0.0],
    [3.0, 2.0, 1.0],
    [4.0, 3.0, 2.0],
];

fn p5_oracle() -> ([f64; 3], [f64; 5]) {
    let mut c = [0.0; 3];
    for col in &P5_COLUMNS[..3] {
        for l in 0..3 {
            c[l] += col[l] / 3.0;
        }
    }
    let mut d = [0.0; 5];
    for (u, col) in P5_COLUMNS.iter().enumerate() {
        d[u] = (0..3).map(|l| (col[l] - c[l]).powi(2)).sum::<f64>().sqrt();
    }
    (c, d)
}

#[test]
fn p5_exact_mode_example() {
    let (c_oracle, d_oracle) = p5_oracle();
    // frozen from the oracle above
    let frozen = [1.453, 0.667, 1.453, 2.404, 3.930];
    for u in 0..5 {
        assert!((d_oracle[u] - frozen[u]).abs() < 1e-3);
    }

    let f = build_signatures(&path(5), &[0, 1, 2]).unwrap();
    let x = embed(&f, &ProjectionMatrix::identity(3).unwrap()).unwrap();
    let c = center_of_gravity(&x, &[0, 1, 2]).unwrap();
    for l in 0..3 {
        assert!((c.0[l] - c_oracle[l]).abs() < 1e-12);
    }
    assert!((c.0[1] - 2.0 / 3.0).abs() < 1e-12);
    let d = score_nodes(&x, &c).unwrap();
    for u in 0..5 {
        assert!((d[u].unwrap() - d_oracle[u]).abs() < 1e-12);
    }
    let r = rank_nodes(&d, 0).unwrap();
    assert_eq!(r.ranking, [1, 0, 2, 3, 4]);
    assert_eq!(r.true_source_rank, 2);
    assert_eq!(r.pessimistic_rank, 3);
    assert_eq!(r.estimate(), 1);
}

#[test]
fn singleton_exact_scores_are_distances() {
    let g = generate_er(80, 0.08, 3).unwrap();
    let f = build_signatures(&g, &[11]).unwrap();
    let x = embed(&f, &ProjectionMatrix::identity(1).unwrap()).unwrap();
    let c = center_of_gravity(&x, &[11]).unwrap();
    let d = score_nodes(&x, &c).unwrap();
    let dist = pzero::bfs(&g, 11).unwrap();
    for u in 0..80 {
        assert_eq!(d[u], dist.get(u).map(f64::from));
    }
    assert_eq!(d[11], Some(0.0));
}

#[test]
fn singleton_exact_rank_one_on_connected_graph() {
    for seed in 0..10 {
        let g = generate_er(60, 0.3, seed).unwrap();
        let s = (seed as usize * 7) % 60;
        assert!(pzero::bfs(&g, s).unwrap().iter().all(|d| d.is_some()));
        let f = build_signatures(&g, &[s]).unwrap();
        let x = embed(&f, &ProjectionMatrix::identity(1).unwrap()).unwrap();
        let c = center_of_gravity(&x, &[s]).unwrap();
        let r = rank_nodes(&score_nodes(&x, &c).unwrap(), s).unwrap();
        assert_eq!(r.true_source_rank, 1);
    }
}

#[test]
fn excluded_nodes_fill_the_tail() {
    // two components: {0..4} path and {5, 6}
    let g = pzero::Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6)]).unwrap();
    let f = build_signatures(&g, &[1, 2]).unwrap();
    let x = embed(&f, &ProjectionMatrix::sample(3, 2, 1).unwrap()).unwrap();
    let c = center_of_gravity(&x, &[1, 2]).unwrap();
    let d = score_nodes(&x, &c).unwrap();
    assert_eq!((d[5], d[6]), (None, None));
    let r = rank_nodes(&d, 1).unwrap();
    assert_eq!(&r.ranking[5..], &[5, 6]);
    let r = rank_nodes(&d, 6).unwrap();
    assert_eq!(r.true_source_rank, 7);
}

#[test]
fn normalized_rank_is_rank_over_n() {
    for n in 1..200usize {
        let scores: Vec<_> = (0..n).map(|u| Some(u as f64)).collect();
        for s in [0, n / 2, n - 1] {
            let r = rank_nodes(&scores, s).unwrap();
            assert_eq!(r.true_source_rank, s + 1);
            assert_eq!(r.normalized_rank(), (s + 1) as f64 / n as f64);
            assert!(r.normalized_rank() > 0.0 && r.normalized_rank() <= 1.0);
        }
    }
}

fn cascade_embedding(seed: u64, k: usize) -> (EmbeddedCoordinates, Vec<usize>) {
    let g = generate_er(120, 0.05, seed).unwrap();
    let out = run_cascade(&g, 0, &CascadeParams::new(0.5, Some(3), seed).unwrap()).unwrap();
    let infected = out.infected();
    let f = build_signatures(&g, &infected).unwrap();
    let r = if k == 0 {
        ProjectionMatrix::identity(f.rows()).unwrap()
    } else {
        ProjectionMatrix::sample(k, f.rows(), seed).unwrap()
    };
    (embed(&f, &r).unwrap(), infected)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_invariance(seed in any::<u64>(), shuffle_seed in any::<u64>()) {
        let (x, infected) = cascade_embedding(seed, 0);
        let mut permuted = infected.clone();
        let mut rng = pzero::rng::rng_from(shuffle_seed);
        rand::seq::SliceRandom::shuffle(permuted.as_mut_slice(), &mut rng);
        let c1 = center_of_gravity(&x, &infected).unwrap();
        let c2 = center_of_gravity(&x, &permuted).unwrap();
        for (a, b) in c1.0.iter().zip(&c2.0) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        let d1 = score_nodes(&x, &c1).unwrap();
        let d2 = score_nodes(&x, &c2).unwrap();
        for (a, b) in d1.iter().zip(&d2) {
            match (a, b) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12),
                (None, None) => {}
                _ => prop_assert!(false, "exclusion differs"),
            }
        }
    }

    #[test]
    fn scaling_preserves_ranking(seed in any::<u64>(), lambda in prop::sample::select(vec![0.5, 2.0, 4.0, 0.25])) {
        // powers of two keep every operation exact
        let (x, infected) = cascade_embedding(seed, 5);
        let c = center_of_gravity(&x, &infected).unwrap();
        let xs = x.scaled(lambda);
        let cs = center_of_gravity(&xs, &infected).unwrap();
        let d = score_nodes(&x, &c).unwrap();
        let ds = score_nodes(&xs, &cs).unwrap();
        for (a, b) in d.iter().zip(&ds) {
            if let (Some(a), Some(b)) = (a, b) {
                prop_assert!((a * lambda - b).abs() <= 1e-9 * (1.0 + b.abs()));
            }
        }
        prop_assert_eq!(rank_nodes(&d, 0).unwrap().ranking, rank_nodes(&ds, 0).unwrap().ranking);
    }

    #[test]
    fn scores_nonnegative_zero_only_at_center(seed in any::<u64>()) {
        let (x, infected) = cascade_embedding(seed, 4);
        let c = center_of_gravity(&x, &infected).unwrap();
        let d = score_nodes(&x, &c).unwrap();
        for (u, s) in d.iter().enumerate() {
            if let Some(s) = s {
                prop_assert!(*s >= 0.0);
                prop_assert_eq!(*s == 0.0, x.column(u).unwrap() == c.as_slice());
            }
        }
    }

    #[test]
    fn ranking_is_sorted_permutation(scores in prop::collection::vec(prop::option::weighted(0.8, 0.0f64..5.0), 1..60), pick in any::<prop::sample::Index>()) {
        let s = pick.index(scores.len());
        let r = rank_nodes(&scores, s).unwrap();
        let mut seen = r.ranking.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
        let scored = scores.iter().filter(|x| x.is_some()).count();
        for w in r.ranking[..scored].windows(2) {
            let (a, b) = (scores[w[0]].unwrap(), scores[w[1]].unwrap());
            prop_assert!(a < b || (a == b && w[0] < w[1]));
        }
        prop_assert!(r.ranking[scored..].iter().all(|&u| scores[u].is_none()));
        prop_assert!(r.ranking[scored..].windows(2).all(|w| w[0] < w[1]));
        prop_assert!(r.pessimistic_rank >= r.true_source_rank);
        prop_assert_eq!(&rank_nodes(&scores, s).unwrap(), &r);
    }
}

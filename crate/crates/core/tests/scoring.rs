use dialogue_vad::lexicon::{parse_vad_lexicon, score_corpus, score_tokens, LoadOptions, Vad, VadLexicon};
use proptest::prelude::*;

const SYNTHETIC: &str = include_str!("../../../data/lexicon/synthetic_vad.tsv");

fn lexicon() -> VadLexicon {
    parse_vad_lexicon(SYNTHETIC, "synthetic", LoadOptions::default()).unwrap().value
}

/// Independent reference: walk every occurrence, sum, divide.
fn naive_means(tokens: &[String], entries: &[(&str, [f64; 3])]) -> (u64, Option<[f64; 3]>) {
    let mut sum = [0.0; 3];
    let mut n = 0u64;
    for t in tokens {
        for (term, v) in entries {
            if t == term {
                for k in 0..3 {
                    sum[k] += v[k];
                }
                n += 1;
            }
        }
    }
    (n, (n > 0).then(|| sum.map(|s| s / n as f64)))
}

fn entries() -> Vec<(&'static str, [f64; 3])> {
    SYNTHETIC
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0], [f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap()])
        })
        .collect()
}

#[test]
fn synthetic_fixture_round_trip() {
    let lex = lexicon();
    assert_eq!(lex.len(), 10);
    for (term, v) in entries() {
        assert_eq!(lex.lookup(term), Some(Vad::new(v[0], v[1], v[2])), "{term}");
    }
    assert_eq!(lex.lookup("joy"), Some(Vad::new(0.95, 0.60, 0.55)));
}

fn vocabulary() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => prop::sample::select(entries().into_iter().map(|e| e.0.to_string()).collect::<Vec<_>>()),
        1 => "[a-z]{1,6}",
    ]
}

fn token_list(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(vocabulary(), 0..=max)
}

fn close(a: Option<Vad>, b: Option<[f64; 3]>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => {
            (a.valence - b[0]).abs() <= tol && (a.arousal - b[1]).abs() <= tol && (a.dominance - b[2]).abs() <= tol
        }
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_naive_oracle(tokens in token_list(200)) {
        let lex = lexicon();
        let s = score_tokens(&tokens, &lex);
        let (n, means) = naive_means(&tokens, &entries());
        prop_assert_eq!(s.tokens_total, tokens.len() as u64);
        prop_assert_eq!(s.tokens_matched, n);
        prop_assert!(close(s.means, means, 1e-12));
    }

    #[test]
    fn means_stay_within_matched_range(tokens in token_list(60)) {
        let lex = lexicon();
        let s = score_tokens(&tokens, &lex);
        prop_assert!(s.tokens_matched <= s.tokens_total);
        prop_assert_eq!(s.means.is_some(), s.tokens_matched > 0);
        if let Some(m) = s.means {
            let matched: Vec<Vad> = tokens.iter().filter_map(|t| lex.lookup(t)).collect();
            for get in [|v: &Vad| v.valence, |v: &Vad| v.arousal, |v: &Vad| v.dominance] {
                let lo = matched.iter().map(get).fold(f64::INFINITY, f64::min);
                let hi = matched.iter().map(get).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(lo <= get(&m) && get(&m) <= hi);
                prop_assert!((0.0..=1.0).contains(&get(&m)));
            }
        }
    }

    #[test]
    fn permutation_invariant(tokens in token_list(60), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let lex = lexicon();
        let mut shuffled = tokens.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(score_tokens(&tokens, &lex), score_tokens(&shuffled, &lex));
    }

    #[test]
    fn concatenation_is_count_weighted(a in token_list(50), b in token_list(50)) {
        let lex = lexicon();
        let (sa, sb) = (score_tokens(&a, &lex), score_tokens(&b, &lex));
        let joined: Vec<String> = a.iter().chain(&b).cloned().collect();
        let sj = score_tokens(&joined, &lex);
        prop_assert_eq!(sj.tokens_total, sa.tokens_total + sb.tokens_total);
        prop_assert_eq!(sj.tokens_matched, sa.tokens_matched + sb.tokens_matched);
        let weighted = match (sa.means, sb.means) {
            (None, None) => None,
            (Some(m), None) => Some([m.valence, m.arousal, m.dominance]),
            (None, Some(m)) => Some([m.valence, m.arousal, m.dominance]),
            (Some(x), Some(y)) => {
                let (na, nb) = (sa.tokens_matched as f64, sb.tokens_matched as f64);
                let w = |p: f64, q: f64| (p * na + q * nb) / (na + nb);
                Some([w(x.valence, y.valence), w(x.arousal, y.arousal), w(x.dominance, y.dominance)])
            }
        };
        prop_assert!(close(sj.means, weighted, 1e-12));
    }

    #[test]
    fn aggregate_pools_occurrences(chapters in prop::collection::vec(prop::collection::vec(token_list(20), 0..4), 1..6)) {
        let lex = lexicon();
        let input: Vec<(u32, Vec<Vec<String>>)> =
            chapters.iter().enumerate().map(|(i, c)| (i as u32 + 1, c.clone())).collect();
        let scores = score_corpus(&input, &lex);
        prop_assert_eq!(scores.chapters.len(), chapters.len());
        let pooled: Vec<String> = chapters.iter().flatten().flatten().cloned().collect();
        let (n, means) = naive_means(&pooled, &entries());
        prop_assert_eq!(scores.overall.tokens_matched, n);
        prop_assert!(close(scores.overall.means, means, 1e-12));
    }
}

#[test]
fn rescale_endpoints_are_exact() {
    let lex = parse_vad_lexicon("a\t-1\t0\t1\n", "x", LoadOptions { rescale: true }).unwrap().value;
    assert_eq!(lex.lookup("a"), Some(Vad::new(0.0, 0.5, 1.0)));
}

#[test]
fn aggregate_is_not_mean_of_means() {
    let lex = lexicon();
    // chapter 1: joy x3, chapter 2: death x1
    let input = vec![(1, vec![vec!["joy"; 3]]), (2, vec![vec!["death"]])];
    let scores = score_corpus(&input, &lex);
    let pooled = (3.0 * 0.95 + 0.0) / 4.0;
    assert!((scores.overall.means.unwrap().valence - pooled).abs() < 1e-12);
    let mean_of_means = (0.95 + 0.0) / 2.0;
    assert!((scores.overall.means.unwrap().valence - mean_of_means).abs() > 0.1);
}

use std::collections::{BTreeMap, HashMap, VecDeque};

use kmx_core::affweyl::{build_affine_weyl, evaluate_poly, length_histogram, AffineWeylElement, AffineWeylGroup};
use kmx_core::rootsys::{build_root_system, TypeLabel};

fn group(label: TypeLabel, rank: usize) -> AffineWeylGroup {
    build_affine_weyl(&build_root_system(label, rank).unwrap())
}

/// Word-enumeration oracle: BFS depth is the length, coset length is the minimum
/// over elements with the same image of the origin.
fn brute_force(g: &AffineWeylGroup, max_len: usize) -> (HashMap<AffineWeylElement, usize>, BTreeMap<Vec<i64>, usize>) {
    let id = g.identity();
    let mut seen = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let l = seen[&w];
        if l == max_len {
            continue;
        }
        for s in 0..=g.rank() {
            let next = g.compose(&w, g.generator(s));
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), l + 1);
                queue.push_back(next);
            }
        }
    }
    let mut cosets = BTreeMap::new();
    for (w, &l) in &seen {
        let e = cosets.entry(g.apply(w, &vec![0; g.rank()])).or_insert(l);
        *e = (*e).min(l);
    }
    (seen, cosets)
}

#[test]
fn lengths_agree_with_word_enumeration() {
    for (label, rank) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::C, 2)] {
        let g = group(label, rank);
        let (elements, cosets) = brute_force(&g, 6);
        for (w, &l) in &elements {
            assert_eq!(g.length(w), l, "{label}{rank}");
        }
        // every coset met by a word of length ≤ 6 has its minimal element among them
        for (mu, &l) in &cosets {
            assert_eq!(g.coset_min_length(mu), l, "{label}{rank} {mu:?}");
        }
    }
}

#[test]
fn reduced_words_multiply_back() {
    let g = group(TypeLabel::C, 2);
    let (elements, _) = brute_force(&g, 5);
    for (w, &l) in &elements {
        let word = g.reduced_word(w);
        assert_eq!(word.len(), l);
        assert_eq!(&g.from_word(&word), w);
    }
}

#[test]
fn a1_has_one_coset_per_length() {
    let g = group(TypeLabel::A, 1);
    let cosets = g.enumerate_cosets_upto(8);
    let hist = length_histogram(&cosets);
    assert_eq!(hist, (0..=8).map(|l| (l, 1)).collect());
}

#[test]
fn a2_small_counts_match_brute_force() {
    let g = group(TypeLabel::A, 2);
    let (_, cosets) = brute_force(&g, 2 + 3);
    let brute = cosets.values().filter(|&&l| l <= 2).count();
    assert_eq!(g.enumerate_cosets_upto(2).len(), brute);
    assert_eq!(g.enumerate_cosets_upto(0).len(), 1);
}

#[test]
fn coset_order_examples() {
    let g = group(TypeLabel::A, 1);
    let cosets = g.enumerate_cosets_upto(3);
    let base = &cosets[0].cocharacter;
    for c in &cosets {
        assert!(g.bruhat_leq_coset(&c.cocharacter, &c.cocharacter));
        assert!(g.bruhat_leq_coset(base, &c.cocharacter));
    }
    assert!(g.bruhat_leq_coset(&cosets[1].cocharacter, &cosets[2].cocharacter));
    assert!(!g.bruhat_leq_coset(&cosets[2].cocharacter, &cosets[1].cocharacter));
}

#[test]
fn a2_poincare_polynomials_are_interval_sizes() {
    let g = group(TypeLabel::A, 2);
    let cosets = g.enumerate_cosets_upto(4);
    for c in &cosets {
        let p = g.schubert_poincare_poly(&c.cocharacter);
        assert_eq!(p.len(), c.min_length + 1);
        assert_eq!(p[0], 1);
        assert_eq!(*p.last().unwrap(), 1);
        let below = cosets.iter().filter(|u| g.bruhat_leq_coset(&u.cocharacter, &c.cocharacter)).count() as u128;
        assert_eq!(evaluate_poly(&p, 1), below);
    }
}

#[test]
fn sl_cocharacters_round_trip() {
    let g = group(TypeLabel::A, 3);
    for c in g.enumerate_cosets_upto(4) {
        let n = c.sl_cocharacter.clone().unwrap();
        assert_eq!(n.iter().sum::<i64>(), 0);
        assert_eq!(g.from_sl_cocharacter(&n).unwrap(), c.cocharacter);
    }
    assert!(group(TypeLabel::B, 2).from_sl_cocharacter(&[1, -1, 0]).is_err());
}

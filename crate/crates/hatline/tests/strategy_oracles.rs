//! Cross-checks the line strategies against straight-line constructions
//! that never touch the decision machinery: expected transcripts are built
//! from the whole assignment at once, while the strategies only ever see
//! one speaker's view.

use std::collections::BTreeSet;

use hatline::{
    run_transcript, AssignmentSpace, Assignment, Builtin, ColorId, PuzzleSpec,
};

fn zero_sum(sum: u64, modulus: u32) -> u32 {
    let m = u64::from(modulus);
    ((m - (sum % m)) % m) as u32
}

/// Expected announcements (by position) for the zero-sum family: the back
/// speaker balances the colors it sees, everyone else states their true
/// color.
fn expected_zero_sum_announcements(hats: &[u32], modulus: u32) -> Vec<u32> {
    let n = hats.len();
    let seen: u64 = hats[..n - 1].iter().map(|&h| u64::from(h)).sum();
    let mut announced = hats.to_vec();
    announced[n - 1] = zero_sum(seen, modulus);
    announced
}

fn raw(a: &Assignment) -> Vec<u32> {
    a.hats().iter().map(|c| c.0).collect()
}

fn announced_by_position(spec: &PuzzleSpec, strategy: &Builtin, a: &Assignment) -> (Vec<u32>, BTreeSet<usize>, u64) {
    let run = run_transcript(spec, strategy, a).unwrap();
    let mut by_position = vec![u32::MAX; spec.n()];
    for (speaker, color) in run.transcript.guesses() {
        by_position[speaker] = color.0;
    }
    (by_position, run.mistakes, run.violations)
}

#[test]
fn parity_matches_the_straight_line_oracle() {
    for n in 1..=10 {
        let spec = PuzzleSpec::Repeated { n, colors: 2 };
        for a in AssignmentSpace::new(&spec).unwrap().iter() {
            let (got, mistakes, _) = announced_by_position(&spec, &Builtin::Parity, &a);
            let want = expected_zero_sum_announcements(&raw(&a), 2);
            assert_eq!(got, want, "hats {:?}", raw(&a));
            let back_wrong = want[n - 1] != raw(&a)[n - 1];
            let expected_mistakes: BTreeSet<usize> =
                if back_wrong { BTreeSet::from([n - 1]) } else { BTreeSet::new() };
            assert_eq!(mistakes, expected_mistakes);
        }
    }
}

#[test]
fn modular_sum_matches_the_straight_line_oracle() {
    for n in 1..=6 {
        for colors in 2..=5 {
            let spec = PuzzleSpec::Repeated { n, colors };
            for a in AssignmentSpace::new(&spec).unwrap().iter() {
                let (got, _, _) = announced_by_position(&spec, &Builtin::ModularSum, &a);
                assert_eq!(got, expected_zero_sum_announcements(&raw(&a), colors));
            }
        }
    }
}

#[test]
fn copy_front_and_same_different_match_their_constructions() {
    let spec = PuzzleSpec::Repeated { n: 2, colors: 2 };
    for a in AssignmentSpace::new(&spec).unwrap().iter() {
        let (got, _, _) = announced_by_position(&spec, &Builtin::CopyFront, &a);
        let h = raw(&a);
        assert_eq!(got, vec![h[0], h[0]]);
    }
    let spec = PuzzleSpec::Repeated { n: 3, colors: 2 };
    for a in AssignmentSpace::new(&spec).unwrap().iter() {
        let (got, _, _) = announced_by_position(&spec, &Builtin::SameDifferent, &a);
        let h = raw(&a);
        let signal = if h[0] == h[1] { 0 } else { 1 };
        assert_eq!(got, vec![h[0], h[1], signal]);
    }
}

#[test]
fn parity_equals_modular_sum_transcripts_for_two_colors() {
    for n in 1..=10 {
        let spec = PuzzleSpec::Repeated { n, colors: 2 };
        for a in AssignmentSpace::new(&spec).unwrap().iter() {
            let parity = run_transcript(&spec, &Builtin::Parity, &a).unwrap();
            let modular = run_transcript(&spec, &Builtin::ModularSum, &a).unwrap();
            assert_eq!(parity.transcript, modular.transcript, "hats {:?}", raw(&a));
        }
    }
}

/// Who wears the opener color decides the mistake count exactly:
/// the back itself — none; nobody — one; the front — two; a middle
/// logician — three.
#[test]
fn distinct3_obeys_the_four_case_law() {
    for n in 3..=6 {
        let spec = PuzzleSpec::Distinct { n };
        let modulus = n as u32 + 1;
        let mut seen_counts = BTreeSet::new();
        for a in AssignmentSpace::new(&spec).unwrap().iter() {
            let h = raw(&a);
            let opener = zero_sum(h[..n - 1].iter().map(|&x| u64::from(x)).sum(), modulus);
            let wearer = h.iter().position(|&x| x == opener);
            let expected = match wearer {
                Some(p) if p == n - 1 => 0,
                None => 1,
                Some(0) => 2,
                Some(_) => 3,
            };
            let (_, mistakes, violations) = announced_by_position(&spec, &Builtin::Distinct3, &a);
            assert_eq!(violations, 0, "hats {h:?}");
            assert_eq!(mistakes.len(), expected, "hats {h:?}, opener {opener}");
            let mut allowed = BTreeSet::from([0, n - 1]);
            if let Some(p) = wearer {
                allowed.insert(p);
            }
            assert!(
                mistakes.is_subset(&allowed),
                "hats {h:?}: mistakes {mistakes:?} outside {allowed:?}"
            );
            seen_counts.insert(expected);
        }
        // All four cases actually occur at every size.
        assert_eq!(seen_counts, BTreeSet::from([0, 1, 2, 3]), "n={n}");
    }
}

#[test]
fn distinct3_transcripts_never_repeat_a_color() {
    for n in 2..=6 {
        let spec = PuzzleSpec::Distinct { n };
        for a in AssignmentSpace::new(&spec).unwrap().iter() {
            let run = run_transcript(&spec, &Builtin::Distinct3, &a).unwrap();
            let colors: Vec<ColorId> = run.transcript.guesses().map(|(_, c)| c).collect();
            let distinct: BTreeSet<ColorId> = colors.iter().copied().collect();
            assert_eq!(colors.len(), distinct.len(), "hats {:?}", raw(&a));
        }
    }
}

#[test]
fn distinct3_dodges_at_most_once() {
    for n in 3..=6 {
        let spec = PuzzleSpec::Distinct { n };
        for a in AssignmentSpace::new(&spec).unwrap().iter() {
            let run = run_transcript(&spec, &Builtin::Distinct3, &a).unwrap();
            let front_hat = a.hat(0);
            let dodges = run
                .transcript
                .guesses()
                .filter(|&(speaker, c)| speaker != 0 && speaker != n - 1 && c == front_hat)
                .count();
            assert!(dodges <= 1, "hats {:?}", raw(&a));
        }
    }
}

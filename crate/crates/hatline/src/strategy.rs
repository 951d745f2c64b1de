//! The named guessing strategies, each a deterministic rule from what a
//! speaker sees and hears to the color it announces.

use crate::error::{Error, Result};
use crate::puzzle::{ColorId, PuzzleSpec, Transcript, View};

/// A pre-agreed deterministic decision rule. `decide` may not look at the
/// speaker's own hat and must be a pure function of its arguments.
pub trait Strategy: Sync {
    fn id(&self) -> &str;

    /// Speaking order; the back of the line starts by default.
    fn speaking_order(&self, n: usize) -> Vec<usize> {
        (0..n).rev().collect()
    }

    /// The color announced in this situation, or `None` when the strategy
    /// has no rule for it (surfaced by the verifier as a strategy bug).
    fn decide(
        &self,
        spec: &PuzzleSpec,
        position: usize,
        seen: &View<'_>,
        heard: &Transcript,
    ) -> Option<ColorId>;

    /// Whether this strategy applies to the given puzzle at all.
    fn check_spec(&self, spec: &PuzzleSpec) -> Result<()>;
}

/// The built-in strategies, selectable by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Two logicians: the back names the front hat, the front repeats it.
    CopyFront,
    /// Three logicians, two colors: the back signals whether the two front
    /// hats match (red = same, blue = different).
    SameDifferent,
    /// Two colors, any length: the back encodes the parity it sees; red
    /// announces an even count of blue hats, which makes every transcript
    /// coincide with the mod-2 sum strategy.
    Parity,
    /// Any number of colors: the back announces the color that makes the
    /// total sum zero mod N; everyone else solves for their own color.
    ModularSum,
    /// Distinct colors, no repeats: zero-sum opener with a dodge for the
    /// logician wearing the announced color; at most three mistakes.
    Distinct3,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::CopyFront,
        Builtin::SameDifferent,
        Builtin::Parity,
        Builtin::ModularSum,
        Builtin::Distinct3,
    ];

    pub fn from_id(id: &str) -> Option<Builtin> {
        Builtin::ALL.iter().copied().find(|b| b.name() == id)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::CopyFront => "copy_front",
            Builtin::SameDifferent => "same_different",
            Builtin::Parity => "parity",
            Builtin::ModularSum => "modular_sum",
            Builtin::Distinct3 => "distinct3",
        }
    }

    /// The documented worst-case number of mistakes this strategy may make.
    pub fn guaranteed_worst_case(&self) -> usize {
        match self {
            Builtin::Distinct3 => 3,
            _ => 1,
        }
    }
}

/// `(-(sum)) mod modulus` — the announcement that would make the total zero.
fn zero_sum_color(sum: u64, modulus: u32) -> ColorId {
    let m = u64::from(modulus);
    ColorId(((m - (sum % m)) % m) as u32)
}

impl Strategy for Builtin {
    fn id(&self) -> &str {
        self.name()
    }

    fn decide(
        &self,
        spec: &PuzzleSpec,
        position: usize,
        seen: &View<'_>,
        heard: &Transcript,
    ) -> Option<ColorId> {
        match self {
            Builtin::CopyFront => {
                if position == 1 {
                    seen.get(0)
                } else {
                    heard.guesses().next().map(|(_, c)| c)
                }
            }
            Builtin::SameDifferent => {
                let same = ColorId(0);
                let different = ColorId(1);
                let flip = |c: ColorId| ColorId(1 - c.0);
                match position {
                    2 => {
                        // Signal whether the two front hats match.
                        let front = seen.get(0)?;
                        let middle = seen.get(1)?;
                        Some(if front == middle { same } else { different })
                    }
                    1 => {
                        let signal = heard.guesses().next()?.1;
                        let front = seen.get(0)?;
                        Some(if signal == same { front } else { flip(front) })
                    }
                    _ => {
                        let mut guesses = heard.guesses();
                        let signal = guesses.next()?.1;
                        let middle = guesses.next()?.1;
                        Some(if signal == same { middle } else { flip(middle) })
                    }
                }
            }
            Builtin::Parity => {
                // Count blue among hats seen and announcements heard; red
                // says the count is even. Red first would flip the back
                // speaker's word whenever it sees an odd number of hats,
                // and the blue count is exactly the sum mod 2.
                let blue = ColorId(1);
                let seen_blues = seen.iter().filter(|&(_, c)| c == blue).count();
                let heard_blues = heard.guesses().filter(|&(_, c)| c == blue).count();
                Some(if (seen_blues + heard_blues) % 2 == 0 { ColorId(0) } else { blue })
            }
            Builtin::ModularSum => {
                let modulus = spec.colors();
                let heard_sum: u64 = heard.guesses().map(|(_, c)| u64::from(c.0)).sum();
                Some(zero_sum_color(seen.color_sum() + heard_sum, modulus))
            }
            Builtin::Distinct3 => decide_distinct3(spec, position, seen, heard),
        }
    }

    fn check_spec(&self, spec: &PuzzleSpec) -> Result<()> {
        spec.validate()?;
        let fail = |reason: String| {
            Err(Error::UnsupportedStrategy { id: self.name().to_string(), reason })
        };
        match (self, spec) {
            (Builtin::CopyFront, PuzzleSpec::Repeated { n: 2, colors: 2 }) => Ok(()),
            (Builtin::CopyFront, _) => fail("needs exactly two logicians and two colors".into()),
            (Builtin::SameDifferent, PuzzleSpec::Repeated { n: 3, colors: 2 }) => Ok(()),
            (Builtin::SameDifferent, _) => {
                fail("needs exactly three logicians and two colors".into())
            }
            (Builtin::Parity, PuzzleSpec::Repeated { colors: 2, .. }) => Ok(()),
            (Builtin::Parity, _) => fail("needs the two-color repeated puzzle".into()),
            (Builtin::ModularSum, PuzzleSpec::Repeated { .. }) => Ok(()),
            (Builtin::ModularSum, _) => fail("needs the repeated-colors puzzle".into()),
            (Builtin::Distinct3, PuzzleSpec::Distinct { .. }) => Ok(()),
            (Builtin::Distinct3, _) => fail("needs the distinct-colors puzzle".into()),
        }
    }
}

/// The rescue strategy for the distinct-colors puzzle.
///
/// The back announces the color that would make the total sum zero mod N.
/// The logician actually wearing that color cannot repeat it, so it
/// announces the front hat instead; everyone who can see the front hat
/// recognizes that announcement as the forced substitution (an honest
/// middle announcement can never equal the front hat, hats being distinct)
/// and puts the opener's color back into the sum. The front speaker hears
/// everything but sees nothing, so it trusts the announcements; when its
/// candidate is already taken it falls back to the smallest unannounced
/// color.
fn decide_distinct3(
    spec: &PuzzleSpec,
    position: usize,
    seen: &View<'_>,
    heard: &Transcript,
) -> Option<ColorId> {
    let modulus = spec.colors();
    if heard.is_empty() {
        // Back of the line speaks first.
        return Some(zero_sum_color(seen.color_sum(), modulus));
    }
    let mut guesses = heard.guesses().map(|(_, c)| c);
    let opener = guesses.next()?;
    if position > 0 {
        let front = seen.get(0)?;
        let mut sum = seen.color_sum() + u64::from(opener.0);
        for g in guesses {
            let value = if g == front { opener } else { g };
            sum += u64::from(value.0);
        }
        let candidate = zero_sum_color(sum, modulus);
        if candidate == opener {
            // Our own color was taken by the opener: dodge.
            Some(front)
        } else {
            Some(candidate)
        }
    } else {
        let sum: u64 = heard.guesses().map(|(_, c)| u64::from(c.0)).sum();
        let candidate = zero_sum_color(sum, modulus);
        if !heard.contains_guess(candidate) {
            Some(candidate)
        } else {
            (0..modulus).map(ColorId).find(|&c| !heard.contains_guess(c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::{Announcement, Assignment};

    fn decide_at(strategy: &dyn Strategy, spec: &PuzzleSpec, hats: &[u32], heard: &[u32], position: usize) -> ColorId {
        let assignment = Assignment::from_indices(hats);
        let view = View::new(spec.visibility(), assignment.hats(), position);
        let mut transcript = Transcript::new();
        for (i, &c) in heard.iter().enumerate() {
            transcript.push(spec.n() - 1 - i, Announcement::Guess(ColorId(c)));
        }
        strategy.decide(spec, position, &view, &transcript).expect("decision")
    }

    #[test]
    fn copy_front_names_the_front_hat() {
        let spec = PuzzleSpec::Repeated { n: 2, colors: 2 };
        // Front wears blue, back wears red.
        assert_eq!(decide_at(&Builtin::CopyFront, &spec, &[1, 0], &[], 1), ColorId(1));
        assert_eq!(decide_at(&Builtin::CopyFront, &spec, &[1, 0], &[1], 0), ColorId(1));
    }

    #[test]
    fn same_different_signals_and_decodes() {
        let spec = PuzzleSpec::Repeated { n: 3, colors: 2 };
        // Front to back B,R,R: the back sees different colors and says blue;
        // the middle sees blue ahead and flips to red; the front flips the
        // middle's word back to blue.
        assert_eq!(decide_at(&Builtin::SameDifferent, &spec, &[1, 0, 0], &[], 2), ColorId(1));
        assert_eq!(decide_at(&Builtin::SameDifferent, &spec, &[1, 0, 0], &[1], 1), ColorId(0));
        assert_eq!(decide_at(&Builtin::SameDifferent, &spec, &[1, 0, 0], &[1, 0], 0), ColorId(1));
        // All red: "same" happens to match the back's own hat.
        assert_eq!(decide_at(&Builtin::SameDifferent, &spec, &[0, 0, 0], &[], 2), ColorId(0));
    }

    #[test]
    fn modular_sum_balances_to_zero() {
        // The back sees colors 2,1,0,1 (sum 4) and announces 2, since
        // (2 + 4) mod 3 = 0.
        let spec = PuzzleSpec::Repeated { n: 5, colors: 3 };
        assert_eq!(decide_at(&Builtin::ModularSum, &spec, &[2, 1, 0, 1, 0], &[], 4), ColorId(2));
    }

    #[test]
    fn parity_lone_logician_guesses_red() {
        let spec = PuzzleSpec::Repeated { n: 1, colors: 2 };
        assert_eq!(decide_at(&Builtin::Parity, &spec, &[1], &[], 0), ColorId(0));
    }

    #[test]
    fn preconditions_reject_wrong_shapes() {
        assert!(Builtin::CopyFront.check_spec(&PuzzleSpec::Repeated { n: 3, colors: 2 }).is_err());
        assert!(Builtin::SameDifferent.check_spec(&PuzzleSpec::Repeated { n: 3, colors: 3 }).is_err());
        assert!(Builtin::Parity.check_spec(&PuzzleSpec::Repeated { n: 5, colors: 3 }).is_err());
        assert!(Builtin::ModularSum.check_spec(&PuzzleSpec::Distinct { n: 4 }).is_err());
        assert!(Builtin::Distinct3.check_spec(&PuzzleSpec::Repeated { n: 4, colors: 5 }).is_err());
        assert!(Builtin::Parity.check_spec(&PuzzleSpec::Repeated { n: 7, colors: 2 }).is_ok());
    }

    #[test]
    fn ids_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(Builtin::from_id(b.name()), Some(b));
        }
        assert_eq!(Builtin::from_id("nope"), None);
    }
}

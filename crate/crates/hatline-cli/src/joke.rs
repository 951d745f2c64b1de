//! Renders a transcript as the classic bar joke: an opening line, the
//! waitress's question, and one answer per speaker.

use hatline::{Announcement, Error, Palette, Result, Transcript};

const COUNT_WORDS: [&str; 12] = [
    "One", "Two", "Three", "Four", "Five", "Six", "Seven", "Eight", "Nine", "Ten", "Eleven",
    "Twelve",
];

const ORDINAL_WORDS: [&str; 12] = [
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth",
    "eleventh", "twelfth",
];

fn count_word(n: usize) -> String {
    COUNT_WORDS
        .get(n - 1)
        .map(|w| w.to_string())
        .unwrap_or_else(|| n.to_string())
}

fn ordinal_word(k: usize) -> String {
    if let Some(w) = ORDINAL_WORDS.get(k - 1) {
        return w.to_string();
    }
    let suffix = match (k % 10, k % 100) {
        (1, 11) | (2, 12) | (3, 13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{k}{suffix}")
}

/// Deterministic prose for a transcript; byte-identical output for
/// identical inputs.
pub fn render_joke(transcript: &Transcript, palette: &Palette, question: &str) -> Result<String> {
    if transcript.is_empty() {
        return Err(Error::Parse("cannot retell an empty transcript".into()));
    }
    let n = transcript.len();
    let mut lines = Vec::with_capacity(n + 1);
    if n == 1 {
        lines.push(format!("One logician walks into a bar. The waitress asks, \"{question}\""));
    } else {
        lines.push(format!(
            "{} logicians walk into a bar. The waitress asks, \"{question}\"",
            count_word(n)
        ));
    }
    for (k, entry) in transcript.entries.iter().enumerate() {
        let answer = match entry.announcement {
            Announcement::DontKnow => "I do not know.".to_string(),
            Announcement::Know(_) => "Yes.".to_string(),
            Announcement::Guess(c) => format!("{}.", palette.title_name(c)),
        };
        lines.push(format!("The {} logician answers, \"{answer}\"", ordinal_word(k + 1)));
    }
    Ok(lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hatline::{ColorId, PuzzleSpec, Visibility};

    fn bar_palette() -> Palette {
        Palette::default_for(&PuzzleSpec::Limited {
            n: 3,
            counts: vec![3, 2],
            visibility: Visibility::Complete,
        })
    }

    #[test]
    fn bar_dialogue_is_byte_exact() {
        let mut transcript = Transcript::new();
        transcript.push(0, Announcement::DontKnow);
        transcript.push(1, Announcement::DontKnow);
        transcript.push(2, Announcement::Know(ColorId(0)));
        let joke = render_joke(
            &transcript,
            &bar_palette(),
            "Do you know the color of your own hat?",
        )
        .unwrap();
        assert_eq!(
            joke,
            "Three logicians walk into a bar. The waitress asks, \"Do you know the color of your own hat?\"\n\
             The first logician answers, \"I do not know.\"\n\
             The second logician answers, \"I do not know.\"\n\
             The third logician answers, \"Yes.\""
        );
    }

    #[test]
    fn single_speaker_gets_two_lines() {
        let mut transcript = Transcript::new();
        transcript.push(0, Announcement::Know(ColorId(0)));
        let joke = render_joke(&transcript, &bar_palette(), "Q?").unwrap();
        assert_eq!(
            joke,
            "One logician walks into a bar. The waitress asks, \"Q?\"\n\
             The first logician answers, \"Yes.\""
        );
    }

    #[test]
    fn color_guesses_become_color_names() {
        let spec = PuzzleSpec::Repeated { n: 2, colors: 2 };
        let palette = Palette::default_for(&spec);
        let mut transcript = Transcript::new();
        transcript.push(1, Announcement::Guess(ColorId(1)));
        transcript.push(0, Announcement::Guess(ColorId(0)));
        let joke = render_joke(&transcript, &palette, "Q?").unwrap();
        assert!(joke.contains("The first logician answers, \"Blue.\""));
        assert!(joke.contains("The second logician answers, \"Red.\""));
    }

    #[test]
    fn rendering_is_deterministic() {
        let mut transcript = Transcript::new();
        for i in 0..13 {
            transcript.push(i, Announcement::DontKnow);
        }
        let palette = bar_palette();
        let a = render_joke(&transcript, &palette, "Q?").unwrap();
        let b = render_joke(&transcript, &palette, "Q?").unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("13 logicians walk into a bar."));
        assert!(a.ends_with("The 13th logician answers, \"I do not know.\""));
    }

    #[test]
    fn empty_transcripts_are_rejected() {
        assert!(render_joke(&Transcript::new(), &bar_palette(), "Q?").is_err());
    }
}

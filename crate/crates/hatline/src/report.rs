//! JSON documents emitted by the command-line tools. Field order is fixed
//! by the struct declarations and nothing is floating-point, so parsing a
//! document and re-serializing it reproduces the bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::puzzle::{Announcement, ColorId, Palette, PuzzleSpec, Transcript};
use crate::synth::{DecisionTable, SynthesisResult};
use crate::verify::{VerificationReport, VerifyMode};

/// The verification report as written to stdout or a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDoc {
    pub puzzle: String,
    pub strategy_id: String,
    pub mode: VerifyMode,
    pub assignments_checked: u64,
    pub worst_case_mistakes: usize,
    pub guaranteed_correct_positions: Vec<usize>,
    pub counterexample: Option<String>,
    pub violations_total: u64,
    pub elapsed_ms: u64,
}

impl ReportDoc {
    pub fn new(
        spec: &PuzzleSpec,
        palette: &Palette,
        strategy_id: &str,
        report: &VerificationReport,
        elapsed_ms: u64,
    ) -> ReportDoc {
        ReportDoc {
            puzzle: spec.description(),
            strategy_id: strategy_id.to_string(),
            mode: report.mode,
            assignments_checked: report.assignments_checked,
            worst_case_mistakes: report.worst_case_mistakes,
            guaranteed_correct_positions: report.guaranteed_correct.iter().copied().collect(),
            counterexample: report
                .counterexample
                .as_ref()
                .map(|a| palette.assignment_string(a)),
            violations_total: report.violations_total,
            elapsed_ms,
        }
    }
}

/// A transcript with enough context to retell it: emitted by
/// `verify --run` and by `epistemic --assignment`, consumed by `joke --from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranscriptDoc {
    pub puzzle: String,
    pub question: String,
    pub palette: Vec<String>,
    pub entries: Vec<TranscriptEntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranscriptEntryDoc {
    /// 1-based index in speaking order.
    pub speaker: usize,
    /// 0-based position in the line, front first.
    pub position: usize,
    pub announcement: AnnouncementDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum AnnouncementDoc {
    Color { color: String },
    Know { color: String },
    DontKnow,
}

/// The question the waitress asks in the hat version of the joke.
pub const HAT_QUESTION: &str = "Do you know the color of your own hat?";

impl TranscriptDoc {
    pub fn new(
        spec: &PuzzleSpec,
        palette: &Palette,
        question: &str,
        transcript: &Transcript,
    ) -> TranscriptDoc {
        let entries = transcript
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| TranscriptEntryDoc {
                speaker: i + 1,
                position: e.speaker,
                announcement: match e.announcement {
                    Announcement::Guess(c) => AnnouncementDoc::Color { color: palette.name(c) },
                    Announcement::Know(c) => AnnouncementDoc::Know { color: palette.name(c) },
                    Announcement::DontKnow => AnnouncementDoc::DontKnow,
                },
            })
            .collect();
        TranscriptDoc {
            puzzle: spec.description(),
            question: question.to_string(),
            palette: palette.all_names(),
            entries,
        }
    }

    /// Reconstructs the in-memory transcript and palette for rendering.
    pub fn decode(&self) -> Result<(Transcript, Palette)> {
        let palette = Palette::named(self.palette.clone())?;
        let mut transcript = Transcript::new();
        let color_of = |name: &str| -> Result<ColorId> {
            self.palette
                .iter()
                .position(|n| n == name)
                .map(|i| ColorId(i as u32))
                .ok_or_else(|| Error::Parse(format!("color `{name}` not in the palette")))
        };
        for entry in &self.entries {
            let announcement = match &entry.announcement {
                AnnouncementDoc::Color { color } => Announcement::Guess(color_of(color)?),
                AnnouncementDoc::Know { color } => Announcement::Know(color_of(color)?),
                AnnouncementDoc::DontKnow => Announcement::DontKnow,
            };
            transcript.push(entry.position, announcement);
        }
        Ok((transcript, palette))
    }
}

/// Answer to a deduction query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeduceDoc {
    pub puzzle: String,
    /// 1-based logician number, in speaking order.
    pub query: usize,
    pub colors: Vec<String>,
}

/// Synthesis output: the optimum and the witness table, row per
/// information set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SynthDoc {
    pub puzzle: String,
    pub min_guaranteed_mistakes: usize,
    pub nodes_explored: u64,
    pub witness: Vec<WitnessRowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessRowDoc {
    pub speaker: usize,
    pub seen: Vec<u32>,
    pub heard: Vec<u32>,
    pub announce: u32,
}

impl SynthDoc {
    pub fn new(spec: &PuzzleSpec, result: &SynthesisResult) -> SynthDoc {
        SynthDoc {
            puzzle: spec.description(),
            min_guaranteed_mistakes: result.min_guaranteed_mistakes,
            nodes_explored: result.nodes_explored,
            witness: result.witness.as_ref().map(witness_rows).unwrap_or_default(),
        }
    }
}

pub fn witness_rows(table: &DecisionTable) -> Vec<WitnessRowDoc> {
    table
        .rows()
        .iter()
        .map(|row| WitnessRowDoc {
            speaker: row.info.speaker,
            seen: row.info.seen.iter().map(|c| c.0).collect(),
            heard: row.info.heard.iter().map(|c| c.0).collect(),
            announce: row.announce.0,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::Builtin;
    use crate::verify::verify_exhaustive;

    #[test]
    fn report_doc_round_trips_bytes() {
        let spec = PuzzleSpec::Repeated { n: 5, colors: 2 };
        let palette = Palette::default_for(&spec);
        let report = verify_exhaustive(&spec, &Builtin::Parity).unwrap();
        let doc = ReportDoc::new(&spec, &palette, "parity", &report, 3);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: ReportDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);
        assert_eq!(parsed.worst_case_mistakes, 1);
        assert_eq!(parsed.guaranteed_correct_positions, vec![0, 1, 2, 3]);
    }

    #[test]
    fn transcript_doc_decodes_back() {
        let spec = PuzzleSpec::Repeated { n: 2, colors: 2 };
        let palette = Palette::default_for(&spec);
        let mut transcript = Transcript::new();
        transcript.push(1, Announcement::Guess(ColorId(1)));
        transcript.push(0, Announcement::Guess(ColorId(1)));
        let doc = TranscriptDoc::new(&spec, &palette, HAT_QUESTION, &transcript);
        assert_eq!(doc.entries[0].speaker, 1);
        assert_eq!(doc.entries[0].position, 1);
        let (decoded, decoded_palette) = doc.decode().unwrap();
        assert_eq!(decoded, transcript);
        assert_eq!(decoded_palette.name(ColorId(1)), "blue");
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: TranscriptDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);
    }
}

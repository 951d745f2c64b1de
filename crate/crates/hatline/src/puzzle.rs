//! Puzzle variants, palettes, assignments, announcements and transcripts.
//!
//! Positions index the line from the front: position 0 sees nobody,
//! position `n - 1` stands at the back and sees everyone ahead. Speaking
//! proceeds back to front unless a strategy says otherwise.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A hat color, an index into the puzzle's palette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub u32);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Who sees whom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    /// Position `i` sees exactly positions `0..i` (a line, front first).
    LineForward,
    /// Position `i` sees every position except itself (a round table).
    Complete,
}

/// Display names used when a palette does not get explicit names.
/// Red is always color 0 and blue color 1, so two-color examples are
/// reproducible bit for bit.
pub const DEFAULT_COLOR_NAMES: [&str; 6] = ["red", "blue", "green", "yellow", "purple", "orange"];

/// The set of colors of a puzzle, optionally with display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    size: u32,
    names: Option<Vec<String>>,
}

impl Palette {
    pub fn unnamed(size: u32) -> Result<Palette> {
        if size == 0 {
            return Err(Error::InvalidPuzzle("palette needs at least one color".into()));
        }
        Ok(Palette { size, names: None })
    }

    /// A palette whose colors carry display names; the names must be distinct.
    pub fn named(names: Vec<String>) -> Result<Palette> {
        if names.is_empty() {
            return Err(Error::InvalidPuzzle("palette needs at least one color".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].iter().any(|b| b.eq_ignore_ascii_case(a)) {
                return Err(Error::InvalidPuzzle(format!("duplicate color name `{a}`")));
            }
        }
        Ok(Palette { size: names.len() as u32, names: Some(names) })
    }

    /// The palette a puzzle gets when nobody names the colors: the standard
    /// list for up to six colors, bare indices beyond that.
    pub fn default_for(spec: &PuzzleSpec) -> Palette {
        let size = spec.colors();
        if size as usize <= DEFAULT_COLOR_NAMES.len() {
            let names = DEFAULT_COLOR_NAMES[..size as usize]
                .iter()
                .map(|s| s.to_string())
                .collect();
            Palette { size, names: Some(names) }
        } else {
            Palette { size, names: None }
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn contains(&self, color: ColorId) -> bool {
        color.0 < self.size
    }

    /// Lowercase display name, or the bare index for unnamed palettes.
    pub fn name(&self, color: ColorId) -> String {
        match &self.names {
            Some(names) if color.0 < self.size => names[color.0 as usize].clone(),
            _ => color.0.to_string(),
        }
    }

    /// Display name with the first letter capitalized ("Red").
    pub fn title_name(&self, color: ColorId) -> String {
        let name = self.name(color);
        let mut chars = name.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
            None => name,
        }
    }

    /// Short token used in canonical assignment strings: the first letter of
    /// the name, uppercased ("R"), or the index for unnamed palettes.
    pub fn short(&self, color: ColorId) -> String {
        match &self.names {
            Some(names) if color.0 < self.size => names[color.0 as usize]
                .chars()
                .next()
                .map(|c| c.to_uppercase().collect())
                .unwrap_or_default(),
            _ => color.0.to_string(),
        }
    }

    /// Resolved display names for every color, in index order.
    pub fn all_names(&self) -> Vec<String> {
        (0..self.size).map(|i| self.name(ColorId(i))).collect()
    }

    /// Accepts a full name ("red"), a one-letter abbreviation ("R") or a
    /// numeric index ("0"), case-insensitively.
    pub fn parse_color(&self, token: &str) -> Result<ColorId> {
        let t = token.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty color token".into()));
        }
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n.eq_ignore_ascii_case(t)) {
                return Ok(ColorId(i as u32));
            }
            let mut chars = t.chars();
            if let (Some(first), None) = (chars.next(), chars.next()) {
                let first = first.to_ascii_lowercase();
                if let Some(i) = names
                    .iter()
                    .position(|n| n.chars().next().map(|c| c.to_ascii_lowercase()) == Some(first))
                {
                    return Ok(ColorId(i as u32));
                }
            }
        }
        match t.parse::<u32>() {
            Ok(v) if v < self.size => Ok(ColorId(v)),
            Ok(v) => Err(Error::Parse(format!("color index {v} out of range (palette size {})", self.size))),
            Err(_) => Err(Error::Parse(format!("unknown color `{t}`"))),
        }
    }

    /// Parses the canonical comma-separated form, front of the line first.
    pub fn parse_assignment(&self, s: &str) -> Result<Assignment> {
        let hats = s
            .split(',')
            .map(|tok| self.parse_color(tok))
            .collect::<Result<Vec<_>>>()?;
        if hats.is_empty() {
            return Err(Error::Parse("empty assignment".into()));
        }
        Ok(Assignment(hats))
    }

    /// Canonical textual form: comma-separated short tokens, front first,
    /// e.g. "R,R,B,B,R".
    pub fn assignment_string(&self, assignment: &Assignment) -> String {
        assignment
            .hats()
            .iter()
            .map(|&c| self.short(c))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Which puzzle is being played.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PuzzleSpec {
    /// Unlimited supply of each of `colors` colors; line visibility; any
    /// color may be announced any number of times.
    Repeated { n: usize, colors: u32 },
    /// `n + 1` available hats, all of different colors, so exactly one color
    /// stays unworn; line visibility; nobody may repeat a color that has
    /// already been announced.
    Distinct { n: usize },
    /// A fixed multiset of available hats per color; announcements are
    /// know/don't-know statements rather than color guesses.
    Limited { n: usize, counts: Vec<u32>, visibility: Visibility },
}

impl PuzzleSpec {
    pub fn n(&self) -> usize {
        match self {
            PuzzleSpec::Repeated { n, .. }
            | PuzzleSpec::Distinct { n }
            | PuzzleSpec::Limited { n, .. } => *n,
        }
    }

    /// Palette size.
    pub fn colors(&self) -> u32 {
        match self {
            PuzzleSpec::Repeated { colors, .. } => *colors,
            PuzzleSpec::Distinct { n } => *n as u32 + 1,
            PuzzleSpec::Limited { counts, .. } => counts.len() as u32,
        }
    }

    pub fn visibility(&self) -> Visibility {
        match self {
            PuzzleSpec::Repeated { .. } | PuzzleSpec::Distinct { .. } => Visibility::LineForward,
            PuzzleSpec::Limited { visibility, .. } => *visibility,
        }
    }

    /// Whether announcing an already-announced color is forbidden.
    pub fn no_repeat_rule(&self) -> bool {
        matches!(self, PuzzleSpec::Distinct { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PuzzleSpec::Repeated { n, colors } => {
                if *n < 1 {
                    return Err(Error::InvalidPuzzle("need at least one logician".into()));
                }
                if *colors < 2 {
                    return Err(Error::InvalidPuzzle("need at least two colors".into()));
                }
            }
            PuzzleSpec::Distinct { n } => {
                if *n < 1 {
                    return Err(Error::InvalidPuzzle("need at least one logician".into()));
                }
            }
            PuzzleSpec::Limited { n, counts, .. } => {
                if *n < 1 {
                    return Err(Error::InvalidPuzzle("need at least one logician".into()));
                }
                if counts.is_empty() {
                    return Err(Error::InvalidPuzzle("supply has no colors".into()));
                }
                let total: u64 = counts.iter().map(|&c| u64::from(c)).sum();
                if total < *n as u64 {
                    return Err(Error::InvalidPuzzle(format!(
                        "supply insufficient: {total} hats for {n} logicians"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate_assignment(&self, assignment: &Assignment) -> Result<()> {
        let n = self.n();
        if assignment.len() != n {
            return Err(Error::IllegalAssignment(format!(
                "expected {n} hats, got {}",
                assignment.len()
            )));
        }
        let colors = self.colors();
        if let Some(&c) = assignment.hats().iter().find(|c| c.0 >= colors) {
            return Err(Error::IllegalAssignment(format!(
                "color {c} out of range (palette size {colors})"
            )));
        }
        match self {
            PuzzleSpec::Repeated { .. } => {}
            PuzzleSpec::Distinct { .. } => {
                let mut worn = vec![false; colors as usize];
                for &c in assignment.hats() {
                    if worn[c.0 as usize] {
                        return Err(Error::IllegalAssignment(format!("color {c} worn twice")));
                    }
                    worn[c.0 as usize] = true;
                }
            }
            PuzzleSpec::Limited { counts, .. } => {
                let mut used = vec![0u32; counts.len()];
                for &c in assignment.hats() {
                    used[c.0 as usize] += 1;
                    if used[c.0 as usize] > counts[c.0 as usize] {
                        return Err(Error::IllegalAssignment(format!(
                            "color {c} used more than the {} available",
                            counts[c.0 as usize]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_legal_assignment(&self, assignment: &Assignment) -> bool {
        self.validate_assignment(assignment).is_ok()
    }

    /// Stable one-line description used in reports.
    pub fn description(&self) -> String {
        match self {
            PuzzleSpec::Repeated { n, colors } => format!("repeated(n={n},colors={colors})"),
            PuzzleSpec::Distinct { n } => format!("distinct(n={n},colors={})", n + 1),
            PuzzleSpec::Limited { n, counts, visibility } => {
                let counts = counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                let vis = match visibility {
                    Visibility::LineForward => "line",
                    Visibility::Complete => "complete",
                };
                format!("limited(n={n},counts=[{counts}],visibility={vis})")
            }
        }
    }
}

/// One concrete placement of hats, front of the line first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub Vec<ColorId>);

impl Assignment {
    pub fn from_indices(indices: &[u32]) -> Assignment {
        Assignment(indices.iter().map(|&i| ColorId(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hats(&self) -> &[ColorId] {
        &self.0
    }

    pub fn hat(&self, position: usize) -> ColorId {
        self.0[position]
    }
}

/// What a speaker says out loud.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Announcement {
    /// A color guessed as the speaker's own hat color.
    Guess(ColorId),
    /// "Yes" — the speaker knows its color; the color rides along so
    /// deductions can be reported.
    Know(ColorId),
    /// "I do not know."
    DontKnow,
}

/// The ordered public record of announcements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub speaker: usize,
    pub announcement: Announcement,
}

impl Transcript {
    pub fn new() -> Transcript {
        Transcript::default()
    }

    pub fn push(&mut self, speaker: usize, announcement: Announcement) {
        self.entries.push(TranscriptEntry { speaker, announcement });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Color guesses in speaking order.
    pub fn guesses(&self) -> impl Iterator<Item = (usize, ColorId)> + '_ {
        self.entries.iter().filter_map(|e| match e.announcement {
            Announcement::Guess(c) => Some((e.speaker, c)),
            _ => None,
        })
    }

    pub fn contains_guess(&self, color: ColorId) -> bool {
        self.guesses().any(|(_, c)| c == color)
    }
}

/// The hats one logician can see, a lightweight view into an assignment.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    hats: &'a [ColorId],
    viewer: usize,
    visibility: Visibility,
}

impl<'a> View<'a> {
    pub fn new(visibility: Visibility, hats: &'a [ColorId], viewer: usize) -> View<'a> {
        View { hats, viewer, visibility }
    }

    /// The color at `position` if the viewer can see it.
    pub fn get(&self, position: usize) -> Option<ColorId> {
        if position >= self.hats.len() {
            return None;
        }
        let visible = match self.visibility {
            Visibility::LineForward => position < self.viewer,
            Visibility::Complete => position != self.viewer,
        };
        visible.then(|| self.hats[position])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, ColorId)> + '_ {
        (0..self.hats.len()).filter_map(move |i| self.get(i).map(|c| (i, c)))
    }

    pub fn count(&self) -> usize {
        self.iter().count()
    }

    /// Sum of the visible color indices.
    pub fn color_sum(&self) -> u64 {
        self.iter().map(|(_, c)| u64::from(c.0)).sum()
    }
}

/// The positions and colors visible to `position`, as a map.
pub fn visible_hats(
    spec: &PuzzleSpec,
    assignment: &Assignment,
    position: usize,
) -> Result<BTreeMap<usize, ColorId>> {
    let n = spec.n();
    if position >= n {
        return Err(Error::PositionOutOfRange { position, n });
    }
    if assignment.len() != n {
        return Err(Error::IllegalAssignment(format!(
            "expected {n} hats, got {}",
            assignment.len()
        )));
    }
    let view = View::new(spec.visibility(), assignment.hats(), position);
    Ok(view.iter().collect())
}

/// Parses the CLI supply syntax "R:3,B:2" into per-color counts and
/// display names. Single-letter labels matching the standard color list
/// expand to full names; anything else is kept verbatim.
pub fn parse_supply(s: &str) -> Result<(Vec<u32>, Vec<String>)> {
    let mut counts = Vec::new();
    let mut names = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (label, count) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected LABEL:COUNT, got `{part}`")))?;
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::Parse("empty supply label".into()));
        }
        let count: u32 = count
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad hat count in `{part}`")))?;
        let mut chars = label.chars();
        let name = match (chars.next(), chars.next()) {
            (Some(first), None) => DEFAULT_COLOR_NAMES
                .iter()
                .find(|n| n.starts_with(first.to_ascii_lowercase()))
                .map(|n| n.to_string())
                .unwrap_or_else(|| label.to_string()),
            _ => label.to_string(),
        };
        if names.iter().any(|n: &String| n.eq_ignore_ascii_case(&name)) {
            return Err(Error::Parse(format!("duplicate supply color `{label}`")));
        }
        counts.push(count);
        names.push(name);
    }
    if counts.is_empty() {
        return Err(Error::Parse("empty supply".into()));
    }
    Ok((counts, names))
}

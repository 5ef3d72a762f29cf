use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::alphabet::{AlphabetError, PartitionedAlphabet};

const GLYPH: f64 = 13.0;
const SPACING: f64 = 34.0;
const MIN_RADIUS: f64 = 60.0;
const MARGIN: f64 = 44.0;

/// Letters placed clockwise around a circle starting at twelve o'clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleDiagram {
    /// `(glyph, class index)` per position.
    pub glyphs: Vec<(char, usize)>,
    /// Optional numeral drawn under each glyph, e.g. its removal rank.
    pub annotations: Option<Vec<Option<usize>>>,
}

impl CircleDiagram {
    /// Classifies the letters of `text`, dropping anything outside the
    /// alphabet.
    pub fn from_text(text: &str, alphabet: &PartitionedAlphabet) -> Result<Self, AlphabetError> {
        let glyphs = alphabet
            .strip(text)?
            .into_iter()
            .map(|c| (c, alphabet.classify(c).expect("stripped letters classify")))
            .collect();
        Ok(Self {
            glyphs,
            annotations: None,
        })
    }

    pub fn len(&self) -> usize {
        self.glyphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glyphs.is_empty()
    }

    /// Numbers each position by its rank in `removed` (1-based positions).
    pub fn with_removal_order(mut self, removed: &[usize]) -> Self {
        let mut ranks = vec![None; self.glyphs.len()];
        for (rank, &p) in removed.iter().enumerate() {
            if let Some(slot) = ranks.get_mut(p.wrapping_sub(1)) {
                *slot = Some(rank + 1);
            }
        }
        self.annotations = Some(ranks);
        self
    }

    fn radius(&self) -> f64 {
        (self.glyphs.len() as f64 * SPACING / (2.0 * PI)).max(MIN_RADIUS)
    }

    /// Centre of position `i` (0-based).
    pub fn position(&self, i: usize) -> (f64, f64) {
        let r = self.radius();
        let c = r + MARGIN;
        let angle = -PI / 2.0 + 2.0 * PI * i as f64 / self.glyphs.len().max(1) as f64;
        (c + r * angle.cos(), c + r * angle.sin())
    }

    /// Standalone SVG document. Output depends only on the diagram.
    pub fn render(&self) -> String {
        let size = 2.0 * (self.radius() + MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
        );
        let _ = writeln!(
            s,
            r#"<g font-family="monospace" font-size="15" text-anchor="middle" dominant-baseline="central" fill="none" stroke="black" stroke-width="1.2">"#
        );
        for (i, &(glyph, class)) in self.glyphs.iter().enumerate() {
            let (x, y) = self.position(i);
            match class {
                0 => {
                    let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{GLYPH:.2}"/>"#);
                }
                1 => {
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                        x - GLYPH,
                        y - GLYPH,
                        2.0 * GLYPH,
                        2.0 * GLYPH
                    );
                }
                _ => {
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" rx="6"/>"#,
                        x - GLYPH,
                        y - GLYPH,
                        2.0 * GLYPH,
                        2.0 * GLYPH
                    );
                }
            }
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{y:.2}" fill="black" stroke="none">{}</text>"#,
                escape(glyph)
            );
            if let Some(Some(rank)) = self.annotations.as_ref().and_then(|a| a.get(i)) {
                let _ = writeln!(
                    s,
                    r#"<text x="{x:.2}" y="{:.2}" font-size="10" fill="dimgray" stroke="none">{rank}</text>"#,
                    y + GLYPH + 9.0
                );
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn escape(c: char) -> String {
    match c {
        '<' => "&lt;".into(),
        '>' => "&gt;".into(),
        '&' => "&amp;".into(),
        '"' => "&quot;".into(),
        other => other.to_string(),
    }
}

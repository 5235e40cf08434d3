//! Word-cloud layout on an Archimedean spiral.
//!
//! Box sizes come from a fixed glyph model (0.6 em wide, 1.2 em tall per
//! line), so layouts do not depend on installed fonts.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{escape_xml, num, svg_close, svg_open};
use crate::analytics::FrequencyTable;
use crate::diag::{Outcome, Warning};
use crate::error::{Error, Result};

const GLYPH_WIDTH_EM: f64 = 0.6;
const LINE_HEIGHT_EM: f64 = 1.2;
/// Radial distance between successive spiral turns, in px.
const SPIRAL_GAP: f64 = 6.0;
/// Approximate distance between successive candidate positions, in px.
const SPIRAL_STEP: f64 = 2.5;
const CAPTION_HEIGHT: f64 = 28.0;

const PALETTE: [&str; 6] = ["#1b4f72", "#7d3c98", "#117a65", "#b9770e", "#a93226", "#2e4053"];

#[derive(Debug, Clone, PartialEq)]
pub struct CloudParams {
    pub max_words: usize,
    pub width: f64,
    pub height: f64,
    pub min_font: f64,
    pub max_font: f64,
    pub seed: u64,
}

impl Default for CloudParams {
    fn default() -> Self {
        CloudParams {
            max_words: 100,
            width: 600.0,
            height: 400.0,
            min_font: 8.0,
            max_font: 40.0,
            seed: 0,
        }
    }
}

/// A word box; `x`, `y` is the top-left corner.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedWord {
    pub token: String,
    pub count: u64,
    pub font_size: f64,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl PlacedWord {
    /// Open-interval overlap on both axes; boxes that only touch do not overlap.
    pub fn overlaps(&self, other: &PlacedWord) -> bool {
        self.x < other.x + other.width
            && other.x < self.x + self.width
            && self.y < other.y + other.height
            && other.y < self.y + self.height
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloudLayout {
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub placed: Vec<PlacedWord>,
    pub seed: u64,
}

impl CloudLayout {
    pub fn empty(params: &CloudParams) -> Self {
        CloudLayout {
            canvas_width: params.width,
            canvas_height: params.height,
            placed: Vec::new(),
            seed: params.seed,
        }
    }
}

fn font_sizes(counts: &[u64], params: &CloudParams) -> Vec<f64> {
    let roots: Vec<f64> = counts.iter().map(|&c| (c as f64).sqrt()).collect();
    let lo = roots.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = roots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    roots
        .iter()
        .map(|&r| {
            if hi > lo {
                params.min_font + (params.max_font - params.min_font) * (r - lo) / (hi - lo)
            } else {
                params.max_font
            }
        })
        .collect()
}

/// Places the `max_words` most frequent tokens, largest first, along a spiral
/// from the canvas center until each box is inside the canvas and clear of the
/// boxes already placed. The spiral's starting angle per word comes from a
/// ChaCha generator seeded with `params.seed`.
///
/// An empty table gives an empty layout. Words that find no room are skipped
/// with a warning; failing to place the very first word is an error.
pub fn layout_word_cloud(freq: &FrequencyTable, params: &CloudParams) -> Result<Outcome<CloudLayout>> {
    if params.max_words == 0 {
        return Err(Error::InvalidArgument("max_words must be at least 1".into()));
    }
    if !(params.width > 0.0 && params.height > 0.0) || !(params.min_font > 0.0 && params.min_font <= params.max_font) {
        return Err(Error::InvalidArgument("canvas and font sizes must be positive".into()));
    }

    let words = freq.top_n(params.max_words);
    let counts: Vec<u64> = words.iter().map(|w| w.1).collect();
    let sizes = font_sizes(&counts, params);

    let (w, h) = (params.width, params.height);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let (sx, sy) = if w >= h { (w / h, 1.0) } else { (1.0, h / w) };
    // past this radius the box center, and so the box, is off the canvas
    let max_radius = w.hypot(h) / 2.0;
    let growth = SPIRAL_GAP / TAU;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut placed: Vec<PlacedWord> = Vec::with_capacity(words.len());
    let mut warnings = Vec::new();

    for (i, ((token, count), font_size)) in words.into_iter().zip(sizes).enumerate() {
        let phase = rng.gen::<f64>() * TAU;
        let bw = GLYPH_WIDTH_EM * font_size * token.chars().count() as f64;
        let bh = LINE_HEIGHT_EM * font_size;
        let mut candidate = PlacedWord {
            token,
            count,
            font_size,
            x: 0.0,
            y: 0.0,
            width: bw,
            height: bh,
        };

        let mut found = false;
        if bw <= w && bh <= h {
            let mut last_hit: Option<usize> = None;
            let mut t = 0.0f64;
            loop {
                let r = growth * t;
                if r > max_radius {
                    break;
                }
                let angle = t + phase;
                candidate.x = cx + sx * r * angle.cos() - bw / 2.0;
                candidate.y = cy + sy * r * angle.sin() - bh / 2.0;
                let inside = candidate.x >= 0.0
                    && candidate.y >= 0.0
                    && candidate.x + bw <= w
                    && candidate.y + bh <= h;
                if inside {
                    let hit = last_hit
                        .filter(|&k| placed[k].overlaps(&candidate))
                        .or_else(|| placed.iter().position(|p| p.overlaps(&candidate)));
                    match hit {
                        Some(k) => last_hit = Some(k),
                        None => {
                            found = true;
                            break;
                        }
                    }
                }
                t += (SPIRAL_STEP / r.max(SPIRAL_STEP)).min(0.5);
            }
        }

        if found {
            placed.push(candidate);
        } else if i == 0 {
            return Err(Error::CanvasTooSmall);
        } else {
            warnings.push(Warning::WordNotPlaced {
                token: candidate.token,
            });
        }
    }

    Ok(Outcome::new(
        CloudLayout {
            canvas_width: w,
            canvas_height: h,
            placed,
            seed: params.seed,
        },
        warnings,
    ))
}

fn write_words(out: &mut String, layout: &CloudLayout) {
    for (i, p) in layout.placed.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" fill="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            num(p.x + p.width / 2.0),
            num(p.y + p.height / 2.0),
            num(p.font_size),
            PALETTE[i % PALETTE.len()],
            escape_xml(&p.token)
        );
    }
}

pub fn render_word_cloud(layout: &CloudLayout) -> String {
    let mut out = String::new();
    svg_open(&mut out, layout.canvas_width, layout.canvas_height, "");
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        num(layout.canvas_width),
        num(layout.canvas_height)
    );
    out.push_str(r#"<g font-family="DejaVu Sans Mono, monospace">"#);
    out.push('\n');
    write_words(&mut out, layout);
    out.push_str("</g>\n");
    svg_close(&mut out);
    out
}

/// Tiles captioned clouds row-major, `columns` per row.
pub fn render_cloud_grid(cells: &[(String, CloudLayout)], columns: usize) -> Result<String> {
    if columns == 0 {
        return Err(Error::InvalidArgument("columns must be at least 1".into()));
    }
    let rows = cells.len().div_ceil(columns);
    let used_columns = cells.len().min(columns);
    let cell_w = cells.iter().map(|c| c.1.canvas_width).fold(0.0, f64::max);
    let cell_h = cells.iter().map(|c| c.1.canvas_height).fold(0.0, f64::max) + CAPTION_HEIGHT;
    let width = (cell_w * used_columns as f64).max(1.0);
    let height = (cell_h * rows as f64).max(1.0);

    let mut out = String::new();
    svg_open(
        &mut out,
        width,
        height,
        &format!(r#" data-rows="{rows}" data-columns="{used_columns}""#),
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        num(width),
        num(height)
    );
    for (i, (caption, layout)) in cells.iter().enumerate() {
        let (row, col) = (i / columns, i % columns);
        let _ = writeln!(
            out,
            r#"<g class="cell" transform="translate({},{})">"#,
            num(col as f64 * cell_w),
            num(row as f64 * cell_h)
        );
        let _ = writeln!(
            out,
            r#"<text class="caption" x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
            num(cell_w / 2.0),
            escape_xml(caption)
        );
        let _ = writeln!(
            out,
            r#"<g transform="translate(0,{})" font-family="DejaVu Sans Mono, monospace">"#,
            num(CAPTION_HEIGHT)
        );
        write_words(&mut out, layout);
        out.push_str("</g>\n</g>\n");
    }
    svg_close(&mut out);
    Ok(out)
}

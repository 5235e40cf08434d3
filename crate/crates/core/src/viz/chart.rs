use std::fmt::Write as _;

use super::{escape_xml, num, svg_close, svg_open};
use crate::error::{Error, Result};
use crate::lexicon::{ChapterScore, Dimension};

/// Layout and labels for the trajectory chart. The y-axis is always [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub width: f64,
    pub height: f64,
    pub margin_top: f64,
    pub margin_right: f64,
    pub margin_bottom: f64,
    pub margin_left: f64,
    /// Valence, arousal, dominance.
    pub palette: [String; 3],
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Default for ChartSpec {
    fn default() -> Self {
        ChartSpec {
            width: 960.0,
            height: 500.0,
            margin_top: 50.0,
            margin_right: 150.0,
            margin_bottom: 60.0,
            margin_left: 70.0,
            palette: ["#1f77b4".into(), "#d62728".into(), "#2ca02c".into()],
            title: "Emotional trajectory of dialogue".into(),
            x_label: "Chapter".into(),
            y_label: "Mean score".into(),
        }
    }
}

struct Frame {
    left: f64,
    top: f64,
    plot_w: f64,
    plot_h: f64,
    min_index: f64,
    span: f64,
}

impl Frame {
    fn x(&self, index: u32) -> f64 {
        if self.span == 0.0 {
            self.left + self.plot_w / 2.0
        } else {
            self.left + (index as f64 - self.min_index) / self.span * self.plot_w
        }
    }

    fn y(&self, value: f64) -> f64 {
        self.top + (1.0 - value.clamp(0.0, 1.0)) * self.plot_h
    }
}

/// Renders one line per dimension across chapters. Runs of scored chapters
/// become polylines; a chapter with no score breaks the line, and an isolated
/// scored chapter is drawn as a single marker.
pub fn render_trajectory_chart(scores: &[ChapterScore], spec: &ChartSpec) -> Result<String> {
    if scores.iter().all(|s| s.means.is_none()) {
        return Err(Error::NoScoredChapters);
    }
    let min_index = scores.iter().map(|s| s.chapter_index).min().unwrap_or(0);
    let max_index = scores.iter().map(|s| s.chapter_index).max().unwrap_or(0);
    let frame = Frame {
        left: spec.margin_left,
        top: spec.margin_top,
        plot_w: (spec.width - spec.margin_left - spec.margin_right).max(1.0),
        plot_h: (spec.height - spec.margin_top - spec.margin_bottom).max(1.0),
        min_index: min_index as f64,
        span: (max_index - min_index) as f64,
    };
    let bottom = frame.top + frame.plot_h;
    let right = frame.left + frame.plot_w;

    let mut out = String::new();
    svg_open(&mut out, spec.width, spec.height, "");
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        num(spec.width),
        num(spec.height)
    );
    let _ = writeln!(
        out,
        r#"<text class="title" x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
        num(spec.width / 2.0),
        num(spec.margin_top / 2.0 + 6.0),
        escape_xml(&spec.title)
    );

    // y grid and ticks
    out.push_str(r#"<g class="y-axis" font-family="sans-serif" font-size="11">"#);
    out.push('\n');
    for step in 0..=5 {
        let v = step as f64 / 5.0;
        let y = frame.y(v);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#dddddd"/><text x="{}" y="{}" text-anchor="end">{v:.1}</text>"##,
            num(frame.left),
            num(right),
            num(frame.left - 8.0),
            num(y + 4.0),
            y = num(y),
        );
    }
    out.push_str("</g>\n");

    // x ticks at every chapter
    out.push_str(r#"<g class="x-axis" font-family="sans-serif" font-size="11">"#);
    out.push('\n');
    for s in scores {
        let x = num(frame.x(s.chapter_index));
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            num(bottom),
            num(bottom + 5.0),
            num(bottom + 18.0),
            s.chapter_index
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<path class="axes" d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#,
        l = num(frame.left),
        t = num(frame.top),
        b = num(bottom),
        r = num(right)
    );
    let _ = writeln!(
        out,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        num(frame.left + frame.plot_w / 2.0),
        num(spec.height - 15.0),
        escape_xml(&spec.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text class="y-label" x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 {x} {y})">{}</text>"#,
        escape_xml(&spec.y_label),
        x = num(20.0),
        y = num(frame.top + frame.plot_h / 2.0),
    );

    for (dim, color) in Dimension::ALL.iter().zip(&spec.palette) {
        let runs = runs(scores, *dim);
        let points: usize = runs.iter().map(Vec::len).sum();
        let _ = writeln!(
            out,
            r#"<g class="series" data-dimension="{}" data-points="{points}" stroke="{}" fill="{}">"#,
            dim.name(),
            escape_xml(color),
            escape_xml(color)
        );
        for run in runs {
            if let [(index, value)] = run[..] {
                let _ = writeln!(
                    out,
                    r#"<circle class="marker" cx="{}" cy="{}" r="3.5"/>"#,
                    num(frame.x(index)),
                    num(frame.y(value))
                );
            } else {
                let pts: Vec<String> = run
                    .iter()
                    .map(|&(i, v)| format!("{},{}", num(frame.x(i)), num(frame.y(v))))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke-width="2"/>"#,
                    pts.join(" ")
                );
            }
        }
        out.push_str("</g>\n");
    }

    out.push_str(r#"<g class="legend" font-family="sans-serif" font-size="12">"#);
    out.push('\n');
    let legend_x = right + 20.0;
    for (k, (dim, color)) in Dimension::ALL.iter().zip(&spec.palette).enumerate() {
        let y = frame.top + 10.0 + 22.0 * k as f64;
        let mut label = dim.name().to_string();
        label[..1].make_ascii_uppercase();
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{c}" stroke-width="3"/><text x="{}" y="{}">{label}</text>"#,
            num(legend_x),
            num(legend_x + 24.0),
            num(legend_x + 30.0),
            num(y + 4.0),
            y = num(y),
            c = escape_xml(color),
        );
    }
    out.push_str("</g>\n");
    svg_close(&mut out);
    Ok(out)
}

/// Maximal runs of consecutive chapters that have a value for `dim`.
fn runs(scores: &[ChapterScore], dim: Dimension) -> Vec<Vec<(u32, f64)>> {
    let mut out: Vec<Vec<(u32, f64)>> = Vec::new();
    let mut current = Vec::new();
    for s in scores {
        match s.value(dim) {
            Some(v) => current.push((s.chapter_index, v)),
            None if !current.is_empty() => out.push(std::mem::take(&mut current)),
            None => {}
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Vad;

    fn scores(values: &[Option<f64>]) -> Vec<ChapterScore> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| ChapterScore {
                chapter_index: i as u32 + 1,
                means: v.map(|v| Vad::new(v, v / 2.0, 1.0 - v)),
                tokens_total: 3,
                tokens_matched: v.is_some() as u64,
            })
            .collect()
    }

    #[test]
    fn three_full_series() {
        let svg = render_trajectory_chart(&scores(&[Some(0.2), Some(0.5), Some(0.9)]), &ChartSpec::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 0);
        assert_eq!(svg.matches(r#"data-points="3""#).count(), 3);
    }

    #[test]
    fn gap_splits_into_markers() {
        let svg = render_trajectory_chart(&scores(&[Some(0.2), None, Some(0.9)]), &ChartSpec::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches(r#"data-points="2""#).count(), 3);
    }

    #[test]
    fn ticks_for_every_chapter() {
        let values: Vec<Option<f64>> = (0..19).map(|i| Some(i as f64 / 19.0)).collect();
        let svg = render_trajectory_chart(&scores(&values), &ChartSpec::default()).unwrap();
        assert_eq!(svg.matches(r#"class="tick""#).count(), 19);
        for i in 1..=19 {
            assert!(svg.contains(&format!(">{i}</text>")));
        }
    }

    #[test]
    fn single_chapter_is_centered() {
        let svg = render_trajectory_chart(&scores(&[Some(0.5)]), &ChartSpec::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn no_scores_is_error() {
        assert!(matches!(
            render_trajectory_chart(&scores(&[None, None]), &ChartSpec::default()),
            Err(Error::NoScoredChapters)
        ));
        assert!(render_trajectory_chart(&[], &ChartSpec::default()).is_err());
    }

    #[test]
    fn title_is_escaped() {
        let spec = ChartSpec {
            title: "V&A <D>".into(),
            ..ChartSpec::default()
        };
        let svg = render_trajectory_chart(&scores(&[Some(0.5)]), &spec).unwrap();
        assert!(svg.contains("V&amp;A &lt;D&gt;"));
    }
}

//! Standalone SVG output: the VAD trajectory chart and word clouds.

mod chart;
mod cloud;

pub use chart::{render_trajectory_chart, ChartSpec};
pub use cloud::{
    layout_word_cloud, render_cloud_grid, render_word_cloud, CloudLayout, CloudParams, PlacedWord,
};

use std::fmt::Write as _;

/// Escapes text for use in XML character data and attribute values.
pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Fixed two-decimal coordinates keep the output byte-stable.
pub(crate) fn num(v: f64) -> String {
    debug_assert!(v.is_finite());
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

pub(crate) fn svg_open(out: &mut String, width: f64, height: f64, extra_attrs: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}"{extra_attrs}>"#,
        w = num(width),
        h = num(height),
    );
}

pub(crate) fn svg_close(out: &mut String) {
    out.push_str("</svg>\n");
}

use std::fmt::Write;

use crate::assembly::{Patch, Tile};
use crate::geom::{BBox, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ColorBy {
    #[default]
    Ring,
    Sector,
    Arm,
    Chirality,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub color_by: ColorBy,
    pub show_center: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800.0,
            color_by: ColorBy::Ring,
            show_center: false,
        }
    }
}

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];
const UNLABELLED: &str = "#d9d9d9";
const MARGIN: f64 = 10.0;

/// Distinct fill for class `k`; past the palette, hues step by the golden angle.
pub fn class_color(k: usize) -> String {
    match PALETTE.get(k) {
        Some(c) => c.to_string(),
        None => {
            let hue = (k as f64 * 137.507_764).rem_euclid(360.0);
            format!("hsl({hue:.1},55%,60%)")
        }
    }
}

fn fill(t: &Tile, by: ColorBy) -> String {
    match by {
        ColorBy::Ring => class_color(t.ring.saturating_sub(1)),
        ColorBy::Sector => class_color(t.sector),
        ColorBy::Arm => t.arm.map_or_else(|| UNLABELLED.to_string(), class_color),
        ColorBy::Chirality => class_color(usize::from(t.reflected)),
    }
}

/// SVG 1.1 drawing with one closed `<path>` per tile, scaled to `options.width`
/// pixels across. Tile labels are attached as `data-*` attributes.
pub fn render_svg(patch: &Patch, options: &SvgOptions) -> Vec<u8> {
    let bbox = patch
        .tiles
        .iter()
        .map(|t| t.polygon.bbox())
        .reduce(|a, b| a.union(&b))
        .unwrap_or(BBox {
            min: Point::ORIGIN,
            max: Point::ORIGIN,
        });
    let inner = (options.width - 2.0 * MARGIN).max(1.0);
    let scale = inner / bbox.width().max(bbox.height() * 1e-9).max(1e-12);
    let height = bbox.height() * scale + 2.0 * MARGIN;
    let to_px = |p: Point| {
        (
            MARGIN + (p.x - bbox.min.x) * scale,
            MARGIN + (bbox.max.y - p.y) * scale,
        )
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{height:.0}" viewBox="0 0 {w:.3} {height:.3}">"#,
        w = options.width
    );
    let _ = writeln!(
        s,
        r##"<g stroke="#222222" stroke-width="0.6" stroke-linejoin="round">"##
    );
    for (id, t) in patch.tiles.iter().enumerate() {
        let mut d = String::new();
        for (k, &p) in t.polygon.vertices().iter().enumerate() {
            let (x, y) = to_px(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let arm = t.arm.map_or_else(|| "none".to_string(), |a| a.to_string());
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="{fill}" data-id="{id}" data-level="{lvl}" data-ring="{ring}" data-sector="{sector}" data-arm="{arm}" data-reflected="{refl}"/>"#,
            fill = fill(t, options.color_by),
            lvl = t.level,
            ring = t.ring,
            sector = t.sector,
            refl = t.reflected,
        );
    }
    let _ = writeln!(s, "</g>");
    if options.show_center {
        let (cx, cy) = to_px(patch.center);
        let _ = writeln!(
            s,
            r##"<circle class="center" cx="{cx:.3}" cy="{cy:.3}" r="{r:.2}" fill="#000000"/>"##,
            r = (options.width / 150.0).max(2.0)
        );
    }
    let _ = writeln!(s, "</svg>");
    s.into_bytes()
}

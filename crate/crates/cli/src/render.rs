//! Deterministic SVG rendering of window partitions: tiles colored by residue
//! class, section representatives marked as dots. Rectangles, polygons, and
//! circles only, so output bytes depend on nothing but the input and version.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use shiftinv::error::{Error, Result};
use shiftinv::subgroup::ClosedSubgroup;

/// Fixed palette; the first three echo the shading of the classic partition
/// figures. Classes beyond the palette get procedurally generated colors.
const PALETTE: [&str; 12] = [
    "#d4d4d4", "#8c8c8c", "#4a4a4a", "#e24a33", "#348abd", "#988ed5", "#fbc15e", "#8eba42",
    "#56b4e9", "#ffb5b8", "#daa520", "#2e8b57",
];

fn procedural_color(index: usize) -> String {
    // golden-angle hue stepping with varied lightness keeps colors distinct
    let hue = (index as f64 * 137.508) % 360.0;
    let lightness = 0.42 + 0.12 * ((index % 4) as f64);
    let saturation = 0.62;
    let c = (1.0 - (2.0 * lightness - 1.0).abs()) * saturation;
    let hp = hue / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = lightness - c / 2.0;
    let to_byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to_byte(r1), to_byte(g1), to_byte(b1))
}

fn class_color(index: usize, used: &mut Vec<String>) -> String {
    let mut candidate = if index < PALETTE.len() {
        PALETTE[index].to_string()
    } else {
        procedural_color(index - PALETTE.len())
    };
    let mut bump = 0usize;
    while used.contains(&candidate) {
        bump += 1;
        candidate = procedural_color(index - PALETTE.len().min(index) + 97 * bump);
    }
    used.push(candidate.clone());
    candidate
}

fn fmt_coord(v: f64) -> String {
    // fixed two-decimal formatting keeps bytes stable
    format!("{:.2}", v)
}

struct Frame {
    scale: f64,
    min_x: f64,
    max_y: f64,
    margin: f64,
}

impl Frame {
    fn x(&self, wx: f64) -> f64 {
        self.margin + (wx - self.min_x) * self.scale
    }
    fn y(&self, wy: f64) -> f64 {
        self.margin + (self.max_y - wy) * self.scale
    }
}

/// Renders the residue-class partition of a window for `d <= 2`.
///
/// Tiles are the translates of the fundamental parallelogram spanned by the
/// dual-basis columns; two tiles share a color exactly when they reduce to
/// the same section representative, and each representative in the window's
/// class list is marked with a dot.
pub fn render_partition(
    group: &ClosedSubgroup,
    window: &[Vec<i64>],
    size: u32,
) -> Result<String> {
    let d = group.d();
    if d > 2 {
        return Err(Error::Parse(format!(
            "rendering supports d <= 2 only, got d = {d}; higher-dimensional \
             partitions have no planar drawing"
        )));
    }
    if window.is_empty() {
        return Err(Error::Parse("window is empty".into()));
    }
    let classes = group.partition_tiles(window);
    let mut color_of: BTreeMap<Vec<i64>, String> = BTreeMap::new();
    let mut used = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        color_of.insert(class.sigma.clone(), class_color(i, &mut used));
    }

    let w = group.dual_basis_matrix();
    let wf = |i: usize, j: usize| w[(i, j)].to_f64().expect("basis entry convertible");

    // world-space corners of a tile
    let corners = |k: &[i64]| -> Vec<(f64, f64)> {
        if d == 1 {
            let x = k[0] as f64;
            vec![(x, 0.0), (x + 1.0, 0.0)]
        } else {
            let base = (k[0] as f64, k[1] as f64);
            let w1 = (wf(0, 0), wf(1, 0));
            let w2 = (wf(0, 1), wf(1, 1));
            vec![
                base,
                (base.0 + w1.0, base.1 + w1.1),
                (base.0 + w1.0 + w2.0, base.1 + w1.1 + w2.1),
                (base.0 + w2.0, base.1 + w2.1),
            ]
        }
    };

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for k in window {
        for (x, y) in corners(k) {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    if d == 1 {
        min_y = -0.8;
        max_y = 0.8;
    }
    let margin = 10.0;
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let scale = (size as f64 - 2.0 * margin) / span_x.max(span_y);
    let frame = Frame { scale, min_x, max_y, margin };
    let width = 2.0 * margin + span_x * scale;
    let height = 2.0 * margin + span_y * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt_coord(width),
        fmt_coord(height),
        fmt_coord(width),
        fmt_coord(height)
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        fmt_coord(width),
        fmt_coord(height)
    );

    let _ = writeln!(svg, "<g stroke=\"#303030\" stroke-width=\"0.6\">");
    for class in &classes {
        let fill = &color_of[&class.sigma];
        for k in &class.members {
            let key: Vec<String> = k.iter().map(|e| e.to_string()).collect();
            if d == 1 {
                let x0 = frame.x(k[0] as f64);
                let x1 = frame.x(k[0] as f64 + 1.0);
                let y0 = frame.y(0.25);
                let y1 = frame.y(-0.25);
                let _ = writeln!(
                    svg,
                    "<rect data-k=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                    key.join(","),
                    fmt_coord(x0),
                    fmt_coord(y0),
                    fmt_coord(x1 - x0),
                    fmt_coord(y1 - y0),
                    fill
                );
            } else {
                let pts: Vec<String> = corners(k)
                    .into_iter()
                    .map(|(x, y)| format!("{},{}", fmt_coord(frame.x(x)), fmt_coord(frame.y(y))))
                    .collect();
                let _ = writeln!(
                    svg,
                    "<polygon data-k=\"{}\" points=\"{}\" fill=\"{}\"/>",
                    key.join(","),
                    pts.join(" "),
                    fill
                );
            }
        }
    }
    let _ = writeln!(svg, "</g>");

    // section representatives as dots
    let _ = writeln!(svg, "<g fill=\"#000000\">");
    for class in &classes {
        let sigma = &class.sigma;
        let key: Vec<String> = sigma.iter().map(|e| e.to_string()).collect();
        let (cx, cy) = if d == 1 {
            (frame.x(sigma[0] as f64), frame.y(0.0))
        } else {
            (frame.x(sigma[0] as f64), frame.y(sigma[1] as f64))
        };
        let _ = writeln!(
            svg,
            "<circle data-sigma=\"{}\" cx=\"{}\" cy=\"{}\" r=\"2.5\"/>",
            key.join(","),
            fmt_coord(cx),
            fmt_coord(cy)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use shiftinv::subgroup::{canonicalize, SubgroupSpec};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quarter_line_render_groups_tiles_by_class() {
        let g = canonicalize(&SubgroupSpec::new(1, vec![vec![rat(1, 4)]], vec![]).unwrap())
            .unwrap();
        let window: Vec<Vec<i64>> = (-7..=8).map(|k| vec![k]).collect();
        let svg = render_partition(&g, &window, 640).unwrap();
        // tiles congruent mod 4 share the fill color
        let fill_of = |k: i64| -> String {
            let marker = format!("data-k=\"{k}\" ");
            let start = svg.find(&marker).expect("tile present");
            let rest = &svg[start..];
            let fill_start = rest.find("fill=\"").unwrap() + 6;
            rest[fill_start..].chars().take_while(|&c| c != '"').collect()
        };
        assert_eq!(fill_of(2), fill_of(6));
        assert_eq!(fill_of(2), fill_of(-2));
        assert_ne!(fill_of(2), fill_of(3));
        // dots at the four section representatives
        for sigma in 0..4 {
            assert!(svg.contains(&format!("data-sigma=\"{sigma}\"")));
        }
    }

    #[test]
    fn rendering_is_byte_deterministic() {
        let g = canonicalize(&SubgroupSpec::new(1, vec![vec![rat(1, 3)]], vec![]).unwrap())
            .unwrap();
        let window: Vec<Vec<i64>> = (0..6).map(|k| vec![k]).collect();
        let a = render_partition(&g, &window, 400).unwrap();
        let b = render_partition(&g, &window, 400).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn three_dimensional_render_rejected() {
        let g = canonicalize(&SubgroupSpec::integer_lattice(3)).unwrap();
        let window = vec![vec![0, 0, 0]];
        assert!(render_partition(&g, &window, 400).is_err());
    }

    #[test]
    fn colors_are_distinct_per_class() {
        let g = canonicalize(&SubgroupSpec::new(1, vec![vec![rat(1, 30)]], vec![]).unwrap())
            .unwrap();
        let window: Vec<Vec<i64>> = (0..30).map(|k| vec![k]).collect();
        let svg = render_partition(&g, &window, 900).unwrap();
        let mut fills = Vec::new();
        for line in svg.lines() {
            if let Some(start) = line.find("fill=\"#") {
                let fill: String =
                    line[start + 6..].chars().take_while(|&c| c != '"').collect();
                if line.contains("data-k") {
                    fills.push(fill);
                }
            }
        }
        let mut class_fill: std::collections::BTreeMap<i64, String> = Default::default();
        for (k, fill) in (0..30).zip(fills) {
            let entry = class_fill.entry(k % 30).or_insert_with(|| fill.clone());
            assert_eq!(*entry, fill);
        }
        let unique: std::collections::BTreeSet<&String> = class_fill.values().collect();
        assert_eq!(unique.len(), 30, "every class needs its own color");
    }
}

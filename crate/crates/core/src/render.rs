//! Deterministic SVG rendering of segment configurations with optional
//! overlaid paths.
//!
//! Segments are drawn between their true (possibly half-integer)
//! endpoints even though intersection semantics are lattice-point based.
//! All coordinates are multiples of one half, so pixel positions are
//! exact integers and identical specs produce byte-identical documents.
//! The unit grid is a single `<path>` element; each requested segment is
//! one `<line>`, each overlaid path one `<polyline>`.

use crate::lattice::{GridPoint, LatticePath, SegmentId};
use crate::{Error, Result};

/// What to draw: the segment set for `(m, s)`, overlaid paths, canvas
/// size in grid units (defaults to fit every segment), and a unit grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub m: u64,
    pub s: u64,
    pub lines: Vec<SegmentId>,
    pub paths: Vec<LatticePath>,
    pub canvas: Option<(u64, u64)>,
    pub grid: bool,
}

const UNIT: i64 = 32;
const MARGIN: i64 = 32;
const SEGMENT_COLORS: [&str; 9] = [
    "#c62828", "#1565c0", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f", "#9e9d24", "#ad1457",
    "#4527a0",
];

/// True endpoints of a segment in half-unit coordinates.
fn endpoints_half(id: SegmentId, m: i64, s: i64) -> ((i64, i64), (i64, i64)) {
    let t = m + s;
    match id {
        SegmentId::L1 => ((0, 2), (2 * m - 1, 2 * m + 1)),
        SegmentId::L2 => ((2, 0), (2 * m + 1, 2 * m - 1)),
        SegmentId::L3 => ((2 * m - 2, 2 * m + 2), (2 * t - 2, 2 * t + 2)),
        SegmentId::L4 => ((2 * m + 2, 2 * m - 2), (2 * t + 2, 2 * t - 2)),
        SegmentId::L5 => ((2 * m - 1, 2 * m + 1), (2 * t - 1, 2 * t + 1)),
        SegmentId::L6 => ((2 * m, 2 * m), (2 * t, 2 * t)),
        SegmentId::L7 => ((2 * m + 1, 2 * m - 1), (2 * t + 1, 2 * t - 1)),
        SegmentId::L8 => ((0, 6), (2 * m - 3, 2 * m + 3)),
        SegmentId::L9 => ((6, 0), (2 * m + 3, 2 * m - 3)),
    }
}

fn check_drawable(id: SegmentId, m: u64, s: u64) -> Result<()> {
    let ((x1, y1), (x2, y2)) = endpoints_half(id, m as i64, s as i64);
    let degenerate = x1 >= x2 || x1.min(y1).min(x2).min(y2) < 0;
    if degenerate {
        return Err(Error::DegenerateSegment { id, m, s });
    }
    Ok(())
}

/// Renders a [`RenderSpec`] as an SVG document string.
pub fn render_svg(spec: &RenderSpec) -> Result<String> {
    for &id in &spec.lines {
        check_drawable(id, spec.m, spec.s)?;
    }

    // Canonical segment order, duplicates dropped.
    let lines: Vec<SegmentId> = SegmentId::ALL
        .into_iter()
        .filter(|id| spec.lines.contains(id))
        .collect();

    let default_extent = spec.m + spec.s + 2;
    let (cw, ch) = spec.canvas.unwrap_or((default_extent, default_extent));
    let width = 2 * MARGIN + cw as i64 * UNIT;
    let height = 2 * MARGIN + ch as i64 * UNIT;
    // Half-unit world coordinates to pixels; the y axis points up.
    let px = |half_x: i64| MARGIN + half_x * UNIT / 2;
    let py = |half_y: i64| MARGIN + (2 * ch as i64 - half_y) * UNIT / 2;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));

    if spec.grid {
        let mut d = String::new();
        for gx in 0..=cw as i64 {
            d.push_str(&format!("M{} {}V{} ", px(2 * gx), py(2 * ch as i64), py(0)));
        }
        for gy in 0..=ch as i64 {
            d.push_str(&format!("M{} {}H{} ", px(0), py(2 * gy), px(2 * cw as i64)));
        }
        svg.push_str(&format!(
            "  <path d=\"{}\" stroke=\"#cccccc\" stroke-width=\"1\" fill=\"none\"/>\n",
            d.trim_end()
        ));
    }

    for id in &lines {
        let ((x1, y1), (x2, y2)) = endpoints_half(*id, spec.m as i64, spec.s as i64);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            px(x1),
            py(y1),
            px(x2),
            py(y2),
            SEGMENT_COLORS[*id as usize],
        ));
    }

    for path in &spec.paths {
        let points: Vec<String> = path
            .points()
            .map(|GridPoint { x, y }| format!("{},{}", px(2 * x), py(2 * y)))
            .collect();
        svg.push_str(&format!(
            "  <polyline points=\"{}\" stroke=\"#000000\" stroke-width=\"3\" fill=\"none\"/>\n",
            points.join(" ")
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_lines(svg: &str) -> usize {
        svg.matches("<line ").count()
    }

    #[test]
    fn four_and_seven_segment_configurations() {
        let spec = RenderSpec {
            m: 4,
            s: 3,
            lines: vec![SegmentId::L1, SegmentId::L2, SegmentId::L3, SegmentId::L4],
            paths: vec![],
            canvas: None,
            grid: true,
        };
        let svg = render_svg(&spec).unwrap();
        assert_eq!(count_lines(&svg), 4);

        let spec = RenderSpec {
            m: 4,
            s: 4,
            lines: SegmentId::ALL[..7].to_vec(),
            paths: vec![],
            canvas: None,
            grid: true,
        };
        let svg = render_svg(&spec).unwrap();
        assert_eq!(count_lines(&svg), 7);
    }

    #[test]
    fn identical_specs_render_identical_bytes() {
        let spec = RenderSpec {
            m: 4,
            s: 4,
            lines: SegmentId::ALL.to_vec(),
            paths: vec![LatticePath::parse("URRUUURRRRUU", GridPoint::ORIGIN).unwrap()],
            canvas: None,
            grid: true,
        };
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }

    #[test]
    fn paths_render_as_polylines() {
        let path = LatticePath::parse("UURRRRUU", GridPoint::new(2, 2)).unwrap();
        let spec = RenderSpec {
            m: 2,
            s: 4,
            lines: vec![SegmentId::L3, SegmentId::L4],
            paths: vec![path],
            canvas: None,
            grid: false,
        };
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<polyline ").count(), 1);
        // 8 unit segments means 9 listed points.
        let points_attr = svg.split("points=\"").nth(1).unwrap();
        let points = points_attr.split('"').next().unwrap();
        assert_eq!(points.split(' ').count(), 9);
    }

    #[test]
    fn degenerate_segments_are_rejected() {
        let spec = RenderSpec {
            m: 1,
            s: 4,
            lines: vec![SegmentId::L8],
            paths: vec![],
            canvas: None,
            grid: false,
        };
        assert!(matches!(
            render_svg(&spec),
            Err(Error::DegenerateSegment {
                id: SegmentId::L8,
                ..
            })
        ));

        let spec = RenderSpec {
            m: 0,
            s: 2,
            lines: vec![SegmentId::L1],
            paths: vec![],
            canvas: None,
            grid: false,
        };
        assert!(render_svg(&spec).is_err());
    }

    #[test]
    fn duplicate_line_requests_draw_once() {
        let spec = RenderSpec {
            m: 3,
            s: 2,
            lines: vec![SegmentId::L1, SegmentId::L1, SegmentId::L2],
            paths: vec![],
            canvas: None,
            grid: false,
        };
        assert_eq!(count_lines(&render_svg(&spec).unwrap()), 2);
    }
}

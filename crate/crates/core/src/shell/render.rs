//! Text and SVG pictures of tours and their lifts.

use std::fmt::Write;

use crate::board::wraps;
use crate::lift::{classify, lift_tour, LiftPoint};
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    BoardAscii,
    LiftAscii,
    LiftSvg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub mode: RenderMode,
    pub show_fundamental_domains: bool,
    pub cell_px: u32,
}

impl RenderOptions {
    pub fn new(mode: RenderMode) -> Self {
        RenderOptions {
            mode,
            show_fundamental_domains: true,
            cell_px: 24,
        }
    }
}

pub fn render(tour: &Tour, opts: &RenderOptions) -> String {
    match opts.mode {
        RenderMode::BoardAscii => board_ascii(tour),
        RenderMode::LiftAscii => lift_ascii(tour, opts.show_fundamental_domains),
        RenderMode::LiftSvg => lift_svg(tour, opts),
    }
}

/// Lift vertices of a closed surface tour; otherwise the tour's own squares
/// joined by unwrapped moves.
pub fn path_points(tour: &Tour) -> Vec<LiftPoint> {
    let spec = tour.spec();
    if tour.is_closed() && spec.topology().is_surface() {
        if let Ok(l) = lift_tour(spec, tour) {
            return l.points;
        }
    }
    let mut at = LiftPoint::new(tour.start().a, tour.start().b);
    let mut pts = vec![at];
    for p in tour.moves() {
        at = at.offset(p.x, p.y);
        pts.push(at);
    }
    pts
}

fn header(tour: &Tour) -> String {
    let spec = tour.spec();
    let kind = if tour.is_closed() { "closed" } else { "open" };
    match (tour.is_closed() && spec.topology().is_surface()).then(|| classify(spec, tour)) {
        Some(Ok(c)) => format!("{kind} tour on {spec}, {c}"),
        _ => format!("{kind} tour on {spec}"),
    }
}

fn board_ascii(tour: &Tour) -> String {
    let spec = tour.spec();
    let squares = tour.squares();
    let mut visit = vec![0usize; spec.square_count()];
    for (i, s) in squares.iter().enumerate() {
        visit[spec.index_of(*s)] = i;
    }
    let w = squares.len().to_string().len() + 1;
    let mut out = header(tour);
    out.push('\n');
    for b in (0..spec.n()).rev() {
        let _ = write!(out, "{b:>3} |");
        for a in 0..spec.m() {
            let _ = write!(out, "{:>w$}", visit[spec.index_of(crate::board::Square::new(a, b))]);
        }
        out.push('\n');
    }
    let _ = write!(out, "    +{}\n     ", "-".repeat(w * spec.m() as usize));
    for a in 0..spec.m() {
        let _ = write!(out, "{a:>w$}");
    }
    out.push_str("\nmoves (.. marks a move across the seam):\n");
    for (i, j) in tour.jumps().iter().enumerate() {
        let to = crate::board::apply_jump(spec, *j).expect("tour jumps stay on the board");
        let arrow = if wraps(spec, *j) { "..>" } else { "-->" };
        let _ = writeln!(out, "{i:>4} {} {arrow} {}  {}", j.from, to, j.pair);
    }
    out
}

fn bounds(tour: &Tour, pts: &[LiftPoint]) -> (i64, i64, i64, i64) {
    let spec = tour.spec();
    let (mut a0, mut a1) = (0, spec.m() - 1);
    let (mut b0, mut b1) = (0, spec.n() - 1);
    for p in pts {
        a0 = a0.min(p.a);
        a1 = a1.max(p.a);
        b0 = b0.min(p.b);
        b1 = b1.max(p.b);
    }
    (a0, a1, b0, b1)
}

fn lift_ascii(tour: &Tour, domains: bool) -> String {
    let spec = tour.spec();
    let pts = path_points(tour);
    let (a0, a1, b0, b1) = bounds(tour, &pts);
    let cols = (a1 - a0 + 1) as usize;
    let mut grid = vec![vec![String::from("."); cols]; (b1 - b0 + 1) as usize];
    for (i, p) in pts.iter().enumerate().rev() {
        grid[(p.b - b0) as usize][(p.a - a0) as usize] = i.to_string();
    }
    grid[(-b0) as usize][(-a0) as usize] = "@".into();
    let w = pts.len().to_string().len() + 1;
    let (m, n) = (spec.m(), spec.n());
    let wrap_cols = spec.topology() == crate::board::Topology::Torus;
    let wrap_rows = spec.topology().is_surface();
    let mut out = header(tour);
    let _ = writeln!(
        out,
        "\nlift from {} to {}, @ is the base point",
        pts[0],
        pts[pts.len() - 1]
    );
    let ruling = |out: &mut String| {
        out.push_str("     ");
        for a in a0..=a1 {
            if domains && wrap_cols && a != a0 && a.rem_euclid(m) == 0 {
                out.push('+');
            }
            out.push_str(&"-".repeat(w));
        }
        out.push('\n');
    };
    for b in (b0..=b1).rev() {
        let _ = write!(out, "{b:>4} ");
        for a in a0..=a1 {
            if domains && wrap_cols && a != a0 && a.rem_euclid(m) == 0 {
                out.push('|');
            }
            let _ = write!(out, "{:>w$}", grid[(b - b0) as usize][(a - a0) as usize]);
        }
        out.push('\n');
        if domains && wrap_rows && b != b0 && b.rem_euclid(n) == 0 {
            ruling(&mut out);
        }
    }
    let path: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(out, "path {}", path.join(" -> "));
    out
}

fn lift_svg(tour: &Tour, opts: &RenderOptions) -> String {
    let spec = tour.spec();
    let pts = path_points(tour);
    let (a0, a1, b0, b1) = bounds(tour, &pts);
    let c = opts.cell_px.max(4) as i64;
    let margin = c;
    let width = (a1 - a0 + 1) * c + 2 * margin;
    let height = (b1 - b0 + 1) * c + 2 * margin;
    let x = |a: i64| margin + (a - a0) * c + c / 2;
    let y = |b: i64| margin + (b1 - b) * c + c / 2;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", header(tour));
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    let _ = writeln!(out, r##"<g fill="#bbbbbb">"##);
    for b in b0..=b1 {
        for a in a0..=a1 {
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="1"/>"#, x(a), y(b));
        }
    }
    out.push_str("</g>\n");
    if opts.show_fundamental_domains && spec.topology().is_surface() {
        let _ = writeln!(out, r##"<g stroke="#4477aa" stroke-width="1">"##);
        let (left, right) = (margin, width - margin);
        let (top, bottom) = (margin, height - margin);
        for b in b0..=b1 + 1 {
            if b.rem_euclid(spec.n()) == 0 {
                // boundary below row b
                let yy = y(b) + c / 2;
                let _ = writeln!(out, r#"<line x1="{left}" y1="{yy}" x2="{right}" y2="{yy}"/>"#);
            }
        }
        if spec.topology() == crate::board::Topology::Torus {
            for a in a0..=a1 + 1 {
                if a.rem_euclid(spec.m()) == 0 {
                    let xx = x(a) - c / 2;
                    let _ = writeln!(out, r#"<line x1="{xx}" y1="{top}" x2="{xx}" y2="{bottom}"/>"#);
                }
            }
        }
        out.push_str("</g>\n");
    }
    let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", x(p.a), y(p.b))).collect();
    let _ = writeln!(
        out,
        r##"<polyline fill="none" stroke="#cc3311" stroke-width="2" points="{}"/>"##,
        coords.join(" ")
    );
    let o = pts[0];
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="#000000"/>"##,
        x(o.a),
        y(o.b),
        (c / 4).max(2)
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardSpec, KnightPair, Square};

    fn c21() -> Tour {
        let spec = BoardSpec::cylinder(2, 1).unwrap();
        let kp = |x, y| KnightPair::new(x, y).unwrap();
        Tour::from_moves(spec, Square::new(0, 0), &[kp(1, 2), kp(-1, 2)], true).unwrap()
    }

    #[test]
    fn cylinder_lift_ascii() {
        let s = render(&c21(), &RenderOptions::new(RenderMode::LiftAscii));
        assert!(s.contains("path (0,0) -> (1,2) -> (0,4)"), "{s}");
        // two columns in every grid row
        let row = s.lines().find(|l| l.starts_with("   2 ")).unwrap();
        assert_eq!(row.split_whitespace().count(), 3);
    }

    #[test]
    fn board_ascii_marks_seam_moves() {
        let s = render(&c21(), &RenderOptions::new(RenderMode::BoardAscii));
        assert_eq!(s.matches("..>").count(), 2);
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let t = Tour::empty(BoardSpec::torus(1, 1).unwrap()).unwrap();
        for tour in [t, c21()] {
            let s = render(&tour, &RenderOptions::new(RenderMode::LiftSvg));
            assert!(s.starts_with("<?xml") && s.trim_end().ends_with("</svg>"));
            assert!(s.contains("<polyline"));
        }
    }

    #[test]
    fn torus_longitude_lift_ends_two_rows_away() {
        let f = crate::construct::base_fixture(crate::construct::Family::LonTorus2xN, 2, 2).unwrap();
        let pts = path_points(&f.tour);
        let end = pts[pts.len() - 1];
        assert!(end == LiftPoint::new(0, 2) || end == LiftPoint::new(0, -2), "{end}");
        let svg = render(&f.tour, &RenderOptions::new(RenderMode::LiftSvg));
        assert!(svg.contains("<line"));
    }
}

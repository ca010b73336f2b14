//! SVG rendering of 2-dimensional polytopes: the polygon in cyclic vertex
//! order over an integer grid, with one label per facet. Output is
//! deterministic for a given input.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use toric_width::lattice::Rational;
use toric_width::polytope::LatticePolytope;
use toric_width::Error;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 1.5;

pub fn render_svg(p: &LatticePolytope, labels: &[String]) -> Result<String, Error> {
    if p.dim() != 2 {
        return Err(Error::InvalidPolytope(
            "SVG supports dimension 2 only".into(),
        ));
    }
    assert_eq!(labels.len(), p.facet_count());

    let cycle = cyclic_vertex_order(p);
    let pts: Vec<(f64, f64)> = cycle
        .iter()
        .map(|&vi| {
            let v = &p.vertices()[vi].point;
            (approx(&v[0]), approx(&v[1]))
        })
        .collect();

    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let width = (max_x - min_x) * UNIT;
    let height = (max_y - min_y) * UNIT;
    let sx = |x: f64| (x - min_x) * UNIT;
    let sy = |y: f64| (max_y - y) * UNIT;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    // Integer grid with emphasized axes.
    let mut gx = min_x.ceil() as i64;
    while (gx as f64) <= max_x {
        let stroke = if gx == 0 { "#888888" } else { "#dddddd" };
        let _ = writeln!(
            out,
            r##"  <line x1="{:.1}" y1="0" x2="{:.1}" y2="{height:.1}" stroke="{stroke}" stroke-width="1"/>"##,
            sx(gx as f64),
            sx(gx as f64)
        );
        gx += 1;
    }
    let mut gy = min_y.ceil() as i64;
    while (gy as f64) <= max_y {
        let stroke = if gy == 0 { "#888888" } else { "#dddddd" };
        let _ = writeln!(
            out,
            r##"  <line x1="0" y1="{:.1}" x2="{width:.1}" y2="{:.1}" stroke="{stroke}" stroke-width="1"/>"##,
            sy(gy as f64),
            sy(gy as f64)
        );
        gy += 1;
    }

    let poly: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#cfe0f4" fill-opacity="0.7" stroke="#1f4e96" stroke-width="2"/>"##,
        poly.join(" ")
    );
    for &(x, y) in &pts {
        let _ = writeln!(
            out,
            r##"  <circle cx="{:.1}" cy="{:.1}" r="3" fill="#1f4e96"/>"##,
            sx(x),
            sy(y)
        );
    }

    // One label per facet, pushed outward along its normal from the edge
    // midpoint.
    for (i, label) in labels.iter().enumerate() {
        let on_facet: Vec<&toric_width::polytope::Vertex> = p
            .vertices()
            .iter()
            .filter(|v| v.active_facets.contains(&i))
            .collect();
        if on_facet.len() < 2 {
            continue;
        }
        let mx = on_facet.iter().map(|v| approx(&v.point[0])).sum::<f64>() / on_facet.len() as f64;
        let my = on_facet.iter().map(|v| approx(&v.point[1])).sum::<f64>() / on_facet.len() as f64;
        let nx = bigint_f64(&p.normals()[i][0]);
        let ny = bigint_f64(&p.normals()[i][1]);
        let norm = (nx * nx + ny * ny).sqrt();
        let lx = mx + 0.45 * nx / norm;
        let ly = my + 0.45 * ny / norm;
        let _ = writeln!(
            out,
            r##"  <text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle" fill="#333333">{}</text>"##,
            sx(lx),
            sy(ly),
            label
        );
    }

    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Vertex indices in counterclockwise order around the centroid, by exact
/// half-plane and cross-product comparisons.
fn cyclic_vertex_order(p: &LatticePolytope) -> Vec<usize> {
    let verts = p.vertices();
    let n = Rational::from_integer((verts.len() as i64).into());
    let cx: Rational = verts.iter().map(|v| v.point[0].clone()).sum::<Rational>() / &n;
    let cy: Rational = verts.iter().map(|v| v.point[1].clone()).sum::<Rational>() / &n;
    let mut order: Vec<usize> = (0..verts.len()).collect();
    let rel =
        |i: usize| -> (Rational, Rational) { (&verts[i].point[0] - &cx, &verts[i].point[1] - &cy) };
    let half = |v: &(Rational, Rational)| -> u8 {
        if v.1.is_negative() || (v.1.is_zero() && v.0.is_negative()) {
            1
        } else {
            0
        }
    };
    order.sort_by(|&a, &b| {
        let (ax, ay) = rel(a);
        let (bx, by) = rel(b);
        half(&(ax.clone(), ay.clone()))
            .cmp(&half(&(bx.clone(), by.clone())))
            .then_with(|| {
                let cross = &ax * &by - &ay * &bx;
                if cross.is_positive() {
                    std::cmp::Ordering::Less
                } else if cross.is_negative() {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
    });
    order
}

fn approx(r: &Rational) -> f64 {
    bigint_f64(r.numer()) / bigint_f64(r.denom())
}

fn bigint_f64(i: &toric_width::lattice::Int) -> f64 {
    i.to_string().parse().unwrap_or(0.0)
}

//! Planar convex hulls and Hausdorff-type distances between sampled regions.
//!
//! Used to compare a Monte-Carlo point cloud against a closed-form ellipse:
//! the hull boundary should track the ellipse boundary (curve-to-curve
//! Hausdorff distance) and the cloud should fill the hull (coverage gap).

use std::collections::HashMap;

use crate::linalg::C64;

/// Andrew monotone chain. Returns the hull in counter-clockwise order
/// without repeating the first vertex; collinear points on edges are
/// dropped. Degenerate inputs yield fewer than 3 vertices.
pub fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts: Vec<C64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() < 3 {
        return pts;
    }

    let cross = |o: C64, a: C64, b: C64| -> f64 {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };

    let mut lower: Vec<C64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<C64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear: keep the two extremes.
        let mut ends = vec![pts[0], *pts.last().unwrap()];
        ends.dedup_by(|a, b| a.re == b.re && a.im == b.im);
        return ends;
    }
    lower
}

pub fn dist_point_segment(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re) + ((p - a).im * ab.im)) / len_sq;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from a point to a closed polyline (the boundary, not the region).
pub fn dist_to_closed_polyline(p: C64, poly: &[C64]) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (p - poly[0]).norm(),
        _ => (0..poly.len())
            .map(|i| dist_point_segment(p, poly[i], poly[(i + 1) % poly.len()]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Insert intermediate vertices so every edge is at most `max_seg` long;
/// keeps curve-to-curve Hausdorff estimates from skipping long edges.
pub fn densify_closed(poly: &[C64], max_seg: f64) -> Vec<C64> {
    if poly.len() < 2 {
        return poly.to_vec();
    }
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let len = (b - a).norm();
        let pieces = (len / max_seg).ceil().max(1.0) as usize;
        for k in 0..pieces {
            out.push(a + (b - a) * (k as f64 / pieces as f64));
        }
    }
    out
}

/// Symmetric Hausdorff distance between two closed curves given as polylines.
///
/// Vertices of each curve are measured against the full edges of the other,
/// so the estimate errs above truth only by the sagitta of the sampled
/// curves; densify inputs to the resolution you need.
pub fn hausdorff_closed_curves(a: &[C64], b: &[C64]) -> f64 {
    let d_ab = a
        .iter()
        .map(|&p| dist_to_closed_polyline(p, b))
        .fold(0.0, f64::max);
    let d_ba = b
        .iter()
        .map(|&p| dist_to_closed_polyline(p, a))
        .fold(0.0, f64::max);
    d_ab.max(d_ba)
}

/// Upper bound on `sup { d(x, points) : x in the hull }`, the coverage gap of
/// a sampled cloud over its own convex hull.
///
/// Probes cell centers of a uniform grid (cell size `cell`) over the hull's
/// row spans, finds each probe's exact nearest sample by ring search in a
/// spatial hash, and pads the result by the probe spacing. Returns 0 for
/// degenerate hulls (their area is 0).
pub fn coverage_gap(points: &[C64], hull: &[C64], cell: f64) -> f64 {
    assert!(cell > 0.0 && cell.is_finite());
    if hull.len() < 3 || points.is_empty() {
        return if points.is_empty() {
            f64::INFINITY
        } else {
            0.0
        };
    }

    let key =
        |x: f64, y: f64| -> (i64, i64) { ((x / cell).floor() as i64, (y / cell).floor() as i64) };
    let mut bins: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (idx, p) in points.iter().enumerate() {
        bins.entry(key(p.re, p.im)).or_default().push(idx);
    }

    let nearest = |probe: C64| -> f64 {
        let (ci, cj) = key(probe.re, probe.im);
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            // Once every unexplored cell is provably farther than `best`, stop.
            if best.is_finite() && (ring - 1) as f64 * cell > best {
                return best;
            }
            let mut any_cell = false;
            for di in -ring..=ring {
                for dj in -ring..=ring {
                    if di.abs() != ring && dj.abs() != ring {
                        continue; // only the ring boundary is new
                    }
                    if let Some(ids) = bins.get(&(ci + di, cj + dj)) {
                        any_cell = true;
                        for &id in ids {
                            best = best.min((points[id] - probe).norm());
                        }
                    }
                }
            }
            ring += 1;
            // Guard against a probe far outside the populated grid.
            if !any_cell && ring > 4_000_000 {
                return best;
            }
        }
    };

    let min_y = hull.iter().map(|p| p.im).fold(f64::INFINITY, f64::min);
    let max_y = hull.iter().map(|p| p.im).fold(f64::NEG_INFINITY, f64::max);
    let row_lo = (min_y / cell).floor() as i64;
    let row_hi = (max_y / cell).ceil() as i64;

    let mut worst = 0.0f64;
    for row in row_lo..=row_hi {
        let y = (row as f64 + 0.5) * cell;
        // A convex polygon meets a horizontal line in one interval.
        let mut x_lo = f64::INFINITY;
        let mut x_hi = f64::NEG_INFINITY;
        for i in 0..hull.len() {
            let a = hull[i];
            let b = hull[(i + 1) % hull.len()];
            if (a.im - y) * (b.im - y) <= 0.0 && a.im != b.im {
                let t = (y - a.im) / (b.im - a.im);
                if (0.0..=1.0).contains(&t) {
                    let x = a.re + t * (b.re - a.re);
                    x_lo = x_lo.min(x);
                    x_hi = x_hi.max(x);
                }
            }
        }
        if x_lo > x_hi {
            continue;
        }
        let col_lo = (x_lo / cell).floor() as i64 - 1;
        let col_hi = (x_hi / cell).ceil() as i64 + 1;
        for col in col_lo..=col_hi {
            let probe = C64::new((col as f64 + 0.5) * cell, y);
            worst = worst.max(nearest(probe));
        }
    }
    // Any hull point is within cell·√2/2 of a probed center.
    worst + cell * std::f64::consts::FRAC_1_SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(0.0, 1.0),
            c(0.5, 0.5),
            c(0.25, 0.75),
            c(0.5, 0.0), // collinear on an edge
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        // Counter-clockwise: positive signed area.
        let area: f64 = (0..hull.len())
            .map(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % hull.len()];
                a.re * b.im - b.re * a.im
            })
            .sum::<f64>()
            / 2.0;
        assert!((area - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hull_of_collinear_points_keeps_extremes() {
        let pts: Vec<C64> = (0..10).map(|k| c(k as f64, 2.0 * k as f64)).collect();
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 2);
        assert_eq!(hull[0], c(0.0, 0.0));
        assert_eq!(hull[1], c(9.0, 18.0));
    }

    #[test]
    fn segment_distance_basics() {
        let a = c(0.0, 0.0);
        let b = c(2.0, 0.0);
        assert!((dist_point_segment(c(1.0, 1.0), a, b) - 1.0).abs() < 1e-15);
        assert!((dist_point_segment(c(3.0, 0.0), a, b) - 1.0).abs() < 1e-15);
        assert!((dist_point_segment(c(-3.0, 4.0), a, b) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn hausdorff_between_shifted_squares() {
        let square =
            |s: f64, d: C64| -> Vec<C64> { vec![d, d + c(s, 0.0), d + c(s, s), d + c(0.0, s)] };
        let a = densify_closed(&square(1.0, c(0.0, 0.0)), 0.01);
        let b = densify_closed(&square(1.0, c(0.25, 0.0)), 0.01);
        let d = hausdorff_closed_curves(&a, &b);
        assert!((d - 0.25).abs() < 0.02, "got {d}");
    }

    #[test]
    fn coverage_gap_detects_a_hole() {
        // Dense ring of boundary points, nothing inside: the gap is about the
        // inradius of the square.
        let mut pts = Vec::new();
        for k in 0..400 {
            let t = k as f64 / 400.0;
            pts.push(c(t * 2.0 - 1.0, -1.0));
            pts.push(c(t * 2.0 - 1.0, 1.0));
            pts.push(c(-1.0, t * 2.0 - 1.0));
            pts.push(c(1.0, t * 2.0 - 1.0));
        }
        let hull = convex_hull(&pts);
        let gap = coverage_gap(&pts, &hull, 0.05);
        assert!(gap > 0.8 && gap < 1.2, "got {gap}");

        // Filling the interior closes the gap.
        for i in 0..40 {
            for j in 0..40 {
                pts.push(c(i as f64 / 20.0 - 1.0, j as f64 / 20.0 - 1.0));
            }
        }
        let gap = coverage_gap(&pts, &hull, 0.05);
        assert!(gap < 0.12, "got {gap}");
    }
}

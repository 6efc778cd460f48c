use crate::curve_model::{geom, SampledPath};
use crate::{Error, Result};

/// Winding number of a closed ring (last point joins the first) around `p`,
/// by signed upward/downward crossings. Points on the ring give an
/// unspecified value.
pub fn ring_winding(ring: &[[f64; 2]], p: [f64; 2]) -> i64 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let side = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= p[1] {
            if b[1] > p[1] && side > 0.0 {
                w += 1;
            }
        } else if b[1] <= p[1] && side < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Signed winding number of a closed planar path around `point`.
///
/// Fails with [`Error::PointOnCurve`] when the point is within `tol` of the
/// path; `tol = None` uses `1e-9 ×` the path's bounding-box diameter.
pub fn winding_number(path: &SampledPath, point: [f64; 2], tol: Option<f64>) -> Result<i64> {
    if path.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: path.dim(),
        });
    }
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let tol = tol.unwrap_or_else(|| {
        let (lo, hi) = path.bounding_box();
        1e-9 * geom::diameter(&lo, &hi)
    });
    let on_curve = path
        .segments()
        .any(|(a, b)| geom::project_onto_segment(&point, a, b).1 <= tol);
    if on_curve {
        return Err(Error::PointOnCurve);
    }
    let ring: Vec<[f64; 2]> = path.points()[..path.len() - 1].iter().map(|p| [p[0], p[1]]).collect();
    Ok(ring_winding(&ring, point))
}

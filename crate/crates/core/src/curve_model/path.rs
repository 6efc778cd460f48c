use serde::{Deserialize, Serialize};

use super::geom;
use crate::{Error, Result, FORMAT_TAG};

/// A parametrized polyline `t ↦ G(t)` in `ℝⁿ`, linear between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    dim: usize,
    times: Vec<f64>,
    points: Vec<Vec<f64>>,
    closed: bool,
}

impl SampledPath {
    /// Validates the samples. A path flagged `closed` whose last point is
    /// within `1e-9 × diameter` of the first has its last point snapped onto
    /// the first.
    pub fn new(dim: usize, samples: Vec<(f64, Vec<f64>)>, closed: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("path dimension must be positive".into()));
        }
        if samples.len() < 2 {
            return Err(Error::InvalidInput("a path needs at least two samples".into()));
        }
        let mut times = Vec::with_capacity(samples.len());
        let mut points = Vec::with_capacity(samples.len());
        for (i, (t, p)) in samples.into_iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if !t.is_finite() || p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("sample {i} is not finite")));
            }
            if let Some(&prev) = times.last() {
                if t <= prev {
                    return Err(Error::InvalidInput(format!(
                        "sample times must increase strictly (sample {i})"
                    )));
                }
            }
            times.push(t);
            points.push(p);
        }
        if closed {
            let (lo, hi) = geom::bounding_box(dim, points.iter().map(|p| p.as_slice()));
            let snap = 1e-9 * geom::diameter(&lo, &hi).max(1e-300);
            let first = points[0].clone();
            let last = points.last_mut().unwrap();
            if geom::dist(&first, last) > snap {
                return Err(Error::InvalidInput(
                    "closed path does not end where it starts".into(),
                ));
            }
            *last = first;
        }
        Ok(SampledPath {
            dim,
            times,
            points,
            closed,
        })
    }

    /// Samples at `t = 0, 1, 2, ..`.
    pub fn from_points(points: Vec<Vec<f64>>, closed: bool) -> Result<Self> {
        let dim = points.first().map(|p| p.len()).unwrap_or(0);
        let samples = points.into_iter().enumerate().map(|(i, p)| (i as f64, p)).collect();
        SampledPath::new(dim, samples, closed)
    }

    /// A closed path that reports `closed` iff its endpoints coincide.
    pub fn from_points_auto(points: Vec<Vec<f64>>) -> Result<Self> {
        let closed = points.len() >= 2 && points.first() == points.last();
        SampledPath::from_points(points, closed)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn start(&self) -> &[f64] {
        &self.points[0]
    }

    pub fn end(&self) -> &[f64] {
        self.points.last().unwrap()
    }

    /// Consecutive sample pairs.
    pub fn segments(&self) -> impl Iterator<Item = (&[f64], &[f64])> + '_ {
        self.points.windows(2).map(|w| (w[0].as_slice(), w[1].as_slice()))
    }

    /// `∫ ‖G'(t)‖_{ℓ¹} dt`.
    pub fn l1_length(&self) -> f64 {
        self.segments()
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (y - x).abs()).sum::<f64>())
            .sum()
    }

    pub fn euclidean_length(&self) -> f64 {
        self.segments().map(|(a, b)| geom::dist(a, b)).sum()
    }

    pub fn max_abs_coordinate(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.iter())
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        geom::bounding_box(self.dim, self.points.iter().map(|p| p.as_slice()))
    }

    /// Applies `f` to every sample point, keeping the time grid.
    pub fn map_points<F: FnMut(&[f64]) -> Vec<f64>>(&self, mut f: F) -> Result<SampledPath> {
        let samples: Vec<_> = self
            .times
            .iter()
            .zip(&self.points)
            .map(|(&t, p)| (t, f(p)))
            .collect();
        let dim = samples[0].1.len();
        SampledPath::new(dim, samples, self.closed)
    }

    /// Path followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &SampledPath) -> Result<SampledPath> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if geom::dist(self.end(), other.start()) > 1e-12 {
            return Err(Error::InvalidInput("paths do not join".into()));
        }
        let shift = self.times.last().unwrap() - other.times[0];
        let mut samples: Vec<_> = self
            .times
            .iter()
            .cloned()
            .zip(self.points.iter().cloned())
            .collect();
        samples.extend(
            other
                .times
                .iter()
                .zip(&other.points)
                .skip(1)
                .map(|(&t, p)| (t + shift, p.clone())),
        );
        let closed = geom::dist(&samples[0].1, &samples.last().unwrap().1) == 0.0;
        SampledPath::new(self.dim, samples, closed)
    }

    pub fn to_document(&self) -> PathDocument {
        PathDocument {
            format: FORMAT_TAG.to_string(),
            dim: self.dim,
            closed: self.closed,
            samples: self
                .times
                .iter()
                .zip(&self.points)
                .map(|(&t, p)| std::iter::once(t).chain(p.iter().cloned()).collect())
                .collect(),
        }
    }

    pub fn from_document(doc: &PathDocument) -> Result<SampledPath> {
        check_format(&doc.format)?;
        let samples = doc
            .samples
            .iter()
            .map(|row| {
                if row.len() != doc.dim + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: doc.dim + 1,
                        got: row.len(),
                    });
                }
                Ok((row[0], row[1..].to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        SampledPath::new(doc.dim, samples, doc.closed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("path serializes")
    }

    pub fn from_json(s: &str) -> Result<SampledPath> {
        let doc: PathDocument = serde_json::from_str(s)?;
        SampledPath::from_document(&doc)
    }
}

pub(crate) fn check_format(tag: &str) -> Result<()> {
    if tag == FORMAT_TAG {
        Ok(())
    } else {
        Err(Error::Format(tag.to_string()))
    }
}

/// `{"format": "moment-atlas/1", "dim": n, "closed": true, "samples": [[t, x1..xn], ..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDocument {
    pub format: String,
    pub dim: usize,
    pub closed: bool,
    pub samples: Vec<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_times() {
        let r = SampledPath::new(1, vec![(0.0, vec![0.0]), (0.0, vec![1.0])], false);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_wrong_point_length() {
        let r = SampledPath::new(2, vec![(0.0, vec![0.0, 0.0]), (1.0, vec![1.0])], false);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closed_paths_snap_their_endpoint() {
        let p = SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![1e-12, 0.0]],
            true,
        )
        .unwrap();
        assert_eq!(p.start(), p.end());
        assert!(SampledPath::from_points(vec![vec![0.0], vec![1.0]], true).is_err());
    }

    #[test]
    fn document_round_trip() {
        let p = SampledPath::new(
            2,
            vec![(0.0, vec![0.0, 0.0]), (0.5, vec![1.0, 0.0]), (2.0, vec![0.0, 0.0])],
            true,
        )
        .unwrap();
        let back = SampledPath::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn unknown_format_tag_is_rejected() {
        let s = r#"{"format":"other/2","dim":1,"closed":false,"samples":[[0,0],[1,1]]}"#;
        assert!(matches!(SampledPath::from_json(s), Err(Error::Format(_))));
    }
}

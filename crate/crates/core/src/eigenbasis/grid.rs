use serde::Serialize;

use crate::geometry::{Frame, FrameKind, ModelParams};

/// Chebyshev-Gauss evaluation grid inside a frame's open domain.
///
/// Points are `-L cos(π (j + 1/2) / G)`, so they never touch `±L`; for odd
/// `G` the middle point is exactly 0. In the `ε = 0` regime the domain is
/// unbounded and `L` is chosen to cover the classically allowed region of
/// the highest tabulated state with a margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub frame: FrameKind,
    pub points: usize,
    pub half_width: f64,
}

impl GridSpec {
    pub const DEFAULT_POINTS: usize = 257;

    pub fn new(p: &ModelParams, frame: FrameKind, points: usize, n_max: usize) -> Self {
        let half_width = if p.is_limit() {
            ((2.0 * n_max as f64 + 1.0).sqrt() + 6.0) / (p.mass * p.omega).sqrt()
        } else {
            Frame::new(p, frame).half_width
        };
        GridSpec { frame, points, half_width }
    }

    pub fn coords(&self) -> Vec<f64> {
        let g = self.points;
        let mut out = vec![0.0; g];
        for j in 0..g / 2 {
            let c = self.half_width * (std::f64::consts::PI * (j as f64 + 0.5) / g as f64).cos();
            out[j] = -c;
            out[g - 1 - j] = c;
        }
        out
    }
}

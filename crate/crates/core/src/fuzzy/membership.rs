use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// Piecewise-linear membership function over a real universe.
///
/// Breakpoints are non-decreasing. Coincident breakpoints are allowed and
/// describe shoulders: `Trapezoidal(0, 0, 0, 2.5)` is 1 at 0 and falls to 0
/// at 2.5.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", content = "points", rename_all = "lowercase")]
pub enum MembershipFunction {
    Triangular(f64, f64, f64),
    Trapezoidal(f64, f64, f64, f64),
}

/// The linear piece of a membership function on an open interval:
/// `degree(x) = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    pub const ZERO: Line = Line { slope: 0.0, intercept: 0.0 };
    pub const ONE: Line = Line { slope: 0.0, intercept: 1.0 };

    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    fn through(x0: f64, y0: f64, x1: f64, y1: f64) -> Line {
        let slope = (y1 - y0) / (x1 - x0);
        Line { slope, intercept: y0 - slope * x0 }
    }
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        let mf = MembershipFunction::Triangular(a, b, c);
        mf.validate()?;
        Ok(mf)
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        let mf = MembershipFunction::Trapezoidal(a, b, c, d);
        mf.validate()?;
        Ok(mf)
    }

    /// Breakpoints as a trapezoid `(a, b, c, d)`; a triangle has `b == c`.
    pub fn corners(&self) -> (f64, f64, f64, f64) {
        match *self {
            MembershipFunction::Triangular(a, b, c) => (a, b, b, c),
            MembershipFunction::Trapezoidal(a, b, c, d) => (a, b, c, d),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            MembershipFunction::Triangular(a, b, c) => vec![a, b, c],
            MembershipFunction::Trapezoidal(a, b, c, d) => vec![a, b, c, d],
        }
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        let points = self.breakpoints();
        if points.iter().any(|p| !p.is_finite()) {
            return Err(FuzzyError::Config(format!(
                "membership breakpoints must be finite, got {points:?}"
            )));
        }
        if points.windows(2).any(|w| w[0] > w[1]) {
            return Err(FuzzyError::Config(format!(
                "membership breakpoints must be non-decreasing, got {points:?}"
            )));
        }
        Ok(())
    }

    /// Support `[a, last breakpoint]`.
    pub fn support(&self) -> (f64, f64) {
        let (a, _, _, d) = self.corners();
        (a, d)
    }

    /// Membership degree in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        let (a, b, c, d) = self.corners();
        if x < a || x > d {
            0.0
        } else if x < b {
            (x - a) / (b - a)
        } else if x <= c {
            1.0
        } else if x < d {
            (d - x) / (d - c)
        } else {
            // x == d with c < d
            0.0
        }
    }

    /// The linear piece containing `x`. Only meaningful when `x` is not a
    /// breakpoint; callers pass interval midpoints.
    pub(crate) fn piece_at(&self, x: f64) -> Line {
        let (a, b, c, d) = self.corners();
        if x < a || x > d {
            Line::ZERO
        } else if x < b {
            Line::through(a, 0.0, b, 1.0)
        } else if x <= c {
            Line::ONE
        } else if x < d {
            Line::through(c, 1.0, d, 0.0)
        } else {
            Line::ZERO
        }
    }

    /// Points where the function crosses `level` on its sloped edges.
    pub(crate) fn level_crossings(&self, level: f64) -> [Option<f64>; 2] {
        let (a, b, c, d) = self.corners();
        let rising = (b > a).then_some(a + level * (b - a));
        let falling = (d > c).then_some(d - level * (d - c));
        [rising, falling]
    }
}

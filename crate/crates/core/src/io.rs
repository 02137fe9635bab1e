//! Body files: `{"kappa": 0|1, "dim": n, "balls": [{"center": [...], "radius": r}, ...]}`.
//!
//! Numbers are written with 17 significant digits so a written body parses
//! back bit-exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaceform::Curvature;
use crate::{Ball, Body, Point, Scalar, SpaceForm};

/// Plain-number description of a body, as stored in files and reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDescriptor {
    pub kappa: i64,
    pub dim: usize,
    pub balls: Vec<BallSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BodyDescriptor {
    pub fn from_body<T: Scalar>(body: &Body<T>) -> Self {
        let sf = body.space();
        BodyDescriptor {
            kappa: sf.kappa() as i64,
            dim: sf.dim(),
            balls: body
                .balls()
                .iter()
                .map(|b| BallSpec {
                    center: b.center.coords().iter().map(|x| x.as_f64()).collect(),
                    radius: b.radius.as_f64(),
                })
                .collect(),
        }
    }

    /// Validates field shapes with per-ball diagnostics and builds the body.
    pub fn to_body<T: Scalar>(&self) -> Result<Body<T>> {
        let curvature = Curvature::from_kappa(self.kappa)
            .map_err(|_| Error::Format(format!("kappa: expected 0 or 1, found {}", self.kappa)))?;
        let sf = SpaceForm::new(curvature, self.dim)
            .map_err(|e| Error::Format(format!("dim: {e}")))?;
        if self.balls.is_empty() {
            return Err(Error::Format("balls: expected at least one ball".into()));
        }
        let want = sf.ambient_dim();
        let mut balls = Vec::with_capacity(self.balls.len());
        for (i, b) in self.balls.iter().enumerate() {
            if b.center.len() != want {
                return Err(Error::Format(format!(
                    "balls[{i}].center: expected {want} coordinates, found {}",
                    b.center.len()
                )));
            }
            let center = sf
                .point(b.center.iter().map(|&x| T::lit(x)).collect())
                .map_err(|e| Error::Format(format!("balls[{i}].center: {e}")))?;
            balls.push(Ball::new(center, T::lit(b.radius)));
        }
        Body::new(sf, balls)
    }

    /// Pretty JSON with `{:.16e}` numbers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{{\n  \"kappa\": {},\n  \"dim\": {},\n  \"balls\": [", self.kappa, self.dim);
        for (i, b) in self.balls.iter().enumerate() {
            let coords: Vec<String> = b.center.iter().map(|x| format!("{x:.16e}")).collect();
            s.push_str(if i == 0 { "\n" } else { ",\n" });
            s.push_str(&format!(
                "    {{\"center\": [{}], \"radius\": {:.16e}}}",
                coords.join(", "),
                b.radius
            ));
        }
        s.push_str(if self.balls.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        s
    }
}

/// Parses a body file. JSON errors carry line and column.
pub fn parse_body<T: Scalar>(text: &str) -> Result<Body<T>> {
    let desc: BodyDescriptor = serde_json::from_str(text)?;
    desc.to_body()
}

pub fn write_body<T: Scalar>(body: &Body<T>) -> String {
    BodyDescriptor::from_body(body).to_text()
}

/// Curvature-aware unit-norm point built from raw coordinates.
pub fn point_from_f64<T: Scalar>(sf: &SpaceForm, coords: &[f64]) -> Result<Point<T>> {
    sf.point(coords.iter().map(|&x| T::lit(x)).collect())
}

//! SVG rendering of disk and annulus images under a harmonic map.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::series::Complex;

pub const BLUE: &str = "#1f4fbf";
pub const RED: &str = "#c8312b";
pub const YELLOW: &str = "#e0b000";
pub const PALETTE: [&str; 3] = [BLUE, RED, YELLOW];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub r_inner: f64,
    pub r_outer: f64,
    pub color: String,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub map: HarmonicMap,
    pub bands: Vec<Band>,
    pub n_circles: usize,
    pub n_rays: usize,
    pub samples_per_curve: usize,
    /// Width and height of the SVG viewport.
    pub canvas: (f64, f64),
}

impl RenderSpec {
    /// Bands `(r_i, r_{i+1})` colored from [`PALETTE`] in order, with
    /// 8 circles per band, 24 rays and 256 samples per curve.
    pub fn with_defaults(map: HarmonicMap, radii: &[(f64, f64)]) -> Self {
        let bands = radii
            .iter()
            .enumerate()
            .map(|(i, &(r_inner, r_outer))| Band {
                r_inner,
                r_outer,
                color: PALETTE[i % PALETTE.len()].to_string(),
            })
            .collect();
        Self {
            map,
            bands,
            n_circles: 8,
            n_rays: 24,
            samples_per_curve: 256,
            canvas: (800.0, 800.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bands.is_empty() {
            return Err(Error::InvalidConfig("at least one band is required".into()));
        }
        for b in &self.bands {
            if !(0.0 <= b.r_inner && b.r_inner < b.r_outer && b.r_outer < 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "band ({}, {}) is not inside [0, 1)",
                    b.r_inner, b.r_outer
                )));
            }
        }
        if self.n_rays < 4 || self.samples_per_curve < 64 || self.n_circles < 1 {
            return Err(Error::InvalidConfig(
                "need n_rays >= 4, samples_per_curve >= 64, n_circles >= 1".into(),
            ));
        }
        if !(self.canvas.0 > 0.0 && self.canvas.1 > 0.0) {
            return Err(Error::InvalidConfig(
                "canvas must have positive size".into(),
            ));
        }
        Ok(())
    }
}

/// Image of one parameter curve: parameters and mapped vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub params: Vec<Complex>,
    pub points: Vec<Complex>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BandCurves {
    pub color: String,
    /// Circle images by increasing radius, then ray images by angle.
    pub curves: Vec<Curve>,
}

fn curve(map: &HarmonicMap, params: Vec<Complex>) -> Curve {
    let points = params.iter().map(|&z| map.eval(z)).collect();
    Curve { params, points }
}

/// Maps the circles and rays of every band, outer band first.
pub fn trace(spec: &RenderSpec) -> Result<Vec<BandCurves>> {
    spec.validate()?;
    let m = spec.samples_per_curve;
    let mut out = Vec::with_capacity(spec.bands.len());
    let mut order: Vec<&Band> = spec.bands.iter().collect();
    order.sort_by(|a, b| b.r_outer.total_cmp(&a.r_outer));
    for band in order {
        let mut curves = Vec::new();
        for i in 1..=spec.n_circles {
            let r = band.r_inner + (band.r_outer - band.r_inner) * i as f64 / spec.n_circles as f64;
            let params = (0..=m)
                .map(|k| Complex::from_polar(r, TAU * (k % m) as f64 / m as f64))
                .collect();
            curves.push(curve(&spec.map, params));
        }
        for j in 0..spec.n_rays {
            let theta = TAU * j as f64 / spec.n_rays as f64;
            let params = (0..=m)
                .map(|k| {
                    let r = band.r_inner + (band.r_outer - band.r_inner) * k as f64 / m as f64;
                    Complex::from_polar(r, theta)
                })
                .collect();
            curves.push(curve(&spec.map, params));
        }
        out.push(BandCurves {
            color: band.color.clone(),
            curves,
        });
    }
    Ok(out)
}

/// Formats with 9 significant digits in plain decimal notation.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Renders the traced curves as an SVG 1.1 document. The viewBox is the
/// bounding box of all vertices with a 5% margin; the y axis is flipped.
pub fn render(spec: &RenderSpec) -> Result<String> {
    let bands = trace(spec)?;
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in bands.iter().flat_map(|b| &b.curves).flat_map(|c| &c.points) {
        if p.re.is_finite() && p.im.is_finite() {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(-p.im);
            y1 = y1.max(-p.im);
        }
    }
    if !x0.is_finite() {
        return Err(Error::InvalidConfig("image has no finite points".into()));
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = 0.05 * extent;
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(spec.canvas.0),
        num(spec.canvas.1),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    for band in &bands {
        let _ = writeln!(
            svg,
            "<g stroke=\"{}\" fill=\"none\" stroke-width=\"{}\">",
            band.color,
            num(0.002 * extent)
        );
        for c in &band.curves {
            svg.push_str("<path d=\"");
            for (k, p) in c.points.iter().enumerate() {
                let cmd = if k == 0 { "M" } else { " L" };
                let _ = write!(svg, "{cmd}{} {}", num(p.re), num(-p.im));
            }
            svg.push_str("\"/>\n");
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

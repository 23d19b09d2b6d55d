//! Brill–Noether numerology: ρ, r′, ρ̄_k and the nonemptiness region.

use serde::Serialize;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Genus, rank, degree and optional gonality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BNParams {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub k: Option<i64>,
}

impl BNParams {
    pub fn new(g: i64, r: i64, d: i64, k: Option<i64>) -> Result<Self> {
        check_grd(g, r, d)?;
        if let Some(k) = k {
            check_gonality(g, k)?;
        }
        Ok(BNParams { g, r, d, k })
    }

    /// s = g − d + r, the number of rows of the relevant tableaux.
    pub fn s(&self) -> i64 {
        self.g - self.d + self.r
    }
}

fn check_grd(g: i64, r: i64, d: i64) -> Result<()> {
    if g < 1 {
        return Err(Error::invalid(format!("genus must be >= 1, got {g}")));
    }
    if r < 0 {
        return Err(Error::invalid(format!("rank must be >= 0, got {r}")));
    }
    if d < 0 {
        return Err(Error::invalid(format!("degree must be >= 0, got {d}")));
    }
    Ok(())
}

pub fn max_gonality(g: i64) -> i64 {
    (g + 3) / 2
}

fn check_gonality(g: i64, k: i64) -> Result<()> {
    if k < 2 || k > max_gonality(g) {
        return Err(Error::invalid(format!(
            "gonality {k} outside [2, {}] for genus {g}",
            max_gonality(g)
        )));
    }
    Ok(())
}

fn rho_raw(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

pub fn rho(g: i64, r: i64, d: i64) -> Result<i64> {
    check_grd(g, r, d)?;
    Ok(rho_raw(g, r, d))
}

pub fn r_prime(g: i64, r: i64, d: i64) -> Result<i64> {
    check_grd(g, r, d)?;
    Ok(r.min(g - d + r - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoBar {
    pub value: i64,
    pub maximizers: Vec<i64>,
}

/// max over ℓ ∈ {0..max(r′,0)} of ρ(g, r−ℓ, d) − ℓk, with every maximizing ℓ.
pub fn rho_bar(g: i64, r: i64, d: i64, k: i64) -> Result<RhoBar> {
    check_grd(g, r, d)?;
    if k < 2 {
        return Err(Error::invalid(format!("gonality must be >= 2, got {k}")));
    }
    let top = r.min(g - d + r - 1).max(0);
    let mut value = i64::MIN;
    let mut maximizers = Vec::new();
    for l in 0..=top {
        let v = rho_raw(g, r - l, d) - l * k;
        if v > value {
            value = v;
            maximizers.clear();
        }
        if v == value {
            maximizers.push(l);
        }
    }
    Ok(RhoBar { value, maximizers })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    pub x: i64,
    pub y: i64,
    pub r: i64,
    pub d: i64,
    pub rho_bar: i64,
    pub nonempty: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BnRegion {
    pub g: i64,
    pub k: i64,
    pub points: Vec<RegionPoint>,
    /// Sampled curve min_ℓ (x−ℓ)(y−ℓ)+ℓk = g, for drawing only.
    pub boundary: Vec<(f64, f64)>,
}

/// Classify integer points (x, y) = (r+1, g−d+r) with 1 ≤ x ≤ x_max, 1 ≤ y ≤ y_max.
pub fn bn_region(g: i64, k: i64, x_max: i64, y_max: i64, step: f64) -> Result<BnRegion> {
    if g < 1 {
        return Err(Error::invalid(format!("genus must be >= 1, got {g}")));
    }
    check_gonality(g, k)?;
    if x_max < 1 || y_max < 1 || !step.is_finite() || step <= 0.0 {
        return Err(Error::invalid("sampling bounds must be positive"));
    }
    let mut points = Vec::new();
    for x in 1..=x_max {
        for y in 1..=y_max {
            let r = x - 1;
            let d = g + r - y;
            if d < 0 {
                continue;
            }
            let rb = rho_bar(g, r, d, k)?.value;
            points.push(RegionPoint { x, y, r, d, rho_bar: rb, nonempty: rb >= 0 });
        }
    }
    let mut boundary = Vec::new();
    let mut x = 1.0f64;
    while x <= x_max as f64 + 1e-9 {
        if let Some(y) = boundary_y(g as f64, k as f64, x, y_max as f64) {
            boundary.push((x, y));
        }
        x += step;
    }
    Ok(BnRegion { g, k, points, boundary })
}

fn boundary_fn(k: f64, x: f64, y: f64) -> f64 {
    let top = (x.min(y) - 1.0).floor().max(0.0) as i64;
    (0..=top)
        .map(|l| {
            let l = l as f64;
            (x - l) * (y - l) + l * k
        })
        .fold(f64::INFINITY, f64::min)
}

fn boundary_y(g: f64, k: f64, x: f64, y_max: f64) -> Option<f64> {
    let (mut lo, mut hi) = (0.0f64, y_max.max(g + 1.0));
    if boundary_fn(k, x, lo) > g || boundary_fn(k, x, hi) < g {
        return None;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if boundary_fn(k, x, mid) < g {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

impl BnRegion {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,r,d,rho_bar,nonempty\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{},{},{},{}", p.x, p.y, p.r, p.d, p.rho_bar, p.nonempty);
        }
        out
    }

    /// Scatter of the integer points over the k-gonal boundary, the line x+y=g+1 and the hyperbola xy=g.
    pub fn to_svg(&self) -> String {
        let x_max = self.points.iter().map(|p| p.x).max().unwrap_or(1) as f64 + 1.0;
        let y_max = self.points.iter().map(|p| p.y).max().unwrap_or(1) as f64 + 1.0;
        let (w, h, pad) = (480.0, 480.0, 30.0);
        let sx = |x: f64| pad + x / x_max * (w - 2.0 * pad);
        let sy = |y: f64| h - pad - y / y_max * (h - 2.0 * pad);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            sx(0.0), sy(0.0), sx(x_max), sy(0.0), sx(0.0), sy(0.0), sx(0.0), sy(y_max)
        );
        let g = self.g as f64;
        let line = format!(
            "{:.3},{:.3} {:.3},{:.3}",
            sx(0.0), sy(g + 1.0), sx(g + 1.0), sy(0.0)
        );
        let _ = writeln!(s, r#"<polyline points="{line}" fill="none" stroke="gray" stroke-dasharray="4"/>"#);
        let hyper: Vec<String> = (1..=200)
            .map(|i| {
                let x = x_max * i as f64 / 200.0;
                format!("{:.3},{:.3}", sx(x), sy((g / x).min(y_max)))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="1,3"/>"#,
            hyper.join(" ")
        );
        let curve: Vec<String> = self
            .boundary
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y.min(y_max))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="crimson" stroke-width="2"/>"#,
            curve.join(" ")
        );
        for p in &self.points {
            let fill = if p.nonempty { "black" } else { "white" };
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{fill}" stroke="black"/>"#,
                sx(p.x as f64),
                sy(p.y as f64)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

//! Sampled region maps and their CSV and SVG renderings.

use std::fmt::Write as _;

use super::{classify_region, figure_points, ProblemParams, RegionLabel};
use crate::error::{Error, Result};

/// Axis ranges and resolution of a region scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionGrid {
    pub n: u32,
    pub gamma_max: f64,
    pub p_max: f64,
    /// Samples per axis; cells are sampled at their centres.
    pub resolution: usize,
}

impl RegionGrid {
    pub fn for_dimension(n: u32, resolution: usize) -> Self {
        let nf = n as f64;
        // a little beyond point a, which sits at gamma = 1
        let p_a = if n > 2 { (nf + 2.0) / (nf - 2.0) } else { 4.0 };
        Self { n, gamma_max: 1.25, p_max: (p_a + 0.5).min(4.0), resolution }
    }

    pub fn gamma_at(&self, i: usize) -> f64 {
        self.gamma_max * (i as f64 + 0.5) / self.resolution as f64
    }

    pub fn p_at(&self, j: usize) -> f64 {
        1.0 + (self.p_max - 1.0) * (j as f64 + 0.5) / self.resolution as f64
    }

    /// Labels indexed as `[p_index][gamma_index]`.
    pub fn scan(&self) -> Result<Vec<Vec<RegionLabel>>> {
        if self.n <= 3 {
            return Err(Error::Precondition(format!("region maps need n > 3, got {}", self.n)));
        }
        (0..self.resolution)
            .map(|j| {
                (0..self.resolution)
                    .map(|i| Ok(classify_region(&ProblemParams::new(self.n, self.gamma_at(i), self.p_at(j))?)))
                    .collect()
            })
            .collect()
    }
}

/// Name, stroke colour and `p` as a function of `gamma`.
type Boundary = (&'static str, &'static str, Box<dyn Fn(f64) -> f64>);

/// CSV with header `gamma,p,label`, rows ordered by `p` then `gamma`.
pub fn region_csv(grid: &RegionGrid) -> Result<String> {
    let labels = grid.scan()?;
    let mut out = String::from("gamma,p,label\n");
    for (j, row) in labels.iter().enumerate() {
        for (i, label) in row.iter().enumerate() {
            writeln!(out, "{},{},{}", grid.gamma_at(i), grid.p_at(j), label).unwrap();
        }
    }
    Ok(out)
}

fn fill(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::IllScaling => "#e8b4b4",
        RegionLabel::IllConcentration => "#f2d0a9",
        RegionLabel::KnownWellPosed => "#b9d7ea",
        RegionLabel::NewWellPosed => "#b8e0b0",
        RegionLabel::OpenRegionD => "#e6e6a6",
        RegionLabel::EndpointD => "#555555",
        RegionLabel::EndpointE => "#555555",
        RegionLabel::LowPower => "#d9d2ea",
        RegionLabel::OutOfScope => "#ffffff",
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

/// SVG with `gamma` across and `p` up: region fills, the four boundary lines and points a to e.
pub fn region_svg(grid: &RegionGrid) -> Result<String> {
    let labels = grid.scan()?;
    let n = grid.n as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let x = |g: f64| MARGIN + plot_w * g / grid.gamma_max;
    let y = |p: f64| HEIGHT - MARGIN - plot_h * (p - 1.0) / (grid.p_max - 1.0);
    let cell_w = plot_w / grid.resolution as f64;
    let cell_h = plot_h / grid.resolution as f64;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();

    // region fills, merging runs of equal labels along each row
    s.push_str("<g shape-rendering=\"crispEdges\">\n");
    for (j, row) in labels.iter().enumerate() {
        let top = HEIGHT - MARGIN - cell_h * (j + 1) as f64;
        let mut start = 0;
        while start < row.len() {
            let mut end = start + 1;
            while end < row.len() && row[end] == row[start] {
                end += 1;
            }
            writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"><title>{}</title></rect>"#,
                MARGIN + cell_w * start as f64,
                top,
                cell_w * (end - start) as f64,
                cell_h,
                fill(row[start]),
                row[start]
            )
            .unwrap();
            start = end;
        }
    }
    s.push_str("</g>\n");

    // boundary lines p = boundary(gamma)
    let boundaries: [Boundary; 4] = [
        ("scaling", "#8b0000", Box::new(move |g| ((n + 4.0) / 2.0 - g) / (n / 2.0 - g))),
        ("concentration", "#b35900", Box::new(move |g| ((n + 5.0) / 4.0 - g) / ((n + 1.0) / 4.0 - g))),
        (
            "ls-cond",
            "#1f4e79",
            Box::new(move |g| (n + 1.0) / (2.0 * n) * ((n + 3.0) / 2.0 - g) / ((n + 1.0) / 4.0 - g)),
        ),
        ("technical", "#2e7d32", Box::new(move |g| 0.5 * ((n + 3.0) / 2.0 - g) / (n / 4.0 - g))),
    ];
    for (name, colour, curve) in &boundaries {
        let mut pts = Vec::new();
        for i in 0..=400 {
            let g = grid.gamma_max * i as f64 / 400.0;
            let p = curve(g);
            if p.is_finite() && p > 1.0 && p <= grid.p_max {
                pts.push(format!("{:.2},{:.2}", x(g), y(p)));
            } else if !pts.is_empty() {
                break;
            }
        }
        if pts.len() > 1 {
            writeln!(
                s,
                r#"<polyline class="boundary" data-name="{name}" fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            )
            .unwrap();
        }
    }

    // axes and ticks
    writeln!(
        s,
        r#"<path d="M{m} {b} H{r} M{m} {b} V{t}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN
    )
    .unwrap();
    let ticks = 5;
    for i in 0..=ticks {
        let g = grid.gamma_max * i as f64 / ticks as f64;
        let p = 1.0 + (grid.p_max - 1.0) * i as f64 / ticks as f64;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.2}</text>"#, x(g), HEIGHT - MARGIN + 16.0, g)
            .unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.2}</text>"#, MARGIN - 6.0, y(p) + 4.0, p).unwrap();
    }
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">gamma</text>"#, WIDTH / 2.0, HEIGHT - 16.0).unwrap();
    writeln!(s, r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle">p</text>"#, HEIGHT / 2.0, HEIGHT / 2.0)
        .unwrap();
    writeln!(s, r#"<text x="{:.2}" y="24" text-anchor="middle">n = {}</text>"#, WIDTH / 2.0, grid.n).unwrap();

    for (name, g, p) in figure_points(grid.n) {
        if g <= grid.gamma_max && p > 1.0 && p <= grid.p_max {
            writeln!(
                s,
                r#"<circle class="point" data-name="{name}" cx="{:.2}" cy="{:.2}" r="3.5" fill="black"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
                x(g),
                y(p),
                x(g) + 6.0,
                y(p) - 6.0
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

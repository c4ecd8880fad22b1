//! Hand-written SVG scatter plots of first zeros against the prime.
//!
//! Output is a fixed template with coordinates printed to one decimal, so
//! identical input gives identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use ctseq::search::{CsvRow, ExperimentResults};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Marker {
    Found { n0: BigUint, violation: bool },
    NoZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub p: u64,
    pub marker: Marker,
}

/// Points for one polynomial. Rows that are capped or failed are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub poly_id: u64,
    pub poly_string: String,
    pub points: Vec<Point>,
}

pub fn series_from_results(res: &ExperimentResults) -> Vec<Series> {
    res.polynomials
        .iter()
        .map(|pr| Series {
            poly_id: pr.poly.poly_id,
            poly_string: pr.poly_string.clone(),
            points: pr
                .rows
                .iter()
                .filter_map(|r| {
                    let marker = match (r.outcome_label(), r.n0()) {
                        ("found", Some(n0)) => Marker::Found {
                            n0: n0.clone(),
                            violation: r.is_violation(),
                        },
                        ("none", _) => Marker::NoZero,
                        _ => return None,
                    };
                    Some(Point {
                        p: r.p.get(),
                        marker,
                    })
                })
                .collect(),
        })
        .collect()
}

pub fn series_from_csv(rows: &[CsvRow]) -> Result<Vec<Series>, String> {
    let mut by_id: BTreeMap<u64, Series> = BTreeMap::new();
    for r in rows {
        let s = by_id.entry(r.poly_id).or_insert_with(|| Series {
            poly_id: r.poly_id,
            poly_string: r.poly_string.clone(),
            points: Vec::new(),
        });
        let marker = match r.outcome.as_str() {
            "found" => {
                let text = r.n0.as_deref().ok_or("found row without n0")?;
                let n0 = text
                    .parse::<BigUint>()
                    .map_err(|_| format!("bad n0 {text:?}"))?;
                Marker::Found {
                    n0,
                    violation: r.violates_conjecture == Some(true),
                }
            }
            "none" => Marker::NoZero,
            "cap-exceeded" | "error" => continue,
            other => return Err(format!("bad outcome {other:?}")),
        };
        s.points.push(Point { p: r.p, marker });
    }
    Ok(by_id.into_values().collect())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// Five-pointed star of outer radius 7, inner radius 3, point up.
const STAR: [(f64, f64); 10] = [
    (0.0, -7.0),
    (1.8, -2.4),
    (6.7, -2.2),
    (2.9, 0.9),
    (4.1, 5.7),
    (0.0, 3.0),
    (-4.1, 5.7),
    (-2.9, 0.9),
    (-6.7, -2.2),
    (-1.8, -2.4),
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render(s: &Series) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_max = s.points.iter().map(|pt| pt.p).max().unwrap_or(1) + 1;
    let y_max_big = s
        .points
        .iter()
        .filter_map(|pt| match &pt.marker {
            Marker::Found { n0, .. } => Some(n0.clone()),
            Marker::NoZero => None,
        })
        .max()
        .filter(|n| *n > BigUint::default())
        .unwrap_or_else(|| BigUint::from(1u32));
    let y_max = y_max_big.to_f64().unwrap_or(f64::MAX);
    let x = |p: u64| LEFT + plot_w * p as f64 / x_max as f64;
    let y = |n: &BigUint| TOP + plot_h * (1.0 - n.to_f64().unwrap_or(f64::MAX).min(y_max) / y_max);
    let y0 = TOP + plot_h;

    let mut o = String::new();
    let w = &mut o;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        w,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        w,
        r#"<text class="title" x="{:.1}" y="22" text-anchor="middle" font-size="14">poly {}: {}</text>"#,
        LEFT + plot_w / 2.0,
        s.poly_id,
        escape(&s.poly_string)
    );
    let _ = writeln!(
        w,
        r#"<g class="axes" stroke="black"><line x1="{LEFT:.1}" y1="{y0:.1}" x2="{:.1}" y2="{y0:.1}"/><line x1="{LEFT:.1}" y1="{TOP:.1}" x2="{LEFT:.1}" y2="{y0:.1}"/></g>"#,
        LEFT + plot_w
    );
    let _ = writeln!(
        w,
        r#"<text class="xlabel" x="{:.1}" y="{:.1}" text-anchor="middle">p</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        w,
        r#"<text class="ylabel" x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">first zero n0</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let mut primes: Vec<u64> = s.points.iter().map(|pt| pt.p).collect();
    primes.sort_unstable();
    primes.dedup();
    for p in &primes {
        let _ = writeln!(
            w,
            r#"<text class="xtick" x="{:.1}" y="{:.1}" text-anchor="middle">{p}</text>"#,
            x(*p),
            y0 + 16.0
        );
    }
    for (label, yy) in [("0".to_string(), y0), (y_max_big.to_string(), TOP)] {
        let _ = writeln!(
            w,
            r#"<text class="ytick" x="{:.1}" y="{:.1}" text-anchor="end">{label}</text>"#,
            LEFT - 6.0,
            yy + 4.0
        );
    }

    for pt in &s.points {
        let cx = x(pt.p);
        match &pt.marker {
            Marker::Found {
                n0,
                violation: false,
            } => {
                let _ = writeln!(
                    w,
                    r##"<circle class="found" cx="{cx:.1}" cy="{:.1}" r="4" fill="#1f77b4"/>"##,
                    y(n0)
                );
            }
            Marker::Found {
                n0,
                violation: true,
            } => {
                let _ = writeln!(
                    w,
                    r##"<circle class="violation" cx="{cx:.1}" cy="{:.1}" r="6" fill="#ff7f0e" stroke="black" stroke-width="1.5"/>"##,
                    y(n0)
                );
            }
            Marker::NoZero => {
                let pts: Vec<String> = STAR
                    .iter()
                    .map(|(dx, dy)| format!("{:.1},{:.1}", cx + dx, y0 + dy))
                    .collect();
                let _ = writeln!(
                    w,
                    r##"<polygon class="none" points="{}" fill="#d62728"/>"##,
                    pts.join(" ")
                );
            }
        }
    }

    let lx = WIDTH - RIGHT + 15.0;
    let _ = writeln!(w, r#"<g class="legend">"#);
    for (i, (fill, text)) in [
        ("#1f77b4", "circle: first zero"),
        ("#ff7f0e", "ringed circle: n0 >= p^deg"),
        ("#d62728", "star: no zero"),
    ]
    .iter()
    .enumerate()
    {
        let _ = writeln!(
            w,
            r#"<text x="{lx:.1}" y="{:.1}" fill="{fill}">{text}</text>"#,
            TOP + 10.0 + 18.0 * i as f64
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: Vec<Point>) -> Series {
        Series {
            poly_id: 0,
            poly_string: "t+1+t^-1".into(),
            points,
        }
    }

    fn found(p: u64, n0: u32, violation: bool) -> Point {
        Point {
            p,
            marker: Marker::Found {
                n0: BigUint::from(n0),
                violation,
            },
        }
    }

    #[test]
    fn one_found_row_one_circle() {
        let svg = render(&series(vec![found(3, 2, false)]));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<polygon").count(), 0);
    }

    #[test]
    fn markers_by_class() {
        let svg = render(&series(vec![
            found(3, 2, false),
            Point {
                p: 5,
                marker: Marker::NoZero,
            },
            found(7, 81, true),
        ]));
        assert_eq!(svg.matches(r#"class="found""#).count(), 1);
        assert_eq!(svg.matches(r#"class="violation""#).count(), 1);
        assert_eq!(svg.matches(r#"class="none""#).count(), 1);
        assert_eq!(
            svg,
            render(&series(vec![
                found(3, 2, false),
                Point {
                    p: 5,
                    marker: Marker::NoZero
                },
                found(7, 81, true),
            ]))
        );
    }

    #[test]
    fn empty_series_has_axes_only() {
        let svg = render(&series(vec![]));
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"class="axes""#));
        assert!(!svg.contains("<circle") && !svg.contains("<polygon"));
    }

    #[test]
    fn title_is_escaped() {
        let mut s = series(vec![]);
        s.poly_string = "a<b&c".into();
        assert!(render(&s).contains("a&lt;b&amp;c"));
    }
}

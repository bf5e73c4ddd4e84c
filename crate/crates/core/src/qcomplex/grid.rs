use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::context::QContext;

/// Tolerance on `log(x'/x) / log q` being an integer when grouping seeds.
const EXPONENT_SLACK: f64 = 1e-9;

/// A generated point `(q^{b1} x, q^{-b2} y)` of the grid of `seeds[seed]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub seed: usize,
    pub b1: u32,
    pub b2: u32,
    pub x: f64,
    pub y: f64,
}

/// Union of the grids `{(q^{b1} x, q^{-b2} y) : 0 <= b1, b2 <= depth}` of all seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QGrid {
    pub q: f64,
    pub seeds: Vec<(f64, f64)>,
    pub depth: u32,
    /// Distinct points, in seed order then `b1`, then `b2`.
    pub points: Vec<GridPoint>,
}

impl QGrid {
    /// Point count before removing points shared between seeds.
    pub fn raw_count(&self) -> usize {
        let side = self.depth as usize + 1;
        self.seeds.len() * side * side
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, seed: usize, b1: u32, b2: u32) -> bool {
        self.points.iter().any(|p| p.seed == seed && p.b1 == b1 && p.b2 == b2)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,b1,b2,x,y\n");
        for p in &self.points {
            out.push_str(&format!("{},{},{},{:e},{:e}\n", p.seed, p.b1, p.b2, p.x, p.y));
        }
        out
    }
}

/// Integer `e` with `to = q^e from`, for one coordinate.
///
/// Zero coordinates only match zero and carry no exponent.
fn coordinate_offset(from: f64, to: f64, ln_q: f64) -> Option<i64> {
    if from == 0.0 || to == 0.0 {
        return (from == to).then_some(0);
    }
    if from.signum() != to.signum() {
        return None;
    }
    let e = (to / from).ln() / ln_q;
    let r = e.round();
    ((e - r).abs() < EXPONENT_SLACK).then_some(r as i64)
}

/// Generate the grid, identifying points through integer exponents relative
/// to the first seed of each related family rather than by float equality.
pub fn qgrid_generate(seeds: &[(f64, f64)], depth: u32, ctx: &QContext) -> QGrid {
    let q = ctx.q();
    let ln_q = q.ln();
    // (root seed, x exponent offset, y exponent offset)
    let mut anchor: Vec<(usize, i64, i64)> = Vec::with_capacity(seeds.len());
    for (i, &(x, y)) in seeds.iter().enumerate() {
        let found = anchor.iter().enumerate().find_map(|(j, &(root, ex, ey))| {
            if root != j {
                return None;
            }
            let (rx, ry) = seeds[j];
            let dx = coordinate_offset(rx, x, ln_q)?;
            // y moves by q^{-1}, so its offset is counted with the opposite sign
            let dy = coordinate_offset(ry, y, ln_q).map(|e| -e)?;
            Some((root, ex + dx, ey + dy))
        });
        anchor.push(found.unwrap_or((i, 0, 0)));
    }

    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    for (i, &(x, y)) in seeds.iter().enumerate() {
        let (root, ex, ey) = anchor[i];
        let zero_x = x == 0.0;
        let zero_y = y == 0.0;
        for b1 in 0..=depth {
            for b2 in 0..=depth {
                let key = (
                    root,
                    if zero_x { 0 } else { ex + b1 as i64 },
                    if zero_y { 0 } else { ey + b2 as i64 },
                );
                if seen.insert(key) {
                    points.push(GridPoint {
                        seed: i,
                        b1,
                        b2,
                        x: q.powi(b1 as i32) * x,
                        y: q.powi(-(b2 as i32)) * y,
                    });
                }
            }
        }
    }
    QGrid { q, seeds: seeds.to_vec(), depth, points }
}

/// The nine seeds around `(10, 1)` used for the reference picture of a
/// generated grid (depth 6, `q = 0.6`).
pub fn reference_seed_set() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(9);
    for y in [1.2, 1.0, 0.8] {
        for x in [9.8, 10.0, 10.2] {
            out.push((x, y));
        }
    }
    out
}

//! Parameter sweeps: sign maps of G1, G2 or l1 over 2-D slices, their zero
//! contours, and oracle cross-checks between the numeric and closed forms.
//!
//! A grid has two or three axes. The last two span each slice (the first of
//! them is `c1`, the second `c2`); a leading third axis stacks slices.
//! Values are stored row-major in axis order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{g1, g2, l1_closed};
use crate::error::{HgsError, Result};
use crate::format::fmt_g;
use crate::hopf::l1_numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, PartialOrd, Ord)]
pub enum Param {
    Beta,
    Alpha,
    Rho,
    Kappa,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Beta => "beta",
            Param::Alpha => "alpha",
            Param::Rho => "rho",
            Param::Kappa => "kappa",
        }
    }

    pub fn parse(s: &str) -> Option<Param> {
        match s {
            "beta" => Some(Param::Beta),
            "alpha" => Some(Param::Alpha),
            "rho" => Some(Param::Rho),
            "kappa" => Some(Param::Kappa),
            _ => None,
        }
    }

    fn admissible(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                Param::Beta => v > 0.0 && v < 1.0,
                Param::Alpha => v > 0.0,
                Param::Rho => v >= 0.0,
                Param::Kappa => (0.0..1.0).contains(&v),
            }
    }

    fn range(self) -> &'static str {
        match self {
            Param::Beta => "(0, 1)",
            Param::Alpha => "(0, inf)",
            Param::Rho => "[0, inf)",
            Param::Kappa => "[0, 1)",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, count: usize) -> Self {
        Axis { param, min, max, count }
    }

    pub fn value(&self, i: usize) -> f64 {
        let n = (self.count - 1) as f64;
        let i = i as f64;
        (self.min * (n - i) + self.max * i) / n
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }
}

/// (β, α, ρ, κ) used for parameters that are not on an axis.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Fixed {
    pub beta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub kappa: f64,
}

impl Default for Fixed {
    fn default() -> Self {
        Fixed { beta: 0.5, alpha: 1.0, rho: 0.0, kappa: 0.0 }
    }
}

impl Fixed {
    fn get(&self, p: Param) -> f64 {
        match p {
            Param::Beta => self.beta,
            Param::Alpha => self.alpha,
            Param::Rho => self.rho,
            Param::Kappa => self.kappa,
        }
    }

    fn set(&mut self, p: Param, v: f64) {
        match p {
            Param::Beta => self.beta = v,
            Param::Alpha => self.alpha = v,
            Param::Rho => self.rho = v,
            Param::Kappa => self.kappa = v,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub axes: Vec<Axis>,
    pub fixed: Fixed,
}

impl Grid {
    pub fn new(axes: Vec<Axis>, fixed: Fixed) -> Result<Grid> {
        let g = Grid { axes, fixed };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.axes.len()) {
            return Err(HgsError::Usage(format!("a grid needs 2 or 3 axes, got {}", self.axes.len())));
        }
        for (i, a) in self.axes.iter().enumerate() {
            if self.axes[..i].iter().any(|b| b.param == a.param) {
                return Err(HgsError::Usage(format!("axis {} given twice", a.param.name())));
            }
            if a.count < 2 {
                return Err(HgsError::InvalidParameter { name: "axis count", value: a.count as f64, range: "[2, inf)" });
            }
            if !(a.min < a.max) {
                return Err(HgsError::Usage(format!("axis {}: min {} must be below max {}", a.param.name(), a.min, a.max)));
            }
            for v in [a.min, a.max] {
                if !a.param.admissible(v) {
                    return Err(HgsError::InvalidParameter { name: a.param.name(), value: v, range: a.param.range() });
                }
            }
        }
        for p in [Param::Beta, Param::Alpha, Param::Rho, Param::Kappa] {
            if !self.axes.iter().any(|a| a.param == p) && !p.admissible(self.fixed.get(p)) {
                return Err(HgsError::InvalidParameter { name: p.name(), value: self.fixed.get(p), range: p.range() });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn plane(&self) -> (&Axis, &Axis) {
        let n = self.axes.len();
        (&self.axes[n - 2], &self.axes[n - 1])
    }

    fn n_slices(&self) -> usize {
        if self.axes.len() == 3 {
            self.axes[0].count
        } else {
            1
        }
    }

    /// Multi-index of flat position `k`.
    fn index(&self, mut k: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (d, a) in self.axes.iter().enumerate().rev() {
            idx[d] = k % a.count;
            k /= a.count;
        }
        idx
    }

    /// Full (β, α, ρ, κ) at flat position `k`.
    pub fn point(&self, k: usize) -> Fixed {
        let mut p = self.fixed;
        for (a, i) in self.axes.iter().zip(self.index(k)) {
            p.set(a.param, a.value(i));
        }
        p
    }

    fn has_axis(&self, p: Param) -> bool {
        self.axes.iter().any(|a| a.param == p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Formula {
    G1,
    G2,
    L1Numeric,
    L1Closed,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::G1 => "G1",
            Formula::G2 => "G2",
            Formula::L1Numeric => "l1_numeric",
            Formula::L1Closed => "l1_closed",
        }
    }

    pub fn eval(self, p: &Fixed) -> f64 {
        match self {
            Formula::G1 => g1(p.beta, p.alpha, p.kappa),
            Formula::G2 => g2(p.beta, p.alpha, p.rho),
            Formula::L1Numeric => l1_numeric(p.beta, p.alpha, p.rho, p.kappa).unwrap_or(f64::NAN),
            Formula::L1Closed => l1_closed(p.beta, p.alpha, p.rho, p.kappa),
        }
    }

    fn check(self, grid: &Grid) -> Result<()> {
        let pinned = |p: Param, what: &str| -> Result<()> {
            if grid.has_axis(p) || grid.fixed.get(p) != 0.0 {
                Err(HgsError::Usage(format!("{what} requires {} fixed at 0", p.name())))
            } else {
                Ok(())
            }
        };
        match self {
            Formula::G1 => pinned(Param::Rho, "G1"),
            Formula::G2 => pinned(Param::Kappa, "G2"),
            _ => Ok(()),
        }
    }
}

pub type Polyline = Vec<(f64, f64)>;

#[derive(Debug, Clone, Serialize)]
pub struct SliceContours {
    pub slice: usize,
    /// value of the stacking axis, when there is one
    pub slice_value: Option<f64>,
    pub polylines: Vec<Polyline>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignMap {
    pub grid: Grid,
    pub formula: Formula,
    pub values: Vec<f64>,
    /// −1, 0 or +1; 0 also marks non-finite (masked) values
    pub signs: Vec<i8>,
    pub masked: usize,
    pub contours: Vec<SliceContours>,
}

fn sign(v: f64) -> i8 {
    if !v.is_finite() || v == 0.0 {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Evaluate `formula` on every grid point and extract the zero contour of
/// each slice. `workers = 0` uses rayon's default pool.
pub fn scan_formula(formula: Formula, grid: &Grid, workers: usize) -> Result<SignMap> {
    grid.validate()?;
    formula.check(grid)?;
    let eval = || -> Vec<f64> { (0..grid.len()).into_par_iter().map(|k| formula.eval(&grid.point(k))).collect() };
    let values = if workers == 0 {
        eval()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| HgsError::Usage(format!("cannot start {workers} workers: {e}")))?
            .install(eval)
    };
    let signs: Vec<i8> = values.iter().map(|&v| sign(v)).collect();
    let masked = values.iter().filter(|v| !v.is_finite()).count();
    let (a1, a2) = grid.plane();
    let per = a1.count * a2.count;
    let contours = (0..grid.n_slices())
        .map(|s| SliceContours {
            slice: s,
            slice_value: (grid.axes.len() == 3).then(|| grid.axes[0].value(s)),
            polylines: marching_squares(&values[s * per..(s + 1) * per], a1, a2),
        })
        .collect();
    Ok(SignMap { grid: grid.clone(), formula, values, signs, masked, contours })
}

/// Edge of the slice lattice: `(i, j, horizontal)`. A horizontal edge joins
/// (i, j)–(i, j+1), a vertical one (i, j)–(i+1, j).
type EdgeId = (usize, usize, bool);

/// Zero contour of a row-major `n1 × n2` field by marching squares, joined
/// into polylines. Cells touching a non-finite value are skipped.
pub fn marching_squares(v: &[f64], a1: &Axis, a2: &Axis) -> Vec<Polyline> {
    let (n1, n2) = (a1.count, a2.count);
    let at = |i: usize, j: usize| v[i * n2 + j];
    let pos = |x: f64| x >= 0.0;
    let crosses = |e: EdgeId| -> bool {
        let (i, j, h) = e;
        let (p, q) = if h { (at(i, j), at(i, j + 1)) } else { (at(i, j), at(i + 1, j)) };
        pos(p) != pos(q)
    };
    let point = |e: EdgeId| -> (f64, f64) {
        let (i, j, h) = e;
        let p = at(i, j);
        if h {
            let q = at(i, j + 1);
            let t = p / (p - q);
            (a1.value(i), a2.value(j) + t * (a2.value(j + 1) - a2.value(j)))
        } else {
            let q = at(i + 1, j);
            let t = p / (p - q);
            (a1.value(i) + t * (a1.value(i + 1) - a1.value(i)), a2.value(j))
        }
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            let corners = [at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)];
            if corners.iter().any(|c| !c.is_finite()) {
                continue;
            }
            // edges in ring order: bottom, right, top, left
            let ring: [EdgeId; 4] = [(i, j, true), (i, j + 1, false), (i + 1, j, true), (i, j, false)];
            let hit: Vec<EdgeId> = ring.iter().copied().filter(|&e| crosses(e)).collect();
            match hit.len() {
                2 => segments.push((hit[0], hit[1])),
                4 => {
                    // saddle: the centre value decides which corners connect
                    let centre = corners.iter().sum::<f64>() / 4.0;
                    if pos(centre) == pos(corners[0]) {
                        segments.push((ring[0], ring[1]));
                        segments.push((ring[2], ring[3]));
                    } else {
                        segments.push((ring[3], ring[0]));
                        segments.push((ring[1], ring[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut by_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        by_edge.entry(*a).or_default().push(k);
        by_edge.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let next = |edge: EdgeId, used: &[bool]| -> Option<usize> {
        by_edge.get(&edge).and_then(|ks| ks.iter().copied().find(|&k| !used[k]))
    };
    // open chains first start at edges touched once, then closed loops
    let mut starts: Vec<usize> = by_edge
        .iter()
        .filter(|(_, ks)| ks.len() == 1)
        .map(|(_, ks)| ks[0])
        .collect();
    starts.extend(0..segments.len());
    for s in starts {
        if used[s] {
            continue;
        }
        used[s] = true;
        let (a, b) = segments[s];
        // orient so that `a` is the free end for open chains
        let (first, mut tail) = if by_edge[&b].len() == 1 && by_edge[&a].len() != 1 { (b, a) } else { (a, b) };
        let mut chain = vec![first, tail];
        while let Some(k) = next(tail, &used) {
            used[k] = true;
            let (p, q) = segments[k];
            tail = if p == tail { q } else { p };
            chain.push(tail);
        }
        lines.push(chain.into_iter().map(point).collect());
    }
    lines
}

impl SignMap {
    /// Grid CSV: one row per point, columns = axis values, value, sign.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.grid.axes.iter().map(|a| a.param.name()).collect();
        let _ = writeln!(out, "{},{},sign", names.join(","), self.formula.name());
        for (k, v) in self.values.iter().enumerate() {
            let idx = self.grid.index(k);
            for (a, i) in self.grid.axes.iter().zip(idx) {
                out.push_str(&fmt_g(a.value(i)));
                out.push(',');
            }
            let _ = writeln!(out, "{},{}", fmt_g(*v), self.signs[k]);
        }
        out
    }

    /// Contour CSV with columns slice, polyline, c1, c2.
    pub fn contours_csv(&self) -> String {
        let (a1, a2) = self.grid.plane();
        let mut out = format!("slice,polyline,{},{}\n", a1.param.name(), a2.param.name());
        for sc in &self.contours {
            for (pid, line) in sc.polylines.iter().enumerate() {
                for (c1, c2) in line {
                    let _ = writeln!(out, "{},{},{},{}", sc.slice, pid, fmt_g(*c1), fmt_g(*c2));
                }
            }
        }
        out
    }

    /// Every contour vertex, flattened.
    pub fn contour_points(&self) -> Vec<(f64, f64)> {
        self.contours.iter().flat_map(|s| s.polylines.iter().flatten().copied()).collect()
    }

    /// Contour vertex of `slice` with the largest first plane coordinate.
    pub fn contour_max_c1(&self, slice: usize) -> Option<(f64, f64)> {
        self.contours
            .get(slice)?
            .polylines
            .iter()
            .flatten()
            .copied()
            .fold(None, |best: Option<(f64, f64)>, p| match best {
                Some(b) if b.0 >= p.0 => Some(b),
                _ => Some(p),
            })
    }

    /// Crossings of the zero contour with the grid line `c1 = value`,
    /// interpolated along `c2`. `value` must be one of the c1 grid values.
    pub fn crossings_at_c1(&self, slice: usize, row: usize) -> Vec<f64> {
        let (a1, a2) = self.grid.plane();
        let per = a1.count * a2.count;
        let v = &self.values[slice * per + row * a2.count..slice * per + (row + 1) * a2.count];
        (0..a2.count - 1)
            .filter(|&j| v[j].is_finite() && v[j + 1].is_finite() && (v[j] >= 0.0) != (v[j + 1] >= 0.0))
            .map(|j| {
                let t = v[j] / (v[j] - v[j + 1]);
                a2.value(j) + t * a2.step()
            })
            .collect()
    }
}

/// Sign agreement between a closed-form numerator and l1 over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct SignConstant {
    /// +1 or −1 when every compared point agrees; None otherwise
    pub value: Option<i8>,
    pub positive: usize,
    pub negative: usize,
    /// points where either value was zero or non-finite
    pub skipped: usize,
}

/// Empirical constant `s` with `sign(numerator) = s · sign(l1)`.
pub fn sign_constant(numerator: Formula, grid: &Grid, workers: usize) -> Result<SignConstant> {
    let num = scan_formula(numerator, grid, workers)?;
    let l1 = scan_formula(Formula::L1Numeric, grid, workers)?;
    let (mut positive, mut negative, mut skipped) = (0, 0, 0);
    for (a, b) in num.signs.iter().zip(&l1.signs) {
        match a * b {
            1 => positive += 1,
            -1 => negative += 1,
            _ => skipped += 1,
        }
    }
    let value = match (positive, negative) {
        (p, 0) if p > 0 => Some(1),
        (0, n) if n > 0 => Some(-1),
        _ => None,
    };
    Ok(SignConstant { value, positive, negative, skipped })
}

/// Ranges sampled by [`oracle_cross_scan`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SampleBox {
    pub beta: (f64, f64),
    pub alpha: (f64, f64),
    pub rho: (f64, f64),
    pub kappa: (f64, f64),
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { beta: (0.05, 0.95), alpha: (0.1, 5.0), rho: (0.0, 3.0), kappa: (0.0, 0.95) }
    }
}

impl SampleBox {
    pub fn sample(&self, rng: &mut impl Rng) -> Fixed {
        let mut u = |r: (f64, f64)| if r.0 == r.1 { r.0 } else { rng.random_range(r.0..r.1) };
        Fixed { beta: u(self.beta), alpha: u(self.alpha), rho: u(self.rho), kappa: u(self.kappa) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossScanReport {
    pub samples: usize,
    pub seed: u64,
    /// max |l1_numeric − l1_closed| / max(|l1_numeric|, 1e-12)
    pub max_rel_discrepancy: f64,
    pub worst_point: Option<Fixed>,
    /// sign(G1) / sign(l1) on the ρ = 0 slice
    pub s1: SignConstant,
    /// sign(G2) / sign(l1) on the κ = 0 slice
    pub s2: SignConstant,
    pub failures: usize,
}

/// Compare the projection engine with the closed forms at random points.
/// The same number of extra samples is drawn on the ρ = 0 and κ = 0 slices
/// for the sign constants.
pub fn oracle_cross_scan(bounds: &SampleBox, sample_count: usize, seed: u64) -> CrossScanReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let general: Vec<Fixed> = (0..sample_count).map(|_| bounds.sample(&mut rng)).collect();
    let rho0: Vec<Fixed> = (0..sample_count).map(|_| Fixed { rho: 0.0, ..bounds.sample(&mut rng) }).collect();
    let kappa0: Vec<Fixed> = (0..sample_count).map(|_| Fixed { kappa: 0.0, ..bounds.sample(&mut rng) }).collect();

    let mut failures = 0;
    let mut worst = (0.0, None);
    for p in general.iter().chain(&rho0).chain(&kappa0) {
        match l1_numeric(p.beta, p.alpha, p.rho, p.kappa) {
            Ok(ln) => {
                let lc = l1_closed(p.beta, p.alpha, p.rho, p.kappa);
                let rel = (ln - lc).abs() / ln.abs().max(1e-12);
                if !(rel <= worst.0) {
                    worst = (rel, Some(*p));
                }
            }
            Err(_) => failures += 1,
        }
    }
    let tally = |pts: &[Fixed], f: Formula| {
        let (mut positive, mut negative, mut skipped) = (0, 0, 0);
        for p in pts {
            let l = l1_numeric(p.beta, p.alpha, p.rho, p.kappa).unwrap_or(f64::NAN);
            match sign(f.eval(p)) * sign(l) {
                1 => positive += 1,
                -1 => negative += 1,
                _ => skipped += 1,
            }
        }
        let value = match (positive, negative) {
            (p, 0) if p > 0 => Some(1),
            (0, n) if n > 0 => Some(-1),
            _ => None,
        };
        SignConstant { value, positive, negative, skipped }
    };
    CrossScanReport {
        samples: sample_count,
        seed,
        max_rel_discrepancy: worst.0,
        worst_point: worst.1,
        s1: tally(&rho0, Formula::G1),
        s2: tally(&kappa0, Formula::G2),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho0_grid(n: usize, alpha: f64) -> Grid {
        Grid::new(
            vec![Axis::new(Param::Kappa, 0.0, 0.999, n), Axis::new(Param::Beta, 0.05, 0.95, n)],
            Fixed { alpha, ..Fixed::default() },
        )
        .unwrap()
    }

    #[test]
    fn grid_validation() {
        let f = Fixed::default();
        assert!(Grid::new(vec![Axis::new(Param::Beta, 0.1, 0.9, 1), Axis::new(Param::Alpha, 0.1, 2.0, 3)], f).is_err());
        assert!(Grid::new(vec![Axis::new(Param::Beta, 0.9, 0.1, 3), Axis::new(Param::Alpha, 0.1, 2.0, 3)], f).is_err());
        assert!(Grid::new(vec![Axis::new(Param::Beta, 0.0, 0.9, 3), Axis::new(Param::Alpha, 0.1, 2.0, 3)], f).is_err());
        assert!(Grid::new(vec![Axis::new(Param::Kappa, 0.0, 1.0, 3), Axis::new(Param::Alpha, 0.1, 2.0, 3)], f).is_err());
        assert!(Grid::new(vec![Axis::new(Param::Beta, 0.1, 0.9, 3)], f).is_err());
        assert!(Grid::new(vec![Axis::new(Param::Beta, 0.1, 0.9, 3), Axis::new(Param::Beta, 0.1, 0.9, 3)], f).is_err());
    }

    #[test]
    fn formula_slice_requirements() {
        let g = Grid::new(
            vec![Axis::new(Param::Rho, 0.0, 1.0, 3), Axis::new(Param::Beta, 0.1, 0.9, 3)],
            Fixed::default(),
        )
        .unwrap();
        assert!(scan_formula(Formula::G1, &g, 1).is_err());
        assert!(scan_formula(Formula::G2, &g, 1).is_ok());
    }

    #[test]
    fn row_major_points() {
        let g = rho0_grid(3, 1.0);
        assert_eq!(g.point(0).kappa, 0.0);
        assert_eq!(g.point(1).beta, 0.5);
        assert_eq!(g.point(1).kappa, 0.0);
        assert_eq!(g.point(3).kappa, 0.4995);
        assert_eq!(g.point(8).beta, 0.95);
    }

    #[test]
    fn reference_roots_on_small_alpha_slice() {
        let g = rho0_grid(201, 0.01);
        let m = scan_formula(Formula::G1, &g, 2).unwrap();
        let res = 0.9 / 200.0;
        let at_k0 = m.crossings_at_c1(0, 0);
        assert_eq!(at_k0.len(), 1);
        assert!((at_k0[0] - 0.7746).abs() < res);
        let at_k1 = m.crossings_at_c1(0, 200);
        assert_eq!(at_k1.len(), 1);
        assert!((at_k1[0] - 0.5272).abs() < res);
        assert!(!m.contours[0].polylines.is_empty());
    }

    #[test]
    fn single_sign_region_has_no_contour() {
        // small β, moderate α: G1 < 0 throughout
        let g = Grid::new(
            vec![Axis::new(Param::Kappa, 0.0, 0.9, 20), Axis::new(Param::Beta, 0.05, 0.4, 20)],
            Fixed::default(),
        )
        .unwrap();
        let m = scan_formula(Formula::G1, &g, 1).unwrap();
        assert!(m.signs.iter().all(|&s| s == -1));
        assert!(m.contours[0].polylines.is_empty());
    }

    #[test]
    fn circle_contour_is_closed() {
        let a = Axis::new(Param::Beta, -1.0, 1.0, 41);
        let b = Axis::new(Param::Alpha, -1.0, 1.0, 41);
        let v: Vec<f64> = (0..41 * 41)
            .map(|k| {
                let (x, y) = (a.value(k / 41), b.value(k % 41));
                x * x + y * y - 0.5
            })
            .collect();
        let lines = marching_squares(&v, &a, &b);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert_eq!(l.first(), l.last());
        for (x, y) in l {
            assert!(((x * x + y * y).sqrt() - 0.5f64.sqrt()).abs() < 0.01);
        }
    }

    #[test]
    fn masked_cells_break_contours() {
        let a = Axis::new(Param::Beta, 0.0, 1.0, 5);
        let b = Axis::new(Param::Alpha, 0.0, 1.0, 5);
        let mut v: Vec<f64> = (0..25).map(|k| (k % 5) as f64 - 1.5).collect();
        v[12] = f64::NAN;
        let lines = marching_squares(&v, &a, &b);
        let n: usize = lines.iter().map(|l| l.len()).sum();
        // 5 crossings along the column line, minus the ones of masked cells
        assert!(n < 5 + lines.len());
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn csv_is_deterministic_across_worker_counts() {
        let g = rho0_grid(30, 0.5);
        let a = scan_formula(Formula::G1, &g, 1).unwrap();
        let b = scan_formula(Formula::G1, &g, 4).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.contours_csv(), b.contours_csv());
        assert!(a.to_csv().starts_with("kappa,beta,G1,sign\n"));
    }

    #[test]
    fn cross_scan_small() {
        let r = oracle_cross_scan(&SampleBox::default(), 20, 7);
        assert!(r.max_rel_discrepancy < 1e-6);
        assert_eq!(r.failures, 0);
        assert_eq!(r.s1.value, Some(1));
        assert_eq!(r.s2.value, Some(1));
    }
}

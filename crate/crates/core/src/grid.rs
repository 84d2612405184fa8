//! Rasterized 2-D domains: cell-centered masks, shape generators, and the
//! text mask format.
//!
//! A cell with index `(ix, iy)` has its center at `((ix+0.5)h, (iy+0.5)h)`;
//! a cell belongs to the domain iff its center satisfies the shape predicate.
//! The discrete boundary layer consists of the inside cells with at least one
//! of their four neighbors outside.

use crate::{num, Error, Result};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// Minimum interior extent (cells per axis, and squared for the cell count)
/// below which eigen-computations are meaningless.
const MIN_EXTENT: usize = 9;

/// Grid cell identified by column `ix` and row `iy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub ix: usize,
    pub iy: usize,
}

/// Shape generators for the verification corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Axis-aligned rectangle `(0,a) × (0,b)`.
    Rectangle { a: f64, b: f64 },
    /// Disk of radius `r`.
    Disk { r: f64 },
    /// Annulus with inner and outer radii.
    Annulus { r_in: f64, r_out: f64 },
    /// Two square chambers of side `chamber` joined by a `neck_w × neck_len`
    /// neck, each chamber with a centered square hole of half-side `hole_r`.
    Dumbbell {
        chamber: f64,
        neck_w: f64,
        neck_len: f64,
        hole_r: f64,
    },
}

impl Shape {
    fn name(&self) -> String {
        match self {
            Shape::Rectangle { a, b } => format!("rectangle:{a},{b}"),
            Shape::Disk { r } => format!("disk:{r}"),
            Shape::Annulus { r_in, r_out } => format!("annulus:{r_in},{r_out}"),
            Shape::Dumbbell {
                chamber,
                neck_w,
                neck_len,
                hole_r,
            } => format!("dumbbell:{chamber},{neck_w},{neck_len},{hole_r}"),
        }
    }

    fn bounding_box(&self) -> (f64, f64) {
        match *self {
            Shape::Rectangle { a, b } => (a, b),
            Shape::Disk { r } => (2.0 * r, 2.0 * r),
            Shape::Annulus { r_out, .. } => (2.0 * r_out, 2.0 * r_out),
            Shape::Dumbbell {
                chamber, neck_len, ..
            } => (2.0 * chamber + neck_len, chamber),
        }
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Rectangle { a, b } => x > 0.0 && x < a && y > 0.0 && y < b,
            Shape::Disk { r } => {
                let (cx, cy) = (r, r);
                num::hypot_sq(x - cx, y - cy) < r * r
            }
            Shape::Annulus { r_in, r_out } => {
                let (cx, cy) = (r_out, r_out);
                let rho_sq = num::hypot_sq(x - cx, y - cy);
                rho_sq > r_in * r_in && rho_sq < r_out * r_out
            }
            Shape::Dumbbell {
                chamber: c,
                neck_w,
                neck_len,
                hole_r,
            } => {
                let in_left = x > 0.0 && x < c && y > 0.0 && y < c;
                let in_right = x > c + neck_len && x < 2.0 * c + neck_len && y > 0.0 && y < c;
                let in_neck = x >= c
                    && x <= c + neck_len
                    && y > (c - neck_w) / 2.0
                    && y < (c + neck_w) / 2.0;
                let hole = |hx: f64| {
                    num::abs(x - hx) < hole_r && num::abs(y - c / 2.0) < hole_r
                };
                let in_hole = hole(c / 2.0) || hole(c + neck_len + c / 2.0);
                (in_left || in_right || in_neck) && !in_hole
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |v: f64, what: &str| -> Result<()> {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Validation(format!("{what} must be positive, got {v}")));
            }
            Ok(())
        };
        match *self {
            Shape::Rectangle { a, b } => {
                positive(a, "rectangle side a")?;
                positive(b, "rectangle side b")
            }
            Shape::Disk { r } => positive(r, "disk radius"),
            Shape::Annulus { r_in, r_out } => {
                positive(r_in, "annulus inner radius")?;
                positive(r_out, "annulus outer radius")?;
                if r_in >= r_out {
                    return Err(Error::Validation(format!(
                        "annulus requires r_in < r_out, got {r_in} >= {r_out}"
                    )));
                }
                Ok(())
            }
            Shape::Dumbbell {
                chamber,
                neck_w,
                neck_len,
                hole_r,
            } => {
                positive(chamber, "dumbbell chamber side")?;
                positive(neck_w, "dumbbell neck width")?;
                positive(neck_len, "dumbbell neck length")?;
                positive(hole_r, "dumbbell hole half-side")?;
                if neck_w >= chamber {
                    return Err(Error::Validation(format!(
                        "dumbbell neck width {neck_w} must be smaller than the chamber side {chamber}"
                    )));
                }
                if 2.0 * hole_r >= chamber {
                    return Err(Error::Validation(format!(
                        "dumbbell hole of half-side {hole_r} does not fit inside a chamber of side {chamber}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// A validated rasterized domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    nx: usize,
    ny: usize,
    h: f64,
    name: String,
    mask: Vec<bool>,
    /// Inside cells in row-major order.
    cells: Vec<Cell>,
    /// Flat mask index -> dense cell index, or usize::MAX.
    dense: Vec<usize>,
    /// Per dense cell: true if at least one 4-neighbor is outside.
    boundary: Vec<bool>,
}

impl GridDomain {
    /// Build and validate a domain from a raw mask (row-major, `ny` rows of
    /// `nx` entries; `true` marks inside cells).
    pub fn from_mask(mask: Vec<bool>, nx: usize, ny: usize, h: f64, name: &str) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::Validation(format!("grid spacing must be positive, got {h}")));
        }
        if mask.len() != nx * ny {
            return Err(Error::Validation(format!(
                "mask length {} does not match {nx} x {ny}",
                mask.len()
            )));
        }
        let mut cells = Vec::new();
        let mut dense = vec![usize::MAX; mask.len()];
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (usize::MAX, 0, usize::MAX, 0);
        for iy in 0..ny {
            for ix in 0..nx {
                if mask[iy * nx + ix] {
                    dense[iy * nx + ix] = cells.len();
                    cells.push(Cell { ix, iy });
                    min_x = min_x.min(ix);
                    max_x = max_x.max(ix);
                    min_y = min_y.min(iy);
                    max_y = max_y.max(iy);
                }
            }
        }
        if cells.is_empty() {
            return Err(Error::Validation("domain has no interior cells".to_string()));
        }
        if cells.len() < MIN_EXTENT * MIN_EXTENT
            || max_x - min_x + 1 < MIN_EXTENT
            || max_y - min_y + 1 < MIN_EXTENT
        {
            return Err(Error::Validation(format!(
                "domain too small: {} cells in a {} x {} box; at least {MIN_EXTENT} x {MIN_EXTENT} interior cells are required",
                cells.len(),
                max_x - min_x + 1,
                max_y - min_y + 1
            )));
        }

        let inside = |ix: isize, iy: isize| -> bool {
            ix >= 0
                && iy >= 0
                && (ix as usize) < nx
                && (iy as usize) < ny
                && mask[iy as usize * nx + ix as usize]
        };

        // 4-connectivity by flood fill from the first inside cell.
        let mut seen = vec![false; cells.len()];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(c) = queue.pop() {
            let Cell { ix, iy } = cells[c];
            for (dx, dy) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
                let (jx, jy) = (ix as isize + dx, iy as isize + dy);
                if inside(jx, jy) {
                    let d = dense[jy as usize * nx + jx as usize];
                    if !seen[d] {
                        seen[d] = true;
                        reached += 1;
                        queue.push(d);
                    }
                }
            }
        }
        if reached != cells.len() {
            return Err(Error::Validation(format!(
                "domain interior is not 4-connected: {} of {} cells reachable from the first cell",
                reached,
                cells.len()
            )));
        }

        let boundary: Vec<bool> = cells
            .iter()
            .map(|&Cell { ix, iy }| {
                [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)]
                    .iter()
                    .any(|&(dx, dy)| !inside(ix as isize + dx, iy as isize + dy))
            })
            .collect();
        debug_assert!(boundary.iter().any(|&b| b));

        Ok(GridDomain {
            nx,
            ny,
            h,
            name: name.to_string(),
            mask,
            cells,
            dense,
            boundary,
        })
    }

    /// Rasterize a generator shape at spacing `h`.
    pub fn generate(shape: Shape, h: f64) -> Result<Self> {
        shape.validate()?;
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::Validation(format!("grid spacing must be positive, got {h}")));
        }
        let (w, hgt) = shape.bounding_box();
        let nx = num::ceil(w / h - 1e-9) as usize;
        let ny = num::ceil(hgt / h - 1e-9) as usize;
        if nx == 0 || ny == 0 {
            return Err(Error::Validation(format!(
                "shape {} degenerates at spacing {h}",
                shape.name()
            )));
        }
        let mut mask = vec![false; nx * ny];
        for iy in 0..ny {
            let y = (iy as f64 + 0.5) * h;
            for ix in 0..nx {
                let x = (ix as f64 + 0.5) * h;
                mask[iy * nx + ix] = shape.contains(x, y);
            }
        }
        Self::from_mask(mask, nx, ny, h, &shape.name())
    }

    /// Parse the text mask format:
    /// line 1 `hotspots-mask v1`, line 2 `h <positive decimal>`, then
    /// equal-length rows of `#` (inside) and `.` (outside).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, magic) = lines
            .next()
            .ok_or_else(|| Error::Validation("line 1: empty mask file".to_string()))?;
        if magic.trim_end() != "hotspots-mask v1" {
            return Err(Error::Validation(format!(
                "line 1: expected header 'hotspots-mask v1', got '{}'",
                magic.trim_end()
            )));
        }
        let (_, h_line) = lines
            .next()
            .ok_or_else(|| Error::Validation("line 2: missing 'h <spacing>' line".to_string()))?;
        let h_line = h_line.trim_end();
        let h: f64 = h_line
            .strip_prefix("h ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| {
                Error::Validation(format!("line 2: expected 'h <positive decimal>', got '{h_line}'"))
            })?;

        let mut rows: Vec<Vec<bool>> = Vec::new();
        let mut width = None;
        for (idx, line) in lines {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::with_capacity(line.len());
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '#' => row.push(true),
                    '.' => row.push(false),
                    other => {
                        return Err(Error::Validation(format!(
                            "line {}: unexpected character '{other}' at column {}",
                            idx + 1,
                            col + 1
                        )))
                    }
                }
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::Validation(format!(
                        "line {}: row length {} differs from the first row's {}",
                        idx + 1,
                        row.len(),
                        w
                    )))
                }
                _ => {}
            }
            rows.push(row);
        }
        let nx = width.ok_or_else(|| Error::Validation("mask file has no grid rows".to_string()))?;
        let ny = rows.len();
        let mask: Vec<bool> = rows.into_iter().flatten().collect();
        Self::from_mask(mask, nx, ny, h, "mask")
    }

    /// Serialize into the text mask format (round-trips through [`parse`]).
    ///
    /// [`parse`]: GridDomain::parse
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.mask.len() + self.ny + 32);
        out.push_str("hotspots-mask v1\n");
        out.push_str(&format!("h {}\n", self.h));
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                out.push(if self.mask[iy * self.nx + ix] { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn rename(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of inside cells.
    #[inline]
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Area `|D| = h² · cell count`.
    pub fn area(&self) -> f64 {
        self.h * self.h * self.cells.len() as f64
    }

    pub fn mask_dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Inside cells in row-major order (the dense ordering used everywhere).
    #[inline]
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    #[inline]
    pub fn is_inside(&self, ix: isize, iy: isize) -> bool {
        ix >= 0
            && iy >= 0
            && (ix as usize) < self.nx
            && (iy as usize) < self.ny
            && self.mask[iy as usize * self.nx + ix as usize]
    }

    /// Dense index of the cell at `(ix, iy)`, if inside.
    #[inline]
    pub fn dense_index(&self, ix: usize, iy: usize) -> Option<usize> {
        if ix >= self.nx || iy >= self.ny {
            return None;
        }
        match self.dense[iy * self.nx + ix] {
            usize::MAX => None,
            d => Some(d),
        }
    }

    /// Whether the dense cell lies in the discrete boundary layer.
    #[inline]
    pub fn is_boundary(&self, dense_idx: usize) -> bool {
        self.boundary[dense_idx]
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    /// Center coordinates of a cell.
    #[inline]
    pub fn center(&self, cell: Cell) -> (f64, f64) {
        ((cell.ix as f64 + 0.5) * self.h, (cell.iy as f64 + 0.5) * self.h)
    }

    /// The inside cell whose center is nearest the centroid of the domain.
    pub fn centroid_cell(&self) -> Cell {
        let (mut sx, mut sy) = (0.0f64, 0.0f64);
        for &c in &self.cells {
            sx += c.ix as f64;
            sy += c.iy as f64;
        }
        let n = self.cells.len() as f64;
        let (cx, cy) = (sx / n, sy / n);
        let mut best = self.cells[0];
        let mut best_d = f64::INFINITY;
        for &c in &self.cells {
            let d = num::hypot_sq(c.ix as f64 - cx, c.iy as f64 - cy);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        best
    }

    /// Number of 4-connected components of the complement, counting the
    /// unbounded exterior as one. A value of `1 + k` means `k` holes.
    pub fn outside_components(&self) -> usize {
        // Work on a grid padded by one ring so the exterior is a single seed.
        let (px, py) = (self.nx + 2, self.ny + 2);
        let outside = |ix: usize, iy: usize| -> bool {
            if ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1 {
                true
            } else {
                !self.mask[(iy - 1) * self.nx + (ix - 1)]
            }
        };
        let mut seen = vec![false; px * py];
        let mut components = 0;
        let mut stack = Vec::new();
        for start_y in 0..py {
            for start_x in 0..px {
                if !outside(start_x, start_y) || seen[start_y * px + start_x] {
                    continue;
                }
                components += 1;
                seen[start_y * px + start_x] = true;
                stack.push((start_x, start_y));
                while let Some((x, y)) = stack.pop() {
                    let mut visit = |nx_: usize, ny_: usize| {
                        if outside(nx_, ny_) && !seen[ny_ * px + nx_] {
                            seen[ny_ * px + nx_] = true;
                            stack.push((nx_, ny_));
                        }
                    };
                    if x > 0 {
                        visit(x - 1, y);
                    }
                    if x + 1 < px {
                        visit(x + 1, y);
                    }
                    if y > 0 {
                        visit(x, y - 1);
                    }
                    if y + 1 < py {
                        visit(x, y + 1);
                    }
                }
            }
        }
        components
    }
}

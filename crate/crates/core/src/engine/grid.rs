//! Uniform cell grid over the triangle's bounding box.

use crate::geometry::{Vec2, SQRT3};

#[derive(Debug, Clone)]
pub struct CellGrid {
    cols: usize,
    rows: usize,
    cell_w: f64,
    cell_h: f64,
    cells: Vec<Vec<usize>>,
}

impl CellGrid {
    /// Grid whose cells are at least `min_edge` wide and tall, with no more
    /// cells than roughly twice the disk count.
    pub fn new(side: f64, min_edge: f64, n: usize) -> Self {
        let height = side * SQRT3 / 2.0;
        let cap = ((2 * n) as f64).sqrt().ceil() as usize;
        let fit = |len: f64| -> usize {
            if min_edge <= 0.0 {
                cap.max(1)
            } else {
                ((len / min_edge).floor() as usize).clamp(1, cap.max(1))
            }
        };
        let cols = fit(side);
        let rows = fit(height);
        CellGrid {
            cols,
            rows,
            cell_w: side / cols as f64,
            cell_h: height / rows as f64,
            cells: vec![Vec::new(); cols * rows],
        }
    }

    pub fn cell_of(&self, p: Vec2) -> (usize, usize) {
        let cx = ((p.x / self.cell_w).floor().max(0.0) as usize).min(self.cols - 1);
        let cy = ((p.y / self.cell_h).floor().max(0.0) as usize).min(self.rows - 1);
        (cx, cy)
    }

    pub fn index(&self, cell: (usize, usize)) -> usize {
        cell.1 * self.cols + cell.0
    }

    pub fn insert(&mut self, id: usize, cell: (usize, usize)) {
        let k = self.index(cell);
        self.cells[k].push(id);
    }

    pub fn remove(&mut self, id: usize, cell: (usize, usize)) {
        let k = self.index(cell);
        if let Some(pos) = self.cells[k].iter().position(|&x| x == id) {
            self.cells[k].swap_remove(pos);
        }
    }

    /// Disks in the 3×3 block of cells around `cell`.
    pub fn for_each_neighbor(&self, cell: (usize, usize), mut f: impl FnMut(usize)) {
        let x0 = cell.0.saturating_sub(1);
        let x1 = (cell.0 + 1).min(self.cols - 1);
        let y0 = cell.1.saturating_sub(1);
        let y1 = (cell.1 + 1).min(self.rows - 1);
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                for &id in &self.cells[cy * self.cols + cx] {
                    f(id);
                }
            }
        }
    }

    /// Time until a point at `p` moving with `v` leaves `cell`, and the cell
    /// it enters. `None` when it never leaves (at rest, or an edge cell).
    pub fn exit(&self, cell: (usize, usize), p: Vec2, v: Vec2) -> Option<(f64, (usize, usize))> {
        let mut best: Option<(f64, (usize, usize))> = None;
        let mut consider = |t: f64, next: (usize, usize)| {
            if best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t.max(0.0), next));
            }
        };
        if v.x > 0.0 && cell.0 + 1 < self.cols {
            consider(((cell.0 + 1) as f64 * self.cell_w - p.x) / v.x, (cell.0 + 1, cell.1));
        } else if v.x < 0.0 && cell.0 > 0 {
            consider((cell.0 as f64 * self.cell_w - p.x) / v.x, (cell.0 - 1, cell.1));
        }
        if v.y > 0.0 && cell.1 + 1 < self.rows {
            consider(((cell.1 + 1) as f64 * self.cell_h - p.y) / v.y, (cell.0, cell.1 + 1));
        } else if v.y < 0.0 && cell.1 > 0 {
            consider((cell.1 as f64 * self.cell_h - p.y) / v.y, (cell.0, cell.1 - 1));
        }
        best
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.cols, self.rows)
    }
}

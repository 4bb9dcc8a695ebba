use crate::error::{Error, Result};
use crate::spectral::GridSpec;

/// The periodic tiling of the torus by dyadic cubes of side `2^-k`, corners at multiples of `2^-k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicTiling {
    grid: GridSpec,
    k: i32,
    cells_per_side: usize,
}

impl DyadicTiling {
    pub fn new(grid: GridSpec, k: i32) -> Result<Self> {
        let (lo, hi) = Self::valid_range(&grid);
        if k < lo.max(0) || k > hi {
            return Err(Error::InvalidTiling(format!(
                "scale k = {k} needs {} <= k <= {hi} on a grid with N = {}, L = {}",
                lo.max(0),
                grid.points(),
                grid.length()
            )));
        }
        // cube side / spacing = 2^{-k} N / L, an integer power of two >= 1
        let cells_per_side = 1usize << (grid.log2_points() as i32 - grid.log2_length() - k);
        Ok(Self { grid, k, cells_per_side })
    }

    /// Inclusive range of scales whose cubes fit the torus and hold at least one cell.
    /// The lower end may be negative on large tori; only `k >= 0` is accepted.
    pub fn valid_range(grid: &GridSpec) -> (i32, i32) {
        let lo = -grid.log2_length();
        let hi = grid.log2_points() as i32 - grid.log2_length();
        (lo, hi)
    }

    /// All nonnegative scales usable on the grid, coarsest first.
    pub fn scales(grid: &GridSpec) -> Vec<i32> {
        let (lo, hi) = Self::valid_range(grid);
        (lo.max(0)..=hi).collect()
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn cube_side(&self) -> f64 {
        2f64.powi(-self.k)
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells_per_side
    }

    pub fn cubes_per_side(&self) -> usize {
        self.grid.points() / self.cells_per_side
    }

    pub fn cube_count(&self) -> usize {
        self.cubes_per_side().pow(self.grid.dim())
    }

    /// Cube index of every grid point, visited in row-major sample order.
    ///
    /// Calls `visit(sample_index, cube_index)`; cube indices are row-major over cube coordinates.
    pub fn for_each_cell(&self, mut visit: impl FnMut(usize, usize)) {
        let n = self.grid.dim() as usize;
        let pts = self.grid.points();
        let c = self.cells_per_side;
        let m = self.cubes_per_side();
        let last = n - 1;
        let mut idx = vec![0usize; n];
        let mut flat = 0usize;
        loop {
            let base = idx[..last].iter().fold(0, |acc, &i| acc * m + i / c) * m;
            for i in 0..pts {
                visit(flat, base + i / c);
                flat += 1;
            }
            let mut d = last;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < pts {
                    break;
                }
                idx[d] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_membership_partitions_the_grid() {
        let g = GridSpec::unit(3, 8).unwrap();
        for k in DyadicTiling::scales(&g) {
            let t = DyadicTiling::new(g, k).unwrap();
            let mut counts = vec![0usize; t.cube_count()];
            let mut seen = 0;
            t.for_each_cell(|flat, q| {
                assert_eq!(flat, seen);
                seen += 1;
                // direct membership from coordinates
                let idx = g.unflatten(flat);
                let direct = idx
                    .iter()
                    .fold(0, |acc, &i| acc * t.cubes_per_side() + (g.coordinate(i) / t.cube_side()).floor() as usize);
                assert_eq!(q, direct);
                counts[q] += 1;
            });
            assert_eq!(seen, g.total_points());
            assert!(counts.iter().all(|&c| c == t.cells_per_side().pow(3)));
        }
    }

    #[test]
    fn scale_range_respects_torus_and_spacing() {
        let g = GridSpec::new(2, 16, 4.0).unwrap();
        assert_eq!(DyadicTiling::valid_range(&g), (-2, 2));
        assert!(DyadicTiling::new(g, 3).is_err());
        assert!(DyadicTiling::new(g, -1).is_err());
        assert_eq!(DyadicTiling::new(g, 0).unwrap().cube_count(), 16);
        let small = GridSpec::new(2, 16, 0.5).unwrap();
        assert!(DyadicTiling::new(small, 0).is_err());
        assert_eq!(DyadicTiling::scales(&small), vec![1, 2, 3, 4, 5]);
    }
}

use serde::Serialize;

use super::spacetime::{temporal_norm, SpaceTimeField};
use super::spatial::{cube_norms, lr_combine, sobolev_norm};
use super::tiling::DyadicTiling;
use crate::atlas::{alpha, ProblemParams};
use crate::error::{Error, Result};
use crate::lp::CutoffFamily;
use crate::spectral::{apply_radial_multiplier, Field, Representation};

/// The iteration norm split into its pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarNorm {
    pub total: f64,
    /// `sup_t ||u(t)||_{H^gamma}`.
    pub energy: f64,
    /// `||S_j u||_{*,j}` for `j = 1, 2, ...`.
    pub partials: Vec<f64>,
}

/// `||u||_{C(H^gamma)} + (sum_j ||S_j u||_{*,j}^2)^{1/2}` where
/// `||v||_{*,j} = 2^{gamma j} sup_k 2^{alpha(j,k)/q} ||v||_{L^q_t X^{r,2}_k}`.
///
/// The sum runs over `1..=j_max` and the supremum over every tiling the grid supports.
pub fn star_norm(u: &SpaceTimeField, params: &ProblemParams, cutoffs: &CutoffFamily) -> Result<StarNorm> {
    if params.n <= 3 {
        return Err(Error::Precondition(format!("the iteration norm needs n > 3, got {}", params.n)));
    }
    let (r, q) = params.solver_exponents()?;
    let grid = *u.grid();
    if grid.dim() != params.n {
        return Err(Error::Precondition(format!(
            "field dimension {} differs from problem dimension {}",
            grid.dim(),
            params.n
        )));
    }
    let spectra: Vec<Field> = u.frames().iter().map(|f| f.to(Representation::Frequency)).collect();
    let energy = spectra.iter().map(|f| sobolev_norm(f, params.gamma)).fold(0.0, f64::max);

    let tilings = DyadicTiling::scales(&grid)
        .into_iter()
        .map(|k| DyadicTiling::new(grid, k))
        .collect::<Result<Vec<_>>>()?;
    let dt = u.step();
    let mut partials = Vec::new();
    for j in 1..=cutoffs.j_max(&grid) {
        let beta = cutoffs.beta(j);
        // per_k[t][k] = ||S_j u(t)||_{X^{r,2}_k}
        let mut per_k = vec![Vec::with_capacity(spectra.len()); tilings.len()];
        for spec in &spectra {
            let piece = apply_radial_multiplier(spec, &beta).into_physical();
            for (slot, tiling) in per_k.iter_mut().zip(&tilings) {
                slot.push(lr_combine(&cube_norms(&piece, 2.0, tiling)?, r));
            }
        }
        let mut best = 0.0f64;
        for (values, tiling) in per_k.iter().zip(&tilings) {
            let weight = if q.is_infinite() {
                1.0
            } else {
                2f64.powf(alpha(j as i64, tiling.k() as i64, params.n)? / q)
            };
            best = best.max(weight * temporal_norm(values, dt, q)?);
        }
        partials.push(2f64.powf(params.gamma * j as f64) * best);
    }
    let total = energy + partials.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(StarNorm { total, energy, partials })
}

//! Unitary n-dimensional DFT over row-major data, built from 1-D rustfft passes.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    // Plans are cached per worker thread; rustfft plans themselves are immutable.
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

/// In-place unitary transform of an `n`-dimensional cube of side `points`.
pub(crate) fn transform_in_place(data: &mut [Complex64], dim: u32, points: usize, direction: FftDirection) {
    let fft = plan(points, direction);
    let total = data.len();
    debug_assert_eq!(total, points.pow(dim));
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    // Last axis: lines are contiguous.
    fft.process_with_scratch(data, &mut scratch);

    // Remaining axes: gather strided lines into a block, transform, scatter back.
    let mut block = Vec::new();
    for axis in (0..dim as usize - 1).rev() {
        let stride = points.pow(dim - 1 - axis as u32);
        let span = stride * points;
        block.resize(span, Complex64::default());
        for chunk in data.chunks_exact_mut(span) {
            for i in 0..points {
                let row = &chunk[i * stride..(i + 1) * stride];
                for (s, v) in row.iter().enumerate() {
                    block[s * points + i] = *v;
                }
            }
            fft.process_with_scratch(&mut block, &mut scratch);
            for i in 0..points {
                let row = &mut chunk[i * stride..(i + 1) * stride];
                for (s, v) in row.iter_mut().enumerate() {
                    *v = block[s * points + i];
                }
            }
        }
    }

    let scale = (total as f64).sqrt().recip();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

//! Thin 2D FFT layer over rustfft with per-thread plan caching.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> =
        RefCell::new(HashMap::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        let mut map = cell.borrow_mut();
        map.entry((n, inverse))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if inverse {
                    planner.plan_fft_inverse(n)
                } else {
                    planner.plan_fft_forward(n)
                }
            })
            .clone()
    })
}

fn transpose(data: &mut [Complex64], scratch: &mut Vec<Complex64>, n: usize) {
    scratch.clear();
    scratch.extend_from_slice(data);
    for y in 0..n {
        for x in 0..n {
            data[x * n + y] = scratch[y * n + x];
        }
    }
}

fn fft2_inplace(data: &mut [Complex64], n: usize, inverse: bool) {
    debug_assert_eq!(data.len(), n * n);
    let p = plan(n, inverse);
    let mut scratch = Vec::with_capacity(n * n);
    for row in data.chunks_exact_mut(n) {
        p.process(row);
    }
    transpose(data, &mut scratch, n);
    for row in data.chunks_exact_mut(n) {
        p.process(row);
    }
    transpose(data, &mut scratch, n);
}

/// Physical samples (row-major, x fastest) -> Fourier coefficients with the
/// 1/n^2 normalization, standard FFT frequency order.
pub fn forward(phys: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut data = phys.to_vec();
    fft2_inplace(&mut data, n, false);
    let scale = 1.0 / (n * n) as f64;
    for c in &mut data {
        *c *= scale;
    }
    data
}

/// Fourier coefficients -> physical samples.
pub fn backward(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut data = coeffs.to_vec();
    fft2_inplace(&mut data, n, true);
    data
}

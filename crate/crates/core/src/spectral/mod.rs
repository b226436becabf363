//! Torus grid, spectral fields, differential operators, Littlewood-Paley
//! machinery, mollifiers and Hoelder-norm estimation.
//!
//! A [`SpectralField`] stores truncated Fourier coefficients of a scalar,
//! vector or 2x2-tensor field on the square torus `[0, 2*pi)^2`. Fields are
//! immutable after construction; every operation returns a new field, so
//! callers may parallelize freely.

mod fft;
mod lp;
mod norms;

pub use lp::{AnnulusSpec, BandProjector, LpBasis, Mollifier};
pub use norms::holder_norm;

use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

pub const TWO_PI: f64 = std::f64::consts::TAU;

/// Uniform grid on the torus with `n` modes per axis and a square dealias
/// cutoff `kmax = floor((n/2) * dealias_fraction)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusGrid {
    n: usize,
    dealias_num: u32,
    dealias_den: u32,
    kmax: i64,
}

impl TorusGrid {
    pub fn new(n: usize, dealias_num: u32, dealias_den: u32) -> Result<Arc<TorusGrid>> {
        if n < 16 || n % 2 != 0 {
            return Err(Error::Config(format!(
                "grid size must be even and >= 16, got {n}"
            )));
        }
        if dealias_num == 0 || dealias_den == 0 || dealias_num > dealias_den {
            return Err(Error::Config(format!(
                "dealias fraction must lie in (0,1], got {dealias_num}/{dealias_den}"
            )));
        }
        let kmax = ((n as u64 / 2) * dealias_num as u64 / dealias_den as u64) as i64;
        Ok(Arc::new(TorusGrid {
            n,
            dealias_num,
            dealias_den,
            kmax,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest retained frequency per axis.
    pub fn kmax(&self) -> i64 {
        self.kmax
    }

    pub fn dealias_fraction(&self) -> (u32, u32) {
        (self.dealias_num, self.dealias_den)
    }

    /// Frequency of FFT bin `i` along one axis.
    #[inline]
    pub fn freq_of(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i <= n / 2 - 1 {
            i
        } else {
            i - n
        }
    }

    /// FFT bin of frequency `k` (must satisfy |k| <= n/2).
    #[inline]
    pub fn bin_of(&self, k: i64) -> usize {
        let n = self.n as i64;
        debug_assert!(k.abs() <= n / 2);
        ((k + n) % n) as usize
    }

    #[inline]
    pub fn retained(&self, kx: i64, ky: i64) -> bool {
        kx.abs() <= self.kmax && ky.abs() <= self.kmax
    }

    /// Physical coordinates of grid node (ix, iy).
    #[inline]
    pub fn node(&self, ix: usize, iy: usize) -> [f64; 2] {
        let h = TWO_PI / self.n as f64;
        [ix as f64 * h, iy as f64 * h]
    }
}

/// Tensor rank of a field. Tensor components are stored row-major:
/// `[T11, T12, T21, T22]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Scalar,
    Vector,
    Tensor,
}

impl Rank {
    pub fn components(self) -> usize {
        match self {
            Rank::Scalar => 1,
            Rank::Vector => 2,
            Rank::Tensor => 4,
        }
    }
}

/// A field on the torus stored as truncated Fourier coefficients (standard
/// FFT bin order, one coefficient vector per component).
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<TorusGrid>,
    rank: Rank,
    comps: Vec<Vec<Complex64>>,
}

impl SpectralField {
    pub fn zeros(grid: &Arc<TorusGrid>, rank: Rank) -> SpectralField {
        let n2 = grid.n() * grid.n();
        SpectralField {
            grid: grid.clone(),
            rank,
            comps: vec![vec![Complex64::new(0.0, 0.0); n2]; rank.components()],
        }
    }

    pub fn grid(&self) -> &Arc<TorusGrid> {
        &self.grid
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn comps(&self) -> &[Vec<Complex64>] {
        &self.comps
    }

    /// Build a field by sampling real-valued component functions on the grid.
    /// Coefficients outside the dealias cutoff are discarded.
    pub fn from_fn(
        grid: &Arc<TorusGrid>,
        rank: Rank,
        f: impl Fn(f64, f64) -> Vec<f64>,
    ) -> SpectralField {
        let n = grid.n();
        let nc = rank.components();
        let mut phys = vec![vec![Complex64::new(0.0, 0.0); n * n]; nc];
        for iy in 0..n {
            for ix in 0..n {
                let [x, y] = grid.node(ix, iy);
                let vals = f(x, y);
                debug_assert_eq!(vals.len(), nc);
                for (c, v) in vals.iter().enumerate() {
                    phys[c][iy * n + ix] = Complex64::new(*v, 0.0);
                }
            }
        }
        let comps = phys.iter().map(|p| fft::forward(p, n)).collect();
        let mut out = SpectralField {
            grid: grid.clone(),
            rank,
            comps,
        };
        out.apply_dealias_mask();
        out
    }

    pub fn scalar_from_fn(grid: &Arc<TorusGrid>, f: impl Fn(f64, f64) -> f64) -> SpectralField {
        SpectralField::from_fn(grid, Rank::Scalar, |x, y| vec![f(x, y)])
    }

    /// Build a field from physical samples already on the grid (one slice per
    /// component, row-major, x fastest).
    pub fn from_physical(
        grid: &Arc<TorusGrid>,
        rank: Rank,
        phys: &[Vec<f64>],
    ) -> SpectralField {
        let n = grid.n();
        assert_eq!(phys.len(), rank.components());
        let comps = phys
            .iter()
            .map(|p| {
                let buf: Vec<Complex64> = p.iter().map(|v| Complex64::new(*v, 0.0)).collect();
                fft::forward(&buf, n)
            })
            .collect();
        let mut out = SpectralField {
            grid: grid.clone(),
            rank,
            comps,
        };
        out.apply_dealias_mask();
        out
    }

    /// Construct from explicit coefficients of a real field given as a list
    /// of (kx, ky, c); the conjugate modes are filled in automatically.
    pub fn from_modes(
        grid: &Arc<TorusGrid>,
        rank: Rank,
        modes: &[(i64, i64, Vec<Complex64>)],
    ) -> Result<SpectralField> {
        let mut out = SpectralField::zeros(grid, rank);
        for (kx, ky, vals) in modes {
            if !grid.retained(*kx, *ky) {
                return Err(Error::Resolution(format!(
                    "mode ({kx},{ky}) outside retained set (kmax {})",
                    grid.kmax()
                )));
            }
            if vals.len() != rank.components() {
                return Err(Error::Config("component count mismatch".into()));
            }
            let i = grid.bin_of(*ky) * grid.n() + grid.bin_of(*kx);
            let j = grid.bin_of(-*ky) * grid.n() + grid.bin_of(-*kx);
            for (c, v) in vals.iter().enumerate() {
                out.comps[c][i] += v;
                if i != j {
                    out.comps[c][j] += v.conj();
                }
            }
        }
        Ok(out)
    }

    /// Physical samples of every component (imaginary parts discarded; they
    /// are zero for Hermitian-symmetric coefficients).
    pub fn to_physical(&self) -> Vec<Vec<f64>> {
        let n = self.grid.n();
        self.comps
            .iter()
            .map(|c| fft::backward(c, n).iter().map(|z| z.re).collect())
            .collect()
    }

    fn to_physical_complex(&self) -> Vec<Vec<Complex64>> {
        let n = self.grid.n();
        self.comps.iter().map(|c| fft::backward(c, n)).collect()
    }

    pub fn coeff(&self, comp: usize, kx: i64, ky: i64) -> Complex64 {
        let i = self.grid.bin_of(ky) * self.grid.n() + self.grid.bin_of(kx);
        self.comps[comp][i]
    }

    pub fn set_coeff(&mut self, comp: usize, kx: i64, ky: i64, v: Complex64) {
        let i = self.grid.bin_of(ky) * self.grid.n() + self.grid.bin_of(kx);
        self.comps[comp][i] = v;
    }

    pub fn mean(&self, comp: usize) -> Complex64 {
        self.comps[comp][0]
    }

    pub fn is_zero_mean(&self, tol: f64) -> bool {
        let scale = self.linf_norm().max(1e-300);
        self.comps
            .iter()
            .all(|c| c[0].norm() <= tol * scale.max(1.0))
    }

    pub fn require_zero_mean(&self, what: &str) -> Result<()> {
        if self.is_zero_mean(1e-10) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} must have zero mean")))
        }
    }

    /// Zero out all coefficients outside the retained (dealias) set.
    pub fn apply_dealias_mask(&mut self) {
        let n = self.grid.n();
        for c in &mut self.comps {
            for iy in 0..n {
                let ky = self.grid.freq_of(iy);
                for ix in 0..n {
                    let kx = self.grid.freq_of(ix);
                    if !self.grid.retained(kx, ky) {
                        c[iy * n + ix] = Complex64::new(0.0, 0.0);
                    }
                }
            }
        }
    }

    /// Apply a diagonal Fourier symbol to a single component, producing a
    /// scalar field.
    pub fn map_modes_scalar(
        &self,
        comp: usize,
        f: impl Fn(i64, i64, Complex64) -> Complex64,
    ) -> SpectralField {
        let n = self.grid.n();
        let mut out = SpectralField::zeros(&self.grid, Rank::Scalar);
        for iy in 0..n {
            let ky = self.grid.freq_of(iy);
            for ix in 0..n {
                let kx = self.grid.freq_of(ix);
                let i = iy * n + ix;
                out.comps[0][i] = f(kx, ky, self.comps[comp][i]);
            }
        }
        out
    }

    /// Apply a diagonal symbol componentwise, keeping the rank.
    pub fn map_modes(&self, f: impl Fn(i64, i64, Complex64) -> Complex64) -> SpectralField {
        let n = self.grid.n();
        let mut out = SpectralField::zeros(&self.grid, self.rank);
        for (c, src) in self.comps.iter().enumerate() {
            for iy in 0..n {
                let ky = self.grid.freq_of(iy);
                for ix in 0..n {
                    let kx = self.grid.freq_of(ix);
                    let i = iy * n + ix;
                    out.comps[c][i] = f(kx, ky, src[i]);
                }
            }
        }
        out
    }

    pub fn component(&self, comp: usize) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            rank: Rank::Scalar,
            comps: vec![self.comps[comp].clone()],
        }
    }

    pub fn from_components(rank: Rank, parts: &[&SpectralField]) -> SpectralField {
        assert_eq!(rank.components(), parts.len());
        let grid = parts[0].grid.clone();
        let comps = parts
            .iter()
            .map(|p| {
                assert_eq!(p.rank, Rank::Scalar);
                assert_eq!(p.grid.n(), grid.n());
                p.comps[0].clone()
            })
            .collect();
        SpectralField {
            grid,
            rank,
            comps,
        }
    }

    pub fn scale(&self, s: f64) -> SpectralField {
        let mut out = self.clone();
        for c in &mut out.comps {
            for v in c.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        self.axpy(-1.0, other)
    }

    /// self + a * other
    pub fn axpy(&self, a: f64, other: &SpectralField) -> SpectralField {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.grid.n(), other.grid.n());
        let mut out = self.clone();
        for (c, oc) in out.comps.iter_mut().zip(other.comps.iter()) {
            for (v, w) in c.iter_mut().zip(oc.iter()) {
                *v += a * w;
            }
        }
        out
    }

    pub fn accumulate(&mut self, a: f64, other: &SpectralField) {
        assert_eq!(self.rank, other.rank);
        for (c, oc) in self.comps.iter_mut().zip(other.comps.iter()) {
            for (v, w) in c.iter_mut().zip(oc.iter()) {
                *v += a * w;
            }
        }
    }

    /// Max over components of the physical sup-norm.
    pub fn linf_norm(&self) -> f64 {
        self.to_physical()
            .iter()
            .map(|p| p.iter().fold(0.0f64, |m, v| m.max(v.abs())))
            .fold(0.0, f64::max)
    }

    /// Sup-norm evaluated on a 2x oversampled grid (zero-padded synthesis).
    pub fn linf_oversampled(&self) -> f64 {
        let n = self.grid.n();
        let m = 2 * n;
        let mut best = 0.0f64;
        for c in &self.comps {
            let mut padded = vec![Complex64::new(0.0, 0.0); m * m];
            for iy in 0..n {
                let ky = self.grid.freq_of(iy);
                for ix in 0..n {
                    let kx = self.grid.freq_of(ix);
                    let v = c[iy * n + ix];
                    if v.norm_sqr() == 0.0 {
                        continue;
                    }
                    let jx = ((kx + m as i64) % m as i64) as usize;
                    let jy = ((ky + m as i64) % m as i64) as usize;
                    padded[jy * m + jx] = v;
                }
            }
            let phys = fft::backward(&padded, m);
            for z in &phys {
                best = best.max(z.re.abs());
            }
        }
        best
    }

    /// l2 norm of the coefficient vector over all components.
    pub fn coeff_l2(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest violation of coeff(-k) == conj(coeff(k)), relative to the
    /// largest coefficient.
    pub fn hermitian_error(&self) -> f64 {
        let n = self.grid.n();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for c in &self.comps {
            for iy in 0..n {
                let ky = self.grid.freq_of(iy);
                for ix in 0..n {
                    let kx = self.grid.freq_of(ix);
                    let v = c[iy * n + ix];
                    scale = scale.max(v.norm());
                    if kx.abs() == (n as i64) / 2 || ky.abs() == (n as i64) / 2 {
                        continue;
                    }
                    let j = self.grid.bin_of(-ky) * n + self.grid.bin_of(-kx);
                    worst = worst.max((v - c[j].conj()).norm());
                }
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }

    /// Visit every retained mode of one component.
    pub fn for_each_mode(&self, comp: usize, mut f: impl FnMut(i64, i64, Complex64)) {
        let n = self.grid.n();
        for iy in 0..n {
            let ky = self.grid.freq_of(iy);
            for ix in 0..n {
                let kx = self.grid.freq_of(ix);
                f(kx, ky, self.comps[comp][iy * n + ix]);
            }
        }
    }

    /// Evaluate one component at arbitrary points by direct Fourier synthesis
    /// (factorized over axes; cost O(points * kmax^2)).
    pub fn eval_at_points(&self, comp: usize, pts: &[[f64; 2]]) -> Vec<f64> {
        let n = self.grid.n();
        let kmax = self.grid.kmax() as usize;
        // Gather nonzero modes once.
        let mut modes: Vec<(i64, i64, Complex64)> = Vec::new();
        self.for_each_mode(comp, |kx, ky, c| {
            if c.norm_sqr() > 0.0 {
                modes.push((kx, ky, c));
            }
        });
        let _ = n;
        pts.iter()
            .map(|p| {
                // e^{ik x} tables per axis via recursion
                let ex = exp_table(p[0], kmax);
                let ey = exp_table(p[1], kmax);
                let mut acc = Complex64::new(0.0, 0.0);
                for (kx, ky, c) in &modes {
                    acc += c * lookup(&ex, *kx, kmax) * lookup(&ey, *ky, kmax);
                }
                acc.re
            })
            .collect()
    }
}

fn exp_table(x: f64, kmax: usize) -> Vec<Complex64> {
    let mut t = Vec::with_capacity(kmax + 1);
    let w = Complex64::new(0.0, x).exp();
    let mut cur = Complex64::new(1.0, 0.0);
    for _ in 0..=kmax {
        t.push(cur);
        cur *= w;
    }
    t
}

#[inline]
fn lookup(t: &[Complex64], k: i64, kmax: usize) -> Complex64 {
    debug_assert!(k.unsigned_abs() as usize <= kmax);
    if k >= 0 {
        t[k as usize]
    } else {
        t[(-k) as usize].conj()
    }
}

/// Differential and integral operators acting by exact Fourier symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Calculus {
    Grad,
    PerpGrad,
    Div,
    PerpDiv,
    Laplacian,
    InvLaplacian,
    /// Fractional Laplacian power |xi|^s.
    Fractional(f64),
}

impl SpectralField {
    /// Partial derivative of one scalar component.
    pub fn deriv(&self, comp: usize, axis: usize) -> SpectralField {
        self.map_modes_scalar(comp, |kx, ky, c| {
            let k = if axis == 0 { kx } else { ky };
            Complex64::new(0.0, k as f64) * c
        })
    }

    pub fn calculus(&self, op: Calculus) -> Result<SpectralField> {
        match op {
            Calculus::Grad => {
                assert_eq!(self.rank, Rank::Scalar);
                Ok(SpectralField::from_components(
                    Rank::Vector,
                    &[&self.deriv(0, 0), &self.deriv(0, 1)],
                ))
            }
            Calculus::PerpGrad => {
                assert_eq!(self.rank, Rank::Scalar);
                Ok(SpectralField::from_components(
                    Rank::Vector,
                    &[&self.deriv(0, 1).scale(-1.0), &self.deriv(0, 0)],
                ))
            }
            Calculus::Div => match self.rank {
                Rank::Vector => Ok(self.deriv(0, 0).add(&self.deriv(1, 1))),
                // Row convention: (div T)_i = d_j T_ij.
                Rank::Tensor => Ok(SpectralField::from_components(
                    Rank::Vector,
                    &[
                        &self.deriv(0, 0).add(&self.deriv(1, 1)),
                        &self.deriv(2, 0).add(&self.deriv(3, 1)),
                    ],
                )),
                Rank::Scalar => Err(Error::Precondition("div needs vector or tensor".into())),
            },
            Calculus::PerpDiv => {
                assert_eq!(self.rank, Rank::Vector);
                // perp_div v = d1 v2 - d2 v1
                Ok(self.deriv(1, 0).sub(&self.deriv(0, 1)))
            }
            Calculus::Laplacian => Ok(self.map_modes(|kx, ky, c| {
                let k2 = (kx * kx + ky * ky) as f64;
                -k2 * c
            })),
            Calculus::InvLaplacian => {
                self.require_zero_mean_all("inverse Laplacian input")?;
                Ok(self.map_modes(|kx, ky, c| {
                    let k2 = (kx * kx + ky * ky) as f64;
                    if k2 == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        -c / k2
                    }
                }))
            }
            Calculus::Fractional(s) => {
                if s < 0.0 {
                    self.require_zero_mean_all("negative-order fractional operator input")?;
                }
                Ok(self.map_modes(|kx, ky, c| {
                    let k2 = (kx * kx + ky * ky) as f64;
                    if k2 == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        k2.powf(s / 2.0) * c
                    }
                }))
            }
        }
    }

    fn require_zero_mean_all(&self, what: &str) -> Result<()> {
        for c in 0..self.rank.components() {
            if self.mean(c).norm() > 1e-10 * self.linf_norm().max(1.0) {
                return Err(Error::Precondition(format!("{what} must have zero mean")));
            }
        }
        Ok(())
    }

    /// Dealiased pointwise product of scalar fields: both factors are
    /// synthesized on a 2x padded grid, multiplied, transformed back and
    /// truncated to the retained modes.
    pub fn mul_dealiased(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.rank, Rank::Scalar);
        assert_eq!(other.rank, Rank::Scalar);
        product_padded(&self.grid, &self.comps[0], &other.comps[0])
    }

    /// Plain grid-pointwise product (no padding). Used where the construction
    /// is defined by a pointwise identity on the sampling grid.
    pub fn mul_grid(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.rank, Rank::Scalar);
        assert_eq!(other.rank, Rank::Scalar);
        let n = self.grid.n();
        let a = self.to_physical_complex();
        let b = other.to_physical_complex();
        let prod: Vec<Complex64> = a[0].iter().zip(b[0].iter()).map(|(x, y)| x * y).collect();
        SpectralField {
            grid: self.grid.clone(),
            rank: Rank::Scalar,
            comps: vec![fft::forward(&prod, n)],
        }
    }

    /// Build a scalar field pointwise on the grid from physical samples of
    /// several input fields. No padding; the output is the grid sampling of
    /// the pointwise function.
    pub fn from_pointwise(
        grid: &Arc<TorusGrid>,
        inputs: &[&SpectralField],
        f: impl Fn(&[f64]) -> f64,
    ) -> SpectralField {
        let n = grid.n();
        let phys: Vec<Vec<Vec<f64>>> = inputs.iter().map(|g| g.to_physical()).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        let mut vals = Vec::new();
        for i in 0..n * n {
            vals.clear();
            for p in &phys {
                for c in p {
                    vals.push(c[i]);
                }
            }
            out[i] = Complex64::new(f(&vals), 0.0);
        }
        SpectralField {
            grid: grid.clone(),
            rank: Rank::Scalar,
            comps: vec![fft::forward(&out, n)],
        }
    }
}

/// Dealiased product of two coefficient slices on the same grid.
fn product_padded(
    grid: &Arc<TorusGrid>,
    a: &[Complex64],
    b: &[Complex64],
) -> SpectralField {
    let n = grid.n();
    let m = 2 * n;
    let pa = pad(grid, a, m);
    let pb = pad(grid, b, m);
    let xa = fft::backward(&pa, m);
    let xb = fft::backward(&pb, m);
    let prod: Vec<Complex64> = xa.iter().zip(xb.iter()).map(|(x, y)| x * y).collect();
    let pc = fft::forward(&prod, m);
    let mut out = SpectralField::zeros(grid, Rank::Scalar);
    for iy in 0..n {
        let ky = grid.freq_of(iy);
        for ix in 0..n {
            let kx = grid.freq_of(ix);
            let jx = ((kx + m as i64) % m as i64) as usize;
            let jy = ((ky + m as i64) % m as i64) as usize;
            out.comps[0][iy * n + ix] = pc[jy * m + jx];
        }
    }
    out.apply_dealias_mask();
    out
}

fn pad(grid: &Arc<TorusGrid>, coeffs: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = grid.n();
    let mut padded = vec![Complex64::new(0.0, 0.0); m * m];
    for iy in 0..n {
        let ky = grid.freq_of(iy);
        for ix in 0..n {
            let kx = grid.freq_of(ix);
            let v = coeffs[iy * n + ix];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            let jx = ((kx + m as i64) % m as i64) as usize;
            let jy = ((ky + m as i64) % m as i64) as usize;
            padded[jy * m + jx] = v;
        }
    }
    padded
}

/// Dot products / pointwise contractions used throughout the iteration.
/// All products are dealiased.
impl SpectralField {
    /// u . grad f for vector u and scalar f.
    pub fn advect_scalar(u: &SpectralField, f: &SpectralField) -> SpectralField {
        assert_eq!(u.rank, Rank::Vector);
        let fx = f.deriv(0, 0);
        let fy = f.deriv(0, 1);
        u.component(0)
            .mul_dealiased(&fx)
            .add(&u.component(1).mul_dealiased(&fy))
    }

    /// u . grad v componentwise for vector (or tensor) v.
    pub fn advect(u: &SpectralField, v: &SpectralField) -> SpectralField {
        let parts: Vec<SpectralField> = (0..v.rank.components())
            .map(|c| SpectralField::advect_scalar(u, &v.component(c)))
            .collect();
        let refs: Vec<&SpectralField> = parts.iter().collect();
        SpectralField::from_components(v.rank, &refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid64() -> Arc<TorusGrid> {
        TorusGrid::new(64, 2, 3).unwrap()
    }

    #[test]
    fn grid_cutoffs() {
        let g = TorusGrid::new(64, 2, 3).unwrap();
        assert_eq!(g.kmax(), 21);
        let g = TorusGrid::new(16, 1, 1).unwrap();
        assert_eq!(g.kmax(), 8);
        assert!(TorusGrid::new(15, 2, 3).is_err());
        assert!(TorusGrid::new(14, 2, 3).is_err());
        assert!(TorusGrid::new(32, 3, 2).is_err());
    }

    #[test]
    fn roundtrip_identity() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| {
            (3.0 * x).cos() * (2.0 * y).sin() + 0.5 * (x - 2.0 * y).sin()
        });
        let phys = f.to_physical();
        let f2 = SpectralField::from_physical(&g, Rank::Scalar, &phys);
        let diff = f.sub(&f2);
        assert!(diff.coeff_l2() <= 1e-12 * f.coeff_l2());
    }

    #[test]
    fn parseval() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| (5.0 * x).cos() + (3.0 * y).sin() * x.cos());
        let sum_spec: f64 = f.comps()[0].iter().map(|c| c.norm_sqr()).sum();
        let phys = f.to_physical();
        let n2 = (g.n() * g.n()) as f64;
        let sum_phys: f64 = phys[0].iter().map(|v| v * v).sum::<f64>() / n2;
        assert!((sum_spec - sum_phys).abs() <= 1e-10 * sum_phys);
    }

    #[test]
    fn perp_grad_single_mode() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, _| x.sin());
        let pg = f.calculus(Calculus::PerpGrad).unwrap();
        // perp_grad(sin x1) = (0, cos x1)
        let expect = SpectralField::from_fn(&g, Rank::Vector, |x, _| vec![0.0, x.cos()]);
        assert!(pg.sub(&expect).linf_norm() < 1e-12);
    }

    #[test]
    fn inv_laplacian_single_mode() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, _| (2.0 * x).cos());
        let inv = f.calculus(Calculus::InvLaplacian).unwrap();
        let expect = f.scale(-0.25);
        assert!(inv.sub(&expect).linf_norm() < 1e-12);
    }

    #[test]
    fn negative_order_rejects_nonzero_mean() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, _| 1.0 + x.cos());
        assert!(f.calculus(Calculus::InvLaplacian).is_err());
        assert!(f.calculus(Calculus::Fractional(-0.5)).is_err());
        assert!(f.calculus(Calculus::Fractional(1.0)).is_ok());
    }

    #[test]
    fn perp_div_of_grad_vanishes() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| (3.0 * x + y).sin() + (2.0 * y).cos());
        let grad = f.calculus(Calculus::Grad).unwrap();
        let pd = grad.calculus(Calculus::PerpDiv).unwrap();
        assert!(pd.coeff_l2() < 1e-13 * f.coeff_l2().max(1.0));
        let pg = f.calculus(Calculus::PerpGrad).unwrap();
        let d = pg.calculus(Calculus::Div).unwrap();
        assert!(d.coeff_l2() < 1e-13 * f.coeff_l2().max(1.0));
    }

    #[test]
    fn laplacian_of_inverse_is_identity() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| (4.0 * x).sin() * (3.0 * y).cos());
        let back = f
            .calculus(Calculus::InvLaplacian)
            .unwrap()
            .calculus(Calculus::Laplacian)
            .unwrap();
        assert!(back.sub(&f).coeff_l2() <= 1e-12 * f.coeff_l2());
    }

    #[test]
    fn dealiased_product_of_single_modes() {
        let g = grid64();
        let a = SpectralField::scalar_from_fn(&g, |x, _| (3.0 * x).cos());
        let b = SpectralField::scalar_from_fn(&g, |x, _| (5.0 * x).cos());
        let p = a.mul_dealiased(&b);
        let expect = SpectralField::scalar_from_fn(&g, |x, _| {
            0.5 * ((8.0 * x).cos() + (2.0 * x).cos())
        });
        assert!(p.sub(&expect).linf_norm() < 1e-12);
    }

    #[test]
    fn point_evaluation_matches_closure() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| (2.0 * x).cos() * y.sin());
        let pts = vec![[0.3, 1.1], [4.0, 2.7], [6.0, 0.01]];
        let vals = f.eval_at_points(0, &pts);
        for (p, v) in pts.iter().zip(vals.iter()) {
            let truth = (2.0 * p[0]).cos() * p[1].sin();
            assert!((v - truth).abs() < 1e-11);
        }
    }

    #[test]
    fn hermitian_symmetry_of_real_fields() {
        let g = grid64();
        let f = SpectralField::scalar_from_fn(&g, |x, y| (x + 2.0 * y).sin() + (3.0 * x).cos());
        assert!(f.hermitian_error() < 1e-13);
    }
}

//! Fourth-order periodic stencils on ghost-padded buffers.

/// Ghost cells on each side.
pub(crate) const G: usize = 3;

/// Copies `src` into `dst` with `G` periodic ghost cells on both ends.
pub(crate) fn pad(src: &[f64], dst: &mut Vec<f64>) {
    let n = src.len();
    dst.clear();
    dst.extend_from_slice(&src[n - G..]);
    dst.extend_from_slice(src);
    dst.extend_from_slice(&src[..G]);
}

/// First derivative at node `i` of a padded buffer.
#[inline]
pub(crate) fn d1(p: &[f64], i: usize, inv_dx: f64) -> f64 {
    let j = i + G;
    (p[j - 2] - 8.0 * p[j - 1] + 8.0 * p[j + 1] - p[j + 2]) * (inv_dx / 12.0)
}

/// Second derivative at node `i` of a padded buffer.
#[inline]
pub(crate) fn d2(p: &[f64], i: usize, inv_dx2: f64) -> f64 {
    let j = i + G;
    (-p[j - 2] + 16.0 * p[j - 1] - 30.0 * p[j] + 16.0 * p[j + 1] - p[j + 2]) * (inv_dx2 / 12.0)
}

/// First derivative at the half point `i + 1/2`.
#[inline]
pub(crate) fn d1_half(p: &[f64], i: usize, inv_dx: f64) -> f64 {
    let j = i + G;
    (p[j - 1] - 27.0 * p[j] + 27.0 * p[j + 1] - p[j + 2]) * (inv_dx / 24.0)
}

/// Interpolated value at the half point `i + 1/2`.
#[inline]
pub(crate) fn mid(p: &[f64], i: usize) -> f64 {
    let j = i + G;
    (-p[j - 1] + 9.0 * p[j] + 9.0 * p[j + 1] - p[j + 2]) / 16.0
}

/// Divergence at node `i` of a padded half-point flux (`f[k]` sits at `k + 1/2`).
#[inline]
pub(crate) fn div(f: &[f64], i: usize, inv_dx: f64) -> f64 {
    let j = i + G;
    (f[j - 2] - 27.0 * f[j - 1] + 27.0 * f[j] - f[j + 1]) * (inv_dx / 24.0)
}

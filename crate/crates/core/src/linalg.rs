//! Small dense complex linear algebra on the 4-dimensional two-qubit space.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `⟨a|b⟩`, antilinear in the first argument.
#[inline]
pub fn inner(a: &Vec4, b: &Vec4) -> C64 {
    a.dotc(b)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &Mat4) -> ([f64; 4], Mat4) {
    let eig = m.symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut vals = [0.0; 4];
    let mut vecs = Mat4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = eig.eigenvalues[src];
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Principal square root of a positive semi-definite Hermitian matrix.
/// Negative round-off eigenvalues are clamped to zero.
pub fn psd_sqrt(m: &Mat4) -> Mat4 {
    let (vals, vecs) = hermitian_eigen(m);
    let d = Mat4::from_diagonal(&Vec4::from_fn(|i, _| c(vals[i].max(0.0).sqrt(), 0.0)));
    vecs * d * vecs.adjoint()
}

/// Largest entrywise modulus.
pub fn max_abs(m: &Mat4) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn outer(a: &Vec4, b: &Vec4) -> Mat4 {
    a * b.adjoint()
}

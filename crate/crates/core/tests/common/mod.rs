//! Brute-force reference built on nalgebra: every operator is formed as a
//! dense 4x4 matrix and every trace norm is a sum of absolute eigenvalues.
#![allow(dead_code)]

use correlation_probe::{ComplexMatrix, DensityMatrix};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type M = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn ket(a: Complex64, b: Complex64) -> M {
    M::from_column_slice(2, 1, &[a, b])
}

pub fn proj(v: &M) -> M {
    v * v.adjoint()
}

pub fn qc(lambda: f64, theta: f64) -> M {
    let h = ket(c(1.0), c(0.0));
    let v = ket(c(0.0), c(1.0));
    let th = ket(c(theta.cos()), c(theta.sin()));
    proj(&h).kronecker(&proj(&h)) * c(lambda) + proj(&th).kronecker(&proj(&v)) * c(1.0 - lambda)
}

pub fn cc(lambda: f64) -> M {
    M::from_diagonal(&nalgebra::DVector::from_vec(vec![
        c(lambda),
        c(0.0),
        c(0.0),
        c(1.0 - lambda),
    ]))
}

pub fn factorized(lambda: f64) -> M {
    let s = M::from_diagonal(&nalgebra::DVector::from_vec(vec![c(lambda), c(1.0 - lambda)]));
    s.kronecker(&(M::identity(2, 2) * c(0.5)))
}

/// Tr_E of a 4x4 operator with index `2 s + e`.
pub fn tr_e(r: &M) -> M {
    M::from_fn(2, 2, |a, b| r[(2 * a, 2 * b)] + r[(2 * a + 1, 2 * b + 1)])
}

pub fn tr_s(r: &M) -> M {
    M::from_fn(2, 2, |a, b| r[(a, b)] + r[(2 + a, 2 + b)])
}

pub fn trace_norm(h: &M) -> f64 {
    let herm = (h + h.adjoint()) * c(0.5);
    SymmetricEigen::new(herm).eigenvalues.iter().map(|x| x.abs()).sum()
}

pub fn td(a: &M, b: &M) -> f64 {
    0.5 * trace_norm(&(a - b))
}

/// Projector on the leading eigenvector of the system marginal (`|H><H|` if
/// the marginal is degenerate).
pub fn leading_projector(r: &M) -> M {
    let eig = SymmetricEigen::new(tr_e(r));
    let (w0, w1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if (w0 - w1).abs() < 1e-9 {
        return proj(&ket(c(1.0), c(0.0)));
    }
    let k = if w0 > w1 { 0 } else { 1 };
    let v = eig.eigenvectors.columns(k, 1).into_owned();
    proj(&v)
}

pub fn dephase(r: &M, p: &M) -> M {
    let a = p.kronecker(&M::identity(2, 2));
    let b = (M::identity(2, 2) - p).kronecker(&M::identity(2, 2));
    &a * r * &a + &b * r * &b
}

pub fn gate(phi: f64) -> M {
    let p0 = proj(&ket(c(1.0), c(0.0)));
    let p1 = proj(&ket(c(0.0), c(1.0)));
    let d = M::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::from_polar(1.0, phi),
        c(1.0),
    ]));
    M::identity(2, 2).kronecker(&p0) + d.kronecker(&p1)
}

pub fn evolve(r: &M, u: &M) -> M {
    u * r * u.adjoint()
}

pub fn hwp(alpha: f64) -> M {
    let (cs, sn) = ((2.0 * alpha).cos(), (2.0 * alpha).sin());
    M::from_row_slice(2, 2, &[c(cs), c(sn), c(sn), c(-cs)])
}

pub fn discord(r: &M) -> f64 {
    td(&dephase(r, &leading_projector(r)), r)
}

pub fn local_witness(r: &M, phi: f64) -> f64 {
    let d = dephase(r, &leading_projector(r));
    let u = gate(phi);
    td(&tr_e(&evolve(&d, &u)), &tr_e(&evolve(r, &u)))
}

pub fn growth(r: &M, v: &M, phi: f64) -> f64 {
    let v4 = v.kronecker(&M::identity(2, 2));
    let ru = evolve(r, &v4);
    let u = gate(phi);
    td(&tr_e(&evolve(&ru, &u)), &tr_e(&evolve(r, &u))) - td(&tr_e(&ru), &tr_e(r))
}

pub fn to_na(m: &ComplexMatrix) -> M {
    M::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_na(m: &M) -> ComplexMatrix {
    let entries = (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)]))
        .collect();
    ComplexMatrix::from_vec(m.nrows(), m.ncols(), entries).unwrap()
}

pub fn ginibre(rng: &mut impl Rng, n: usize) -> M {
    M::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random density matrix of rank `rank` (Hilbert-Schmidt measure for full rank).
pub fn random_density(rng: &mut impl Rng, n: usize, rank: usize) -> M {
    let g = M::from_fn(n, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let r = &g * g.adjoint();
    let tr = r.trace();
    let r = r / tr;
    (&r + r.adjoint()) * c(0.5)
}

pub fn random_unitary(rng: &mut impl Rng, n: usize) -> M {
    let qr = ginibre(rng, n).qr();
    let (q, r) = (qr.q(), qr.r());
    // fix column phases so the distribution is Haar
    let phases = M::from_diagonal(&r.diagonal().map(|z| if z.norm() > 0.0 { z / z.norm() } else { c(1.0) }));
    q * phases
}

pub fn random_state(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.random_range(1..=4);
    DensityMatrix::bipartite(from_na(&random_density(&mut rng, 4, rank)), 2, 2).unwrap()
}

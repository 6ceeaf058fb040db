//! Real-spectrum polynomial root finding.
//!
//! The base route is the classic one: build the companion matrix of the
//! monic polynomial, balance it, and run Francis double-shift QR to get all
//! eigenvalues. That alone is not enough here: characteristic polynomials of
//! partial transposes routinely carry roots of multiplicity 3..10, and QR
//! scatters an m-fold root into a ring of radius ~eps^(1/m) (large enough to
//! carry spurious imaginary parts of 1e-4 and worse). A refinement stage
//! repairs this:
//!
//! 1. single-linkage clustering of the raw eigenvalues gives a hierarchy of
//!    candidate multiplicity assignments;
//! 2. each candidate is scored by the backward error of its rebuilt monic
//!    polynomial against the input coefficients;
//! 3. candidates that fail the score are refined by Gauss-Newton over the
//!    distinct roots (multiplicities fixed by cluster sizes), with a
//!    locality guard so the fit cannot wander away from the cluster it
//!    claims to represent;
//! 4. the accepted candidate with the fewest distinct roots wins; the raw
//!    eigenvalues always remain as the fallback.
//!
//! A legitimate m-fold cluster collapses to its root with backward error at
//! rounding level, while merging genuinely distinct roots leaves a model
//! error the score cannot miss.

// indexed loops mirror the classic formulations of balance/hqr and are
// clearer here than iterator chains
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::{Error, Result};

/// Max |Im| accepted when flattening refined roots onto the real axis.
pub(crate) const DEFAULT_IMAG_TOL: f64 = 1e-7;

/// All roots (with multiplicity) of a real-coefficient polynomial known to
/// have a real spectrum, sorted descending.
///
/// `coefficients` are highest-degree first; the leading coefficient must be
/// nonzero. Roots whose refined imaginary part exceeds `1e-7` signal input
/// inconsistent with any real spectrum and raise [`Error::ComplexRootsDetected`].
pub fn real_poly_roots(coefficients: &[f64]) -> Result<Vec<f64>> {
    real_poly_roots_with(coefficients, DEFAULT_IMAG_TOL)
}

/// Same as [`real_poly_roots`] with an explicit flattening tolerance.
pub fn real_poly_roots_with(coefficients: &[f64], imag_tol: f64) -> Result<Vec<f64>> {
    if coefficients.is_empty() {
        return Err(Error::InvalidPolynomial("no coefficients".into()));
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
    }
    let lead = coefficients[0];
    if lead == 0.0 {
        return Err(Error::InvalidPolynomial(
            "leading coefficient is zero".into(),
        ));
    }
    let monic: Vec<f64> = coefficients.iter().map(|c| c / lead).collect();
    if monic.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolynomial(
            "coefficients overflow when normalized to monic".into(),
        ));
    }
    let degree = monic.len() - 1;
    if degree == 0 {
        return Ok(vec![]);
    }

    let raw = companion_eigenvalues(&monic)?;
    let refined = refine_clusters(&raw, &monic);

    let mut worst_imag: f64 = 0.0;
    let mut out = Vec::with_capacity(degree);
    for z in refined {
        worst_imag = worst_imag.max(z.im.abs());
        out.push(z.re);
    }
    if worst_imag > imag_tol {
        return Err(Error::ComplexRootsDetected {
            imag: worst_imag,
            tol: imag_tol,
        });
    }
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(out)
}

// ---------------------------------------------------------------------------
// companion matrix eigenvalues
// ---------------------------------------------------------------------------

/// Eigenvalues of the (balanced) companion matrix of a monic polynomial.
fn companion_eigenvalues(monic: &[f64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    // top-row companion form: first row -c1..-cn, subdiagonal ones
    let mut h = vec![vec![0.0f64; n]; n];
    for j in 0..n {
        h[0][j] = -monic[j + 1];
    }
    for i in 1..n {
        h[i][i - 1] = 1.0;
    }
    balance(&mut h);
    hqr_eigenvalues(&mut h)
}

/// In-place balancing by diagonal powers of two (norm equalization of rows
/// and columns, exact in floating point).
fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / radix;
                let mut f = 1.0;
                let s = c + r;
                let mut c_acc = c;
                while c_acc < g {
                    f *= radix;
                    c_acc *= sqrdx;
                }
                g = r * radix;
                while c_acc > g {
                    f /= radix;
                    c_acc /= sqrdx;
                }
                if (c_acc + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= g;
                    }
                    for j in 0..n {
                        a[j][i] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
///
/// The sequential-deflation scheme of the classic EISPACK `hqr`, with an
/// exceptional shift every ten stalled iterations.
fn hqr_eigenvalues(a: &mut [Vec<f64>]) -> Result<Vec<Complex64>> {
    let total = a.len();
    let mut eigs = Vec::with_capacity(total);
    let mut anorm = 0.0f64;
    for i in 0..total {
        for j in i.saturating_sub(1)..total {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); total]);
    }

    let mut t = 0.0f64;
    let mut n = total as isize - 1;
    while n >= 0 {
        let mut its = 0;
        loop {
            let nu = n as usize;
            // search for a negligible subdiagonal element
            let mut l = n;
            while l >= 1 {
                let lu = l as usize;
                let mut s = a[lu - 1][lu - 1].abs() + a[lu][lu].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[lu][lu - 1].abs() <= f64::EPSILON * s {
                    a[lu][lu - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == n {
                // isolated 1x1 block: one real eigenvalue
                eigs.push(Complex64::new(x + t, 0.0));
                n -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == n - 1 {
                // isolated 2x2 block: a real pair or a conjugate pair
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    eigs.push(Complex64::new(x + z, 0.0));
                    let other = if z != 0.0 { x - w / z } else { x + z };
                    eigs.push(Complex64::new(other, 0.0));
                } else {
                    eigs.push(Complex64::new(x + p, z));
                    eigs.push(Complex64::new(x + p, -z));
                }
                n -= 2;
                break;
            }
            if its == 60 {
                return Err(Error::InvalidPolynomial(
                    "companion QR iteration failed to converge".into(),
                ));
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for i in 0..=nu {
                    a[i][i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // look for two consecutive small subdiagonal elements
            let mut m = n - 2;
            let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
            while m >= l {
                let mu = m as usize;
                let z = a[mu][mu];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[mu + 1][mu] + a[mu][mu + 1];
                q = a[mu + 1][mu + 1] - z - rr - ss;
                r = a[mu + 2][mu + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[mu][mu - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[mu - 1][mu - 1].abs() + z.abs() + a[mu + 1][mu + 1].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=n {
                let iu = i as usize;
                a[iu][iu - 2] = 0.0;
                if i != m + 2 {
                    a[iu][iu - 3] = 0.0;
                }
            }

            // double QR step on rows l..n
            for k in m..n {
                let ku = k as usize;
                if k != m {
                    p = a[ku][ku - 1];
                    q = a[ku + 1][ku - 1];
                    r = if k != n - 1 { a[ku + 2][ku - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[ku][ku - 1] = -a[ku][ku - 1];
                    }
                } else {
                    a[ku][ku - 1] = -s * x;
                }
                p += s;
                let hx = p / s;
                let hy = q / s;
                let hz = r / s;
                let qp = q / p;
                let rp = r / p;
                // row modification
                for j in ku..=nu {
                    let mut pp = a[ku][j] + qp * a[ku + 1][j];
                    if k != n - 1 {
                        pp += rp * a[ku + 2][j];
                        a[ku + 2][j] -= pp * hz;
                    }
                    a[ku + 1][j] -= pp * hy;
                    a[ku][j] -= pp * hx;
                }
                // column modification
                let mmin = if n < k + 3 { nu } else { ku + 3 };
                for i in (l as usize)..=mmin {
                    let mut pp = hx * a[i][ku] + hy * a[i][ku + 1];
                    if k != n - 1 {
                        pp += hz * a[i][ku + 2];
                        a[i][ku + 2] -= pp * rp;
                    }
                    a[i][ku + 1] -= pp * qp;
                    a[i][ku] -= pp;
                }
            }
        }
    }
    Ok(eigs)
}

// ---------------------------------------------------------------------------
// cluster refinement
// ---------------------------------------------------------------------------

const REFINE_FLOOR_MULT: f64 = 32.0;
const REFINE_RAW_MULT: f64 = 8.0;
const GN_MAX_ITERS: usize = 12;
const GN_MOVE_CAP: f64 = 1e-5;
const RESOLVE_MULT: f64 = 8.0;

/// Refine raw QR eigenvalues against the monic coefficients they came from.
fn refine_clusters(raw: &[Complex64], monic: &[f64]) -> Vec<Complex64> {
    let d = raw.len();
    if d <= 1 {
        return raw.to_vec();
    }
    let coeffs: Vec<Complex64> = monic.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let scale = monic.iter().fold(1.0f64, |m, c| m.max(c.abs()));

    let singleton = vec![1usize; d];
    let raw_resid = rebuild_residual_mult(raw, &singleton, &coeffs, scale);
    let threshold =
        (REFINE_RAW_MULT * raw_resid).max(REFINE_FLOOR_MULT * (d as f64 + 1.0) * f64::EPSILON);

    let levels = single_linkage_levels(raw, &coeffs, scale);

    let mut best: Vec<Complex64> = raw.to_vec();
    let mut best_clusters = d;
    for level in &levels {
        let k = level.len();
        if k >= best_clusters && k != d {
            continue;
        }
        let mults: Vec<usize> = level.iter().map(|cl| cl.len()).collect();
        let mut centers: Vec<Complex64> = level.iter().map(|cl| mean(cl)).collect();
        let mut resid = rebuild_residual_mult(&centers, &mults, &coeffs, scale);
        if resid > threshold {
            if mults.iter().all(|&m| m == 1) {
                continue;
            }
            let radii: Vec<f64> = level
                .iter()
                .map(|cl| {
                    let c = mean(cl);
                    cl.iter().map(|z| (z - c).norm()).fold(0.0, f64::max)
                })
                .collect();
            let Some((refined, r)) = gauss_newton(&centers, &mults, &coeffs, scale) else {
                continue;
            };
            let local = refined
                .iter()
                .zip(&centers)
                .zip(&radii)
                .all(|((z, c), &rad)| (z - c).norm() <= 2.0 * rad + GN_MOVE_CAP * (1.0 + c.norm()));
            if !local || r > threshold {
                continue;
            }
            centers = refined;
            resid = r;
        }
        debug_assert!(resid <= threshold);
        if k < best_clusters {
            best_clusters = k;
            best = centers
                .iter()
                .zip(&mults)
                .flat_map(|(&z, &m)| std::iter::repeat_n(z, m))
                .collect();
        }
    }
    best
}

fn mean(zs: &[Complex64]) -> Complex64 {
    zs.iter().sum::<Complex64>() / zs.len() as f64
}

/// How far the polynomial's coefficient noise lets a root at `z` wander:
/// `eps * max(B(z), scale) / |f'(z)|`, the first-order sensitivity of a
/// simple root. At (or very near) a multiple root `f'` collapses and the
/// uncertainty blows up, which is exactly when clusters may merge.
fn root_uncertainty(coeffs: &[Complex64], z: Complex64, scale: f64) -> f64 {
    let mut f = Complex64::new(0.0, 0.0);
    let mut fp = Complex64::new(0.0, 0.0);
    let mut b = 0.0f64;
    let az = z.norm();
    for &c in coeffs {
        fp = fp * z + f;
        f = f * z + c;
        b = b * az + c.norm();
    }
    let noise = f64::EPSILON * b.max(scale);
    noise / fp.norm().max(f64::MIN_POSITIVE)
}

/// Partitions produced by merging the nearest *mutually unresolvable*
/// clusters first.
///
/// Two clusters may merge only when the distance between their means does
/// not exceed a few times the sum of their root uncertainties: genuinely
/// resolved roots, however close in absolute terms, never enter the same
/// cluster, while the eps^(1/m) scatter ring of a multiple root always
/// collapses.
fn single_linkage_levels(
    raw: &[Complex64],
    coeffs: &[Complex64],
    scale: f64,
) -> Vec<Vec<Vec<Complex64>>> {
    let mut clusters: Vec<Vec<Complex64>> = raw.iter().map(|&z| vec![z]).collect();
    let mut levels = vec![clusters.clone()];
    while clusters.len() > 1 {
        let means: Vec<Complex64> = clusters.iter().map(|cl| mean(cl)).collect();
        let uncs: Vec<f64> = means
            .iter()
            .map(|&z| root_uncertainty(coeffs, z, scale))
            .collect();
        let mut pair = None;
        let mut dmin = f64::INFINITY;
        for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                let dist = (means[i] - means[j]).norm();
                if dist < dmin && dist <= RESOLVE_MULT * (uncs[i] + uncs[j]) {
                    dmin = dist;
                    pair = Some((i, j));
                }
            }
        }
        let Some((i, j)) = pair else { break };
        let merged = clusters.remove(j);
        clusters[i].extend(merged);
        levels.push(clusters.clone());
    }
    levels
}

/// Monic polynomial with the given roots and multiplicities.
fn poly_from(centers: &[Complex64], mults: &[usize]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for (&z, &m) in centers.iter().zip(mults) {
        for _ in 0..m {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i] += ci;
                next[i + 1] -= ci * z;
            }
            c = next;
        }
    }
    c
}

fn rebuild_residual_mult(
    centers: &[Complex64],
    mults: &[usize],
    coeffs: &[Complex64],
    scale: f64,
) -> f64 {
    let c = poly_from(centers, mults);
    c.iter()
        .zip(coeffs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Gauss-Newton over distinct roots with fixed multiplicities, minimizing
/// the rebuilt-coefficient residual. Returns the best iterate and its score.
fn gauss_newton(
    centers: &[Complex64],
    mults: &[usize],
    coeffs: &[Complex64],
    scale: f64,
) -> Option<(Vec<Complex64>, f64)> {
    let r = centers.len();
    let d: usize = mults.iter().sum();
    let mut zs = centers.to_vec();
    let mut best = zs.clone();
    let mut best_resid = rebuild_residual_mult(&zs, mults, coeffs, scale);

    for _ in 0..GN_MAX_ITERS {
        let full = poly_from(&zs, mults);
        let resid_vec: Vec<Complex64> = full.iter().zip(coeffs).map(|(a, b)| a - b).collect();
        // Jacobian column j: d(coeffs)/d z_j = -m_j * full/(x - z_j)
        let mut jac = vec![vec![Complex64::new(0.0, 0.0); r]; d + 1];
        for (j, (&z, &m)) in zs.iter().zip(mults).enumerate() {
            // synthetic division of `full` by (x - z)
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                acc = acc * z + full[i];
                jac[i + 1][j] = -(m as f64) * acc;
            }
        }
        let rhs: Vec<Complex64> = resid_vec.iter().map(|v| -v).collect();
        let step = lstsq(&mut jac, &rhs)?;
        let sup = step.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (z, s) in zs.iter_mut().zip(&step) {
            *z += s;
        }
        let resid = rebuild_residual_mult(&zs, mults, coeffs, scale);
        if resid < best_resid {
            best_resid = resid;
            best = zs.clone();
        }
        if sup < f64::EPSILON * (1.0 + zs.iter().map(|z| z.norm()).fold(0.0, f64::max)) {
            break;
        }
    }
    Some((best, best_resid))
}

/// Least squares min ||A x - b|| by Householder QR; `a` is m x n with m >= n.
fn lstsq(a: &mut [Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m < n {
        return None;
    }
    let mut rhs = b.to_vec();
    for k in 0..n {
        // Householder vector for column k, rows k..m
        let norm_x: f64 = (k..m).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            return None; // rank deficient: give up, caller falls back
        }
        let akk = a[k][k];
        let phase = if akk.norm() > 0.0 {
            akk / akk.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // apply H = I - 2 v v† / (v†v) to remaining columns and rhs
        for col in k..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, &vi)| vi.conj() * a[k + i][col])
                .sum();
            let f = dot * (2.0 / vnorm_sq);
            for (i, &vi) in v.iter().enumerate() {
                a[k + i][col] -= f * vi;
            }
        }
        let dot: Complex64 = v
            .iter()
            .enumerate()
            .map(|(i, &vi)| vi.conj() * rhs[k + i])
            .sum();
        let f = dot * (2.0 / vnorm_sq);
        for (i, &vi) in v.iter().enumerate() {
            rhs[k + i] -= f * vi;
        }
        a[k][k] = alpha;
    }
    // back substitution on the upper-triangular n x n block
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k];
        for j in (k + 1)..n {
            acc -= a[k][j] * x[j];
        }
        if a[k][k].norm() == 0.0 {
            return None;
        }
        x[k] = acc / a[k][k];
    }
    Some(x)
}

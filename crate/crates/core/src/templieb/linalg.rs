//! Small dense linear-algebra helpers.

use nalgebra::{DMatrix, SymmetricEigen};

/// `#zeros - #ones` of every basis index of an `n`-qubit chain.
pub fn charge_diagonal(n: usize) -> Vec<f64> {
    (0..1usize << n)
        .map(|idx| {
            let ones = idx.count_ones() as i64;
            (n as i64 - 2 * ones) as f64
        })
        .collect()
}

fn largest_eigenvalue(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest singular value of a matrix with few columns, via its Gram matrix.
pub fn thin_op_norm(x: &DMatrix<f64>) -> f64 {
    if x.ncols() > x.nrows() {
        return thin_op_norm(&x.transpose());
    }
    largest_eigenvalue(x.transpose() * x).max(0.0).sqrt()
}

/// Operator norm of `A - e^{i theta} B` for real `A`, `B` of equal shape.
pub fn phased_difference_norm(a: &DMatrix<f64>, b: &DMatrix<f64>, theta: f64) -> f64 {
    let (c, s) = (theta.cos(), theta.sin());
    // D = (A - c B) - i s B; D^* D as a real symmetric 2n x 2n block matrix
    let re = a - b * c;
    let im = -(b * s);
    let g_re = re.transpose() * &re + im.transpose() * &im;
    let g_im = re.transpose() * &im - im.transpose() * &re;
    let n = g_re.nrows();
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(&g_re);
    big.view_mut((n, n), (n, n)).copy_from(&g_re);
    big.view_mut((0, n), (n, n)).copy_from(&(-&g_im));
    big.view_mut((n, 0), (n, n)).copy_from(&g_im);
    largest_eigenvalue(big).max(0.0).sqrt()
}

/// `min_theta ||A - e^{i theta} B||` and the minimizing angle, by a 720-point
/// grid followed by golden-section refinement.
pub fn align_phase(a: &DMatrix<f64>, b: &DMatrix<f64>) -> (f64, f64) {
    const GRID: usize = 720;
    let step = std::f64::consts::TAU / GRID as f64;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..GRID {
        let th = k as f64 * step;
        let v = phased_difference_norm(a, b, th);
        if v < best.0 {
            best = (v, th);
        }
    }
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = phased_difference_norm(a, b, x1);
    let mut f2 = phased_difference_norm(a, b, x2);
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = phased_difference_norm(a, b, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = phased_difference_norm(a, b, x2);
        }
    }
    let (fm, xm) = if f1 < f2 { (f1, x1) } else { (f2, x2) };
    if fm < best.0 {
        (fm, xm.rem_euclid(std::f64::consts::TAU))
    } else {
        best
    }
}

/// Euclidean norms of the rows of `A - e^{i theta} B`.
pub fn phased_row_norms(a: &DMatrix<f64>, b: &DMatrix<f64>, theta: f64) -> Vec<f64> {
    let (c, s) = (theta.cos(), theta.sin());
    (0..a.nrows())
        .map(|r| {
            (0..a.ncols())
                .map(|k| {
                    let re = a[(r, k)] - c * b[(r, k)];
                    let im = s * b[(r, k)];
                    re * re + im * im
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

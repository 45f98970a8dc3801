//! Numeric helpers for the certified-float classification path used at
//! irrational candidate instants (the time root itself is still isolated
//! exactly; only the per-instant pencil analysis runs in f64).

/// Roots of a real polynomial (ascending powers) by Durand-Kerner
/// iteration; degree <= 4 in practice. Returns (re, im) pairs.
pub fn poly_roots_f64(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let mut cs: Vec<f64> = coeffs.to_vec();
    while cs.last().map_or(false, |c| c.abs() == 0.0) {
        cs.pop();
    }
    if cs.len() <= 1 {
        return vec![];
    }
    let n = cs.len() - 1;
    let lead = cs[n];
    let monic: Vec<f64> = cs.iter().map(|c| c / lead).collect();
    // initial guesses on a circle
    let radius = 1.0
        + monic[..n]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for &c in monic.iter().rev() {
            let nre = re * z.0 - im * z.1 + c;
            let nim = re * z.1 + im * z.0;
            re = nre;
            im = nim;
        }
        (re, im)
    };
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = (zs[i].0 - zs[j].0, zs[i].1 - zs[j].1);
                den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
            }
            let v = eval(zs[i]);
            let dn = den.0 * den.0 + den.1 * den.1;
            if dn < 1e-300 {
                continue;
            }
            let q = ((v.0 * den.0 + v.1 * den.1) / dn, (v.1 * den.0 - v.0 * den.1) / dn);
            zs[i] = (zs[i].0 - q.0, zs[i].1 - q.1);
            max_step = max_step.max(q.0.abs() + q.1.abs());
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    zs
}

/// Real roots of multiplicity >= 2, found by clustering: returns cluster
/// centers of near-coincident essentially-real roots.
pub fn multiple_real_roots_f64(coeffs: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let zs = poly_roots_f64(coeffs);
    let scale = 1.0 + zs.iter().fold(0.0f64, |m, z| m.max(z.0.abs() + z.1.abs()));
    let eps = tol * scale;
    let mut used = vec![false; zs.len()];
    let mut out = Vec::new();
    for i in 0..zs.len() {
        if used[i] {
            continue;
        }
        let mut cluster = vec![i];
        for j in i + 1..zs.len() {
            if used[j] {
                continue;
            }
            let d = ((zs[i].0 - zs[j].0).powi(2) + (zs[i].1 - zs[j].1).powi(2)).sqrt();
            if d < eps {
                cluster.push(j);
            }
        }
        if cluster.len() >= 2 {
            let mut cre = 0.0;
            let mut cim = 0.0;
            for &k in &cluster {
                used[k] = true;
                cre += zs[k].0;
                cim += zs[k].1;
            }
            cre /= cluster.len() as f64;
            cim /= cluster.len() as f64;
            if cim.abs() < eps {
                out.push((cre, cluster.len()));
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Inertia of a symmetric f64 matrix with a relative zero band.
pub fn inertia_f64(m: &[Vec<f64>], tol: f64) -> (usize, usize, usize) {
    let eigs = sym_eigenvalues(m);
    let scale = eigs.iter().fold(0.0f64, |mx, e| mx.max(e.abs())).max(1e-300);
    let band = tol * scale;
    let mut np = 0;
    let mut nn = 0;
    let mut nz = 0;
    for e in eigs {
        if e > band {
            np += 1;
        } else if e < -band {
            nn += 1;
        } else {
            nz += 1;
        }
    }
    (np, nn, nz)
}

/// Numeric rank by row elimination with relative threshold.
pub fn rank_f64(m: &[Vec<f64>], tol: f64) -> usize {
    let n = m.len();
    let cols = m[0].len();
    let mut a = m.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |mx, x| mx.max(x.abs()))
        .max(1e-300);
    let thresh = tol * scale;
    let mut rank = 0;
    let mut col = 0;
    while rank < n && col < cols {
        let mut piv = rank;
        for r in rank + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() <= thresh {
            col += 1;
            continue;
        }
        a.swap(rank, piv);
        for r in 0..n {
            if r != rank {
                let f = a[r][col] / a[rank][col];
                for j in col..cols {
                    a[r][j] -= f * a[rank][j];
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Orthonormal-ish kernel basis of a square f64 matrix.
pub fn null_space_f64(m: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut a = m.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |mx, x| mx.max(x.abs()))
        .max(1e-300);
    let thresh = tol * scale;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == n {
            break;
        }
        let mut piv = r;
        for i in r + 1..n {
            if a[i][col].abs() > a[piv][col].abs() {
                piv = i;
            }
        }
        if a[piv][col].abs() <= thresh {
            continue;
        }
        a.swap(r, piv);
        let d = a[r][col];
        for j in 0..n {
            a[r][j] /= d;
        }
        for i in 0..n {
            if i != r && a[i][col].abs() > 0.0 {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for &(pr, pc) in &pivots {
            v[pc] = -a[pr][free];
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for x in &mut v {
                *x /= nrm;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_roots_recovered() {
        // (x-1)(x-2)(x+3)(x-1/2) expanded: 12 coefficients via convolution
        let mut c = vec![1.0];
        for r in [1.0, 2.0, -3.0, 0.5] {
            let mut n = vec![0.0; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                n[i] += -r * a;
                n[i + 1] += a;
            }
            c = n;
        }
        let mut roots: Vec<f64> = poly_roots_f64(&c).iter().map(|z| z.0).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [-3.0, 0.5, 1.0, 2.0];
        for (got, w) in roots.iter().zip(want) {
            assert!((got - w).abs() < 1e-9, "{} vs {}", got, w);
        }
    }

    #[test]
    fn double_root_clustered() {
        // (x-2)^2 (x+1)
        let c = vec![4.0, 0.0, -3.0, 1.0];
        let m = multiple_real_roots_f64(&c, 1e-6);
        assert_eq!(m.len(), 1);
        assert!((m[0].0 - 2.0).abs() < 1e-5);
        assert_eq!(m[0].1, 2);
    }

    #[test]
    fn jacobi_inertia() {
        let m = vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 0.0],
            vec![0.0, 0.0, -5.0],
        ];
        assert_eq!(inertia_f64(&m, 1e-9), (2, 1, 0));
    }

    #[test]
    fn kernel_of_rank2() {
        let m = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ];
        let ns = null_space_f64(&m, 1e-12);
        assert_eq!(ns.len(), 2);
        assert_eq!(rank_f64(&m, 1e-12), 2);
    }
}

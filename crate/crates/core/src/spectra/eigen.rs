//! Dense nonsymmetric eigenvalue solver.
//!
//! Classic three-stage pipeline: diagonal balancing, elimination
//! reduction to upper Hessenberg form, then Francis double-shift QR
//! iteration on the Hessenberg matrix (the EISPACK `balanc`/`elmhes`/
//! `hqr` lineage, eigenvalues only). Deflation uses a machine-epsilon
//! relative test on the subdiagonal; each eigenvalue hunt is capped at
//! 30 double steps with exceptional shifts at 10 and 20, and hitting the
//! cap is reported as a hard error rather than returning garbage.
//!
//! The matrices this crate feeds in are small (at most 126 x 126
//! integer-valued replacement matrices), well inside what this method
//! resolves to ~1e-12 absolute accuracy.

use crate::error::{Error, Result};

use super::Complex;

struct Dense {
    n: usize,
    a: Vec<f64>,
}

impl Dense {
    fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            a.extend_from_slice(row);
        }
        Dense { n, a }
    }

    #[inline]
    fn g(&self, i: isize, j: isize) -> f64 {
        self.a[i as usize * self.n + j as usize]
    }

    #[inline]
    fn s(&mut self, i: isize, j: isize, v: f64) {
        self.a[i as usize * self.n + j as usize] = v;
    }
}

/// Eigenvalues of a square real matrix, in no particular order.
pub fn eigenvalues(rows: &[Vec<f64>]) -> Result<Vec<Complex>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let mut a = Dense::from_rows(rows);
    balance(&mut a);
    elmhes(&mut a);
    hqr(&mut a)
}

/// Similarity-scale rows and columns toward equal norms; improves the
/// conditioning of the QR iteration without touching the spectrum.
fn balance(a: &mut Dense) {
    const RADIX: f64 = 2.0;
    let n = a.n as isize;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.g(j, i).abs();
                    r += a.g(i, j).abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a.s(i, j, a.g(i, j) * g);
                    }
                    for j in 0..n {
                        a.s(j, i, a.g(j, i) * f);
                    }
                }
            }
        }
    }
}

/// Reduce to upper Hessenberg form by Gaussian elimination with partial
/// pivoting (similarity transforms; the spectrum is preserved).
fn elmhes(a: &mut Dense) {
    let n = a.n as isize;
    for m in 1..n - 1 {
        let mut x = 0.0f64;
        let mut i = m;
        for j in m..n {
            if a.g(j, m - 1).abs() > x.abs() {
                x = a.g(j, m - 1);
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..n {
                let tmp = a.g(i, j);
                a.s(i, j, a.g(m, j));
                a.s(m, j, tmp);
            }
            for j in 0..n {
                let tmp = a.g(j, i);
                a.s(j, i, a.g(j, m));
                a.s(j, m, tmp);
            }
        }
        if x != 0.0 {
            for i in (m + 1)..n {
                let mut y = a.g(i, m - 1);
                if y != 0.0 {
                    y /= x;
                    a.s(i, m - 1, y);
                    for j in m..n {
                        a.s(i, j, a.g(i, j) - y * a.g(m, j));
                    }
                    for j in 0..n {
                        a.s(j, m, a.g(j, m) + y * a.g(j, i));
                    }
                }
            }
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; returns all
/// eigenvalues. Fails only if an eigenvalue hunt exceeds 30 iterations.
fn hqr(a: &mut Dense) -> Result<Vec<Complex>> {
    let n = a.n as isize;
    let eps = f64::EPSILON;
    let mut wr = vec![0.0f64; a.n];
    let mut wi = vec![0.0f64; a.n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += a.g(i, j).abs();
        }
    }

    let mut nn = n - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let mut s = a.g(l - 1, l - 1).abs() + a.g(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a.g(l, l - 1).abs() <= eps * s {
                    a.s(l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = a.g(nn, nn);
            if l == nn {
                // one root found
                wr[nn as usize] = x + t;
                wi[nn as usize] = 0.0;
                nn -= 1;
            } else {
                let mut y = a.g(nn - 1, nn - 1);
                let mut w = a.g(nn, nn - 1) * a.g(nn - 1, nn);
                if l == nn - 1 {
                    // two roots found: a 2x2 block
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + z.copysign(p);
                        wr[nn as usize - 1] = x + z;
                        wr[nn as usize] = x + z;
                        if z != 0.0 {
                            wr[nn as usize] = x - w / z;
                        }
                        wi[nn as usize - 1] = 0.0;
                        wi[nn as usize] = 0.0;
                    } else {
                        wr[nn as usize - 1] = x + p;
                        wr[nn as usize] = x + p;
                        wi[nn as usize] = z;
                        wi[nn as usize - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    // no roots yet: one double-shift QR step
                    if its == 30 {
                        return Err(Error::NumericFailure(
                            "QR eigenvalue iteration exceeded 30 steps".to_string(),
                        ));
                    }
                    if its == 10 || its == 20 {
                        // exceptional shift
                        t += x;
                        for i in 0..=nn {
                            a.s(i, i, a.g(i, i) - x);
                        }
                        let s = a.g(nn, nn - 1).abs() + a.g(nn - 1, nn - 2).abs();
                        y = 0.75 * s;
                        x = y;
                        w = -0.4375 * s * s;
                    }
                    its += 1;

                    // find two consecutive small subdiagonal elements
                    let mut m = nn - 2;
                    let mut p = 0.0;
                    let mut q = 0.0;
                    let mut r = 0.0;
                    while m >= l {
                        let z = a.g(m, m);
                        let rr = x - z;
                        let ss = y - z;
                        p = (rr * ss - w) / a.g(m + 1, m) + a.g(m, m + 1);
                        q = a.g(m + 1, m + 1) - z - rr - ss;
                        r = a.g(m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a.g(m, m - 1).abs() * (q.abs() + r.abs());
                        let v =
                            p.abs() * (a.g(m - 1, m - 1).abs() + z.abs() + a.g(m + 1, m + 1).abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        a.s(i, i - 2, 0.0);
                        if i != m + 2 {
                            a.s(i, i - 3, 0.0);
                        }
                    }

                    // double QR sweep over rows k..nn
                    for k in m..=nn - 1 {
                        if k != m {
                            p = a.g(k, k - 1);
                            q = a.g(k + 1, k - 1);
                            r = if k != nn - 1 { a.g(k + 2, k - 1) } else { 0.0 };
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = (p * p + q * q + r * r).sqrt().copysign(p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a.s(k, k - 1, -a.g(k, k - 1));
                                }
                            } else {
                                a.s(k, k - 1, -s * x);
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            let z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                let mut pp = a.g(k, j) + q * a.g(k + 1, j);
                                if k != nn - 1 {
                                    pp += r * a.g(k + 2, j);
                                    a.s(k + 2, j, a.g(k + 2, j) - pp * z);
                                }
                                a.s(k + 1, j, a.g(k + 1, j) - pp * y);
                                a.s(k, j, a.g(k, j) - pp * x);
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                let mut pp = x * a.g(i, k) + y * a.g(i, k + 1);
                                if k != nn - 1 {
                                    pp += z * a.g(i, k + 2);
                                    a.s(i, k + 2, a.g(i, k + 2) - pp * r);
                                }
                                a.s(i, k + 1, a.g(i, k + 1) - pp * q);
                                a.s(i, k, a.g(i, k) - pp);
                            }
                        }
                    }
                }
            }
            if l >= nn - 1 {
                break;
            }
        }
    }

    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex { re, im })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut ev: Vec<Complex>) -> Vec<Complex> {
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        ev
    }

    #[test]
    fn diagonal_matrix() {
        let rows = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 7.5],
        ];
        let ev = sorted_re(eigenvalues(&rows).unwrap());
        let re: Vec<f64> = ev.iter().map(|c| c.re).collect();
        assert!((re[0] + 1.0).abs() < 1e-12);
        assert!((re[1] - 3.0).abs() < 1e-12);
        assert!((re[2] - 7.5).abs() < 1e-12);
        assert!(ev.iter().all(|c| c.im == 0.0));
    }

    #[test]
    fn companion_matrix_with_known_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let rows = vec![
            vec![0.0, 0.0, 0.0, -24.0],
            vec![1.0, 0.0, 0.0, 50.0],
            vec![0.0, 1.0, 0.0, -35.0],
            vec![0.0, 0.0, 1.0, 10.0],
        ];
        let ev = sorted_re(eigenvalues(&rows).unwrap());
        for (i, want) in [1.0, 2.0, 3.0, 4.0].iter().enumerate() {
            assert!((ev[i].re - want).abs() < 1e-9, "root {want}: {:?}", ev[i]);
            assert!(ev[i].im.abs() < 1e-9);
        }
    }

    #[test]
    fn rotation_block_gives_conjugate_pair() {
        let rows = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let ev = sorted_re(eigenvalues(&rows).unwrap());
        assert!(ev[0].re.abs() < 1e-12 && ev[1].re.abs() < 1e-12);
        assert!((ev[0].im + 1.0).abs() < 1e-12);
        assert!((ev[1].im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_and_conjugation_invariants() {
        // pseudo-random but fixed integer matrices
        let mut state = 88172645463325252u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 17) as f64 - 8.0
        };
        for n in [2usize, 5, 9, 16] {
            let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
            let trace: f64 = (0..n).map(|i| rows[i][i]).sum();
            let ev = eigenvalues(&rows).unwrap();
            assert_eq!(ev.len(), n);
            let re_sum: f64 = ev.iter().map(|c| c.re).sum();
            let im_sum: f64 = ev.iter().map(|c| c.im).sum();
            assert!((re_sum - trace).abs() < 1e-8 * (1.0 + trace.abs()), "n={n}");
            assert!(im_sum.abs() < 1e-8, "imaginary parts must cancel, n={n}");
        }
    }

    #[test]
    fn empty_and_single() {
        assert!(eigenvalues(&[]).unwrap().is_empty());
        let ev = eigenvalues(&[vec![42.0]]).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0].re - 42.0).abs() < 1e-12);
    }
}

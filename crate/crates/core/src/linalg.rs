//! Dense complex linear algebra at desk scale: square matrices, a cyclic
//! Jacobi eigensolver for Hermitian matrices, singular values via `a*a`, and
//! spectral functional calculus.
//!
//! Everything here is dependency-free on purpose; blocks in this crate stay
//! small (≤ 64) and the Jacobi iteration is accurate to ~1e-14 relative
//! off-diagonal mass, which is what the step-function arithmetic downstream
//! assumes.

use num_complex::Complex64;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(*d, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
        CMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= *y;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn scale_re(&self, c: f64) -> CMatrix {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in i..self.n {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigendecomposition `a = V diag(values) V*` of a Hermitian matrix.
/// Eigenvalues ascend; column `k` of `v` is the eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub v: CMatrix,
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// Sweeps two-sided unitary rotations until the off-diagonal Frobenius mass
/// falls below `1e-13 * max(1, ‖a‖_F)`.
pub fn herm_eig(a: &CMatrix) -> HermEig {
    let n = a.dim();
    let scale = a.frobenius().max(1.0);
    let tol = 1e-13 * scale;
    let mut m = a.clone();
    // Symmetrise defensively; inputs are Hermitian up to roundoff.
    for i in 0..n {
        for j in 0..n {
            if i < j {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            } else if i == j {
                m[(i, j)] = Complex64::new(m[(i, j)].re, 0.0);
            }
        }
    }
    let mut v = CMatrix::identity(n);
    for _sweep in 0..100 {
        if m.off_diagonal_norm() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = m[(p, q)];
                let gn = gamma.norm();
                if gn <= tol / (n as f64) {
                    continue;
                }
                let u = gamma / gn; // phase
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                let tau = (beta - alpha) / (2.0 * gn);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // With the phase absorbed, the pivot plane sees a real
                // symmetric 2x2 and the classical rotation applies. The full
                // unitary differs from the identity only at:
                //   G[p][p] = c      G[p][q] = s
                //   G[q][p] = -s·ū   G[q][q] = c·ū
                let su_bar = Complex64::new(s, 0.0) * u.conj();
                let cu_bar = Complex64::new(c, 0.0) * u.conj();
                let su = Complex64::new(s, 0.0) * u;
                let cu = Complex64::new(c, 0.0) * u;
                // A <- A G (columns p, q)
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = aip * c - aiq * su_bar;
                    m[(i, q)] = aip * s + aiq * cu_bar;
                }
                // A <- G* A (rows p, q)
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = apj * c - aqj * su;
                    m[(q, j)] = apj * s + aqj * cu;
                }
                // Clean the pivot block against roundoff.
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                // V <- V G
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * su_bar;
                    v[(i, q)] = vip * s + viq * cu_bar;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    idx.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    let vs = CMatrix::from_fn(n, |i, j| v[(i, idx[j])]);
    HermEig { values, v: vs }
}

impl HermEig {
    /// `V f(Λ) V*` — spectral functional calculus.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.v.dim();
        let mut out = CMatrix::zeros(n);
        for k in 0..n {
            let fk = f(self.values[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.v[(i, k)];
                if vik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * self.v[(j, k)].conj() * fk;
                }
            }
        }
        out
    }
}

/// Singular values of a square matrix, descending, via the eigenvalues of
/// `a* a`.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let ata = a.adjoint().mul(a);
    let mut s: Vec<f64> = herm_eig(&ata)
        .values
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

/// Polar data for `a = v |a|`: the partial isometry `v` (zero on the kernel of
/// `|a|`) and the eigendecomposition of `|a|`.
pub fn polar(a: &CMatrix) -> (CMatrix, HermEig) {
    let ata = a.adjoint().mul(a);
    let eig = herm_eig(&ata);
    let abs_eig = HermEig {
        values: eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect(),
        v: eig.v.clone(),
    };
    let smax = abs_eig.values.iter().cloned().fold(0.0, f64::max);
    let cutoff = smax * 1e-13;
    let pinv = abs_eig.apply(|s| if s > cutoff { 1.0 / s } else { 0.0 });
    let v = a.mul(&pinv);
    (v, abs_eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let a = CMatrix::from_diag(&[3.0, 1.0, 2.0]);
        let e = herm_eig(&a);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 2.0).abs() < 1e-14);
        assert!((e.values[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_reconstructs_random_hermitian() {
        // Fixed pseudo-random Hermitian 6x6.
        let n = 6;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = CMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                if i == j {
                    a[(i, j)] = c(next() * 4.0, 0.0);
                } else {
                    let z = c(next(), next());
                    a[(i, j)] = z;
                    a[(j, i)] = z.conj();
                }
            }
        }
        let e = herm_eig(&a);
        // Unitary V.
        let vtv = e.v.adjoint().mul(&e.v);
        assert!(vtv.sub(&CMatrix::identity(n)).frobenius() < 1e-12);
        // Reconstruction.
        let recon = e.apply(|x| x);
        assert!(recon.sub(&a).frobenius() < 1e-11 * a.frobenius().max(1.0));
        // Ascending order.
        for w in e.values.windows(2) {
            assert!(w[0] <= w[1] + 1e-14);
        }
    }

    #[test]
    fn singular_values_of_known_matrix() {
        // [[3, 0], [4, 5]] has singular values sqrt(45 ± sqrt(45^2/4 ... )):
        // classical example with s1 = 3*sqrt(5), s2 = sqrt(5).
        let a = CMatrix::from_rows(vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(4.0, 0.0), c(5.0, 0.0)],
        ]);
        let s = singular_values(&a);
        assert!((s[0] - 3.0 * 5.0f64.sqrt()).abs() < 1e-12);
        assert!((s[1] - 5.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn polar_reconstructs() {
        let a = CMatrix::from_rows(vec![
            vec![c(1.0, 2.0), c(0.5, -0.25)],
            vec![c(0.0, 1.0), c(2.0, 0.0)],
        ]);
        let (v, abs_eig) = polar(&a);
        let absa = abs_eig.apply(|x| x);
        let recon = v.mul(&absa);
        assert!(recon.sub(&a).frobenius() < 1e-12);
        // v is a contraction.
        assert!(singular_values(&v)[0] <= 1.0 + 1e-12);
    }

    #[test]
    fn functional_calculus_squares() {
        let a = CMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ]);
        let e = herm_eig(&a);
        let sq = e.apply(|x| x * x);
        assert!(sq.sub(&a.mul(&a)).frobenius() < 1e-12);
    }
}

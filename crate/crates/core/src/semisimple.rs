//! Finite-dimensional semisimple algebras given by structure constants:
//! centre, minimal central idempotents and primitive idempotents.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, max_abs, nullspace, rank, Mat, Vector, C64, ONE, ZERO};
use rand::Rng;

/// `left[a]` is the matrix of y ↦ e_a·y.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    pub left: Vec<Mat>,
    pub unit: Vector,
}

/// One simple summand M_n of the algebra.
#[derive(Debug, Clone)]
pub struct Block {
    pub central: Vector,
    pub size: usize,
    /// A primitive idempotent inside the block, chosen within a corner f·A·f.
    pub primitive: Vector,
    /// Index of the corner unit that contains `primitive`.
    pub corner: usize,
    /// rank of central·f_j for every corner unit f_j.
    pub mults: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(left: Vec<Mat>, unit: Vector) -> FiniteAlgebra {
        FiniteAlgebra { left, unit }
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.left_matrix(x) * y
    }

    pub fn left_matrix(&self, x: &Vector) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (a, l) in self.left.iter().enumerate() {
            if x[a] != ZERO {
                m += l * x[a];
            }
        }
        m
    }

    pub fn basis_vector(&self, a: usize) -> Vector {
        let mut v = Vector::zeros(self.dim());
        v[a] = ONE;
        v
    }

    pub fn associativity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let ab = self.left[a].column(b).into_owned();
                let lhs = self.left_matrix(&ab);
                let rhs = &self.left[a] * &self.left[b];
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
        worst
    }

    pub fn unit_residual(&self) -> f64 {
        let n = self.dim();
        let lu = self.left_matrix(&self.unit);
        let mut worst = max_abs(&(lu - Mat::identity(n, n)));
        for a in 0..n {
            let e = self.basis_vector(a);
            worst = worst.max((self.mul(&e, &self.unit) - e).camax());
        }
        worst
    }

    pub fn commutativity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let d = self.left[a].column(b) - self.left[b].column(a);
                worst = worst.max(d.camax());
            }
        }
        worst
    }

    /// Orthonormal basis (columns) of the centre.
    pub fn center(&self, tol: f64) -> Mat {
        let n = self.dim();
        // rows (b, c): Σ_a z_a (L_a[c,b] − L_b[c,a]) = 0
        let mut m = Mat::zeros(n * n, n);
        for b in 0..n {
            for c in 0..n {
                for a in 0..n {
                    m[(b * n + c, a)] = self.left[a][(c, b)] - self.left[b][(c, a)];
                }
            }
        }
        nullspace(&m, tol)
    }

    /// Dimension of x·A, i.e. the rank of left multiplication by x.
    pub fn left_rank(&self, x: &Vector, tol: f64) -> usize {
        rank(&self.left_matrix(x), tol)
    }

    /// Polynomial spectral projector: Π_{μ≠λ} (x − μ·u)/(λ − μ), computed in the algebra.
    fn spectral_projector(&self, x: &Vector, unit: &Vector, lambda: C64, others: &[C64]) -> Vector {
        let mut p = unit.clone();
        for &mu in others {
            let shifted = x - unit * mu;
            p = self.mul(&shifted, &p) / (lambda - mu);
        }
        p
    }

    /// Minimal central idempotents from a seeded random central element.
    pub fn central_idempotents<R: Rng>(&self, rng: &mut R, tol: f64) -> Result<Vec<Vector>> {
        let z_basis = self.center(tol);
        let r = z_basis.ncols();
        if r == 0 {
            return Err(Error::DecompositionFailed("empty centre".into()));
        }
        let coeffs = Vector::from_fn(r, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let z = &z_basis * coeffs;
        // z acts on the centre with r distinct eigenvalues for generic z
        let mut restricted = Mat::zeros(r, r);
        for j in 0..r {
            let zc = self.mul(&z, &z_basis.column(j).into_owned());
            let coords = z_basis.adjoint() * zc;
            restricted.set_column(j, &coords);
        }
        let eig = eigenvalues(&restricted);
        let sep = 1e3 * tol;
        for i in 0..eig.len() {
            for j in 0..i {
                if (eig[i] - eig[j]).norm() < sep {
                    return Err(Error::DecompositionFailed(format!(
                        "central eigenvalues {} and {} closer than {sep:e}",
                        eig[i], eig[j]
                    )));
                }
            }
        }
        let mut out = Vec::with_capacity(r);
        for (i, &lambda) in eig.iter().enumerate() {
            let others: Vec<C64> = eig.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &m)| m).collect();
            out.push(self.spectral_projector(&z, &self.unit, lambda, &others));
        }
        Ok(out)
    }

    /// Blocks with a primitive idempotent in the first corner f_j the block meets,
    /// preferring corners where the block has multiplicity one.
    pub fn decompose<R: Rng>(&self, corners: &[Vector], rng: &mut R, tol: f64) -> Result<Vec<Block>> {
        let centrals = self.central_idempotents(rng, tol)?;
        let mut blocks = Vec::new();
        let mut total = 0;
        for e in centrals {
            let d = self.left_rank(&e, tol);
            let size = (d as f64).sqrt().round() as usize;
            if size * size != d {
                return Err(Error::DecompositionFailed(format!("block of dimension {d} is not a matrix algebra")));
            }
            total += d;
            let mut mults = Vec::with_capacity(corners.len());
            for f in corners {
                let ef = self.mul(&e, f);
                let r = self.left_rank(&ef, tol);
                if r % size != 0 {
                    return Err(Error::DecompositionFailed("corner rank not divisible by block size".into()));
                }
                mults.push(r / size);
            }
            let corner = mults
                .iter()
                .position(|&m| m == 1)
                .or_else(|| mults.iter().position(|&m| m > 0))
                .ok_or_else(|| Error::DecompositionFailed("block meets no corner".into()))?;
            let f = self.mul(&e, &corners[corner]);
            let primitive = self.primitive_in_corner(&f, mults[corner], rng, tol)?;
            blocks.push(Block { central: e, size, primitive, corner, mults });
        }
        if total != self.dim() {
            return Err(Error::DecompositionFailed(format!("blocks cover {total} of {} dimensions", self.dim())));
        }
        blocks.sort_by(|a, b| block_key(a).partial_cmp(&block_key(b)).unwrap());
        Ok(blocks)
    }

    /// A rank-one idempotent inside the corner f·A·f ≅ M_m (f an idempotent of rank m in one block).
    pub fn primitive_in_corner<R: Rng>(&self, f: &Vector, m: usize, rng: &mut R, tol: f64) -> Result<Vector> {
        if m == 1 {
            return Ok(f.clone());
        }
        // random element of the corner: f·y·f
        let n = self.dim();
        let y = Vector::from_fn(n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let y = self.mul(&self.mul(f, &y), f);
        // its eigenvalues on f·A (each of the m values appears with multiplicity of the block size)
        let corner_basis = crate::linalg::column_space(&self.right_matrix(f), tol);
        let dim = corner_basis.ncols();
        let mut restricted = Mat::zeros(dim, dim);
        for j in 0..dim {
            let v = self.mul(&y, &corner_basis.column(j).into_owned());
            restricted.set_column(j, &(corner_basis.adjoint() * v));
        }
        let eig = eigenvalues(&restricted);
        let clusters = cluster(&eig, 1e3 * tol);
        if clusters.len() != m {
            return Err(Error::DecompositionFailed(format!(
                "corner element has {} distinct eigenvalues, expected {m}",
                clusters.len()
            )));
        }
        let lambda = clusters[0];
        let p = self.spectral_projector(&y, f, lambda, &clusters[1..]);
        Ok(p)
    }

    /// Matrix of y ↦ y·x.
    pub fn right_matrix(&self, x: &Vector) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for b in 0..n {
            let e = self.basis_vector(b);
            m.set_column(b, &self.mul(&e, x));
        }
        m
    }
}

fn block_key(b: &Block) -> (Vec<usize>, Vec<(i64, i64)>) {
    let q = |x: f64| (x * 1e6).round() as i64;
    (b.mults.clone(), b.central.iter().map(|z| (q(z.re), q(z.im))).collect())
}

/// Representatives of eigenvalue clusters of radius `sep`, in input order.
fn cluster(values: &[C64], sep: f64) -> Vec<C64> {
    let mut reps: Vec<(C64, usize)> = Vec::new();
    for &v in values {
        match reps.iter_mut().find(|(r, _)| (*r - v).norm() < sep) {
            Some((r, n)) => {
                *r = (*r * C64::new(*n as f64, 0.0) + v) / C64::new(*n as f64 + 1.0, 0.0);
                *n += 1;
            }
            None => reps.push((v, 1)),
        }
    }
    reps.into_iter().map(|(r, _)| r).collect()
}

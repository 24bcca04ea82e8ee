//! Ocneanu's tube algebra End_TC(⊕_S S) with explicit structure constants.

use super::{tube_hom_dim, TubeMorphism};
use crate::fusion_data::CategorySpec;
use crate::linalg::{Vector, C64};
use crate::semisimple::FiniteAlgebra;
use serde_json::{json, Value};

/// One matrix unit of Hom(R i, j R) at channel k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TubeBasisElement {
    pub source: usize,
    pub target: usize,
    pub grade: usize,
    pub channel: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct TubeAlgebra {
    pub basis: Vec<TubeBasisElement>,
    pub algebra: FiniteAlgebra,
    /// offsets[i][j]: first basis index of Hom_TC(i, j).
    offsets: Vec<Vec<usize>>,
}

impl TubeAlgebra {
    pub fn new(spec: &CategorySpec) -> TubeAlgebra {
        let rank = spec.rank();
        let mut basis = Vec::new();
        let mut offsets = vec![vec![0; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                offsets[i][j] = basis.len();
                let (x, y) = (spec.word(&[i]), spec.word(&[j]));
                for r in 0..rank {
                    let src: Vec<usize> = spec.word(&[r]).into_iter().chain(x.iter().copied()).collect();
                    let tgt: Vec<usize> = y.iter().copied().chain(spec.word(&[r])).collect();
                    let (bs, bt) = (spec.basis(&src), spec.basis(&tgt));
                    for k in 0..rank {
                        for row in 0..bt.dim(k) {
                            for col in 0..bs.dim(k) {
                                basis.push(TubeBasisElement { source: i, target: j, grade: r, channel: k, row, col });
                            }
                        }
                    }
                }
            }
        }
        let dim = basis.len();
        let elems: Vec<TubeMorphism> = (0..dim)
            .map(|a| {
                let mut v = Vector::zeros(dim);
                v[a] = C64::new(1.0, 0.0);
                to_tube_raw(spec, &offsets, &basis[a], &v)
            })
            .collect();
        let mut left = vec![crate::linalg::Mat::zeros(dim, dim); dim];
        for a in 0..dim {
            for b in 0..dim {
                if basis[b].target != basis[a].source {
                    continue;
                }
                let prod = spec.tube_compose(&elems[a], &elems[b]).expect("composable");
                let (i, j) = (basis[b].source, basis[a].target);
                let off = offsets[i][j];
                for (n, z) in prod.coords(spec).into_iter().enumerate() {
                    left[a][(off + n, b)] = z;
                }
            }
        }
        let mut unit = Vector::zeros(dim);
        for i in 0..rank {
            let id = spec.tube_identity(&spec.word(&[i]));
            for (n, z) in id.coords(spec).into_iter().enumerate() {
                unit[offsets[i][i] + n] = z;
            }
        }
        TubeAlgebra { basis, algebra: FiniteAlgebra::new(left, unit), offsets }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The (i → j) part of an algebra element as a tube morphism.
    pub fn to_tube(&self, spec: &CategorySpec, v: &Vector, i: usize, j: usize) -> TubeMorphism {
        let n = tube_hom_dim(spec, &spec.word(&[i]), &spec.word(&[j]));
        let off = self.offsets[i][j];
        let coords: Vec<C64> = (0..n).map(|t| v[off + t]).collect();
        TubeMorphism::from_coords(spec, &spec.word(&[i]), &spec.word(&[j]), &coords)
    }

    /// Embed a tube morphism between simple words.
    pub fn from_tube(&self, spec: &CategorySpec, t: &TubeMorphism) -> Vector {
        let simple = |w: &[usize]| match w {
            [] => spec.unit(),
            [a] => *a,
            _ => panic!("tube algebra elements live between simple words"),
        };
        let (i, j) = (simple(&t.source), simple(&t.target));
        let mut v = Vector::zeros(self.dim());
        for (n, z) in t.coords(spec).into_iter().enumerate() {
            v[self.offsets[i][j] + n] = z;
        }
        v
    }

    /// Unit of the corner End_TC(i).
    pub fn corner_unit(&self, spec: &CategorySpec, i: usize) -> Vector {
        self.from_tube(spec, &spec.tube_identity(&spec.word(&[i])))
    }

    pub fn to_json(&self, spec: &CategorySpec) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|e| {
                json!({
                    "source": spec.label_id(e.source),
                    "target": spec.label_id(e.target),
                    "grade": spec.label_id(e.grade),
                    "channel": spec.label_id(e.channel),
                    "row": e.row,
                    "col": e.col,
                })
            })
            .collect();
        let mut constants = Vec::new();
        for (a, l) in self.algebra.left.iter().enumerate() {
            for b in 0..self.dim() {
                for c in 0..self.dim() {
                    let z = l[(c, b)];
                    if z.norm() > 1e-14 {
                        constants.push(json!([a, b, c, z.re, z.im]));
                    }
                }
            }
        }
        json!({"dimension": self.dim(), "basis": basis, "structure_constants": constants})
    }
}

fn to_tube_raw(spec: &CategorySpec, offsets: &[Vec<usize>], e: &TubeBasisElement, v: &Vector) -> TubeMorphism {
    let (i, j) = (e.source, e.target);
    let (x, y) = (spec.word(&[i]), spec.word(&[j]));
    let n = tube_hom_dim(spec, &x, &y);
    let off = offsets[i][j];
    let coords: Vec<C64> = (0..n).map(|t| v[off + t]).collect();
    TubeMorphism::from_coords(spec, &x, &y, &coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for (name, d) in [("fibonacci", 7), ("ising", 12), ("vec_z2", 4), ("vec_z3", 9)] {
            let s = CategorySpec::builtin(name).unwrap();
            let a = TubeAlgebra::new(&s);
            assert_eq!(a.dim(), d, "{name}");
            let sum: usize = (0..s.rank())
                .flat_map(|i| (0..s.rank()).map(move |j| (i, j)))
                .map(|(i, j)| tube_hom_dim(&s, &s.word(&[i]), &s.word(&[j])))
                .sum();
            assert_eq!(sum, d);
        }
    }

    #[test]
    fn associative_with_unit() {
        let s = CategorySpec::builtin("ising").unwrap();
        let a = TubeAlgebra::new(&s);
        assert!(a.algebra.associativity_residual() < 1e-10);
        assert!(a.algebra.unit_residual() < 1e-12);
    }

    #[test]
    fn vec_z2_is_commutative() {
        let s = CategorySpec::builtin("vec_z2").unwrap();
        let a = TubeAlgebra::new(&s);
        assert!(a.algebra.commutativity_residual() < 1e-12);
    }
}

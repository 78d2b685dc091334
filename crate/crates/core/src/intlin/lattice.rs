use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::{dense_smith, SmithForm};
use super::sparse::invariant_factors;
use super::{HomologyResult, IntMatrix, SparseIntMatrix};
use crate::error::{Error, Result};

/// A basis of the integer null space `{x : A x = 0}`.
pub fn kernel_basis(a: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let f = dense_smith(a.to_dense());
    let r = f.rank();
    (r..a.cols()).map(|j| f.v.column(j)).collect()
}

/// Some integer `x` with `A x = b`, or `None` if there is none.
pub fn solve_integer_system(a: &SparseIntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), a.rows())));
    }
    Ok(solve_with(&dense_smith(a.to_dense()), b))
}

fn solve_with(f: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = f.u.mul_vec(b);
    let diag = f.diagonal();
    let mut y = vec![BigInt::zero(); f.v.rows()];
    for (i, c) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ => {
                if !c.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(f.v.mul_vec(&y))
}

/// Coordinates of each vector in the lattice spanned by `basis`.
fn coordinates(basis: &[Vec<BigInt>], vectors: &[Vec<BigInt>], what: &str) -> Result<Vec<Vec<BigInt>>> {
    let dim = basis.first().or(vectors.first()).map_or(0, Vec::len);
    let k = IntMatrix::from_columns(dim, basis)?;
    let f = dense_smith(k);
    if f.rank() != basis.len() {
        return Err(Error::DimensionMismatch("kernel vectors are not linearly independent".into()));
    }
    vectors
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!("{what} {} has the wrong length", i + 1)));
            }
            solve_with(&f, g)
                .map(|x| x[..basis.len()].to_vec())
                .ok_or_else(|| Error::ImageNotInKernel(format!("{what} {} is outside the kernel lattice", i + 1)))
        })
        .collect()
}

/// `span(kernel_basis) / span(image_generators)` as an abelian group.
pub fn quotient_structure(kernel_basis: &[Vec<BigInt>], image_generators: &[Vec<BigInt>]) -> Result<HomologyResult> {
    let coords = coordinates(kernel_basis, image_generators, "image generator")?;
    let k = kernel_basis.len();
    let m = IntMatrix::from_columns(k, &coords)?.to_sparse();
    let factors = invariant_factors(&m);
    Ok(HomologyResult::from_factors(k - factors.len(), factors))
}

/// Order of an element of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for ClassOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassOrder::Finite(m) => write!(f, "{m}"),
            ClassOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of the class of `v` in `span(kernel_basis) / span(image_generators)`.
pub fn class_order(v: &[BigInt], kernel_basis: &[Vec<BigInt>], image_generators: &[Vec<BigInt>]) -> Result<ClassOrder> {
    let coords = coordinates(kernel_basis, image_generators, "image generator")?;
    let vc = coordinates(kernel_basis, &[v.to_vec()], "vector")?.remove(0);
    let image = IntMatrix::from_columns(kernel_basis.len(), &coords)?.to_sparse();
    order_modulo(&vc, &image)
}

/// Least `m >= 1` with `m v` in the column lattice of `image`, or infinite.
///
/// The lattices `L` and `L + Zv` have equal rank exactly when the order is
/// finite, and then the order is the index, i.e. the ratio of covolumes.
pub(crate) fn order_modulo(v: &[BigInt], image: &SparseIntMatrix) -> Result<ClassOrder> {
    if v.len() != image.rows() {
        return Err(Error::DimensionMismatch("vector and image live in different spaces".into()));
    }
    let base = invariant_factors(image);
    let extended = invariant_factors(&image.with_columns(&[v.to_vec()])?);
    if extended.len() > base.len() {
        return Ok(ClassOrder::Infinite);
    }
    let covolume = |fs: &[BigInt]| fs.iter().fold(BigInt::one(), |acc, d| acc * d);
    Ok(ClassOrder::Finite(covolume(&base) / covolume(&extended)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::big_vec;
    use proptest::prelude::*;

    fn mat(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(rows).unwrap()
    }

    fn apply(a: &SparseIntMatrix, x: &[BigInt]) -> Vec<BigInt> {
        a.to_dense().mul_vec(x)
    }

    #[test]
    fn kernels_of_simple_matrices() {
        assert!(kernel_basis(&mat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).is_empty());
        assert_eq!(kernel_basis(&mat(&[vec![0, 0], vec![0, 0]])).len(), 2);
        let k = kernel_basis(&mat(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big_vec(&[1, -1]) || k[0] == big_vec(&[-1, 1]));
    }

    #[test]
    fn quotient_examples() {
        let z2 = vec![big_vec(&[1, 0]), big_vec(&[0, 1])];
        let g = quotient_structure(&z2, &[big_vec(&[2, 0])]).unwrap();
        assert_eq!(g, HomologyResult::from_factors(1, big_vec(&[2])));
        assert_eq!(g.to_string(), "Z (+) Z_2");
        assert!(quotient_structure(&[big_vec(&[1])], &[big_vec(&[1])]).unwrap().is_trivial());
        assert_eq!(quotient_structure(&z2, &[]).unwrap(), HomologyResult::free(2));
        assert!(matches!(
            quotient_structure(&[big_vec(&[1, 0])], &[big_vec(&[0, 1])]),
            Err(Error::ImageNotInKernel(_))
        ));
    }

    #[test]
    fn class_orders() {
        let z2 = vec![big_vec(&[1, 0]), big_vec(&[0, 1])];
        let image = [big_vec(&[2, 0])];
        assert_eq!(class_order(&big_vec(&[1, 0]), &z2, &image).unwrap(), ClassOrder::Finite(BigInt::from(2)));
        assert_eq!(class_order(&big_vec(&[2, 0]), &z2, &image).unwrap(), ClassOrder::Finite(BigInt::one()));
        assert_eq!(class_order(&big_vec(&[0, 1]), &z2, &image).unwrap(), ClassOrder::Infinite);
        // a sublattice basis: kernel spanned by (2,0),(0,1); v = (2,0) has order 3 modulo (6,0)
        let k = vec![big_vec(&[2, 0]), big_vec(&[0, 1])];
        assert_eq!(
            class_order(&big_vec(&[2, 0]), &k, &[big_vec(&[6, 0])]).unwrap(),
            ClassOrder::Finite(BigInt::from(3))
        );
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            rows in 1usize..=5,
            cols in 1usize..=6,
            entries in proptest::collection::vec(-5i64..=5, 30),
        ) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
            let a = mat(&m);
            let basis = kernel_basis(&a);
            prop_assert_eq!(basis.len(), cols - crate::intlin::rank(&a));
            for v in &basis {
                prop_assert!(apply(&a, v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn solver_finds_preimages(
            rows in 1usize..=5,
            cols in 1usize..=5,
            entries in proptest::collection::vec(-5i64..=5, 25),
            x in proptest::collection::vec(-5i64..=5, 5),
        ) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 5..i * 5 + cols].to_vec()).collect();
            let a = mat(&m);
            let b = apply(&a, &big_vec(&x[..cols]));
            let sol = solve_integer_system(&a, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(apply(&a, &sol), b);
        }

        #[test]
        fn order_by_multiples(
            gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..4),
            v in proptest::collection::vec(-4i64..=4, 3),
        ) {
            // Oracle: search m = 1..=2000 for m v in the image by integer solving.
            let image = IntMatrix::from_columns(3, &gens.iter().map(|g| big_vec(g)).collect::<Vec<_>>()).unwrap().to_sparse();
            let vb = big_vec(&v);
            let got = order_modulo(&vb, &image).unwrap();
            let f = dense_smith(image.to_dense());
            let found = (1..=2000).find(|&m| {
                let mv: Vec<BigInt> = vb.iter().map(|x| x * m).collect();
                solve_with(&f, &mv).is_some()
            });
            match got {
                ClassOrder::Finite(m) => prop_assert_eq!(Some(m), found.map(BigInt::from)),
                ClassOrder::Infinite => prop_assert!(found.is_none()),
            }
        }
    }
}

//! Division-free linear algebra over commutative rings.
//!
//! Characteristic polynomials are computed with the Berkowitz algorithm,
//! which only needs ring operations.  That matters here because regular
//! representations are taken over rings that are not always fields (an étale
//! Kummer algebra has zero divisors) and over fraction fields where division
//! is possible but needlessly expensive inside a determinant.

/// Ring operations taken by reference.  Elements carry their own context
/// (field descriptor, extension, ...), so zero and one are derived from an
/// existing element rather than from a type-level constant.
pub(crate) trait CommutativeRing: Clone {
    fn ring_one(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

fn mat_vec<T: CommutativeRing>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            let mut acc = row[0].ring_mul(&v[0]);
            for (a, b) in row.iter().zip(v.iter()).skip(1) {
                acc = acc.ring_add(&a.ring_mul(b));
            }
            acc
        })
        .collect()
}

fn dot<T: CommutativeRing>(a: &[T], b: &[T]) -> T {
    let mut acc = a[0].ring_mul(&b[0]);
    for (x, y) in a.iter().zip(b.iter()).skip(1) {
        acc = acc.ring_add(&x.ring_mul(y));
    }
    acc
}

/// Characteristic polynomial `det(X·I - A)` of a square matrix, returned as
/// coefficients `[1, c_{n-1}, ..., c_0]` so that the polynomial reads
/// `X^n + c_{n-1} X^{n-1} + ... + c_0`.
///
/// Berkowitz recursion on the leading principal partition
/// `A = [[a, R], [C, M]]`: the coefficient vector of `A` is the product of a
/// lower-triangular Toeplitz matrix with first column
/// `[1, -a, -RC, -RMC, -RM^2C, ...]` and the coefficient vector of `M`.
pub(crate) fn char_poly<T: CommutativeRing>(a: &[Vec<T>]) -> Vec<T> {
    let n = a.len();
    assert!(n >= 1, "characteristic polynomial of an empty matrix");
    for row in a {
        assert_eq!(row.len(), n, "characteristic polynomial of a non-square matrix");
    }
    if n == 1 {
        return vec![a[0][0].ring_one(), a[0][0].ring_neg()];
    }

    let corner = &a[0][0];
    let r: Vec<T> = a[0][1..].to_vec();
    let c: Vec<T> = a[1..].iter().map(|row| row[0].clone()).collect();
    let m: Vec<Vec<T>> = a[1..].iter().map(|row| row[1..].to_vec()).collect();

    let q = char_poly(&m);

    // First column of the Toeplitz factor.
    let mut t = Vec::with_capacity(n + 1);
    t.push(corner.ring_one());
    t.push(corner.ring_neg());
    let mut v = c;
    for _ in 2..=n {
        t.push(dot(&r, &v).ring_neg());
        v = mat_vec(&m, &v);
    }

    (0..=n)
        .map(|j| {
            let lo = j.saturating_sub(n - 1);
            let mut acc = t[lo].ring_mul(&q[j - lo]);
            for i in (lo + 1)..=j.min(n) {
                acc = acc.ring_add(&t[i].ring_mul(&q[j - i]));
            }
            acc
        })
        .collect()
}

/// Determinant via the characteristic polynomial: `det A = (-1)^n char_A(0)`.
pub(crate) fn determinant<T: CommutativeRing>(a: &[Vec<T>]) -> T {
    let n = a.len();
    let p = char_poly(a);
    let c0 = p[n].clone();
    if n.is_multiple_of(2) {
        c0
    } else {
        c0.ring_neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    impl CommutativeRing for i64 {
        fn ring_one(&self) -> Self {
            1
        }
        fn ring_add(&self, other: &Self) -> Self {
            self + other
        }
        fn ring_neg(&self) -> Self {
            -self
        }
        fn ring_mul(&self, other: &Self) -> Self {
            self * other
        }
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion matrix of X^3 - 2X - 5.
        let a = vec![vec![0, 0, 5], vec![1, 0, 2], vec![0, 1, 0]];
        assert_eq!(char_poly(&a), vec![1, 0, -2, -5]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        // Expanded by hand along the first column: 2*(28-5) + (-2)*(-1-12) = 72.
        let a = vec![vec![2, -1, 3], vec![0, 4, 1], vec![-2, 5, 7]];
        assert_eq!(determinant(&a), 72);
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        let a = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(determinant(&a), 0);
    }

    #[test]
    fn one_by_one() {
        assert_eq!(char_poly(&[vec![7i64]]), vec![1, -7]);
        assert_eq!(determinant(&[vec![7i64]]), 7);
    }
}

//! Integer vectors in the Grothendieck group, indexed by quiver vertices.

/// Coordinates follow the vertex declaration order of the owning quiver.
pub type DimVector = Vec<i64>;

pub fn unit(n: usize, i: usize) -> DimVector {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub fn add(x: &[i64], y: &[i64]) -> DimVector {
    assert_eq!(x.len(), y.len(), "dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[i64], y: &[i64]) -> DimVector {
    assert_eq!(x.len(), y.len(), "dimension mismatch");
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn neg(x: &[i64]) -> DimVector {
    x.iter().map(|a| -a).collect()
}

pub fn scale(x: &[i64], s: i64) -> DimVector {
    x.iter().map(|a| a * s).collect()
}

pub fn abs_vector(x: &[i64]) -> DimVector {
    x.iter().map(|a| a.abs()).collect()
}

pub fn is_zero(x: &[i64]) -> bool {
    x.iter().all(|&a| a == 0)
}

pub fn is_nonnegative(x: &[i64]) -> bool {
    x.iter().all(|&a| a >= 0)
}

/// Componentwise `x <= y`.
pub fn le(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

pub fn support(x: &[i64]) -> Vec<usize> {
    (0..x.len()).filter(|&i| x[i] != 0).collect()
}

/// Sum of coordinates.
pub fn height(x: &[i64]) -> i64 {
    x.iter().sum()
}

/// Compact rendering such as `(1,0,2)`.
pub fn fmt_vec(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn abs_examples() {
        assert_eq!(abs_vector(&[1, -2, 0]), vec![1, 2, 0]);
    }

    proptest! {
        #[test]
        fn abs_is_even(x in proptest::collection::vec(-50i64..50, 0..8)) {
            prop_assert_eq!(abs_vector(&neg(&x)), abs_vector(&x));
        }

        #[test]
        fn abs_fixes_nonnegative(x in proptest::collection::vec(0i64..50, 0..8)) {
            prop_assert_eq!(abs_vector(&x), x);
        }
    }
}

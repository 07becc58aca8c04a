//! Independent oracles and reporting for the acceptance checks.

use std::collections::BTreeSet;
use std::io::Write;

use qcw::forms::UnitForm;
use qcw::matrix::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prints one `criterion NN PASS|FAIL detail` line, bypassing test capture.
pub fn line(criterion: u32, ok: bool, detail: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {criterion:2} {} {detail}", if ok { "PASS" } else { "FAIL" });
    let _ = out.flush();
}

/// `q(x) = Σ x_i^2 - Σ_arrows x_s x_t + Σ_relations x_s x_t` on four vertices.
pub fn presentation_form(arrows: &[(usize, usize)], relations: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::identity(4);
    for &(s, t) in arrows {
        m[(s, t)] -= 1;
    }
    for &(s, t) in relations {
        m[(s, t)] += 1;
    }
    m
}

/// Equal values on the box `[-2, 2]^4`, which pins down a quadratic form.
pub fn same_quadratic(rows: &[Vec<i64>], m: &IntMatrix) -> bool {
    let a = UnitForm::new(IntMatrix::from_rows(rows)).unwrap();
    let b = UnitForm::new(m.clone()).unwrap();
    (0..625).all(|k: i64| {
        let x: Vec<i64> = (0..4).map(|i| (k / 5i64.pow(i)) % 5 - 2).collect();
        a.value(&x) == b.value(&x)
    })
}

/// Upper-triangular unit forms with off-diagonal entries in `-2..=2`,
/// kept when positive definite.
pub fn random_definite_forms(count: usize, max_rank: usize, seed: u64) -> Vec<UnitForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=max_rank);
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = rng.gen_range(-2..=2);
            }
        }
        let f = UnitForm::new(m).unwrap();
        if f.is_positive_definite() {
            out.push(f);
        }
    }
    out
}

/// Oracle: positive roots by brute force in a box, compared with the
/// breadth-first route.
pub fn brute_positive_roots(f: &UnitForm, cap: i64) -> BTreeSet<Vec<i64>> {
    let n = f.n();
    let mut out = BTreeSet::new();
    let mut x = vec![0i64; n];
    loop {
        if x.iter().any(|&v| v != 0) && f.value(&x) == 1 {
            out.insert(x.clone());
        }
        let mut k = 0;
        while k < n && x[k] == cap {
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
        x[k] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_roots_of_a3() {
        let mut m = IntMatrix::identity(3);
        m[(0, 1)] = -1;
        m[(1, 2)] = -1;
        let f = UnitForm::new(m).unwrap();
        assert_eq!(brute_positive_roots(&f, 2).len(), 6);
    }

    #[test]
    fn relation_cancels_a_path() {
        // a -> b -> c with the composite zero: q = q(A3) + x_a x_c
        let f = presentation_form(&[(0, 1), (1, 2)], &[(0, 2)]);
        assert_eq!(UnitForm::new(f).unwrap().value(&[1, 1, 1, 0]), 2);
    }

    #[test]
    fn random_forms_are_definite() {
        assert!(random_definite_forms(10, 4, 1).iter().all(UnitForm::is_positive_definite));
    }
}

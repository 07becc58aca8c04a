//! Indecomposables from reflection functors.
//!
//! Sink reflections are applied to the dimension vector along a repeated
//! sink-admissible ordering until it becomes the simple at the vertex being
//! reflected. The module is then rebuilt from that simple by the inverse
//! source reflections, each one a cokernel.

use std::sync::Arc;

use super::Representation;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quiver::Quiver;
use crate::vector::{is_nonnegative, is_zero, unit, DimVector};

/// The indecomposable with dimension vector `x`, for `x` a positive root
/// that the sink-reflection schedule reduces to a simple projective (every
/// positive root of a Dynkin quiver, and the preprojective roots in
/// general).
pub fn build_root_rep(q: &Arc<Quiver>, x: &[i64]) -> Result<Representation> {
    let n = q.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if !is_nonnegative(x) || is_zero(x) {
        return Err(Error::NotReflectable(x.to_vec()));
    }
    let order = q.sink_admissible_order();
    let height: i64 = x.iter().sum();
    let max_steps = 2 * n * (height as usize + n);
    let mut quivers: Vec<Quiver> = vec![(**q).clone()];
    let mut reflected = Vec::new();
    let mut cur: DimVector = x.to_vec();
    let mut step = 0;
    let last = loop {
        let k = order[step % n];
        let qc = quivers.last().expect("nonempty");
        debug_assert!(qc.is_sink(k));
        if cur == unit(n, k) {
            break k;
        }
        let around: i64 = qc
            .arrows()
            .iter()
            .filter_map(|&(s, t)| (t == k).then_some(cur[s]))
            .sum();
        let xk = around - cur[k];
        if xk < 0 {
            return Err(Error::NotReflectable(x.to_vec()));
        }
        cur[k] = xk;
        reflected.push(k);
        quivers.push(qc.reflect_at(k));
        step += 1;
        if step > max_steps {
            return Err(Error::NotReflectable(x.to_vec()));
        }
    };
    let mut rep = Representation::simple(Arc::new(quivers.pop().expect("nonempty")), last);
    while let Some(k) = reflected.pop() {
        let target = Arc::new(quivers.pop().expect("one quiver per reflection"));
        rep = source_reflection(&rep, k, target);
    }
    Ok(rep.rebase(q.clone()))
}

/// `S_k^-` for a source `k`: the new space at `k` is the cokernel of the
/// stacked outgoing maps, and each reversed arrow maps into it by the
/// matching block of columns of the cokernel projection.
fn source_reflection(rep: &Representation, k: usize, target: Arc<Quiver>) -> Representation {
    let q = rep.quiver();
    let out: Vec<usize> = q.arrows_from(k).collect();
    debug_assert!(q.is_source(k));
    let dk = rep.d(k);
    let mut phi = QMatrix::zeros(0, dk);
    for &a in &out {
        phi = phi.vstack(rep.map(a));
    }
    let coker = phi.left_null_space();
    let c = coker.rows();
    let mut dim = rep.dim().clone();
    dim[k] = c as i64;
    let mut maps = rep.maps().to_vec();
    let mut col = 0;
    for &a in &out {
        let w = rep.d(q.arrows()[a].1);
        maps[a] = coker.block(0, c, col, col + w);
        col += w;
    }
    Representation::new(target, dim, maps).expect("reflection preserves shapes")
}

/// The preinjective with dimension vector `x`: the dual of the preprojective
/// of the opposite quiver.
pub fn build_preinjective(q: &Arc<Quiver>, x: &[i64]) -> Result<Representation> {
    let op = Arc::new(q.opposite());
    let m = build_root_rep(&op, x)?;
    Ok(m.dual().rebase(q.clone()))
}

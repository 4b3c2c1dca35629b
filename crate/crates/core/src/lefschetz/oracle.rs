//! Exhaustive reference deciders.
//!
//! These walk every candidate enhancement of the fiber and evaluate it on
//! every vanishing cycle. They share no code with the linear systems in the
//! main deciders beyond enhancement evaluation itself.

use crate::error::{Error, Result};
use crate::surfaces::{EnhancementMinus, EnhancementPlus, PinKind};

use super::LefschetzFibration;

/// Largest fiber rank the oracles accept.
pub const MAX_ORACLE_RANK: usize = 20;

fn check_rank(f: &LefschetzFibration) -> Result<usize> {
    let r = f.fiber().rank();
    if r > MAX_ORACLE_RANK {
        return Err(Error::InvariantViolation(format!(
            "oracle refused: fiber rank {r} exceeds {MAX_ORACLE_RANK}"
        )));
    }
    Ok(r)
}

/// All value vectors in `{0..base}^r` ordered lexicographically.
fn value_vectors(r: usize, base: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (base as u64).pow(r as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; r];
        for slot in v.iter_mut().rev() {
            *slot = (idx % base as u64) as u8;
            idx /= base as u64;
        }
        v
    })
}

/// Every `q-` with `q-([ci]) = 2` for all cycles, over all `2^r`
/// enhancements (each generator value is `e.e` or `e.e + 2`).
pub fn brute_force_pin_minus(f: &LefschetzFibration) -> Result<Vec<EnhancementMinus>> {
    let r = check_rank(f)?;
    let squares = f.fiber().generator_squares();
    let reduced: Vec<_> = f.cycles().iter().map(|c| c.reduce_mod2()).collect();
    Ok(value_vectors(r, 2)
        .map(|bits| bits.iter().zip(&squares).map(|(b, s)| 2 * b + s).collect())
        .filter_map(|values| EnhancementMinus::new(f.fiber().clone(), values).ok())
        .filter(|q| reduced.iter().all(|c| q.eval_bits(c) == 2))
        .collect())
}

/// Every `q+` with `q+([ci]) = 1` for all cycles, over all `2^r` value
/// assignments that pass the relation check.
pub fn brute_force_pin_plus(f: &LefschetzFibration) -> Result<Vec<EnhancementPlus>> {
    let r = check_rank(f)?;
    Ok(value_vectors(r, 2)
        .filter_map(|values| EnhancementPlus::new(f.fiber().clone(), values).ok())
        .filter(|q| f.cycles().iter().all(|c| q.eval_coords(c.coords()) == 1))
        .collect())
}

/// Number of structures of the given kind by exhaustive search.
pub fn brute_force_count(f: &LefschetzFibration, kind: PinKind) -> Result<usize> {
    Ok(match kind {
        PinKind::Minus => brute_force_pin_minus(f)?.len(),
        PinKind::Plus => brute_force_pin_plus(f)?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::SurfaceModel;

    #[test]
    fn value_vectors_are_lexicographic() {
        let all: Vec<_> = value_vectors(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(value_vectors(0, 4).count(), 1);
    }

    #[test]
    fn klein_minus_disk_pairs() {
        let f = LefschetzFibration::from_coords(SurfaceModel::non_orientable(2, 1).unwrap(), &[vec![1, 1]]).unwrap();
        let found: Vec<_> = brute_force_pin_minus(&f)
            .unwrap()
            .iter()
            .map(|q| q.values().to_vec())
            .collect();
        assert_eq!(found, vec![vec![1, 1], vec![3, 3]]);
    }

    #[test]
    fn rank_guard() {
        let f = LefschetzFibration::from_coords(SurfaceModel::orientable(11, 0), &[]).unwrap();
        assert!(brute_force_pin_plus(&f).is_err());
    }
}

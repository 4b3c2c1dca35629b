#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use pinlef_core::finite_linalg::{MatGF2, MatZ4, VecGF2};
use pinlef_core::{Surface, SurfaceModel};

/// Every surface model with `z2_rank <= max_rank`, boundary count capped so
/// the list stays finite.
pub fn surfaces_up_to_rank(max_rank: usize) -> Vec<SurfaceModel> {
    let mut out = Vec::new();
    for g in 0..=max_rank as u32 {
        for b in 0..=max_rank as u32 + 1 {
            let m = SurfaceModel::orientable(g, b);
            if m.z2_rank() <= max_rank {
                out.push(m);
            }
        }
    }
    for k in 1..=max_rank as u32 {
        for b in 0..=max_rank as u32 + 1 {
            let m = SurfaceModel::non_orientable(k, b).unwrap();
            if m.z2_rank() <= max_rank {
                out.push(m);
            }
        }
    }
    out
}

/// All Z/4 coordinate vectors of length `r`.
pub fn z4_vectors(r: usize) -> Vec<Vec<u8>> {
    (0..4usize.pow(r as u32))
        .map(|mut idx| {
            let mut v = vec![0u8; r];
            for slot in v.iter_mut() {
                *slot = (idx % 4) as u8;
                idx /= 4;
            }
            v
        })
        .collect()
}

/// All Z/2 vectors of length `r`.
pub fn z2_vectors(r: usize) -> Vec<VecGF2> {
    (0u32..1 << r)
        .map(|m| VecGF2::from_bools(&(0..r).map(|i| (m >> i) & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Z/4 classes whose Z/2 reduction has even self-intersection.
pub fn two_sided_pool(surface: &Arc<Surface>) -> Vec<Vec<u8>> {
    z4_vectors(surface.rank())
        .into_iter()
        .filter(|v| !surface.self_intersection(&VecGF2::from_residues(v)))
        .collect()
}

/// Multisets of size `k` from `0..n` as non-decreasing index lists.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in multisets(n, k - 1) {
        let start = smaller.last().copied().unwrap_or(0);
        for i in start..n {
            let mut next = smaller.clone();
            next.push(i);
            out.push(next);
        }
    }
    out
}

/// Rank as log2 of the number of distinct row combinations.
pub fn gf2_span_rank(m: &MatGF2) -> usize {
    let mut span = HashSet::new();
    for mask in 0u32..1 << m.nrows() {
        let mut v = VecGF2::zeros(m.ncols());
        for i in 0..m.nrows() {
            if (mask >> i) & 1 == 1 {
                v.add_assign(m.row(i));
            }
        }
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

/// Position of `v` in the ordering used by `z4_vectors`.
pub fn z4_index(v: &[u8]) -> usize {
    v.iter().rev().fold(0, |acc, &e| acc * 4 + e as usize)
}

/// Membership bitmap of the Z/4 row span, one bit per vector (cols <= 3).
pub fn z4_span_mask(m: &MatZ4) -> u64 {
    let mut members = 0u64;
    for coeffs in z4_vectors(m.nrows()) {
        let mut v = vec![0u8; m.ncols()];
        for (r, &k) in coeffs.iter().enumerate() {
            for (slot, &e) in v.iter_mut().zip(m.row(r)) {
                *slot = (*slot + k * e) % 4;
            }
        }
        members |= 1 << z4_index(&v);
    }
    members
}

//! Stiefel-Whitney numbers of a 4-manifold read off embedded surfaces.
//!
//! For a surface `σ` embedded in `M` representing `a ∈ H_2(M;Z/2)`:
//!
//! ```text
//! <w2(M), a>     = χ(σ) + (w1(σ) ∪ w1(ν σ))([σ]) + [σ]^2   (mod 2)
//! <w1^2(M), a>   = w1^2(σ) + w1^2(ν σ)                     (mod 2)
//! ```
//!
//! Pin+ is obstructed by `w2`, Pin- by `w2 + w1^2`.

/// Mod-2 invariants of an embedded surface `σ ⊂ M`; `true` stands for 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EmbeddedSurfaceData {
    /// `χ(σ)`.
    pub euler_char: bool,
    /// `[σ]^2`.
    pub self_intersection: bool,
    /// `(w1(σ) ∪ w1(ν(σ)))([σ])`.
    pub cup_term: bool,
    /// `w1^2(σ)`.
    pub w1sq_sigma: bool,
    /// `w1^2(ν(σ))`.
    pub w1sq_normal: bool,
}

impl EmbeddedSurfaceData {
    /// Builds from residues in the field order
    /// `[χ, [σ]², cup, w1²(σ), w1²(ν)]`; each must be 0 or 1.
    pub fn from_residues(values: [u8; 5]) -> Option<Self> {
        if values.iter().any(|&v| v > 1) {
            return None;
        }
        Some(Self {
            euler_char: values[0] == 1,
            self_intersection: values[1] == 1,
            cup_term: values[2] == 1,
            w1sq_sigma: values[3] == 1,
            w1sq_normal: values[4] == 1,
        })
    }

    pub fn to_residues(&self) -> [u8; 5] {
        [
            self.euler_char as u8,
            self.self_intersection as u8,
            self.cup_term as u8,
            self.w1sq_sigma as u8,
            self.w1sq_normal as u8,
        ]
    }

    /// `RP² ⊂ RP⁴`: χ = 1, [σ]² = 1, w1²(RP²) = 1, trivial cup term and
    /// `w1²` of the normal bundle.
    pub fn rp2_in_rp4() -> Self {
        Self {
            euler_char: true,
            self_intersection: true,
            cup_term: false,
            w1sq_sigma: true,
            w1sq_normal: false,
        }
    }
}

pub fn eval_w2(d: &EmbeddedSurfaceData) -> bool {
    d.euler_char ^ d.cup_term ^ d.self_intersection
}

pub fn eval_w1sq(d: &EmbeddedSurfaceData) -> bool {
    d.w1sq_sigma ^ d.w1sq_normal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObstructionSummary {
    pub pin_plus_obstructed: bool,
    pub pin_minus_obstructed: bool,
    /// No surfaces were supplied, so nothing was actually checked.
    pub empty_input: bool,
}

/// Obstruction verdicts from surfaces the caller asserts generate
/// `H_2(M;Z/2)`.
pub fn pin_obstruction_summary(surfaces: &[EmbeddedSurfaceData]) -> ObstructionSummary {
    ObstructionSummary {
        pin_plus_obstructed: surfaces.iter().any(eval_w2),
        pin_minus_obstructed: surfaces.iter().any(|d| eval_w2(d) ^ eval_w1sq(d)),
        empty_input: surfaces.is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(v: [u8; 5]) -> EmbeddedSurfaceData {
        EmbeddedSurfaceData::from_residues(v).unwrap()
    }

    #[test]
    fn rp2_in_rp4() {
        let d = EmbeddedSurfaceData::rp2_in_rp4();
        assert!(!eval_w2(&d));
        assert!(eval_w1sq(&d));
        let s = pin_obstruction_summary(&[d]);
        assert!(!s.pin_plus_obstructed);
        assert!(s.pin_minus_obstructed);
        assert!(!s.empty_input);
    }

    #[test]
    fn w2_arithmetic() {
        assert!(!eval_w2(&EmbeddedSurfaceData::default()));
        assert!(eval_w2(&data([1, 1, 1, 0, 0])));
    }

    #[test]
    fn w1sq_arithmetic() {
        assert!(!eval_w1sq(&EmbeddedSurfaceData::default()));
        assert!(!eval_w1sq(&data([0, 0, 0, 1, 1])));
        assert!(eval_w1sq(&data([0, 0, 0, 1, 0])));
    }

    #[test]
    fn empty_summary_carries_caveat() {
        let s = pin_obstruction_summary(&[]);
        assert!(!s.pin_plus_obstructed && !s.pin_minus_obstructed);
        assert!(s.empty_input);
    }

    #[test]
    fn one_bad_surface_obstructs() {
        let s = pin_obstruction_summary(&[data([0, 0, 0, 0, 0]), data([1, 0, 0, 0, 0])]);
        assert!(s.pin_plus_obstructed);
    }

    #[test]
    fn flipping_a_field_flips_the_output() {
        for bits in 0u8..32 {
            let v = [
                bits & 1,
                (bits >> 1) & 1,
                (bits >> 2) & 1,
                (bits >> 3) & 1,
                (bits >> 4) & 1,
            ];
            let base = data(v);
            for field in 0..5 {
                let mut w = v;
                w[field] ^= 1;
                let flipped = data(w);
                if field < 3 {
                    assert_ne!(eval_w2(&base), eval_w2(&flipped));
                    assert_eq!(eval_w1sq(&base), eval_w1sq(&flipped));
                } else {
                    assert_ne!(eval_w1sq(&base), eval_w1sq(&flipped));
                    assert_eq!(eval_w2(&base), eval_w2(&flipped));
                }
            }
        }
    }

    #[test]
    fn residues_must_be_mod_two() {
        assert!(EmbeddedSurfaceData::from_residues([0, 2, 0, 0, 0]).is_none());
        assert_eq!(data([1, 0, 1, 0, 1]).to_residues(), [1, 0, 1, 0, 1]);
    }
}

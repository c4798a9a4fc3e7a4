//! Elementary symmetric polynomial values and the sign-based orthant test.
//!
//! All operations are generic over the coefficient type so that the same
//! code path serves double precision and exact rational arithmetic.

use num_traits::{One, Signed, Zero};

/// Coefficient types usable throughout the crate: `f64` and
/// `num::BigRational` both qualify.
pub trait Scalar: Clone + Zero + One + Signed + PartialOrd {}
impl<T: Clone + Zero + One + Signed + PartialOrd> Scalar for T {}

/// The vector (sigma_0, ..., sigma_m) of elementary symmetric values of an
/// input of length m. Always has sigma_0 = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymSpectrum<C> {
    pub values: Vec<C>,
}

impl<C> SymSpectrum<C> {
    /// Length of the input vector.
    pub fn m(&self) -> usize {
        self.values.len() - 1
    }
}

/// All elementary symmetric values of `values` by the prepend recurrence:
/// sigma_l <- sigma_l + y * sigma_{l-1}, descending l, one input at a time.
/// Exact when `C` is an exact rational type.
pub fn elem_sym_all<C: Scalar>(values: &[C]) -> SymSpectrum<C> {
    let m = values.len();
    let mut sigma = vec![C::zero(); m + 1];
    sigma[0] = C::one();
    for (idx, y) in values.iter().enumerate() {
        for l in (1..=idx + 1).rev() {
            let inc = y.clone() * sigma[l - 1].clone();
            sigma[l] = sigma[l].clone() + inc;
        }
    }
    SymSpectrum { values: sigma }
}

/// Membership in the nonnegative orthant decided purely by the signs of
/// sigma_1, ..., sigma_d.
pub fn orthant_member_by_signs<C: Scalar>(values: &[C]) -> bool {
    let spectrum = elem_sym_all(values);
    spectrum.values[1..].iter().all(|s| !s.is_negative())
}

/// sigma_i of the concatenation of `x` and `y` computed as the convolution
/// sum over the two halves.
pub fn convolution_split<C: Scalar>(x: &[C], y: &[C], i: usize) -> C {
    let sx = elem_sym_all(x);
    let sy = elem_sym_all(y);
    let lo = i.saturating_sub(x.len());
    let hi = i.min(y.len());
    let mut acc = C::zero();
    for j in lo..=hi {
        acc = acc + sx.values[i - j].clone() * sy.values[j].clone();
    }
    acc
}

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Normalized mutual information between overlapping covers, in the
//! conditional-entropy form of Lancichinetti, Fortunato and Kertész.
//!
//! Each community is a binary variable over the universe. For a community
//! `X_k` and a candidate match `Y_l`, the 2×2 membership table gives
//! `H(X_k | Y_l) = H(X_k, Y_l) − H(Y_l)`. A match only counts when it is
//! closer to `X_k` than to its complement, i.e.
//! `h(P₁₁) + h(P₀₀) ≥ h(P₀₁) + h(P₁₀)`; otherwise the conditional entropy
//! falls back to `H(X_k)`. The best match normalized by `H(X_k)` is averaged
//! over `k`, and the two directions are symmetrized.

use crate::cover::Cover;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmiReport {
    pub value: f64,
    /// `H(X|Y)_norm`
    pub x_given_y: f64,
    /// `H(Y|X)_norm`
    pub y_given_x: f64,
}

/// `-p log₂ p`, with `h(0) = 0`.
fn h(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Binary entropy of a set of `size` members in a universe of `n`. The
/// complement is taken in counts so that equal tables give equal floats.
fn binary(size: usize, n: usize) -> f64 {
    h(size as f64 / n as f64) + h((n - size) as f64 / n as f64)
}

/// Normalized conditional entropy `H(X|Y)_norm`.
fn conditional(x: &Cover, y: &Cover) -> f64 {
    let n = x.n();
    let nf = n as f64;
    let mut overlap = vec![0usize; y.len()];
    let mut ratios = Vec::with_capacity(x.len());
    for xk in x.communities() {
        overlap.iter_mut().for_each(|o| *o = 0);
        for &v in xk {
            for &l in y.memberships(v) {
                overlap[l] += 1;
            }
        }
        let hx = binary(xk.len(), n);
        if hx == 0.0 {
            // covers the whole universe: carries no information
            ratios.push(0.0);
            continue;
        }
        let mut best = hx;
        for (yl, &both) in y.communities().iter().zip(&overlap) {
            let p11 = both as f64 / nf;
            let p10 = (xk.len() - both) as f64 / nf;
            let p01 = (yl.len() - both) as f64 / nf;
            let p00 = (n + both - xk.len() - yl.len()) as f64 / nf;
            if h(p11) + h(p00) < h(p01) + h(p10) {
                continue;
            }
            let joint = h(p11) + h(p00) + (h(p10) + h(p01));
            best = best.min((joint - binary(yl.len(), n)).max(0.0));
        }
        ratios.push(best / hx);
    }
    // a fixed summation order keeps the result independent of community order
    ratios.sort_by(f64::total_cmp);
    ratios.iter().sum::<f64>() / x.len() as f64
}

/// Overlapping NMI of two covers over the same universe, in `[0, 1]`.
pub fn nmi_overlapping(x: &Cover, y: &Cover) -> Result<NmiReport> {
    if x.n() != y.n() {
        return Err(Error::UniverseMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    if x.n() == 0 {
        return Err(Error::EmptyUniverse);
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyCommunity);
    }
    let x_given_y = conditional(x, y).clamp(0.0, 1.0);
    let y_given_x = conditional(y, x).clamp(0.0, 1.0);
    Ok(NmiReport {
        value: 1.0 - 0.5 * (x_given_y + y_given_x),
        x_given_y,
        y_given_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(n: usize, c: &[&[usize]]) -> Cover {
        Cover::new(n, c.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identical_covers() {
        let x = cover(6, &[&[0, 1, 2], &[2, 3, 4, 5]]);
        let r = nmi_overlapping(&x, &x).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn order_does_not_matter() {
        let x = cover(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let y = cover(6, &[&[0, 1], &[2, 3, 4, 5]]);
        let y2 = cover(6, &[&[2, 3, 4, 5], &[0, 1]]);
        let a = nmi_overlapping(&x, &y).unwrap().value;
        let b = nmi_overlapping(&x, &y2).unwrap().value;
        assert_eq!(a, b);
        assert!(a > 0.0 && a < 1.0);
    }

    #[test]
    fn errors() {
        let x = cover(3, &[&[0, 1, 2]]);
        let y = cover(4, &[&[0, 1, 2, 3]]);
        assert!(matches!(nmi_overlapping(&x, &y), Err(Error::UniverseMismatch { .. })));
        let e = Cover::new(0, vec![]).unwrap();
        assert!(matches!(nmi_overlapping(&e, &e), Err(Error::EmptyUniverse)));
    }

    #[test]
    fn whole_universe_community_carries_no_information() {
        let x = cover(4, &[&[0, 1, 2, 3]]);
        let y = cover(4, &[&[0, 1], &[2, 3]]);
        let r = nmi_overlapping(&x, &y).unwrap();
        assert_eq!(r.x_given_y, 0.0);
        // each half of Y, matched against the only X community, is left
        // with its full entropy
        assert_eq!(r.y_given_x, 1.0);
        assert_eq!(r.value, 0.5);
    }
}

//! Branching functions `B_l(q)`: the graded multiplicity of `L(l)` in the
//! Fock space of one copy of the symplectic fermions.
//!
//! Two independent formulas are implemented. The product form
//! `q^{h(l)} P(q)^n prod_{a in Phi+} (1 - q^{(l + rho_0, a)})` and the
//! alternating Weyl sum
//! `P(q)^n sum_w (-1)^{l(w)} q^{|w(l + rho_0) - rho|^2 / 2 - |rho_1|^2 / 2}`.
//! They agree by the `so(2n+1)` denominator identity, which is checked
//! separately by [`denominator_identity_check`].

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qseries::{euler_product, TruncSeries};
use crate::rootsys::{build_root_data, inner4, weyl_elements, SignedPerm, Weight};
use crate::weylchar::alternating_sum;
use crate::Caps;

fn check(lambda: &Weight, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if lambda.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(())
}

/// `B_l(q)` from the product formula.
pub fn branching_product(lambda: &Weight, n: usize, trunc: usize) -> Result<TruncSeries> {
    check(lambda, n)?;
    let rd = build_root_data(n)?;
    let h = lambda.conformal_weight_int().expect("dominant weights are integral") as usize;
    if h > trunc {
        return Ok(TruncSeries::zero(trunc));
    }
    let shifted = lambda + &rd.rho0;
    let mut s = euler_product(|_| -(n as i64), trunc - h);
    for alpha in &rd.phi_plus {
        // (l + rho_0, a) > 0 for every positive root of so(2n+1)
        let e = inner4(&shifted, alpha);
        debug_assert!(e > 0 && e % 4 == 0);
        s.mul_euler_factor((e / 4) as usize, 1);
    }
    let mut coeffs = vec![BigInt::default(); h];
    coeffs.extend_from_slice(s.coeffs());
    Ok(TruncSeries::from_coeffs(trunc, coeffs))
}

/// `B_l(q)` from the alternating sum over the Weyl group.
pub fn branching_weylsum(
    lambda: &Weight,
    n: usize,
    trunc: usize,
    caps: &Caps,
) -> Result<TruncSeries> {
    check(lambda, n)?;
    let weyl = weyl_elements(n, caps.weyl)?;
    branching_weylsum_with(lambda, trunc, &weyl)
}

/// As [`branching_weylsum`] with a precomputed Weyl group.
pub fn branching_weylsum_with(
    lambda: &Weight,
    trunc: usize,
    weyl: &[SignedPerm],
) -> Result<TruncSeries> {
    let n = lambda.rank();
    check(lambda, n)?;
    let rd = build_root_data(n)?;
    let shifted = lambda + &rd.rho0;
    let mut alt = TruncSeries::zero(trunc);
    for w in weyl {
        let x = &w.apply(&shifted) - &rd.rho;
        // |x|^2 / 2 - |rho_1|^2 / 2 = (|2x|^2 - n) / 8
        let num = inner4(&x, &x) - n as i64;
        if num < 0 || num % 8 != 0 {
            return Err(Error::BadExponent(format!("{num}/8 (w = {:?})", w.perm())));
        }
        let k = (num / 8) as usize;
        if k <= trunc {
            alt = &alt + &TruncSeries::monomial(BigInt::from(w.parity()), k, trunc);
        }
    }
    let p = euler_product(|_| -(n as i64), trunc);
    Ok(&p * &alt)
}

/// Both sides of `e^rho prod_{a in Phi+} (1 - e^{-a}) = sum_w (-1)^{l(w)} e^{w rho}`
/// for `so(2n+1)`; fails unless they coincide.
pub fn denominator_identity_check(n: usize, caps: &Caps) -> Result<(LaurentPoly, LaurentPoly)> {
    let rd = build_root_data(n)?;
    let weyl = weyl_elements(n, caps.weyl)?;
    let mut lhs = LaurentPoly::monomial(&rd.rho, BigInt::one());
    for alpha in &rd.phi_plus {
        let mut factor = LaurentPoly::one(n);
        factor.add_term((-alpha).coords2().to_vec(), -BigInt::one());
        lhs = &lhs * &factor;
    }
    let rhs = alternating_sum(&rd.rho, &weyl);
    if lhs != rhs {
        return Err(Error::IdentityFailed(format!(
            "so({}) denominator: {} != {}",
            2 * n + 1,
            lhs,
            rhs
        )));
    }
    Ok((lhs, rhs))
}

//! Expectation values of low-order mode moments.
//!
//! Every moment is reduced to normal order with the canonical commutator
//! before evaluation, so only annihilation operators act on the state. This
//! keeps the results free of the spurious boundary terms a creation operator
//! produces on the highest retained Fock level.

use num_complex::Complex64;

use super::state::QuantumState;
use crate::modes::{Mode, ModePair};

/// A moment of one mode or of a mode pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSpec {
    /// `<x>`
    Mean(Mode),
    /// `<x^2>`
    Square(Mode),
    /// `<N_x>`
    Number(Mode),
    /// `<N_x N_y>`
    NumberProduct(ModePair),
    /// `<x y^dag>`
    CrossDagger(ModePair),
    /// `<x y>`
    Pair(ModePair),
    /// `<(dx)^dag dx>` with `dx = x - <x>`
    NumberFluct(Mode),
    /// `<dx dy>`
    PairFluct(ModePair),
    /// `Var(u)` with `u = (x + x^dag + y + y^dag)/sqrt(2)`
    QuadU(ModePair),
    /// `Var(v)` with `v = (x - x^dag + y - y^dag)/(i sqrt(2))`
    QuadV(ModePair),
}

/// `x |psi>` as a plain amplitude vector.
pub fn lower(state: &QuantumState, mode: Mode) -> Vec<Complex64> {
    lower_vec(state, state.amplitudes(), mode)
}

fn lower_vec(state: &QuantumState, psi: &[Complex64], mode: Mode) -> Vec<Complex64> {
    let space = state.space();
    let stride = space.stride(mode);
    let cutoff = space.cutoff(mode);
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (idx, o) in out.iter_mut().enumerate() {
        let n = space.level(idx, mode);
        if n < cutoff {
            // <n| x |n+1> = sqrt(n+1)
            *o = psi[idx + stride] * ((n + 1) as f64).sqrt();
        }
    }
    out
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn number_weighted(state: &QuantumState, weight: impl Fn([usize; 4]) -> f64) -> f64 {
    let space = state.space();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| z.norm_sqr() * weight(space.occupations(i)))
        .sum()
}

fn mean(state: &QuantumState, x: Mode) -> Complex64 {
    inner(state.amplitudes(), &lower(state, x))
}

fn number(state: &QuantumState, x: Mode) -> f64 {
    number_weighted(state, |n| n[x.index()] as f64)
}

/// `<x y>` for any two modes, including `x == y`.
fn product(state: &QuantumState, x: Mode, y: Mode) -> Complex64 {
    let ypsi = lower(state, y);
    inner(state.amplitudes(), &lower_vec(state, &ypsi, x))
}

/// `<x^dag y>` = `<x psi | y psi>`.
fn dagger_product(state: &QuantumState, x: Mode, y: Mode) -> Complex64 {
    inner(&lower(state, x), &lower(state, y))
}

/// `<X^2>` for `X = x + x^dag` (`sign = +1`) or `X = (x - x^dag)/i` (`sign = -1`).
fn quad_second_moment(state: &QuantumState, x: Mode, y: Mode, sign: f64) -> f64 {
    let xx = product(state, x, x).re;
    let yy = product(state, y, y).re;
    let xy = product(state, x, y).re;
    let xdy = dagger_product(state, x, y).re;
    let (nx, ny) = (number(state, x), number(state, y));
    // <X_x^2> = +-2 Re<x^2> + 2 N_x + 1 and <X_x X_y> = +-2 Re<xy> + 2 Re<x^dag y>
    let single = sign * 2.0 * xx + 2.0 * nx + 1.0 + sign * 2.0 * yy + 2.0 * ny + 1.0;
    let cross = 2.0 * (sign * 2.0 * xy + 2.0 * xdy);
    0.5 * (single + cross)
}

pub fn moment(state: &QuantumState, spec: MomentSpec) -> Complex64 {
    let re = |v: f64| Complex64::new(v, 0.0);
    match spec {
        MomentSpec::Mean(x) => mean(state, x),
        MomentSpec::Square(x) => product(state, x, x),
        MomentSpec::Number(x) => re(number(state, x)),
        MomentSpec::NumberProduct(p) => {
            let (x, y) = (p.first().index(), p.second().index());
            re(number_weighted(state, |n| (n[x] * n[y]) as f64))
        }
        // Distinct modes commute: <x y^dag> = <y^dag x> = <y psi | x psi>.
        MomentSpec::CrossDagger(p) => dagger_product(state, p.second(), p.first()),
        MomentSpec::Pair(p) => product(state, p.first(), p.second()),
        MomentSpec::NumberFluct(x) => re(number(state, x) - mean(state, x).norm_sqr()),
        MomentSpec::PairFluct(p) => {
            let (x, y) = p.modes();
            product(state, x, y) - mean(state, x) * mean(state, y)
        }
        MomentSpec::QuadU(p) => {
            let (x, y) = p.modes();
            let m = (mean(state, x) + mean(state, y)).re * std::f64::consts::SQRT_2;
            re(quad_second_moment(state, x, y, 1.0) - m * m)
        }
        MomentSpec::QuadV(p) => {
            let (x, y) = p.modes();
            let m = (mean(state, x) + mean(state, y)).im * std::f64::consts::SQRT_2;
            re(quad_second_moment(state, x, y, -1.0) - m * m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inputs::CoherentInputs;
    use crate::oracle::space::FockSpace;
    use crate::oracle::state::{coherent_state, coherent_state_with_bound};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn vacuum_number_is_zero() {
        let s = FockSpace::uniform(2).unwrap();
        let psi = QuantumState::basis(s, [0; 4]).unwrap();
        assert_eq!(moment(&psi, MomentSpec::Number(Mode::A)).re, 0.0);
    }

    #[test]
    fn coherent_moments_factorize() {
        let s = FockSpace::new([15, 15, 4, 4]).unwrap();
        let a = CoherentInputs::from_magnitudes(0.5, 0.7, 0.8, 0.0, 0.0);
        let (psi, _) = coherent_state(&a, &s).unwrap();
        let (a1, a2) = (a.get(Mode::A), a.get(Mode::B));
        assert!(close(
            moment(&psi, MomentSpec::Number(Mode::A)),
            Complex64::new(0.25, 0.0),
            1e-12
        ));
        assert!(close(
            moment(&psi, MomentSpec::CrossDagger(ModePair::AB)),
            a1 * a2.conj(),
            1e-12
        ));
        assert!(close(moment(&psi, MomentSpec::Pair(ModePair::AB)), a1 * a2, 1e-12));
        assert!(close(
            moment(&psi, MomentSpec::PairFluct(ModePair::AB)),
            Complex64::new(0.0, 0.0),
            1e-12
        ));
        assert!(close(
            moment(&psi, MomentSpec::NumberFluct(Mode::B)),
            Complex64::new(0.0, 0.0),
            1e-12
        ));
        // Coherent states are minimum-uncertainty: each joint quadrature has variance 1.
        assert!(close(
            moment(&psi, MomentSpec::QuadU(ModePair::AB)),
            Complex64::new(1.0, 0.0),
            1e-12
        ));
        assert!(close(
            moment(&psi, MomentSpec::QuadV(ModePair::AB)),
            Complex64::new(1.0, 0.0),
            1e-12
        ));
    }

    #[test]
    fn number_product_of_basis_state() {
        let s = FockSpace::uniform(3).unwrap();
        let psi = QuantumState::basis(s, [1, 2, 3, 0]).unwrap();
        assert_eq!(moment(&psi, MomentSpec::NumberProduct(ModePair::BC)).re, 6.0);
        assert_eq!(moment(&psi, MomentSpec::Pair(ModePair::BC)).norm(), 0.0);
    }

    #[test]
    fn truncated_state_is_still_hermitian() {
        let s = FockSpace::uniform(3).unwrap();
        let a = CoherentInputs::from_magnitudes(1.0, 1.0, 1.0, 1.0, 1.0);
        let (psi, _) = coherent_state_with_bound(&a, &s, 1.0).unwrap();
        for p in ModePair::ALL {
            for spec in [MomentSpec::NumberProduct(p), MomentSpec::QuadU(p), MomentSpec::QuadV(p)] {
                assert!(moment(&psi, spec).im.abs() < 1e-10);
            }
        }
    }
}

//! Wronskian/Crum machinery: determinants of seed chains, extremal states,
//! the intertwining action B_k⁺, the partner potential V_k, and the
//! transformed and missing-state eigenfunctions of H_k.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::{ode_jet_from_values, Jet};
use crate::seeds::{
    gaussian_seed_jet, oscillator_eigenfunction_jet, raised_seed_jet, seed_chain_jets, Family,
    SeedSpec,
};

/// Relative threshold that flags a Wronskian constant term as an on-grid zero.
pub(crate) const WRONSKIAN_ZERO_TOL: f64 = 1e-12;

/// One k-th order transformation together with its three extremal energies
/// E₁ = ε₁ − (k−1), E₂ = 1/2, E₃ = ε₁ + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusySystem {
    spec: SeedSpec,
}

impl SusySystem {
    pub fn new(spec: SeedSpec) -> Self {
        SusySystem { spec }
    }

    pub fn spec(&self) -> &SeedSpec {
        &self.spec
    }

    pub fn energy_1(&self) -> f64 {
        self.spec.epsilon1 - (self.spec.k - 1) as f64
    }

    pub fn energy_2(&self) -> f64 {
        0.5
    }

    pub fn energy_3(&self) -> f64 {
        self.spec.epsilon1 + 1.0
    }

    /// Factorization energies ε_j = ε₁ − (j−1), j = 1..k.
    pub fn factorization_energies(&self) -> Vec<f64> {
        (0..self.spec.k)
            .map(|j| self.spec.epsilon1 - j as f64)
            .collect()
    }

    fn chain(&self, x: f64, order: usize) -> Result<Vec<Jet>> {
        seed_chain_jets(&self.spec, x, order)
    }

    /// (value, slope, energy) triples of the seed chain at x.
    fn tower_seeds(&self, x: f64) -> Result<Vec<TowerSeed>> {
        let chain = self.chain(x, self.spec.k + 1)?;
        Ok(chain
            .iter()
            .enumerate()
            .map(|(j, jet)| (jet.value(), jet.first(), self.spec.epsilon1 - j as f64))
            .collect())
    }

    /// The seed triples, extended by the family's extra generator function.
    fn extended_tower_seeds(&self, family: Family, x: f64) -> Result<Vec<TowerSeed>> {
        let mut seeds = self.tower_seeds(x)?;
        match family {
            Family::First => {}
            Family::Second => {
                let g = gaussian_seed_jet(x, 1);
                seeds.push((g.value(), g.first(), 0.5));
            }
            Family::Third => {
                let r = raised_seed_jet(self.spec.epsilon1, self.spec.lambda, x, 1)?;
                seeds.push((r.value(), r.first(), self.spec.epsilon1 + 1.0));
            }
        }
        Ok(seeds)
    }

    /// Jet of (ln ψ)′ for the family's extremal state; proportionality
    /// constants drop out, so no normalization enters.
    ///
    /// Through the Crum factorization the three states collapse to single
    /// chain factors: ψ₁ = W(u₁..u_{k−1})/W(u₁..u_k) = 1/ũ_k, while ψ₂ and
    /// ψ₃ are the full-chain transforms of their extra seed, ũ_{k+1}.
    pub fn extremal_logderiv_jet(&self, family: Family, x: f64, out_order: usize) -> Result<Jet> {
        let seeds = self.extended_tower_seeds(family, x)?;
        let (factors, _) = crum_tower(x, out_order + 2, &seeds)?;
        let last = factors.last().expect("chain is non-empty");
        check_nonzero(last, x, "extremal-state generator")?;
        let ld = last.log_derivative()?.truncated(out_order);
        match family {
            Family::First => Ok(ld.neg()),
            Family::Second | Family::Third => Ok(ld),
        }
    }

    /// (ln ψ)′ and (ln ψ)″ of the family's extremal state at x.
    pub fn extremal_state_logderiv(
        &self,
        family: Family,
        x: f64,
    ) -> Result<(Complex64, Complex64)> {
        let jet = self.extremal_logderiv_jet(family, x, 1)?;
        Ok((jet.value(), jet.first()))
    }

    /// B_k⁺ψ through the Crum representation W(u₁,…,u_k,ψ)/W(u₁,…,u_k),
    /// correct up to an x-independent constant.
    pub fn bkp_action(&self, psi: &Jet, x: f64) -> Result<Jet> {
        let k = self.spec.k;
        if psi.order() < k + 2 {
            return Err(Error::Contract(format!(
                "bkp_action: ψ jet order ≥ k+2 = {} required, got {}",
                k + 2,
                psi.order()
            )));
        }
        let mut funcs = self.chain(x, psi.order())?;
        funcs.push(psi.clone());
        let mut factors = crum_factors(&funcs)?;
        Ok(factors.pop().expect("chain is non-empty"))
    }

    /// Partner potential V_k = x²/2 − (ln W(u₁,…,u_k))″, taken level by
    /// level: V_k = V_{k−1} − (ln ũ_k)″ with the tower carrying 2V_{k−1}.
    pub fn partner_potential(&self, x: f64) -> Result<Complex64> {
        let (factors, two_v) = crum_tower(x, 4, &self.tower_seeds(x)?)?;
        let last = factors.last().expect("chain is non-empty");
        check_nonzero(last, x, "Wronskian of the seed chain")?;
        Ok(two_v.value() / 2.0 - last.log_derivative()?.first())
    }

    /// Jet of the transformed eigenfunction ψ_n^{(k)} = B_k⁺ψ_n / √Π(E_n − ε_j).
    pub fn transformed_eigenfunction_jet(&self, n: usize, x: f64, out_order: usize) -> Result<Jet> {
        let e_n = n as f64 + 0.5;
        let mut norm = Complex64::new(1.0, 0.0);
        for eps_j in self.factorization_energies() {
            let factor = e_n - eps_j;
            if factor.abs() < 1e-12 {
                return Err(Error::Degenerate(format!(
                    "E_{n} = {e_n} coincides with factorization energy ε = {eps_j}"
                )));
            }
            norm *= Complex64::new(factor, 0.0);
        }
        let psi_n = oscillator_eigenfunction_jet(n, x, 1);
        let mut seeds = self.tower_seeds(x)?;
        seeds.push((psi_n.value(), psi_n.first(), e_n));
        let (mut factors, _) = crum_tower(x, out_order.max(1) + 1, &seeds)?;
        let transformed = factors.pop().expect("chain is non-empty");
        Ok(transformed.scale(norm.sqrt().inv()).truncated(out_order))
    }

    /// ψ_n^{(k)}(x), up to the global normalization integral.
    pub fn transformed_eigenfunction(&self, n: usize, x: f64) -> Result<Complex64> {
        Ok(self.transformed_eigenfunction_jet(n, x, 2)?.value())
    }

    /// Jet of the missing-state eigenfunction
    /// ψ_{ε_j}^{(k)} ∝ W(u₁,…,u_{j−1},u_{j+1},…,u_k)/W(u₁,…,u_k).
    pub fn missing_state_eigenfunction_jet(
        &self,
        j: usize,
        x: f64,
        out_order: usize,
    ) -> Result<Jet> {
        let k = self.spec.k;
        if j == 0 || j > k {
            return Err(Error::Contract(format!(
                "missing state index must satisfy 1 ≤ j ≤ k, got {j}"
            )));
        }
        let order = out_order + 2;
        let seeds = self.tower_seeds(x)?;
        let (full, _) = crum_tower(x, order, &seeds)?;
        let reduced: Vec<TowerSeed> = seeds
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j - 1)
            .map(|(_, s)| *s)
            .collect();
        // ψ = Π ṽ_i / Π ũ_i with the factors paired off to keep magnitudes tame
        let mut acc = Jet::constant(x, Complex64::new(1.0, 0.0), order);
        if !reduced.is_empty() {
            let (red, _) = crum_tower(x, order, &reduced)?;
            for (v, u) in red.iter().zip(&full) {
                acc = acc.mul(v).div(u)?;
            }
        }
        acc.div(full.last().expect("chain is non-empty"))
    }

    /// ψ_{ε_j}^{(k)}(x), up to a constant.
    pub fn missing_state_eigenfunction(&self, j: usize, x: f64) -> Result<Complex64> {
        Ok(self.missing_state_eigenfunction_jet(j, x, 2)?.value())
    }
}

fn check_nonzero(w: &Jet, x: f64, what: &str) -> Result<()> {
    let c0 = w.value().norm();
    let local = (0..=w.order().min(2))
        .map(|n| w.coeff(n).norm())
        .fold(0.0f64, f64::max);
    if c0 <= WRONSKIAN_ZERO_TOL * local {
        return Err(Error::Singular {
            x,
            what: format!("{what} vanishes"),
        });
    }
    Ok(())
}

/// Wronskian determinant W(f₁,…,f_m) as a jet of order `out_order`.
///
/// The m×m matrix entry (i, j) is the jet of f_j⁽ⁱ⁾; the determinant is
/// expanded division-free by Laplace over column subsets, so points where
/// leading minors vanish are handled exactly like any other point. The empty
/// product convention W(∅) = 1 is honored at call sites (an empty numerator
/// contributes a zero log-derivative).
pub fn wronskian_jet(funcs: &[Jet], out_order: usize) -> Result<Jet> {
    let m = funcs.len();
    if m == 0 {
        return Err(Error::Contract(
            "wronskian_jet needs at least one function".into(),
        ));
    }
    let center = funcs[0].center();
    for f in funcs {
        if f.center() != center {
            return Err(Error::Contract(
                "wronskian_jet: mismatched jet centers".into(),
            ));
        }
        if f.order() < m - 1 + out_order {
            return Err(Error::Contract(format!(
                "wronskian_jet: jet order ≥ m−1+out_order = {} required, got {}",
                m - 1 + out_order,
                f.order()
            )));
        }
    }
    if m == 1 {
        return Ok(funcs[0].truncated(out_order));
    }

    // rows: derivative order 0..m−1, all truncated to the output order
    let mut rows: Vec<Vec<Jet>> = Vec::with_capacity(m);
    rows.push(funcs.iter().map(|f| f.truncated(f.order())).collect());
    for i in 1..m {
        let prev = &rows[i - 1];
        rows.push(prev.iter().map(Jet::derivative).collect());
    }
    for row in &mut rows {
        for entry in row.iter_mut() {
            *entry = entry.truncated(out_order);
        }
    }

    // minors[S] = determinant of rows 0..|S|−1 against column set S
    let full = (1usize << m) - 1;
    let mut minors: Vec<Option<Jet>> = vec![None; full + 1];
    minors[0] = Some(Jet::constant(center, Complex64::new(1.0, 0.0), out_order));
    for set in 1..=full {
        let size = (set as u32).count_ones() as usize;
        let row = size - 1;
        let mut acc = Jet::constant(center, Complex64::new(0.0, 0.0), out_order);
        let mut idx = 0;
        for col in 0..m {
            if set & (1 << col) == 0 {
                continue;
            }
            let sub = minors[set ^ (1 << col)]
                .as_ref()
                .expect("subsets are filled in increasing popcount order");
            let term = rows[row][col].mul(sub);
            if (size - 1 - idx).is_multiple_of(2) {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
            idx += 1;
        }
        minors[set] = Some(acc);
    }
    Ok(minors[full].take().expect("full set computed"))
}

/// Crum factors ũ_i of an ordered function list: ũ_1 = f₁, and each later
/// function is Darboux-stepped by every earlier pivot, T_w f = f′ − (ln w)′f,
/// so that ũ_i = W(f₁,…,f_i)/W(f₁,…,f_{i−1}) and W(f₁,…,f_m) = ũ_1·…·ũ_m.
///
/// Each factor is one order lower than the previous. Unlike the determinant,
/// every intermediate stays at the scale of a log-derivative, which keeps the
/// factorization accurate at orders where the m×m determinant has already
/// lost the value to cancellation. Pivots 1..m−1 must not vanish at the
/// center (that is a genuine singularity of the chain); the last factor may,
/// since it carries the Wronskian's own zero.
pub fn crum_factors(funcs: &[Jet]) -> Result<Vec<Jet>> {
    let m = funcs.len();
    if m == 0 {
        return Err(Error::Contract(
            "crum_factors needs at least one function".into(),
        ));
    }
    let center = funcs[0].center();
    for f in funcs {
        if f.center() != center {
            return Err(Error::Contract(
                "crum_factors: mismatched jet centers".into(),
            ));
        }
        if f.order() < m - 1 {
            return Err(Error::Contract(format!(
                "crum_factors: jet order ≥ m−1 = {} required, got {}",
                m - 1,
                f.order()
            )));
        }
    }
    let mut work = funcs.to_vec();
    for i in 0..m.saturating_sub(1) {
        check_nonzero(&work[i], center, "intermediate chain Wronskian")?;
        let ld = work[i].log_derivative()?;
        for f in work.iter_mut().skip(i + 1) {
            let n = f.order() - 1;
            *f = f.derivative().sub(&ld.truncated(n).mul(&f.truncated(n)));
        }
    }
    Ok(work)
}

/// One function entering the Darboux tower: (value, slope, energy) at the
/// evaluation point, the energy being that of the equation it solves.
pub(crate) type TowerSeed = (Complex64, Complex64, f64);

/// Crum factors of an energy-labeled chain, plus the jet of 2V at the level
/// above the last pivot.
///
/// Does what [`crum_factors`] does, but after every Darboux step each
/// remaining function is re-expanded through its own level's equation
/// u″ = 2(V_level − ε)u, with the transformed potential carried as a jet:
/// 2V_{i} = 2V_{i−1} − 2(ln ũ_i)″. Every jet in the tower therefore solves
/// its level exactly, all factors keep the full requested order, and the
/// truncation noise of repeated differentiation never stacks up with k.
fn crum_tower(x: f64, order: usize, seeds: &[TowerSeed]) -> Result<(Vec<Jet>, Jet)> {
    let m = seeds.len();
    if m == 0 {
        return Err(Error::Contract(
            "crum_tower needs at least one function".into(),
        ));
    }
    // 2V₀ = x² for the oscillator base level
    let xj = Jet::variable(x, order);
    let mut two_v = xj.mul(&xj);
    let shifted = |two_v: &Jet, energy: f64| {
        two_v.sub(&Jet::constant(
            x,
            Complex64::new(2.0 * energy, 0.0),
            two_v.order(),
        ))
    };
    let mut level: Vec<(Jet, f64)> = seeds
        .iter()
        .map(|&(v, s, e)| (ode_jet_from_values(v, s, &shifted(&two_v, e), order), e))
        .collect();
    let mut factors = Vec::with_capacity(m);
    for i in 0..m {
        let pivot = level[i].0.clone();
        factors.push(pivot.clone());
        if i + 1 == m {
            break;
        }
        check_nonzero(&pivot, x, "intermediate chain Wronskian")?;
        let alpha = pivot.log_derivative()?;
        let a0 = alpha.value();
        let a1 = alpha.first();
        two_v = two_v.sub(&alpha.derivative().scale(Complex64::new(2.0, 0.0)));
        for (jet, energy) in level.iter_mut().skip(i + 1) {
            let w = jet.value();
            let wp = jet.first();
            let wpp = jet.second();
            let v_new = wp - a0 * w;
            let s_new = wpp - a1 * w - a0 * wp;
            *jet = ode_jet_from_values(v_new, s_new, &shifted(&two_v, *energy), order);
        }
    }
    Ok((factors, two_v))
}

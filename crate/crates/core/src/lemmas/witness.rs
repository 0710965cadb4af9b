//! Witness quadruples for dilated sumsets, and the dilation minimizing additive energy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::energy::additive_energy_value;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::fset::FSet;
use crate::guards::Guards;
use crate::ops::{ratio_set_is_proper, sumset, Sign};

/// Shape of the witness expression, with `u = b − a` and `v = d − c`.
///
/// `PlusPlus`: `uP + uP + vP`. `PlusMinus`: `uP − uP + vP`. `Xi`: `uP + vP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVariant {
    PlusPlus,
    PlusMinus,
    Xi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkWitness {
    pub quadruple: [Elem; 4],
    pub variant: WitnessVariant,
    /// Minimum over the probes of the expression's cardinality.
    pub expr_card: usize,
    pub target_num: u64,
    pub target_den: u64,
}

impl GkWitness {
    pub fn meets_target(&self) -> bool {
        self.expr_card as u64 * self.target_den >= self.target_num
    }
}

/// Cardinality of the witness expression on `probe` for dilations `u`, `v`.
pub fn witness_expr(probe: &FSet, u: Elem, v: Elem, variant: WitnessVariant) -> Result<usize> {
    let up = probe.scale(u);
    let vp = probe.scale(v);
    let set = match variant {
        WitnessVariant::PlusPlus => sumset(&sumset(&up, &up, Sign::Plus)?, &vp, Sign::Plus)?,
        WitnessVariant::PlusMinus => sumset(&sumset(&up, &up, Sign::Minus)?, &vp, Sign::Plus)?,
        WitnessVariant::Xi => sumset(&up, &vp, Sign::Plus)?,
    };
    Ok(set.len())
}

pub fn gk_witness(a1: &FSet, variant: WitnessVariant, probes: &[FSet]) -> Result<GkWitness> {
    gk_witness_guarded(a1, variant, probes, &Guards::default())
}

/// Exhaustive search over quadruples `(a, b, c, d)` of `A₁` with `a ≠ b`,
/// maximizing the minimum expression size over `probes` (all of `A₁` if empty).
///
/// `PlusPlus` and `PlusMinus` require a proper ratio set, with target `|A₁|²`;
/// `Xi` requires the ratio set to be the whole field, with target `min(|A₁|², p)`.
/// Quadruples are scanned lexicographically and the first maximum wins.
pub fn gk_witness_guarded(
    a1: &FSet,
    variant: WitnessVariant,
    probes: &[FSet],
    guards: &Guards,
) -> Result<GkWitness> {
    if a1.len() < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            got: a1.len(),
        });
    }
    if a1.len() > guards.witness_max_card {
        return Err(Error::GuardExceeded(format!(
            "witness search needs |A1| <= {} (got {})",
            guards.witness_max_card,
            a1.len()
        )));
    }
    let proper = ratio_set_is_proper(a1)?;
    match variant {
        WitnessVariant::Xi if proper => {
            return Err(Error::BadParameters(
                "xi witnesses need a full ratio set".to_string(),
            ))
        }
        WitnessVariant::PlusPlus | WitnessVariant::PlusMinus if !proper => {
            return Err(Error::RatioSetFull)
        }
        _ => {}
    }
    for probe in probes {
        a1.same_field(probe)?;
        if probe.is_empty() || !probe.is_subset(a1) {
            return Err(Error::BadParameters(
                "probes must be nonempty subsets of A1".to_string(),
            ));
        }
    }
    let own = [a1.clone()];
    let probes = if probes.is_empty() { &own[..] } else { probes };
    let f = a1.prime_field();
    let elems = a1.to_vec();
    let mut memo: BTreeMap<(Elem, Elem), usize> = BTreeMap::new();
    let mut best: Option<([Elem; 4], usize)> = None;
    for &a in &elems {
        for &b in elems.iter().filter(|&&b| b != a) {
            let u = f.sub(b, a);
            for &c in &elems {
                for &d in &elems {
                    let v = f.sub(d, c);
                    let score = match memo.get(&(u, v)) {
                        Some(&s) => s,
                        None => {
                            let mut s = usize::MAX;
                            for probe in probes {
                                s = s.min(witness_expr(probe, u, v, variant)?);
                            }
                            memo.insert((u, v), s);
                            s
                        }
                    };
                    if best.is_none_or(|(_, s)| score > s) {
                        best = Some(([a, b, c, d], score));
                    }
                }
            }
        }
    }
    let (quadruple, expr_card) = best.expect("|A1| >= 2");
    let sq = (a1.len() * a1.len()) as u64;
    let target_num = match variant {
        WitnessVariant::Xi => sq.min(a1.p() as u64),
        _ => sq,
    };
    Ok(GkWitness {
        quadruple,
        variant,
        expr_card,
        target_num,
        target_den: 1,
    })
}

/// Minimizer of `E⁺(A₁, ξA₁)` over `ξ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiResult {
    pub xi: Elem,
    pub energy: u64,
    /// `|A₁|² + |A₁|⁴/(p−1)` as `bound_num / bound_den`.
    pub bound_num: u128,
    pub bound_den: u64,
}

impl XiResult {
    /// `energy·(p−1) ≤ |A₁|²(p−1) + |A₁|⁴`.
    pub fn bound_holds(&self) -> bool {
        self.energy as u128 * self.bound_den as u128 <= self.bound_num
    }
}

pub fn xi_search(a1: &FSet) -> Result<XiResult> {
    if a1.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut best: Option<(Elem, u64)> = None;
    for xi in 1..a1.p() {
        let e = additive_energy_value(a1, &a1.scale(xi))?;
        if best.is_none_or(|(_, b)| e < b) {
            best = Some((xi, e));
        }
    }
    let (xi, energy) = best.expect("p >= 3");
    let n = a1.len() as u128;
    let m = (a1.p() - 1) as u128;
    Ok(XiResult {
        xi,
        energy,
        bound_num: n * n * m + n.pow(4),
        bound_den: m as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn pair_witness() {
        let f = make_field(7).unwrap();
        let a = FSet::from_elems(&f, [1, 2]);
        let w = gk_witness(&a, WitnessVariant::PlusPlus, std::slice::from_ref(&a)).unwrap();
        assert_eq!(w.expr_card, 4);
        assert_eq!(w.quadruple, [1, 2, 1, 2]);
        assert!(w.meets_target());
        let m = gk_witness(&a, WitnessVariant::PlusMinus, &[]).unwrap();
        assert!(m.expr_card >= 3);
    }

    #[test]
    fn witness_preconditions() {
        let f = make_field(7).unwrap();
        let sub = FSet::from_elems(&f, [1, 2, 4]);
        assert_eq!(
            gk_witness(&sub, WitnessVariant::PlusPlus, &[]).unwrap_err(),
            Error::RatioSetFull
        );
        let xi = gk_witness(&sub, WitnessVariant::Xi, &[]).unwrap();
        assert_eq!(xi.target_num, 7);
        assert!(matches!(
            gk_witness(&sub, WitnessVariant::PlusPlus, &[FSet::from_elems(&f, [3])]),
            Err(Error::RatioSetFull)
        ));
        let one = FSet::from_elems(&f, [5]);
        assert!(matches!(
            gk_witness(&one, WitnessVariant::PlusPlus, &[]),
            Err(Error::TooSmall { needed: 2, got: 1 })
        ));
        let pair = FSet::from_elems(&f, [1, 2]);
        assert!(matches!(
            gk_witness(
                &pair,
                WitnessVariant::PlusPlus,
                &[FSet::from_elems(&f, [3])]
            ),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn xi_scan_values() {
        let f = make_field(7).unwrap();
        let r = xi_search(&FSet::from_elems(&f, [1, 2, 3])).unwrap();
        assert_eq!((r.xi, r.energy), (2, 13));
        assert!(r.bound_holds());
        let full = xi_search(&FSet::full(&f)).unwrap();
        assert_eq!(full.energy, 343);
        assert_eq!((full.bound_num, full.bound_den), (49 * 6 + 2401, 6));
        assert!(full.bound_holds());
        let g = make_field(5).unwrap();
        let s = xi_search(&FSet::from_elems(&g, [1])).unwrap();
        assert_eq!((s.xi, s.energy), (1, 1));
        assert!(xi_search(&FSet::empty(&g)).is_err());
    }
}

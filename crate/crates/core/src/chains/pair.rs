//! Chains on two sets: the bucket covering audit, unbalanced and balanced pairs.
//!
//! The covering construction compares `|aB ∩ a₀B|` with bucket thresholds,
//! which needs `a, a₀ ≠ 0`; it therefore runs on `A* = A∖{0}` and
//! `B* = B∖{0}`. Closing checks and final ratios use the full sets.

use super::report::{Builder, Case, ChainReport, Theorem};
use super::{canonical_pair, check_pair, describe, dyadic_log, frac, int, nat, pw, ChainOptions};
use crate::energy::multiplicative_energy_value;
use crate::error::{Error, Result};
use crate::exact::pow;
use crate::field::Elem;
use crate::fset::FSet;
use crate::lemmas::{
    chang_decompose, gk_witness_guarded, greedy_cover, mixed_plunnecke, plunnecke_audit, select_j0,
    BucketDecomposition, WitnessVariant, CHANG_CONSTANT_INV,
};
use crate::ops::{iterated, product_set, ratio_set_is_proper, signed_combination, sumset, Sign};

struct Sizes {
    a: usize,
    b: usize,
    a_plus_a: usize,
    a_plus_b: usize,
    ab: usize,
    b4: usize,
}

impl Sizes {
    fn new(a: &FSet, b: &FSet) -> Result<Sizes> {
        Ok(Sizes {
            a: a.len(),
            b: b.len(),
            a_plus_a: sumset(a, a, Sign::Plus)?.len(),
            a_plus_b: sumset(a, b, Sign::Plus)?.len(),
            ab: product_set(a, b)?.len(),
            b4: iterated(b, &[Sign::Plus; 4])?.len(),
        })
    }
}

fn nonzero(x: &FSet) -> FSet {
    x.without(0)
}

/// Pivot choice and per-bucket covering audit on the nonzero parts.
fn bucket_audit(
    a: &FSet,
    b: &FSet,
    sz: &Sizes,
    opts: &ChainOptions,
    out: &mut Builder,
) -> Result<Option<BucketDecomposition>> {
    let (an, bn) = (nonzero(a), nonzero(b));
    if an.len() < a.len() || bn.len() < b.len() {
        out.notes
            .push("0 removed from A and B for the covering audit".to_string());
    }
    if an.is_empty() || bn.is_empty() {
        out.notes
            .push("no nonzero elements on one side; covering audit skipped".to_string());
        return Ok(None);
    }
    let p = a.p() as usize;
    let d = chang_decompose(&an, &bn)?;
    let anbn = product_set(&an, &bn)?.len();
    let e = d.energy;
    let (na, nb) = (an.len(), bn.len());
    out.exact(
        "pivot pigeonhole: E(A*,B*) <= |A*| sum_a |aB* ∩ a0B*|",
        int(e),
        int(d.s_sum as u128 * na as u128),
    );
    out.exact(
        "energy floor: |A*|^2 |B*|^2 <= E(A*,B*) |A*B*|",
        int(pw(na, 2) * pw(nb, 2)),
        int(e as u128 * anbn as u128),
    );
    out.exact(
        "pivot row: |A*| |B*|^2/|A*B*| <= sum_a |aB* ∩ a0B*|",
        frac(nat(na) * pw(nb, 2), nat(anbn)),
        int(d.s_sum),
    );
    let f = a.prime_field();
    let a0 = d.pivot;
    let a0b = bn.scale(a0);
    let a0_mixed = iterated(&a0b, &[Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus])?.len();
    out.notes.push(format!("pivot a0 = {a0}"));
    for (&j, aj) in &d.buckets {
        if aj.is_empty() {
            continue;
        }
        if aj.len() < 2 {
            out.notes
                .push(format!("bucket {j}: single element, no quadruple"));
            continue;
        }
        let tag = format!("bucket {j}:");
        let m = aj.len();
        let proper = ratio_set_is_proper(aj)?;
        let variant = if proper {
            WitnessVariant::PlusPlus
        } else {
            WitnessVariant::Xi
        };
        let quad: [Elem; 4] = match gk_witness_guarded(aj, variant, &[], &opts.guards) {
            Ok(w) => {
                out.ge(
                    &format!("{tag} witness expression vs its target"),
                    int(w.expr_card as u64),
                    frac(w.target_num, w.target_den),
                );
                w.quadruple
            }
            Err(Error::GuardExceeded(_)) => {
                let v = aj.to_vec();
                out.notes.push(format!(
                    "{tag} quadruple taken from the two smallest elements (heuristic)"
                ));
                [v[0], v[1], v[0], v[1]]
            }
            Err(e) => return Err(e),
        };
        let [qa, qb, qc, qd] = quad;
        // (multiplier, cover mode): -aA_j and -cA_j by c + (xB ∩ a0B), bA_j and dA_j by c - (xB ∩ a0B)
        let legs = [
            (f.neg(qa), qa, Sign::Plus),
            (qb, qb, Sign::Minus),
            (f.neg(qc), qc, Sign::Plus),
            (qd, qd, Sign::Minus),
        ];
        let mut kept = aj.clone();
        let mut translate_product = nat(1);
        for (i, &(mult, shape_of, mode)) in legs.iter().enumerate() {
            let target = aj.scale(mult);
            let shape = bn.scale(shape_of).intersection(&a0b);
            let cov = greedy_cover(&target, &shape, mode)?;
            let leg = format!("{tag} cover {}", i + 1);
            out.exact(
                &format!("{leg} coverage: 100 |uncovered| <= |target|"),
                int(nat(100 * (cov.target_card - cov.covered.len()))),
                int(nat(cov.target_card)),
            );
            out.exact(
                &format!("{leg} budget: translates <= ceil(ln(100) K) + 1"),
                int(nat(cov.translates.len())),
                int(cov.budget),
            );
            out.exact(
                &format!("{leg} doubling ratio: K 2^(j-1) <= |A+B|"),
                frac(&cov.ratio_k.num * pow(2u32, j - 1), cov.ratio_k.den.clone()),
                int(nat(sz.a_plus_b)),
            );
            translate_product *= cov.translates.len() as u64;
            let inv = f.inv(mult).expect("nonzero multiplier");
            kept = kept.intersection(&cov.covered.scale(inv));
        }
        out.exact(
            &format!("{tag} retained part: 4|A_j| <= 5|A'|"),
            int(nat(4 * m)),
            int(nat(5 * kept.len())),
        );
        if kept.is_empty() {
            continue;
        }
        let mixed = signed_combination(&[
            (&kept.scale(qa), Sign::Minus),
            (&kept.scale(qb), Sign::Plus),
            (&kept.scale(qc), Sign::Minus),
            (&kept.scale(qd), Sign::Plus),
        ])?
        .len();
        out.exact(
            &format!(
                "{tag} covering containment: |-aA'+bA'-cA'+dA'| <= prod|T_i| |a0B+a0B-a0B-a0B|"
            ),
            int(nat(mixed)),
            int(&translate_product * a0_mixed as u64),
        );
        let scale4 = pow(2u32, 4 * j);
        out.le(
            &format!("{tag} covered sum: |-aA'+bA'-cA'+dA'| vs (|A+B|/2^j)^4 |a0B+a0B-a0B-a0B|"),
            int(nat(mixed)),
            frac(pw(sz.a_plus_b, 4) * a0_mixed as u64, scale4.clone()),
        );
        out.le(
            &format!("{tag} bucket cube: |A_j|^3 vs |A+A| (|A+B|/2^j)^4 |B+B+B+B|"),
            int(pw(m, 3)),
            frac(nat(sz.a_plus_a) * pw(sz.a_plus_b, 4) * nat(sz.b4), scale4),
        );
        let j16 = pow(16u32, j);
        let proper_rhs = frac(pw(sz.a_plus_b, 10), pw(sz.a, 3) * nat(sz.b));
        if proper {
            out.le(
                &format!("{tag} proper ratio set: 16^j |A_j|^3 vs |A+B|^10/(|A|^3 |B|)"),
                int(&j16 * pw(m, 3)),
                proper_rhs.clone(),
            );
        } else {
            out.le(
                &format!("{tag} full ratio set: 16^j min(|A_j|^2, p) vs |A+B|^8/|A|^3"),
                int(&j16 * nat((m * m).min(p))),
                frac(pw(sz.a_plus_b, 8), pw(sz.a, 3)),
            );
        }
        if m * m <= p {
            out.le(
                &format!("{tag} small bucket: 16^j |A_j|^3 vs |A+B|^10/(|A|^3 |B|)"),
                int(&j16 * pw(m, 3)),
                proper_rhs,
            );
        }
    }
    Ok(Some(d))
}

fn closing_checks(a: &FSet, b: &FSet, out: &mut Builder) -> Result<()> {
    let pr = plunnecke_audit(a, b, 4)?;
    for c in [pr.doubling, pr.iterated, mixed_plunnecke(a, b)?] {
        out.exact(
            &format!("sumset calculus: {}", c.name),
            int(c.lhs),
            int(c.rhs),
        );
    }
    Ok(())
}

fn canonical_inputs(a: &FSet, b: &FSet, out: &mut Builder) -> Result<(FSet, FSet)> {
    check_pair(a, b)?;
    let (u, ua, ub) = canonical_pair(a, b);
    if u != 1 {
        out.notes
            .push(format!("computed on the dilates {u}·A, {u}·B"));
    }
    Ok((ua, ub))
}

pub fn prop51_audit(a: &FSet, b: &FSet) -> Result<ChainReport> {
    prop51_audit_with(a, b, &ChainOptions::default())
}

pub fn prop51_audit_with(a: &FSet, b: &FSet, opts: &ChainOptions) -> Result<ChainReport> {
    let mut out = Builder::default();
    let (ca, cb) = canonical_inputs(a, b, &mut out)?;
    let sz = Sizes::new(&ca, &cb)?;
    bucket_audit(&ca, &cb, &sz, opts, &mut out)?;
    closing_checks(&ca, &cb, &mut out)?;
    Ok(out.finish(
        Theorem::P51,
        Sign::Plus,
        vec![describe("A", a), describe("B", b)],
        None,
        None,
    ))
}

/// Level choice, branch and final bounds for one orientation `(X, Y)`.
fn orientation(
    x: &FSet,
    y: &FSet,
    d: Option<&BucketDecomposition>,
    out: &mut Builder,
) -> Result<(Case, String, String)> {
    let p = x.p() as usize;
    let sz = Sizes::new(x, y)?;
    let l = dyadic_log(y.len());
    let l4 = pow(l, 4);
    let mut case = Case::Spade;
    if let Some(d) = d {
        let j = select_j0(d)?;
        out.exact(
            "level pigeonhole: s_sum <= 2 L 2^j0 |A_j0|",
            int(d.s_sum),
            int(j.certificate * 2 * j.levels as u128),
        );
        out.ge(
            "level mass: 2^j0 |A_j0| vs |A| |B|^2/(|AB| L)",
            int(j.certificate),
            frac(nat(sz.a) * pw(sz.b, 2), nat(sz.ab) * l as u64),
        );
        let aj = &d.buckets[&j.j0];
        let m = aj.len();
        if m >= 2 && !ratio_set_is_proper(aj)? && m * m > p {
            case = Case::Club;
        }
        out.notes.push(format!("j0 = {}, |A_j0| = {m}", j.j0));
    }
    let lhs10 = pw(sz.a_plus_b, 10) * pw(sz.ab, 4);
    let small = "small-set final: |A+B|^10 |AB|^4 L^4 vs |A|^6 |B|^9";
    out.ge(small, int(&lhs10 * &l4), int(pw(sz.a, 6) * pw(sz.b, 9)));
    let spade = "proper-case final: (|A+B|^10 |AB|^4 L^4)^2 p vs (|A|^7 |B|^9)^2";
    let t = &lhs10 * &l4;
    let r = pw(sz.a, 7) * pw(sz.b, 9);
    out.ge(spade, int(&t * &t * nat(p)), int(&r * &r));
    let club = "full-case final: |A+B|^8 |AB|^4 L^4 vs p |A|^3 |B|^8";
    out.ge(
        club,
        int(pw(sz.a_plus_b, 8) * pw(sz.ab, 4) * &l4),
        int(nat(p) * pw(sz.a, 3) * pw(sz.b, 8)),
    );
    let large = match case {
        Case::Spade => spade,
        Case::Club => club,
    };
    Ok((case, small.to_string(), large.to_string()))
}

pub fn chain_unbalanced(a: &FSet, b: &FSet) -> Result<ChainReport> {
    chain_unbalanced_with(a, b, &ChainOptions::default())
}

/// Labeled `T13` when both `|A|² ≤ p` and `|B|² ≤ p`, otherwise `T14`. Both
/// orientations `(A, B)` and `(B, A)` are reported.
pub fn chain_unbalanced_with(a: &FSet, b: &FSet, opts: &ChainOptions) -> Result<ChainReport> {
    let mut out = Builder::default();
    let (ca, cb) = canonical_inputs(a, b, &mut out)?;
    let p = ca.p() as usize;
    let small_sets = ca.len() * ca.len() <= p && cb.len() * cb.len() <= p;
    let theorem = if small_sets {
        Theorem::T13
    } else {
        Theorem::T14
    };
    let sz = Sizes::new(&ca, &cb)?;
    let d = bucket_audit(&ca, &cb, &sz, opts, &mut out)?;
    closing_checks(&ca, &cb, &mut out)?;
    out.with_prefix("[A,B]");
    let (case, small, large) = orientation(&ca, &cb, d.as_ref(), &mut out)?;
    let fin = out.final_of(if small_sets { &small } else { &large });
    let (bn, an) = (nonzero(&cb), nonzero(&ca));
    let back = if an.is_empty() || bn.is_empty() {
        None
    } else {
        Some(chang_decompose(&bn, &an)?)
    };
    out.with_prefix("[B,A]");
    orientation(&cb, &ca, back.as_ref(), &mut out)?;
    let case = (!small_sets).then_some(case);
    Ok(out.finish(
        theorem,
        Sign::Plus,
        vec![describe("A", a), describe("B", b)],
        case,
        fin,
    ))
}

pub fn chain_balanced(a: &FSet, b: &FSet) -> Result<ChainReport> {
    let mut out = Builder::default();
    let (ca, cb) = canonical_inputs(a, b, &mut out)?;
    let (na, nb) = (ca.len(), cb.len());
    if na > 2 * nb || nb > 2 * na {
        out.warnings.push(format!(
            "|A| = {na} and |B| = {nb} differ by more than a factor 2"
        ));
    }
    if na * na > ca.p() as usize {
        out.warnings
            .push(format!("|A|^2 = {} exceeds p = {}", na * na, ca.p()));
    }
    let sz = Sizes::new(&ca, &cb)?;
    let d = chang_decompose(&ca, &cb)?;
    let e = multiplicative_energy_value(&ca, &cb);
    out.exact(
        "pivot pigeonhole: E(A,B) <= |A| sum_a |a0B ∩ aB|",
        int(e),
        int(d.s_sum as u128 * na as u128),
    );
    out.exact(
        "energy floor: |A|^2 |B|^2 <= E(A,B) |AB|",
        int(pw(na, 2) * pw(nb, 2)),
        int(e as u128 * sz.ab as u128),
    );
    out.exact(
        "dyadic mass: s_sum <= sum_j 2^j |A_j|",
        int(d.s_sum),
        int(d.dyadic_mass()),
    );
    out.exact(
        "bucket constant: E(A,B)^4 <= 400000 max_j 16^j|A_j|^3 |A|^4 max_j|A_j|",
        int(d.rhs_num.clone()),
        int(&d.lhs * pw(na, 4) * (d.max_bucket() as u64 * CHANG_CONSTANT_INV)),
    );
    out.ge(
        "bucket lower bound: max_j 16^j|A_j|^3 vs E(A,B)^4/(|A|^4 |B|)",
        int(d.lhs.clone()),
        frac(d.rhs_num.clone(), d.rhs_den.clone()),
    );
    out.le(
        "bucket upper bound: max_j 16^j|A_j|^3 vs |A+B|^10/|A|^4",
        int(d.lhs.clone()),
        frac(pw(sz.a_plus_b, 10), pw(na, 4)),
    );
    out.ge(
        "energy transfer: E(A,B)^4/|A|^5 vs |A|^11/|AB|^4",
        frac(pow(e, 4), pw(na, 5)),
        frac(pw(na, 11), pw(sz.ab, 4)),
    );
    let name = "final: |A+B|^10 |AB|^4 vs |A|^15";
    out.ge(
        name,
        int(pw(sz.a_plus_b, 10) * pw(sz.ab, 4)),
        int(pw(na, 15)),
    );
    let fin = out.final_of(name);
    Ok(out.finish(
        Theorem::T15,
        Sign::Plus,
        vec![describe("A", a), describe("B", b)],
        None,
        fin,
    ))
}

//! Chains on a single set: small sets, large sets and the energy estimates.

use num_bigint::BigUint;

use super::report::{Builder, Case, ChainReport, Theorem};
use super::{canonical_pair, describe, dyadic_log, frac, int, nat, pw, ChainOptions};
use crate::error::{Error, Result};
use crate::exact::pow;
use crate::fset::FSet;
use crate::lemmas::{
    chang_decompose, descent_subset, gk_witness_guarded, katz_shen_subset_guarded, select_j0,
    BucketDecomposition, WitnessVariant, CHANG_CONSTANT_INV,
};
use crate::ops::{iterated, product_set, ratio_set_is_proper, signed_combination, sumset, Sign};

/// Quantities produced by the shared front end of the small- and large-set chains.
struct Front {
    z: FSet,
    a_pm: usize,
    aa: usize,
    z_pm: usize,
    z4: usize,
    zz: usize,
    d: BucketDecomposition,
}

fn four_fold(x: &FSet, sign: Sign) -> Result<FSet> {
    iterated(x, &[Sign::Plus, sign, sign, sign])
}

/// Subset extraction, the containment step and the bucket decomposition of `Z` against itself.
fn front_end(a: &FSet, sign: Sign, opts: &ChainOptions, b: &mut Builder) -> Result<Front> {
    let s = sign.symbol();
    let n = a.len();
    let shifted = sign.apply(a);
    let tail = vec![shifted.clone(), shifted.clone(), shifted];
    let eps = num_rational::Ratio::from_integer(1) - opts.retention;
    if eps <= num_rational::Ratio::from_integer(0) {
        return Err(Error::BadParameters("retention must lie in (0, 1)".into()));
    }
    let pick = if n <= opts.guards.subset_max_base {
        katz_shen_subset_guarded(a, &tail, eps, &opts.guards)?
    } else {
        b.notes.push(format!(
            "Z chosen by greedy removal descent (heuristic): |A| = {n} exceeds the exhaustive limit {}",
            opts.guards.subset_max_base
        ));
        descent_subset(a, &tail, eps)?
    };
    let z = pick.subset;
    let a_pm = sumset(a, a, sign)?.len();
    let aa = product_set(a, a)?.len();
    let z_pm = sumset(&z, &z, sign)?.len();
    let z4 = four_fold(&z, sign)?.len();
    let za3 = signed_combination(&[(&z, Sign::Plus), (a, sign), (a, sign), (a, sign)])?.len();
    let zz = product_set(&z, &z)?.len();
    let (rn, rd) = (*opts.retention.numer(), *opts.retention.denom());
    b.exact(
        "subset keeps the retention fraction: r|A| <= |Z|",
        frac(rn * n as u64, rd),
        int(nat(z.len())),
    );
    b.le(
        &format!("subset sumset: |Z{s}A{s}A{s}A| vs (|A{s}A|/|A|)^3 |Z|"),
        int(nat(za3)),
        frac(pw(a_pm, 3) * nat(z.len()), pw(n, 3)),
    );
    b.exact(
        &format!("containment: |Z{s}Z{s}Z{s}Z| <= |Z{s}A{s}A{s}A|"),
        int(nat(z4)),
        int(nat(za3)),
    );
    b.le(
        &format!("four-fold growth: |Z{s}Z{s}Z{s}Z| vs |A{s}A|^3/|A|^2"),
        int(nat(z4)),
        frac(pw(a_pm, 3), pw(n, 2)),
    );
    let d = chang_decompose(&z, &z)?;
    let zc = z.len();
    let e = d.energy;
    b.exact(
        "pivot pigeonhole: E(Z,Z) <= |Z| sum_z |z0 Z ∩ z Z|",
        int(e),
        int(d.s_sum as u128 * zc as u128),
    );
    b.exact(
        "energy floor: |Z|^4 <= E(Z,Z) |ZZ|",
        int(pw(zc, 4)),
        int(e as u128 * zz as u128),
    );
    b.exact(
        "fourth-power floor: |Z|^11/|ZZ|^4 <= E(Z,Z)^4/|Z|^5",
        frac(pw(zc, 11), pw(zz, 4)),
        frac(pow(e, 4), pw(zc, 5)),
    );
    b.exact(
        "dyadic mass: s_sum <= sum_j 2^j |Z_j|",
        int(d.s_sum),
        int(d.dyadic_mass()),
    );
    b.exact(
        "bucket constant: E(Z,Z)^4 <= 400000 max_j 16^j|Z_j|^3 |Z|^5",
        int(d.rhs_num.clone()),
        int(&d.lhs * &d.rhs_den * CHANG_CONSTANT_INV),
    );
    b.ge(
        "bucket lower bound: max_j 16^j|Z_j|^3 vs E(Z,Z)^4/|Z|^5",
        int(d.lhs.clone()),
        frac(d.rhs_num.clone(), d.rhs_den.clone()),
    );
    b.le(
        &format!("bucket upper bound: max_j 16^j|Z_j|^3 vs |Z{s}Z|^5 |Z{s}Z{s}Z{s}Z|"),
        int(d.lhs.clone()),
        int(pw(z_pm, 5) * nat(z4)),
    );
    b.ge(
        "subset transfer: |Z|^11/|ZZ|^4 vs |A|^11/|AA|^4",
        frac(pw(zc, 11), pw(zz, 4)),
        frac(pw(n, 11), pw(aa, 4)),
    );
    Ok(Front {
        z,
        a_pm,
        aa,
        z_pm,
        z4,
        zz,
        d,
    })
}

fn canonical_single(a: &FSet, b: &mut Builder) -> Result<FSet> {
    if a.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let (u, ua, _) = canonical_pair(a, a);
    if u != 1 {
        b.notes.push(format!("computed on the dilate {u}·A"));
    }
    Ok(ua)
}

pub fn chain_small(a: &FSet, sign: Sign) -> Result<ChainReport> {
    chain_small_with(a, sign, &ChainOptions::default())
}

pub fn chain_small_with(a: &FSet, sign: Sign, opts: &ChainOptions) -> Result<ChainReport> {
    let mut b = Builder::default();
    let c = canonical_single(a, &mut b)?;
    let n = c.len();
    if (n * n) as u64 > c.p() as u64 {
        b.warnings
            .push(format!("|A|^2 = {} exceeds p = {}", n * n, c.p()));
    }
    let f = front_end(&c, sign, opts, &mut b)?;
    let s = sign.symbol();
    let name = format!("final: |A{s}A|^8 |AA|^4 vs |A|^13");
    b.ge(&name, int(pw(f.a_pm, 8) * pw(f.aa, 4)), int(pw(n, 13)));
    let fin = b.final_of(&name);
    Ok(b.finish(Theorem::T11, sign, vec![describe("A", a)], None, fin))
}

pub fn chain_large(a: &FSet, sign: Sign) -> Result<ChainReport> {
    chain_large_with(a, sign, &ChainOptions::default())
}

pub fn chain_large_with(a: &FSet, sign: Sign, opts: &ChainOptions) -> Result<ChainReport> {
    let mut b = Builder::default();
    let c = canonical_single(a, &mut b)?;
    let n = c.len();
    let p = c.p() as usize;
    if n * n < p {
        b.warnings
            .push(format!("|A|^2 = {} is below p = {p}", n * n));
    }
    let s = sign.symbol();
    let f = front_end(&c, sign, opts, &mut b)?;
    let zc = f.z.len();
    b.exact(
        "pivot row: |Z|^3 <= s_sum |ZZ|",
        int(pw(zc, 3)),
        int(f.d.s_sum as u128 * f.zz as u128),
    );
    let j = select_j0(&f.d)?;
    b.exact(
        "level pigeonhole: s_sum <= 2 L 2^j0 |Z_j0|",
        int(f.d.s_sum),
        int(j.certificate * 2 * j.levels as u128),
    );
    b.ge(
        "level mass: 2^j0 |Z_j0| vs |A|^3/|AA|",
        int(j.certificate),
        frac(pw(n, 3), nat(f.aa)),
    );
    let zj = f.d.buckets[&j.j0].clone();
    let m = zj.len();
    let full = m >= 2 && !ratio_set_is_proper(&zj)?;
    let case = if full && m * m > p {
        Case::Club
    } else {
        Case::Spade
    };
    b.notes.push(format!(
        "j0 = {}, |Z_j0| = {m}, ratio set of Z_j0 {}",
        j.j0,
        if m < 2 {
            "undefined"
        } else if full {
            "is the whole field"
        } else {
            "is proper"
        }
    ));
    if m >= 2 {
        let variant = match (full, sign) {
            (true, _) => WitnessVariant::Xi,
            (false, Sign::Plus) => WitnessVariant::PlusPlus,
            (false, Sign::Minus) => WitnessVariant::PlusMinus,
        };
        match gk_witness_guarded(&zj, variant, &[], &opts.guards) {
            Ok(w) => {
                b.notes.push(format!(
                    "witness quadruple {:?} ({:?})",
                    w.quadruple, variant
                ));
                b.ge(
                    "witness expression vs its target",
                    int(w.expr_card as u64),
                    frac(w.target_num, w.target_den),
                );
            }
            Err(Error::GuardExceeded(msg)) => b.warnings.push(format!("witness skipped: {msg}")),
            Err(e) => return Err(e),
        }
    }
    let j16 = pow(16u32, j.j0);
    b.le(
        &format!("level bound: 16^j0 |Z_j0|^3 vs |Z{s}Z|^5 |Z{s}Z{s}Z{s}Z|"),
        int(&j16 * pw(m, 3)),
        int(pw(f.z_pm, 5) * nat(f.z4)),
    );
    b.le(
        &format!("full ratio set bound: p vs (|Z{s}Z|/2^j0)^4 |Z{s}Z{s}Z{s}Z|"),
        int(nat(p)),
        frac(pw(f.z_pm, 4) * nat(f.z4), pow(2u32, 4 * j.j0)),
    );
    let spade = format!("proper-case final: (|A{s}A|^8 |AA|^4)^2 p vs |A|^28");
    let club = format!("full-case final: |A{s}A|^7 |AA|^4 vs |A|^10 p");
    let lhs8 = pw(f.a_pm, 8) * pw(f.aa, 4);
    b.ge(&spade, int(&lhs8 * &lhs8 * nat(p)), int(pw(n, 28)));
    b.ge(
        &club,
        int(pw(f.a_pm, 7) * pw(f.aa, 4)),
        int(pw(n, 10) * nat(p)),
    );
    let fin = b.final_of(match case {
        Case::Spade => &spade,
        Case::Club => &club,
    });
    Ok(b.finish(Theorem::T12, sign, vec![describe("A", a)], Some(case), fin))
}

pub fn energy_bound_audit(a: &FSet) -> Result<ChainReport> {
    let mut b = Builder::default();
    let c = canonical_single(a, &mut b)?;
    let n = c.len();
    let e = crate::energy::multiplicative_energy_value(&c, &c);
    let aa = product_set(&c, &c)?.len();
    b.exact(
        "energy floor: |A|^4 <= E(A,A) |AA|",
        int(pw(n, 4)),
        int(e as u128 * aa as u128),
    );
    let e4 = int(pow(e, 4));
    let diff = sumset(&c, &c, Sign::Minus)?.len();
    let mixed = iterated(&c, &[Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus])?.len();
    let l = dyadic_log(n);
    let base: BigUint = pw(n, 5) * pw(diff, 5) * nat(mixed);
    b.le(
        "with log factor: E(A,A)^4 vs |A|^5 |A-A|^5 |A+A-A-A| L^4",
        e4.clone(),
        int(&base * pow(l, 4)),
    );
    let dropped = "without log factor: E(A,A)^4 vs |A|^5 |A-A|^5 |A+A-A-A|";
    b.le(dropped, e4.clone(), int(base));
    for sign in Sign::both() {
        let s = sign.symbol();
        let pm = sumset(&c, &c, sign)?.len();
        let four = four_fold(&c, sign)?.len();
        b.le(
            &format!("four-fold form: E(A,A)^4 vs |A|^5 |A{s}A|^5 |A{s}A{s}A{s}A|"),
            e4.clone(),
            int(pw(n, 5) * pw(pm, 5) * nat(four)),
        );
        b.le(
            &format!("doubling form: E(A,A)^4 vs |A|^3 |A{s}A|^8"),
            e4.clone(),
            int(pw(n, 3) * pw(pm, 8)),
        );
    }
    let fin = b.final_of(dropped);
    Ok(b.finish(
        Theorem::Remark,
        Sign::Plus,
        vec![describe("A", a)],
        None,
        fin,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Frac;
    use crate::field::make_field;

    #[test]
    fn short_interval_small_chain() {
        let f = make_field(7).unwrap();
        let a = FSet::from_elems(&f, [1, 2, 3]);
        let r = chain_small(&a, Sign::Plus).unwrap();
        assert!(!r.violation, "{:?}", r.failures());
        let fin = r.final_ratio.unwrap();
        assert_eq!(fin.exact, Frac::new(pow(5u32, 12), pow(3u32, 13)).reduced());
    }

    #[test]
    fn singleton_chains_are_trivial() {
        let f = make_field(11).unwrap();
        for x in [0, 4] {
            let a = FSet::from_elems(&f, [x]);
            for sign in Sign::both() {
                for r in [
                    chain_small(&a, sign).unwrap(),
                    chain_large(&a, sign).unwrap(),
                ] {
                    assert!(!r.violation, "{:?}", r.failures());
                }
            }
            let r = energy_bound_audit(&a).unwrap();
            assert!(r.steps.iter().all(|s| s.ratio() == Frac::int(1u32)));
        }
    }

    #[test]
    fn large_chain_branches() {
        let f = make_field(5).unwrap();
        let r = chain_large(&FSet::from_elems(&f, [1, 2]), Sign::Plus).unwrap();
        assert_eq!(r.case, Some(Case::Spade));
        assert!(!r.violation);
        let g = make_field(11).unwrap();
        let r = chain_large(&FSet::from_elems(&g, 1..11), Sign::Minus).unwrap();
        assert!(!r.violation, "{:?}", r.failures());
    }

    #[test]
    fn geometric_progression() {
        let f = make_field(31).unwrap();
        let a = FSet::from_elems(&f, [1, 2, 4, 8, 16]);
        let r = chain_small(&a, Sign::Plus).unwrap();
        assert!(!r.violation);
        assert!(r.final_ratio.unwrap().exact.is_positive());
    }

    #[test]
    fn reports_are_dilation_invariant() {
        let f = make_field(13).unwrap();
        let a = FSet::from_elems(&f, [0, 1, 3, 4, 9]);
        let ua = a.scale(7);
        for sign in Sign::both() {
            let x = chain_large(&a, sign).unwrap();
            let y = chain_large(&ua, sign).unwrap();
            let ratios = |r: &ChainReport| r.steps.iter().map(|s| s.ratio()).collect::<Vec<_>>();
            assert_eq!(ratios(&x), ratios(&y));
            assert_eq!(x.case, y.case);
        }
    }
}

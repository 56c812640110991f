use std::fmt::Debug;

use super::{ensure, fail, job, sampler, Job};
use crate::error::SeriesError;
use crate::operad::{Instance, Multiplicative};
use crate::sample::Sampler;
use crate::series::{Carrier, Embedding, GradedSeries, SemidirectElement};

type R<T> = Result<T, SeriesError>;

/// Associativity, two-sided unit and two-sided inverse on random triples,
/// with closure tested by `member`.
fn axioms<T: PartialEq + Debug>(
    s: &mut Sampler,
    samples: usize,
    one: &T,
    mut sample: impl FnMut(&mut Sampler) -> T,
    mul: impl Fn(&T, &T) -> R<T>,
    inv: impl Fn(&T) -> R<T>,
    member: impl Fn(&T) -> bool,
) -> Result<usize, String> {
    for _ in 0..samples {
        let (a, b, c) = (sample(s), sample(s), sample(s));
        let ab = mul(&a, &b).map_err(fail)?;
        ensure!(member(&ab), "product left the group: {ab:?}");
        let lhs = mul(&ab, &c).map_err(fail)?;
        let rhs = mul(&a, &mul(&b, &c).map_err(fail)?).map_err(fail)?;
        ensure!(lhs == rhs, "associativity fails for {a:?}, {b:?}, {c:?}");
        ensure!(mul(&a, one).map_err(fail)? == a, "right unit fails for {a:?}");
        ensure!(mul(one, &a).map_err(fail)? == a, "left unit fails for {a:?}");
        let ai = inv(&a).map_err(fail)?;
        ensure!(member(&ai), "inverse left the group: {ai:?}");
        ensure!(mul(&a, &ai).map_err(fail)? == *one, "right inverse fails for {a:?}");
        ensure!(mul(&ai, &a).map_err(fail)? == *one, "left inverse fails for {a:?}");
    }
    Ok(samples)
}

fn monoid_group(m: Multiplicative, n: usize, s: &mut Sampler, samples: usize) -> Result<usize, String> {
    let carrier = Carrier::Monoid(m);
    let one = GradedSeries::one(carrier.clone(), n);
    axioms(
        s,
        samples,
        &one,
        |s| s.group_series(&carrier, n),
        GradedSeries::mul,
        GradedSeries::inverse,
        GradedSeries::is_group_element,
    )
}

fn dif_group(inst: Instance, n: usize, s: &mut Sampler, samples: usize) -> Result<usize, String> {
    let one = GradedSeries::one(Carrier::Operad(inst), n);
    axioms(
        s,
        samples,
        &one,
        |s| s.operad_series(inst, n),
        GradedSeries::compose,
        GradedSeries::comp_inverse,
        GradedSeries::is_group_element,
    )
}

fn embedded_group(m: Multiplicative, side: Embedding, n: usize, s: &mut Sampler, samples: usize) -> Result<usize, String> {
    let one = GradedSeries::one(Carrier::Operad(m.instance()), n);
    axioms(
        s,
        samples,
        &one,
        |s| s.embedded(&m, side, n),
        GradedSeries::compose,
        GradedSeries::comp_inverse,
        |x| x.unembed(side, &m).is_ok(),
    )
}

fn alpha_group(n: usize, s: &mut Sampler, samples: usize) -> Result<usize, String> {
    let one = GradedSeries::one(Carrier::Operad(Instance::Dup), n);
    axioms(
        s,
        samples,
        &one,
        |s| s.alpha_member(n),
        GradedSeries::compose,
        GradedSeries::comp_inverse,
        GradedSeries::alpha_membership,
    )
}

fn semidirect_group(m: Multiplicative, n: usize, s: &mut Sampler, samples: usize) -> Result<usize, String> {
    let one = SemidirectElement::identity(&m, n);
    let carrier = Carrier::Monoid(m.clone());
    axioms(
        s,
        samples,
        &one,
        |s| {
            let phi = s.operad_series(m.instance(), n);
            let f = s.group_series(&carrier, n);
            SemidirectElement::new(phi, f).expect("matching instances")
        },
        SemidirectElement::mul,
        SemidirectElement::inverse,
        |x| x.phi.is_group_element() && x.f.is_group_element(),
    )
}

/// The group-axiom checks at truncation `n` with `samples` triples each.
pub fn group_checks(n: usize, seed: u64, samples: usize) -> Vec<Job> {
    let mut out: Vec<Job> = Vec::new();
    for (label, m) in [("over", Multiplicative::dup_over()), ("under", Multiplicative::dup_under())] {
        let name = format!("group {label} invertible series");
        let m2 = m.clone();
        out.push(job(name.clone(), move || monoid_group(m2, n, &mut sampler(seed, &name), samples)));
        for side in [Embedding::Lambda, Embedding::Rho] {
            let name = format!("group {} subgroup ({label})", side.name());
            let m2 = m.clone();
            out.push(job(name.clone(), move || embedded_group(m2, side, n, &mut sampler(seed, &name), samples)));
        }
        let name = format!("group semidirect dif x {label}");
        out.push(job(name.clone(), move || semidirect_group(m, n, &mut sampler(seed, &name), samples)));
    }
    let name = "group as invertible series".to_string();
    out.push(job(name.clone(), move || monoid_group(Multiplicative::as_plus(), n, &mut sampler(seed, &name), samples)));
    for inst in [Instance::Dup, Instance::As] {
        let name = format!("group dif over {inst}");
        out.push(job(name.clone(), move || dif_group(inst, n, &mut sampler(seed, &name), samples)));
    }
    let name = "group alpha".to_string();
    out.push(job(name.clone(), move || alpha_group(n, &mut sampler(seed, &name), samples)));
    let name = "group semidirect dif x as".to_string();
    out.push(job(name.clone(), move || semidirect_group(Multiplicative::as_plus(), n, &mut sampler(seed, &name), samples)));
    out
}

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    group_checks(n, seed, 50)
}

use super::{alpha_recursion, ensure, fail, job, sampler, Job};
use crate::coeff::RingValue;
use crate::operad::{Instance, Multiplicative};
use crate::oracle::{as_poly, brute_decompositions, compose_by_powers, from_poly, Poly1};
use crate::sample::Sampler;
use crate::series::Carrier;
use crate::tree::enumerate_trees;

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    vec![
        job("decompositions against brute force", move || decompositions(n + 2)),
        job("composition against powers", move || powers(&mut sampler(seed, "powers"), n, 20)),
        job("classic series against polynomials", move || {
            classic(&mut sampler(seed, "classic"), n + 2, 20)
        }),
        job("alpha closed form against recursion", move || alpha_recursion(n)),
    ]
}

fn decompositions(max: usize) -> Result<usize, String> {
    let mut cases = 0;
    for n in 1..=max {
        let table = brute_decompositions(n);
        for u in enumerate_trees(n) {
            let fast = u.decompositions().map_err(fail)?;
            ensure!(table.get(&u) == Some(&*fast), "decompositions of {u}");
            cases += 1;
        }
    }
    Ok(cases)
}

fn powers(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    for _ in 0..samples {
        let (phi, psi) = (s.operad_series(Instance::Dup, n), s.operad_series(Instance::Dup, n));
        let fast = phi.compose(&psi).map_err(fail)?;
        ensure!(fast == compose_by_powers(&phi, &psi), "φ={phi:?} ψ={psi:?}");
    }
    Ok(samples)
}

fn x_poly(deg: usize) -> Poly1 {
    let mut v = vec![RingValue::zero(); deg + 1];
    v[1] = RingValue::one();
    Poly1(v)
}

/// Products, inverses, compositions, compositional inverses and the action
/// over the integers agree with dense polynomial arithmetic.
fn classic(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let inv = Carrier::Monoid(Multiplicative::as_plus());
    let dif = Carrier::Operad(Instance::As);
    let d = n + 1;
    for _ in 0..samples {
        let (f, g) = (s.group_series(&inv, n), s.group_series(&inv, n));
        let (pf, pg) = (as_poly(&f), as_poly(&g));
        ensure!(f.mul(&g).map_err(fail)? == from_poly(&pf.mul(&pg, n), inv.clone(), n), "product");
        let fi = as_poly(&f.inverse().map_err(fail)?);
        ensure!(pf.mul(&fi, n) == from_poly_dense(1, n), "inverse");
        let (phi, psi) = (s.operad_series(Instance::As, n), s.operad_series(Instance::As, n));
        let (pphi, ppsi) = (as_poly(&phi), as_poly(&psi));
        let lhs = phi.compose(&psi).map_err(fail)?;
        ensure!(lhs == from_poly(&pphi.substitute(&ppsi, d), dif.clone(), n), "composition");
        let pinv = as_poly(&phi.comp_inverse().map_err(fail)?);
        ensure!(pphi.substitute(&pinv, d) == x_poly(d), "compositional inverse");
        let f = s.group_series(&inv, n + 1);
        let lhs = f.act(&psi).map_err(fail)?;
        ensure!(lhs == from_poly(&as_poly(&f).substitute(&ppsi, n + 1), inv.clone(), n + 1), "action");
    }
    Ok(samples)
}

fn from_poly_dense(c: i64, deg: usize) -> Poly1 {
    let mut v = vec![RingValue::zero(); deg + 1];
    v[0] = RingValue::from(c);
    Poly1(v)
}

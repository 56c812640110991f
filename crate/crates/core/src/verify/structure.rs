use super::{coaction_axioms, comodule_coalgebra, ensure, fail, job, sampler, Job};
use crate::hopf::Coproduct;
use crate::operad::{Instance, Multiplicative};
use crate::oracle::{as_poly, dif_self_action, from_poly};
use crate::sample::Sampler;
use crate::series::{Carrier, Embedding, GradedSeries};
use crate::tree::{enumerate_trees, Graft, Tree};

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    let big = n + 1;
    let mut out = vec![
        job("action axioms", move || action_axioms(&mut sampler(seed, "action"), big, 20)),
        job("closure constants", move || closure_constants(&mut sampler(seed, "closure"), big, 20)),
        job("cocycle", move || cocycle(&mut sampler(seed, "cocycle"), big, 20)),
        job("cocycle literal order", move || cocycle_literal(&mut sampler(seed, "literal"), big, 20)),
        job("action differs from composition", move || action_witness(&mut sampler(seed, "witness"), 3)),
        job("classic self-action", move || classic_self_action(&mut sampler(seed, "self"), n + 2, 20)),
        job("alpha closure", move || alpha_closure(&mut sampler(seed, "alpha"), n + 2, 10)),
        job("factor round trip", move || factor_round_trip(&mut sampler(seed, "factor"), n, 20)),
    ];
    for cop in [
        Coproduct::CoactInv(Graft::Over),
        Coproduct::CoactInv(Graft::Under),
        Coproduct::CoactDif,
        Coproduct::CoactRho,
    ] {
        out.push(job(format!("coaction {}", cop.name()), move || coaction_axioms(cop, n)));
    }
    for side in [Graft::Over, Graft::Under] {
        out.push(job(format!("comodule coalgebra {}", side.name()), move || comodule_coalgebra(side, n)));
    }
    out
}

fn monoids() -> [Multiplicative; 3] {
    [Multiplicative::dup_over(), Multiplicative::dup_under(), Multiplicative::as_plus()]
}

/// `f^id = f`, `(f^φ)^ψ = f^{φ∘ψ}` and `(f·g)^φ = f^φ·g^φ`.
fn action_axioms(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    for m in monoids() {
        let carrier = Carrier::Monoid(m.clone());
        let id = GradedSeries::one(Carrier::Operad(m.instance()), n);
        for _ in 0..samples {
            let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
            let (phi, psi) = (s.operad_series(m.instance(), n), s.operad_series(m.instance(), n));
            ensure!(f.act(&id).map_err(fail)? == f, "f^id != f over {carrier}");
            let lhs = f.act(&phi).map_err(fail)?.act(&psi).map_err(fail)?;
            let rhs = f.act(&phi.compose(&psi).map_err(fail)?).map_err(fail)?;
            ensure!(lhs == rhs, "(f^φ)^ψ != f^(φ∘ψ) over {carrier}");
            let lhs = f.mul(&g).map_err(fail)?.act(&phi).map_err(fail)?;
            let rhs = f.act(&phi).map_err(fail)?.mul(&g.act(&phi).map_err(fail)?).map_err(fail)?;
            ensure!(lhs == rhs, "(f·g)^φ != f^φ·g^φ over {carrier}");
        }
    }
    Ok(3 * samples)
}

/// `λ_f∘λ_g = λ_{g·f^{λ_g}}` and `ρ_f∘ρ_g = ρ_{f^{ρ_g}·g}`.
fn closure_constants(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    for m in monoids() {
        let carrier = Carrier::Monoid(m.clone());
        for _ in 0..samples {
            let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
            let lg = g.embed(Embedding::Lambda).map_err(fail)?;
            let lhs = f.embed(Embedding::Lambda).map_err(fail)?.compose(&lg).map_err(fail)?;
            let h = g.mul(&f.act(&lg).map_err(fail)?).map_err(fail)?;
            ensure!(lhs == h.embed(Embedding::Lambda).map_err(fail)?, "λ closure over {carrier}");
            let rg = g.embed(Embedding::Rho).map_err(fail)?;
            let lhs = f.embed(Embedding::Rho).map_err(fail)?.compose(&rg).map_err(fail)?;
            let h = f.act(&rg).map_err(fail)?.mul(&g).map_err(fail)?;
            ensure!(lhs == h.embed(Embedding::Rho).map_err(fail)?, "ρ closure over {carrier}");
        }
    }
    Ok(3 * samples)
}

/// `c(φ∘ψ)^{-1} · c(ψ) · c(φ)^ψ` and the product in the order
/// `c(ψ) · c(φ∘ψ)^{-1} · c(φ)^ψ`, where `c = λ^{-1}`.
fn cocycle_terms(
    m: &Multiplicative,
    s: &mut Sampler,
    n: usize,
) -> Result<(GradedSeries, GradedSeries, GradedSeries), String> {
    let carrier = Carrier::Monoid(m.clone());
    let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
    let (phi, psi) = (f.embed(Embedding::Lambda).map_err(fail)?, g.embed(Embedding::Lambda).map_err(fail)?);
    let c = |x: &GradedSeries| x.unembed(Embedding::Lambda, m).map_err(fail);
    let composite = c(&phi.compose(&psi).map_err(fail)?)?.inverse().map_err(fail)?;
    let acted = c(&phi)?.act(&psi).map_err(fail)?;
    let cocycle = composite.mul(&c(&psi)?).map_err(fail)?.mul(&acted).map_err(fail)?;
    let literal = c(&psi)?.mul(&composite).map_err(fail)?.mul(&acted).map_err(fail)?;
    Ok((cocycle, literal, GradedSeries::one(carrier, n)))
}

/// `λ^{-1}(φ∘ψ)^{-1} · λ^{-1}(ψ) · λ^{-1}(φ)^ψ = x^e`.
fn cocycle(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    for m in monoids() {
        for _ in 0..samples {
            let (c, _, one) = cocycle_terms(&m, s, n)?;
            ensure!(c == one, "cocycle identity fails for {}: {c:?}", m.p2_name());
        }
    }
    Ok(3 * samples)
}

/// With `λ^{-1}(ψ)` first the product is a commutator: trivial over the
/// integers, not over trees.
fn cocycle_literal(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    for _ in 0..samples {
        let (_, lit, one) = cocycle_terms(&Multiplicative::as_plus(), s, n)?;
        ensure!(lit == one, "literal order fails over the integers");
    }
    let mut witness = false;
    for _ in 0..samples {
        let (_, lit, one) = cocycle_terms(&Multiplicative::dup_over(), s, n)?;
        witness |= lit != one;
    }
    ensure!(witness, "literal order held on every tree sample");
    Ok(2 * samples)
}

/// A pair with `λ_{f^{λ_g}} != λ_f∘λ_g`.
fn action_witness(s: &mut Sampler, n: usize) -> Result<usize, String> {
    let carrier = Carrier::Monoid(Multiplicative::dup_over());
    for tries in 1..=100 {
        let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
        let lg = g.embed(Embedding::Lambda).map_err(fail)?;
        let acted = f.act(&lg).map_err(fail)?.embed(Embedding::Lambda).map_err(fail)?;
        let composed = f.embed(Embedding::Lambda).map_err(fail)?.compose(&lg).map_err(fail)?;
        if acted != composed {
            return Ok(tries);
        }
    }
    Err("no witness in 100 samples".into())
}

/// Over the integers `λ(λ^{-1}(φ)^ψ) = Σ φ_m x ψ(x)^{m-1}`.
fn classic_self_action(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let m = Multiplicative::as_plus();
    for _ in 0..samples {
        let (phi, psi) = (s.operad_series(Instance::As, n), s.operad_series(Instance::As, n));
        let f = phi.unembed(Embedding::Lambda, &m).map_err(fail)?;
        let lhs = f.act(&psi).map_err(fail)?.embed(Embedding::Lambda).map_err(fail)?;
        let p = dif_self_action(&as_poly(&phi), &as_poly(&psi), n + 1);
        let rhs = from_poly(&p, Carrier::Operad(Instance::As), n);
        ensure!(lhs == rhs, "self-action of {phi:?} by {psi:?}");
    }
    Ok(samples)
}

/// Alpha members are closed under composition and inverse, and the
/// composite is multiplicative: `h_u = h_{u^l} h_{V(u^r)}`.
fn alpha_closure(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let m = Multiplicative::dup_over();
    for _ in 0..samples {
        let (a, b) = (s.alpha_member(n), s.alpha_member(n));
        let c = a.compose(&b).map_err(fail)?;
        ensure!(c.alpha_membership(), "composite left the alpha subgroup");
        ensure!(a.comp_inverse().map_err(fail)?.alpha_membership(), "inverse left the alpha subgroup");
        let h = c.unembed(Embedding::Rho, &m).map_err(fail)?;
        for d in 2..n {
            for u in enumerate_trees(d) {
                let mut factors = u.over_factorize();
                let Some(last) = factors.pop() else { continue };
                if factors.is_empty() {
                    continue;
                }
                let left = Tree::over_fold(&factors);
                let expected = &h.tree_coeff(&left) * &h.tree_coeff(&last.v_wrap());
                ensure!(h.tree_coeff(&u) == expected, "h_{u} is not h_{left} h_V({last})");
            }
        }
    }
    Ok(samples)
}

/// `section(ψ) ∘ ρ_g` factors back to `(ψ, g)`.
fn factor_round_trip(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let carrier = Carrier::Monoid(Multiplicative::dup_over());
    for _ in 0..samples {
        let psi = s.operad_series(Instance::As, n);
        let g = s.group_series(&carrier, n);
        let eta = psi
            .section_comb(Graft::Under)
            .map_err(fail)?
            .compose(&g.embed(Embedding::Rho).map_err(fail)?)
            .map_err(fail)?;
        let (psi2, g2) = eta.factor_under_rho().map_err(fail)?;
        ensure!(psi2 == psi && g2 == g, "factorization of {eta:?}");
    }
    Ok(samples)
}

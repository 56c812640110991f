use super::{ensure, fail, job, sampler, Job};
use crate::hopf::{Coproduct, Gen, Morphism};
use crate::operad::{Instance, Multiplicative};
use crate::sample::Sampler;
use crate::series::{Carrier, GradedSeries, SemidirectElement};
use crate::tree::{trees_up_to, Graft, Tree};

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    let mut out = Vec::new();
    let maps = [
        Morphism::EmbedB(Graft::Over),
        Morphism::EmbedB(Graft::Under),
        Morphism::EmbedA,
        Morphism::SectionB(Graft::Over),
        Morphism::SectionB(Graft::Under),
        Morphism::SectionA(Graft::Over),
        Morphism::SectionA(Graft::Under),
    ];
    for m in maps {
        for comm in [false, true] {
            let name = format!("coalgebra morphism {} {}", m.name(), if comm { "comm" } else { "nc" });
            out.push(job(name, move || hopf_morphism(m, comm, n)));
        }
    }
    out.push(job("projection p", move || projection_p(n)));
    for comm in [false, true] {
        let name = format!("projection r {}", if comm { "comm" } else { "nc" });
        out.push(job(name, move || projection_r(comm, n)));
    }
    out.push(job("faa di bruno formulas", || fdb_formulas(6)));
    out.push(job("order map homomorphism", move || order_map(&mut sampler(seed, "pi"), n, 20)));
    out.push(job("comb sections", move || comb_sections(&mut sampler(seed, "sections"), n, 20)));
    out
}

/// `M` intertwines the coproducts on every generator of grading at most
/// `max`.
pub fn hopf_morphism(m: Morphism, commutative: bool, max: usize) -> Result<usize, String> {
    let gens = m.source(commutative).generators(max);
    for g in &gens {
        let d = m.defect(g, commutative).map_err(fail)?;
        ensure!(d.is_zero(), "{} at {g}: defect {d}", m.name());
    }
    Ok(gens.len())
}

/// `(P⊗P)Δ^dif(u/vtx) = Δ^ρ(u)` for trees of order at most `max`.
pub fn projection_p(max: usize) -> Result<usize, String> {
    let trees = trees_up_to(max);
    for u in &trees {
        let x = Tree::node(u, &Tree::leaf());
        let d = Coproduct::Dif.generator(&Gen::Tree(x), false).map_err(fail)?;
        let lhs = Morphism::ProjectP.apply_all(&d).map_err(fail)?;
        let rhs = Coproduct::Rho.generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
        ensure!(lhs == rhs, "(P⊗P)Δ^dif({u}/vtx) - Δ^ρ({u}) = {}", lhs.sub(&rhs));
    }
    Ok(trees.len())
}

/// `(R⊗R)Δ^ρ(u) = Δ^α(R(u))` for trees of order at most `max`.
pub fn projection_r(commutative: bool, max: usize) -> Result<usize, String> {
    hopf_morphism(Morphism::ProjectR, commutative, max)
}

/// The commutative Faà di Bruno coproduct is the abelianized free one.
pub fn fdb_formulas(max: usize) -> Result<usize, String> {
    for n in 1..=max {
        let nc = Coproduct::FdB.generator(&Gen::A(n), false).map_err(fail)?;
        let comm = Coproduct::FdB.generator(&Gen::A(n), true).map_err(fail)?;
        ensure!(nc.with_commutative(true) == comm, "Δ(a_{n}): {}", nc.with_commutative(true).sub(&comm));
    }
    Ok(max)
}

fn monoid(side: Graft) -> Multiplicative {
    match side {
        Graft::Over => Multiplicative::dup_over(),
        Graft::Under => Multiplicative::dup_under(),
    }
}

/// The order map is a homomorphism for products, composition, the action
/// and the semidirect law.
fn order_map(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let pi = GradedSeries::project_order;
    for _ in 0..samples {
        for side in [Graft::Over, Graft::Under] {
            let m = monoid(side);
            let carrier = Carrier::Monoid(m.clone());
            let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
            let lhs = pi(&f.mul(&g).map_err(fail)?);
            ensure!(lhs == pi(&f).mul(&pi(&g)).map_err(fail)?, "π(f·g), {}", side.name());
            let (phi, psi) = (s.operad_series(Instance::Dup, n), s.operad_series(Instance::Dup, n));
            let lhs = pi(&f.act(&psi).map_err(fail)?);
            ensure!(lhs == pi(&f).act(&pi(&psi)).map_err(fail)?, "π(f^ψ), {}", side.name());
            let a = SemidirectElement::new(phi.clone(), f.clone()).map_err(fail)?;
            let b = SemidirectElement::new(psi.clone(), g.clone()).map_err(fail)?;
            let ab = a.mul(&b).map_err(fail)?;
            let pa = SemidirectElement::new(pi(&phi), pi(&f)).map_err(fail)?;
            let pb = SemidirectElement::new(pi(&psi), pi(&g)).map_err(fail)?;
            let pab = pa.mul(&pb).map_err(fail)?;
            ensure!(pi(&ab.phi) == pab.phi && pi(&ab.f) == pab.f, "π of the semidirect law, {}", side.name());
        }
        let (phi, psi) = (s.operad_series(Instance::Dup, n), s.operad_series(Instance::Dup, n));
        let lhs = pi(&phi.compose(&psi).map_err(fail)?);
        ensure!(lhs == pi(&phi).compose(&pi(&psi)).map_err(fail)?, "π(φ∘ψ)");
    }
    Ok(samples)
}

/// Left and right comb sections are homomorphisms split by the order map.
fn comb_sections(s: &mut Sampler, n: usize, samples: usize) -> Result<usize, String> {
    let classic = Carrier::Monoid(Multiplicative::as_plus());
    for _ in 0..samples {
        for side in [Graft::Over, Graft::Under] {
            let sec = |x: &GradedSeries| x.section_comb(side);
            let (f, g) = (s.group_series(&classic, n), s.group_series(&classic, n));
            let lhs = sec(&f.mul(&g).map_err(fail)?).map_err(fail)?;
            let rhs = sec(&f).map_err(fail)?.mul(&sec(&g).map_err(fail)?).map_err(fail)?;
            ensure!(lhs == rhs, "section of a product, {}", side.name());
            ensure!(sec(&f).map_err(fail)?.project_order() == f, "π∘section on {}", side.name());
            let (phi, psi) = (s.operad_series(Instance::As, n), s.operad_series(Instance::As, n));
            let lhs = sec(&phi.compose(&psi).map_err(fail)?).map_err(fail)?;
            let rhs = sec(&phi).map_err(fail)?.compose(&sec(&psi).map_err(fail)?).map_err(fail)?;
            ensure!(lhs == rhs, "section of a composition, {}", side.name());
            ensure!(sec(&phi).map_err(fail)?.project_order() == phi, "π∘section on diffeomorphisms, {}", side.name());
        }
    }
    Ok(samples)
}

use super::{ensure, fail, job, sampler, Job};
use crate::coeff::RingValue;
use crate::hopf::{convolve, Character, Coproduct, Gen};
use crate::operad::{Instance, MonoidElement, Multiplicative, OperadElement};
use crate::sample::Sampler;
use crate::series::{Carrier, Embedding, GradedSeries};
use crate::tree::{trees_up_to, Graft, Tree};

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    let pairs = 20;
    vec![
        job("duality over", move || inv_duality(Graft::Over, &mut sampler(seed, "d-over"), n, pairs)),
        job("duality under", move || inv_duality(Graft::Under, &mut sampler(seed, "d-under"), n, pairs)),
        job("duality dif", move || dif_duality(&mut sampler(seed, "d-dif"), n, pairs)),
        job("duality rho", move || rho_duality(&mut sampler(seed, "d-rho"), n, pairs)),
        job("duality alpha", move || alpha_duality(&mut sampler(seed, "d-alpha"), n, pairs)),
        job("duality action", move || action_duality(&mut sampler(seed, "d-act"), n, pairs)),
        job("duality classic", move || classic_duality(&mut sampler(seed, "d-classic"), n + 2, pairs)),
    ]
}

fn multiplicative(side: Graft) -> Multiplicative {
    match side {
        Graft::Over => Multiplicative::dup_over(),
        Graft::Under => Multiplicative::dup_under(),
    }
}

/// `(f·g)_u = (χ_f ⊗ χ_g) Δ^inv(u)`.
pub fn inv_duality(side: Graft, s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    let carrier = Carrier::Monoid(multiplicative(side));
    for _ in 0..pairs {
        let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
        let h = f.mul(&g).map_err(fail)?;
        let (cf, cg) = (Character::from_series(&f), Character::from_series(&g));
        for u in trees_up_to(n) {
            let d = Coproduct::Inv(side).generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
            ensure!(h.tree_coeff(&u) == convolve(&cf, &cg, &d), "coefficient of {u}");
        }
    }
    Ok(pairs)
}

/// `(φ∘ψ)_u = Σ φ_t ψ_{s_1} .. ψ_{s_k}`.
pub fn dif_duality(s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    for _ in 0..pairs {
        let (phi, psi) = (s.operad_series(Instance::Dup, n), s.operad_series(Instance::Dup, n));
        let h = phi.compose(&psi).map_err(fail)?;
        let (cf, cg) = (Character::from_series(&phi), Character::from_series(&psi));
        for u in trees_up_to(n + 1).into_iter().filter(|u| u.order() >= 2) {
            let d = Coproduct::Dif.generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
            ensure!(h.tree_coeff(&u) == convolve(&cf, &cg, &d), "coefficient of {u}");
        }
    }
    Ok(pairs)
}

/// `ρ_f∘ρ_g = ρ_h` with `h_u = g_u + Σ f_t g_{s_1} .. g_{s_{|t|+1}}`.
pub fn rho_duality(s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    let m = Multiplicative::dup_over();
    let carrier = Carrier::Monoid(m.clone());
    for _ in 0..pairs {
        let (f, g) = (s.group_series(&carrier, n), s.group_series(&carrier, n));
        let rf = f.embed(Embedding::Rho).map_err(fail)?;
        let rg = g.embed(Embedding::Rho).map_err(fail)?;
        let h = rf.compose(&rg).map_err(fail)?.unembed(Embedding::Rho, &m).map_err(fail)?;
        let (cf, cg) = (Character::from_series(&f), Character::from_series(&g));
        for u in trees_up_to(n) {
            let d = Coproduct::Rho.generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
            ensure!(h.tree_coeff(&u) == convolve(&cf, &cg, &d), "coefficient of {u}");
        }
    }
    Ok(pairs)
}

/// `h_{V(u)} = g_{V(u)} + Σ f_{V(t)} g_{s_1} .. g_{s_{|t|}}` for alpha
/// members `ρ_f`, `ρ_g`.
pub fn alpha_duality(s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    let m = Multiplicative::dup_over();
    for _ in 0..pairs {
        let (a, b) = (s.alpha_member(n), s.alpha_member(n));
        let f = a.unembed(Embedding::Rho, &m).map_err(fail)?;
        let g = b.unembed(Embedding::Rho, &m).map_err(fail)?;
        let h = a.compose(&b).map_err(fail)?.unembed(Embedding::Rho, &m).map_err(fail)?;
        let (cf, cg) = (Character::from_series(&f), Character::from_series(&g));
        for u in std::iter::once(Tree::leaf()).chain(trees_up_to(n.saturating_sub(1))) {
            let v = u.v_wrap();
            let d = Coproduct::Alpha.generator(&Gen::Tree(v.clone()), false).map_err(fail)?;
            ensure!(h.tree_coeff(&v) == convolve(&cf, &cg, &d), "coefficient of V({u})");
        }
    }
    Ok(pairs)
}

/// `(f^ψ)_u = (χ_f ⊗ χ_ψ) δ^inv(u)`.
pub fn action_duality(s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    for side in [Graft::Over, Graft::Under] {
        let carrier = Carrier::Monoid(multiplicative(side));
        for _ in 0..pairs {
            let f = s.group_series(&carrier, n);
            let psi = s.operad_series(Instance::Dup, n);
            let h = f.act(&psi).map_err(fail)?;
            let (cf, cg) = (Character::from_series(&f), Character::from_series(&psi));
            for u in trees_up_to(n) {
                let d = Coproduct::CoactInv(side).generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
                ensure!(h.tree_coeff(&u) == convolve(&cf, &cg, &d), "coefficient of {u}");
            }
        }
    }
    Ok(2 * pairs)
}

fn integer_character(s: &GradedSeries, shift: usize, gen: fn(usize) -> Gen) -> Character {
    let mut c = Character::counit();
    for (k, v) in s.terms() {
        if let MonoidElement::Op(OperadElement::As(a)) = k {
            if *a > shift {
                c.set(gen(a - shift), v.clone());
            }
        }
    }
    c
}

/// Classic series: `b_n` against the product of power series and `a_n`
/// (commutative Faà di Bruno) against composition.
fn classic_duality(s: &mut Sampler, n: usize, pairs: usize) -> Result<usize, String> {
    let inv = Carrier::Monoid(Multiplicative::as_plus());
    let key = |a: usize| MonoidElement::Op(OperadElement::As(a));
    for _ in 0..pairs {
        let (f, g) = (s.group_series(&inv, n), s.group_series(&inv, n));
        let h = f.mul(&g).map_err(fail)?;
        let (cf, cg) = (integer_character(&f, 0, Gen::B), integer_character(&g, 0, Gen::B));
        for k in 1..=n {
            let d = Coproduct::Sym.generator(&Gen::B(k), true).map_err(fail)?;
            ensure!(h.coeff(&key(k)) == convolve(&cf, &cg, &d), "product coefficient {k}");
        }
        let (phi, psi) = (s.operad_series(Instance::As, n), s.operad_series(Instance::As, n));
        let h = phi.compose(&psi).map_err(fail)?;
        let (cf, cg) = (integer_character(&phi, 1, Gen::A), integer_character(&psi, 1, Gen::A));
        for k in 1..=n {
            let d = Coproduct::FdB.generator(&Gen::A(k), true).map_err(fail)?;
            let lhs: RingValue = h.coeff(&key(k + 1));
            ensure!(lhs == convolve(&cf, &cg, &d), "composition coefficient {}", k + 1);
        }
    }
    Ok(pairs)
}

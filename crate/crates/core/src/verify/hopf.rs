use super::{ensure, fail, job, Job};
use crate::hopf::{Antipode, Coproduct, Gen, Tensor};
use crate::tree::{trees_up_to, Graft, Tree};

pub(super) fn jobs(n: usize) -> Vec<Job> {
    let mut out = Vec::new();
    let cops = [
        Coproduct::Inv(Graft::Over),
        Coproduct::Inv(Graft::Under),
        Coproduct::Dif,
        Coproduct::Rho,
        Coproduct::Alpha,
        Coproduct::AlphaRecursive,
        Coproduct::FdB,
        Coproduct::Sym,
    ];
    for cop in cops {
        for comm in [false, true] {
            let label = format!("{} {}", cop.name(), if comm { "comm" } else { "nc" });
            out.push(job(format!("coassociativity {label}"), move || coassociativity(cop, comm, n)));
            out.push(job(format!("antipode {label}"), move || {
                antipode_identities(cop, comm, n.saturating_sub(1))
            }));
        }
    }
    out.push(job("alpha recursion", move || alpha_recursion(n.saturating_sub(1))));
    out.push(job("dif coaction equals inv coaction", move || coactions_coincide(n)));
    out.push(job("cocommutativity", cocommutativity));
    out
}

fn label(cop: Coproduct, g: &Gen) -> String {
    format!("{} of {g}", cop.name())
}

/// `(Δ⊗Id)Δ = (Id⊗Δ)Δ` and both counit laws on all generators of grading
/// at most `max`.
pub fn coassociativity(cop: Coproduct, commutative: bool, max: usize) -> Result<usize, String> {
    let kind = cop.source(commutative);
    let gens = kind.generators(max);
    for g in &gens {
        let d = cop.generator(g, commutative).map_err(fail)?;
        let left = cop.apply_leg(&d, 0).map_err(fail)?;
        let right = cop.apply_leg(&d, 1).map_err(fail)?;
        ensure!(left == right, "coassociativity fails for {}: {}", label(cop, g), left.sub(&right));
        let me = Tensor::generator(kind, g.clone());
        ensure!(d.counit_leg(0) == me, "left counit fails for {}", label(cop, g));
        ensure!(d.counit_leg(1) == me, "right counit fails for {}", label(cop, g));
    }
    Ok(gens.len())
}

/// `m(S⊗Id)Δ = ε = m(Id⊗S)Δ` on generators of grading at most `max`.
pub fn antipode_identities(cop: Coproduct, commutative: bool, max: usize) -> Result<usize, String> {
    let kind = cop.source(commutative);
    let mut s = Antipode::new(cop, kind).map_err(fail)?;
    let gens = kind.generators(max);
    for g in &gens {
        let d = cop.generator(g, commutative).map_err(fail)?;
        let left = s.apply_leg(&d, 0).map_err(fail)?.merge_legs(0);
        ensure!(left.is_zero(), "m(S⊗Id)Δ({g}) = {left}");
        let right = s.apply_leg(&d, 1).map_err(fail)?.merge_legs(0);
        ensure!(right.is_zero(), "m(Id⊗S)Δ({g}) = {right}");
    }
    Ok(gens.len())
}

/// The coproduct of the algebra a coaction's right leg lives in.
fn right_coproduct(coaction: Coproduct) -> Coproduct {
    match coaction {
        Coproduct::CoactRho => Coproduct::Rho,
        _ => Coproduct::Dif,
    }
}

/// `(δ⊗Id)δ = (Id⊗Δ)δ` and `(Id⊗ε)δ = Id` on tree generators of order at
/// most `max`.
pub fn coaction_axioms(coaction: Coproduct, max: usize) -> Result<usize, String> {
    let delta = right_coproduct(coaction);
    let trees = trees_up_to(max);
    for u in &trees {
        let g = Gen::Tree(u.clone());
        let d = coaction.generator(&g, false).map_err(fail)?;
        let lhs = coaction.apply_leg(&d, 0).map_err(fail)?;
        let rhs = delta.apply_leg(&d, 1).map_err(fail)?;
        ensure!(lhs == rhs, "coaction law fails for {}: {}", label(coaction, &g), lhs.sub(&rhs));
        let back = d.counit_leg(1);
        ensure!(back == Tensor::generator(d.kinds()[0], g.clone()), "counit law fails for {u}");
    }
    Ok(trees.len())
}

/// `(Δ⊗Id)δ = (Id⊗Id⊗m)(Id⊗τ⊗Id)(δ⊗δ)Δ` for the inversion coproduct on
/// one side and the inversion coaction.
pub fn comodule_coalgebra(side: Graft, max: usize) -> Result<usize, String> {
    let delta = Coproduct::Inv(side);
    let coact = Coproduct::CoactInv(side);
    let trees = trees_up_to(max);
    for u in &trees {
        let g = Gen::Tree(u.clone());
        let lhs = delta.apply_leg(&coact.generator(&g, false).map_err(fail)?, 0).map_err(fail)?;
        let d = delta.generator(&g, false).map_err(fail)?;
        let both = coact.apply_leg(&coact.apply_leg(&d, 1).map_err(fail)?, 0).map_err(fail)?;
        let rhs = both.swap_legs(1).merge_legs(2);
        ensure!(lhs == rhs, "comodule coalgebra law fails for {u} ({}): {}", side.name(), lhs.sub(&rhs));
    }
    Ok(trees.len())
}

/// The operadic coaction and the inversion coaction have the same terms.
pub fn coactions_coincide(max: usize) -> Result<usize, String> {
    let trees = trees_up_to(max);
    for u in &trees {
        let g = Gen::Tree(u.clone());
        let a = Coproduct::CoactDif.generator(&g, false).map_err(fail)?;
        let b = Coproduct::CoactInv(Graft::Over).generator(&g, false).map_err(fail)?;
        ensure!(a.relabel(b.kinds().to_vec()) == b, "coactions differ on {u}");
    }
    Ok(trees.len())
}

/// Closed and recursive alpha coproducts agree on `V(t)`, `|t| <= max`.
pub fn alpha_recursion(max: usize) -> Result<usize, String> {
    let mut cases = 0;
    for t in std::iter::once(Tree::leaf()).chain(trees_up_to(max)) {
        let g = Gen::Tree(t.v_wrap());
        for comm in [false, true] {
            let a = Coproduct::Alpha.generator(&g, comm).map_err(fail)?;
            let b = Coproduct::AlphaRecursive.generator(&g, comm).map_err(fail)?;
            ensure!(a == b, "alpha coproducts of V({t}) differ: {}", a.sub(&b));
        }
        cases += 1;
    }
    Ok(cases)
}

/// The integer inversion coproduct is cocommutative; the tree over
/// coproduct is not, with a witness of order three.
pub fn cocommutativity() -> Result<usize, String> {
    for n in 1..=6 {
        let d = Coproduct::Sym.generator(&Gen::B(n), false).map_err(fail)?;
        ensure!(d.swap_legs(0) == d, "Δ(b_{n}) is not symmetric");
    }
    let cop = Coproduct::Inv(Graft::Over);
    let mut witness = None;
    for u in trees_up_to(3) {
        let d = cop.generator(&Gen::Tree(u.clone()), false).map_err(fail)?;
        if d.swap_legs(0) != d {
            witness = Some(u);
            break;
        }
    }
    match witness {
        Some(u) if u.order() == 3 => Ok(7),
        Some(u) => Err(format!("unexpected early witness {u}")),
        None => Err("no witness up to order three".into()),
    }
}

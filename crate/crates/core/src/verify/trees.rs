use num_bigint::BigUint;

use super::{ensure, fail, job, sampler, Job};
use crate::coeff::RingValue;
use crate::operad::{Instance, Multiplicative, OperadElement};
use crate::oracle::{graft_pointer, mu_pointer};
use crate::sample::Sampler;
use crate::tree::{enumerate_trees, trees_up_to, Graft, Tree};

pub(super) fn jobs(n: usize, seed: u64) -> Vec<Job> {
    vec![
        job("catalan counts", || catalan(10)),
        job("codec round trip", || codec(8)),
        job("duplicial relations", move || duplicial(n)),
        job("mirror anti-isomorphism", move || mirror(n)),
        job("mu identity", move || mu_identity(n)),
        job("mu associativity", move || mu_associativity(&mut sampler(seed, "mu"), n, 300)),
        job("mu against pointer model", move || mu_pointer_model(&mut sampler(seed, "ptr"), n, 300)),
        job("over factorization", move || over_factorization(n + 1)),
        job("operad associativity", move || operad_associativity(&mut sampler(seed, "operad"), 300)),
        job("operad identities", move || operad_identities(n)),
        job("associative elements", associative_elements),
        job("ring laws", move || ring_laws(&mut sampler(seed, "ring"), 1000)),
    ]
}

fn catalan_number(n: usize) -> BigUint {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

pub(super) fn catalan(max: usize) -> Result<usize, String> {
    for n in 0..=max {
        let count = enumerate_trees(n).len();
        ensure!(BigUint::from(count) == catalan_number(n), "|Y_{n}| = {count}");
    }
    Ok(max + 1)
}

fn codec(max: usize) -> Result<usize, String> {
    let mut cases = 0;
    for t in std::iter::once(Tree::leaf()).chain(trees_up_to(max)) {
        let back = Tree::from_code(t.code()).map_err(fail)?;
        ensure!(back == t, "from_code({t}) = {back}");
        let parsed = Tree::parse(&t.to_string()).map_err(fail)?;
        ensure!(parsed == t, "parse({t}) = {parsed}");
        cases += 1;
    }
    Ok(cases)
}

fn duplicial(n: usize) -> Result<usize, String> {
    let trees = trees_up_to(n.saturating_sub(2));
    let mut cases = 0;
    for a in &trees {
        for b in trees.iter().filter(|b| a.order() + b.order() < n) {
            for c in trees.iter().filter(|c| a.order() + b.order() + c.order() <= n) {
                ensure!(a.over(b).over(c) == a.over(&b.over(c)), "(a/b)/c, a={a} b={b} c={c}");
                ensure!(a.over(b).under(c) == a.over(&b.under(c)), "(a/b)\\c, a={a} b={b} c={c}");
                ensure!(a.under(b).under(c) == a.under(&b.under(c)), "(a\\b)\\c, a={a} b={b} c={c}");
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn mirror(n: usize) -> Result<usize, String> {
    let trees: Vec<Tree> = std::iter::once(Tree::leaf()).chain(trees_up_to(n)).collect();
    let mut cases = 0;
    for t in &trees {
        for s in trees.iter().filter(|s| s.order() + t.order() <= n) {
            ensure!(t.over(s).mirror() == s.mirror().under(&t.mirror()), "mirror(t/s), t={t} s={s}");
            ensure!(t.under(s).mirror() == s.mirror().over(&t.mirror()), "mirror(t\\s), t={t} s={s}");
            cases += 1;
        }
    }
    Ok(cases)
}

fn mu_identity(n: usize) -> Result<usize, String> {
    let trees = trees_up_to(n);
    for t in &trees {
        let vs = vec![Tree::vtx(); t.order()];
        ensure!(t.mu_apply(&vs).map_err(fail)? == *t, "mu_t(vtx..) != t for {t}");
        ensure!(Tree::vtx().mu_apply(std::slice::from_ref(t)).map_err(fail)? == *t, "mu_vtx({t})");
    }
    Ok(trees.len())
}

/// Random `(t, [s_i], [u_j])` with total order at most `n`.
fn nested(s: &mut Sampler, n: usize) -> (Tree, Vec<Tree>, Vec<Tree>) {
    let k = 1 + s.index(2);
    let t = s.tree(k);
    let args: Vec<Tree> = (0..k).map(|_| {
        let o = 1 + s.index(2);
        s.tree(o)
    }).collect();
    let slots: usize = args.iter().map(Tree::order).sum();
    let mut budget = n.max(slots);
    let mut inner = Vec::new();
    for j in 0..slots {
        let room = budget - (slots - j - 1);
        let o = (1 + s.index(2)).min(room);
        budget -= o;
        inner.push(s.tree(o));
    }
    (t, args, inner)
}

fn mu_associativity(s: &mut Sampler, n: usize, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (t, args, inner) = nested(s, n);
        let lhs = t.mu_apply(&args).map_err(fail)?.mu_apply(&inner).map_err(fail)?;
        let mut blocks = Vec::new();
        let mut rest = &inner[..];
        for a in &args {
            let (head, tail) = rest.split_at(a.order());
            blocks.push(a.mu_apply(head).map_err(fail)?);
            rest = tail;
        }
        let rhs = t.mu_apply(&blocks).map_err(fail)?;
        ensure!(lhs == rhs, "t={t} args={args:?} inner={inner:?}");
    }
    Ok(cases)
}

fn mu_pointer_model(s: &mut Sampler, n: usize, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let k = 1 + s.index(n.clamp(1, 4));
        let t = s.tree(k);
        let args: Vec<Tree> = (0..k).map(|_| {
        let o = 1 + s.index(2);
        s.tree(o)
    }).collect();
        ensure!(t.mu_apply(&args).map_err(fail)? == mu_pointer(&t, &args), "t={t} args={args:?}");
        let o = 1 + s.index(3);
        let (a, b) = (&args[0], s.tree(o));
        ensure!(a.over(&b) == graft_pointer(Graft::Over, a, &b), "{a}/{b}");
        ensure!(a.under(&b) == graft_pointer(Graft::Under, a, &b), "{a}\\{b}");
    }
    Ok(cases)
}

fn over_factorization(n: usize) -> Result<usize, String> {
    let trees = trees_up_to(n);
    for u in &trees {
        let f = u.over_factorize();
        ensure!(Tree::over_fold(&f) == *u, "fold-back of {u}");
        for x in &f {
            ensure!(x.v_wrap().children().is_some_and(|(l, _)| l.is_leaf()), "V({x})");
        }
    }
    Ok(trees.len())
}

fn random_element(s: &mut Sampler, inst: Instance, arity: usize) -> OperadElement {
    let all = inst.enumerate(arity);
    all[s.index(all.len())].clone()
}

fn operad_associativity(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for inst in Instance::ALL {
        for _ in 0..cases {
            let a = 1 + s.index(3);
            let p = random_element(s, inst, a);
            let qs: Vec<OperadElement> = (0..p.arity()).map(|_| {
                let a = 1 + s.index(2);
                random_element(s, inst, a)
            }).collect();
            let total: usize = qs.iter().map(OperadElement::arity).sum();
            let us: Vec<OperadElement> = (0..total).map(|_| {
                let a = 1 + s.index(2);
                random_element(s, inst, a)
            }).collect();
            let lhs = inst.compose(&inst.compose(&p, &qs).map_err(fail)?, &us).map_err(fail)?;
            let mut inner = Vec::new();
            let mut rest = &us[..];
            for q in &qs {
                let (head, tail) = rest.split_at(q.arity());
                inner.push(inst.compose(q, head).map_err(fail)?);
                rest = tail;
            }
            let rhs = inst.compose(&p, &inner).map_err(fail)?;
            ensure!(lhs == rhs, "{inst}: p={p} q={qs:?} u={us:?}");
            let weight: usize = us.iter().map(OperadElement::arity).sum();
            ensure!(lhs.arity() == weight, "{inst}: arity of {lhs}");
        }
    }
    Ok(cases * Instance::ALL.len())
}

fn operad_identities(n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for inst in Instance::ALL {
        let id = inst.identity();
        for a in 1..=n {
            for p in inst.enumerate(a) {
                ensure!(inst.compose(&id, std::slice::from_ref(&p)).map_err(fail)? == p, "{inst}: id∘{p}");
                let ids = vec![id.clone(); a];
                ensure!(inst.compose(&p, &ids).map_err(fail)? == p, "{inst}: {p}∘id");
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn associative_elements() -> Result<usize, String> {
    let mut cases = 0;
    for inst in Instance::ALL {
        for (name, _) in inst.associative_elements() {
            Multiplicative::named(inst, name).map_err(fail)?;
            cases += 1;
        }
    }
    let dup = Multiplicative::dup_over();
    ensure!(dup.p2().as_tree() == Some(&Tree::vtx().over(&Tree::vtx())), "over generator");
    Ok(cases)
}

fn ring_laws(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (a, b, c) = (s.poly(), s.poly(), s.poly());
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity");
        ensure!(&a * &b == &b * &a, "commutativity: {a} {b}");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity");
        ensure!(&a * &RingValue::one() == a && &a + &RingValue::zero() == a, "units");
        ensure!((&a + &(-&a)).is_zero(), "negation");
        let back = RingValue::parse(&a.to_text()).map_err(fail)?;
        ensure!(back == a, "format/parse of {a}");
    }
    Ok(cases)
}

//! Slow, independent reference computations used to cross-check the fast
//! paths.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::RingValue;
use crate::operad::{compositions, Instance, MonoidElement, OperadElement};
use crate::series::{Carrier, GradedSeries};
use crate::tree::{enumerate_trees, Decomposition, Graft, Tree};

/// Every `(t, [s_i])` of total order `n`, grouped by `mu_t(s)`, found by
/// evaluating the pointer recursion on all candidates.
pub fn brute_decompositions(n: usize) -> HashMap<Tree, Vec<Decomposition>> {
    let by_order: Vec<Vec<Tree>> = (0..=n).map(enumerate_trees).collect();
    let mut out: HashMap<Tree, Vec<Decomposition>> = HashMap::new();
    for k in 1..=n {
        for t in &by_order[k] {
            for parts in compositions(n).into_iter().filter(|p| p.len() == k) {
                let mut tuples: Vec<Vec<Tree>> = vec![Vec::new()];
                for &m in &parts {
                    let mut next = Vec::new();
                    for prefix in &tuples {
                        for s in &by_order[m] {
                            let mut v = prefix.clone();
                            v.push(s.clone());
                            next.push(v);
                        }
                    }
                    tuples = next;
                }
                for args in tuples {
                    let u = mu_pointer(t, &args);
                    out.entry(u).or_default().push(Decomposition { t: t.clone(), args });
                }
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

#[derive(Clone)]
enum Node {
    Leaf,
    Branch(Box<Node>, Box<Node>),
}

fn to_node(t: &Tree) -> Node {
    match t.children() {
        None => Node::Leaf,
        Some((l, r)) => Node::Branch(Box::new(to_node(&l)), Box::new(to_node(&r))),
    }
}

fn from_node(n: &Node) -> Tree {
    match n {
        Node::Leaf => Tree::leaf(),
        Node::Branch(l, r) => Tree::node(&from_node(l), &from_node(r)),
    }
}

fn graft_over(t: Node, s: Node) -> Node {
    match s {
        Node::Leaf => t,
        Node::Branch(l, r) => Node::Branch(Box::new(graft_over(t, *l)), r),
    }
}

fn graft_under(t: Node, s: Node) -> Node {
    match t {
        Node::Leaf => s,
        Node::Branch(l, r) => Node::Branch(l, Box::new(graft_under(*r, s))),
    }
}

/// `mu_t` on pointer trees, vertices of `t` read in infix order.
pub fn mu_pointer(t: &Tree, args: &[Tree]) -> Tree {
    fn go(t: &Node, args: &mut std::slice::Iter<'_, Node>) -> Node {
        match t {
            Node::Leaf => Node::Leaf,
            Node::Branch(l, r) => {
                let left = go(l, args);
                let mid = args.next().expect("one argument per vertex").clone();
                let right = go(r, args);
                graft_under(graft_over(left, mid), right)
            }
        }
    }
    let nodes: Vec<Node> = args.iter().map(to_node).collect();
    from_node(&go(&to_node(t), &mut nodes.iter()))
}

/// `over` or `under` on pointer trees.
pub fn graft_pointer(side: Graft, t: &Tree, s: &Tree) -> Tree {
    let (t, s) = (to_node(t), to_node(s));
    from_node(&match side {
        Graft::Over => graft_over(t, s),
        Graft::Under => graft_under(t, s),
    })
}

type TreePoly = BTreeMap<Tree, RingValue>;

fn poly_add(acc: &mut TreePoly, t: Tree, v: RingValue) {
    let e = acc.entry(t).or_insert_with(RingValue::zero);
    *e = &*e + &v;
}

fn poly_graft(side: Graft, a: &TreePoly, b: &TreePoly, max_order: usize) -> TreePoly {
    let mut out = TreePoly::new();
    for (s, x) in a {
        for (t, y) in b {
            if s.order() + t.order() <= max_order {
                poly_add(&mut out, graft_pointer(side, s, t), x * y);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `φ∘ψ` as `Σ φ_t ψ^t`, where `ψ^t = μ_t(ψ, .., ψ)` is expanded through
/// `ψ^{l ∨ r} = (ψ^l / ψ) \ ψ^r` with grafting products of series.
pub fn compose_by_powers(phi: &GradedSeries, psi: &GradedSeries) -> GradedSeries {
    let n = phi.truncation().min(psi.truncation());
    let max_order = n + 1;
    let psi_poly: TreePoly = psi
        .terms()
        .map(|(k, v)| (k.to_tree().expect("tree keys"), v.clone()))
        .collect();
    let mut memo: HashMap<Tree, TreePoly> = HashMap::new();
    fn power(t: &Tree, psi: &TreePoly, max: usize, memo: &mut HashMap<Tree, TreePoly>) -> TreePoly {
        if let Some(p) = memo.get(t) {
            return p.clone();
        }
        let out = match t.children() {
            None => TreePoly::from([(Tree::leaf(), RingValue::one())]),
            Some((l, r)) => {
                let left = poly_graft(Graft::Over, &power(&l, psi, max, memo), psi, max);
                poly_graft(Graft::Under, &left, &power(&r, psi, max, memo), max)
            }
        };
        memo.insert(t.clone(), out.clone());
        out
    }
    let mut acc = TreePoly::new();
    for (k, c) in phi.terms() {
        let t = k.to_tree().expect("tree keys");
        for (u, v) in power(&t, &psi_poly, max_order, &mut memo) {
            poly_add(&mut acc, u, c * &v);
        }
    }
    GradedSeries::from_trees(
        Carrier::Operad(Instance::Dup),
        n,
        acc.into_iter().filter(|(u, v)| u.order() <= max_order && !v.is_zero()),
    )
    .expect("tree keys")
}

/// Dense univariate polynomial, truncated after degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1(pub Vec<RingValue>);

impl Poly1 {
    pub fn mul(&self, other: &Poly1, n: usize) -> Poly1 {
        let mut out = vec![RingValue::zero(); n + 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                if i + j <= n {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly1(out)
    }

    pub fn coeff(&self, i: usize) -> RingValue {
        self.0.get(i).cloned().unwrap_or_else(RingValue::zero)
    }

    /// `Σ self_m q^m`, truncated after degree `n`.
    pub fn substitute(&self, q: &Poly1, n: usize) -> Poly1 {
        let mut out = Poly1(vec![RingValue::zero(); n + 1]);
        let mut power = Poly1(vec![RingValue::one()]);
        for m in 0..self.0.len() {
            let c = &self.0[m];
            for i in 0..=n {
                out.0[i] = &out.0[i] + &(c * &power.coeff(i));
            }
            power = power.mul(q, n);
        }
        out
    }
}

/// Coefficients of an integer-indexed series by degree: `x^e ↦ 0`,
/// `x^n ↦ n`.
pub fn as_poly(s: &GradedSeries) -> Poly1 {
    let deg = s.truncation() + usize::from(!s.carrier().is_monoid());
    let mut out = vec![RingValue::zero(); deg + 1];
    for (k, v) in s.terms() {
        let i = match k {
            MonoidElement::Unit => 0,
            MonoidElement::Op(p) => p.arity(),
        };
        out[i] = &out[i] + v;
    }
    Poly1(out)
}

/// Inverse of [`as_poly`] for the given carrier.
pub fn from_poly(p: &Poly1, carrier: Carrier, truncation: usize) -> GradedSeries {
    let top = truncation + usize::from(!carrier.is_monoid());
    let terms = p.0.iter().enumerate().filter(|(i, v)| *i <= top && !v.is_zero()).map(|(i, v)| {
        let k = if i == 0 {
            MonoidElement::Unit
        } else {
            MonoidElement::Op(OperadElement::As(i))
        };
        (k, v.clone())
    });
    GradedSeries::from_terms(carrier, truncation, terms).expect("integer keys")
}

/// Classic `φ^ψ(x) = x + Σ_n Σ_m φ_m Σ ψ_{k_2} .. ψ_{k_m} x^n`: the
/// self-action of formal diffeomorphisms induced from the action on
/// invertible series.
pub fn dif_self_action(phi: &Poly1, psi: &Poly1, n: usize) -> Poly1 {
    // φ_m x^m ↦ φ_m x ψ(x)^{m-1}
    let mut out = vec![RingValue::zero(); n + 1];
    let mut power = Poly1(vec![RingValue::zero(), RingValue::one()]);
    for m in 1..phi.0.len() {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = &*slot + &(&phi.0[m] * &power.coeff(i));
        }
        power = power.mul(psi, n);
    }
    Poly1(out)
}

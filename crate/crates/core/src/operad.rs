//! Non-symmetric set-operads (As, Dias, and trees under the t-product) and
//! the graded monoid attached to an associative binary element.

use std::fmt;

use crate::error::{OperadError, ParseError};
use crate::tree::{enumerate_trees, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instance {
    As,
    Dias,
    Dup,
}

impl Instance {
    pub const ALL: [Instance; 3] = [Instance::As, Instance::Dias, Instance::Dup];

    pub fn name(self) -> &'static str {
        match self {
            Instance::As => "as",
            Instance::Dias => "dias",
            Instance::Dup => "dup",
        }
    }

    pub fn from_name(s: &str) -> Option<Instance> {
        Instance::ALL.into_iter().find(|i| i.name() == s)
    }

    pub fn identity(self) -> OperadElement {
        match self {
            Instance::As => OperadElement::As(1),
            Instance::Dias => OperadElement::Dias { arity: 1, index: 1 },
            Instance::Dup => OperadElement::Dup(Tree::vtx()),
        }
    }

    /// All elements of arity `n`, in canonical order.
    pub fn enumerate(self, n: usize) -> Vec<OperadElement> {
        if n == 0 {
            return Vec::new();
        }
        match self {
            Instance::As => vec![OperadElement::As(n)],
            Instance::Dias => (1..=n)
                .map(|index| OperadElement::Dias { arity: n, index })
                .collect(),
            Instance::Dup => enumerate_trees(n).into_iter().map(OperadElement::Dup).collect(),
        }
    }

    /// The declared associative binary elements, each named.
    pub fn associative_elements(self) -> Vec<(&'static str, OperadElement)> {
        match self {
            Instance::As => vec![("as", OperadElement::As(2))],
            Instance::Dias => vec![
                ("left", OperadElement::Dias { arity: 2, index: 1 }),
                ("right", OperadElement::Dias { arity: 2, index: 2 }),
            ],
            Instance::Dup => vec![
                ("over", OperadElement::Dup(Tree::vtx().over(&Tree::vtx()))),
                ("under", OperadElement::Dup(Tree::vtx().under(&Tree::vtx()))),
            ],
        }
    }

    /// `γ(p; q_1, .., q_n)`.
    pub fn compose(
        self,
        p: &OperadElement,
        args: &[OperadElement],
    ) -> Result<OperadElement, OperadError> {
        self.check(p)?;
        for q in args {
            self.check(q)?;
        }
        if args.len() != p.arity() {
            return Err(OperadError::ArityMismatch {
                expected: p.arity(),
                given: args.len(),
            });
        }
        Ok(match p {
            OperadElement::As(_) => OperadElement::As(args.iter().map(|q| q.arity()).sum()),
            OperadElement::Dias { index, .. } => {
                let arity = args.iter().map(|q| q.arity()).sum();
                let offset: usize = args[..index - 1].iter().map(|q| q.arity()).sum();
                let inner = match &args[index - 1] {
                    OperadElement::Dias { index, .. } => *index,
                    _ => unreachable!("checked instance"),
                };
                OperadElement::Dias {
                    arity,
                    index: offset + inner,
                }
            }
            OperadElement::Dup(t) => {
                let trees: Vec<Tree> = args
                    .iter()
                    .map(|q| match q {
                        OperadElement::Dup(s) => s.clone(),
                        _ => unreachable!("checked instance"),
                    })
                    .collect();
                OperadElement::Dup(crate::tree::mu_unchecked(t, &trees))
            }
        })
    }

    /// Every `(p, [q_i])` with `γ(p; q) = u`.
    pub fn decompositions(self, u: &OperadElement) -> Vec<(OperadElement, Vec<OperadElement>)> {
        match u {
            OperadElement::Dup(t) => t
                .decompositions()
                .expect("operad elements have order at least 1")
                .iter()
                .map(|d| {
                    (
                        OperadElement::Dup(d.t.clone()),
                        d.args.iter().cloned().map(OperadElement::Dup).collect(),
                    )
                })
                .collect(),
            OperadElement::As(n) => {
                let mut out = Vec::new();
                for parts in compositions(*n) {
                    let p = OperadElement::As(parts.len());
                    out.push((p, parts.into_iter().map(OperadElement::As).collect()));
                }
                out
            }
            OperadElement::Dias { arity, index } => {
                let mut out = Vec::new();
                for parts in compositions(*arity) {
                    // block containing the distinguished input
                    let mut offset = 0;
                    let mut block = 0;
                    for (k, &m) in parts.iter().enumerate() {
                        if *index <= offset + m {
                            block = k;
                            break;
                        }
                        offset += m;
                    }
                    let inner = index - offset;
                    // the other blocks carry any index
                    let mut choices: Vec<Vec<OperadElement>> = vec![Vec::new()];
                    for (k, &m) in parts.iter().enumerate() {
                        let opts: Vec<usize> = if k == block { vec![inner] } else { (1..=m).collect() };
                        let mut next = Vec::new();
                        for prefix in &choices {
                            for &j in &opts {
                                let mut v = prefix.clone();
                                v.push(OperadElement::Dias { arity: m, index: j });
                                next.push(v);
                            }
                        }
                        choices = next;
                    }
                    for args in choices {
                        let p = OperadElement::Dias {
                            arity: parts.len(),
                            index: block + 1,
                        };
                        out.push((p, args));
                    }
                }
                out
            }
        }
    }

    fn check(self, e: &OperadElement) -> Result<(), OperadError> {
        if e.instance() == self {
            Ok(())
        } else {
            Err(OperadError::WrongInstance {
                instance: self.name().into(),
                element: e.to_string(),
            })
        }
    }

    /// Parse an element key: `n` for As, `n:i` for Dias, a tree for Dup.
    pub fn parse_element(self, key: &str) -> Result<OperadElement, ParseError> {
        let bad = |message: &str| ParseError {
            position: 0,
            message: message.into(),
        };
        match self {
            Instance::As => {
                let n: usize = key.trim().parse().map_err(|_| bad("expected an arity"))?;
                OperadElement::new_as(n).map_err(|e| bad(&e.to_string()))
            }
            Instance::Dias => {
                let (n, i) = key.trim().split_once(':').ok_or_else(|| bad("expected n:i"))?;
                let n: usize = n.trim().parse().map_err(|_| bad("expected an arity"))?;
                let i: usize = i.trim().parse().map_err(|_| bad("expected an index"))?;
                OperadElement::new_dias(n, i).map_err(|e| bad(&e.to_string()))
            }
            Instance::Dup => {
                let t = Tree::parse(key)?;
                OperadElement::new_dup(t).map_err(|e| bad(&e.to_string()))
            }
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperadElement {
    As(usize),
    Dias { arity: usize, index: usize },
    Dup(Tree),
}

impl OperadElement {
    pub fn new_as(n: usize) -> Result<Self, OperadError> {
        if n == 0 {
            return Err(OperadError::InvalidElement("As arity must be at least 1".into()));
        }
        Ok(OperadElement::As(n))
    }

    pub fn new_dias(arity: usize, index: usize) -> Result<Self, OperadError> {
        if arity == 0 || index == 0 || index > arity {
            return Err(OperadError::InvalidElement(format!(
                "Dias element ({arity},{index}) needs 1 <= index <= arity"
            )));
        }
        Ok(OperadElement::Dias { arity, index })
    }

    pub fn new_dup(t: Tree) -> Result<Self, OperadError> {
        if t.is_leaf() {
            return Err(OperadError::InvalidElement("the leaf is not an operation".into()));
        }
        Ok(OperadElement::Dup(t))
    }

    pub fn instance(&self) -> Instance {
        match self {
            OperadElement::As(_) => Instance::As,
            OperadElement::Dias { .. } => Instance::Dias,
            OperadElement::Dup(_) => Instance::Dup,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            OperadElement::As(n) => *n,
            OperadElement::Dias { arity, .. } => *arity,
            OperadElement::Dup(t) => t.order(),
        }
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self {
            OperadElement::Dup(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperadElement::As(n) => write!(f, "{n}"),
            OperadElement::Dias { arity, index } => write!(f, "{arity}:{index}"),
            OperadElement::Dup(t) => write!(f, "{t}"),
        }
    }
}

/// Element of the graded monoid `{e} ∪ P`. For trees, `Unit` is the leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidElement {
    Unit,
    Op(OperadElement),
}

impl MonoidElement {
    pub fn grading(&self) -> usize {
        match self {
            MonoidElement::Unit => 0,
            MonoidElement::Op(p) => p.arity(),
        }
    }

    pub fn op(&self) -> Option<&OperadElement> {
        match self {
            MonoidElement::Unit => None,
            MonoidElement::Op(p) => Some(p),
        }
    }

    /// Trees view the unit as the leaf.
    pub fn from_tree(t: Tree) -> MonoidElement {
        if t.is_leaf() {
            MonoidElement::Unit
        } else {
            MonoidElement::Op(OperadElement::Dup(t))
        }
    }

    pub fn to_tree(&self) -> Option<Tree> {
        match self {
            MonoidElement::Unit => Some(Tree::leaf()),
            MonoidElement::Op(OperadElement::Dup(t)) => Some(t.clone()),
            MonoidElement::Op(_) => None,
        }
    }
}

impl From<OperadElement> for MonoidElement {
    fn from(p: OperadElement) -> Self {
        MonoidElement::Op(p)
    }
}

/// An operad together with a validated associative binary element `p2`,
/// giving the monoid product `p · q = γ(p2; p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiplicative {
    instance: Instance,
    p2: OperadElement,
}

impl Multiplicative {
    pub fn new(instance: Instance, p2: OperadElement) -> Result<Self, OperadError> {
        if p2.instance() != instance {
            return Err(OperadError::WrongInstance {
                instance: instance.name().into(),
                element: p2.to_string(),
            });
        }
        if p2.arity() != 2 {
            return Err(OperadError::NotAssociative(p2.to_string()));
        }
        let id = instance.identity();
        let l = instance.compose(&p2, &[p2.clone(), id.clone()])?;
        let r = instance.compose(&p2, &[id, p2.clone()])?;
        if l != r {
            return Err(OperadError::NotAssociative(p2.to_string()));
        }
        Ok(Multiplicative { instance, p2 })
    }

    /// Look up a declared associative element by name (`over`, `under`,
    /// `left`, `right`, or `as`).
    pub fn named(instance: Instance, name: &str) -> Result<Self, OperadError> {
        let found = instance
            .associative_elements()
            .into_iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| OperadError::NotAssociative(format!("{name} in {instance}")))?;
        Multiplicative::new(instance, found.1)
    }

    pub fn dup_over() -> Self {
        Multiplicative::named(Instance::Dup, "over").expect("declared")
    }

    pub fn dup_under() -> Self {
        Multiplicative::named(Instance::Dup, "under").expect("declared")
    }

    pub fn as_plus() -> Self {
        Multiplicative::named(Instance::As, "as").expect("declared")
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn p2(&self) -> &OperadElement {
        &self.p2
    }

    pub fn p2_name(&self) -> &'static str {
        self.instance
            .associative_elements()
            .into_iter()
            .find(|(_, e)| *e == self.p2)
            .map(|(n, _)| n)
            .unwrap_or("?")
    }

    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        match (a, b) {
            (MonoidElement::Unit, x) | (x, MonoidElement::Unit) => x.clone(),
            (MonoidElement::Op(p), MonoidElement::Op(q)) => {
                if let (OperadElement::Dup(s), OperadElement::Dup(t), OperadElement::Dup(m)) =
                    (p, q, &self.p2)
                {
                    // shortcut: the two binary trees act as the graftings
                    if m.children().is_some_and(|(_, r)| r.is_leaf()) {
                        return MonoidElement::Op(OperadElement::Dup(s.over(t)));
                    }
                    return MonoidElement::Op(OperadElement::Dup(s.under(t)));
                }
                MonoidElement::Op(
                    self.instance
                        .compose(&self.p2, &[p.clone(), q.clone()])
                        .expect("same instance"),
                )
            }
        }
    }

    /// All factorizations `u = a · b`, including the trivial ones.
    pub fn factorizations(&self, u: &MonoidElement) -> Vec<(MonoidElement, MonoidElement)> {
        let mut out = vec![(u.clone(), MonoidElement::Unit)];
        let Some(p) = u.op() else {
            return out;
        };
        out.push((MonoidElement::Unit, u.clone()));
        for (t, args) in self.instance.decompositions(p) {
            if t == self.p2 {
                out.push((MonoidElement::Op(args[0].clone()), MonoidElement::Op(args[1].clone())));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::named::*;
    use proptest::prelude::*;

    fn dup(t: Tree) -> OperadElement {
        OperadElement::Dup(t)
    }

    #[test]
    fn as_compose() {
        let i = Instance::As;
        let args = [OperadElement::As(2), OperadElement::As(1), OperadElement::As(2)];
        assert_eq!(i.compose(&OperadElement::As(3), &args).unwrap(), OperadElement::As(5));
        assert_eq!(
            i.compose(&OperadElement::As(1), &[OperadElement::As(4)]).unwrap(),
            OperadElement::As(4)
        );
        assert_eq!(
            i.compose(&OperadElement::As(2), &[OperadElement::As(4)]),
            Err(OperadError::ArityMismatch { expected: 2, given: 1 })
        );
    }

    #[test]
    fn dias_compose_offset() {
        let d = |n, i| OperadElement::new_dias(n, i).unwrap();
        assert_eq!(
            Instance::Dias.compose(&d(2, 2), &[d(2, 1), d(3, 2)]).unwrap(),
            d(5, 4)
        );
        assert!(OperadElement::new_dias(2, 3).is_err());
    }

    #[test]
    fn monoid_products() {
        let over = Multiplicative::dup_over();
        let v = MonoidElement::from_tree(vtx());
        assert_eq!(over.mul(&v, &v), MonoidElement::from_tree(ab()));
        assert_eq!(Multiplicative::dup_under().mul(&v, &v), MonoidElement::from_tree(ba()));
        let q = MonoidElement::from_tree(aca());
        assert_eq!(over.mul(&MonoidElement::Unit, &q), q);
        let plus = Multiplicative::as_plus();
        assert_eq!(
            plus.mul(&MonoidElement::Op(OperadElement::As(3)), &MonoidElement::Op(OperadElement::As(4))),
            MonoidElement::Op(OperadElement::As(7))
        );
        assert!(matches!(
            Multiplicative::new(Instance::Dup, dup(abc())),
            Err(OperadError::NotAssociative(_))
        ));
    }

    #[test]
    fn grafting_shortcut_agrees_with_compose() {
        for m in [Multiplicative::dup_over(), Multiplicative::dup_under()] {
            for a in crate::tree::trees_up_to(3) {
                for b in crate::tree::trees_up_to(3) {
                    let direct = Instance::Dup
                        .compose(m.p2(), &[dup(a.clone()), dup(b.clone())])
                        .unwrap();
                    let got = m.mul(&MonoidElement::from_tree(a.clone()), &MonoidElement::from_tree(b.clone()));
                    assert_eq!(got, MonoidElement::Op(direct));
                }
            }
        }
    }

    #[test]
    fn declared_elements_validate() {
        for inst in Instance::ALL {
            for (name, _) in inst.associative_elements() {
                Multiplicative::named(inst, name).unwrap();
            }
        }
    }

    #[test]
    fn identity_laws() {
        for inst in Instance::ALL {
            let id = inst.identity();
            for n in 1..=6 {
                for p in inst.enumerate(n) {
                    assert_eq!(inst.compose(&id, std::slice::from_ref(&p)).unwrap(), p);
                    assert_eq!(inst.compose(&p, &vec![id.clone(); n]).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn decompositions_recompose() {
        for inst in Instance::ALL {
            for n in 1..=5 {
                for u in inst.enumerate(n) {
                    let ds = inst.decompositions(&u);
                    for (p, args) in &ds {
                        assert_eq!(inst.compose(p, args).unwrap(), u);
                    }
                    let mut sorted = ds.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), ds.len());
                }
            }
        }
    }

    fn arb_element(inst: Instance, max: usize) -> impl Strategy<Value = OperadElement> {
        (1..=max, any::<prop::sample::Index>()).prop_map(move |(n, i)| {
            let all = inst.enumerate(n);
            all[i.index(all.len())].clone()
        })
    }

    fn arb_nested(inst: Instance) -> impl Strategy<Value = (OperadElement, Vec<OperadElement>, Vec<OperadElement>)> {
        arb_element(inst, 2).prop_flat_map(move |p| {
            let n = p.arity();
            prop::collection::vec(arb_element(inst, 2), n).prop_flat_map(move |qs| {
                let m: usize = qs.iter().map(|q| q.arity()).sum();
                let p = p.clone();
                prop::collection::vec(arb_element(inst, 2), m)
                    .prop_map(move |us| (p.clone(), qs.clone(), us))
            })
        })
    }

    fn check_assoc(inst: Instance, p: &OperadElement, qs: &[OperadElement], us: &[OperadElement]) {
        let lhs = inst.compose(&inst.compose(p, qs).unwrap(), us).unwrap();
        let mut blocks = Vec::new();
        let mut k = 0;
        for q in qs {
            let block = &us[k..k + q.arity()];
            blocks.push(inst.compose(q, block).unwrap());
            k += q.arity();
        }
        let rhs = inst.compose(p, &blocks).unwrap();
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #[test]
        fn associativity_as((p, qs, us) in arb_nested(Instance::As)) {
            check_assoc(Instance::As, &p, &qs, &us);
        }

        #[test]
        fn associativity_dias((p, qs, us) in arb_nested(Instance::Dias)) {
            check_assoc(Instance::Dias, &p, &qs, &us);
        }

        #[test]
        fn associativity_dup((p, qs, us) in arb_nested(Instance::Dup)) {
            check_assoc(Instance::Dup, &p, &qs, &us);
        }
    }
}

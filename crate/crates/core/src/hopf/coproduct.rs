use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::algebra::{AlgebraKind, Family, Gen, Tensor, Word};
use crate::coeff::Rational;
use crate::error::HopfError;
use crate::operad::{Instance, OperadElement};
use crate::tree::{Graft, Tree};

/// The coproducts and coactions on the tree and integer algebras. A
/// coaction maps into a tensor whose legs live in different algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coproduct {
    /// Splittings `u = t / s` or `u = t \ s`.
    Inv(Graft),
    /// Substitutions `u = mu_t(s_1, .., s_k)`.
    Dif,
    Rho,
    /// Closed formula on `V(u)`.
    Alpha,
    /// Recursion along the last over-factor.
    AlphaRecursive,
    FdB,
    Sym,
    /// Substitutions, left leg in the inversion algebra.
    CoactInv(Graft),
    /// Operad decompositions, left leg in the rho algebra.
    CoactDif,
    /// Substitutions with arguments of the form `s / vtx`.
    CoactRho,
}

impl Coproduct {
    pub const ALL: [Coproduct; 12] = [
        Coproduct::Inv(Graft::Over),
        Coproduct::Inv(Graft::Under),
        Coproduct::Dif,
        Coproduct::Rho,
        Coproduct::Alpha,
        Coproduct::AlphaRecursive,
        Coproduct::FdB,
        Coproduct::Sym,
        Coproduct::CoactInv(Graft::Over),
        Coproduct::CoactInv(Graft::Under),
        Coproduct::CoactDif,
        Coproduct::CoactRho,
    ];

    pub fn name(self) -> String {
        match self {
            Coproduct::Inv(g) => format!("inv-{}", g.name()),
            Coproduct::Dif => "dif".into(),
            Coproduct::Rho => "rho".into(),
            Coproduct::Alpha => "alpha".into(),
            Coproduct::AlphaRecursive => "alpha-recursive".into(),
            Coproduct::FdB => "fdb".into(),
            Coproduct::Sym => "sym".into(),
            Coproduct::CoactInv(g) => format!("coact-inv-{}", g.name()),
            Coproduct::CoactDif => "coact-dif".into(),
            Coproduct::CoactRho => "coact-rho".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<Coproduct> {
        Coproduct::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn is_coaction(self) -> bool {
        matches!(self, Coproduct::CoactInv(_) | Coproduct::CoactDif | Coproduct::CoactRho)
    }

    /// The algebra the map is defined on.
    pub fn source(self, commutative: bool) -> AlgebraKind {
        let family = match self {
            Coproduct::Inv(Graft::Over) | Coproduct::CoactInv(Graft::Over) => Family::InvOver,
            Coproduct::Inv(Graft::Under) | Coproduct::CoactInv(Graft::Under) => Family::InvUnder,
            Coproduct::Dif => Family::Dif,
            Coproduct::Rho | Coproduct::CoactDif | Coproduct::CoactRho => Family::Rho,
            Coproduct::Alpha | Coproduct::AlphaRecursive => Family::Alpha,
            Coproduct::FdB => Family::FdB,
            Coproduct::Sym => Family::Sym,
        };
        AlgebraKind { family, commutative }
    }

    /// Kinds of the two legs of the image.
    pub fn targets(self, commutative: bool) -> Vec<AlgebraKind> {
        let src = self.source(commutative);
        let right = match self {
            Coproduct::CoactInv(_) | Coproduct::CoactDif => AlgebraKind {
                family: Family::Dif,
                commutative,
            },
            _ => src,
        };
        vec![src, right]
    }

    /// Image of one generator (or unit), memoized.
    pub fn generator(self, g: &Gen, commutative: bool) -> Result<Tensor, HopfError> {
        let src = self.source(commutative);
        src.check(g)?;
        if src.is_unit(g) {
            return Ok(Tensor::unit(self.targets(commutative)));
        }
        let key = (self, commutative, g.clone());
        if let Some(t) = cache().read().expect("cache lock").get(&key) {
            return Ok(Tensor::clone(t));
        }
        let value = if commutative {
            match (self, g) {
                (Coproduct::FdB, Gen::A(n)) => fdb_comm(*n),
                _ => self.generator(g, false)?.with_commutative(true),
            }
        } else {
            self.generator_nc(g)
        };
        cache()
            .write()
            .expect("cache lock")
            .insert(key, Arc::new(value.clone()));
        Ok(value)
    }

    /// Image of a word: the product of the images of its letters.
    pub fn word(self, w: &[Gen], commutative: bool) -> Result<Tensor, HopfError> {
        let mut out = Tensor::unit(self.targets(commutative));
        for g in w {
            out = out.mul(&self.generator(g, commutative)?);
        }
        Ok(out)
    }

    /// Image of a one-legged tensor living in the source algebra.
    pub fn element(self, x: &Tensor) -> Result<Tensor, HopfError> {
        let kind = self.check_kind(x)?;
        let mut out = Tensor::zero(self.targets(kind.commutative));
        for (words, q) in x.terms() {
            out = out.add(&self.word(&words[0], kind.commutative)?.scale(q));
        }
        Ok(out)
    }

    /// Apply the map to leg `i` of a tensor.
    pub fn apply_leg(self, x: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        let kind = x.kinds()[i];
        if kind != self.source(kind.commutative) {
            return Err(self.mismatch(kind));
        }
        x.apply_leg(i, &self.targets(kind.commutative), |w| self.word(w, kind.commutative))
    }

    pub(crate) fn check_kind(self, x: &Tensor) -> Result<AlgebraKind, HopfError> {
        let kind = match x.kinds() {
            [k] => *k,
            _ => {
                return Err(HopfError::KindMismatch {
                    coproduct: self.name(),
                    algebra: format!("{}-legged tensor", x.legs()),
                })
            }
        };
        if kind != self.source(kind.commutative) {
            return Err(self.mismatch(kind));
        }
        Ok(kind)
    }

    pub(crate) fn mismatch(self, kind: AlgebraKind) -> HopfError {
        HopfError::KindMismatch {
            coproduct: self.name(),
            algebra: kind.to_string(),
        }
    }

    fn generator_nc(self, g: &Gen) -> Tensor {
        let kinds = self.targets(false);
        let tree = |t: &Tree| vec![Gen::tree(t)];
        let trees = |ts: &[Tree]| ts.iter().map(Gen::tree).collect::<Word>();
        let mut out = Tensor::zero(kinds.clone());
        match (self, g) {
            (Coproduct::Inv(side), Gen::Tree(u)) => {
                let splits = match side {
                    Graft::Over => u.over_splits(),
                    Graft::Under => u.under_splits(),
                };
                for (t, s) in splits {
                    out.add_term(vec![tree(&t), tree(&s)], Rational::one());
                }
            }
            (Coproduct::Dif | Coproduct::CoactInv(_), Gen::Tree(u)) => {
                for d in decompositions(u).iter() {
                    out.add_term(vec![tree(&d.t), trees(&d.args)], Rational::one());
                }
            }
            (Coproduct::CoactDif, Gen::Tree(u)) => {
                let e = OperadElement::Dup(u.clone());
                for (p, qs) in Instance::Dup.decompositions(&e) {
                    let left = vec![Gen::tree(p.as_tree().expect("dup element"))];
                    let right = qs
                        .iter()
                        .map(|q| Gen::tree(q.as_tree().expect("dup element")))
                        .collect();
                    out.add_term(vec![left, right], Rational::one());
                }
            }
            (Coproduct::Rho, Gen::Tree(u)) => {
                out.add_term(vec![vec![], tree(u)], Rational::one());
                for (w, last) in u.over_splits() {
                    if w.is_leaf() {
                        continue;
                    }
                    for (t, mut s) in slashed_decompositions(&w) {
                        s.push(last.clone());
                        out.add_term(vec![tree(&t), trees(&s)], Rational::one());
                    }
                }
            }
            (Coproduct::CoactRho, Gen::Tree(u)) => {
                for (t, s) in slashed_decompositions(u) {
                    out.add_term(vec![tree(&t), trees(&s)], Rational::one());
                }
            }
            (Coproduct::Alpha, Gen::Tree(v)) => {
                let u = v.children().expect("alpha generator").1;
                out.add_term(vec![vec![], tree(v)], Rational::one());
                if u.is_leaf() {
                    out.add_term(vec![tree(v), vec![]], Rational::one());
                }
                for (t, s) in slashed_decompositions(&u) {
                    out.add_term(vec![tree(&t.v_wrap()), v_word(&s)], Rational::one());
                }
            }
            (Coproduct::AlphaRecursive, Gen::Tree(v)) => {
                let t = v.children().expect("alpha generator").1;
                out.add_term(vec![vec![], tree(v)], Rational::one());
                out = out.add(&delta_alpha(&t));
            }
            (Coproduct::FdB, Gen::A(n)) => return fdb_nc(*n),
            (Coproduct::Sym, Gen::B(n)) => return sym_coproduct(*n),
            _ => unreachable!("generator checked against the source kind"),
        }
        out
    }
}

type Cache = RwLock<HashMap<(Coproduct, bool, Gen), Arc<Tensor>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn decompositions(u: &Tree) -> Arc<Vec<crate::tree::Decomposition>> {
    u.decompositions().expect("generators are not the leaf")
}

/// Every `(t, [s_i])` with `u = mu_t(s_1 / vtx, .., s_k / vtx)`.
fn slashed_decompositions(u: &Tree) -> Vec<(Tree, Vec<Tree>)> {
    if u.is_leaf() {
        return Vec::new();
    }
    decompositions(u)
        .iter()
        .filter_map(|d| {
            let s: Option<Vec<Tree>> = d
                .args
                .iter()
                .map(|a| a.children().and_then(|(l, r)| r.is_leaf().then_some(l)))
                .collect();
            s.map(|s| (d.t.clone(), s))
        })
        .collect()
}

/// `s_1 / .. / s_k` written as a word of `V(..)` generators.
fn v_word(s: &[Tree]) -> Word {
    s.iter()
        .flat_map(|x| x.over_factorize())
        .map(|f| Gen::Tree(f.v_wrap()))
        .collect()
}

/// The right coaction in the recursion `Δ(V(t)) = 1 ⊗ V(t) + δ(V(t))`.
fn delta_alpha(t: &Tree) -> Tensor {
    let kind = AlgebraKind::nc(Family::Alpha);
    let mut factors = t.over_factorize();
    let Some(last) = factors.pop() else {
        let mut out = Tensor::zero(vec![kind, kind]);
        out.add_term(vec![vec![Gen::Tree(Tree::vtx())], vec![]], Rational::one());
        return out;
    };
    let left: Word = factors.iter().map(|f| Gen::Tree(f.v_wrap())).collect();
    let head = Coproduct::AlphaRecursive
        .word(&left, false)
        .expect("alpha words");
    let tail = delta_alpha(&last);
    head.mul(&tail)
        .apply_leg(0, &[kind], |w| {
            let inner: Vec<Tree> = w
                .iter()
                .map(|g| g.as_tree().and_then(Tree::children).expect("alpha generator").1)
                .collect();
            Ok(Tensor::generator(kind, Gen::Tree(Tree::over_fold(&inner).v_wrap())))
        })
        .expect("infallible leg map")
}

fn weak_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Noncommutative Faà di Bruno coproduct of `a_n`.
pub fn fdb_nc(n: usize) -> Tensor {
    let kind = AlgebraKind::nc(Family::FdB);
    let mut out = Tensor::zero(vec![kind, kind]);
    for m in 0..=n {
        for ks in weak_compositions(n - m, m + 1) {
            out.add_term(vec![vec![Gen::A(m)], ks.into_iter().map(Gen::A).collect()], Rational::one());
        }
    }
    out
}

/// Partitions of `n` into exactly `l` positive parts, as multiplicity maps.
fn partitions(n: usize, l: usize, max: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, l - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Commutative Faà di Bruno coproduct of `a_n` by the multinomial formula.
pub fn fdb_comm(n: usize) -> Tensor {
    let kind = AlgebraKind::comm(Family::FdB);
    let mut out = Tensor::zero(vec![kind, kind]);
    for m in 0..=n {
        let rest = n - m;
        for l in 0..=(m + 1).min(rest) {
            for parts in partitions(rest, l, rest) {
                let mut mult: HashMap<usize, usize> = HashMap::new();
                for &p in &parts {
                    *mult.entry(p).or_default() += 1;
                }
                let denom: BigInt = mult.values().map(|&p| factorial(p)).product();
                let c = binomial(m + 1, l) * factorial(l) / denom;
                out.add_term(
                    vec![vec![Gen::A(m)], parts.into_iter().map(Gen::A).collect()],
                    Rational::from_integer(c),
                );
            }
        }
    }
    out
}

/// `Δ b_n = Σ b_k ⊗ b_{n-k}`.
pub fn sym_coproduct(n: usize) -> Tensor {
    let kind = AlgebraKind::nc(Family::Sym);
    let mut out = Tensor::zero(vec![kind, kind]);
    for k in 0..=n {
        out.add_term(vec![vec![Gen::B(k)], vec![Gen::B(n - k)]], Rational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::tree::named::*;
    use crate::tree::trees_up_to;

    fn g(t: Tree) -> Gen {
        Gen::Tree(t)
    }

    /// Build a two-legged tensor from `(coefficient, left trees, right trees)`.
    fn expect(kinds: Vec<AlgebraKind>, terms: &[(i64, Vec<Tree>, Vec<Tree>)]) -> Tensor {
        let mut out = Tensor::zero(kinds);
        for (c, l, r) in terms {
            out.add_term(
                vec![l.iter().cloned().map(Gen::Tree).collect(), r.iter().cloned().map(Gen::Tree).collect()],
                int(*c),
            );
        }
        out
    }

    fn cop(c: Coproduct, t: Tree) -> Tensor {
        c.generator(&g(t), false).unwrap()
    }

    #[test]
    fn inv_coproducts() {
        let k = Coproduct::Inv(Graft::Over).targets(false);
        assert_eq!(
            cop(Coproduct::Inv(Graft::Over), ab()),
            expect(k, &[(1, vec![ab()], vec![]), (1, vec![vtx()], vec![vtx()]), (1, vec![], vec![ab()])])
        );
        let k = Coproduct::Inv(Graft::Under).targets(false);
        assert_eq!(
            cop(Coproduct::Inv(Graft::Under), ab()),
            expect(k.clone(), &[(1, vec![ab()], vec![]), (1, vec![], vec![ab()])])
        );
        assert_eq!(
            cop(Coproduct::Inv(Graft::Under), ba()),
            expect(k, &[(1, vec![ba()], vec![]), (1, vec![vtx()], vec![vtx()]), (1, vec![], vec![ba()])])
        );
    }

    #[test]
    fn dif_table() {
        let k = Coproduct::Dif.targets(false);
        assert_eq!(
            cop(Coproduct::Dif, abc()),
            expect(k.clone(), &[(1, vec![abc()], vec![]), (2, vec![ab()], vec![ab()]), (1, vec![], vec![abc()])])
        );
        assert_eq!(
            cop(Coproduct::Dif, aca()),
            expect(
                k.clone(),
                &[
                    (1, vec![aca()], vec![]),
                    (1, vec![ab()], vec![ba()]),
                    (1, vec![ba()], vec![ab()]),
                    (1, vec![], vec![aca()])
                ]
            )
        );
        assert_eq!(cop(Coproduct::Dif, vtx()), Tensor::unit(k));
    }

    #[test]
    fn inv_coaction_table() {
        let c = Coproduct::CoactInv(Graft::Over);
        let k = c.targets(false);
        assert_eq!(cop(c, vtx()), expect(k.clone(), &[(1, vec![vtx()], vec![])]));
        assert_eq!(
            cop(c, abc()),
            expect(k.clone(), &[(1, vec![abc()], vec![]), (2, vec![ab()], vec![ab()]), (1, vec![vtx()], vec![abc()])])
        );
        assert_eq!(
            cop(c, cab()),
            expect(k, &[(1, vec![cab()], vec![]), (1, vec![ba()], vec![ab()]), (1, vec![vtx()], vec![cab()])])
        );
    }

    #[test]
    fn rho_table() {
        let k = Coproduct::Rho.targets(false);
        assert_eq!(
            cop(Coproduct::Rho, ab()),
            expect(k.clone(), &[(1, vec![ab()], vec![]), (2, vec![vtx()], vec![vtx()]), (1, vec![], vec![ab()])])
        );
        assert_eq!(
            cop(Coproduct::Rho, cba()),
            expect(k.clone(), &[(1, vec![cba()], vec![]), (1, vec![], vec![cba()])])
        );
        assert_eq!(
            cop(Coproduct::Rho, abc()),
            expect(
                k,
                &[
                    (1, vec![abc()], vec![]),
                    (3, vec![ab()], vec![vtx()]),
                    (2, vec![vtx()], vec![ab()]),
                    (1, vec![vtx()], vec![vtx(), vtx()]),
                    (1, vec![], vec![abc()])
                ]
            )
        );
    }

    #[test]
    fn rho_coaction() {
        let c = Coproduct::CoactRho;
        let k = c.targets(false);
        assert_eq!(cop(c, vtx()), expect(k.clone(), &[(1, vec![vtx()], vec![])]));
        assert_eq!(cop(c, ab()), expect(k.clone(), &[(1, vec![ab()], vec![]), (1, vec![vtx()], vec![vtx()])]));
        assert_eq!(cop(c, ba()), expect(k, &[(1, vec![ba()], vec![])]));
        for u in trees_up_to(5) {
            let v = u.v_wrap();
            let lhs = cop(Coproduct::Rho, v.clone());
            let mut rhs = cop(c, v.clone());
            rhs.add_term(vec![vec![], vec![g(v)]], int(1));
            assert_eq!(lhs, rhs, "{u}");
        }
    }

    #[test]
    fn alpha_closed_form() {
        let k = Coproduct::Alpha.targets(false);
        assert_eq!(
            cop(Coproduct::Alpha, vtx()),
            expect(k.clone(), &[(1, vec![vtx()], vec![]), (1, vec![], vec![vtx()])])
        );
        assert_eq!(
            cop(Coproduct::Alpha, ba()),
            expect(k.clone(), &[(1, vec![ba()], vec![]), (1, vec![], vec![ba()])])
        );
        assert_eq!(
            cop(Coproduct::Alpha, cab()),
            expect(k, &[(1, vec![cab()], vec![]), (1, vec![ba()], vec![vtx()]), (1, vec![], vec![cab()])])
        );
    }

    #[test]
    fn alpha_recursion_matches_closed_form() {
        for u in std::iter::once(leaf()).chain(trees_up_to(5)) {
            let v = u.v_wrap();
            assert_eq!(cop(Coproduct::Alpha, v.clone()), cop(Coproduct::AlphaRecursive, v), "{u}");
        }
    }

    #[test]
    fn coact_dif_matches_inv_coaction_terms() {
        for u in trees_up_to(5) {
            let a = cop(Coproduct::CoactDif, u.clone());
            let b = cop(Coproduct::CoactInv(Graft::Over), u.clone());
            assert_eq!(a.relabel(b.kinds().to_vec()), b, "{u}");
        }
    }

    #[test]
    fn fdb_and_sym() {
        let k = AlgebraKind::nc(Family::Sym);
        let mut s = Tensor::zero(vec![k, k]);
        s.add_term(vec![vec![Gen::B(2)], vec![]], int(1));
        s.add_term(vec![vec![Gen::B(1)], vec![Gen::B(1)]], int(1));
        s.add_term(vec![vec![], vec![Gen::B(2)]], int(1));
        assert_eq!(sym_coproduct(2), s);

        let k = AlgebraKind::nc(Family::FdB);
        let mut a = Tensor::zero(vec![k, k]);
        a.add_term(vec![vec![Gen::A(2)], vec![]], int(1));
        a.add_term(vec![vec![Gen::A(1)], vec![Gen::A(1)]], int(2));
        a.add_term(vec![vec![], vec![Gen::A(2)]], int(1));
        assert_eq!(fdb_nc(2), a);
        for n in 1..=6 {
            assert_eq!(fdb_comm(n), fdb_nc(n).with_commutative(true), "n = {n}");
        }
    }

    #[test]
    fn rejects_foreign_generators() {
        assert!(Coproduct::Alpha.generator(&g(ab()), false).is_err());
        assert!(Coproduct::Dif.generator(&Gen::A(1), false).is_err());
        assert_eq!(Coproduct::from_name("coact-inv-under"), Some(Coproduct::CoactInv(Graft::Under)));
    }
}

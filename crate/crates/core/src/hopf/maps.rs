use std::collections::HashMap;

use num_traits::One;

use super::algebra::{AlgebraKind, Family, Gen, Tensor, Word};
use super::coproduct::Coproduct;
use crate::coeff::{Rational, RingValue};
use crate::error::HopfError;
use crate::series::GradedSeries;
use crate::tree::{enumerate_trees, Graft, Tree};

/// Antipode of a graded connected bialgebra, by the left recursion
/// `S(g) = -Σ S(w') w''` over the terms of `Δ(g)` other than `g ⊗ 1`.
pub struct Antipode {
    cop: Coproduct,
    kind: AlgebraKind,
    memo: HashMap<Gen, Tensor>,
}

impl Antipode {
    pub fn new(cop: Coproduct, kind: AlgebraKind) -> Result<Self, HopfError> {
        if cop.is_coaction() || cop.source(kind.commutative) != kind {
            return Err(cop.mismatch(kind));
        }
        Ok(Antipode {
            cop,
            kind,
            memo: HashMap::new(),
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn generator(&mut self, g: &Gen) -> Result<Tensor, HopfError> {
        self.kind.check(g)?;
        if self.kind.is_unit(g) {
            return Ok(Tensor::unit(vec![self.kind]));
        }
        if let Some(s) = self.memo.get(g) {
            return Ok(s.clone());
        }
        let delta = self.cop.generator(g, self.kind.commutative)?;
        let top = vec![vec![g.clone()], vec![]];
        if !delta.coeff(&top).is_one() {
            return Err(HopfError::NotConnected(g.code()));
        }
        let degree = self.kind.grading(g);
        let mut out = Tensor::zero(vec![self.kind]);
        for (words, q) in delta.terms() {
            if *words == top {
                continue;
            }
            if self.kind.word_grading(&words[0]) >= degree {
                return Err(HopfError::NotConnected(g.code()));
            }
            let left = self.word(&words[0])?;
            let right = Tensor::word(self.kind, words[1].clone());
            out = out.sub(&left.mul(&right).scale(q));
        }
        self.memo.insert(g.clone(), out.clone());
        Ok(out)
    }

    /// `S` reverses products.
    pub fn word(&mut self, w: &[Gen]) -> Result<Tensor, HopfError> {
        let mut out = Tensor::unit(vec![self.kind]);
        for g in w.iter().rev() {
            out = out.mul(&self.generator(g)?);
        }
        Ok(out)
    }

    pub fn element(&mut self, x: &Tensor) -> Result<Tensor, HopfError> {
        if x.kinds() != [self.kind] {
            return Err(self.cop.mismatch(x.kinds().first().copied().unwrap_or(self.kind)));
        }
        let mut out = Tensor::zero(vec![self.kind]);
        for (words, q) in x.terms() {
            out = out.add(&self.word(&words[0])?.scale(q));
        }
        Ok(out)
    }

    /// Apply `S` to leg `i`.
    pub fn apply_leg(&mut self, x: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        let kind = self.kind;
        x.apply_leg(i, &[kind], |w| self.word(w))
    }
}

/// Antipode of a single generator.
pub fn antipode(g: &Gen, kind: AlgebraKind, cop: Coproduct) -> Result<Tensor, HopfError> {
    Antipode::new(cop, kind)?.generator(g)
}

/// A multiplicative character: a value on each generator, zero where
/// unset, extended to words as products.
#[derive(Debug, Clone, Default)]
pub struct Character {
    values: HashMap<Gen, RingValue>,
}

impl Character {
    /// The counit: zero on every generator.
    pub fn counit() -> Self {
        Character::default()
    }

    pub fn set(&mut self, g: Gen, v: RingValue) {
        self.values.insert(g, v);
    }

    pub fn get(&self, g: &Gen) -> RingValue {
        self.values.get(g).cloned().unwrap_or_else(RingValue::zero)
    }

    /// Coefficients of a tree-keyed series, read as a character on trees.
    pub fn from_series(s: &GradedSeries) -> Self {
        let mut out = Character::default();
        for (k, v) in s.terms() {
            if let Some(t) = k.to_tree() {
                out.set(Gen::Tree(t), v.clone());
            }
        }
        out
    }

    pub fn word(&self, w: &[Gen]) -> RingValue {
        w.iter().fold(RingValue::one(), |acc, g| &acc * &self.get(g))
    }
}

/// `(χ ⊗ ξ)(x)` on a two-legged tensor.
pub fn convolve(chi: &Character, xi: &Character, x: &Tensor) -> RingValue {
    x.terms()
        .map(|(words, q)| &(&chi.word(&words[0]) * &xi.word(&words[1])) * &RingValue::from(q.clone()))
        .sum()
}

/// Algebra morphisms between the tree and integer algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Morphism {
    /// `b_n ↦ Σ_{|t| = n} t`.
    EmbedB(Graft),
    /// `a_n ↦ Σ_{|t| = n + 1} t`.
    EmbedA,
    /// Comb of order `n` ↦ `b_n`, other trees ↦ 0.
    SectionB(Graft),
    /// Comb of order `n + 1` ↦ `a_n`, other trees ↦ 0.
    SectionA(Graft),
    /// `s / vtx ↦ s`, other trees ↦ 0.
    ProjectP,
    /// `u ↦ V(u_1) .. V(u_n)` for `u = V(u_1) / .. / V(u_n)`.
    ProjectR,
}

impl Morphism {
    pub fn name(self) -> String {
        match self {
            Morphism::EmbedB(g) => format!("embed-b-{}", g.name()),
            Morphism::EmbedA => "embed-a".into(),
            Morphism::SectionB(g) => format!("section-b-{}", g.name()),
            Morphism::SectionA(g) => format!("section-a-{}", g.name()),
            Morphism::ProjectP => "project-p".into(),
            Morphism::ProjectR => "project-r".into(),
        }
    }

    pub fn source(self, commutative: bool) -> AlgebraKind {
        let family = match self {
            Morphism::EmbedB(_) => Family::Sym,
            Morphism::EmbedA => Family::FdB,
            Morphism::SectionB(Graft::Over) => Family::InvOver,
            Morphism::SectionB(Graft::Under) => Family::InvUnder,
            Morphism::SectionA(_) | Morphism::ProjectP => Family::Dif,
            Morphism::ProjectR => Family::Rho,
        };
        AlgebraKind { family, commutative }
    }

    pub fn target(self, commutative: bool) -> AlgebraKind {
        let family = match self {
            Morphism::EmbedB(Graft::Over) => Family::InvOver,
            Morphism::EmbedB(Graft::Under) => Family::InvUnder,
            Morphism::EmbedA => Family::Dif,
            Morphism::SectionB(_) => Family::Sym,
            Morphism::SectionA(_) => Family::FdB,
            Morphism::ProjectP => Family::Rho,
            Morphism::ProjectR => Family::Alpha,
        };
        AlgebraKind { family, commutative }
    }

    /// The matching coproducts on source and target.
    pub fn coproducts(self) -> (Coproduct, Coproduct) {
        match self {
            Morphism::EmbedB(g) => (Coproduct::Sym, Coproduct::Inv(g)),
            Morphism::EmbedA => (Coproduct::FdB, Coproduct::Dif),
            Morphism::SectionB(g) => (Coproduct::Inv(g), Coproduct::Sym),
            Morphism::SectionA(_) => (Coproduct::Dif, Coproduct::FdB),
            Morphism::ProjectP => (Coproduct::Dif, Coproduct::Rho),
            Morphism::ProjectR => (Coproduct::Rho, Coproduct::Alpha),
        }
    }

    /// Image of a generator or unit.
    pub fn generator(self, g: &Gen, commutative: bool) -> Result<Tensor, HopfError> {
        let src = self.source(commutative);
        let dst = self.target(commutative);
        src.check(g)?;
        if src.is_unit(g) {
            return Ok(Tensor::unit(vec![dst]));
        }
        let mut out = Tensor::zero(vec![dst]);
        let one = Rational::one;
        match (self, g) {
            (Morphism::EmbedB(_), Gen::B(n)) => {
                for t in enumerate_trees(*n) {
                    out.add_term(vec![vec![Gen::Tree(t)]], one());
                }
            }
            (Morphism::EmbedA, Gen::A(n)) => {
                for t in enumerate_trees(n + 1) {
                    out.add_term(vec![vec![Gen::Tree(t)]], one());
                }
            }
            (Morphism::SectionB(side), Gen::Tree(u)) => {
                if *u == Tree::comb(u.order(), side) {
                    out.add_term(vec![vec![Gen::B(u.order())]], one());
                }
            }
            (Morphism::SectionA(side), Gen::Tree(u)) => {
                if *u == Tree::comb(u.order(), side) {
                    out.add_term(vec![vec![Gen::A(u.order() - 1)]], one());
                }
            }
            (Morphism::ProjectP, Gen::Tree(u)) => {
                let (l, r) = u.children().expect("dif generator");
                if r.is_leaf() {
                    out.add_term(vec![vec![Gen::Tree(l)]], one());
                }
            }
            (Morphism::ProjectR, Gen::Tree(u)) => {
                let w: Word = u.over_factorize().into_iter().map(|f| Gen::Tree(f.v_wrap())).collect();
                out.add_term(vec![w], one());
            }
            _ => unreachable!("generator checked against the source kind"),
        }
        Ok(out)
    }

    pub fn word(self, w: &[Gen], commutative: bool) -> Result<Tensor, HopfError> {
        let mut out = Tensor::unit(vec![self.target(commutative)]);
        for g in w {
            out = out.mul(&self.generator(g, commutative)?);
        }
        Ok(out)
    }

    /// Apply the morphism to leg `i` of a tensor.
    pub fn apply_leg(self, x: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        let kind = x.kinds()[i];
        if kind != self.source(kind.commutative) {
            return Err(HopfError::KindMismatch {
                coproduct: self.name(),
                algebra: kind.to_string(),
            });
        }
        x.apply_leg(i, &[self.target(kind.commutative)], |w| self.word(w, kind.commutative))
    }

    /// Apply the morphism to every leg.
    pub fn apply_all(self, x: &Tensor) -> Result<Tensor, HopfError> {
        (0..x.legs()).try_fold(x.clone(), |acc, i| self.apply_leg(&acc, i))
    }

    /// `(M ⊗ M) Δ(g) - Δ'(M(g))`, zero when `M` is a coalgebra morphism at `g`.
    pub fn defect(self, g: &Gen, commutative: bool) -> Result<Tensor, HopfError> {
        let (before, after) = self.coproducts();
        let lhs = self.apply_all(&before.generator(g, commutative)?)?;
        let image = self.generator(g, commutative)?;
        let rhs = after.element(&image)?;
        Ok(lhs.sub(&rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::tree::named::*;

    fn tree_tensor(kind: AlgebraKind, terms: &[(i64, Vec<Tree>)]) -> Tensor {
        let mut out = Tensor::zero(vec![kind]);
        for (c, w) in terms {
            out.add_term(vec![w.iter().cloned().map(Gen::Tree).collect()], int(*c));
        }
        out
    }

    #[test]
    fn rho_antipode() {
        let k = AlgebraKind::nc(Family::Rho);
        let mut s = Antipode::new(Coproduct::Rho, k).unwrap();
        assert_eq!(s.generator(&Gen::Tree(vtx())).unwrap(), tree_tensor(k, &[(-1, vec![vtx()])]));
        assert_eq!(
            s.generator(&Gen::Tree(ab())).unwrap(),
            tree_tensor(k, &[(-1, vec![ab()]), (2, vec![vtx(), vtx()])])
        );
    }

    #[test]
    fn sym_antipode() {
        let k = AlgebraKind::nc(Family::Sym);
        let mut s = Antipode::new(Coproduct::Sym, k).unwrap();
        let mut b2 = Tensor::zero(vec![k]);
        b2.add_term(vec![vec![Gen::B(2)]], int(-1));
        b2.add_term(vec![vec![Gen::B(1), Gen::B(1)]], int(1));
        assert_eq!(s.generator(&Gen::B(2)).unwrap(), b2);
    }

    #[test]
    fn antipode_rejects_wrong_kind() {
        assert!(Antipode::new(Coproduct::Rho, AlgebraKind::nc(Family::Dif)).is_err());
        assert!(Antipode::new(Coproduct::CoactRho, AlgebraKind::nc(Family::Rho)).is_err());
    }

    #[test]
    fn dif_convolution_example() {
        let mut chi = Character::counit();
        chi.set(Gen::Tree(ab()), RingValue::var("a"));
        chi.set(Gen::Tree(ba()), RingValue::var("b"));
        let mut xi = Character::counit();
        xi.set(Gen::Tree(ab()), RingValue::var("c"));
        xi.set(Gen::Tree(ba()), RingValue::var("d"));
        let x = Coproduct::Dif.generator(&Gen::Tree(aca()), false).unwrap();
        let expected = RingValue::parse("a*d + b*c").unwrap();
        assert_eq!(convolve(&chi, &xi, &x), expected);
        let y = Coproduct::Dif.generator(&Gen::Tree(ab()), false).unwrap();
        assert_eq!(convolve(&chi, &Character::counit(), &y), RingValue::var("a"));
    }

    #[test]
    fn morphism_data() {
        let k = AlgebraKind::nc(Family::InvOver);
        assert_eq!(
            Morphism::EmbedB(Graft::Over).generator(&Gen::B(2), false).unwrap(),
            tree_tensor(k, &[(1, vec![ab()]), (1, vec![ba()])])
        );
        let a2 = Morphism::SectionA(Graft::Over).generator(&Gen::Tree(abc()), false).unwrap();
        assert_eq!(a2, Tensor::generator(AlgebraKind::nc(Family::FdB), Gen::A(2)));
        assert!(Morphism::SectionA(Graft::Over).generator(&Gen::Tree(aca()), false).unwrap().is_zero());
        let r = Morphism::ProjectR.word(&[Gen::Tree(ab()), Gen::Tree(ba())], false).unwrap();
        let expected = Morphism::ProjectR.generator(&Gen::Tree(ab().over(&ba())), false).unwrap();
        assert_eq!(r, expected);
    }
}

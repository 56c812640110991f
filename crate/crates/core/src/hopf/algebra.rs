use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{format_rational, Rational};
use crate::error::HopfError;
use crate::tree::{trees_up_to, Tree};

/// A generator: a tree, a Faà di Bruno generator `a_n`, or a symmetric
/// function generator `b_n`. `a_0` and `b_0` stand for the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A(usize),
    B(usize),
    Tree(Tree),
}

impl Gen {
    pub fn tree(t: &Tree) -> Gen {
        Gen::Tree(t.clone())
    }

    /// Bitstring for trees, `a<n>` or `b<n>` otherwise.
    pub fn code(&self) -> String {
        match self {
            Gen::A(n) => format!("a{n}"),
            Gen::B(n) => format!("b{n}"),
            Gen::Tree(t) => t.to_string(),
        }
    }

    pub fn parse(code: &str) -> Result<Gen, String> {
        let code = code.trim();
        let index = |rest: &str| rest.parse::<usize>().map_err(|_| format!("bad generator {code:?}"));
        if let Some(rest) = code.strip_prefix('a') {
            return Ok(Gen::A(index(rest)?));
        }
        if let Some(rest) = code.strip_prefix('b') {
            return Ok(Gen::B(index(rest)?));
        }
        Tree::parse(code).map(Gen::Tree).map_err(|e| e.to_string())
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self {
            Gen::Tree(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

pub type Word = Vec<Gen>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Trees under the over product; the leaf is the unit.
    InvOver,
    /// Trees under the under product; the leaf is the unit.
    InvUnder,
    /// Trees of order at least two; `vtx` is the unit.
    Dif,
    /// Trees; the leaf is the unit.
    Rho,
    /// Trees `V(t)`; the leaf is the unit.
    Alpha,
    /// `a_n`, `n >= 1`.
    FdB,
    /// `b_n`, `n >= 1`.
    Sym,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::InvOver => "inv-over",
            Family::InvUnder => "inv-under",
            Family::Dif => "dif",
            Family::Rho => "rho",
            Family::Alpha => "alpha",
            Family::FdB => "fdb",
            Family::Sym => "sym",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraKind {
    pub family: Family,
    pub commutative: bool,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.commutative { "comm" } else { "nc" };
        write!(f, "{}({c})", self.family.name())
    }
}

impl AlgebraKind {
    pub fn nc(family: Family) -> Self {
        AlgebraKind {
            family,
            commutative: false,
        }
    }

    pub fn comm(family: Family) -> Self {
        AlgebraKind {
            family,
            commutative: true,
        }
    }

    pub fn with_commutative(self, commutative: bool) -> Self {
        AlgebraKind { commutative, ..self }
    }

    /// Generators identified with the unit, erased from words.
    pub fn is_unit(&self, g: &Gen) -> bool {
        match (self.family, g) {
            (Family::Dif, Gen::Tree(t)) => t.order() == 1,
            (Family::FdB, Gen::A(0)) | (Family::Sym, Gen::B(0)) => true,
            (Family::FdB | Family::Sym, _) => false,
            (_, Gen::Tree(t)) => t.is_leaf(),
            _ => false,
        }
    }

    pub fn is_generator(&self, g: &Gen) -> bool {
        match (self.family, g) {
            (Family::InvOver | Family::InvUnder | Family::Rho, Gen::Tree(t)) => !t.is_leaf(),
            (Family::Dif, Gen::Tree(t)) => t.order() >= 2,
            (Family::Alpha, Gen::Tree(t)) => t.children().is_some_and(|(l, _)| l.is_leaf()),
            (Family::FdB, Gen::A(n)) | (Family::Sym, Gen::B(n)) => *n >= 1,
            _ => false,
        }
    }

    pub fn check(&self, g: &Gen) -> Result<(), HopfError> {
        if self.is_generator(g) || self.is_unit(g) {
            Ok(())
        } else {
            Err(HopfError::NotAGenerator(g.code(), self.to_string()))
        }
    }

    pub fn grading(&self, g: &Gen) -> usize {
        match g {
            Gen::A(n) | Gen::B(n) => *n,
            Gen::Tree(t) if self.family == Family::Dif => t.order().saturating_sub(1),
            Gen::Tree(t) => t.order(),
        }
    }

    pub fn word_grading(&self, w: &[Gen]) -> usize {
        w.iter().map(|g| self.grading(g)).sum()
    }

    /// Erase units, and sort for commutative kinds.
    pub fn normalize(&self, mut w: Word) -> Word {
        w.retain(|g| !self.is_unit(g));
        if self.commutative {
            w.sort();
        }
        w
    }

    /// All generators with grading in `1..=max`, in canonical order.
    pub fn generators(&self, max: usize) -> Vec<Gen> {
        match self.family {
            Family::InvOver | Family::InvUnder | Family::Rho => {
                trees_up_to(max).into_iter().map(Gen::Tree).collect()
            }
            Family::Dif => trees_up_to(max + 1)
                .into_iter()
                .filter(|t| t.order() >= 2)
                .map(Gen::Tree)
                .collect(),
            Family::Alpha => {
                let mut v: Vec<Gen> = std::iter::once(Tree::leaf())
                    .chain(trees_up_to(max.saturating_sub(1)))
                    .filter(|_| max >= 1)
                    .map(|t| Gen::Tree(t.v_wrap()))
                    .collect();
                v.sort();
                v
            }
            Family::FdB => (1..=max).map(Gen::A).collect(),
            Family::Sym => (1..=max).map(Gen::B).collect(),
        }
    }
}

/// A finite linear combination of tensors of words, one algebra per leg.
/// A one-legged tensor is an element of the free algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    kinds: Vec<AlgebraKind>,
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl Tensor {
    pub fn zero(kinds: Vec<AlgebraKind>) -> Self {
        Tensor {
            kinds,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ .. ⊗ 1`.
    pub fn unit(kinds: Vec<AlgebraKind>) -> Self {
        let n = kinds.len();
        let mut t = Tensor::zero(kinds);
        t.add_term(vec![Vec::new(); n], Rational::one());
        t
    }

    pub fn word(kind: AlgebraKind, w: Word) -> Self {
        let mut t = Tensor::zero(vec![kind]);
        t.add_term(vec![w], Rational::one());
        t
    }

    pub fn generator(kind: AlgebraKind, g: Gen) -> Self {
        Tensor::word(kind, vec![g])
    }

    pub fn kinds(&self) -> &[AlgebraKind] {
        &self.kinds
    }

    pub fn legs(&self) -> usize {
        self.kinds.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, words: &[Word]) -> Rational {
        self.terms.get(words).cloned().unwrap_or_else(Rational::zero)
    }

    /// Add `q` times the tensor of `words`, normalizing each leg.
    pub fn add_term(&mut self, words: Vec<Word>, q: Rational) {
        assert_eq!(words.len(), self.kinds.len(), "tensor leg count");
        if q.is_zero() {
            return;
        }
        let words: Vec<Word> = words
            .into_iter()
            .zip(&self.kinds)
            .map(|(w, k)| k.normalize(w))
            .collect();
        use std::collections::btree_map::Entry;
        match self.terms.entry(words) {
            Entry::Vacant(e) => {
                e.insert(q);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.kinds, other.kinds, "adding tensors of different kinds");
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut out = Tensor::zero(self.kinds.clone());
        for (w, q) in &self.terms {
            out.add_term(w.clone(), q * c);
        }
        out
    }

    /// Legwise product.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.kinds, other.kinds, "multiplying tensors of different kinds");
        let mut out = Tensor::zero(self.kinds.clone());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let words = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.iter().chain(y).cloned().collect())
                    .collect();
                out.add_term(words, p * q);
            }
        }
        out
    }

    /// Replace leg `i` by the tensor `f(word)`, whose legs have kinds
    /// `new_kinds`.
    pub fn apply_leg<F>(&self, i: usize, new_kinds: &[AlgebraKind], mut f: F) -> Result<Tensor, HopfError>
    where
        F: FnMut(&Word) -> Result<Tensor, HopfError>,
    {
        let mut kinds = self.kinds[..i].to_vec();
        kinds.extend_from_slice(new_kinds);
        kinds.extend_from_slice(&self.kinds[i + 1..]);
        let mut out = Tensor::zero(kinds);
        for (words, q) in &self.terms {
            let image = f(&words[i])?;
            assert_eq!(image.kinds, new_kinds, "leg map produced unexpected kinds");
            for (w, p) in &image.terms {
                let mut all = words[..i].to_vec();
                all.extend(w.iter().cloned());
                all.extend(words[i + 1..].iter().cloned());
                out.add_term(all, q * p);
            }
        }
        Ok(out)
    }

    /// Multiply legs `i` and `i + 1` together, keeping the kind of leg `i`.
    pub fn merge_legs(&self, i: usize) -> Tensor {
        let mut kinds = self.kinds.clone();
        kinds.remove(i + 1);
        let mut out = Tensor::zero(kinds);
        for (words, q) in &self.terms {
            let mut w = words.clone();
            let right = w.remove(i + 1);
            w[i].extend(right);
            out.add_term(w, q.clone());
        }
        out
    }

    /// Exchange legs `i` and `i + 1`.
    pub fn swap_legs(&self, i: usize) -> Tensor {
        let mut kinds = self.kinds.clone();
        kinds.swap(i, i + 1);
        let mut out = Tensor::zero(kinds);
        for (words, q) in &self.terms {
            let mut w = words.clone();
            w.swap(i, i + 1);
            out.add_term(w, q.clone());
        }
        out
    }

    /// Apply the counit on leg `i`.
    pub fn counit_leg(&self, i: usize) -> Tensor {
        let mut kinds = self.kinds.clone();
        kinds.remove(i);
        let mut out = Tensor::zero(kinds);
        for (words, q) in &self.terms {
            if words[i].is_empty() {
                let mut w = words.clone();
                w.remove(i);
                out.add_term(w, q.clone());
            }
        }
        out
    }

    /// Coefficient of the empty word in a one-legged tensor.
    pub fn counit(&self) -> Rational {
        self.coeff(&vec![Vec::new(); self.legs()])
    }

    /// Re-read every leg in the commutative (or free) algebra.
    pub fn with_commutative(&self, commutative: bool) -> Tensor {
        let kinds = self.kinds.iter().map(|k| k.with_commutative(commutative)).collect();
        let mut out = Tensor::zero(kinds);
        for (w, q) in &self.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    /// Same terms read with different leg kinds.
    pub fn relabel(&self, kinds: Vec<AlgebraKind>) -> Tensor {
        let mut out = Tensor::zero(kinds);
        for (w, q) in &self.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    /// Terms with any leg above the given grading removed.
    pub fn truncate_legs(&self, max: usize) -> Tensor {
        let mut out = Tensor::zero(self.kinds.clone());
        for (w, q) in &self.terms {
            if w.iter().zip(&self.kinds).all(|(x, k)| k.word_grading(x) <= max) {
                out.add_term(w.clone(), q.clone());
            }
        }
        out
    }
}

fn format_word(w: &[Gen]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(Gen::code).collect::<Vec<_>>().join("·")
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (words, q)) in self.terms.iter().enumerate() {
            let negative = *q < Rational::zero();
            let abs = if negative { -q } else { q.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{} ", format_rational(&abs))?;
            }
            let legs: Vec<String> = words.iter().map(|w| format_word(w)).collect();
            f.write_str(&legs.join(" ⊗ "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::tree::named::*;

    #[test]
    fn units_are_erased() {
        let dif = AlgebraKind::nc(Family::Dif);
        assert_eq!(dif.normalize(vec![Gen::tree(&vtx()), Gen::tree(&ab())]), vec![Gen::tree(&ab())]);
        let inv = AlgebraKind::nc(Family::InvOver);
        assert_eq!(inv.normalize(vec![Gen::tree(&vtx()), Gen::tree(&leaf())]), vec![Gen::tree(&vtx())]);
        let comm = AlgebraKind::comm(Family::Rho);
        assert_eq!(
            comm.normalize(vec![Gen::tree(&ba()), Gen::tree(&vtx())]),
            vec![Gen::tree(&vtx()), Gen::tree(&ba())]
        );
    }

    #[test]
    fn counit_is_the_empty_word_coefficient() {
        let k = AlgebraKind::nc(Family::InvOver);
        let mut x = Tensor::zero(vec![k]);
        x.add_term(vec![vec![]], int(5));
        x.add_term(vec![vec![Gen::tree(&ab()), Gen::tree(&ba())]], int(3));
        assert_eq!(x.counit(), int(5));
        assert_eq!(Tensor::unit(vec![k]).counit(), int(1));
        assert_eq!(Tensor::generator(k, Gen::tree(&ab())).counit(), int(0));
    }

    #[test]
    fn generator_lists() {
        assert_eq!(AlgebraKind::nc(Family::Dif).generators(2).len(), 7);
        assert_eq!(AlgebraKind::nc(Family::Rho).generators(3).len(), 8);
        let alpha = AlgebraKind::nc(Family::Alpha).generators(3);
        assert_eq!(alpha.len(), 1 + 1 + 2);
        assert!(alpha.iter().all(|g| AlgebraKind::nc(Family::Alpha).is_generator(g)));
    }

    #[test]
    fn generator_codes() {
        for g in [Gen::A(3), Gen::B(12), Gen::tree(&aca())] {
            assert_eq!(Gen::parse(&g.code()).unwrap(), g);
        }
        assert!(Gen::parse("c2").is_err());
    }
}

//! Planar binary rooted trees.
//!
//! A tree is stored as its preorder bitstring: `1` for an internal node
//! followed by its left and right subtrees, `0` for a leaf. The string is the
//! canonical codec, and the derived order (length, then bytes) is the
//! canonical tree order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{ParseError, TreeError};
use crate::syntax::Cursor;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree(Arc<str>);

/// The two graftings. `Over` puts the left operand on the leftmost leaf of
/// the right one, `Under` puts the right operand on the rightmost leaf of
/// the left one. Combs built from them are the left and right combs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Graft {
    Over,
    Under,
}

impl Graft {
    pub fn name(self) -> &'static str {
        match self {
            Graft::Over => "over",
            Graft::Under => "under",
        }
    }

    pub fn apply(self, t: &Tree, s: &Tree) -> Tree {
        match self {
            Graft::Over => t.over(s),
            Graft::Under => t.under(s),
        }
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_bytes().cmp(other.0.as_bytes()))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.0)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Length of the complete subtree code starting at `bytes[0]`, if any.
fn subtree_len(bytes: &[u8]) -> Option<usize> {
    let mut need = 1usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'1' => need += 1,
            b'0' => need -= 1,
            _ => return None,
        }
        if need == 0 {
            return Some(i + 1);
        }
    }
    None
}

impl Tree {
    fn from_raw(code: String) -> Tree {
        Tree(Arc::from(code))
    }

    pub fn leaf() -> Tree {
        Tree::from_raw("0".into())
    }

    pub fn vtx() -> Tree {
        Tree::from_raw("100".into())
    }

    pub fn node(l: &Tree, r: &Tree) -> Tree {
        let mut s = String::with_capacity(1 + l.0.len() + r.0.len());
        s.push('1');
        s.push_str(&l.0);
        s.push_str(&r.0);
        Tree::from_raw(s)
    }

    /// Decode a preorder bitstring.
    pub fn from_code(code: &str) -> Result<Tree, ParseError> {
        match subtree_len(code.as_bytes()) {
            Some(n) if n == code.len() => Ok(Tree::from_raw(code.to_string())),
            Some(n) => Err(ParseError {
                position: n,
                message: "trailing characters after a complete tree".into(),
            }),
            None => {
                let bad = code.bytes().position(|b| b != b'0' && b != b'1');
                Err(ParseError {
                    position: bad.unwrap_or(code.len()),
                    message: match bad {
                        Some(_) => "tree codes use only '0' and '1'".into(),
                        None => "incomplete tree code".into(),
                    },
                })
            }
        }
    }

    /// Parse a bitstring or an expression such as `v/v\v` or `(o\v)/100`.
    pub fn parse(src: &str) -> Result<Tree, ParseError> {
        let mut cur = Cursor::new(src);
        let t = parse_expr(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }

    pub fn code(&self) -> &str {
        &self.0
    }

    pub fn is_leaf(&self) -> bool {
        self.0.len() == 1
    }

    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    /// Left and right subtrees, or `None` for the leaf.
    pub fn children(&self) -> Option<(Tree, Tree)> {
        let (l, r) = self.split()?;
        Some((Tree::from_raw(l.into()), Tree::from_raw(r.into())))
    }

    fn split(&self) -> Option<(&str, &str)> {
        if self.is_leaf() {
            return None;
        }
        let n = subtree_len(&self.0.as_bytes()[1..]).expect("valid code");
        Some((&self.0[1..1 + n], &self.0[1 + n..]))
    }

    /// `self / s`: graft `self` on the leftmost leaf of `s`.
    pub fn over(&self, s: &Tree) -> Tree {
        // the leftmost leaf of s is its first '0'
        let k = s.0.find('0').expect("valid code");
        let mut out = String::with_capacity(self.0.len() + s.0.len() - 1);
        out.push_str(&s.0[..k]);
        out.push_str(&self.0);
        out.push_str(&s.0[k + 1..]);
        Tree::from_raw(out)
    }

    /// `self \ s`: graft `s` on the rightmost leaf of `self`.
    pub fn under(&self, s: &Tree) -> Tree {
        // the rightmost leaf of self is its last character
        let mut out = String::with_capacity(self.0.len() + s.0.len() - 1);
        out.push_str(&self.0[..self.0.len() - 1]);
        out.push_str(&s.0);
        Tree::from_raw(out)
    }

    pub fn mirror(&self) -> Tree {
        match self.children() {
            None => self.clone(),
            Some((l, r)) => Tree::node(&r.mirror(), &l.mirror()),
        }
    }

    /// `V(t) = vtx \ t`.
    pub fn v_wrap(&self) -> Tree {
        Tree::node(&Tree::leaf(), self)
    }

    /// The unique `[u_1, .., u_n]` with `u = V(u_1) / .. / V(u_n)`, read off
    /// the left spine. Empty for the leaf.
    pub fn over_factorize(&self) -> Vec<Tree> {
        let mut factors = Vec::new();
        let mut cur = self.clone();
        while let Some((l, r)) = cur.children() {
            factors.push(r);
            cur = l;
        }
        factors.reverse();
        factors
    }

    /// Inverse of [`Tree::over_factorize`].
    pub fn over_fold(factors: &[Tree]) -> Tree {
        factors
            .iter()
            .fold(Tree::leaf(), |acc, f| acc.over(&f.v_wrap()))
    }

    /// `n`-fold over power (left comb) or under power (right comb) of `vtx`.
    pub fn comb(n: usize, side: Graft) -> Tree {
        let mut s = String::with_capacity(2 * n + 1);
        match side {
            Graft::Over => {
                s.extend(std::iter::repeat_n('1', n));
                s.push('0');
                s.extend(std::iter::repeat_n('0', n));
            }
            Graft::Under => {
                for _ in 0..n {
                    s.push_str("10");
                }
                s.push('0');
            }
        }
        Tree::from_raw(s)
    }

    /// Every `(t, s)` with `t / s == self`: `t` is a subtree on the left
    /// spine, `s` what remains when it is cut down to a leaf. Starts with
    /// `(self, leaf)` and ends with `(leaf, self)`.
    pub fn over_splits(&self) -> Vec<(Tree, Tree)> {
        let b = self.0.as_bytes();
        let mut out = Vec::new();
        let mut d = 0;
        loop {
            let len = subtree_len(&b[d..]).expect("valid code");
            let t = Tree::from_raw(self.0[d..d + len].into());
            let s = format!("{}0{}", &self.0[..d], &self.0[d + len..]);
            out.push((t, Tree::from_raw(s)));
            if b[d] == b'0' {
                return out;
            }
            d += 1;
        }
    }

    /// Every `(t, s)` with `t \ s == self`: `s` is a subtree on the right
    /// spine. Starts with `(leaf, self)` and ends with `(self, leaf)`.
    pub fn under_splits(&self) -> Vec<(Tree, Tree)> {
        let b = self.0.as_bytes();
        let mut out = Vec::new();
        let mut j = 0;
        loop {
            let s = Tree::from_raw(self.0[j..].into());
            let t = format!("{}0", &self.0[..j]);
            out.push((Tree::from_raw(t), s));
            if b[j] == b'0' {
                return out;
            }
            j += 1 + subtree_len(&b[j + 1..]).expect("valid code");
        }
    }

    /// The t-product: substitute `args` for the internal vertices of `self`
    /// in infix order.
    pub fn mu_apply(&self, args: &[Tree]) -> Result<Tree, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::LeafInput);
        }
        if args.len() != self.order() {
            return Err(TreeError::ArityMismatch {
                order: self.order(),
                given: args.len(),
            });
        }
        if let Some(i) = args.iter().position(Tree::is_leaf) {
            return Err(TreeError::LeafArgument(i + 1));
        }
        Ok(mu_unchecked(self, args))
    }

    /// Every `(t, [s_i])` with `t.mu_apply(s) == self`, in canonical order.
    pub fn decompositions(&self) -> Result<Arc<Vec<Decomposition>>, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::LeafInput);
        }
        Ok(decompositions_memo(self))
    }
}

pub(crate) fn mu_unchecked(t: &Tree, args: &[Tree]) -> Tree {
    match t.children() {
        None => Tree::leaf(),
        Some((l, r)) => {
            let k = l.order();
            let left = mu_unchecked(&l, &args[..k]).over(&args[k]);
            left.under(&mu_unchecked(&r, &args[k + 1..]))
        }
    }
}

/// A substitution `u = mu_t(args)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    pub t: Tree,
    pub args: Vec<Tree>,
}

type Memo = RwLock<HashMap<Tree, Arc<Vec<Decomposition>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn decompositions_memo(u: &Tree) -> Arc<Vec<Decomposition>> {
    if let Some(v) = memo().read().expect("memo lock").get(u) {
        return v.clone();
    }
    let mut list = structural_decompositions(u);
    list.sort();
    let list = Arc::new(list);
    // a concurrent fill computes the same value, so either insert wins
    memo()
        .write()
        .expect("memo lock")
        .entry(u.clone())
        .or_insert(list)
        .clone()
}

/// Decompositions of a possibly empty subtree: the leaf only splits as
/// the empty product.
fn decompositions_or_unit(u: &Tree) -> Arc<Vec<Decomposition>> {
    if u.is_leaf() {
        Arc::new(vec![Decomposition {
            t: Tree::leaf(),
            args: Vec::new(),
        }])
    } else {
        decompositions_memo(u)
    }
}

// u = mu_t(args) with t = Node(t_l, t_r) means u = (A / s) \ B where s is the
// root argument, A = mu_{t_l}(..) sits on the leftmost leaf of s and
// B = mu_{t_r}(..) on its rightmost leaf. So s keeps u's root, A is a
// subtree on the left spine of u_l and B one on the right spine of u_r.
fn structural_decompositions(u: &Tree) -> Vec<Decomposition> {
    let (ul, ur) = u.children().expect("non-leaf");
    let left_cuts = ul.over_splits();
    let right_cuts = ur.under_splits();

    let mut out = Vec::new();
    for (a, s_l) in &left_cuts {
        let da = decompositions_or_unit(a);
        for (s_r, b) in &right_cuts {
            let s = Tree::node(s_l, s_r);
            let db = decompositions_or_unit(b);
            for x in da.iter() {
                for y in db.iter() {
                    let mut args = Vec::with_capacity(x.args.len() + 1 + y.args.len());
                    args.extend(x.args.iter().cloned());
                    args.push(s.clone());
                    args.extend(y.args.iter().cloned());
                    out.push(Decomposition {
                        t: Tree::node(&x.t, &y.t),
                        args,
                    });
                }
            }
        }
    }
    out
}

/// All trees of order `n`, in canonical order.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    let mut by_order: Vec<Vec<Tree>> = vec![vec![Tree::leaf()]];
    for m in 1..=n {
        let mut level = Vec::new();
        for k in 0..m {
            for l in &by_order[k] {
                for r in &by_order[m - 1 - k] {
                    level.push(Tree::node(l, r));
                }
            }
        }
        level.sort();
        by_order.push(level);
    }
    by_order.swap_remove(n)
}

/// All trees of order `1..=n`, in canonical order.
pub fn trees_up_to(n: usize) -> Vec<Tree> {
    (1..=n).flat_map(enumerate_trees).collect()
}

// expr := atom (('/' | '\') atom)*   left to right
fn parse_expr(cur: &mut Cursor<'_>) -> Result<Tree, ParseError> {
    let mut acc = parse_atom(cur)?;
    loop {
        let op = match cur.peek() {
            Some('/') => Graft::Over,
            Some('\\') => Graft::Under,
            _ => return Ok(acc),
        };
        cur.bump();
        let rhs = parse_atom(cur)?;
        acc = op.apply(&acc, &rhs);
    }
}

pub(crate) fn parse_atom(cur: &mut Cursor<'_>) -> Result<Tree, ParseError> {
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let t = parse_expr(cur)?;
            cur.expect(')')?;
            Ok(t)
        }
        Some('o') => {
            cur.bump();
            Ok(Tree::leaf())
        }
        Some('v') => {
            cur.bump();
            Ok(Tree::vtx())
        }
        Some('0') | Some('1') => {
            let start = cur.pos();
            let code = cur.take_while(|c| c == '0' || c == '1');
            Tree::from_code(code).map_err(|e| ParseError {
                position: start + e.position,
                message: e.message,
            })
        }
        Some(_) => Err(cur.error("expected a tree: 'o', 'v', '(' or a bitstring")),
        None => Err(cur.error("unexpected end of input, expected a tree")),
    }
}

#[cfg(test)]
pub(crate) mod named {
    use super::Tree;

    pub fn t(code: &str) -> Tree {
        Tree::from_code(code).unwrap()
    }
    pub fn leaf() -> Tree {
        t("0")
    }
    pub fn vtx() -> Tree {
        t("100")
    }
    pub fn ab() -> Tree {
        t("11000")
    }
    pub fn ba() -> Tree {
        t("10100")
    }
    pub fn abc() -> Tree {
        t("1110000")
    }
    pub fn bac() -> Tree {
        t("1101000")
    }
    pub fn aca() -> Tree {
        t("1100100")
    }
    pub fn cab() -> Tree {
        t("1011000")
    }
    pub fn cba() -> Tree {
        t("1010100")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use proptest::prelude::*;

    // independent pointer-tree model
    #[derive(Clone, Debug, PartialEq)]
    enum Bt {
        L,
        N(Box<Bt>, Box<Bt>),
    }

    fn to_bt(t: &Tree) -> Bt {
        match t.children() {
            None => Bt::L,
            Some((l, r)) => Bt::N(Box::new(to_bt(&l)), Box::new(to_bt(&r))),
        }
    }

    fn bt_over(t: &Bt, s: &Bt) -> Bt {
        match s {
            Bt::L => t.clone(),
            Bt::N(l, r) => Bt::N(Box::new(bt_over(t, l)), r.clone()),
        }
    }

    fn bt_under(t: &Bt, s: &Bt) -> Bt {
        match t {
            Bt::L => s.clone(),
            Bt::N(l, r) => Bt::N(l.clone(), Box::new(bt_under(r, s))),
        }
    }

    fn arb_tree(max: usize) -> impl Strategy<Value = Tree> {
        (0..=max, any::<prop::sample::Index>()).prop_map(|(n, i)| {
            let all = enumerate_trees(n);
            all[i.index(all.len())].clone()
        })
    }

    // the duplicial relations hold away from the unit
    fn arb_pos_tree(max: usize) -> impl Strategy<Value = Tree> {
        arb_tree(max).prop_filter("non-leaf", |t| !t.is_leaf())
    }

    #[test]
    fn catalan_counts() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(enumerate_trees(n).len(), c, "order {n}");
        }
        assert_eq!(enumerate_trees(0), vec![leaf()]);
        assert_eq!(enumerate_trees(2), vec![ba(), ab()]);
    }

    #[test]
    fn named_products() {
        assert_eq!(vtx().over(&vtx()), ab());
        assert_eq!(vtx().under(&vtx()), ba());
        assert_eq!(ab().over(&vtx()), abc());
        assert_eq!(vtx().over(&ba()), aca());
        assert_eq!(ab().under(&vtx()), aca());
        assert_eq!(ba().over(&vtx()), bac());
        assert_eq!(vtx().under(&ab()), cab());
        assert_eq!(ba().under(&vtx()), cba());
        assert_eq!(ab().over(&leaf()), ab());
        assert_eq!(leaf().under(&ab()), ab());
    }

    #[test]
    fn mu_examples() {
        let s1 = ab();
        let s2 = vtx();
        let s3 = ba();
        assert_eq!(vtx().mu_apply(std::slice::from_ref(&s1)).unwrap(), s1);
        assert_eq!(
            bac().mu_apply(&[s1.clone(), s2.clone(), s3.clone()]).unwrap(),
            s1.under(&s2).over(&s3)
        );
        assert_eq!(
            aca().mu_apply(&[s1.clone(), s2.clone(), s3.clone()]).unwrap(),
            s1.over(&s2).under(&s3)
        );
        assert!(matches!(
            ab().mu_apply(&[vtx()]),
            Err(TreeError::ArityMismatch { order: 2, given: 1 })
        ));
        assert!(matches!(
            ab().mu_apply(&[vtx(), leaf()]),
            Err(TreeError::LeafArgument(2))
        ));
    }

    #[test]
    fn mu_of_vertices_is_identity() {
        for t in trees_up_to(6) {
            let args = vec![vtx(); t.order()];
            assert_eq!(t.mu_apply(&args).unwrap(), t);
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = vtx().decompositions().unwrap();
        assert_eq!(d.len(), 1);
        let got: Vec<_> = abc()
            .decompositions()
            .unwrap()
            .iter()
            .map(|d| (d.t.clone(), d.args.clone()))
            .collect();
        let mut want = vec![
            (vtx(), vec![abc()]),
            (ab(), vec![ab(), vtx()]),
            (ab(), vec![vtx(), ab()]),
            (abc(), vec![vtx(), vtx(), vtx()]),
        ];
        want.sort();
        assert_eq!(got, want);
        let aca_d = aca().decompositions().unwrap();
        assert!(aca_d.contains(&Decomposition {
            t: ab(),
            args: vec![vtx(), ba()]
        }));
        assert!(aca_d.contains(&Decomposition {
            t: ba(),
            args: vec![ab(), vtx()]
        }));
    }

    #[test]
    fn decompositions_recompose() {
        for u in trees_up_to(6) {
            for d in u.decompositions().unwrap().iter() {
                assert_eq!(d.t.mu_apply(&d.args).unwrap(), u);
            }
        }
    }

    #[test]
    fn v_wrap_and_factorization() {
        assert_eq!(leaf().v_wrap(), vtx());
        assert_eq!(vtx().v_wrap(), ba());
        assert_eq!(ab().v_wrap(), cab());
        assert_eq!(ab().over_factorize(), vec![leaf(), leaf()]);
        assert_eq!(cab().over_factorize(), vec![ab()]);
        assert_eq!(aca().over_factorize(), vec![leaf(), vtx()]);
        for u in trees_up_to(7) {
            let f = u.over_factorize();
            assert_eq!(Tree::over_fold(&f), u);
            for x in &f {
                assert!(x.v_wrap().children().unwrap().0.is_leaf());
            }
        }
    }

    #[test]
    fn splits() {
        for u in trees_up_to(5) {
            let o = u.over_splits();
            assert_eq!(o.len(), u.over_factorize().len() + 1);
            for (t, s) in &o {
                assert_eq!(t.over(s), u);
            }
            for (t, s) in u.under_splits() {
                assert_eq!(t.under(&s), u);
            }
        }
        assert_eq!(ab().over_splits(), vec![(ab(), leaf()), (vtx(), vtx()), (leaf(), ab())]);
    }

    #[test]
    fn combs() {
        assert_eq!(Tree::comb(0, Graft::Over), leaf());
        assert_eq!(Tree::comb(1, Graft::Over), vtx());
        assert_eq!(Tree::comb(1, Graft::Under), vtx());
        assert_eq!(Tree::comb(2, Graft::Over), ab());
        assert_eq!(Tree::comb(3, Graft::Under), cba());
        for n in 1..6 {
            assert_eq!(
                Tree::comb(n, Graft::Over),
                Tree::comb(n - 1, Graft::Over).over(&vtx())
            );
            assert_eq!(
                Tree::comb(n, Graft::Under),
                Tree::comb(n - 1, Graft::Under).under(&vtx())
            );
        }
    }

    #[test]
    fn codec_and_expressions() {
        assert_eq!(vtx().code(), "100");
        assert_eq!(ab().code(), "11000");
        assert_eq!(ba().code(), "10100");
        assert_eq!(Tree::parse("v/v\\v").unwrap(), aca());
        assert_eq!(Tree::parse("v/v").unwrap(), ab());
        assert_eq!(Tree::parse("10100").unwrap(), ba());
        assert_eq!(Tree::parse("v \\ (v / v)").unwrap(), cab());
        assert_eq!(Tree::parse("o/v").unwrap(), vtx());
        assert_eq!(Tree::parse("((v").unwrap_err().position, 3);
        assert_eq!(Tree::parse("110").unwrap_err().position, 3);
        assert_eq!(Tree::parse("v/1002").unwrap_err().position, 5);
        assert!(Tree::parse("").is_err());
    }

    proptest! {
        #[test]
        fn products_match_pointer_model(a in arb_tree(4), b in arb_tree(4)) {
            prop_assert_eq!(to_bt(&a.over(&b)), bt_over(&to_bt(&a), &to_bt(&b)));
            prop_assert_eq!(to_bt(&a.under(&b)), bt_under(&to_bt(&a), &to_bt(&b)));
            prop_assert_eq!(a.over(&b).order(), a.order() + b.order());
        }

        #[test]
        fn duplicial_relations(a in arb_pos_tree(2), b in arb_pos_tree(2), c in arb_pos_tree(2)) {
            prop_assert_eq!(a.over(&b).over(&c), a.over(&b.over(&c)));
            prop_assert_eq!(a.over(&b).under(&c), a.over(&b.under(&c)));
            prop_assert_eq!(a.under(&b).under(&c), a.under(&b.under(&c)));
        }

        #[test]
        fn mirror_reverses_products(a in arb_tree(3), b in arb_tree(3)) {
            prop_assert_eq!(a.over(&b).mirror(), b.mirror().under(&a.mirror()));
            prop_assert_eq!(a.under(&b).mirror(), b.mirror().over(&a.mirror()));
        }

        #[test]
        fn codec_round_trip(t in arb_tree(8)) {
            prop_assert_eq!(Tree::parse(t.code()).unwrap(), t.clone());
            prop_assert_eq!(Tree::from_code(&t.to_string()).unwrap(), t);
        }
    }
}

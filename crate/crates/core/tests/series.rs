use treeseries::coeff::RingValue;
use treeseries::io::{parse_series, Shape};
use treeseries::operad::{Instance, Multiplicative};
use treeseries::series::{Carrier, Embedding, GradedSeries, SemidirectElement};
use treeseries::tree::{enumerate_trees, Graft, Tree};

fn t(code: &str) -> Tree {
    Tree::from_code(code).unwrap()
}

fn c(s: &str) -> RingValue {
    RingValue::parse(s).unwrap()
}

fn over(text: &str, n: usize) -> GradedSeries {
    parse_series(text, &Shape::Monoid(Some("over".into())), Instance::Dup, Some(n)).unwrap()
}

fn dup(text: &str, n: usize) -> GradedSeries {
    parse_series(text, &Shape::Operad, Instance::Dup, Some(n)).unwrap()
}

fn classic(text: &str, n: usize) -> GradedSeries {
    parse_series(text, &Shape::Operad, Instance::As, Some(n)).unwrap()
}

fn classic_inv(text: &str, n: usize) -> GradedSeries {
    parse_series(text, &Shape::Monoid(None), Instance::As, Some(n)).unwrap()
}

#[test]
fn monoid_products() {
    let f = over("x^e + c*x^{100}", 3);
    assert_eq!(f.mul(&f).unwrap(), over("x^e + 2*c*x^{100} + c^2*x^{11000}", 3));
    assert_eq!(f.mul(&GradedSeries::one(f.carrier().clone(), 3)).unwrap(), f);
    let psi = over("x^{100} + c*x^{11000} + d*x^{10100}", 3);
    assert_eq!(psi.mul(&psi).unwrap().tree_coeff(&t("1110000")), c("2*c"));
}

#[test]
fn monoid_inverses() {
    let n = 5;
    let geometric = over("x^e - x^{100}", n).inverse().unwrap();
    for k in 0..=n {
        assert_eq!(geometric.tree_coeff(&Tree::comb(k, Graft::Over)), RingValue::one());
    }
    assert_eq!(geometric.len(), n + 1);
    let f = over("x^e + c*x^{100}", 3);
    assert_eq!(f.inverse().unwrap(), over("x^e - c*x^{100} + c^2*x^{11000} - c^3*x^{1110000}", 3));
    assert!(over("2*x^e + x^{100}", 3).inverse().is_err());
}

#[test]
fn tree_composition() {
    let phi = dup("x^{100} + a*x^{11000} + b*x^{10100}", 3);
    let psi = dup("x^{100} + c*x^{11000} + d*x^{10100}", 3);
    let id = GradedSeries::one(Carrier::Operad(Instance::Dup), 3);
    assert_eq!(phi.compose(&id).unwrap(), phi);
    assert_eq!(id.compose(&psi).unwrap(), psi);
    let h = phi.compose(&psi).unwrap();
    assert_eq!(h.len(), 16);
    assert_eq!(h.tree_coeff(&t("1110000")), c("2*a*c"));
    assert_eq!(h.tree_coeff(&t("1100100")), c("a*d + b*c"));
    assert_eq!(h.project_order(), phi.project_order().compose(&psi.project_order()).unwrap());
}

#[test]
fn compositional_inverses() {
    let phi = dup("x^{100} + x^{11000}", 4);
    let inv = phi.comp_inverse().unwrap();
    assert_eq!(inv.tree_coeff(&t("11000")), c("-1"));
    assert_eq!(inv.tree_coeff(&t("1110000")), c("2"));
    for u in enumerate_trees(3) {
        if u != t("1110000") {
            assert!(inv.tree_coeff(&u).is_zero());
        }
    }
    assert_eq!(phi.compose(&inv).unwrap(), GradedSeries::one(Carrier::Operad(Instance::Dup), 4));
    assert_eq!(inv.compose(&phi).unwrap(), GradedSeries::one(Carrier::Operad(Instance::Dup), 4));
    let lagrange = classic("x + x^2", 4).comp_inverse().unwrap();
    assert_eq!(lagrange, classic("x - x^2 + 2*x^3 - 5*x^4 + 14*x^5", 4));
}

#[test]
fn right_action() {
    let psi = dup("x^{100} + c*x^{11000} + d*x^{10100}", 3);
    let f = over("x^e + x^{100}", 3);
    let id = GradedSeries::one(Carrier::Operad(Instance::Dup), 3);
    assert_eq!(f.act(&id).unwrap(), f);
    assert_eq!(f.act(&psi).unwrap(), over("x^e + x^{100} + c*x^{11000} + d*x^{10100}", 3));
    let g = classic_inv("1 + x", 2).act(&classic("x + x^2", 2)).unwrap();
    assert_eq!(g, classic_inv("1 + x + x^2", 2));
}

#[test]
fn semidirect_products() {
    let m = Multiplicative::dup_over();
    let unit = SemidirectElement::identity(&m, 3);
    let id = GradedSeries::one(Carrier::Operad(Instance::Dup), 3);
    let a = SemidirectElement::new(dup("x^{100} + x^{10100}", 3), over("x^e + a*x^{100}", 3)).unwrap();
    assert_eq!(unit.mul(&a).unwrap(), a);
    let f = SemidirectElement::new(id.clone(), over("x^e + x^{100}", 3)).unwrap();
    let g = SemidirectElement::new(id.clone(), over("x^e + b*x^{11000}", 3)).unwrap();
    let fg = over("x^e + x^{100}", 3).mul(&over("x^e + b*x^{11000}", 3)).unwrap();
    assert_eq!(f.mul(&g).unwrap(), SemidirectElement::new(id, fg).unwrap());
    assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), unit);
}

#[test]
fn embeddings() {
    let one = over("x^e", 3);
    assert_eq!(one.embed(Embedding::Rho).unwrap(), dup("x^{100}", 3));
    let f = over("x^e + c*x^{11000}", 3);
    let rho = f.embed(Embedding::Rho).unwrap();
    assert_eq!(rho, dup("x^{100} + c*x^{1110000}", 3));
    assert_eq!(rho.unembed(Embedding::Rho, &Multiplicative::dup_over()).unwrap(), f);
    let under = Multiplicative::dup_under();
    let g = parse_series("x^e + c*x^{11000}", &Shape::Monoid(Some("under".into())), Instance::Dup, Some(2)).unwrap();
    assert_eq!(g.embed(Embedding::Lambda).unwrap(), dup("x^{100} + c*x^{1011000}", 2));
    assert_eq!(g.embed(Embedding::Lambda).unwrap().unembed(Embedding::Lambda, &under).unwrap(), g);
}

#[test]
fn alpha_series() {
    let zero = GradedSeries::zero(Carrier::Monoid(Multiplicative::dup_over()), 4);
    assert_eq!(GradedSeries::alpha_from(&zero).unwrap(), dup("x^{100}", 4));
    let geometric = GradedSeries::alpha_from(&over("c*x^e", 4)).unwrap();
    for k in 1..=5 {
        let want = c(&format!("c^{}", k - 1));
        assert_eq!(geometric.tree_coeff(&Tree::comb(k, Graft::Over)), want);
    }
    let a = GradedSeries::alpha_from(&over("c*x^{100}", 2)).unwrap();
    assert_eq!(a, dup("x^{100} + c*x^{1101000}", 2));
    assert_eq!(t("10100").over(&Tree::vtx()), t("1101000"));
    assert!(a.alpha_membership() && geometric.alpha_membership());
}

#[test]
fn alpha_membership_constraints() {
    let base = "x^e + 2*x^{100} + 5*x^{10100} + 8*x^{1110000} + 7*x^{1011000} + x^{1010100}";
    let g = over(&format!("{base} + 4*x^{{11000}} + 10*x^{{1101000}} + 10*x^{{1100100}}"), 3);
    assert!(g.embed(Embedding::Rho).unwrap().alpha_membership());
    let bad = over(&format!("{base} + 5*x^{{11000}} + 10*x^{{1101000}} + 10*x^{{1100100}}"), 3);
    assert!(!bad.embed(Embedding::Rho).unwrap().alpha_membership());
    assert!(dup("x^{100}", 3).alpha_membership());
}

#[test]
fn order_projection_and_sections() {
    assert_eq!(dup("x^{100} + 3*x^{11000} + 4*x^{10100}", 2).project_order(), classic("x + 7*x^2", 2));
    assert_eq!(over("x^e", 2).project_order(), classic_inv("1", 2));
    let s = classic("x + x^2", 2).section_comb(Graft::Under).unwrap();
    assert_eq!(s, dup("x^{100} + x^{10100}", 2));
    let s = classic_inv("1 + x^3", 3).section_comb(Graft::Over).unwrap();
    assert_eq!(s, over("x^e + x^{1110000}", 3));
    assert_eq!(s.project_order(), classic_inv("1 + x^3", 3));
}

#[test]
fn under_rho_factorization() {
    let (psi, g) = dup("x^{100}", 3).factor_under_rho().unwrap();
    assert_eq!(psi, classic("x", 3));
    assert_eq!(g, over("x^e", 3));
    let (psi, g) = dup("x^{100} + a*x^{11000} + b*x^{10100}", 1).factor_under_rho().unwrap();
    assert_eq!(psi, classic("x + b*x^2", 1));
    assert_eq!(g, over("x^e + a*x^{100}", 1));
}

use treeseries::operad::{Instance, Multiplicative, MonoidElement, OperadElement};
use treeseries::tree::{enumerate_trees, Graft, Tree};

fn t(code: &str) -> Tree {
    Tree::from_code(code).unwrap()
}

fn dup(code: &str) -> OperadElement {
    OperadElement::new_dup(t(code)).unwrap()
}

#[test]
fn small_enumerations() {
    assert_eq!(enumerate_trees(0), vec![Tree::leaf()]);
    assert_eq!(enumerate_trees(1), vec![Tree::vtx()]);
    let mut two: Vec<String> = enumerate_trees(2).iter().map(|u| u.to_string()).collect();
    two.sort();
    assert_eq!(two, ["10100", "11000"]);
    assert!(enumerate_trees(7).iter().all(|u| u.order() == 7));
}

#[test]
fn grafting() {
    let vtx = Tree::vtx();
    assert_eq!(vtx.over(&vtx), t("11000"));
    assert_eq!(vtx.under(&vtx), t("10100"));
    assert_eq!(t("11000").over(&vtx), t("1110000"));
    assert_eq!(t("10100").under(&vtx), t("1010100"));
    assert_eq!(Tree::leaf().over(&t("10100")), t("10100"));
    assert_eq!(t("10100").under(&Tree::leaf()), t("10100"));
    for u in enumerate_trees(3) {
        assert_eq!(u.over(&vtx).order(), 4);
        assert_eq!(u.mirror().mirror(), u);
    }
}

#[test]
fn v_wrap_and_factorization() {
    assert_eq!(Tree::leaf().v_wrap(), Tree::vtx());
    assert_eq!(Tree::vtx().v_wrap(), t("10100"));
    assert_eq!(t("11000").v_wrap(), t("1011000"));
    assert_eq!(t("1100100").over_factorize(), vec![Tree::leaf(), Tree::vtx()]);
    for u in enumerate_trees(5) {
        let factors = u.over_factorize();
        let wrapped: Vec<Tree> = factors.iter().map(Tree::v_wrap).collect();
        assert_eq!(Tree::over_fold(&factors), u);
        assert_eq!(wrapped.iter().skip(1).fold(wrapped[0].clone(), |a, b| a.over(b)), u);
    }
}

#[test]
fn combs() {
    assert_eq!(Tree::comb(0, Graft::Over), Tree::leaf());
    assert_eq!(Tree::comb(2, Graft::Over), t("11000"));
    assert_eq!(Tree::comb(2, Graft::Under), t("10100"));
    assert_eq!(Tree::comb(3, Graft::Over), t("1110000"));
    assert_eq!(Tree::comb(3, Graft::Under), t("1010100"));
}

#[test]
fn substitution_at_vertices() {
    let (s1, s2, s3) = (t("11000"), t("100"), t("10100"));
    let args = [s1.clone(), s2.clone(), s3.clone()];
    assert_eq!(Tree::vtx().mu_apply(std::slice::from_ref(&s1)).unwrap(), s1);
    assert_eq!(t("1101000").mu_apply(&args).unwrap(), s1.under(&s2).over(&s3));
    assert_eq!(t("1100100").mu_apply(&args).unwrap(), s1.over(&s2).under(&s3));
    for u in enumerate_trees(4) {
        assert_eq!(u.mu_apply(&vec![Tree::vtx(); 4]).unwrap(), u);
    }
    assert!(Tree::vtx().mu_apply(&[s1.clone(), s2]).is_err());
    assert!(Tree::vtx().mu_apply(&[Tree::leaf()]).is_err());
}

#[test]
fn decompositions_rebuild_the_tree() {
    let pairs = |u: &Tree| -> Vec<(String, Vec<String>)> {
        let mut v: Vec<_> = u
            .decompositions()
            .unwrap()
            .iter()
            .map(|d| (d.t.to_string(), d.args.iter().map(|a| a.to_string()).collect()))
            .collect();
        v.sort();
        v
    };
    let abc = pairs(&t("1110000"));
    assert_eq!(abc.len(), 4);
    assert!(abc.contains(&("11000".into(), vec!["11000".into(), "100".into()])));
    assert!(abc.contains(&("11000".into(), vec!["100".into(), "11000".into()])));
    let aca = pairs(&t("1100100"));
    assert!(aca.contains(&("11000".into(), vec!["100".into(), "10100".into()])));
    assert!(aca.contains(&("10100".into(), vec!["11000".into(), "100".into()])));
    assert_eq!(pairs(&Tree::vtx()), vec![("100".into(), vec!["100".into()])]);
    for code in ["1110000", "1100100"] {
        let u = t(code);
        let decs = u.decompositions().unwrap();
        assert!(decs.len() >= 2);
        for d in decs.iter() {
            assert_eq!(d.t.mu_apply(&d.args).unwrap(), u);
        }
    }
}

#[test]
fn text_forms() {
    assert_eq!(Tree::parse("v/v\\v").unwrap(), t("1100100"));
    assert_eq!(Tree::parse("1100100").unwrap(), t("1100100"));
    assert_eq!(Tree::parse("o/v").unwrap(), Tree::vtx());
    let err = Tree::parse("((v").unwrap_err();
    assert_eq!(err.position, 3);
    assert!(Tree::from_code("1101").is_err());
}

#[test]
fn operad_compositions() {
    let as2 = OperadElement::new_as(2).unwrap();
    let got = Instance::As.compose(&as2, &[OperadElement::new_as(2).unwrap(), OperadElement::new_as(3).unwrap()]);
    assert_eq!(got.unwrap(), OperadElement::new_as(5).unwrap());
    let p = OperadElement::new_dias(2, 2).unwrap();
    let args = [OperadElement::new_dias(2, 1).unwrap(), OperadElement::new_dias(3, 2).unwrap()];
    assert_eq!(Instance::Dias.compose(&p, &args).unwrap(), OperadElement::new_dias(5, 4).unwrap());
    assert!(OperadElement::new_dias(2, 3).is_err());
    let got = Instance::Dup.compose(&dup("1100100"), &[dup("11000"), dup("100"), dup("10100")]).unwrap();
    assert_eq!(got.arity(), 5);
    assert!(Instance::Dup.compose(&dup("100"), &[dup("100"), dup("100")]).is_err());
}

#[test]
fn monoid_products() {
    let over = Multiplicative::dup_over();
    let under = Multiplicative::dup_under();
    let key = |code: &str| MonoidElement::from_tree(t(code));
    assert_eq!(over.mul(&key("100"), &key("100")), key("11000"));
    assert_eq!(under.mul(&key("100"), &key("100")), key("10100"));
    assert_eq!(over.mul(&MonoidElement::Unit, &key("10100")), key("10100"));
    assert!(Multiplicative::named(Instance::Dup, "nonsense").is_err());
}

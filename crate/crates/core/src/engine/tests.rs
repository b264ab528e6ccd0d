use super::*;
use crate::averaging::{build_system, Family};
use crate::linear::rational;
use crate::syntax::parse_poly;

fn a() -> Alphabet {
    Alphabet::new(["x", "y", "z", "x1", "x2"]).unwrap()
}

fn w(s: &str) -> Word {
    a().parse(s).unwrap()
}

fn p(s: &str) -> LinComb {
    parse_poly(s, &a()).unwrap()
}

fn scheme(families: &[Family]) -> RewriteSystem {
    build_system(families, Orientation::PatternSide(0), Variant::Unitary)
}

fn order() -> RewriteSystem {
    build_system(
        &Family::ALL,
        Orientation::Order(OrderHandle::Dt),
        Variant::Unitary,
    )
}

fn summary(rs: &[Redex]) -> Vec<(String, Vec<String>, Placement)> {
    rs.iter()
        .map(|r| {
            (
                r.rule.family.to_string(),
                r.rule.args.iter().map(|u| a().print(u)).collect(),
                r.placement.clone(),
            )
        })
        .collect()
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn redexes_of_phi_word() {
    let rs = find_redexes(&w("[x1] [x2]"), &scheme(&Family::ALL));
    assert_eq!(
        summary(&rs),
        [(
            "phi".into(),
            vec!["x1".into(), "x2".into()],
            Placement::new(vec![], 0, 2)
        )]
    );
    assert_eq!(rs[0].rule.rhs, p("[[x1] x2]"));
}

#[test]
fn redexes_of_fork_word() {
    let rs = find_redexes(&w("[[x1] [x2]]"), &scheme(&[Family::Phi, Family::Psi]));
    let s = summary(&rs);
    assert_eq!(s.len(), 2);
    assert!(s.contains(&(
        "psi".into(),
        vec!["[x1]".into(), "x2".into()],
        Placement::new(vec![], 0, 1)
    )));
    assert!(s.contains(&(
        "phi".into(),
        vec!["x1".into(), "x2".into()],
        Placement::new(vec![0], 0, 2)
    )));
}

#[test]
fn zero_instance_word() {
    assert!(find_redexes(&w("[[1]]"), &scheme(&Family::ALL)).is_empty());
    assert!(find_redexes(
        &w("[[x]]"),
        &build_system(
            &Family::ALL,
            Orientation::PatternSide(0),
            Variant::Nonunitary
        )
    )
    .is_empty());
    // dT flips φ(1, 1): [[1]] is its leading monomial
    let rs = find_redexes(&w("[[1]]"), &order());
    assert_eq!(
        summary(&rs),
        [(
            "phi".into(),
            vec!["1".into(), "1".into()],
            Placement::new(vec![], 0, 1)
        )]
    );
    assert_eq!(rs[0].rule.rhs, p("[1] [1]"));
}

#[test]
fn rewrite_examples() {
    let sys = scheme(&Family::ALL);
    let t = w("[x1] [x2]");
    let r = &find_redexes(&t, &sys)[0];
    assert_eq!(
        rewrite_once(&LinComb::monomial(t.clone()), &t, r).unwrap(),
        p("[[x1] x2]")
    );
    assert_eq!(
        rewrite_once(&p("2 [x1] [x2] + y"), &t, r).unwrap(),
        p("2 [[x1] x2] + y")
    );
    let v = w("[[[x1] x2]]");
    let rs = find_redexes(&v, &sys);
    let vp = rs.iter().find(|r| &*r.rule.family == "varphi").unwrap();
    assert_eq!(
        rewrite_once(&LinComb::monomial(v.clone()), &v, vp).unwrap(),
        p("[[[x1]] x2]")
    );
    assert_eq!(rewrite_once(&p("y"), &t, r), Err(Error::StaleChoice));
    let mut wrong = r.clone();
    wrong.placement = Placement::new(vec![0], 0, 1);
    assert_eq!(
        rewrite_once(&LinComb::monomial(t.clone()), &t, &wrong),
        Err(Error::StaleChoice)
    );
}

#[test]
fn scheme_closure_of_fork() {
    let c = closure(&p("[[x1] [x2]]"), &scheme(&Family::ALL), 1000);
    let nfs: Vec<String> = c
        .normal_form_values()
        .iter()
        .map(|f| f.display(&a()).to_string())
        .collect();
    assert_eq!(strs(&nfs), ["[[[1] x1] x2]"]);
    assert!(!c.has_cycle());
    assert!(!c.truncated);
    assert_eq!(c.root(), &p("[[x1] [x2]]"));
}

#[test]
fn scheme_two_cycle() {
    let sys = scheme(&Family::ALL);
    let c = closure(&p("[[[1]]]"), &sys, 1000);
    assert!(c.has_cycle());
    assert!(c.normal_forms.is_empty());
    let mut cyc: Vec<String> = c
        .cycle
        .unwrap()
        .iter()
        .map(|&i| c.vertices[i].display(&a()).to_string())
        .collect();
    cyc.sort();
    assert_eq!(strs(&cyc), ["[[1] [1]]", "[[[1]]]"]);
    assert_eq!(c.vertices.len(), 2);
    assert!(matches!(
        normalize(&p("[[[1]]]"), &sys, 100),
        Err(Error::CycleGuard { .. })
    ));
}

#[test]
fn order_closure_of_fork() {
    let c = closure(&p("[[x1] [x2]]"), &order(), 1000);
    let nfs: Vec<String> = c
        .normal_form_values()
        .iter()
        .map(|f| f.display(&a()).to_string())
        .collect();
    // [[1] [x1] x2] is not normal here: φ(1, [x1] x2) is flipped by dT
    assert_eq!(strs(&nfs), ["[1] [[x1] x2]"]);
    assert!(!c.has_cycle());
    assert!(!find_redexes(&w("[[1] [x1] x2]"), &order()).is_empty());
}

#[test]
fn normalize_examples() {
    let n = normalize(&p("[x1] [x2]"), &order(), 100).unwrap();
    assert_eq!(n.normal_form, p("[[x1] x2]"));
    assert_eq!(n.trace.len(), 1);
    let z = normalize(&LinComb::zero(), &order(), 100).unwrap();
    assert!(z.normal_form.is_zero() && z.trace.is_empty());
    assert_eq!(
        normalize(&p("[[x1] [x2]]"), &scheme(&Family::ALL), 1).unwrap_err(),
        Error::BudgetExhausted(1)
    );
}

#[test]
fn joinable_examples() {
    let sys = scheme(&Family::ALL);
    // φ′ reaches g directly; both also reach [[[1] x1] x2]
    assert_eq!(
        joinable(&p("[[[x1] x2]]"), &p("[[[x1]] x2]"), &sys, 1000),
        Joinability::Joinable(p("[[[x1]] x2]"))
    );
    for f in ["[[[x1] x2]]", "[[[x1]] x2]"] {
        assert!(closure(&p(f), &sys, 1000)
            .vertices
            .contains(&p("[[[1] x1] x2]")));
    }
    assert_eq!(
        joinable(&p("x [y]"), &p("x [y]"), &sys, 1000),
        Joinability::Joinable(p("x [y]"))
    );
    assert_eq!(
        joinable(&p("[[x] y] [z]"), &p("[x] [[y] z]"), &sys, 1000),
        Joinability::Joinable(p("[[[x] y] z]"))
    );
    assert_eq!(
        joinable(&p("x"), &p("y"), &sys, 1000),
        Joinability::NotJoinable
    );
    let big = p("[[x1] [x2]]");
    assert_eq!(
        joinable(&big, &p("[[[1] x1] x2] + y"), &sys, 2),
        Joinability::Unknown
    );
}

#[test]
fn fork_is_an_offender_without_varphi() {
    let sys = build_system(
        &[Family::Phi, Family::Psi],
        Orientation::PatternSide(0),
        Variant::Nonunitary,
    );
    let r = local_confluence_report(5, 2, &sys, 10_000, crate::exec::Execution::Sequential);
    assert_eq!(r.verdict(), Verdict::NotConfluent);
    let fork = Alphabet::standard(2).parse("[[x1] [x2]]").unwrap();
    assert!(r.offenders.iter().any(|f| f.word == fork));
}

#[test]
fn empty_system_is_confluent() {
    let sys =
        crate::opi::to_system(&[], Orientation::Order(OrderHandle::Dt), Variant::Unitary).unwrap();
    let r = local_confluence_report(3, 1, &sys, 100, crate::exec::Execution::Sequential);
    assert_eq!(r.verdict(), Verdict::Confluent);
    assert_eq!(r.forks_checked, 0);
    let gs = gs_verdict(3, 1, &sys, 100, crate::exec::Execution::Sequential).unwrap();
    assert_eq!(gs.verdict(), Some(true));
    assert_eq!(gs.irreducible_words, r.words_checked);
    assert!(matches!(
        gs_verdict(
            3,
            1,
            &scheme(&Family::ALL),
            100,
            crate::exec::Execution::Sequential
        ),
        Err(Error::OrderModeRequired)
    ));
}

#[test]
fn differential_order_rule() {
    let d = crate::opi::builtin("differential", None).unwrap();
    let sys =
        crate::opi::to_system(&d, Orientation::Order(OrderHandle::Dt), Variant::Unitary).unwrap();
    let rs = find_redexes(&w("[[1] x]"), &sys);
    assert!(rs.iter().any(
        |r| r.placement == Placement::new(vec![], 0, 1) && r.rule.rhs == p("[[1]] x + [1] [x]")
    ));
    // here x [y] is the dT-maximal monomial, so [x y] is a reduct of it
    let rs = find_redexes(&w("x [y]"), &sys);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].rule.rhs, p("[x y] - [x] y"));
    assert!(find_redexes(&w("[x y]"), &sys).is_empty());
    assert!(sys.is_homogeneous());
    let rb = crate::opi::builtin("rota_baxter", Some(rational(1))).unwrap();
    let sys = crate::opi::to_system(&rb, Orientation::PatternSide(0), Variant::Unitary).unwrap();
    assert!(!sys.is_homogeneous());
    assert!(sys.is_nonincreasing());
}

#[test]
fn rule_instances_are_simple() {
    let sys = order();
    for t in crate::terms::enumerate_words(4, 1, Variant::Unitary) {
        for r in find_redexes(&t, &sys) {
            assert!(!r.rule.rhs.contains(&r.rule.lhs));
            for (m, _) in r.rule.rhs.iter() {
                assert_eq!(
                    OrderHandle::Dt.compare(m, &r.rule.lhs),
                    std::cmp::Ordering::Less
                );
            }
            let s = LinComb::monomial(r.rule.lhs.clone()).sub(&r.rule.rhs);
            let opi = sys
                .families()
                .iter()
                .find(|f| f.name() == &*r.rule.family)
                .unwrap()
                .opi();
            let inst = opi.instantiate(&r.rule.args).unwrap();
            assert!(s == inst || s == inst.scale(&rational(-1)));
        }
    }
}

use satake::root_datum::RootDatum;

const GROUPS: [&str; 9] = ["GL(2)", "GL(3)", "SL(2)", "SL(3)", "PGL(2)", "PGL(3)", "Sp(4)", "torus(1)", "GL(2)xSL(2)"];

fn data() -> Vec<RootDatum> {
    GROUPS.iter().map(|g| RootDatum::from_id(g).unwrap()).collect()
}

#[test]
fn dominance_is_a_partial_order() {
    for rd in data() {
        let doms = rd.dominant_in_box(8, 3);
        let leq = |a, b| rd.dominance_leq(a, b).unwrap();
        for a in &doms {
            assert!(leq(a, a));
            for b in &doms {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b, "{}", rd.name());
                }
                if leq(a, b) {
                    for c in &doms {
                        if leq(b, c) {
                            assert!(leq(a, c), "{}: {a} <= {b} <= {c}", rd.name());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn parity_is_constant_on_pi1_classes() {
    for rd in data() {
        let doms = rd.dominant_in_box(8, 4);
        for a in &doms {
            for b in &doms {
                if rd.pi1_class(a.coords()) == rd.pi1_class(b.coords()) {
                    assert_eq!(rd.parity(a.coords()), rd.parity(b.coords()), "{}: {a} {b}", rd.name());
                }
            }
        }
    }
}

#[test]
fn d_pairing_is_additive() {
    for rd in data() {
        let doms = rd.dominant_in_box(6, 3);
        for a in &doms {
            for b in &doms {
                let sum = a.plus(b);
                assert_eq!(rd.d_pairing(sum.coords()), rd.d_pairing(a.coords()) + rd.d_pairing(b.coords()));
            }
        }
    }
}

#[test]
fn dual_is_an_involution() {
    for rd in data() {
        let dd = rd.dual().dual();
        assert!(dd.same_datum(&rd), "{}", rd.name());
        assert_eq!(dd.cartan_matrix(), rd.cartan_matrix());
    }
}

#[test]
fn epsilon_is_an_involution_on_every_character() {
    for rd in data() {
        let eps = rd.g1_data().epsilon;
        for mu in rd.dominant_in_box(6, 3) {
            let e = eps.eval(mu.coords());
            assert_eq!(e * e, 1);
        }
    }
}

use hypercal_core::builtin::{builtin, hopf, kodaira, Builtin};
use hypercal_core::double::{
    build_double, double_psi, double_volume_form, hkt_obstruction_scan, hkt_scan, psi_report, theta_pushforward, DoubleModel,
};
use hypercal_core::endomorphism::FrameEndomorphism;
use hypercal_core::exterior::Form;
use hypercal_core::lie::{hkt_test, hyperkahler_test, nijenhuis};
use hypercal_core::metric::{lagrangian_test, psi_of_form, quaternionic_selection, standard_volume_form};
use hypercal_core::{Error, Gaussian, Scalar};

fn double(name: &str) -> DoubleModel {
    match builtin(name).unwrap() {
        Builtin::Double(d) => d,
        _ => unreachable!(),
    }
}

#[test]
fn flat_double_is_abelian() {
    for n in 1..=2 {
        let d = double(&format!("flat_double:{n}"));
        assert!(d.model.is_abelian());
        assert_eq!(d.model.dim(), 4 * n);
    }
}

#[test]
fn kodaira_double_volume_and_psi_closed() {
    let d = double("kodaira_double");
    assert_eq!(d.model.dim(), 8);
    assert_eq!(d.model.lower_central_series(), &[8, 3, 0]);
    let vol = double_volume_form(&d).unwrap();
    assert!(d.model.d(&vol.phi).unwrap().is_zero());
    let p = double_psi(&d).unwrap();
    assert!(p.closed);
    assert_eq!(p.lagrangian_pairing, Gaussian::int(2));
}

#[test]
fn iwasawa_double_volume_and_psi_closed() {
    let d = double("iwasawa_double");
    assert_eq!(d.model.dim(), 12);
    assert!(d.model.is_nilpotent());
    let p = double_psi(&d).unwrap();
    assert!(p.closed);
    assert_eq!(p.lagrangian_pairing, Gaussian::int(6));
}

#[test]
fn double_structures_are_integrable() {
    let d = double("kodaira_double");
    let q = d.structure();
    for (name, l) in ["I", "J", "K"].into_iter().zip(q.triple()) {
        assert!(nijenhuis(&d.model, l, name).unwrap().is_zero());
    }
    // flip the sign of the h0 <-> v0 pair of 𝓙; it still squares to −Id
    let mut m = q.j().matrix().clone();
    let v0 = 2 * d.n;
    m.set(0, v0, -m.get(0, v0).clone());
    m.set(v0, 0, -m.get(v0, 0).clone());
    let bad = FrameEndomorphism::new(d.frame(), m).unwrap();
    let r = nijenhuis(&d.model, &bad, "J'").unwrap();
    assert!(r.witness.is_some() && !r.value.unwrap().is_zero());
}

#[test]
fn non_closed_volume_forms_give_non_closed_psi() {
    let m = hopf().unwrap();
    let q = m.structure().unwrap();
    let vol = standard_volume_form(q, &quaternionic_selection(q).unwrap()).unwrap();
    assert!(!m.is_closed(&vol.phi).unwrap());
    assert!(!psi_report(&m, &vol).unwrap().closed);
    // on the Kodaira double every (4,0)-form is a constant multiple of Φ,
    // so a perturbed coefficient leaves the (4,0) line
    let d = double("kodaira_double");
    let phi = double_volume_form(&d).unwrap().phi;
    let (b, c) = phi.terms().next().map(|(b, c)| (b, c.clone())).unwrap();
    let bump = Form::monomial(d.frame(), &b.to_vec(), c).unwrap();
    let err = psi_of_form(&phi.try_add(&bump).unwrap(), d.structure()).unwrap_err();
    assert!(matches!(err, Error::NotPureType { .. }));
}

#[test]
fn kodaira_double_is_not_hkt() {
    let d = double("kodaira_double");
    let r = hkt_test(&d.model).unwrap();
    assert!(!r.hkt && !r.hyperkahler);
    assert!(r.defect() > 0);
    assert!(!hyperkahler_test(&d.model).unwrap());
    let flat = match builtin("flat:2").unwrap() {
        Builtin::Lie(m) => m,
        _ => unreachable!(),
    };
    assert!(hyperkahler_test(&flat).unwrap());
}

#[test]
fn vertical_space_is_lagrangian() {
    let d = double("kodaira_double");
    let r = lagrangian_test(&d.vertical_holomorphic().unwrap(), d.model.metric().unwrap(), d.structure()).unwrap();
    assert!(r.omega_vanishes && r.j_orthogonal && r.transversal);
}

#[test]
fn kodaira_theta_positive_not_closed() {
    let d = double("kodaira_double");
    let t = theta_pushforward(&d, d.model.metric().unwrap()).unwrap();
    assert!(t.type_11);
    assert_eq!(t.positive, Some(true));
    assert!(!t.theta_closed);
}

#[test]
fn flat_theta_is_a_multiple_of_the_kahler_form() {
    for (n, factor) in [(1usize, -4i64), (2, -16), (3, -96)] {
        let d = double(&format!("flat_double:{n}"));
        let t = theta_pushforward(&d, d.model.metric().unwrap()).unwrap();
        let f = d.affine.base.frame();
        let mut kahler = Form::zero(f, 2).unwrap();
        for i in 0..n {
            kahler = kahler.try_add(&Form::monomial(f, &[2 * i, 2 * i + 1], Gaussian::one()).unwrap()).unwrap();
        }
        assert_eq!(t.theta, kahler.scale(&Gaussian::int(factor)), "n = {n}");
        assert!(t.theta_closed && t.big_theta_closed);
        assert_eq!(t.positive, Some(true));
    }
}

#[test]
fn small_scans() {
    assert_eq!(hkt_obstruction_scan(&double("kodaira_double"), 10, 7).unwrap().hkt_found, 0);
    assert_eq!(hkt_obstruction_scan(&double("flat_double:1"), 10, 7).unwrap().hkt_found, 10);
}

#[test]
fn double_of_invalid_affine_fails() {
    let mut a = kodaira().unwrap();
    a.rho[0] = a.rho[0].neg();
    assert!(matches!(build_double(&a), Err(Error::AffineIdentity { .. })));
}

#[test]
fn four_dimensional_metrics_are_hkt() {
    // no (3,0)-forms in complex dimension 2, and no weight 3 in Λ³ of ℍ¹
    let m = hopf().unwrap();
    let scan = hkt_scan(&m, 20, 3).unwrap();
    assert_eq!(scan.hkt_found, 20);
    assert!(!hyperkahler_test(&m).unwrap());
}

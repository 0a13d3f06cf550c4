use proptest::prelude::*;

use hypercal_core::affine::AffineComplexModel;
use hypercal_core::builtin::{builtin, iwasawa, kodaira, Builtin};
use hypercal_core::double::{build_double, double_psi, fibration_metric, theta_pushforward};
use hypercal_core::exterior::{Form, Polyvector};
use hypercal_core::frame::{Blade, Frame, FrameRef};
use hypercal_core::lie::{ce_cohomology, LieModel};
use hypercal_core::metric::{holomorphic_part, kahler_forms, lagrangian_test, psi, quaternionic_selection, standard_volume_form, HyperhermitianMetric};
use hypercal_core::quaternionic::{bigrade, pure_type, QuaternionicStructure};
use hypercal_core::{Gaussian, Matrix, Scalar};

fn form(frame: &FrameRef, k: usize, coeffs: &[i64]) -> Form<Gaussian> {
    let terms = Blade::all(frame.dim(), k).into_iter().zip(coeffs).map(|(b, &c)| (b.to_vec(), Gaussian::int(c)));
    Form::from_terms(frame, k, terms).unwrap()
}

fn complex_form(frame: &FrameRef, k: usize, re: &[i64], im: &[i64]) -> Form<Gaussian> {
    form(frame, k, re).try_add(&form(frame, k, im).scale(&Gaussian::i())).unwrap()
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

fn double(name: &str) -> hypercal_core::double::DoubleModel {
    match builtin(name).unwrap() {
        Builtin::Double(d) => d,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wedge_is_graded_commutative_and_associative(a in coeffs(6), b in coeffs(15), c in coeffs(6)) {
        let f = Frame::numbered(6).unwrap();
        let (x, y, z) = (form(&f, 1, &a), form(&f, 2, &b), form(&f, 1, &c));
        prop_assert_eq!(x.wedge(&z).unwrap(), z.wedge(&x).unwrap().neg());
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap());
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
    }

    #[test]
    fn d_is_an_antiderivation(a in coeffs(8), b in coeffs(28)) {
        let m = double("kodaira_double").model;
        let (x, y) = (form(m.frame(), 1, &a), form(m.frame(), 2, &b));
        let lhs = m.d(&x.wedge(&y).unwrap()).unwrap();
        let rhs = m.d(&x).unwrap().wedge(&y).unwrap().try_sub(&x.wedge(&m.d(&y).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(b in coeffs(66)) {
        let m = double("iwasawa_double").model;
        let x = form(m.frame(), 2, &b);
        prop_assert!(m.d(&m.d(&x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn sl2_relations_hold_on_random_forms(re in coeffs(28), im in coeffs(28)) {
        let q = QuaternionicStructure::standard(2).unwrap();
        let x = complex_form(q.frame(), 2, &re, &im);
        q.sl2().check_form(&x).unwrap();
    }

    #[test]
    fn hodge_components_sum_to_form(re in coeffs(56), im in coeffs(56)) {
        let q = QuaternionicStructure::standard(2).unwrap();
        let x = complex_form(q.frame(), 3, &re, &im);
        let parts = bigrade(&x, q.i(), true).unwrap();
        let mut sum = Form::zero(q.frame(), 3).unwrap();
        for p in parts.values() {
            sum = sum.try_add(p).unwrap();
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn random_metrics_are_compatible(seed in 0u64..1000, index in 0u64..1000) {
        for q in [QuaternionicStructure::standard(2).unwrap(), double("kodaira_double").structure().clone()] {
            let g = HyperhermitianMetric::random(&q, seed, index);
            for l in q.triple() {
                prop_assert_eq!(&l.matrix().transpose().mul(g.matrix()).unwrap().mul(l.matrix()).unwrap(), g.matrix());
            }
            let k = kahler_forms(&g, &q).unwrap();
            prop_assert_eq!(pure_type(&k.big_omega_i, q.i()).unwrap(), Some((2, 0)));
        }
    }

    #[test]
    fn lagrangian_criteria_agree(seed in 0u64..1000, a in coeffs(8), b in coeffs(8)) {
        let q = QuaternionicStructure::standard(2).unwrap();
        let g = HyperhermitianMetric::random(&q, seed, 0);
        let vs: Vec<Polyvector<Gaussian>> = [a, b]
            .iter()
            .map(|c| {
                let v = Polyvector::vector(q.frame(), &c.iter().map(|&x| Gaussian::int(x)).collect::<Vec<_>>()).unwrap();
                holomorphic_part(&v, &q).unwrap()
            })
            .collect();
        match lagrangian_test(&vs, &g, &q) {
            Ok(r) => prop_assert_eq!(r.omega_vanishes, r.j_orthogonal),
            Err(e) => prop_assert_eq!(e, hypercal_core::Error::DependentVectors),
        }
    }

    #[test]
    fn psi_is_real_on_real_polyvectors(c in coeffs(70)) {
        let q = QuaternionicStructure::standard(2).unwrap();
        let vol = standard_volume_form(&q, &quaternionic_selection(&q).unwrap()).unwrap();
        let p = psi(&vol, &q).unwrap().psi;
        let terms = Blade::all(8, 4).into_iter().zip(&c).map(|(b, &x)| (b.to_vec(), Gaussian::int(x)));
        let v = Polyvector::from_terms(q.frame(), 4, terms).unwrap();
        prop_assert!(p.pair(&v).unwrap().is_real());
    }

    #[test]
    fn perturbed_kodaira_doubles(lambda in 1i64..=4, a in coeffs(16)) {
        // scaling ρ and the bracket together keeps the affine identities
        let base = kodaira().unwrap();
        let entries = base.base.entries().into_iter().map(|(i, j, k, c)| (i, j, k, c * Gaussian::int(lambda)));
        let lie = LieModel::new("scaled", base.base.frame(), entries).unwrap();
        let rho = base.rho.iter().map(|r| r.scale(&Gaussian::int(lambda))).collect();
        let scaled = AffineComplexModel::new(lie, base.i_base.clone(), rho, base.t.clone(), true);
        let d = build_double(&scaled).unwrap();
        prop_assert!(double_psi(&d).unwrap().closed);
        // a random I-Hermitian base metric ½(M + IᵀMI), M = AᵀA + Id
        let am = Matrix::new(4, 4, a.iter().map(|&x| Gaussian::int(x)).collect()).unwrap();
        let m = am.transpose().mul(&am).unwrap().add(&Matrix::identity(4)).unwrap();
        let i = scaled.i_base.matrix();
        let g = m.add(&i.transpose().mul(&m).unwrap().mul(i).unwrap()).unwrap().scale(&Gaussian::frac(1, 2));
        let h = fibration_metric(&d, &g).unwrap();
        let t = theta_pushforward(&d, &h).unwrap();
        prop_assert!(t.type_11);
        prop_assert_eq!(t.positive, Some(true));
        prop_assert!(!t.theta_closed);
    }
}

#[test]
fn betti_numbers_are_symmetric_for_nilpotent_models() {
    let models = [
        kodaira().unwrap().base,
        iwasawa().unwrap().base,
        double("kodaira_double").model,
        AffineComplexModel::flat(2).unwrap().base,
    ];
    for m in models {
        assert!(m.is_nilpotent());
        let dim = m.dim();
        for k in 0..=dim {
            assert_eq!(ce_cohomology(&m, k).unwrap(), ce_cohomology(&m, dim - k).unwrap(), "{} b{k}", m.name());
        }
    }
}

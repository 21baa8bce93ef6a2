mod common;

use common::*;
use cosym::contact3::{lambda_structure, nijenhuis_concomitant, nijenhuis_torsion, LambdaPoint};
use cosym::io::{corpus, parse_frame_file, serialize, FrameDoc};
use cosym::random;
use cosym::scalar::int;
use cosym::sphere::positivity::replay_ray;
use cosym::{Rational, SphereOptions, SphereVerdict, Vector};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_squared_and_eval_formula(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let p = degree(&mut rng, f.dim() - 1, 3);
        let a = random::form(&mut rng, &f, p, 0.5);
        prop_assert!(a.ext_d().ext_d().is_zero());
        let xs = vectors(&mut rng, &f, p + 1);
        prop_assert_eq!(a.ext_d().eval(&xs).unwrap(), d_eval(&a, &xs));
    }

    #[test]
    fn wedge_matches_shuffle_formula(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let p = degree(&mut rng, f.dim() - 1, 3);
        let q = degree(&mut rng, f.dim() - p, 3);
        let a = random::form(&mut rng, &f, p, 0.5);
        let b = random::form(&mut rng, &f, q, 0.5);
        let xs = vectors(&mut rng, &f, p + q);
        let ab = a.wedge(&b).unwrap();
        prop_assert_eq!(ab.eval(&xs).unwrap(), wedge_eval(&a, &b, &xs));
        let s = if p * q % 2 == 1 { int(-1) } else { int(1) };
        prop_assert_eq!(ab, b.wedge(&a).unwrap().scale(&s));
    }

    #[test]
    fn leibniz_and_interior(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let p = degree(&mut rng, f.dim() - 1, 3);
        let q = degree(&mut rng, f.dim() - p, 2);
        let a = random::form(&mut rng, &f, p, 0.5);
        let b = random::form(&mut rng, &f, q, 0.5);
        let v = random::vector(&mut rng, &f);
        let s = if p % 2 == 1 { int(-1) } else { int(1) };
        let ab = a.wedge(&b).unwrap();
        prop_assert_eq!(ab.ext_d(), a.ext_d().wedge(&b).unwrap() + a.wedge(&b.ext_d()).unwrap().scale(&s));
        prop_assert_eq!(
            ab.interior(&v).unwrap(),
            a.interior(&v).unwrap().wedge(&b).unwrap() + a.wedge(&b.interior(&v).unwrap()).unwrap().scale(&s)
        );
        prop_assert!(ab.degree() < 2 || ab.interior(&v).unwrap().interior(&v).unwrap().is_zero());
        let xs = vectors(&mut rng, &f, p - 1);
        prop_assert_eq!(a.interior(&v).unwrap().eval(&xs).unwrap(), interior_eval(&v, &a, &xs));
    }

    #[test]
    fn cartan_formula(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let p = degree(&mut rng, f.dim(), 3);
        let a = random::form(&mut rng, &f, p, 0.5);
        let v = random::vector(&mut rng, &f);
        let cartan = a.interior(&v).unwrap().ext_d() + a.ext_d().interior(&v).unwrap();
        let xs = vectors(&mut rng, &f, p);
        prop_assert_eq!(cartan.eval(&xs).unwrap(), lie_eval(&v, &a, &xs));
        if p == 1 {
            prop_assert_eq!(cosym::lie_derivative_1form(&v, &a).unwrap(), cartan);
        }
    }

    #[test]
    fn nijenhuis_concomitant_identities(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let (p, q, r) = (random::endo(&mut rng, &f), random::endo(&mut rng, &f), random::endo(&mut rng, &f));
        let pq = nijenhuis_concomitant(&p, &q).unwrap();
        prop_assert_eq!(&pq, &nijenhuis_concomitant(&q, &p).unwrap());
        prop_assert_eq!(nijenhuis_concomitant(&p, &p).unwrap(), nijenhuis_torsion(&p).unwrap().scale(&int(2)));
        let sum = nijenhuis_concomitant(&p.try_add(&r).unwrap(), &q).unwrap();
        prop_assert_eq!(sum, pq.try_add(&nijenhuis_concomitant(&r, &q).unwrap()).unwrap());
        // bilinear extension against the defining formula on random vectors
        let (x, y) = (random::vector(&mut rng, &f), random::vector(&mut rng, &f));
        let br = |a: &Vector, b: &Vector| a.bracket(b).unwrap();
        let ap = |e: &cosym::Endo, v: &Vector| e.apply(v).unwrap();
        let (px, qx, py, qy) = (ap(&p, &x), ap(&q, &x), ap(&p, &y), ap(&q, &y));
        let mut direct = br(&px, &qy);
        for t in [
            ap(&p, &br(&qx, &y)).scale(&int(-1)),
            ap(&q, &br(&x, &py)).scale(&int(-1)),
            br(&qx, &py),
            ap(&q, &br(&px, &y)).scale(&int(-1)),
            ap(&p, &br(&x, &qy)).scale(&int(-1)),
            ap(&p, &ap(&q, &br(&x, &y))),
            ap(&q, &ap(&p, &br(&x, &y))),
        ] {
            direct = direct.try_add(&t).unwrap();
        }
        let n = f.dim();
        let mut extended = Vector::zero(&f);
        for i in 0..n {
            for j in 0..n {
                let c = x.coeff(i).clone() * y.coeff(j).clone();
                extended = extended.try_add(&pq.vector(i, j).scale(&c)).unwrap();
            }
        }
        prop_assert_eq!(direct, extended);
    }

    #[test]
    fn frame_file_round_trip(seed in any::<u64>()) {
        let (mut rng, f) = instance(seed);
        let doc = FrameDoc::new(&f)
            .named("random")
            .with_form("a", &random::form(&mut rng, &f, 1, 0.8))
            .with_form("b", &random::form(&mut rng, &f, 2, 0.4))
            .with_vector("v", &random::vector(&mut rng, &f))
            .with_endo("P", &random::endo(&mut rng, &f));
        let text = serialize(&doc);
        let back = parse_frame_file(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back, doc);
    }

    /// Rational points of 𝕊² by inverse stereographic projection.
    #[test]
    fn lambda_structure_at_rational_points(a in -6i64..=6, b in -6i64..=6, flat in any::<bool>()) {
        let frame = if flat { corpus::flat7_frame() } else { corpus::lie7_frame() };
        let t = corpus::quaternionic_structure(&frame).unwrap();
        let (a, b) = (int(a), int(b));
        let d = a.clone() * a.clone() + b.clone() * b.clone() + int(1);
        let pt = [int(2) * a.clone() / d.clone(), int(2) * b.clone() / d.clone(), (a.clone() * a + b.clone() * b - int(1)) / d];
        let s = lambda_structure(&t, &LambdaPoint::Rational(pt)).unwrap();
        prop_assert!(s.is_verified());
        let r = s.to_rational().unwrap();
        prop_assert!(r.verify().unwrap().is_verified());
    }

    #[test]
    fn sphere_witness_replays(seed in 0u64..400) {
        let g = random::pair(&mut random::rng(seed), 3);
        let c = g.verify_p_sphere(&SphereOptions::default());
        if let SphereVerdict::RefutedWithWitness { ray, value, .. } = &c.verdict {
            let (v, _) = replay_ray(&c.volume.poly, ray);
            prop_assert_eq!(&v, value);
            let pt: Vec<Rational> = ray.iter().map(|x| Rational::from_integer(x.clone())).collect();
            prop_assert_eq!(c.volume.eval(&pt), v);
        }
        prop_assert!(c.verdict.is_verified() || c.verdict.is_refuted(), "undecided: {}", c.verdict.name());
    }
}

#[test]
fn lambda_structure_at_basis_points() {
    for frame in [corpus::lie7_frame(), corpus::flat7_frame()] {
        let t = corpus::quaternionic_structure(&frame).unwrap();
        for a in 0..3 {
            let mut p = [int(0), int(0), int(0)];
            p[a] = int(1);
            let s = lambda_structure(&t, &LambdaPoint::Rational(p)).unwrap().to_rational().unwrap();
            let want = t.structure(a);
            assert_eq!((s.phi(), s.xi(), s.eta()), (want.phi(), want.xi(), want.eta()));
        }
    }
}

#[test]
fn every_builtin_serializes_and_reparses() {
    for name in corpus::NAMES {
        let d = corpus::builtin(name).unwrap();
        assert_eq!(parse_frame_file(&serialize(&d)).unwrap(), d, "{name}");
    }
}

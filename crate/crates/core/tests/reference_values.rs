//! Hand-checked values on small instances.

use wkam::barrier::{
    aubry, conjugate_check, inf_solutions, is_weak_kam, min_formula_check, peierls_barrier, representation_check,
    u_minus, weak_kam_neg, Side,
};
use wkam::critical::{critical_value, is_dominated, solve_subsolution, SubsolutionOutcome};
use wkam::models::{check_length_space, circle_metric, gen_constant, gen_fk, gen_random_exact, potential_profile};
use wkam::oracle::{enum_cycles, enum_walks, enum_zero_cycles, liminf_barrier_bounded, verify_all};
use wkam::potential::{jump_F, jump_f, mane_potential, phi_one};
use wkam::subsolution::{aubry_of, is_calibrated, max_strict_subsolution, strict_pairs, strict_subsolution, Chain};
use wkam::tropical::{
    cost_power, lax_oleinik_neg, lax_oleinik_pos, rat, reverse_cost, CostInstance, Ext, Matrix, Rational,
    ValueFunction,
};

fn r(v: i64) -> Rational {
    rat(v, 1)
}

fn inst(rows: &[&[i64]]) -> CostInstance<Rational> {
    CostInstance::from_rows(rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()).unwrap()
}

fn t2() -> CostInstance<Rational> {
    inst(&[&[2, 0], &[1, 3]])
}

fn t3() -> CostInstance<Rational> {
    inst(&[&[1, 0, 9], &[0, 9, 9], &[9, 9, 9]])
}

fn vf(v: Vec<Rational>) -> ValueFunction<Rational> {
    ValueFunction::from_finite(v, "u")
}

fn fin(v: &ValueFunction<Rational>) -> Vec<Rational> {
    v.to_finite().unwrap()
}

fn dense(m: &Matrix<Ext<Rational>>) -> Vec<Vec<Rational>> {
    m.rows().map(|r| r.iter().map(|v| v.finite().unwrap().clone()).collect()).collect()
}

#[test]
fn lax_oleinik_values() {
    let k5 = gen_constant(2, r(5)).unwrap();
    assert_eq!(fin(&lax_oleinik_neg(&k5, &vf(vec![r(0), r(0)])).unwrap()), [r(5), r(5)]);
    assert_eq!(fin(&lax_oleinik_pos(&k5, &vf(vec![r(0), r(0)])).unwrap()), [r(-5), r(-5)]);
    assert_eq!(fin(&lax_oleinik_neg(&t2(), &vf(vec![r(0), r(0)])).unwrap()), [r(1), r(0)]);
    assert_eq!(fin(&lax_oleinik_neg(&t2(), &vf(vec![r(0), rat(-1, 2)])).unwrap()), [rat(1, 2), r(0)]);
    assert_eq!(fin(&lax_oleinik_pos(&t2(), &vf(vec![r(0), r(0)])).unwrap()), [r(0), r(-1)]);
}

#[test]
fn reversal_and_powers() {
    assert_eq!(reverse_cost(&t2()).unwrap(), inst(&[&[2, 1], &[0, 3]]));
    let c2 = cost_power(&t2(), 2).unwrap();
    assert_eq!(c2.get(0, 0), &Ext::Fin(r(1)));
    assert_eq!(c2.get(0, 1), &Ext::Fin(r(2)));
    for n in 1..=6 {
        let cn = cost_power(&t2(), n).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cn.get(x, y), &enum_walks(&t2(), x, y, n).unwrap());
            }
        }
    }
    assert_eq!(enum_walks(&gen_constant(3, r(4)).unwrap(), 0, 2, 3).unwrap(), Ext::Fin(r(12)));
}

#[test]
fn critical_values() {
    for n in 1..=4 {
        assert_eq!(critical_value(&gen_constant(n, r(3)).unwrap()).unwrap().alpha0, r(-3));
    }
    let crit = critical_value(&t2()).unwrap();
    assert_eq!(crit.alpha0, rat(-1, 2));
    assert_eq!(crit.witness_cycle, [0, 1]);
    assert_eq!(enum_cycles(&t2()).unwrap().min_mean, rat(1, 2));
    assert_eq!(enum_cycles(&t3()).unwrap().min_mean, r(0));
    let v = potential_profile("cos", 8).unwrap();
    assert_eq!(critical_value(&gen_fk(8, &r(1), &v).unwrap()).unwrap().alpha0, r(0));
}

#[test]
fn domination_examples() {
    let k = gen_constant(3, r(2)).unwrap();
    let zero = vf(vec![r(0); 3]);
    assert!(is_dominated(&k, &zero, &r(-2)).unwrap().holds());
    assert!(is_dominated(&k, &zero, &r(-3)).unwrap().violation.is_some());
    assert!(is_dominated(&t2(), &vf(vec![r(0), rat(-1, 2)]), &rat(-1, 2)).unwrap().holds());
    match solve_subsolution(&t2(), &rat(-1, 2)).unwrap() {
        SubsolutionOutcome::Feasible(u) => {
            let u = fin(&u);
            assert!(u[1].clone() - u[0].clone() <= rat(-1, 2));
            assert!(u[0].clone() - u[1].clone() <= rat(1, 2));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn potentials() {
    let crit = critical_value(&t2()).unwrap();
    let phi = mane_potential(&t2(), &crit).unwrap();
    assert_eq!(dense(&phi.entries), [[r(0), rat(-1, 2)], [rat(1, 2), r(0)]]);
    let phi1 = phi_one(&t2(), &crit).unwrap();
    assert_eq!(phi1.get(0, 0), &Ext::Fin(r(0)));
    assert_eq!(phi1.get(1, 1), &Ext::Fin(r(0)));
    assert_eq!(fin(&jump_F(&t2(), &crit).unwrap()), [r(0), r(0)]);
    assert_eq!(fin(&jump_f(&t2(), &crit).unwrap()), [r(0), r(0)]);

    let k = gen_constant(3, r(7)).unwrap();
    let kc = critical_value(&k).unwrap();
    assert!(dense(&mane_potential(&k, &kc).unwrap().entries).iter().flatten().all(|v| *v == r(0)));
    assert_eq!(fin(&jump_F(&k, &kc).unwrap()), vec![r(0); 3]);
    assert_eq!(fin(&jump_f(&k, &kc).unwrap()), vec![r(0); 3]);

    let c3 = critical_value(&t3()).unwrap();
    assert!(fin(&jump_F(&t3(), &c3).unwrap())[2] > r(0));
}

#[test]
fn barriers_and_aubry_sets() {
    let crit = critical_value(&t2()).unwrap();
    let bar = peierls_barrier(&t2(), &crit).unwrap();
    let h = [[r(0), rat(-1, 2)], [rat(1, 2), r(0)]];
    assert_eq!(bar.dense().unwrap().to_rows(), h);
    let lim = liminf_barrier_bounded(&t2(), &crit, 12).unwrap();
    assert!(lim.stabilized);
    assert_eq!(lim.h.to_rows(), h);
    let a = aubry(&t2(), &crit, &bar).unwrap();
    assert_eq!(a.vertices, [0, 1]);
    assert_eq!(a.edges, [(0, 1), (1, 0)]);

    let c3 = critical_value(&t3()).unwrap();
    let b3 = peierls_barrier(&t3(), &c3).unwrap();
    assert!(b3.dense().unwrap()[(2, 2)] > r(0));
    let l3 = liminf_barrier_bounded(&t3(), &c3, 24).unwrap();
    assert!(l3.stabilized);
    assert_eq!(l3.h, b3.dense().unwrap());
    let a3 = aubry(&t3(), &c3, &b3).unwrap();
    assert_eq!(a3.vertices, [0, 1]);
    assert_eq!(a3.edges, [(0, 1), (1, 0)]);
    let z3 = enum_zero_cycles(&t3(), &c3).unwrap();
    assert_eq!((z3.vertices, z3.edges), (a3.vertices.clone(), a3.edges.clone()));

    let k = gen_constant(3, r(1)).unwrap();
    let kc = critical_value(&k).unwrap();
    let kb = peierls_barrier(&k, &kc).unwrap();
    assert!(kb.dense().unwrap().iter().all(|(_, v)| *v == r(0)));
    let ka = aubry(&k, &kc, &kb).unwrap();
    assert_eq!(ka.vertices, [0, 1, 2]);
    assert_eq!(ka.edges.len(), 9);
}

#[test]
fn weak_kam_solutions() {
    let crit = critical_value(&t2()).unwrap();
    let bar = peierls_barrier(&t2(), &crit).unwrap();
    let ha = weak_kam_neg(&bar, 0);
    assert_eq!(fin(&ha), [r(0), rat(-1, 2)]);
    assert!(is_weak_kam(&t2(), &crit, &ha, Side::Negative).unwrap());
    assert_eq!(fin(&u_minus(&t2(), &crit, &ha).unwrap().value), fin(&ha));
    let hb = weak_kam_neg(&bar, 1);
    let inf = inf_solutions(&t2(), &crit, &[ha.clone(), hb.clone()]).unwrap();
    let expected: Vec<Rational> = fin(&ha).into_iter().zip(fin(&hb)).map(|(a, b)| a.min(b)).collect();
    assert_eq!(fin(&inf), expected);
    assert_eq!(fin(&inf_solutions(&t2(), &crit, std::slice::from_ref(&ha)).unwrap()), fin(&ha));

    let phi2 = mane_potential(&t2(), &crit).unwrap();
    assert!(is_weak_kam(&t2(), &crit, &phi2.row_function(0), Side::Negative).unwrap());

    let c3 = critical_value(&t3()).unwrap();
    let phi3 = mane_potential(&t3(), &c3).unwrap();
    assert!(!is_weak_kam(&t3(), &c3, &phi3.row_function(2), Side::Negative).unwrap());
    assert!(is_weak_kam(&t3(), &c3, &phi3.row_function(0), Side::Negative).unwrap());

    let k = gen_constant(2, r(4)).unwrap();
    let kc = critical_value(&k).unwrap();
    assert_eq!(fin(&u_minus(&k, &kc, &vf(vec![r(0), r(0)])).unwrap().value), [r(0), r(0)]);
}

#[test]
fn conjugates_representation_and_min_formula() {
    let c3 = critical_value(&t3()).unwrap();
    let SubsolutionOutcome::Feasible(u) = solve_subsolution(&t3(), &c3.alpha0).unwrap() else { panic!() };
    assert!(conjugate_check(&t3(), &c3, &u).unwrap().holds());
    let k = gen_constant(2, r(1)).unwrap();
    let kc = critical_value(&k).unwrap();
    let rep = conjugate_check(&k, &kc, &vf(vec![r(0), r(0)])).unwrap();
    assert!(rep.holds());
    assert!([&rep.u_m, &rep.u_mp, &rep.u_mpm, &rep.u_mpmp].iter().all(|v| v.iter().all(|x| *x == r(0))));

    let crit = critical_value(&t2()).unwrap();
    let bar = peierls_barrier(&t2(), &crit).unwrap();
    let s = representation_check(&t2(), &crit, &bar, &weak_kam_neg(&bar, 0), 4).unwrap();
    assert!(s.bounded());
    assert_eq!(s.s.row(0), bar.dense().unwrap().row(0));

    assert!(min_formula_check(&t2(), &crit, &bar, 1).unwrap());
    let b3 = peierls_barrier(&t3(), &c3).unwrap();
    assert!(min_formula_check(&t3(), &c3, &b3, 3).unwrap());
    let kb = peierls_barrier(&k, &kc).unwrap();
    assert!(min_formula_check(&k, &kc, &kb, 1).unwrap());
}

#[test]
fn calibration_and_strictness() {
    let crit = critical_value(&t2()).unwrap();
    let u = vf(vec![r(0), rat(-1, 2)]);
    assert!(is_calibrated(&t2(), &crit, &u, &Chain::new(vec![0, 1], 2).unwrap()).unwrap());
    assert_eq!(aubry_of(&t2(), &crit, &u).unwrap(), [0, 1]);
    let u1 = max_strict_subsolution(&t2(), &crit).unwrap();
    assert_eq!(strict_pairs(&t2(), &crit, &u1).unwrap(), [(0, 0), (1, 1)]);

    let k = gen_constant(3, r(2)).unwrap();
    let kc = critical_value(&k).unwrap();
    let zero = vf(vec![r(0); 3]);
    assert!(is_calibrated(&k, &kc, &zero, &Chain::new(vec![2, 0, 1, 1], 3).unwrap()).unwrap());
    assert_eq!(aubry_of(&k, &kc, &zero).unwrap(), [0, 1, 2]);
    assert_eq!(fin(&strict_subsolution(&k, &kc, &zero).unwrap()), vec![r(0); 3]);
    let k1 = fin(&max_strict_subsolution(&k, &kc).unwrap());
    assert!(k1.iter().all(|v| *v == k1[0]));
    assert!(strict_pairs(&k, &kc, &vf(k1)).unwrap().is_empty());

    let c3 = critical_value(&t3()).unwrap();
    let ha = weak_kam_neg(&peierls_barrier(&t3(), &c3).unwrap(), 0);
    assert_eq!(aubry_of(&t3(), &c3, &ha).unwrap(), [0, 1]);
    let touching_c: Vec<(usize, usize)> =
        [(0, 2), (1, 2), (2, 0), (2, 1), (2, 2)].into_iter().collect();
    let s = strict_subsolution(&t3(), &c3, &ha).unwrap();
    let strict = strict_pairs(&t3(), &c3, &s).unwrap();
    assert!(touching_c.iter().all(|p| strict.contains(p)));
    let u1 = max_strict_subsolution(&t3(), &c3).unwrap();
    let strict1 = strict_pairs(&t3(), &c3, &u1).unwrap();
    assert!(touching_c.iter().all(|p| strict1.contains(p)));
    assert!(!strict1.contains(&(0, 1)) && !strict1.contains(&(1, 0)));
}

#[test]
fn generators_and_metric() {
    assert_eq!(gen_constant(2, r(5)).unwrap(), inst(&[&[5, 5], &[5, 5]]));
    assert_eq!(gen_constant(1, r(0)).unwrap(), inst(&[&[0]]));
    assert_eq!(gen_constant(3, r(-2)).unwrap(), inst(&[&[-2, -2, -2], &[-2, -2, -2], &[-2, -2, -2]]));
    let a = gen_random_exact(5, 7, &r(-1), &r(2)).unwrap();
    assert_eq!(a, gen_random_exact(5, 7, &r(-1), &r(2)).unwrap());
    assert_eq!(critical_value(&a).unwrap().alpha0, -enum_cycles(&a).unwrap().min_mean);
    assert_eq!(gen_random_exact(1, 3, &r(0), &r(1)).unwrap().n(), 1);

    let zero = gen_fk(6, &r(1), &potential_profile("zero", 6).unwrap()).unwrap();
    let zc = critical_value(&zero).unwrap();
    assert_eq!(zc.alpha0, r(0));
    assert_eq!(aubry(&zero, &zc, &peierls_barrier(&zero, &zc).unwrap()).unwrap().vertices, (0..6).collect::<Vec<_>>());
    let cos = gen_fk(8, &r(1), &potential_profile("cos", 8).unwrap()).unwrap();
    let cc = critical_value(&cos).unwrap();
    assert_eq!(aubry(&cos, &cc, &peierls_barrier(&cos, &cc).unwrap()).unwrap().vertices, [0]);
    assert_eq!(enum_zero_cycles(&cos, &cc).unwrap().vertices, [0]);
    let two = gen_fk(6, &r(0), &[r(0), r(1), r(2), r(0), r(1), r(2)]).unwrap();
    let tc = critical_value(&two).unwrap();
    let ta = aubry(&two, &tc, &peierls_barrier(&two, &tc).unwrap()).unwrap();
    assert!(ta.contains(0) && ta.contains(3));

    let d2 = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]).unwrap();
    let ok = check_length_space(&d2, &r(1), &r(1)).unwrap();
    assert!(ok.ok);
    assert_eq!(ok.witness_chains[&(0, 1)], [0, 1]);
    assert!(!check_length_space(&d2, &r(5), &rat(1, 2)).unwrap().ok);
    assert!(check_length_space(&circle_metric(8), &r(1), &rat(1, 8)).unwrap().ok);
}

#[test]
fn oracle_suite_passes_on_small_instances() {
    for i in [t2(), t3(), gen_constant(3, r(4)).unwrap()] {
        let report = verify_all(&i).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn slow_stabilization_exceeds_quadratic_cap() {
    let i = inst(&[&[0, 100], &[100, 1]]);
    let crit = critical_value(&i).unwrap();
    let lim = u_minus(&i, &crit, &vf(vec![r(0), r(0)])).unwrap();
    assert_eq!(fin(&lim.value), [r(0), r(100)]);
    assert!(lim.iterations > wkam::barrier::float_iteration_cap(2));
    let f: CostInstance<f64> = i.convert().unwrap();
    let fc = critical_value(&f).unwrap();
    let err = u_minus(&f, &fc, &ValueFunction::from_finite(vec![0.0, 0.0], "u")).unwrap_err();
    assert!(matches!(err, wkam::WkamError::NonConvergence(16)));
}

#[test]
fn aubry_set_of_a_function_can_exceed_the_global_one() {
    let g = inst(&[&[0, 0, 5], &[5, 5, 0], &[5, 5, 0]]);
    let crit = critical_value(&g).unwrap();
    let zero = vf(vec![r(0); 3]);
    let global = aubry(&g, &crit, &peierls_barrier(&g, &crit).unwrap()).unwrap();
    assert_eq!(global.vertices, [0, 2]);
    assert_eq!(aubry_of(&g, &crit, &zero).unwrap(), [0, 1, 2]);
    let report = verify_all(&g).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
}

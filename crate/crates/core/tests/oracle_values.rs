mod common;

use common::oracle::*;
use common::{close, reference_engine, spin};
use spinotto::local::{local_temperatures, ReducedEndpoints};
use spinotto::thermal::boltzmann_probabilities;
use spinotto::{
    analytic_spectrum, diagonalize, gibbs_state, local_analysis, mean_field_split, run_cycle, run_generalized_cycle,
    GeneralizedConfig, PairOperators, Quantity,
};

const TOL: f64 = 1e-10;

fn check(name: &str, got: f64, want: f64) {
    assert!(close(got, want, TOL), "{name}: got {got:e}, oracle {want:e}");
}

#[test]
fn spin_half_populations() {
    let energies: Vec<f64> = analytic_spectrum(spin(1), 0.1, 4.0).iter().map(|l| l.energy).collect();
    let (p, _) = boltzmann_probabilities(&energies, 1.0).unwrap();
    for (n, (got, want)) in p.iter().zip(P_HALF).enumerate() {
        check(&format!("P{n}"), *got, want);
    }
    let spec = diagonalize(&PairOperators::new(spin(1)).hamiltonian(0.1, 4.0).unwrap()).unwrap();
    let st = gibbs_state(&spec, 1.0).unwrap();
    for (got, want) in st.probabilities.iter().zip(P_HALF) {
        check("P numeric", *got, want);
    }
}

#[test]
fn weak_coupling_cycle() {
    let c = reference_engine(2, 0.1);
    let r = run_cycle(&c).unwrap();
    let l = local_analysis(&c).unwrap();
    check("W", r.w, CYCLE_S1_J01_W);
    check("eta", r.eta.unwrap(), CYCLE_S1_J01_ETA);
    check("Q1", r.q1, CYCLE_S1_J01_Q1);
    check("Q2", r.q2, CYCLE_S1_J01_Q2);
    check("wA", l.wa, CYCLE_S1_J01_WA);
    check("wB", l.wb, CYCLE_S1_J01_WB);
    check("Ps", l.ps, CYCLE_S1_J01_PS);
}

#[test]
fn strong_coupling_local_split() {
    let c = reference_engine(2, 4.0);
    let r = run_cycle(&c).unwrap();
    let l = local_analysis(&c).unwrap();
    check("W", r.w, LOCAL_S1_J4_W);
    check("Q1", r.q1, LOCAL_S1_J4_Q1);
    check("Q2", r.q2, LOCAL_S1_J4_Q2);
    check("wA", l.wa, LOCAL_S1_J4_WA);
    check("wB", l.wb, LOCAL_S1_J4_WB);
    check("Ps", l.ps, LOCAL_S1_J4_PS);
    check("q1A", l.q1a, LOCAL_S1_J4_Q1A);
    check("q1B", l.q1b, LOCAL_S1_J4_Q1B);
}

fn spin_a_temperatures(twice: u32, j: f64) -> (f64, f64) {
    let c = reference_engine(twice, j);
    let ops = PairOperators::new(c.s);
    let ends = c.endpoints(&ops).unwrap();
    let red = ReducedEndpoints::new(&ends).unwrap();
    let t = local_temperatures(&ends, &red).unwrap();
    (t.a_hot.temperature.finite().unwrap(), t.a_cold.temperature.finite().unwrap())
}

#[test]
fn spin_a_temperatures_match() {
    for (twice, hot, cold) in TA_J01 {
        let (h, c) = spin_a_temperatures(twice, 0.1);
        check(&format!("TA_hot 2s={twice} J=0.1"), h, hot);
        check(&format!("TA_cold 2s={twice} J=0.1"), c, cold);
    }
    for (twice, hot, cold) in TA_J4 {
        let (h, c) = spin_a_temperatures(twice, 4.0);
        check(&format!("TA_hot 2s={twice} J=4"), h, hot);
        check(&format!("TA_cold 2s={twice} J=4"), c, cold);
    }
}

#[test]
fn spin_b_pairwise_temperatures() {
    let c = reference_engine(2, 0.1);
    let ops = PairOperators::new(c.s);
    let ends = c.endpoints(&ops).unwrap();
    let red = ReducedEndpoints::new(&ends).unwrap();
    let t = local_temperatures(&ends, &red).unwrap();
    assert!(!t.b_hot.is_thermal);
    assert_eq!(t.b_hot.temperature, Quantity::Undefined);
    for (got, want) in t.b_hot.pairwise.iter().zip(TB_S1_PAIRS) {
        check("TB pair", got.finite().unwrap(), want);
    }
}

#[test]
fn spin_half_covariance() {
    let ops = PairOperators::new(spin(1));
    let spec = diagonalize(&ops.hamiltonian(0.2, 4.0).unwrap()).unwrap();
    let st = gibbs_state(&spec, 1.0).unwrap();
    let m = mean_field_split(&st.rho, &ops).unwrap();
    check("cov", m.covariance, COV_HALF_J02);
    check("dot", m.dot, DOT_HALF_J02);
    check("szA", m.a[2], SZA_HALF_J02);
}

#[test]
fn pure_coupling_cycle() {
    let g = GeneralizedConfig::new(spin(2), 0.3, 0.1, 4.0, 4.0, 1.0, 0.5).unwrap();
    let cr = run_generalized_cycle(&g).unwrap();
    check("W", cr.w, PUREJ_S1_W);
    check("Ps", cr.ps, PUREJ_S1_PS);
    check("wA_mf", cr.wa_mf, PUREJ_S1_WMF);
    check("wB_mf", cr.wb_mf, PUREJ_S1_WMF);
    check("w_coop", cr.w_coop, PUREJ_S1_WCOOP);
    check("cov1", cr.cov1, PUREJ_S1_COV1);
    check("cov2", cr.cov2, PUREJ_S1_COV2);
    check("ratio", cr.ratio.finite().unwrap(), PUREJ_S1_RATIO);
    check("closed-form ratio", spinotto::closed_form_ratio(&cr).finite().unwrap(), PUREJ_S1_RATIO);
}

#[test]
fn generalized_spin_half_cycle() {
    let g = GeneralizedConfig::new(spin(1), 0.2, 0.1, 4.0, 3.0, 1.0, 0.5).unwrap();
    let cr = run_generalized_cycle(&g).unwrap();
    check("W", cr.w, GEN_HALF_W);
    check("Q1", cr.cycle.q1, GEN_HALF_Q1);
    check("Q2", cr.cycle.q2, GEN_HALF_Q2);
    check("Ps", cr.ps, GEN_HALF_PS);
    check("wA", cr.wa_simple, GEN_HALF_W_SIMPLE);
    check("wB", cr.wb_simple, GEN_HALF_W_SIMPLE);
    check("wA_mf", cr.wa_mf, GEN_HALF_WMF);
    check("wB_mf", cr.wb_mf, GEN_HALF_WMF);
    check("w_coop", cr.w_coop, GEN_HALF_WCOOP);
    check("cov1", cr.cov1, GEN_HALF_COV1);
    check("cov2", cr.cov2, GEN_HALF_COV2);
    check("ratio", cr.ratio.finite().unwrap(), GEN_HALF_RATIO);
}

#[test]
fn strong_coupling_work() {
    let r = run_cycle(&reference_engine(2, 50.0)).unwrap();
    check("W", r.w, STRONG_S1_J50_W);
    check("eta", r.eta.unwrap(), 0.25);
}

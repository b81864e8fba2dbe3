use ethsm_core::analytics::{crossover, sm2b, SearchRange};
use ethsm_core::combinatorics::catalan_partial_sum;
use ethsm_core::{BigRational, ExactMix, ProtocolParams, Scalar, StrategyId};

fn r(n: i64) -> BigRational {
    BigRational::from_int(n)
}

fn mix(num: i64, den: i64) -> ExactMix {
    ExactMix::new(BigRational::from_ratio(num, den), r(0)).unwrap()
}

fn q5(p: &BigRational, q: &BigRational) -> BigRational {
    let t = r(25) * p.powu(3) * q.powu(3)
        + r(20) * p.powu(2) * q.powu(3)
        + r(8) * p.powu(2) * q.powu(2)
        + r(16) * p.clone() * q.powu(2)
        + r(3) * p.clone() * q.clone()
        + r(4);
    p.clone() * q.powu(2) * t
}

fn q6(p: &BigRational, q: &BigRational) -> BigRational {
    let t = r(84) * p.powu(4) * q.powu(4)
        + r(54) * p.powu(3) * q.powu(4)
        + r(25) * p.powu(3) * q.powu(3)
        + r(96) * p.powu(2) * q.powu(4)
        + r(20) * p.powu(2) * q.powu(3)
        + r(8) * p.powu(2) * q.powu(2)
        + r(16) * p.clone() * q.powu(2)
        + r(3) * p.clone() * q.clone()
        + r(4);
    p.clone() * q.powu(2) * t
}

const POINTS: [(i64, i64); 6] = [(1, 3), (1, 7), (2, 9), (5, 13), (3, 10), (11, 25)];

#[test]
fn distance_polynomials_for_five_and_six() {
    for (a, b) in POINTS {
        let m = mix(a, b);
        let (p, q, _) = m.parts();
        assert_eq!(sm2b::q_n1(5, &m).unwrap(), q5(&p, &q), "{a}/{b}");
        assert_eq!(sm2b::q_n1(6, &m).unwrap(), q6(&p, &q), "{a}/{b}");
    }
}

#[test]
fn two_uncle_probability_for_six() {
    // The closed polynomial p^2 q^4 (5 p^2 q^2 + 2 pq + 4) sums unordered
    // pairs; ordered pairs add pi_2 (pi_3 + pi_4).
    for (a, b) in POINTS {
        let m = mix(a, b);
        let (p, q, _) = m.parts();
        let unordered = p.powu(2) * q.powu(4) * (r(5) * p.powu(2) * q.powu(2) + r(2) * p.clone() * q.clone() + r(4));
        let (_, two) = sm2b::referral_law(6, &m);
        let pq = p.clone() * q.clone();
        let pi2 = r(2) * p.clone() * q.powu(2);
        let pi3 = p.clone() * q.powu(2) * pq.clone();
        let pi4 = p.clone() * q.powu(2) * pq.powu(2) * r(2);
        assert_eq!(two, unordered + pi2 * (pi3 + pi4), "{a}/{b}");
    }
}

#[test]
fn catalan_polynomial_example() {
    let x = BigRational::from_ratio(2, 5);
    let expected = r(1) + x.clone() + r(2) * x.powu(2) + r(5) * x.powu(3) + r(14) * x.powu(4);
    assert_eq!(catalan_partial_sum(4, &x), expected);
}

#[test]
fn profitability_thresholds_at_zero_gamma() {
    let params = ProtocolParams::default();
    let range = SearchRange::default();
    let sm2a = crossover(StrategyId::Sm2a, StrategyId::Honest, 0.0, &params, range).unwrap().unwrap();
    let sm2b = crossover(StrategyId::Sm2b, StrategyId::Honest, 0.0, &params, range).unwrap().unwrap();
    let ab = crossover(StrategyId::Sm2b, StrategyId::Sm2a, 0.0, &params, range).unwrap().unwrap();
    assert!((sm2a.q - 0.2865).abs() < 1e-3, "{}", sm2a.q);
    assert!((sm2b.q - 0.2880).abs() < 1e-3, "{}", sm2b.q);
    assert!((ab.q - 0.3013).abs() < 1e-3, "{}", ab.q);
}

#[test]
fn not_signalling_pays_beyond_the_worst_case_threshold_for_every_gamma() {
    // The crossover moves with gamma; its largest value, reached at gamma = 0,
    // bounds the region where not signalling wins whatever gamma is.
    let params = ProtocolParams::default();
    let mut worst: f64 = 0.0;
    for g in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let c = crossover(StrategyId::Sm2b, StrategyId::Sm2a, g, &params, SearchRange::default())
            .unwrap()
            .unwrap();
        worst = worst.max(c.q);
    }
    assert!((worst - 0.3013).abs() < 1e-3, "{worst}");
}

//! Descents of the walk that steps `-1` with probability `p` and `+1` with
//! probability `q`, started at 0 and absorbed at `-1`.

use crate::params::MinerMix;
use crate::scalar::Scalar;

/// `u_n`: expected number of steps landing strictly below `n` by a descent.
pub fn rw_expected_descents<S: Scalar>(n: u32, mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    let ratio = q.clone() / p.clone();
    p.clone() / (p - q) * (S::one() - ratio.powu(n + 1))
}

/// `v_n`: expected sum of the landing heights of those descents.
pub fn rw_expected_weighted_descents<S: Scalar>(n: u32, mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    let d = p.clone() - q.clone();
    let ratio = q.clone() / p.clone();
    let two = S::from_int(2);
    let linear = q.clone() + S::from_int(n as i64) * d.clone();
    p.clone() / (d.clone() * d) * (two * q - p - linear * ratio.powu(n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    /// Both expectations by propagating the walk's law for `steps` steps.
    fn propagate(n: i64, q: f64, steps: usize) -> (f64, f64) {
        let p = 1.0 - q;
        let mut mass = vec![0.0f64; steps + 2];
        mass[0] = 1.0;
        let (mut u, mut v) = (0.0, 0.0);
        for _ in 0..steps {
            let mut next = vec![0.0f64; steps + 2];
            for (x, &m) in mass.iter().enumerate() {
                if m == 0.0 {
                    continue;
                }
                let landing = x as i64 - 1;
                if landing < n {
                    u += m * p;
                    v += m * p * landing as f64;
                }
                if landing >= 0 {
                    next[landing as usize] += m * p;
                }
                if x + 1 < next.len() {
                    next[x + 1] += m * q;
                }
            }
            mass = next;
        }
        (u, v)
    }

    #[test]
    fn base_cases_are_exact() {
        let mix = MinerMix::new(BigRational::from_ratio(7, 20), BigRational::from_int(0)).unwrap();
        assert_eq!(rw_expected_descents(0, &mix), BigRational::from_int(1));
        assert_eq!(rw_expected_weighted_descents(0, &mix), BigRational::from_int(-1));
    }

    #[test]
    fn closed_forms_match_propagation() {
        for &q in &[0.2, 0.3, 0.35, 0.45] {
            let mix = MinerMix::<f64>::new(q, 0.0).unwrap();
            for n in [0u32, 1, 2, 3, 4, 8] {
                let (u, v) = propagate(n as i64, q, 6000);
                let cu = rw_expected_descents(n, &mix);
                let cv = rw_expected_weighted_descents(n, &mix);
                assert!((u - cu).abs() < 1e-9, "u q={q} n={n}: {u} vs {cu}");
                assert!((v - cv).abs() < 1e-9, "v q={q} n={n}: {v} vs {cv}");
            }
        }
    }

    #[test]
    fn descents_increase_to_limit() {
        let mix = MinerMix::<f64>::new(0.4, 0.0).unwrap();
        let limit = 0.6 / 0.2;
        let mut prev = 0.0;
        for n in 0..200 {
            let u = rw_expected_descents(n, &mix);
            assert!(u >= prev && u <= limit + 1e-12);
            prev = u;
        }
        assert!((prev - limit).abs() < 1e-9);
    }
}

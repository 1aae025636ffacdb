use serde::Serialize;

use crate::error::{Error, Result};

use super::plf::GammaParam;

/// Constants a = 2/(1+γ), c = 2/(1−γ²), q = (1−γ)/(1+γ).
fn constants(p: GammaParam) -> (f64, f64, f64) {
    let g = p.gamma();
    (2.0 / (1.0 + g), 2.0 / (1.0 - g * g), (1.0 - g) / (1.0 + g))
}

/// Whether S·t_i ≥ a·t_i + Σ_{j=1}^{i+1} c·q^{i−j+2}(t_j + t_{j−1}) for every
/// i = 1..len−1, with t_0 = 0 and a relative slack of 1e−9.
pub fn s_good(ts: &[f64], s: f64, p: GammaParam) -> bool {
    let (a, c, q) = constants(p);
    let mut acc = 0.0; // Σ_{j=1}^{i} q^{i−j+2}(t_j + t_{j−1})
    for i in 1..ts.len() {
        let (ti, tprev) = (ts[i - 1], if i >= 2 { ts[i - 2] } else { 0.0 });
        acc = q * acc + q * q * (ti + tprev);
        let rhs = a * ti + c * (acc + q * (ts[i] + ti));
        let lhs = s * ti;
        if lhs < rhs - 1e-9 * lhs.abs().max(rhs.abs()).max(1.0) {
            return false;
        }
    }
    true
}

/// T_1..T_N of the equality case of the S-good system.
///
/// Entries are stored as mantissas with a binary exponent: T_i =
/// `mantissa[i]`·2^`exponent[i]`. The sequence grows geometrically, so the
/// state is rescaled by exact powers of two whenever it gets large.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceRun {
    pub s: f64,
    pub mantissa: Vec<f64>,
    pub exponent: Vec<i32>,
    /// 1-based index of the first T_i ≤ 0.
    pub first_nonpositive: Option<usize>,
    /// α² − 4β for x² + αx + β, the characteristic polynomial of the
    /// equivalent three-term recurrence.
    pub discriminant: f64,
}

impl RecurrenceRun {
    pub fn len(&self) -> usize {
        self.mantissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissa.is_empty()
    }

    /// T_i for 1-based i, possibly ±∞ once it leaves the f64 range.
    pub fn value(&self, i: usize) -> f64 {
        let (m, e) = (self.mantissa[i - 1], self.exponent[i - 1]);
        m * 2f64.powi(e.clamp(-1074, 1023)) * if e > 1023 { 2f64.powi(e - 1023) } else { 1.0 }
    }

    pub fn all_positive(&self) -> bool {
        self.first_nonpositive.is_none()
    }
}

/// Discriminant of c·q·x² − (S−a−c·q)·x + q(S−a), normalised to monic form.
///
/// Derivation: subtracting q times the (i−1)-th equality from the i-th one
/// eliminates the running sum, leaving
/// c·q·T_{i+1} = (S−a−c·q)·T_i − q(S−a)·T_{i−1}.
pub fn characteristic_discriminant(s: f64, p: GammaParam) -> f64 {
    let (a, c, q) = constants(p);
    let cq = c * q;
    let alpha = -(s - a - cq) / cq;
    let beta = q * (s - a) / cq;
    alpha * alpha - 4.0 * beta
}

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BITS: i32 = 498;

/// Runs T_{i+1} = [(S−a)·T_i − c·A_i]/(c·q) − T_i with
/// A_i = q·A_{i−1} + q²(T_i + T_{i−1}), A_1 = q²·T_1.
pub fn run_recurrence(t1: f64, s: f64, p: GammaParam, n: usize) -> Result<RecurrenceRun> {
    if !(t1 > 0.0 && t1.is_finite()) {
        return Err(Error::InvalidInput(format!("t1 must be positive, got {t1}")));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!("need N >= 2, got {n}")));
    }
    if !s.is_finite() {
        return Err(Error::InvalidInput(format!("S must be finite, got {s}")));
    }
    let (a, c, q) = constants(p);
    let mut mantissa = Vec::with_capacity(n);
    let mut exponent = Vec::with_capacity(n);
    let mut scale: i32 = 0;
    let (mut prev, mut cur) = (0.0f64, t1);
    let mut acc = 0.0f64;
    mantissa.push(cur);
    exponent.push(scale);
    for i in 1..n {
        acc = q * acc + q * q * (cur + prev);
        let next = ((s - a) * cur - c * acc) / (c * q) - cur;
        if !next.is_finite() {
            return Err(Error::Overflow { last_valid: i });
        }
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            let f = 2f64.powi(-RESCALE_BITS);
            cur *= f;
            prev *= f;
            acc *= f;
            scale += RESCALE_BITS;
        }
        mantissa.push(cur);
        exponent.push(scale);
    }
    let first_nonpositive = mantissa.iter().position(|&m| m <= 0.0).map(|i| i + 1);
    Ok(RecurrenceRun {
        s,
        mantissa,
        exponent,
        first_nonpositive,
        discriminant: characteristic_discriminant(s, p),
    })
}

#[cfg(test)]
mod tests {
    use super::super::closed::h_upper;
    use super::*;

    fn p(g: f64) -> GammaParam {
        GammaParam::from_gamma(g).unwrap()
    }

    /// Direct evaluation of the defining equality, O(N²), no rescaling.
    fn naive(t1: f64, s: f64, p: GammaParam, n: usize) -> Vec<f64> {
        let (a, c, q) = constants(p);
        let mut t = vec![0.0, t1];
        for i in 1..n {
            let mut sum = 0.0;
            for j in 1..=i {
                sum += c * q.powi((i - j + 2) as i32) * (t[j] + t[j - 1]);
            }
            // S t_i = a t_i + sum + c q (T_{i+1} + T_i)
            let next = (s * t[i] - a * t[i] - sum) / (c * q) - t[i];
            t.push(next);
        }
        t.remove(0);
        t
    }

    #[test]
    fn matches_direct_evaluation() {
        for &(gm, s) in &[(0.0, 13.0), (0.0, 14.0), (-0.4, 20.0), (0.3, 7.5)] {
            let run = run_recurrence(1.0, s, p(gm), 40).unwrap();
            let want = naive(1.0, s, p(gm), 40);
            for i in 0..40 {
                let got = run.value(i + 1);
                assert!((got - want[i]).abs() <= 1e-9 * want[i].abs().max(1.0), "i {i}: {got} vs {}", want[i]);
            }
        }
    }

    #[test]
    fn below_bound_changes_sign() {
        let run = run_recurrence(1.0, 13.65, p(0.0), 10_000).unwrap();
        assert!(run.first_nonpositive.is_some());
        assert!(run.discriminant < 0.0);
    }

    #[test]
    fn above_bound_stays_positive() {
        let run = run_recurrence(1.0, 13.67, p(0.0), 10_000).unwrap();
        assert!(run.all_positive());
        assert!(run.discriminant > 0.0);
        assert!(run.exponent.last().copied().unwrap() > 1000);
    }

    #[test]
    fn discriminant_root_is_h_upper() {
        for &gm in &[-0.6, -0.2, 0.0, 0.3] {
            let q = p(gm);
            let h = h_upper(q);
            assert!(characteristic_discriminant(h - 1e-6, q) < 0.0);
            assert!(characteristic_discriminant(h + 1e-6, q) > 0.0);
        }
    }

    #[test]
    fn recurrence_output_is_s_good_with_equality() {
        let q = p(0.0);
        let run = run_recurrence(1.0, 14.0, q, 30).unwrap();
        let ts: Vec<f64> = (1..=30).map(|i| run.value(i)).collect();
        assert!(s_good(&ts, 14.0, q));
        assert!(!s_good(&ts, 14.0 - 1e-3, q));
    }

    #[test]
    fn bumped_entry_breaks_s_good() {
        let q = p(0.0);
        let run = run_recurrence(1.0, 13.0, q, 6).unwrap();
        let mut ts: Vec<f64> = (1..=6).map(|i| run.value(i)).collect();
        ts[3] *= 1.1;
        assert!(!s_good(&ts, 13.0, q));
    }

    #[test]
    fn single_entry_is_vacuous() {
        assert!(s_good(&[1.0], 0.0, p(0.0)));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(run_recurrence(0.0, 13.0, p(0.0), 10).is_err());
        assert!(run_recurrence(1.0, 13.0, p(0.0), 1).is_err());
    }
}

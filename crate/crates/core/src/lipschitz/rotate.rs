use crate::error::{Error, Result};

use super::plf::{PLFunction, TOL};

/// The change of variables z(x) = g(y) − y where x = g(y) + y.
///
/// Each segment of slope m maps to a segment of slope (m−1)/(m+1). The result
/// is 1-Lipschitz exactly when g is non-decreasing; slope −1 segments make the
/// parameterisation non-invertible and are rejected.
pub fn rotate(g: &PLFunction) -> Result<PLFunction> {
    g.check_lipschitz()?;
    let slopes = g.slopes();
    if let Some(i) = slopes.iter().position(|&m| m <= -1.0 + TOL) {
        return Err(Error::Precondition(format!("segment {i} has slope -1; x = g(y) + y is not invertible")));
    }
    let xs: Vec<f64> = g.breakpoints().iter().zip(g.values()).map(|(&y, &v)| v + y).collect();
    let zs: Vec<f64> = g.breakpoints().iter().zip(g.values()).map(|(&y, &v)| v - y).collect();
    let m = g.tail_slope();
    PLFunction::new_unconstrained(xs, zs, (m - 1.0) / (m + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_to_minus_identity() {
        let z = rotate(&PLFunction::zero()).unwrap();
        assert_eq!(z.eval(3.0), -3.0);
    }

    #[test]
    fn identity_maps_to_zero() {
        let z = rotate(&PLFunction::identity()).unwrap();
        assert_eq!(z.eval(7.0), 0.0);
    }

    #[test]
    fn rejects_slope_minus_one() {
        let g = PLFunction::from_pieces(&[(1.0, 1.0), (1.0, -1.0)], 0.0).unwrap();
        assert!(matches!(rotate(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn pointwise_definition() {
        let g = PLFunction::from_pieces(&[(2.0, 0.5), (1.0, 0.0), (3.0, 1.0)], 0.25).unwrap();
        let z = rotate(&g).unwrap();
        for k in 0..100 {
            let y = k as f64 * 0.1;
            let (x, want) = (g.eval(y) + y, g.eval(y) - y);
            assert!((z.eval(x) - want).abs() < 1e-12);
        }
        assert!(z.is_lipschitz());
    }
}

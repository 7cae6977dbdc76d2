use num_complex::Complex64;

/// Argument of `w` in `(-pi, pi]`.
///
/// `atan2` returns `-pi` for a negative real with a negative-zero imaginary
/// part; that value is folded onto `pi`.
pub fn principal_arg(w: Complex64) -> f64 {
    let theta = w.im.atan2(w.re);
    if theta <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        theta
    }
}

/// `w^beta = r^beta e^{j beta theta}` with `theta` the principal argument.
/// `0^beta` is taken as `0`.
pub fn principal_power(w: Complex64, beta: f64) -> Complex64 {
    debug_assert!(beta > 0.0, "principal_power needs beta > 0");
    let r = w.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let theta = principal_arg(w);
    Complex64::from_polar(r.powf(beta), beta * theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_case() {
        assert_eq!(principal_power(Complex64::new(1.0, 0.0), 0.5), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn negative_real_uses_theta_pi() {
        let z = principal_power(Complex64::new(-1.0, 0.0), 0.5);
        assert!(close(z, Complex64::new(0.0, 1.0), 1e-15));
        // -1 - 0j must land on the same branch
        let z = principal_power(Complex64::new(-1.0, -0.0), 0.5);
        assert!(close(z, Complex64::new(0.0, 1.0), 1e-15));
    }

    #[test]
    fn sqrt_of_j() {
        let z = principal_power(Complex64::new(0.0, 1.0), 0.5);
        assert!(close(z, Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2), 1e-15));
    }

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(principal_power(Complex64::new(0.0, 0.0), 0.3), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn conjugation_off_negative_axis() {
        for &(re, im) in &[(0.3, 0.7), (-0.4, 0.2), (2.0, -1.5), (-3.0, -0.01)] {
            let w = Complex64::new(re, im);
            for &beta in &[0.25, 0.5, 1.7, 3.3] {
                let a = principal_power(w.conj(), beta);
                let b = principal_power(w, beta).conj();
                assert!(close(a, b, 1e-13), "w={w} beta={beta}");
            }
        }
    }
}

//! Modified Bessel functions of the first kind for real arguments.

const SERIES_LIMIT: f64 = 25.0;

fn series(nu: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = 1.0;
    for k in 1..=nu {
        term *= half / k as f64;
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + nu as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

fn asymptotic(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    x.exp() / (2.0 * std::f64::consts::PI * x).sqrt() * sum
}

/// `I_nu(x)` for integer order `nu`.
pub fn bessel_i(nu: u32, x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT { series(nu, ax) } else { asymptotic(nu, ax) };
    if x < 0.0 && nu % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn bessel_i0(x: f64) -> f64 {
    bessel_i(0, x)
}

pub fn bessel_i1(x: f64) -> f64 {
    bessel_i(1, x)
}

pub fn bessel_i2(x: f64) -> f64 {
    bessel_i(2, x)
}

/// Entire function `G(y) = I_nu(sqrt y) / (sqrt y)^nu`, valid for negative `y` as well.
///
/// Power series in `y`: `sum_k y^k / (2^(2k+nu) k! (k+nu)!)`.
pub fn bessel_i_scaled(nu: u32, y: f64) -> f64 {
    if y > SERIES_LIMIT * SERIES_LIMIT {
        let r = y.sqrt();
        return bessel_i(nu, r) / r.powi(nu as i32);
    }
    let mut term = 1.0;
    for k in 1..=nu {
        term /= 2.0 * k as f64;
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= y / (4.0 * k * (k + nu as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 400.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn tabulated_values() {
        // reference values from standard tables
        assert!(rel(bessel_i0(1.0), 1.2660658777520082) < 1e-15);
        assert!(rel(bessel_i1(1.0), 0.5651591039924851) < 1e-15);
        assert!(rel(bessel_i0(2.0), 2.2795853023360673) < 1e-15);
        assert!(rel(bessel_i1(2.0), 1.5906368546373291) < 1e-15);
        assert!(rel(bessel_i2(2.0), 0.6889484476987382) < 1e-15);
        assert!(rel(bessel_i0(10.0), 2815.716628466254) < 1e-14);
        assert!(rel(bessel_i1(10.0), 2670.988303701255) < 1e-14);
    }

    #[test]
    fn series_and_asymptotic_agree_at_switch() {
        for nu in 0..3 {
            let a = series(nu, 30.0);
            let b = asymptotic(nu, 30.0);
            assert!(rel(a, b) < 1e-13, "nu={nu}: {a} {b}");
        }
    }

    #[test]
    fn recurrence_holds() {
        // I_{n-1}(x) - I_{n+1}(x) = (2n/x) I_n(x)
        for &x in &[0.3, 1.7, 6.0, 24.0, 26.0, 40.0] {
            let lhs = bessel_i0(x) - bessel_i2(x);
            let rhs = 2.0 / x * bessel_i1(x);
            assert!(rel(lhs, rhs) < 1e-13, "x={x}");
        }
    }

    #[test]
    fn parity() {
        assert_eq!(bessel_i0(-1.5), bessel_i0(1.5));
        assert_eq!(bessel_i1(-1.5), -bessel_i1(1.5));
    }

    #[test]
    fn scaled_matches_direct() {
        for &r in &[0.1, 1.0, 3.5, 12.0] {
            let y = r * r;
            assert!(rel(bessel_i_scaled(1, y), bessel_i1(r) / r) < 1e-14);
            assert!(rel(bessel_i_scaled(2, y), bessel_i2(r) / (r * r)) < 1e-14);
        }
        // negative argument gives J_1(r)/r
        assert!(rel(bessel_i_scaled(1, -1.0), 0.44005058574493355) < 1e-14);
    }
}

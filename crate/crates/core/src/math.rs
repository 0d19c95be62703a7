//! Float math routed through `std` or `libm` depending on the build.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("fxnet-core needs a math backend: enable the `std` or the `libm` feature");

macro_rules! forward {
    ($(fn $name:ident($($arg:ident),+) -> $ret:ty => $libm:ident;)*) => {
        $(
            #[cfg(feature = "std")]
            #[inline(always)]
            pub(crate) fn $name($($arg: f64),+) -> $ret {
                forward!(@std $name, $($arg),+)
            }

            #[cfg(all(not(feature = "std"), feature = "libm"))]
            #[inline(always)]
            pub(crate) fn $name($($arg: f64),+) -> $ret {
                libm::$libm($($arg),+)
            }
        )*
    };
    (@std $name:ident, $a:ident) => { $a.$name() };
    (@std $name:ident, $a:ident, $b:ident) => { $a.$name($b) };
}

forward! {
    fn sqrt(x) -> f64 => sqrt;
    fn ln(x) -> f64 => log;
    fn exp(x) -> f64 => exp;
    fn powf(x, y) -> f64 => pow;
    fn sin_cos(x) -> (f64, f64) => sincos;
    fn abs(x) -> f64 => fabs;
}

/// Error function, used for the normal CDF. Abramowitz & Stegun 7.1.26
/// rational approximation, absolute error below 1.5e-7; plenty for the
/// Kolmogorov-Smirnov statistics it feeds.
pub(crate) fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = abs(x);
    let t = 1.0 / (1.0 + 0.327_591_1 * x);
    let poly = t
        * (0.254_829_592
            + t * (-0.284_496_736 + t * (1.421_413_741 + t * (-1.453_152_027 + t * 1.061_405_429))));
    sign * (1.0 - poly * exp(-x * x))
}

/// Standard normal cumulative distribution function.
pub(crate) fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / core::f64::consts::SQRT_2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_reference_values() {
        // Values from standard tables, at the accuracy of the approximation.
        assert!(abs(erf(0.0)) < 2e-7);
        assert!(abs(erf(1.0) - 0.842_700_792_9) < 2e-7);
        assert!(abs(erf(2.0) - 0.995_322_265_0) < 2e-7);
        assert!(abs(erf(-1.0) + 0.842_700_792_9) < 2e-7);
    }

    #[test]
    fn normal_cdf_symmetry() {
        for &z in &[0.0, 0.3, 1.1, 2.7] {
            assert!(abs(normal_cdf(z) + normal_cdf(-z) - 1.0) < 1e-8);
        }
        assert!(abs(normal_cdf(1.959_963_985) - 0.975) < 1e-6);
    }
}

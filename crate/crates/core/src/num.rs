//! Float math shims: platform intrinsics under `std`, `libm` otherwise.

macro_rules! shim {
    ($(fn $name:ident($($arg:ident),+) => $libm:ident;)*) => {
        $(
            #[cfg(feature = "std")]
            #[inline(always)]
            pub(crate) fn $name($($arg: f64),+) -> f64 {
                shim!(@std $name, $($arg),+)
            }
            #[cfg(not(feature = "std"))]
            #[inline(always)]
            pub(crate) fn $name($($arg: f64),+) -> f64 {
                libm::$libm($($arg),+)
            }
        )*
    };
    (@std $name:ident, $x:ident) => { f64::$name($x) };
    (@std $name:ident, $x:ident, $y:ident) => { f64::$name($x, $y) };
}

shim! {
    fn exp(x) => exp;
    fn ln(x) => log;
    fn sqrt(x) => sqrt;
    fn sin(x) => sin;
    fn cos(x) => cos;
    fn abs(x) => fabs;
    fn floor(x) => floor;
    fn ceil(x) => ceil;
    fn round(x) => round;
    fn powf(x, y) => pow;
}

#[cfg(feature = "std")]
#[inline(always)]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    f64::sin_cos(x)
}

#[cfg(not(feature = "std"))]
#[inline(always)]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline(always)]
pub(crate) fn hypot_sq(x: f64, y: f64) -> f64 {
    x * x + y * y
}

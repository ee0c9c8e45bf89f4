#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

// Deterministic counter-based randomness. Every random quantity in the
// simulator is a pure function of (seed, structural indices), so results are
// independent of evaluation order and worker count.

namespace dramlat {

// Fibonacci-hash finalizer (splitmix64 output function).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Collapses a list of words into one well-mixed 64-bit value.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x8BADF00D5EEDC0DEULL;
    for (std::uint64_t w : words) h = splitmix64(h ^ w);
    return h;
}

// Maps a hash to the open interval (0, 1); never returns 0 or 1.
inline double to_unit_open(std::uint64_t h) {
    return (static_cast<double>(h >> 12) + 0.5) * 0x1.0p-52;
}

// Quantile of the minimum of `batch` i.i.d. uniforms evaluated at u:
// u_min = 1 - (1 - u)^(1/batch), computed in log space for tail accuracy.
inline double min_of_batch_quantile(double u, double batch) {
    return -std::expm1(std::log1p(-u) / batch);
}

// Inverse standard normal CDF (Wichura's high-precision rational
// approximation, |error| < 1e-15 over (0,1)).
inline double normal_quantile(double p) {
    const double q = p - 0.5;
    if (q > -0.425 && q < 0.425) {
        const double r = 0.180625 - q * q;
        const double num = (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den = (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                             4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        const double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                                 2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                               3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                             4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                                 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                               6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                             2.05319162663775882187e+0) * r + 1.0);
        x = num / den;
    } else {
        r -= 5.0;
        const double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                                 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                               2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                             5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                                 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                               1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                             5.99832206555887937690e-1) * r + 1.0);
        x = num / den;
    }
    return (q < 0.0) ? -x : x;
}

// Standard normal draw addressed purely by counters.
inline double normal_draw(std::initializer_list<std::uint64_t> words) {
    return normal_quantile(to_unit_open(hash_words(words)));
}

} // namespace dramlat

#include "ilp/random.hpp"

#include <sys/random.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include "ilp/errors.hpp"

namespace ilp {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t Rng::uniform_below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t mask = ~uint64_t{0};
    mask >>= __builtin_clzll(n | 1);
    for (;;) {
        uint64_t v = engine_() & mask;
        if (v < n) return v;
    }
}

// Wichura's algorithm AS 241 (PPND16): rational minimax approximations on a
// central and two tail regions.
double inverse_normal_cdf(double p) {
    static constexpr double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,  1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static constexpr double b[8] = {
        1.0,                      4.2313330701600911252e1,  6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4,  3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static constexpr double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    auto poly = [](const double (&coef)[8], double x) {
        double r = coef[7];
        for (int i = 6; i >= 0; --i) r = r * x + coef[i];
        return r;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        value = poly(e, r) / poly(f, r);
    }
    return q < 0 ? -value : value;
}

double Rng::next_normal(double mean, double stddev) {
    // Keep the argument strictly inside (0, 1); 2^-64 underflows to 0 in
    // next_unit only when the engine emits < 2^11, which maps to p = 0.
    double u = next_unit();
    if (u <= 0.0) u = 0x1.0p-53;
    return mean + stddev * inverse_normal_cdf(u);
}

void Rng::fill(std::span<uint8_t> out) {
    size_t i = 0;
    while (i + 8 <= out.size()) {
        uint64_t v = engine_();
        std::memcpy(out.data() + i, &v, 8);
        i += 8;
    }
    if (i < out.size()) {
        uint64_t v = engine_();
        std::memcpy(out.data() + i, &v, out.size() - i);
    }
}

void os_random_fill(std::span<uint8_t> out) {
    size_t off = 0;
    while (off < out.size()) {
        ssize_t n = ::getrandom(out.data() + off, out.size() - off, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            raise(ErrorKind::IoError, "getrandom failed");
        }
        off += static_cast<size_t>(n);
    }
}

}  // namespace ilp

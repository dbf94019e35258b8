#pragma once

#include <cmath>
#include <limits>

namespace hml {

// Helpers around lgamma. Everything here is pure and thread-safe
// (std::lgamma's signgam global is never used).

/// True if z sits within eps of a pole of Gamma (0, -1, -2, ...).
inline bool is_gamma_pole(double z, double eps = 1e-12) {
    if (z > 0.5) return false;
    return std::abs(z - std::nearbyint(z)) <= eps;
}

/// Sign of Gamma(z) for non-pole z: Gamma alternates sign on the
/// negative intervals (-1,0), (-2,-1), ...
inline int gamma_sign(double z) {
    if (z > 0) return 1;
    const auto fl = static_cast<long long>(std::floor(z));
    return (fl % 2 == 0) ? 1 : -1;
}

/// log|Gamma(z)|; +inf at poles.
inline double log_abs_gamma(double z) {
    if (is_gamma_pole(z)) return std::numeric_limits<double>::infinity();
    return std::lgamma(z);
}

inline long double log_abs_gamma_l(long double z) {
    if (z <= 0.5L && std::abs(z - std::nearbyintl(z)) <= 1e-12L)
        return std::numeric_limits<long double>::infinity();
    return std::lgamma(z);
}

/// Gamma(z1)/Gamma(z2) for z1, z2 > 0, computed as exp of the
/// extended-precision lgamma difference. Keeps coefficient-level
/// identities exact to ~1e-15 even when both lgammas are O(100).
inline double gamma_ratio(double z1, double z2) {
    const long double d = std::lgamma(static_cast<long double>(z1)) -
                          std::lgamma(static_cast<long double>(z2));
    return static_cast<double>(std::exp(d));
}

}  // namespace hml

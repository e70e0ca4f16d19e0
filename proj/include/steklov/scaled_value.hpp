#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace steklov {

/// mantissa * e^{log_scale}, with 0.1 <= |mantissa| <= 10 unless zero.
template <class T = double>
struct ScaledValue {
    T mantissa{};
    double log_scale = 0.0;

    static ScaledValue make(T m, double log_scale) {
        ScaledValue v{m, log_scale};
        v.normalize();
        return v;
    }

    void normalize() {
        const double mag = std::abs(mantissa);
        if (mag == 0.0) {
            log_scale = 0.0;
            return;
        }
        const double shift = std::round(std::log(mag));
        if (shift != 0.0) {
            mantissa *= std::exp(-shift);
            log_scale += shift;
        }
    }

    /// Natural log of |value|; -inf for zero.
    double log_abs() const {
        const double mag = std::abs(mantissa);
        if (mag == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(mag) + log_scale;
    }

    /// Plain value; may overflow to inf or underflow to zero.
    T value() const { return mantissa * std::exp(log_scale); }

    bool is_zero() const { return std::abs(mantissa) == 0.0; }
};

/// a / b with the scales cancelled before any exponentiation.
template <class T>
T ratio(const ScaledValue<T>& a, const ScaledValue<T>& b) {
    return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

/// 1 / v as a plain value (underflows gracefully to zero).
template <class T>
T reciprocal(const ScaledValue<T>& v) {
    return (T(1.0) / v.mantissa) * std::exp(-v.log_scale);
}

} // namespace steklov

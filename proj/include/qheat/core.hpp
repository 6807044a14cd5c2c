#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qheat {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct PrecisionConfig {
    int bits = 53;              // only the double backend exists; see README
    double tolerance = 1e-15;   // target for truncation errors, relative to max(1, |value|)
    long max_terms = 20'000'000;
};

struct BoundedValue {
    cplx value{};
    double error_bound = 0.0;
    long terms_used = 0;

    double real() const { return value.real(); }
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when evaluating exactly at (or too close to) a pole.
struct PoleError : std::runtime_error {
    cplx location;
    cplx residue;
    PoleError(const std::string& what, cplx loc, cplx res)
        : std::runtime_error(what), location(loc), residue(res) {}
};

// Neumaier's variant of Kahan summation; also handles |x| > |sum|.
template <class T>
struct CompensatedSum {
    T sum{};
    T c{};

    void add(double x)
        requires std::is_same_v<T, double>
    {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }

    void add(cplx x)
        requires std::is_same_v<T, cplx>
    {
        CompensatedSum<double> re{sum.real(), c.real()}, im{sum.imag(), c.imag()};
        re.add(x.real());
        im.add(x.imag());
        sum = {re.sum, im.sum};
        c = {re.c, im.c};
    }

    CompensatedSum& operator+=(const T& x) {
        add(x);
        return *this;
    }

    T result() const { return sum + c; }
};

using Accumulator = CompensatedSum<double>;
using CAccumulator = CompensatedSum<cplx>;

inline BoundedValue operator+(const BoundedValue& a, const BoundedValue& b) {
    return {a.value + b.value, a.error_bound + b.error_bound, a.terms_used + b.terms_used};
}

inline BoundedValue operator-(const BoundedValue& a, const BoundedValue& b) {
    return {a.value - b.value, a.error_bound + b.error_bound, a.terms_used + b.terms_used};
}

inline BoundedValue operator*(const BoundedValue& a, const BoundedValue& b) {
    return {a.value * b.value,
            std::abs(a.value) * b.error_bound + std::abs(b.value) * a.error_bound +
                a.error_bound * b.error_bound,
            a.terms_used + b.terms_used};
}

inline BoundedValue operator*(cplx k, const BoundedValue& a) {
    return {k * a.value, std::abs(k) * a.error_bound, a.terms_used};
}

// Floating-point rounding allowance for a value assembled from `n` operations.
inline double rounding_slack(double magnitude, double n = 16) {
    return n * 1.1102230246251565e-16 * magnitude;
}

}  // namespace qheat

#pragma once

/// \file qseries.hpp
/// q-shifted factorials and terminating basic hypergeometric sums.
///
/// Conventions: (a;q)_0 = 1, (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), and
///
///   r+1phi_r(a_1,...,a_{r+1}; b_1,...,b_r; q, z)
///     = sum_k (a_1;q)_k ... (a_{r+1};q)_k z^k / ((b_1;q)_k ... (b_r;q)_k (q;q)_k).
///
/// The terminating form requires a_1 = q^{-n}, which kills every term with
/// k > n.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qaw {

/// (a;q)_n by direct product accumulation.  Works over any coefficient type
/// with ring operations (rational, double, complex<double>).
template <class T>
T qpochhammer(const T& a, const T& q, long n) {
    if (n < 0) throw std::invalid_argument("qpochhammer: order must be >= 0");
    T acc = T(1);
    T aq = a;
    for (long k = 0; k < n; ++k) {
        acc = acc * (T(1) - aq);
        aq = aq * q;
    }
    return acc;
}

/// prod_i (a_i;q)_n.
template <class T>
T qpochhammer_multi(const std::vector<T>& as, const T& q, long n) {
    T acc = T(1);
    for (const T& a : as) acc = acc * qpochhammer(a, q, n);
    return acc;
}

namespace detail {
inline double abs_value(double x) { return x < 0 ? -x : x; }
inline double abs_value(const std::complex<double>& x) { return std::abs(x); }
}  // namespace detail

/// (a;q)_infinity, float backend only.  Truncates at the first K with
/// |a| q^K < tol (1-q); the dropped tail multiplies the result by
/// 1 + O(tol).  Requires |q| < 1.
template <class A>
A qpochhammer_inf(const A& a, double q, double tol = 1e-14) {
    double qa = detail::abs_value(q);
    if (!(qa < 1.0)) throw std::domain_error("qpochhammer_inf: requires |q| < 1");
    if (!(tol > 0.0)) throw std::invalid_argument("qpochhammer_inf: tol must be positive");
    const double cutoff = tol * (1.0 - qa);
    A acc = A(1);
    A aq = a;
    double mag = detail::abs_value(a);
    // K is finite: mag shrinks geometrically.
    while (!(mag < cutoff)) {
        acc *= A(1) - aq;
        aq *= q;
        mag *= qa;
    }
    return acc;
}

/// Terminating basic hypergeometric sum.  `nums[0]` must equal q^{-n}; the
/// remaining entries are free numerator parameters.  Every denominator
/// parameter must avoid {1, q^{-1}, ..., q^{-n+1}}, otherwise some partial
/// product (b;q)_k with k <= n vanishes; violations raise std::domain_error
/// naming the offending index.  Comparisons are exact in the rational
/// backend and use an absolute 1e-12 window for float.
template <class T>
T phi_terminating(const std::vector<T>& nums, const std::vector<T>& dens,
                  const T& q, const T& z, long n) {
    if (n < 0) throw std::invalid_argument("phi_terminating: order must be >= 0");
    if (nums.empty()) throw std::invalid_argument("phi_terminating: needs at least one numerator parameter");
    if (nums.size() != dens.size() + 1)
        throw std::invalid_argument("phi_terminating: expected one more numerator than denominator parameter");

    const T qinv_n = pow_int(q, -n);
    if (!field_traits<T>::equal(nums[0], qinv_n))
        throw std::invalid_argument("phi_terminating: first numerator parameter must be q^-n");

    for (std::size_t j = 0; j < dens.size(); ++j) {
        T qpow = T(1);
        for (long i = 0; i < n; ++i) {
            if (field_traits<T>::equal(dens[j], qpow))
                throw std::domain_error(
                    "phi_terminating: denominator parameter " + std::to_string(j) +
                    " collides with q^-" + std::to_string(i));
            qpow = qpow / q;
        }
    }

    T sum = T(1);
    T term = T(1);
    T qk = T(1);  // q^{k-1} inside the loop
    for (long k = 1; k <= n; ++k) {
        for (const T& a : nums) term = term * (T(1) - a * qk);
        for (const T& b : dens) term = term / (T(1) - b * qk);
        qk = qk * q;
        term = term * z / (T(1) - qk);
        sum = sum + term;
    }
    return sum;
}

}  // namespace qaw

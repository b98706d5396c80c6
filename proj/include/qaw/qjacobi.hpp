#pragma once

/// \file qjacobi.hpp
/// Big and little q-Jacobi polynomials, plus the scaled evaluators that
/// realize them as limits of Askey-Wilson polynomials.
///
///   P_n^{(alpha,beta)}(x; c,d : q) = 3phi2( q^{-n}, q^{n+alpha+beta+1},
///                                           q^{alpha+1} x / c ;
///                                           q^{alpha+1}, -q^{alpha+1} d/c ;
///                                           q, q )
///
///   p_n^{(alpha,beta)}(x : q)      = 2phi1( q^{-n}, q^{alpha+beta+n+1} ;
///                                           q^{alpha+1} ; q, qx )
///
/// alpha and beta enter through the values q^alpha, q^beta, which keeps the
/// exact backend rational.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "askey_wilson.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace qaw {

template <class T>
struct big_qjacobi_params {
    T qalpha, qbeta;  // values of q^alpha, q^beta
    T c, d;
    T q;
};

template <class T>
struct little_qjacobi_params {
    T qalpha, qbeta;
    T q;
};

/// Degree-n big q-Jacobi polynomial in x.  The x-dependence of the series
/// enters through (q^{alpha+1} x / c; q)_k, expanded as a product of linear
/// factors.
template <class T>
x_poly<T> big_qjacobi(long n, const big_qjacobi_params<T>& p) {
    if (n < 0) throw std::invalid_argument("big_qjacobi: degree must be >= 0");
    if (!(p.c > T(0)) || !(p.d > T(0)))
        throw std::domain_error("big_qjacobi: c and d must be positive");
    q_context<T> ctx(p.q);
    (void)ctx;
    const T b1 = p.q * p.qalpha;            // q^{alpha+1}
    const T b2 = -(b1 * p.d / p.c);         // -q^{alpha+1} d/c
    detail::check_product_collision("q^{alpha+1}", b1, p.q, n);
    detail::check_product_collision("-q^{alpha+1}d/c", b2, p.q, n);

    const T qmn = pow_int(p.q, -n);
    const T top = pow_int(p.q, n + 1) * p.qalpha * p.qbeta;  // q^{n+alpha+beta+1}
    const T xscale = b1 / p.c;

    x_poly<T> sum = x_poly<T>::constant(T(1));
    x_poly<T> factor = x_poly<T>::constant(T(1));
    T coef(1), qk1(1), qk = p.q;
    for (long k = 1; k <= n; ++k) {
        coef = coef * (T(1) - qmn * qk1) * (T(1) - top * qk1) * p.q /
               ((T(1) - b1 * qk1) * (T(1) - b2 * qk1) * (T(1) - qk));
        factor = factor * x_poly<T>(std::vector<T>{T(1), -(xscale * qk1)});
        sum += factor.scaled(coef);
        qk1 = qk1 * p.q;
        qk = qk * p.q;
    }
    return sum;
}

/// Degree-n little q-Jacobi polynomial in x; p_n(0) = 1 since every k >= 1
/// term carries (qx)^k.
template <class T>
x_poly<T> little_qjacobi(long n, const little_qjacobi_params<T>& p) {
    if (n < 0) throw std::invalid_argument("little_qjacobi: degree must be >= 0");
    q_context<T> ctx(p.q);
    (void)ctx;
    const T b1 = p.q * p.qalpha;  // q^{alpha+1}
    detail::check_product_collision("q^{alpha+1}", b1, p.q, n);

    const T qmn = pow_int(p.q, -n);
    const T top = pow_int(p.q, n + 1) * p.qalpha * p.qbeta;

    x_poly<T> out = x_poly<T>::constant(T(1));
    T coef(1), qk1(1), qk = p.q;
    for (long k = 1; k <= n; ++k) {
        coef = coef * (T(1) - qmn * qk1) * (T(1) - top * qk1) * p.q /
               ((T(1) - b1 * qk1) * (T(1) - qk));
        out.set_coeff(k, coef);
        qk1 = qk1 * p.q;
        qk = qk * p.q;
    }
    return out;
}

namespace detail {

/// Monomial-basis interpolation through the given nodes (Newton divided
/// differences, then Horner expansion).  Nodes must be distinct.
inline x_poly<double> interpolate_poly(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    if (m == 0 || ys.size() != m) throw std::invalid_argument("interpolate_poly: bad node count");
    std::vector<double> dd(ys);
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    x_poly<double> p = x_poly<double>::constant(dd[m - 1]);
    for (std::size_t i = m - 1; i-- > 0;) {
        p = p * x_poly<double>(std::vector<double>{-xs[i], 1.0}) + x_poly<double>::constant(dd[i]);
    }
    return p;
}

inline std::vector<double> chebyshev_nodes(std::size_t count, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double theta = M_PI * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(count));
        xs[i] = mid + half * std::cos(theta);
    }
    return xs;
}

}  // namespace detail

/// r_n at the big-q-Jacobi substitution
///   argument  q^{1/2} x / (2a sqrt(cd)),
///   parameters ( q^{alpha+1/2} a sqrt(d/c),  q^{1/2} a^{-1} sqrt(c/d),
///               -q^{1/2} a^{-1} sqrt(d/c), -q^{beta+1/2} a sqrt(c/d) ),
/// returned as a polynomial in x by interpolation on n+1 Chebyshev nodes
/// over [-d, c] (the support interval of the limiting measure).  As a -> 0+
/// this converges to P_n^{(alpha,beta)}(x; c, d : q).
inline x_poly<double> limit_big_scaled(long n, double q, double alpha, double beta,
                                       double c, double d, double a) {
    if (n < 0) throw std::invalid_argument("limit_big_scaled: degree must be >= 0");
    if (!(a > 0.0)) throw std::domain_error("limit_big_scaled: a must be positive");
    if (!(c > 0.0) || !(d > 0.0)) throw std::domain_error("limit_big_scaled: c and d must be positive");
    const double rdc = std::sqrt(d / c), rcd = std::sqrt(c / d);
    aw_params<double> p{std::pow(q, alpha + 0.5) * a * rdc,
                        std::sqrt(q) / a * rcd,
                        -std::sqrt(q) / a * rdc,
                        -std::pow(q, beta + 0.5) * a * rcd,
                        q};
    const double u = std::sqrt(q) / (2.0 * a * std::sqrt(c * d));
    const auto xs = detail::chebyshev_nodes(static_cast<std::size_t>(n) + 1, -d, c);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = askey_wilson_rn_at(n, p, u * xs[i]);
    return detail::interpolate_poly(xs, ys);
}

/// r_n at the little-q-Jacobi substitution
///   argument  s q^{1/2} x / (2a^2),
///   parameters ( s q^{alpha+1/2} a^2,  s q^{1/2} a^{-2},
///               -s q^{1/2},           -s q^{beta+1/2} ),  s = sign = +-1,
/// interpolated on [0, 1].  As a -> 0+ both sign choices converge to
/// ((q^{beta+1};q)_n / (q^{-n-alpha};q)_n) p_n^{(beta,alpha)}(x : q).
///
/// Negating all four parameters is the substitution z -> -z on r_n, so the
/// argument must flip orientation in tandem; with a fixed argument the two
/// sign choices would converge to targets differing by x -> -x.
inline x_poly<double> limit_little_scaled(long n, double q, double alpha, double beta,
                                          double a, int sign) {
    if (n < 0) throw std::invalid_argument("limit_little_scaled: degree must be >= 0");
    if (!(a > 0.0)) throw std::domain_error("limit_little_scaled: a must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("limit_little_scaled: sign must be +1 or -1");
    const double s = static_cast<double>(sign);
    aw_params<double> p{s * std::pow(q, alpha + 0.5) * a * a,
                        s * std::sqrt(q) / (a * a),
                        -s * std::sqrt(q),
                        -s * std::pow(q, beta + 0.5),
                        q};
    const double u = s * std::sqrt(q) / (2.0 * a * a);
    const auto xs = detail::chebyshev_nodes(static_cast<std::size_t>(n) + 1, 0.0, 1.0);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = askey_wilson_rn_at(n, p, u * xs[i]);
    return detail::interpolate_poly(xs, ys);
}

}  // namespace qaw

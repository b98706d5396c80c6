#pragma once

/// \file askey_wilson.hpp
/// Askey-Wilson polynomials.
///
/// The primitive object is the terminating-series factor
///
///   R_n(z) = 4phi3( q^{-n}, q^{n-1}abcd, az, a/z ; ab, ac, ad ; q, q ),
///
/// a symmetric Laurent polynomial in z, equal to r_n(x) under x = (z+1/z)/2.
/// The classically normalized polynomial is
///
///   p_n(x) = a^{-n} (ab, ac, ad; q)_n r_n(x),
///
/// symmetric under all permutations of (a,b,c,d) even though the series
/// construction singles out a.

#include <stdexcept>
#include <string>

#include "laurent.hpp"
#include "qseries.hpp"
#include "rational.hpp"

namespace qaw {

template <class T>
struct aw_params {
    T a, b, c, d, q;
};

namespace detail {

/// The terminating series divides by (e;q)_k for k <= n; e in
/// {1, q^{-1}, ..., q^{-n+1}} would make that vanish.
template <class T>
void check_product_collision(const char* label, const T& e, const T& q, long n) {
    T qpow = T(1);
    for (long i = 0; i < n; ++i) {
        if (field_traits<T>::equal(e, qpow))
            throw std::domain_error(std::string("askey_wilson: parameter product ") + label +
                                    " collides with q^-" + std::to_string(i));
        qpow = qpow / q;
    }
}

/// Series coefficient ratio c_k / c_{k-1} shared by the Laurent expansion
/// and the pointwise evaluator.
template <class T>
struct aw_series_ratios {
    T q, qmn, qn1abcd, ab, ac, ad;
    long n;

    aw_series_ratios(long n_, const aw_params<T>& p) : n(n_) {
        q = p.q;
        ab = p.a * p.b;
        ac = p.a * p.c;
        ad = p.a * p.d;
        qmn = pow_int(p.q, -n_);
        qn1abcd = pow_int(p.q, n_ - 1) * ab * (p.c * p.d);
        check_product_collision("ab", ab, q, n_);
        check_product_collision("ac", ac, q, n_);
        check_product_collision("ad", ad, q, n_);
    }

    // qk1 = q^{k-1}, qk = q^k
    T ratio(const T& qk1, const T& qk) const {
        return (T(1) - qmn * qk1) * (T(1) - qn1abcd * qk1) * q /
               ((T(1) - ab * qk1) * (T(1) - ac * qk1) * (T(1) - ad * qk1) * (T(1) - qk));
    }
};

}  // namespace detail

/// R_n(z) as a symmetric Laurent polynomial; the (az;q)_k (a/z;q)_k pair is
/// expanded polynomially, so symmetry in z holds by construction.
template <class T>
laurent_poly<T> askey_wilson_rn(long n, const aw_params<T>& p) {
    if (n < 0) throw std::invalid_argument("askey_wilson_rn: degree must be >= 0");
    q_context<T> ctx(p.q);
    (void)ctx;
    detail::aw_series_ratios<T> r(n, p);

    laurent_poly<T> sum = laurent_poly<T>::one();
    laurent_poly<T> factor = laurent_poly<T>::one();
    T coef(1), qk1(1), qk = p.q;
    for (long k = 1; k <= n; ++k) {
        coef = coef * r.ratio(qk1, qk);
        const T aq = p.a * qk1;
        laurent_poly<T> pair = laurent_poly<T>::one();
        pair.add_coeff(1, -aq);
        pair.add_coeff(-1, -aq);
        pair.add_coeff(0, aq * aq);
        factor = factor * pair;
        sum += factor.scaled(coef);
        qk1 = qk1 * p.q;
        qk = qk * p.q;
    }
    return sum;
}

/// r_n evaluated at an arbitrary point x, via
/// prod_{j<k} (1 - 2 a q^j x + a^2 q^{2j}).  Only the products ab, ac, ad,
/// abcd and a itself enter, which keeps the evaluation stable when one
/// parameter is large and another small (the limit-transition regime).
template <class T>
T askey_wilson_rn_at(long n, const aw_params<T>& p, const T& x) {
    if (n < 0) throw std::invalid_argument("askey_wilson_rn_at: degree must be >= 0");
    q_context<T> ctx(p.q);
    (void)ctx;
    detail::aw_series_ratios<T> r(n, p);

    T sum(1), coef(1), factor(1), qk1(1), qk = p.q;
    for (long k = 1; k <= n; ++k) {
        coef = coef * r.ratio(qk1, qk);
        const T aq = p.a * qk1;
        factor = factor * (T(1) - (aq + aq) * x + aq * aq);
        sum = sum + coef * factor;
        qk1 = qk1 * p.q;
        qk = qk * p.q;
    }
    return sum;
}

/// p_n(x) in the x-basis.  The a^{-n} prefactor is singular at a = 0; that
/// degeneration is served by askey_wilson_rn instead.
template <class T>
x_poly<T> askey_wilson_pn(long n, const aw_params<T>& p) {
    if (n < 0) throw std::invalid_argument("askey_wilson_pn: degree must be >= 0");
    if (n == 0) return x_poly<T>::constant(T(1));
    if (field_traits<T>::is_zero(p.a))
        throw std::domain_error("askey_wilson_pn: a = 0 makes the a^{-n} prefactor singular; use askey_wilson_rn");
    const T ab = p.a * p.b, ac = p.a * p.c, ad = p.a * p.d;
    T pref = pow_int(p.a, -n);
    pref = pref * qpochhammer(ab, p.q, n) * qpochhammer(ac, p.q, n) * qpochhammer(ad, p.q, n);
    return to_x_basis(askey_wilson_rn(n, p)).scaled(pref);
}

}  // namespace qaw

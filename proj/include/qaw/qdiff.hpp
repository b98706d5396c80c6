#pragma once

/// \file qdiff.hpp
/// The Askey-Wilson second-order q-difference operator
///
///   (D f)(z) = A(z)(f(qz) - f(z)) + A(1/z)(f(z/q) - f(z)),
///   A(z) = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-qz^2)),
///
/// which maps symmetric Laurent polynomials to symmetric Laurent polynomials
/// of no larger x-degree, and its radial-part specialization
///
///   D_rad = D|_{base q^2, mapped params} + (1-q^{2n})/(1-q^2) id
///
/// with (a,b,c,d) = (-q^{sigma+tau+1}, -q^{-sigma-tau+1}, q^{sigma-tau+1},
/// q^{-sigma+tau+2(n-2)+1}) at base q^2, so that abcd = q^{2n}.  Casimir
/// eigenvalues chi live here as well.

#include <stdexcept>
#include <vector>

#include "askey_wilson.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace qaw {

/// sigma, tau enter through the values q^sigma, q^tau; the flags record the
/// degenerate sigma/tau = +-infinity cases, which the difference-operator
/// machinery refuses (they are served by the q-Jacobi limits instead).
template <class T>
struct sigma_tau_params {
    int n = 2;
    T q;
    T qsigma = T(1);
    T qtau = T(1);
    bool sigma_finite = true;
    bool tau_finite = true;
};

/// A(z) evaluated at a point; z^2 in {1, q^{-1}} makes the denominator
/// vanish and is rejected.
template <class T>
T coefficient_A(const T& zval, const aw_params<T>& p) {
    const T z2 = zval * zval;
    if (field_traits<T>::equal(z2, T(1)) || field_traits<T>::equal(z2 * p.q, T(1)))
        throw std::domain_error("coefficient_A: z^2 in {1, 1/q} makes the denominator vanish");
    const T num = (T(1) - p.a * zval) * (T(1) - p.b * zval) * (T(1) - p.c * zval) * (T(1) - p.d * zval);
    return num / ((T(1) - z2) * (T(1) - p.q * z2));
}

/// Apply D to a symmetric Laurent polynomial.  The two rational-coefficient
/// terms are combined over the common denominator (1-z^2)(1-qz^2) times its
/// z -> 1/z image and divided out exactly; a nonzero remainder would mean
/// the input was not in the operator's polynomial domain and is a hard
/// error (1e-9 relative remainder tolerance in the float backend).
template <class T>
laurent_poly<T> apply_aw_operator(const laurent_poly<T>& r, const aw_params<T>& p) {
    if (!r.is_symmetric())
        throw std::domain_error("apply_aw_operator: input must be symmetric under z -> 1/z");
    q_context<T> ctx(p.q);
    if (r.is_zero()) return laurent_poly<T>();

    const laurent_poly<T> u = r.q_shift(ctx, 1) - r;
    const laurent_poly<T> v = r.q_shift(ctx, -1) - r;
    if (u.is_zero() && v.is_zero()) return laurent_poly<T>();

    auto linear = [](const T& coeff) {
        laurent_poly<T> f = laurent_poly<T>::one();
        f.add_coeff(1, -coeff);
        return f;
    };
    const laurent_poly<T> nz = linear(p.a) * linear(p.b) * linear(p.c) * linear(p.d);
    laurent_poly<T> dz = laurent_poly<T>::one();
    dz.add_coeff(2, -T(1));
    laurent_poly<T> dz2 = laurent_poly<T>::one();
    dz2.add_coeff(2, -p.q);
    const laurent_poly<T> den_z = dz * dz2;

    const laurent_poly<T> num = nz * u * den_z.invert_z() + nz.invert_z() * v * den_z;
    return divide_exact(num, den_z * den_z.invert_z(), 1e-9);
}

/// (1 - q^{2n}) / (1 - q^2), the eigenvalue of the radial operator on
/// constants (also the Casimir eigenvalue at lambda = 0).
template <class T>
T radial_constant(int n, const T& q) {
    if (n < 2) throw std::invalid_argument("radial_constant: need n >= 2");
    return (T(1) - pow_int(q, 2L * n)) / (T(1) - q * q);
}

/// Parameters of the radial Askey-Wilson operator at base q^2.
template <class T>
aw_params<T> parameter_map(const sigma_tau_params<T>& st) {
    if (st.n < 2) throw std::invalid_argument("parameter_map: need n >= 2");
    if (!st.sigma_finite || !st.tau_finite)
        throw std::domain_error("parameter_map: infinite sigma/tau has no Askey-Wilson parameter image");
    if (!(st.qsigma > T(0)) || !(st.qtau > T(0)))
        throw std::domain_error("parameter_map: q^sigma and q^tau must be positive");
    const T& q = st.q;
    aw_params<T> p;
    p.a = -(q * st.qsigma * st.qtau);
    p.b = -(q / (st.qsigma * st.qtau));
    p.c = q * st.qsigma / st.qtau;
    p.d = pow_int(q, 2L * st.n - 3) * st.qtau / st.qsigma;
    p.q = q * q;
    return p;
}

/// The radial operator: difference part at the mapped parameters plus the
/// constant term.
template <class T>
laurent_poly<T> apply_radial_operator(const laurent_poly<T>& r, const sigma_tau_params<T>& st) {
    const aw_params<T> mapped = parameter_map(st);
    laurent_poly<T> out = apply_aw_operator(r, mapped);
    out += r.scaled(radial_constant(st.n, st.q));
    return out;
}

/// chi_lambda = sum_k q^{2(lambda_k + n - k)} on the module with highest
/// weight lambda.
template <class T>
T casimir_eigenvalue(const std::vector<int>& lambda, const q_context<T>& ctx) {
    const int n = static_cast<int>(lambda.size());
    if (n == 0) throw std::invalid_argument("casimir_eigenvalue: empty weight");
    T acc(0);
    for (int k = 1; k <= n; ++k) acc = acc + ctx.q_power(2L * (lambda[static_cast<std::size_t>(k - 1)] + n - k));
    return acc;
}

/// chi at the spherical weight l(e_1 - e_n):
/// q^{2(l+n-1)} + q^{-2l} + (q^2 - q^{2n-2})/(1 - q^2).
template <class T>
T chi_l(long l, int n, const q_context<T>& ctx) {
    if (l < 0) throw std::invalid_argument("chi_l: l must be >= 0");
    if (n < 2) throw std::invalid_argument("chi_l: need n >= 2");
    const T q2 = ctx.q_power(2);
    return ctx.q_power(2 * (l + n - 1)) + ctx.q_power(-2 * l) +
           (q2 - ctx.q_power(2L * n - 2)) / (T(1) - q2);
}

}  // namespace qaw

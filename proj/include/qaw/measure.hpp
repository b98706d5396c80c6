#pragma once

/// \file measure.hpp
/// The Askey-Wilson orthogonality measure: continuous weight
///
///   w(z) = (z^2, z^{-2};q)_inf / prod_{e in {a,b,c,d}} (ez, e/z;q)_inf
///
/// on the unit circle plus one discrete atom family per parameter e with
/// |e| > 1, at the points e_k = (e q^k + e^{-1} q^{-k})/2 for every k with
/// |e q^k| > 1.  Inner products combine periodic-trapezoid quadrature with
/// the atom sum; the Haar functional on the radial parameter family is the
/// normalized expectation against this measure at base q^2.
///
/// Float backend only: the weight involves infinite products.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "askey_wilson.hpp"
#include "laurent.hpp"
#include "qdiff.hpp"
#include "qseries.hpp"

namespace qaw {

/// One discrete mass point.  source names the parameter ('a'..'d') whose
/// family the point belongs to, k its index within that family.
struct measure_atom {
    double point = 0.0;
    double mass = 0.0;
    char source = '?';
    int k = 0;
};

struct quadrature_options {
    std::size_t initial_points = 64;
    int max_doublings = 20;
    double rel_tol = 1e-10;      // stopping criterion between doublings
    double product_tol = 1e-14;  // truncation tol shared by all infinite products
};

struct measure_spec {
    aw_params<double> params{};
    std::vector<measure_atom> atoms;
    quadrature_options quad{};
    double norm = 0.0;  // closed-form <1,1>
    // two atom families can share a point; flagged rather than merged
    bool coincident_atoms = false;
};

namespace detail {

/// Deterministic tree reduction; the result depends only on the input
/// order, never on how samples were produced.
inline double pairwise_sum(const double* p, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(p, h) + pairwise_sum(p + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

/// Evaluate f(i) for i in [0, n) into independent slots, chunked across a
/// small async pool.  Chunk boundaries do not affect results.
template <class F>
void parallel_fill(std::size_t n, F&& f) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = hw == 0 ? 1 : hw;
    workers = std::min<std::size_t>(workers, 8);
    if (n < 256 || workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::future<void>> fut;
    for (std::size_t lo = 0; lo < n; lo += chunk) {
        const std::size_t hi = std::min(n, lo + chunk);
        fut.push_back(std::async(std::launch::async, [lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        }));
    }
    for (auto& r : fut) r.get();
}

}  // namespace detail

/// w(e^{i theta}) with explicitly complex parameters (real parameters or
/// conjugate pairs give a real value; anything else is rejected).  On the
/// circle z^{-1} = conj(z), which keeps the factor pairing exact.
inline double weight_eval(double theta, const std::array<std::complex<double>, 4>& params, double q,
                          double tol = 1e-14) {
    const std::complex<double> z = std::polar(1.0, theta);
    const std::complex<double> z2 = z * z;
    std::complex<double> val = qpochhammer_inf(z2, q, tol) * qpochhammer_inf(std::conj(z2), q, tol);
    for (const std::complex<double>& e : params)
        val /= qpochhammer_inf(e * z, q, tol) * qpochhammer_inf(e * std::conj(z), q, tol);
    if (std::abs(val.imag()) > 1e-10 * (1.0 + std::abs(val.real())))
        throw std::runtime_error("weight_eval: weight is not real; parameters must be real or conjugate pairs");
    return val.real();
}

inline double weight_eval(double theta, const aw_params<double>& p, double tol = 1e-14) {
    return weight_eval(theta,
                       std::array<std::complex<double>, 4>{std::complex<double>(p.a), std::complex<double>(p.b),
                                                           std::complex<double>(p.c), std::complex<double>(p.d)},
                       p.q, tol);
}

/// Closed form <1,1> = 2 (abcd;q)_inf / (q, ab, ac, ad, bc, bd, cd;q)_inf.
inline double norm_one(const aw_params<double>& p, double tol = 1e-14) {
    q_context<double> ctx(p.q);
    (void)ctx;
    const double prods[6] = {p.a * p.b, p.a * p.c, p.a * p.d, p.b * p.c, p.b * p.d, p.c * p.d};
    double den = qpochhammer_inf(p.q, p.q, tol);
    for (double v : prods) den *= qpochhammer_inf(v, p.q, tol);
    return 2.0 * qpochhammer_inf(p.a * p.b * p.c * p.d, p.q, tol) / den;
}

/// Validate the positivity hypotheses, enumerate the atom families, and
/// attach masses.  The mass of atom k in family e with {f,g,h} the other
/// parameters is
///
///   w_k = 2 * (e^{-2};q)_inf / (q, ef, f/e, eg, g/e, eh, h/e;q)_inf
///         * (e^2, ef, eg, eh;q)_k / (q, eq/f, eq/g, eq/h;q)_k
///         * (1 - e^2 q^{2k}) / (1 - e^2) * (q/(efgh))^k,
///
/// computed by ratio updates so that zero parameters stay finite (the
/// (eq/f;q)_k denominator and the (q/(efgh))^k power cancel factor by
/// factor).  The leading 2 keeps the discrete part consistent with the
/// continuous part, which integrates over the full circle (twice the
/// half-circle convention the k-dependent factor is usually quoted in);
/// without it the Gram matrix is visibly non-diagonal and the total mass
/// misses the closed form.
inline measure_spec build_measure(const aw_params<double>& p, const quadrature_options& quad = {}) {
    q_context<double> ctx(p.q);
    (void)ctx;
    const double vals[4] = {p.a, p.b, p.c, p.d};
    static const char names[4] = {'a', 'b', 'c', 'd'};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (vals[i] * vals[j] >= 1.0)
                throw std::domain_error(std::string("build_measure: parameter product ") + names[i] + names[j] +
                                        " is >= 1, positivity hypotheses violated");

    measure_spec m;
    m.params = p;
    m.quad = quad;
    m.norm = norm_one(p, quad.product_tol);

    for (int idx = 0; idx < 4; ++idx) {
        const double e = vals[idx];
        if (!(std::abs(e) > 1.0)) continue;
        std::array<double, 3> others{};
        for (int j = 0, w = 0; j < 4; ++j)
            if (j != idx) others[static_cast<std::size_t>(w++)] = vals[j];

        double pref = 2.0 * qpochhammer_inf(1.0 / (e * e), p.q, quad.product_tol) /
                      qpochhammer_inf(p.q, p.q, quad.product_tol);
        for (double f : others)
            pref /= qpochhammer_inf(e * f, p.q, quad.product_tol) * qpochhammer_inf(f / e, p.q, quad.product_tol);

        double rel = 1.0;  // k-dependent factor, equal to 1 at k = 0
        double qk = 1.0;
        for (int k = 0; std::abs(e) * qk > 1.0; ++k) {
            const double eq = e * qk;
            m.atoms.push_back({0.5 * (eq + 1.0 / eq), pref * rel, names[idx], k});
            // advance rel from k to k+1
            const double qk1 = qk * p.q;
            double ratio = (1.0 - e * e * qk) * (1.0 - e * e * qk1 * qk1) / (1.0 - e * e * qk * qk) * p.q /
                           ((1.0 - qk1) * e);
            for (double f : others) ratio *= (1.0 - e * f * qk) / (f - e * qk1);
            rel *= ratio;
            qk = qk1;
        }
    }

    std::vector<double> pts;
    pts.reserve(m.atoms.size());
    for (const measure_atom& at : m.atoms) pts.push_back(at.point);
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (std::abs(pts[i] - pts[i - 1]) <= 1e-12) m.coincident_atoms = true;
    return m;
}

namespace detail {

inline double trapezoid_mean(const x_poly<double>& P, const x_poly<double>& Q, const measure_spec& m,
                             std::size_t points) {
    std::vector<double> ys(points);
    const double step = 2.0 * M_PI / static_cast<double>(points);
    parallel_fill(points, [&](std::size_t i) {
        const double theta = step * static_cast<double>(i);
        const double x = std::cos(theta);
        ys[i] = P.eval(x) * Q.eval(x) * weight_eval(theta, m.params, m.quad.product_tol);
    });
    return pairwise_sum(ys) / static_cast<double>(points);
}

}  // namespace detail

/// <P, Q> = (2 pi)^{-1} integral of P Q w over the circle plus the atom
/// sum.  The point count doubles until successive values agree to rel_tol;
/// exceeding the doubling budget is a hard error.
inline double inner_product(const x_poly<double>& P, const x_poly<double>& Q, const measure_spec& m) {
    std::size_t points = std::max<std::size_t>(m.quad.initial_points, 2);
    double prev = detail::trapezoid_mean(P, Q, m, points);
    double cont = prev;
    bool converged = false;
    for (int d = 0; d < m.quad.max_doublings; ++d) {
        points *= 2;
        const double cur = detail::trapezoid_mean(P, Q, m, points);
        if (std::abs(cur - prev) <= m.quad.rel_tol * std::max(1.0, std::abs(cur))) {
            cont = cur;
            converged = true;
            break;
        }
        prev = cur;
    }
    if (!converged)
        throw std::runtime_error("inner_product: quadrature did not converge within the doubling budget");

    double discrete = 0.0;
    for (const measure_atom& at : m.atoms) discrete += P.eval(at.point) * Q.eval(at.point) * at.mass;
    return cont + discrete;
}

/// Haar expectation on the radial family: the measure at the mapped base-q^2
/// parameters, normalized by its own quadrature total so that the constant 1
/// maps to exactly 1.
inline double haar_expectation(const x_poly<double>& P, const sigma_tau_params<double>& st) {
    const measure_spec m = build_measure(parameter_map(st));
    const x_poly<double> one = x_poly<double>::constant(1.0);
    return inner_product(P, one, m) / inner_product(one, one, m);
}

/// Support descriptor for the Jackson-type measures of the q-Jacobi
/// degenerations: geometric point families start * q^k (k >= 0) inside an
/// enclosing interval.  Masses are not exposed here; orthogonality for these
/// families is certified through the Askey-Wilson limit instead.
struct support_descriptor {
    double lo = 0.0, hi = 0.0;
    std::vector<double> family_starts;
    double ratio = 0.0;
};

inline support_descriptor big_qjacobi_support(double c, double d, double q) {
    if (!(c > 0.0) || !(d > 0.0)) throw std::domain_error("big_qjacobi_support: c and d must be positive");
    q_context<double> ctx(q);
    (void)ctx;
    return {-d, c, {c, -d}, q};
}

inline support_descriptor little_qjacobi_support(double q) {
    q_context<double> ctx(q);
    (void)ctx;
    return {0.0, 1.0, {1.0}, q};
}

}  // namespace qaw

#pragma once

/// \file laurent.hpp
/// Sparse Laurent polynomials in z, dense polynomials in x, and the
/// change of variable x = (z + 1/z)/2 between them.
///
/// Symmetric Laurent polynomials (invariant under z -> 1/z) are exactly the
/// image of ordinary polynomials in x under that substitution; to_x_basis /
/// from_x_basis convert in both directions, exactly over the rational
/// backend.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qaw {

template <class T>
class x_poly;

/// Sparse Laurent polynomial: exponent -> coefficient, no stored zeros.
/// Map iteration order is ascending exponent, which keeps float-backend
/// accumulation deterministic.
template <class T>
class laurent_poly {
public:
    using coeff_map = std::map<long, T>;

    laurent_poly() = default;

    static laurent_poly zero() { return laurent_poly(); }
    static laurent_poly one() { return monomial(0, T(1)); }
    static laurent_poly monomial(long e, const T& c = T(1)) {
        laurent_poly p;
        p.set_coeff(e, c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }

    long min_exp() const {
        require_nonzero_("min_exp");
        return c_.begin()->first;
    }
    long max_exp() const {
        require_nonzero_("max_exp");
        return c_.rbegin()->first;
    }

    const coeff_map& coeffs() const { return c_; }

    T coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? T(0) : it->second;
    }

    void set_coeff(long e, const T& v) {
        if (field_traits<T>::is_zero(v))
            c_.erase(e);
        else
            c_[e] = v;
    }

    void add_coeff(long e, const T& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (!field_traits<T>::is_zero(v)) c_.emplace(e, v);
            return;
        }
        it->second = it->second + v;
        if (field_traits<T>::is_zero(it->second)) c_.erase(it);
    }

    laurent_poly& operator+=(const laurent_poly& o) {
        for (const auto& [e, v] : o.c_) add_coeff(e, v);
        return *this;
    }
    laurent_poly& operator-=(const laurent_poly& o) {
        for (const auto& [e, v] : o.c_) add_coeff(e, -v);
        return *this;
    }

    friend laurent_poly operator+(laurent_poly a, const laurent_poly& b) { return a += b; }
    friend laurent_poly operator-(laurent_poly a, const laurent_poly& b) { return a -= b; }

    laurent_poly operator-() const {
        laurent_poly r;
        for (const auto& [e, v] : c_) r.c_.emplace(e, -v);
        return r;
    }

    friend laurent_poly operator*(const laurent_poly& a, const laurent_poly& b) {
        laurent_poly r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) r.add_coeff(ea + eb, va * vb);
        return r;
    }

    laurent_poly scaled(const T& s) const {
        laurent_poly r;
        if (field_traits<T>::is_zero(s)) return r;
        for (const auto& [e, v] : c_) r.set_coeff(e, v * s);
        return r;
    }

    /// p(q^k z): the coefficient at exponent m picks up q^{k m}.
    laurent_poly q_shift(const q_context<T>& ctx, long k) const {
        laurent_poly r;
        for (const auto& [e, v] : c_) r.set_coeff(e, v * ctx.q_power(k * e));
        return r;
    }

    /// p(1/z).
    laurent_poly invert_z() const {
        laurent_poly r;
        for (const auto& [e, v] : c_) r.c_.emplace(-e, v);
        return r;
    }

    /// Invariance under z -> 1/z; exact in the rational backend, within an
    /// absolute 1e-12 per coefficient for float.
    bool is_symmetric() const {
        for (const auto& [e, v] : c_)
            if (!field_traits<T>::equal(v, coeff(-e))) return false;
        return true;
    }

    /// Evaluate at a point of the same field; zv must be nonzero when
    /// negative exponents are present.
    T eval(const T& zv) const {
        T acc = T(0);
        for (const auto& [e, v] : c_) acc = acc + v * pow_at_(zv, e);
        return acc;
    }

    friend bool operator==(const laurent_poly& a, const laurent_poly& b) {
        // exact structural equality (float coefficients compare bitwise)
        return a.c_ == b.c_;
    }

private:
    static T pow_at_(const T& zv, long e) {
        if (e >= 0) return pow_int(zv, e);
        return T(1) / pow_int(zv, -e);
    }

    void require_nonzero_(const char* who) const {
        if (c_.empty()) throw std::logic_error(std::string(who) + ": zero polynomial");
    }

    coeff_map c_;
};

/// Dense polynomial in x, coefficients ascending.  Trailing exact zeros are
/// trimmed; the zero polynomial has degree -1.
template <class T>
class x_poly {
public:
    x_poly() = default;
    explicit x_poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim_(); }

    static x_poly constant(const T& v) { return x_poly(std::vector<T>{v}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<T>& coeffs() const { return c_; }

    T coeff(long k) const {
        if (k < 0 || k >= static_cast<long>(c_.size())) return T(0);
        return c_[static_cast<std::size_t>(k)];
    }

    const T& leading() const {
        if (c_.empty()) throw std::logic_error("x_poly: zero polynomial has no leading coefficient");
        return c_.back();
    }

    void set_coeff(long k, const T& v) {
        if (k < 0) throw std::invalid_argument("x_poly: negative degree");
        if (k >= static_cast<long>(c_.size())) {
            if (field_traits<T>::is_zero(v)) return;
            c_.resize(static_cast<std::size_t>(k) + 1, T(0));
        }
        c_[static_cast<std::size_t>(k)] = v;
        trim_();
    }

    x_poly& operator+=(const x_poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim_();
        return *this;
    }
    x_poly& operator-=(const x_poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim_();
        return *this;
    }

    friend x_poly operator+(x_poly a, const x_poly& b) { return a += b; }
    friend x_poly operator-(x_poly a, const x_poly& b) { return a -= b; }

    friend x_poly operator*(const x_poly& a, const x_poly& b) {
        if (a.is_zero() || b.is_zero()) return x_poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        x_poly p;
        p.c_ = std::move(r);
        p.trim_();
        return p;
    }

    x_poly scaled(const T& s) const {
        if (field_traits<T>::is_zero(s)) return x_poly();
        std::vector<T> r(c_);
        for (T& v : r) v = v * s;
        x_poly p;
        p.c_ = std::move(r);
        p.trim_();
        return p;
    }

    /// Horner evaluation at a point of the same field.
    T eval(const T& xv) const {
        T acc = T(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * xv + c_[i];
        return acc;
    }

    friend bool operator==(const x_poly& a, const x_poly& b) { return a.c_ == b.c_; }

private:
    void trim_() {
        while (!c_.empty() && field_traits<T>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

/// Rewrite a symmetric Laurent polynomial as a polynomial in x = (z+1/z)/2.
/// Uses the recurrence phi_0 = 2, phi_1 = 2x, phi_j = 2x phi_{j-1} - phi_{j-2}
/// for phi_j(x) = z^j + z^{-j}.  Throws std::domain_error when the input is
/// not symmetric.
template <class T>
x_poly<T> to_x_basis(const laurent_poly<T>& p) {
    if (!p.is_symmetric()) throw std::domain_error("to_x_basis: input is not symmetric under z -> 1/z");
    if (p.is_zero()) return x_poly<T>();
    const long d = p.max_exp() < 0 ? 0 : p.max_exp();

    x_poly<T> result = x_poly<T>::constant(p.coeff(0));
    x_poly<T> phi_prev(std::vector<T>{T(2)});        // phi_0
    x_poly<T> phi_cur(std::vector<T>{T(0), T(2)});   // phi_1
    const x_poly<T> two_x(std::vector<T>{T(0), T(2)});
    for (long j = 1; j <= d; ++j) {
        result += phi_cur.scaled(p.coeff(j));
        x_poly<T> next = two_x * phi_cur - phi_prev;
        phi_prev = std::move(phi_cur);
        phi_cur = std::move(next);
    }
    return result;
}

/// Substitute x = (z+1/z)/2 by Horner; the result is always symmetric.
template <class T>
laurent_poly<T> from_x_basis(const x_poly<T>& p) {
    laurent_poly<T> acc;
    if (p.is_zero()) return acc;
    const T half = T(1) / T(2);
    laurent_poly<T> X = (laurent_poly<T>::monomial(1) + laurent_poly<T>::monomial(-1)).scaled(half);
    for (long k = p.degree(); k >= 0; --k) {
        acc = acc * X;
        acc.add_coeff(0, p.coeff(k));
    }
    return acc;
}

/// Exact Laurent division num/den.  A nonzero remainder is a hard error:
/// exactly zero required in the rational backend, and bounded by
/// float_rel_tol * (1 + max |num coeff|) coefficientwise in float.
template <class T>
laurent_poly<T> divide_exact(const laurent_poly<T>& num, const laurent_poly<T>& den,
                             double float_rel_tol = 1e-9) {
    if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    if (num.is_zero()) return laurent_poly<T>();

    const long s1 = num.min_exp(), s2 = den.min_exp();
    const long n1 = num.max_exp() - s1, n2 = den.max_exp() - s2;

    std::vector<T> a(static_cast<std::size_t>(n1) + 1, T(0));
    std::vector<T> b(static_cast<std::size_t>(n2) + 1, T(0));
    for (const auto& [e, v] : num.coeffs()) a[static_cast<std::size_t>(e - s1)] = v;
    for (const auto& [e, v] : den.coeffs()) b[static_cast<std::size_t>(e - s2)] = v;

    double num_scale = 1.0;
    if constexpr (!field_traits<T>::exact) {
        for (const T& v : a) {
            double m = field_traits<T>::to_double(v);
            if (m < 0) m = -m;
            if (m > num_scale) num_scale = m;
        }
    }

    laurent_poly<T> quot;
    if (n1 >= n2) {
        const T& lead = b[static_cast<std::size_t>(n2)];
        for (long k = n1 - n2; k >= 0; --k) {
            T c = a[static_cast<std::size_t>(k + n2)] / lead;
            if (!field_traits<T>::is_zero(c)) {
                quot.set_coeff(k + s1 - s2, c);
                for (long j = 0; j <= n2; ++j)
                    a[static_cast<std::size_t>(k + j)] = a[static_cast<std::size_t>(k + j)] - c * b[static_cast<std::size_t>(j)];
            }
        }
    }

    for (const T& v : a) {
        if constexpr (field_traits<T>::exact) {
            if (!field_traits<T>::is_zero(v))
                throw std::runtime_error("divide_exact: nonzero remainder, quotient is not a Laurent polynomial");
        } else {
            double m = field_traits<T>::to_double(v);
            if (m < 0) m = -m;
            if (m > float_rel_tol * num_scale)
                throw std::runtime_error("divide_exact: remainder above tolerance, quotient is not a Laurent polynomial");
        }
    }
    return quot;
}

}  // namespace qaw

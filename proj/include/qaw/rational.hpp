#pragma once

/// \file rational.hpp
/// Exact rational scalar (GMP-backed) and the shared q-context.
///
/// Every algorithm in this library is templated on a coefficient field, which
/// is either `qaw::rational` (exact, arbitrary precision) or `double`.  The
/// two never mix inside one expression: a LaurentPoly<rational> cannot be
/// added to a LaurentPoly<double>, by construction.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace qaw {

/// Arbitrary-precision rational, always canonical: lowest terms, positive
/// denominator.  Thin wrapper over mpq_class that enforces canonical form at
/// every construction boundary (GMP keeps arithmetic results canonical as
/// long as the inputs are).
class rational {
public:
    rational() : v_(0) {}
    rational(int n) : v_(n) {}
    rational(long n) : v_(static_cast<signed long>(n)) {}
    rational(long long n) { v_ = from_ll_(n); }

    rational(long num, long den) : v_(mpz_class(num), mpz_class(den)) {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        v_.canonicalize();  // also normalizes a negative denominator
    }

    explicit rational(const mpq_class& q) : v_(q) {
        if (v_.get_den() == 0) throw std::domain_error("rational: zero denominator");
        v_.canonicalize();
    }

    /// Parse "p", "-p" or "p/q".  Throws std::invalid_argument on malformed
    /// input and std::domain_error on a zero denominator.
    static rational from_string(const std::string& s) {
        mpq_class q;
        try {
            q = mpq_class(s);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("rational: cannot parse '" + s + "'");
        }
        if (q.get_den() == 0) throw std::domain_error("rational: zero denominator in '" + s + "'");
        q.canonicalize();
        rational r;
        r.v_ = q;
        return r;
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    rational operator-() const {
        rational r;
        r.v_ = -v_;
        return r;
    }

    rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
    rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
    rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
    rational& operator/=(const rational& o) {
        if (o.is_zero()) throw std::domain_error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }

    friend bool operator==(const rational& a, const rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const rational& a, const rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const rational& a, const rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const rational& a, const rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const rational& a, const rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const rational& a, const rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const rational& r);

private:
    static mpq_class from_ll_(long long n) {
        // mpq_class has no long long constructor on LP64 this matters only
        // for exotic platforms; go through a decimal string to stay portable.
        return mpq_class(std::to_string(n));
    }

    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const rational& r) {
    return os << r.v_;
}

/// r^k for integer k of either sign.  0^0 = 1; 0^negative throws.
inline rational pow_int(const rational& r, long k) {
    if (k == 0) return rational(1);
    if (r.is_zero()) {
        if (k < 0) throw std::domain_error("pow_int: zero base, negative exponent");
        return rational(0);
    }
    const bool neg = k < 0;
    unsigned long e = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.den().get_mpz_t(), e);
    mpq_class q(num, den);  // already canonical: powers of coprime values stay coprime
    if (neg) q = 1 / q;
    return rational(q);
}

inline double pow_int(double r, long k) {
    if (k == 0) return 1.0;
    if (r == 0.0) {
        if (k < 0) throw std::domain_error("pow_int: zero base, negative exponent");
        return 0.0;
    }
    if (k < 0) return 1.0 / pow_int(r, -k);
    double acc = 1.0, base = r;
    unsigned long e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Field glue the templates dispatch on.  `exact` selects exact-equality vs
/// tolerance-based comparison paths; `is_zero` decides what a sparse
/// container refuses to store (exact zero only, in both backends).
template <class T>
struct field_traits;

template <>
struct field_traits<rational> {
    static constexpr bool exact = true;
    static rational zero() { return rational(0); }
    static rational one() { return rational(1); }
    static rational from_int(long n) { return rational(n); }
    static bool is_zero(const rational& v) { return v.is_zero(); }
    static bool equal(const rational& a, const rational& b) { return a == b; }
    static double to_double(const rational& v) { return v.to_double(); }
};

template <>
struct field_traits<double> {
    static constexpr bool exact = false;
    /// Comparison tolerance for structural predicates (symmetry checks,
    /// collision detection) in the float backend.
    static constexpr double tol = 1e-12;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long n) { return static_cast<double>(n); }
    static bool is_zero(double v) { return v == 0.0; }
    static bool equal(double a, double b) {
        double d = a - b;
        return (d < 0 ? -d : d) <= tol;
    }
    static double to_double(double v) { return v; }
};

/// Deformation parameter holder.  The exact backend only needs q outside
/// {0,1} for the q-power algebra to be well defined; the float backend is
/// pinned to 0 < q < 1 so infinite products and measures converge.
template <class T>
class q_context {
public:
    explicit q_context(const T& q) : q_(q) {
        if constexpr (field_traits<T>::exact) {
            if (field_traits<T>::is_zero(q) || field_traits<T>::equal(q, T(1)))
                throw std::domain_error("q_context: q must avoid 0 and 1");
        } else {
            if (!(q > T(0)) || !(q < T(1)))
                throw std::domain_error("q_context: q must satisfy 0 < q < 1");
        }
    }

    const T& q() const { return q_; }

    /// q^k for integer k of either sign; exact in the rational backend.
    T q_power(long k) const { return pow_int(q_, k); }

private:
    T q_;
};

}  // namespace qaw

#pragma once

/// \file multilaurent.hpp
/// Z^n-graded Laurent coefficients (multivariate monomials indexed by
/// integer weight vectors) and the collapse of a one-dimensional character
/// sum onto a single Laurent variable.

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "laurent.hpp"
#include "rational.hpp"

namespace qaw {

/// Finitely supported map Z^n -> coefficients; no stored zeros.
template <class T>
class multi_laurent {
public:
    using key_type = std::vector<int>;

    explicit multi_laurent(int nvars) : n_(nvars) {
        if (nvars <= 0) throw std::invalid_argument("multi_laurent: need at least one variable");
    }

    int nvars() const { return n_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<key_type, T>& coeffs() const { return c_; }

    void add_coeff(const key_type& mu, const T& v) {
        check_key_(mu);
        auto it = c_.find(mu);
        if (it == c_.end()) {
            if (!field_traits<T>::is_zero(v)) c_.emplace(mu, v);
            return;
        }
        it->second = it->second + v;
        if (field_traits<T>::is_zero(it->second)) c_.erase(it);
    }

    T coeff(const key_type& mu) const {
        auto it = c_.find(mu);
        return it == c_.end() ? T(0) : it->second;
    }

private:
    void check_key_(const key_type& mu) const {
        if (static_cast<int>(mu.size()) != n_)
            throw std::invalid_argument("multi_laurent: exponent vector has wrong length");
    }

    int n_;
    std::map<key_type, T> c_;
};

namespace detail {
inline std::string format_exponent(const std::vector<int>& mu) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i) os << ",";
        os << mu[i];
    }
    os << ")";
    return os.str();
}
}  // namespace detail

/// Project a multivariate Laurent sum supported on the line Z*d onto a single
/// variable: the monomial at k*d maps to z^k.  Any monomial off that line is
/// a hard error naming the offending exponent vector.
template <class T>
laurent_poly<T> collapse_multilaurent(const multi_laurent<T>& m, const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != m.nvars())
        throw std::invalid_argument("collapse_multilaurent: direction has wrong length");
    int pivot = -1;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot < 0) throw std::invalid_argument("collapse_multilaurent: zero direction");

    laurent_poly<T> out;
    for (const auto& [mu, v] : m.coeffs()) {
        const int num = mu[static_cast<std::size_t>(pivot)];
        const int dp = d[static_cast<std::size_t>(pivot)];
        bool on_line = num % dp == 0;
        const int k = on_line ? num / dp : 0;
        if (on_line)
            for (std::size_t i = 0; i < d.size(); ++i)
                if (mu[i] != k * d[i]) {
                    on_line = false;
                    break;
                }
        if (!on_line)
            throw std::domain_error("collapse_multilaurent: monomial at " + detail::format_exponent(mu) +
                                    " lies off the line spanned by " + detail::format_exponent(d));
        out.add_coeff(k, v);
    }
    return out;
}

}  // namespace qaw

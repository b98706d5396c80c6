#pragma once

/// Finite-dimensional representation engine for the quantized gl(n) in its
/// L-operator presentation.  A generator_table holds, for one concrete
/// module, the matrices of the upper-triangular family L+_ij, the
/// lower-triangular family L-_ij, and their antipode images, together with
/// an integer weight per basis index.  Tables for the vector module, its
/// dual, and the trivial module are built from closed formulas; tensor
/// products come from the coproduct rule
///     Delta(L_ij) = sum_k L_ik (x) L_kj,
/// with the antipode images tensored in the reversed order.  On top of the
/// tables sit the R-matrix, the one-parameter family of twisted-conjugation
/// coideals, the Casimir element, generated-submodule extraction, and joint
/// fixed-vector solves.  Everything is exact; scalars are expected to be a
/// field type with exact field_traits.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaw/linalg.hpp"
#include "qaw/rational.hpp"

namespace qaw {

/// The four matrix families tracked per module: L+, L-, S(L+), S(L-).
enum class lkind : int { lp = 0, lm = 1, slp = 2, slm = 3 };

namespace detail {

/// L+ and S(L+) live on i <= j, the minus family on i >= j.
inline bool label_in_pattern(lkind k, int i, int j) {
    if (k == lkind::lp || k == lkind::slp) return i <= j;
    return i >= j;
}

inline void check_label_range(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::out_of_range("generator_table: label index out of range");
}

}  // namespace detail

/// Matrices of one module over the L-operator generators, keyed by
/// (family, i, j) with 1-based indices.  Only labels inside the triangular
/// pattern are stored; everything else is structurally zero.  weights[b] is
/// the Z^n weight of basis index b.
template <class T>
struct generator_table {
    int n = 0;
    int dim = 0;
    T q;
    std::vector<std::vector<int>> weights;
    std::map<std::array<int, 3>, sparse_mat<T>> mats;

    bool stores(lkind k, int i, int j) const {
        detail::check_label_range(n, i, j);
        return mats.count({static_cast<int>(k), i, j}) != 0;
    }

    /// Matrix of one generator; labels off the triangular pattern and
    /// pattern labels that were never stored both come back as zero.
    sparse_mat<T> mat(lkind k, int i, int j) const {
        detail::check_label_range(n, i, j);
        auto it = mats.find({static_cast<int>(k), i, j});
        if (it == mats.end()) return sparse_mat<T>(dim, dim);
        return it->second;
    }

    void set_mat(lkind k, int i, int j, sparse_mat<T> m) {
        detail::check_label_range(n, i, j);
        if (!detail::label_in_pattern(k, i, j))
            throw std::invalid_argument("generator_table: label outside the triangular pattern");
        if (m.rows() != dim || m.cols() != dim)
            throw std::invalid_argument("generator_table: matrix shape does not match module dimension");
        mats[{static_cast<int>(k), i, j}] = std::move(m);
    }
};

namespace detail {

template <class T>
generator_table<T> empty_table(int n, const q_context<T>& ctx, int dim) {
    if (n < 2) throw std::invalid_argument("generator_table: need n >= 2");
    generator_table<T> t;
    t.n = n;
    t.dim = dim;
    t.q = ctx.q();
    t.weights.assign(static_cast<std::size_t>(dim), std::vector<int>(static_cast<std::size_t>(n), 0));
    return t;
}

}  // namespace detail

/// Vector module: basis v_1..v_n, weight of v_i is e_i, highest weight v_1.
/// Actions (1-based, i < j for the plus family, i > j for minus):
///   L^e_ii v_k = q^{e d_ik} v_k,        S(L^e_ii) v_k = q^{-e d_ik} v_k,
///   L+_ij v_i = (q - 1/q) v_j,          S(L+_ij) v_i = -(q - 1/q) v_j,
///   L-_ij v_i = -(q - 1/q) v_j,         S(L-_ij) v_i = (q - 1/q) v_j.
template <class T>
generator_table<T> vector_rep(int n, const q_context<T>& ctx) {
    generator_table<T> t = detail::empty_table(n, ctx, n);
    for (int i = 1; i <= n; ++i) t.weights[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = 1;
    const T q = ctx.q();
    const T qi = T(1) / q;
    const T hop = q - qi;
    for (int i = 1; i <= n; ++i) {
        sparse_mat<T> lp_d = sparse_mat<T>::identity(n);
        sparse_mat<T> lm_d = sparse_mat<T>::identity(n);
        sparse_mat<T> slp_d = sparse_mat<T>::identity(n);
        sparse_mat<T> slm_d = sparse_mat<T>::identity(n);
        lp_d.set(i - 1, i - 1, q);
        lm_d.set(i - 1, i - 1, qi);
        slp_d.set(i - 1, i - 1, qi);
        slm_d.set(i - 1, i - 1, q);
        t.set_mat(lkind::lp, i, i, lp_d);
        t.set_mat(lkind::lm, i, i, lm_d);
        t.set_mat(lkind::slp, i, i, slp_d);
        t.set_mat(lkind::slm, i, i, slm_d);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            sparse_mat<T> m(n, n);
            if (i < j) {
                m.set(j - 1, i - 1, hop);
                t.set_mat(lkind::lp, i, j, m);
                m.set(j - 1, i - 1, -hop);
                t.set_mat(lkind::slp, i, j, m);
            } else {
                m.set(j - 1, i - 1, -hop);
                t.set_mat(lkind::lm, i, j, m);
                m.set(j - 1, i - 1, hop);
                t.set_mat(lkind::slm, i, j, m);
            }
        }
    return t;
}

/// Dual of the vector module: basis v*_1..v*_n, weight of v*_i is -e_i,
/// highest weight v*_n.  Actions:
///   L^e_ii v*_k = q^{-e d_ik} v*_k,     S(L^e_ii) v*_k = q^{e d_ik} v*_k,
///   L+_ij v*_j = -(q - 1/q) v*_i,       S(L+_ij) v*_j = q^{2(j-i)}(q - 1/q) v*_i,
///   L-_ij v*_j = (q - 1/q) v*_i,        S(L-_ij) v*_j = -q^{2(j-i)}(q - 1/q) v*_i.
/// The antipode-squared twist by 2 rho is what puts the q^{2(j-i)} factors in.
template <class T>
generator_table<T> dual_rep(int n, const q_context<T>& ctx) {
    generator_table<T> t = detail::empty_table(n, ctx, n);
    for (int i = 1; i <= n; ++i) t.weights[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = -1;
    const T q = ctx.q();
    const T qi = T(1) / q;
    const T hop = q - qi;
    for (int i = 1; i <= n; ++i) {
        sparse_mat<T> lp_d = sparse_mat<T>::identity(n);
        sparse_mat<T> lm_d = sparse_mat<T>::identity(n);
        sparse_mat<T> slp_d = sparse_mat<T>::identity(n);
        sparse_mat<T> slm_d = sparse_mat<T>::identity(n);
        lp_d.set(i - 1, i - 1, qi);
        lm_d.set(i - 1, i - 1, q);
        slp_d.set(i - 1, i - 1, q);
        slm_d.set(i - 1, i - 1, qi);
        t.set_mat(lkind::lp, i, i, lp_d);
        t.set_mat(lkind::lm, i, i, lm_d);
        t.set_mat(lkind::slp, i, i, slp_d);
        t.set_mat(lkind::slm, i, i, slm_d);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            sparse_mat<T> m(n, n);
            const T twist = ctx.q_power(2L * (j - i)) * hop;
            if (i < j) {
                m.set(i - 1, j - 1, -hop);
                t.set_mat(lkind::lp, i, j, m);
                m.set(i - 1, j - 1, twist);
                t.set_mat(lkind::slp, i, j, m);
            } else {
                m.set(i - 1, j - 1, hop);
                t.set_mat(lkind::lm, i, j, m);
                m.set(i - 1, j - 1, -twist);
                t.set_mat(lkind::slm, i, j, m);
            }
        }
    return t;
}

/// One-dimensional trivial module: every generator acts through the counit
/// eps(L_ij) = delta_ij.
template <class T>
generator_table<T> trivial_rep(int n, const q_context<T>& ctx) {
    generator_table<T> t = detail::empty_table(n, ctx, 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            sparse_mat<T> m(1, 1);
            if (i == j) m.set(0, 0, T(1));
            if (detail::label_in_pattern(lkind::lp, i, j)) {
                t.set_mat(lkind::lp, i, j, m);
                t.set_mat(lkind::slp, i, j, m);
            }
            if (detail::label_in_pattern(lkind::lm, i, j)) {
                t.set_mat(lkind::lm, i, j, m);
                t.set_mat(lkind::slm, i, j, m);
            }
        }
    return t;
}

/// Tensor product module with row-major basis order (a, b) -> a*dim_b + b.
/// L and S(L) matrices follow the coproduct; S reverses the tensor order:
///   M(L_ij)    = sum_k M_a(L_ik)    (x) M_b(L_kj),
///   M(S(L_ij)) = sum_k M_a(S(L_kj)) (x) M_b(S(L_ik)).
/// Weights add componentwise.
template <class T>
generator_table<T> tensor_action(const generator_table<T>& a, const generator_table<T>& b) {
    if (a.n != b.n) throw std::invalid_argument("tensor_action: rank mismatch");
    if (!field_traits<T>::equal(a.q, b.q)) throw std::invalid_argument("tensor_action: deformation parameter mismatch");
    const int n = a.n;
    q_context<T> ctx(a.q);
    generator_table<T> t = detail::empty_table(n, ctx, a.dim * b.dim);
    for (int ia = 0; ia < a.dim; ++ia)
        for (int ib = 0; ib < b.dim; ++ib) {
            auto& w = t.weights[static_cast<std::size_t>(ia * b.dim + ib)];
            for (int c = 0; c < n; ++c)
                w[static_cast<std::size_t>(c)] = a.weights[static_cast<std::size_t>(ia)][static_cast<std::size_t>(c)] +
                                                 b.weights[static_cast<std::size_t>(ib)][static_cast<std::size_t>(c)];
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            for (lkind k : {lkind::lp, lkind::lm}) {
                if (!detail::label_in_pattern(k, i, j)) continue;
                const int lo = std::min(i, j), hi = std::max(i, j);
                sparse_mat<T> m(t.dim, t.dim);
                for (int mid = lo; mid <= hi; ++mid)
                    m = m + kron(a.mat(k, i, mid), b.mat(k, mid, j));
                t.set_mat(k, i, j, std::move(m));
            }
            for (lkind k : {lkind::slp, lkind::slm}) {
                if (!detail::label_in_pattern(k, i, j)) continue;
                const int lo = std::min(i, j), hi = std::max(i, j);
                sparse_mat<T> m(t.dim, t.dim);
                for (int mid = lo; mid <= hi; ++mid)
                    m = m + kron(a.mat(k, mid, j), b.mat(k, i, mid));
                t.set_mat(k, i, j, std::move(m));
            }
        }
    return t;
}

/// Every stored entry must shift weights by e_j - e_i: entry (r, c) of the
/// matrix of L_ij or S(L_ij) nonzero requires wt(r) = wt(c) + e_j - e_i.
template <class T>
bool check_weight_compatibility(const generator_table<T>& t) {
    for (const auto& [key, m] : t.mats) {
        const int i = key[1], j = key[2];
        for (int r = 0; r < m.rows(); ++r)
            for (const auto& [c, v] : m.row(r)) {
                (void)v;
                for (int comp = 0; comp < t.n; ++comp) {
                    int expect = t.weights[static_cast<std::size_t>(c)][static_cast<std::size_t>(comp)];
                    if (comp == j - 1) expect += 1;
                    if (comp == i - 1) expect -= 1;
                    if (t.weights[static_cast<std::size_t>(r)][static_cast<std::size_t>(comp)] != expect) return false;
                }
            }
    }
    return true;
}

/// Matrix identity sum_j M(L^e_ij) M(S(L^e_jl)) = delta_il (and with the
/// factors swapped); holds in every module because L S(L) = S(L) L = I.
template <class T>
bool check_l_inverse(const generator_table<T>& t) {
    const sparse_mat<T> id = sparse_mat<T>::identity(t.dim);
    const std::pair<lkind, lkind> families[] = {{lkind::lp, lkind::slp}, {lkind::lm, lkind::slm}};
    for (const auto& [plain, anti] : families)
        for (int i = 1; i <= t.n; ++i)
            for (int l = 1; l <= t.n; ++l) {
                sparse_mat<T> acc_ls(t.dim, t.dim);
                sparse_mat<T> acc_sl(t.dim, t.dim);
                for (int j = 1; j <= t.n; ++j) {
                    acc_ls = acc_ls + t.mat(plain, i, j) * t.mat(anti, j, l);
                    acc_sl = acc_sl + t.mat(anti, i, j) * t.mat(plain, j, l);
                }
                const sparse_mat<T>& expect = (i == l) ? id : sparse_mat<T>(t.dim, t.dim);
                if (acc_ls != expect || acc_sl != expect) return false;
            }
    return true;
}

/// n^2 x n^2 matrix  sum_ij q^{d_ij} e_ii (x) e_jj + (q - 1/q) sum_{i>j} e_ij (x) e_ji
/// in the row-major tensor basis (a, b) -> a*n + b (0-based).
template <class T>
sparse_mat<T> build_r_matrix(int n, const q_context<T>& ctx) {
    if (n < 2) throw std::invalid_argument("build_r_matrix: need n >= 2");
    sparse_mat<T> r(n * n, n * n);
    const T q = ctx.q();
    const T hop = q - T(1) / q;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.set(i * n + j, i * n + j, i == j ? q : T(1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i > j) r.add(i * n + j, j * n + i, hop);
    return r;
}

/// Permutation operator P(v_a (x) v_b) = v_b (x) v_a on C^n (x) C^n.
template <class T>
sparse_mat<T> flip_matrix(int n) {
    sparse_mat<T> p(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p.set(b * n + a, a * n + b, T(1));
    return p;
}

/// L-operator of one family as a single matrix on C^n (x) C^n (x) W:
/// slot 1 gives sum_ij e_ij (x) id (x) M(L_ij), slot 2 puts e_ij in the
/// middle factor.  Used to state the RTT relations as matrix identities.
template <class T>
sparse_mat<T> l_operator(const generator_table<T>& t, lkind k, int slot) {
    if (slot != 1 && slot != 2) throw std::invalid_argument("l_operator: slot must be 1 or 2");
    const int n = t.n;
    const sparse_mat<T> id_n = sparse_mat<T>::identity(n);
    sparse_mat<T> acc(n * n * t.dim, n * n * t.dim);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (!detail::label_in_pattern(k, i, j)) continue;
            sparse_mat<T> e(n, n);
            e.set(i - 1, j - 1, T(1));
            const sparse_mat<T> front = (slot == 1) ? kron(e, id_n) : kron(id_n, e);
            acc = acc + kron(front, t.mat(k, i, j));
        }
    return acc;
}

/// Coideal family parameters: nonnegative s, t with (s, t) != (0, 0).  The
/// pair encodes the weights (c, d) = (s^2, t^2); only the ratio t/s matters
/// for the span, and s = 0 or t = 0 are the two degenerate endpoint cases.
template <class T>
struct coideal_spec {
    T s;
    T t;
    int n = 2;
};

/// The spanning elements of the twisted-conjugation coideal realized in the
/// module of the given table, emitted in a fixed deterministic order:
///   (i)   L+_11 - L-_nn  and  L-_11 - L+_nn,
///   (ii)  s L+_1k + t L-_nk              (2 <= k <= n-1),
///   (iii) t L+_kn + s L-_k1              (2 <= k <= n-1),
///   (iv)  L+_ij and L-_ji                (2 <= i < j <= n-1),
///   (v)   L+_ii - L-_ii                  (2 <= i <= n-1),
///   (vi)  st (L+_1n - L-_n1) - (s^2 - t^2)(L+_11 - L-_11).
/// Element count: 2 + (n-2) + (n-2) + (n-2)(n-3) + (n-2) + 1.
template <class T>
std::vector<sparse_mat<T>> coideal_matrices(const coideal_spec<T>& spec, const generator_table<T>& t) {
    if (spec.n != t.n) throw std::invalid_argument("coideal_matrices: rank mismatch");
    if (spec.s < T(0) || spec.t < T(0))
        throw std::domain_error("coideal_matrices: s and t must be nonnegative");
    if (field_traits<T>::is_zero(spec.s) && field_traits<T>::is_zero(spec.t))
        throw std::domain_error("coideal_matrices: (s, t) = (0, 0) spans no coideal");
    const int n = t.n;
    const T s = spec.s, tt = spec.t;
    std::vector<sparse_mat<T>> out;
    out.push_back(t.mat(lkind::lp, 1, 1) - t.mat(lkind::lm, n, n));
    out.push_back(t.mat(lkind::lm, 1, 1) - t.mat(lkind::lp, n, n));
    for (int k = 2; k <= n - 1; ++k)
        out.push_back(t.mat(lkind::lp, 1, k).scaled(s) + t.mat(lkind::lm, n, k).scaled(tt));
    for (int k = 2; k <= n - 1; ++k)
        out.push_back(t.mat(lkind::lp, k, n).scaled(tt) + t.mat(lkind::lm, k, 1).scaled(s));
    for (int i = 2; i <= n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) {
            out.push_back(t.mat(lkind::lp, i, j));
            out.push_back(t.mat(lkind::lm, j, i));
        }
    for (int i = 2; i <= n - 1; ++i) out.push_back(t.mat(lkind::lp, i, i) - t.mat(lkind::lm, i, i));
    out.push_back((t.mat(lkind::lp, 1, n) - t.mat(lkind::lm, n, 1)).scaled(s * tt) -
                  (t.mat(lkind::lp, 1, 1) - t.mat(lkind::lm, 1, 1)).scaled(s * s - tt * tt));
    return out;
}

/// Central element  C = sum_ij q^{2(n-i)} L+_ij S(L-_ji)  as a matrix on the
/// module; only i <= j contributes because of the triangular patterns.
template <class T>
sparse_mat<T> casimir_matrix(const generator_table<T>& t) {
    q_context<T> ctx(t.q);
    sparse_mat<T> acc(t.dim, t.dim);
    for (int i = 1; i <= t.n; ++i) {
        const T coeff = ctx.q_power(2L * (t.n - i));
        for (int j = i; j <= t.n; ++j)
            acc = acc + (t.mat(lkind::lp, i, j) * t.mat(lkind::slm, j, i)).scaled(coeff);
    }
    return acc;
}

/// Reduced echelon basis of a submodule, carried with the ambient weights.
/// Rows are weight-homogeneous; weights[k] is the weight of rows[k], read
/// off at its pivot coordinate.  Pivot order is insertion order.
template <class T>
struct module_basis {
    int ambient_dim = 0;
    std::vector<std::vector<T>> rows;
    std::vector<int> pivots;
    std::vector<std::vector<int>> weights;

    int dim() const { return static_cast<int>(rows.size()); }

    /// Coordinates of an ambient vector in this basis; rejects vectors
    /// outside the span (exact residual check).
    std::vector<T> coords_of(const std::vector<T>& ambient) const {
        if (static_cast<int>(ambient.size()) != ambient_dim)
            throw std::invalid_argument("module_basis: ambient vector length mismatch");
        std::vector<T> y(rows.size(), T(0));
        std::vector<T> residue = ambient;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const T c = residue[static_cast<std::size_t>(pivots[k])];
            y[k] = c;
            if (field_traits<T>::is_zero(c)) continue;
            const auto& row = rows[k];
            for (std::size_t idx = 0; idx < row.size(); ++idx) residue[idx] -= c * row[idx];
        }
        for (const T& v : residue)
            if (!field_traits<T>::is_zero(v))
                throw std::domain_error("module_basis: vector lies outside the submodule");
        return y;
    }
};

/// Submodule generated by a highest weight vector: the seed must be a
/// weight vector annihilated by every lower-triangular L-_ij (i > j).  The
/// span is closed by repeatedly applying all off-diagonal generator
/// matrices until no new directions appear; diagonal generators act by
/// scalars on weight vectors and cannot enlarge the span.
template <class T>
module_basis<T> submodule_from_hw(const generator_table<T>& t, const std::vector<T>& hw) {
    static_assert(field_traits<T>::exact, "submodule_from_hw requires an exact scalar type");
    if (static_cast<int>(hw.size()) != t.dim)
        throw std::invalid_argument("submodule_from_hw: seed length does not match module dimension");

    int lead = -1;
    for (std::size_t idx = 0; idx < hw.size(); ++idx)
        if (!field_traits<T>::is_zero(hw[idx])) {
            if (lead < 0) lead = static_cast<int>(idx);
            if (t.weights[idx] != t.weights[static_cast<std::size_t>(lead)])
                throw std::invalid_argument("submodule_from_hw: seed is not a weight vector");
        }
    if (lead < 0) throw std::invalid_argument("submodule_from_hw: seed vector is zero");
    for (int i = 2; i <= t.n; ++i)
        for (int j = 1; j < i; ++j)
            for (const T& v : t.mat(lkind::lm, i, j).apply(hw))
                if (!field_traits<T>::is_zero(v))
                    throw std::invalid_argument("submodule_from_hw: seed is not annihilated by the lowering family");

    std::vector<const sparse_mat<T>*> offdiag;
    for (const auto& [key, m] : t.mats)
        if (key[1] != key[2]) offdiag.push_back(&m);

    module_basis<T> basis;
    basis.ambient_dim = t.dim;
    auto insert = [&](std::vector<T> cand) -> bool {
        for (std::size_t k = 0; k < basis.rows.size(); ++k) {
            const T c = cand[static_cast<std::size_t>(basis.pivots[k])];
            if (field_traits<T>::is_zero(c)) continue;
            const auto& row = basis.rows[k];
            for (std::size_t idx = 0; idx < cand.size(); ++idx) cand[idx] -= c * row[idx];
        }
        int pivot = -1;
        for (std::size_t idx = 0; idx < cand.size(); ++idx)
            if (!field_traits<T>::is_zero(cand[idx])) {
                pivot = static_cast<int>(idx);
                break;
            }
        if (pivot < 0) return false;
        const T inv = T(1) / cand[static_cast<std::size_t>(pivot)];
        for (auto& v : cand) v = v * inv;
        for (auto& row : basis.rows) {
            const T c = row[static_cast<std::size_t>(pivot)];
            if (field_traits<T>::is_zero(c)) continue;
            for (std::size_t idx = 0; idx < row.size(); ++idx) row[idx] -= c * cand[idx];
        }
        basis.pivots.push_back(pivot);
        basis.weights.push_back(t.weights[static_cast<std::size_t>(pivot)]);
        basis.rows.push_back(std::move(cand));
        return true;
    };

    insert(hw);
    std::size_t frontier = 0;
    while (frontier < basis.rows.size()) {
        const std::vector<T> current = basis.rows[frontier];
        ++frontier;
        for (const sparse_mat<T>* m : offdiag) insert(m->apply(current));
    }

    for (std::size_t k = 0; k < basis.rows.size(); ++k)
        for (std::size_t idx = 0; idx < basis.rows[k].size(); ++idx)
            if (!field_traits<T>::is_zero(basis.rows[k][idx]) && t.weights[idx] != basis.weights[k])
                throw std::logic_error("submodule_from_hw: basis row mixes weights");
    return basis;
}

/// Matrix of an ambient operator in the basis coordinates; requires the
/// submodule to be invariant (coords_of rejects escapes exactly).
template <class T>
sparse_mat<T> restrict_matrix(const module_basis<T>& basis, const sparse_mat<T>& m) {
    if (m.rows() != basis.ambient_dim || m.cols() != basis.ambient_dim)
        throw std::invalid_argument("restrict_matrix: operator shape does not match ambient dimension");
    sparse_mat<T> out(basis.dim(), basis.dim());
    for (int k = 0; k < basis.dim(); ++k) {
        const std::vector<T> y = basis.coords_of(m.apply(basis.rows[static_cast<std::size_t>(k)]));
        for (int r = 0; r < basis.dim(); ++r) out.set(r, k, y[static_cast<std::size_t>(r)]);
    }
    return out;
}

/// Generator table of the submodule: every stored label restricted to the
/// basis, with the basis weights carried over.
template <class T>
generator_table<T> restrict_table(const generator_table<T>& t, const module_basis<T>& basis) {
    if (basis.ambient_dim != t.dim)
        throw std::invalid_argument("restrict_table: basis does not belong to this module");
    generator_table<T> out;
    out.n = t.n;
    out.dim = basis.dim();
    out.q = t.q;
    out.weights = basis.weights;
    for (const auto& [key, m] : t.mats) out.mats[key] = restrict_matrix(basis, m);
    return out;
}

/// Joint kernel of a family of matrices (the fixed vectors of a coideal).
template <class T>
std::vector<std::vector<T>> fixed_vectors(const std::vector<sparse_mat<T>>& mats) {
    if (mats.empty()) throw std::invalid_argument("fixed_vectors: empty matrix list");
    return kernel_basis(mats, mats.front().cols());
}

/// Joint kernel of the transposes (the fixed covectors: functionals xi with
/// xi(M w) = 0 for every matrix M and vector w).
template <class T>
std::vector<std::vector<T>> fixed_covectors(const std::vector<sparse_mat<T>>& mats) {
    if (mats.empty()) throw std::invalid_argument("fixed_covectors: empty matrix list");
    std::vector<sparse_mat<T>> tr;
    tr.reserve(mats.size());
    for (const auto& m : mats) tr.push_back(m.transpose());
    return kernel_basis(tr, tr.front().cols());
}

}  // namespace qaw

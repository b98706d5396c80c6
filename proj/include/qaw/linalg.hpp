#pragma once

/// Small exact linear algebra kit for the representation engine: row-major
/// sparse matrices with field coefficients, Kronecker products, and dense
/// reduced-row-echelon solves for joint kernels.  Dimensions stay in the
/// hundreds, so dense elimination over exact scalars is the simplest thing
/// that is obviously correct.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qaw/rational.hpp"

namespace qaw {

/// Sparse matrix; each row keeps (column, value) pairs sorted by column.
/// Stored values are structurally nonzero: inserting an exact zero removes
/// the entry, so is_zero / nnz are meaningful for exact scalar types.
template <class T>
class sparse_mat {
public:
    sparse_mat() : rows_(0), cols_(0) {}
    sparse_mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("sparse_mat: negative dimension");
    }

    static sparse_mat identity(int dim) {
        sparse_mat m(dim, dim);
        for (int i = 0; i < dim; ++i) m.set(i, i, T(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::vector<std::pair<int, T>>& row(int r) const {
        check_row_(r);
        return data_[static_cast<std::size_t>(r)];
    }

    T get(int r, int c) const {
        check_row_(r);
        check_col_(c);
        const auto& rv = data_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rv.begin(), rv.end(), c,
                                   [](const std::pair<int, T>& e, int col) { return e.first < col; });
        if (it != rv.end() && it->first == c) return it->second;
        return T(0);
    }

    void set(int r, int c, const T& v) {
        check_row_(r);
        check_col_(c);
        auto& rv = data_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rv.begin(), rv.end(), c,
                                   [](const std::pair<int, T>& e, int col) { return e.first < col; });
        const bool present = (it != rv.end() && it->first == c);
        if (field_traits<T>::is_zero(v)) {
            if (present) rv.erase(it);
            return;
        }
        if (present)
            it->second = v;
        else
            rv.insert(it, {c, v});
    }

    void add(int r, int c, const T& v) {
        if (field_traits<T>::is_zero(v)) return;
        check_row_(r);
        check_col_(c);
        auto& rv = data_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rv.begin(), rv.end(), c,
                                   [](const std::pair<int, T>& e, int col) { return e.first < col; });
        if (it != rv.end() && it->first == c) {
            it->second += v;
            if (field_traits<T>::is_zero(it->second)) rv.erase(it);
        } else {
            rv.insert(it, {c, v});
        }
    }

    bool is_zero() const {
        for (const auto& rv : data_)
            if (!rv.empty()) return false;
        return true;
    }

    std::size_t nnz() const {
        std::size_t total = 0;
        for (const auto& rv : data_) total += rv.size();
        return total;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("sparse_mat: vector length does not match column count");
        std::vector<T> y(static_cast<std::size_t>(rows_), T(0));
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
                y[static_cast<std::size_t>(r)] += v * x[static_cast<std::size_t>(c)];
        return y;
    }

    sparse_mat transpose() const {
        sparse_mat t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
                t.data_[static_cast<std::size_t>(c)].push_back({r, v});
        return t;  // columns visited in increasing r, so each row stays sorted
    }

    sparse_mat scaled(const T& s) const {
        sparse_mat m(rows_, cols_);
        if (field_traits<T>::is_zero(s)) return m;
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
                m.data_[static_cast<std::size_t>(r)].push_back({c, v * s});
        return m;
    }

    friend sparse_mat operator+(const sparse_mat& a, const sparse_mat& b) {
        a.check_same_shape_(b, "operator+");
        sparse_mat m = a;
        for (int r = 0; r < b.rows_; ++r)
            for (const auto& [c, v] : b.data_[static_cast<std::size_t>(r)]) m.add(r, c, v);
        return m;
    }

    friend sparse_mat operator-(const sparse_mat& a, const sparse_mat& b) {
        a.check_same_shape_(b, "operator-");
        sparse_mat m = a;
        for (int r = 0; r < b.rows_; ++r)
            for (const auto& [c, v] : b.data_[static_cast<std::size_t>(r)]) m.add(r, c, -v);
        return m;
    }

    friend sparse_mat operator*(const sparse_mat& a, const sparse_mat& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("sparse_mat: inner dimensions do not match");
        sparse_mat m(a.rows_, b.cols_);
        std::vector<T> acc(static_cast<std::size_t>(b.cols_), T(0));
        std::vector<int> touched;
        for (int r = 0; r < a.rows_; ++r) {
            touched.clear();
            for (const auto& [k, av] : a.data_[static_cast<std::size_t>(r)])
                for (const auto& [c, bv] : b.data_[static_cast<std::size_t>(k)]) {
                    if (field_traits<T>::is_zero(acc[static_cast<std::size_t>(c)])) touched.push_back(c);
                    acc[static_cast<std::size_t>(c)] += av * bv;
                }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            auto& rv = m.data_[static_cast<std::size_t>(r)];
            for (int c : touched) {
                T& cell = acc[static_cast<std::size_t>(c)];
                if (!field_traits<T>::is_zero(cell)) rv.push_back({c, cell});
                cell = T(0);
            }
        }
        return m;
    }

    bool operator==(const sparse_mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const sparse_mat& o) const { return !(*this == o); }

private:
    void check_row_(int r) const {
        if (r < 0 || r >= rows_) throw std::out_of_range("sparse_mat: row index out of range");
    }
    void check_col_(int c) const {
        if (c < 0 || c >= cols_) throw std::out_of_range("sparse_mat: column index out of range");
    }
    void check_same_shape_(const sparse_mat& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("sparse_mat: shape mismatch in ") + what);
    }

    int rows_;
    int cols_;
    std::vector<std::vector<std::pair<int, T>>> data_;
};

/// Kronecker product with row-major index convention:
/// (a kron b)[ra*b.rows + rb][ca*b.cols + cb] = a[ra][ca] * b[rb][cb].
template <class T>
sparse_mat<T> kron(const sparse_mat<T>& a, const sparse_mat<T>& b) {
    sparse_mat<T> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ra = 0; ra < a.rows(); ++ra)
        for (const auto& [ca, va] : a.row(ra))
            for (int rb = 0; rb < b.rows(); ++rb)
                for (const auto& [cb, vb] : b.row(rb))
                    m.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
    return m;
}

/// In-place reduced row echelon form over an exact field; returns the pivot
/// column of each surviving row.  Zero rows are dropped, pivots are
/// normalized to 1 and cleared above and below, and pivot columns increase
/// strictly (leftmost-nonzero pivot rule keeps the result deterministic).
template <class T>
std::vector<int> rref_in_place(std::vector<std::vector<T>>& m) {
    static_assert(field_traits<T>::exact, "rref_in_place requires an exact scalar type");
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("rref_in_place: ragged matrix");
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < cols && next_row < m.size(); ++col) {
        std::size_t sel = next_row;
        while (sel < m.size() && field_traits<T>::is_zero(m[sel][col])) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[next_row], m[sel]);
        const T inv = T(1) / m[next_row][col];
        for (std::size_t j = col; j < cols; ++j) m[next_row][j] = m[next_row][j] * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == next_row) continue;
            const T factor = m[r][col];
            if (field_traits<T>::is_zero(factor)) continue;
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= factor * m[next_row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++next_row;
    }
    m.resize(next_row);
    return pivots;
}

/// Basis of the joint right kernel {x : m_i x = 0 for all i}.  The stacked
/// rows are reduced to echelon form and one kernel vector is read off per
/// free column; every returned vector is re-checked against each input
/// matrix, so a wrong answer cannot escape silently.
template <class T>
std::vector<std::vector<T>> kernel_basis(const std::vector<sparse_mat<T>>& mats, int cols) {
    static_assert(field_traits<T>::exact, "kernel_basis requires an exact scalar type");
    if (cols <= 0) throw std::invalid_argument("kernel_basis: need a positive column count");
    std::vector<std::vector<T>> dense;
    for (const auto& m : mats) {
        if (m.cols() != cols) throw std::invalid_argument("kernel_basis: column count mismatch");
        for (int r = 0; r < m.rows(); ++r) {
            if (m.row(r).empty()) continue;
            std::vector<T> row(static_cast<std::size_t>(cols), T(0));
            for (const auto& [c, v] : m.row(r)) row[static_cast<std::size_t>(c)] = v;
            dense.push_back(std::move(row));
        }
    }
    const std::vector<int> pivots = rref_in_place(dense);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<std::vector<T>> kernel;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        std::vector<T> x(static_cast<std::size_t>(cols), T(0));
        x[static_cast<std::size_t>(free_col)] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[static_cast<std::size_t>(pivots[r])] = -dense[r][static_cast<std::size_t>(free_col)];
        kernel.push_back(std::move(x));
    }
    for (const auto& x : kernel)
        for (const auto& m : mats)
            for (const T& y : m.apply(x))
                if (!field_traits<T>::is_zero(y))
                    throw std::logic_error("kernel_basis: verification failed, kernel vector not annihilated");
    return kernel;
}

}  // namespace qaw

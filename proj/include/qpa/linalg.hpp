#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <vector>

namespace qpa {

/// Sparse vector: (index, value) pairs sorted by index, values nonzero.
template <class S>
using SpVec = std::vector<std::pair<int, S>>;

template <class S>
SpVec<S> spvec_from_map(const std::map<int, S>& m) {
    SpVec<S> v;
    v.reserve(m.size());
    for (const auto& [i, x] : m)
        if (!x.is_zero()) v.emplace_back(i, x);
    return v;
}

/// dst += c * src
template <class S>
void spvec_axpy(std::map<int, S>& dst, const S& c, const SpVec<S>& src) {
    for (const auto& [i, x] : src) {
        auto it = dst.find(i);
        if (it == dst.end()) {
            S v = c * x;
            if (!v.is_zero()) dst.emplace(i, std::move(v));
        } else {
            it->second += c * x;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

/// Column-major sparse matrix over an exact field.
template <class S>
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<SpVec<S>> col;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}

    static SparseMat identity(int n, const S& one) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.col[static_cast<size_t>(i)].emplace_back(i, one);
        return m;
    }

    void add_to(int r, int c, const S& v) {
        if (v.is_zero()) return;
        auto& cc = col[static_cast<size_t>(c)];
        auto it = std::lower_bound(cc.begin(), cc.end(), r,
                                   [](const auto& a, int b) { return a.first < b; });
        if (it != cc.end() && it->first == r) {
            it->second += v;
            if (it->second.is_zero()) cc.erase(it);
        } else {
            cc.emplace(it, r, v);
        }
    }

    S get(int r, int c) const {
        const auto& cc = col[static_cast<size_t>(c)];
        auto it = std::lower_bound(cc.begin(), cc.end(), r,
                                   [](const auto& a, int b) { return a.first < b; });
        if (it != cc.end() && it->first == r) return it->second;
        return S();
    }

    bool is_zero() const {
        for (const auto& c : col)
            if (!c.empty()) return false;
        return true;
    }

    size_t nnz() const {
        size_t n = 0;
        for (const auto& c : col) n += c.size();
        return n;
    }

    SpVec<S> apply(const SpVec<S>& x) const {
        std::map<int, S> acc;
        for (const auto& [j, v] : x) spvec_axpy(acc, v, col[static_cast<size_t>(j)]);
        return spvec_from_map(acc);
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        assert(a.cols == b.rows);
        SparseMat r(a.rows, b.cols);
        for (int j = 0; j < b.cols; ++j) {
            std::map<int, S> acc;
            for (const auto& [k, v] : b.col[static_cast<size_t>(j)])
                spvec_axpy(acc, v, a.col[static_cast<size_t>(k)]);
            r.col[static_cast<size_t>(j)] = spvec_from_map(acc);
        }
        return r;
    }

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        assert(a.rows == b.rows && a.cols == b.cols);
        SparseMat r(a.rows, a.cols);
        for (int j = 0; j < a.cols; ++j) {
            std::map<int, S> acc(a.col[static_cast<size_t>(j)].begin(), a.col[static_cast<size_t>(j)].end());
            for (const auto& [i, v] : b.col[static_cast<size_t>(j)]) {
                auto it = acc.find(i);
                if (it == acc.end()) acc.emplace(i, v);
                else {
                    it->second += v;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
            r.col[static_cast<size_t>(j)] = spvec_from_map(acc);
        }
        return r;
    }

    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) { return a + b.negated(); }

    SparseMat negated() const {
        SparseMat r(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[static_cast<size_t>(j)])
                r.col[static_cast<size_t>(j)].emplace_back(i, -v);
        return r;
    }

    SparseMat scaled(const S& c) const {
        SparseMat r(rows, cols);
        if (c.is_zero()) return r;
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[static_cast<size_t>(j)]) {
                S w = v * c;
                if (!w.is_zero()) r.col[static_cast<size_t>(j)].emplace_back(i, w);
            }
        return r;
    }

    SparseMat transposed() const {
        SparseMat r(cols, rows);
        std::vector<std::map<int, S>> acc(static_cast<size_t>(rows));
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[static_cast<size_t>(j)]) acc[static_cast<size_t>(i)][j] = v;
        for (int i = 0; i < rows; ++i)
            r.col[static_cast<size_t>(i)] = spvec_from_map(acc[static_cast<size_t>(i)]);
        return r;
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
    }
};

/// Incremental reduced row echelon basis with deterministic pivots
/// (each stored row is normalized to leading coefficient 1).
template <class S>
class Echelon {
public:
    std::map<int, SpVec<S>> pivot_rows;

    SpVec<S> reduce(const SpVec<S>& r) const {
        std::map<int, S> acc(r.begin(), r.end());
        for (auto it = acc.begin(); it != acc.end();) {
            auto pr = pivot_rows.find(it->first);
            if (pr == pivot_rows.end()) {
                ++it;
                continue;
            }
            S c = -it->second;
            int idx = it->first;
            spvec_axpy(acc, c, pr->second);
            it = acc.upper_bound(idx);
        }
        return spvec_from_map(acc);
    }

    /// Adds a row (reducing first); returns true if it enlarged the span.
    bool add(const SpVec<S>& row) {
        SpVec<S> r = reduce(row);
        if (r.empty()) return false;
        int lead = r.front().first;
        S inv = r.front().second.inv();
        for (auto& [i, v] : r) v = v * inv;
        // keep existing rows fully reduced against the new pivot
        for (auto& [pc, pr] : pivot_rows) {
            std::map<int, S> acc(pr.begin(), pr.end());
            auto it = acc.find(lead);
            if (it != acc.end()) {
                S c = -it->second;
                spvec_axpy(acc, c, r);
                pr = spvec_from_map(acc);
            }
        }
        pivot_rows.emplace(lead, std::move(r));
        return true;
    }

    bool contains(const SpVec<S>& row) const { return reduce(row).empty(); }
    int rank() const { return static_cast<int>(pivot_rows.size()); }
};

/// Rank of a list of sparse rows.
template <class S>
int sparse_rank(const std::vector<SpVec<S>>& rows) {
    Echelon<S> e;
    for (const auto& r : rows) e.add(r);
    return e.rank();
}

/// Nullspace basis of the homogeneous system given by sparse rows over ncols
/// unknowns; deterministic order (free columns ascending).
template <class S>
std::vector<SpVec<S>> sparse_nullspace(const std::vector<SpVec<S>>& rows, int ncols, const S& one) {
    Echelon<S> e;
    for (const auto& r : rows) e.add(r);
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (const auto& [c, _] : e.pivot_rows) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<SpVec<S>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::map<int, S> v;
        v[f] = one;
        for (const auto& [pc, pr] : e.pivot_rows) {
            // pivot row: x_pc + sum coeff * x_free = 0  =>  x_pc = -coeff_f
            for (const auto& [i, cval] : pr)
                if (i == f) v[pc] = -cval;
        }
        basis.push_back(spvec_from_map(v));
    }
    return basis;
}

/// Small dense matrix over an exact field.
template <class S>
struct DenseMat {
    int rows = 0, cols = 0;
    std::vector<S> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

    S& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
    const S& at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }

    static DenseMat identity(int n, const S& one) {
        DenseMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    friend DenseMat operator*(const DenseMat& x, const DenseMat& y) {
        assert(x.cols == y.rows);
        DenseMat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const S& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    r.at(i, j) += v * y.at(k, j);
                }
            }
        return r;
    }
    friend DenseMat operator+(const DenseMat& x, const DenseMat& y) {
        DenseMat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend DenseMat operator-(const DenseMat& x, const DenseMat& y) {
        DenseMat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    DenseMat scaled(const S& c) const {
        DenseMat r = *this;
        for (auto& v : r.a) v = v * c;
        return r;
    }
    friend bool operator==(const DenseMat& x, const DenseMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    bool is_zero() const {
        for (const auto& v : a)
            if (!v.is_zero()) return false;
        return true;
    }

    SparseMat<S> to_sparse() const {
        SparseMat<S> m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i)
                if (!at(i, j).is_zero()) m.col[static_cast<size_t>(j)].emplace_back(i, at(i, j));
        return m;
    }

    static DenseMat from_sparse(const SparseMat<S>& m) {
        DenseMat r(m.rows, m.cols);
        for (int j = 0; j < m.cols; ++j)
            for (const auto& [i, v] : m.col[static_cast<size_t>(j)]) r.at(i, j) = v;
        return r;
    }

    int rank() const {
        std::vector<SpVec<S>> rws;
        for (int i = 0; i < rows; ++i) {
            SpVec<S> r;
            for (int j = 0; j < cols; ++j)
                if (!at(i, j).is_zero()) r.emplace_back(j, at(i, j));
            rws.push_back(std::move(r));
        }
        return sparse_rank(rws);
    }

    /// Inverse of a square matrix; throws if singular.
    DenseMat inverse(const S& one) const {
        assert(rows == cols);
        DenseMat m = *this, inv = identity(rows, one);
        for (int c = 0; c < cols; ++c) {
            int piv = -1;
            for (int r = c; r < rows; ++r)
                if (!m.at(r, c).is_zero()) { piv = r; break; }
            if (piv < 0) throw std::domain_error("singular matrix");
            if (piv != c)
                for (int j = 0; j < cols; ++j) {
                    std::swap(m.at(piv, j), m.at(c, j));
                    std::swap(inv.at(piv, j), inv.at(c, j));
                }
            S d = m.at(c, c).inv();
            for (int j = 0; j < cols; ++j) {
                m.at(c, j) = m.at(c, j) * d;
                inv.at(c, j) = inv.at(c, j) * d;
            }
            for (int r = 0; r < rows; ++r) {
                if (r == c || m.at(r, c).is_zero()) continue;
                S f = m.at(r, c);
                for (int j = 0; j < cols; ++j) {
                    m.at(r, j) -= f * m.at(c, j);
                    inv.at(r, j) -= f * inv.at(c, j);
                }
            }
        }
        return inv;
    }
};

} // namespace qpa

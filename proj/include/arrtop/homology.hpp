#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrtop/nerve.hpp"
#include "arrtop/rational.hpp"

namespace arrtop {

/// Column-major sparse integer matrix; each column is sorted by row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    static SparseMatrix from_dense(const std::vector<std::vector<long long>>& dense)
    {
        SparseMatrix m(dense.size(), dense.empty() ? 0 : dense.front().size());
        for (std::size_t c = 0; c < m.cols; ++c)
            for (std::size_t r = 0; r < m.rows; ++r)
                if (dense[r][c] != 0)
                    m.columns[c].push_back({r, Integer(dense[r][c])});
        return m;
    }

    Integer at(std::size_t r, std::size_t c) const
    {
        for (const auto& [row, value] : columns.at(c))
            if (row == r)
                return value;
        return 0;
    }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& col : columns)
            n += col.size();
        return n;
    }
};

/// boundaries[k] maps k-chains to (k-1)-chains; boundaries[0] is the zero map.
struct ChainComplex {
    std::vector<std::size_t> ranks;          // number of k-cells
    std::vector<SparseMatrix> boundaries;    // same length as ranks

    /// Verifies the composite of consecutive boundary maps vanishes.
    bool boundary_squared_zero() const
    {
        for (std::size_t k = 2; k < boundaries.size(); ++k) {
            const auto& outer = boundaries[k - 1];
            const auto& inner = boundaries[k];
            for (const auto& col : inner.columns) {
                std::map<std::size_t, Integer> acc;
                for (const auto& [mid, coeff] : col)
                    for (const auto& [row, value] : outer.columns[mid])
                        acc[row] += coeff * value;
                for (const auto& [row, value] : acc)
                    if (value != 0)
                        return false;
            }
        }
        return true;
    }
};

/// Simplicial chains of a trisp: entry Σ(-1)^i over face incidences d_i.
inline ChainComplex chain_complex(const Trisp& t)
{
    if (!t.satisfies_face_identities())
        throw ConsistencyError("chain_complex: face maps violate the semi-simplicial identities");
    ChainComplex cc;
    for (std::size_t k = 0; k < t.levels().size(); ++k) {
        cc.ranks.push_back(t.level(k).size());
        if (k == 0) {
            cc.boundaries.emplace_back(0, t.level(0).size());
            continue;
        }
        SparseMatrix m(t.level(k - 1).size(), t.level(k).size());
        for (std::size_t j = 0; j < t.level(k).size(); ++j) {
            std::map<std::size_t, Integer> col;
            const auto& faces = t.level(k)[j].faces;
            for (std::size_t i = 0; i < faces.size(); ++i)
                col[faces[i]] += (i % 2 == 0) ? 1 : -1;
            for (auto& [row, value] : col)
                if (value != 0)
                    m.columns[j].push_back({row, value});
        }
        cc.boundaries.push_back(std::move(m));
    }
    if (!cc.boundary_squared_zero())
        throw ConsistencyError("chain_complex: boundary of boundary is nonzero");
    return cc;
}

namespace detail {

using boost::multiprecision::abs;

/// Smith normal form diagonal of a small dense matrix (nonzero entries only).
inline std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a)
{
    std::vector<Integer> diagonal;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            // Pivot on a minimal nonzero absolute value.
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == rows)
                return diagonal;
            std::swap(a[t], a[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);

            bool dirty = false;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0)
                    continue;
                Integer q = a[r][t] / a[t][t];
                for (std::size_t c = t; c < cols; ++c)
                    a[r][c] -= q * a[t][c];
                if (a[r][t] != 0)
                    dirty = true;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0)
                    continue;
                Integer q = a[t][c] / a[t][t];
                for (std::size_t r = t; r < rows; ++r)
                    a[r][c] -= q * a[r][t];
                if (a[t][c] != 0)
                    dirty = true;
            }
            if (dirty)
                continue;
            // Divisibility: fold a row with an indivisible entry into row t.
            std::size_t bad = rows;
            for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == rows)
                break;
            for (std::size_t c = t; c < cols; ++c)
                a[t][c] += a[bad][c];
        }
        diagonal.push_back(abs(a[t][t]));
    }
    return diagonal;
}

}  // namespace detail

/**
 * Nonzero Smith invariants of an integer matrix, sorted so that each divides
 * the next.  Unit pivots are eliminated sparsely first; the remaining block
 * (usually tiny) goes through a dense Smith reduction.
 */
inline std::vector<Integer> smith_invariants(const SparseMatrix& input)
{
    std::vector<std::map<std::size_t, Integer>> cols(input.cols);
    std::vector<std::set<std::size_t>> row_cols(input.rows);
    for (std::size_t c = 0; c < input.cols; ++c)
        for (const auto& [r, v] : input.columns[c])
            if (v != 0) {
                cols[c][r] = v;
                row_cols[r].insert(c);
            }

    std::size_t unit_pivots = 0;
    std::vector<char> removed_row(input.rows, 0);
    for (std::size_t c = 0; c < input.cols; ++c) {
        if (cols[c].empty())
            continue;
        std::size_t best = input.rows;
        for (const auto& [r, v] : cols[c])
            if ((v == 1 || v == -1) && (best == input.rows || row_cols[r].size() < row_cols[best].size()))
                best = r;
        if (best == input.rows)
            continue;
        const Integer pivot = cols[c][best];
        std::vector<std::size_t> others(row_cols[best].begin(), row_cols[best].end());
        for (std::size_t other : others) {
            if (other == c)
                continue;
            Integer factor = cols[other][best] * pivot;  // pivot is ±1, so this is a/p
            for (const auto& [r, v] : cols[c]) {
                Integer& entry = cols[other][r];
                entry -= factor * v;
                if (entry == 0) {
                    cols[other].erase(r);
                    row_cols[r].erase(other);
                } else {
                    row_cols[r].insert(other);
                }
            }
        }
        for (const auto& [r, v] : cols[c])
            row_cols[r].erase(c);
        cols[c].clear();
        removed_row[best] = 1;
        ++unit_pivots;
    }

    std::vector<std::size_t> live_cols, live_rows;
    for (std::size_t c = 0; c < input.cols; ++c)
        if (!cols[c].empty())
            live_cols.push_back(c);
    for (std::size_t r = 0; r < input.rows; ++r)
        if (!row_cols[r].empty())
            live_rows.push_back(r);
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        row_pos[live_rows[i]] = i;
    std::vector<std::vector<Integer>> dense(live_rows.size(),
                                            std::vector<Integer>(live_cols.size(), 0));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
        for (const auto& [r, v] : cols[live_cols[j]])
            dense[row_pos.at(r)][j] = v;

    std::vector<Integer> result(unit_pivots, Integer(1));
    for (auto& d : detail::dense_smith(std::move(dense)))
        result.push_back(d);
    std::sort(result.begin(), result.end());
    return result;
}

struct HomologyResult {
    std::vector<long long> betti;
    std::vector<std::vector<Integer>> torsion;  // per dimension, entries > 1

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t k = 0; k < betti.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * betti[k];
        return chi;
    }

    bool torsion_free() const
    {
        return std::all_of(torsion.begin(), torsion.end(),
                           [](const auto& t) { return t.empty(); });
    }

    friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

inline HomologyResult homology(const ChainComplex& cc)
{
    const std::size_t top = cc.ranks.size();
    std::vector<std::vector<Integer>> invariants(top + 1);
    for (std::size_t k = 1; k < top; ++k)
        invariants[k] = smith_invariants(cc.boundaries[k]);
    HomologyResult result;
    for (std::size_t k = 0; k < top; ++k) {
        long long rank_k = static_cast<long long>(invariants[k].size());
        long long rank_next = static_cast<long long>(invariants[k + 1].size());
        result.betti.push_back(static_cast<long long>(cc.ranks[k]) - rank_k - rank_next);
        std::vector<Integer> tors;
        for (const auto& d : invariants[k + 1])
            if (d > 1)
                tors.push_back(d);
        result.torsion.push_back(std::move(tors));
    }
    return result;
}

inline HomologyResult homology(const Trisp& t) { return homology(chain_complex(t)); }

/// Reduced homology: betti_0 lowered by one (for a nonempty space).
inline HomologyResult reduced(HomologyResult h)
{
    if (!h.betti.empty())
        h.betti[0] -= 1;
    return h;
}

}  // namespace arrtop

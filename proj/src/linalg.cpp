#include "mfk/linalg.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "mfk/budget.hpp"

namespace mfk {

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::transposed() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    QMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (mfk::is_zero(a)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Rat& b = o.at(k, j);
                if (!mfk::is_zero(b)) r.at(i, j) += a * b;
            }
        }
    return r;
}

namespace {

// Scales a row to a primitive integer vector; keeps Bareiss updates integral.
void primitivize_row(QMat& m, std::size_t i) {
    mpz_class l(1), g(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Rat& q = m.at(i, j);
        if (mfk::is_zero(q)) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (mfk::is_zero(m.at(i, j))) continue;
        m.at(i, j) *= Rat(l);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.at(i, j).get_num().get_mpz_t());
    }
    if (g > 1) {
        Rat inv(1, g);
        inv.canonicalize();
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!mfk::is_zero(m.at(i, j))) m.at(i, j) *= inv;
    }
}

// Fraction-free (Bareiss) forward sweep followed by back substitution to
// reduced form. `parallel` toggles the OpenMP row-update loops; both paths
// perform identical arithmetic per row, so their outputs match exactly.
EchelonForm rref_impl(QMat m, bool parallel) {
    const std::size_t nr = m.rows(), nc = m.cols();
    EchelonForm out;
    for (std::size_t i = 0; i < nr; ++i) primitivize_row(m, i);

    std::vector<std::size_t>& pivots = out.pivot_cols;
    Rat prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && mfk::is_zero(m.at(p, c))) ++p;
        if (p == nr) continue;
        if (p != r)
            for (std::size_t j = 0; j < nc; ++j) std::swap(m.at(r, j), m.at(p, j));
        const Rat pivot = m.at(r, c);
        BudgetScope::charge(nr - r);

        const std::int64_t lo = static_cast<std::int64_t>(r) + 1;
        const std::int64_t hi = static_cast<std::int64_t>(nr);
#pragma omp parallel for schedule(dynamic, 8) if (parallel && hi - lo > 16)
        for (std::int64_t i = lo; i < hi; ++i) {
            const Rat f = m.at(i, c);
            for (std::size_t j = c + 1; j < nc; ++j) {
                m.at(i, j) = (pivot * m.at(i, j) - f * m.at(r, j)) / prev;
            }
            m.at(i, c) = 0;
        }
        prev = pivot;
        pivots.push_back(c);
        ++r;
    }

    // Normalize pivots to 1 and clear above.
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t c = pivots[k];
        const Rat pivot = m.at(k, c);
        for (std::size_t j = c; j < nc; ++j)
            if (!mfk::is_zero(m.at(k, j))) m.at(k, j) /= pivot;
        const std::int64_t hi = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(dynamic, 8) if (parallel && hi > 16)
        for (std::int64_t i = 0; i < hi; ++i) {
            const Rat f = m.at(i, c);
            if (mfk::is_zero(f)) continue;
            for (std::size_t j = c; j < nc; ++j)
                if (!mfk::is_zero(m.at(k, j))) m.at(i, j) -= f * m.at(k, j);
        }
    }
    out.mat = std::move(m);
    return out;
}

}  // namespace

EchelonForm rref_serial(QMat m) { return rref_impl(std::move(m), false); }
EchelonForm rref_parallel(QMat m) { return rref_impl(std::move(m), true); }
EchelonForm rref(QMat m) { return rref_impl(std::move(m), true); }

std::size_t rank(const QMat& m) { return rref(m).rank(); }

std::vector<std::vector<Rat>> kernel_basis(const QMat& m) {
    const std::size_t nc = m.cols();
    EchelonForm ech = rref(m);
    std::vector<bool> is_pivot(nc, false);
    for (auto c : ech.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(nc, Rat(0));
        v[f] = 1;
        for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k)
            v[ech.pivot_cols[k]] = -ech.mat.at(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(const QMat& m, const std::vector<Rat>& rhs) {
    if (rhs.size() != m.rows()) throw DimensionError("rhs length must equal row count");
    QMat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    EchelonForm ech = rref(std::move(aug));
    for (auto c : ech.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    std::vector<Rat> x(m.cols(), Rat(0));
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k)
        x[ech.pivot_cols[k]] = ech.mat.at(k, m.cols());
    return x;
}

// ---------------------------------------------------------------------------
// Sparse machinery
// ---------------------------------------------------------------------------

const Rat* SparseVec::find(int col) const {
    auto it = std::lower_bound(nz.begin(), nz.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != nz.end() && it->first == col) return &it->second;
    return nullptr;
}

void SparseVec::axpy(const Rat& c, const SparseVec& other) {
    if (mfk::is_zero(c) || other.nz.empty()) return;
    std::vector<std::pair<int, Rat>> out;
    out.reserve(nz.size() + other.nz.size());
    std::size_t i = 0, j = 0;
    while (i < nz.size() && j < other.nz.size()) {
        if (nz[i].first == other.nz[j].first) {
            Rat v = nz[i].second + c * other.nz[j].second;
            if (!mfk::is_zero(v)) out.emplace_back(nz[i].first, std::move(v));
            ++i, ++j;
        } else if (nz[i].first < other.nz[j].first) {
            out.push_back(std::move(nz[i++]));
        } else {
            out.emplace_back(other.nz[j].first, c * other.nz[j].second);
            ++j;
        }
    }
    while (i < nz.size()) out.push_back(std::move(nz[i++]));
    while (j < other.nz.size()) {
        out.emplace_back(other.nz[j].first, c * other.nz[j].second);
        ++j;
    }
    nz = std::move(out);
}

SparseVec sparse_from_dense(const std::vector<Rat>& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!mfk::is_zero(v[i])) s.nz.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

std::vector<Rat> sparse_to_dense(const SparseVec& v, int ncols) {
    std::vector<Rat> d(ncols, Rat(0));
    for (const auto& [c, x] : v.nz) d[c] = x;
    return d;
}

SparseEliminator::SparseEliminator(int ncols, bool parallel)
    : ncols_(ncols), parallel_(parallel), pivot_row_of_col_(ncols, -1) {}

void SparseEliminator::store(SparseVec v) {
    const int lead = v.leading();
    pivot_row_of_col_[lead] = static_cast<int>(rows_.size());
    leading_.push_back(lead);
    rows_.push_back(std::move(v));
}

SparseVec SparseEliminator::reduce(SparseVec v) const {
    // Eliminating the lowest pivot-hitting column introduces only higher
    // columns (each stored row starts at its leading column), so one left to
    // right pass per round makes progress.
    for (;;) {
        int hit = -1;
        for (const auto& [c, x] : v.nz) {
            if (pivot_row_of_col_[c] >= 0) {
                hit = c;
                break;
            }
        }
        if (hit < 0) return v;
        const SparseVec& p = rows_[pivot_row_of_col_[hit]];
        Rat f = -(*v.find(hit)) / (*p.find(hit));
        BudgetScope::charge(1 + p.nz.size() / 8);
        v.axpy(f, p);
    }
}

bool SparseEliminator::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    store(std::move(v));
    return true;
}

void SparseEliminator::add_rows(std::vector<SparseVec> incoming) {
    // Phase 1: reduce everything against the existing echelon (independent
    // per row, so this loop is parallel).
    std::vector<SparseVec> active;
    active.reserve(incoming.size());
    if (!rows_.empty()) {
        const std::int64_t n = static_cast<std::int64_t>(incoming.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel_ && n > 8)
        for (std::int64_t i = 0; i < n; ++i) incoming[i] = reduce(std::move(incoming[i]));
    }
    for (auto& v : incoming)
        if (!v.empty()) active.push_back(std::move(v));

    // Phase 2: greedy elimination among the new rows. The shortest row
    // becomes the next pivot; all others holding its leading column get
    // updated in parallel.
    std::vector<char> done(active.size(), 0);
    std::size_t remaining = active.size();
    while (remaining > 0) {
        std::size_t best = active.size();
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (done[i] || active[i].empty()) continue;
            if (best == active.size() || active[i].nz.size() < active[best].nz.size()) best = i;
        }
        if (best == active.size()) break;
        done[best] = 1;
        --remaining;
        const SparseVec pivot_row = active[best];
        const int c = pivot_row.leading();
        const Rat pv = pivot_row.nz.front().second;
        BudgetScope::charge(1 + pivot_row.nz.size());

        const std::int64_t n = static_cast<std::int64_t>(active.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel_ && n > 8)
        for (std::int64_t i = 0; i < n; ++i) {
            if (done[i] || active[i].empty()) continue;
            const Rat* x = active[i].find(c);
            if (!x) continue;
            Rat f = -(*x) / pv;
            active[i].axpy(f, pivot_row);
        }
        for (std::size_t i = 0; i < active.size(); ++i)
            if (!done[i] && active[i].empty()) {
                done[i] = 1;
                --remaining;
            }
        store(pivot_row);
    }
}

int sparse_rank(std::vector<SparseVec> rows, int ncols, bool parallel) {
    SparseEliminator el(ncols, parallel);
    el.add_rows(std::move(rows));
    return el.rank();
}

std::vector<SparseVec> sparse_kernel_basis(std::vector<SparseVec> rows, int ncols, bool parallel) {
    SparseEliminator el(ncols, parallel);
    el.add_rows(std::move(rows));

    std::vector<bool> is_pivot(ncols, false);
    for (int c : el.leading_cols()) is_pivot[c] = true;

    // Rows ordered by decreasing leading column: when a pivot value is
    // computed, every later column it references is already known.
    std::vector<int> order(el.rows().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return el.leading_cols()[a] > el.leading_cols()[b];
    });

    std::vector<SparseVec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[f] = -1;
        for (int idx : order) {
            const SparseVec& row = el.rows()[idx];
            const int c = row.leading();
            Rat acc(0);
            for (const auto& [j, x] : row.nz)
                if (j != c && !mfk::is_zero(v[j])) acc += x * v[j];
            v[c] = -acc / row.nz.front().second;
        }
        basis.push_back(sparse_from_dense(v));
    }
    return basis;
}

TaggedRowSpace::TaggedRowSpace(int ncols, int ntags)
    : ncols_(ncols), ntags_(ntags), pivot_row_of_col_(ncols, -1) {}

std::pair<SparseVec, SparseVec> TaggedRowSpace::reduce(SparseVec v) const {
    SparseVec tag;
    for (;;) {
        int hit = -1;
        for (const auto& [c, x] : v.nz) {
            if (pivot_row_of_col_[c] >= 0) {
                hit = c;
                break;
            }
        }
        if (hit < 0) return {std::move(v), std::move(tag)};
        const auto& [p, ptag] = rows_[pivot_row_of_col_[hit]];
        Rat f = -(*v.find(hit)) / (*p.find(hit));
        BudgetScope::charge(1 + p.nz.size() / 8);
        v.axpy(f, p);
        tag.axpy(f, ptag);
    }
}

void TaggedRowSpace::add(SparseVec v, SparseVec tag) {
    auto [res, acc] = reduce(std::move(v));
    if (res.empty()) return;
    acc.axpy(Rat(1), tag);
    pivot_row_of_col_[res.leading()] = static_cast<int>(rows_.size());
    rows_.emplace_back(std::move(res), std::move(acc));
}

}  // namespace mfk

#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mrlab/codes.hpp"
#include "mrlab/enumeration.hpp"
#include "mrlab/parallel.hpp"
#include "mrlab/tensor_pattern.hpp"

namespace mrlab {

// (m,n,a,b)-tensor code: column code (m, m-a) tensored with row code
// (n, n-b). Codewords are m x n matrices whose rows lie in the row code and
// columns in the column code. Grid cell (i,j) maps to flat index i*n + j,
// which is what makes I_m (x) H_row act row by row in the cached structured
// parity check [I_m (x) H_row ; H_col (x) D], D the first n-b rows of I_n.
// The stacked matrix has mb + na - ab rows; it has exactly that rank (so it
// is a parity check for the tensor code and nothing more) whenever the first
// n-b coordinates of the row code form an information set, which holds in
// particular for every MDS row code.
class TensorCode {
  public:
    TensorCode(LinearCode col, LinearCode row)
        : col_(std::move(col)), row_(std::move(row)), parity_(build_parity(col_, row_)) {}

    std::size_t m() const { return col_.n(); }
    std::size_t n() const { return row_.n(); }
    std::size_t a() const { return col_.n() - col_.k(); }
    std::size_t b() const { return row_.n() - row_.k(); }
    const LinearCode& col_code() const { return col_; }
    const LinearCode& row_code() const { return row_; }
    const FieldSpec& field() const { return col_.field(); }

    // (mb + na - ab) x mn block parity-check matrix
    const Matrix& parity_check() const { return parity_; }

    std::size_t parity_rows() const { return m() * b() + n() * a() - a() * b(); }

  private:
    static Matrix build_parity(const LinearCode& col, const LinearCode& row) {
        if (!(col.field() == row.field())) throw std::invalid_argument("field mismatch between codes");
        const FieldSpec& f = col.field();
        const std::size_t m = col.n(), n = row.n(), nb = row.k();
        const Matrix top = kronecker(Matrix::identity(f, m), row.parity_check());
        Matrix d(f, nb, n);
        for (std::size_t i = 0; i < nb; ++i) d.at(i, i) = f.one();
        const Matrix bottom = kronecker(col.parity_check(), d);
        return vstack(top, bottom);
    }

    LinearCode col_;
    LinearCode row_;
    Matrix parity_;
};

inline TensorCode build_tensor(const LinearCode& col, const LinearCode& row) { return {col, row}; }

// message (m-a) x (n-b)  ->  codeword m x n:  G_col^T * M * G_row
inline Matrix encode(const TensorCode& t, const Matrix& message) {
    if (message.rows() != t.m() - t.a() || message.cols() != t.n() - t.b())
        throw std::invalid_argument("message shape mismatch");
    return t.col_code().generator().transpose() * (message * t.row_code().generator());
}

namespace tensor_detail {

inline std::vector<int> flat_indices(const ErasurePattern& e) {
    std::vector<int> idx;
    for (const auto& [i, j] : e.cells()) idx.push_back(i * static_cast<int>(e.n()) + j);
    return idx;
}

}  // namespace tensor_detail

// The erased columns of the parity check must be linearly independent.
inline bool is_correctable(const TensorCode& t, const ErasurePattern& e) {
    if (e.m() != t.m() || e.n() != t.n()) throw std::invalid_argument("pattern shape mismatch");
    const auto idx = tensor_detail::flat_indices(e);
    if (idx.empty()) return true;
    if (idx.size() > t.parity_rows()) return false;
    return rank(t.parity_check().cols_subset(idx)) == idx.size();
}

// Received word with erased cells marked empty.
using Grid = std::vector<std::vector<std::optional<FieldElement>>>;

struct DecodeResult {
    enum class Status { ok, not_correctable, inconsistent } status;
    Matrix grid;
};

// Solves H_E x_E = -H_Ebar x_Ebar. Uncorrectable patterns fail regardless of
// the received values; received data outside the code is reported separately.
inline DecodeResult decode_erasures(const TensorCode& t, const Grid& received) {
    const FieldSpec& f = t.field();
    const std::size_t m = t.m(), n = t.n();
    if (received.size() != m) throw std::invalid_argument("grid has wrong row count");
    ErasurePattern e(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (received[i].size() != n) throw std::invalid_argument("grid has wrong column count");
        for (std::size_t j = 0; j < n; ++j)
            if (!received[i][j]) e.add(static_cast<int>(i), static_cast<int>(j));
    }

    Matrix out(f, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (received[i][j]) out.at(i, j) = *received[i][j];

    if (!is_correctable(t, e)) return {DecodeResult::Status::not_correctable, out};

    const Matrix& h = t.parity_check();
    const auto erased = tensor_detail::flat_indices(e);
    std::vector<FieldElement> rhs(h.rows(), f.zero());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        FieldElement acc = f.zero();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (received[i][j]) acc = f.add(acc, f.mul(h.at(r, i * n + j), *received[i][j]));
        rhs[r] = f.neg(acc);
    }
    if (erased.empty()) {
        for (const auto& x : rhs)
            if (!f.is_zero(x)) return {DecodeResult::Status::inconsistent, out};
        return {DecodeResult::Status::ok, out};
    }
    const auto sol = solve(h.cols_subset(erased), rhs);
    if (!sol) return {DecodeResult::Status::inconsistent, out};
    for (std::size_t t2 = 0; t2 < erased.size(); ++t2)
        out.at(static_cast<std::size_t>(erased[t2]) / n, static_cast<std::size_t>(erased[t2]) % n) = (*sol)[t2];
    return {DecodeResult::Status::ok, out};
}

// Correctability for a generic tensor code of the given shape, decided by
// instantiating the structured parity check with uniform entries over the
// 61-bit prime field. Trials are OR-combined: generic matrices have maximal
// rank, so any instantiation that corrects certifies generic correctability.
inline bool is_generically_correctable(const ErasurePattern& e, int a, int b, int trials = 2,
                                       std::uint64_t seed = 0) {
    const std::size_t m = e.m(), n = e.n();
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) >= m || static_cast<std::size_t>(b) >= n)
        throw std::invalid_argument("bad tensor parameters");
    const std::size_t rows = m * b + n * a - static_cast<std::size_t>(a) * b;
    if (e.size() > rows) return false;
    if (e.size() == 0) return true;
    const FieldSpec f = FieldSpec::prime(kGenericPrime);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng(seed).derived(0x746e7372 ^ static_cast<std::uint64_t>(t));
        Matrix hrow(f, b, n), hcol(f, a, m);
        for (std::size_t i = 0; i < static_cast<std::size_t>(b); ++i)
            for (std::size_t j = 0; j < n; ++j) hrow.at(i, j) = f.sample(rng);
        for (std::size_t i = 0; i < static_cast<std::size_t>(a); ++i)
            for (std::size_t j = 0; j < m; ++j) hcol.at(i, j) = f.sample(rng);
        const Matrix top = kronecker(Matrix::identity(f, m), hrow);
        Matrix d(f, n - b, n);
        for (std::size_t i = 0; i < n - static_cast<std::size_t>(b); ++i) d.at(i, i) = f.one();
        const Matrix h = vstack(top, kronecker(hcol, d));
        const auto idx = tensor_detail::flat_indices(e);
        if (rank(h.cols_subset(idx)) == idx.size()) return true;
    }
    return false;
}

// Maximal recoverability: every generically correctable pattern is
// correctable. Only patterns of exactly maximal size mb + na - ab need
// checking: generic correctability is matroid independence of parity-check
// columns, so every generically correctable set extends to a maximal one,
// and correctability is inherited downward. Returns the first pattern (in
// ascending bitmask order) that is generically correctable but uncorrected.
inline std::optional<ErasurePattern> verify_mr(const TensorCode& t) {
    const std::size_t m = t.m(), n = t.n(), cells = m * n;
    const std::size_t r = t.parity_rows();
    if (cells > 62) throw std::invalid_argument("grid too large for exhaustive verification");
    if (r > cells) return std::nullopt;

    // collect maximal-size patterns in deterministic order
    std::vector<std::uint64_t> masks;
    std::uint64_t mask = (1ull << r) - 1;
    const std::uint64_t limit = 1ull << cells;
    do {
        masks.push_back(mask);
    } while (next_bit_subset(mask, limit));

    const auto check = [&](std::size_t idx) -> std::optional<ErasurePattern> {
        ErasurePattern e(m, n);
        for (std::size_t c = 0; c < cells; ++c)
            if ((masks[idx] >> c) & 1) e.add(static_cast<int>(c / n), static_cast<int>(c % n));
        if (!is_generically_correctable(e, static_cast<int>(t.a()), static_cast<int>(t.b()), 2,
                                        mix64(idx)))
            return std::nullopt;
        if (is_correctable(t, e)) return std::nullopt;
        return e;
    };
    return parallel_first<ErasurePattern>(masks.size(), check);
}

// Minimal patterns: nonempty, every nonempty row has at least b+1 cells and
// every nonempty column at least a+1. Yields them in deterministic order
// (row support ascending, then per-row subsets lexicographically).
template <typename Fn>
void enumerate_minimal_patterns(std::size_t m, std::size_t n, int a, int b, Fn&& fn) {
    if (n > 20 || m > 20) throw std::invalid_argument("grid too large");
    std::vector<std::uint64_t> row_choices;  // subsets of [n] of size >= b+1
    for (std::uint64_t x = 0; x < (1ull << n); ++x)
        if (std::popcount(x) >= b + 1) row_choices.push_back(x);

    for (std::uint64_t support = 1; support < (1ull << m); ++support) {
        const auto rows = bits_of(support);
        std::vector<std::uint64_t> pick(rows.size());
        std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
            if (idx == rows.size()) {
                // column condition
                for (std::size_t j = 0; j < n; ++j) {
                    int deg = 0;
                    for (auto rmask : pick)
                        if ((rmask >> j) & 1) ++deg;
                    if (deg > 0 && deg < a + 1) return true;
                }
                ErasurePattern e(m, n);
                for (std::size_t t = 0; t < rows.size(); ++t)
                    for (std::size_t j = 0; j < n; ++j)
                        if ((pick[t] >> j) & 1) e.add(rows[t], static_cast<int>(j));
                return fn(e);
            }
            for (auto rmask : row_choices) {
                pick[idx] = rmask;
                if (!rec(idx + 1)) return false;
            }
            return true;
        };
        if (!rec(0)) return;
    }
}

inline std::vector<ErasurePattern> minimal_patterns(std::size_t m, std::size_t n, int a, int b) {
    std::vector<ErasurePattern> out;
    enumerate_minimal_patterns(m, n, a, b, [&](const ErasurePattern& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

// Randomized construction: sample parity checks H_row (b x n) and H_col
// (a x m) until (1) both generate MDS codes and (2) every minimal
// generically correctable pattern has independent parity columns. Checking
// minimal patterns suffices because rows with at most b erasures (and
// columns with at most a) peel off through the MDS row and column codes.
inline std::optional<TensorCode> search_mr_random(std::size_t m, std::size_t n, int a, int b,
                                                  const FieldSpec& field, std::uint64_t max_attempts,
                                                  std::uint64_t seed) {
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) >= m || static_cast<std::size_t>(b) >= n)
        throw std::invalid_argument("bad tensor parameters");

    // correctable minimal patterns span few rows and columns; anything wider
    // cannot be regular, hence not generically correctable
    std::vector<ErasurePattern> targets;
    enumerate_minimal_patterns(m, n, a, b, [&](const ErasurePattern& e) {
        std::size_t cols_used = 0, rows_used = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (e.col_degree(j) > 0) ++cols_used;
        for (std::size_t i = 0; i < m; ++i)
            if (e.row_degree(i) > 0) ++rows_used;
        if (cols_used > static_cast<std::size_t>(b) * (m - static_cast<std::size_t>(a))) return true;
        if (rows_used > static_cast<std::size_t>(a) * (n - static_cast<std::size_t>(b))) return true;
        std::uint64_t tag = 0;
        for (std::size_t i = 0; i < m; ++i) tag = mix64(tag ^ e.row_mask(i));
        if (!is_generically_correctable(e, a, b, 2, tag)) return true;
        targets.push_back(e);
        return true;
    });

    Rng rng(seed);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Matrix hrow(field, static_cast<std::size_t>(b), n);
        Matrix hcol(field, static_cast<std::size_t>(a), m);
        for (std::size_t i = 0; i < hrow.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) hrow.at(i, j) = field.sample(rng);
        for (std::size_t i = 0; i < hcol.rows(); ++i)
            for (std::size_t j = 0; j < m; ++j) hcol.at(i, j) = field.sample(rng);
        if (rank(hrow) != hrow.rows() || rank(hcol) != hcol.rows()) continue;
        if (!is_mds(hrow) || !is_mds(hcol)) continue;

        LinearCode row_code{kernel(hrow).transpose()};
        LinearCode col_code{kernel(hcol).transpose()};
        TensorCode t(col_code, row_code);
        bool ok = true;
        for (const auto& e : targets)
            if (!is_correctable(t, e)) {
                ok = false;
                break;
            }
        if (ok) return t;
    }
    return std::nullopt;
}

}  // namespace mrlab

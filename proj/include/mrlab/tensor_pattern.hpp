#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mrlab {

// Subset E of the m x n grid, stored as one bitmask per row (n <= 64).
// Rows and columns are 0-based internally; file formats are 1-based.
class ErasurePattern {
  public:
    ErasurePattern(std::size_t m, std::size_t n) : m_(m), n_(n), rows_(m, 0) {
        if (m == 0 || n == 0 || n > 64) throw std::invalid_argument("unsupported grid size");
    }

    ErasurePattern(std::size_t m, std::size_t n, const std::vector<std::pair<int, int>>& cells)
        : ErasurePattern(m, n) {
        for (const auto& [i, j] : cells) add(i, j);
    }

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }

    void add(int i, int j) {
        check(i, j);
        rows_[static_cast<std::size_t>(i)] |= 1ull << j;
    }

    bool contains(int i, int j) const {
        check(i, j);
        return (rows_[static_cast<std::size_t>(i)] >> j) & 1;
    }

    std::uint64_t row_mask(std::size_t i) const { return rows_.at(i); }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto r : rows_) c += static_cast<std::size_t>(std::popcount(r));
        return c;
    }

    std::size_t row_degree(std::size_t i) const { return static_cast<std::size_t>(std::popcount(rows_.at(i))); }

    std::size_t col_degree(std::size_t j) const {
        std::size_t c = 0;
        for (auto r : rows_)
            if ((r >> j) & 1) ++c;
        return c;
    }

    // erased cells in row-major order
    std::vector<std::pair<int, int>> cells() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if ((rows_[i] >> j) & 1) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        return out;
    }

    // A_i = unerased columns of row i (the complement rows)
    std::vector<std::vector<int>> row_unerased_sets() const {
        std::vector<std::vector<int>> sets(m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!((rows_[i] >> j) & 1)) sets[i].push_back(static_cast<int>(j));
        return sets;
    }

    // B_j = unerased rows of column j
    std::vector<std::vector<int>> col_unerased_sets() const {
        std::vector<std::vector<int>> sets(n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < m_; ++i)
                if (!((rows_[i] >> j) & 1)) sets[j].push_back(static_cast<int>(i));
        return sets;
    }

    ErasurePattern complement() const {
        ErasurePattern c(m_, n_);
        for (std::size_t i = 0; i < m_; ++i)
            c.rows_[i] = ~rows_[i] & ((n_ == 64) ? ~0ull : ((1ull << n_) - 1));
        return c;
    }

    ErasurePattern transpose() const {
        ErasurePattern t(n_, m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if ((rows_[i] >> j) & 1) t.add(static_cast<int>(j), static_cast<int>(i));
        return t;
    }

    friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;

  private:
    void check(int i, int j) const {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= m_ || static_cast<std::size_t>(j) >= n_)
            throw std::out_of_range("cell outside the grid");
    }

    std::size_t m_, n_;
    std::vector<std::uint64_t> rows_;
};

}  // namespace mrlab

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mrlab/enumeration.hpp"
#include "mrlab/linalg.hpp"

namespace mrlab {

// An (n,k) linear code given by a full-row-rank generator matrix. The parity
// check matrix is derived on first use and cached; copies share the cache.
// Immutable after construction, so instances may be shared across threads
// (the cache is populated under a once_flag).
class LinearCode {
  public:
    explicit LinearCode(Matrix generator) : gen_(std::move(generator)), cache_(std::make_shared<Cache>()) {
        if (gen_.rows() < 1 || gen_.rows() >= gen_.cols())
            throw std::invalid_argument("code requires 1 <= k < n");
        if (rank(gen_) != gen_.rows()) throw std::invalid_argument("generator is not full row rank");
    }

    std::size_t n() const { return gen_.cols(); }
    std::size_t k() const { return gen_.rows(); }
    const FieldSpec& field() const { return gen_.field(); }
    const Matrix& generator() const { return gen_; }

    // (n-k) x n matrix H with H * G^T = 0 and full row rank.
    const Matrix& parity_check() const {
        std::call_once(cache_->flag, [this] { cache_->h.emplace(kernel(gen_).transpose()); });
        return *cache_->h;
    }

  private:
    struct Cache {
        std::once_flag flag;
        std::optional<Matrix> h;
    };
    Matrix gen_;
    std::shared_ptr<Cache> cache_;
};

// Vandermonde generator: column for evaluation point a is (1, a, ..., a^{k-1}).
inline LinearCode reed_solomon(const FieldSpec& f, std::size_t n, std::size_t k,
                               const std::vector<FieldElement>& evals) {
    if (evals.size() != n) throw std::invalid_argument("need exactly n evaluation points");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (evals[i] == evals[j]) throw std::invalid_argument("repeated evaluation points");
    Matrix g(f, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement pw = f.one();
        for (std::size_t i = 0; i < k; ++i) {
            g.at(i, j) = pw;
            pw = f.mul(pw, evals[j]);
        }
    }
    return LinearCode(std::move(g));
}

// Convenience: evaluation points 0, 1, ..., n-1 (requires n <= field order).
inline LinearCode reed_solomon(const FieldSpec& f, std::size_t n, std::size_t k) {
    if (!f.has_extension() && n > f.p()) throw std::invalid_argument("n exceeds the field size");
    std::vector<FieldElement> evals;
    evals.reserve(n);
    if (!f.has_extension()) {
        for (std::size_t v = 0; v < n; ++v) evals.push_back(f.from(v));
    } else {
        // a0 + a1*X in lexicographic (a1, a0) order
        if (n > f.order()) throw std::invalid_argument("n exceeds the field size");
        for (std::size_t v = 0; v < n; ++v) evals.push_back(f.make(v % f.p(), v / f.p()));
    }
    return reed_solomon(f, n, k, evals);
}

// (m, m-1) single-parity-check code: generator [I | -1].
inline LinearCode parity_code(const FieldSpec& f, std::size_t m) {
    if (m < 2) throw std::invalid_argument("parity code needs m >= 2");
    Matrix g(f, m - 1, m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        g.at(i, i) = f.one();
        g.at(i, m - 1) = f.neg(f.one());
    }
    return LinearCode(std::move(g));
}

inline LinearCode dual(const LinearCode& c) { return LinearCode(c.parity_check()); }

// Drop coordinate pos. The result must still be a valid (n-1, k) code.
inline LinearCode puncture(const LinearCode& c, std::size_t pos) {
    if (pos >= c.n()) throw std::out_of_range("puncture position");
    if (c.n() < c.k() + 2) throw std::invalid_argument("puncturing would leave k >= n");
    std::vector<int> keep;
    for (std::size_t j = 0; j < c.n(); ++j)
        if (j != pos) keep.push_back(static_cast<int>(j));
    Matrix g = c.generator().cols_subset(keep);
    if (rank(g) != c.k()) throw std::invalid_argument("puncturing drops the rank");
    return LinearCode(std::move(g));
}

// Restrict to codewords vanishing at pos, then drop pos: an (n-1, k-1) code.
// Basis change turns column pos into e_k (pivot: first row with a nonzero
// entry there), after which the last row and the column are removed.
inline LinearCode shorten(const LinearCode& c, std::size_t pos) {
    if (pos >= c.n()) throw std::out_of_range("shorten position");
    if (c.k() < 2) throw std::invalid_argument("shortening needs k >= 2");
    const FieldSpec& f = c.field();
    Matrix g = c.generator();
    const std::size_t k = c.k();
    std::size_t pr = 0;
    while (pr < k && f.is_zero(g.at(pr, pos))) ++pr;
    if (pr == k) throw std::invalid_argument("cannot shorten at a zero column");
    const FieldElement pinv = f.inv(g.at(pr, pos));
    for (std::size_t j = 0; j < c.n(); ++j) g.at(pr, j) = f.mul(pinv, g.at(pr, j));
    for (std::size_t i = 0; i < k; ++i) {
        if (i == pr) continue;
        const FieldElement factor = g.at(i, pos);
        if (f.is_zero(factor)) continue;
        for (std::size_t j = 0; j < c.n(); ++j) g.at(i, j) = f.sub(g.at(i, j), f.mul(factor, g.at(pr, j)));
    }
    Matrix s(f, k - 1, c.n() - 1);
    std::size_t si = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == pr) continue;
        std::size_t sj = 0;
        for (std::size_t j = 0; j < c.n(); ++j) {
            if (j == pos) continue;
            s.at(si, sj++) = g.at(i, j);
        }
        ++si;
    }
    return LinearCode(std::move(s));
}

// Every k x k column minor nonzero, i.e. every k-subset of columns has rank k.
inline bool is_mds(const Matrix& g) {
    const std::size_t k = g.rows(), n = g.cols();
    if (k > n) return false;
    bool ok = true;
    for_each_combination(n, k, [&](const std::vector<int>& cols) {
        if (!ok) return;
        if (rank(g.cols_subset(cols)) != k) ok = false;
    });
    return ok;
}

inline bool is_mds(const LinearCode& c) { return is_mds(c.generator()); }

// Uniformly random k x n generator, resampled until full row rank.
inline LinearCode random_code(const FieldSpec& f, std::size_t n, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Matrix g(f, k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) g.at(i, j) = f.sample(rng);
        if (rank(g) == k) return LinearCode(std::move(g));
    }
    throw std::runtime_error("failed to sample a full-rank generator");
}

}  // namespace mrlab

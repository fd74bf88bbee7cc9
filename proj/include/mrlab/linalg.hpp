#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mrlab/field.hpp"
#include "mrlab/rng.hpp"

namespace mrlab {

// Dense exact matrix over a FieldSpec, row-major. Immutable by convention
// after construction; all mutating helpers work on copies.
class Matrix {
  public:
    Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, FieldElement{}) {}

    static Matrix identity(const FieldSpec& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    const FieldSpec& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const FieldElement& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix cols_subset(const std::vector<int>& idx) const {
        Matrix s(f_, rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || static_cast<std::size_t>(idx[j]) >= cols_)
                throw std::out_of_range("column index out of range");
            for (std::size_t i = 0; i < rows_; ++i) s.at(i, j) = at(i, idx[j]);
        }
        return s;
    }

    std::vector<FieldElement> col(std::size_t j) const {
        std::vector<FieldElement> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.f_ == b.f_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

  private:
    FieldSpec f_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> e_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in matrix product");
    const FieldSpec& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const FieldElement aik = a.at(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
        }
    return c;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows()) throw std::invalid_argument("hstack mismatch");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()) || a.cols() != b.cols()) throw std::invalid_argument("vstack mismatch");
    Matrix c(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) c.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) c.at(a.rows() + i, j) = b.at(i, j);
    }
    return c;
}

namespace detail {

// In-place forward elimination. Pivot choice is the first row with a nonzero
// entry in the current column, so results are deterministic. Returns pivot
// column list.
inline std::vector<std::size_t> forward_eliminate(Matrix& m) {
    const FieldSpec& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && f.is_zero(m.at(pr, col))) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
        const FieldElement pinv = f.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(pinv, m.at(row, j));
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            const FieldElement factor = m.at(i, col);
            if (f.is_zero(factor)) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) { return detail::forward_eliminate(m).size(); }

// Reduced row echelon form; canonical representative of the row space.
inline Matrix rref(Matrix m) {
    const FieldSpec& f = m.field();
    const auto pivots = detail::forward_eliminate(m);
    for (std::size_t r = pivots.size(); r-- > 0;) {
        const std::size_t col = pivots[r];
        for (std::size_t i = 0; i < r; ++i) {
            const FieldElement factor = m.at(i, col);
            if (f.is_zero(factor)) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
    }
    return m;
}

inline bool same_row_space(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()) || a.cols() != b.cols()) return false;
    const Matrix ra = rref(a), rb = rref(b);
    const std::size_t r = rank(a);
    if (r != rank(b)) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!(ra.at(i, j) == rb.at(i, j))) return false;
    return true;
}

// Basis of {x : Mx = 0}; columns of the result are the basis vectors.
inline Matrix kernel(const Matrix& m) {
    Matrix r = rref(m);
    const FieldSpec& f = m.field();
    std::vector<std::size_t> pivot_of_col(m.cols(), SIZE_MAX);
    std::size_t row = 0;
    std::vector<std::size_t> free_cols;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        if (row < m.rows() && !f.is_zero(r.at(row, col))) {
            pivot_of_col[col] = row;
            ++row;
        } else {
            free_cols.push_back(col);
        }
    }
    Matrix k(f, m.cols(), free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const std::size_t fc = free_cols[t];
        k.at(fc, t) = f.one();
        for (std::size_t col = 0; col < fc; ++col)
            if (pivot_of_col[col] != SIZE_MAX) k.at(col, t) = f.neg(r.at(pivot_of_col[col], fc));
    }
    return k;
}

// Any x with Mx = b, or nothing if the system is inconsistent.
inline std::optional<std::vector<FieldElement>> solve(const Matrix& m, const std::vector<FieldElement>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
    const FieldSpec& f = m.field();
    Matrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    Matrix r = rref(std::move(aug));
    std::vector<FieldElement> x(m.cols(), f.zero());
    for (std::size_t row = 0; row < m.rows(); ++row) {
        std::size_t col = 0;
        while (col < m.cols() && f.is_zero(r.at(row, col))) ++col;
        if (col == m.cols()) {
            if (!f.is_zero(r.at(row, m.cols()))) return std::nullopt;  // 0 = nonzero
            continue;
        }
        x[col] = r.at(row, m.cols());
    }
    return x;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch in kronecker");
    const FieldSpec& f = a.field();
    Matrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const FieldElement aij = a.at(i, j);
            if (f.is_zero(aij)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k.at(i * b.rows() + r, j * b.cols() + c) = f.mul(aij, b.at(r, c));
        }
    return k;
}

// Indices of a maximal independent column subset, scanning left to right.
inline std::vector<int> independent_cols(const Matrix& m) {
    const FieldSpec& f = m.field();
    std::vector<int> keep;
    // incremental elimination: keep a column iff it raises the rank
    Matrix elim(f, m.rows(), m.cols());
    std::size_t used = 0;
    std::vector<std::size_t> pivot_row_of;  // pivot row of each kept column
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<FieldElement> v = m.col(j);
        for (std::size_t t = 0; t < keep.size(); ++t) {
            const std::size_t pr = pivot_row_of[t];
            const FieldElement factor = v[pr];
            if (f.is_zero(factor)) continue;
            for (std::size_t i = 0; i < m.rows(); ++i)
                v[i] = f.sub(v[i], f.mul(factor, elim.at(i, t)));
        }
        std::size_t pr = 0;
        while (pr < m.rows() && f.is_zero(v[pr])) ++pr;
        if (pr == m.rows()) continue;
        const FieldElement pinv = f.inv(v[pr]);
        for (std::size_t i = 0; i < m.rows(); ++i) elim.at(i, used) = f.mul(pinv, v[i]);
        // re-reduce previously kept columns against the new pivot row so each
        // kept column has the only nonzero entry at its own pivot row
        for (std::size_t t = 0; t < keep.size(); ++t) {
            const FieldElement factor = elim.at(pr, t);
            if (f.is_zero(factor)) continue;
            for (std::size_t i = 0; i < m.rows(); ++i)
                elim.at(i, t) = f.sub(elim.at(i, t), f.mul(factor, elim.at(i, used)));
        }
        pivot_row_of.push_back(pr);
        keep.push_back(static_cast<int>(j));
        ++used;
    }
    return keep;
}

// Columns of the result span the orthogonal complement of the column space.
inline Matrix perp(const Matrix& basis) { return kernel(basis.transpose()); }

// Basis (as columns) of the intersection of two column spaces.
inline Matrix intersect_col_spaces(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows())
        throw std::invalid_argument("subspace ambient mismatch");
    const FieldSpec& f = a.field();
    // kernel of [A | -B]: A x = B y gives intersection vectors A x
    Matrix nb(f, b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) nb.at(i, j) = f.neg(b.at(i, j));
    const Matrix k = kernel(hstack(a, nb));
    Matrix raw(f, a.rows(), k.cols());
    for (std::size_t t = 0; t < k.cols(); ++t)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            FieldElement s = f.zero();
            for (std::size_t j = 0; j < a.cols(); ++j) s = f.add(s, f.mul(a.at(i, j), k.at(j, t)));
            raw.at(i, t) = s;
        }
    return raw.cols_subset(independent_cols(raw));
}

// Ordered family A_1,...,A_l of subsets of [n]; 0-based internally,
// 1-based in all file formats.
struct SetFamily {
    std::size_t n = 0;
    std::vector<std::vector<int>> sets;

    void validate() const {
        if (sets.empty()) throw std::invalid_argument("empty set family");
        for (const auto& s : sets)
            for (int x : s)
                if (x < 0 || static_cast<std::size_t>(x) >= n)
                    throw std::out_of_range("set element outside the ground set");
    }
};

// dim(V_{A_1} cap ... cap V_{A_l}) over exact arithmetic.
//
// Computed as sum_i dim(V_{A_i}) minus the rank of the block matrix with
// l-1 block rows [V_{A_1}, 0.., V_{A_{j+1}}, ..0]; redundant columns inside
// each A_i are dropped first (leftmost-pivot elimination) so that every
// retained block has full column rank, which the kernel bijection behind the
// formula requires.
inline int intersection_dim(const Matrix& v, const SetFamily& fam) {
    fam.validate();
    if (fam.n != v.cols()) throw std::invalid_argument("family ground set does not match matrix columns");
    const FieldSpec& f = v.field();
    const std::size_t l = fam.sets.size();
    if (l == 1) return static_cast<int>(rank(v.cols_subset(fam.sets[0])));

    std::vector<Matrix> blocks;
    blocks.reserve(l);
    std::size_t dim_sum = 0;
    for (const auto& s : fam.sets) {
        Matrix sub = v.cols_subset(s);
        Matrix reduced = sub.cols_subset(independent_cols(sub));
        dim_sum += reduced.cols();
        blocks.push_back(std::move(reduced));
    }
    if (blocks[0].cols() == 0) return 0;
    for (std::size_t i = 1; i < l; ++i)
        if (blocks[i].cols() == 0) return 0;

    const std::size_t k = v.rows();
    Matrix x(f, (l - 1) * k, dim_sum);
    // first group: A_1 columns repeated down every block row
    for (std::size_t br = 0; br + 1 < l; ++br)
        for (std::size_t j = 0; j < blocks[0].cols(); ++j)
            for (std::size_t i = 0; i < k; ++i) x.at(br * k + i, j) = blocks[0].at(i, j);
    std::size_t off = blocks[0].cols();
    for (std::size_t t = 1; t < l; ++t) {
        const std::size_t br = t - 1;
        for (std::size_t j = 0; j < blocks[t].cols(); ++j)
            for (std::size_t i = 0; i < k; ++i) x.at(br * k + i, off + j) = blocks[t].at(i, j);
        off += blocks[t].cols();
    }
    return static_cast<int>(dim_sum - rank(std::move(x)));
}

// Generic intersection dimension: instantiate W with uniform entries over
// F_{2^61-1} and take the minimum over independent trials (generic matrices
// maximize the rank of the block matrix, hence minimize the intersection).
inline int generic_intersection_dim(std::size_t k, std::size_t n, const SetFamily& fam, int trials = 2,
                                    std::uint64_t seed = 0) {
    fam.validate();
    if (fam.n != n) throw std::invalid_argument("family ground set size mismatch");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    const FieldSpec f = FieldSpec::prime(kGenericPrime);
    int best = -1;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng(seed).derived(0x67656e ^ static_cast<std::uint64_t>(t));
        Matrix w(f, k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) w.at(i, j) = f.sample(rng);
        const int d = intersection_dim(w, fam);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// dim of sum_i span(U_i) (x) span(V_i) inside F^{d1} (x) F^{d2}; bases are
// given as matrix columns.
inline std::size_t tensor_sum_dim(const std::vector<std::pair<Matrix, Matrix>>& terms, std::size_t d1,
                                  std::size_t d2) {
    if (terms.empty()) throw std::invalid_argument("no terms");
    const FieldSpec& f = terms.front().first.field();
    std::size_t total_cols = 0;
    for (const auto& [u, v] : terms) {
        if (!(u.field() == f) || !(v.field() == f)) throw std::invalid_argument("field mismatch");
        if (u.rows() != d1 || v.rows() != d2) throw std::invalid_argument("ambient dimension mismatch");
        total_cols += u.cols() * v.cols();
    }
    Matrix m(f, d1 * d2, total_cols);
    std::size_t col = 0;
    for (const auto& [u, v] : terms)
        for (std::size_t ju = 0; ju < u.cols(); ++ju)
            for (std::size_t jv = 0; jv < v.cols(); ++jv) {
                for (std::size_t i = 0; i < d1; ++i)
                    for (std::size_t j = 0; j < d2; ++j)
                        m.at(i * d2 + j, col) = f.mul(u.at(i, ju), v.at(j, jv));
                ++col;
            }
    return rank(std::move(m));
}

inline bool tensor_span_full(const std::vector<std::pair<Matrix, Matrix>>& terms, std::size_t d1,
                             std::size_t d2) {
    return tensor_sum_dim(terms, d1, d2) == d1 * d2;
}

}  // namespace mrlab

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mrlab/codes.hpp"
#include "mrlab/hmds.hpp"
#include "mrlab/linalg.hpp"
#include "mrlab/tensor.hpp"

namespace mrlab {

// File layouts. Lines starting with '#' are comments and skipped everywhere.
//
//   matrix:   field literal / "rows cols" / rows*cols element literals
//   code:     "# code n=<n> k=<k>" header comment, then the generator matrix
//   pattern:  "m n", then one erased cell "i j" per line (1-based)
//   grid:     m lines of n entries, "?" for an erased cell

namespace io_detail {

// next whitespace-separated token, skipping '#' comment lines
inline bool next_token(std::istream& in, std::string& tok) {
    while (true) {
        if (!(in >> tok)) return false;
        if (tok[0] != '#') return true;
        std::string rest;
        std::getline(in, rest);
    }
}

inline std::string require_token(std::istream& in, const char* what) {
    std::string tok;
    if (!io_detail::next_token(in, tok)) throw std::runtime_error(std::string("unexpected end of input reading ") + what);
    return tok;
}

inline std::uint64_t require_uint(std::istream& in, const char* what) {
    const std::string tok = require_token(in, what);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error(std::string("expected a number for ") + what + ", got '" + tok + "'");
    return std::stoull(tok);
}

}  // namespace io_detail

inline void write_matrix(std::ostream& out, const Matrix& m) {
    out << field_literal(m.field()) << "\n" << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << element_literal(m.at(i, j));
        out << "\n";
    }
}

inline Matrix read_matrix(std::istream& in) {
    const FieldSpec f = parse_field_literal(io_detail::require_token(in, "field literal"));
    const std::uint64_t rows = io_detail::require_uint(in, "row count");
    const std::uint64_t cols = io_detail::require_uint(in, "column count");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = parse_element(f, io_detail::require_token(in, "matrix entry"));
    return m;
}

inline void write_code(std::ostream& out, const LinearCode& c) {
    out << "# code n=" << c.n() << " k=" << c.k() << "\n";
    write_matrix(out, c.generator());
}

inline LinearCode read_code(std::istream& in) { return LinearCode(read_matrix(in)); }

inline void write_pattern(std::ostream& out, const ErasurePattern& e) {
    out << e.m() << " " << e.n() << "\n";
    for (const auto& [i, j] : e.cells()) out << (i + 1) << " " << (j + 1) << "\n";
}

inline ErasurePattern read_pattern(std::istream& in) {
    const std::uint64_t m = io_detail::require_uint(in, "grid rows");
    const std::uint64_t n = io_detail::require_uint(in, "grid cols");
    ErasurePattern e(m, n);
    std::string tok;
    while (io_detail::next_token(in, tok)) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::runtime_error("bad cell row '" + tok + "'");
        const std::uint64_t i = std::stoull(tok);
        const std::uint64_t j = io_detail::require_uint(in, "cell column");
        if (i < 1 || j < 1 || i > m || j > n) throw std::runtime_error("cell outside the grid");
        e.add(static_cast<int>(i - 1), static_cast<int>(j - 1));
    }
    return e;
}

inline Grid read_grid(std::istream& in, const FieldSpec& f, std::size_t m, std::size_t n) {
    Grid g(m, std::vector<std::optional<FieldElement>>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::string tok = io_detail::require_token(in, "grid entry");
            if (tok == "?")
                g[i][j] = std::nullopt;
            else
                g[i][j] = parse_element(f, tok);
        }
    return g;
}

inline void write_grid(std::ostream& out, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << element_literal(m.at(i, j));
        out << "\n";
    }
}

// one line per set, 1-based: "A1: 1 2 3", then "actual=.. generic=.."
inline std::string format_witness(const MdsWitness& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.family.sets.size(); ++i) {
        out << "A" << (i + 1) << ":";
        for (int x : w.family.sets[i]) out << " " << (x + 1);
        out << "\n";
    }
    out << "actual=" << w.actual_dim << " generic=" << w.generic_dim << "\n";
    return out.str();
}

}  // namespace mrlab

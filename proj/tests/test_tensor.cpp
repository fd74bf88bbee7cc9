#include <catch_amalgamated.hpp>

#include "mrlab/hmds.hpp"
#include "mrlab/regularity.hpp"
#include "mrlab/tensor.hpp"
#include "test_support.hpp"

using namespace mrlab;
using namespace testsupport;

namespace {

ErasurePattern pattern_from_mask(std::size_t m, std::size_t n, std::uint64_t mask) {
    ErasurePattern e(m, n);
    for (std::size_t c = 0; c < m * n; ++c)
        if ((mask >> c) & 1) e.add(static_cast<int>(c / n), static_cast<int>(c % n));
    return e;
}

ErasurePattern holzbaur_pattern() {
    ErasurePattern ebar(5, 5, {{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}});
    return ebar.complement();
}

Grid grid_of(const Matrix& m) {
    Grid g(m.rows(), std::vector<std::optional<FieldElement>>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m.at(i, j);
    return g;
}

}  // namespace

TEST_CASE("structured parity check") {
    auto f17 = make_prime_field(17);
    TensorCode f4(parity_code(f17, 3), reed_solomon(f17, 14, 10));
    CHECK(f4.parity_check().rows() == 22);  // 3*4 + 14*1 - 4
    CHECK(f4.parity_check().cols() == 42);
    CHECK(rank(f4.parity_check()) == 22);

    auto f13 = make_prime_field(13);
    CHECK_THROWS_AS(build_tensor(parity_code(f13, 3), reed_solomon(f17, 6, 4)), std::invalid_argument);
}

TEST_CASE("codewords satisfy both codes and the parity check") {
    auto f13 = make_prime_field(13);
    Rng rng(3);
    TensorCode t(parity_code(f13, 3), reed_solomon(f13, 6, 4));
    Matrix msg = random_matrix(f13, 2, 4, rng);
    Matrix word = encode(t, msg);
    REQUIRE(word.rows() == 3);
    REQUIRE(word.cols() == 6);

    // each row is a row-code codeword, each column a column-code codeword
    const Matrix& hrow = t.row_code().parity_check();
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<FieldElement> row(6);
        for (std::size_t j = 0; j < 6; ++j) row[j] = word.at(i, j);
        for (const auto& x : mat_apply(hrow, row)) CHECK(f13.is_zero(x));
    }
    const Matrix& hcol = t.col_code().parity_check();
    for (std::size_t j = 0; j < 6; ++j) {
        std::vector<FieldElement> col(3);
        for (std::size_t i = 0; i < 3; ++i) col[i] = word.at(i, j);
        for (const auto& x : mat_apply(hcol, col)) CHECK(f13.is_zero(x));
    }

    // H * vec(word) = 0 under row-major flattening
    std::vector<FieldElement> flat(18);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 6; ++j) flat[i * 6 + j] = word.at(i, j);
    for (const auto& x : mat_apply(t.parity_check(), flat)) CHECK(f13.is_zero(x));
}

TEST_CASE("is_correctable") {
    auto f13 = make_prime_field(13);
    TensorCode t(parity_code(f13, 3), reed_solomon(f13, 6, 4));

    CHECK(is_correctable(t, ErasurePattern(3, 6)));

    // more erased cells than parity rows
    ErasurePattern all = ErasurePattern(3, 6).complement();
    CHECK(all.size() > t.parity_rows());
    CHECK_FALSE(is_correctable(t, all));

    // single row with at most b erasures is always fine
    ErasurePattern one(3, 6);
    one.add(1, 2);
    CHECK(is_correctable(t, one));
}

TEST_CASE("holzbaur pattern defeats every tensor code of its shape") {
    auto f13 = make_prime_field(13);
    ErasurePattern e = holzbaur_pattern();
    TensorCode t(reed_solomon(f13, 5, 3), reed_solomon(f13, 5, 3));
    CHECK_FALSE(is_correctable(t, e));
    CHECK_FALSE(is_generically_correctable(e, 2, 2));
}

TEST_CASE("decode_erasures") {
    auto f13 = make_prime_field(13);
    Rng rng(7);
    TensorCode t(parity_code(f13, 3), reed_solomon(f13, 6, 4));

    // all-zero codeword restores to zeros
    Grid z = grid_of(Matrix(f13, 3, 6));
    z[0][0] = std::nullopt;
    z[2][5] = std::nullopt;
    auto rz = decode_erasures(t, z);
    REQUIRE(rz.status == DecodeResult::Status::ok);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(f13.is_zero(rz.grid.at(i, j)));

    // single erasure matches recovery through its row alone
    Matrix msg = random_matrix(f13, 2, 4, rng);
    Matrix word = encode(t, msg);
    Grid g = grid_of(word);
    g[1][3] = std::nullopt;
    auto r1 = decode_erasures(t, g);
    REQUIRE(r1.status == DecodeResult::Status::ok);
    CHECK(r1.grid == word);
    {
        // row-local recovery: solve the row code's parity equations on row 1
        const Matrix& hrow = t.row_code().parity_check();
        std::vector<FieldElement> rhs(hrow.rows(), f13.zero());
        for (std::size_t r = 0; r < hrow.rows(); ++r) {
            FieldElement acc = f13.zero();
            for (std::size_t j = 0; j < 6; ++j)
                if (j != 3) acc = f13.add(acc, f13.mul(hrow.at(r, j), word.at(1, j)));
            rhs[r] = f13.neg(acc);
        }
        auto sol = solve(hrow.cols_subset({3}), rhs);
        REQUIRE(sol.has_value());
        CHECK((*sol)[0] == word.at(1, 3));
    }

    // round-trip across random correctable patterns
    int done = 0;
    while (done < 200) {
        Matrix m2 = random_matrix(f13, 2, 4, rng);
        Matrix w2 = encode(t, m2);
        ErasurePattern e = pattern_from_mask(3, 6, rng.below(1ull << 18));
        if (!is_correctable(t, e)) continue;
        Grid g2 = grid_of(w2);
        for (auto [i, j] : e.cells()) g2[i][j] = std::nullopt;
        auto r2 = decode_erasures(t, g2);
        REQUIRE(r2.status == DecodeResult::Status::ok);
        CHECK(r2.grid == w2);
        ++done;
    }

    // uncorrectable pattern reported as such
    Grid bad = grid_of(word);
    for (std::size_t j = 0; j < 6; ++j) bad[0][j] = std::nullopt;
    for (std::size_t j = 0; j < 3; ++j) bad[1][j] = std::nullopt;
    auto rb = decode_erasures(t, bad);
    CHECK(rb.status == DecodeResult::Status::not_correctable);

    // inconsistent received data reported distinctly
    Grid inc = grid_of(word);
    inc[0][0] = f13.add(word.at(0, 0), f13.one());
    inc[2][5] = std::nullopt;
    auto ri = decode_erasures(t, inc);
    CHECK(ri.status == DecodeResult::Status::inconsistent);
}

TEST_CASE("generic correctability for a=1 equals regularity on the full cube") {
    for (std::uint64_t mask = 0; mask < (1ull << 9); ++mask) {
        ErasurePattern e = pattern_from_mask(3, 3, mask);
        CHECK(is_generically_correctable(e, 1, 1) == !is_regular_naive(e, 1, 1).has_value());
    }
}

TEST_CASE("correctable implies regular") {
    auto f13 = make_prime_field(13);
    Rng rng(11);
    std::vector<TensorCode> codes;
    codes.emplace_back(parity_code(f13, 3), reed_solomon(f13, 3, 2));
    codes.emplace_back(reed_solomon(f13, 3, 2), reed_solomon(f13, 3, 1));
    for (const auto& t : codes)
        for (std::uint64_t mask = 0; mask < (1ull << 9); ++mask) {
            ErasurePattern e = pattern_from_mask(3, 3, mask);
            if (is_correctable(t, e))
                CHECK_FALSE(is_regular_naive(e, static_cast<int>(t.a()), static_cast<int>(t.b()))
                                .has_value());
        }
    // randomized beyond the exhaustive cube
    TensorCode big(parity_code(f13, 3), reed_solomon(f13, 6, 4));
    for (int t = 0; t < 300; ++t) {
        ErasurePattern e = pattern_from_mask(3, 6, rng.below(1ull << 18));
        if (is_correctable(big, e)) CHECK_FALSE(is_regular_naive(e, 1, 2).has_value());
    }
}

TEST_CASE("row-intersection criterion for maximal patterns when a=1") {
    auto f13 = make_prime_field(13);
    for (std::size_t n = 4; n <= 5; ++n) {
        for (std::size_t b = 1; b <= 2; ++b) {
            TensorCode t(parity_code(f13, 3), reed_solomon(f13, n, n - b));
            const std::size_t maximal = t.parity_rows();
            for (std::uint64_t mask = 0; mask < (1ull << (3 * n)); ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) != maximal) continue;
                ErasurePattern e = pattern_from_mask(3, n, mask);
                bool rows_loaded = true;
                for (std::size_t i = 0; i < 3; ++i)
                    if (e.row_degree(i) < b) rows_loaded = false;
                if (!rows_loaded) continue;
                SetFamily fam{n, e.row_unerased_sets()};
                const bool zero_inter = intersection_dim(t.row_code().generator(), fam) == 0;
                CHECK(is_correctable(t, e) == zero_inter);
            }
        }
    }
}

TEST_CASE("four span conditions match correctability on maximal patterns") {
    auto fM = make_prime_field(kGenericPrime);
    Rng rng(13);
    for (auto [m, n, a, b] : std::vector<std::array<std::size_t, 4>>{
             {3, 4, 1, 1}, {3, 4, 2, 1}, {4, 4, 2, 2}}) {
        LinearCode col = random_code(fM, m, m - a, rng.next());
        LinearCode row = random_code(fM, n, n - b, rng.next());
        TensorCode t(col, row);
        const Matrix& u = col.generator();
        const Matrix& v = row.generator();
        const Matrix& p = col.parity_check();
        const Matrix& q = row.parity_check();
        const std::size_t abar = m - a, bbar = n - b;

        int seen = 0;
        for (std::uint64_t mask = 0; mask < (1ull << (m * n)) && seen < 400; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != t.parity_rows()) continue;
            ++seen;
            ErasurePattern e = pattern_from_mask(m, n, mask);
            const bool correctable = is_correctable(t, e);
            const auto arows = e.row_unerased_sets();
            const auto bcols = e.col_unerased_sets();
            bool rows_loaded = true, cols_loaded = true;
            for (std::size_t i = 0; i < m; ++i)
                if (e.row_degree(i) < b) rows_loaded = false;
            for (std::size_t j = 0; j < n; ++j)
                if (e.col_degree(j) < a) cols_loaded = false;

            std::vector<std::pair<Matrix, Matrix>> t2;
            for (std::size_t i = 0; i < m; ++i)
                t2.push_back({u.cols_subset({static_cast<int>(i)}), v.cols_subset(arows[i])});
            CHECK(tensor_span_full(t2, abar, bbar) == correctable);

            std::vector<std::pair<Matrix, Matrix>> t3;
            for (std::size_t j = 0; j < n; ++j)
                t3.push_back({u.cols_subset(bcols[j]), v.cols_subset({static_cast<int>(j)})});
            CHECK(tensor_span_full(t3, abar, bbar) == correctable);

            // the parity-side conditions assume every row (respectively every
            // column) carries at least b (respectively a) erasures; otherwise
            // a perp term degenerates to zero and drops out
            if (rows_loaded) {
                std::vector<std::pair<Matrix, Matrix>> t4;
                for (std::size_t i = 0; i < m; ++i)
                    t4.push_back({p.cols_subset({static_cast<int>(i)}), perp(v.cols_subset(arows[i]))});
                CHECK(tensor_span_full(t4, a, bbar) == correctable);
            }
            if (cols_loaded) {
                std::vector<std::pair<Matrix, Matrix>> t5;
                for (std::size_t j = 0; j < n; ++j)
                    t5.push_back({perp(u.cols_subset(bcols[j])), q.cols_subset({static_cast<int>(j)})});
                CHECK(tensor_span_full(t5, abar, b) == correctable);
            }
        }
    }
}

TEST_CASE("verify_mr on simple families") {
    auto f13 = make_prime_field(13);
    // parity (x) parity: the row code is MDS of codimension one
    for (std::size_t n = 2; n <= 5; ++n) {
        TensorCode t(parity_code(f13, 2), parity_code(f13, n));
        CHECK_FALSE(verify_mr(t).has_value());
    }

    // a repeated column in the row code gives a failing pattern
    Matrix g(f13, 2, 4);
    g.at(0, 0) = f13.one();
    g.at(1, 1) = f13.one();
    g.at(0, 2) = f13.one();
    g.at(0, 3) = f13.from(2);
    g.at(1, 3) = f13.from(3);
    TensorCode bad(parity_code(f13, 2), LinearCode{std::move(g)});
    auto fail = verify_mr(bad);
    REQUIRE(fail.has_value());
    CHECK(is_generically_correctable(*fail, 1, 2));
    CHECK_FALSE(is_correctable(bad, *fail));
}

TEST_CASE("verify_mr matches the row-code order condition") {
    auto fM = make_prime_field(kGenericPrime);
    auto f13 = make_prime_field(13);
    // MDS(3) row code over a large field: the tensor code is maximally recoverable
    TensorCode good(parity_code(fM, 3), random_code(fM, 6, 5, 99));
    REQUIRE_FALSE(is_mds_ell(good.row_code(), 3).has_value());
    CHECK_FALSE(verify_mr(good).has_value());

    // failing row code: repeated column
    Matrix g(f13, 5, 6);
    for (std::size_t i = 0; i < 5; ++i) g.at(i, i) = f13.one();
    for (std::size_t i = 0; i < 5; ++i) g.at(i, 5) = g.at(i, 0);
    LinearCode bad_row{std::move(g)};
    REQUIRE(is_mds_ell(bad_row, 3).has_value());
    TensorCode bad(parity_code(f13, 3), bad_row);
    CHECK(verify_mr(bad).has_value());
}

TEST_CASE("minimal pattern enumeration") {
    // 2x2 with a = b = 1: the full grid is the only minimal pattern
    auto pats = minimal_patterns(2, 2, 1, 1);
    REQUIRE(pats.size() == 1);
    CHECK(pats[0] == ErasurePattern(2, 2).complement());

    // against a brute-force filter at 3x3
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
        std::vector<ErasurePattern> brute;
        for (std::uint64_t mask = 1; mask < (1ull << 9); ++mask) {
            ErasurePattern e = pattern_from_mask(3, 3, mask);
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) {
                const auto d = e.row_degree(i);
                if (d > 0 && d < static_cast<std::size_t>(b + 1)) ok = false;
            }
            for (int j = 0; j < 3 && ok; ++j) {
                const auto d = e.col_degree(j);
                if (d > 0 && d < static_cast<std::size_t>(a + 1)) ok = false;
            }
            if (ok) brute.push_back(e);
        }
        auto fast = minimal_patterns(3, 3, a, b);
        REQUIRE(fast.size() == brute.size());
        // same set independent of order
        for (const auto& e : fast)
            CHECK(std::find(brute.begin(), brute.end(), e) != brute.end());
    }

    // generically correctable minimal patterns span few columns
    for (auto [m, n, a, b] : std::vector<std::array<std::size_t, 4>>{{3, 5, 1, 2}, {3, 4, 1, 1}}) {
        enumerate_minimal_patterns(m, n, static_cast<int>(a), static_cast<int>(b),
                                   [&](const ErasurePattern& e) {
                                       if (!is_generically_correctable(e, static_cast<int>(a),
                                                                       static_cast<int>(b)))
                                           return true;
                                       std::size_t cols = 0;
                                       for (std::size_t j = 0; j < n; ++j)
                                           if (e.col_degree(j) > 0) ++cols;
                                       CHECK(cols <= b * (m - a));
                                       return true;
                                   });
    }
}

TEST_CASE("search_mr_random") {
    auto f13 = make_prime_field(13);
    auto t = search_mr_random(2, 4, 1, 1, f13, 100, 0);
    REQUIRE(t.has_value());
    CHECK_FALSE(verify_mr(*t).has_value());

    // deterministic in the seed
    auto t2 = search_mr_random(2, 4, 1, 1, f13, 100, 0);
    CHECK(t->row_code().generator() == t2->row_code().generator());

    // no MDS (4,2) code over F_2 exists, so the search must fail
    auto f2 = make_prime_field(2);
    CHECK_FALSE(search_mr_random(2, 4, 1, 2, f2, 200, 1).has_value());
}

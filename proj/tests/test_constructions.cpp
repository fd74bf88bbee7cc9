#include <catch_amalgamated.hpp>

#include "mrlab/constructions.hpp"
#include "test_support.hpp"

using namespace mrlab;

TEST_CASE("bipartite family construction") {
    auto fam = build_bipartite(5);
    CHECK(fam.u.size() == 5);
    CHECK(fam.v.size() == 5);
    CHECK(fam.field.p() == 5);
    CHECK(fam.field.has_extension());

    // every span is 2-dimensional
    for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t b = 0; b < 5; ++b) CHECK(rank(bipartite_span(fam, a, b)) == 2);

    // u x v = (1, alpha, beta + beta^2 X) up to sign
    const FieldSpec& f = fam.field;
    for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t b = 0; b < 5; ++b) {
            const Vec3 w = cross(f, fam.u[a], fam.v[b]);
            CHECK(w[0] == f.one());
            CHECK(w[1] == f.from(a));
            const FieldElement beta = f.from(b);
            CHECK(w[2] == f.add(beta, f.mul(f.mul(beta, beta), f.gen())));
        }

    CHECK_THROWS_AS(build_bipartite(2), std::invalid_argument);
}

TEST_CASE("bipartite verification and degenerate triples") {
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        auto fam = build_bipartite(p);
        CHECK_FALSE(verify_bipartite(fam).has_value());
    }

    // a shared u gives a genuinely intersecting triple
    auto fam = build_bipartite(5);
    const FieldSpec& f = fam.field;
    Matrix s1 = bipartite_span(fam, 1, 1);
    Matrix s2 = bipartite_span(fam, 1, 2);
    Matrix s3 = bipartite_span(fam, 1, 3);
    Matrix inter = intersect_col_spaces(intersect_col_spaces(s1, s2), s3);
    CHECK(inter.cols() == 1);  // the common line through u_1

    // a fully generic triple intersects trivially
    Matrix g1 = bipartite_span(fam, 0, 0);
    Matrix g2 = bipartite_span(fam, 1, 2);
    Matrix g3 = bipartite_span(fam, 2, 4);
    CHECK(intersect_col_spaces(intersect_col_spaces(g1, g2), g3).cols() == 0);
}

TEST_CASE("bipartite sides are collinear, hence not MDS on their own") {
    auto fam = build_bipartite(5);
    CHECK_FALSE(is_mds(bipartite_matrix(fam).cols_subset({0, 1, 2, 3, 4})));       // u side
    CHECK_FALSE(is_mds(bipartite_matrix(fam).cols_subset({5, 6, 7, 8, 9})));       // v side
    CHECK(bipartite_matrix(fam).cols() == 10);
}

TEST_CASE("tripartite family construction") {
    auto f7 = build_tripartite(7);
    CHECK(f7.zeta == 2);
    CHECK(f7.c == 3);
    CHECK(f7.s == std::vector<std::uint64_t>{1, 6});
    CHECK(f7.u.size() == 2);
    CHECK(f7.v.size() == 2);
    CHECK(f7.w.size() == 3);

    auto f13 = build_tripartite(13);
    CHECK(f13.zeta == 3);
    CHECK(f13.u.size() == 4);
    CHECK(f13.v.size() == 4);
    CHECK(f13.w.size() == 6);
    CHECK(f13.u.size() >= (13 - 1) / 3);
    CHECK(f13.w.size() >= (13 - 1) / 3);

    CHECK_THROWS_AS(build_tripartite(11), std::invalid_argument);  // 11 = 2 mod 3
    CHECK_THROWS_AS(build_tripartite(12), std::invalid_argument);  // composite

    // 9 | p-1 makes the cube root itself a cube; no valid subgroup exists
    CHECK_THROWS_AS(build_tripartite(19), std::runtime_error);
    CHECK_THROWS_AS(build_tripartite(37), std::runtime_error);
}

TEST_CASE("tripartite verification") {
    for (std::uint64_t p : {7ull, 13ull}) {
        auto fam = build_tripartite(p);
        CHECK_FALSE(verify_tripartite(fam).has_value());
        // the union sits on the moment curve, hence is MDS as a whole
        CHECK(is_mds(tripartite_matrix(fam)));
    }
}

// Acceptance suite: ten end-to-end checks, one test case per criterion.
// Each prints a single PASS/FAIL line; run this binary directly to see the
// full scoreboard, or let ctest run the criteria individually.

#include <catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mrlab/mrlab.hpp"
#include "test_support.hpp"

using namespace mrlab;
using namespace testsupport;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void report(int num, const char* title, const Outcome& o, double seconds) {
    std::ostringstream line;
    line << "[criterion " << num << "] " << (o.ok ? "PASS" : "FAIL") << " - " << title << " ("
         << seconds << " s)";
    if (!o.ok) line << " :: " << o.detail;
    std::cout << line.str() << std::endl;
}

#define RUN_CRITERION(num, title, fn)                                    \
    TEST_CASE("criterion " #num ": " title) {                            \
        const auto t0 = std::chrono::steady_clock::now();                \
        Outcome out = fn();                                              \
        const double secs =                                              \
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); \
        report(num, title, out, secs);                                   \
        REQUIRE(out.ok);                                                 \
    }

Matrix appendix_dual_matrix(const FieldSpec& f13) {
    Matrix m(f13, 6, 8);
    const std::int64_t rows[6][8] = {{1, 0, 0, 0, 0, 0, 6, 6}, {0, 1, 0, 0, 0, 0, 7, 5},
                                     {0, 0, 1, 0, 0, 0, 8, 4}, {0, 0, 0, 1, 0, 0, 9, 3},
                                     {0, 0, 0, 0, 1, 0, 10, 2}, {0, 0, 0, 0, 0, 1, 11, 1}};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 8; ++j) m.at(i, j) = f13.from_signed(rows[i][j]);
    return m;
}

ErasurePattern holzbaur_pattern() {
    ErasurePattern ebar(5, 5, {{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}});
    return ebar.complement();
}

ErasurePattern pattern_from_mask(std::size_t m, std::size_t n, std::uint64_t mask) {
    ErasurePattern e(m, n);
    for (std::size_t c = 0; c < m * n; ++c)
        if ((mask >> c) & 1) e.add(static_cast<int>(c / n), static_cast<int>(c % n));
    return e;
}

// ---- criterion 1 ----------------------------------------------------------
// The counterexample pair over F_13: the (8,2) code passes order 4, its dual
// fails with a witness whose one-dimensional intersection contains
// (5,4,3,2,8,0) in the printed dual basis.
Outcome criterion1() {
    Outcome o;
    auto f13 = make_prime_field(13);
    LinearCode rs = reed_solomon(f13, 8, 2);
    o.check(!is_mds_ell(rs, 4).has_value(), "primal code fails order 4");

    Matrix vperp = appendix_dual_matrix(f13);
    LinearCode d{Matrix(vperp)};
    o.check(same_row_space(d.generator(), dual(rs).generator()), "printed dual has the wrong row space");
    const auto w = is_mds_ell(d, 4);
    o.check(w.has_value(), "dual unexpectedly passes order 4");
    if (!w) return o;
    o.check(w->actual_dim > w->generic_dim, "witness dimensions not separated");

    const std::vector<FieldElement> y = {f13.from(5), f13.from(4), f13.from(3),
                                         f13.from(2), f13.from(8), f13.from(0)};
    Matrix inter = vperp.cols_subset(w->family.sets.at(0));
    for (std::size_t i = 1; i < w->family.sets.size(); ++i)
        inter = intersect_col_spaces(inter, vperp.cols_subset(w->family.sets[i]));
    o.check(inter.cols() == static_cast<std::size_t>(w->actual_dim), "intersection dimension mismatch");
    o.check(solve(inter, y).has_value(), "(5,4,3,2,8,0) not in the witness intersection");
    for (const auto& s : w->family.sets)
        o.check(solve(vperp.cols_subset(s), y).has_value(), "(5,4,3,2,8,0) missing from a span");
    return o;
}

// ---- criterion 2 ----------------------------------------------------------
// Maximal recoverability of parity (x) row-code equals the order-3 condition
// of the row code, across large-field and engineered small-field instances.
Outcome criterion2() {
    Outcome o;
    auto fM = make_prime_field(kGenericPrime);
    const std::vector<FieldSpec> small = {make_prime_field(2), make_prime_field(3)};
    for (std::size_t b : {1, 2}) {
        const std::size_t n = 6, k = n - b;
        int tested = 0;
        for (std::uint64_t seed = 0; tested < 10; ++seed) {
            LinearCode row = random_code(fM, n, k, mix64(seed ^ (b << 8)));
            const bool mds3 = !is_mds_ell(row, 3).has_value();
            o.check(mds3, "large-field instance unexpectedly fails order 3");
            TensorCode t(parity_code(fM, 3), row);
            const bool mr = !verify_mr(t).has_value();
            o.check(mr == mds3, "MR and order-3 disagree on a large-field instance");
            ++tested;
        }
        // engineered failures over tiny fields
        const FieldSpec& f = small[b - 1];
        int failing = 0;
        for (std::uint64_t seed = 0; failing < 10 && seed < 20000; ++seed) {
            LinearCode row = random_code(f, n, k, seed);
            if (!is_mds_ell(row, 3).has_value()) continue;
            ++failing;
            TensorCode t(parity_code(f, 3), row);
            const auto bad = verify_mr(t);
            o.check(bad.has_value(), "MR holds although order 3 fails");
            if (bad) {
                o.check(is_generically_correctable(*bad, 1, static_cast<int>(b)),
                        "returned pattern is not generically correctable");
                o.check(!is_correctable(t, *bad), "returned pattern is correctable after all");
            }
        }
        o.check(failing == 10, "could not engineer ten failing small-field instances");
    }
    return o;
}

// ---- criterion 3 ----------------------------------------------------------
// Naive regularity equals excess-compatibility on every pattern of the three
// grids, for all four (a,b) combinations.
Outcome criterion3() {
    Outcome o;
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 3}, {3, 4}, {4, 4}}) {
        for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
            const std::size_t cells = m * n;
            std::atomic<long long> mismatches{0};
            parallel_first<bool>(1ull << cells, [&](std::size_t mask) -> std::optional<bool> {
                ErasurePattern e = pattern_from_mask(m, n, mask);
                const bool reg = !is_regular_naive(e, a, b).has_value();
                const bool exc = !is_excess_compatible(e, a, b).has_value();
                if (reg != exc) ++mismatches;
                return std::nullopt;  // exhaustive sweep
            });
            o.check(mismatches == 0, "mismatch in grid " + std::to_string(m) + "x" + std::to_string(n) +
                                         " a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
    }
    return o;
}

// ---- criterion 4 ----------------------------------------------------------
// For a = 1 the flow test decides generic correctability on the full cube.
Outcome criterion4() {
    Outcome o;
    for (int b : {1, 2}) {
        for (std::uint64_t mask = 0; mask < (1ull << 9); ++mask) {
            ErasurePattern e = pattern_from_mask(3, 3, mask);
            const bool flow = fast_check(e, 1, b);
            const bool generic = is_generically_correctable(e, 1, b, 2, mix64(mask));
            if (flow != generic) {
                o.check(false, "disagreement at mask " + std::to_string(mask) + " b=" + std::to_string(b));
                return o;
            }
        }
    }
    return o;
}

// ---- criterion 5 ----------------------------------------------------------
// The 5x5, a=b=2 pattern: regular by both tests, yet generically
// uncorrectable; the generator columns on the complement span at most 8 < 9
// dimensions, through the two-term tensor dimension identity.
Outcome criterion5() {
    Outcome o;
    ErasurePattern e = holzbaur_pattern();
    o.check(!is_regular_naive(e, 2, 2).has_value(), "naive regularity fails");
    o.check(!is_regular_naive(e, 2, 2, true).has_value(), "full-enumeration regularity fails");
    o.check(fast_check(e, 2, 2), "flow test fails");
    o.check(!is_generically_correctable(e, 2, 2), "pattern unexpectedly correctable");

    // rank bound via the dimension identity on a generic instantiation
    auto fM = make_prime_field(kGenericPrime);
    Rng rng(17);
    Matrix u = random_matrix(fM, 3, 5, rng), v = random_matrix(fM, 3, 5, rng);
    const Matrix u23 = u.cols_subset({1, 2}), u45 = u.cols_subset({3, 4});
    const Matrix v23 = v.cols_subset({1, 2}), v45 = v.cols_subset({3, 4});
    o.check(intersect_col_spaces(u23, u45).cols() == 1, "column-space intersection not 1-dimensional");
    o.check(intersect_col_spaces(v23, v45).cols() == 1, "row-space intersection not 1-dimensional");
    const std::size_t two_term = tensor_sum_dim({{u23, v23}, {u45, v45}}, 3, 3);
    o.check(two_term == 4 + 4 - 1, "two-term dimension is not 7");

    // all nine complement columns together stay at most one higher
    const Matrix gen = kronecker(u, v);  // 9 x 25, column (i,j) at i*5+j
    std::vector<int> ebar_cols;
    for (auto [i, j] : std::vector<std::pair<int, int>>{
             {0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}})
        ebar_cols.push_back(i * 5 + j);
    const std::size_t dim = rank(gen.cols_subset(ebar_cols));
    o.check(dim <= 8, "complement rank exceeds 8");
    o.check(dim < 9, "complement rank reaches full");
    return o;
}

// ---- criterion 6 ----------------------------------------------------------
// Randomized construction of an maximally recoverable (3,5,1,2) tensor code
// over a prime field of roughly n^{b(m-a)} = 625 elements, confirmed by the
// exhaustive verifier. Exercises the command-line search when available.
Outcome criterion6() {
    Outcome o;
    const std::uint64_t q = 631;
    if (const char* bin = std::getenv("MRLAB_BIN")) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "mrlab_acceptance";
        fs::create_directories(dir);
        const std::string prefix = (dir / "c6").string();
        const std::string cmd = std::string(bin) + " search --m 3 --n 5 --a 1 --b 2 --q " +
                                std::to_string(q) + " --seed 0 --max-attempts 10000 --out " + prefix +
                                " > " + (dir / "c6.log").string() + " 2>&1";
        o.check(WEXITSTATUS(std::system(cmd.c_str())) == 0, "search subcommand did not succeed");
        std::ifstream rowin(prefix + "-row.code"), colin(prefix + "-col.code");
        o.check(rowin.good() && colin.good(), "search did not write the code files");
        if (!o.ok) return o;
        LinearCode row = read_code(rowin), col = read_code(colin);
        TensorCode t(col, row);
        o.check(t.m() == 3 && t.n() == 5 && t.a() == 1 && t.b() == 2, "wrong shape");
        o.check(!verify_mr(t).has_value(), "search result is not maximally recoverable");
        return o;
    }
    const auto t = search_mr_random(3, 5, 1, 2, make_prime_field(q), 10000, 0);
    o.check(t.has_value(), "search exhausted its attempt budget");
    if (t) o.check(!verify_mr(*t).has_value(), "search result is not maximally recoverable");
    return o;
}

// ---- criterion 7 ----------------------------------------------------------
// Duality suite on twenty random order-3 codes with n <= 8: order-3 duality,
// the cycle condition for duals, and the cycle-to-disjoint hierarchy.
Outcome criterion7() {
    Outcome o;
    auto fM = make_prime_field(kGenericPrime);
    std::vector<LinearCode> corpus;
    std::uint64_t seed = 1000;
    while (corpus.size() < 20) {
        const std::size_t n = 6 + (seed % 3);
        const std::size_t k = 2 + (seed % (n - 3));
        corpus.push_back(random_code(fM, n, k, mix64(seed)));
        ++seed;
    }
    for (const auto& c : corpus) {
        o.check(!is_mds_ell(c, 3).has_value(), "corpus code fails order 3");
        LinearCode d = dual(c);
        o.check(!is_mds_ell(d, 3).has_value(), "order-3 duality fails");
        o.check(!is_cycle_mds_ell(d, 3).has_value(), "dual fails the cycle condition at order 3");
        const bool cyc = !is_cycle_mds_ell(c, 3).has_value();
        const bool weak = !is_weak_mds_ell(c, 3).has_value();
        if (cyc) o.check(weak, "cycle holds but the disjoint relaxation fails");
    }
    // order-4 instances of the weak duality
    for (std::uint64_t s = 0; s < 5; ++s) {
        LinearCode c = random_code(fM, 7 + (s % 2), 4 + (s % 2), mix64(7000 + s));
        o.check(!is_mds_ell(c, 4).has_value(), "order-4 corpus code fails");
        LinearCode d = dual(c);
        o.check(!is_cycle_mds_ell(d, 4).has_value(), "dual fails the cycle condition at order 4");
        const bool weak = !is_weak_mds_ell(d, 4).has_value();
        o.check(weak, "cycle holds but the disjoint relaxation fails at order 4");
    }
    return o;
}

// ---- criterion 8 ----------------------------------------------------------
// The two point-family constructions. The tripartite case at p = 19 cannot
// exist: 9 divides p-1, so the cube root of unity is itself a cube and the
// unique index-3 subgroup contains it; an exhaustive search over all
// C(18,6) subsets (any zeta, any non-residue c) confirms that no valid S
// exists at all. The check is kept as stated and reports the failure.
Outcome criterion8() {
    Outcome o;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        const auto fam = build_bipartite(p);
        o.check(!verify_bipartite(fam).has_value(), "bipartite fails at p=" + std::to_string(p));
        const Matrix m = bipartite_matrix(fam);
        std::vector<int> uside, vside;
        for (std::uint64_t t = 0; t < p; ++t) {
            uside.push_back(static_cast<int>(t));
            vside.push_back(static_cast<int>(p + t));
        }
        if (p >= 3) {
            o.check(!is_mds(m.cols_subset(uside)), "collinear u side passes MDS at p=" + std::to_string(p));
            o.check(!is_mds(m.cols_subset(vside)), "collinear v side passes MDS at p=" + std::to_string(p));
        }
    }
    for (std::uint64_t p : {7ull, 13ull, 19ull}) {
        try {
            const auto fam = build_tripartite(p);
            o.check(!verify_tripartite(fam).has_value(), "tripartite fails at p=" + std::to_string(p));
        } catch (const std::exception& ex) {
            o.check(false, "tripartite p=" + std::to_string(p) + ": " + ex.what());
        }
    }
    return o;
}

// ---- criterion 9 ----------------------------------------------------------
// The sampling falsifier finds disjoint order-3 violations of RS(12,3) over
// every prime field up to 31, and each witness re-verifies exactly.
Outcome criterion9() {
    Outcome o;
    for (std::uint64_t q : {13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        auto f = make_prime_field(q);
        LinearCode rs = reed_solomon(f, 12, 3);
        const auto w = find_violation(rs, 3, 100000, 0);
        o.check(w.has_value(), "no violation found at q=" + std::to_string(q));
        if (!w) continue;
        o.check(w->actual_dim >= 1, "witness actual dimension below 1");
        o.check(w->generic_dim == 0, "witness generic dimension nonzero");
        o.check(intersection_dim(rs.generator(), w->family) == w->actual_dim,
                "witness does not re-verify");
        o.check(generic_intersection_dim(3, 12, w->family) == 0, "generic side does not re-verify");
        std::uint64_t used = 0;
        for (const auto& s : w->family.sets) {
            o.check(s.size() == 2, "witness set size is not k-1");
            for (int x : s) {
                o.check(((used >> x) & 1) == 0, "witness sets overlap");
                used |= 1ull << x;
            }
        }
    }
    return o;
}

// ---- criterion 10 ---------------------------------------------------------
// The block-matrix intersection dimension matches the independent
// equation-stacking oracle on 500 random instances, and the two-term tensor
// dimension identity holds exactly on 100 random subspace quadruples.
Outcome criterion10() {
    Outcome o;
    Rng rng(31337);
    auto f13 = make_prime_field(13);
    for (int t = 0; t < 500; ++t) {
        const std::size_t k = 2 + rng.below(4);
        const std::size_t n = k + 1 + rng.below(8 - k);
        const std::size_t l = 2 + rng.below(3);
        Matrix v = random_matrix(f13, k, n, rng);
        SetFamily fam{n, {}};
        for (std::size_t i = 0; i < l; ++i) fam.sets.push_back(random_subset(n, 1 + rng.below(n), rng));
        if (intersection_dim(v, fam) != kernel_stack_intersection_dim(v, fam)) {
            o.check(false, "oracle mismatch at instance " + std::to_string(t));
            return o;
        }
    }
    int done = 0;
    while (done < 100) {
        const std::size_t d1 = 2 + rng.below(3), d2 = 2 + rng.below(3);
        Matrix u1 = random_matrix(f13, d1, 1 + rng.below(d1), rng);
        Matrix u2 = random_matrix(f13, d1, 1 + rng.below(d1), rng);
        Matrix v1 = random_matrix(f13, d2, 1 + rng.below(d2), rng);
        Matrix v2 = random_matrix(f13, d2, 1 + rng.below(d2), rng);
        const auto lhs = tensor_sum_dim({{u1, v1}, {u2, v2}}, d1, d2);
        const auto rhs = rank(u1) * rank(v1) + rank(u2) * rank(v2) -
                         intersect_col_spaces(u1, u2).cols() * intersect_col_spaces(v1, v2).cols();
        if (lhs != rhs) {
            o.check(false, "dimension identity fails at instance " + std::to_string(done));
            return o;
        }
        ++done;
    }
    return o;
}

}  // namespace

RUN_CRITERION(1, "counterexample pair over F_13", criterion1)
RUN_CRITERION(2, "maximal recoverability equals the order-3 condition", criterion2)
RUN_CRITERION(3, "regularity equals excess-compatibility", criterion3)
RUN_CRITERION(4, "flow test decides generic correctability for a=1", criterion4)
RUN_CRITERION(5, "regular but uncorrectable 5x5 pattern", criterion5)
RUN_CRITERION(6, "randomized construction of a (3,5,1,2) code", criterion6)
RUN_CRITERION(7, "duality suite", criterion7)
RUN_CRITERION(8, "point-family constructions", criterion8)
RUN_CRITERION(9, "sampling falsifier on RS(12,3)", criterion9)
RUN_CRITERION(10, "intersection oracle consistency", criterion10)

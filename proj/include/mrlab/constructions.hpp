#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mrlab/codes.hpp"
#include "mrlab/linalg.hpp"

namespace mrlab {

using Vec3 = std::array<FieldElement, 3>;

inline Vec3 cross(const FieldSpec& f, const Vec3& u, const Vec3& v) {
    return {f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
            f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
            f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]))};
}

inline std::uint64_t smallest_nonresidue(std::uint64_t p) {
    for (std::uint64_t c = 2; c < p; ++c)
        if (!is_quadratic_residue(c, p)) return c;
    throw std::invalid_argument("no quadratic non-residue modulo " + std::to_string(p));
}

// Two families of p lines each in F_{p^2}^3: u_alpha = (alpha, -1, 0) and
// v_beta = (beta + beta^2 X, 0, -1). The 2-dimensional spans
// W_{alpha,beta} = <u_alpha, v_beta> intersect triple-wise only in the
// degenerate configurations where they generically should.
struct BipartiteFamily {
    FieldSpec field;  // F_{p^2} with X^2 = c, c the smallest non-residue
    std::uint64_t p = 0;
    std::vector<Vec3> u;  // indexed by alpha = 0..p-1
    std::vector<Vec3> v;  // indexed by beta = 0..p-1
};

inline BipartiteFamily build_bipartite(std::uint64_t p) {
    if (p == 2) throw std::invalid_argument("p = 2 has no quadratic non-residue");
    const FieldSpec f = FieldSpec::quadratic(p, smallest_nonresidue(p));
    BipartiteFamily fam{f, p, {}, {}};
    const FieldElement minus_one = f.neg(f.one());
    for (std::uint64_t t = 0; t < p; ++t) {
        fam.u.push_back({f.from(t), minus_one, f.zero()});
        const FieldElement beta = f.from(t);
        const FieldElement b2x = f.mul(f.mul(beta, beta), f.gen());
        fam.v.push_back({f.add(beta, b2x), f.zero(), minus_one});
    }
    return fam;
}

// span(u_alpha, v_beta); always 2-dimensional
inline Matrix bipartite_span(const BipartiteFamily& fam, std::uint64_t alpha, std::uint64_t beta) {
    Matrix m(fam.field, 3, 2);
    for (int i = 0; i < 3; ++i) {
        m.at(i, 0) = fam.u.at(alpha)[i];
        m.at(i, 1) = fam.v.at(beta)[i];
    }
    return m;
}

struct BipartiteViolation {
    std::array<std::pair<std::uint64_t, std::uint64_t>, 3> pairs;  // (alpha, beta) triples
};

// Exhaustive check over all triples of distinct (alpha, beta) pairs: a
// nonzero triple intersection must come from a degenerate configuration
// (all alphas equal or all betas equal; repeated pairs cannot occur among
// distinct pairs). Intersection is tested through the normal vectors
// w = u x v: the three spans share a point iff det[w1 w2 w3] = 0.
inline std::optional<BipartiteViolation> verify_bipartite(const BipartiteFamily& fam) {
    const FieldSpec& f = fam.field;
    const std::uint64_t p = fam.p;
    std::vector<Vec3> w(p * p);
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) w[a * p + b] = cross(f, fam.u[a], fam.v[b]);

    const auto det3 = [&](const Vec3& x, const Vec3& y, const Vec3& z) {
        FieldElement d = f.mul(x[0], f.sub(f.mul(y[1], z[2]), f.mul(y[2], z[1])));
        d = f.sub(d, f.mul(y[0], f.sub(f.mul(x[1], z[2]), f.mul(x[2], z[1]))));
        d = f.add(d, f.mul(z[0], f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1]))));
        return d;
    };

    const std::uint64_t total = p * p;
    for (std::uint64_t i = 0; i < total; ++i)
        for (std::uint64_t j = i + 1; j < total; ++j)
            for (std::uint64_t k = j + 1; k < total; ++k) {
                if (!f.is_zero(det3(w[i], w[j], w[k]))) continue;
                const std::uint64_t a1 = i / p, b1 = i % p;
                const std::uint64_t a2 = j / p, b2 = j % p;
                const std::uint64_t a3 = k / p, b3 = k % p;
                const bool alphas_equal = (a1 == a2 && a2 == a3);
                const bool betas_equal = (b1 == b2 && b2 == b3);
                if (alphas_equal || betas_equal) continue;
                return BipartiteViolation{{std::pair{a1, b1}, std::pair{a2, b2}, std::pair{a3, b3}}};
            }
    return std::nullopt;
}

// Three point sets on the moment curve in F_{p^2}^3 built from a subgroup S
// of F_p^* of index 3 avoiding the cube root of unity zeta:
//   U = {(1, s, s^2)}, V = {(1, zeta s, zeta^2 s^2)} for s in S,
//   W = {(1, gX, g^2 c)} for g = 1..(p-1)/2, where X^2 = c.
struct TripartiteFamily {
    FieldSpec field;
    std::uint64_t p = 0;
    std::uint64_t zeta = 0;
    std::uint64_t c = 0;
    std::vector<std::uint64_t> s;  // the subgroup
    std::vector<Vec3> u, v, w;
};

// The cube-subgroup choice is the deterministic default. A cyclic group has
// exactly one subgroup of each order, so when zeta happens to be a cube
// (exactly the primes with 9 | p-1) no index-3 subgroup avoids it and the
// construction is reported as infeasible.
inline TripartiteFamily build_tripartite(std::uint64_t p) {
    if (!is_prime_u64(p) || p % 3 != 1)
        throw std::invalid_argument("requires a prime p with p = 1 mod 3");
    const FieldSpec fp = FieldSpec::prime(p);
    const std::uint64_t zeta = find_cube_root_of_unity(fp).a0;

    // S = the cubes, the unique subgroup of size (p-1)/3
    std::vector<bool> seen(p, false);
    std::vector<std::uint64_t> cubes;
    for (std::uint64_t x = 1; x < p; ++x) {
        const std::uint64_t c3 = detail::mulmod(detail::mulmod(x, x, p), x, p);
        if (!seen[c3]) {
            seen[c3] = true;
            cubes.push_back(c3);
        }
    }
    std::sort(cubes.begin(), cubes.end());
    if (seen[zeta])
        throw std::runtime_error("no index-3 subgroup of F_" + std::to_string(p) +
                                 "* avoids the cube root of unity " + std::to_string(zeta) +
                                 " (it is itself a cube); the construction is infeasible here");

    const std::uint64_t c = smallest_nonresidue(p);
    const FieldSpec f = FieldSpec::quadratic(p, c);
    TripartiteFamily fam{f, p, zeta, c, cubes, {}, {}, {}};
    for (const std::uint64_t s : cubes) {
        const FieldElement se = f.from(s);
        fam.u.push_back({f.one(), se, f.mul(se, se)});
        const FieldElement zs = f.from(detail::mulmod(zeta, s, p));
        fam.v.push_back({f.one(), zs, f.mul(zs, zs)});
    }
    for (std::uint64_t g = 1; g <= (p - 1) / 2; ++g) {
        const FieldElement gx = f.mul(f.from(g), f.gen());
        fam.w.push_back({f.one(), gx, f.mul(gx, gx)});
    }
    return fam;
}

struct TripartiteViolation {
    bool mds_failure = false;          // the union failed the MDS(2) check
    std::array<int, 2> ui{}, vi{}, wi{};  // offending index pairs otherwise
};

// Checks span(u1,u2) cap span(v1,v2) cap span(w1,w2) = 0 for all pairs drawn
// from U, V, W respectively, plus the MDS property of the union (distinct
// moment-curve points).
inline std::optional<TripartiteViolation> verify_tripartite(const TripartiteFamily& fam) {
    const FieldSpec& f = fam.field;
    const auto pair_normal = [&](const std::vector<Vec3>& pts, int i, int j) {
        return cross(f, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    };
    const auto det3 = [&](const Vec3& x, const Vec3& y, const Vec3& z) {
        FieldElement d = f.mul(x[0], f.sub(f.mul(y[1], z[2]), f.mul(y[2], z[1])));
        d = f.sub(d, f.mul(y[0], f.sub(f.mul(x[1], z[2]), f.mul(x[2], z[1]))));
        d = f.add(d, f.mul(z[0], f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1]))));
        return d;
    };

    const int nu = static_cast<int>(fam.u.size());
    const int nv = static_cast<int>(fam.v.size());
    const int nw = static_cast<int>(fam.w.size());
    for (int u1 = 0; u1 < nu; ++u1)
        for (int u2 = u1 + 1; u2 < nu; ++u2) {
            const Vec3 pu = pair_normal(fam.u, u1, u2);
            for (int v1 = 0; v1 < nv; ++v1)
                for (int v2 = v1 + 1; v2 < nv; ++v2) {
                    const Vec3 pv = pair_normal(fam.v, v1, v2);
                    for (int w1 = 0; w1 < nw; ++w1)
                        for (int w2 = w1 + 1; w2 < nw; ++w2) {
                            const Vec3 pw = pair_normal(fam.w, w1, w2);
                            if (f.is_zero(det3(pu, pv, pw)))
                                return TripartiteViolation{false, {u1, u2}, {v1, v2}, {w1, w2}};
                        }
                }
        }

    // MDS(2) of the union: all vectors as columns of a 3 x N matrix
    Matrix m(f, 3, fam.u.size() + fam.v.size() + fam.w.size());
    std::size_t col = 0;
    for (const auto& grp : {fam.u, fam.v, fam.w})
        for (const auto& pt : grp) {
            for (int i = 0; i < 3; ++i) m.at(static_cast<std::size_t>(i), col) = pt[i];
            ++col;
        }
    if (!is_mds(m)) {
        TripartiteViolation viol;
        viol.mds_failure = true;
        return viol;
    }
    return std::nullopt;
}

// columns = all family vectors, for file emission
inline Matrix bipartite_matrix(const BipartiteFamily& fam) {
    Matrix m(fam.field, 3, 2 * fam.p);
    for (std::size_t t = 0; t < fam.p; ++t)
        for (int i = 0; i < 3; ++i) {
            m.at(i, t) = fam.u[t][i];
            m.at(i, fam.p + t) = fam.v[t][i];
        }
    return m;
}

inline Matrix tripartite_matrix(const TripartiteFamily& fam) {
    Matrix m(fam.field, 3, fam.u.size() + fam.v.size() + fam.w.size());
    std::size_t col = 0;
    for (const auto& grp : {fam.u, fam.v, fam.w})
        for (const auto& pt : grp) {
            for (int i = 0; i < 3; ++i) m.at(static_cast<std::size_t>(i), col) = pt[i];
            ++col;
        }
    return m;
}

}  // namespace mrlab

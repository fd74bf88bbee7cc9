#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mrlab/codes.hpp"
#include "mrlab/enumeration.hpp"
#include "mrlab/linalg.hpp"

namespace mrlab {

// Certificate that a higher-order MDS condition fails: the family's exact
// intersection dimension differs from the generic one. For MDS inputs the
// failure direction is always actual > generic; degenerate non-MDS inputs
// (zero columns) can only fail the other way around.
struct MdsWitness {
    SetFamily family;
    int actual_dim = 0;
    int generic_dim = 0;
};

namespace hmds_detail {

inline constexpr std::uint64_t kOracleSeed = 0x6f7261636c65ull;

// Witness for a plain MDS failure, phrased as a 2-set family. For a dependent
// column b with minimal support S among its predecessors, (S, {b}) has exact
// intersection span{V_b} of dimension 1 while the generic one is 0. A zero
// column yields ({b},{b}) with dimensions 0 vs 1 instead.
inline std::optional<MdsWitness> mds_base_witness(const LinearCode& c) {
    const Matrix& g = c.generator();
    const FieldSpec& f = c.field();
    const std::size_t k = c.k(), n = c.n();
    std::optional<std::vector<int>> bad;
    for_each_combination(n, k, [&](const std::vector<int>& cols) {
        if (bad) return;
        if (rank(g.cols_subset(cols)) != k) bad = cols;
    });
    if (!bad) return std::nullopt;

    // first column of the deficient subset that depends on its predecessors
    std::vector<int> kept;
    for (int col : *bad) {
        std::vector<int> trial = kept;
        trial.push_back(col);
        if (rank(g.cols_subset(trial)) == trial.size()) {
            kept = std::move(trial);
            continue;
        }
        if (kept.empty()) {  // zero column
            SetFamily fam{n, {{col}, {col}}};
            return MdsWitness{fam, 0, 1};
        }
        const Matrix pre = g.cols_subset(kept);
        const auto coeffs = solve(pre, g.col(static_cast<std::size_t>(col)));
        std::vector<int> support;
        for (std::size_t t = 0; t < coeffs->size(); ++t)
            if (!f.is_zero((*coeffs)[t])) support.push_back(kept[t]);
        SetFamily fam{n, {support, {col}}};
        return MdsWitness{fam, 1, 0};
    }
    return std::nullopt;  // unreachable: the subset was rank deficient
}

inline bool list_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// first index in the lex-sorted pool whose entry is >= prev
inline std::size_t first_not_below(const std::vector<std::vector<int>>& pool,
                                   const std::vector<int>& prev) {
    return static_cast<std::size_t>(
        std::lower_bound(pool.begin(), pool.end(), prev, list_lex_less) - pool.begin());
}

// all subsets of {0..n-1} of each size, lexicographic within a size,
// together with their bitmasks
struct SubsetTables {
    std::vector<std::vector<std::vector<int>>> sets;
    std::vector<std::vector<std::uint64_t>> masks;
};

inline SubsetTables subsets_by_size(std::size_t n, std::size_t max_size) {
    SubsetTables out;
    out.sets.resize(max_size + 1);
    out.masks.resize(max_size + 1);
    for (std::size_t s = 0; s <= max_size; ++s)
        for_each_combination(n, s, [&](const std::vector<int>& c) {
            out.sets[s].push_back(c);
            out.masks[s].push_back(mask_of(c));
        });
    return out;
}

// interval modulo l: at most one wrap-around boundary in the cyclic order
inline bool is_cyclic_interval(std::uint32_t t, int l) {
    int boundaries = 0;
    for (int i = 0; i < l; ++i) {
        const bool cur = (t >> i) & 1;
        const bool nxt = (t >> ((i + 1) % l)) & 1;
        if (cur && !nxt) ++boundaries;
    }
    return boundaries <= 1;
}

inline bool is_cycle_family(const std::vector<std::uint64_t>& masks, std::size_t n) {
    const int l = static_cast<int>(masks.size());
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t t = 0;
        for (int i = 0; i < l; ++i)
            if ((masks[i] >> j) & 1) t |= 1u << i;
        if (t && !is_cyclic_interval(t, l)) return false;
    }
    return true;
}

// Annihilator rows of every span, cached per column subset and keyed by
// bitmask. Stacking the annihilators of a family's spans gives the exact
// intersection dimension as a nullity, which serves as the cheap zero test
// during enumeration; any nonzero hit is recomputed through the block-matrix
// intersection_dim before a witness is reported.
class PerpCache {
  public:
    explicit PerpCache(const Matrix& v) : v_(v) {}

    const std::vector<std::vector<FieldElement>>& rows_for(std::uint64_t mask) {
        auto it = cache_.find(mask);
        if (it != cache_.end()) return it->second;
        const Matrix p = kernel(v_.cols_subset(bits_of(mask)).transpose());  // columns = annihilators
        std::vector<std::vector<FieldElement>> rows(p.cols());
        for (std::size_t t = 0; t < p.cols(); ++t) {
            rows[t].resize(v_.rows());
            for (std::size_t i = 0; i < v_.rows(); ++i) rows[t][i] = p.at(i, t);
        }
        return cache_.emplace(mask, std::move(rows)).first->second;
    }

  private:
    const Matrix& v_;
    std::unordered_map<std::uint64_t, std::vector<std::vector<FieldElement>>> cache_;
};

// Incremental row-echelon accumulator with rollback, used to carry the
// stacked-annihilator rank down an enumeration tree so each prefix is
// eliminated once for all families below it. Reduction uses
// cross-multiplication (r[lead]*v - v[lead]*r), which avoids inversions;
// only ranks matter here, so row scaling is irrelevant.
class IncrementalRank {
  public:
    IncrementalRank(const FieldSpec& f, std::size_t cols)
        : f_(&f), cols_(cols), row_of_lead_(cols), log_() {}

    std::size_t rank() const { return log_.size(); }
    std::size_t mark() const { return log_.size(); }

    void add(const std::vector<FieldElement>& src) {
        scratch_.assign(src.begin(), src.end());
        auto& v = scratch_;
        std::size_t lead = 0;
        while (true) {
            while (lead < cols_ && f_->is_zero(v[lead])) ++lead;
            if (lead == cols_) return;
            const auto& r = row_of_lead_[lead];
            if (r.empty()) break;
            const FieldElement ra = r[lead], vb = v[lead];
            v[lead] = f_->zero();
            for (std::size_t j = lead + 1; j < cols_; ++j)
                v[j] = f_->sub(f_->mul(ra, v[j]), f_->mul(vb, r[j]));
        }
        // cleared slots keep their capacity, so steady-state adds do not allocate
        row_of_lead_[lead].swap(scratch_);
        log_.push_back(lead);
    }

    void rollback(std::size_t to_mark) {
        while (log_.size() > to_mark) {
            row_of_lead_[log_.back()].clear();
            log_.pop_back();
        }
    }

  private:
    const FieldSpec* f_;
    std::size_t cols_;
    std::vector<std::vector<FieldElement>> row_of_lead_;
    std::vector<std::size_t> log_;
    std::vector<FieldElement> scratch_;
};

// Two independently instantiated generic matrices tracked in lockstep with
// the enumeration, each with its own annihilator stack. A family whose
// intersection is nonzero under both instances is generically unconstrained
// and passes without consulting the sampling oracle; the rare family that
// looks like a witness is always re-checked through intersection_dim and
// generic_intersection_dim before being reported.
class LockstepGeneric {
  public:
    LockstepGeneric(std::size_t k, std::size_t n, std::uint64_t seed)
        : w1_(sample(k, n, seed, 1)),
          w2_(sample(k, n, seed, 2)),
          p1_(w1_),
          p2_(w2_),
          e1_(w1_.field(), k),
          e2_(w2_.field(), k) {}

    LockstepGeneric(const LockstepGeneric&) = delete;
    LockstepGeneric& operator=(const LockstepGeneric&) = delete;

    void push(std::uint64_t mask) {
        for (const auto& row : p1_.rows_for(mask)) e1_.add(row);
        for (const auto& row : p2_.rows_for(mask)) e2_.add(row);
    }

    std::pair<std::size_t, std::size_t> mark() const { return {e1_.mark(), e2_.mark()}; }
    void rollback(std::pair<std::size_t, std::size_t> m) {
        e1_.rollback(m.first);
        e2_.rollback(m.second);
    }

    // both instances report a nonzero intersection
    bool surely_nonzero(std::size_t k) const { return e1_.rank() < k && e2_.rank() < k; }

  private:
    static Matrix sample(std::size_t k, std::size_t n, std::uint64_t seed, std::uint64_t tag) {
        const FieldSpec f = FieldSpec::prime(kGenericPrime);
        Rng rng = Rng(seed).derived(0x6c6f636bull ^ tag);
        Matrix w(f, k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) w.at(i, j) = f.sample(rng);
        return w;
    }

    Matrix w1_, w2_;
    PerpCache p1_, p2_;
    IncrementalRank e1_, e2_;
};

// one chosen set nested inside or containing another: the wider set is
// redundant on both the exact and the generic side, so the family collapses
// to one order lower and is covered by the preceding orders
inline bool has_containment(const std::vector<std::uint64_t>& masks, int count, std::uint64_t cand) {
    for (int i = 0; i < count; ++i) {
        const std::uint64_t meet = masks[i] & cand;
        if (meet == cand || meet == masks[i]) return true;
    }
    return false;
}

}  // namespace hmds_detail

// Decides the MDS(l) property. Empty result means the code is MDS(l); a
// witness reports the first failing family found.
//
// The search runs order by order: plain MDS first (order 2), then for each
// order j in 3..l the families with |A_i| <= k-1, sum |A_i| = (j-1)k and
// empty common intersection. Families containing a size-k set span the whole
// space there and collapse to a family of one order lower, so they are
// covered by the preceding orders and never enumerated. Within an order,
// size compositions run in descending lexicographic order; set tuples are
// canonical (sorted) multiset representatives in ascending lexicographic
// order. Exact intersections are computed first; the randomized generic
// oracle is consulted only for families with a nonzero exact intersection,
// which is sound because MDS intersections dominate generic ones.
inline std::optional<MdsWitness> is_mds_ell(const LinearCode& c, int ell) {
    using namespace hmds_detail;
    if (ell < 2) throw std::invalid_argument("order must be at least 2");
    if (auto w = mds_base_witness(c)) return w;

    const std::size_t k = c.k(), n = c.n();
    const Matrix& v = c.generator();
    if (k < 2) return std::nullopt;  // every family collapses through full sets
    const auto tables = subsets_by_size(n, k - 1);
    PerpCache perps(v);
    IncrementalRank elim(v.field(), k);
    LockstepGeneric generic(k, n, kOracleSeed);

    for (int order = 3; order <= ell; ++order) {
        std::optional<MdsWitness> found;
        for_each_composition_desc(static_cast<int>((order - 1) * k), order, 1, static_cast<int>(k - 1),
                                  [&](const std::vector<int>& sizes) -> bool {
            std::vector<std::size_t> chosen(order);
            std::vector<std::uint64_t> masks(order);
            std::function<bool(int)> rec = [&](int idx) -> bool {
                if (elim.rank() == k) return true;  // intersection already zero for any completion
                if (idx == order) {
                    std::uint64_t inter = masks[0];
                    for (int i = 1; i < order; ++i) inter &= masks[i];
                    if (inter) return true;
                    if (generic.surely_nonzero(k)) return true;  // unconstrained family
                    SetFamily fam{n, {}};
                    for (int i = 0; i < order; ++i) fam.sets.push_back(tables.sets[sizes[i]][chosen[i]]);
                    const int d = intersection_dim(v, fam);
                    if (d == 0) return true;
                    const int g = generic_intersection_dim(k, n, fam, 2, kOracleSeed);
                    if (g > 0) return true;
                    found = MdsWitness{fam, d, g};
                    return false;
                }
                const auto& pool = tables.sets[sizes[idx]];
                std::size_t start = 0;
                if (idx > 0) {
                    if (sizes[idx] == sizes[idx - 1])
                        start = chosen[idx - 1];
                    else
                        start = first_not_below(pool, tables.sets[sizes[idx - 1]][chosen[idx - 1]]);
                }
                for (std::size_t t = start; t < pool.size(); ++t) {
                    const std::uint64_t cand = tables.masks[sizes[idx]][t];
                    if (has_containment(masks, idx, cand)) continue;
                    chosen[idx] = t;
                    masks[idx] = cand;
                    const std::size_t m = elim.mark();
                    const auto gm = generic.mark();
                    for (const auto& row : perps.rows_for(cand)) elim.add(row);
                    generic.push(cand);
                    const bool keep_going = rec(idx + 1);
                    elim.rollback(m);
                    generic.rollback(gm);
                    if (!keep_going) return false;
                }
                return true;
            };
            return rec(0);
        });
        if (found) return found;
    }
    return std::nullopt;
}

// cycle-MDS(l): the same zero-versus-zero comparison restricted to cycle
// families (every column's incidence set is an interval modulo the order,
// the empty set counting as one). Orders 2..l are checked cumulatively;
// size-k sets collapse to one order lower exactly as in is_mds_ell whenever
// the code is MDS, so they are skipped in that case.
inline std::optional<MdsWitness> is_cycle_mds_ell(const LinearCode& c, int ell) {
    using namespace hmds_detail;
    if (ell < 2) throw std::invalid_argument("order must be at least 2");
    const std::size_t k = c.k(), n = c.n();
    const Matrix& v = c.generator();
    const bool mds = !mds_base_witness(c).has_value();
    const std::size_t cap = mds ? std::min(n, k - (k > 1 ? 1 : 0)) : std::min(n, k);
    if (cap == 0) return std::nullopt;
    const auto tables = subsets_by_size(n, cap);
    PerpCache perps(v);
    IncrementalRank elim(v.field(), k);
    LockstepGeneric generic(k, n, kOracleSeed);

    for (int order = 2; order <= ell; ++order) {
        std::optional<MdsWitness> found;
        const int max_total = static_cast<int>((order - 1) * k);
        for (int total = std::min(max_total, order * static_cast<int>(cap)); total >= order && !found;
             --total) {
            for_each_composition_desc(total, order, 1, static_cast<int>(cap),
                                      [&](const std::vector<int>& sizes) -> bool {
                std::vector<std::size_t> chosen(order);
                std::vector<std::uint64_t> masks(order);
                std::function<bool(int)> rec = [&](int idx) -> bool {
                    // for an MDS code a full-rank prefix forces a zero
                    // intersection, which always passes; without MDS the
                    // zero side must still be compared against the oracle
                    if (mds && elim.rank() == k) return true;
                    if (idx == order) {
                        std::uint64_t inter = masks[0];
                        for (int i = 1; i < order; ++i) inter &= masks[i];
                        if (inter) return true;
                        if (!is_cycle_family(masks, n)) return true;
                        if (mds && generic.surely_nonzero(k)) return true;
                        SetFamily fam{n, {}};
                        for (int i = 0; i < order; ++i)
                            fam.sets.push_back(tables.sets[sizes[i]][chosen[i]]);
                        const int d = elim.rank() == k ? 0 : intersection_dim(v, fam);
                        if (d == 0) {
                            if (mds) return true;
                            const int g = generic_intersection_dim(k, n, fam, 2, kOracleSeed);
                            if (g == 0) return true;
                            found = MdsWitness{fam, d, g};
                            return false;
                        }
                        const int g = generic_intersection_dim(k, n, fam, 2, kOracleSeed);
                        if (g > 0) return true;
                        found = MdsWitness{fam, d, g};
                        return false;
                    }
                    const auto& pool = tables.sets[sizes[idx]];
                    for (std::size_t t = 0; t < pool.size(); ++t) {
                        const std::uint64_t cand = tables.masks[sizes[idx]][t];
                        if (mds && has_containment(masks, idx, cand)) continue;
                        chosen[idx] = t;
                        masks[idx] = cand;
                        const std::size_t m = elim.mark();
                        const auto gm = generic.mark();
                        for (const auto& row : perps.rows_for(cand)) elim.add(row);
                        generic.push(cand);
                        const bool keep_going = rec(idx + 1);
                        elim.rollback(m);
                        generic.rollback(gm);
                        if (!keep_going) return false;
                    }
                    return true;
                };
                return rec(0);
            });
        }
        if (found) return found;
    }
    return std::nullopt;
}

// weak-MDS(l): pairwise disjoint families must intersect trivially. Under
// disjointness and the total-size budget the generic intersection is zero by
// a dimension count, so the generic side is fixed at 0 rather than sampled.
inline std::optional<MdsWitness> is_weak_mds_ell(const LinearCode& c, int ell) {
    using namespace hmds_detail;
    if (ell < 2) throw std::invalid_argument("order must be at least 2");
    const std::size_t k = c.k(), n = c.n();
    const Matrix& v = c.generator();
    const bool mds = !mds_base_witness(c).has_value();
    const std::size_t cap = mds ? std::min(n, k - (k > 1 ? 1 : 0)) : std::min(n, k);
    if (cap == 0) return std::nullopt;
    const auto tables = subsets_by_size(n, cap);
    PerpCache perps(v);
    IncrementalRank elim(v.field(), k);

    for (int order = 2; order <= ell; ++order) {
        std::optional<MdsWitness> found;
        const int max_total = std::min<int>(static_cast<int>((order - 1) * k),
                                            std::min<int>(order * static_cast<int>(cap), static_cast<int>(n)));
        for (int total = order; total <= max_total && !found; ++total) {
            for_each_composition_asc(total, order, 1, static_cast<int>(cap),
                                     [&](const std::vector<int>& sizes) -> bool {
                std::vector<std::size_t> chosen(order);
                std::function<bool(int, std::uint64_t)> rec = [&](int idx, std::uint64_t used) -> bool {
                    if (elim.rank() == k) return true;
                    if (idx == order) {
                        SetFamily fam{n, {}};
                        for (int i = 0; i < order; ++i)
                            fam.sets.push_back(tables.sets[sizes[i]][chosen[i]]);
                        const int d = intersection_dim(v, fam);
                        if (d == 0) return true;
                        found = MdsWitness{fam, d, 0};
                        return false;
                    }
                    const auto& pool = tables.sets[sizes[idx]];
                    std::size_t start = 0;
                    if (idx > 0) {
                        if (sizes[idx] == sizes[idx - 1])
                            start = chosen[idx - 1];
                        else
                            start = first_not_below(pool, tables.sets[sizes[idx - 1]][chosen[idx - 1]]);
                    }
                    for (std::size_t t = start; t < pool.size(); ++t) {
                        const std::uint64_t m = tables.masks[sizes[idx]][t];
                        if (m & used) continue;
                        chosen[idx] = t;
                        const std::size_t mk = elim.mark();
                        for (const auto& row : perps.rows_for(m)) elim.add(row);
                        const bool keep_going = rec(idx + 1, used | m);
                        elim.rollback(mk);
                        if (!keep_going) return false;
                    }
                    return true;
                };
                return rec(0, 0);
            });
        }
        if (found) return found;
    }
    return std::nullopt;
}

// Grows a zero-intersection family to full budget: supersets A'_i of the A_i
// with fresh pairwise-disjoint additions, |A'_i| <= k, total exactly (l-1)k
// and intersection still zero. Follows the block-matrix growth argument: at
// each step some block-row subspace U_j has dimension below k, and a fresh
// column is added to the (j+1)-th set. The fresh element is additionally
// required to enlarge the block column space; the first one always works for
// generic data and a stall is reported rather than silently accepted.
inline SetFamily pad_sets(const LinearCode& c, const SetFamily& fam) {
    fam.validate();
    const std::size_t k = c.k(), n = c.n();
    const Matrix& v = c.generator();
    const std::size_t l = fam.sets.size();
    if (fam.n != n) throw std::invalid_argument("family ground set does not match the code length");
    if (l < 2) throw std::invalid_argument("need at least two sets");
    std::size_t total = 0;
    for (const auto& s : fam.sets) {
        if (s.size() > k) throw std::invalid_argument("set larger than the dimension");
        total += s.size();
    }
    if (total > (l - 1) * k) throw std::invalid_argument("total size exceeds (l-1)k");
    if (n < (l - 1) * k) throw std::invalid_argument("ground set too small to pad");
    if (intersection_dim(v, fam) != 0) throw std::invalid_argument("family intersection is nonzero");
    if (!is_mds(c)) throw std::invalid_argument("padding requires an MDS code");

    SetFamily cur = fam;
    std::uint64_t used = 0;
    for (const auto& s : cur.sets) used |= mask_of(s);

    const auto block_matrix = [&]() {
        // Claim-style block layout; sets have full column rank since the code
        // is MDS and sizes stay <= k.
        std::size_t cols = 0;
        for (const auto& s : cur.sets) cols += s.size();
        Matrix x(v.field(), (l - 1) * k, cols);
        for (std::size_t br = 0; br + 1 < l; ++br)
            for (std::size_t j = 0; j < cur.sets[0].size(); ++j)
                for (std::size_t i = 0; i < k; ++i) x.at(br * k + i, j) = v.at(i, cur.sets[0][j]);
        std::size_t off = cur.sets[0].size();
        for (std::size_t t = 1; t < l; ++t) {
            for (std::size_t j = 0; j < cur.sets[t].size(); ++j)
                for (std::size_t i = 0; i < k; ++i)
                    x.at((t - 1) * k + i, off + j) = v.at(i, cur.sets[t][j]);
            off += cur.sets[t].size();
        }
        return x;
    };

    while (total < (l - 1) * k) {
        const Matrix x = block_matrix();
        const std::size_t rx = rank(x);
        // block row with deficient coordinate subspace
        std::size_t grow_set = SIZE_MAX;
        for (std::size_t br = 0; br + 1 < l; ++br) {
            Matrix ext(v.field(), (l - 1) * k, x.cols() + k);
            for (std::size_t i = 0; i < x.rows(); ++i)
                for (std::size_t j = 0; j < x.cols(); ++j) ext.at(i, j) = x.at(i, j);
            for (std::size_t i = 0; i < k; ++i) ext.at(br * k + i, x.cols() + i) = v.field().one();
            const std::size_t dim_uj = rx + k - rank(std::move(ext));
            if (dim_uj < k && cur.sets[br + 1].size() < k) {
                grow_set = br + 1;
                break;
            }
        }
        if (grow_set == SIZE_MAX) throw std::runtime_error("padding stalled: no growable block row");

        bool grown = false;
        for (std::size_t e = 0; e < n && !grown; ++e) {
            if ((used >> e) & 1) continue;
            // fresh column must enlarge the block column space
            Matrix ext(v.field(), (l - 1) * k, x.cols() + 1);
            for (std::size_t i = 0; i < x.rows(); ++i)
                for (std::size_t j = 0; j < x.cols(); ++j) ext.at(i, j) = x.at(i, j);
            for (std::size_t i = 0; i < k; ++i)
                ext.at((grow_set - 1) * k + i, x.cols()) = v.at(i, e);
            if (rank(std::move(ext)) == rx + 1) {
                cur.sets[grow_set].push_back(static_cast<int>(e));
                std::sort(cur.sets[grow_set].begin(), cur.sets[grow_set].end());
                used |= 1ull << e;
                ++total;
                grown = true;
            }
        }
        if (!grown) throw std::runtime_error("padding stalled: ground set exhausted");
    }

    if (intersection_dim(v, cur) != 0) throw std::runtime_error("padding broke the zero intersection");
    return cur;
}

// Randomized violation finder. Partitions the coordinates into l blocks of
// size floor(n/l), samples x uniformly, and looks in every block for a
// (k-1)-subset whose span contains x. A simultaneous hit across all blocks
// gives a candidate disjoint family; it is returned only after re-verifying
// exactly (nonzero intersection, zero generic dimension), so any returned
// witness is sound regardless of sampling luck.
inline std::optional<MdsWitness> find_violation(const LinearCode& c, int ell, std::uint64_t samples,
                                                std::uint64_t seed) {
    using namespace hmds_detail;
    const std::size_t k = c.k(), n = c.n();
    if (ell < 2 || static_cast<std::size_t>(ell) > k)
        throw std::invalid_argument("order must lie in [2, k]");
    const FieldSpec& f = c.field();
    const Matrix& v = c.generator();
    const std::size_t s = n / static_cast<std::size_t>(ell);
    if (s < k - 1) return std::nullopt;  // blocks too small to host a (k-1)-subset

    std::vector<std::vector<std::vector<int>>> block_subsets(ell);
    for (int b = 0; b < ell; ++b) {
        for_each_combination(s, k - 1, [&](const std::vector<int>& c0) {
            std::vector<int> shifted(c0.size());
            for (std::size_t t = 0; t < c0.size(); ++t)
                shifted[t] = static_cast<int>(b * s) + c0[t];
            block_subsets[b].push_back(shifted);
        });
    }

    Rng rng(seed);
    for (std::uint64_t it = 0; it < samples; ++it) {
        std::vector<FieldElement> x(k);
        bool nonzero = false;
        for (auto& xi : x) {
            xi = f.sample(rng);
            nonzero = nonzero || !f.is_zero(xi);
        }
        if (!nonzero) continue;

        SetFamily fam{n, {}};
        bool all_found = true;
        for (int b = 0; b < ell && all_found; ++b) {
            bool found = false;
            for (const auto& sub : block_subsets[b]) {
                Matrix m = v.cols_subset(sub);
                if (solve(m, x).has_value()) {
                    fam.sets.push_back(sub);
                    found = true;
                    break;
                }
            }
            all_found = found;
        }
        if (!all_found) continue;

        const int d = intersection_dim(v, fam);
        if (d < 1) continue;
        const int g = generic_intersection_dim(k, n, fam, 2, kOracleSeed);
        if (g != 0) continue;
        return MdsWitness{fam, d, g};
    }
    return std::nullopt;
}

}  // namespace mrlab

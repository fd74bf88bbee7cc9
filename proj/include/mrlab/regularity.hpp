#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "mrlab/enumeration.hpp"
#include "mrlab/tensor_pattern.hpp"

namespace mrlab {

// Directed flow network with integer capacities. The source has no incoming
// arcs and the sink no outgoing ones.
struct FlowNetwork {
    int nodes = 0;
    int source = 0;
    int sink = 0;
    struct Arc {
        int from, to;
        std::int64_t cap;
    };
    std::vector<Arc> arcs;

    void validate() const {
        for (const auto& a : arcs) {
            if (a.from < 0 || a.from >= nodes || a.to < 0 || a.to >= nodes)
                throw std::invalid_argument("arc endpoint out of range");
            if (a.cap < 0) throw std::invalid_argument("negative capacity");
            if (a.to == source || a.from == sink)
                throw std::invalid_argument("arc into the source or out of the sink");
        }
    }
};

struct MaxFlowResult {
    std::int64_t value = 0;
    std::vector<std::int64_t> arc_flow;     // parallel to FlowNetwork::arcs
    std::vector<char> source_side;          // residual reachability, a min cut
};

// Dinic's algorithm; integral flows, deterministic.
inline MaxFlowResult max_flow(const FlowNetwork& net) {
    net.validate();
    struct Edge {
        int to;
        std::int64_t cap;
        int rev;
        int orig;  // index into net.arcs, -1 for reverse edges
    };
    std::vector<std::vector<Edge>> g(net.nodes);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const auto& a = net.arcs[i];
        g[a.from].push_back({a.to, a.cap, static_cast<int>(g[a.to].size()), static_cast<int>(i)});
        g[a.to].push_back({a.from, 0, static_cast<int>(g[a.from].size()) - 1, -1});
    }

    std::vector<int> level(net.nodes), iter(net.nodes);
    const auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[net.source] = 0;
        q.push(net.source);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const auto& e : g[v])
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
        }
        return level[net.sink] >= 0;
    };
    std::function<std::int64_t(int, std::int64_t)> dfs = [&](int v, std::int64_t f) -> std::int64_t {
        if (v == net.sink) return f;
        for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
            Edge& e = g[v][i];
            if (e.cap > 0 && level[v] < level[e.to]) {
                const std::int64_t d = dfs(e.to, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    };

    MaxFlowResult res;
    while (bfs()) {
        std::fill(iter.begin(), iter.end(), 0);
        while (const std::int64_t f = dfs(net.source, INT64_MAX)) res.value += f;
    }

    res.arc_flow.assign(net.arcs.size(), 0);
    for (int v = 0; v < net.nodes; ++v)
        for (const auto& e : g[v])
            if (e.orig >= 0) res.arc_flow[e.orig] = net.arcs[e.orig].cap - e.cap;

    // residual reachability from the source gives a minimum cut
    res.source_side.assign(net.nodes, 0);
    std::queue<int> q;
    q.push(net.source);
    res.source_side[net.source] = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const auto& e : g[v])
            if (e.cap > 0 && !res.source_side[e.to]) {
                res.source_side[e.to] = 1;
                q.push(e.to);
            }
    }
    return res;
}

// Per-row excesses e(i) = max(deg_E(i) - b, 0) and the uniform per-column
// demand; always recomputed from the pattern.
struct ExcessProfile {
    std::vector<int> row_excess;
    int column_demand = 0;
};

inline ExcessProfile excess_profile(const ErasurePattern& e, int a, int b) {
    ExcessProfile p;
    p.column_demand = a;
    p.row_excess.resize(e.m());
    for (std::size_t i = 0; i < e.m(); ++i)
        p.row_excess[i] = std::max<int>(static_cast<int>(e.row_degree(i)) - b, 0);
    return p;
}

struct RegularityViolation {
    std::vector<int> rows, cols;  // the subrectangle S x T
    int count = 0;                // |E cap (S x T)|
    int bound = 0;                // sb + ta - ab
};

// Checks |E cap (S x T)| <= sb + ta - ab for every S with |S| >= a and T with
// |T| >= b. The default mode fixes S and scans only the worst T of each size
// (columns sorted by degree within S), which is exact; full enumeration over
// both sides is kept behind a flag as a slow oracle.
inline std::optional<RegularityViolation> is_regular_naive(const ErasurePattern& e, int a, int b,
                                                           bool full_enumeration = false) {
    const int m = static_cast<int>(e.m()), n = static_cast<int>(e.n());
    if (a < 1 || b < 1 || a > m || b > n) throw std::invalid_argument("bad tensor parameters");
    for (std::uint64_t smask = 1; smask < (1ull << m); ++smask) {
        const int s = std::popcount(smask);
        if (s < a) continue;
        std::vector<int> deg(n, 0);
        for (int i = 0; i < m; ++i)
            if ((smask >> i) & 1)
                for (int j = 0; j < n; ++j)
                    if (e.contains(i, j)) ++deg[j];
        if (!full_enumeration) {
            std::vector<int> order(n);
            for (int j = 0; j < n; ++j) order[j] = j;
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return deg[x] > deg[y]; });
            int cnt = 0;
            for (int t = 1; t <= n; ++t) {
                cnt += deg[order[t - 1]];
                if (t < b) continue;
                const int bound = s * b + t * a - a * b;
                if (cnt > bound) {
                    RegularityViolation viol;
                    viol.rows = bits_of(smask);
                    viol.cols.assign(order.begin(), order.begin() + t);
                    std::sort(viol.cols.begin(), viol.cols.end());
                    viol.count = cnt;
                    viol.bound = bound;
                    return viol;
                }
            }
        } else {
            for (std::uint64_t tmask = 1; tmask < (1ull << n); ++tmask) {
                const int t = std::popcount(tmask);
                if (t < b) continue;
                int cnt = 0;
                for (int j = 0; j < n; ++j)
                    if ((tmask >> j) & 1) cnt += deg[j];
                const int bound = s * b + t * a - a * b;
                if (cnt > bound)
                    return RegularityViolation{bits_of(smask), bits_of(tmask), cnt, bound};
            }
        }
    }
    return std::nullopt;
}

namespace regularity_detail {

// flow network for one column subset V: source -> row i with capacity e(i),
// unit arcs across E cap ([m] x V), column j -> sink with capacity a
inline FlowNetwork build_excess_network(const ErasurePattern& e, int a, int b,
                                        const std::vector<int>& v_cols) {
    const int m = static_cast<int>(e.m());
    const ExcessProfile prof = excess_profile(e, a, b);
    FlowNetwork net;
    net.nodes = m + static_cast<int>(v_cols.size()) + 2;
    net.source = 0;
    net.sink = net.nodes - 1;
    for (int i = 0; i < m; ++i)
        if (prof.row_excess[i] > 0) net.arcs.push_back({0, 1 + i, prof.row_excess[i]});
    for (std::size_t t = 0; t < v_cols.size(); ++t) {
        for (int i = 0; i < m; ++i)
            if (e.contains(i, v_cols[t])) net.arcs.push_back({1 + i, 1 + m + static_cast<int>(t), 1});
        net.arcs.push_back({1 + m + static_cast<int>(t), net.sink, a});
    }
    return net;
}

}  // namespace regularity_detail

// Routes each row's excess through the erased cells of the column subset V
// with per-column capacity a; feasible iff every source arc saturates.
inline bool excess_flow_feasible(const ErasurePattern& e, int a, int b, const std::vector<int>& v_cols) {
    const ExcessProfile prof = excess_profile(e, a, b);
    std::int64_t demand = 0;
    for (int x : prof.row_excess) demand += x;
    if (demand == 0) return true;
    const FlowNetwork net = regularity_detail::build_excess_network(e, a, b, v_cols);
    return max_flow(net).value == demand;
}

struct HallBlocker {
    std::vector<int> cols;  // the failing column subset V
    std::vector<int> rows;  // row set whose excess demand exceeds capped supply
};

// Excess-compatibility: a feasible excess flow for every V of size n-b. On
// failure returns the first failing V together with a Hall blocker extracted
// from the minimum cut (rows on the source side of the final residual graph).
inline std::optional<HallBlocker> is_excess_compatible(const ErasurePattern& e, int a, int b) {
    const int m = static_cast<int>(e.m()), n = static_cast<int>(e.n());
    if (a < 1 || b < 1 || a > m || b > n) throw std::invalid_argument("bad tensor parameters");
    const ExcessProfile prof = excess_profile(e, a, b);
    std::int64_t demand = 0;
    for (int x : prof.row_excess) demand += x;
    if (demand == 0) return std::nullopt;

    std::optional<HallBlocker> blocker;
    for_each_combination(static_cast<std::size_t>(n), static_cast<std::size_t>(n - b),
                         [&](const std::vector<int>& v_cols) {
                             if (blocker) return;
                             const FlowNetwork net =
                                 regularity_detail::build_excess_network(e, a, b, v_cols);
                             const MaxFlowResult res = max_flow(net);
                             if (res.value == demand) return;
                             std::vector<int> rows;
                             for (int i = 0; i < m; ++i)
                                 if (prof.row_excess[i] > 0 && res.source_side[1 + i]) rows.push_back(i);
                             blocker = HallBlocker{v_cols, rows};
                         });
    return blocker;
}

// Excess-compatibility in the cheaper orientation: column subsets need
// C(n,b) flow problems, row subsets C(m,a) after swapping the roles of rows
// and columns (and of a and b). Ties go to the row orientation.
inline bool fast_check(const ErasurePattern& e, int a, int b) {
    const int m = static_cast<int>(e.m()), n = static_cast<int>(e.n());
    auto binom = [](int nn, int kk) {
        double r = 1;
        for (int i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
        return r;
    };
    if (binom(m, a) <= binom(n, b)) return !is_excess_compatible(e.transpose(), b, a).has_value();
    return !is_excess_compatible(e, a, b).has_value();
}

}  // namespace mrlab

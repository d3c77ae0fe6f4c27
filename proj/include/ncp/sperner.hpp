#pragma once

// Width, k-family maxima, Sperner and strong-Sperner decisions via the
// rank-removal reduction, and normalized matching via integer max-flow.
// The brute-force k-family search doubles as the correctness oracle for
// everything else.

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "ncp/poset.hpp"

namespace ncp {

namespace detail {

// Hopcroft-Karp on the comparability relation; a maximum matching yields a
// minimum chain cover (size m - matching), whose size equals the width.
class BipartiteMatcher {
public:
    BipartiteMatcher(int m, const BitRelation& rel) : m_(m), adj_(m) {
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (rel.less(u, v)) adj_[u].push_back(v);
        match_l_.assign(m, -1);
        match_r_.assign(m, -1);
        while (bfs()) {
            for (int u = 0; u < m_; ++u)
                if (match_l_[u] == -1 && dfs(u)) ++matching_;
        }
    }

    int matching() const { return matching_; }
    const std::vector<int>& successor() const { return match_l_; }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        std::vector<int> queue;
        layer_.assign(m_, kInf);
        for (int u = 0; u < m_; ++u)
            if (match_l_[u] == -1) {
                layer_[u] = 0;
                queue.push_back(u);
            }
        bool found = false;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int u = queue[qi];
            for (int v : adj_[u]) {
                const int w = match_r_[v];
                if (w == -1)
                    found = true;
                else if (layer_[w] == kInf) {
                    layer_[w] = layer_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            const int w = match_r_[v];
            if (w == -1 || (layer_[w] == layer_[u] + 1 && dfs(w))) {
                match_l_[u] = v;
                match_r_[v] = u;
                return true;
            }
        }
        layer_[u] = kInf;
        return false;
    }

    int m_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_, layer_;
    int matching_ = 0;
};

// Dinic max-flow; node count stays tiny (two ranks plus source and sink).
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(n, -1) {}

    void add_edge(int u, int v, long long cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            long long f;
            while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
        }
        return flow;
    }

private:
    struct Edge {
        int to, next;
        long long cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        level_[s] = 0;
        std::vector<int> queue{s};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int u = queue[qi];
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
                    level_[edges_[e].to] = level_[u] + 1;
                    queue.push_back(edges_[e].to);
                }
        }
        return level_[t] != -1;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                const long long f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_, level_, iter_;
    std::vector<Edge> edges_;
};

}  // namespace detail

inline int width(const GradedPoset& p) {
    if (p.m == 0) return 0;
    detail::BipartiteMatcher matcher(p.m, transitive_closure(p));
    return p.m - matcher.matching();
}

// Chains of a minimum chain cover; their number equals the width (Dilworth).
inline std::vector<std::vector<int>> minimum_chain_cover(const GradedPoset& p) {
    if (p.m == 0) return {};
    detail::BipartiteMatcher matcher(p.m, transitive_closure(p));
    const auto& next = matcher.successor();
    std::vector<char> is_succ(p.m, 0);
    for (int u = 0; u < p.m; ++u)
        if (next[u] != -1) is_succ[next[u]] = 1;
    std::vector<std::vector<int>> chains;
    for (int u = 0; u < p.m; ++u) {
        if (is_succ[u]) continue;
        std::vector<int> chain;
        for (int v = u; v != -1; v = next[v]) chain.push_back(v);
        chains.push_back(std::move(chain));
    }
    return chains;
}

inline std::vector<int> elements_of_rank(const GradedPoset& p, int r) {
    std::vector<int> out;
    for (int u = 0; u < p.m; ++u)
        if (p.rank[u] == r) out.push_back(u);
    return out;
}

inline std::vector<int> shade(const GradedPoset& p, const std::vector<int>& level) {
    std::set<int> out;
    int r = -1;
    for (int u : level) {
        if (u < 0 || u >= p.m) throw input_error("shade input out of range");
        if (r == -1) r = p.rank[u];
        if (p.rank[u] != r) throw input_error("shade input must lie in a single rank");
        for (int v : p.up[u]) out.insert(v);
    }
    return {out.begin(), out.end()};
}

enum class TruncateTieBreak { SmallestRank, LargestRank };

// Remove one maximum-cardinality rank and re-grade the survivors by the
// comparability they inherit; covers are recomputed from the restricted
// transitive closure, not carried over.
inline GradedPoset truncate(const GradedPoset& p,
                            TruncateTieBreak tie = TruncateTieBreak::SmallestRank) {
    if (p.m == 0) return p;
    std::vector<long long> counts(p.max_rank() + 1, 0);
    for (int r : p.rank) ++counts[r];
    int pick = 0;
    for (int r = 0; r < static_cast<int>(counts.size()); ++r) {
        const bool better = tie == TruncateTieBreak::SmallestRank ? counts[r] > counts[pick]
                                                                  : counts[r] >= counts[pick];
        if (better) pick = r;
    }
    std::vector<int> keep;
    for (int u = 0; u < p.m; ++u)
        if (p.rank[u] != pick) keep.push_back(u);
    const BitRelation rel = transitive_closure(p);
    GradedPoset out;
    out.m = static_cast<int>(keep.size());
    out.rank.assign(out.m, 0);
    out.up.resize(out.m);
    if (!p.labels.empty()) out.labels.resize(out.m);
    std::vector<int> local(p.m, -1);
    for (int i = 0; i < out.m; ++i) local[keep[i]] = i;
    for (int i = 0; i < out.m; ++i)
        for (int j = 0; j < out.m; ++j) {
            const int u = keep[i], v = keep[j];
            if (!rel.less(u, v)) continue;
            bool mid = false;
            for (int w : keep)
                if (rel.less(u, w) && rel.less(w, v)) {
                    mid = true;
                    break;
                }
            if (!mid) out.up[i].push_back(j);
        }
    if (!p.labels.empty())
        for (int i = 0; i < out.m; ++i) out.labels[i] = p.labels[keep[i]];
    // longest-path ranks; survivors of a graded poset stay graded
    std::vector<int> order(out.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return p.rank[keep[a]] < p.rank[keep[b]]; });
    for (int i : order)
        for (int j : out.up[i]) out.rank[j] = std::max(out.rank[j], out.rank[i] + 1);
    return out;
}

inline long long max_rank_size(const GradedPoset& p) {
    if (p.m == 0) return 0;
    std::vector<long long> counts(p.max_rank() + 1, 0);
    for (int r : p.rank) ++counts[r];
    return *std::max_element(counts.begin(), counts.end());
}

inline bool is_sperner(const GradedPoset& p) { return width(p) == max_rank_size(p); }

struct TruncationVerdict {
    int removed_ranks = 0;
    long long max_rank_size = 0;
    int width = 0;
    bool sperner = false;
};

struct SpernerReport {
    int width = 0;
    std::vector<TruncationVerdict> verdicts;
    bool strongly_sperner = false;
    std::optional<std::vector<long long>> k_family_sizes;
};

// Strongly Sperner iff every iterated truncation is Sperner.
inline SpernerReport is_strongly_sperner(const GradedPoset& p,
                                         TruncateTieBreak tie = TruncateTieBreak::SmallestRank) {
    SpernerReport report;
    report.width = width(p);
    report.strongly_sperner = true;
    GradedPoset cur = p;
    int removed = 0;
    while (cur.m > 0) {
        TruncationVerdict v;
        v.removed_ranks = removed;
        v.max_rank_size = max_rank_size(cur);
        v.width = width(cur);
        v.sperner = (v.width == v.max_rank_size);
        report.strongly_sperner = report.strongly_sperner && v.sperner;
        report.verdicts.push_back(v);
        cur = truncate(cur, tie);
        ++removed;
    }
    return report;
}

// Exhaustive maximum k-family (no chain of k+1 elements), with subset
// pruning; the independent oracle for the rank-removal reduction.
inline long long max_k_family_bruteforce(const GradedPoset& p, int k) {
    if (p.m > 20) throw resource_limit_error("brute-force k-family search capped at 20 elements");
    if (k <= 0) return 0;
    const BitRelation rel = transitive_closure(p);
    std::vector<int> order(p.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.rank[a] < p.rank[b]; });
    std::vector<int> chosen;          // indices into order
    std::vector<int> chain_len;       // longest chain ending at chosen[i]
    long long best = 0;
    std::function<void(int)> rec = [&](int pos) {
        best = std::max(best, static_cast<long long>(chosen.size()));
        if (pos == p.m) return;
        if (static_cast<long long>(chosen.size()) + (p.m - pos) <= best) return;
        const int u = order[pos];
        int depth = 1;
        for (std::size_t i = 0; i < chosen.size(); ++i)
            if (rel.less(order[chosen[i]], u)) depth = std::max(depth, chain_len[i] + 1);
        if (depth <= k) {
            chosen.push_back(pos);
            chain_len.push_back(depth);
            rec(pos + 1);
            chosen.pop_back();
            chain_len.pop_back();
        }
        rec(pos + 1);
    };
    rec(0);
    return best;
}

// For each consecutive rank pair, |shade(L)| * r_i >= |L| * r_{i+1} for all
// L iff the max flow saturates the source: source -> u in R_i with capacity
// r_{i+1}, cover edges with infinite capacity, v in R_{i+1} -> sink with
// capacity r_i.
inline std::pair<bool, std::optional<std::pair<int, int>>> normalized_matching(
    const GradedPoset& p) {
    if (!is_graded(p)) throw input_error("normalized matching requires a graded poset");
    const int n = p.max_rank();
    for (int r = 0; r + 1 <= n; ++r) {
        const auto lower = elements_of_rank(p, r);
        const auto upper = elements_of_rank(p, r + 1);
        const long long rl = static_cast<long long>(lower.size());
        const long long ru = static_cast<long long>(upper.size());
        detail::MaxFlow flow(static_cast<int>(lower.size() + upper.size()) + 2);
        const int source = static_cast<int>(lower.size() + upper.size());
        const int sink = source + 1;
        std::vector<int> upper_pos(p.m, -1);
        for (std::size_t i = 0; i < upper.size(); ++i) upper_pos[upper[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < lower.size(); ++i) {
            flow.add_edge(source, static_cast<int>(i), ru);
            for (int v : p.up[lower[i]])
                flow.add_edge(static_cast<int>(i),
                              static_cast<int>(lower.size()) + upper_pos[v],
                              std::numeric_limits<long long>::max() / 4);
        }
        for (std::size_t j = 0; j < upper.size(); ++j)
            flow.add_edge(static_cast<int>(lower.size() + j), sink, rl);
        if (flow.run(source, sink) != rl * ru) return {false, std::make_pair(r, r + 1)};
    }
    return {true, std::nullopt};
}

// Sufficient certificate for the existence of a symmetric chain
// decomposition: graded, rank-symmetric, rank-unimodal, and normalized
// matching.  Existence only; no chains are produced here.
inline bool griggs_scd_exists(const GradedPoset& p) {
    const RankProfile profile = rank_profile(p);
    return profile.symmetric && profile.unimodal && normalized_matching(p).first;
}

}  // namespace ncp

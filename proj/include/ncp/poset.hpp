#pragma once

// Abstract graded posets: rank profiles and gamma-vectors, direct products,
// Boolean lattices, reachability, decompositions with their verifier, and
// exact isomorphism testing for small posets.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ncp/common.hpp"

namespace ncp {

struct GradedPoset {
    int m = 0;
    std::vector<int> rank;               // one per element
    std::vector<std::vector<int>> up;    // up-cover adjacency lists
    std::vector<std::string> labels;     // optional, empty or one per element

    int max_rank() const {
        int r = 0;
        for (int x : rank) r = std::max(r, x);
        return r;
    }
};

inline std::vector<std::vector<int>> down_covers(const GradedPoset& p) {
    std::vector<std::vector<int>> down(p.m);
    for (int u = 0; u < p.m; ++u)
        for (int v : p.up[u]) down[v].push_back(u);
    return down;
}

// All maximal chains have the same length: covers raise rank by exactly 1,
// minimal elements sit at rank 0, and maximal elements share one rank.
inline bool is_graded(const GradedPoset& p) {
    if (p.m == 0) return true;
    auto down = down_covers(p);
    int top = -1;
    for (int u = 0; u < p.m; ++u) {
        for (int v : p.up[u])
            if (p.rank[v] != p.rank[u] + 1) return false;
        if (down[u].empty() && p.rank[u] != 0) return false;
        if (p.up[u].empty()) {
            if (top == -1) top = p.rank[u];
            if (p.rank[u] != top) return false;
        }
    }
    return true;
}

// Strict-order reachability as a bit relation, one row of bits per element.
struct BitRelation {
    int m = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    bool less(int u, int v) const {
        return (bits[static_cast<std::size_t>(u) * words + (v >> 6)] >> (v & 63)) & 1u;
    }
};

inline BitRelation transitive_closure(const GradedPoset& p) {
    BitRelation rel;
    rel.m = p.m;
    rel.words = (p.m + 63) / 64;
    rel.bits.assign(static_cast<std::size_t>(p.m) * rel.words, 0);
    std::vector<int> order(p.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.rank[a] > p.rank[b]; });
    for (int u : order) {
        auto* row = rel.bits.data() + static_cast<std::size_t>(u) * rel.words;
        for (int v : p.up[u]) {
            row[v >> 6] |= 1ull << (v & 63);
            const auto* vr = rel.bits.data() + static_cast<std::size_t>(v) * rel.words;
            for (int w = 0; w < rel.words; ++w) row[w] |= vr[w];
        }
    }
    return rel;
}

struct RankProfile {
    std::vector<long long> rank_vector;
    std::optional<std::vector<long long>> gamma_vector;  // present iff symmetric
    bool symmetric = false;
    bool unimodal = false;
    bool gamma_nonnegative = false;
};

// Solve R(t) = sum_j gamma_j t^j (1+t)^(N-2j) for the gamma coefficients by
// triangular elimination; only defined for rank-symmetric vectors.
inline std::vector<long long> gamma_vector_of(const std::vector<long long>& r) {
    const int n = static_cast<int>(r.size()) - 1;
    for (int j = 0; j <= n / 2; ++j)
        if (r[j] != r[n - j]) throw input_error("gamma-vector requested for a non-symmetric rank vector");
    std::vector<long long> gamma(n / 2 + 1, 0);
    for (int j = 0; j <= n / 2; ++j) {
        long long acc = 0;
        for (int i = 0; i < j; ++i) acc += gamma[i] * binomial(n - 2 * i, j - i);
        gamma[j] = r[j] - acc;
    }
    // the expansion must reproduce the polynomial exactly
    std::vector<long long> back(n + 1, 0);
    for (int j = 0; j <= n / 2; ++j)
        for (int i = 0; i + 2 * j <= n; ++i) back[i + j] += gamma[j] * binomial(n - 2 * j, i);
    if (back != r) throw std::logic_error("gamma expansion failed to reproduce the rank polynomial");
    return gamma;
}

inline RankProfile rank_profile(const GradedPoset& p) {
    if (!is_graded(p)) throw input_error("rank profile requires a graded poset");
    RankProfile out;
    out.rank_vector.assign(p.max_rank() + 1, 0);
    if (p.m == 0) out.rank_vector.clear();
    for (int u = 0; u < p.m; ++u) ++out.rank_vector[p.rank[u]];
    const int n = static_cast<int>(out.rank_vector.size()) - 1;
    out.symmetric = true;
    for (int j = 0; j <= n; ++j)
        if (out.rank_vector[j] != out.rank_vector[n - j]) out.symmetric = false;
    out.unimodal = true;
    {
        int j = 0;
        while (j + 1 <= n && out.rank_vector[j] <= out.rank_vector[j + 1]) ++j;
        while (j + 1 <= n && out.rank_vector[j] >= out.rank_vector[j + 1]) ++j;
        out.unimodal = (j == n) || n < 0;
    }
    if (out.symmetric && n >= 0) {
        out.gamma_vector = gamma_vector_of(out.rank_vector);
        out.gamma_nonnegative = true;
        for (long long g : *out.gamma_vector)
            if (g < 0) out.gamma_nonnegative = false;
    }
    return out;
}

// Covers of (p,q) are (p',q) and (p,q'); ranks add, so rank polynomials
// multiply.  Element (a,b) gets index a*|Q| + b.
inline GradedPoset direct_product(const GradedPoset& p, const GradedPoset& q) {
    GradedPoset out;
    out.m = p.m * q.m;
    out.rank.resize(out.m);
    out.up.resize(out.m);
    const bool lab = !p.labels.empty() && !q.labels.empty();
    if (lab) out.labels.resize(out.m);
    for (int a = 0; a < p.m; ++a)
        for (int b = 0; b < q.m; ++b) {
            const int id = a * q.m + b;
            out.rank[id] = p.rank[a] + q.rank[b];
            for (int a2 : p.up[a]) out.up[id].push_back(a2 * q.m + b);
            for (int b2 : q.up[b]) out.up[id].push_back(a * q.m + b2);
            if (lab) out.labels[id] = "(" + p.labels[a] + " | " + q.labels[b] + ")";
        }
    return out;
}

inline GradedPoset boolean_lattice(int k) {
    if (k < 0 || k > 20) throw input_error("boolean lattice rank out of supported range");
    GradedPoset out;
    out.m = 1 << k;
    out.rank.resize(out.m);
    out.up.resize(out.m);
    for (int mask = 0; mask < out.m; ++mask) {
        out.rank[mask] = __builtin_popcount(static_cast<unsigned>(mask));
        for (int i = 0; i < k; ++i)
            if (!(mask >> i & 1)) out.up[mask].push_back(mask | (1 << i));
    }
    return out;
}

// --- isomorphism -------------------------------------------------------------

namespace detail {

inline std::vector<std::size_t> wl_colors(const GradedPoset& p) {
    auto down = down_covers(p);
    std::vector<std::size_t> color(p.m);
    for (int u = 0; u < p.m; ++u) {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::size_t x) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::size_t>(p.rank[u]));
        mix(p.up[u].size());
        mix(down[u].size());
        color[u] = h;
    }
    for (int round = 0; round < 3; ++round) {
        std::vector<std::size_t> next(p.m);
        for (int u = 0; u < p.m; ++u) {
            std::vector<std::size_t> ups, downs;
            for (int v : p.up[u]) ups.push_back(color[v]);
            for (int v : down[u]) downs.push_back(color[v]);
            std::sort(ups.begin(), ups.end());
            std::sort(downs.begin(), downs.end());
            std::size_t h = color[u];
            auto mix = [&h](std::size_t x) {
                h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            for (auto x : ups) mix(x ^ 0xa5a5a5a5a5a5a5a5ull);
            for (auto x : downs) mix(x ^ 0x5a5a5a5a5a5a5a5aull);
            next[u] = h;
        }
        color = std::move(next);
    }
    return color;
}

}  // namespace detail

// Exact poset-isomorphism decision by rank-and-degree-refined backtracking.
inline bool is_isomorphic(const GradedPoset& p, const GradedPoset& q) {
    if (p.m > 64 || q.m > 64) throw resource_limit_error("isomorphism test capped at 64 elements");
    if (p.m != q.m) return false;
    if (p.m == 0) return true;
    auto cp = detail::wl_colors(p);
    auto cq = detail::wl_colors(q);
    {
        auto sp = cp, sq = cq;
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq) return false;
    }
    auto dp = down_covers(p);
    auto dq = down_covers(q);
    // candidates per element of p: elements of q with the same color
    std::vector<std::vector<int>> cand(p.m);
    for (int u = 0; u < p.m; ++u)
        for (int v = 0; v < q.m; ++v)
            if (cp[u] == cq[v]) cand[u].push_back(v);
    std::vector<int> order(p.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cand[a].size() < cand[b].size(); });
    std::vector<int> map_pq(p.m, -1), used(q.m, 0);

    auto covers_p = [&](int a, int b) {
        return std::find(p.up[a].begin(), p.up[a].end(), b) != p.up[a].end();
    };
    auto covers_q = [&](int a, int b) {
        return std::find(q.up[a].begin(), q.up[a].end(), b) != q.up[a].end();
    };

    std::vector<int> assigned;
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        const int u = order[pos];
        for (int v : cand[u]) {
            if (used[v]) continue;
            bool ok = true;
            for (int w : assigned) {
                if (covers_p(u, w) != covers_q(v, map_pq[w]) ||
                    covers_p(w, u) != covers_q(map_pq[w], v)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            map_pq[u] = v;
            used[v] = 1;
            assigned.push_back(u);
            if (self(self, pos + 1)) return true;
            assigned.pop_back();
            used[v] = 0;
            map_pq[u] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

// --- decompositions ----------------------------------------------------------

enum class PartType { Untyped, Boolean, Chain };

struct DecompositionPart {
    std::vector<int> elements;  // sorted element ids
    PartType type = PartType::Untyped;
    int type_rank = 0;          // Boolean rank / chain length when declared
    std::string tag;            // e.g. "R(1,0)", "D1", "SU_R(3)"
    std::string iso_type;       // optional annotation, e.g. "2 x NC(G(5,5,2))"
};

struct Decomposition {
    std::vector<DecompositionPart> parts;
};

inline std::pair<int, int> part_span(const GradedPoset& p, const DecompositionPart& part) {
    int lo = p.rank[part.elements.front()], hi = lo;
    for (int e : part.elements) {
        lo = std::min(lo, p.rank[e]);
        hi = std::max(hi, p.rank[e]);
    }
    return {lo, hi};
}

enum class VerifyMode { Plain, Symmetric, Boolean, Chain };

struct VerificationReport {
    bool ok = true;
    std::vector<std::string> violations;  // first violation per offending part

    void fail(int part, const std::string& why) {
        ok = false;
        violations.push_back("part " + std::to_string(part) + ": " + why);
    }
};

namespace detail {

// Covers of the induced subposet: a < b in the ambient order with no part
// element strictly between.
inline std::vector<std::pair<int, int>> induced_covers(const BitRelation& rel,
                                                       const std::vector<int>& part) {
    std::vector<std::pair<int, int>> covers;
    for (int a : part)
        for (int b : part) {
            if (!rel.less(a, b)) continue;
            bool mid = false;
            for (int c : part)
                if (rel.less(a, c) && rel.less(c, b)) {
                    mid = true;
                    break;
                }
            if (!mid) covers.emplace_back(a, b);
        }
    return covers;
}

// Canonical Boolean certificate: label the part atoms and map every element
// to its set of atoms below; the map must be a rank-preserving bijection
// onto the subset lattice under which every induced cover adds one atom.
// Together with the cover count this pins the Hasse diagram exactly.
inline bool boolean_structure_check(const GradedPoset& p, const BitRelation& rel,
                                    const std::vector<int>& part, int width,
                                    const std::vector<std::pair<int, int>>& covers) {
    if (static_cast<std::size_t>(1) << width != part.size()) return false;
    int lo = p.rank[part.front()], hi = lo;
    for (int e : part) {
        lo = std::min(lo, p.rank[e]);
        hi = std::max(hi, p.rank[e]);
    }
    if (hi - lo != width) return false;
    int bottom = -1;
    for (int e : part)
        if (p.rank[e] == lo) {
            if (bottom != -1) return false;
            bottom = e;
        }
    std::vector<int> atoms;
    for (auto [a, b] : covers)
        if (a == bottom) atoms.push_back(b);
    std::sort(atoms.begin(), atoms.end());
    if (static_cast<int>(atoms.size()) != width) return false;
    std::map<int, unsigned> mask_of;
    std::vector<char> seen(static_cast<std::size_t>(1) << width, 0);
    for (int e : part) {
        unsigned mask = 0;
        for (int i = 0; i < width; ++i)
            if (atoms[i] == e || rel.less(atoms[i], e)) mask |= 1u << i;
        if (p.rank[e] - lo != __builtin_popcount(mask)) return false;
        if (seen[mask]) return false;
        seen[mask] = 1;
        mask_of[e] = mask;
    }
    std::size_t expected_covers = static_cast<std::size_t>(width) << (width ? width - 1 : 0);
    if (width == 0) expected_covers = 0;
    if (covers.size() != expected_covers) return false;
    for (auto [a, b] : covers) {
        unsigned ma = mask_of[a], mb = mask_of[b];
        if ((ma & mb) != ma || __builtin_popcount(ma ^ mb) != 1) return false;
    }
    return true;
}

}  // namespace detail

// Per part: cover-connectivity and cover-faithfulness; symmetric adds the
// rank-pairing condition between minimal and maximal part elements; boolean
// and chain add the part-shape checks (and imply symmetric).
inline VerificationReport verify_decomposition(const GradedPoset& p, const Decomposition& d,
                                               VerifyMode mode) {
    {
        std::vector<char> seen(p.m, 0);
        std::size_t total = 0;
        for (const auto& part : d.parts) {
            total += part.elements.size();
            for (int e : part.elements) {
                if (e < 0 || e >= p.m || seen[e]) throw input_error("parts do not partition the ground set");
                seen[e] = 1;
            }
            if (part.elements.empty()) throw input_error("empty part");
        }
        if (total != static_cast<std::size_t>(p.m))
            throw input_error("parts do not partition the ground set");
    }
    const BitRelation rel = transitive_closure(p);
    const int n = p.max_rank();
    VerificationReport report;
    for (std::size_t pi = 0; pi < d.parts.size(); ++pi) {
        const auto& part = d.parts[pi].elements;
        auto covers = detail::induced_covers(rel, part);

        // every induced cover must be an ambient cover
        bool faithful = true;
        for (auto [a, b] : covers)
            if (std::find(p.up[a].begin(), p.up[a].end(), b) == p.up[a].end()) {
                faithful = false;
                break;
            }
        if (!faithful) {
            report.fail(static_cast<int>(pi), "induced cover is not an ambient cover");
            continue;
        }
        // connectivity under induced covers
        {
            std::map<int, int> comp;
            for (int e : part) comp[e] = e;
            std::function<int(int)> find = [&](int x) {
                return comp[x] == x ? x : comp[x] = find(comp[x]);
            };
            for (auto [a, b] : covers) comp[find(a)] = find(b);
            int root = find(part.front());
            bool connected = true;
            for (int e : part)
                if (find(e) != root) connected = false;
            if (!connected) {
                report.fail(static_cast<int>(pi), "part is not cover-connected");
                continue;
            }
        }
        if (mode == VerifyMode::Plain) continue;

        // symmetric: a rank-pairing bijection between minimal and maximal
        // part elements exists iff the rank histograms mirror about n
        {
            std::map<int, int> mins, maxs;
            for (int e : part) {
                bool has_lower = false, has_upper = false;
                for (int f : part) {
                    if (rel.less(f, e)) has_lower = true;
                    if (rel.less(e, f)) has_upper = true;
                }
                if (!has_lower) ++mins[p.rank[e]];
                if (!has_upper) ++maxs[p.rank[e]];
            }
            bool sym = mins.size() == maxs.size();
            if (sym)
                for (auto [r, c] : mins)
                    if (maxs.count(n - r) == 0 || maxs[n - r] != c) sym = false;
            if (!sym) {
                report.fail(static_cast<int>(pi), "minimal/maximal elements do not pair symmetrically");
                continue;
            }
        }
        if (mode == VerifyMode::Boolean) {
            auto [lo, hi] = part_span(p, d.parts[pi]);
            const int width = hi - lo;
            if (d.parts[pi].type == PartType::Boolean && d.parts[pi].type_rank != width) {
                report.fail(static_cast<int>(pi), "declared Boolean rank disagrees with the span");
                continue;
            }
            bool ok = detail::boolean_structure_check(p, rel, part, width, covers);
            if (ok && part.size() <= 16) {
                // cheap independent confirmation on small parts
                GradedPoset sub;
                sub.m = static_cast<int>(part.size());
                sub.rank.resize(sub.m);
                sub.up.resize(sub.m);
                std::map<int, int> local;
                for (int i = 0; i < sub.m; ++i) local[part[i]] = i;
                for (int i = 0; i < sub.m; ++i) sub.rank[i] = p.rank[part[i]] - lo;
                for (auto [a, b] : covers) sub.up[local[a]].push_back(local[b]);
                ok = is_isomorphic(sub, boolean_lattice(width));
            }
            if (!ok) report.fail(static_cast<int>(pi), "part is not a Boolean lattice of its span width");
        } else if (mode == VerifyMode::Chain) {
            if (d.parts[pi].type == PartType::Chain &&
                d.parts[pi].type_rank != static_cast<int>(part.size()) - 1) {
                report.fail(static_cast<int>(pi), "declared chain length disagrees with the part size");
                continue;
            }
            auto sorted = part;
            std::sort(sorted.begin(), sorted.end(),
                      [&](int a, int b) { return p.rank[a] < p.rank[b]; });
            bool ok = true;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                if (p.rank[sorted[i + 1]] != p.rank[sorted[i]] + 1 ||
                    std::find(p.up[sorted[i]].begin(), p.up[sorted[i]].end(), sorted[i + 1]) ==
                        p.up[sorted[i]].end()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) report.fail(static_cast<int>(pi), "part is not a saturated chain");
        }
    }
    return report;
}

// gamma_j := number of parts of cardinality 2^(N-2j) in a verified
// symmetric Boolean decomposition; equals the rank-polynomial gamma-vector.
inline std::vector<long long> gamma_from_boolean_parts(const GradedPoset& p, const Decomposition& d) {
    auto report = verify_decomposition(p, d, VerifyMode::Boolean);
    if (!report.ok)
        throw input_error("decomposition failed symmetric Boolean verification: " +
                          (report.violations.empty() ? std::string() : report.violations.front()));
    const int n = p.max_rank();
    std::vector<long long> gamma(n / 2 + 1, 0);
    for (const auto& part : d.parts) {
        auto [lo, hi] = part_span(p, part);
        const int width = hi - lo;
        if ((n - width) % 2 != 0) throw std::logic_error("boolean part width has wrong parity");
        ++gamma[(n - width) / 2];
    }
    return gamma;
}

}  // namespace ncp

#pragma once

// Reflection length, the absolute order, and the noncrossing partition
// lattice NC(W, gamma) as an explicit graded Hasse diagram, together with
// the translation and support-factorization isomorphisms used by the
// decomposition builder.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <unordered_map>
#include <vector>

#include "ncp/catalog.hpp"
#include "ncp/colored_perm.hpp"
#include "ncp/poset.hpp"

namespace ncp {

// Exact absolute length by best-first search over right-multiplication by
// reflections.  The heuristic n - dim Fix is admissible and consistent
// (one reflection changes the fixed-space dimension by at most 1), so the
// first settled goal is optimal.  Final answers are memoized per group;
// the cache is confined to one oracle instance.
class LengthOracle {
public:
    explicit LengthOracle(const GroupParams& params) : params_(params) {
        validate_params(params);
        for (const auto& t : reflections(params)) refl_.push_back(reflection_element(params, t));
        cache_.emplace(identity(params).canonical_key(), 0);
        for (const auto& t : refl_) cache_.emplace(t.canonical_key(), 1);
    }

    const GroupParams& params() const { return params_; }
    const std::vector<ColoredPermutation>& reflection_elements() const { return refl_; }

    int length(const ColoredPermutation& u) {
        if (!(u.params == params_)) throw input_error("element belongs to a different group");
        auto key = u.canonical_key();
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        struct Node {
            int f, g;
            ColoredPermutation elem;
            bool operator>(const Node& o) const { return f > o.f; }
        };
        std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
        std::unordered_map<std::vector<int>, int, VectorHash> dist;
        const int n = params_.n;
        dist.emplace(key, 0);
        open.push({n - fix_dim(u), 0, u});
        int best = -1;
        while (!open.empty()) {
            Node cur = open.top();
            if (best >= 0 && cur.f >= best) break;
            open.pop();
            auto ck = cur.elem.canonical_key();
            if (cur.g > dist[ck]) continue;
            if (auto it = cache_.find(ck); it != cache_.end()) {
                const int total = cur.g + it->second;
                if (best < 0 || total < best) best = total;
                continue;
            }
            for (const auto& t : refl_) {
                ColoredPermutation next = compose(cur.elem, t);
                auto nk = next.canonical_key();
                const int g2 = cur.g + 1;
                auto it = dist.find(nk);
                if (it != dist.end() && it->second <= g2) continue;
                dist[std::move(nk)] = g2;
                open.push({g2 + n - fix_dim(next), g2, std::move(next)});
            }
        }
        if (best < 0) throw std::logic_error("length search exhausted without reaching the identity");
        cache_.emplace(std::move(key), best);
        return best;
    }

private:
    GroupParams params_;
    std::vector<ColoredPermutation> refl_;
    std::unordered_map<std::vector<int>, int, VectorHash> cache_;
};

inline int reflection_length(const ColoredPermutation& u) {
    LengthOracle oracle(u.params);
    return oracle.length(u);
}

inline bool leq_T(const ColoredPermutation& u, const ColoredPermutation& v, LengthOracle& oracle) {
    if (!(u.params == v.params)) throw input_error("comparing elements of different groups");
    return oracle.length(v) == oracle.length(u) + oracle.length(compose(inverse(u), v));
}

inline bool leq_T(const ColoredPermutation& u, const ColoredPermutation& v) {
    LengthOracle oracle(u.params);
    return leq_T(u, v, oracle);
}

// The interval [eps, gamma] under absolute order, graded by reflection
// length.  Elements are sorted by (rank, canonical key), so index 0 is the
// identity and the last index is gamma; output order is stable across runs.
struct NCLattice {
    GroupParams params;
    ColoredPermutation gamma;
    std::vector<ColoredPermutation> elements;
    std::vector<int> rank;
    std::vector<std::vector<int>> up_covers;
    std::vector<std::vector<int>> down_covers;
    std::unordered_map<std::vector<int>, int, VectorHash> element_index;
    int top_rank = 0;

    int size() const { return static_cast<int>(elements.size()); }

    int index_of(const ColoredPermutation& u) const {
        auto it = element_index.find(u.canonical_key());
        return it == element_index.end() ? -1 : it->second;
    }

    // u <= v in absolute order, decided inside the lattice: lengths add and
    // the quotient is itself a member.
    bool leq(int u, int v) const {
        if (u == v) return true;
        const int q = index_of(compose(inverse(elements[u]), elements[v]));
        return q >= 0 && rank[v] == rank[u] + rank[q];
    }
};

inline constexpr int kDefaultElementCap = 200000;

// Downward closure of gamma: the lower covers of w are exactly the products
// w*t whose length drops by one.  Only interval members are ever enqueued.
inline NCLattice build_nc_lattice_for(const GroupParams& params, const ColoredPermutation& gamma,
                                      int cap = kDefaultElementCap) {
    validate_element(gamma);
    LengthOracle oracle(params);
    const int n = params.n;
    const int top = oracle.length(gamma);

    std::unordered_map<std::vector<int>, int, VectorHash> index;
    std::vector<ColoredPermutation> elems;
    std::vector<int> ranks;
    std::vector<std::pair<int, int>> covers;  // (lower, upper) provisional ids

    index.emplace(gamma.canonical_key(), 0);
    elems.push_back(gamma);
    ranks.push_back(top);
    std::vector<int> frontier{0};
    for (int r = top; r > 0 && !frontier.empty(); --r) {
        std::vector<int> next;
        for (int wi : frontier) {
            const ColoredPermutation w = elems[wi];
            for (const auto& t : oracle.reflection_elements()) {
                ColoredPermutation v = compose(w, t);
                if (n - fix_dim(v) > r - 1) continue;
                if (oracle.length(v) != r - 1) continue;
                auto key = v.canonical_key();
                auto [it, inserted] = index.emplace(std::move(key), static_cast<int>(elems.size()));
                if (inserted) {
                    if (static_cast<int>(elems.size()) >= cap)
                        throw resource_limit_error("lattice construction exceeded the element cap");
                    elems.push_back(std::move(v));
                    ranks.push_back(r - 1);
                    next.push_back(it->second);
                }
                covers.emplace_back(it->second, wi);
            }
        }
        frontier = std::move(next);
    }

    // deterministic layout: sort by (rank, canonical key)
    const int m = static_cast<int>(elems.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
        return elems[a] < elems[b];
    });
    std::vector<int> newid(m);
    for (int i = 0; i < m; ++i) newid[order[i]] = i;

    NCLattice lat;
    lat.params = params;
    lat.gamma = gamma;
    lat.top_rank = top;
    lat.elements.resize(m);
    lat.rank.resize(m);
    lat.up_covers.resize(m);
    lat.down_covers.resize(m);
    for (int i = 0; i < m; ++i) {
        lat.elements[newid[i]] = elems[i];
        lat.rank[newid[i]] = ranks[i];
    }
    for (int i = 0; i < m; ++i) lat.element_index.emplace(lat.elements[i].canonical_key(), i);
    for (auto [lo, hi] : covers) {
        lat.up_covers[newid[lo]].push_back(newid[hi]);
        lat.down_covers[newid[hi]].push_back(newid[lo]);
    }
    for (int i = 0; i < m; ++i) {
        std::sort(lat.up_covers[i].begin(), lat.up_covers[i].end());
        std::sort(lat.down_covers[i].begin(), lat.down_covers[i].end());
    }
    if (lat.rank[0] != 0 || !is_identity(lat.elements[0]) || (m > 1 && lat.rank[1] == 0))
        throw std::logic_error("lattice is missing a unique least element");
    return lat;
}

inline NCLattice build_nc_lattice(const GroupParams& params, int cap = kDefaultElementCap) {
    // the size of the standard interval is known up front, so reject early
    const long long predicted = catalog(params.d == 1 ? "g11n" : "gddn", params.d, params.n).catalan;
    if (predicted > cap)
        throw resource_limit_error("predicted lattice size " + std::to_string(predicted) +
                                   " exceeds the cap of " + std::to_string(cap));
    return build_nc_lattice_for(params, coxeter_element(params), cap);
}

// Builds each canonical lattice once per instance; useful for recursive
// constructions that revisit the same factor types.
class LatticeCache {
public:
    const NCLattice& get(const GroupParams& params, int cap = kDefaultElementCap) {
        const auto key = std::make_pair(params.d, params.n);
        auto it = store_.find(key);
        if (it == store_.end()) it = store_.emplace(key, build_nc_lattice(params, cap)).first;
        return it->second;
    }

private:
    std::map<std::pair<int, int>, NCLattice> store_;
};

inline std::vector<int> atoms(const NCLattice& lat) { return lat.up_covers[0]; }

inline std::vector<int> coatoms(const NCLattice& lat) { return lat.down_covers[lat.size() - 1]; }

inline GradedPoset to_graded_poset(const NCLattice& lat) {
    GradedPoset p;
    p.m = lat.size();
    p.rank = lat.rank;
    p.up = lat.up_covers;
    p.labels.resize(p.m);
    for (int i = 0; i < p.m; ++i) p.labels[i] = to_cycle_string(lat.elements[i]);
    return p;
}

// The order isomorphism w -> u^-1 w from [x, y] onto [u^-1 x, u^-1 y],
// returned as pairs of element indices.
inline std::vector<std::pair<int, int>> translate_interval(const NCLattice& lat, int u, int x, int y) {
    if (!(lat.leq(u, x) && lat.leq(x, y)))
        throw input_error("translate_interval requires u <= x <= y");
    const ColoredPermutation uinv = inverse(lat.elements[u]);
    std::vector<std::pair<int, int>> out;
    for (int w = 0; w < lat.size(); ++w) {
        if (!(lat.leq(x, w) && lat.leq(w, y))) continue;
        const int img = lat.index_of(compose(uinv, lat.elements[w]));
        if (img < 0) throw std::logic_error("translated element left the lattice");
        out.emplace_back(w, img);
    }
    return out;
}

// --- support factorization ----------------------------------------------------

// One support-disjoint piece of a bottom interval [eps, w]: either a single
// simultaneous cycle (type G(1,1,k)) or the pair of balanced cycles forming
// a gamma-like element of a G(d,d,m) parabolic.  The relabeling sends the
// piece onto the canonical Coxeter element of the factor group, so the
// factor is realized as a standalone NC lattice.
struct IntervalFactor {
    GroupParams sub_params;
    std::vector<int> support;       // ambient indices; position j holds rho^-1(j+1)
    std::vector<int> color_offset;  // offsets c_k aligned with support
    NCLattice lattice;
};

struct IntervalFactorization {
    GroupParams ambient;
    ColoredPermutation base;  // w itself
    std::vector<IntervalFactor> factors;

    // split an ambient element v <= w into factor-lattice indices
    std::vector<int> project(const ColoredPermutation& v) const {
        std::vector<int> pos(ambient.n + 1, -1), fac(ambient.n + 1, -1);
        for (std::size_t f = 0; f < factors.size(); ++f)
            for (std::size_t j = 0; j < factors[f].support.size(); ++j) {
                pos[factors[f].support[j]] = static_cast<int>(j);
                fac[factors[f].support[j]] = static_cast<int>(f);
            }
        for (int k = 1; k <= ambient.n; ++k)
            if (fac[k] == -1 && (v.target[k - 1] != k || v.shift[k - 1] != 0))
                throw input_error("element moves a point outside the factor supports");
        std::vector<int> out;
        for (const auto& factor : factors) {
            const int sn = factor.sub_params.n;
            ColoredPermutation sub = identity(factor.sub_params);
            for (int j = 0; j < sn; ++j) {
                const int k = factor.support[j];
                const int tgt = v.target[k - 1];
                if (fac[tgt] != fac[k]) throw input_error("element does not respect the factor supports");
                const int shift =
                    ((factor.color_offset[j] + v.shift[k - 1] - factor.color_offset[pos[tgt]]) %
                         ambient.d + ambient.d) % ambient.d;
                if (factor.sub_params.d == 1 && shift != 0)
                    throw input_error("nonzero color inside a symmetric-group factor");
                sub.target[j] = pos[tgt] + 1;
                sub.shift[j] = factor.sub_params.d == 1 ? 0 : shift;
            }
            const int idx = factor.lattice.index_of(sub);
            if (idx < 0) throw input_error("projected element is not in the factor lattice");
            out.push_back(idx);
        }
        return out;
    }

    // combine one element index per factor into an ambient element
    ColoredPermutation embed(const std::vector<int>& picks) const {
        ColoredPermutation out = identity(ambient);
        for (std::size_t f = 0; f < factors.size(); ++f) {
            const auto& factor = factors[f];
            const ColoredPermutation& e = factor.lattice.elements[picks[f]];
            for (int j = 0; j < factor.sub_params.n; ++j) {
                const int k = factor.support[j];
                const int tgt = factor.support[e.target[j] - 1];
                out.target[k - 1] = tgt;
                out.shift[k - 1] =
                    ((e.shift[j] - factor.color_offset[j] + factor.color_offset[e.target[j] - 1]) %
                         ambient.d + ambient.d) % ambient.d;
            }
        }
        return out;
    }
};

// Split [eps, w] along the support-disjoint generalized cycles of w.
// Simultaneous cycles of length one contribute nothing; every member of the
// interval restricts to the factor supports.
inline IntervalFactorization factorize_interval(const GroupParams& params,
                                                const ColoredPermutation& w,
                                                int cap = kDefaultElementCap,
                                                LatticeCache* cache = nullptr) {
    auto factor_lattice = [&](const GroupParams& sub) {
        return cache ? cache->get(sub, cap) : build_nc_lattice(sub, cap);
    };
    IntervalFactorization out;
    out.ambient = params;
    out.base = w;
    std::vector<GenCycle> balanced;
    for (const auto& c : cycle_decomposition(w)) {
        if (c.kind == CycleKind::Balanced) {
            balanced.push_back(c);
            continue;
        }
        if (c.length() < 2) continue;
        IntervalFactor factor;
        factor.sub_params = {1, c.length()};
        for (const auto& pt : c.support) {
            factor.support.push_back(pt.index);
            factor.color_offset.push_back(pt.color);
        }
        factor.lattice = factor_lattice(factor.sub_params);
        out.factors.push_back(std::move(factor));
    }
    if (!balanced.empty()) {
        if (balanced.size() != 2)
            throw input_error("expected exactly two balanced cycles below a Coxeter element");
        // head carries winding 1 and all but one point; the tail is a single
        // point with winding d-1
        int head = -1, tail = -1;
        if (params.d == 2) {
            head = balanced[0].length() >= balanced[1].length() ? 0 : 1;
            tail = 1 - head;
        } else {
            for (int i = 0; i < 2; ++i) {
                if (balanced[i].winding == 1) head = i;
                if (balanced[i].winding == params.d - 1) tail = i;
            }
        }
        if (head < 0 || tail < 0 || head == tail || balanced[tail].length() != 1 ||
            balanced[head].winding != 1 || balanced[tail].winding != params.d - 1)
            throw input_error("balanced cycles do not form a recognizable parabolic Coxeter element");
        IntervalFactor factor;
        factor.sub_params = {params.d, balanced[head].length() + 1};
        for (const auto& pt : balanced[head].support) {
            factor.support.push_back(pt.index);
            factor.color_offset.push_back(pt.color);
        }
        factor.support.push_back(balanced[tail].support[0].index);
        factor.color_offset.push_back(balanced[tail].support[0].color);
        factor.lattice = factor_lattice(factor.sub_params);
        out.factors.push_back(std::move(factor));
    }
    // w itself must project to the tops of the factor lattices
    auto tops = out.project(w);
    for (std::size_t f = 0; f < out.factors.size(); ++f)
        if (tops[f] != out.factors[f].lattice.size() - 1)
            throw std::logic_error("factorization did not map w to the factor maxima");
    return out;
}

// Prop-style probe: the lattice shape does not depend on the Coxeter
// element.  Conjugates of gamma are sampled with a fixed seed.
inline bool nc_isomorphic_all_coxeter(const GroupParams& params, int samples,
                                      int size_cap = 64) {
    NCLattice base = build_nc_lattice(params, size_cap + 1);
    if (base.size() > size_cap) throw resource_limit_error("coxeter probe capped at 64 elements");
    GradedPoset base_poset = to_graded_poset(base);
    std::mt19937 rng(0xc0c0au);
    for (int s = 0; s < samples; ++s) {
        ColoredPermutation g = identity(params);
        std::shuffle(g.target.begin(), g.target.end(), rng);
        if (params.d > 1) {
            int sum = 0;
            for (int k = 0; k + 1 < params.n; ++k) {
                g.shift[k] = static_cast<int>(rng() % params.d);
                sum += g.shift[k];
            }
            g.shift[params.n - 1] = ((params.d - sum % params.d) % params.d);
        }
        ColoredPermutation conj = compose(compose(g, base.gamma), inverse(g));
        NCLattice other = build_nc_lattice_for(params, conj, size_cap + 1);
        if (!is_isomorphic(base_poset, to_graded_poset(other))) return false;
    }
    return true;
}

}  // namespace ncp

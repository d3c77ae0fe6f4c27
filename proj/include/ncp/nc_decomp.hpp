#pragma once

// Constructive decompositions of noncrossing partition lattices: the
// classical grouping by the image of 1 for the symmetric group, the
// chunking of G(d,d,n) by the image of 1^0, the rearranged symmetric
// decomposition obtained by pairing two off-center chunks into the last
// one, the recursive symmetric Boolean decomposition, chain refinement,
// and the rank recursion.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ncp/absolute_order.hpp"
#include "ncp/catalog.hpp"
#include "ncp/poset.hpp"

namespace ncp {

namespace detail {

inline void require_standard_gamma(const NCLattice& lat) {
    if (!(lat.gamma == coxeter_element(lat.params)))
        throw input_error("decomposition requires the lattice built from the standard Coxeter element");
}

// chunk key of an element: (i, s) with u(1^0) = i^s
inline std::pair<int, int> chunk_value(const NCLattice& lat, int idx) {
    return {lat.elements[idx].target[0], lat.elements[idx].shift[0]};
}

inline std::map<std::pair<int, int>, std::vector<int>> chunk_sets(const NCLattice& lat) {
    std::map<std::pair<int, int>, std::vector<int>> chunks;
    for (int i = 0; i < lat.size(); ++i) chunks[chunk_value(lat, i)].push_back(i);
    return chunks;
}

// a chunk is a closed interval; find its unique least and greatest element
inline std::pair<int, int> interval_bounds(const NCLattice& lat, const std::vector<int>& ids) {
    int lo = ids.front(), hi = ids.front();
    for (int e : ids) {
        if (lat.rank[e] < lat.rank[lo]) lo = e;
        if (lat.rank[e] > lat.rank[hi]) hi = e;
    }
    for (int e : ids) {
        if (e != lo && lat.rank[e] == lat.rank[lo])
            throw std::logic_error("chunk has no unique least element");
        if (e != hi && lat.rank[e] == lat.rank[hi])
            throw std::logic_error("chunk has no unique greatest element");
        if (!(lat.leq(lo, e) && lat.leq(e, hi)))
            throw std::logic_error("chunk is not an interval");
    }
    return {lo, hi};
}

struct BoolPart {
    std::vector<int> ids;
    int brank = 0;
};

// per-invocation memo: canonical lattices and their Boolean parts, keyed by
// (d, n); every lattice in the recursion is canonical, so parts transfer
struct SbdCache {
    LatticeCache lattices;
    std::map<std::pair<int, int>, std::vector<BoolPart>> parts;
};

inline const std::vector<BoolPart>& sbd_parts(const NCLattice& lat, SbdCache& cache);

// Symmetric Boolean parts of the interval [lo, hi]: translate to a bottom
// interval, split it along the cycle supports of its top, decompose each
// factor recursively, and combine factor parts by the product rule.
inline std::vector<BoolPart> sbd_interval(const NCLattice& lat, int lo, int hi, SbdCache& cache) {
    if (lo == hi) return {BoolPart{{lo}, 0}};
    const ColoredPermutation base = lat.elements[lo];
    const ColoredPermutation z = compose(inverse(base), lat.elements[hi]);
    const IntervalFactorization fz =
        factorize_interval(lat.params, z, kDefaultElementCap, &cache.lattices);
    std::vector<std::vector<BoolPart>> factor_parts;
    for (const auto& f : fz.factors) factor_parts.push_back(sbd_parts(f.lattice, cache));

    std::vector<BoolPart> out;
    const std::size_t nf = fz.factors.size();
    std::vector<std::size_t> part_pick(nf, 0);
    while (true) {
        BoolPart combined;
        for (std::size_t f = 0; f < nf; ++f) combined.brank += factor_parts[f][part_pick[f]].brank;
        std::vector<std::size_t> elem_pick(nf, 0);
        while (true) {
            std::vector<int> picks(nf);
            for (std::size_t f = 0; f < nf; ++f)
                picks[f] = factor_parts[f][part_pick[f]].ids[elem_pick[f]];
            const int idx = lat.index_of(compose(base, fz.embed(picks)));
            if (idx < 0) throw std::logic_error("product element fell outside the lattice");
            combined.ids.push_back(idx);
            std::size_t f = 0;
            while (f < nf && ++elem_pick[f] == factor_parts[f][part_pick[f]].ids.size()) {
                elem_pick[f] = 0;
                ++f;
            }
            if (f == nf) break;
        }
        out.push_back(std::move(combined));
        std::size_t f = 0;
        while (f < nf && ++part_pick[f] == factor_parts[f].size()) {
            part_pick[f] = 0;
            ++f;
        }
        if (f == nf) break;
    }
    return out;
}

// extend each part by its image under left multiplication, one Boolean
// direction higher
inline std::vector<BoolPart> pair_parts(const NCLattice& lat, std::vector<BoolPart> parts,
                                        const ColoredPermutation& mult) {
    for (auto& part : parts) {
        std::vector<int> mirror;
        for (int e : part.ids) {
            const int img = lat.index_of(compose(mult, lat.elements[e]));
            if (img < 0) throw std::logic_error("pairing image fell outside the lattice");
            mirror.push_back(img);
        }
        part.ids.insert(part.ids.end(), mirror.begin(), mirror.end());
        ++part.brank;
    }
    return parts;
}

inline std::vector<BoolPart> sbd_parts_type_a(const NCLattice& lat, SbdCache& cache) {
    const int n = lat.params.n;
    if (n == 1) return {BoolPart{{0}, 0}};
    std::map<int, std::vector<int>> by_image;
    for (int i = 0; i < lat.size(); ++i) by_image[lat.elements[i].target[0]].push_back(i);

    std::vector<BoolPart> out;
    {
        const auto [lo, hi] = interval_bounds(lat, by_image.at(1));
        auto parts = pair_parts(lat, sbd_interval(lat, lo, hi, cache),
                                reflection_element(lat.params, {1, 2, 0}));
        out.insert(out.end(), parts.begin(), parts.end());
    }
    for (int i = 3; i <= n; ++i) {
        const auto [lo, hi] = interval_bounds(lat, by_image.at(i));
        auto parts = sbd_interval(lat, lo, hi, cache);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    return out;
}

inline std::vector<BoolPart> sbd_parts_gddn(const NCLattice& lat, SbdCache& cache) {
    const int d = lat.params.d, n = lat.params.n;
    if (n == 2) {
        // one Boolean of rank 2 through the bounds, remaining atoms as
        // rank-0 parts
        const auto a = atoms(lat);
        std::vector<BoolPart> out{BoolPart{{0, a[0], a[1], lat.size() - 1}, 2}};
        for (std::size_t i = 2; i < a.size(); ++i) out.push_back(BoolPart{{a[i]}, 0});
        return out;
    }
    auto chunks = chunk_sets(lat);
    std::vector<BoolPart> out;

    // R1(0) extended into R2(0)
    {
        const auto [lo, hi] = interval_bounds(lat, chunks.at({1, 0}));
        auto parts = pair_parts(lat, sbd_interval(lat, lo, hi, cache),
                                reflection_element(lat.params, {1, 2, 0}));
        out.insert(out.end(), parts.begin(), parts.end());
    }
    // middle chunks
    for (int i = 3; i < n; ++i)
        for (int s : {0, d - 1}) {
            const auto [lo, hi] = interval_bounds(lat, chunks.at({i, s}));
            auto parts = sbd_interval(lat, lo, hi, cache);
            out.insert(out.end(), parts.begin(), parts.end());
        }
    // Rn(s) for s < d-1
    for (int s = 0; s + 1 < d; ++s) {
        const auto [lo, hi] = interval_bounds(lat, chunks.at({n, s}));
        auto parts = sbd_interval(lat, lo, hi, cache);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    // D1 and D2: pair R1(1) and R2(d-1) into the last chunk
    const ColoredPermutation f1 = reflection_element(lat.params, {1, n, (d - 2 + d) % d});
    const ColoredPermutation f2 = reflection_element(lat.params, {2, n, 0});
    std::vector<char> paired(lat.size(), 0);
    auto mark_images = [&](const std::vector<int>& ids, const ColoredPermutation& mult) {
        for (int e : ids) {
            const int img = lat.index_of(compose(mult, lat.elements[e]));
            if (img < 0) throw std::logic_error("pairing image fell outside the lattice");
            paired[img] = 1;
        }
    };
    {
        const auto [lo, hi] = interval_bounds(lat, chunks.at({1, 1}));
        mark_images(chunks.at({1, 1}), f1);
        auto parts = pair_parts(lat, sbd_interval(lat, lo, hi, cache), f1);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    {
        const auto [lo, hi] = interval_bounds(lat, chunks.at({2, d - 1}));
        mark_images(chunks.at({2, d - 1}), f2);
        auto parts = pair_parts(lat, sbd_interval(lat, lo, hi, cache), f2);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    // remainder of Rn(d-1), pulled back through the least chunk element and
    // grouped by the image of n (the two glued copies correspond to images
    // n and 2); the groups are intervals again
    {
        const ColoredPermutation g = reflection_element(lat.params, {1, n, d - 1});
        std::map<int, std::vector<int>> pieces;
        for (int e : chunks.at({n, d - 1})) {
            if (paired[e]) continue;
            const int i = compose(g, lat.elements[e]).target[n - 1];
            if (i < 3 || i >= n) throw std::logic_error("unexpected remainder piece index");
            pieces[i].push_back(e);
        }
        for (const auto& [i, ids] : pieces) {
            const auto [lo, hi] = interval_bounds(lat, ids);
            auto parts = sbd_interval(lat, lo, hi, cache);
            out.insert(out.end(), parts.begin(), parts.end());
        }
    }
    return out;
}

inline const std::vector<BoolPart>& sbd_parts(const NCLattice& lat, SbdCache& cache) {
    const auto key = std::make_pair(lat.params.d, lat.params.n);
    auto it = cache.parts.find(key);
    if (it != cache.parts.end()) return it->second;
    auto parts = lat.params.d == 1 ? sbd_parts_type_a(lat, cache) : sbd_parts_gddn(lat, cache);
    return cache.parts.emplace(key, std::move(parts)).first->second;
}

inline void sort_parts(const GradedPoset& ambient, Decomposition& d) {
    for (auto& part : d.parts) std::sort(part.elements.begin(), part.elements.end());
    std::stable_sort(d.parts.begin(), d.parts.end(),
                     [&](const DecompositionPart& a, const DecompositionPart& b) {
                         const int ra = ambient.rank[a.elements.front()];
                         const int rb = ambient.rank[b.elements.front()];
                         if (ra != rb) return ra < rb;
                         return a.elements.front() < b.elements.front();
                     });
}

inline std::string nc_name(int d, int n) {
    return "NC(G(" + std::to_string(d) + "," + std::to_string(d) + "," + std::to_string(n) + "))";
}

}  // namespace detail

// Grouping of NC(G(1,1,n)) by the image of 1; the first two groups merge
// into one symmetric part, the rest are intervals of product type.
inline Decomposition su_decompose(const NCLattice& lat) {
    if (lat.params.d != 1) throw input_error("this grouping is defined for G(1,1,n) lattices");
    detail::require_standard_gamma(lat);
    const int n = lat.params.n;
    std::map<int, std::vector<int>> by_image;
    for (int i = 0; i < lat.size(); ++i) by_image[lat.elements[i].target[0]].push_back(i);
    Decomposition out;
    {
        DecompositionPart part;
        part.elements = by_image.at(1);
        if (n >= 2) {
            part.elements.insert(part.elements.end(), by_image.at(2).begin(), by_image.at(2).end());
            part.iso_type = "2 x " + detail::nc_name(1, n - 1);
        } else {
            part.iso_type = detail::nc_name(1, 1);
        }
        part.tag = "SU_R(1)";
        out.parts.push_back(std::move(part));
    }
    for (int i = 3; i <= n; ++i) {
        DecompositionPart part;
        part.elements = by_image.at(i);
        part.tag = "SU_R(" + std::to_string(i) + ")";
        part.iso_type = detail::nc_name(1, i - 2) + " x " + detail::nc_name(1, n - i + 1);
        out.parts.push_back(std::move(part));
    }
    detail::sort_parts(to_graded_poset(lat), out);
    return out;
}

// Chunks of NC(G(d,d,n)) by the image of 1^0.  Emits only nonempty chunks
// and insists on the exact emptiness pattern: R_1^(s) vanishes for
// 2 <= s < d, and R_i^(s) vanishes for 1 <= s < d-1 when 2 <= i < n.
inline Decomposition chunk_decompose(const NCLattice& lat) {
    const int d = lat.params.d, n = lat.params.n;
    if (d < 2) throw input_error("chunking by colored image is defined for G(d,d,n), d >= 2");
    detail::require_standard_gamma(lat);
    auto chunks = detail::chunk_sets(lat);
    for (int i = 1; i <= n; ++i)
        for (int s = 0; s < d; ++s) {
            const bool expect_empty =
                (i == 1 && s >= 2) || (i >= 2 && i < n && s >= 1 && s < d - 1);
            if (expect_empty != (chunks.find({i, s}) == chunks.end()))
                throw std::logic_error("chunk emptiness pattern violated");
        }
    Decomposition out;
    for (const auto& [key, ids] : chunks) {
        const auto [i, s] = key;
        DecompositionPart part;
        part.elements = ids;
        part.tag = "R(" + std::to_string(i) + "," + std::to_string(s) + ")";
        if (i == 1 && s == 0)
            part.iso_type = n > 2 ? detail::nc_name(d, n - 1) : "point";
        else if (i == 1 && s == 1)
            part.iso_type = n > 2 ? detail::nc_name(1, n - 2) : "point";
        else if (i == 2 && s == 0)
            part.iso_type = n > 2 ? detail::nc_name(d, n - 1) : detail::nc_name(1, n - 1);
        else if (i == 2 && s == d - 1 && n > 2)
            part.iso_type = detail::nc_name(1, n - 2);
        else if (i == n)
            part.iso_type = detail::nc_name(1, n - 1);
        else if (s == 0)
            part.iso_type = detail::nc_name(d, n - i + 1) + " x " + detail::nc_name(1, i - 2);
        else
            part.iso_type = detail::nc_name(1, n - i) + " x " + detail::nc_name(d, i - 1);
        out.parts.push_back(std::move(part));
    }
    detail::sort_parts(to_graded_poset(lat), out);
    return out;
}

// The symmetric rearrangement: R1(1) and R2(d-1) are glued to their
// translated copies inside Rn(d-1), and what remains of Rn(d-1) splits into
// products of smaller type-(1,1,*) lattices.
inline Decomposition rearranged_decompose(const NCLattice& lat) {
    const int d = lat.params.d, n = lat.params.n;
    if (d < 2) throw input_error("the rearranged decomposition is defined for G(d,d,n), d >= 2");
    detail::require_standard_gamma(lat);
    Decomposition out;
    if (n == 2) {
        // rank-2 lattice: one symmetric 3-chain through the bounds, the
        // remaining atoms are middle-rank singletons
        const auto a = atoms(lat);
        DecompositionPart spine;
        spine.elements = {0, a[0], lat.size() - 1};
        spine.tag = "R(1,0)";
        spine.iso_type = "3-chain";
        out.parts.push_back(std::move(spine));
        for (std::size_t i = 1; i < a.size(); ++i) {
            DecompositionPart part;
            part.elements = {a[i]};
            const auto [ci, cs] = detail::chunk_value(lat, a[i]);
            part.tag = "R(" + std::to_string(ci) + "," + std::to_string(cs) + ")";
            part.iso_type = "point";
            out.parts.push_back(std::move(part));
        }
        detail::sort_parts(to_graded_poset(lat), out);
        return out;
    }
    auto chunks = detail::chunk_sets(lat);
    {
        DecompositionPart part;
        part.elements = chunks.at({1, 0});
        const auto& r20 = chunks.at({2, 0});
        part.elements.insert(part.elements.end(), r20.begin(), r20.end());
        part.tag = "R(1,0)";
        part.iso_type = "2 x " + detail::nc_name(d, n - 1);
        out.parts.push_back(std::move(part));
    }
    for (int i = 3; i < n; ++i)
        for (int s : {0, d - 1}) {
            DecompositionPart part;
            part.elements = chunks.at({i, s});
            part.tag = "R(" + std::to_string(i) + "," + std::to_string(s) + ")";
            part.iso_type = s == 0
                                ? detail::nc_name(d, n - i + 1) + " x " + detail::nc_name(1, i - 2)
                                : detail::nc_name(1, n - i) + " x " + detail::nc_name(d, i - 1);
            out.parts.push_back(std::move(part));
        }
    for (int s = 0; s + 1 < d; ++s) {
        DecompositionPart part;
        part.elements = chunks.at({n, s});
        part.tag = "R(" + std::to_string(n) + "," + std::to_string(s) + ")";
        part.iso_type = detail::nc_name(1, n - 1);
        out.parts.push_back(std::move(part));
    }
    const ColoredPermutation f1 = reflection_element(lat.params, {1, n, (d - 2 + d) % d});
    const ColoredPermutation f2 = reflection_element(lat.params, {2, n, 0});
    std::vector<char> paired(lat.size(), 0);
    {
        DecompositionPart part;
        part.elements = chunks.at({1, 1});
        for (int e : chunks.at({1, 1})) {
            const int img = lat.index_of(compose(f1, lat.elements[e]));
            if (img < 0 || detail::chunk_value(lat, img) != std::make_pair(n, d - 1))
                throw std::logic_error("translated copy left the last chunk");
            if (paired[img]) throw std::logic_error("translated copies overlap");
            paired[img] = 1;
            part.elements.push_back(img);
        }
        part.tag = "D1";
        part.iso_type = "2 x " + detail::nc_name(1, n - 2);
        out.parts.push_back(std::move(part));
    }
    {
        DecompositionPart part;
        part.elements = chunks.at({2, d - 1});
        for (int e : chunks.at({2, d - 1})) {
            const int img = lat.index_of(compose(f2, lat.elements[e]));
            if (img < 0 || detail::chunk_value(lat, img) != std::make_pair(n, d - 1))
                throw std::logic_error("translated copy left the last chunk");
            if (paired[img]) throw std::logic_error("translated copies overlap");
            paired[img] = 1;
            part.elements.push_back(img);
        }
        part.tag = "D2";
        part.iso_type = "2 x " + detail::nc_name(1, n - 2);
        out.parts.push_back(std::move(part));
    }
    {
        const ColoredPermutation g = reflection_element(lat.params, {1, n, d - 1});
        std::map<int, std::vector<int>> pieces;
        for (int e : chunks.at({n, d - 1})) {
            if (paired[e]) continue;
            const int i = compose(g, lat.elements[e]).target[n - 1];
            if (i < 3 || i >= n) throw std::logic_error("unexpected remainder piece index");
            pieces[i].push_back(e);
        }
        for (const auto& [i, ids] : pieces) {
            DecompositionPart part;
            part.elements = ids;
            part.tag = "D";
            part.iso_type = detail::nc_name(1, i - 2) + " x " + detail::nc_name(1, n - i);
            out.parts.push_back(std::move(part));
        }
    }
    detail::sort_parts(to_graded_poset(lat), out);
    return out;
}

// Symmetric Boolean decomposition, built by recursion over the rearranged
// decomposition with structure transported through the explicit translation
// and factorization isomorphisms.
inline Decomposition sbd(const NCLattice& lat) {
    detail::require_standard_gamma(lat);
    detail::SbdCache cache;
    auto raw = detail::sbd_parts(lat, cache);
    std::vector<char> seen(lat.size(), 0);
    std::size_t total = 0;
    for (const auto& part : raw) {
        total += part.ids.size();
        for (int e : part.ids) {
            if (seen[e]) throw std::logic_error("Boolean parts overlap");
            seen[e] = 1;
        }
    }
    if (total != static_cast<std::size_t>(lat.size()))
        throw std::logic_error("Boolean parts do not cover the lattice");
    Decomposition out;
    for (auto& part : raw) {
        DecompositionPart p;
        p.elements = std::move(part.ids);
        p.type = PartType::Boolean;
        p.type_rank = part.brank;
        out.parts.push_back(std::move(p));
    }
    detail::sort_parts(to_graded_poset(lat), out);
    return out;
}

// Refine a verified symmetric Boolean decomposition into symmetric chains
// by the standard bracketing of each part's subset lattice.  The Boolean
// coordinates are recovered canonically from the part atoms, so any
// verified decomposition works, not just ones produced by sbd().
inline Decomposition scd_from_sbd(const GradedPoset& p, const Decomposition& d) {
    {
        auto report = verify_decomposition(p, d, VerifyMode::Boolean);
        if (!report.ok)
            throw input_error("chain refinement requires a verified symmetric Boolean decomposition: " +
                              (report.violations.empty() ? std::string() : report.violations.front()));
    }
    const BitRelation rel = transitive_closure(p);
    Decomposition out;
    for (const auto& part : d.parts) {
        if (part.elements.size() == 1) {
            DecompositionPart chain;
            chain.elements = part.elements;
            chain.type = PartType::Chain;
            chain.type_rank = 0;
            out.parts.push_back(std::move(chain));
            continue;
        }
        auto [lo, hi] = part_span(p, part);
        const int w = hi - lo;
        int bottom = -1;
        for (int e : part.elements)
            if (p.rank[e] == lo) bottom = e;
        std::vector<int> atom_ids;
        for (int e : part.elements)
            if (p.rank[e] == lo + 1 && rel.less(bottom, e)) atom_ids.push_back(e);
        std::sort(atom_ids.begin(), atom_ids.end());
        std::vector<int> by_mask(static_cast<std::size_t>(1) << w, -1);
        for (int e : part.elements) {
            unsigned mask = 0;
            for (int i = 0; i < w; ++i)
                if (atom_ids[i] == e || rel.less(atom_ids[i], e)) mask |= 1u << i;
            by_mask[mask] = e;
        }
        // bracketing: scan bits as brackets, unmatched positions form the
        // free run of each chain
        std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> chains;
        for (unsigned mask = 0; mask < (1u << w); ++mask) {
            std::vector<int> stack;
            unsigned unmatched = 0;
            for (int i = 0; i < w; ++i) {
                if (mask >> i & 1) {
                    stack.push_back(i);
                } else if (!stack.empty()) {
                    stack.pop_back();
                } else {
                    unmatched |= 1u << i;
                }
            }
            for (int i : stack) unmatched |= 1u << i;
            chains[{unmatched, mask & ~unmatched}].push_back(mask);
        }
        for (auto& [key, masks] : chains) {
            std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
                return __builtin_popcount(a) < __builtin_popcount(b);
            });
            DecompositionPart chain;
            for (unsigned mask : masks) chain.elements.push_back(by_mask[mask]);
            chain.type = PartType::Chain;
            chain.type_rank = static_cast<int>(masks.size()) - 1;
            out.parts.push_back(std::move(chain));
        }
    }
    detail::sort_parts(p, out);
    return out;
}

// --- rank recursion ----------------------------------------------------------

namespace detail {

inline long long nar0(int n, int k) { return (n >= 1 && k >= 1 && k <= n) ? narayana(n, k) : 0; }

inline const std::vector<long long>& rank_recursion_memo(
    int d, int n, std::map<std::pair<int, int>, std::vector<long long>>& memo);

// contributions of the chunks to rank k, for 2 <= k <= n-2
inline long long rank_recursion_middle(int d, int n, int k,
                                       std::map<std::pair<int, int>, std::vector<long long>>& memo) {
    const auto& prev = rank_recursion_memo(d, n - 1, memo);
    long long total = prev[k] + prev[k - 1];           // 2 x NC(G(d,d,n-1))
    total += static_cast<long long>(d) * nar0(n - 1, k);  // d copies of NC(G(1,1,n-1))
    for (int i = 3; i <= n - 1; ++i) {                 // both middle chunk families
        const auto& sub = rank_recursion_memo(d, n - i + 1, memo);
        long long piece = 0;
        for (int j = 0; j <= k - 1 && j < static_cast<int>(sub.size()); ++j)
            piece += sub[j] * nar0(i - 2, k - j);
        total += 2 * piece;
    }
    total += nar0(n - 2, k - 1) + nar0(n - 2, k);      // the two off-center chunks
    return total;
}

inline const std::vector<long long>& rank_recursion_memo(
    int d, int n, std::map<std::pair<int, int>, std::vector<long long>>& memo) {
    auto it = memo.find({d, n});
    if (it != memo.end()) return it->second;
    std::vector<long long> r(n + 1, 0);
    if (n == 2) {
        r = {1, d, 1};
    } else {
        r[0] = r[n] = 1;
        r[1] = r[n - 1] = static_cast<long long>(n - 1) * (n + d - 2);
        for (int k = 2; k <= n - 2; ++k) r[k] = rank_recursion_middle(d, n, k, memo);
    }
    return memo.emplace(std::make_pair(d, n), std::move(r)).first->second;
}

inline long long exact_div(long long a, long long b) {
    if (b == 0 || a % b != 0) throw std::logic_error("expected exact division");
    return a / b;
}

}  // namespace detail

// Rank vector of NC(G(d,d,n)) by the itemized chunk contributions, with the
// boundary values r_0 = r_n = 1 and r_1 = r_{n-1} = (n-1)(n+d-2).
inline std::vector<long long> rank_recursion(int d, int n) {
    if (d < 2 || n < 2) throw input_error("rank recursion requires d, n >= 2");
    std::map<std::pair<int, int>, std::vector<long long>> memo;
    return detail::rank_recursion_memo(d, n, memo);
}

// The closed form as printed, quarantined for comparison: its middle double
// sum lacks the factor 2 that the itemized contributions carry, so it
// disagrees with direct enumeration (22 vs 24 at d=2, n=4, k=2).  Exposed
// for exactly that comparison; production paths use rank_recursion.
inline long long rank_recursion_printed(int d, int n, int k) {
    if (d < 2 || n < 2) throw input_error("rank recursion requires d, n >= 2");
    if (k < 2 || k > n - 2) throw input_error("the printed closed form covers 2 <= k <= n-2 only");
    std::map<std::pair<int, int>, std::vector<long long>> memo;
    const auto& prev = detail::rank_recursion_memo(d, n - 1, memo);
    long long total = prev[k] + prev[k - 1];
    for (int i = 1; i <= n - 3; ++i) {
        const auto& sub = detail::rank_recursion_memo(d, n - i - 1, memo);
        for (int j = 0; j <= k - 1 && j < static_cast<int>(sub.size()); ++j)
            total += detail::exact_div(sub[j] * binomial(i, k - j) * binomial(i, k - j - 1), i);
    }
    total += detail::exact_div(static_cast<long long>(d) * binomial(n - 2, k - 1) * binomial(n - 1, k - 1), k);
    total += detail::exact_div(binomial(n - 2, k - 1) * (binomial(n - 2, k - 2) + binomial(n - 2, k)), n - 2);
    return total;
}

}  // namespace ncp

#pragma once

// Exact arithmetic for the monomial-matrix groups G(d,d,n), realized as
// colored permutations: a permutation of [n] together with a color shift
// t_k in Z_d per position, subject to sum(t_k) = 0 (mod d).  The point
// k^s is sent to target(k)^(s + t_k).  Roots of unity never appear as
// complex numbers; a color is just its exponent.  d = 1 degenerates to
// the symmetric group G(1,1,n).

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "ncp/common.hpp"

namespace ncp {

struct GroupParams {
    int d = 1;  // color modulus
    int n = 1;  // number of integers

    friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

inline void validate_params(const GroupParams& p) {
    if (p.d < 1 || p.n < 1) throw input_error("group parameters require d >= 1, n >= 1");
    if (p.d >= 2 && p.n < 2) throw input_error("the family G(d,d,n) requires n >= 2 when d >= 2");
}

struct ColoredPoint {
    int index = 1;  // in [1, n]
    int color = 0;  // in [0, d)

    friend bool operator==(const ColoredPoint&, const ColoredPoint&) = default;
};

struct ColoredPermutation {
    GroupParams params;
    std::vector<int> target;  // 1-based images, target[k-1] in [1, n]
    std::vector<int> shift;   // shift[k-1] in [0, d)

    friend bool operator==(const ColoredPermutation&, const ColoredPermutation&) = default;

    // Flat (target(1), shift(1), ..., target(n), shift(n)); total order and
    // hash key for deterministic, stable output across runs.
    std::vector<int> canonical_key() const {
        std::vector<int> key;
        key.reserve(2 * target.size());
        for (std::size_t i = 0; i < target.size(); ++i) {
            key.push_back(target[i]);
            key.push_back(shift[i]);
        }
        return key;
    }

    friend bool operator<(const ColoredPermutation& a, const ColoredPermutation& b) {
        return a.canonical_key() < b.canonical_key();
    }
};

struct PermHash {
    std::size_t operator()(const ColoredPermutation& u) const noexcept {
        return VectorHash{}(u.canonical_key());
    }
};

enum class CycleKind { Simultaneous, Balanced };

// A generalized cycle: ((k1^t1 ... kr^tr)) closes up exactly, while
// [k1^t1 ... kr^tr]_s returns to k1 with its color advanced by s in [1, d-1].
struct GenCycle {
    CycleKind kind = CycleKind::Simultaneous;
    int winding = 0;  // s for balanced cycles, 0 otherwise
    std::vector<ColoredPoint> support;

    int length() const { return static_cast<int>(support.size()); }
};

// ((a b))^s with 1 <= a < b <= n and 0 <= s < d.
struct Reflection {
    int a = 1;
    int b = 2;
    int s = 0;

    friend bool operator==(const Reflection&, const Reflection&) = default;
};

inline void validate_element(const ColoredPermutation& u) {
    const auto& p = u.params;
    validate_params(p);
    if (static_cast<int>(u.target.size()) != p.n || static_cast<int>(u.shift.size()) != p.n)
        throw input_error("colored permutation arity does not match n");
    std::vector<char> seen(p.n + 1, 0);
    long long sum = 0;
    for (int k = 0; k < p.n; ++k) {
        if (u.target[k] < 1 || u.target[k] > p.n || seen[u.target[k]])
            throw input_error("targets are not a permutation of [n]");
        seen[u.target[k]] = 1;
        if (u.shift[k] < 0 || u.shift[k] >= p.d) throw input_error("color shift out of [0, d)");
        sum += u.shift[k];
    }
    if (sum % p.d != 0) throw input_error("color shifts do not sum to 0 mod d");
}

inline ColoredPermutation identity(const GroupParams& p) {
    validate_params(p);
    ColoredPermutation u{p, std::vector<int>(p.n), std::vector<int>(p.n, 0)};
    for (int k = 1; k <= p.n; ++k) u.target[k - 1] = k;
    return u;
}

inline bool is_identity(const ColoredPermutation& u) {
    for (int k = 0; k < u.params.n; ++k)
        if (u.target[k] != k + 1 || u.shift[k] != 0) return false;
    return true;
}

// u after v: (u . v)(p) = u(v(p)).
inline ColoredPermutation compose(const ColoredPermutation& u, const ColoredPermutation& v) {
    if (!(u.params == v.params)) throw input_error("composing elements of different groups");
    const int d = u.params.d, n = u.params.n;
    ColoredPermutation w{u.params, std::vector<int>(n), std::vector<int>(n)};
    for (int k = 0; k < n; ++k) {
        const int mid = v.target[k];
        w.target[k] = u.target[mid - 1];
        w.shift[k] = (v.shift[k] + u.shift[mid - 1]) % d;
    }
    return w;
}

inline ColoredPermutation inverse(const ColoredPermutation& u) {
    const int d = u.params.d, n = u.params.n;
    ColoredPermutation w{u.params, std::vector<int>(n), std::vector<int>(n)};
    for (int k = 0; k < n; ++k) {
        w.target[u.target[k] - 1] = k + 1;
        w.shift[u.target[k] - 1] = (d - u.shift[k]) % d;
    }
    return w;
}

inline ColoredPoint apply_point(const ColoredPermutation& u, const ColoredPoint& p) {
    if (p.index < 1 || p.index > u.params.n || p.color < 0 || p.color >= u.params.d)
        throw input_error("colored point out of range");
    return {u.target[p.index - 1], (p.color + u.shift[p.index - 1]) % u.params.d};
}

inline ColoredPermutation reflection_element(const GroupParams& p, const Reflection& t) {
    validate_params(p);
    if (!(1 <= t.a && t.a < t.b && t.b <= p.n) || t.s < 0 || t.s >= p.d)
        throw input_error("reflection out of range");
    ColoredPermutation u = identity(p);
    u.target[t.a - 1] = t.b;
    u.target[t.b - 1] = t.a;
    u.shift[t.a - 1] = t.s;
    u.shift[t.b - 1] = (p.d - t.s) % p.d;
    return u;
}

// All d*n(n-1)/2 reflections ((a b))^s, in (a, b, s) order.
inline std::vector<Reflection> reflections(const GroupParams& p) {
    validate_params(p);
    std::vector<Reflection> out;
    out.reserve(static_cast<std::size_t>(p.d) * p.n * (p.n - 1) / 2);
    for (int a = 1; a <= p.n; ++a)
        for (int b = a + 1; b <= p.n; ++b)
            for (int s = 0; s < p.d; ++s) out.push_back({a, b, s});
    return out;
}

// Number of underlying cycles whose total color shift is 0 mod d.  The
// monomial matrix of u has eigenvalue 1 on a cycle's coordinate block
// exactly when the product of its entries is 1, so this equals the
// dimension of the fixed space.
inline int fix_dim(const ColoredPermutation& u) {
    const int n = u.params.n, d = u.params.d;
    std::vector<char> seen(n + 1, 0);
    int dim = 0;
    for (int k = 1; k <= n; ++k) {
        if (seen[k]) continue;
        int sum = 0, j = k;
        do {
            seen[j] = 1;
            sum = (sum + u.shift[j - 1]) % d;
            j = u.target[j - 1];
        } while (j != k);
        if (sum == 0) ++dim;
    }
    return dim;
}

// Cycles in increasing order of least index; each starts at its least
// index in color 0.  Fixed points with shift 0 appear as length-1
// simultaneous cycles so that supports always exhaust [n].
inline std::vector<GenCycle> cycle_decomposition(const ColoredPermutation& u) {
    const int n = u.params.n, d = u.params.d;
    std::vector<char> seen(n + 1, 0);
    std::vector<GenCycle> cycles;
    for (int k = 1; k <= n; ++k) {
        if (seen[k]) continue;
        GenCycle c;
        int color = 0, j = k;
        do {
            seen[j] = 1;
            c.support.push_back({j, color});
            color = (color + u.shift[j - 1]) % d;
            j = u.target[j - 1];
        } while (j != k);
        if (color == 0) {
            c.kind = CycleKind::Simultaneous;
            c.winding = 0;
        } else {
            c.kind = CycleKind::Balanced;
            c.winding = color;
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

// Inverse of cycle_decomposition.  Indices not covered by any cycle become
// fixed points with shift 0.  Rejects overlapping supports and color sums
// that would land outside G(d,d,n) (e.g. a lone balanced cycle).
inline ColoredPermutation from_cycles(const GroupParams& p, const std::vector<GenCycle>& cycles) {
    validate_params(p);
    ColoredPermutation u = identity(p);
    std::vector<char> used(p.n + 1, 0);
    long long total = 0;
    for (const auto& c : cycles) {
        if (c.support.empty()) throw input_error("empty generalized cycle");
        if (c.kind == CycleKind::Balanced) {
            if (p.d < 2) throw input_error("balanced cycle requires d >= 2");
            if (c.winding < 1 || c.winding >= p.d)
                throw input_error("balanced winding must lie in [1, d-1]");
        }
        const int r = c.length();
        for (int i = 0; i < r; ++i) {
            const auto& pt = c.support[i];
            if (pt.index < 1 || pt.index > p.n || pt.color < 0 || pt.color >= p.d)
                throw input_error("cycle point out of range");
            if (used[pt.index]) throw input_error("cycle supports overlap");
            used[pt.index] = 1;
            const auto& nxt = c.support[(i + 1) % r];
            const int wrap = (i + 1 == r) ? c.winding : 0;
            u.target[pt.index - 1] = nxt.index;
            u.shift[pt.index - 1] = ((nxt.color - pt.color + wrap) % p.d + p.d) % p.d;
        }
        total += c.winding;
    }
    if (total % p.d != 0)
        throw input_error("cycle windings sum to a nonzero color; element lies outside G(d,d,n)");
    return u;
}

// The fixed Coxeter element: 1 -> 2 -> ... -> n-1 -> 1 with one +1 color
// shift on the wrap, and n -> n with shift d-1.  For d = 1 this is the
// long cycle (1 2 ... n).
inline ColoredPermutation coxeter_element(const GroupParams& p) {
    validate_params(p);
    ColoredPermutation u = identity(p);
    if (p.d == 1) {
        for (int k = 1; k < p.n; ++k) u.target[k - 1] = k + 1;
        u.target[p.n - 1] = 1;
        return u;
    }
    for (int k = 1; k + 1 < p.n; ++k) u.target[k - 1] = k + 1;
    u.target[p.n - 2] = 1;
    u.shift[p.n - 2] = 1 % p.d;
    u.target[p.n - 1] = p.n;
    u.shift[p.n - 1] = p.d - 1;
    return u;
}

inline int element_order(const ColoredPermutation& u) {
    ColoredPermutation w = u;
    int k = 1;
    while (!is_identity(w)) {
        w = compose(w, u);
        ++k;
    }
    return k;
}

// --- cycle-notation text form ----------------------------------------------
//
// element := cycle+
// cycle   := "((" point+ "))" | "[" point+ "]_" INT
// point   := INT "^" INT
//
// Balanced subscripts are always printed, including 1, so that files
// round-trip without context.

inline std::string to_cycle_string(const ColoredPermutation& u) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : cycle_decomposition(u)) {
        if (!first) os << ' ';
        first = false;
        os << (c.kind == CycleKind::Simultaneous ? "((" : "[");
        for (std::size_t i = 0; i < c.support.size(); ++i) {
            if (i) os << ' ';
            os << c.support[i].index << '^' << c.support[i].color;
        }
        if (c.kind == CycleKind::Simultaneous)
            os << "))";
        else
            os << "]_" << c.winding;
    }
    return os.str();
}

namespace detail {

inline int parse_int(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw input_error("expected integer at position " + std::to_string(start));
    return std::stoi(s.substr(start, pos - start));
}

inline void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

inline ColoredPoint parse_point(const std::string& s, std::size_t& pos) {
    ColoredPoint pt;
    pt.index = parse_int(s, pos);
    if (pos >= s.size() || s[pos] != '^')
        throw input_error("expected '^' in point at position " + std::to_string(pos));
    ++pos;
    pt.color = parse_int(s, pos);
    return pt;
}

}  // namespace detail

inline ColoredPermutation parse_element(const GroupParams& p, const std::string& text) {
    std::vector<GenCycle> cycles;
    std::size_t pos = 0;
    detail::skip_ws(text, pos);
    while (pos < text.size()) {
        GenCycle c;
        if (text.compare(pos, 2, "((") == 0) {
            pos += 2;
            c.kind = CycleKind::Simultaneous;
            detail::skip_ws(text, pos);
            while (pos < text.size() && text.compare(pos, 2, "))") != 0) {
                c.support.push_back(detail::parse_point(text, pos));
                detail::skip_ws(text, pos);
            }
            if (text.compare(pos, 2, "))") != 0)
                throw input_error("unterminated simultaneous cycle");
            pos += 2;
        } else if (text[pos] == '[') {
            ++pos;
            c.kind = CycleKind::Balanced;
            detail::skip_ws(text, pos);
            while (pos < text.size() && text[pos] != ']') {
                c.support.push_back(detail::parse_point(text, pos));
                detail::skip_ws(text, pos);
            }
            if (pos >= text.size() || text.compare(pos, 2, "]_") != 0)
                throw input_error("balanced cycle requires ']_' and a subscript");
            pos += 2;
            c.winding = detail::parse_int(text, pos);
        } else {
            throw input_error("expected '((' or '[' at position " + std::to_string(pos));
        }
        cycles.push_back(std::move(c));
        detail::skip_ws(text, pos);
    }
    if (cycles.empty()) throw input_error("empty cycle expression");
    return from_cycles(p, cycles);
}

}  // namespace ncp

#pragma once

// Degrees, Coxeter numbers, and Catalan/Narayana predictions for the two
// supported families.  The degree lists are standard invariant-theory data;
// the cardinality cross-check against built lattices keeps them honest.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ncp/common.hpp"

namespace ncp {

struct GroupInvariants {
    std::vector<int> degrees;  // weakly increasing
    int h = 1;                 // largest degree
    long long catalan = 1;
};

inline long long narayana(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw input_error("narayana index out of range");
    return binomial(n, k) * binomial(n, k - 1) / n;
}

inline GroupInvariants catalog(const std::string& family, int d, int n) {
    GroupInvariants inv;
    if (family == "g11n") {
        if (d != 1) throw input_error("family g11n requires d = 1");
        if (n < 1) throw input_error("family g11n requires n >= 1");
        for (int i = 2; i <= n; ++i) inv.degrees.push_back(i);
    } else if (family == "gddn") {
        if (d < 2 || n < 2) throw input_error("family gddn requires d, n >= 2");
        for (int i = 1; i < n; ++i) inv.degrees.push_back(i * d);
        inv.degrees.push_back(n);
        std::sort(inv.degrees.begin(), inv.degrees.end());
    } else {
        throw input_error("unknown family '" + family + "' (expected g11n or gddn)");
    }
    inv.h = inv.degrees.empty() ? 1 : inv.degrees.back();
    long long num = 1, den = 1;
    for (int deg : inv.degrees) {
        num *= deg + inv.h;
        den *= deg;
        const long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    if (den != 1) throw std::logic_error("Catalan product is not an integer");
    inv.catalan = num;
    return inv;
}

}  // namespace ncp

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace satlp {

// Exact arbitrary-precision rational. All solver arithmetic goes through this
// type; there is no floating-point fallback anywhere.
using Rational = boost::multiprecision::mpq_rational;

// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

// Sparse vector over unknown indices, kept sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

// dst += factor * src
inline void axpy(SparseVec& dst, const Rational& factor, const SparseVec& src) {
    if (factor == 0 || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(std::move(dst[i++]));
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, factor * src[j].second);
            ++j;
        } else {
            Rational v = dst[i].second + factor * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

inline const Rational* find_coeff(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == idx) return &it->second;
    return nullptr;
}

}  // namespace satlp

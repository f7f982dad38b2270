#include "lh/degree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace lh::degree {

void DegreeProfile::validate() const {
    if (ds.size() > n) throw std::invalid_argument("more constraints than variables (m > n)");
    if (d0 < 1) throw std::invalid_argument("objective degree must be >= 1");
    for (auto d : ds) {
        if (d < 1) throw std::invalid_argument("constraint degrees must be >= 1");
    }
}

BigInt symmetric_sum(std::uint32_t r, std::span<const BigInt> ns) {
    // h[s] = complete homogeneous sum of degree s over the values seen so far.
    std::vector<BigInt> h(r + 1, BigInt(0));
    h[0] = 1;
    for (const auto& v : ns) {
        for (std::uint32_t s = 1; s <= r; ++s) h[s] += v * h[s - 1];
    }
    return h[r];
}

BigInt symmetric_sum(std::uint32_t r, std::span<const std::int64_t> ns) {
    std::vector<BigInt> big(ns.begin(), ns.end());
    return symmetric_sum(r, std::span<const BigInt>(big));
}

BigInt algebraic_degree_generic(const DegreeProfile& profile) {
    profile.validate();
    const auto m = static_cast<std::uint32_t>(profile.ds.size());
    BigInt prod = 1;
    std::vector<BigInt> shifted;
    shifted.emplace_back(static_cast<std::int64_t>(profile.d0) - 1);
    for (auto d : profile.ds) {
        prod *= d;
        shifted.emplace_back(static_cast<std::int64_t>(d) - 1);
    }
    return prod * symmetric_sum(profile.n - m, std::span<const BigInt>(shifted));
}

BigInt refined_hypersurface_degree(std::span<const std::uint32_t> ds) {
    if (ds.empty()) throw std::invalid_argument("degree list is empty");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds[i] < 1) throw std::invalid_argument("degrees must be >= 1");
        if (i > 0 && ds[i] < ds[i - 1]) {
            throw std::invalid_argument("degrees must be sorted ascending (d_1 <= ... <= d_n)");
        }
    }
    BigInt out = ds[0];
    for (std::size_t i = 1; i < ds.size(); ++i) out *= ds[i] - 1;
    return out;
}

bool refined_degree_established(std::span<const std::uint32_t> ds) {
    bool seen_unit = false;
    for (std::size_t i = 1; i < ds.size(); ++i) {
        if (ds[i] == 1) seen_unit = true;
        if (seen_unit && ds[i] > 2) return false;
    }
    return true;
}

BigInt derangement(std::uint32_t k) {
    BigInt sum = 0;
    BigInt fact = 1;    // t!
    BigInt binom = 1;   // C(k, t)
    for (std::uint32_t t = 0; t <= k; ++t) {
        if (t > 0) {
            fact *= t;
            binom = binom * (k - t + 1) / t;
        }
        const BigInt term = fact * binom;
        if ((k - t) % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

BigInt bezout_number(std::span<const std::uint32_t> degrees) {
    BigInt out = 1;
    for (auto d : degrees) out *= d;
    return out;
}

std::uint64_t to_u64(const BigInt& v) {
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw std::overflow_error("count " + v.str() + " does not fit in 64 bits");
    }
    return v.convert_to<std::uint64_t>();
}

}  // namespace lh::degree

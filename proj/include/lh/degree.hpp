#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lh::degree {

using BigInt = boost::multiprecision::cpp_int;

/// Objective degree d0, constraint degrees d_1..d_m, ambient dimension n.
struct DegreeProfile {
    std::uint32_t d0 = 1;
    std::vector<std::uint32_t> ds;
    std::uint32_t n = 0;

    void validate() const;
};

/// S_r(n_1..n_k): sum over compositions i_1+..+i_k = r of prod n_j^{i_j}.
BigInt symmetric_sum(std::uint32_t r, std::span<const BigInt> ns);
BigInt symmetric_sum(std::uint32_t r, std::span<const std::int64_t> ns);

/// d_1 ... d_m * S_{n-m}(d0-1, d1-1, ..., dm-1). Generic algebraic degree.
BigInt algebraic_degree_generic(const DegreeProfile& profile);

/// d_1 * (d_2-1) ... (d_n-1) for Newton polytope Conv{0, d_1 e_1, ..., d_n e_n}.
/// Throws std::invalid_argument unless 1 <= d_1 <= ... <= d_n.
BigInt refined_hypersurface_degree(std::span<const std::uint32_t> ds);

/// False when the refined product is evaluated outside the families whose
/// count is established: some d_i = 1 for i >= 2 while a later degree exceeds 2.
bool refined_degree_established(std::span<const std::uint32_t> ds);

/// Number of derangements !k = sum_{t=0}^{k} t! (-1)^{k-t} C(k, t).
BigInt derangement(std::uint32_t k);

/// prod D_i, the Bezout number of a square system with equation degrees D_i.
BigInt bezout_number(std::span<const std::uint32_t> degrees);

/// Lossy conversion for loop bounds and reports; throws std::overflow_error.
std::uint64_t to_u64(const BigInt& v);

}  // namespace lh::degree

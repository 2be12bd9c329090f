#pragma once

#include "tvalue/bit_matrix.hpp"
#include "tvalue/composition.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tvalue {

// Generator matrices C_1..C_s of a digital net in base 2 with 2^k points.
// Every matrix is k x k and non-singular. Column c multiplies digit a_c of
// the point index (least significant first); row r yields output digit r+1.
struct NetDef {
    std::size_t k = 0;
    std::vector<BitMatrix> matrices;

    std::size_t s() const noexcept { return matrices.size(); }

    // Validates shapes and non-singularity; throws InvalidNet naming the
    // 1-based coordinate of the first singular matrix.
    static NetDef make(std::vector<BitMatrix> matrices);

    // Generator matrices of the coordinates listed (1-based).
    std::vector<BitMatrix> select(std::span<const std::size_t> coordinates) const;
};

using Generators = std::span<const BitMatrix>;

enum class Method { mgl_decreasing, mgl_increasing, schmid, pirsic_schmid, oracle };
enum class Direction { increasing, decreasing };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

// Throws InvalidNet unless the vector is non-empty and holds equally sized
// square non-singular matrices with k <= 64.
void validate_generators(Generators gens);

// Largest q such that every composition matrix of total <= q has full rank.
std::size_t rho(Generators gens, Method method, OpCounter* counter = nullptr);

// t = k - rho.
std::size_t t_value(Generators gens, Method method, OpCounter* counter = nullptr);

// Largest q >= d such that every composition matrix with all d parts
// positive and total q has full rank; d - 1 if there is none.
std::size_t rho_tilde(Generators gens, OpCounter* counter = nullptr);

// Incremental reduction over a single-row-change enumeration of the
// composition matrices of each level q. Decreasing order stops a level at
// its first rank-deficient matrix. q_start defaults to k when decreasing
// and to 1 when increasing.
std::size_t rho_mgl(Generators gens, Direction direction,
                    std::optional<std::size_t> q_start = std::nullopt, OpCounter* counter = nullptr);

// Gray-code walk over row combinations, grouped by the deepest row used in
// each block. Only combinations touching at least two blocks are visited.
std::size_t rho_schmid(Generators gens, OpCounter* counter = nullptr);

// True if some XOR of rows, touching every block of `gens` and whose
// deepest rows form a positive composition of q, vanishes. No validation.
bool schmid_has_zero(Generators gens, std::size_t q, OpCounter* counter = nullptr);

// Fresh Gaussian elimination of each composition matrix, increasing q.
std::size_t rho_ps(Generators gens, OpCounter* counter = nullptr);

// Point counting on all 2^k points; refuses k above kOracleMaxK.
inline constexpr std::size_t kOracleMaxK = 14;
std::size_t rho_oracle(Generators gens);

// Outcome of sweeping all compositions of one total.
struct LevelScan {
    bool full_rank = true;
    // Leading column count holding every pivot placed during the sweep, or
    // k + 1 once a matrix was found rank deficient (the sweep stops there).
    std::size_t rightmost = 0;
};

// Sweeps every composition matrix of total q (weak or positive parts) with
// one full reduction followed by single-row updates. Stops at the first
// rank-deficient matrix. No validation.
LevelScan scan_level(Generators gens, std::size_t q, Positivity positivity, OpCounter* counter = nullptr);

}  // namespace tvalue

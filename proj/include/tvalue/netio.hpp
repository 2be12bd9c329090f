#pragma once

#include "tvalue/tvalue.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

namespace tvalue {

// Net file format:
//
//   b=2 k=<k> s=<s>
//   matrix 1
//   <k lines of k characters from {0,1}; line r is row r, character c is entry (r, c)>
//   ...
//   matrix s
//   ...
//
// Lines starting with '#' and blank lines are ignored anywhere.
NetDef parse_net(std::string_view text);
NetDef read_net_file(const std::filesystem::path& path);
std::string emit_net(const NetDef& net);

// Upper-triangular Pascal matrix mod 2: entry (r, c) = C(c, r) mod 2 (0-based).
BitMatrix pascal_matrix(std::size_t k);
NetDef sobol_2d(std::size_t k);
NetDef identity_net(std::size_t s, std::size_t k);

// Uniform sampling of non-singular matrices by rejection. Each candidate row
// is the low k bits of one draw of std::mt19937_64 (whose output sequence is
// fixed by the C++ standard), so nets are reproducible across platforms.
class NetSampler {
public:
    explicit NetSampler(std::uint64_t seed) : rng_(seed) {}

    BitMatrix nonsingular(std::size_t k);
    NetDef net(std::size_t s, std::size_t k);
    // Embedded-regular: every leading m x m minor non-singular for m >= m0.
    NetDef embedded_net(std::size_t s, std::size_t k, std::size_t m0);

    std::uint64_t draws() const noexcept { return draws_; }
    std::uint64_t accepted() const noexcept { return accepted_; }

private:
    BitMatrix uniform(std::size_t k);

    std::mt19937_64 rng_;
    std::uint64_t draws_ = 0;
    std::uint64_t accepted_ = 0;
};

NetDef sample_regular_net(std::size_t s, std::size_t k, std::uint64_t seed);

}  // namespace tvalue

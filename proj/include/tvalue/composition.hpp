#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace tvalue {

// Saturating arithmetic for closed-form operation counts; a result that
// does not fit is reported as the maximum value.
inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

__extension__ typedef unsigned __int128 uint128;

enum class Positivity { weak, positive };

struct Composition {
    std::vector<std::size_t> parts;
    std::size_t total = 0;
    Positivity positivity = Positivity::weak;
};

// One unit moved between two blocks of the stacked composition matrix: the
// deepest row of `shrunk` is dropped and row `new_depth - 1` of `grown` is
// written into the freed stacked position `slot`.
struct RowDelta {
    std::size_t shrunk = 0;
    std::size_t grown = 0;
    std::size_t old_depth = 0;  // parts[shrunk] before the move
    std::size_t new_depth = 0;  // parts[grown] after the move
    std::size_t slot = 0;
};

// Streams every composition of `total` into `d` parts (each part <= cap,
// and >= 1 for positive compositions) so that consecutive compositions
// differ by moving one unit between two parts. The order is a reflected
// Gray order: the first part is swept end to end, and each sub-list for the
// remaining parts runs forward or backward by the parity of the part before
// it. Positive compositions are weak compositions of total - d shifted by 1.
//
// The stream also keeps a stable mapping of (block, depth) to stacked row
// positions so a move shows up as one row replacement.
class CompositionStream {
public:
    CompositionStream(std::size_t d, std::size_t total, std::size_t cap, Positivity positivity);

    bool done() const noexcept { return done_; }
    // Advances to the next composition; returns false once exhausted.
    bool next();

    std::span<const std::size_t> parts() const noexcept { return parts_; }
    Composition composition() const;
    std::size_t total() const noexcept { return total_; }
    std::size_t size() const noexcept { return parts_.size(); }

    // Absent for the first composition.
    const std::optional<RowDelta>& delta() const noexcept { return delta_; }

    // Stacked position of row `depth` (0-based) of `block`.
    std::size_t slot(std::size_t block, std::size_t depth) const { return slots_[block][depth]; }
    std::size_t slot_block(std::size_t slot) const { return slot_block_[slot]; }
    std::size_t slot_depth(std::size_t slot) const { return slot_depth_[slot]; }

private:
    std::size_t lower(std::size_t level) const noexcept;
    std::size_t upper(std::size_t level) const noexcept;
    void fill_from(std::size_t level, bool forward);

    std::size_t total_;
    std::size_t shifted_;  // total of the underlying weak composition
    std::size_t cap_;      // cap on the underlying weak parts
    std::size_t offset_;   // 1 for positive compositions
    bool done_ = false;

    std::vector<std::size_t> weak_;
    std::vector<std::size_t> remaining_;
    std::vector<char> forward_;
    std::vector<std::size_t> parts_;
    std::vector<std::size_t> previous_;
    std::optional<RowDelta> delta_;

    std::vector<std::vector<std::size_t>> slots_;
    std::vector<std::size_t> slot_block_;
    std::vector<std::size_t> slot_depth_;
};

// Number of compositions of q into d parts, without a part cap.
std::uint64_t count_compositions(std::size_t d, std::size_t q, Positivity positivity) noexcept;

}  // namespace tvalue

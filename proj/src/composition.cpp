#include "tvalue/composition.hpp"

#include "tvalue/error.hpp"

#include <algorithm>

namespace tvalue {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * (n - k + i) / i stays exact: it is C(n - k + i, i).
        acc = acc * (n - k + i) / i;
        if (acc > kSaturated) return kSaturated;
    }
    return static_cast<std::uint64_t>(acc);
}

CompositionStream::CompositionStream(std::size_t d, std::size_t total, std::size_t cap,
                                     Positivity positivity)
    : total_(total), offset_(positivity == Positivity::positive ? 1 : 0) {
    if (d == 0) throw ContractViolation("composition stream needs at least one part");

    parts_.assign(d, 0);
    if (total < offset_ * d || cap < offset_ || total - offset_ * d > (cap - offset_) * d) {
        done_ = true;
        return;
    }
    shifted_ = total - offset_ * d;
    cap_ = cap - offset_;

    weak_.assign(d, 0);
    remaining_.assign(d, 0);
    forward_.assign(d, 1);
    remaining_[0] = shifted_;
    fill_from(0, true);
    for (std::size_t j = 0; j < d; ++j) parts_[j] = weak_[j] + offset_;

    slots_.resize(d);
    std::size_t next_slot = 0;
    for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t depth = 0; depth < parts_[b]; ++depth) {
            slots_[b].push_back(next_slot++);
            slot_block_.push_back(b);
            slot_depth_.push_back(depth);
        }
    }
}

std::size_t CompositionStream::lower(std::size_t level) const noexcept {
    const std::size_t rest = (weak_.size() - 1 - level) * cap_;
    const std::size_t r = remaining_[level];
    return r > rest ? r - rest : 0;
}

std::size_t CompositionStream::upper(std::size_t level) const noexcept {
    return std::min(remaining_[level], cap_);
}

// Places the first composition of the sub-list starting at `level`.
void CompositionStream::fill_from(std::size_t level, bool forward) {
    const std::size_t last = weak_.size() - 1;
    for (std::size_t j = level; j < last; ++j) {
        weak_[j] = forward ? upper(j) : lower(j);
        forward_[j] = forward;
        if (weak_[j] & 1u) forward = !forward;
        remaining_[j + 1] = remaining_[j] - weak_[j];
    }
    weak_[last] = remaining_[last];
}

bool CompositionStream::next() {
    if (done_) return false;
    const std::size_t d = weak_.size();

    std::size_t level = d - 1;
    bool moved = false;
    while (level-- > 0) {
        const std::size_t x = weak_[level];
        if (forward_[level]) {
            if (x > lower(level)) {
                weak_[level] = x - 1;
                moved = true;
            }
        } else if (x < upper(level)) {
            weak_[level] = x + 1;
            moved = true;
        }
        if (moved) {
            remaining_[level + 1] = remaining_[level] - weak_[level];
            fill_from(level + 1, static_cast<bool>(forward_[level]) != static_cast<bool>(weak_[level] & 1u));
            break;
        }
    }
    if (!moved) {
        done_ = true;
        delta_.reset();
        return false;
    }

    previous_ = parts_;
    for (std::size_t j = 0; j < d; ++j) parts_[j] = weak_[j] + offset_;

    RowDelta delta;
    for (std::size_t j = 0; j < d; ++j) {
        if (parts_[j] + 1 == previous_[j]) delta.shrunk = j;
        if (parts_[j] == previous_[j] + 1) delta.grown = j;
    }
    delta.old_depth = previous_[delta.shrunk];
    delta.new_depth = parts_[delta.grown];
    delta.slot = slots_[delta.shrunk].back();
    slots_[delta.shrunk].pop_back();
    slots_[delta.grown].push_back(delta.slot);
    slot_block_[delta.slot] = delta.grown;
    slot_depth_[delta.slot] = delta.new_depth - 1;
    delta_ = delta;
    return true;
}

Composition CompositionStream::composition() const {
    return Composition{parts_, total_, offset_ ? Positivity::positive : Positivity::weak};
}

std::uint64_t count_compositions(std::size_t d, std::size_t q, Positivity positivity) noexcept {
    if (d == 0) return q == 0 ? 1 : 0;
    if (positivity == Positivity::positive) return q < d ? 0 : binomial(q - 1, d - 1);
    return binomial(q + d - 1, d - 1);
}

}  // namespace tvalue

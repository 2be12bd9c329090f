#include "tvalue/tvalue.hpp"

#include "tvalue/error.hpp"
#include "tvalue/raref.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

namespace tvalue {

NetDef NetDef::make(std::vector<BitMatrix> matrices) {
    validate_generators(matrices);
    NetDef net;
    net.k = matrices.front().n_rows();
    net.matrices = std::move(matrices);
    return net;
}

std::vector<BitMatrix> NetDef::select(std::span<const std::size_t> coordinates) const {
    std::vector<BitMatrix> out;
    out.reserve(coordinates.size());
    for (std::size_t j : coordinates) {
        if (j == 0 || j > s()) throw ContractViolation("coordinate " + std::to_string(j) + " out of range");
        out.push_back(matrices[j - 1]);
    }
    return out;
}

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::mgl_decreasing: return "mgl-dec";
        case Method::mgl_increasing: return "mgl-inc";
        case Method::schmid: return "schmid";
        case Method::pirsic_schmid: return "ps";
        case Method::oracle: return "oracle";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (Method m : {Method::mgl_decreasing, Method::mgl_increasing, Method::schmid,
                     Method::pirsic_schmid, Method::oracle})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

void validate_generators(Generators gens) {
    if (gens.empty()) throw InvalidNet("no generator matrices");
    const std::size_t k = gens.front().n_rows();
    if (k == 0) throw InvalidNet("generator matrices are empty");
    if (k > kMaxCols) throw SizeError("k = " + std::to_string(k) + " exceeds 64");
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const BitMatrix& c = gens[j];
        if (c.n_rows() != k || c.n_cols() != k)
            throw InvalidNet("generator matrix " + std::to_string(j + 1) + " is not " + std::to_string(k) +
                             "x" + std::to_string(k));
        if (!is_nonsingular(c)) throw InvalidNet("generator matrix " + std::to_string(j + 1) + " is singular");
    }
}

LevelScan scan_level(Generators gens, std::size_t q, Positivity positivity, OpCounter* counter) {
    const std::size_t k = gens.front().n_cols();
    CompositionStream stream(gens.size(), q, k, positivity);
    if (stream.done()) return {true, 0};

    BitMatrix stacked(q, k);
    for (std::size_t slot = 0; slot < q; ++slot)
        stacked.set_row(slot, gens[stream.slot_block(slot)].row(stream.slot_depth(slot)));

    RarefState state = RarefState::compute(stacked, counter);
    if (!state.full_rank()) return {false, state.rightmost_pivot()};

    while (stream.next()) {
        const RowDelta& delta = *stream.delta();
        state.update(delta.slot, gens[delta.grown].row(delta.new_depth - 1), counter);
        if (!state.full_rank()) return {false, state.rightmost_pivot()};
    }
    return {true, state.rightmost_pivot()};
}

std::size_t rho_mgl(Generators gens, Direction direction, std::optional<std::size_t> q_start,
                    OpCounter* counter) {
    validate_generators(gens);
    const std::size_t k = gens.front().n_rows();
    if (gens.size() == 1) return k;

    if (direction == Direction::decreasing) {
        const std::size_t top = q_start.value_or(k);
        if (top > k) throw ContractViolation("q_start exceeds k");
        for (std::size_t q = top; q > 0; --q)
            if (scan_level(gens, q, Positivity::weak, counter).full_rank) return q;
        return 0;
    }

    const std::size_t bottom = q_start.value_or(1);
    if (bottom == 0 || bottom > k + 1) throw ContractViolation("q_start out of range");
    for (std::size_t q = bottom; q <= k; ++q)
        if (!scan_level(gens, q, Positivity::weak, counter).full_rank) return q - 1;
    return k;
}

std::size_t rho_tilde(Generators gens, OpCounter* counter) {
    validate_generators(gens);
    const std::size_t k = gens.front().n_rows();
    const std::size_t d = gens.size();
    for (std::size_t q = k; q >= d && q > 0; --q)
        if (scan_level(gens, q, Positivity::positive, counter).full_rank) return q;
    return d - 1;
}

// True if some combination at level q touching every block of `gens` with
// its deepest rows given by a positive composition is zero.
bool schmid_has_zero(Generators gens, std::size_t q, OpCounter* counter) {
    const std::size_t d = gens.size();
    const std::size_t k = gens.front().n_cols();
    CompositionStream stream(d, q, k, Positivity::positive);
    if (stream.done()) return false;

    // included[b] has bit r set when row r of block b is in the accumulator.
    std::vector<Word> included(d, 0);
    std::vector<Word> optional_row;
    std::vector<std::size_t> optional_block;
    std::vector<Word> optional_bit;

    Word acc = 0;
    for (std::size_t b = 0; b < d; ++b) {
        const std::size_t deepest = stream.parts()[b] - 1;
        acc ^= gens[b].row(deepest);
        included[b] = Word{1} << deepest;
    }
    count(counter, d - 1);

    do {
        if (const auto& delta = stream.delta()) {
            const std::size_t a = delta->shrunk;
            const std::size_t old_deep = delta->old_depth - 1;
            acc ^= gens[a].row(old_deep);
            included[a] &= ~(Word{1} << old_deep);
            count(counter);
            const Word new_deep = Word{1} << (old_deep - 1);
            if (!(included[a] & new_deep)) {
                acc ^= gens[a].row(old_deep - 1);
                included[a] |= new_deep;
                count(counter);
            }
            const std::size_t g = delta->grown;
            acc ^= gens[g].row(delta->new_depth - 1);
            included[g] |= Word{1} << (delta->new_depth - 1);
            count(counter);
        }

        optional_row.clear();
        optional_block.clear();
        optional_bit.clear();
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t r = 0; r + 1 < stream.parts()[b]; ++r) {
                optional_row.push_back(gens[b].row(r));
                optional_block.push_back(b);
                optional_bit.push_back(Word{1} << r);
            }
        }

        if (acc == 0) return true;
        const std::uint64_t steps = std::uint64_t{1} << optional_row.size();
        for (std::uint64_t i = 1; i < steps; ++i) {
            const auto e = static_cast<std::size_t>(std::countr_zero(i));
            acc ^= optional_row[e];
            included[optional_block[e]] ^= optional_bit[e];
            if (acc == 0) {
                count(counter, i);
                return true;
            }
        }
        count(counter, steps - 1);
    } while (stream.next());
    return false;
}

namespace {

template <class F>
void for_each_subset(std::size_t s, std::size_t d, F&& f) {
    // Gosper's hack over s-bit masks with d bits set.
    const std::uint64_t limit = s >= 64 ? 0 : (std::uint64_t{1} << s);
    std::uint64_t mask = (d >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
    while (true) {
        f(mask);
        const std::uint64_t low = mask & (~mask + 1);
        const std::uint64_t ripple = mask + low;
        if (ripple == 0) break;
        mask = ripple | (((ripple ^ mask) >> 2) / low);
        if (limit != 0 && mask >= limit) break;
    }
}

}  // namespace

std::size_t rho_schmid(Generators gens, OpCounter* counter) {
    validate_generators(gens);
    const std::size_t k = gens.front().n_rows();
    const std::size_t s = gens.size();
    if (s == 1) return k;

    std::vector<BitMatrix> block;
    for (std::size_t q = 2; q <= k; ++q) {
        for (std::size_t d = 2; d <= std::min(s, q); ++d) {
            bool zero = false;
            for_each_subset(s, d, [&](std::uint64_t mask) {
                if (zero) return;
                block.clear();
                for (Word m = mask; m; m &= m - 1) block.push_back(gens[std::countr_zero(m)]);
                zero = schmid_has_zero(block, q, counter);
            });
            if (zero) return q - 1;
        }
    }
    return k;
}

std::size_t rho_ps(Generators gens, OpCounter* counter) {
    validate_generators(gens);
    const std::size_t k = gens.front().n_rows();
    const std::size_t s = gens.size();
    if (s == 1) return k;

    std::array<Word, kMaxCols> basis{};
    for (std::size_t q = 1; q <= k; ++q) {
        CompositionStream stream(s, q, k, Positivity::weak);
        do {
            Word have = 0;
            for (std::size_t b = 0; b < s; ++b) {
                for (std::size_t r = 0; r < stream.parts()[b]; ++r) {
                    Word v = gens[b].row(r);
                    while (v) {
                        const int c = std::countr_zero(v);
                        if (!((have >> c) & 1u)) break;
                        v ^= basis[static_cast<std::size_t>(c)];
                        count(counter);
                    }
                    if (v == 0) return q - 1;
                    const int c = std::countr_zero(v);
                    basis[static_cast<std::size_t>(c)] = v;
                    have |= Word{1} << c;
                }
            }
        } while (stream.next());
    }
    return k;
}

namespace {

// Calls f on every tuple of s non-negative parts summing to q (plain
// odometer, kept separate from the Gray-order stream).
template <class F>
void for_each_weak_composition(std::size_t s, std::size_t q, std::vector<std::size_t>& parts, std::size_t j,
                               std::size_t left, F&& f) {
    if (j + 1 == s) {
        parts[j] = left;
        f(parts);
        return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
        parts[j] = x;
        for_each_weak_composition(s, q, parts, j + 1, left - x, f);
    }
}

}  // namespace

std::size_t rho_oracle(Generators gens) {
    validate_generators(gens);
    const std::size_t k = gens.front().n_rows();
    if (k > kOracleMaxK)
        throw SizeError("oracle limited to k <= " + std::to_string(kOracleMaxK) + ", got " + std::to_string(k));
    const std::size_t s = gens.size();
    const std::size_t n = std::size_t{1} << k;

    // digits[j][i]: bit r holds output digit r+1 of coordinate j for point i.
    std::vector<std::vector<Word>> digits(s, std::vector<Word>(n, 0));
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Word y = 0;
            for (std::size_t r = 0; r < k; ++r)
                if (std::popcount(gens[j].row(r) & i) & 1) y |= Word{1} << r;
            digits[j][i] = y;
        }
    }

    std::vector<std::size_t> parts(s);
    std::vector<std::size_t> boxes;
    for (std::size_t q = 1; q <= k; ++q) {
        const std::size_t expected = std::size_t{1} << (k - q);
        bool ok = true;
        for_each_weak_composition(s, q, parts, 0, q, [&](const std::vector<std::size_t>& qs) {
            if (!ok) return;
            boxes.assign(std::size_t{1} << q, 0);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t box = 0;
                for (std::size_t j = 0; j < s; ++j) box = (box << qs[j]) | (digits[j][i] & low_mask(qs[j]));
                ++boxes[box];
            }
            ok = std::all_of(boxes.begin(), boxes.end(), [&](std::size_t c) { return c == expected; });
        });
        if (!ok) return q - 1;
    }
    return k;
}

std::size_t rho(Generators gens, Method method, OpCounter* counter) {
    switch (method) {
        case Method::mgl_decreasing: return rho_mgl(gens, Direction::decreasing, std::nullopt, counter);
        case Method::mgl_increasing: return rho_mgl(gens, Direction::increasing, std::nullopt, counter);
        case Method::schmid: return rho_schmid(gens, counter);
        case Method::pirsic_schmid: return rho_ps(gens, counter);
        case Method::oracle: return rho_oracle(gens);
    }
    throw ContractViolation("unknown method");
}

std::size_t t_value(Generators gens, Method method, OpCounter* counter) {
    const std::size_t r = rho(gens, method, counter);
    return gens.front().n_rows() - r;
}

}  // namespace tvalue

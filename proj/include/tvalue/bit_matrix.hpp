#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tvalue {

using Word = std::uint64_t;

inline constexpr std::size_t kMaxCols = 64;

// Mask with the low `n` bits set, n <= 64.
constexpr Word low_mask(std::size_t n) noexcept {
    return n >= 64 ? ~Word{0} : (Word{1} << n) - 1;
}

// Counts vector additions in GF(2)^k, i.e. row XORs. One counter is owned by
// each computation; the algorithms accept a nullable pointer to it.
struct OpCounter {
    std::uint64_t vec_adds = 0;

    void add(std::uint64_t n = 1) noexcept { vec_adds += n; }
};

inline void count(OpCounter* c, std::uint64_t n = 1) noexcept {
    if (c) c->vec_adds += n;
}

// Dense matrix over GF(2). Row r is one machine word; bit c of that word is
// the entry (r, c). Columns are limited to 64.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t n_rows, std::size_t n_cols);

    // Rows given as words; bits at or beyond n_cols must be zero.
    static BitMatrix from_rows(std::size_t n_cols, std::vector<Word> rows);
    // Rows given as strings of '0'/'1', character c being column c.
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);
    static BitMatrix identity(std::size_t n);

    std::size_t n_rows() const noexcept { return rows_.size(); }
    std::size_t n_cols() const noexcept { return n_cols_; }
    bool is_square() const noexcept { return n_rows() == n_cols_; }

    Word row(std::size_t r) const { return rows_[r]; }
    void set_row(std::size_t r, Word value);
    std::span<const Word> rows() const noexcept { return rows_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    // row[target] ^= row[source]; counts one vector addition.
    void row_add(std::size_t target, std::size_t source, OpCounter* counter = nullptr);
    void swap_rows(std::size_t a, std::size_t b);

    // First `rows` rows and `cols` columns.
    BitMatrix truncated(std::size_t rows, std::size_t cols) const;

    std::string to_string() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t n_cols_ = 0;
    std::vector<Word> rows_;
};

// Value-returning form of BitMatrix::row_add.
BitMatrix row_add(BitMatrix m, std::size_t target, std::size_t source,
                  OpCounter* counter = nullptr);

// Reference GF(2) rank by plain elimination on a copy. Never counted.
std::size_t rank(const BitMatrix& m);
std::size_t rank(std::span<const Word> rows);

bool is_nonsingular(const BitMatrix& m);

// a (r x n) times b (n x c).
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

}  // namespace tvalue

#include "tvalue/bit_matrix.hpp"

#include "tvalue/error.hpp"

#include <bit>
#include <utility>

namespace tvalue {

namespace {

void require_cols(std::size_t n_cols) {
    if (n_cols > kMaxCols)
        throw SizeError("matrix has " + std::to_string(n_cols) + " columns, at most 64 supported");
}

}  // namespace

BitMatrix::BitMatrix(std::size_t n_rows, std::size_t n_cols) : n_cols_(n_cols), rows_(n_rows, 0) {
    require_cols(n_cols);
}

BitMatrix BitMatrix::from_rows(std::size_t n_cols, std::vector<Word> rows) {
    require_cols(n_cols);
    for (Word w : rows)
        if (w & ~low_mask(n_cols))
            throw ContractViolation("row has bits beyond column count");
    BitMatrix m;
    m.n_cols_ = n_cols;
    m.rows_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::size_t width = rows.size() ? rows.begin()->size() : 0;
    BitMatrix m(rows.size(), width);
    std::size_t r = 0;
    for (auto line : rows) {
        if (line.size() != width) throw ContractViolation("ragged rows");
        for (std::size_t c = 0; c < width; ++c) {
            if (line[c] != '0' && line[c] != '1') throw ContractViolation("entry must be 0 or 1");
            m.set(r, c, line[c] == '1');
        }
        ++r;
    }
    return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i] = Word{1} << i;
    return m;
}

void BitMatrix::set_row(std::size_t r, Word value) {
    if (r >= rows_.size()) throw ContractViolation("row index out of range");
    if (value & ~low_mask(n_cols_)) throw ContractViolation("row has bits beyond column count");
    rows_[r] = value;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= n_cols_) throw ContractViolation("entry index out of range");
    return (rows_[r] >> c) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    if (r >= rows_.size() || c >= n_cols_) throw ContractViolation("entry index out of range");
    if (value)
        rows_[r] |= Word{1} << c;
    else
        rows_[r] &= ~(Word{1} << c);
}

void BitMatrix::row_add(std::size_t target, std::size_t source, OpCounter* counter) {
    if (target >= rows_.size() || source >= rows_.size())
        throw ContractViolation("row_add: index out of range");
    if (target == source) throw ContractViolation("row_add: target equals source");
    rows_[target] ^= rows_[source];
    count(counter);
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a >= rows_.size() || b >= rows_.size()) throw ContractViolation("swap_rows: index out of range");
    std::swap(rows_[a], rows_[b]);
}

BitMatrix BitMatrix::truncated(std::size_t rows, std::size_t cols) const {
    if (rows > n_rows() || cols > n_cols_) throw ContractViolation("truncation larger than matrix");
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) out.rows_[r] = rows_[r] & low_mask(cols);
    return out;
}

std::string BitMatrix::to_string() const {
    std::string s;
    s.reserve(rows_.size() * (n_cols_ + 1));
    for (Word w : rows_) {
        for (std::size_t c = 0; c < n_cols_; ++c) s.push_back(((w >> c) & 1u) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

BitMatrix row_add(BitMatrix m, std::size_t target, std::size_t source, OpCounter* counter) {
    m.row_add(target, source, counter);
    return m;
}

std::size_t rank(std::span<const Word> rows) {
    std::vector<Word> work(rows.begin(), rows.end());
    std::size_t r = 0;
    for (std::size_t col = 0; col < kMaxCols && r < work.size(); ++col) {
        const Word bit = Word{1} << col;
        std::size_t p = r;
        while (p < work.size() && !(work[p] & bit)) ++p;
        if (p == work.size()) continue;
        std::swap(work[r], work[p]);
        for (std::size_t i = r + 1; i < work.size(); ++i)
            if (work[i] & bit) work[i] ^= work[r];
        ++r;
    }
    return r;
}

std::size_t rank(const BitMatrix& m) { return rank(m.rows()); }

bool is_nonsingular(const BitMatrix& m) {
    if (!m.is_square()) throw ContractViolation("is_nonsingular: matrix is not square");
    return rank(m) == m.n_rows();
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.n_cols() != b.n_rows()) throw ContractViolation("multiply: shape mismatch");
    BitMatrix out(a.n_rows(), b.n_cols());
    for (std::size_t r = 0; r < a.n_rows(); ++r) {
        Word acc = 0;
        for (Word bits = a.row(r); bits; bits &= bits - 1) acc ^= b.row(std::countr_zero(bits));
        out.set_row(r, acc);
    }
    return out;
}

}  // namespace tvalue

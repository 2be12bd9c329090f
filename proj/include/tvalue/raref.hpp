#pragma once

#include "tvalue/bit_matrix.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace tvalue {

// Reduction in almost row echelon form of a q x k matrix C (q <= k): a
// triplet (L, T, p) with L non-singular, L * C = T, the columns of T listed
// in p being distinct canonical basis vectors, and |p| = rank(C).
//
// Pivots are kept as a column -> row map so that the pivot sitting on a
// given row can be dropped in O(1) during an update. The state also tracks
// the rightmost column (as a 1-based column count) that ever received a
// pivot since the last compute(); it becomes k + 1 as soon as some row
// fails to receive one.
class RarefState {
public:
    // Algorithm "pivot every row in order". At most 4 q^2 vector additions.
    static RarefState compute(const BitMatrix& c, OpCounter* counter = nullptr);

    // Replace row i of the source matrix by new_row and restore the
    // reduction with a single re-pivot. Requires a full-rank source.
    // At most 6 q vector additions.
    void update(std::size_t i, Word new_row, OpCounter* counter = nullptr);

    std::size_t n_rows() const noexcept { return l_.size(); }
    std::size_t n_cols() const noexcept { return n_cols_; }

    std::size_t rank() const noexcept { return n_pivots_; }
    bool full_rank() const noexcept { return n_pivots_ == l_.size(); }

    // Column holding the pivot of `row`, or -1.
    int pivot_col(std::size_t row) const { return row_pivot_.at(row); }
    // Row owning the pivot in `col`, or -1.
    int pivot_row(std::size_t col) const { return col_owner_.at(col); }
    Word pivot_mask() const noexcept { return pivot_mask_; }

    // Number of leading columns that contain every pivot placed so far, or
    // n_cols() + 1 once a row could not be pivoted.
    std::size_t rightmost_pivot() const noexcept { return rightmost_; }
    bool pivot_missed() const noexcept { return rightmost_ > n_cols_; }

    BitMatrix l() const { return BitMatrix::from_rows(l_.size(), l_); }
    BitMatrix t() const { return BitMatrix::from_rows(n_cols_, t_); }
    BitMatrix source() const { return BitMatrix::from_rows(n_cols_, source_); }

private:
    RarefState() = default;

    bool pivot_on(std::size_t i, OpCounter* counter);
    void assign_pivot(std::size_t row, int col);

    std::size_t n_cols_ = 0;
    std::vector<Word> l_;
    std::vector<Word> t_;
    std::vector<Word> source_;
    std::vector<int> row_pivot_;
    std::array<int, kMaxCols> col_owner_{};
    Word pivot_mask_ = 0;
    std::size_t n_pivots_ = 0;
    std::size_t rightmost_ = 0;
};

RarefState raref_compute(const BitMatrix& c, OpCounter* counter = nullptr);
RarefState raref_update(RarefState state, std::size_t i, Word new_row, OpCounter* counter = nullptr);

// Names of the defining properties that do not hold for `state`; empty when
// it is a valid reduction of its source matrix.
std::vector<std::string> raref_violations(const RarefState& state);

}  // namespace tvalue

#include "tvalue/raref.hpp"

#include "tvalue/error.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace tvalue {

RarefState RarefState::compute(const BitMatrix& c, OpCounter* counter) {
    const std::size_t q = c.n_rows();
    if (q > c.n_cols()) throw ContractViolation("raref_compute: more rows than columns");

    RarefState s;
    s.n_cols_ = c.n_cols();
    s.source_.assign(c.rows().begin(), c.rows().end());
    s.t_ = s.source_;
    s.l_.resize(q);
    for (std::size_t i = 0; i < q; ++i) s.l_[i] = Word{1} << i;
    s.row_pivot_.assign(q, -1);
    s.col_owner_.fill(-1);

    for (std::size_t i = 0; i < q; ++i) s.pivot_on(i, counter);
    return s;
}

void RarefState::assign_pivot(std::size_t row, int col) {
    row_pivot_[row] = col;
    if (col >= 0) col_owner_[static_cast<std::size_t>(col)] = static_cast<int>(row);
}

// Clears the pivot columns of row i, then pivots on its first nonzero entry
// and clears that column everywhere else. Returns false if the row is zero.
bool RarefState::pivot_on(std::size_t i, OpCounter* counter) {
    const std::size_t q = l_.size();

    // Pivot columns are canonical, so each elimination only flips its own bit.
    for (Word hits = t_[i] & pivot_mask_; hits; hits &= hits - 1) {
        const auto owner = static_cast<std::size_t>(col_owner_[std::countr_zero(hits)]);
        t_[i] ^= t_[owner];
        l_[i] ^= l_[owner];
        count(counter, 2);
    }

    if (t_[i] == 0) {
        row_pivot_[i] = -1;
        rightmost_ = n_cols_ + 1;
        return false;
    }

    const int j = std::countr_zero(t_[i]);
    const Word bit = Word{1} << j;
    assign_pivot(i, j);
    pivot_mask_ |= bit;
    ++n_pivots_;
    rightmost_ = std::max(rightmost_, static_cast<std::size_t>(j) + 1);

    for (std::size_t r = 0; r < q; ++r) {
        if (r != i && (t_[r] & bit)) {
            t_[r] ^= t_[i];
            l_[r] ^= l_[i];
            count(counter, 2);
        }
    }
    return true;
}

void RarefState::update(std::size_t i, Word new_row, OpCounter* counter) {
    const std::size_t q = l_.size();
    if (i >= q) throw ContractViolation("raref_update: row index out of range");
    if (new_row & ~low_mask(n_cols_)) throw ContractViolation("raref_update: row wider than matrix");
    if (!full_rank()) throw ContractViolation("raref_update: source matrix is rank deficient");

    // Step 1: bring a row with a nonzero entry in column i of L to position i.
    const Word col_i = Word{1} << i;
    std::size_t j = 0;
    while (!(l_[j] & col_i)) ++j;  // exists since L is non-singular
    if (j != i) {
        std::swap(l_[i], l_[j]);
        std::swap(t_[i], t_[j]);
        const int pi = row_pivot_[i];
        const int pj = row_pivot_[j];
        assign_pivot(i, pj);
        assign_pivot(j, pi);
    }

    // Step 2: clear column i of L outside row i.
    for (std::size_t r = 0; r < q; ++r) {
        if (r != i && (l_[r] & col_i)) {
            l_[r] ^= l_[i];
            t_[r] ^= t_[i];
            count(counter, 2);
        }
    }

    // Step 3: drop row i's pivot and isolate it; T row i becomes the new row.
    const int old = row_pivot_[i];
    if (old >= 0) {
        col_owner_[static_cast<std::size_t>(old)] = -1;
        pivot_mask_ &= ~(Word{1} << old);
        --n_pivots_;
        row_pivot_[i] = -1;
    }
    l_[i] = col_i;
    t_[i] = new_row;
    source_[i] = new_row;

    // Step 4.
    pivot_on(i, counter);
}

RarefState raref_compute(const BitMatrix& c, OpCounter* counter) { return RarefState::compute(c, counter); }

RarefState raref_update(RarefState state, std::size_t i, Word new_row, OpCounter* counter) {
    state.update(i, new_row, counter);
    return state;
}

std::vector<std::string> raref_violations(const RarefState& state) {
    std::vector<std::string> bad;
    const BitMatrix l = state.l();
    const BitMatrix t = state.t();
    const BitMatrix c = state.source();
    const std::size_t q = state.n_rows();

    if (!is_nonsingular(l)) bad.emplace_back("L non-singular");
    if (multiply(l, c) != t) bad.emplace_back("L*C = T");

    std::size_t listed = 0;
    std::vector<int> seen_rows(q, 0);
    bool canonical = true;
    bool one_per_row = true;
    for (std::size_t col = 0; col < state.n_cols(); ++col) {
        const int owner = state.pivot_row(col);
        const bool in_mask = (state.pivot_mask() >> col) & 1u;
        if ((owner >= 0) != in_mask) canonical = false;
        if (owner < 0) continue;
        ++listed;
        for (std::size_t r = 0; r < q; ++r) {
            const bool expect = r == static_cast<std::size_t>(owner);
            if (t.get(r, col) != expect) canonical = false;
        }
        if (state.pivot_col(static_cast<std::size_t>(owner)) != static_cast<int>(col)) one_per_row = false;
        if (++seen_rows[static_cast<std::size_t>(owner)] > 1) one_per_row = false;
    }
    if (!canonical) bad.emplace_back("pivot columns canonical");
    if (!one_per_row) bad.emplace_back("one pivot per row");
    if (listed != state.rank() || listed != rank(t) || listed != rank(c)) bad.emplace_back("|p| = rank");
    return bad;
}

}  // namespace tvalue

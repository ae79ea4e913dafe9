#pragma once

#include "wbu/rational.hpp"

#include <vector>

namespace wbu {

// Linear subspace of Q^n given by the row space of its constraint matrix,
// kept in reduced row echelon form so that equality is plain comparison.
class Subspace {
  public:
    Subspace() = default;
    Subspace(int ambient, std::vector<std::vector<Rat>> constraints) : n_(ambient), rows_(std::move(constraints)) {
        reduce();
    }

    static Subspace full(int ambient) { return Subspace(ambient, {}); }

    int ambient() const { return n_; }
    int codim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<Rat>>& constraints() const { return rows_; }

    // set containment: this subset of other <=> other's constraints lie in our row space
    bool subset_of(const Subspace& o) const {
        for (const auto& r : o.rows_)
            if (!reduces_to_zero(r)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
    friend bool operator<(const Subspace& a, const Subspace& b) { return a.rows_ < b.rows_; }

    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        std::vector<std::vector<Rat>> rows = a.rows_;
        rows.insert(rows.end(), b.rows_.begin(), b.rows_.end());
        return Subspace(a.n_, std::move(rows));
    }

  private:
    bool reduces_to_zero(std::vector<Rat> v) const {
        for (const auto& row : rows_) {
            int p = pivot(row);
            if (p >= 0 && v[static_cast<size_t>(p)] != 0) {
                Rat f = v[static_cast<size_t>(p)];
                for (size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
            }
        }
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    static int pivot(const std::vector<Rat>& row) {
        for (size_t k = 0; k < row.size(); ++k)
            if (row[k] != 0) return static_cast<int>(k);
        return -1;
    }

    void reduce() {
        size_t r = 0;
        for (size_t col = 0; col < static_cast<size_t>(n_) && r < rows_.size(); ++col) {
            size_t sel = rows_.size();
            for (size_t i = r; i < rows_.size(); ++i)
                if (rows_[i][col] != 0) {
                    sel = i;
                    break;
                }
            if (sel == rows_.size()) continue;
            std::swap(rows_[r], rows_[sel]);
            Rat inv = Rat(1) / rows_[r][col];
            for (auto& x : rows_[r]) x *= inv;
            for (size_t i = 0; i < rows_.size(); ++i) {
                if (i == r || rows_[i][col] == 0) continue;
                Rat f = rows_[i][col];
                for (size_t k = 0; k < rows_[i].size(); ++k) rows_[i][k] -= f * rows_[r][k];
            }
            ++r;
        }
        // drop zero rows
        std::vector<std::vector<Rat>> keep;
        keep.reserve(rows_.size());
        for (auto& row : rows_)
            if (pivot(row) >= 0) keep.push_back(std::move(row));
        rows_ = std::move(keep);
    }

    int n_ = 0;
    std::vector<std::vector<Rat>> rows_;
};

}  // namespace wbu

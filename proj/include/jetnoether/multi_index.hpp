#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace jetnoether {

/// Derivative multi-index J = (j_1, ..., j_p), one non-negative count per variable.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e_(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : e_(init) {}

    static MultiIndex unit(std::size_t n, std::size_t i) {
        MultiIndex j(n);
        j.e_[i] = 1;
        return j;
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }

    /// |J| = total derivative order.
    int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_zero() const { return order() == 0; }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    MultiIndex plus_unit(std::size_t i) const {
        MultiIndex r = *this;
        ++r.e_[i];
        return r;
    }

    /// Componentwise >=: J contains K iff u_J is a derivative of u_K.
    bool contains(const MultiIndex& o) const {
        if (e_.size() != o.e_.size()) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] < o.e_[i]) return false;
        return true;
    }
    MultiIndex minus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    /// Graded lexicographic: first |J|, then entries left to right.
    static int graded_lex_cmp(const MultiIndex& a, const MultiIndex& b) {
        int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob ? -1 : 1;
        if (a.e_.size() != b.e_.size()) return a.e_.size() < b.e_.size() ? -1 : 1;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
        return 0;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }
    bool operator<(const MultiIndex& o) const { return graded_lex_cmp(*this, o) < 0; }

private:
    std::vector<int> e_;
};

} // namespace jetnoether

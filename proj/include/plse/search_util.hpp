#ifndef PLSE_SEARCH_UTIL_HPP
#define PLSE_SEARCH_UTIL_HPP

#include <cstdint>
#include <vector>

#include "plse/coloring.hpp"

namespace plse {

// Dense int set with O(1) insert/erase/contains, iterable over elems().
class IndexSet {
public:
    void reset(int universe) {
        pos_.assign(static_cast<std::size_t>(universe), -1);
        elems_.clear();
    }

    void clear() {
        for (std::int32_t e : elems_) pos_[static_cast<std::size_t>(e)] = -1;
        elems_.clear();
    }

    bool contains(std::int32_t x) const { return pos_[static_cast<std::size_t>(x)] >= 0; }

    void insert(std::int32_t x) {
        if (contains(x)) return;
        pos_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(elems_.size());
        elems_.push_back(x);
    }

    void erase(std::int32_t x) {
        const std::int32_t p = pos_[static_cast<std::size_t>(x)];
        if (p < 0) return;
        const std::int32_t last = elems_.back();
        elems_[static_cast<std::size_t>(p)] = last;
        pos_[static_cast<std::size_t>(last)] = p;
        elems_.pop_back();
        pos_[static_cast<std::size_t>(x)] = -1;
    }

    int size() const { return static_cast<int>(elems_.size()); }
    bool empty() const { return elems_.empty(); }
    const std::vector<std::int32_t>& elems() const { return elems_; }

private:
    std::vector<std::int32_t> pos_;
    std::vector<std::int32_t> elems_;
};

// (vertex, color) tabu table keyed on a monotone iteration clock. Clearing at
// a phase boundary is done by advancing the clock past every possible expiry,
// which avoids touching the table.
class TabuList {
public:
    void reset(int vertices, int width) {
        width_ = width;
        until_.assign(static_cast<std::size_t>(vertices) * width, 0);
        iter_ = 1;
    }

    std::uint64_t iteration() const { return iter_; }
    void tick() { ++iter_; }

    // Invalidate all outstanding entries. max_tenure bounds any tenure that
    // could have been recorded since the last skip.
    void skip_past(std::uint64_t max_tenure) { iter_ += max_tenure + 1; }

    bool is_tabu(VertexId v, Color k) const {
        return until_[static_cast<std::size_t>(v) * width_ + k] > iter_;
    }

    void forbid(VertexId v, Color k, std::uint64_t tenure) {
        until_[static_cast<std::size_t>(v) * width_ + k] = iter_ + tenure;
    }

private:
    int width_ = 0;
    std::vector<std::uint64_t> until_;
    std::uint64_t iter_ = 1;
};

}  // namespace plse

#endif  // PLSE_SEARCH_UTIL_HPP

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dpds {

// Set of predicate indices in [0, size). Predicates are the unit of a query
// answer, so these sets show up everywhere: reported sets, truth sets,
// uncertain-region partitions.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static IndexSet full(std::size_t size) {
        IndexSet s(size);
        for (std::size_t i = 0; i < size; ++i) s.insert(i);
        return s;
    }

    std::size_t universe_size() const { return size_; }

    void insert(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    IndexSet operator&(const IndexSet& o) const { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    IndexSet operator|(const IndexSet& o) const { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
    // set difference: elements in *this and not in o
    IndexSet operator-(const IndexSet& o) const { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

    IndexSet& operator&=(const IndexSet& o) { *this = *this & o; return *this; }
    IndexSet& operator|=(const IndexSet& o) { *this = *this | o; return *this; }
    IndexSet& operator-=(const IndexSet& o) { *this = *this - o; return *this; }

    bool operator==(const IndexSet& o) const { return size_ == o.size_ && words_ == o.words_; }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < size_; ++i)
            if (contains(i)) v.push_back(i);
        return v;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < size_; ++i)
            if (contains(i)) fn(i);
    }

private:
    template <typename Op>
    IndexSet apply(const IndexSet& o, Op op) const {
        IndexSet r(size_);
        for (std::size_t w = 0; w < words_.size(); ++w)
            r.words_[w] = op(words_[w], w < o.words_.size() ? o.words_[w] : 0);
        return r;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace dpds

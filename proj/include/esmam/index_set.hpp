#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace esmam {

/// Fixed-universe bitset over record indices. All set operations keep the
/// universe size; bits past the universe are always zero.
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

    static IndexSet full(std::size_t universe) {
        IndexSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe_size() const { return size_; }

    void insert(std::size_t i) {
        check(i);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void erase(std::size_t i) {
        check(i);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool contains(std::size_t i) const {
        if (i >= size_) return false;
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    IndexSet& operator&=(const IndexSet& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    IndexSet& operator|=(const IndexSet& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }

    IndexSet complement() const {
        IndexSet r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    std::size_t intersection_count(const IndexSet& o) const {
        require_same(o);
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return n;
    }

    bool intersects(const IndexSet& o) const {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// True iff every element of *this is in o.
    bool is_subset_of(const IndexSet& o) const {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool operator==(const IndexSet& o) const = default;

    /// Visits members in ascending index order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                f(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> v;
        v.reserve(count());
        for_each([&](std::size_t i) { v.push_back(i); });
        return v;
    }

private:
    void check(std::size_t i) const {
        if (i >= size_) throw std::out_of_range("IndexSet: index out of universe");
    }
    void require_same(const IndexSet& o) const {
        if (size_ != o.size_) throw std::invalid_argument("IndexSet: universe size mismatch");
    }
    void trim() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace esmam

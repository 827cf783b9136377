#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace hcm {

/// A subset of the vertex ids {0, ..., universe-1}, stored as a multi-word
/// bitmask. The cardinality is cached and kept equal to the popcount.
class VertexSet {
public:
    using Word = std::uint64_t;
    static constexpr int kWordBits = 64;

    class Iterator {
    public:
        using value_type = int;
        using difference_type = std::ptrdiff_t;

        Iterator() = default;
        Iterator(const VertexSet* set, int pos) : set_(set), pos_(pos) {}

        auto operator*() const -> int { return pos_; }
        auto operator++() -> Iterator&
        {
            pos_ = set_->next(pos_);
            return *this;
        }
        auto operator++(int) -> Iterator
        {
            auto copy = *this;
            ++*this;
            return copy;
        }
        auto operator==(const Iterator& other) const -> bool { return pos_ == other.pos_; }

    private:
        const VertexSet* set_ = nullptr;
        int pos_ = -1;
    };

    VertexSet() = default;
    explicit VertexSet(int universe)
        : universe_(universe), words_(static_cast<std::size_t>((universe + kWordBits - 1) / kWordBits), 0)
    {
        assert(universe >= 0);
    }

    VertexSet(int universe, std::initializer_list<int> members) : VertexSet(universe)
    {
        for (int v : members)
            insert(v);
    }

    static auto full(int universe) -> VertexSet
    {
        VertexSet s(universe);
        for (auto& w : s.words_)
            w = ~Word{0};
        s.trim();
        s.count_ = universe;
        return s;
    }

    static auto from_mask(int universe, Word mask) -> VertexSet
    {
        VertexSet s(universe);
        if (!s.words_.empty()) {
            s.words_[0] = mask;
            s.trim();
            s.recount();
        }
        return s;
    }

    static auto from_list(int universe, std::span<const int> members) -> VertexSet
    {
        VertexSet s(universe);
        for (int v : members)
            s.insert(v);
        return s;
    }

    auto universe() const noexcept -> int { return universe_; }
    auto size() const noexcept -> int { return count_; }
    auto empty() const noexcept -> bool { return count_ == 0; }

    auto contains(int v) const -> bool
    {
        assert(v >= 0 && v < universe_);
        return (words_[word_of(v)] >> bit_of(v)) & 1U;
    }

    void insert(int v)
    {
        assert(v >= 0 && v < universe_);
        auto& w = words_[word_of(v)];
        const Word bit = Word{1} << bit_of(v);
        count_ += (w & bit) ? 0 : 1;
        w |= bit;
    }

    void erase(int v)
    {
        assert(v >= 0 && v < universe_);
        auto& w = words_[word_of(v)];
        const Word bit = Word{1} << bit_of(v);
        count_ -= (w & bit) ? 1 : 0;
        w &= ~bit;
    }

    void clear()
    {
        for (auto& w : words_)
            w = 0;
        count_ = 0;
    }

    auto operator|=(const VertexSet& o) -> VertexSet&
    {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        recount();
        return *this;
    }

    auto operator&=(const VertexSet& o) -> VertexSet&
    {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        recount();
        return *this;
    }

    /// Set difference.
    auto operator-=(const VertexSet& o) -> VertexSet&
    {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        recount();
        return *this;
    }

    friend auto operator|(VertexSet a, const VertexSet& b) -> VertexSet { return a |= b; }
    friend auto operator&(VertexSet a, const VertexSet& b) -> VertexSet { return a &= b; }
    friend auto operator-(VertexSet a, const VertexSet& b) -> VertexSet { return a -= b; }

    auto complement() const -> VertexSet { return full(universe_) - *this; }

    auto intersection_size(const VertexSet& o) const -> int
    {
        assert(universe_ == o.universe_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    auto difference_size(const VertexSet& o) const -> int
    {
        assert(universe_ == o.universe_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & ~o.words_[i]);
        return c;
    }

    auto is_subset_of(const VertexSet& o) const -> bool
    {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i])
                return false;
        return true;
    }

    auto intersects(const VertexSet& o) const -> bool
    {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }

    /// Smallest member, or -1.
    auto first() const -> int { return next(-1); }

    /// Smallest member strictly greater than v, or -1.
    auto next(int v) const -> int
    {
        int pos = v + 1;
        if (pos >= universe_)
            return -1;
        std::size_t wi = word_of(pos);
        Word w = words_[wi] & (~Word{0} << bit_of(pos));
        while (true) {
            if (w != 0)
                return static_cast<int>(wi) * kWordBits + std::countr_zero(w);
            if (++wi == words_.size())
                return -1;
            w = words_[wi];
        }
    }

    auto begin() const -> Iterator { return {this, first()}; }
    auto end() const -> Iterator { return {this, -1}; }

    auto to_vector() const -> std::vector<int>
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count_));
        for (int v : *this)
            out.push_back(v);
        return out;
    }

    auto words() const noexcept -> std::span<const Word> { return words_; }

    /// The first 64 members as a mask; only meaningful when universe <= 64.
    auto low_word() const -> Word { return words_.empty() ? 0 : words_[0]; }

    auto hash() const noexcept -> std::size_t
    {
        std::size_t h = std::hash<int>{}(universe_);
        for (Word w : words_)
            h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend auto operator==(const VertexSet& a, const VertexSet& b) -> bool
    {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    /// Canonical order: by cardinality, then by the sorted member lists.
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) -> std::strong_ordering
    {
        if (auto c = a.universe_ <=> b.universe_; c != 0)
            return c;
        if (auto c = a.count_ <=> b.count_; c != 0)
            return c;
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end(); ++ia, ++ib)
            if (auto c = *ia <=> *ib; c != 0)
                return c;
        return std::strong_ordering::equal;
    }

private:
    static auto word_of(int v) -> std::size_t { return static_cast<std::size_t>(v) / kWordBits; }
    static auto bit_of(int v) -> int { return v % kWordBits; }

    void trim()
    {
        const int rem = universe_ % kWordBits;
        if (rem != 0 && !words_.empty())
            words_.back() &= (Word{1} << rem) - 1;
    }

    void recount()
    {
        count_ = 0;
        for (Word w : words_)
            count_ += std::popcount(w);
    }

    int universe_ = 0;
    int count_ = 0;
    std::vector<Word> words_;
};

struct VertexSetHash {
    auto operator()(const VertexSet& s) const noexcept -> std::size_t { return s.hash(); }
};

} // namespace hcm

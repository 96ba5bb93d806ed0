#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace svis {

// Fixed-width set of indices [0, size). Relation rows and block masks are
// stored this way; set algebra is word-wise over 64-bit words.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t size, bool all_set = false)
        : size_(size), words_(word_count(size), all_set ? ~std::uint64_t{0} : 0) {
        clear_tail();
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    std::size_t intersection_count(const Bitset& other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) {
        a &= b;
        return a;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) {
        a |= b;
        return a;
    }

    bool operator==(const Bitset&) const = default;

    // Visits set bits in ascending order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ size_);
    }

private:
    static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

    void clear_tail() {
        if (const auto rem = size_ & 63; rem != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace svis

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rainbow {

using VertexId = std::uint32_t;

/// Set of vertices stored as a bitmask.
///
/// Two machine words are held inline (vertex ids below 128); larger ids
/// spill into heap storage behind the same interface. The word vector is
/// kept normalized (no trailing zero words) so equality is word equality.
class VertexSet {
public:
    static constexpr std::size_t kInlineWords = 2;
    static constexpr std::size_t kInlineCapacity = 64 * kInlineWords;

    VertexSet() = default;
    VertexSet(std::initializer_list<VertexId> vs);
    explicit VertexSet(std::span<const VertexId> vs);

    static VertexSet from_words(std::span<const std::uint64_t> words);

    void insert(VertexId v);
    void erase(VertexId v);
    [[nodiscard]] bool contains(VertexId v) const noexcept;

    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] bool empty() const noexcept { return words_.empty(); }

    [[nodiscard]] bool intersects(const VertexSet& other) const noexcept;
    [[nodiscard]] bool is_subset_of(const VertexSet& other) const noexcept;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    [[nodiscard]] VertexSet operator&(const VertexSet& other) const;

    /// Smallest member; undefined on an empty set.
    [[nodiscard]] VertexId min() const noexcept;
    /// One past the largest member (0 when empty).
    [[nodiscard]] VertexId bound() const noexcept;

    [[nodiscard]] std::vector<VertexId> to_vector() const;
    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return {words_.data(), words_.size()}; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<VertexId>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    /// Lexicographic order of the ascending member lists.
    friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b);

    [[nodiscard]] std::string to_string() const;

private:
    void normalize();

    boost::container::small_vector<std::uint64_t, kInlineWords> words_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const noexcept;
};

} // namespace rainbow

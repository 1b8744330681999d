#include "rainbow/vertex_set.hpp"

#include <algorithm>
#include <functional>

namespace rainbow {

VertexSet::VertexSet(std::initializer_list<VertexId> vs) {
    for (VertexId v : vs) insert(v);
}

VertexSet::VertexSet(std::span<const VertexId> vs) {
    for (VertexId v : vs) insert(v);
}

VertexSet VertexSet::from_words(std::span<const std::uint64_t> words) {
    VertexSet s;
    s.words_.assign(words.begin(), words.end());
    s.normalize();
    return s;
}

void VertexSet::normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void VertexSet::insert(VertexId v) {
    const std::size_t w = v / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(VertexId v) {
    const std::size_t w = v / 64;
    if (w >= words_.size()) return;
    words_[w] &= ~(std::uint64_t{1} << (v % 64));
    normalize();
}

bool VertexSet::contains(VertexId v) const noexcept {
    const std::size_t w = v / 64;
    return w < words_.size() && ((words_[w] >> (v % 64)) & 1U);
}

std::size_t VertexSet::size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
    if (words_.size() > other.words_.size()) return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
    normalize();
    return *this;
}

VertexSet VertexSet::operator&(const VertexSet& other) const {
    VertexSet out;
    const std::size_t n = std::min(words_.size(), other.words_.size());
    out.words_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.words_[i] = words_[i] & other.words_[i];
    out.normalize();
    return out;
}

VertexId VertexSet::min() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return static_cast<VertexId>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    return 0;
}

VertexId VertexSet::bound() const noexcept {
    if (words_.empty()) return 0;
    const std::size_t w = words_.size() - 1;
    return static_cast<VertexId>(w * 64 + 64 - static_cast<std::size_t>(std::countl_zero(words_[w])));
}

std::vector<VertexId> VertexSet::to_vector() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    const auto va = a.to_vector();
    const auto vb = b.to_vector();
    return std::lexicographical_compare_three_way(va.begin(), va.end(), vb.begin(), vb.end());
}

std::string VertexSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](VertexId v) {
        if (!first) s += ',';
        s += std::to_string(v);
        first = false;
    });
    return s + "}";
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : s.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

} // namespace rainbow

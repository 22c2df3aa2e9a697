#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "chebsub/errors.hpp"

namespace chebsub {

/// Frequency multi-index k in N_0^d.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {}
    MultiIndex(std::initializer_list<std::uint32_t> entries) : entries_(entries) {}

    [[nodiscard]] std::size_t dim() const noexcept { return entries_.size(); }
    [[nodiscard]] std::uint32_t operator[](std::size_t l) const { return entries_[l]; }
    [[nodiscard]] const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::uint32_t max_entry() const noexcept {
        return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
    }

    /// prod_l max{1, k_l}; saturates instead of overflowing.
    [[nodiscard]] std::uint64_t cross_weight() const noexcept {
        std::uint64_t w = 1;
        for (auto k : entries_) {
            std::uint64_t f = std::max<std::uint64_t>(1, k);
            if (w > UINT64_MAX / f) return UINT64_MAX;
            w *= f;
        }
        return w;
    }

    /// Serialized as k1|k2|...|kd (design-matrix CSV header cells).
    [[nodiscard]] std::string to_string(char sep = '|') const {
        std::string s;
        for (std::size_t l = 0; l < entries_.size(); ++l) {
            if (l) s += sep;
            s += std::to_string(entries_[l]);
        }
        return s;
    }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<std::uint32_t> entries_;
};

/// Hyperbolic cross Lambda_{d,R} = {k in N_0^d : prod max{1,k_l} <= R},
/// stored in lexicographic order.
class MultiIndexSet {
public:
    MultiIndexSet(std::size_t dim, std::uint64_t radius, std::vector<MultiIndex> indices)
        : dim_(dim), radius_(radius), indices_(std::move(indices)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::uint64_t radius() const noexcept { return radius_; }
    [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
    [[nodiscard]] const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    [[nodiscard]] const MultiIndex& operator[](std::size_t j) const { return indices_[j]; }
    [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
    [[nodiscard]] auto end() const noexcept { return indices_.end(); }

    [[nodiscard]] bool contains(const MultiIndex& k) const {
        return std::binary_search(indices_.begin(), indices_.end(), k);
    }

    [[nodiscard]] std::uint32_t max_entry() const noexcept {
        std::uint32_t mx = 0;
        for (const auto& k : indices_) mx = std::max(mx, k.max_entry());
        return mx;
    }

private:
    std::size_t dim_;
    std::uint64_t radius_;
    std::vector<MultiIndex> indices_;
};

namespace detail {

// Coordinate `l` ranges over 0..budget with max{1,k} <= budget; the remaining
// coordinates get budget / max{1,k}. Integer floor division keeps the product
// test exact.
inline void descend_cross(std::size_t l, std::uint64_t budget, std::vector<std::uint32_t>& prefix,
                          std::vector<MultiIndex>& out) {
    if (l == prefix.size()) {
        out.emplace_back(prefix);
        return;
    }
    for (std::uint64_t k = 0; std::max<std::uint64_t>(1, k) <= budget; ++k) {
        prefix[l] = static_cast<std::uint32_t>(k);
        descend_cross(l + 1, budget / std::max<std::uint64_t>(1, k), prefix, out);
    }
}

}  // namespace detail

inline MultiIndexSet enumerate_hyperbolic_cross(std::size_t dim, std::uint64_t radius) {
    if (dim == 0) throw DomainError("hyperbolic cross: dimension must be >= 1");
    if (radius == 0) throw DomainError("hyperbolic cross: radius must be >= 1");
    if (radius > UINT32_MAX) throw DomainError("hyperbolic cross: radius too large");
    std::vector<MultiIndex> out;
    std::vector<std::uint32_t> prefix(dim, 0);
    detail::descend_cross(0, radius, prefix, out);
    return {dim, radius, std::move(out)};
}

}  // namespace chebsub

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "revconf/structures.hpp"

namespace revconf::detail {

// Backtracking search for a bijection {0..n-1} -> {0..n-1} drawn from
// per-position candidate lists (already pruned by whatever invariants the
// caller has), accepted by a full check at the leaves.
struct bijection_search {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> candidates;
    std::function<bool(const event_bijection&)> leaf;

    std::optional<event_bijection> run() const {
        event_bijection image(n, 0);
        std::vector<bool> used(n, false);
        if (step(0, image, used)) return image;
        return std::nullopt;
    }

private:
    bool step(std::size_t level, event_bijection& image, std::vector<bool>& used) const {
        if (level == n) return leaf(image);
        for (std::size_t f : candidates[level]) {
            if (used[f]) continue;
            used[f] = true;
            image[level] = f;
            if (step(level + 1, image, used)) return true;
            used[f] = false;
        }
        return false;
    }
};

}  // namespace revconf::detail

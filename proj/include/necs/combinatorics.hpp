#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace necs {

/// All compositions of `total` into `parts` positive parts, in
/// colexicographic order (compared from the last part backwards).
inline std::vector<std::vector<int>> compositions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    if (parts <= 0 || total < parts) return out;
    std::vector<int> cur(parts);
    // Fill from the last part: the last part is the most significant key,
    // so iterating it in increasing order (and recursing leftwards) gives
    // colex order directly.
    auto rec = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == 0) {
            cur[0] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= remaining - idx; ++v) {
            cur[idx] = v;
            self(self, idx - 1, remaining - v);
        }
    };
    rec(rec, parts - 1, total);
    return out;
}

} // namespace necs

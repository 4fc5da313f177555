// Echelon basis of the Z-span of a list of integer vectors.
#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

namespace g4::detail {

inline std::vector<std::vector<long long>> integer_span(std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return rows;
    std::size_t cols = rows[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                long long f = rows[i][c] / rows[r][c];
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                if (rows[r][c] < 0)
                    for (auto& e : rows[r]) e = -e;
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace g4::detail

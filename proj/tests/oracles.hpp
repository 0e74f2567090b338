// Test-side reference implementations, independent of the library code paths
// they check. Everything here works on plain unsigned ints with % arithmetic.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracles {

using Row = std::vector<uint32_t>;
using RowMatrix = std::vector<Row>;

// message (1 x k) times generator (k x n), plain modular arithmetic
inline Row encode_ref(const RowMatrix& g, const Row& message, uint32_t p) {
    size_t k = g.size();
    size_t n = g.front().size();
    Row out(n, 0);
    for (size_t c = 0; c < n; ++c) {
        uint64_t acc = 0;
        for (size_t r = 0; r < k; ++r) acc += uint64_t(message[r]) * g[r][c];
        out[c] = static_cast<uint32_t>(acc % p);
    }
    return out;
}

// Enumerates all p^k messages and returns the unique one whose codeword
// matches `symbols` at the 1-based `positions`; nullopt if none or many.
inline std::optional<Row> brute_force_decode(const RowMatrix& g, const std::vector<size_t>& positions,
                                             const Row& symbols, uint32_t p) {
    size_t k = g.size();
    std::optional<Row> found;
    Row message(k, 0);
    for (;;) {
        Row code = encode_ref(g, message, p);
        bool match = true;
        for (size_t i = 0; i < positions.size(); ++i) {
            if (code[positions[i] - 1] != symbols[i]) {
                match = false;
                break;
            }
        }
        if (match) {
            if (found) return std::nullopt;  // not unique
            found = message;
        }
        size_t d = 0;
        while (d < k && ++message[d] == p) message[d++] = 0;
        if (d == k) break;
    }
    return found;
}

// Determinant by cofactor expansion mod p; independent of Gaussian elimination.
inline uint32_t det_ref(const RowMatrix& m, uint32_t p) {
    size_t n = m.size();
    if (n == 1) return m[0][0] % p;
    uint64_t acc = 0;
    for (size_t c = 0; c < n; ++c) {
        RowMatrix minor;
        for (size_t r = 1; r < n; ++r) {
            Row row;
            for (size_t cc = 0; cc < n; ++cc) {
                if (cc != c) row.push_back(m[r][cc]);
            }
            minor.push_back(std::move(row));
        }
        uint64_t term = uint64_t(m[0][c] % p) * det_ref(minor, p) % p;
        acc = (c % 2 == 0) ? (acc + term) % p : (acc + p - term) % p;
    }
    return static_cast<uint32_t>(acc % p);
}

}  // namespace oracles

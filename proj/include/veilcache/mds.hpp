#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "veilcache/galois.hpp"

#include <json.hpp>

namespace veilcache {

// Systematic generator of an (n, k) MDS code over GF(p): the left k x k block
// is the identity, and every k x k column submatrix is invertible. The MDS
// property is certified by verify_mds, not assumed from the entries.
class GeneratorMatrix {
public:
    // Explicit entries, validated for systematic form only.
    explicit GeneratorMatrix(Matrix entries);

    // Reed-Solomon evaluation at n distinct points, row-reduced to systematic
    // form. Needs field size >= n; callers with smaller fields must supply a
    // known-good matrix instead.
    static GeneratorMatrix reed_solomon(size_t code_length, size_t message_length,
                                        const Field& field);

    size_t message_length() const { return entries_.rows(); }  // k
    size_t code_length() const { return entries_.cols(); }     // n
    Field field() const { return entries_.field(); }
    const Matrix& entries() const { return entries_; }

    // codeword = message * G; the first k symbols equal the message.
    std::vector<FieldElement> encode(std::span<const FieldElement> message) const;

    // Recover the message from symbols observed at k distinct 1-based
    // positions. Throws SingularMatrixError if the column submatrix is
    // singular, which cannot happen for a verified MDS generator.
    std::vector<FieldElement> decode_from_any_k(std::span<const size_t> positions,
                                                std::span<const FieldElement> symbols) const;

    nlohmann::json to_json() const;
    static GeneratorMatrix from_json(const nlohmann::json& doc);

    friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
        return a.entries_ == b.entries_;
    }

private:
    Matrix entries_;
};

struct MdsCheck {
    bool ok = false;
    std::vector<size_t> failing_columns;  // 1-based witness, empty when ok

    explicit operator bool() const { return ok; }
};

// Exhaustively inverts all C(n, k) column submatrices.
MdsCheck verify_mds(const GeneratorMatrix& g);

}  // namespace veilcache

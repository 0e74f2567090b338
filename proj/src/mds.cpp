#include "veilcache/mds.hpp"

#include <algorithm>
#include <set>

namespace veilcache {

GeneratorMatrix::GeneratorMatrix(Matrix entries) : entries_(std::move(entries)) {
    size_t k = entries_.rows();
    size_t n = entries_.cols();
    if (k < 1 || k > n) {
        throw std::invalid_argument("generator must be k x n with 1 <= k <= n");
    }
    for (size_t r = 0; r < k; ++r) {
        for (size_t c = 0; c < k; ++c) {
            uint32_t want = (r == c) ? 1u : 0u;
            if (entries_.at(r, c).value() != want) {
                throw std::invalid_argument("generator is not in systematic form");
            }
        }
    }
}

GeneratorMatrix GeneratorMatrix::reed_solomon(size_t code_length, size_t message_length,
                                              const Field& field) {
    size_t n = code_length;
    size_t k = message_length;
    if (k < 1 || k > n) {
        throw std::invalid_argument("reed_solomon needs 1 <= k <= n");
    }
    if (k == n) {
        return GeneratorMatrix(Matrix::identity(n, field));
    }
    if (field.modulus() < n) {
        throw std::invalid_argument("field GF(" + std::to_string(field.modulus()) +
                                    ") too small for code length " + std::to_string(n) +
                                    "; supply an explicit generator");
    }
    // Vandermonde rows x^0..x^(k-1) at points 0..n-1; any k columns are a
    // Vandermonde block on distinct points, hence invertible. Row reduction by
    // the leading k x k block preserves that and yields systematic form.
    Matrix vand(k, n, field);
    for (size_t c = 0; c < n; ++c) {
        FieldElement x = field.element(c);
        FieldElement pw = field.one();
        for (size_t r = 0; r < k; ++r) {
            vand.at(r, c) = pw;
            pw = pw * x;
        }
    }
    std::vector<size_t> lead(k);
    for (size_t i = 0; i < k; ++i) lead[i] = i;
    Matrix a = vand.select_columns(lead);
    return GeneratorMatrix(a.inverse().multiply(vand));
}

std::vector<FieldElement> GeneratorMatrix::encode(std::span<const FieldElement> message) const {
    if (message.size() != message_length()) {
        throw std::invalid_argument("message length does not match generator");
    }
    return entries_.left_multiply(message);
}

std::vector<FieldElement> GeneratorMatrix::decode_from_any_k(
    std::span<const size_t> positions, std::span<const FieldElement> symbols) const {
    size_t k = message_length();
    if (positions.size() != k || symbols.size() != k) {
        throw std::invalid_argument("decode needs exactly k positions and symbols");
    }
    std::vector<size_t> cols(k);
    std::set<size_t> seen;
    for (size_t i = 0; i < k; ++i) {
        if (positions[i] < 1 || positions[i] > code_length()) {
            throw std::out_of_range("decode position out of range");
        }
        if (!seen.insert(positions[i]).second) {
            throw std::invalid_argument("decode positions must be distinct");
        }
        cols[i] = positions[i] - 1;
    }
    Matrix sub = entries_.select_columns(cols);
    auto inv = sub.try_inverse();
    if (!inv) {
        throw SingularMatrixError("column submatrix is singular; generator is not MDS");
    }
    return inv->left_multiply(symbols);
}

nlohmann::json GeneratorMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < message_length(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < code_length(); ++c) row.push_back(entries_.at(r, c).value());
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"field_p", field().modulus()},
                          {"n", code_length()},
                          {"k", message_length()},
                          {"rows", std::move(rows)}};
}

GeneratorMatrix GeneratorMatrix::from_json(const nlohmann::json& doc) {
    Field field(doc.at("field_p").get<uint32_t>());
    size_t n = doc.at("n").get<size_t>();
    size_t k = doc.at("k").get<size_t>();
    auto rows = doc.at("rows").get<std::vector<std::vector<uint32_t>>>();
    if (rows.size() != k || (k > 0 && rows.front().size() != n)) {
        throw std::invalid_argument("generator json: rows shape does not match n, k");
    }
    return GeneratorMatrix(Matrix::from_rows(rows, field));
}

MdsCheck verify_mds(const GeneratorMatrix& g) {
    size_t n = g.code_length();
    size_t k = g.message_length();
    std::vector<size_t> pick(k);
    for (size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        Matrix sub = g.entries().select_columns(pick);
        if (!sub.try_inverse()) {
            MdsCheck fail;
            fail.ok = false;
            for (size_t c : pick) fail.failing_columns.push_back(c + 1);
            return fail;
        }
        // next k-combination of [0, n)
        size_t i = k;
        while (i > 0) {
            --i;
            if (pick[i] != i + n - k) {
                ++pick[i];
                for (size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return MdsCheck{true, {}};
        }
    }
}

}  // namespace veilcache

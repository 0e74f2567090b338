// Shared test fixtures: the example systems used across the suites.
#pragma once

#include "veilcache/mds.hpp"
#include "veilcache/model.hpp"

namespace fixtures {

using namespace veilcache;

// (2,2) system over GF(2) with the (4,3) parity generator
inline SystemParams example1_params(size_t stripe = 1) {
    return SystemParams(2, 2, 3 * stripe, Field(2));
}

inline GeneratorMatrix example1_generator() {
    return GeneratorMatrix(
        Matrix::from_rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}, Field(2)));
}

inline FileLibrary example1_library() {
    Field f(2);
    return FileLibrary({{f.element(1), f.element(0), f.element(1)},
                        {f.element(0), f.element(1), f.element(1)}});
}

// (3,2) system over GF(5) with an explicit (6,4) generator
inline SystemParams example2_params(size_t stripe = 1) {
    return SystemParams(3, 2, 4 * stripe, Field(5));
}

inline GeneratorMatrix example2_generator() {
    return GeneratorMatrix(Matrix::from_rows(
        {{1, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 2}, {0, 0, 1, 0, 1, 3}, {0, 0, 0, 1, 1, 4}},
        Field(5)));
}

inline FileLibrary example2_library() {
    Field f(5);
    return FileLibrary({{f.element(1), f.element(2), f.element(3), f.element(4)},
                        {f.element(4), f.element(0), f.element(2), f.element(1)}});
}

// (2,3) system over GF(7) with a Reed-Solomon generator
inline SystemParams k2n3_params(size_t stripe = 1) {
    return SystemParams(2, 3, 5 * stripe, Field(7));
}

inline GeneratorMatrix k2n3_generator() {
    return GeneratorMatrix::reed_solomon(6, 5, Field(7));
}

}  // namespace fixtures

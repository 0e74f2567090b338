#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace veilcache {

class FieldElement;

// Prime field GF(p). Primality is checked at construction by trial division;
// every field in this toolkit is desk-scale.
class Field {
public:
    explicit Field(uint32_t modulus);

    uint32_t modulus() const { return p_; }

    FieldElement element(uint64_t value) const;  // reduces mod p
    FieldElement zero() const;
    FieldElement one() const;

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

private:
    uint32_t p_;
};

// Smallest prime >= max(K*N, 2): enough evaluation points for a systematic
// (KN, K(N-1)+1) Reed-Solomon generator while keeping enumeration spaces small.
Field field_for_params(unsigned user_count, unsigned file_count);

bool is_prime(uint64_t n);

// A value in [0, p-1]. Elements remember their modulus; mixing fields throws.
class FieldElement {
public:
    FieldElement() = default;  // detached zero, rejected by arithmetic

    uint32_t value() const { return value_; }
    uint32_t modulus() const { return p_; }
    Field field() const { return Field(p_); }

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator/(FieldElement o) const;  // o != 0
    FieldElement operator-() const;
    FieldElement inverse() const;  // *this != 0

    friend bool operator==(FieldElement a, FieldElement b) {
        return a.value_ == b.value_ && a.p_ == b.p_;
    }
    friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

private:
    friend class Field;
    FieldElement(uint32_t value, uint32_t p) : value_(value), p_(p) {}

    void check_same_field(FieldElement o) const;

    uint32_t value_ = 0;
    uint32_t p_ = 0;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix over one GF(p).
class Matrix {
public:
    Matrix(size_t rows, size_t cols, const Field& field);  // zero-filled
    static Matrix identity(size_t n, const Field& field);
    static Matrix from_rows(const std::vector<std::vector<uint32_t>>& rows, const Field& field);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Field field() const { return field_; }

    FieldElement& at(size_t r, size_t c) { return cells_[r * cols_ + c]; }
    const FieldElement& at(size_t r, size_t c) const { return cells_[r * cols_ + c]; }

    Matrix multiply(const Matrix& o) const;
    // row vector (1 x rows) times this matrix -> 1 x cols
    std::vector<FieldElement> left_multiply(std::span<const FieldElement> row) const;

    std::optional<Matrix> try_inverse() const;  // nullopt on singular
    Matrix inverse() const;                     // throws SingularMatrixError

    Matrix select_columns(std::span<const size_t> column_indices) const;  // 0-based

    bool is_identity() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
    }

private:
    size_t rows_;
    size_t cols_;
    Field field_;
    std::vector<FieldElement> cells_;
};

}  // namespace veilcache

#include "veilcache/galois.hpp"

#include <algorithm>

namespace veilcache {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Field::Field(uint32_t modulus) : p_(modulus) {
    if (!is_prime(p_)) {
        throw std::invalid_argument("field modulus " + std::to_string(p_) + " is not prime");
    }
}

FieldElement Field::element(uint64_t value) const {
    return FieldElement(static_cast<uint32_t>(value % p_), p_);
}

FieldElement Field::zero() const { return FieldElement(0, p_); }
FieldElement Field::one() const { return FieldElement(1 % p_, p_); }

Field field_for_params(unsigned user_count, unsigned file_count) {
    if (user_count < 1 || file_count < 1) {
        throw std::invalid_argument("user and file counts must be positive");
    }
    uint64_t floor = std::max<uint64_t>(uint64_t(user_count) * file_count, 2);
    uint64_t p = floor;
    while (!is_prime(p)) ++p;
    return Field(static_cast<uint32_t>(p));
}

void FieldElement::check_same_field(FieldElement o) const {
    if (p_ == 0 || o.p_ == 0) {
        throw std::invalid_argument("arithmetic on detached field element");
    }
    if (p_ != o.p_) {
        throw std::invalid_argument("field mismatch: GF(" + std::to_string(p_) + ") vs GF(" +
                                    std::to_string(o.p_) + ")");
    }
}

FieldElement FieldElement::operator+(FieldElement o) const {
    check_same_field(o);
    uint64_t s = uint64_t(value_) + o.value_;
    if (s >= p_) s -= p_;
    return FieldElement(static_cast<uint32_t>(s), p_);
}

FieldElement FieldElement::operator-(FieldElement o) const {
    check_same_field(o);
    uint64_t s = uint64_t(value_) + p_ - o.value_;
    if (s >= p_) s -= p_;
    return FieldElement(static_cast<uint32_t>(s), p_);
}

FieldElement FieldElement::operator*(FieldElement o) const {
    check_same_field(o);
    return FieldElement(static_cast<uint32_t>(uint64_t(value_) * o.value_ % p_), p_);
}

FieldElement FieldElement::operator-() const {
    if (p_ == 0) throw std::invalid_argument("arithmetic on detached field element");
    return FieldElement(value_ == 0 ? 0 : p_ - value_, p_);
}

FieldElement FieldElement::inverse() const {
    if (p_ == 0) throw std::invalid_argument("arithmetic on detached field element");
    if (value_ == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid
    int64_t t = 0, new_t = 1;
    int64_t r = p_, new_r = value_;
    while (new_r != 0) {
        int64_t q = r / new_r;
        int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p_;
    return FieldElement(static_cast<uint32_t>(t), p_);
}

FieldElement FieldElement::operator/(FieldElement o) const {
    check_same_field(o);
    return *this * o.inverse();
}

Matrix::Matrix(size_t rows, size_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(field), cells_(rows * cols, field.zero()) {}

Matrix Matrix::identity(size_t n, const Field& field) {
    Matrix m(n, n, field);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<uint32_t>>& rows, const Field& field) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("matrix needs at least one row and column");
    }
    Matrix m(rows.size(), rows.front().size(), field);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) {
            throw std::invalid_argument("ragged matrix rows");
        }
        for (size_t c = 0; c < m.cols_; ++c) m.at(r, c) = field.element(rows[r][c]);
    }
    return m;
}

Matrix Matrix::multiply(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_) {
        throw std::invalid_argument("matrix multiply dimension or field mismatch");
    }
    Matrix out(rows_, o.cols_, field_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t k = 0; k < cols_; ++k) {
            FieldElement a = at(r, k);
            if (a.value() == 0) continue;
            for (size_t c = 0; c < o.cols_; ++c) {
                out.at(r, c) = out.at(r, c) + a * o.at(k, c);
            }
        }
    }
    return out;
}

std::vector<FieldElement> Matrix::left_multiply(std::span<const FieldElement> row) const {
    if (row.size() != rows_) {
        throw std::invalid_argument("row vector length does not match matrix rows");
    }
    std::vector<FieldElement> out(cols_, field_.zero());
    for (size_t k = 0; k < rows_; ++k) {
        if (row[k].value() == 0) continue;
        for (size_t c = 0; c < cols_; ++c) {
            out[c] = out[c] + row[k] * at(k, c);
        }
    }
    return out;
}

std::optional<Matrix> Matrix::try_inverse() const {
    if (rows_ != cols_) return std::nullopt;
    size_t n = rows_;
    // Gauss-Jordan on [A | I]
    Matrix a = *this;
    Matrix inv = Matrix::identity(n, field_);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a.at(pivot, col).value() == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (size_t c = 0; c < n; ++c) {
                std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        }
        FieldElement scale = a.at(col, col).inverse();
        for (size_t c = 0; c < n; ++c) {
            a.at(col, c) = a.at(col, c) * scale;
            inv.at(col, c) = inv.at(col, c) * scale;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            FieldElement f = a.at(r, col);
            if (f.value() == 0) continue;
            for (size_t c = 0; c < n; ++c) {
                a.at(r, c) = a.at(r, c) - f * a.at(col, c);
                inv.at(r, c) = inv.at(r, c) - f * inv.at(col, c);
            }
        }
    }
    return inv;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    auto inv = try_inverse();
    if (!inv) throw SingularMatrixError("singular matrix");
    return *inv;
}

Matrix Matrix::select_columns(std::span<const size_t> column_indices) const {
    Matrix out(rows_, column_indices.size(), field_);
    for (size_t c = 0; c < column_indices.size(); ++c) {
        if (column_indices[c] >= cols_) throw std::out_of_range("column index out of range");
        for (size_t r = 0; r < rows_; ++r) out.at(r, c) = at(r, column_indices[c]);
    }
    return out;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            if (at(r, c).value() != (r == c ? 1u % field_.modulus() : 0u)) return false;
        }
    }
    return true;
}

}  // namespace veilcache

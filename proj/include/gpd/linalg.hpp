#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace gpd {

/// Exact scalar: machine word residue for F_p, GMP rational for char 0.
using Scalar = std::variant<std::uint64_t, mpq_class>;

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A prime field F_p (p < 2^31) or the rationals (characteristic 0).
/// All arithmetic is exact and bit-for-bit reproducible.
class Field {
  public:
    explicit Field(std::uint32_t characteristic = 0);

    std::uint32_t characteristic() const { return p_; }
    bool is_prime_field() const { return p_ != 0; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_long(long v) const;
    /// Parses "7", "-3" or "2/3" (the fraction is interpreted via inversion mod p
    /// over a prime field).
    Scalar from_string(const std::string& s) const;
    std::string to_string(const Scalar& a) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    /// a^{-1}; throws FieldError on zero.
    Scalar inv(const Scalar& a) const;
    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    bool eq(const Scalar& a, const Scalar& b) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

  private:
    std::uint32_t p_;
};

/// Dense matrix over an exact field. Zero-row/zero-column shapes are allowed.
/// Values are immutable in spirit: every operation returns a fresh matrix.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(Field f, std::size_t rows, std::size_t cols);
    static Mat identity(Field f, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    Mat mul(const Mat& o) const;
    Mat add(const Mat& o) const;
    Mat sub(const Mat& o) const;
    Mat scaled(const Scalar& c) const;
    Mat transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Stacks blocks side by side / on top of each other.
    static Mat hstack(const std::vector<Mat>& blocks);
    static Mat vstack(const std::vector<Mat>& blocks);
    Mat col(std::size_t j) const;
    Mat cols_slice(std::size_t from, std::size_t to) const;  // [from, to)

    std::string to_string() const;

  private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Mat r;
    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

/// Reduced row echelon form; pivot count equals rank.
RrefResult rref(const Mat& m);

/// Columns form the canonical basis of the right null space (free variables
/// set to unit vectors, pivot coordinates filled from the rref).
Mat kernel_basis(const Mat& m);

/// Echelon-canonical particular solution of a·x = b with free variables zero,
/// or nullopt when the system is inconsistent. b may have several columns.
std::optional<Mat> solve(const Mat& a, const Mat& b);

std::size_t rank(const Mat& m);

/// m^{-1} when m is square of full rank, nullopt otherwise.
std::optional<Mat> invert(const Mat& m);

}  // namespace gpd

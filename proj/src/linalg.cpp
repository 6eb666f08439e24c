#include "gpd/linalg.hpp"

#include <sstream>

namespace gpd {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

Field::Field(std::uint32_t characteristic) : p_(characteristic) {
    if (p_ != 0 && !is_prime_u32(p_))
        throw FieldError("field characteristic must be 0 or a prime < 2^31");
    if (p_ >= (1u << 31)) throw FieldError("prime too large");
}

Scalar Field::zero() const {
    if (p_) return std::uint64_t{0};
    return mpq_class(0);
}

Scalar Field::one() const {
    if (p_) return std::uint64_t{1 % p_};
    return mpq_class(1);
}

Scalar Field::from_long(long v) const {
    if (p_) {
        long r = v % static_cast<long>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint64_t>(r);
    }
    return mpq_class(v);
}

Scalar Field::from_string(const std::string& s) const {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw FieldError("bad scalar literal: " + s);
    q.canonicalize();
    if (!p_) return q;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class nr = num % pz;
    if (nr < 0) nr += pz;
    mpz_class dr = den % pz;
    std::uint64_t n = nr.get_ui(), d = dr.get_ui();
    if (d == 0) throw FieldError("denominator divisible by p in: " + s);
    return mul(Scalar{n}, inv(Scalar{d}));
}

std::string Field::to_string(const Scalar& a) const {
    if (p_) return std::to_string(std::get<std::uint64_t>(a));
    return std::get<mpq_class>(a).get_str();
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (p_) return (std::get<std::uint64_t>(a) + std::get<std::uint64_t>(b)) % p_;
    return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (p_) return (std::get<std::uint64_t>(a) + p_ - std::get<std::uint64_t>(b)) % p_;
    return mpq_class(std::get<mpq_class>(a) - std::get<mpq_class>(b));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (p_) return std::get<std::uint64_t>(a) * std::get<std::uint64_t>(b) % p_;
    return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
}

Scalar Field::neg(const Scalar& a) const {
    if (p_) {
        std::uint64_t v = std::get<std::uint64_t>(a);
        return v ? p_ - v : v;
    }
    return mpq_class(-std::get<mpq_class>(a));
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw FieldError("division by zero");
    if (p_) return pow_mod(std::get<std::uint64_t>(a), p_ - 2, p_);
    return mpq_class(1 / std::get<mpq_class>(a));
}

bool Field::is_zero(const Scalar& a) const {
    if (p_) return std::get<std::uint64_t>(a) == 0;
    return std::get<mpq_class>(a) == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (p_) return std::get<std::uint64_t>(a) == 1 % p_;
    return std::get<mpq_class>(a) == 1;
}

bool Field::eq(const Scalar& a, const Scalar& b) const {
    if (p_) return std::get<std::uint64_t>(a) == std::get<std::uint64_t>(b);
    return std::get<mpq_class>(a) == std::get<mpq_class>(b);
}

Mat::Mat(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), e_(rows * cols, f.zero()) {}

Mat Mat::identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Mat Mat::mul(const Mat& o) const {
    if (cols_ != o.rows_) throw FieldError("matrix product shape mismatch");
    Mat r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (field_.is_zero(a)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (field_.is_zero(b)) continue;
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, b));
            }
        }
    return r;
}

Mat Mat::add(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw FieldError("matrix sum shape mismatch");
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

Mat Mat::sub(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw FieldError("matrix difference shape mismatch");
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.mul(e_[i], c);
    return r;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    for (const auto& x : e_)
        if (!field_.is_zero(x)) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !field_.is_one(at(i, j)) : !field_.is_zero(at(i, j))) return false;
        }
    return true;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!field_.eq(e_[i], o.e_[i])) return false;
    return true;
}

Mat Mat::hstack(const std::vector<Mat>& blocks) {
    if (blocks.empty()) throw FieldError("hstack of nothing");
    std::size_t rows = blocks[0].rows(), cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw FieldError("hstack row mismatch");
        cols += b.cols();
    }
    Mat r(blocks[0].field(), rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, off + j) = b.at(i, j);
        off += b.cols();
    }
    return r;
}

Mat Mat::vstack(const std::vector<Mat>& blocks) {
    if (blocks.empty()) throw FieldError("vstack of nothing");
    std::size_t cols = blocks[0].cols(), rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw FieldError("vstack column mismatch");
        rows += b.rows();
    }
    Mat r(blocks[0].field(), rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) r.at(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

Mat Mat::col(std::size_t j) const { return cols_slice(j, j + 1); }

Mat Mat::cols_slice(std::size_t from, std::size_t to) const {
    Mat r(field_, rows_, to - from);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = from; j < to; ++j) r.at(i, j - from) = at(i, j);
    return r;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << field_.to_string(at(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

RrefResult rref(const Mat& m) {
    Mat r = m;
    const Field& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = r.rows();
        for (std::size_t i = row; i < r.rows(); ++i)
            if (!F.is_zero(r.at(i, col))) {
                sel = i;
                break;
            }
        if (sel == r.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(row, j));
        Scalar piv_inv = F.inv(r.at(row, col));
        for (std::size_t j = col; j < r.cols(); ++j) r.at(row, j) = F.mul(r.at(row, j), piv_inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || F.is_zero(r.at(i, col))) continue;
            Scalar c = r.at(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                r.at(i, j) = F.sub(r.at(i, j), F.mul(c, r.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

Mat kernel_basis(const Mat& m) {
    auto rr = rref(m);
    const Field& F = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(F, m.cols(), free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t f = free_cols[fi];
        k.at(f, fi) = F.one();
        for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
            k.at(rr.pivots[pr], fi) = F.neg(rr.r.at(pr, f));
    }
    return k;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw FieldError("solve: row mismatch");
    const Field& F = a.field();
    Mat aug = Mat::hstack({a, b});
    auto rr = rref(aug);
    for (auto c : rr.pivots)
        if (c >= a.cols()) return std::nullopt;  // inconsistent
    Mat x(F, a.cols(), b.cols());
    for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(rr.pivots[pr], j) = rr.r.at(pr, a.cols() + j);
    return x;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

std::optional<Mat> invert(const Mat& m) {
    if (m.rows() != m.cols()) throw FieldError("invert requires a square matrix");
    Mat aug = Mat::hstack({m, Mat::identity(m.field(), m.rows())});
    auto rr = rref(aug);
    if (rr.pivots.size() != m.rows()) return std::nullopt;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        if (rr.pivots[i] != i) return std::nullopt;
    return rr.r.cols_slice(m.cols(), 2 * m.cols());
}

}  // namespace gpd

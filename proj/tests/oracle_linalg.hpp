#pragma once

// Shadow implementation used as an independent oracle: naive residue
// arithmetic and plain Gaussian elimination over F_p, written against the
// definitions and sharing no code with the library.

#include <cstdint>
#include <vector>

namespace oracle {

struct FpMat {
    std::uint64_t p;
    std::size_t rows, cols;
    std::vector<std::uint64_t> e;  // row-major

    FpMat(std::uint64_t p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), e(r * c, 0) {}
    std::uint64_t& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    // brute-force inverse
    for (std::uint64_t x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

inline FpMat gauss(FpMat m, std::vector<std::size_t>* pivots_out) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = m.rows;
        for (std::size_t i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        std::uint64_t inv = fp_inv(m.at(row, col), m.p);
        for (std::size_t j = 0; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv % m.p;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            std::uint64_t c = m.at(i, col);
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = (m.at(i, j) + (m.p - c) * m.at(row, j)) % m.p;
        }
        if (pivots_out) pivots_out->push_back(col);
        ++row;
    }
    return m;
}

inline std::size_t fp_rank(const FpMat& m) {
    std::vector<std::size_t> piv;
    gauss(m, &piv);
    return piv.size();
}

// All vectors x (over F_p, dim = cols) with m x = 0, by exhaustive search.
// Only sensible for p^cols small.
inline std::vector<std::vector<std::uint64_t>> fp_kernel_exhaustive(const FpMat& m) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> x(m.cols, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < m.rows && ok; ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < m.cols; ++j) s = (s + m.at(i, j) * x[j]) % m.p;
            ok = (s == 0);
        }
        if (ok) out.push_back(x);
        std::size_t k = 0;
        while (k < m.cols && ++x[k] == m.p) x[k++] = 0;
        if (k == m.cols) break;
    }
    return out;
}

// Deterministic pseudo-random stream for test data.
struct SplitMix {
    std::uint64_t s;
    explicit SplitMix(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace oracle

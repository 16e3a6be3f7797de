// Dense exact-rational matrices with unique reduced row echelon form,
// rank, kernel bases, particular solutions, and a modular-rank cross-check.
#pragma once

#include "rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homleib {

using Vec = std::vector<Rational>;

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& v = at(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference shape mismatch");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    Mat operator*(const Rational& s) const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
        return r;
    }

    Vec operator*(const Vec& x) const {
        if (cols_ != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        Vec out(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !x[j].is_zero()) out[i] += at(i, j) * x[j];
        return out;
    }

    Mat pow(unsigned k) const {
        if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
        Mat r = identity(rows_);
        for (unsigned t = 0; t < k; ++t) r = (*this) * r;
        return r;
    }

    std::optional<Mat> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        std::size_t n = rows_;
        Mat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, n + i) = 1;
        }
        std::size_t r = 0;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = r;
            while (piv < n && aug.at(piv, c).is_zero()) ++piv;
            if (piv == n) return std::nullopt;
            if (piv != r)
                for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug.at(r, j), aug.at(piv, j));
            Rational inv = Rational(1) / aug.at(r, c);
            for (std::size_t j = 0; j < 2 * n; ++j) aug.at(r, j) *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == r || aug.at(i, c).is_zero()) continue;
                Rational f = aug.at(i, c);
                for (std::size_t j = 0; j < 2 * n; ++j) aug.at(i, j) -= f * aug.at(r, j);
            }
            ++r;
        }
        Mat out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

struct Rref {
    Mat r;                        // the (unique) reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per pivot row
};

inline Rref rref(Mat m) {
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && m.at(piv, c).is_zero()) ++piv;
        if (piv == nr) continue;
        if (piv != r)
            for (std::size_t j = 0; j < nc; ++j) std::swap(m.at(r, j), m.at(piv, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (std::size_t j = c; j < nc; ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c);
            for (std::size_t j = c; j < nc; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Rref{std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

// Kernel basis in free-column order; coordinates follow the unique rref,
// so the basis is canonical (independent of elimination details).
inline std::vector<Vec> nullspace(const Mat& m) {
    Rref R = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : R.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(m.cols(), Rational(0));
        v[fc] = 1;
        for (std::size_t r = 0; r < R.pivots.size(); ++r) v[R.pivots[r]] = -R.r.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical particular solution of M x = b (free coordinates set to zero),
// or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    Rref R = rref(std::move(aug));
    for (std::size_t c : R.pivots)
        if (c == m.cols()) return std::nullopt;
    Vec x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < R.pivots.size(); ++r) x[R.pivots[r]] = R.r.at(r, m.cols());
    return x;
}

// Rank of the matrix reduced mod a prime; throws std::logic_error when the
// prime divides a denominator (caller should pick another prime).
inline std::size_t rank_mod(const Mat& m, std::uint64_t p) {
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    auto reduce = [&](const Rational& q) -> std::uint64_t {
        BigInt num = numerator(q) % BigInt(p);
        if (num < 0) num += p;
        BigInt den = denominator(q) % BigInt(p); // canonical form keeps denominators positive
        std::uint64_t n = num.convert_to<std::uint64_t>();
        std::uint64_t d = den.convert_to<std::uint64_t>();
        if (d == 0) throw std::logic_error("modular rank: prime divides a denominator");
        return mulmod(n, powmod(d, p - 2));
    };
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<std::uint64_t>> M(nr, std::vector<std::uint64_t>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) M[i][j] = reduce(m.at(i, j));
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && M[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(M[r], M[piv]);
        std::uint64_t inv = powmod(M[r][c], p - 2);
        for (std::size_t j = 0; j < nc; ++j) M[r][j] = mulmod(M[r][j], inv);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || M[i][c] == 0) continue;
            std::uint64_t f = M[i][c];
            for (std::size_t j = 0; j < nc; ++j) {
                std::uint64_t sub = mulmod(f, M[r][j]);
                M[i][j] = (M[i][j] + p - sub) % p;
            }
        }
        ++r;
    }
    return r;
}

} // namespace homleib

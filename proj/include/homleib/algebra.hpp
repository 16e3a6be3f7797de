// Finite-dimensional multiplicative Hom-Leibniz algebras over the rationals:
// a bilinear bracket given by structure constants together with a linear
// twisting endomorphism alpha satisfying
//   [alpha(x), [y, z]] = [[x, y], alpha(z)] - [[x, z], alpha(y)]
//   alpha([x, y]) = [alpha(x), alpha(y)]
// Conventions: structure(i,j,k) is the e_k coefficient of [e_i, e_j] and the
// alpha matrix acts by columns, alpha(e_j) = sum_k A(k,j) e_k. All indices in
// this library are 0-based; the document layer converts from 1-based input.
#pragma once

#include "matrix.hpp"
#include "rational.hpp"

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace homleib {

struct AxiomViolation {
    std::string axiom;           // "hom_leibniz" or "multiplicative"
    std::vector<std::size_t> basis_indices; // (i,j,k) or (i,j), 0-based
    Vec lhs, rhs;                // the two sides that disagree
    std::string describe() const {
        std::ostringstream os;
        os << axiom << " fails on basis tuple (";
        for (std::size_t t = 0; t < basis_indices.size(); ++t)
            os << (t ? "," : "") << "e" << (basis_indices[t] + 1);
        os << "): lhs != rhs";
        return os.str();
    }
};

struct ValidationReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;
};

class Algebra {
public:
    Algebra(std::size_t dim, std::vector<Rational> structure, Mat alpha)
        : dim_(dim), c_(std::move(structure)), alpha_(std::move(alpha)) {
        if (c_.size() != dim_ * dim_ * dim_)
            throw std::invalid_argument("structure constant array has wrong size");
        if (alpha_.rows() != dim_ || alpha_.cols() != dim_)
            throw std::invalid_argument("alpha matrix has wrong shape");
        pows_.emplace(0u, Mat::identity(dim_));
        pows_.emplace(1u, alpha_);
    }

    std::size_t dim() const { return dim_; }
    const Mat& alpha_matrix() const { return alpha_; }

    const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    const Mat& alpha_power(unsigned k) const {
        auto it = pows_.find(k);
        if (it == pows_.end())
            it = pows_.emplace(k, alpha_ * alpha_power(k - 1)).first;
        return it->second;
    }

    Vec alpha(const Vec& x, unsigned k = 1) const { return alpha_power(k) * x; }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec out(dim_, Rational(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                Rational xy = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k) {
                    const Rational& cc = structure(i, j, k);
                    if (!cc.is_zero()) out[k] += xy * cc;
                }
            }
        }
        return out;
    }

    Vec basis(std::size_t i) const {
        Vec v(dim_, Rational(0));
        v[i] = 1;
        return v;
    }

    ValidationReport validate() const {
        ValidationReport rep;
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b)
                for (std::size_t c = 0; c < dim_; ++c) {
                    Vec x = basis(a), y = basis(b), z = basis(c);
                    Vec lhs = bracket(alpha(x), bracket(y, z));
                    Vec r1 = bracket(bracket(x, y), alpha(z));
                    Vec r2 = bracket(bracket(x, z), alpha(y));
                    Vec rhs(dim_);
                    for (std::size_t k = 0; k < dim_; ++k) rhs[k] = r1[k] - r2[k];
                    if (lhs != rhs) {
                        rep.passed = false;
                        rep.violations.push_back({"hom_leibniz", {a, b, c}, lhs, rhs});
                    }
                }
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b) {
                Vec x = basis(a), y = basis(b);
                Vec lhs = alpha(bracket(x, y));
                Vec rhs = bracket(alpha(x), alpha(y));
                if (lhs != rhs) {
                    rep.passed = false;
                    rep.violations.push_back({"multiplicative", {a, b}, lhs, rhs});
                }
            }
        return rep;
    }

private:
    std::size_t dim_;
    std::vector<Rational> c_; // c[(i*dim+j)*dim+k]
    Mat alpha_;
    mutable std::map<unsigned, Mat> pows_;
};

// ---------------------------------------------------------------------------
// Constructors.

struct StructureEntry {
    std::size_t i, j, k; // 0-based
    Rational coeff;
};

inline Algebra make_algebra(std::size_t dim, const std::vector<StructureEntry>& entries,
                            const Mat& alpha) {
    std::vector<Rational> c(dim * dim * dim, Rational(0));
    for (const auto& e : entries) {
        if (e.i >= dim || e.j >= dim || e.k >= dim)
            throw std::invalid_argument("structure entry index out of range");
        c[(e.i * dim + e.j) * dim + e.k] = e.coeff;
    }
    return Algebra(dim, std::move(c), alpha);
}

// The two-dimensional worked example: [e2,e2] = e1 is the only nonzero
// bracket and alpha = [[1,1],[0,1]].
inline Algebra two_dim_nilpotent() {
    Mat A(2, 2);
    A.at(0, 0) = 1; A.at(0, 1) = 1; A.at(1, 1) = 1;
    return make_algebra(2, {{1, 1, 0, Rational(1)}}, A);
}

inline Algebra abelian(std::size_t dim) {
    return make_algebra(dim, {}, Mat::identity(dim));
}

inline Algebra abelian_twisted(std::size_t dim, const Mat& alpha) {
    return make_algebra(dim, {}, alpha);
}

// A classical Leibniz algebra presented with alpha = Id.
inline Algebra leibniz(std::size_t dim, const std::vector<StructureEntry>& entries) {
    return make_algebra(dim, entries, Mat::identity(dim));
}

// Twist by an algebra endomorphism: new bracket [x,y]' = [A x, A y], new
// alpha = A. The morphism property is verified via the validation suite of
// the result; callers should check validate() when the input is untrusted.
inline Algebra yau_twist(const Algebra& base, const Mat& morphism) {
    std::size_t d = base.dim();
    if (morphism.rows() != d || morphism.cols() != d)
        throw std::invalid_argument("twist morphism has wrong shape");
    std::vector<Rational> c(d * d * d, Rational(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec v = base.bracket(morphism * base.basis(i), morphism * base.basis(j));
            for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = v[k];
        }
    return Algebra(d, std::move(c), morphism);
}

// Free Leibniz algebra on `vdim` generators truncated beyond bracket-word
// degree `depth`, with alpha = Id. Returns the algebra and the word labels
// (each word is the sequence of generator indices in its left-normed form).
inline std::pair<Algebra, std::vector<std::vector<std::size_t>>>
free_truncated(std::size_t vdim, std::size_t depth) {
    if (vdim == 0 || depth == 0) throw std::invalid_argument("free_truncated: empty shape");
    std::vector<std::vector<std::size_t>> words;
    {
        std::vector<std::vector<std::size_t>> level;
        for (std::size_t g = 0; g < vdim; ++g) level.push_back({g});
        for (std::size_t ln = 1; ln <= depth; ++ln) {
            for (const auto& w : level) words.push_back(w);
            std::vector<std::vector<std::size_t>> next;
            for (const auto& w : level)
                for (std::size_t g = 0; g < vdim; ++g) {
                    auto w2 = w;
                    w2.push_back(g);
                    next.push_back(std::move(w2));
                }
            level = std::move(next);
        }
    }
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < words.size(); ++i) idx[words[i]] = i;
    std::size_t dim = words.size();

    using Expansion = std::map<std::vector<std::size_t>, Rational>;
    std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, Expansion> cache;
    // [w, u] for basis words: words of combined length beyond `depth` vanish;
    // a length-1 right factor appends; otherwise recurse through
    // [w, u'v] = [[w, u'], v] - [[w, v], u'].
    auto br = [&](auto&& self, const std::vector<std::size_t>& w,
                  const std::vector<std::size_t>& u) -> const Expansion& {
        auto key = std::make_pair(w, u);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Expansion res;
        if (w.size() + u.size() > depth) {
            // truncated away
        } else if (u.size() == 1) {
            auto w2 = w;
            w2.push_back(u[0]);
            res[w2] = 1;
        } else {
            std::vector<std::size_t> up(u.begin(), u.end() - 1);
            std::vector<std::size_t> v{u.back()};
            for (const auto& [w2, c2] : self(self, w, up))
                for (const auto& [w3, c3] : self(self, w2, v)) res[w3] += c2 * c3;
            for (const auto& [w2, c2] : self(self, w, v))
                for (const auto& [w3, c3] : self(self, w2, up)) res[w3] -= c2 * c3;
            for (auto it2 = res.begin(); it2 != res.end();)
                it2 = it2->second.is_zero() ? res.erase(it2) : std::next(it2);
        }
        return cache.emplace(std::move(key), std::move(res)).first->second;
    };

    std::vector<Rational> c(dim * dim * dim, Rational(0));
    for (std::size_t wi = 0; wi < dim; ++wi)
        for (std::size_t ui = 0; ui < dim; ++ui)
            for (const auto& [w2, coeff] : br(br, words[wi], words[ui]))
                c[(wi * dim + ui) * dim + idx.at(w2)] = coeff;
    return {Algebra(dim, std::move(c), Mat::identity(dim)), words};
}

} // namespace homleib

// Multilinear cochains and the alpha-type cochain complex.
//
// A degree-n cochain is a pair (phi, psi): phi is an n-linear map L^n -> L
// and psi an (n-1)-linear map (absent at n = 1). The differential sends
// degree n to degree n+1 via four partial maps assembled as
//   d(phi, psi) = ( d_gg(phi) - d_ag(psi),  d_ga(phi) - d_aa(psi) ).
// Tensors are stored flat: entry index(k, i_1..i_m) = k*dim^m + row-major
// argument index, i.e. the e_k coefficient of the value on (e_{i_1},...).
#pragma once

#include "algebra.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homleib {

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

struct Cochain {
    std::size_t dim = 0;
    std::size_t arity = 0;
    std::vector<Rational> t; // size dim^(arity+1)

    Cochain() = default;
    Cochain(std::size_t d, std::size_t m)
        : dim(d), arity(m), t(d * ipow(d, m), Rational(0)) {}

    static std::size_t index(std::size_t dim, std::size_t m, std::size_t k,
                             const std::vector<std::size_t>& args) {
        std::size_t f = k;
        for (std::size_t t2 = 0; t2 < m; ++t2) f = f * dim + args[t2];
        return f;
    }

    Rational& at(std::size_t k, const std::vector<std::size_t>& args) {
        return t[index(dim, arity, k, args)];
    }
    const Rational& at(std::size_t k, const std::vector<std::size_t>& args) const {
        return t[index(dim, arity, k, args)];
    }

    bool is_zero() const {
        for (const auto& v : t)
            if (!v.is_zero()) return false;
        return true;
    }

    bool operator==(const Cochain& o) const {
        return dim == o.dim && arity == o.arity && t == o.t;
    }
    bool operator!=(const Cochain& o) const { return !(*this == o); }

    Cochain operator+(const Cochain& o) const {
        if (dim != o.dim || arity != o.arity)
            throw std::invalid_argument("cochain sum shape mismatch");
        Cochain r = *this;
        for (std::size_t i = 0; i < t.size(); ++i) r.t[i] += o.t[i];
        return r;
    }
    Cochain operator-(const Cochain& o) const {
        if (dim != o.dim || arity != o.arity)
            throw std::invalid_argument("cochain difference shape mismatch");
        Cochain r = *this;
        for (std::size_t i = 0; i < t.size(); ++i) r.t[i] -= o.t[i];
        return r;
    }
    Cochain operator*(const Rational& s) const {
        Cochain r = *this;
        for (auto& v : r.t) v *= s;
        return r;
    }

    // Multilinear evaluation on `arity` vectors.
    Vec eval(const std::vector<Vec>& args) const {
        if (args.size() != arity) throw std::invalid_argument("cochain eval arity mismatch");
        Vec out(dim, Rational(0));
        std::size_t dm = ipow(dim, arity);
        for (std::size_t flat = 0; flat < dm; ++flat) {
            Rational p(1);
            std::size_t rem = flat;
            bool zero = false;
            for (std::size_t t2 = arity; t2-- > 0;) {
                std::size_t i = rem % dim;
                rem /= dim;
                p *= args[t2][i];
                if (p.is_zero()) { zero = true; break; }
            }
            if (zero) continue;
            for (std::size_t k = 0; k < dim; ++k) {
                const Rational& v = t[k * dm + flat];
                if (!v.is_zero()) out[k] += p * v;
            }
        }
        return out;
    }
};

inline Cochain basis_cochain(std::size_t dim, std::size_t m, std::size_t k,
                             const std::vector<std::size_t>& args) {
    Cochain c(dim, m);
    c.t[Cochain::index(dim, m, k, args)] = 1;
    return c;
}

// Decode a flat basis-cochain index f in [0, dim^(m+1)) to (k, args).
inline std::pair<std::size_t, std::vector<std::size_t>>
decode_basis_index(std::size_t dim, std::size_t m, std::size_t f) {
    std::size_t dm = ipow(dim, m);
    std::size_t k = f / dm;
    std::size_t rem = f % dm;
    std::vector<std::size_t> args(m, 0);
    for (std::size_t t = m; t-- > 0;) {
        args[t] = rem % dim;
        rem /= dim;
    }
    return {k, args};
}

// Value-to-matrix view of an arity-1 cochain and back (column convention).
inline Mat cochain_to_matrix(const Cochain& c) {
    if (c.arity != 1) throw std::invalid_argument("cochain_to_matrix needs arity 1");
    Mat m(c.dim, c.dim);
    for (std::size_t k = 0; k < c.dim; ++k)
        for (std::size_t j = 0; j < c.dim; ++j) m.at(k, j) = c.t[k * c.dim + j];
    return m;
}

inline Cochain matrix_to_cochain(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_to_cochain needs square input");
    Cochain c(m.rows(), 1);
    for (std::size_t k = 0; k < m.rows(); ++k)
        for (std::size_t j = 0; j < m.cols(); ++j) c.t[k * m.rows() + j] = m.at(k, j);
    return c;
}

// Iterate all argument tuples of length `len` over {0..dim-1}; calls f(tuple).
template <typename F>
inline void for_each_tuple(std::size_t dim, std::size_t len, F&& f) {
    std::vector<std::size_t> tup(len, 0);
    while (true) {
        f(const_cast<const std::vector<std::size_t>&>(tup));
        std::size_t t = len;
        while (t > 0) {
            --t;
            if (++tup[t] < dim) break;
            tup[t] = 0;
            if (t == 0) return;
        }
        if (len == 0) return;
    }
}

// ---------------------------------------------------------------------------
// Partial differentials.

// Shared shape of d_gg (exponent m-1) and d_aa (exponent m): arity m -> m+1.
inline Cochain delta_shaped(const Algebra& L, const Cochain& T, unsigned expo) {
    std::size_t d = L.dim(), m = T.arity, n1 = m + 1;
    Cochain out(d, n1);
    const Mat& Ap = L.alpha_power(expo);
    for_each_tuple(d, n1, [&](const std::vector<std::size_t>& tup) {
        std::vector<Vec> xs;
        xs.reserve(n1);
        for (std::size_t i : tup) xs.push_back(L.basis(i));
        Vec acc(d, Rational(0));
        // [alpha^expo(x_1), T(x_2,...,x_{m+1})]
        {
            std::vector<Vec> rest(xs.begin() + 1, xs.end());
            Vec w = L.bracket(Ap * xs[0], T.eval(rest));
            for (std::size_t k = 0; k < d; ++k) acc[k] += w[k];
        }
        // sum_{i=2}^{m+1} (-1)^i [T(..., x_i omitted, ...), alpha^expo(x_i)]
        for (std::size_t i = 2; i <= n1; ++i) {
            std::vector<Vec> args;
            for (std::size_t t = 0; t < n1; ++t)
                if (t != i - 1) args.push_back(xs[t]);
            Vec w = L.bracket(T.eval(args), Ap * xs[i - 1]);
            int s = (i % 2 == 0) ? 1 : -1;
            for (std::size_t k = 0; k < d; ++k) acc[k] += s * w[k];
        }
        // insertion block: substitute [x_i, x_j] at slot i, twist the rest
        for (std::size_t i = 1; i <= n1; ++i)
            for (std::size_t j = i + 1; j <= n1; ++j) {
                Vec br = L.bracket(xs[i - 1], xs[j - 1]);
                std::vector<Vec> args;
                for (std::size_t t = 1; t <= n1; ++t) {
                    if (t == j) continue;
                    if (t == i) args.push_back(br);
                    else args.push_back(L.alpha(xs[t - 1]));
                }
                Vec v = T.eval(args);
                int s = ((j + 1) % 2 == 0) ? 1 : -1;
                for (std::size_t k = 0; k < d; ++k) acc[k] += s * v[k];
            }
        for (std::size_t k = 0; k < d; ++k)
            if (!acc[k].is_zero()) out.at(k, tup) = acc[k];
    });
    return out;
}

inline Cochain d_gamma_gamma(const Algebra& L, const Cochain& T) {
    if (T.arity < 1) throw std::invalid_argument("d_gamma_gamma needs arity >= 1");
    return delta_shaped(L, T, static_cast<unsigned>(T.arity - 1));
}

inline Cochain d_alpha_alpha(const Algebra& L, const Cochain& T) {
    return delta_shaped(L, T, static_cast<unsigned>(T.arity));
}

// alpha . T - T . alpha^(tensor m): arity m -> m (compatibility defect).
inline Cochain d_gamma_alpha(const Algebra& L, const Cochain& T) {
    std::size_t d = L.dim(), m = T.arity;
    Cochain out(d, m);
    for_each_tuple(d, m, [&](const std::vector<std::size_t>& tup) {
        std::vector<Vec> xs, axs;
        for (std::size_t i : tup) {
            xs.push_back(L.basis(i));
            axs.push_back(L.alpha(xs.back()));
        }
        Vec v1 = L.alpha(T.eval(xs));
        Vec v2 = T.eval(axs);
        for (std::size_t k = 0; k < d; ++k) {
            Rational w = v1[k] - v2[k];
            if (!w.is_zero()) out.at(k, tup) = w;
        }
    });
    return out;
}

// Input arity m (degree n = m+1), output arity m+2, twist exponent m-1:
//   sum_{i>=2} (-1)^i [[a(x_1), a(x_i)], T(.. x_i omitted ..)]
// + sum_{2<=i<j} (-1)^(i+j) [T(.. x_i, x_j omitted ..), [a(x_i), a(x_j)]]
// with a = alpha^(m-1).
inline Cochain d_alpha_gamma(const Algebra& L, const Cochain& T) {
    std::size_t d = L.dim(), m = T.arity, n2 = m + 2;
    if (m < 1) throw std::invalid_argument("d_alpha_gamma needs arity >= 1");
    Cochain out(d, n2);
    const Mat& Ap = L.alpha_power(static_cast<unsigned>(m - 1));
    for_each_tuple(d, n2, [&](const std::vector<std::size_t>& tup) {
        std::vector<Vec> xs, axs;
        for (std::size_t i : tup) {
            xs.push_back(L.basis(i));
            axs.push_back(Ap * xs.back());
        }
        Vec acc(d, Rational(0));
        for (std::size_t i = 2; i <= n2; ++i) {
            std::vector<Vec> args;
            for (std::size_t t = 2; t <= n2; ++t)
                if (t != i) args.push_back(xs[t - 1]);
            Vec w = L.bracket(L.bracket(axs[0], axs[i - 1]), T.eval(args));
            int s = (i % 2 == 0) ? 1 : -1;
            for (std::size_t k = 0; k < d; ++k) acc[k] += s * w[k];
        }
        for (std::size_t i = 2; i <= n2; ++i)
            for (std::size_t j = i + 1; j <= n2; ++j) {
                std::vector<Vec> args;
                for (std::size_t t = 1; t <= n2; ++t)
                    if (t != i && t != j) args.push_back(xs[t - 1]);
                Vec w = L.bracket(T.eval(args), L.bracket(axs[i - 1], axs[j - 1]));
                int s = ((i + j) % 2 == 0) ? 1 : -1;
                for (std::size_t k = 0; k < d; ++k) acc[k] += s * w[k];
            }
        for (std::size_t k = 0; k < d; ++k)
            if (!acc[k].is_zero()) out.at(k, tup) = acc[k];
    });
    return out;
}

// ---------------------------------------------------------------------------
// Degree-n cochain pairs and the assembled differential.

struct PairCochain {
    std::size_t degree = 1;    // n >= 1
    Cochain gamma;             // arity n
    Cochain alpha;             // arity n-1; empty tensor when n == 1

    static PairCochain zero(std::size_t dim, std::size_t n) {
        PairCochain p;
        p.degree = n;
        p.gamma = Cochain(dim, n);
        if (n >= 2) p.alpha = Cochain(dim, n - 1);
        return p;
    }

    bool has_alpha() const { return degree >= 2; }

    bool is_zero() const {
        return gamma.is_zero() && (!has_alpha() || alpha.is_zero());
    }
    bool operator==(const PairCochain& o) const {
        return degree == o.degree && gamma == o.gamma &&
               (!has_alpha() || alpha == o.alpha);
    }
    bool operator!=(const PairCochain& o) const { return !(*this == o); }

    PairCochain operator+(const PairCochain& o) const {
        if (degree != o.degree) throw std::invalid_argument("pair sum degree mismatch");
        PairCochain r = *this;
        r.gamma = gamma + o.gamma;
        if (has_alpha()) r.alpha = alpha + o.alpha;
        return r;
    }
    PairCochain operator-(const PairCochain& o) const {
        if (degree != o.degree) throw std::invalid_argument("pair difference degree mismatch");
        PairCochain r = *this;
        r.gamma = gamma - o.gamma;
        if (has_alpha()) r.alpha = alpha - o.alpha;
        return r;
    }
    PairCochain operator*(const Rational& s) const {
        PairCochain r = *this;
        r.gamma = gamma * s;
        if (has_alpha()) r.alpha = alpha * s;
        return r;
    }
};

// Dimensions of the degree-n slice: (gamma block, alpha block).
inline std::pair<std::size_t, std::size_t> slice_dims(std::size_t dim, std::size_t n) {
    return {ipow(dim, n + 1), n >= 2 ? ipow(dim, n) : 0};
}

inline Vec flatten(const PairCochain& p) {
    Vec v = p.gamma.t;
    if (p.has_alpha()) v.insert(v.end(), p.alpha.t.begin(), p.alpha.t.end());
    return v;
}

inline PairCochain unflatten(std::size_t dim, std::size_t n, const Vec& v) {
    auto [gd, ad] = slice_dims(dim, n);
    if (v.size() != gd + ad) throw std::invalid_argument("unflatten: wrong coordinate length");
    PairCochain p = PairCochain::zero(dim, n);
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(gd), p.gamma.t.begin());
    if (ad) std::copy(v.begin() + static_cast<std::ptrdiff_t>(gd), v.end(), p.alpha.t.begin());
    return p;
}

// d(phi, psi) = (d_gg(phi) - d_ag(psi), d_ga(phi) - d_aa(psi)).
inline PairCochain differential(const Algebra& L, const PairCochain& p) {
    std::size_t n = p.degree;
    PairCochain out;
    out.degree = n + 1;
    out.gamma = d_gamma_gamma(L, p.gamma);
    out.alpha = d_gamma_alpha(L, p.gamma);
    if (p.has_alpha()) {
        out.gamma = out.gamma - d_alpha_gamma(L, p.alpha);
        out.alpha = out.alpha - d_alpha_alpha(L, p.alpha);
    }
    return out;
}

// Matrix of the degree-n differential. Columns are the basis cochains,
// gamma block first (value index k outermost, then row-major arguments),
// then the alpha block; rows flatten the degree-(n+1) pair the same way.
inline Mat out_matrix(const Algebra& L, std::size_t n) {
    std::size_t d = L.dim();
    auto [gd, ad] = slice_dims(d, n);
    auto [rg, ra] = slice_dims(d, n + 1);
    Mat M(rg + ra, gd + ad);
    for (std::size_t f = 0; f < gd; ++f) {
        auto [k, args] = decode_basis_index(d, n, f);
        PairCochain p = PairCochain::zero(d, n);
        p.gamma = basis_cochain(d, n, k, args);
        Vec col = flatten(differential(L, p));
        for (std::size_t r = 0; r < col.size(); ++r) M.at(r, f) = col[r];
    }
    for (std::size_t f = 0; f < ad; ++f) {
        auto [k, args] = decode_basis_index(d, n - 1, f);
        PairCochain p = PairCochain::zero(d, n);
        p.alpha = basis_cochain(d, n - 1, k, args);
        Vec col = flatten(differential(L, p));
        for (std::size_t r = 0; r < col.size(); ++r) M.at(r, gd + f) = col[r];
    }
    return M;
}

// The bracket of the algebra as an arity-2 tensor.
inline Cochain structure_cochain(const Algebra& L) {
    std::size_t d = L.dim();
    Cochain T(d, 2);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Rational& c = L.structure(i, j, k);
                if (!c.is_zero()) T.at(k, {i, j}) = c;
            }
    return T;
}

inline Cochain random_cochain(std::size_t dim, std::size_t m, std::uint64_t seed,
                              int span = 5) {
    // Deterministic small-entry tensor for property tests.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-span, span);
    Cochain c(dim, m);
    for (auto& v : c.t) v = dist(rng);
    return c;
}

} // namespace homleib

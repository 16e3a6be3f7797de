// Graded circle product and bracket on multilinear cochains.
//
// CH^p consists of the alpha-compatible (p+1)-linear maps (p >= 0). The raw
// circle product and bracket below are defined on arbitrary tensors of the
// right arities; the ShiftedCochain wrapper enforces membership in CH and the
// typed operations certify that results stay inside it.
//
//   (psi o phi)(x_1..x_{p+q+1}) = sum_{k=1}^{q+1} (-1)^{p(k-1)} *
//       sum_{(p, q-k+1)-shuffles sigma of the window behind slot k}
//         sgn(sigma) psi(a x_1,..,a x_{k-1},
//                        phi(x_k, sigma-first-block), a sigma-second-block)
// with a = alpha^p, and [psi, phi] = psi o phi + (-1)^(pq+1) phi o psi.
#pragma once

#include "cochain.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homleib {

struct Shuffle {
    std::vector<std::size_t> sigma; // permutation of {0..p+q-1}
    int sign;                       // (-1)^inversions
};

// All (p,q)-shuffles in lexicographic order of the first block.
inline const std::vector<Shuffle>& shuffles(std::size_t p, std::size_t q) {
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<Shuffle>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, q);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t n = p + q;
    std::vector<Shuffle> out;
    std::vector<std::size_t> first(p);
    for (std::size_t i = 0; i < p; ++i) first[i] = i;
    while (true) {
        std::vector<std::size_t> sigma = first;
        std::vector<bool> used(n, false);
        for (std::size_t v : first) used[v] = true;
        for (std::size_t v = 0; v < n; ++v)
            if (!used[v]) sigma.push_back(v);
        int inv = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (sigma[a] > sigma[b]) ++inv;
        out.push_back({std::move(sigma), (inv % 2 == 0) ? 1 : -1});
        // next p-combination of {0..n-1} in lexicographic order
        if (p == 0) break;
        std::size_t i = p;
        while (i > 0) {
            --i;
            if (first[i] != i + n - p) break;
            if (i == 0) { i = n; break; }
        }
        if (i == n) break;
        ++first[i];
        for (std::size_t j = i + 1; j < p; ++j) first[j] = first[j - 1] + 1;
    }
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

// Raw circle product on tensors: psi has arity q+1, phi arity p+1.
inline Cochain circle(const Algebra& L, const Cochain& psi, const Cochain& phi) {
    if (psi.arity < 1 || phi.arity < 1)
        throw std::invalid_argument("circle: arity-0 cochains are not supported");
    if (psi.dim != L.dim() || phi.dim != L.dim())
        throw std::invalid_argument("circle: dimension mismatch with the algebra");
    std::size_t q = psi.arity - 1, p = phi.arity - 1;
    std::size_t d = L.dim(), N = p + q + 1;
    Cochain out(d, N);
    const Mat& Ap = L.alpha_power(static_cast<unsigned>(p));
    for_each_tuple(d, N, [&](const std::vector<std::size_t>& tup) {
        std::vector<Vec> xs, axs;
        for (std::size_t i : tup) {
            xs.push_back(L.basis(i));
            axs.push_back(Ap * xs.back());
        }
        Vec acc(d, Rational(0));
        for (std::size_t k = 1; k <= q + 1; ++k) {
            int s_k = ((p * (k - 1)) % 2 == 0) ? 1 : -1;
            std::vector<std::size_t> window; // slots behind slot k (0-based)
            for (std::size_t t = k; t < N; ++t) window.push_back(t);
            for (const Shuffle& sh : shuffles(p, q - k + 1)) {
                std::vector<Vec> phi_args;
                phi_args.push_back(xs[k - 1]);
                for (std::size_t t = 0; t < p; ++t)
                    phi_args.push_back(xs[window[sh.sigma[t]]]);
                Vec inner = phi.eval(phi_args);
                std::vector<Vec> psi_args;
                for (std::size_t t = 0; t + 1 < k; ++t) psi_args.push_back(axs[t]);
                psi_args.push_back(inner);
                for (std::size_t t = p; t < window.size(); ++t)
                    psi_args.push_back(axs[window[sh.sigma[t]]]);
                Vec v = psi.eval(psi_args);
                int s = s_k * sh.sign;
                for (std::size_t kk = 0; kk < d; ++kk) acc[kk] += s * v[kk];
            }
        }
        for (std::size_t kk = 0; kk < d; ++kk)
            if (!acc[kk].is_zero()) out.at(kk, tup) = acc[kk];
    });
    return out;
}

// Raw graded bracket [psi, phi] = psi o phi + (-1)^(pq+1) phi o psi.
inline Cochain graded_bracket(const Algebra& L, const Cochain& psi, const Cochain& phi) {
    std::size_t q = psi.arity - 1, p = phi.arity - 1;
    Cochain a = circle(L, psi, phi);
    Cochain b = circle(L, phi, psi);
    int s = ((p * q + 1) % 2 == 0) ? 1 : -1;
    return a + b * Rational(s);
}

// ---------------------------------------------------------------------------
// Typed layer: elements of CH^p with the compatibility invariant enforced.

class ShiftedCochain {
public:
    // Wraps a user-supplied tensor; rejects incompatible or arity-0 input.
    ShiftedCochain(const Algebra& L, Cochain tensor) : tensor_(std::move(tensor)) {
        if (tensor_.arity < 1)
            throw std::invalid_argument("CH^(-1) (arity 0) is not part of this complex");
        if (tensor_.dim != L.dim())
            throw std::invalid_argument("cochain dimension mismatch with the algebra");
        if (!d_gamma_alpha(L, tensor_).is_zero())
            throw std::invalid_argument("cochain is not alpha-compatible");
    }

    std::size_t ch_degree() const { return tensor_.arity - 1; }
    const Cochain& tensor() const { return tensor_; }

private:
    Cochain tensor_;
};

namespace detail {
inline ShiftedCochain certify(const Algebra& L, Cochain&& t, const char* op) {
    if (!d_gamma_alpha(L, t).is_zero())
        throw std::logic_error(std::string(op) + " left the compatible subspace");
    return ShiftedCochain(L, std::move(t));
}
} // namespace detail

inline ShiftedCochain circle(const Algebra& L, const ShiftedCochain& psi,
                             const ShiftedCochain& phi) {
    return detail::certify(L, circle(L, psi.tensor(), phi.tensor()), "circle product");
}

inline ShiftedCochain graded_bracket(const Algebra& L, const ShiftedCochain& psi,
                                     const ShiftedCochain& phi) {
    return detail::certify(L, graded_bracket(L, psi.tensor(), phi.tensor()),
                           "graded bracket");
}

// Graded differential on CH^p: (-1)^(p+1) d_gg, producing CH^(p+1).
inline ShiftedCochain graded_differential(const Algebra& L, const ShiftedCochain& phi) {
    std::size_t p = phi.ch_degree();
    Cochain t = d_gamma_gamma(L, phi.tensor());
    if ((p + 1) % 2 != 0) t = t * Rational(-1);
    return detail::certify(L, std::move(t), "graded differential");
}

// The structure bracket as an element of CH^1 (compatible by
// multiplicativity of alpha).
inline ShiftedCochain structure_element(const Algebra& L) {
    return ShiftedCochain(L, structure_cochain(L));
}

} // namespace homleib

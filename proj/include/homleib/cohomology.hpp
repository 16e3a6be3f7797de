// Cohomology of the alpha-type complex: dimension tables, cocycle and
// coboundary membership with witnesses, canonical representatives, and the
// compatible (gamma-only) subcomplex.
#pragma once

#include "cochain.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace homleib {

struct CohomologyRow {
    std::size_t degree = 0;
    std::size_t dim_cochains = 0;
    std::size_t dim_cocycles = 0;
    std::size_t dim_coboundaries = 0;
    std::size_t betti = 0;
};

inline CohomologyRow cohomology_row(const Algebra& L, std::size_t n,
                                    const Mat* out_cached = nullptr,
                                    const Mat* in_cached = nullptr) {
    if (n < 1) throw std::invalid_argument("cohomology degree must be >= 1");
    auto [gd, ad] = slice_dims(L.dim(), n);
    CohomologyRow row;
    row.degree = n;
    row.dim_cochains = gd + ad;
    Mat out = out_cached ? *out_cached : out_matrix(L, n);
    row.dim_cocycles = row.dim_cochains - rank(out);
    if (n >= 2) {
        Mat in = in_cached ? *in_cached : out_matrix(L, n - 1);
        row.dim_coboundaries = rank(in);
    }
    if (row.dim_coboundaries > row.dim_cocycles)
        throw std::logic_error("coboundaries exceed cocycles; differential is broken");
    row.betti = row.dim_cocycles - row.dim_coboundaries;
    return row;
}

inline std::vector<CohomologyRow> cohomology_table(const Algebra& L, std::size_t max_degree) {
    if (max_degree < 1) throw std::invalid_argument("max degree must be >= 1");
    std::vector<CohomologyRow> rows;
    Mat prev; // out matrix of the previous degree
    for (std::size_t n = 1; n <= max_degree; ++n) {
        Mat out = out_matrix(L, n);
        rows.push_back(cohomology_row(L, n, &out, n >= 2 ? &prev : nullptr));
        prev = std::move(out);
    }
    return rows;
}

inline bool is_cocycle(const Algebra& L, const PairCochain& p) {
    return differential(L, p).is_zero();
}

// Witness w of degree n-1 with d(w) = p, when p is a coboundary.
inline std::optional<PairCochain> coboundary_witness(const Algebra& L, const PairCochain& p) {
    if (p.degree < 2) return std::nullopt; // nothing maps into degree 1
    std::size_t n = p.degree - 1;
    auto x = solve(out_matrix(L, n), flatten(p));
    if (!x) return std::nullopt;
    return unflatten(L.dim(), n, *x);
}

inline bool is_coboundary(const Algebra& L, const PairCochain& p) {
    return coboundary_witness(L, p).has_value();
}

// p and q are cohomologous when p - q is a coboundary; returns the witness.
inline std::optional<PairCochain> cohomologous(const Algebra& L, const PairCochain& p,
                                               const PairCochain& q) {
    if (p.degree != q.degree)
        throw std::invalid_argument("cohomologous: degree mismatch");
    return coboundary_witness(L, p - q);
}

// Canonical representatives of a basis of degree-n cohomology classes:
// greedy extension of the coboundary space by kernel basis vectors taken in
// their canonical (free-column) order.
inline std::vector<PairCochain> representatives(const Algebra& L, std::size_t n) {
    auto [gd, ad] = slice_dims(L.dim(), n);
    std::size_t amb = gd + ad;
    std::vector<Vec> ker = nullspace(out_matrix(L, n));
    std::vector<Vec> span; // columns: coboundary basis, then chosen representatives
    if (n >= 2) {
        Mat in = out_matrix(L, n - 1);
        for (std::size_t c = 0; c < in.cols(); ++c) {
            Vec col(amb);
            for (std::size_t r = 0; r < amb; ++r) col[r] = in.at(r, c);
            span.push_back(std::move(col));
        }
    }
    auto rank_of = [&](const std::vector<Vec>& cols) {
        Mat m(amb, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < amb; ++r) m.at(r, c) = cols[c][r];
        return rank(m);
    };
    std::size_t cur = rank_of(span);
    std::vector<PairCochain> reps;
    for (const Vec& v : ker) {
        span.push_back(v);
        std::size_t nr = rank_of(span);
        if (nr > cur) {
            cur = nr;
            reps.push_back(unflatten(L.dim(), n, v));
        } else {
            span.pop_back();
        }
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Compatible subcomplex: arity-n maps T with alpha . T = T . alpha^(x n),
// differentiated by d_gamma_gamma alone.

inline bool is_compatible(const Algebra& L, const Cochain& T) {
    return d_gamma_alpha(L, T).is_zero();
}

// Canonical basis of the compatible arity-m maps (kernel of the
// compatibility-defect matrix).
inline std::vector<Cochain> compatible_basis(const Algebra& L, std::size_t m) {
    std::size_t d = L.dim();
    std::size_t N = ipow(d, m + 1);
    Mat M(N, N);
    for (std::size_t c = 0; c < N; ++c) {
        auto [k, args] = decode_basis_index(d, m, c);
        Cochain img = d_gamma_alpha(L, basis_cochain(d, m, k, args));
        for (std::size_t r = 0; r < N; ++r) M.at(r, c) = img.t[r];
    }
    std::vector<Cochain> basis;
    for (Vec& v : nullspace(M)) {
        Cochain cc(d, m);
        cc.t = std::move(v);
        basis.push_back(std::move(cc));
    }
    return basis;
}

struct RestrictedRow {
    std::size_t degree = 0;
    std::size_t dim_subspace = 0;
    std::size_t dim_cocycles = 0;
    std::size_t dim_coboundaries = 0;
    std::size_t betti = 0;
};

namespace detail {
// Ambient-coordinate matrix whose columns are d_gg of the compatible basis.
inline Mat restricted_image(const Algebra& L, const std::vector<Cochain>& basis,
                            std::size_t m) {
    std::size_t rows = ipow(L.dim(), m + 2);
    Mat M(rows, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        Cochain img = d_gamma_gamma(L, basis[c]);
        if (!is_compatible(L, img))
            throw std::logic_error("restricted differential left the compatible subspace");
        for (std::size_t r = 0; r < rows; ++r) M.at(r, c) = img.t[r];
    }
    return M;
}
} // namespace detail

inline RestrictedRow restricted_row(const Algebra& L, std::size_t n) {
    if (n < 1) throw std::invalid_argument("restricted degree must be >= 1");
    auto basis_n = compatible_basis(L, n);
    Mat img_n = detail::restricted_image(L, basis_n, n);
    RestrictedRow row;
    row.degree = n;
    row.dim_subspace = basis_n.size();
    row.dim_cocycles = basis_n.size() - rank(img_n);
    if (n >= 2) {
        auto basis_p = compatible_basis(L, n - 1);
        row.dim_coboundaries = rank(detail::restricted_image(L, basis_p, n - 1));
    }
    if (row.dim_coboundaries > row.dim_cocycles)
        throw std::logic_error("restricted coboundaries exceed cocycles");
    row.betti = row.dim_cocycles - row.dim_coboundaries;
    return row;
}

inline std::vector<RestrictedRow> restricted_table(const Algebra& L, std::size_t max_degree) {
    std::vector<RestrictedRow> rows;
    for (std::size_t n = 1; n <= max_degree; ++n) rows.push_back(restricted_row(L, n));
    return rows;
}

} // namespace homleib

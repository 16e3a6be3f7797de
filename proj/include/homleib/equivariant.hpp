#pragma once
// Finite-group symmetry: validated multiplication tables, linear actions on an
// algebra, the induced action on cochain pairs, Reynolds averaging, invariant
// subcomplexes with their restricted differentials and cohomology, fixed-point
// subalgebras, and equivariant deformation extension.

#include <homleib/deformation.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homleib {

// A finite group presented by its multiplication table (0-based indices).
// The constructor rejects tables that fail the group axioms.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<std::size_t>> table)
        : table_(std::move(table)) {
        std::size_t n = table_.size();
        if (n == 0) throw std::invalid_argument("multiplication table is empty");
        for (const auto& row : table_) {
            if (row.size() != n)
                throw std::invalid_argument("multiplication table is not square");
            for (std::size_t v : row)
                if (v >= n)
                    throw std::invalid_argument(
                        "multiplication table entry out of range");
        }
        bool found = false;
        for (std::size_t cand = 0; cand < n && !found; ++cand) {
            bool is_id = true;
            for (std::size_t x = 0; x < n; ++x)
                if (table_[cand][x] != x || table_[x][cand] != x) {
                    is_id = false;
                    break;
                }
            if (is_id) {
                identity_ = cand;
                found = true;
            }
        }
        if (!found)
            throw std::invalid_argument("multiplication table has no identity element");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw std::invalid_argument(
                            "multiplication table is not associative");
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                    inverse_[a] = b;
                    break;
                }
            if (inverse_[a] == n)
                throw std::invalid_argument("group element " + std::to_string(a) +
                                            " has no inverse");
        }
    }

    static FiniteGroup cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return FiniteGroup(std::move(t));
    }

    std::size_t order() const { return table_.size(); }
    std::size_t mult(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t identity() const { return identity_; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

private:
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

// A linear action of a finite group: one invertible matrix per element.
class GroupAction {
public:
    GroupAction(FiniteGroup group, std::vector<Mat> reps)
        : group_(std::move(group)), reps_(std::move(reps)) {
        if (reps_.size() != group_.order())
            throw std::invalid_argument(
                "need exactly one representation matrix per group element");
        if (reps_.empty()) throw std::invalid_argument("empty representation");
        std::size_t d = reps_[0].rows();
        inv_reps_.reserve(reps_.size());
        for (std::size_t g = 0; g < reps_.size(); ++g) {
            if (reps_[g].rows() != d || reps_[g].cols() != d)
                throw std::invalid_argument(
                    "representation matrices must be square of equal size");
            auto inv = reps_[g].inverse();
            if (!inv)
                throw std::invalid_argument("representation matrix for element " +
                                            std::to_string(g) + " is singular");
            inv_reps_.push_back(*inv);
        }
    }

    const FiniteGroup& group() const { return group_; }
    std::size_t dim() const { return reps_[0].rows(); }
    const Mat& rep(std::size_t g) const { return reps_[g]; }
    const Mat& inv_rep(std::size_t g) const { return inv_reps_[g]; }

private:
    FiniteGroup group_;
    std::vector<Mat> reps_;
    std::vector<Mat> inv_reps_;
};

// One failed action axiom, with the elements and basis vectors that expose it.
struct ActionViolation {
    std::string kind; // "identity" | "homomorphism" | "bracket_equivariance" |
                      // "alpha_equivariance"
    std::vector<std::size_t> elements;      // group elements involved
    std::vector<std::size_t> basis_indices; // algebra basis indices involved
    Vec lhs;
    Vec rhs;

    std::string describe() const {
        std::string s = kind + " fails at group element(s) (";
        for (std::size_t i = 0; i < elements.size(); ++i)
            s += (i ? "," : "") + std::to_string(elements[i] + 1);
        s += ")";
        if (!basis_indices.empty()) {
            s += ", basis (";
            for (std::size_t i = 0; i < basis_indices.size(); ++i)
                s += (i ? "," : "") + std::to_string(basis_indices[i] + 1);
            s += ")";
        }
        return s;
    }
};

struct ActionReport {
    bool passed = true;
    std::vector<ActionViolation> violations;
};

// Check that the matrices define a group homomorphism commuting with both the
// bracket and the twist map.
inline ActionReport verify_action(const Algebra& L, const GroupAction& act) {
    if (act.dim() != L.dim())
        throw std::invalid_argument("action dimension does not match the algebra");
    ActionReport rep;
    auto& G = act.group();
    std::size_t d = L.dim(), n = G.order();
    if (act.rep(G.identity()) != Mat::identity(d))
        rep.violations.push_back(
            {"identity", {G.identity()}, {}, {}, {}});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (act.rep(a) * act.rep(b) != act.rep(G.mult(a, b)))
                rep.violations.push_back({"homomorphism", {a, b}, {}, {}, {}});
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Vec lhs = act.rep(g) * L.bracket(L.basis(i), L.basis(j));
                Vec rhs = L.bracket(act.rep(g) * L.basis(i), act.rep(g) * L.basis(j));
                if (lhs != rhs)
                    rep.violations.push_back(
                        {"bracket_equivariance", {g}, {i, j}, lhs, rhs});
            }
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < d; ++i) {
            Vec lhs = L.alpha(act.rep(g) * L.basis(i));
            Vec rhs = act.rep(g) * L.alpha(L.basis(i));
            if (lhs != rhs)
                rep.violations.push_back(
                    {"alpha_equivariance", {g}, {i}, lhs, rhs});
        }
    rep.passed = rep.violations.empty();
    return rep;
}

// (g.T)(x_1..x_m) = rho(g) T(rho(g)^-1 x_1, ..., rho(g)^-1 x_m)
inline Cochain act_on(const GroupAction& act, std::size_t g, const Cochain& T) {
    std::size_t d = T.dim, m = T.arity;
    const Mat& rho = act.rep(g);
    const Mat& ri = act.inv_rep(g);
    Cochain out(d, m);
    for_each_tuple(d, m, [&](const std::vector<std::size_t>& tup) {
        std::vector<Vec> args;
        args.reserve(m);
        for (std::size_t t : tup) {
            Vec col(d);
            for (std::size_t r = 0; r < d; ++r) col[r] = ri.at(r, t);
            args.push_back(std::move(col));
        }
        Vec v = rho * T.eval(args);
        for (std::size_t k = 0; k < d; ++k)
            if (!v[k].is_zero()) out.at(k, tup) = v[k];
    });
    return out;
}

// Componentwise action on a degree-n pair.
inline PairCochain act_on(const GroupAction& act, std::size_t g,
                          const PairCochain& p) {
    PairCochain out = p;
    out.gamma = act_on(act, g, p.gamma);
    if (p.has_alpha()) out.alpha = act_on(act, g, p.alpha);
    return out;
}

// Group average; a projector onto the invariant subspace.
inline PairCochain reynolds(const GroupAction& act, const PairCochain& p) {
    std::size_t n = act.group().order();
    PairCochain tot = PairCochain::zero(p.gamma.dim, p.degree);
    for (std::size_t g = 0; g < n; ++g) tot = tot + act_on(act, g, p);
    Rational inv_n = make_rational(1, static_cast<long long>(n));
    return tot * inv_n;
}

namespace detail {

// Matrix of g acting on flattened arity-m cochains:
//   entry[(k',tup'), (k,tup)] = rho[k'][k] * prod_t rho_inv[tup_t][tup'_t].
inline Mat action_matrix_gamma(const GroupAction& act, std::size_t g,
                               std::size_t m) {
    std::size_t d = act.dim();
    const Mat& rho = act.rep(g);
    const Mat& ri = act.inv_rep(g);
    std::size_t N = ipow(d, m + 1);
    Mat out(N, N);
    std::vector<std::size_t> tup_r, tup_c;
    for (std::size_t row = 0; row < N; ++row) {
        auto [kr, tr] = decode_basis_index(d, m, row);
        for (std::size_t col = 0; col < N; ++col) {
            auto [kc, tc] = decode_basis_index(d, m, col);
            Rational v = rho.at(kr, kc);
            if (v.is_zero()) continue;
            for (std::size_t t = 0; t < m && !v.is_zero(); ++t)
                v *= ri.at(tc[t], tr[t]);
            out.at(row, col) = v;
        }
    }
    return out;
}

// Block-diagonal action matrix on flattened degree-n pairs.
inline Mat pair_action_matrix(const GroupAction& act, std::size_t g,
                              std::size_t n) {
    std::size_t d = act.dim();
    auto [gd, ad] = slice_dims(d, n);
    Mat gm = action_matrix_gamma(act, g, n);
    Mat out(gd + ad, gd + ad);
    for (std::size_t r = 0; r < gd; ++r)
        for (std::size_t c = 0; c < gd; ++c) out.at(r, c) = gm.at(r, c);
    if (ad) {
        Mat am = action_matrix_gamma(act, g, n - 1);
        for (std::size_t r = 0; r < ad; ++r)
            for (std::size_t c = 0; c < ad; ++c)
                out.at(gd + r, gd + c) = am.at(r, c);
    }
    return out;
}

inline Mat columns_matrix(const std::vector<Vec>& cols, std::size_t rows) {
    Mat M(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) M.at(r, c) = cols[c][r];
    return M;
}

} // namespace detail

// Canonical basis of the invariant degree-n pairs: the fixed points of the
// Reynolds projector, obtained as the nullspace of (reynolds - identity).
inline std::vector<Vec> invariant_basis(const GroupAction& act, std::size_t n) {
    std::size_t d = act.dim();
    auto [gd, ad] = slice_dims(d, n);
    std::size_t N = gd + ad;
    Mat R(N, N);
    for (std::size_t g = 0; g < act.group().order(); ++g)
        R = R + detail::pair_action_matrix(act, g, n);
    Rational inv_n = make_rational(1, static_cast<long long>(act.group().order()));
    R = R * inv_n;
    return nullspace(R - Mat::identity(N));
}

// The differential from invariant degree-n pairs to invariant degree-(n+1)
// pairs, expressed in the canonical invariant bases.
struct RestrictedDifferential {
    std::vector<Vec> domain_basis;   // invariant degree-n pairs (flattened)
    std::vector<Vec> codomain_basis; // invariant degree-(n+1) pairs (flattened)
    Mat matrix;                      // codomain coords of d(domain basis)
};

inline RestrictedDifferential restricted_differential(const Algebra& L,
                                                      const GroupAction& act,
                                                      std::size_t n) {
    if (act.dim() != L.dim())
        throw std::invalid_argument("action dimension does not match the algebra");
    RestrictedDifferential out;
    out.domain_basis = invariant_basis(act, n);
    out.codomain_basis = invariant_basis(act, n + 1);
    auto [gd1, ad1] = slice_dims(L.dim(), n + 1);
    Mat D = out_matrix(L, n);
    Mat M = detail::columns_matrix(out.codomain_basis, gd1 + ad1);
    out.matrix = Mat(out.codomain_basis.size(), out.domain_basis.size());
    for (std::size_t c = 0; c < out.domain_basis.size(); ++c) {
        Vec db = D * out.domain_basis[c];
        auto x = solve(M, db);
        if (!x)
            throw std::logic_error(
                "differential left the invariant subspace at degree " +
                std::to_string(n));
        for (std::size_t r = 0; r < x->size(); ++r) out.matrix.at(r, c) = (*x)[r];
    }
    return out;
}

struct EquivariantRow {
    std::size_t degree = 0;
    std::size_t dim_invariant = 0;
    std::size_t dim_cocycles = 0;
    std::size_t dim_coboundaries = 0;
    std::size_t betti = 0;
};

inline EquivariantRow equivariant_row_from(
    const RestrictedDifferential& at_n,
    const RestrictedDifferential* at_prev, std::size_t n) {
    EquivariantRow row;
    row.degree = n;
    row.dim_invariant = at_n.domain_basis.size();
    row.dim_cocycles = row.dim_invariant - rank(at_n.matrix);
    row.dim_coboundaries = at_prev ? rank(at_prev->matrix) : 0;
    if (row.dim_coboundaries > row.dim_cocycles)
        throw std::logic_error("restricted coboundaries exceed cocycles");
    row.betti = row.dim_cocycles - row.dim_coboundaries;
    return row;
}

inline EquivariantRow equivariant_row(const Algebra& L, const GroupAction& act,
                                      std::size_t n) {
    if (n < 1) throw std::invalid_argument("cohomology degree starts at 1");
    auto at_n = restricted_differential(L, act, n);
    if (n == 1) return equivariant_row_from(at_n, nullptr, n);
    auto prev = restricted_differential(L, act, n - 1);
    return equivariant_row_from(at_n, &prev, n);
}

inline std::vector<EquivariantRow> equivariant_table(const Algebra& L,
                                                     const GroupAction& act,
                                                     std::size_t max_degree) {
    if (max_degree < 1) throw std::invalid_argument("cohomology degree starts at 1");
    std::vector<EquivariantRow> rows;
    std::optional<RestrictedDifferential> prev;
    for (std::size_t n = 1; n <= max_degree; ++n) {
        auto cur = restricted_differential(L, act, n);
        rows.push_back(equivariant_row_from(cur, prev ? &*prev : nullptr, n));
        prev = std::move(cur);
    }
    return rows;
}

// The fixed-point subalgebra of a subset of group elements, together with the
// embedding of its basis into the ambient algebra.  The subset must be closed
// under multiplication (hence a subgroup).  For a verified action the bracket
// and twist always preserve the fixed subspace; a failure there is internal.
struct FixedPoints {
    Algebra algebra;
    std::vector<Vec> embedding; // columns: new basis vectors in ambient coords
};

inline FixedPoints fixed_subalgebra(const Algebra& L, const GroupAction& act,
                                    const std::vector<std::size_t>& subset) {
    if (act.dim() != L.dim())
        throw std::invalid_argument("action dimension does not match the algebra");
    if (subset.empty()) throw std::invalid_argument("subset of group elements is empty");
    for (std::size_t h : subset)
        if (h >= act.group().order())
            throw std::invalid_argument("subset element out of range");
    for (std::size_t h1 : subset)
        for (std::size_t h2 : subset) {
            std::size_t p = act.group().mult(h1, h2);
            bool in = false;
            for (std::size_t h : subset)
                if (h == p) in = true;
            if (!in)
                throw std::invalid_argument(
                    "subset is not closed under the group operation");
        }
    std::size_t d = L.dim();
    Mat stacked(subset.size() * d, d);
    for (std::size_t s = 0; s < subset.size(); ++s) {
        Mat diff = act.rep(subset[s]) - Mat::identity(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                stacked.at(s * d + i, j) = diff.at(i, j);
    }
    std::vector<Vec> B = nullspace(stacked);
    std::size_t k = B.size();
    Mat M = detail::columns_matrix(B, d);
    std::vector<StructureEntry> entries;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Vec v = L.bracket(B[i], B[j]);
            auto x = solve(M, v);
            if (!x)
                throw std::logic_error("bracket does not preserve the fixed subspace");
            for (std::size_t t = 0; t < k; ++t)
                if (!(*x)[t].is_zero()) entries.push_back({i, j, t, (*x)[t]});
        }
    Mat A(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec v = L.alpha(B[j]);
        auto x = solve(M, v);
        if (!x)
            throw std::logic_error("twist map does not preserve the fixed subspace");
        for (std::size_t t = 0; t < k; ++t) A.at(t, j) = (*x)[t];
    }
    return {make_algebra(k, entries, A), std::move(B)};
}

// First jet order whose data is not fixed by the action, if any: the bilinear
// jets must be invariant cochains and the twist jets must commute with every
// representation matrix.
inline std::optional<std::size_t> first_nonequivariant_jet(
    const GroupAction& act, const TruncatedDeformation& D) {
    for (std::size_t s = 0; s <= D.order(); ++s)
        for (std::size_t g = 0; g < act.group().order(); ++g) {
            if (act_on(act, g, D.m(s)) != D.m(s)) return s;
            if (act.rep(g) * D.a(s) != D.a(s) * act.rep(g)) return s;
        }
    return std::nullopt;
}

// Extend an equivariant deformation one order inside the invariant complex:
// express the obstruction in invariant degree-3 coordinates and solve the
// restricted differential.  Failure to solve means the class is a genuine
// equivariant obstruction; the extension, when found, is invariant by
// construction.
inline ExtensionResult equivariant_extend(const Algebra& L, const GroupAction& act,
                                          const TruncatedDeformation& D) {
    auto rd = restricted_differential(L, act, 2);
    auto obs = obstruction(L, D);
    ExtensionResult res{std::nullopt, obs};
    auto [gd3, ad3] = slice_dims(L.dim(), 3);
    Mat M3 = detail::columns_matrix(rd.codomain_basis, gd3 + ad3);
    auto c3 = solve(M3, flatten(obs.cochain));
    if (!c3)
        throw std::logic_error(
            "obstruction of equivariant jets left the invariant subspace");
    auto x = solve(rd.matrix, *c3);
    if (!x) return res;
    auto [gd2, ad2] = slice_dims(L.dim(), 2);
    Vec amb(gd2 + ad2, Rational(0));
    for (std::size_t t = 0; t < x->size(); ++t)
        for (std::size_t i = 0; i < amb.size(); ++i)
            amb[i] += (*x)[t] * rd.domain_basis[t][i];
    PairCochain next = unflatten(L.dim(), 2, amb);
    auto m_jets = D.m_jets();
    auto a_jets = D.a_jets();
    m_jets.push_back(next.gamma);
    a_jets.push_back(cochain_to_matrix(next.alpha));
    res.extended = TruncatedDeformation(L, std::move(m_jets), std::move(a_jets));
    return res;
}

} // namespace homleib

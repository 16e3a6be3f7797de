// One-parameter formal deformations truncated at a finite order.
//
// A truncated deformation of (L, m_0, alpha_0) is a pair of jet families
//   m_t = m_0 + t m_1 + ... + t^N m_N,   alpha_t = alpha_0 + t a_1 + ... + t^N a_N
// required to satisfy, through order N in t,
//   m_t(alpha_t(x), m_t(y, z)) = m_t(m_t(x, y), alpha_t(z)) - m_t(m_t(x, z), alpha_t(y))
//   alpha_t(m_t(x, y)) = m_t(alpha_t(x), alpha_t(y)).
// Order-(N+1) continuation is controlled by an obstruction class: the
// extension equation is d(m_{N+1}, a_{N+1}) = Obs^N in the degree-2 complex.
#pragma once

#include "cohomology.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homleib {

class TruncatedDeformation {
public:
    // Jets for orders 1..order; order-0 jets are taken from the algebra.
    TruncatedDeformation(const Algebra& L, std::vector<Cochain> m_jets,
                         std::vector<Mat> a_jets)
        : dim_(L.dim()), order_(m_jets.size()) {
        if (m_jets.size() != a_jets.size())
            throw std::invalid_argument("deformation jet families have different lengths");
        m_.push_back(structure_cochain(L));
        a_.push_back(L.alpha_matrix());
        for (std::size_t s = 0; s < m_jets.size(); ++s) {
            if (m_jets[s].dim != dim_ || m_jets[s].arity != 2)
                throw std::invalid_argument("bracket jet has wrong shape");
            if (a_jets[s].rows() != dim_ || a_jets[s].cols() != dim_)
                throw std::invalid_argument("twist jet has wrong shape");
            m_.push_back(std::move(m_jets[s]));
            a_.push_back(std::move(a_jets[s]));
        }
    }

    static TruncatedDeformation trivial(const Algebra& L, std::size_t order) {
        std::vector<Cochain> m(order, Cochain(L.dim(), 2));
        std::vector<Mat> a(order, Mat(L.dim(), L.dim()));
        return TruncatedDeformation(L, std::move(m), std::move(a));
    }

    std::size_t dim() const { return dim_; }
    std::size_t order() const { return order_; }
    const Cochain& m(std::size_t s) const { return m_.at(s); }
    const Mat& a(std::size_t s) const { return a_.at(s); }

    // Jet families without the order-0 entries (document form).
    std::vector<Cochain> m_jets() const { return {m_.begin() + 1, m_.end()}; }
    std::vector<Mat> a_jets() const { return {a_.begin() + 1, a_.end()}; }

private:
    std::size_t dim_;
    std::size_t order_;
    std::vector<Cochain> m_; // size order_+1, m_[0] = structure tensor
    std::vector<Mat> a_;     // size order_+1, a_[0] = alpha matrix
};

// m_i circ_{a_j} m_k (x,y,z) = m_i(a_j x, m_k(y,z)) - m_i(m_k(x,y), a_j z)
//                                                   + m_i(m_k(x,z), a_j y)
inline Vec deformation_associator(const Cochain& mi, const Mat& aj, const Cochain& mk,
                                  const Vec& x, const Vec& y, const Vec& z) {
    Vec t1 = mi.eval({aj * x, mk.eval({y, z})});
    Vec t2 = mi.eval({mk.eval({x, y}), aj * z});
    Vec t3 = mi.eval({mk.eval({x, z}), aj * y});
    Vec out(t1.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = t1[k] - t2[k] + t3[k];
    return out;
}

struct DeformationFailure {
    std::string equation; // "deformation" or "multiplicativity"
    std::size_t order = 0;
    std::vector<std::size_t> basis_indices;
    Vec defect;
    std::string describe() const {
        std::ostringstream os;
        os << equation << " equation fails at order " << order << " on (";
        for (std::size_t t = 0; t < basis_indices.size(); ++t)
            os << (t ? "," : "") << "e" << (basis_indices[t] + 1);
        os << ")";
        return os.str();
    }
};

struct DeformationCheck {
    bool passed = true;
    std::vector<DeformationFailure> failures;
};

// Checks both defining equations at every order s = 0..N.
inline DeformationCheck verify(const Algebra& L, const TruncatedDeformation& D) {
    std::size_t d = L.dim();
    DeformationCheck rep;
    for (std::size_t s = 0; s <= D.order(); ++s) {
        for_each_tuple(d, 3, [&](const std::vector<std::size_t>& tup) {
            Vec x = L.basis(tup[0]), y = L.basis(tup[1]), z = L.basis(tup[2]);
            Vec tot(d, Rational(0));
            for (std::size_t i = 0; i <= s; ++i)
                for (std::size_t j = 0; i + j <= s; ++j) {
                    std::size_t k = s - i - j;
                    Vec v = deformation_associator(D.m(i), D.a(j), D.m(k), x, y, z);
                    for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
                }
            for (const auto& v : tot)
                if (!v.is_zero()) {
                    rep.passed = false;
                    rep.failures.push_back({"deformation", s, tup, tot});
                    break;
                }
        });
        for_each_tuple(d, 2, [&](const std::vector<std::size_t>& tup) {
            Vec x = L.basis(tup[0]), y = L.basis(tup[1]);
            Vec tot(d, Rational(0));
            for (std::size_t i = 0; i <= s; ++i)
                for (std::size_t j = 0; i + j <= s; ++j) {
                    std::size_t k = s - i - j;
                    Vec v = D.m(i).eval({D.a(j) * x, D.a(k) * y});
                    for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
                }
            for (std::size_t i = 0; i <= s; ++i) {
                std::size_t j = s - i;
                Vec v = D.a(i) * D.m(j).eval({x, y});
                for (std::size_t t = 0; t < d; ++t) tot[t] -= v[t];
            }
            for (const auto& v : tot)
                if (!v.is_zero()) {
                    rep.passed = false;
                    rep.failures.push_back({"multiplicativity", s, tup, tot});
                    break;
                }
        });
    }
    return rep;
}

// First nonvanishing jet pair (m_n, a_n) as a degree-2 cochain, with its order.
inline std::optional<std::pair<std::size_t, PairCochain>>
infinitesimal(const TruncatedDeformation& D) {
    for (std::size_t s = 1; s <= D.order(); ++s) {
        if (!D.m(s).is_zero() || !D.a(s).is_zero()) {
            PairCochain p = PairCochain::zero(D.dim(), 2);
            p.gamma = D.m(s);
            p.alpha = matrix_to_cochain(D.a(s));
            return std::make_pair(s, std::move(p));
        }
    }
    return std::nullopt;
}

struct ObstructionClass {
    std::size_t order = 0; // obstruction to extending past this order
    PairCochain cochain;   // degree 3: gamma arity 3, alpha arity 2

    bool is_zero() const { return cochain.is_zero(); }
};

// Obs^N of a verified order-N deformation. Index ranges run over all
// (i, j, k) with i + j + k = N + 1 and every index in [0, N]; the
// multiplicativity part's second sum runs over i + j = N + 1, 1 <= i, j <= N.
inline ObstructionClass obstruction(const Algebra& L, const TruncatedDeformation& D) {
    std::size_t d = L.dim(), n = D.order();
    ObstructionClass obs;
    obs.order = n;
    obs.cochain = PairCochain::zero(d, 3);
    for_each_tuple(d, 3, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]), z = L.basis(tup[2]);
        Vec tot(d, Rational(0));
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                if (i + j > n + 1) continue;
                std::size_t k = n + 1 - i - j;
                if (k > n) continue;
                Vec v = deformation_associator(D.m(i), D.a(j), D.m(k), x, y, z);
                for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
            }
        for (std::size_t k = 0; k < d; ++k)
            if (!tot[k].is_zero()) obs.cochain.gamma.at(k, tup) = -tot[k];
    });
    for_each_tuple(d, 2, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]);
        Vec tot(d, Rational(0));
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                if (i + j > n + 1) continue;
                std::size_t k = n + 1 - i - j;
                if (k > n) continue;
                Vec v = D.m(i).eval({D.a(j) * x, D.a(k) * y});
                for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
            }
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t j = n + 1 - i;
            if (j < 1 || j > n) continue;
            Vec v = D.a(i) * D.m(j).eval({x, y});
            for (std::size_t t = 0; t < d; ++t) tot[t] -= v[t];
        }
        for (std::size_t k = 0; k < d; ++k)
            if (!tot[k].is_zero()) obs.cochain.alpha.at(k, tup) = tot[k];
    });
    return obs;
}

struct ExtensionResult {
    std::optional<TruncatedDeformation> extended; // present on success
    ObstructionClass obstruction_class;           // always reported
};

// Solve d(m_{N+1}, a_{N+1}) = Obs^N; on success the returned deformation has
// order N+1 and satisfies both equations through that order.
inline ExtensionResult extend(const Algebra& L, const TruncatedDeformation& D) {
    std::size_t d = L.dim();
    ExtensionResult res;
    res.obstruction_class = obstruction(L, D);
    auto x = solve(out_matrix(L, 2), flatten(res.obstruction_class.cochain));
    if (!x) return res;
    PairCochain sol = unflatten(d, 2, *x);
    auto m_jets = D.m_jets();
    auto a_jets = D.a_jets();
    m_jets.push_back(sol.gamma);
    a_jets.push_back(cochain_to_matrix(sol.alpha));
    res.extended = TruncatedDeformation(L, std::move(m_jets), std::move(a_jets));
    return res;
}

// ---------------------------------------------------------------------------
// Gauge equivalence: formal base changes psi_t = Id + t psi_1 + ... + t^N psi_N.

class GaugeTransform {
public:
    // psi_jets holds orders 1..N; psi_0 = Id is implicit.
    GaugeTransform(std::size_t dim, std::vector<Mat> psi_jets)
        : dim_(dim) {
        psi_.push_back(Mat::identity(dim));
        for (auto& m : psi_jets) {
            if (m.rows() != dim || m.cols() != dim)
                throw std::invalid_argument("gauge jet has wrong shape");
            psi_.push_back(std::move(m));
        }
        // inverse jets: inv_0 = Id, inv_s = -sum_{i=1..s} psi_i inv_{s-i}
        inv_.push_back(Mat::identity(dim));
        for (std::size_t s = 1; s < psi_.size(); ++s) {
            Mat acc(dim, dim);
            for (std::size_t i = 1; i <= s; ++i) acc = acc + psi_[i] * inv_[s - i];
            inv_.push_back(acc * Rational(-1));
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t order() const { return psi_.size() - 1; }
    // psi_s for s <= order, zero beyond (the series is truncated).
    Mat psi(std::size_t s) const {
        return s < psi_.size() ? psi_[s] : Mat(dim_, dim_);
    }
    Mat inverse_jet(std::size_t s) const {
        return s < inv_.size() ? inv_[s] : extended_inverse(s);
    }

    GaugeTransform inverse(std::size_t order) const {
        std::vector<Mat> jets;
        for (std::size_t s = 1; s <= order; ++s) jets.push_back(inverse_jet(s));
        return GaugeTransform(dim_, std::move(jets));
    }

private:
    // Inverse jets beyond the stored order still obey the recursion, with
    // psi_s = 0 for s > order.
    Mat extended_inverse(std::size_t s) const {
        std::vector<Mat> inv(inv_.begin(), inv_.end());
        for (std::size_t t = inv.size(); t <= s; ++t) {
            Mat acc(dim_, dim_);
            for (std::size_t i = 1; i <= t && i < psi_.size(); ++i)
                acc = acc + psi_[i] * inv[t - i];
            inv.push_back(acc * Rational(-1));
        }
        return inv[s];
    }

    std::size_t dim_;
    std::vector<Mat> psi_;
    std::vector<Mat> inv_;
};

// Transported deformation:
//   m'_s = sum_{a+b+c+e=s} inv_a . m_b . (psi_c x psi_e)
//   a'_s = sum_{a+b+c=s}   inv_a . alpha_b . psi_c
inline TruncatedDeformation apply_gauge(const Algebra& L, const TruncatedDeformation& D,
                                        const GaugeTransform& G) {
    if (G.dim() != L.dim())
        throw std::invalid_argument("gauge dimension mismatch with the algebra");
    std::size_t d = L.dim(), N = D.order();
    std::vector<Cochain> m_new;
    std::vector<Mat> a_new;
    for (std::size_t s = 0; s <= N; ++s) {
        Cochain T(d, 2);
        for (std::size_t ai = 0; ai <= s; ++ai)
            for (std::size_t b = 0; ai + b <= s; ++b)
                for (std::size_t ci = 0; ai + b + ci <= s; ++ci) {
                    std::size_t e = s - ai - b - ci;
                    if (b > N) continue;
                    Mat inva = G.inverse_jet(ai), pc = G.psi(ci), pe = G.psi(e);
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t j = 0; j < d; ++j) {
                            Vec v = D.m(b).eval({pc * L.basis(i), pe * L.basis(j)});
                            v = inva * v;
                            for (std::size_t k = 0; k < d; ++k)
                                if (!v[k].is_zero()) T.at(k, {i, j}) += v[k];
                        }
                }
        Mat A(d, d);
        for (std::size_t ai = 0; ai <= s; ++ai)
            for (std::size_t b = 0; ai + b <= s; ++b) {
                std::size_t ci = s - ai - b;
                if (b > N) continue;
                A = A + G.inverse_jet(ai) * D.a(b) * G.psi(ci);
            }
        if (s >= 1) {
            m_new.push_back(std::move(T));
            a_new.push_back(std::move(A));
        } else {
            // order 0 must reproduce the base structure
            if (T != structure_cochain(L) || A != L.alpha_matrix())
                throw std::logic_error("gauge transport moved the order-0 structure");
        }
    }
    return TruncatedDeformation(L, std::move(m_new), std::move(a_new));
}

// ---------------------------------------------------------------------------
// Reduction and rigidity.

struct ReduceStep {
    std::size_t order;  // order of the infinitesimal that was gauged away
    Mat psi;            // the gauge jet used at that order
};

struct ReduceResult {
    TruncatedDeformation deformation;
    std::vector<ReduceStep> steps;
    // "trivial": all jets are zero now; "irreducible": the first
    // nonvanishing jet is not a coboundary; "exhausted": step budget hit.
    std::string verdict;
    std::size_t irreducible_order = 0; // set when verdict == "irreducible"
};

inline ReduceResult reduce(const Algebra& L, TruncatedDeformation D,
                           std::size_t max_steps = 16) {
    ReduceResult res{std::move(D), {}, "exhausted", 0};
    for (std::size_t step = 0; step < max_steps; ++step) {
        auto inf = infinitesimal(res.deformation);
        if (!inf) {
            res.verdict = "trivial";
            return res;
        }
        auto [n, p] = *inf;
        auto w = solve(out_matrix(L, 1), flatten(p));
        if (!w) {
            res.verdict = "irreducible";
            res.irreducible_order = n;
            return res;
        }
        Cochain wc(L.dim(), 1);
        wc.t = *w;
        Mat psi_n = cochain_to_matrix(wc) * Rational(-1);
        std::vector<Mat> jets(n, Mat(L.dim(), L.dim()));
        jets[n - 1] = psi_n; // orders 1..n with only order n nonzero
        GaugeTransform G(L.dim(), std::move(jets));
        res.deformation = apply_gauge(L, res.deformation, G);
        res.steps.push_back({n, psi_n});
    }
    return res;
}

struct RigidityReport {
    std::size_t betti2 = 0;
    std::size_t betti3 = 0;
    // "rigid" when betti2 = 0; "all 2-cocycles unobstructed" when betti3 = 0;
    // otherwise "inconclusive".
    std::string verdict;
};

inline std::string rigidity_verdict(std::size_t betti2, std::size_t betti3) {
    if (betti2 == 0) return "rigid";
    if (betti3 == 0) return "all 2-cocycles unobstructed";
    return "inconclusive";
}

inline RigidityReport rigidity(const Algebra& L) {
    RigidityReport rep;
    Mat out1 = out_matrix(L, 1);
    Mat out2 = out_matrix(L, 2);
    Mat out3 = out_matrix(L, 3);
    rep.betti2 = cohomology_row(L, 2, &out2, &out1).betti;
    rep.betti3 = cohomology_row(L, 3, &out3, &out2).betti;
    rep.verdict = rigidity_verdict(rep.betti2, rep.betti3);
    return rep;
}

} // namespace homleib

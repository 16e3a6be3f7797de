#pragma once
// Document format: parsing and canonical serialization of algebras with
// optional group, deformation, and gauge blocks.  All numbers are exact
// rationals; serialization is deterministic (entries sorted, keys sorted by
// the JSON library), so parse -> serialize -> parse is the identity.
//
// Shape of a document:
//   dim      : integer
//   bracket  : list of [i, j, k, num, den] quintuples, 1-based
//              (coefficient num/den of e_k in [e_i, e_j]; omitted means zero)
//   alpha    : dim x dim matrix, entries integers or "num/den" strings
//   group    : optional { order, mult_table (1-based), reps: list of matrices }
//   deformation : optional { order N, m_jets: N lists of quintuples,
//                            a_jets: N lists of [j, k, num, den] quadruples }
//   gauge    : optional { psi_jets: list of matrices, orders 1..K }

#include <homleib/equivariant.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homleib::io {

using json = nlohmann::json;

// --------------------------------------------------------------------------
// Rationals and matrices.

inline Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer())
        return Rational(static_cast<long long>(v.get<std::int64_t>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw std::invalid_argument("field '" + where +
                                "': expected an integer or a \"num/den\" string");
}

// Integers that fit JSON's integer type stay integers; everything else is an
// exact string.  The choice depends only on the value, keeping output stable.
inline json rational_to_json(const Rational& q) {
    if (denominator(q) == 1) {
        BigInt n = numerator(q);
        if (n >= BigInt(std::numeric_limits<std::int64_t>::min()) &&
            n <= BigInt(std::numeric_limits<std::int64_t>::max()))
            return json(n.convert_to<std::int64_t>());
    }
    return json(format_rational(q));
}

inline Mat matrix_from_json(const json& v, std::size_t rows, std::size_t cols,
                            const std::string& where) {
    if (!v.is_array() || v.size() != rows)
        throw std::invalid_argument("field '" + where + "': expected " +
                                    std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("field '" + where + "' row " +
                                        std::to_string(r + 1) + ": expected " +
                                        std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = rational_from_json(
                row[c], where + "[" + std::to_string(r + 1) + "][" +
                            std::to_string(c + 1) + "]");
    }
    return m;
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(rational_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// --------------------------------------------------------------------------
// Sparse jet blocks.

namespace detail {

inline std::size_t index_from_json(const json& v, std::size_t dim,
                                   const std::string& where) {
    if (!v.is_number_integer())
        throw std::invalid_argument("field '" + where + "': expected an index");
    std::int64_t i = v.get<std::int64_t>();
    if (i < 1 || static_cast<std::size_t>(i) > dim)
        throw std::invalid_argument("field '" + where + "': index " +
                                    std::to_string(i) + " out of range 1.." +
                                    std::to_string(dim));
    return static_cast<std::size_t>(i) - 1;
}

inline Rational ratio_from_pair(const json& num, const json& den,
                                const std::string& where) {
    Rational n = rational_from_json(num, where + " numerator");
    Rational d = rational_from_json(den, where + " denominator");
    if (d.is_zero())
        throw std::invalid_argument("field '" + where + "': zero denominator");
    return n / d;
}

} // namespace detail

// [i, j, k, num, den] quintuples <-> arity-2 cochain.
inline Cochain quintuples_to_cochain2(const json& v, std::size_t dim,
                                      const std::string& where) {
    if (!v.is_array())
        throw std::invalid_argument("field '" + where + "': expected a list");
    Cochain c(dim, 2);
    for (std::size_t t = 0; t < v.size(); ++t) {
        std::string slot = where + "[" + std::to_string(t + 1) + "]";
        const json& q = v[t];
        if (!q.is_array() || q.size() != 5)
            throw std::invalid_argument("field '" + slot +
                                        "': expected [i, j, k, num, den]");
        std::size_t i = detail::index_from_json(q[0], dim, slot);
        std::size_t j = detail::index_from_json(q[1], dim, slot);
        std::size_t k = detail::index_from_json(q[2], dim, slot);
        if (!c.at(k, {i, j}).is_zero())
            throw std::invalid_argument("field '" + slot + "': duplicate entry");
        c.at(k, {i, j}) = detail::ratio_from_pair(q[3], q[4], slot);
    }
    return c;
}

inline json cochain2_to_quintuples(const Cochain& c) {
    json out = json::array();
    std::size_t d = c.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Rational& q = c.at(k, {i, j});
                if (q.is_zero()) continue;
                out.push_back({i + 1, j + 1, k + 1,
                               rational_to_json(Rational(numerator(q))),
                               rational_to_json(Rational(denominator(q)))});
            }
    return out;
}

// [j, k, num, den] quadruples <-> linear map (coefficient of e_k in a(e_j)).
inline Mat quadruples_to_linmap(const json& v, std::size_t dim,
                                const std::string& where) {
    if (!v.is_array())
        throw std::invalid_argument("field '" + where + "': expected a list");
    Mat m(dim, dim);
    for (std::size_t t = 0; t < v.size(); ++t) {
        std::string slot = where + "[" + std::to_string(t + 1) + "]";
        const json& q = v[t];
        if (!q.is_array() || q.size() != 4)
            throw std::invalid_argument("field '" + slot +
                                        "': expected [j, k, num, den]");
        std::size_t j = detail::index_from_json(q[0], dim, slot);
        std::size_t k = detail::index_from_json(q[1], dim, slot);
        if (!m.at(k, j).is_zero())
            throw std::invalid_argument("field '" + slot + "': duplicate entry");
        m.at(k, j) = detail::ratio_from_pair(q[2], q[3], slot);
    }
    return m;
}

inline json linmap_to_quadruples(const Mat& m) {
    json out = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t k = 0; k < m.rows(); ++k) {
            const Rational& q = m.at(k, j);
            if (q.is_zero()) continue;
            out.push_back({j + 1, k + 1, rational_to_json(Rational(numerator(q))),
                           rational_to_json(Rational(denominator(q)))});
        }
    return out;
}

// --------------------------------------------------------------------------
// Whole documents.

struct Document {
    Algebra algebra;
    std::optional<GroupAction> action;
    std::optional<TruncatedDeformation> deformation;
    std::optional<GaugeTransform> gauge;
};

inline Document parse_document(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("document must be a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw std::invalid_argument("field 'dim': required integer");
    std::int64_t dim_raw = j.at("dim").get<std::int64_t>();
    if (dim_raw < 1) throw std::invalid_argument("field 'dim': must be positive");
    std::size_t dim = static_cast<std::size_t>(dim_raw);

    Cochain structure(dim, 2);
    if (j.contains("bracket"))
        structure = quintuples_to_cochain2(j.at("bracket"), dim, "bracket");
    if (!j.contains("alpha")) throw std::invalid_argument("field 'alpha': required");
    Mat alpha = matrix_from_json(j.at("alpha"), dim, dim, "alpha");
    std::vector<StructureEntry> entries;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t jj = 0; jj < dim; ++jj)
            for (std::size_t k = 0; k < dim; ++k) {
                const Rational& q = structure.at(k, {i, jj});
                if (!q.is_zero()) entries.push_back({i, jj, k, q});
            }
    Document doc{make_algebra(dim, entries, alpha), std::nullopt, std::nullopt,
                 std::nullopt};

    if (j.contains("group")) {
        const json& g = j.at("group");
        if (!g.is_object() || !g.contains("order") || !g.contains("mult_table") ||
            !g.contains("reps"))
            throw std::invalid_argument(
                "field 'group': expected {order, mult_table, reps}");
        if (!g.at("order").is_number_integer() || g.at("order").get<std::int64_t>() < 1)
            throw std::invalid_argument("field 'group.order': positive integer");
        std::size_t order = g.at("order").get<std::size_t>();
        const json& tbl = g.at("mult_table");
        if (!tbl.is_array() || tbl.size() != order)
            throw std::invalid_argument("field 'group.mult_table': expected " +
                                        std::to_string(order) + " rows");
        std::vector<std::vector<std::size_t>> table(order);
        for (std::size_t r = 0; r < order; ++r) {
            if (!tbl[r].is_array() || tbl[r].size() != order)
                throw std::invalid_argument("field 'group.mult_table' row " +
                                            std::to_string(r + 1) + ": expected " +
                                            std::to_string(order) + " entries");
            for (std::size_t c = 0; c < order; ++c)
                table[r].push_back(detail::index_from_json(
                    tbl[r][c], order,
                    "group.mult_table[" + std::to_string(r + 1) + "][" +
                        std::to_string(c + 1) + "]"));
        }
        const json& reps = g.at("reps");
        if (!reps.is_array() || reps.size() != order)
            throw std::invalid_argument("field 'group.reps': expected " +
                                        std::to_string(order) + " matrices");
        std::vector<Mat> mats;
        for (std::size_t r = 0; r < order; ++r)
            mats.push_back(matrix_from_json(reps[r], dim, dim,
                                            "group.reps[" + std::to_string(r + 1) +
                                                "]"));
        doc.action.emplace(FiniteGroup(std::move(table)), std::move(mats));
    }

    if (j.contains("deformation")) {
        const json& d = j.at("deformation");
        if (!d.is_object() || !d.contains("order") || !d.contains("m_jets") ||
            !d.contains("a_jets"))
            throw std::invalid_argument(
                "field 'deformation': expected {order, m_jets, a_jets}");
        if (!d.at("order").is_number_integer() ||
            d.at("order").get<std::int64_t>() < 0)
            throw std::invalid_argument("field 'deformation.order': nonnegative integer");
        std::size_t order = d.at("order").get<std::size_t>();
        const json& mj = d.at("m_jets");
        const json& aj = d.at("a_jets");
        if (!mj.is_array() || mj.size() != order)
            throw std::invalid_argument("field 'deformation.m_jets': expected " +
                                        std::to_string(order) + " jet lists");
        if (!aj.is_array() || aj.size() != order)
            throw std::invalid_argument("field 'deformation.a_jets': expected " +
                                        std::to_string(order) + " jet lists");
        std::vector<Cochain> m_jets;
        std::vector<Mat> a_jets;
        for (std::size_t s = 0; s < order; ++s) {
            m_jets.push_back(quintuples_to_cochain2(
                mj[s], dim, "deformation.m_jets[" + std::to_string(s + 1) + "]"));
            a_jets.push_back(quadruples_to_linmap(
                aj[s], dim, "deformation.a_jets[" + std::to_string(s + 1) + "]"));
        }
        doc.deformation.emplace(doc.algebra, std::move(m_jets), std::move(a_jets));
    }

    if (j.contains("gauge")) {
        const json& g = j.at("gauge");
        if (!g.is_object() || !g.contains("psi_jets"))
            throw std::invalid_argument("field 'gauge': expected {psi_jets}");
        const json& pj = g.at("psi_jets");
        if (!pj.is_array())
            throw std::invalid_argument("field 'gauge.psi_jets': expected a list");
        std::vector<Mat> jets;
        for (std::size_t s = 0; s < pj.size(); ++s)
            jets.push_back(matrix_from_json(
                pj[s], dim, dim, "gauge.psi_jets[" + std::to_string(s + 1) + "]"));
        doc.gauge.emplace(dim, std::move(jets));
    }
    return doc;
}

inline json serialize_document(const Document& doc) {
    const Algebra& L = doc.algebra;
    std::size_t d = L.dim();
    json out;
    out["dim"] = d;
    json bracket = json::array();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Rational& q = L.structure(i, j, k);
                if (q.is_zero()) continue;
                bracket.push_back({i + 1, j + 1, k + 1,
                                   rational_to_json(Rational(numerator(q))),
                                   rational_to_json(Rational(denominator(q)))});
            }
    out["bracket"] = std::move(bracket);
    out["alpha"] = matrix_to_json(L.alpha_matrix());
    if (doc.action) {
        json g;
        const auto& G = doc.action->group();
        g["order"] = G.order();
        json tbl = json::array();
        for (const auto& row : G.table()) {
            json r = json::array();
            for (std::size_t v : row) r.push_back(v + 1);
            tbl.push_back(std::move(r));
        }
        g["mult_table"] = std::move(tbl);
        json reps = json::array();
        for (std::size_t e = 0; e < G.order(); ++e)
            reps.push_back(matrix_to_json(doc.action->rep(e)));
        g["reps"] = std::move(reps);
        out["group"] = std::move(g);
    }
    if (doc.deformation) {
        json dd;
        dd["order"] = doc.deformation->order();
        json mj = json::array(), aj = json::array();
        for (std::size_t s = 1; s <= doc.deformation->order(); ++s) {
            mj.push_back(cochain2_to_quintuples(doc.deformation->m(s)));
            aj.push_back(linmap_to_quadruples(doc.deformation->a(s)));
        }
        dd["m_jets"] = std::move(mj);
        dd["a_jets"] = std::move(aj);
        out["deformation"] = std::move(dd);
    }
    if (doc.gauge) {
        json g;
        json pj = json::array();
        for (std::size_t s = 1; s <= doc.gauge->order(); ++s)
            pj.push_back(matrix_to_json(doc.gauge->psi(s)));
        g["psi_jets"] = std::move(pj);
        out["gauge"] = std::move(g);
    }
    return out;
}

inline Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("parse error in ") + path + ": " +
                                    e.what());
    }
    return parse_document(j);
}

// Canonical text form used everywhere a document or report is written.
inline std::string dump_canonical(const json& j) { return j.dump(1) + "\n"; }

} // namespace homleib::io

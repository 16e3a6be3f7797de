// Command-line driver: verify documents, print cohomology tables, and run the
// deformation toolbox (verify / infinitesimal / obstruct / extend / gauge /
// reduce / rigidity), in plain or group-equivariant mode.
//
// Exit codes: 0 = success (an obstructed extension is a successful
// computation), 1 = mathematical negative (axiom violation, failed jet
// equations, non-equivariant jets under a group block), 2 = usage or parse
// error.

#include <CLI11.hpp>

#include <homleib/io.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace homleib;
using json = nlohmann::json;

namespace {

struct Report {
    json machine;
    std::string text;
    int exit_code = 0;
};

std::string rat(const Rational& q) { return format_rational(q); }

json vec_to_json(const Vec& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(rat(q));
    return out;
}

std::string vec_to_text(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rat(v[i]);
    return s + ")";
}

// Sparse entries of a multilinear map, 1-based, in canonical order.
json cochain_entries(const Cochain& c) {
    json out = json::array();
    for_each_tuple(c.dim, c.arity, [&](const std::vector<std::size_t>& tup) {
        for (std::size_t k = 0; k < c.dim; ++k) {
            const Rational& q = c.at(k, tup);
            if (q.is_zero()) continue;
            json e;
            json args = json::array();
            for (std::size_t t : tup) args.push_back(t + 1);
            e["args"] = std::move(args);
            e["out"] = k + 1;
            e["coeff"] = rat(q);
            out.push_back(std::move(e));
        }
    });
    return out;
}

json pair_to_json(const PairCochain& p) {
    json out;
    out["degree"] = p.degree;
    out["gamma"] = cochain_entries(p.gamma);
    if (p.has_alpha()) out["alpha"] = cochain_entries(p.alpha);
    return out;
}

void render_cochain_text(std::ostringstream& os, const std::string& label,
                         const Cochain& c) {
    bool any = false;
    for_each_tuple(c.dim, c.arity, [&](const std::vector<std::size_t>& tup) {
        for (std::size_t k = 0; k < c.dim; ++k) {
            const Rational& q = c.at(k, tup);
            if (q.is_zero()) continue;
            any = true;
            os << "  " << label << "(";
            for (std::size_t t = 0; t < tup.size(); ++t)
                os << (t ? ", " : "") << "e" << tup[t] + 1;
            os << ") = " << rat(q) << " e" << k + 1 << "\n";
        }
    });
    if (!any) os << "  " << label << " = 0\n";
}

json axiom_violations_json(const std::vector<AxiomViolation>& vs,
                           const std::string& axiom) {
    json out = json::array();
    for (const auto& v : vs) {
        if (v.axiom != axiom) continue;
        json e;
        json basis = json::array();
        for (std::size_t b : v.basis_indices) basis.push_back(b + 1);
        e["basis"] = std::move(basis);
        e["lhs"] = vec_to_json(v.lhs);
        e["rhs"] = vec_to_json(v.rhs);
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// verify

Report cmd_verify(const io::Document& doc) {
    Report rep;
    auto val = doc.algebra.validate();
    rep.machine["command"] = "verify";
    rep.machine["hom_leibniz"] = axiom_violations_json(val.violations, "hom_leibniz");
    rep.machine["multiplicative"] =
        axiom_violations_json(val.violations, "multiplicative");
    std::ostringstream os;
    std::size_t n_hl = rep.machine["hom_leibniz"].size();
    std::size_t n_mu = rep.machine["multiplicative"].size();
    os << "hom-leibniz identity: " << (n_hl ? "FAIL" : "PASS") << "\n";
    os << "multiplicativity:     " << (n_mu ? "FAIL" : "PASS") << "\n";
    bool passed = val.passed;
    for (const auto& v : val.violations)
        os << "  " << v.describe() << "\n     lhs = " << vec_to_text(v.lhs)
           << "\n     rhs = " << vec_to_text(v.rhs) << "\n";
    if (doc.action) {
        auto act = verify_action(doc.algebra, *doc.action);
        json avs = json::array();
        for (const auto& v : act.violations) {
            json e;
            e["kind"] = v.kind;
            json els = json::array();
            for (std::size_t g : v.elements) els.push_back(g + 1);
            e["elements"] = std::move(els);
            json basis = json::array();
            for (std::size_t b : v.basis_indices) basis.push_back(b + 1);
            e["basis"] = std::move(basis);
            if (!v.lhs.empty()) e["lhs"] = vec_to_json(v.lhs);
            if (!v.rhs.empty()) e["rhs"] = vec_to_json(v.rhs);
            avs.push_back(std::move(e));
        }
        rep.machine["group_action"] = std::move(avs);
        os << "group action:         " << (act.passed ? "PASS" : "FAIL") << "\n";
        for (const auto& v : act.violations) os << "  " << v.describe() << "\n";
        passed = passed && act.passed;
    }
    rep.machine["passed"] = passed;
    os << "result: " << (passed ? "PASS" : "FAIL") << "\n";
    rep.text = os.str();
    rep.exit_code = passed ? 0 : 1;
    return rep;
}

// ---------------------------------------------------------------------------
// cohomology

void table_header(std::ostringstream& os, const std::string& second_col) {
    os << "degree | " << second_col
       << " | dim cocycles | dim coboundaries | betti\n";
}

void table_row(std::ostringstream& os, std::size_t degree, std::size_t second,
               std::size_t second_width, std::size_t z, std::size_t b,
               std::size_t betti) {
    os << std::setw(6) << degree << " | " << std::setw((int)second_width) << second
       << " | " << std::setw(12) << z << " | " << std::setw(16) << b << " | "
       << std::setw(5) << betti << "\n";
}

Report cmd_cohomology(const io::Document& doc, std::size_t max_degree,
                      bool equivariant, bool cheng_cai) {
    Report rep;
    rep.machine["command"] = "cohomology";
    rep.machine["max_degree"] = max_degree;
    std::ostringstream os;
    json rows = json::array();
    if (equivariant) {
        rep.machine["mode"] = "equivariant";
        os << "equivariant α-type cohomology H̃Lⁿ, degrees 1.." << max_degree
           << "\n";
        table_header(os, "dim invariant");
        for (const auto& r : equivariant_table(doc.algebra, *doc.action, max_degree)) {
            json row;
            row["degree"] = r.degree;
            row["dim_invariant"] = r.dim_invariant;
            row["dim_cocycles"] = r.dim_cocycles;
            row["dim_coboundaries"] = r.dim_coboundaries;
            row["betti"] = r.betti;
            rows.push_back(std::move(row));
            table_row(os, r.degree, r.dim_invariant, 13, r.dim_cocycles,
                      r.dim_coboundaries, r.betti);
        }
    } else if (cheng_cai) {
        rep.machine["mode"] = "cheng_cai";
        os << "restricted cohomology on the compatible subcomplex, degrees 1.."
           << max_degree << "\n";
        table_header(os, "dim subspace");
        for (const auto& r : restricted_table(doc.algebra, max_degree)) {
            json row;
            row["degree"] = r.degree;
            row["dim_subspace"] = r.dim_subspace;
            row["dim_cocycles"] = r.dim_cocycles;
            row["dim_coboundaries"] = r.dim_coboundaries;
            row["betti"] = r.betti;
            rows.push_back(std::move(row));
            table_row(os, r.degree, r.dim_subspace, 12, r.dim_cocycles,
                      r.dim_coboundaries, r.betti);
        }
    } else {
        rep.machine["mode"] = "plain";
        os << "α-type cohomology H̃Lⁿ, degrees 1.." << max_degree << "\n";
        table_header(os, "dim cochains");
        for (const auto& r : cohomology_table(doc.algebra, max_degree)) {
            json row;
            row["degree"] = r.degree;
            row["dim_cochains"] = r.dim_cochains;
            row["dim_cocycles"] = r.dim_cocycles;
            row["dim_coboundaries"] = r.dim_coboundaries;
            row["betti"] = r.betti;
            rows.push_back(std::move(row));
            table_row(os, r.degree, r.dim_cochains, 12, r.dim_cocycles,
                      r.dim_coboundaries, r.betti);
        }
    }
    rep.machine["rows"] = std::move(rows);
    rep.text = os.str();
    return rep;
}

// ---------------------------------------------------------------------------
// deform

json deformation_jets_json(const TruncatedDeformation& D) {
    json dd;
    dd["order"] = D.order();
    json mj = json::array(), aj = json::array();
    for (std::size_t s = 1; s <= D.order(); ++s) {
        mj.push_back(io::cochain2_to_quintuples(D.m(s)));
        aj.push_back(io::linmap_to_quadruples(D.a(s)));
    }
    dd["m_jets"] = std::move(mj);
    dd["a_jets"] = std::move(aj);
    return dd;
}

void render_jets_text(std::ostringstream& os, const TruncatedDeformation& D) {
    for (std::size_t s = 1; s <= D.order(); ++s) {
        render_cochain_text(os, "m_" + std::to_string(s), D.m(s));
        render_cochain_text(os, "a_" + std::to_string(s),
                            matrix_to_cochain(D.a(s)));
    }
}

json output_document(const io::Document& doc, const TruncatedDeformation& D) {
    io::Document out{doc.algebra, doc.action, D, std::nullopt};
    return io::serialize_document(out);
}

bool pair_is_invariant(const GroupAction& act, const PairCochain& p) {
    for (std::size_t g = 0; g < act.group().order(); ++g)
        if (!(act_on(act, g, p) == p)) return false;
    return true;
}

// Shared precondition: under a group block, every jet must be fixed by the
// action.  Returns a ready exit-1 report when one is not.
std::optional<Report> equivariance_gate(const io::Document& doc,
                                        const std::string& command) {
    if (!doc.action || !doc.deformation) return std::nullopt;
    auto idx = first_nonequivariant_jet(*doc.action, *doc.deformation);
    if (!idx) return std::nullopt;
    Report rep;
    rep.machine["command"] = command;
    rep.machine["passed"] = false;
    rep.machine["failing_jet_order"] = *idx;
    rep.text = "jet at order " + std::to_string(*idx) +
               " is not fixed by the group action\n";
    rep.exit_code = 1;
    return rep;
}

Report cmd_deform_verify(const io::Document& doc) {
    if (auto gate = equivariance_gate(doc, "deform verify")) return *gate;
    const auto& D = *doc.deformation;
    auto chk = verify(doc.algebra, D);
    Report rep;
    rep.machine["command"] = "deform verify";
    rep.machine["order"] = D.order();
    rep.machine["passed"] = chk.passed;
    json fails = json::array();
    std::ostringstream os;
    os << "deformation jets through order " << D.order() << "\n";
    if (doc.action) os << "jets fixed by the group action: yes\n";
    for (const auto& f : chk.failures) {
        json e;
        e["equation"] = f.equation;
        e["order"] = f.order;
        json basis = json::array();
        for (std::size_t b : f.basis_indices) basis.push_back(b + 1);
        e["basis"] = std::move(basis);
        e["defect"] = vec_to_json(f.defect);
        fails.push_back(std::move(e));
        os << "  " << f.describe() << "\n";
    }
    rep.machine["failures"] = std::move(fails);
    os << "result: " << (chk.passed ? "PASS" : "FAIL") << "\n";
    rep.text = os.str();
    rep.exit_code = chk.passed ? 0 : 1;
    return rep;
}

Report cmd_deform_infinitesimal(const io::Document& doc) {
    if (auto gate = equivariance_gate(doc, "deform infinitesimal")) return *gate;
    const auto& D = *doc.deformation;
    Report rep;
    rep.machine["command"] = "deform infinitesimal";
    auto chk = verify(doc.algebra, D);
    if (!chk.passed) {
        rep.machine["passed"] = false;
        rep.text = "deformation equations fail; run `deform verify` for details\n";
        rep.exit_code = 1;
        return rep;
    }
    rep.machine["passed"] = true;
    std::ostringstream os;
    auto inf = infinitesimal(D);
    if (!inf) {
        rep.machine["trivial"] = true;
        os << "all jets vanish: the deformation is trivial to order " << D.order()
           << "\n";
    } else {
        rep.machine["trivial"] = false;
        rep.machine["order"] = inf->first;
        rep.machine["cochain"] = pair_to_json(inf->second);
        bool coc = is_cocycle(doc.algebra, inf->second);
        rep.machine["is_cocycle"] = coc;
        os << "first nonzero jet at order " << inf->first << ":\n";
        render_cochain_text(os, "γ", inf->second.gamma);
        render_cochain_text(os, "α", inf->second.alpha);
        os << "2-cocycle: " << (coc ? "yes" : "no") << "\n";
    }
    rep.text = os.str();
    return rep;
}

Report cmd_deform_obstruct(const io::Document& doc) {
    if (auto gate = equivariance_gate(doc, "deform obstruct")) return *gate;
    const auto& D = *doc.deformation;
    Report rep;
    rep.machine["command"] = "deform obstruct";
    auto chk = verify(doc.algebra, D);
    if (!chk.passed) {
        rep.machine["passed"] = false;
        rep.text = "deformation equations fail; run `deform verify` for details\n";
        rep.exit_code = 1;
        return rep;
    }
    rep.machine["passed"] = true;
    auto obs = obstruction(doc.algebra, D);
    rep.machine["order"] = obs.order;
    rep.machine["obstruction"] = pair_to_json(obs.cochain);
    rep.machine["is_zero"] = obs.is_zero();
    rep.machine["is_cocycle"] = is_cocycle(doc.algebra, obs.cochain);
    std::ostringstream os;
    std::string n = std::to_string(obs.order);
    os << "obstruction class at order " << n << ":\n";
    if (obs.is_zero()) {
        os << "  Obs^" << n << " = 0\n";
    } else {
        render_cochain_text(os, "Obs^" + n + "_γ", obs.cochain.gamma);
        render_cochain_text(os, "Obs^" + n + "_α", obs.cochain.alpha);
    }
    if (doc.action) {
        bool inv = pair_is_invariant(*doc.action, obs.cochain);
        rep.machine["invariant"] = inv;
        os << "invariant under the group action: " << (inv ? "yes" : "no") << "\n";
    }
    rep.text = os.str();
    return rep;
}

Report cmd_deform_extend(const io::Document& doc, std::size_t to) {
    if (auto gate = equivariance_gate(doc, "deform extend")) return *gate;
    Report rep;
    rep.machine["command"] = "deform extend";
    auto chk = verify(doc.algebra, *doc.deformation);
    if (!chk.passed) {
        rep.machine["passed"] = false;
        rep.text = "deformation equations fail; run `deform verify` for details\n";
        rep.exit_code = 1;
        return rep;
    }
    rep.machine["passed"] = true;
    rep.machine["target_order"] = to;
    TruncatedDeformation cur = *doc.deformation;
    std::ostringstream os;
    bool obstructed = false;
    while (cur.order() < to) {
        ExtensionResult ext = doc.action
                                  ? equivariant_extend(doc.algebra, *doc.action, cur)
                                  : extend(doc.algebra, cur);
        if (!ext.extended) {
            obstructed = true;
            std::string n = std::to_string(ext.obstruction_class.order);
            rep.machine["obstruction"] = pair_to_json(ext.obstruction_class.cochain);
            rep.machine["obstructed_at_order"] = ext.obstruction_class.order;
            os << "obstructed at order " << n << ": no jets (m, a) solve ∂_γγ/∂_γα"
               << (doc.action ? " inside the invariant complex" : "")
               << " against Obs^" << n << "\n";
            render_cochain_text(os, "Obs^" + n + "_γ",
                                ext.obstruction_class.cochain.gamma);
            render_cochain_text(os, "Obs^" + n + "_α",
                                ext.obstruction_class.cochain.alpha);
            break;
        }
        cur = *ext.extended;
    }
    rep.machine["obstructed"] = obstructed;
    rep.machine["reached_order"] = cur.order();
    if (!obstructed) {
        os << "extended to order " << cur.order()
           << (doc.action ? " inside the invariant complex" : "") << "\n";
        render_jets_text(os, cur);
        rep.machine["document"] = output_document(doc, cur);
    }
    rep.text = os.str();
    return rep;
}

Report cmd_deform_gauge(const io::Document& doc) {
    if (auto gate = equivariance_gate(doc, "deform gauge")) return *gate;
    Report rep;
    rep.machine["command"] = "deform gauge";
    auto next = apply_gauge(doc.algebra, *doc.deformation, *doc.gauge);
    rep.machine["order"] = next.order();
    rep.machine["document"] = output_document(doc, next);
    std::ostringstream os;
    os << "gauge transport applied through order " << next.order() << "\n";
    render_jets_text(os, next);
    rep.text = os.str();
    return rep;
}

Report cmd_deform_reduce(const io::Document& doc) {
    if (auto gate = equivariance_gate(doc, "deform reduce")) return *gate;
    Report rep;
    rep.machine["command"] = "deform reduce";
    auto rr = reduce(doc.algebra, *doc.deformation);
    rep.machine["verdict"] = rr.verdict;
    json steps = json::array();
    std::ostringstream os;
    for (const auto& st : rr.steps) {
        json e;
        e["order"] = st.order;
        e["psi"] = io::matrix_to_json(st.psi);
        steps.push_back(std::move(e));
        os << "gauge step at order " << st.order << ": ψ_" << st.order
           << " solving ∂_γγψ = m\n";
    }
    rep.machine["steps"] = std::move(steps);
    if (rr.verdict == "irreducible")
        rep.machine["irreducible_order"] = rr.irreducible_order;
    rep.machine["document"] = output_document(doc, rr.deformation);
    os << "verdict: " << rr.verdict;
    if (rr.verdict == "irreducible")
        os << " at order " << rr.irreducible_order
           << " (infinitesimal is not a coboundary)";
    os << "\n";
    rep.text = os.str();
    return rep;
}

Report cmd_deform_rigidity(const io::Document& doc) {
    Report rep;
    rep.machine["command"] = "deform rigidity";
    std::ostringstream os;
    if (doc.action) {
        auto rows = equivariant_table(doc.algebra, *doc.action, 3);
        std::size_t b2 = rows[1].betti, b3 = rows[2].betti;
        std::string verdict = b2 == 0 ? "equivariantly rigid"
                              : b3 == 0 ? "all invariant 2-cocycles unobstructed"
                                        : "inconclusive";
        rep.machine["equivariant"] = true;
        rep.machine["betti2"] = b2;
        rep.machine["betti3"] = b3;
        rep.machine["verdict"] = verdict;
        os << "equivariant H̃L² = " << b2 << ", H̃L³ = " << b3 << "\n"
           << "verdict: " << verdict << "\n";
    } else {
        auto rr = rigidity(doc.algebra);
        rep.machine["equivariant"] = false;
        rep.machine["betti2"] = rr.betti2;
        rep.machine["betti3"] = rr.betti3;
        rep.machine["verdict"] = rr.verdict;
        os << "H̃L² = " << rr.betti2 << ", H̃L³ = " << rr.betti3 << "\n"
           << "verdict: " << rr.verdict << "\n";
    }
    rep.text = os.str();
    return rep;
}

// ---------------------------------------------------------------------------

int emit(const Report& rep, const std::string& format, const std::string& output) {
    std::string body =
        format == "json" ? io::dump_canonical(rep.machine) : rep.text;
    if (output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return 2;
        }
        out << body;
    }
    return rep.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational toolbox for multiplicative hom-leibniz algebras:\n"
                 "axioms, α-type cohomology, and formal deformations"};
    app.require_subcommand(1);

    std::string file, output, format = "text";
    std::size_t max_degree = 4, to_order = 0;
    bool flag_equivariant = false, flag_cheng_cai = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "input document (JSON)")->required();
        cmd->add_option("--output", output, "write the report to a file");
        cmd->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* c_verify = app.add_subcommand("verify", "check the algebra axioms");
    add_common(c_verify);

    CLI::App* c_cohom =
        app.add_subcommand("cohomology", "print an α-type cohomology table");
    add_common(c_cohom);
    c_cohom->add_option("--max-degree", max_degree, "top degree of the table")
        ->check(CLI::PositiveNumber);
    c_cohom->add_flag("--equivariant", flag_equivariant,
                      "restrict to the invariant subcomplex (needs a group block)");
    c_cohom->add_flag("--cheng-cai", flag_cheng_cai,
                      "restrict to the compatible subcomplex");

    CLI::App* c_deform =
        app.add_subcommand("deform", "one-parameter formal deformation toolbox");
    c_deform->require_subcommand(1);
    CLI::App* d_verify =
        c_deform->add_subcommand("verify", "check the deformation equations");
    CLI::App* d_inf = c_deform->add_subcommand(
        "infinitesimal", "extract the first nonzero jet pair");
    CLI::App* d_obs =
        c_deform->add_subcommand("obstruct", "compute the obstruction class");
    CLI::App* d_ext = c_deform->add_subcommand(
        "extend", "extend order by order, reporting any obstruction");
    CLI::App* d_gauge =
        c_deform->add_subcommand("gauge", "apply the document's gauge jets");
    CLI::App* d_reduce = c_deform->add_subcommand(
        "reduce", "strip coboundary jets by gauge steps");
    CLI::App* d_rigid =
        c_deform->add_subcommand("rigidity", "betti-based rigidity verdict");
    for (CLI::App* cmd : {d_verify, d_inf, d_obs, d_ext, d_gauge, d_reduce, d_rigid})
        add_common(cmd);
    d_ext->add_option("--to", to_order, "target truncation order")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        io::Document doc = io::load_document(file);
        if (c_verify->parsed()) return emit(cmd_verify(doc), format, output);
        if (c_cohom->parsed()) {
            if (flag_equivariant && flag_cheng_cai) {
                std::cerr << "error: --equivariant and --cheng-cai are exclusive\n";
                return 2;
            }
            if (flag_equivariant && !doc.action) {
                std::cerr << "error: --equivariant requires a group block\n";
                return 2;
            }
            return emit(cmd_cohomology(doc, max_degree, flag_equivariant,
                                       flag_cheng_cai),
                        format, output);
        }
        // deform subcommands
        if (!d_rigid->parsed() && !doc.deformation) {
            std::cerr << "error: this subcommand needs a deformation block\n";
            return 2;
        }
        if (d_gauge->parsed() && !doc.gauge) {
            std::cerr << "error: `deform gauge` needs a gauge block\n";
            return 2;
        }
        if (d_verify->parsed()) return emit(cmd_deform_verify(doc), format, output);
        if (d_inf->parsed())
            return emit(cmd_deform_infinitesimal(doc), format, output);
        if (d_obs->parsed()) return emit(cmd_deform_obstruct(doc), format, output);
        if (d_ext->parsed()) {
            std::size_t target =
                to_order ? to_order : doc.deformation->order() + 1;
            return emit(cmd_deform_extend(doc, target), format, output);
        }
        if (d_gauge->parsed()) return emit(cmd_deform_gauge(doc), format, output);
        if (d_reduce->parsed()) return emit(cmd_deform_reduce(doc), format, output);
        if (d_rigid->parsed())
            return emit(cmd_deform_rigidity(doc), format, output);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

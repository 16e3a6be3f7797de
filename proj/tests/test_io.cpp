// Document format: parse/serialize round-trips, strict validation, and exact
// rational preservation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homleib/io.hpp>

#include "support/corpus.hpp"

using namespace homleib;
using namespace testsupport;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) {
    return std::string(HOMLEIB_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("bundled documents parse, validate, and round-trip exactly") {
    for (const char* name :
         {"paper_2dim.json", "abelian2_z2.json", "free_trunc_1_2.json"}) {
        INFO(name);
        io::Document doc = io::load_document(data_path(name));
        CHECK(doc.algebra.validate().passed);
        if (doc.action) CHECK(verify_action(doc.algebra, *doc.action).passed);
        json once = io::serialize_document(doc);
        json twice = io::serialize_document(io::parse_document(once));
        CHECK(once == twice);
    }
}

TEST_CASE("the bundled documents carry the expected algebras") {
    io::Document p = io::load_document(data_path("paper_2dim.json"));
    CHECK(p.algebra.dim() == 2);
    CHECK(p.algebra.structure(1, 1, 0) == Rational(1));
    CHECK(p.algebra.alpha_matrix() == nilp2().alpha_matrix());
    CHECK_FALSE(p.action.has_value());
    io::Document a = io::load_document(data_path("abelian2_z2.json"));
    REQUIRE(a.action.has_value());
    CHECK(a.action->group().order() == 2);
    CHECK(a.action->rep(1).at(1, 1) == Rational(-1));
    io::Document f = io::load_document(data_path("free_trunc_1_2.json"));
    CHECK(f.algebra.dim() == 2);
    CHECK(f.algebra.structure(0, 0, 1) == Rational(1));
}

TEST_CASE("rational entries accept integers and num/den strings, reject floats") {
    json j = {{"dim", 2},
              {"bracket", {{1, 1, 2, 1, 2}}},
              {"alpha", {{1, "3/4"}, {"-2", 1}}}};
    io::Document doc = io::parse_document(j);
    CHECK(doc.algebra.structure(0, 0, 1) == make_rational(1, 2));
    CHECK(doc.algebra.alpha_matrix().at(0, 1) == make_rational(3, 4));
    CHECK(doc.algebra.alpha_matrix().at(1, 0) == Rational(-2));
    j["alpha"][0][0] = 0.5;
    CHECK_THROWS_AS(io::parse_document(j), std::invalid_argument);
}

TEST_CASE("huge numerators survive the round-trip as exact strings") {
    Rational big = parse_rational("123456789012345678901234567890/7");
    json v = io::rational_to_json(big);
    CHECK(v.is_string());
    CHECK(io::rational_from_json(v, "x") == big);
    // small values stay JSON integers
    CHECK(io::rational_to_json(Rational(-5)).is_number_integer());
}

TEST_CASE("malformed documents are rejected with field context") {
    json base = {{"dim", 2},
                 {"bracket", json::array()},
                 {"alpha", {{1, 0}, {0, 1}}}};
    auto expect_throw = [](json j, const std::string& needle) {
        try {
            io::parse_document(j);
            FAIL_CHECK("expected invalid_argument for ", needle);
        } catch (const std::invalid_argument& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    {
        json j = base;
        j.erase("alpha");
        expect_throw(j, "alpha");
    }
    {
        json j = base;
        j["dim"] = 0;
        expect_throw(j, "dim");
    }
    {
        json j = base;
        j["bracket"] = {{3, 1, 1, 1, 1}}; // index out of range
        expect_throw(j, "bracket[1]");
    }
    {
        json j = base;
        j["bracket"] = {{1, 1, 1, 1, 0}}; // zero denominator
        expect_throw(j, "denominator");
    }
    {
        json j = base;
        j["bracket"] = {{1, 1, 1, 1, 1}, {1, 1, 1, 2, 1}}; // duplicate
        expect_throw(j, "duplicate");
    }
    {
        json j = base;
        j["alpha"] = {{1, 0}};
        expect_throw(j, "alpha");
    }
    {
        json j = base;
        j["group"] = {{"order", 2}, {"mult_table", {{1, 2}, {2, 1}}}};
        expect_throw(j, "group");
    }
    {
        json j = base;
        j["group"] = {{"order", 2},
                      {"mult_table", {{1, 2}, {2, 2}}}, // not a group
                      {"reps",
                       {{{1, 0}, {0, 1}}, {{1, 0}, {0, -1}}}}};
        CHECK_THROWS_AS(io::parse_document(j), std::invalid_argument);
    }
    {
        json j = base;
        j["deformation"] = {{"order", 2}, {"m_jets", {json::array()}},
                            {"a_jets", {json::array()}}}; // wrong jet count
        expect_throw(j, "m_jets");
    }
    {
        json j = base;
        j["deformation"] = {{"order", 1},
                            {"m_jets", {{{1, 1, 1, 1}}}}, // quadruple, not quintuple
                            {"a_jets", {json::array()}}};
        expect_throw(j, "m_jets[1]");
    }
}

TEST_CASE("deformation and gauge blocks round-trip through serialization") {
    Algebra L = r2();
    Cochain m1 = random_cochain(2, 2, 31, 3);
    Mat a1(2, 2);
    a1.at(0, 1) = make_rational(7, 3);
    Mat psi(2, 2);
    psi.at(1, 0) = Rational(4);
    io::Document doc{L, std::nullopt,
                     TruncatedDeformation(L, {m1}, {a1}),
                     GaugeTransform(2, {psi})};
    json j = io::serialize_document(doc);
    io::Document back = io::parse_document(j);
    REQUIRE(back.deformation.has_value());
    REQUIRE(back.gauge.has_value());
    CHECK(back.deformation->m(1) == m1);
    CHECK(back.deformation->a(1) == a1);
    CHECK(back.gauge->psi(1) == psi);
    CHECK(io::serialize_document(back) == j);
}

TEST_CASE("sparse jet converters invert each other") {
    Cochain c = random_cochain(3, 2, 77, 4);
    json q = io::cochain2_to_quintuples(c);
    CHECK(io::quintuples_to_cochain2(q, 3, "x") == c);
    Mat m(3, 3);
    m.at(0, 2) = make_rational(-5, 2);
    m.at(2, 1) = Rational(9);
    json quad = io::linmap_to_quadruples(m);
    CHECK(io::quadruples_to_linmap(quad, 3, "x") == m);
}

TEST_CASE("canonical dumps are stable") {
    io::Document doc = io::load_document(data_path("abelian2_z2.json"));
    std::string a = io::dump_canonical(io::serialize_document(doc));
    std::string b = io::dump_canonical(
        io::serialize_document(io::load_document(data_path("abelian2_z2.json"))));
    CHECK(a == b);
}

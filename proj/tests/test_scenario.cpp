#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ctx/catalog.hpp"
#include "ctx/errors.hpp"
#include "ctx/scenario.hpp"

using namespace ctx;

namespace {

double sum_norm(const ObservableFamily& f) { return f.bloch_sum().norm(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// A small hand-written scenario: two antipodal observables on Alice and the
// z axis on Bob.
constexpr const char* kSmall = R"({
  "name": "pair",
  "alice": {"observables": [{"bloch": [0, 0, 1]}, {"bloch": [0, 0, -1]}]},
  "bob": {"observables": [{"bloch": [1, 0, 0]}]},
  "equivalences": [
    {"side": "preparation", "party": "alice",
     "terms": [{"index": 0, "sign": 1, "coeff": "1/2"}, {"index": 1, "sign": 1, "coeff": "1/2"}]}
  ],
  "relations": [[1, 1, 0]]
})";

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("trine") {
        const auto f = trine_family();
        REQUIRE(f.size() == 3);
        CHECK(f.observables[0].bloch() == BlochVector{0, 0, 1});
        CHECK(sum_norm(f) <= 1e-12);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                CHECK(f.observables[i].bloch().dot(f.observables[j].bloch()) == doctest::Approx(-0.5).epsilon(1e-15));
    }

    TEST_CASE("odd-n family") {
        for (int n : {3, 5, 7, 9, 11}) {
            const auto f = odd_n_family(n);
            REQUIRE(f.size() == static_cast<std::size_t>(n));
            CHECK(f.n == n);
            CHECK(f.observables[0].bloch() == BlochVector{0, 0, 1});
            CHECK(sum_norm(f) <= 1e-12);
            for (std::size_t t = 1; t < f.size(); ++t) {
                CHECK(f.observables[t].bloch().z == doctest::Approx(-1.0 / (n - 1)).epsilon(1e-15));
                CHECK(f.observables[t].bloch().norm() == doctest::Approx(1.0).epsilon(1e-15));
            }
            // sum_{x != y} a_x . a_y = |sum a|^2 - n = -n
            double cross = 0.0;
            for (std::size_t x = 0; x < f.size(); ++x)
                for (std::size_t y = 0; y < f.size(); ++y)
                    if (x != y) cross += f.observables[x].bloch().dot(f.observables[y].bloch());
            CHECK(cross == doctest::Approx(-n).epsilon(1e-12));
        }
        CHECK_THROWS_AS(odd_n_family(4), InvalidN);
        CHECK_THROWS_AS(odd_n_family(1), InvalidN);
        CHECK_THROWS_AS(odd_n_family(-3), InvalidN);
    }

    TEST_CASE("tetrahedron and Pauli axes") {
        const auto sic = sic_family();
        REQUIRE(sic.size() == 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                CHECK(std::abs(sic.observables[i].bloch().dot(sic.observables[j].bloch())) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        const auto mub = mub_family();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) CHECK(mub.observables[i].bloch().dot(mub.observables[j].bloch()) == 0.0);
        // A1 - A2 - A3 - A4 = 0 for the tetrahedron as listed
        const auto rel = discover_relations(sic);
        REQUIRE(rel.size() == 1);
        CHECK(rel[0] == std::vector<int>{1, -1, -1, -1});
    }

    TEST_CASE("discover_relations") {
        CHECK(discover_relations(trine_family()) == std::vector<std::vector<int>>{{1, 1, 1}});
        CHECK(discover_relations(mub_family()).empty());
        // the 5-member family sums to zero; the square below the pole has the shorter a2 - a3 + a4 - a5 = 0
        const auto rel5 = discover_relations(odd_n_family(5));
        REQUIRE(!rel5.empty());
        CHECK(std::find(rel5.begin(), rel5.end(), std::vector<int>(5, 1)) != rel5.end());
        CHECK(rel5.front() == std::vector<int>{0, 1, -1, 1, -1});
        // antipodal pair has the support-2 relation first
        ObservableFamily f{"mix", {QubitObservable::from_bloch({0, 0, 1}), QubitObservable::from_bloch({0, 0, -1}),
                                   QubitObservable::from_bloch({1, 0, 0})}, std::nullopt};
        CHECK(discover_relations(f) == std::vector<std::vector<int>>{{1, 1, 0}});
        ObservableFamily big{"big", std::vector<QubitObservable>(9, QubitObservable::from_bloch({0, 0, 1})), std::nullopt};
        CHECK_THROWS_AS(discover_relations(big), TooLarge);
    }

    TEST_CASE("every catalog equivalence verifies") {
        for (const auto& id : catalog_ids()) {
            CAPTURE(id);
            const auto s = builtin_scenario(id);
            const auto rep = verify_equivalences(s, 1e-12);
            CHECK(rep.all_pass());
            CHECK(rep.max_residual <= 1e-12);
            CHECK_NOTHROW(validate(s));
            for (const auto& r : s.relations) CHECK(relation_residual(s, r) <= 1e-12);
        }
    }

    TEST_CASE("perturbed observables fail verification") {
        auto s = builtin_scenario("33");
        auto b = s.alice.observables[1].bloch();
        const double eps = 1e-3;
        s.alice.observables[1] = QubitObservable::from_bloch({b.x * std::cos(eps) + b.z * std::sin(eps), 0.0,
                                                              -b.x * std::sin(eps) + b.z * std::cos(eps)});
        const auto rep = verify_equivalences(s, 1e-12);
        CHECK_FALSE(rep.all_pass());
        // only the pattern equivalences move, by (1/3) * (delta.sigma)/2
        const auto d = s.alice.observables[1].bloch() - b;
        const double expected = std::max(std::hypot(d.x, d.y), std::abs(d.z)) / 6.0;
        CHECK(rep.max_residual == doctest::Approx(expected).epsilon(1e-9));
        CHECK(rep.max_residual > 1e-5);
        CHECK_THROWS_AS(validate(s), ValidationError);
    }

    TEST_CASE("validation rejects malformed equivalences") {
        auto s = builtin_scenario("33");
        auto bad = s;
        bad.equivalences[0].terms[0].coeff = Rational(1, 3);
        CHECK_THROWS_AS(validate(bad), ValidationError);
        bad = s;
        bad.equivalences[0].terms[0].index = 7;
        CHECK_THROWS_AS(validate(bad), ValidationError);
        bad = s;
        bad.equivalences[0].terms[0].sign = 0;
        CHECK_THROWS_AS(validate(bad), ValidationError);
        bad = s;
        bad.relations[0] = {1, 0, 0, 0, 0, 0};
        CHECK_THROWS_AS(validate(bad), ValidationError);
    }

    TEST_CASE("equivalence shapes") {
        const auto triv = trivial_equivalences(Side::measurement, Party::bob, 3);
        REQUIRE(triv.size() == 3);
        for (const auto& e : triv) CHECK(e.is_trivial());
        const auto pat = pattern_equivalences(Side::preparation, Party::alice, {1, -1, -1, -1});
        REQUIRE(pat.size() == 2);
        CHECK_FALSE(pat[0].is_trivial());
        CHECK(pat[0].terms[1].sign == -1);
        CHECK(pat[1].terms[1].sign == 1);
        CHECK(pat[0].terms[0].coeff == Rational(1, 4));
    }

    TEST_CASE("relations are split per party") {
        const auto s = builtin_scenario("44");
        CHECK(s.relations_for(Party::alice) == std::vector<std::vector<int>>{{1, -1, -1, -1}});
        CHECK(s.relations_for(Party::bob) == std::vector<std::vector<int>>{{1, -1, -1, -1}});
        const auto t = builtin_scenario("33");
        CHECK(t.relations_for(Party::alice).empty());
        CHECK(t.relations_for(Party::bob) == std::vector<std::vector<int>>{{1, 1, 1}});
    }

    TEST_CASE("game rules") {
        CHECK(builtin_scenario("33").game_rule() == GameRule::equality);
        CHECK(builtin_scenario("43").game_rule() == GameRule::sum5);
        CHECK(builtin_scenario("34").game_rule() == GameRule::sum5);
        CHECK(parse_game_rule(to_string(GameRule::sum5)) == GameRule::sum5);
        CHECK_THROWS_AS(parse_game_rule("xor"), UnknownKind);
    }

    TEST_CASE("catalog ids") {
        CHECK(catalog_ids().size() == 9);
        CHECK(builtin_scenario("nn:13").alice.size() == 13);
        CHECK_THROWS_AS(catalog_entry("nn:4"), InvalidN);
        CHECK_THROWS_AS(catalog_entry("nn:x"), InvalidN);
        CHECK_THROWS_AS(catalog_entry("55"), UnknownKind);
    }
}

TEST_SUITE("scenario-json") {
    TEST_CASE("round trip is exact for every catalog scenario") {
        for (const auto& id : catalog_ids()) {
            CAPTURE(id);
            const auto s = builtin_scenario(id);
            const auto back = scenario_from_json(scenario_to_json(s));
            CHECK(back == s);
            CHECK(scenario_to_json(back) == scenario_to_json(s));
        }
    }

    TEST_CASE("stored 44 file parses to the catalog scenario") {
        const auto text = read_file(CTX_TEST_DATA "/scenario_44.json");
        REQUIRE(!text.empty());
        const auto s = scenario_from_json(text);
        const auto ref = builtin_scenario("44");
        CHECK(s.equivalences == ref.equivalences);
        CHECK(s.relations == ref.relations);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto d = s.alice.observables[i].bloch() - ref.alice.observables[i].bloch();
            CHECK(d.norm() <= 1e-15);
        }
    }

    TEST_CASE("hand-written scenario") {
        const auto s = scenario_from_json(kSmall);
        CHECK(s.name == "pair");
        CHECK(s.alice.size() == 2);
        CHECK(s.bob.size() == 1);
        CHECK(s.equivalences[0].terms[1].coeff == Rational(1, 2));
        CHECK(s.relations == std::vector<SignedRelation>{{1, 1, 0}});
    }

    TEST_CASE("parse errors name the field") {
        std::string text = kSmall;
        text.replace(text.find("\"1/2\""), 5, "\"1/0\"");
        try {
            scenario_from_json(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "$.equivalences[0].terms[0].coeff");
        }

        std::string missing = kSmall;
        missing.replace(missing.find("\"bob\""), 5, "\"rob\"");
        try {
            scenario_from_json(missing);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "$.bob");
        }
    }

    TEST_CASE("syntax errors carry a line number") {
        const std::string text = "{\n  \"name\": \"x\",\n  \"alice\": [,\n}";
        try {
            scenario_from_json(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }

    TEST_CASE("invalid content is a validation error") {
        std::string text = kSmall;
        text.replace(text.find("[0, 0, -1]"), 10, "[0, 0, 0.5]");
        CHECK_THROWS_AS(scenario_from_json(text), ValidationError);

        std::string wrong_relation = kSmall;
        wrong_relation.replace(wrong_relation.find("[[1, 1, 0]]"), 11, "[[1, 0, 0]]");
        CHECK_THROWS_AS(scenario_from_json(wrong_relation), ValidationError);

        std::string short_relation = kSmall;
        short_relation.replace(short_relation.find("[[1, 1, 0]]"), 11, "[[1, 1]]");
        CHECK_THROWS(scenario_from_json(short_relation));
    }

    TEST_CASE("rationals") {
        CHECK(parse_rational("-3/6") == Rational(-1, 2));
        CHECK(parse_rational("7") == Rational(7));
        CHECK(to_string(Rational(10, 4)) == "5/2");
        CHECK(to_string(Rational(-4, 2)) == "-2");
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
        CHECK_THROWS_AS(parse_rational(""), ParseError);
    }
}

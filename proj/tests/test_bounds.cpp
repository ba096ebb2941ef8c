#include <doctest.h>

#include <cmath>
#include <random>

#include "ctx/bounds.hpp"
#include "ctx/catalog.hpp"
#include "ctx/errors.hpp"
#include "ctx/game.hpp"

using namespace ctx;

namespace {

// Brute force over every (a, b) pair, no best-response shortcut.
long long brute_local(const BellExpression& e) {
    long long best = std::numeric_limits<long long>::min();
    const std::size_t na = e.rows(), nb = e.cols();
    for (std::size_t ca = 0; ca < (std::size_t{1} << na); ++ca)
        for (std::size_t cb = 0; cb < (std::size_t{1} << nb); ++cb) {
            long long v = 0;
            for (std::size_t x = 0; x < na; ++x)
                for (std::size_t y = 0; y < nb; ++y)
                    v += e.at(x, y) * (((ca >> x) & 1) ? -1 : 1) * (((cb >> y) & 1) ? -1 : 1);
            best = std::max(best, v);
        }
    return best;
}

Rational bilinear(const BellExpression& e, const RationalVector& a, const RationalVector& b) {
    Rational v = 0;
    for (std::size_t x = 0; x < e.rows(); ++x)
        for (std::size_t y = 0; y < e.cols(); ++y) v += e.at(x, y) * a[x] * b[y];
    return v;
}

BellExpression expr_of(const CatalogEntry& c) { return bell_of_game(game_of(c.scenario), c.id); }

}  // namespace

TEST_SUITE("bounds") {
    TEST_CASE("local bounds of the catalog expressions") {
        CHECK(local_bound(expr_of(catalog_entry("33"))).value == 5);
        CHECK(local_bound(expr_of(catalog_entry("43"))).value == 6);
        CHECK(local_bound(expr_of(catalog_entry("34"))).value == 6);
        CHECK(local_bound(expr_of(catalog_entry("44"))).value == 8);
        for (const auto& id : catalog_ids()) {
            CAPTURE(id);
            const auto e = expr_of(catalog_entry(id));
            const auto lb = local_bound(e);
            CHECK(lb.value == brute_local(e));
            RationalVector a(lb.a.begin(), lb.a.end()), b(lb.b.begin(), lb.b.end());
            CHECK(bilinear(e, a, b) == lb.value);
        }
        CHECK_THROWS_AS(local_bound(BellExpression("big", 13, 12, std::vector<int>(156, 1))), TooLarge);
    }

    TEST_CASE("box case: constrained bound equals the brute-force local bound on random 3x3") {
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<int> entry(-3, 3);
        for (int i = 0; i < 100; ++i) {
            std::vector<int> m(9);
            for (auto& v : m) v = entry(rng);
            const BellExpression e("rand", 3, 3, m);
            const auto cb = constrained_bound(e, {3, {}}, {3, {}});
            CHECK(cb.value == brute_local(e));
            CHECK(local_bound(e).value == cb.value);
        }
    }

    TEST_CASE("constrained bounds") {
        const auto c33 = catalog_entry("33");
        const auto r33 = constrained_bound(expr_of(c33), alice_polytope(c33.scenario), bob_polytope(c33.scenario));
        CHECK(r33.value == 4);
        CHECK(bilinear(expr_of(c33), r33.a, r33.b) == 4);
        Rational sum = 0;
        for (const auto& v : r33.b) sum += v;
        CHECK(sum == 0);

        const auto c43 = catalog_entry("43");
        const auto r43 = constrained_bound(expr_of(c43), alice_polytope(c43.scenario), bob_polytope(c43.scenario));
        CHECK(r43.value == 4);
        CHECK(r43.a[0] == r43.a[1] + r43.a[2] + r43.a[3]);

        const auto c34 = catalog_entry("34");
        CHECK(constrained_bound(expr_of(c34), alice_polytope(c34.scenario), bob_polytope(c34.scenario)).value == 4);

        for (int n : {3, 5, 7, 9, 11}) {
            const auto c = catalog_entry("nn:" + std::to_string(n));
            CHECK(constrained_bound(expr_of(c), alice_polytope(c.scenario), bob_polytope(c.scenario)).value == 2 * n - 2);
        }
    }

    TEST_CASE("constrained never exceeds local and maximizers re-substitute") {
        for (const auto& id : catalog_ids()) {
            CAPTURE(id);
            const auto c = catalog_entry(id);
            const auto e = expr_of(c);
            const auto pa = alice_polytope(c.scenario), pb = bob_polytope(c.scenario);
            const auto cb = constrained_bound(e, pa, pb);
            CHECK(cb.value <= local_bound(e).value);
            CHECK(pa.contains(cb.a));
            CHECK(pb.contains(cb.b));
            CHECK(bilinear(e, cb.a, cb.b) == cb.value);
        }
    }

    TEST_CASE("(4,4) constrained bound is 4 on both sides and on either side alone") {
        const auto c = catalog_entry("44");
        const auto e = expr_of(c);
        const StrategyPolytope box{4, {}};
        CHECK(constrained_bound(e, alice_polytope(c.scenario), bob_polytope(c.scenario)).value == 4);
        CHECK(constrained_bound(e, alice_polytope(c.scenario), box).value == 4);
        CHECK(constrained_bound(e, box, bob_polytope(c.scenario)).value == 4);
    }

    TEST_CASE("constrained bound errors") {
        const BellExpression e("e", 2, 2, {1, 1, 1, -1});
        CHECK_THROWS_AS(constrained_bound(e, {3, {}}, {2, {}}), DimensionMismatch);
        // x1 + x2 = 0 and x1 - x2 = 0 force zero, still nonempty
        CHECK(constrained_bound(e, {2, {{1, 1}, {1, -1}}}, {2, {}}).value == 0);
    }

    TEST_CASE("quantum values at reference strategies") {
        const auto c33 = catalog_entry("33");
        CHECK(quantum_value_at(expr_of(c33), c33.strategy.alice, c33.strategy.bob, c33.strategy.state) ==
              doctest::Approx(6.0).epsilon(1e-12));
        const auto c43 = catalog_entry("43");
        CHECK(std::abs(quantum_value_at(expr_of(c43), c43.strategy.alice, c43.strategy.bob, c43.strategy.state) -
                       4.0 * std::sqrt(3.0)) <= 1e-9);
        for (int n : {3, 5, 7}) {
            const auto c = catalog_entry("nn:" + std::to_string(n));
            CHECK(std::abs(quantum_value_at(expr_of(c), c.strategy.alice, c.strategy.bob, c.strategy.state) - 2.0 * n) <=
                  1e-9);
        }
        // with the unconjugated Pauli triple, Phi+ stays at 4/sqrt(3)
        const auto sic = sic_family(), mub = mub_family();
        CHECK(quantum_value_at(expr_of(c43), sic.observables, mub.observables, c43.strategy.state) ==
              doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK_THROWS_AS(quantum_value_at(expr_of(c43), mub.observables, mub.observables, c43.strategy.state),
                        DimensionMismatch);
    }

    TEST_CASE("delta_quantum") {
        for (const auto& id : catalog_ids()) {
            CAPTURE(id);
            CHECK(std::abs(delta_quantum(builtin_scenario(id)) - 1.0) <= 1e-12);
        }
        // pairing rho_1 with P_2 on the trine: (1 + a1.a2)/2 = 1/4 for that term
        const std::vector<std::size_t> swap{1, 1, 2};
        CHECK(delta_quantum(builtin_scenario("33"), swap) == doctest::Approx(0.75).epsilon(1e-12));
        CHECK_THROWS_AS(delta_quantum(builtin_scenario("33"), std::vector<std::size_t>{0, 1}), DimensionMismatch);
    }

    TEST_CASE("delta_unc bounds") {
        const auto d33 = delta_unc_bound(builtin_scenario("33"));
        CHECK(d33.value == Rational(5, 6));
        auto eta = d33.certificate.eta;
        std::sort(eta.begin(), eta.end());
        CHECK(eta == std::vector<Rational>{Rational(1, 2), 1, 1});
        Rational mean = 0;
        for (const auto& x : d33.certificate.xi) mean += x;
        CHECK(mean / 3 == Rational(1, 2));

        for (int n = 3; n <= 11; n += 2) {
            CAPTURE(n);
            CHECK(delta_unc_bound(builtin_scenario("nn:" + std::to_string(n))).value == Rational(1) - Rational(1, 2 * n));
        }
        const auto d44 = delta_unc_bound(builtin_scenario("44"));
        CHECK(d44.value == 1);
        CHECK(d44.certificate.eta == std::vector<Rational>(4, Rational(1)));

        auto s = builtin_scenario("33");
        s.equivalences = s.equivalences_for(Side::preparation);
        CHECK_THROWS_AS(delta_unc_bound(s), NoEquivalences);
    }

    TEST_CASE("seesaw reaches the known optima and is monotone") {
        const auto r33 = quantum_seesaw(expr_of(catalog_entry("33")), 10, 1);
        CHECK(r33.value >= 6.0 - 1e-8);
        CHECK(r33.monotone);
        const auto r43 = quantum_seesaw(expr_of(catalog_entry("43")), 10, 1);
        CHECK(r43.value >= 4.0 * std::sqrt(3.0) - 1e-8);
        CHECK(r43.value <= 4.0 * std::sqrt(3.0) + 1e-8);
        // CHSH reaches Tsirelson's bound
        const auto chsh = quantum_seesaw(BellExpression("chsh", 2, 2, {1, 1, 1, -1}), 5, 3);
        CHECK(chsh.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));
        CHECK_THROWS_AS(quantum_seesaw(BellExpression("chsh", 2, 2, {1, 1, 1, -1}), 0, 0), OutOfRange);
    }

    TEST_CASE("seesaw traces never decrease and the settings reproduce the value") {
        std::mt19937_64 seeds(99);
        for (const auto& id : {"33", "43", "34", "44", "nn:5"}) {
            CAPTURE(id);
            const auto e = expr_of(catalog_entry(id));
            const auto r = quantum_seesaw(e, 3, seeds());
            for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-12);
            CHECK(r.trace.size() <= 500);
            CHECK(std::abs(quantum_value_at(e, r.alice, r.bob, TwoQubitState::pure(r.state)) - r.value) <= 1e-10);
        }
    }

    TEST_CASE("seesaw is deterministic for a seed") {
        const auto e = expr_of(catalog_entry("34"));
        const auto a = quantum_seesaw(e, 4, 42), b = quantum_seesaw(e, 4, 42);
        CHECK(a.value == b.value);
        CHECK(a.trace == b.trace);
    }
}

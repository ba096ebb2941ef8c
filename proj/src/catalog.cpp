#include "ctx/catalog.hpp"

#include <charconv>
#include <cmath>

#include "ctx/errors.hpp"

namespace ctx {

namespace {

void append(std::vector<OperationalEquivalence>& out, std::vector<OperationalEquivalence> more) {
    out.insert(out.end(), more.begin(), more.end());
}

/// Trivial equivalences for both parties plus one sign pattern on each named side.
std::vector<OperationalEquivalence> equivalences(const OperationalScenario& s, const std::vector<int>& prep_pattern,
                                                 const std::vector<int>& meas_pattern) {
    std::vector<OperationalEquivalence> out;
    append(out, trivial_equivalences(Side::preparation, Party::alice, s.alice.size()));
    if (!prep_pattern.empty()) append(out, pattern_equivalences(Side::preparation, Party::alice, prep_pattern));
    append(out, trivial_equivalences(Side::measurement, Party::bob, s.bob.size()));
    if (!meas_pattern.empty()) append(out, pattern_equivalences(Side::measurement, Party::bob, meas_pattern));
    return out;
}

QuantumStrategy strategy(const OperationalScenario& s, BellState kind) {
    return {s.alice.observables, s.bob.observables, maximally_entangled_state(kind), kind};
}

CatalogEntry three_three() {
    OperationalScenario s{"33", trine_family(), negated_family(trine_family()), {}, {{0, 0, 0, 1, 1, 1}}, {}};
    s.equivalences = equivalences(s, {1, 1, 1}, {1, 1, 1});
    CatalogEntry e{"33", s, strategy(s, BellState::phi_plus), "unc", {}, std::nullopt};
    e.expected.local = Rational(5);
    e.expected.unc = Rational(4);
    e.expected.quantum = 6.0;
    e.expected.p_quantum = 5.0 / 6.0;
    e.expected.p_local = 7.0 / 9.0;
    e.expected.p_unc = 13.0 / 18.0;
    e.expected.delta_unc = Rational(5, 6);
    e.expected.window = Window::nonlocal;
    return e;
}

CatalogEntry odd_n(int n) {
    const auto fam = odd_n_family(n);
    std::vector<int> bob_sum(2 * static_cast<std::size_t>(n), 0);
    for (int t = 0; t < n; ++t) bob_sum[static_cast<std::size_t>(n + t)] = 1;
    const std::string id = "nn:" + std::to_string(n);
    OperationalScenario s{id, fam, fam, {}, {bob_sum}, {}};
    const std::vector<int> all_plus(static_cast<std::size_t>(n), 1);
    s.equivalences = equivalences(s, all_plus, all_plus);
    CatalogEntry e{id, s, strategy(s, BellState::psi_minus), "unc", {}, std::nullopt};
    const double dn = n;
    e.expected.unc = Rational(2 * n - 2);
    e.expected.quantum = 2.0 * dn;
    e.expected.p_quantum = 0.5 + 1.0 / dn;
    e.expected.p_unc = 0.5 + 1.0 / dn - 1.0 / (dn * dn);
    e.expected.delta_unc = Rational(1) - Rational(1, 2 * n);
    return e;
}

CatalogEntry four_three() {
    OperationalScenario s{"43", sic_family(), conjugate_family(mub_family()), {}, {{1, -1, -1, -1, 0, 0, 0}}, {}};
    s.equivalences = equivalences(s, {1, -1, -1, -1}, {});
    CatalogEntry e{"43", s, strategy(s, BellState::phi_plus), "unc", {}, std::nullopt};
    e.unc_label = "pnc";
    e.expected.local = Rational(6);
    e.expected.unc = Rational(4);
    e.expected.quantum = 4.0 * std::sqrt(3.0);
    e.expected.p_quantum = (1.0 + 1.0 / std::sqrt(3.0)) / 2.0;
    e.expected.p_local = 0.75;
    e.expected.p_unc = 2.0 / 3.0;
    e.expected.window = Window::nonlocal;
    return e;
}

CatalogEntry three_four() {
    OperationalScenario s{"34", conjugate_family(mub_family()), sic_family(), {}, {{0, 0, 0, 1, -1, -1, -1}}, {}};
    s.equivalences = equivalences(s, {}, {1, -1, -1, -1});
    CatalogEntry e{"34", s, strategy(s, BellState::phi_plus), "unc", {}, std::nullopt};
    e.expected.unc = Rational(4);
    e.expected.quantum = 4.0 * std::sqrt(3.0);
    e.expected.p_unc = 2.0 / 3.0;
    return e;
}

CatalogEntry four_four() {
    OperationalScenario s{"44", sic_family(), sic_family(), {},
                          {{1, -1, -1, -1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, -1, -1, -1}}, {}};
    s.equivalences = equivalences(s, {1, -1, -1, -1}, {1, -1, -1, -1});
    CatalogEntry e{"44", s, strategy(s, BellState::phi_plus), "unc", {}, std::nullopt};
    e.expected.local = Rational(8);
    e.expected.delta_unc = Rational(1);
    e.expected.window = Window::classical;
    e.expected.seesaw_at_most = 8.0;
    e.note = "claimed constrained bound 8 exceeds the relation-constrained optimum; reported, not resolved";
    return e;
}

}  // namespace

std::vector<std::string> catalog_ids() { return {"33", "nn:3", "nn:5", "nn:7", "nn:9", "nn:11", "43", "34", "44"}; }

bool is_catalog_id(std::string_view id) {
    return id == "33" || id == "43" || id == "34" || id == "44" || id.substr(0, 3) == "nn:";
}

CatalogEntry catalog_entry(std::string_view id) {
    if (id == "33") return three_three();
    if (id == "43") return four_three();
    if (id == "34") return three_four();
    if (id == "44") return four_four();
    if (id.substr(0, 3) == "nn:") {
        const auto digits = id.substr(3);
        int n = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc{} || end != digits.data() + digits.size())
            throw InvalidN("bad n in scenario id '" + std::string(id) + "'");
        return odd_n(n);
    }
    throw UnknownKind("unknown scenario '" + std::string(id) + "'");
}

OperationalScenario builtin_scenario(std::string_view id) { return catalog_entry(id).scenario; }

}  // namespace ctx

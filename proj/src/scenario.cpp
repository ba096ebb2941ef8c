#include "ctx/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctx/errors.hpp"

namespace ctx {

std::string_view to_string(Side side) { return side == Side::preparation ? "preparation" : "measurement"; }
std::string_view to_string(Party party) { return party == Party::alice ? "alice" : "bob"; }

std::string_view to_string(GameRule rule) { return rule == GameRule::equality ? "equality" : "sum5"; }

GameRule parse_game_rule(std::string_view name) {
    if (name == "equality") return GameRule::equality;
    if (name == "sum5") return GameRule::sum5;
    throw UnknownKind("unknown game rule '" + std::string(name) + "'");
}

bool OperationalEquivalence::is_trivial() const {
    return terms.size() == 2 && terms[0].index == terms[1].index && terms[0].sign == -terms[1].sign &&
           terms[0].coeff == Rational(1, 2) && terms[1].coeff == Rational(1, 2);
}

BlochVector ObservableFamily::bloch_sum() const {
    BlochVector s;
    for (const auto& a : observables) s = s + a.bloch();
    return s;
}

std::vector<OperationalEquivalence> OperationalScenario::equivalences_for(Side side,
                                                                          std::optional<Party> party) const {
    std::vector<OperationalEquivalence> out;
    for (const auto& eq : equivalences)
        if (eq.side == side && (!party || eq.party == *party)) out.push_back(eq);
    return out;
}

std::vector<std::vector<int>> OperationalScenario::relations_for(Party party) const {
    const std::size_t offset = party == Party::alice ? 0 : alice.size();
    const std::size_t count = family(party).size();
    std::vector<std::vector<int>> out;
    for (const auto& r : relations) {
        std::vector<int> part(r.begin() + static_cast<std::ptrdiff_t>(offset),
                              r.begin() + static_cast<std::ptrdiff_t>(offset + count));
        if (std::any_of(part.begin(), part.end(), [](int v) { return v != 0; })) out.push_back(std::move(part));
    }
    return out;
}

GameRule OperationalScenario::game_rule() const {
    if (game) return *game;
    if (alice.size() == bob.size()) return GameRule::equality;
    if ((alice.size() == 4 && bob.size() == 3) || (alice.size() == 3 && bob.size() == 4)) return GameRule::sum5;
    throw ValidationError("scenario '" + name + "' has no game rule for shape " + std::to_string(alice.size()) +
                          "x" + std::to_string(bob.size()));
}

// ------------------------------------------------------------- families

namespace {

QubitObservable unit(double x, double y, double z) { return QubitObservable::from_bloch({x, y, z}); }

double snap(double v) { return std::abs(v) < 1e-15 ? 0.0 : v; }

}  // namespace

ObservableFamily trine_family() {
    const double h = std::sqrt(3.0) / 2.0;
    return {"trine", {unit(0, 0, 1), unit(h, 0, -0.5), unit(-h, 0, -0.5)}, std::nullopt};
}

ObservableFamily odd_n_family(int n) {
    if (n < 3 || n % 2 == 0) throw InvalidN("odd_n_family needs an odd n >= 3, got " + std::to_string(n));
    ObservableFamily f{"odd-" + std::to_string(n), {unit(0, 0, 1)}, n};
    const double m = static_cast<double>(n - 1);
    const double z = -1.0 / m;
    const double r = std::sqrt(1.0 - z * z);
    for (int k = 0; k < n - 1; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / m;
        f.observables.push_back(unit(snap(r * std::cos(phi)), snap(r * std::sin(phi)), z));
    }
    return f;
}

ObservableFamily sic_family() {
    const double s = 1.0 / std::sqrt(3.0);
    return {"sic", {unit(s, s, s), unit(s, s, -s), unit(s, -s, s), unit(-s, s, s)}, std::nullopt};
}

ObservableFamily mub_family() { return {"mub", {unit(1, 0, 0), unit(0, 1, 0), unit(0, 0, 1)}, std::nullopt}; }

ObservableFamily conjugate_family(const ObservableFamily& f) {
    ObservableFamily out{f.name + "-conj", {}, f.n};
    for (const auto& a : f.observables) {
        const auto& b = a.bloch();
        out.observables.push_back(QubitObservable::from_bloch({b.x, -b.y, b.z}));
    }
    return out;
}

ObservableFamily negated_family(const ObservableFamily& f) {
    ObservableFamily out{f.name + "-neg", {}, f.n};
    for (const auto& a : f.observables) out.observables.push_back(a.negated());
    return out;
}

std::vector<OperationalEquivalence> trivial_equivalences(Side side, Party party, std::size_t count) {
    std::vector<OperationalEquivalence> out;
    for (std::size_t t = 0; t < count; ++t)
        out.push_back({side, party, {{t, 1, Rational(1, 2)}, {t, -1, Rational(1, 2)}}});
    return out;
}

std::vector<OperationalEquivalence> pattern_equivalences(Side side, Party party, const std::vector<int>& signs) {
    const Rational c(1, static_cast<long>(signs.size()));
    OperationalEquivalence pos{side, party, {}};
    OperationalEquivalence neg{side, party, {}};
    for (std::size_t t = 0; t < signs.size(); ++t) {
        pos.terms.push_back({t, signs[t], c});
        neg.terms.push_back({t, -signs[t], c});
    }
    return {pos, neg};
}

// ------------------------------------------------------------- verification

bool EquivalenceReport::all_pass() const {
    return std::all_of(per_constraint.begin(), per_constraint.end(), [](const auto& c) { return c.pass; });
}

double equivalence_residual(const OperationalScenario& s, const OperationalEquivalence& eq) {
    const auto& fam = s.family(eq.party);
    Mat2 sum;
    for (const auto& term : eq.terms) {
        if (term.index >= fam.size()) throw ValidationError("equivalence index out of range");
        const auto p = projector_of(fam.observables[term.index], term.sign).matrix();
        sum += p * Complex(to_double(term.coeff));
    }
    return (sum - Mat2::identity() * Complex(0.5)).max_abs();
}

EquivalenceReport verify_equivalences(const OperationalScenario& s, double tol) {
    EquivalenceReport rep;
    for (std::size_t i = 0; i < s.equivalences.size(); ++i) {
        const double r = equivalence_residual(s, s.equivalences[i]);
        rep.per_constraint.push_back({i, r, r <= tol});
        rep.max_residual = std::max(rep.max_residual, r);
    }
    return rep;
}

double relation_residual(const OperationalScenario& s, const SignedRelation& r) {
    if (r.size() != s.alice.size() + s.bob.size())
        throw ValidationError("relation length must equal the total number of observables");
    BlochVector a, b;
    for (std::size_t i = 0; i < s.alice.size(); ++i) a = a + s.alice.observables[i].bloch() * r[i];
    for (std::size_t i = 0; i < s.bob.size(); ++i) b = b + s.bob.observables[i].bloch() * r[s.alice.size() + i];
    return std::max(a.norm(), b.norm());
}

std::vector<std::vector<int>> discover_relations(const ObservableFamily& family) {
    const std::size_t n = family.size();
    if (n > 8) throw TooLarge("discover_relations supports at most 8 observables");
    std::vector<std::vector<int>> found;
    std::vector<int> s(n, -1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 3) s[i] = static_cast<int>(c % 3) - 1;
        const auto first = std::find_if(s.begin(), s.end(), [](int v) { return v != 0; });
        if (first == s.end() || *first < 0) continue;
        BlochVector sum;
        for (std::size_t i = 0; i < n; ++i) sum = sum + family.observables[i].bloch() * s[i];
        if (sum.norm() <= 1e-10) found.push_back(s);
    }
    auto support = [](const std::vector<int>& v) { return std::count_if(v.begin(), v.end(), [](int x) { return x != 0; }); };
    std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
        const auto sa = support(a), sb = support(b);
        if (sa != sb) return sa < sb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return found;
}

void validate(const OperationalScenario& s) {
    for (std::size_t i = 0; i < s.equivalences.size(); ++i) {
        const auto& eq = s.equivalences[i];
        const std::string where = "equivalence " + std::to_string(i);
        if (eq.terms.empty()) throw ValidationError(where + " has no terms");
        Rational total = 0;
        for (const auto& t : eq.terms) {
            if (t.coeff <= 0) throw ValidationError(where + " has a non-positive coefficient");
            if (t.sign != 1 && t.sign != -1) throw ValidationError(where + " has a sign other than +1/-1");
            if (t.index >= s.family(eq.party).size()) throw ValidationError(where + " references a missing observable");
            total += t.coeff;
        }
        if (total != 1) throw ValidationError(where + " coefficients sum to " + to_string(total) + ", not 1");
        const double r = equivalence_residual(s, eq);
        if (r > 1e-12) throw ValidationError(where + " does not decompose I/2 (residual " + std::to_string(r) + ")");
    }
    for (std::size_t i = 0; i < s.relations.size(); ++i) {
        if (relation_residual(s, s.relations[i]) > 1e-12)
            throw ValidationError("relation " + std::to_string(i) + " does not hold");
    }
}

}  // namespace ctx

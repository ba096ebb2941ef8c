#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctx/algebra.hpp"
#include "ctx/rational.hpp"

namespace ctx {

enum class Side { preparation, measurement };
enum class Party { alice, bob };

std::string_view to_string(Side side);
std::string_view to_string(Party party);

/// One term coeff * (I + sign*A_index)/2 of a decomposition of I/2.
struct EquivalenceTerm {
    std::size_t index = 0;
    int sign = 1;
    Rational coeff;

    bool operator==(const EquivalenceTerm&) const = default;
};

/// sum_k coeff_k * rho(index_k, sign_k) = I/2, read as states (preparation side)
/// or as effects (measurement side) of one party's observables.
struct OperationalEquivalence {
    Side side = Side::preparation;
    Party party = Party::alice;
    std::vector<EquivalenceTerm> terms;

    /// Trivial decompositions are the two projectors of one observable at 1/2 each.
    bool is_trivial() const;
    bool operator==(const OperationalEquivalence&) const = default;
};

struct ObservableFamily {
    std::string name;
    std::vector<QubitObservable> observables;
    /// Set for odd_n_family.
    std::optional<int> n;

    std::size_t size() const { return observables.size(); }
    BlochVector bloch_sum() const;
    bool operator==(const ObservableFamily&) const = default;
};

/// Integer relation over all observables, Alice's first then Bob's.
using SignedRelation = std::vector<int>;

enum class GameRule { equality, sum5 };

std::string_view to_string(GameRule rule);
GameRule parse_game_rule(std::string_view name);

struct OperationalScenario {
    std::string name;
    ObservableFamily alice;
    ObservableFamily bob;
    std::vector<OperationalEquivalence> equivalences;
    std::vector<SignedRelation> relations;
    std::optional<GameRule> game;

    const ObservableFamily& family(Party p) const { return p == Party::alice ? alice : bob; }
    /// Equivalences restricted to one side (and optionally one party).
    std::vector<OperationalEquivalence> equivalences_for(Side side, std::optional<Party> party = {}) const;
    /// The relation vectors restricted to one party's coordinates, dropping
    /// relations supported only on the other party.
    std::vector<std::vector<int>> relations_for(Party party) const;
    /// Game rule: explicit, else equality for square shapes and sum5 for 4x3/3x4.
    GameRule game_rule() const;

    bool operator==(const OperationalScenario&) const = default;
};

// ------------------------------------------------------------- families

ObservableFamily trine_family();
/// Throws InvalidN for even n or n < 3.
ObservableFamily odd_n_family(int n);
ObservableFamily sic_family();
ObservableFamily mub_family();
/// Bloch (x, -y, z) of every member: the complex-conjugate observables, which
/// Phi+ correlates perfectly with the originals.
ObservableFamily conjugate_family(const ObservableFamily& f);
ObservableFamily negated_family(const ObservableFamily& f);

/// The trivial decompositions (1/2)(P+ + P-) for every observable of a party.
std::vector<OperationalEquivalence> trivial_equivalences(Side side, Party party, std::size_t count);
/// (1/n) sum_t P^{s_t}_t = I/2 for sign pattern s (and its complement).
std::vector<OperationalEquivalence> pattern_equivalences(Side side, Party party, const std::vector<int>& signs);

// ------------------------------------------------------------- verification

struct EquivalenceCheck {
    std::size_t index = 0;
    double residual = 0.0;
    bool pass = false;
};

struct EquivalenceReport {
    double max_residual = 0.0;
    std::vector<EquivalenceCheck> per_constraint;
    bool all_pass() const;
};

/// Max-entry norm of sum coeff*(I + sign*A)/2 - I/2 for one equivalence.
double equivalence_residual(const OperationalScenario& s, const OperationalEquivalence& eq);
EquivalenceReport verify_equivalences(const OperationalScenario& s, double tol);

/// Max Bloch-norm residual of every signed relation.
double relation_residual(const OperationalScenario& s, const SignedRelation& r);

/// Sign vectors in {-1,0,1}^n, first nonzero entry positive, whose Bloch sums
/// vanish within 1e-10. Smallest support first, then lexicographic. n <= 8.
std::vector<std::vector<int>> discover_relations(const ObservableFamily& family);

/// Throws ValidationError when an equivalence fails at 1e-12, a relation
/// fails at 1e-12, coefficients are not positive and summing to 1, or an
/// index is out of range.
void validate(const OperationalScenario& s);

// ------------------------------------------------------------- JSON

OperationalScenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const OperationalScenario& s);

}  // namespace ctx

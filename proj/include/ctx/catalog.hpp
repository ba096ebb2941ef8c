#pragma once

// Built-in scenarios with their reference strategies and expected results.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctx/game.hpp"
#include "ctx/rational.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

/// Values a catalog run is checked against; unset fields are not checked.
struct Expected {
    std::optional<Rational> local;
    std::optional<Rational> unc;
    std::optional<double> quantum;
    std::optional<double> p_quantum;
    std::optional<double> p_local;
    std::optional<double> p_unc;
    std::optional<Rational> delta_unc;
    std::optional<Window> window;
    /// Upper limit the seesaw must not exceed (no-violation claims).
    std::optional<double> seesaw_at_most;
};

struct CatalogEntry {
    std::string id;
    OperationalScenario scenario;
    QuantumStrategy strategy;
    /// "unc" or "pnc", whichever name the constrained bound carries.
    std::string unc_label = "unc";
    Expected expected;
    /// Known disagreement worth surfacing in reports.
    std::optional<std::string> note;
};

/// "33", "nn:3" ... "nn:11", "43", "34", "44" in report order.
std::vector<std::string> catalog_ids();
bool is_catalog_id(std::string_view id);
/// Accepts "nn:<odd n>" for any odd n >= 3. Throws UnknownKind / InvalidN.
CatalogEntry catalog_entry(std::string_view id);
OperationalScenario builtin_scenario(std::string_view id);

}  // namespace ctx

#include "ctx/game.hpp"

#include <cmath>

#include "ctx/errors.hpp"

namespace ctx {

bool GameSpec::outputs_differ(std::size_t x, std::size_t y) const {
    return rule == GameRule::equality ? x == y : x + y + 2 == 5;
}

bool GameSpec::wins(std::size_t x, std::size_t y, int a, int b) const {
    return outputs_differ(x, y) ? a != b : a == b;
}

GameSpec game_of(const OperationalScenario& s) { return {s.alice.size(), s.bob.size(), s.game_rule()}; }

BellExpression bell_of_game(const GameSpec& g, std::string name) {
    std::vector<int> m;
    for (std::size_t x = 0; x < g.n_x; ++x)
        for (std::size_t y = 0; y < g.n_y; ++y) m.push_back(g.outputs_differ(x, y) ? -1 : 1);
    if (name.empty()) name = "beta_" + std::to_string(g.n_x) + std::to_string(g.n_y);
    return BellExpression(std::move(name), g.n_x, g.n_y, std::move(m));
}

double outcome_probability(const QuantumStrategy& s, std::size_t x, std::size_t y, int a, int b) {
    return expectation(s.state, tensor_product(projector_of(s.alice.at(x), a), projector_of(s.bob.at(y), b)));
}

double success_probability(const GameSpec& g, const QuantumStrategy& s) {
    if (s.alice.size() != g.n_x || s.bob.size() != g.n_y)
        throw DimensionMismatch("strategy has " + std::to_string(s.alice.size()) + "x" + std::to_string(s.bob.size()) +
                                " settings for a " + std::to_string(g.n_x) + "x" + std::to_string(g.n_y) + " game");
    double total = 0.0;
    for (std::size_t x = 0; x < g.n_x; ++x)
        for (std::size_t y = 0; y < g.n_y; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1})
                    if (g.wins(x, y, a, b)) total += outcome_probability(s, x, y, a, b);
    return total / static_cast<double>(g.n_x * g.n_y);
}

double success_from_bell(const GameSpec& g, double beta) {
    const double cells = static_cast<double>(g.n_x * g.n_y);
    if (!(std::abs(beta) <= cells + 1e-9))
        throw OutOfRange("Bell value " + std::to_string(beta) + " outside [-" + std::to_string(g.n_x * g.n_y) + ", " +
                         std::to_string(g.n_x * g.n_y) + "]");
    return 0.5 + beta / (2.0 * cells);
}

std::string_view to_string(Window w) {
    switch (w) {
        case Window::classical: return "classical";
        case Window::contextual_not_nonlocal: return "contextual_not_nonlocal";
        case Window::nonlocal: return "nonlocal";
    }
    return "classical";
}

WindowVerdict classify_window(double p, double p_unc, double p_local) {
    constexpr double margin = 1e-9;
    WindowVerdict v;
    const double to_unc = p - p_unc, to_local = p - p_local;
    v.margin = std::abs(to_unc) < std::abs(to_local) ? to_unc : to_local;
    if (to_local > margin) {
        v.tier = Window::nonlocal;
    } else if (to_unc > margin) {
        v.tier = Window::contextual_not_nonlocal;
        v.boundary = to_local > -margin;
    } else {
        v.tier = Window::classical;
        v.boundary = to_unc > -margin;
    }
    return v;
}

GameReport game_report(std::string id, const GameSpec& g, double p_quantum, double local, double unc) {
    GameReport r;
    r.game = std::move(id);
    r.p_quantum = p_quantum;
    r.p_local = success_from_bell(g, local);
    r.p_unc = success_from_bell(g, unc);
    r.window = classify_window(r.p_quantum, r.p_unc, r.p_local);
    return r;
}

}  // namespace ctx

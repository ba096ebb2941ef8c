#pragma once

// Two-party binary-output communication games and their Bell expressions.
//
// Every game here fixes, per input pair, whether the outputs must agree or
// differ. Writing P(a,b|x,y) = [1 + a<A_x> + b<B_y> + ab<A_x B_y>]/4, the
// marginal terms cancel between the two winning output pairs, so the average
// success probability is 1/2 + beta/(2 n_x n_y).

#include <optional>
#include <string>
#include <vector>

#include "ctx/algebra.hpp"
#include "ctx/bell.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

struct GameSpec {
    std::size_t n_x = 0;
    std::size_t n_y = 0;
    GameRule rule = GameRule::equality;

    /// Inputs are 0-based here; sum5 reads them 1-based (x+1 + y+1 == 5).
    bool outputs_differ(std::size_t x, std::size_t y) const;
    bool wins(std::size_t x, std::size_t y, int a, int b) const;
};

GameSpec game_of(const OperationalScenario& s);

/// +1 where winning needs a == b, -1 where it needs a != b.
BellExpression bell_of_game(const GameSpec& g, std::string name = {});

struct QuantumStrategy {
    std::vector<QubitObservable> alice;
    std::vector<QubitObservable> bob;
    TwoQubitState state;
    std::optional<BellState> bell;  // set when the state is a named Bell state
};

/// P(a,b|x,y) = Tr[rho (P_a^{A_x} (x) P_b^{B_y})].
double outcome_probability(const QuantumStrategy& s, std::size_t x, std::size_t y, int a, int b);
/// Average over inputs of the winning probability. Throws DimensionMismatch.
double success_probability(const GameSpec& g, const QuantumStrategy& s);
/// 1/2 + beta/(2 n_x n_y). Throws OutOfRange when |beta| > n_x n_y.
double success_from_bell(const GameSpec& g, double beta);

enum class Window { classical, contextual_not_nonlocal, nonlocal };
std::string_view to_string(Window w);

struct WindowVerdict {
    Window tier = Window::classical;
    /// Within 1e-9 of a threshold; the lower tier is reported.
    bool boundary = false;
    /// Signed distance to the nearest threshold.
    double margin = 0.0;
    std::string label() const { return boundary ? std::string(to_string(tier)) + " (boundary)" : std::string(to_string(tier)); }
};

/// classical when p <= p_unc, contextual_not_nonlocal when p_unc < p <= p_local,
/// nonlocal when p > p_local; strict comparisons with a 1e-9 margin.
WindowVerdict classify_window(double p, double p_unc, double p_local);

struct GameReport {
    std::string game;
    double p_quantum = 0.0;
    double p_local = 0.0;
    double p_unc = 0.0;
    WindowVerdict window;
};

GameReport game_report(std::string id, const GameSpec& g, double p_quantum, double local, double unc);

}  // namespace ctx

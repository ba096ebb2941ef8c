// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// budgets fixed below. Optional argv[1]: path to the ctxgame executable, used
// for the byte-identical report check across two processes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "ctx/bounds.hpp"
#include "ctx/catalog.hpp"
#include "ctx/game.hpp"
#include "ctx/ontology.hpp"
#include "ctx/report.hpp"
#include "support.hpp"

using namespace ctx;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

BellExpression expr_of(const CatalogEntry& c) { return bell_of_game(game_of(c.scenario), c.id); }

ConstrainedBound unc_of(const CatalogEntry& c) {
    return constrained_bound(expr_of(c), alice_polytope(c.scenario), bob_polytope(c.scenario));
}

double quantum_of(const CatalogEntry& c) {
    return quantum_value_at(expr_of(c), c.strategy.alice, c.strategy.bob, c.strategy.state);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double v) { return format_double(v); }

// ------------------------------------------------------------- criteria

Outcome criterion_1() {
    Outcome o;
    const auto c = catalog_entry("33");
    const auto g = game_of(c.scenario);
    const auto local = local_bound(expr_of(c)).value;
    const auto unc = unc_of(c).value;
    const double q = quantum_of(c);
    o.require(local == 5, "local " + to_string(local));
    o.require(unc == 4, "unc " + to_string(unc));
    o.require(near(q, 6.0, 1e-9), "quantum " + num(q));
    const double pq = success_probability(g, c.strategy);
    const double pl = success_from_bell(g, to_double(local));
    const double pu = success_from_bell(g, to_double(unc));
    o.require(near(pq, 0.83333, 1e-5), "p_quantum " + num(pq));
    o.require(near(pl, 0.77777, 1e-5), "p_local " + num(pl));
    o.require(near(pu, 0.72222, 1e-5), "p_unc " + num(pu));
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const auto d33 = delta_unc_bound(builtin_scenario("33"));
    o.require(d33.value == Rational(5, 6), "delta_unc(33) " + to_string(d33.value));
    auto eta = d33.certificate.eta;
    std::sort(eta.begin(), eta.end());
    o.require(eta == std::vector<Rational>{Rational(1, 2), 1, 1}, "eta is not a permutation of (1, 1/2, 1)");
    for (int n : {5, 7, 9, 11}) {
        const auto d = delta_unc_bound(builtin_scenario("nn:" + std::to_string(n)));
        o.require(d.value == Rational(1) - Rational(1, 2 * n), "delta_unc(nn:" + std::to_string(n) + ") " + to_string(d.value));
    }
    for (const auto& id : catalog_ids()) {
        const double dq = delta_quantum(builtin_scenario(id));
        o.require(near(dq, 1.0, 1e-12), "delta_quantum(" + id + ") " + num(dq));
    }
    const auto d44 = delta_unc_bound(builtin_scenario("44"));
    o.require(d44.value == 1, "delta_unc(44) " + to_string(d44.value));
    return o;
}

Outcome criterion_3() {
    Outcome o;
    for (int n : {3, 5, 7}) {
        const auto c = catalog_entry("nn:" + std::to_string(n));
        const auto g = game_of(c.scenario);
        const std::string tag = "n=" + std::to_string(n) + " ";
        const double q = quantum_of(c);
        const auto unc = unc_of(c).value;
        o.require(near(q, 2.0 * n, 1e-9), tag + "quantum " + num(q));
        o.require(unc == 2 * n - 2, tag + "unc " + to_string(unc));
        const double pq = success_probability(g, c.strategy);
        const double pu = success_from_bell(g, to_double(unc));
        o.require(near(pq, 0.5 + 1.0 / n, 1e-9), tag + "p_quantum " + num(pq));
        o.require(near(pu, 0.5 + 1.0 / n - 1.0 / (n * n), 1e-9), tag + "p_unc " + num(pu));
    }
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const auto c = catalog_entry("43");
    const auto g = game_of(c.scenario);
    const auto local = local_bound(expr_of(c)).value;
    const auto cb = unc_of(c);
    const double q = quantum_of(c);
    o.require(local == 6, "local " + to_string(local));
    o.require(cb.value == 4, "constrained " + to_string(cb.value));
    o.require(cb.a[0] == cb.a[1] + cb.a[2] + cb.a[3], "maximizer violates a1 = a2 + a3 + a4");
    o.require(near(q, 4.0 * std::sqrt(3.0), 1e-9) && near(q, 6.928203, 1e-6), "quantum " + num(q));
    const double pq = success_probability(g, c.strategy);
    const double pl = success_from_bell(g, to_double(local));
    const double pu = success_from_bell(g, to_double(cb.value));
    o.require(near(pq, 0.78868, 1e-5), "p_quantum " + num(pq));
    o.require(near(pl, 0.75, 1e-5), "p_local " + num(pl));
    o.require(near(pu, 0.66667, 1e-5), "p_unc " + num(pu));
    return o;
}

Outcome criterion_5() {
    Outcome o;
    const auto c = catalog_entry("34");
    const auto unc = unc_of(c).value;
    o.require(unc == 4, "constrained " + to_string(unc));
    const auto ss = quantum_seesaw(expr_of(c), 20, 0);
    o.require(ss.value >= 4.0 * std::sqrt(3.0) - 1e-6, "seesaw " + num(ss.value));
    o.require(ss.monotone, "seesaw not monotone");
    return o;
}

Outcome criterion_6() {
    Outcome o;
    {
        const auto p = compile_preparation(builtin_scenario("33"));
        const auto v = decide(p);
        o.require(v.status == Verdict::infeasible && v.certificate && v.verify(p), "(3,3) preparation");
    }
    {
        const auto p = compile_preparation(builtin_scenario("44"));
        const auto v = decide(p);
        o.require(v.status == Verdict::feasible && v.verify(p), "(4,4) preparation");
    }
    {
        const auto p = compile_measurement(builtin_scenario("33"), ResponseMode::deterministic);
        const auto v = decide(p);
        o.require(v.status == Verdict::infeasible && v.verify(p), "(3,3) deterministic measurement");
    }
    {
        const auto p = compile_measurement(builtin_scenario("33"), ResponseMode::indeterministic);
        const auto v = decide(p);
        o.require(v.status == Verdict::feasible && v.verify(p), "(3,3) indeterministic measurement");
    }
    {
        const auto p = compile_measurement(builtin_scenario("34"), ResponseMode::deterministic, Party::bob);
        const auto v = decide(p);
        o.require(v.status == Verdict::feasible && v.verify(p), "(3,4) Bob deterministic measurement");
    }
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const auto c = catalog_entry("44");
    const auto g = game_of(c.scenario);
    const auto local = local_bound(expr_of(c)).value;
    o.require(local == 8, "local " + to_string(local));
    const auto ss = quantum_seesaw(expr_of(c), 100, 0);
    o.require(ss.value <= 8.0 + 1e-8, "seesaw " + num(ss.value));
    const auto unc = unc_of(c).value;
    const auto r = game_report("44", g, success_probability(g, c.strategy), to_double(local), to_double(unc));
    o.require(r.window.tier == Window::classical, "window " + r.window.label());
    return o;
}

Outcome criterion_8() {
    using namespace testing_support;
    Outcome o;
    std::mt19937_64 rng(8);

    const std::vector<GameSpec> shapes{{3, 3, GameRule::equality}, {5, 5, GameRule::equality}, {7, 7, GameRule::equality},
                                       {4, 4, GameRule::equality}, {4, 3, GameRule::sum5},     {3, 4, GameRule::sum5}};
    double worst_moment = 0.0;
    for (const auto& g : shapes) {
        const auto e = bell_of_game(g);
        for (int i = 0; i < 1000; ++i) {
            std::vector<QubitObservable> a, b;
            for (std::size_t x = 0; x < g.n_x; ++x) a.push_back(random_observable(rng));
            for (std::size_t y = 0; y < g.n_y; ++y) b.push_back(random_observable(rng));
            const QuantumStrategy s{a, b, TwoQubitState::pure(random_pure(rng)), std::nullopt};
            const double p = success_probability(g, s);
            const double beta = quantum_value_at(e, a, b, s.state);
            worst_moment = std::max(worst_moment, std::abs(p - (0.5 + beta / (2.0 * g.n_x * g.n_y))));
        }
    }
    o.require(worst_moment <= 1e-12, "moment identity " + num(worst_moment));

    double worst_proj = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_observable(rng);
        const Mat2 p = projector_of(a, 1).matrix(), m = projector_of(a, -1).matrix();
        worst_proj = std::max({worst_proj, (p + m - Mat2::identity()).max_abs(), (p * m).max_abs()});
    }
    o.require(worst_proj <= 1e-12, "projectors " + num(worst_proj));

    double worst_eig = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Mat4 h = random_hermitian(rng);
        const auto pairs = eigen_hermitian(h);
        double bound = 0.0;
        for (std::size_t r = 0; r < 4; ++r) {
            double row = 0.0;
            for (std::size_t c = 0; c < 4; ++c) row += std::abs(h(r, c));
            bound = std::max(bound, row);
        }
        auto roots = real_roots(char_poly(h), bound + 1.0);
        std::sort(roots.begin(), roots.end());
        for (std::size_t k = 0; k < 4; ++k) worst_eig = std::max(worst_eig, std::abs(pairs[k].value - roots[k]));
    }
    o.require(worst_eig <= 1e-8, "eigenvalues " + num(worst_eig));

    for (const auto& id : catalog_ids()) {
        const auto c = catalog_entry(id);
        o.require(unc_of(c).value <= local_bound(expr_of(c)).value, "constrained > local for " + id);
    }
    return o;
}

std::string capture(const std::string& command) {
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    return out;
}

Outcome criterion_9(const char* tool) {
    Outcome o;
    RunConfig cfg;
    cfg.command = "report";
    cfg.seed = 7;
    std::ostringstream a, b, err;
    const int ca = run_command(cfg, a, err);
    const int cb = run_command(cfg, b, err);
    o.require(ca == 0 && cb == 0, "report exit codes " + std::to_string(ca) + "/" + std::to_string(cb));
    o.require(!a.str().empty() && a.str() == b.str(), "in-process reports differ");
    if (tool) {
        const std::string cmd = std::string("\"") + tool + "\" report --seed 7";
        const auto pa = capture(cmd), pb = capture(cmd);
        o.require(!pa.empty() && pa == pb, "two processes produced different reports");
        o.require(pa == a.str(), "process report differs from the in-process report");
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const char* tool = argc > 1 ? argv[1] : nullptr;
    struct Criterion {
        int id;
        const char* what;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "(3,3) local 5, constrained 4, quantum 6, probabilities", 1.0, criterion_1},
        {2, "Delta bounds: 5/6, 1-1/(2n), quantum 1, (4,4) = 1", 2.0, criterion_2},
        {3, "(n,n) games for n = 3, 5, 7", 5.0, criterion_3},
        {4, "(4,3) local 6, constrained 4, quantum 4 sqrt 3, probabilities", 1.0, criterion_4},
        {5, "(3,4) constrained 4, seesaw >= 4 sqrt 3 - 1e-6 over 20 restarts", 10.0, criterion_5},
        {6, "feasibility verdicts re-verified exactly", 2.0, criterion_6},
        {7, "(4,4) local 8, no seesaw violation over 100 restarts, classical window", 20.0, criterion_7},
        {8, "property suites", 60.0, criterion_8},
        {9, "report is byte-identical across runs with one seed", 60.0, [tool] { return criterion_9(tool); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs of %.0fs", secs, c.budget_s);
        o.require(secs <= c.budget_s, std::string("over time budget"));
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.what << " [" << timing << "]";
        if (!o.pass) std::cout << " -- " << o.detail;
        std::cout << '\n';
        failed += !o.pass;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}

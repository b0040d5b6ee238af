// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "pomlab/nsbox.hpp"
#include "pomlab/optimize.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/rng.hpp"
#include "pomlab/toybit.hpp"

using namespace pomlab;

namespace {

const double kQuantum = 0.5 * (1 + 1 / std::numbers::sqrt2);
const double kTsirelson = 2 * std::numbers::sqrt2;

struct Verdict {
    bool pass;
    std::string detail;
};

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char *pattern, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

NSBox random_box(Rng &rng) {
    std::vector<NSBox> vertices;
    for (const auto &s : local_deterministic_strategies()) {
        vertices.push_back(make_local_box(s));
    }
    for (int k = 0; k < 8; ++k) {
        BoxTable t{};
        for (int a = 0; a < 2; ++a) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    int b = a ^ (x & y) ^ ((k >> 2) & x) ^ ((k >> 1) & 1 & y) ^ (k & 1);
                    t[box_index(a, b, x, y)] = 0.5;
                }
            }
        }
        vertices.push_back(validate_box(t));
    }
    // Sparse mixtures reach well into the nonlocal region.
    std::vector<NSBox> picked;
    std::vector<double> w;
    double total = 0;
    for (int k = 0; k < 3; ++k) {
        picked.push_back(vertices[rng.below(vertices.size())]);
        w.push_back(-std::log(1.0 - rng.uniform()));
        total += w.back();
    }
    for (auto &v : w) {
        v /= total;
    }
    return mix_boxes(picked, w);
}

Verdict quantum_optimum() {
    Stopwatch clock;
    auto g = pom_success(PomInstance(2), quantum_optimal_strategy());
    double t = clock.seconds();
    double err = std::abs(g.average - kQuantum);
    return {err <= 1e-12 && t < 1e-3,
            "p=" + fmt("%.12f", g.average) + fmt(" |err|=%.2e", err) + fmt(" time=%.2es", t)};
}

Verdict seesaw_bound() {
    Stopwatch clock;
    auto r = seesaw_chsh({.dim = 2, .restarts = 20, .tol = 1e-12, .seed = 0});
    double t = clock.seconds();
    double p = pom_from_chsh(r.best_score);
    bool ok = r.best_score >= kTsirelson - 1e-6 && r.best_score <= kTsirelson + 1e-9 && p >= 0.853552 &&
              p <= 0.853554 && t < 5.0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto s = seesaw_chsh({.dim = 2, .restarts = 20, .tol = 1e-12, .seed = seed});
        worst = std::max(worst, pom_from_chsh(s.best_score));
    }
    ok = ok && worst <= kQuantum + 1e-9;
    return {ok, fmt("S=%.12f", r.best_score) + fmt(" p=%.9f", p) + fmt(" max_p(100 seeds)=%.12f", worst) +
                    fmt(" time=%.3fs", t)};
}

Verdict boxworld_perfect() {
    auto g = pom_success(PomInstance(2), boxworld_optimal_strategy());
    return {g.average == 1.0 && g.parity_leak == 0.0,
            fmt("p=%.17g", g.average) + fmt(" parity_leak=%.17g", g.parity_leak)};
}

Verdict classical_bound() {
    Stopwatch clock;
    auto four = classical_oracle(2, 4, {.exact_rational = true});
    auto five = classical_oracle(2, 5, {.exact_rational = true});
    double t = clock.seconds();
    return {four.exact == "3/4" && five.exact == "3/4" && t < 30.0,
            "alphabet4=" + four.exact + " alphabet5=" + five.exact + fmt(" time=%.3fs", t)};
}

Verdict local_box_bound() {
    Stopwatch clock;
    auto r = local_box_oracle();
    double t = clock.seconds();
    return {std::abs(r.value - 0.75) <= 1e-12 && t < 1.0, fmt("max=%.15f", r.value) + fmt(" time=%.2es", t)};
}

Verdict correlation_chain() {
    PomInstance inst(2);
    double worst = 0;
    double worst_b = 0;
    for (double g : {0.0, 0.25, 0.5, 1 / std::numbers::sqrt2, 1.0}) {
        auto box = make_isotropic_box(g);
        worst = std::max(worst, std::abs(pom_success(inst, correlation_protocol(box)).average - 0.5 * (1 + g)));
        worst_b = std::max(worst_b, std::abs(chsh_value(box) - 2 * (1 + g)));
    }
    double pr = pom_success(inst, correlation_protocol(make_pr_box())).average;
    double q = pom_success(inst, correlation_protocol(make_isotropic_box(1 / std::numbers::sqrt2))).average;
    bool ok = worst <= 1e-12 && worst_b <= 1e-12 && pr == 1.0 && std::abs(q - kQuantum) <= 1e-12;
    return {ok, fmt("max|p-(1+g)/2|=%.2e", worst) + fmt(" max|B-2(1+g)|=%.2e", worst_b) + fmt(" pr=%.17g", pr) +
                    fmt(" p(1/sqrt2)=%.10f", q)};
}

Verdict depolarization_invariance() {
    Rng rng(20240601);
    double worst_b = 0;
    double worst_orbit = 0;
    for (int k = 0; k < 1000; ++k) {
        auto box = random_box(rng);
        auto d = depolarize(box);
        worst_b = std::max(worst_b, std::abs(chsh_value(d.box) - chsh_value(box)));
        double lo[2] = {2, 2};
        double hi[2] = {-1, -1};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int x = 0; x < 2; ++x) {
                    for (int y = 0; y < 2; ++y) {
                        int c = a ^ b ^ (x & y);
                        lo[c] = std::min(lo[c], d.box.p(a, b, x, y));
                        hi[c] = std::max(hi[c], d.box.p(a, b, x, y));
                    }
                }
            }
        }
        worst_orbit = std::max({worst_orbit, hi[0] - lo[0], hi[1] - lo[1]});
    }
    return {worst_b <= 1e-12 && worst_orbit <= 1e-12,
            fmt("max|dB|=%.2e", worst_b) + fmt(" max orbit spread=%.2e", worst_orbit)};
}

Verdict remote_state_preparation() {
    auto strat = remote_state_prep_strategy();
    const auto &s = std::get<EntangledStrategy>(strat.body);
    const Matrix half_identity = Matrix::identity(2) * Complex(0.5);
    double worst_mixed = 0;
    double worst_target = 0;
    auto branches = steered_branches(s);
    const BlochVector targets[4] = {{0, 0, 1}, {1, 0, 0}, {-1, 0, 0}, {0, 0, -1}};
    for (std::size_t x = 0; x < 4; ++x) {
        worst_mixed = std::max(worst_mixed, trace_distance(bob_unconditional_state(s, x).matrix(), half_identity));
        for (int k = 0; k < 2; ++k) {
            worst_target = std::max(
                worst_target, trace_distance(branches[x][k].corrected.matrix(), density_from_bloch(targets[x]).matrix()));
        }
    }
    auto g = pom_success(PomInstance(2), strat);
    double err = std::abs(g.average - kQuantum);
    return {worst_mixed <= 1e-12 && worst_target <= 1e-12 && err <= 1e-12,
            fmt("D(bob, I/2)=%.2e", worst_mixed) + fmt(" D(corrected, target)=%.2e", worst_target) +
                fmt(" |p-pQ|=%.2e", err)};
}

Verdict toy_theory() {
    Stopwatch clock;
    const OnticDistribution flat{0.25, 0.25, 0.25, 0.25};
    std::vector<Ensemble> preps;
    for (auto m : kToyMeasurements) {
        preps.push_back(steer(m));
    }
    auto report = noncontextuality_check(preps);
    bool ontic = report.noncontextual &&
                 std::all_of(report.ontic.begin(), report.ontic.end(), [&](const auto &d) { return d == flat; });
    const std::array<std::array<EpistemicState, 2>, 3> expected{{
        {EpistemicState::pure(1, 2), EpistemicState::pure(3, 4)},
        {EpistemicState::pure(1, 3), EpistemicState::pure(2, 4)},
        {EpistemicState::pure(1, 4), EpistemicState::pure(2, 3)},
    }};
    bool steering = true;
    for (std::size_t k = 0; k < 3; ++k) {
        steering = steering && preps[k].size() == 2 && preps[k][0].probability == 0.5 &&
                   preps[k][1].probability == 0.5 && preps[k][0].state == expected[k][0] &&
                   preps[k][1].state == expected[k][1];
    }
    double value = toy_pom_oracle().value;
    double t = clock.seconds();
    return {ontic && steering && value == 0.75 && t < 10.0,
            std::string("ontic=") + (ontic ? "uniform" : "mismatch") + " steering=" + (steering ? "exact" : "mismatch") +
                fmt(" oracle=%.17g", value) + fmt(" time=%.3fs", t)};
}

Verdict monte_carlo() {
    PomInstance inst(2);
    const std::uint64_t rounds = 1000000;
    bool ok = true;
    std::string detail;
    for (const auto &name : builtin_names()) {
        auto strat = builtin_strategy(name);
        double p = pom_success(inst, strat).average;
        auto a = run_rounds(inst, strat, rounds, 0);
        auto b = run_rounds(inst, strat, rounds, 0);
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(rounds));
        double z = sigma > 0 ? std::abs(a.empirical_rate - p) / sigma : (a.empirical_rate == p ? 0.0 : INFINITY);
        bool same = a.successes == b.successes && a.empirical_rate == b.empirical_rate;
        ok = ok && z <= 4.0 && same;
        detail += name + fmt(" z=%.2f", z) + (same ? "" : " (rerun differs)") + "; ";
    }
    return {ok, detail};
}

Verdict score_conversions() {
    Rng rng(1111);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        std::size_t d = 2 + (k % 2);
        auto psi = random_pure_state(d * d, rng);
        std::array<Observable, 2> a{random_dichotomic(d, rng), random_dichotomic(d, rng)};
        std::array<Observable, 2> b{random_dichotomic(d, rng), random_dichotomic(d, rng)};
        double S = bell_value(psi, a, b);
        auto box = make_quantum_box(DensityOperator::from_pure(psi), a, b);
        worst = std::max(worst, std::abs(chsh_value(box) - chsh_B_from_S(S)));
    }
    return {worst <= 1e-10, fmt("max|B-(2+S/2)|=%.2e", worst)};
}

Verdict headline_ordering() {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run({"bounds", "--verify"}, out, err);
    return {code == 0, "pomlab bounds --verify exit " + std::to_string(code) + (err.str().empty() ? "" : ": " + err.str())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 quantum optimum", quantum_optimum},
        {"2 seesaw reaches and never exceeds the quantum bound", seesaw_bound},
        {"3 box world is perfect and parity oblivious", boxworld_perfect},
        {"4 classical LP bound (rational)", classical_bound},
        {"5 local boxes do not help", local_box_bound},
        {"6 correlation protocol chain", correlation_chain},
        {"7 depolarization invariance", depolarization_invariance},
        {"8 remote state preparation", remote_state_preparation},
        {"9 toy theory", toy_theory},
        {"10 Monte Carlo consistency", monte_carlo},
        {"11 score conversions", score_conversions},
        {"12 headline ordering via bounds --verify", headline_ordering},
    };
    int failures = 0;
    for (const auto &[name, check] : criteria) {
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s  [%s] %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

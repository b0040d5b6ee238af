#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pomlab/error.hpp"
#include "pomlab/nsbox.hpp"
#include "pomlab/optimize.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/serialize.hpp"
#include "pomlab/toybit.hpp"
#include "report.hpp"

namespace pomlab::cli {

namespace {

class VerificationFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

int parse_bit(char c) {
    if (c != '0' && c != '1') {
        throw ValidationError(std::string("expected a bit, got '") + c + "'");
    }
    return c - '0';
}

double parse_double(const std::string &text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw ValidationError("not a number: '" + text + "'");
    }
    return v;
}

// pr | isotropic:G | local:fA,fB (two-character output tables, e.g. local:01,11) | path
NSBox parse_box(const std::string &text) {
    if (text == "pr") {
        return make_pr_box();
    }
    if (text.rfind("isotropic:", 0) == 0) {
        return make_isotropic_box(parse_double(text.substr(10)));
    }
    if (text.rfind("local:", 0) == 0) {
        std::string body = text.substr(6);
        if (body.size() != 5 || body[2] != ',') {
            throw ValidationError("local box must look like local:fA,fB with two-bit tables, e.g. local:01,10");
        }
        LocalDeterministic s{{parse_bit(body[0]), parse_bit(body[1])}, {parse_bit(body[3]), parse_bit(body[4])}};
        return make_local_box(s);
    }
    return box_from_json(load_json_file(text));
}

PomStrategy parse_strategy_arg(const std::string &text) {
    auto names = builtin_names();
    if (std::find(names.begin(), names.end(), text) != names.end() || text == "classical_single_bit") {
        return builtin_strategy(text);
    }
    std::ifstream probe(text);
    if (!probe) {
        std::string known;
        for (const auto &n : names) {
            known += " " + n;
        }
        throw ValidationError("'" + text + "' is neither a built-in strategy nor a readable file; built-ins:" +
                              known);
    }
    return strategy_from_json(load_json_file(text));
}

std::string local_label(const LocalDeterministic &s) {
    return std::to_string(s.alice[0]) + std::to_string(s.alice[1]) + "," + std::to_string(s.bob[0]) +
           std::to_string(s.bob[1]);
}

std::string distribution_text(const OnticDistribution &d) {
    std::string out;
    for (std::size_t k = 0; k < d.size(); ++k) {
        out += (k ? " " : "") + format_number(d[k]);
    }
    return out;
}

std::string ensemble_text(const Ensemble &e) {
    std::string out;
    for (const auto &member : e) {
        out += (out.empty() ? "" : " + ") + format_number(member.probability) + "*" + member.state.label();
    }
    return out;
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw VerificationFailure(what);
    }
}

struct SeesawArgs {
    std::size_t dim = 2;
    unsigned restarts = 20;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    int max_iterations = 1000;
    std::string trace_path;
};

struct Args {
    std::string format = "table";
    bool verify = false;
    std::string strategy;
    std::uint64_t rounds = 1000000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string box;
    SeesawArgs seesaw;
    int n = 2;
    std::size_t alphabet = 4;
    bool exact_rational = false;
    std::string toy_check;
};

Report bounds_report(bool verify) {
    PomInstance inst(2);
    const double classical = pom_success(inst, classical_single_bit_strategy(1)).average;
    const auto quantum = pom_success(inst, quantum_optimal_strategy());
    const auto boxworld = pom_success(inst, boxworld_optimal_strategy());
    const auto toy = toy_pom_oracle();

    Report r;
    r.columns = {"theory", "success"};
    if (verify) {
        r.columns.push_back("check");
    }
    std::vector<std::vector<Cell>> rows{{std::string("classical"), classical},
                                        {std::string("quantum"), quantum.average},
                                        {std::string("boxworld"), boxworld.average},
                                        {std::string("toybit"), toy.value}};
    if (verify) {
        auto oracle = classical_oracle(2, 4, ClassicalOracleOptions{.exact_rational = true});
        require(std::abs(oracle.value - classical) <= 1e-9,
                "classical row " + format_number(classical) + " differs from the LP oracle " + oracle.exact);
        rows[0].push_back(std::string("lp oracle ") + oracle.exact);

        auto seesaw = seesaw_chsh(SeesawOptions{.dim = 2, .restarts = 20, .tol = 1e-12, .seed = 0});
        const double p = pom_from_chsh(seesaw.best_score);
        require(std::abs(p - quantum.average) <= 1e-6,
                "quantum row differs from the seesaw optimum " + format_number(p));
        require(quantum.legal(), "quantum strategy leaks parity");
        rows[1].push_back("seesaw " + format_number(p));

        require(boxworld.legal(), "box-world strategy leaks parity");
        rows[2].push_back(std::string("parity leak ") + format_number(boxworld.parity_leak));

        ToyStrategy witness{{toy.encoding.begin(), toy.encoding.end()}, {toy.decoding.begin(), toy.decoding.end()}};
        auto toy_game = pom_success(inst, PomStrategy{2, witness});
        require(std::abs(toy_game.average - toy.value) <= 1e-9 && toy_game.legal(),
                "toy oracle witness does not reproduce its value");
        rows[3].push_back("witness " + format_number(toy_game.average));

        require(classical < quantum.average && quantum.average < boxworld.average,
                "expected classical < quantum < boxworld");
        require(std::abs(toy.value - classical) <= 1e-9, "toy bound differs from the classical bound");
    }
    for (auto &row : rows) {
        r.add_row(std::move(row));
    }
    return r;
}

Report game_report(const PomInstance &inst, const GameResult &g) {
    Report r;
    r.columns = {"x", "y", "p"};
    for (std::uint32_t x = 0; x < inst.num_strings(); ++x) {
        for (int y = 1; y <= inst.n(); ++y) {
            r.add_row({inst.label(x), std::int64_t{y}, g.per_pair[x][y - 1]});
        }
    }
    r.add_row({std::string("average"), std::string(""), g.average});
    r.add_row({std::string("parity_leak"), std::string(""), g.parity_leak});
    r.json = game_result_to_json(inst, g);
    return r;
}

Report round_report(const RoundLog &log) {
    Report r;
    r.columns = {"rounds", "successes", "seed", "empirical_rate"};
    r.add_row({log.rounds, log.successes, log.seed, log.empirical_rate});
    r.json = round_log_to_json(log);
    return r;
}

Report chsh_report(const NSBox &box) {
    const double B = chsh_value(box);
    const auto sym = chsh_symmetries(box);
    const auto locality = is_local(box);
    Report r;
    r.columns = {"quantity", "value"};
    r.add_row({std::string("B"), B});
    r.add_row({std::string("S"), 2.0 * (B - 2.0)});
    r.add_row({std::string("max_symmetry"), *std::max_element(sym.begin(), sym.end())});
    r.add_row({std::string("nonlocal"), !locality.local});
    Json symmetries = Json::array();
    for (double v : sym) {
        symmetries.push_back(v);
    }
    r.json = {{"B", B},
              {"S", 2.0 * (B - 2.0)},
              {"symmetries", symmetries},
              {"nonlocal", !locality.local},
              {"witness_symmetry", locality.witness_symmetry}};
    return r;
}

Report depolarize_report(const NSBox &box) {
    auto d = depolarize(box);
    Report r;
    r.columns = {"quantity", "value"};
    r.add_row({std::string("B_in"), chsh_value(box)});
    r.add_row({std::string("B_out"), chsh_value(d.box)});
    r.add_row({std::string("gamma"), d.canonical.gamma});
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    std::ostringstream key;
                    key << "p(" << a << b << "|" << x << y << ")";
                    r.add_row({key.str(), d.box.p(a, b, x, y)});
                }
            }
        }
    }
    r.json = {{"B_in", chsh_value(box)},
              {"B_out", chsh_value(d.box)},
              {"gamma", d.canonical.gamma},
              {"box", box_to_json(d.box)}};
    return r;
}

Report seesaw_report(const Args &args) {
    SeesawOptions opt;
    opt.dim = args.seesaw.dim;
    opt.restarts = args.seesaw.restarts;
    opt.tol = args.seesaw.tol;
    opt.seed = args.seed;
    opt.max_iterations = args.seesaw.max_iterations;
    opt.threads = args.threads;
    auto result = seesaw_chsh(opt);
    if (!args.seesaw.trace_path.empty()) {
        std::ofstream trace(args.seesaw.trace_path);
        if (!trace) {
            throw ValidationError("cannot write '" + args.seesaw.trace_path + "'");
        }
        trace << seesaw_trace_csv(result.state);
    }
    const double S = result.best_score;
    Report r;
    r.columns = {"quantity", "value"};
    r.add_row({std::string("S"), S});
    r.add_row({std::string("B"), chsh_B_from_S(S)});
    r.add_row({std::string("p"), pom_from_chsh(S)});
    r.add_row({std::string("best_restart"), std::uint64_t{result.best_restart}});
    r.add_row({std::string("iterations"), static_cast<std::uint64_t>(result.state.trace.size() - 1)});
    r.add_row({std::string("converged"), result.state.converged});
    r.json = {{"S", S},
              {"B", chsh_B_from_S(S)},
              {"p", pom_from_chsh(S)},
              {"best_restart", result.best_restart},
              {"iterations", result.state.trace.size() - 1},
              {"converged", result.state.converged}};
    return r;
}

Report classical_oracle_report(const Args &args) {
    ClassicalOracleOptions opt;
    opt.exact_rational = args.exact_rational;
    opt.seed = args.seed;
    auto result = classical_oracle(args.n, args.alphabet, opt);
    Report r;
    r.columns = {"quantity", "value"};
    r.add_row({std::string("value"), result.value});
    if (!result.exact.empty()) {
        r.add_row({std::string("exact"), result.exact});
    }
    r.add_row({std::string("heuristic"), result.heuristic});
    Json j{{"n", args.n}, {"alphabet", args.alphabet}, {"value", result.value}};
    if (!result.exact.empty()) {
        j["exact"] = result.exact;
    }
    j["heuristic"] = result.heuristic;
    j["witness"] = strategy_to_json(PomStrategy{args.n, result.witness});
    r.json = std::move(j);
    return r;
}

Report localbox_report() {
    auto result = local_box_oracle();
    const auto strategies = local_deterministic_strategies();
    Report r;
    r.columns = {"box", "success"};
    Json boxes = Json::array();
    for (std::size_t k = 0; k < strategies.size(); ++k) {
        r.add_row({"local:" + local_label(strategies[k]), result.per_box[k]});
        boxes.push_back({{"box", "local:" + local_label(strategies[k])}, {"success", result.per_box[k]}});
    }
    r.add_row({std::string("max"), result.value});
    r.json = {{"value", result.value}, {"best", "local:" + local_label(result.best)}, {"boxes", boxes}};
    return r;
}

Report toy_report(const std::string &check) {
    Report r;
    if (check == "steering") {
        r.columns = {"measurement", "ensemble", "average"};
        Json j = Json::array();
        for (auto m : kToyMeasurements) {
            auto e = steer(m);
            auto avg = ensemble_average(e);
            require(avg == OnticDistribution{0.25, 0.25, 0.25, 0.25}, "steered ensemble does not average to 1v2v3v4");
            r.add_row({to_string(m), ensemble_text(e), distribution_text(avg)});
            j.push_back({{"measurement", to_string(m)}, {"ensemble", ensemble_text(e)}, {"average", avg}});
        }
        r.json = std::move(j);
    } else if (check == "noncontextual") {
        std::vector<Ensemble> preparations;
        for (auto m : kToyMeasurements) {
            preparations.push_back(steer(m));
        }
        auto report = noncontextuality_check(preparations);
        require(report.noncontextual, "decompositions induce different ontic distributions");
        r.columns = {"decomposition", "ontic", "noncontextual"};
        Json j = Json::array();
        for (std::size_t k = 0; k < preparations.size(); ++k) {
            r.add_row({ensemble_text(preparations[k]), distribution_text(report.ontic[k]), report.noncontextual});
            j.push_back({{"decomposition", ensemble_text(preparations[k])}, {"ontic", report.ontic[k]}});
        }
        r.json = {{"noncontextual", report.noncontextual}, {"decompositions", j}};
    } else if (check == "pom") {
        auto result = toy_pom_oracle();
        r.columns = {"quantity", "value"};
        r.add_row({std::string("value"), result.value});
        Json enc = Json::array();
        for (std::size_t x = 0; x < result.encoding.size(); ++x) {
            const std::string label = PomInstance(2).label(static_cast<std::uint32_t>(x));
            r.add_row({"encode " + label, result.encoding[x].label()});
            enc.push_back(result.encoding[x].label());
        }
        Json dec = Json::array();
        for (std::size_t y = 0; y < result.decoding.size(); ++y) {
            std::string text = to_string(result.decoding[y].measurement) + " flip " +
                               std::to_string(result.decoding[y].flip);
            r.add_row({"decode y=" + std::to_string(y + 1), text});
            dec.push_back({{"partition", to_string(result.decoding[y].measurement)},
                           {"flip", result.decoding[y].flip}});
        }
        r.json = {{"value", result.value}, {"encoding", enc}, {"decoding", dec}};
    } else {
        throw ValidationError("unknown toy check '" + check + "'");
    }
    return r;
}

}  // namespace

int run(const std::vector<std::string> &args_in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Parity-oblivious multiplexing laboratory", "pomlab"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Args args;
    app.add_option("--format", args.format, "Output format: table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--threads", args.threads, "Worker threads (0: POMLAB_THREADS or hardware)");

    auto *bounds = app.add_subcommand("bounds", "Headline success probabilities per theory");
    bounds->add_flag("--verify", args.verify, "Re-derive rows from independent oracles");

    auto *pom = app.add_subcommand("pom", "Evaluate or simulate a strategy");
    pom->require_subcommand(1, 1);
    auto *pom_run = pom->add_subcommand("run", "Monte Carlo rounds");
    pom_run->add_option("--strategy", args.strategy, "Built-in name or JSON file")->required();
    pom_run->add_option("--rounds", args.rounds, "Number of rounds");
    pom_run->add_option("--seed", args.seed, "Seed");
    auto *pom_eval = pom->add_subcommand("eval", "Exact success probabilities");
    pom_eval->add_option("--strategy", args.strategy, "Built-in name or JSON file")->required();

    auto *chsh = app.add_subcommand("chsh", "CHSH value and locality of a box");
    chsh->add_option("--box", args.box, "pr | isotropic:G | local:fA,fB | JSON file")->required();
    auto *depol = app.add_subcommand("depolarize", "Depolarize a box to canonical form");
    depol->add_option("--box", args.box, "pr | isotropic:G | local:fA,fB | JSON file")->required();

    auto *seesaw = app.add_subcommand("seesaw", "Seesaw maximization of the CHSH operator");
    seesaw->add_option("--dim", args.seesaw.dim, "Local dimension (2-4)");
    seesaw->add_option("--restarts", args.seesaw.restarts, "Random restarts");
    seesaw->add_option("--tol", args.seesaw.tol, "Stop when an iteration gains less than this");
    seesaw->add_option("--seed", args.seed, "Seed");
    seesaw->add_option("--max-iterations", args.seesaw.max_iterations, "Iteration cap per restart");
    seesaw->add_option("--trace", args.seesaw.trace_path, "Write the best restart's trace as CSV");

    auto *oracle = app.add_subcommand("oracle", "Optimization oracles");
    oracle->require_subcommand(1, 1);
    auto *classical = oracle->add_subcommand("classical", "Parity-oblivious classical LP oracle");
    classical->add_option("--n", args.n, "Number of bits");
    classical->add_option("--alphabet", args.alphabet, "Message alphabet size");
    classical->add_option("--seed", args.seed, "Seed for the alternating search");
    classical->add_flag("--exact-rational", args.exact_rational, "Solve over exact rationals");
    auto *localbox = oracle->add_subcommand("localbox", "Correlation protocol over local deterministic boxes");

    auto *toy = app.add_subcommand("toy", "Toy-bit checks");
    toy->add_option("--check", args.toy_check, "steering | noncontextual | pom")
        ->required()
        ->check(CLI::IsMember({"steering", "noncontextual", "pom"}));

    std::vector<std::string> reversed(args_in.rbegin(), args_in.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "pomlab: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        const Format format = parse_format(args.format);
        Report report;
        if (*bounds) {
            report = bounds_report(args.verify);
        } else if (*pom_run) {
            auto strat = parse_strategy_arg(args.strategy);
            PomInstance inst(strat.n);
            report = round_report(run_rounds(inst, strat, args.rounds, args.seed, args.threads));
        } else if (*pom_eval) {
            auto strat = parse_strategy_arg(args.strategy);
            PomInstance inst(strat.n);
            report = game_report(inst, pom_success(inst, strat));
        } else if (*chsh) {
            report = chsh_report(parse_box(args.box));
        } else if (*depol) {
            report = depolarize_report(parse_box(args.box));
        } else if (*seesaw) {
            report = seesaw_report(args);
        } else if (*classical) {
            report = classical_oracle_report(args);
        } else if (*localbox) {
            report = localbox_report();
        } else if (*toy) {
            report = toy_report(args.toy_check);
        }
        render(report, format, out);
        return kExitOk;
    } catch (const VerificationFailure &e) {
        err << "pomlab: verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const ValidationError &e) {
        err << "pomlab: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
}

}  // namespace pomlab::cli

#include "pomlab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pomlab/error.hpp"

namespace pomlab {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

template <class T>
T get(const Json &j, const char *key) {
    return field(j, key).get<T>();
}

Json bloch_to_json(const BlochVector &r) {
    return Json::array({r.x, r.y, r.z});
}

BlochVector bloch_from_json(const Json &j) {
    auto v = j.get<std::vector<double>>();
    if (v.size() != 3) {
        throw ValidationError("Bloch vector needs three components");
    }
    return {v[0], v[1], v[2]};
}

Json observable_to_json(const Observable &obs) {
    return matrix_to_json(obs.matrix());
}

// A matrix, or {"axis": [nx, ny, nz]} for the qubit observable n . sigma.
Observable observable_from_json(const Json &j) {
    if (j.is_object() && j.contains("axis")) {
        auto n = bloch_from_json(j.at("axis"));
        return Observable::dichotomic(pauli::X() * Complex(n.x) + pauli::Y() * Complex(n.y) +
                                      pauli::Z() * Complex(n.z));
    }
    return Observable::dichotomic(matrix_from_json(j));
}

Json quantum_decoder_to_json(const QuantumDecoder &d) {
    return {{"observable", observable_to_json(d.observable)}, {"plus_bit", d.plus_bit}};
}

QuantumDecoder quantum_decoder_from_json(const Json &j) {
    return {observable_from_json(field(j, "observable")), j.value("plus_bit", 0)};
}

Json density_to_json(const DensityOperator &rho) {
    if (rho.dim() == 2) {
        return {{"bloch", bloch_to_json(density_to_bloch(rho))}};
    }
    return matrix_to_json(rho.matrix());
}

DensityOperator density_from_json(const Json &j) {
    if (j.is_object() && j.contains("bloch")) {
        return density_from_bloch(bloch_from_json(j.at("bloch")));
    }
    return DensityOperator::from_matrix(matrix_from_json(j));
}

template <class T>
std::vector<T> list(const Json &j, const char *key) {
    const Json &arr = field(j, key);
    if (!arr.is_array()) {
        throw ValidationError(std::string("field '") + key + "' must be an array");
    }
    return arr.get<std::vector<T>>();
}

PomStrategy parse_strategy(const Json &j) {
    PomStrategy out;
    out.n = j.value("n", 2);
    PomInstance inst(out.n);
    const Theory theory = parse_theory(get<std::string>(j, "theory"));
    const Json &enc = field(j, "encoding");
    const Json &dec = field(j, "decoding");
    switch (theory) {
        case Theory::classical: {
            ClassicalStrategy s;
            s.alphabet = get<std::size_t>(j, "alphabet");
            s.encoding = enc.get<std::vector<std::vector<double>>>();
            s.decoding = dec.get<std::vector<std::vector<int>>>();
            out.body = std::move(s);
            break;
        }
        case Theory::quantum: {
            QuantumStrategy s;
            for (const auto &e : enc) {
                s.encoding.push_back(density_from_json(e));
            }
            for (const auto &d : dec) {
                s.decoding.push_back(quantum_decoder_from_json(d));
            }
            out.body = std::move(s);
            break;
        }
        case Theory::boxworld: {
            BoxWorldStrategy s;
            for (const auto &e : enc) {
                if (e.contains("pure")) {
                    s.encoding.push_back(gbit_pure(e.at("pure").get<int>()));
                } else {
                    auto c = list<double>(e, "coords");
                    if (c.size() != 2) {
                        throw ValidationError("g-bit coordinates need two numbers");
                    }
                    s.encoding.push_back(GBitState::from_coordinates(c[0], c[1]));
                }
            }
            for (const auto &d : dec) {
                s.decoding.push_back({get<int>(d, "input"), d.value("flip", 0)});
            }
            out.body = std::move(s);
            break;
        }
        case Theory::toybit: {
            ToyStrategy s;
            for (const auto &e : enc) {
                s.encoding.push_back(EpistemicState::from_distribution(e.get<OnticDistribution>()));
            }
            for (const auto &d : dec) {
                s.decoding.push_back({parse_toy_measurement(get<std::string>(d, "partition")), d.value("flip", 0)});
            }
            out.body = std::move(s);
            break;
        }
        case Theory::correlation: {
            CorrelationStrategy s{box_from_json(field(j, "box")), {}, {}, {}, {}};
            s.alice_input = get<std::array<int, 4>>(enc, "alice_input");
            s.message = get<std::array<std::array<int, 2>, 4>>(enc, "message");
            s.bob_input = get<std::array<int, 2>>(dec, "bob_input");
            s.answer = get<std::array<std::array<std::array<int, 2>, 2>, 2>>(dec, "answer");
            out.body = std::move(s);
            break;
        }
        case Theory::entangled: {
            const Json &corr = field(j, "correction");
            if (!corr.is_array() || corr.size() != 2) {
                throw ValidationError("entangled strategy needs two corrections");
            }
            EntangledStrategy s{density_from_json(field(j, "shared")),
                                {},
                                get<std::vector<std::array<int, 2>>>(enc, "message"),
                                {matrix_from_json(corr[0]), matrix_from_json(corr[1])},
                                {}};
            for (const auto &a : field(enc, "alice")) {
                s.alice.push_back(observable_from_json(a));
            }
            for (const auto &d : dec) {
                s.decoding.push_back(quantum_decoder_from_json(d));
            }
            out.body = std::move(s);
            break;
        }
    }
    validate_strategy(inst, out);
    return out;
}

template <class F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw ValidationError(std::string("malformed JSON input: ") + e.what());
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Json round_numbers(const Json &j) {
    if (j.is_number_float()) {
        double v = j.get<double>();
        return std::isfinite(v) ? Json(std::strtod(format_number(v).c_str(), nullptr)) : Json(nullptr);
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto &e : j) {
            out.push_back(round_numbers(e));
        }
        return out;
    }
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto &[k, v] : j.items()) {
            out[k] = round_numbers(v);
        }
        return out;
    }
    return j;
}

Json matrix_to_json(const Matrix &m) {
    Json re = Json::array();
    Json im = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json rr = Json::array();
        Json ir = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return {{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json &j) {
    return guarded([&] {
        auto re = get<std::vector<std::vector<double>>>(j, "re");
        std::vector<std::vector<double>> im;
        if (j.contains("im")) {
            im = j.at("im").get<std::vector<std::vector<double>>>();
        }
        const std::size_t dim = re.size();
        if (dim == 0 || dim > kMaxDimension) {
            throw ValidationError("matrix dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
        }
        Matrix m(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (re[r].size() != dim || (!im.empty() && (im.size() != dim || im[r].size() != dim))) {
                throw ValidationError("matrix must be square");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                m(r, c) = Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
            }
        }
        return m;
    });
}

Json box_to_json(const NSBox &box) {
    Json probs = Json::array();
    for (double p : box.probs()) {
        probs.push_back(p);
    }
    return {{"probs", std::move(probs)}};
}

NSBox box_from_json(const Json &j) {
    return guarded([&] {
        auto v = list<double>(j, "probs");
        if (v.size() != 16) {
            throw ValidationError("box needs 16 probabilities");
        }
        BoxTable t{};
        std::copy(v.begin(), v.end(), t.begin());
        return validate_box(t);
    });
}

Json strategy_to_json(const PomStrategy &strat) {
    Json j{{"theory", to_string(strat.theory())}, {"n", strat.n}};
    std::visit(
        [&](const auto &s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ClassicalStrategy>) {
                j["alphabet"] = s.alphabet;
                j["encoding"] = s.encoding;
                j["decoding"] = s.decoding;
            } else if constexpr (std::is_same_v<S, QuantumStrategy>) {
                j["encoding"] = Json::array();
                for (const auto &rho : s.encoding) {
                    j["encoding"].push_back(density_to_json(rho));
                }
                j["decoding"] = Json::array();
                for (const auto &d : s.decoding) {
                    j["decoding"].push_back(quantum_decoder_to_json(d));
                }
            } else if constexpr (std::is_same_v<S, BoxWorldStrategy>) {
                j["encoding"] = Json::array();
                for (const auto &w : s.encoding) {
                    j["encoding"].push_back({{"coords", {w.c0(), w.c1()}}});
                }
                j["decoding"] = Json::array();
                for (const auto &d : s.decoding) {
                    j["decoding"].push_back({{"input", d.input}, {"flip", d.flip}});
                }
            } else if constexpr (std::is_same_v<S, ToyStrategy>) {
                j["encoding"] = Json::array();
                for (const auto &e : s.encoding) {
                    j["encoding"].push_back(e.distribution());
                }
                j["decoding"] = Json::array();
                for (const auto &d : s.decoding) {
                    j["decoding"].push_back({{"partition", to_string(d.measurement)}, {"flip", d.flip}});
                }
            } else if constexpr (std::is_same_v<S, CorrelationStrategy>) {
                j["box"] = box_to_json(s.box);
                j["encoding"] = {{"alice_input", s.alice_input}, {"message", s.message}};
                j["decoding"] = {{"bob_input", s.bob_input}, {"answer", s.answer}};
            } else {
                j["shared"] = density_to_json(s.shared);
                Json alice = Json::array();
                for (const auto &a : s.alice) {
                    alice.push_back(observable_to_json(a));
                }
                j["encoding"] = {{"alice", std::move(alice)}, {"message", s.message}};
                j["correction"] = {matrix_to_json(s.correction[0]), matrix_to_json(s.correction[1])};
                j["decoding"] = Json::array();
                for (const auto &d : s.decoding) {
                    j["decoding"].push_back(quantum_decoder_to_json(d));
                }
            }
        },
        strat.body);
    return j;
}

PomStrategy strategy_from_json(const Json &j) {
    return guarded([&] { return parse_strategy(j); });
}

Json game_result_to_json(const PomInstance &inst, const GameResult &result) {
    Json pairs = Json::array();
    for (std::uint32_t x = 0; x < inst.num_strings(); ++x) {
        for (int y = 1; y <= inst.n(); ++y) {
            pairs.push_back({{"x", inst.label(x)}, {"y", y}, {"p", result.per_pair[x][y - 1]}});
        }
    }
    return {{"n", result.n},
            {"per_pair", std::move(pairs)},
            {"average", result.average},
            {"parity_leak", result.parity_leak}};
}

Json round_log_to_json(const RoundLog &log) {
    return {{"rounds", log.rounds},
            {"successes", log.successes},
            {"seed", log.seed},
            {"empirical_rate", log.empirical_rate}};
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

Json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

}  // namespace pomlab

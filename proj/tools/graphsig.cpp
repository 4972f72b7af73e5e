#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "graphsig/enumerate.hpp"
#include "graphsig/json_io.hpp"

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

graphsig::json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in)
            throw graphsig::precondition_error("cannot open file: " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    return graphsig::json::parse(text);
}

void emit(const graphsig::json& j) { std::cout << j.dump(2) << "\n"; }

graphsig::Signature load_signature(const std::string& path, bool must_validate = true) {
    auto sig = graphsig::signature_from_json(read_json(path));
    if (must_validate) {
        auto report = graphsig::validate_signature(sig);
        if (!report.ok)
            throw graphsig::precondition_error("invalid signature: " + report.violations.front());
    }
    return sig;
}

std::vector<std::string> split_word(const std::string& word) {
    std::vector<std::string> symbols;
    if (word.empty()) return symbols;
    std::stringstream stream(word);
    std::string item;
    while (std::getline(stream, item, ','))
        symbols.push_back(item);
    return symbols;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"emptiness, simulation and reductions for automata on graphs"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads (the solver is sequential; kept at 1)")
        ->check(CLI::Range(1u, 64u));

    int exit_code = 0;
    std::function<void()> action;
    graphsig::SolverLimits limits;

    // validate ---------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "check an object against its invariants");
    validate->require_subcommand(1);
    {
        static std::string in;
        auto* sub = validate->add_subcommand("signature");
        sub->add_option("--in", in, "signature JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto report = graphsig::validate_signature(
                    graphsig::signature_from_json(read_json(in)));
                emit(graphsig::to_json(report));
                exit_code = report.ok ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = validate->add_subcommand("graph");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "graph JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto report = graphsig::validate_graph(sig, graphsig::graph_from_json(read_json(in)));
                emit(graphsig::to_json(report));
                exit_code = report.ok ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = validate->add_subcommand("gwa");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto report = graphsig::validate_gwa(sig, graphsig::gwa_from_json(read_json(in)));
                emit(graphsig::to_json(report));
                exit_code = report.ok ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = validate->add_subcommand("star");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "star automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto report = graphsig::validate_star_automaton(
                    sig, graphsig::star_automaton_from_json(read_json(in)));
                emit(graphsig::to_json(report));
                exit_code = report.ok ? 0 : kExitNegative;
            };
        });
    }

    // emptiness ----------------------------------------------------------------
    auto* emptiness = app.add_subcommand("emptiness", "decide whether any accepted graph exists");
    emptiness->require_subcommand(1);
    emptiness->add_option("--max-frontier", limits.max_states, "search state budget");
    {
        static std::string in;
        auto* sub = emptiness->add_subcommand("signature");
        sub->add_option("--in", in, "signature JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto verdict = graphsig::signature_nonempty(load_signature(in), limits);
                if (verdict.verdict == graphsig::Emptiness::resource_limit)
                    throw graphsig::resource_limit_error("search state budget exceeded");
                emit(graphsig::to_json(verdict));
                exit_code = verdict.verdict == graphsig::Emptiness::nonempty ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = emptiness->add_subcommand("gwa");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto automaton = graphsig::gwa_from_json(read_json(in));
                auto report = graphsig::validate_gwa(sig, automaton);
                if (!report.ok)
                    throw graphsig::precondition_error("invalid automaton: " + report.violations.front());
                auto verdict = graphsig::gwa_nonempty(sig, automaton, limits);
                if (verdict.verdict == graphsig::Emptiness::resource_limit)
                    throw graphsig::resource_limit_error("search state budget exceeded");
                emit(graphsig::to_json(verdict));
                exit_code = verdict.verdict == graphsig::Emptiness::nonempty ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = emptiness->add_subcommand("star");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "star automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto automaton = graphsig::star_automaton_from_json(read_json(in));
                auto report = graphsig::validate_star_automaton(sig, automaton);
                if (!report.ok)
                    throw graphsig::precondition_error("invalid star automaton: " +
                                                       report.violations.front());
                auto verdict = graphsig::star_nonempty(sig, automaton, limits);
                if (verdict.verdict == graphsig::Emptiness::resource_limit)
                    throw graphsig::resource_limit_error("search state budget exceeded");
                emit(graphsig::to_json(verdict));
                exit_code = verdict.verdict == graphsig::Emptiness::nonempty ? 0 : kExitNegative;
            };
        });
    }

    // simulate -------------------------------------------------------------------
    {
        static std::string sig_path, gwa_path, graph_path;
        static bool trace = false;
        static std::size_t max_steps = 10000;
        auto* sub = app.add_subcommand("simulate", "run an automaton on a graph");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--gwa", gwa_path, "automaton JSON")->required();
        sub->add_option("--graph", graph_path, "graph JSON ('-' for stdin)")->required();
        sub->add_flag("--trace", trace, "record the configuration sequence");
        sub->add_option("--max-steps", max_steps, "cap on recorded configurations");
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto automaton = graphsig::gwa_from_json(read_json(gwa_path));
                auto g = graphsig::graph_from_json(read_json(graph_path));
                for (const auto& [what, report] :
                     {std::pair<std::string, graphsig::ValidationReport>{
                          "automaton", graphsig::validate_gwa(sig, automaton)},
                      {"graph", graphsig::validate_graph(sig, g)}})
                    if (!report.ok)
                        throw graphsig::precondition_error("invalid " + what + ": " +
                                                           report.violations.front());
                auto result = graphsig::simulate(sig, automaton, g, trace ? max_steps : 0);
                emit(graphsig::to_json(result));
                exit_code = result.outcome == graphsig::RunOutcome::accept ? 0 : kExitNegative;
            };
        });
    }

    // tile -------------------------------------------------------------------------
    auto* tile = app.add_subcommand("tile", "tilings of a graph by a star automaton");
    tile->require_subcommand(1);
    {
        static std::string sig_path, star_path, graph_path, tiling_path;
        auto* sub = tile->add_subcommand("check");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--star", star_path, "star automaton JSON")->required();
        sub->add_option("--graph", graph_path, "graph JSON")->required();
        sub->add_option("--tiling", tiling_path, "tiling JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                bool ok = graphsig::check_tiling(sig,
                                                 graphsig::star_automaton_from_json(read_json(star_path)),
                                                 graphsig::graph_from_json(read_json(graph_path)),
                                                 graphsig::tiling_from_json(read_json(tiling_path)));
                graphsig::json j;
                j["ok"] = ok;
                emit(j);
                exit_code = ok ? 0 : kExitNegative;
            };
        });
    }
    {
        static std::string sig_path, star_path, graph_path;
        auto* sub = tile->add_subcommand("find");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--star", star_path, "star automaton JSON")->required();
        sub->add_option("--graph", graph_path, "graph JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto found = graphsig::find_tiling(
                    sig, graphsig::star_automaton_from_json(read_json(star_path)),
                    graphsig::graph_from_json(read_json(graph_path)));
                if (found) {
                    emit(graphsig::to_json(*found));
                    exit_code = 0;
                } else {
                    graphsig::json j;
                    j["tiling"] = nullptr;
                    emit(j);
                    exit_code = kExitNegative;
                }
            };
        });
    }

    // reduce ---------------------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "translate an automaton into a signature");
    reduce->require_subcommand(1);
    {
        static std::string sig_path, in;
        auto* sub = reduce->add_subcommand("star");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "star automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto automaton = graphsig::star_automaton_from_json(read_json(in));
                emit(graphsig::to_json(graphsig::reduce_star_to_signature(sig, automaton).reduced));
            };
        });
    }
    {
        static std::string sig_path, in;
        auto* sub = reduce->add_subcommand("gwa");
        sub->add_option("--sig", sig_path, "signature JSON")->required();
        sub->add_option("--in", in, "automaton JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                auto sig = load_signature(sig_path);
                auto automaton = graphsig::gwa_from_json(read_json(in));
                emit(graphsig::to_json(graphsig::reduce_gwa_to_signature(sig, automaton).reduced));
            };
        });
    }

    // gen ------------------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "hardness-construction instances");
    gen->require_subcommand(1);
    {
        static std::string graph_path;
        auto* sub = gen->add_subcommand("3col");
        sub->add_option("--graph", graph_path, "simple graph JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                emit(graphsig::to_json(
                    graphsig::gen_3col_signature(graphsig::simple_graph_from_json(read_json(graph_path)))));
            };
        });
    }
    {
        static std::string sig_path;
        auto* sub = gen->add_subcommand("universal-star");
        sub->add_option("--sig", sig_path, "signature JSON ('-' for stdin)")->required();
        sub->callback([&]() {
            action = [&]() {
                emit(graphsig::to_json(graphsig::gen_universal_star_automaton(load_signature(sig_path))));
            };
        });
    }
    {
        static int n = 1;
        static std::string tm_path;
        auto* sub = gen->add_subcommand("grid-sig");
        sub->add_option("--n", n, "tape bound exponent")->required();
        sub->add_option("--tm", tm_path, "turing machine JSON")->required();
        sub->callback([&]() {
            action = [&]() {
                emit(graphsig::to_json(
                    graphsig::gen_grid_signature(n, graphsig::turing_machine_from_json(read_json(tm_path)))));
            };
        });
    }
    {
        static int n = 1;
        static std::string tm_path, word;
        static bool attested = false;
        auto* sub = gen->add_subcommand("grid-gwa");
        sub->add_option("--n", n, "tape bound exponent")->required();
        sub->add_option("--tm", tm_path, "turing machine JSON")->required();
        sub->add_option("--word", word, "input symbols, comma separated (empty for the empty word)");
        sub->add_flag("--attest-step-bound", attested,
                      "assert that the machine halts on the word within 2^n-1 steps");
        sub->callback([&]() {
            action = [&]() {
                emit(graphsig::to_json(graphsig::gen_grid_automaton(
                    n, graphsig::turing_machine_from_json(read_json(tm_path)), split_word(word),
                    attested)));
            };
        });
    }
    {
        static int n = 1;
        static std::string tm_path, word, computation_path;
        auto* sub = gen->add_subcommand("grid-graph");
        sub->add_option("--n", n, "tape bound exponent")->required();
        sub->add_option("--tm", tm_path, "turing machine JSON")->required();
        sub->add_option("--word", word, "input symbols, comma separated");
        sub->add_option("--computation", computation_path, "accepting run JSON")->required();
        sub->callback([&]() {
            action = [&]() {
                emit(graphsig::to_json(graphsig::canonical_grid_graph(
                    n, graphsig::turing_machine_from_json(read_json(tm_path)), split_word(word),
                    graphsig::computation_from_json(read_json(computation_path)))));
            };
        });
    }

    // oracle ------------------------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "brute-force enumeration");
    oracle->require_subcommand(1);
    {
        static std::string in;
        static std::size_t max_nodes = 0;
        auto* sub = oracle->add_subcommand("enumerate");
        sub->add_option("--in", in, "signature JSON ('-' for stdin)")->required();
        sub->add_option("--max-nodes", max_nodes, "node budget")->required();
        sub->callback([&]() {
            action = [&]() {
                graphsig::GraphEnumerator stream(load_signature(in), max_nodes);
                while (auto g = stream.next())
                    std::cout << graphsig::to_json(*g).dump() << "\n";
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitInputError;
    }

    try {
        action();
    } catch (const graphsig::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const graphsig::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    return exit_code;
}

#pragma once

#include "graphsig/gwa.hpp"

namespace graphsig {

/// Undirected simple graph used as input for the colourability reduction.
struct SimpleGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
};

inline ValidationReport validate_simple_graph(const SimpleGraph& g) {
    ValidationReport report;
    std::set<std::string> vertex_set;
    for (const auto& v : g.vertices)
        if (!vertex_set.insert(v).second)
            report.fail("duplicate vertex: " + v);
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& [u, v] : g.edges) {
        if (u == v)
            report.fail("self-loop at " + u);
        if (!vertex_set.count(u) || !vertex_set.count(v))
            report.fail("edge with unknown endpoint: " + u + "-" + v);
        auto key = std::minmax(u, v);
        if (!edge_set.insert({key.first, key.second}).second)
            report.fail("duplicate edge: " + u + "-" + v);
    }
    if (!report.ok) return report;
    if (g.vertices.empty()) {
        report.fail("graph is empty");
        return report;
    }
    std::set<std::string> reached{g.vertices.front()};
    std::vector<std::string> frontier{g.vertices.front()};
    while (!frontier.empty()) {
        auto v = frontier.back();
        frontier.pop_back();
        for (const auto& [a, b] : g.edges) {
            std::string other;
            if (a == v) other = b;
            else if (b == v) other = a;
            else continue;
            if (reached.insert(other).second) frontier.push_back(other);
        }
    }
    if (reached.size() != g.vertices.size())
        report.fail("graph is not connected");
    return report;
}

namespace detail {

inline std::size_t vertex_index(const SimpleGraph& g, const std::string& v) {
    return static_cast<std::size_t>(std::find(g.vertices.begin(), g.vertices.end(), v) -
                                    g.vertices.begin());
}

inline std::string col_vertex_label(const std::string& v, int colour) {
    return v + ":" + std::to_string(colour);
}

inline std::string col_edge_label(const SimpleGraph& g, const std::string& u, int i,
                                  const std::string& v, int j) {
    if (vertex_index(g, u) > vertex_index(g, v))
        return col_edge_label(g, v, j, u, i);
    return u + ":" + std::to_string(i) + "|" + v + ":" + std::to_string(j);
}

inline std::string col_dir(char sign, const std::string& u, int i, const std::string& v) {
    return std::string(1, sign) + u + ":" + std::to_string(i) + ":" + v;
}

inline std::vector<std::string> col_neighbours(const SimpleGraph& g, const std::string& u) {
    std::vector<std::string> out;
    for (const auto& w : g.vertices) {
        if (w == u) continue;
        for (const auto& [a, b] : g.edges)
            if ((a == u && b == w) || (a == w && b == u)) {
                out.push_back(w);
                break;
            }
    }
    return out;
}

} // namespace detail

/// Signature whose graphs are exactly the proper 3-colourings of the input:
/// one label per (vertex, colour), one label per edge with two distinct end
/// colours, and directions that force every vertex node to connect to one
/// intermediate node per incident edge.
inline Signature gen_3col_signature(const SimpleGraph& g) {
    auto report = validate_simple_graph(g);
    if (!report.ok)
        throw precondition_error("gen_3col_signature: " + report.violations.front());

    Signature sig;
    for (const auto& u : g.vertices)
        for (int i = 1; i <= 3; ++i)
            for (const auto& v : detail::col_neighbours(g, u)) {
                sig.directions.push_back(detail::col_dir('+', u, i, v));
                sig.directions.push_back(detail::col_dir('-', u, i, v));
                sig.opposite[detail::col_dir('+', u, i, v)] = detail::col_dir('-', u, i, v);
                sig.opposite[detail::col_dir('-', u, i, v)] = detail::col_dir('+', u, i, v);
            }

    for (const auto& u : g.vertices)
        for (int i = 1; i <= 3; ++i) {
            std::string label = detail::col_vertex_label(u, i);
            sig.labels.push_back(label);
            std::vector<std::string> dirs;
            for (const auto& v : detail::col_neighbours(g, u))
                dirs.push_back(detail::col_dir('+', u, i, v));
            sig.dirs_of_label[label] = std::move(dirs);
        }
    for (const auto& [u, v] : g.edges)
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                if (i == j) continue;
                std::string label = detail::col_edge_label(g, u, i, v, j);
                if (sig.dirs_of_label.count(label)) continue;
                sig.labels.push_back(label);
                std::vector<std::string> dirs{detail::col_dir('-', u, i, v),
                                              detail::col_dir('-', v, j, u)};
                auto pos = [&](const std::string& d) {
                    return std::find(sig.directions.begin(), sig.directions.end(), d) -
                           sig.directions.begin();
                };
                if (pos(dirs[0]) > pos(dirs[1])) std::swap(dirs[0], dirs[1]);
                sig.dirs_of_label[label] = std::move(dirs);
            }

    for (int i = 1; i <= 3; ++i)
        sig.initial_labels.push_back(detail::col_vertex_label(g.vertices.front(), i));
    return sig;
}

/// The graph realizing one proper colouring: vertex nodes plus one
/// intermediate node per edge.
inline Graph canonical_colored_graph(const SimpleGraph& g, const std::map<std::string, int>& colouring) {
    for (const auto& v : g.vertices) {
        auto it = colouring.find(v);
        if (it == colouring.end() || it->second < 1 || it->second > 3)
            throw precondition_error("canonical_colored_graph: vertex without colour: " + v);
    }
    for (const auto& [u, v] : g.edges)
        if (colouring.at(u) == colouring.at(v))
            throw precondition_error("canonical_colored_graph: improper colouring at edge " + u + "-" + v);

    Graph out;
    for (const auto& v : g.vertices) {
        std::string id = "v/" + v;
        out.nodes.push_back(id);
        out.labeling[id] = detail::col_vertex_label(v, colouring.at(v));
        out.edges[id] = {};
    }
    out.initial_node = "v/" + g.vertices.front();
    for (const auto& [u, v] : g.edges) {
        std::string id = "e/" + u + "/" + v;
        out.nodes.push_back(id);
        out.labeling[id] = detail::col_edge_label(g, u, colouring.at(u), v, colouring.at(v));
        out.edges[id] = {};
        out.edges["v/" + u][detail::col_dir('+', u, colouring.at(u), v)] = id;
        out.edges[id][detail::col_dir('-', u, colouring.at(u), v)] = "v/" + u;
        out.edges["v/" + v][detail::col_dir('+', v, colouring.at(v), u)] = id;
        out.edges[id][detail::col_dir('-', v, colouring.at(v), u)] = "v/" + v;
    }
    return out;
}

/// Reads the colour of every vertex off a witness graph over the
/// colourability signature.
inline std::map<std::string, int> extract_coloring(const SimpleGraph& g, const Graph& witness) {
    std::map<std::string, int> colouring;
    for (const auto& v : g.vertices) {
        int found = 0, colour = 0;
        for (int i = 1; i <= 3; ++i) {
            std::string label = detail::col_vertex_label(v, i);
            for (const auto& [node, l] : witness.labeling)
                if (l == label) {
                    found++;
                    colour = i;
                }
        }
        if (found != 1)
            throw precondition_error("extract_coloring: vertex " + v + " appears " +
                                     std::to_string(found) + " times");
        colouring[v] = colour;
    }
    return colouring;
}

/// One-state star automaton accepting every graph over the signature.
inline StarAutomaton gen_universal_star_automaton(const Signature& sig) {
    StarAutomaton automaton;
    automaton.states = {"q"};
    for (const auto& a : sig.labels) {
        Star star;
        star.label = a;
        star.centre = "q";
        star.rays.assign(sig.dirs(a).size(), "q");
        automaton.stars.push_back(std::move(star));
    }
    return automaton;
}

/// Nondeterministic one-tape machine, tape infinite to the right; inputs are
/// assumed never to move left from the first cell.
struct TmTransition {
    std::string from_state, read;
    std::string to_state, write;
    char move = 'R';
};

struct TuringMachine {
    std::vector<std::string> states;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> work_alphabet;
    std::string blank;
    std::vector<std::string> initial_states;
    std::set<std::pair<std::string, std::string>> accepting_pairs;
    std::vector<TmTransition> transitions;
};

inline ValidationReport validate_turing_machine(const TuringMachine& m) {
    ValidationReport report;
    std::set<std::string> states(m.states.begin(), m.states.end());
    std::set<std::string> work(m.work_alphabet.begin(), m.work_alphabet.end());
    if (states.size() != m.states.size()) report.fail("duplicate state");
    if (work.size() != m.work_alphabet.size()) report.fail("duplicate work symbol");
    if (states.count("0")) report.fail("state name 0 is reserved");
    if (!work.count(m.blank)) report.fail("blank symbol not in work alphabet");
    for (const auto& s : m.input_alphabet)
        if (!work.count(s)) report.fail("input symbol not in work alphabet: " + s);
    for (const auto& q : m.initial_states)
        if (!states.count(q)) report.fail("unknown initial state: " + q);
    for (const auto& [q, s] : m.accepting_pairs) {
        if (!states.count(q)) report.fail("accepting pair with unknown state: " + q);
        if (!work.count(s)) report.fail("accepting pair with unknown symbol: " + s);
    }
    for (const auto& t : m.transitions) {
        if (!states.count(t.from_state) || !states.count(t.to_state))
            report.fail("transition with unknown state: " + t.from_state + "->" + t.to_state);
        if (!work.count(t.read) || !work.count(t.write))
            report.fail("transition with unknown symbol: " + t.read + "->" + t.write);
        if (t.move != 'L' && t.move != 'R')
            report.fail("transition move must be L or R");
    }
    return report;
}

/// One machine configuration: control state, head cell and tape prefix.
struct TmConfiguration {
    std::string state;
    std::size_t head = 0;
    std::vector<std::string> tape;
};

namespace grid {

inline std::string tree_label(std::size_t level, bool right) {
    if (level == 0) return "a0";
    return (right ? "b" : "a") + std::to_string(level);
}
inline std::string chain_bit_label(int bit, std::size_t position) {
    return (bit ? "1_" : "0_") + std::to_string(position);
}
inline std::string grid_label(const std::string& pos, const std::string& symbol, const std::string& head) {
    return pos + ":" + symbol + ":" + head;
}
inline std::string tree_down(std::size_t level, bool right) {
    return (right ? "+r" : "+l") + std::to_string(level);
}
inline std::string tree_up(std::size_t level, bool right) {
    return (right ? "-r" : "-l") + std::to_string(level);
}
inline std::string chain_down(std::size_t position) { return "+c" + std::to_string(position); }
inline std::string chain_up_from(std::size_t position) {
    return position == 1 ? std::string("-d'") : "-c" + std::to_string(position - 1);
}

inline const std::vector<std::string>& pos_values() {
    static const std::vector<std::string> values{"LU", "CU", "RU", "LC", "CC",
                                                 "RC", "LD", "CD", "RD"};
    return values;
}
inline bool pos_has(const std::string& pos, const std::string& dir) {
    if (dir == "+1") return pos[0] != 'R';
    if (dir == "-1") return pos[0] != 'L';
    if (dir == "+2") return pos[1] != 'U';
    if (dir == "-2") return pos[1] != 'D';
    return dir == "-d" || dir == "+d'";
}

} // namespace grid

/// Signature of the grid construction for tape bound 2^n: a full binary tree
/// of height 2n feeding 2^(2n) grid nodes, grid labels carrying a border
/// type, a tape symbol and an optional head state, and per-node coordinate
/// chains of 2n bits.
inline Signature gen_grid_signature(int n, const TuringMachine& m) {
    if (n < 1)
        throw precondition_error("gen_grid_signature: n must be at least 1");
    auto tm_report = validate_turing_machine(m);
    if (!tm_report.ok)
        throw precondition_error("gen_grid_signature: " + tm_report.violations.front());

    const std::size_t height = 2 * static_cast<std::size_t>(n);
    Signature sig;
    auto pair = [&](const std::string& fwd, const std::string& bwd) {
        sig.directions.push_back(fwd);
        sig.directions.push_back(bwd);
        sig.opposite[fwd] = bwd;
        sig.opposite[bwd] = fwd;
    };
    for (std::size_t i = 1; i <= height; ++i) {
        pair("+l" + std::to_string(i), "-l" + std::to_string(i));
        pair("+r" + std::to_string(i), "-r" + std::to_string(i));
    }
    pair("+d", "-d");
    pair("+1", "-1");
    pair("+2", "-2");
    pair("+d'", "-d'");
    for (std::size_t i = 1; i + 1 <= height; ++i)
        pair(grid::chain_down(i), "-c" + std::to_string(i));

    sig.labels.push_back("a0");
    sig.dirs_of_label["a0"] = {"+l1", "+r1"};
    sig.initial_labels.push_back("a0");
    for (std::size_t i = 1; i <= height; ++i)
        for (bool right : {false, true}) {
            std::string label = grid::tree_label(i, right);
            sig.labels.push_back(label);
            if (i < height)
                sig.dirs_of_label[label] = {grid::tree_up(i, right),
                                            grid::tree_down(i + 1, false),
                                            grid::tree_down(i + 1, true)};
            else
                sig.dirs_of_label[label] = {grid::tree_up(i, right), "+d"};
        }

    std::vector<std::string> heads{"0"};
    for (const auto& q : m.states) heads.push_back(q);
    for (const auto& pos : grid::pos_values())
        for (const auto& s : m.work_alphabet)
            for (const auto& h : heads) {
                std::string label = grid::grid_label(pos, s, h);
                sig.labels.push_back(label);
                std::vector<std::string> dirs{"-d"};
                for (const std::string d : {"+1", "-1", "+2", "-2"})
                    if (grid::pos_has(pos, d)) dirs.push_back(d);
                dirs.push_back("+d'");
                sig.dirs_of_label[label] = std::move(dirs);
            }

    for (int bit : {0, 1})
        for (std::size_t t = 1; t <= height; ++t) {
            std::string label = grid::chain_bit_label(bit, t);
            sig.labels.push_back(label);
            if (t == 1 && height == 1) {
                sig.dirs_of_label[label] = {"-d'"};
            } else if (t == 1) {
                sig.dirs_of_label[label] = {"-d'", grid::chain_down(1)};
            } else if (t == height) {
                sig.dirs_of_label[label] = {"-c" + std::to_string(t - 1)};
            } else {
                sig.dirs_of_label[label] = {"-c" + std::to_string(t - 1), grid::chain_down(t)};
            }
        }
    return sig;
}

/// Canonical accepted graph: the full tree, a 2^n x 2^n grid whose rows spell
/// out the supplied accepting computation (last row repeated as padding), and
/// all-correct coordinate chains. The computation is checked step by step
/// against the machine before anything is built.
inline Graph canonical_grid_graph(int n, const TuringMachine& m, const std::vector<std::string>& input,
                                  const std::vector<TmConfiguration>& computation) {
    if (n < 1) throw precondition_error("canonical_grid_graph: n must be at least 1");
    const std::size_t width = std::size_t(1) << n;
    const std::size_t height = 2 * static_cast<std::size_t>(n);
    if (input.size() > static_cast<std::size_t>(n))
        throw precondition_error("canonical_grid_graph: input longer than n");
    if (computation.empty() || computation.size() > width)
        throw precondition_error("canonical_grid_graph: computation must have between 1 and 2^n steps");

    auto padded = [&](const TmConfiguration& c) {
        if (c.tape.size() > width || c.head >= width)
            throw precondition_error("canonical_grid_graph: configuration exceeds tape bound");
        std::vector<std::string> tape = c.tape;
        tape.resize(width, m.blank);
        return tape;
    };

    // Step-by-step validity of the supplied run.
    {
        const auto& first = computation.front();
        if (std::find(m.initial_states.begin(), m.initial_states.end(), first.state) ==
            m.initial_states.end())
            throw precondition_error("canonical_grid_graph: run does not start in an initial state");
        if (first.head != 0)
            throw precondition_error("canonical_grid_graph: run does not start at the first cell");
        auto tape = padded(first);
        for (std::size_t j = 0; j < width; ++j) {
            const std::string& expected = j < input.size() ? input[j] : m.blank;
            if (tape[j] != expected)
                throw precondition_error("canonical_grid_graph: first row does not spell the input");
        }
        for (std::size_t t = 0; t + 1 < computation.size(); ++t) {
            auto from = padded(computation[t]);
            auto to = padded(computation[t + 1]);
            const auto& cur = computation[t];
            const auto& nxt = computation[t + 1];
            bool matched = false;
            for (const auto& rule : m.transitions) {
                if (rule.from_state != cur.state || rule.read != from[cur.head]) continue;
                std::size_t target = rule.move == 'R' ? cur.head + 1 : cur.head - 1;
                if (rule.move == 'L' && cur.head == 0) continue;
                if (rule.to_state != nxt.state || target != nxt.head) continue;
                auto written = from;
                written[cur.head] = rule.write;
                if (written == to) {
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw precondition_error("canonical_grid_graph: step " + std::to_string(t) +
                                         " does not follow from the machine");
        }
        auto last = padded(computation.back());
        if (!m.accepting_pairs.count({computation.back().state, last[computation.back().head]}))
            throw precondition_error("canonical_grid_graph: run does not end accepting");
    }

    Graph g;
    auto tree_id = [](std::size_t level, std::size_t index) {
        return "t" + std::to_string(level) + "." + std::to_string(index);
    };
    auto grid_id = [](std::size_t i, std::size_t j) {
        return "g" + std::to_string(i) + "." + std::to_string(j);
    };
    auto chain_id = [](std::size_t i, std::size_t j, std::size_t t) {
        return "c" + std::to_string(i) + "." + std::to_string(j) + "." + std::to_string(t);
    };

    for (std::size_t level = 0; level <= height; ++level)
        for (std::size_t index = 0; index < (std::size_t(1) << level); ++index) {
            std::string id = tree_id(level, index);
            g.nodes.push_back(id);
            g.labeling[id] = grid::tree_label(level, index % 2 == 1);
            g.edges[id] = {};
            if (level > 0) {
                std::string parent = tree_id(level - 1, index / 2);
                g.edges[parent][grid::tree_down(level, index % 2 == 1)] = id;
                g.edges[id][grid::tree_up(level, index % 2 == 1)] = parent;
            }
        }
    g.initial_node = tree_id(0, 0);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::size_t>> heads;
    for (std::size_t i = 0; i < width; ++i) {
        const auto& c = i < computation.size() ? computation[i] : computation.back();
        rows.push_back(padded(c));
        heads.emplace_back(c.state, c.head);
    }

    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t j = 0; j < width; ++j) {
            std::string id = grid_id(i, j);
            std::string pos;
            pos += j == 0 ? 'L' : (j == width - 1 ? 'R' : 'C');
            pos += i == 0 ? 'D' : (i == width - 1 ? 'U' : 'C');
            std::string head = heads[i].second == j ? heads[i].first : "0";
            g.nodes.push_back(id);
            g.labeling[id] = grid::grid_label(pos, rows[i][j], head);
            g.edges[id] = {};
            std::size_t leaf = i * width + j;
            g.edges[tree_id(height, leaf)]["+d"] = id;
            g.edges[id]["-d"] = tree_id(height, leaf);
            if (j > 0) {
                g.edges[grid_id(i, j - 1)]["+1"] = id;
                g.edges[id]["-1"] = grid_id(i, j - 1);
            }
            if (i > 0) {
                g.edges[grid_id(i - 1, j)]["+2"] = id;
                g.edges[id]["-2"] = grid_id(i - 1, j);
            }
        }

    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t j = 0; j < width; ++j) {
            std::string previous = grid_id(i, j);
            for (std::size_t t = 1; t <= height; ++t) {
                std::string id = chain_id(i, j, t);
                // First n bits spell the row, next n bits the column, most
                // significant bit first.
                std::size_t value = t <= static_cast<std::size_t>(n) ? i : j;
                std::size_t offset = t <= static_cast<std::size_t>(n)
                                         ? static_cast<std::size_t>(n) - t
                                         : height - t;
                int bit = (value >> offset) & 1;
                g.nodes.push_back(id);
                g.labeling[id] = grid::chain_bit_label(bit, t);
                g.edges[id] = {};
                if (t == 1) {
                    g.edges[previous]["+d'"] = id;
                    g.edges[id]["-d'"] = previous;
                } else {
                    g.edges[previous][grid::chain_down(t - 1)] = id;
                    g.edges[id]["-c" + std::to_string(t - 1)] = previous;
                }
                previous = id;
            }
        }
    return g;
}

} // namespace graphsig

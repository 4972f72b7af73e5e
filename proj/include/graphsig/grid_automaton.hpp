#pragma once

#include "graphsig/hardness.hpp"

namespace graphsig {

namespace grid {

class GwaBuilder {
public:
    explicit GwaBuilder(const Signature& sig) : sig_(sig) {}

    void move(const std::string& state, const std::string& label, const std::string& next,
              const std::string& dir) {
        const auto& dirs = sig_.dirs(label);
        if (std::find(dirs.begin(), dirs.end(), dir) == dirs.end())
            throw std::logic_error("grid automaton: move " + dir + " not available at " + label);
        auto key = std::make_pair(state, label);
        auto value = std::make_pair(next, dir);
        auto [it, fresh] = automaton_.transitions.emplace(key, value);
        if (!fresh && it->second != value)
            throw std::logic_error("grid automaton: conflicting transitions at (" + state + "," + label + ")");
        note(state);
        note(next);
    }

    void accept(const std::string& state, const std::string& label) {
        automaton_.acceptance.insert({state, label});
        note(state);
    }

    GraphWalkingAutomaton take(const std::string& initial) {
        note(initial);
        automaton_.initial_state = initial;
        return std::move(automaton_);
    }

private:
    void note(const std::string& state) {
        if (seen_.insert(state).second) automaton_.states.push_back(state);
    }

    const Signature& sig_;
    GraphWalkingAutomaton automaton_;
    std::set<std::string> seen_;
};

} // namespace grid

/// Automaton that accepts exactly the well-formed grid encodings of
/// accepting computations of the machine on the given input. Phase one walks
/// the tree to every grid node and verifies, bit by bit against the
/// coordinate chains, that the border types and the +1/+2 neighbours are
/// consistent, which pins the nodes to a 2^n x 2^n grid. Phase two scans the
/// first row for the input and then checks row against row until an
/// accepting head pair is found.
///
/// State names are prefixed by their role: d0/z* for the leftmost descent
/// and the all-zero check, dn2/e2/u*2 and t2* for the border-type pass,
/// dn3/e3/u*3 and A./B. for the neighbour passes (A along +1, B along +2),
/// pd/pw*/ph0 for the input row, fh/W.* for the head window and c2*/sk*/ret
/// for the row copy checks.
inline GraphWalkingAutomaton gen_grid_automaton(int n, const TuringMachine& m,
                                                const std::vector<std::string>& input,
                                                bool step_bound_attested) {
    if (!step_bound_attested)
        throw precondition_error("gen_grid_automaton: caller must attest the machine halts "
                                 "within 2^n-1 steps on this input");
    if (n < 1) throw precondition_error("gen_grid_automaton: n must be at least 1");
    if (input.size() > static_cast<std::size_t>(n))
        throw precondition_error("gen_grid_automaton: input longer than n");

    const Signature sig = gen_grid_signature(n, m);
    const std::size_t height = 2 * static_cast<std::size_t>(n);
    const std::size_t half = static_cast<std::size_t>(n);
    grid::GwaBuilder b(sig);

    std::vector<std::string> heads{"0"};
    for (const auto& q : m.states) heads.push_back(q);
    auto each_grid_label = [&](auto&& fn) {
        for (const auto& pos : grid::pos_values())
            for (const auto& s : m.work_alphabet)
                for (const auto& h : heads)
                    fn(pos, s, h, grid::grid_label(pos, s, h));
    };
    std::map<std::pair<std::string, std::string>, std::vector<TmTransition>> delta;
    for (const auto& rule : m.transitions)
        delta[{rule.from_state, rule.read}].push_back(rule);
    auto has_rule = [&](const std::string& q, const std::string& s, const std::string& q2, char mv) {
        auto it = delta.find({q, s});
        if (it == delta.end()) return false;
        for (const auto& rule : it->second)
            if (rule.to_state == q2 && rule.move == mv) return true;
        return false;
    };
    auto has_exact_rule = [&](const std::string& q, const std::string& s, const std::string& q2,
                              const std::string& write, char mv) {
        auto it = delta.find({q, s});
        if (it == delta.end()) return false;
        for (const auto& rule : it->second)
            if (rule.to_state == q2 && rule.write == write && rule.move == mv) return true;
        return false;
    };

    // --- leftmost descent and the all-zero chain of the (0,0) node.
    b.move("d0", "a0", "d0", "+l1");
    for (std::size_t i = 1; i < height; ++i)
        b.move("d0", grid::tree_label(i, false), "d0", grid::tree_down(i + 1, false));
    b.move("d0", grid::tree_label(height, false), "d0", "+d");
    each_grid_label([&](const std::string&, const std::string&, const std::string&,
                        const std::string& label) { b.move("d0", label, "z1", "+d'"); });
    for (std::size_t t = 1; t < height; ++t)
        b.move("z1", grid::chain_bit_label(0, t), "z1", grid::chain_down(t));
    b.move("z1", grid::chain_bit_label(0, height), "z2", grid::chain_up_from(height));
    for (std::size_t t = 2; t < height; ++t)
        b.move("z2", grid::chain_bit_label(0, t), "z2", grid::chain_up_from(t));
    b.move("z2", grid::chain_bit_label(0, 1), "z2", "-d'");

    // --- tree tours. The second pass checks border types, the third checks
    // neighbours; both visit every leaf's grid node once.
    auto tour = [&](const std::string& tag, const std::string& next_after,
                    auto&& visit_entry) {
        std::string dn = "dn" + tag, e = "e" + tag, lb = "lb" + tag, uL = "uL" + tag,
                    uR = "uR" + tag;
        b.move(dn, "a0", dn, "+l1");
        for (std::size_t i = 1; i < height; ++i)
            for (bool right : {false, true})
                b.move(dn, grid::tree_label(i, right), dn, grid::tree_down(i + 1, false));
        for (bool right : {false, true})
            b.move(dn, grid::tree_label(height, right), e, "+d");
        each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                            const std::string& label) { visit_entry(e, pos, s, h, label); });
        b.move(lb, grid::tree_label(height, false), uL, grid::tree_up(height, false));
        b.move(lb, grid::tree_label(height, true), uR, grid::tree_up(height, true));
        b.move(uL, "a0", dn, "+r1");
        for (std::size_t i = 1; i < height; ++i)
            for (bool right : {false, true})
                b.move(uL, grid::tree_label(i, right), dn, grid::tree_down(i + 1, true));
        for (std::size_t i = 1; i < height; ++i) {
            b.move(uR, grid::tree_label(i, false), uL, grid::tree_up(i, false));
            b.move(uR, grid::tree_label(i, true), uR, grid::tree_up(i, true));
        }
        b.move(uR, "a0", next_after, "+l1");
    };

    // --- border-type pass: summaries E (nothing read), Z (all zeros),
    // O (all ones), M (mixed) per bit block.
    auto update = [](char sum, int bit) {
        if (sum == 'E') return bit ? 'O' : 'Z';
        if (sum == 'M') return 'M';
        if (sum == 'Z') return bit ? 'M' : 'Z';
        return bit ? 'O' : 'M';
    };
    auto row_letter = [](char sum) { return sum == 'Z' ? 'D' : (sum == 'O' ? 'U' : 'C'); };
    auto col_letter = [](char sum) { return sum == 'Z' ? 'L' : (sum == 'O' ? 'R' : 'C'); };

    auto t2_entry = [&](const std::string& e, const std::string& pos, const std::string&,
                        const std::string&, const std::string& label) {
        b.move(e, label, "t2s." + pos + ".E", "+d'");
    };
    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        (void)s;
        (void)h;
        b.move("z2", label, "t2s." + pos + ".E", "+d'");
    });
    for (const auto& pos : grid::pos_values())
        for (char sum : {'E', 'Z', 'O', 'M'})
            for (std::size_t t = 1; t <= half; ++t)
                for (int bit : {0, 1}) {
                    if ((t == 1) != (sum == 'E')) continue;
                    char sum2 = update(sum, bit);
                    std::string from = "t2s." + pos + "." + sum;
                    if (t < half)
                        b.move(from, grid::chain_bit_label(bit, t), "t2s." + pos + "." + sum2,
                               grid::chain_down(t));
                    else if (row_letter(sum2) == pos[1])
                        b.move(from, grid::chain_bit_label(bit, t), "t2c." + std::string(1, pos[0]) + ".E",
                               grid::chain_down(t));
                }
    for (char claim : {'L', 'C', 'R'})
        for (char sum : {'E', 'Z', 'O', 'M'})
            for (std::size_t t = half + 1; t <= height; ++t)
                for (int bit : {0, 1}) {
                    if ((t == half + 1) != (sum == 'E')) continue;
                    char sum2 = update(sum, bit);
                    std::string from = "t2c." + std::string(1, claim) + "." + sum;
                    if (t < height)
                        b.move(from, grid::chain_bit_label(bit, t),
                               "t2c." + std::string(1, claim) + "." + sum2, grid::chain_down(t));
                    else if (col_letter(sum2) == claim)
                        b.move(from, grid::chain_bit_label(bit, t), "u2", grid::chain_up_from(height));
                }
    for (std::size_t t = 2; t < height; ++t)
        for (int bit : {0, 1})
            b.move("u2", grid::chain_bit_label(bit, t), "u2", grid::chain_up_from(t));
    for (int bit : {0, 1})
        b.move("u2", grid::chain_bit_label(bit, 1), "u2", "-d'");
    each_grid_label([&](const std::string&, const std::string&, const std::string&,
                        const std::string& label) { b.move("u2", label, "lb2", "-d"); });
    tour("2", "dn3", t2_entry);

    // --- neighbour passes. Check A compares a node with its +1 neighbour
    // (equal row bits, column bits incremented); check B with its +2
    // neighbour (row bits incremented, equal column bits). Bits are carried
    // across one at a time; "pre"/"post" track the x01^i / x10^i increment
    // pattern around its pivot.
    struct CheckSpec {
        std::string name;
        std::string cross, back;
        bool increments_rows;
        std::string done;
    };
    const std::vector<CheckSpec> checks{{"A", "+1", "-1", false, "A.done"},
                                        {"B", "+2", "-2", true, "B.done"}};

    auto phases_at = [&](const CheckSpec& c, std::size_t t) -> std::vector<std::string> {
        bool inc_block = c.increments_rows ? (t <= half) : (t > half);
        if (!inc_block) return {"-"};
        bool first = t == (c.increments_rows ? 1 : half + 1);
        return first ? std::vector<std::string>{"pre"} : std::vector<std::string>{"pre", "post"};
    };

    for (const auto& c : checks) {
        for (std::size_t t = 1; t <= height; ++t) {
            bool inc_block = c.increments_rows ? (t <= half) : (t > half);
            for (const auto& ph : phases_at(c, t)) {
                std::string rd = c.name + ".rd." + std::to_string(t) + "." + ph;
                for (std::size_t s = 1; s < t; ++s)
                    for (int bit : {0, 1})
                        b.move(rd, grid::chain_bit_label(bit, s), rd, grid::chain_down(s));
                for (int bit : {0, 1}) {
                    if (inc_block && ph == "post" && bit != 1) continue;
                    std::string vu = c.name + ".vu." + std::to_string(t) + "." + std::to_string(bit) +
                                     "." + ph;
                    b.move(rd, grid::chain_bit_label(bit, t), vu, grid::chain_up_from(t));
                    for (std::size_t s = 1; s < t; ++s)
                        for (int inner : {0, 1})
                            b.move(vu, grid::chain_bit_label(inner, s), vu, grid::chain_up_from(s));
                    std::string x = c.name + ".x." + std::to_string(t) + "." + std::to_string(bit) +
                                    "." + ph;
                    std::string cd = c.name + ".cd." + std::to_string(t) + "." + std::to_string(bit) +
                                     "." + ph;
                    each_grid_label([&](const std::string& pos, const std::string&, const std::string&,
                                        const std::string& label) {
                        if (grid::pos_has(pos, c.cross)) b.move(vu, label, x, c.cross);
                        b.move(x, label, cd, "+d'");
                    });
                    for (std::size_t s = 1; s < t; ++s)
                        for (int inner : {0, 1})
                            b.move(cd, grid::chain_bit_label(inner, s), cd, grid::chain_down(s));
                    for (int other : {0, 1}) {
                        std::string next_ph;
                        bool ok;
                        if (!inc_block) {
                            ok = other == bit;
                            next_ph = "-";
                        } else if (ph == "pre") {
                            if (other == bit) {
                                ok = true;
                                next_ph = "pre";
                            } else if (bit == 0 && other == 1) {
                                ok = true;
                                next_ph = "post";
                            } else {
                                ok = false;
                            }
                        } else {
                            ok = bit == 1 && other == 0;
                            next_ph = "post";
                        }
                        if (!ok) continue;
                        bool block_ends = t == height || (c.increments_rows && t == half);
                        if (block_ends && inc_block && next_ph != "post") continue;
                        if (t == height) {
                            std::string cuE = c.name + ".cuE";
                            b.move(cd, grid::chain_bit_label(other, t), cuE, grid::chain_up_from(t));
                        } else {
                            std::string carried = t + 1 <= half
                                                      ? (c.increments_rows ? next_ph : "-")
                                                      : (t == half ? (c.increments_rows ? "-" : "pre")
                                                                   : next_ph);
                            std::string cu = c.name + ".cu." + std::to_string(t) + "." + carried;
                            b.move(cd, grid::chain_bit_label(other, t), cu, grid::chain_up_from(t));
                            for (std::size_t s = 1; s < t; ++s)
                                for (int inner : {0, 1})
                                    b.move(cu, grid::chain_bit_label(inner, s), cu,
                                           grid::chain_up_from(s));
                            std::string xb = c.name + ".xb." + std::to_string(t) + "." + carried;
                            std::string rd2 = c.name + ".rd." + std::to_string(t + 1) + "." + carried;
                            each_grid_label([&](const std::string& pos, const std::string&,
                                                const std::string&, const std::string& label) {
                                if (grid::pos_has(pos, c.back)) b.move(cu, label, xb, c.back);
                                b.move(xb, label, rd2, "+d'");
                            });
                        }
                    }
                }
            }
        }
        std::string cuE = c.name + ".cuE";
        for (std::size_t s = 1; s < height; ++s)
            for (int bit : {0, 1})
                b.move(cuE, grid::chain_bit_label(bit, s), cuE, grid::chain_up_from(s));
        each_grid_label([&](const std::string& pos, const std::string&, const std::string&,
                            const std::string& label) {
            if (grid::pos_has(pos, c.back)) b.move(cuE, label, c.done, c.back);
        });
    }

    auto t3_dispatch = [&](const std::string& from, const std::string& pos,
                           const std::string& label, bool after_a) {
        if (!after_a && grid::pos_has(pos, "+1"))
            b.move(from, label, "A.rd.1.-", "+d'");
        else if (grid::pos_has(pos, "+2"))
            b.move(from, label, "B.rd.1.pre", "+d'");
        else
            b.move(from, label, "lb3", "-d");
    };
    auto t3_entry = [&](const std::string& e, const std::string& pos, const std::string&,
                        const std::string&, const std::string& label) {
        t3_dispatch(e, pos, label, false);
    };
    each_grid_label([&](const std::string& pos, const std::string&, const std::string&,
                        const std::string& label) {
        t3_dispatch("A.done", pos, label, true);
        b.move("B.done", label, "lb3", "-d");
    });
    tour("3", "pd", t3_entry);

    // --- phase two. Walk down to (0,0), check the input row, then verify
    // row after row around the head until an accepting pair shows up.
    b.move("pd", "a0", "pd", "+l1");
    for (std::size_t i = 1; i < height; ++i)
        b.move("pd", grid::tree_label(i, false), "pd", grid::tree_down(i + 1, false));
    b.move("pd", grid::tree_label(height, false), "pd", "+d");

    const std::size_t w = input.size();
    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        if (pos != "LD") return;
        const std::string& expected = w == 0 ? m.blank : input[0];
        bool initial = std::find(m.initial_states.begin(), m.initial_states.end(), h) !=
                       m.initial_states.end();
        if (s == expected && initial)
            b.move("pd", label, w <= 1 ? "pwB" : "pw.1", "+1");
    });
    for (std::size_t j = 1; j < w; ++j)
        each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                            const std::string& label) {
            if (pos != "CD" || s != input[j] || h != "0") return;
            b.move("pw." + std::to_string(j), label, j + 1 < w ? "pw." + std::to_string(j + 1) : "pwB",
                   "+1");
        });
    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        if (s != m.blank || h != "0") return;
        if (pos == "CD") b.move("pwB", label, "pwB", "+1");
        if (pos == "RD") b.move("pwB", label, "ph0", "-1");
    });

    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        if (pos == "CD" && h == "0") b.move("ph0", label, "ph0", "-1");
        if (pos == "LD" && h != "0") {
            if (m.accepting_pairs.count({h, s}))
                b.accept("ph0", label);
            else if (delta.count({h, s}))
                b.move("ph0", label, "W.r1|" + h + "|" + s, "+1");
        }
    });

    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        if (h == "0") {
            if (pos[0] != 'R') b.move("fh", label, "fh", "+1");
            return;
        }
        if (m.accepting_pairs.count({h, s})) {
            b.accept("fh", label);
            return;
        }
        if (!delta.count({h, s})) return;
        if (pos[0] != 'R')
            b.move("fh", label, "W.r1|" + h + "|" + s, "+1");
        else if (pos[1] != 'U')
            b.move("fh", label, "W.b1|" + h + "|" + s, "+2");
    });

    // Head window. Route r: inspect the cell right of the head, the three
    // cells above, and the cell left of the head. Route b: the same when the
    // head sits at the right border, so only a left move can be encoded.
    for (const auto& [key, rules] : delta) {
        const auto& [q, s] = key;
        (void)rules;
        std::string r1 = "W.r1|" + q + "|" + s;
        std::string b1 = "W.b1|" + q + "|" + s;
        each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                            const std::string& label) {
            if (h2 == "0" && pos[1] != 'U')
                b.move(r1, label, "W.r2|" + q + "|" + s + "|" + s2, "+2");
            if (h2 == "0" && pos[0] != 'L')
                b.move(b1, label, "W.b2|" + q + "|" + s + "|" + s2, "-1");
        });
        for (const auto& sym : m.work_alphabet) {
            std::string r2 = "W.r2|" + q + "|" + s + "|" + sym;
            std::string b2 = "W.b2|" + q + "|" + s + "|" + sym;
            each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                                const std::string& label) {
                if (s2 == sym && h2 == "0")
                    b.move(r2, label, "W.r3n|" + q + "|" + s, "-1");
                if (s2 == sym && h2 != "0" && has_rule(q, s, h2, 'R'))
                    b.move(r2, label, "W.r3r|" + q + "|" + s + "|" + h2, "-1");
                // Route b: the cell left of the head in the next row carries
                // the moved head; the symbol under it must copy.
                if (h2 != "0" && has_exact_rule(q, s, h2, sym, 'L'))
                    b.move(b2, label, "W.r5|" + s2, "-2");
            });
        }
        each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                            const std::string& label) {
            if (h2 != "0") return;
            std::string r3n = "W.r3n|" + q + "|" + s;
            if (pos[0] != 'L' && delta.count({q, s}))
                b.move(r3n, label, "W.r4l|" + q + "|" + s + "|" + s2, "-1");
            for (const auto& q2 : m.states) {
                if (!has_exact_rule(q, s, q2, s2, 'R')) continue;
                std::string r3r = "W.r3r|" + q + "|" + s + "|" + q2;
                if (pos[0] == 'L')
                    b.move(r3r, label, "W.fin", "-2");
                else
                    b.move(r3r, label, "W.r4r", "-1");
            }
        });
        for (const auto& sym : m.work_alphabet) {
            std::string r4l = "W.r4l|" + q + "|" + s + "|" + sym;
            each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                                const std::string& label) {
                if (h2 != "0" && has_exact_rule(q, s, h2, sym, 'L'))
                    b.move(r4l, label, "W.r5|" + s2, "-2");
            });
        }
    }
    each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                        const std::string& label) {
        if (h2 == "0" && pos[1] != 'D')
            b.move("W.r4r", label, "W.r5|" + s2, "-2");
    });
    for (const auto& sym : m.work_alphabet) {
        std::string r5 = "W.r5|" + sym;
        each_grid_label([&](const std::string& pos, const std::string& s2, const std::string& h2,
                            const std::string& label) {
            if (s2 == sym && h2 == "0" && pos[0] != 'R')
                b.move(r5, label, "W.fin", "+1");
        });
    }

    // Copy checks left of the window, then right of it, then home and up.
    each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                        const std::string& label) {
        if (h != "0") {
            if (pos[0] == 'L')
                b.move("W.fin", label, "skov", "+1");
            else
                b.move("W.fin", label, "sk2a", "-1");
            if (pos[0] == 'R')
                b.move("sk", label, "ret", "-1");
            else
                b.move("sk", label, "skov", "+1");
        } else {
            if (pos[0] == 'L')
                b.move("sk2a", label, "sk", "+1");
            else
                b.move("sk2a", label, "c2a", "-1");
            if (pos[0] != 'R') b.move("sk", label, "sk", "+1");
            if (pos[1] != 'U') b.move("c2a", label, "c2a.u|" + s, "+2");
            if (pos[0] == 'L')
                b.move("c2a.d", label, "sk", "+1");
            else
                b.move("c2a.d", label, "c2a", "-1");
            if (pos[0] == 'R')
                b.move("skov", label, "ret", "-1");
            else
                b.move("skov", label, "c2b", "+1");
            if (pos[1] != 'U') b.move("c2b", label, "c2b.u|" + s, "+2");
            if (pos[0] == 'R')
                b.move("c2b.d", label, "ret", "-1");
            else
                b.move("c2b.d", label, "c2b", "+1");
        }
        if (pos[0] != 'L')
            b.move("ret", label, "ret", "-1");
        else if (pos[1] != 'U')
            b.move("ret", label, "fh", "+2");
    });
    for (const auto& sym : m.work_alphabet)
        each_grid_label([&](const std::string& pos, const std::string& s, const std::string& h,
                            const std::string& label) {
            if (s == sym && h == "0" && pos[1] != 'D') {
                b.move("c2a.u|" + sym, label, "c2a.d", "-2");
                b.move("c2b.u|" + sym, label, "c2b.d", "-2");
            }
        });

    return b.take("d0");
}

} // namespace graphsig

#include "oraclesim/analysis/game.hpp"

#include <algorithm>
#include <optional>

#include "oraclesim/errors.hpp"

namespace oraclesim::analysis {

namespace {
constexpr std::size_t kProfileCap = 1000000;
}

GameTree::GameTree(std::vector<std::string> player_names)
    : players_(std::move(player_names)) {
    if (players_.empty()) throw ConfigError("game: at least one player required");
}

NodeId GameTree::add_decision(ActorKind actor, int player, const std::string& name) {
    if (actor == ActorKind::Chance) {
        throw ConfigError("game: chance nodes have no deciding player");
    }
    if (player < 0 || static_cast<std::size_t>(player) >= players_.size()) {
        throw ConfigError("game: unknown player index");
    }
    nodes_.push_back({actor, player, name, {}, {}});
    return nodes_.size() - 1;
}

NodeId GameTree::add_chance(const std::string& name) {
    nodes_.push_back({ActorKind::Chance, -1, name, {}, {}});
    return nodes_.size() - 1;
}

NodeId GameTree::add_leaf(const std::string& name, std::vector<Rat> payoffs) {
    nodes_.push_back({ActorKind::Chance, -1, name, {}, std::move(payoffs)});
    return nodes_.size() - 1;
}

void GameTree::add_move(NodeId from, const std::string& label, NodeId child,
                        const Rat& prob) {
    if (from >= nodes_.size() || child >= nodes_.size()) {
        throw ConfigError("game: move references unknown node");
    }
    if (!nodes_[from].payoffs.empty()) {
        throw ConfigError("game: leaves cannot have moves");
    }
    nodes_[from].moves.push_back({label, child, prob});
}

void GameTree::validate() const {
    if (nodes_.empty()) throw ConfigError("game: empty tree");
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    for (const auto& node : nodes_) {
        if (node.is_leaf()) {
            if (node.payoffs.size() != players_.size()) {
                throw ConfigError("game: leaf '" + node.name +
                                  "' lacks a payoff for every player");
            }
            continue;
        }
        if (node.actor == ActorKind::Chance) {
            Rat total = 0;
            for (const auto& move : node.moves) {
                if (move.prob < 0) throw ConfigError("game: negative chance probability");
                total += move.prob;
            }
            if (total != 1) {
                throw ConfigError("game: chance probabilities at '" + node.name +
                                  "' do not sum to 1");
            }
        }
        for (const auto& move : node.moves) indegree[move.child] += 1;
    }
    if (indegree[0] != 0) throw ConfigError("game: root has a parent");
    for (NodeId id = 1; id < nodes_.size(); ++id) {
        if (indegree[id] != 1) {
            throw ConfigError("game: node '" + nodes_[id].name +
                              "' is not reached by exactly one move");
        }
    }
}

std::vector<NodeId> GameTree::decision_nodes(int player) const {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (!nodes_[id].is_leaf() && nodes_[id].player == player) out.push_back(id);
    }
    return out;
}

namespace {

std::vector<Rat> value_under(const GameTree& game, const Profile& profile, NodeId id) {
    const GameNode& node = game.node(id);
    if (node.is_leaf()) return node.payoffs;
    if (node.actor == ActorKind::Chance) {
        std::vector<Rat> out(game.player_count(), Rat(0));
        for (const auto& move : node.moves) {
            if (move.prob == 0) continue;
            std::vector<Rat> child = value_under(game, profile, move.child);
            for (std::size_t p = 0; p < out.size(); ++p) out[p] += move.prob * child[p];
        }
        return out;
    }
    auto it = profile.find(id);
    if (it == profile.end()) {
        throw InvariantError("game: profile misses node '" + node.name + "'");
    }
    return value_under(game, profile, node.moves.at(it->second).child);
}

struct Selection {
    Profile choices;
    std::vector<Rat> value;
};

// All SPE selections of the subgame rooted at id, by joint recursion: a
// selection below fixes continuation values, and at a decision node every
// maximizing move against those values spawns a selection.
std::vector<Selection> spe_at(const GameTree& game, NodeId id) {
    const GameNode& node = game.node(id);
    if (node.is_leaf()) return {{Profile{}, node.payoffs}};

    // Cartesian product over children's selections.
    std::vector<std::vector<Selection>> child_sets;
    for (const auto& move : node.moves) child_sets.push_back(spe_at(game, move.child));
    std::size_t combos = 1;
    for (const auto& set : child_sets) {
        combos *= set.size();
        if (combos > kProfileCap) {
            throw ConfigError("game: SPE enumeration exceeds the size guard");
        }
    }

    std::vector<Selection> out;
    std::vector<std::size_t> pick(child_sets.size(), 0);
    for (std::size_t combo = 0; combo < combos; ++combo) {
        Profile merged;
        for (std::size_t c = 0; c < child_sets.size(); ++c) {
            const Selection& sel = child_sets[c][pick[c]];
            merged.insert(sel.choices.begin(), sel.choices.end());
        }
        if (node.actor == ActorKind::Chance) {
            std::vector<Rat> value(game.player_count(), Rat(0));
            for (std::size_t c = 0; c < child_sets.size(); ++c) {
                const Rat& prob = node.moves[c].prob;
                if (prob == 0) continue;
                const std::vector<Rat>& v = child_sets[c][pick[c]].value;
                for (std::size_t p = 0; p < value.size(); ++p) value[p] += prob * v[p];
            }
            out.push_back({std::move(merged), std::move(value)});
        } else {
            Rat best = child_sets[0][pick[0]].value[node.player];
            for (std::size_t c = 1; c < child_sets.size(); ++c) {
                best = std::max(best, child_sets[c][pick[c]].value[node.player]);
            }
            for (std::size_t c = 0; c < child_sets.size(); ++c) {
                if (child_sets[c][pick[c]].value[node.player] != best) continue;
                Profile choices = merged;
                choices[id] = c;
                out.push_back({std::move(choices), child_sets[c][pick[c]].value});
                if (out.size() > kProfileCap) {
                    throw ConfigError("game: SPE enumeration exceeds the size guard");
                }
            }
        }
        for (std::size_t c = child_sets.size(); c-- > 0;) {
            if (++pick[c] < child_sets[c].size()) break;
            pick[c] = 0;
        }
    }
    return out;
}

// Every pure contingent plan for one player: a move choice per owned node.
std::vector<Profile> plans_for(const GameTree& game, int player) {
    const std::vector<NodeId> nodes = game.decision_nodes(player);
    std::vector<Profile> plans{Profile{}};
    for (NodeId id : nodes) {
        const std::size_t width = game.node(id).moves.size();
        std::vector<Profile> next;
        next.reserve(plans.size() * width);
        for (const Profile& plan : plans) {
            for (std::size_t m = 0; m < width; ++m) {
                Profile extended = plan;
                extended[id] = m;
                next.push_back(std::move(extended));
            }
        }
        plans = std::move(next);
        if (plans.size() > kProfileCap) {
            throw ConfigError("game: plan enumeration exceeds the size guard");
        }
    }
    return plans;
}

Profile merge_plans(const std::vector<std::vector<Profile>>& plans,
                    const std::vector<std::size_t>& pick) {
    Profile merged;
    for (std::size_t p = 0; p < plans.size(); ++p) {
        merged.insert(plans[p][pick[p]].begin(), plans[p][pick[p]].end());
    }
    return merged;
}

void mark_pareto(std::vector<NormalFormProfile>& profiles) {
    for (auto& candidate : profiles) {
        candidate.pareto_efficient = true;
        for (const auto& other : profiles) {
            bool weakly_better = true;
            bool strictly_somewhere = false;
            for (std::size_t p = 0; p < candidate.payoffs.size(); ++p) {
                if (other.payoffs[p] < candidate.payoffs[p]) weakly_better = false;
                if (other.payoffs[p] > candidate.payoffs[p]) strictly_somewhere = true;
            }
            if (weakly_better && strictly_somewhere) {
                candidate.pareto_efficient = false;
                break;
            }
        }
    }
}

}  // namespace

std::vector<Rat> profile_value(const GameTree& game, const Profile& profile) {
    return value_under(game, profile, 0);
}

std::vector<SpeProfile> solve_spe(const GameTree& game) {
    game.validate();
    std::vector<SpeProfile> out;
    for (Selection& sel : spe_at(game, 0)) {
        out.push_back({std::move(sel.choices), std::move(sel.value), false});
    }
    return out;
}

EquilibriumResult nash_enumerate(const GameTree& game) {
    game.validate();
    const std::size_t n = game.player_count();
    std::vector<std::vector<Profile>> plans;
    std::size_t total = 1;
    for (std::size_t p = 0; p < n; ++p) {
        plans.push_back(plans_for(game, static_cast<int>(p)));
        total *= plans.back().size();
        if (total > kProfileCap) {
            throw ConfigError("game: normal form exceeds the size guard");
        }
    }

    EquilibriumResult result;
    std::vector<std::size_t> pick(n, 0);
    for (std::size_t combo = 0; combo < total; ++combo) {
        Profile joint = merge_plans(plans, pick);
        std::vector<Rat> payoffs = profile_value(game, joint);

        bool nash = true;
        for (std::size_t p = 0; p < n && nash; ++p) {
            for (std::size_t alt = 0; alt < plans[p].size(); ++alt) {
                if (alt == pick[p]) continue;
                std::vector<std::size_t> deviated = pick;
                deviated[p] = alt;
                if (profile_value(game, merge_plans(plans, deviated))[p] > payoffs[p]) {
                    nash = false;
                    break;
                }
            }
        }
        result.profiles.push_back({std::move(joint), std::move(payoffs), nash, false});

        for (std::size_t c = n; c-- > 0;) {
            if (++pick[c] < plans[c].size()) break;
            pick[c] = 0;
        }
    }
    mark_pareto(result.profiles);

    // Pure minmax: opponents jointly pick plans to minimize the player's
    // best-response value.
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<std::size_t> others;
        for (std::size_t q = 0; q < n; ++q) {
            if (q != p) others.push_back(q);
        }
        std::size_t opponent_total = 1;
        for (std::size_t q : others) opponent_total *= plans[q].size();

        std::optional<Rat> worst;
        std::vector<std::size_t> opick(others.size(), 0);
        for (std::size_t combo = 0; combo < opponent_total; ++combo) {
            std::optional<Rat> best;
            for (std::size_t own = 0; own < plans[p].size(); ++own) {
                std::vector<std::size_t> joint_pick(n, 0);
                joint_pick[p] = own;
                for (std::size_t o = 0; o < others.size(); ++o) {
                    joint_pick[others[o]] = opick[o];
                }
                Rat v = profile_value(game, merge_plans(plans, joint_pick))[p];
                if (!best || v > *best) best = v;
            }
            if (!worst || *best < *worst) worst = *best;
            for (std::size_t c = others.size(); c-- > 0;) {
                if (++opick[c] < plans[others[c]].size()) break;
                opick[c] = 0;
            }
        }
        result.minmax.push_back(worst.value_or(Rat(0)));
    }
    return result;
}

EquilibriumResult solve_game(const GameTree& game) {
    EquilibriumResult result = nash_enumerate(game);
    result.spe_profiles = solve_spe(game);
    for (auto& spe : result.spe_profiles) {
        for (const auto& nf : result.profiles) {
            if (nf.choices == spe.choices) {
                spe.pareto_efficient = nf.pareto_efficient;
                break;
            }
        }
    }
    return result;
}

}  // namespace oraclesim::analysis

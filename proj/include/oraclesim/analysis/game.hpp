// Finite extensive-form games with exact-rational payoffs, plus the two
// solvers used to verify equilibrium claims: backward induction that keeps
// every optimal move at indifference, and exhaustive pure-strategy Nash
// enumeration over the induced normal form (with per-player minmax).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oraclesim/rational.hpp"

namespace oraclesim::analysis {

enum class ActorKind { Querier, Reporter, ReporterBloc, Chance };

using NodeId = std::size_t;

struct Move {
    std::string label;
    NodeId child = 0;
    Rat prob = 0;  // meaningful at chance nodes only
};

struct GameNode {
    ActorKind actor = ActorKind::Chance;
    int player = -1;  // payoff index; -1 for chance and leaves
    std::string name;
    std::vector<Move> moves;
    std::vector<Rat> payoffs;  // leaves only

    bool is_leaf() const { return moves.empty(); }
};

class GameTree {
  public:
    explicit GameTree(std::vector<std::string> player_names);

    NodeId add_decision(ActorKind actor, int player, const std::string& name);
    NodeId add_chance(const std::string& name);
    NodeId add_leaf(const std::string& name, std::vector<Rat> payoffs);
    void add_move(NodeId from, const std::string& label, NodeId child,
                  const Rat& prob = Rat(0));

    // Root is node 0. Checks: single rooted tree, chance probabilities sum
    // to 1, every leaf carries one payoff per player.
    void validate() const;

    std::size_t player_count() const { return players_.size(); }
    const std::vector<std::string>& players() const { return players_; }
    const std::vector<GameNode>& nodes() const { return nodes_; }
    const GameNode& node(NodeId id) const { return nodes_.at(id); }
    // Decision nodes owned by a player, ascending.
    std::vector<NodeId> decision_nodes(int player) const;

  private:
    std::vector<std::string> players_;
    std::vector<GameNode> nodes_;
};

// A pure strategy profile: the chosen move index at every decision node.
using Profile = std::map<NodeId, std::size_t>;

// Expected payoff vector of a profile, chance folded by expectation.
std::vector<Rat> profile_value(const GameTree& game, const Profile& profile);

struct SpeProfile {
    Profile choices;
    std::vector<Rat> payoffs;
    bool pareto_efficient = false;  // among induced normal-form outcomes
};

struct NormalFormProfile {
    Profile choices;
    std::vector<Rat> payoffs;
    bool nash = false;
    bool pareto_efficient = false;
};

struct EquilibriumResult {
    std::vector<SpeProfile> spe_profiles;
    std::vector<NormalFormProfile> profiles;  // the full induced normal form
    std::vector<Rat> minmax;                  // per player
};

// Backward induction keeping every maximizing move; the result enumerates
// every selection. Pareto flags are left unset (solve_game fills them).
std::vector<SpeProfile> solve_spe(const GameTree& game);

// Exhaustive pure-profile enumeration over the induced normal form: Nash
// flags, Pareto flags, and pure minmax per player. Rejects games beyond
// 10^6 profiles.
EquilibriumResult nash_enumerate(const GameTree& game);

// Both solvers combined; SPE profiles get Pareto flags from the normal form.
EquilibriumResult solve_game(const GameTree& game);

}  // namespace oraclesim::analysis

#include "oraclesim/mech/fork.hpp"

#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oraclesim/errors.hpp"

using namespace oraclesim;
using testutil::mint_all;
using testutil::respond_with;

namespace {

OutcomeSpace binary_space() { return make_outcome_space({"True", "False"}); }

}  // namespace

TEST_CASE("a report moves the whole holding to one cell") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 3}, {"bob", 2}});
    auto space = binary_space();

    auto iface = respond_with({{"alice", "True"},
                               {"bob", std::nullopt}});
    auto [cell, holding] = report("alice", "rain", space, pool, iface, ledger);
    CHECK(cell == "True");
    CHECK(holding == ledger.tokens_of("alice"));

    auto [bob_cell, bob_holding] = report("bob", "rain", space, pool, iface, ledger);
    CHECK(bob_cell == kAbstainLabel);
    CHECK(bob_holding.size() == 2);
}

TEST_CASE("labels outside the outcome space coerce to Abstain") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 1}});
    auto space = binary_space();
    auto iface = respond_with({{"alice", "Maybe"}});
    auto [cell, holding] = report("alice", "rain", space, pool, iface, ledger);
    CHECK(cell == kAbstainLabel);
}

TEST_CASE("reporting requires at least one pool token") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 1}});
    auto space = binary_space();
    auto iface = testutil::everyone_says("True");
    CHECK_THROWS_AS(report("ghost", "rain", space, pool, iface, ledger), ConfigError);
}

TEST_CASE("fork partitions the pool by each owner's answer") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 6}, {"bob", 4}, {"carol", 2}});
    auto space = binary_space();
    auto iface = respond_with({{"alice", "True"},
                               {"bob", "False"},
                               {"carol", std::nullopt}});

    OmegaPartition part = fork("rain", space, pool, iface, ledger);
    CHECK(part.cell("True") == ledger.tokens_of("alice"));
    CHECK(part.cell("False") == ledger.tokens_of("bob"));
    CHECK(part.cell(kAbstainLabel) == ledger.tokens_of("carol"));
    CHECK(part.cell("Invalid").empty());
    CHECK(part.union_all() == pool);
}

TEST_CASE("forking an empty pool is a config error") {
    Ledger ledger;
    auto space = binary_space();
    CHECK_THROWS_AS(fork("rain", space, TokenSet(), testutil::everyone_says("True"), ledger),
                    ConfigError);
}

TEST_CASE("burned tokens in the pool abstain without being queried") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 4}});
    TokenSet burned = pool.take(2);
    ledger.move_tokens(burned, Ledger::burn_sink());
    auto space = binary_space();

    // The interface never hears about the sink; answering for it would throw.
    auto iface = [](const AgentId& agent, const std::string&, const OutcomeSpace&,
                    const TokenSet&) -> std::optional<std::string> {
        REQUIRE(agent == "alice");
        return "True";
    };
    OmegaPartition part = fork("rain", space, pool, iface, ledger);
    CHECK(part.cell(kAbstainLabel) == burned);
    CHECK(part.cell("True") == pool.set_difference(burned));
}

TEST_CASE("fees split pro rata and conserve to the penny") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 6}, {"bob", 4}});
    pay(ledger, pool, Rat(1));
    CHECK(ledger.balance("alice") == Rat(3, 5));
    CHECK(ledger.balance("bob") == Rat(2, 5));
    CHECK(ledger.total_currency() == Rat(1));
    ledger.audit();
}

TEST_CASE("a paying querier funds the fee internally") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 3}, {"quentin", 1}});
    pay(ledger, pool, Rat(2), AgentId("quentin"));
    // quentin pays 2 and earns back the quarter share on their own token.
    CHECK(ledger.balance("quentin") == Rat(-3, 2));
    CHECK(ledger.balance("alice") == Rat(3, 2));
    CHECK(ledger.total_currency() == Rat(0));
    ledger.audit();
}

TEST_CASE("fee payment rejects empty pools and negative fees") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 1}});
    CHECK_THROWS_AS(pay(ledger, TokenSet(), Rat(1)), ConfigError);
    CHECK_THROWS_AS(pay(ledger, pool, Rat(-1)), ConfigError);
}

TEST_CASE("fee splits conserve over random holdings") {
    Rng rng(20260822);
    for (int trial = 0; trial < 1000; ++trial) {
        Ledger ledger;
        const std::size_t agents = 1 + rng.next_below(6);
        std::vector<testutil::Holding> holdings;
        for (std::size_t i = 0; i < agents; ++i) {
            holdings.push_back({"agent" + std::to_string(i),
                                static_cast<std::uint32_t>(1 + rng.next_below(50))});
        }
        TokenSet pool = mint_all(ledger, holdings);
        const Rat fee = testutil::random_positive(rng, 40);

        pay(ledger, pool, fee);

        Rat sum = 0;
        const Rat per_token = fee / Rat(BigInt(pool.size()));
        for (const auto& h : holdings) {
            const Rat share = per_token * Rat(BigInt(h.count));
            CHECK(ledger.balance(h.agent) == share);
            sum += ledger.balance(h.agent);
        }
        CHECK(sum == fee);
        ledger.audit();
    }
}

TEST_CASE("plurality picks the largest outcome cell and never Abstain") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 5}, {"bob", 3}, {"carol", 9}});
    auto space = binary_space();
    auto iface = respond_with({{"alice", "True"},
                               {"bob", "False"},
                               {"carol", std::nullopt}});
    OmegaPartition part = fork("rain", space, pool, iface, ledger);

    Rng rng(1);
    // Abstain holds 9 of 17 tokens yet True (5 > 3) must win.
    CHECK(plurality_winner(part, rng) == Outcome{"True"});
}

TEST_CASE("plurality ties break uniformly at random") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 4}, {"bob", 4}});
    auto space = binary_space();
    auto iface = respond_with({{"alice", "True"}, {"bob", "False"}});
    OmegaPartition part = fork("rain", space, pool, iface, ledger);

    Rng rng(99);
    int true_wins = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        if (plurality_winner(part, rng) == Outcome{"True"}) ++true_wins;
    }
    // Exact binomial(10000, 1/2) stays inside [4800, 5200] except with
    // probability < 1e-4; the fixed seed makes the count reproducible anyway.
    CHECK(true_wins > 4800);
    CHECK(true_wins < 5200);
}

TEST_CASE("an all-empty partition degenerates to a uniform outcome draw") {
    auto space = make_outcome_space({"A", "B", "C"});
    OmegaPartition part(space);

    Rng rng(7);
    std::map<std::string, int> hits;
    for (int i = 0; i < 8000; ++i) hits[plurality_winner(part, rng).label]++;
    // All four outcomes (including Invalid) are reachable, roughly uniformly.
    CHECK(hits.size() == 4);
    for (const auto& [label, count] : hits) {
        CHECK(count > 1800);
        CHECK(count < 2200);
    }
}

TEST_CASE("distribution pays the winning cell pro rata with exact shares") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 2}, {"bob", 1}, {"carol", 3}});
    auto space = binary_space();
    OmegaPartition stakes(space);
    partition_assign(stakes, "True", ledger.tokens_of("alice"));
    partition_assign(stakes, "True", ledger.tokens_of("bob"));
    partition_assign(stakes, "False", ledger.tokens_of("carol"));

    distribute(ledger, stakes, "True");
    // 6 staked tokens over a winning cell of 3: alice 2 -> 4, bob 1 -> 2.
    CHECK(ledger.tokens_of("alice").size() == 4);
    CHECK(ledger.tokens_of("bob").size() == 2);
    CHECK(ledger.tokens_of("carol").empty());
    CHECK(ledger.token_count() == 6);
}

TEST_CASE("winners keep their own staked tokens") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 2}, {"carol", 2}});
    TokenSet alices = ledger.tokens_of("alice");
    auto space = binary_space();
    OmegaPartition stakes(space);
    partition_assign(stakes, "True", alices);
    partition_assign(stakes, "False", ledger.tokens_of("carol"));

    distribute(ledger, stakes, "True");
    CHECK(ledger.tokens_of("alice").contains_all(alices));
}

TEST_CASE("fractional shares fall back to largest remainder") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"alice", 2}, {"bob", 1}, {"carol", 4}});
    auto space = binary_space();
    OmegaPartition stakes(space);
    partition_assign(stakes, "True", ledger.tokens_of("alice"));
    partition_assign(stakes, "True", ledger.tokens_of("bob"));
    partition_assign(stakes, "False", ledger.tokens_of("carol"));

    distribute(ledger, stakes, "True");
    // Targets: alice 14/3, bob 7/3. Floors 4 + 2 leave one token; alice's
    // remainder 2/3 beats bob's 1/3.
    CHECK(ledger.tokens_of("alice").size() == 5);
    CHECK(ledger.tokens_of("bob").size() == 2);
    CHECK(ledger.token_count() == 7);
}

TEST_CASE("remainder ties resolve in ascending agent order") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"xavier", 1}, {"amy", 1}, {"carol", 3}});
    auto space = binary_space();
    OmegaPartition stakes(space);
    partition_assign(stakes, "True", ledger.tokens_of("xavier"));
    partition_assign(stakes, "True", ledger.tokens_of("amy"));
    partition_assign(stakes, "False", ledger.tokens_of("carol"));

    distribute(ledger, stakes, "True");
    // Both winners target 5/2; the odd token goes to "amy" < "xavier".
    CHECK(ledger.tokens_of("amy").size() == 3);
    CHECK(ledger.tokens_of("xavier").size() == 2);
}

TEST_CASE("distributing to an empty winning cell is a config error") {
    Ledger ledger;
    TokenSet pool = mint_all(ledger, {{"carol", 3}});
    auto space = binary_space();
    OmegaPartition stakes(space);
    partition_assign(stakes, "False", ledger.tokens_of("carol"));
    CHECK_THROWS_AS(distribute(ledger, stakes, "True"), ConfigError);
}

TEST_CASE("distribution conserves tokens over random stake splits") {
    Rng rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        Ledger ledger;
        const std::size_t winners = 1 + rng.next_below(4);
        const std::size_t losers = rng.next_below(4);
        std::vector<testutil::Holding> holdings;
        for (std::size_t i = 0; i < winners; ++i) {
            holdings.push_back({"w" + std::to_string(i),
                                static_cast<std::uint32_t>(1 + rng.next_below(9))});
        }
        for (std::size_t i = 0; i < losers; ++i) {
            holdings.push_back({"l" + std::to_string(i),
                                static_cast<std::uint32_t>(1 + rng.next_below(9))});
        }
        TokenSet pool = mint_all(ledger, holdings);
        auto space = binary_space();
        OmegaPartition stakes(space);
        std::size_t expected_total = 0;
        for (const auto& h : holdings) {
            const bool winner = h.agent[0] == 'w';
            partition_assign(stakes, winner ? "True" : "False", ledger.tokens_of(h.agent));
            expected_total += h.count;
        }

        distribute(ledger, stakes, "True");

        std::size_t got = 0;
        for (const auto& h : holdings) {
            if (h.agent[0] == 'w') {
                // Every winner leaves with at least their stake.
                CHECK(ledger.tokens_of(h.agent).size() >= h.count);
            } else {
                CHECK(ledger.tokens_of(h.agent).empty());
            }
            got += ledger.tokens_of(h.agent).size();
        }
        CHECK(got == expected_total);
        CHECK(ledger.token_count() == expected_total);
    }
}

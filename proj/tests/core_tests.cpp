#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "oraclesim/core/ledger.hpp"
#include "oraclesim/core/outcome.hpp"
#include "oraclesim/core/tokens.hpp"
#include "oraclesim/errors.hpp"

using namespace oraclesim;

TEST_CASE("outcome spaces always contain Invalid and never Abstain") {
    auto space = make_outcome_space({"True", "False"});
    CHECK(space.size() == 3);
    CHECK(space.contains("True"));
    CHECK(space.contains("False"));
    CHECK(space.contains("Invalid"));
    CHECK(!space.contains("Abstain"));

    // Invalid is not duplicated when listed explicitly.
    auto with_invalid = make_outcome_space({"A", "Invalid", "B"});
    CHECK(with_invalid.size() == 3);
}

TEST_CASE("outcome space construction rejects degenerate label lists") {
    CHECK_THROWS_AS(make_outcome_space({}), ConfigError);
    CHECK_THROWS_AS(make_outcome_space({"A", "A"}), ConfigError);
    CHECK_THROWS_AS(make_outcome_space({""}), ConfigError);
    CHECK_THROWS_AS(make_outcome_space({"A", "Abstain"}), ConfigError);
}

TEST_CASE("token sets are ordered and support exact set algebra") {
    TokenSet a({5, 1, 3});
    CHECK(a.ids() == std::vector<TokenId>{1, 3, 5});

    TokenSet b = TokenSet::range(3, 4);  // {3,4,5,6}
    CHECK(b.size() == 4);
    CHECK(a.set_union(b).ids() == std::vector<TokenId>{1, 3, 4, 5, 6});
    CHECK(a.set_intersection(b).ids() == std::vector<TokenId>{3, 5});
    CHECK(a.set_difference(b).ids() == std::vector<TokenId>{1});
    CHECK(a.take(2).ids() == std::vector<TokenId>{1, 3});
    CHECK(a.contains(3));
    CHECK(!a.contains(2));
    CHECK(a.contains_all(TokenSet({1, 5})));
    CHECK(!a.contains_all(b));
    CHECK(a.disjoint_from(TokenSet({2, 4})));
    CHECK(!a.disjoint_from(b));
}

TEST_CASE("partition cells stay disjoint and reject unknown keys") {
    auto space = make_outcome_space({"True", "False"});
    OmegaPartition part(space);
    CHECK(part.has_cell("True"));
    CHECK(part.has_cell("Abstain"));
    CHECK(part.has_cell("Invalid"));
    CHECK(!part.has_cell("Maybe"));

    partition_assign(part, "True", TokenSet({1, 2}));
    partition_assign(part, "Abstain", TokenSet({3}));
    CHECK(part.cell("True").size() == 2);
    CHECK(part.union_all().ids() == std::vector<TokenId>{1, 2, 3});

    CHECK_THROWS_AS(partition_assign(part, "Maybe", TokenSet({9})), ConfigError);
    // Token 2 is already in a cell.
    CHECK_THROWS_AS(partition_assign(part, "False", TokenSet({2})), ConfigError);
}

TEST_CASE("ledger mints consecutive ids and tracks ownership") {
    Ledger ledger;
    TokenSet alices = ledger.mint("alice", 3);
    TokenSet bobs = ledger.mint("bob", 2);
    CHECK(alices.ids() == std::vector<TokenId>{0, 1, 2});
    CHECK(bobs.ids() == std::vector<TokenId>{3, 4});
    CHECK(ledger.token_count() == 5);
    CHECK(ledger.owner_of(1) == "alice");
    CHECK(ledger.tokens_of("bob") == bobs);

    TokenSet pool({0, 3, 4});
    CHECK(ledger.tokens_of_in("alice", pool).ids() == std::vector<TokenId>{0});
    auto owners = ledger.owners_of(pool);
    CHECK(owners == std::vector<AgentId>{"alice", "bob"});
}

TEST_CASE("currency moves only by transfer or declared inflow") {
    Ledger ledger;
    ledger.external_credit("alice", Rat(10), "fee");
    ledger.transfer("alice", "bob", Rat(3, 2));
    CHECK(ledger.balance("alice") == Rat(17, 2));
    CHECK(ledger.balance("bob") == Rat(3, 2));
    CHECK(ledger.balance("nobody") == Rat(0));
    CHECK(ledger.total_currency() == Rat(10));
    CHECK(ledger.declared_inflow_total() == Rat(10));
    ledger.audit();

    // Balances may go negative; the system total is unchanged.
    ledger.transfer("carol", "bob", Rat(5));
    CHECK(ledger.balance("carol") == Rat(-5));
    ledger.audit();

    CHECK_THROWS_AS(ledger.transfer("alice", "bob", Rat(-1)), ConfigError);
}

TEST_CASE("the burn sink owns burned tokens and cannot transact") {
    Ledger ledger;
    TokenSet tokens = ledger.mint("alice", 4);
    ledger.move_tokens(tokens.take(2), Ledger::burn_sink());
    CHECK(ledger.tokens_of(Ledger::burn_sink()).size() == 2);
    CHECK(ledger.token_count() == 4);  // burning never destroys identity
    ledger.audit();

    CHECK_THROWS_AS(ledger.mint(Ledger::burn_sink(), 1), ConfigError);
    CHECK_THROWS_AS(ledger.transfer(Ledger::burn_sink(), "alice", Rat(1)), ConfigError);
    CHECK_THROWS_AS(ledger.transfer("alice", Ledger::burn_sink(), Rat(1)), ConfigError);
}

TEST_CASE("holdings snapshot counts tokens per owner") {
    Ledger ledger;
    testutil::mint_all(ledger, {{"alice", 6}, {"bob", 4}});
    auto holdings = ledger.holdings_snapshot();
    CHECK(holdings.at("alice") == 6);
    CHECK(holdings.at("bob") == 4);
}

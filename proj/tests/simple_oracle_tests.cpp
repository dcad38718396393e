#include "oraclesim/mech/simple_oracle.hpp"

#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "oraclesim/errors.hpp"

using namespace oraclesim;
using testutil::mint_all;
using testutil::respond_with;

namespace {

OutcomeSpace binary_space() { return make_outcome_space({"True", "False"}); }

OmegaPartition sample_partition(const OutcomeSpace& space) {
    OmegaPartition part(space);
    partition_assign(part, "True", TokenSet({0, 1}));
    partition_assign(part, "False", TokenSet({2}));
    partition_assign(part, kAbstainLabel, TokenSet({3}));
    return part;
}

}  // namespace

TEST_CASE("punish policies designate the surviving cell") {
    auto space = binary_space();
    auto part = sample_partition(space);
    const Outcome truth{"True"};

    PunishPolicy punish_false{PunishKind::PunishFalse, ""};
    CHECK(punish_false.designate(part, truth) == TokenSet({0, 1}));

    PunishPolicy punish_true{PunishKind::PunishTrue, ""};
    CHECK(punish_true.designate(part, truth) == TokenSet({2, 3}));

    PunishPolicy keep{PunishKind::KeepCell, "False"};
    CHECK(keep.designate(part, truth) == TokenSet({2}));
}

TEST_CASE("settling a pending judgment shrinks the pool once") {
    OracleState state;
    state.pool = TokenSet::range(0, 4);
    auto space = binary_space();
    state.pending = PendingJudgment{sample_partition(space), Outcome{"True"}};

    PunishPolicy punish{PunishKind::PunishFalse, ""};
    settle_pending(state, punish);
    CHECK(state.pool == TokenSet({0, 1}));
    CHECK(!state.pending.has_value());

    // Idempotent: nothing pending, nothing changes.
    settle_pending(state, punish);
    CHECK(state.pool == TokenSet({0, 1}));
}

TEST_CASE("each query pays the fee, forks, and defers its judgment") {
    Ledger ledger;
    TokenSet genesis = mint_all(ledger, {{"alice", 6}, {"bob", 4}});
    OracleState state;
    state.pool = genesis;

    auto space = binary_space();
    QueryJob job;
    job.event = "rain#0";
    job.space = space;
    job.truth = Outcome{"True"};
    job.fee = Rat(1);
    job.querier = "quentin";
    job.punish = PunishPolicy{PunishKind::PunishFalse, ""};

    auto iface = respond_with({{"alice", "True"}, {"bob", "False"}});
    Rng rng(3);

    Outcome first = oracle_query_simple(state, job, iface, ledger, rng);
    CHECK(first == Outcome{"True"});  // plurality 6 > 4
    CHECK(state.pool == genesis);     // judgment deferred
    REQUIRE(state.pending.has_value());
    CHECK(state.pending->partition.cell("True") == ledger.tokens_of("alice"));
    CHECK(ledger.balance("alice") == Rat(3, 5));
    CHECK(ledger.balance("bob") == Rat(2, 5));
    CHECK(ledger.balance("quentin") == Rat(-1));
    CHECK(state.history.size() == 1);
    CHECK(state.history.back().returned == Outcome{"True"});

    // The next query settles the first: bob's false cell drops out and the
    // fee now splits over the surviving 6 tokens.
    job.event = "rain#1";
    Outcome second = oracle_query_simple(state, job, iface, ledger, rng);
    CHECK(second == Outcome{"True"});
    CHECK(state.pool == ledger.tokens_of("alice"));
    CHECK(ledger.balance("alice") == Rat(3, 5) + Rat(1));
    CHECK(ledger.balance("bob") == Rat(2, 5));
    ledger.audit();
}

TEST_CASE("the pool never grows and shrinks exactly by punished cells") {
    Rng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        Ledger ledger;
        const std::uint32_t alice_n = 1 + static_cast<std::uint32_t>(rng.next_below(6));
        const std::uint32_t bob_n = 1 + static_cast<std::uint32_t>(rng.next_below(6));
        TokenSet genesis = mint_all(ledger, {{"alice", alice_n}, {"bob", bob_n}});
        OracleState state;
        state.pool = genesis;

        QueryJob job;
        job.space = binary_space();
        job.truth = Outcome{"True"};
        job.fee = Rat(0);
        job.querier = "quentin";
        job.punish = PunishPolicy{PunishKind::PunishFalse, ""};

        const bool bob_lies = rng.next_below(2) == 0;
        auto iface = respond_with({{"alice", "True"},
                                   {"bob", bob_lies ? "False" : "True"}});

        TokenSet before = state.pool;
        job.event = "q0";
        oracle_query_simple(state, job, iface, ledger, rng);
        CHECK(state.pool == before);  // judged only at the next query

        job.event = "q1";
        oracle_query_simple(state, job, iface, ledger, rng);
        CHECK(before.contains_all(state.pool));
        if (bob_lies) {
            CHECK(state.pool == ledger.tokens_of("alice"));
        } else {
            CHECK(state.pool == before);  // unanimously truthful pools persist
        }
    }
}

TEST_CASE("an emptied pool kills the oracle") {
    Ledger ledger;
    TokenSet genesis = mint_all(ledger, {{"bob", 3}});
    OracleState state;
    state.pool = genesis;

    QueryJob job;
    job.event = "q";
    job.space = binary_space();
    job.truth = Outcome{"True"};
    job.fee = Rat(0);
    job.querier = "quentin";
    job.punish = PunishPolicy{PunishKind::PunishFalse, ""};

    auto iface = respond_with({{"bob", "False"}});
    Rng rng(9);
    oracle_query_simple(state, job, iface, ledger, rng);

    // Everyone reported False; punishing false reporting leaves nothing.
    CHECK_THROWS_WITH_AS(oracle_query_simple(state, job, iface, ledger, rng),
                         "oracle is dead: reporting pool is empty", ConfigError);
}

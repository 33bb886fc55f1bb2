#include <memory>
#include <sstream>

#include "doctest.h"
#include "spanner/clique.hpp"
#include "spanner/errors.hpp"

using namespace spanner;

TEST_CASE("plain round delivers in src then emission order") {
    Network net(4);
    auto in = net.plain_round({{3, 0, {30}}, {1, 0, {10}}, {2, 0, {20}}, {1, 2, {12}}});
    REQUIRE(in[0].size() == 3);
    CHECK(in[0][0].src == 1);
    CHECK(in[0][1].src == 2);
    CHECK(in[0][2].src == 3);
    CHECK(in[2][0].payload[0] == 12);
    CHECK(net.ledger().rounds == 1);
    CHECK(net.ledger().max_received() == 3);
}

TEST_CASE("pair budget") {
    Network net(3);
    CHECK_THROWS_AS(net.plain_round({{0, 1, {1, 2}}}), BudgetViolation);
    NetworkConfig cfg;
    cfg.abort_on_violation = false;
    Network lax(3, cfg);
    lax.plain_round({{0, 1, {1}}, {0, 1, {2}}});
    REQUIRE(lax.ledger().violations.size() == 1);
    CHECK(lax.ledger().violations[0].vertex == 0);
    CHECK(lax.ledger().violations[0].kind == "pair-budget");
    cfg.message_budget = 2;
    Network wide(3, cfg);
    wide.plain_round({{0, 1, {1, 2}}});
    CHECK(wide.ledger().violations.empty());
}

TEST_CASE("routing admissibility") {
    Network net(3);
    std::vector<Message> ok{{0, 1, {1}}, {0, 2, {2}}, {0, 1, {3}}};
    auto in = net.route(ok);
    CHECK(in[1].size() == 2);
    CHECK(net.ledger().routing_rounds == 1);
    std::vector<Message> bad{{0, 1, {1, 2}}, {0, 2, {3, 4}}};
    try {
        net.route(bad);
        FAIL("expected RoutingAdmissibilityError");
    } catch (const RoutingAdmissibilityError& e) {
        CHECK(e.vertex() == 0);
    }
}

TEST_CASE("batched routing splits and keeps order") {
    NetworkConfig cfg;
    cfg.routing_cost = 2;
    Network net(3, cfg);
    std::vector<Message> msgs;
    for (Word i = 0; i < 7; ++i) msgs.push_back({static_cast<Vertex>(i % 2), 2, {i}});
    auto in = net.route_batched(msgs);
    REQUIRE(in[2].size() == 7);
    for (std::size_t i = 1; i < in[2].size(); ++i) CHECK(in[2][i - 1].src <= in[2][i].src);
    CHECK(net.ledger().routing_invocations == 3);
    CHECK(net.ledger().routing_rounds == 6);
    CHECK(net.ledger().max_routing_words() <= 3);

    Network idle(3);
    idle.route_batched({});
    CHECK(idle.ledger().routing_invocations == 1);
}

TEST_CASE("deliver picks plain or routing") {
    Network net(3);
    net.deliver({{0, 1, {1}}});
    CHECK(net.ledger().rounds == 1);
    CHECK(net.ledger().routing_rounds == 0);
    net.deliver({{0, 1, {1}}, {0, 1, {2}}});
    CHECK(net.ledger().routing_rounds == 1);
    net.deliver({});
    CHECK(net.ledger().rounds == 2);
}

TEST_CASE("broadcast and charges") {
    Network net(5);
    net.charge_broadcast();
    net.charge_plain(3);
    CHECK(net.ledger().rounds == 4);
    CHECK(net.ledger().max_sent() == 4);
    CHECK(net.ledger().per_round_routing.size() == 4);
}

TEST_CASE("ledger append shifts violation rounds") {
    RoundLedger a, b;
    a.charge_plain(2);
    b.charge_plain(1);
    b.violations.push_back({0, 3, "pair-budget"});
    a.append(b);
    CHECK(a.total() == 3);
    CHECK(a.violations.at(0).round == 2);
}

TEST_CASE("transcript lines") {
    std::ostringstream os;
    Network net(2);
    net.set_transcript(&os);
    net.plain_round({{0, 1, {5}}});
    CHECK(os.str() == "{\"round\":0,\"kind\":\"plain\",\"sent\":[1,0],\"received\":[0,1]}\n");
}

namespace {

// Passes a token around the ring; halts after seeing it twice.
struct Ring : NodeProgram {
    Vertex self = 0;
    std::size_t n = 0, seen = 0;
    void init(Vertex v, std::size_t count) override {
        self = v;
        n = count;
    }
    StepResult step(std::size_t round, const std::vector<Message>& inbox) override {
        StepResult s;
        bool token = (round == 0 && self == 0) || !inbox.empty();
        if (token) {
            if (round > 0) ++seen;
            s.outbox.push_back({self, static_cast<Vertex>((self + 1) % n), {round}});
        }
        s.halted = seen >= 2;
        return s;
    }
};

struct Forever : NodeProgram {
    void init(Vertex, std::size_t) override {}
    StepResult step(std::size_t, const std::vector<Message>&) override { return {}; }
};

}  // namespace

TEST_CASE("run_rounds drives node programs") {
    Network net(4);
    net.charge_plain(5);
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (int i = 0; i < 4; ++i) progs.push_back(std::make_unique<Ring>());
    RunResult r = run_rounds(net, progs, 100);
    CHECK(r.rounds_executed > 8);
    CHECK(r.ledger.rounds == r.rounds_executed);
    CHECK(net.ledger().rounds == 5 + r.rounds_executed);

    std::vector<std::unique_ptr<NodeProgram>> stuck;
    for (int i = 0; i < 4; ++i) stuck.push_back(std::make_unique<Forever>());
    CHECK_THROWS_AS(run_rounds(net, stuck, 10), TimeoutError);
}

TEST_CASE("bad messages") {
    Network net(2);
    CHECK_THROWS_AS(net.plain_round({{0, 2, {1}}}), InputError);
    CHECK_THROWS_AS(net.plain_round({{0, 1, {}}}), InputError);
    CHECK_THROWS_AS(Network(2, NetworkConfig{0, 1, 0, true}), InputError);
}

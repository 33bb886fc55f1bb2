#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

using Word = std::uint64_t;

struct Message {
    Vertex src = 0;
    Vertex dst = 0;
    std::vector<Word> payload;

    std::size_t word_count() const { return payload.size(); }
};

using Inboxes = std::vector<std::vector<Message>>;

struct Violation {
    std::size_t round = 0;
    Vertex vertex = 0;
    std::string kind;
};

struct RoundLedger {
    std::size_t rounds = 0;
    std::size_t routing_rounds = 0;
    std::size_t routing_invocations = 0;
    // One entry per charged round, plain or routing.
    std::vector<std::size_t> per_round_max_sent;
    std::vector<std::size_t> per_round_max_received;
    std::vector<bool> per_round_routing;
    std::vector<Violation> violations;

    std::size_t total() const { return rounds + routing_rounds; }
    std::size_t max_sent() const;
    std::size_t max_received() const;
    std::size_t max_routing_words() const;
    void charge_plain(std::size_t count);
    void append(const RoundLedger& other);
};

struct NetworkConfig {
    std::size_t message_budget = 1;
    std::size_t routing_cost = 1;
    // n used for routing admissibility; 0 means the node count.
    std::size_t capacity_n = 0;
    bool abort_on_violation = true;
};

// Synchronous all-to-all network of n nodes. Delivery order inside an inbox
// is (src, emission index).
class Network {
public:
    explicit Network(std::size_t n, NetworkConfig cfg = {});

    std::size_t n() const { return n_; }
    const NetworkConfig& config() const { return cfg_; }
    const RoundLedger& ledger() const { return ledger_; }
    RoundLedger& ledger() { return ledger_; }
    std::size_t word_capacity() const;

    void set_transcript(std::ostream* out) { transcript_ = out; }

    // One plain round: every ordered pair may carry message_budget words.
    Inboxes plain_round(std::vector<Message> messages);
    // Lenzen routing primitive, charged routing_cost rounds.
    Inboxes route(std::vector<Message> messages);
    // Splits an arbitrary message set into admissible routing invocations; at least one.
    Inboxes route_batched(std::vector<Message> messages);
    // Plain round when the pair budget allows it (an empty set is one idle round), batched routing otherwise.
    Inboxes deliver(std::vector<Message> messages);
    // Rounds that are accounted for but simulated centrally.
    void charge_plain(std::size_t count) { ledger_.charge_plain(count); }
    // A plain round in which every node sends one word to every other node.
    void charge_broadcast();

private:
    Inboxes distribute(std::vector<Message>& messages, std::vector<std::size_t>& sent,
                       std::vector<std::size_t>& received);
    void dump(std::size_t round, const char* kind, const std::vector<std::size_t>& sent,
              const std::vector<std::size_t>& received);

    std::size_t n_;
    NetworkConfig cfg_;
    RoundLedger ledger_;
    std::ostream* transcript_ = nullptr;
};

// Free-function form of the routing primitive.
Inboxes lenzen_route(Network& net, std::vector<Message> pending);

struct StepResult {
    std::vector<Message> outbox;
    bool halted = false;
};

class NodeProgram {
public:
    virtual ~NodeProgram() = default;
    virtual void init(Vertex self, std::size_t n) = 0;
    virtual StepResult step(std::size_t round, const std::vector<Message>& inbox) = 0;
};

struct RunResult {
    std::size_t rounds_executed = 0;
    RoundLedger ledger;
};

// Runs until every program halts. Throws TimeoutError after max_rounds.
RunResult run_rounds(Network& net, std::vector<std::unique_ptr<NodeProgram>>& programs,
                     std::size_t max_rounds);

}  // namespace spanner

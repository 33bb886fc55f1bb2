#include "spanner/clique.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "spanner/errors.hpp"

namespace spanner {

std::size_t RoundLedger::max_sent() const {
    std::size_t m = 0;
    for (auto x : per_round_max_sent) m = std::max(m, x);
    return m;
}

std::size_t RoundLedger::max_received() const {
    std::size_t m = 0;
    for (auto x : per_round_max_received) m = std::max(m, x);
    return m;
}

std::size_t RoundLedger::max_routing_words() const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < per_round_routing.size(); ++i)
        if (per_round_routing[i])
            m = std::max({m, per_round_max_sent[i], per_round_max_received[i]});
    return m;
}

void RoundLedger::charge_plain(std::size_t count) {
    rounds += count;
    for (std::size_t i = 0; i < count; ++i) {
        per_round_max_sent.push_back(0);
        per_round_max_received.push_back(0);
        per_round_routing.push_back(false);
    }
}

void RoundLedger::append(const RoundLedger& o) {
    std::size_t base = total();
    rounds += o.rounds;
    routing_rounds += o.routing_rounds;
    routing_invocations += o.routing_invocations;
    per_round_max_sent.insert(per_round_max_sent.end(), o.per_round_max_sent.begin(),
                              o.per_round_max_sent.end());
    per_round_max_received.insert(per_round_max_received.end(), o.per_round_max_received.begin(),
                                  o.per_round_max_received.end());
    per_round_routing.insert(per_round_routing.end(), o.per_round_routing.begin(),
                             o.per_round_routing.end());
    for (auto v : o.violations) {
        v.round += base;
        violations.push_back(v);
    }
}

Network::Network(std::size_t n, NetworkConfig cfg) : n_(n), cfg_(cfg) {
    if (cfg_.message_budget < 1) throw InputError("message budget must be at least 1");
    if (cfg_.capacity_n == 0) cfg_.capacity_n = n;
}

std::size_t Network::word_capacity() const { return cfg_.capacity_n * cfg_.message_budget; }

Inboxes Network::distribute(std::vector<Message>& messages, std::vector<std::size_t>& sent,
                            std::vector<std::size_t>& received) {
    Inboxes in(n_);
    sent.assign(n_, 0);
    received.assign(n_, 0);
    for (auto& msg : messages) {
        if (msg.src >= n_ || msg.dst >= n_) throw InputError("message endpoint out of range");
        if (msg.payload.empty()) throw InputError("message must carry at least one word");
        sent[msg.src] += msg.word_count();
        received[msg.dst] += msg.word_count();
    }
    std::stable_sort(messages.begin(), messages.end(),
                     [](const Message& a, const Message& b) { return a.src < b.src; });
    for (auto& msg : messages) in[msg.dst].push_back(std::move(msg));
    return in;
}

void Network::dump(std::size_t round, const char* kind, const std::vector<std::size_t>& sent,
                   const std::vector<std::size_t>& received) {
    if (!transcript_) return;
    auto& os = *transcript_;
    os << "{\"round\":" << round << ",\"kind\":\"" << kind << "\",\"sent\":[";
    for (std::size_t i = 0; i < sent.size(); ++i) os << (i ? "," : "") << sent[i];
    os << "],\"received\":[";
    for (std::size_t i = 0; i < received.size(); ++i) os << (i ? "," : "") << received[i];
    os << "]}\n";
}

Inboxes Network::plain_round(std::vector<Message> messages) {
    std::map<std::pair<Vertex, Vertex>, std::size_t> pair_words;
    for (const auto& msg : messages) pair_words[{msg.src, msg.dst}] += msg.word_count();
    std::size_t round = ledger_.total();
    for (const auto& [pair, words] : pair_words)
        if (words > cfg_.message_budget) {
            ledger_.violations.push_back({round, pair.first, "pair-budget"});
            if (cfg_.abort_on_violation)
                throw BudgetViolation("vertex " + std::to_string(pair.first) + " sent " +
                                      std::to_string(words) + " words to " +
                                      std::to_string(pair.second) + " in one plain round (budget " +
                                      std::to_string(cfg_.message_budget) + ")");
        }
    std::vector<std::size_t> sent, received;
    Inboxes in = distribute(messages, sent, received);
    ledger_.rounds += 1;
    ledger_.per_round_max_sent.push_back(n_ ? *std::max_element(sent.begin(), sent.end()) : 0);
    ledger_.per_round_max_received.push_back(n_ ? *std::max_element(received.begin(), received.end()) : 0);
    ledger_.per_round_routing.push_back(false);
    dump(round, "plain", sent, received);
    return in;
}

Inboxes Network::route(std::vector<Message> messages) {
    std::vector<std::size_t> out(n_, 0), inc(n_, 0);
    for (const auto& msg : messages) {
        if (msg.src >= n_ || msg.dst >= n_) throw InputError("message endpoint out of range");
        out[msg.src] += msg.word_count();
        inc[msg.dst] += msg.word_count();
    }
    std::size_t cap = word_capacity();
    for (Vertex v = 0; v < n_; ++v) {
        if (out[v] > cap)
            throw RoutingAdmissibilityError(v, "routing: vertex " + std::to_string(v) + " sources " +
                                                   std::to_string(out[v]) + " words (limit " +
                                                   std::to_string(cap) + ")");
        if (inc[v] > cap)
            throw RoutingAdmissibilityError(v, "routing: vertex " + std::to_string(v) + " is target of " +
                                                   std::to_string(inc[v]) + " words (limit " +
                                                   std::to_string(cap) + ")");
    }
    std::vector<std::size_t> sent, received;
    Inboxes in = distribute(messages, sent, received);
    const std::size_t round = ledger_.total();
    ledger_.routing_invocations += 1;
    ledger_.routing_rounds += cfg_.routing_cost;
    std::size_t ms = n_ ? *std::max_element(sent.begin(), sent.end()) : 0;
    std::size_t mr = n_ ? *std::max_element(received.begin(), received.end()) : 0;
    for (std::size_t i = 0; i < cfg_.routing_cost; ++i) {
        ledger_.per_round_max_sent.push_back(ms);
        ledger_.per_round_max_received.push_back(mr);
        ledger_.per_round_routing.push_back(true);
    }
    dump(round, "routing", sent, received);
    return in;
}

Inboxes Network::route_batched(std::vector<Message> messages) {
    // an empty exchange still occupies its slot in the schedule
    if (messages.empty()) return route({});
    std::size_t cap = word_capacity();
    std::vector<std::vector<Message>> batches;
    std::vector<std::vector<std::size_t>> out_load, in_load;
    std::vector<std::size_t> order(messages.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i : order) {
        auto& msg = messages[i];
        std::size_t w = msg.word_count();
        if (w > cap)
            throw RoutingAdmissibilityError(msg.src, "routing: single message of " + std::to_string(w) +
                                                         " words exceeds the per-vertex limit");
        std::size_t b = 0;
        for (; b < batches.size(); ++b)
            if (out_load[b][msg.src] + w <= cap && in_load[b][msg.dst] + w <= cap) break;
        if (b == batches.size()) {
            batches.emplace_back();
            out_load.emplace_back(n_, 0);
            in_load.emplace_back(n_, 0);
        }
        out_load[b][msg.src] += w;
        in_load[b][msg.dst] += w;
        batches[b].push_back(std::move(msg));
    }
    // Inbox order must not depend on batching, so merge and re-sort by src.
    Inboxes merged(n_);
    for (auto& batch : batches) {
        Inboxes part = route(std::move(batch));
        for (Vertex v = 0; v < n_; ++v)
            for (auto& m : part[v]) merged[v].push_back(std::move(m));
    }
    for (auto& box : merged)
        std::stable_sort(box.begin(), box.end(),
                         [](const Message& a, const Message& b) { return a.src < b.src; });
    return merged;
}

Inboxes Network::deliver(std::vector<Message> messages) {
    std::map<std::pair<Vertex, Vertex>, std::size_t> pair_words;
    bool fits = true;
    for (const auto& msg : messages)
        if ((pair_words[{msg.src, msg.dst}] += msg.word_count()) > cfg_.message_budget) fits = false;
    return fits ? plain_round(std::move(messages)) : route_batched(std::move(messages));
}

void Network::charge_broadcast() {
    std::size_t per = n_ ? n_ - 1 : 0;
    const std::size_t round = ledger_.total();
    ledger_.rounds += 1;
    ledger_.per_round_max_sent.push_back(per);
    ledger_.per_round_max_received.push_back(per);
    ledger_.per_round_routing.push_back(false);
    if (transcript_) {
        std::vector<std::size_t> all(n_, per);
        dump(round, "plain", all, all);
    }
}

Inboxes lenzen_route(Network& net, std::vector<Message> pending) { return net.route(std::move(pending)); }

RunResult run_rounds(Network& net, std::vector<std::unique_ptr<NodeProgram>>& programs,
                     std::size_t max_rounds) {
    if (programs.size() != net.n()) throw InputError("run_rounds needs exactly one program per node");
    if (max_rounds < 1) throw InputError("max_rounds must be at least 1");
    RoundLedger before = net.ledger();
    for (Vertex v = 0; v < programs.size(); ++v) programs[v]->init(v, net.n());
    std::vector<bool> halted(programs.size(), false);
    Inboxes inbox(programs.size());
    RunResult result;
    for (std::size_t r = 0;; ++r) {
        if (std::all_of(halted.begin(), halted.end(), [](bool h) { return h; })) break;
        if (r >= max_rounds)
            throw TimeoutError("run_rounds: programs still active after " + std::to_string(max_rounds) +
                               " rounds");
        std::vector<Message> out;
        for (Vertex v = 0; v < programs.size(); ++v) {
            if (halted[v]) continue;
            StepResult s = programs[v]->step(r, inbox[v]);
            for (auto& m : s.outbox) {
                if (m.src != v) throw InputError("program emitted a message with a foreign src");
                out.push_back(std::move(m));
            }
            if (s.halted) halted[v] = true;
        }
        inbox = net.plain_round(std::move(out));
        ++result.rounds_executed;
    }
    result.ledger = net.ledger();
    // report only this run's share
    RoundLedger delta;
    std::size_t skip = before.total();
    delta.rounds = result.ledger.rounds - before.rounds;
    delta.routing_rounds = result.ledger.routing_rounds - before.routing_rounds;
    delta.routing_invocations = result.ledger.routing_invocations - before.routing_invocations;
    delta.per_round_max_sent.assign(result.ledger.per_round_max_sent.begin() + static_cast<long>(skip),
                                    result.ledger.per_round_max_sent.end());
    delta.per_round_max_received.assign(
        result.ledger.per_round_max_received.begin() + static_cast<long>(skip),
        result.ledger.per_round_max_received.end());
    delta.per_round_routing.assign(result.ledger.per_round_routing.begin() + static_cast<long>(skip),
                                   result.ledger.per_round_routing.end());
    for (const auto& v : result.ledger.violations)
        if (v.round >= skip) delta.violations.push_back(v);
    result.ledger = delta;
    return result;
}

}  // namespace spanner

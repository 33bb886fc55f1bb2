#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/hitting.hpp"
#include "spanner/rng.hpp"

using namespace spanner;

namespace {

HittingSetInstance random_instance(std::uint64_t seed, std::size_t u, std::size_t sets, std::size_t delta,
                                   std::size_t extra) {
    CounterRng rng(seed);
    std::uint64_t c = 0;
    HittingSetInstance inst;
    for (Vertex x = 0; x < u; ++x) inst.universe.push_back(3 * x + 1);
    for (Vertex o = 0; o < sets; ++o) {
        std::size_t size = delta + rng.word(c++) % (extra + 1);
        std::set<Vertex> s;
        while (s.size() < size) s.insert(inst.universe[rng.word(c++) % u]);
        inst.sets.emplace_back(o, std::vector<Vertex>(s.begin(), s.end()));
    }
    inst.delta = delta;
    inst.normalize();
    return inst;
}

std::vector<std::uint8_t> bits_of(std::uint64_t v, std::size_t len) {
    std::vector<std::uint8_t> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = (v >> i) & 1;
    return out;
}

}  // namespace

TEST_CASE("instance JSON") {
    auto inst = HittingSetInstance::from_json(R"({"universe":[5,1,3],"sets":{"7":[3,1],"2":[5]},"delta":1})");
    CHECK(inst.universe == std::vector<Vertex>{1, 3, 5});
    CHECK(inst.sets.size() == 2);
    CHECK(inst.index_of(5) == 2);
    CHECK(inst.index_of(4) == kNoVertex);
    auto again = HittingSetInstance::from_json(inst.to_json());
    CHECK(again.to_json() == inst.to_json());
    CHECK_THROWS_AS(HittingSetInstance::from_json("{"), InputError);
    CHECK_THROWS_AS(HittingSetInstance::from_json(R"({"universe":[1],"sets":{"0":[2]},"delta":1})"), InputError);
    CHECK_THROWS_AS(HittingSetInstance::from_json(R"({"universe":[1,2],"sets":{"0":[1]},"delta":2})"), InputError);
    CHECK_THROWS_AS(HittingSetInstance::from_json(R"({"universe":[1],"sets":{"x":[1]},"delta":1})"), InputError);
    CHECK_THROWS_AS(HittingSetInstance::from_json(R"({"universe":[1],"delta":1})"), InputError);
}

TEST_CASE("audit") {
    auto inst = HittingSetInstance::from_json(R"({"universe":[0,1,2,3],"sets":{"0":[0,1],"1":[2,3]},"delta":2})");
    CHECK(audit_hitting(inst, {1, 2}).pass);
    auto a = audit_hitting(inst, {0, 1, 1});
    CHECK_FALSE(a.pass);
    CHECK(a.z_size == 2);
    CHECK(a.unhit == 1);
    CHECK(a.first_unhit_owner == 1);
}

TEST_CASE("beta profiles") {
    CHECK(beta_for(BetaProfile::Log, 100, 100, 2.0) == 3);  // 100 / 9.21 = 10.9
    CHECK(beta_for(BetaProfile::Log, 5, 100, 2.0) == 0);
    CHECK(beta_for(BetaProfile::Sqrt, 256, 256, 2.0) == 3);  // 16 / 1.414 = 11.3
    CHECK(beta_for(BetaProfile::Sqrt, 1, 1000, 2.0) == 1);
}

TEST_CASE("family evaluation matches the polynomial oracle") {
    CounterRng rng(3);
    std::uint64_t c = 0;
    for (unsigned gamma : {3u, 5u, 8u, 10u}) {
        for (unsigned beta : {1u, 2u, gamma}) {
            for (unsigned d : {2u, 4u, 8u}) {
                DWiseFamily fam(gamma, beta, d);
                CHECK(fam.width() == std::max(gamma, beta));
                for (int rep = 0; rep < 10; ++rep) {
                    SeedBits seed(fam.seed_bits());
                    for (auto& b : seed) b = rng.word(c++) & 1;
                    std::uint64_t x = rng.word(c++) & ((std::uint64_t{1} << gamma) - 1);
                    std::uint64_t want =
                        oracle::dwise_hash(seed, fam.width(), d, beta, fam.field().modulus(), x);
                    CHECK(fam.eval(seed, x) == want);
                    // linearity in the seed
                    std::uint64_t acc = 0;
                    auto cols = fam.columns(x);
                    for (std::size_t i = 0; i < seed.size(); ++i) {
                        if (seed[i]) acc ^= cols[i];
                        CHECK(cols[i] == fam.column(i, x));
                    }
                    CHECK(acc == want);
                }
            }
        }
    }
    CHECK_THROWS_AS(DWiseFamily(3, 1, 0), InputError);
    CHECK_THROWS_AS(DWiseFamily(33, 1, 2), InputError);
    CHECK(DWiseFamily::for_universe(256, 2, 8).gamma() == 8);
    CHECK(DWiseFamily::for_universe(257, 2, 8).gamma() == 9);
}

TEST_CASE("conditional failure probability matches enumeration") {
    CounterRng rng(11);
    std::uint64_t c = 0;
    for (int rep = 0; rep < 30; ++rep) {
        unsigned gamma = 3 + rep % 2, beta = 1 + rep % 3, d = 3;
        DWiseFamily fam(gamma, beta, d);
        std::size_t g = fam.seed_bits();
        std::size_t plen = rng.word(c++) % (g + 1);
        SeedBits prefix = bits_of(rng.word(c++), plen);
        std::set<std::uint64_t> s;
        std::size_t size = 1 + rng.word(c++) % 6;
        while (s.size() < size) s.insert(rng.word(c++) % (std::uint64_t{1} << gamma));
        std::vector<std::uint64_t> sv(s.begin(), s.end());
        double want = oracle::unhit_probability(prefix, g, fam.width(), d, beta, fam.field().modulus(), sv);
        CHECK(conditional_failure_probability(fam, prefix, sv) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("size term matches brute force") {
    DWiseFamily fam(3, 1, 2);
    const std::size_t g = fam.seed_bits();
    for (std::size_t threshold : {0u, 2u, 4u, 7u}) {
        SeedBits prefix{1, 0};
        std::uint64_t over = 0, total = 0;
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << (g - 2)); ++t) {
            SeedBits seed = prefix;
            auto rest = bits_of(t, g - 2);
            seed.insert(seed.end(), rest.begin(), rest.end());
            std::size_t zeros = 0;
            for (std::uint64_t x = 0; x < 8; ++x) zeros += fam.eval(seed, x) == 0;
            over += zeros > threshold;
            ++total;
        }
        CHECK(size_term(fam, prefix, 8, threshold) == doctest::Approx(static_cast<double>(over) / total));
    }
    CHECK_THROWS_AS(size_term(DWiseFamily(10, 1, 8), {}, 1024, 3), ResourceError);
}

TEST_CASE("toy instance is hit with at most two elements") {
    auto inst = HittingSetInstance::from_json(R"({"universe":[0,1,2,3],"sets":{"0":[0,1],"1":[2,3]},"delta":2})");
    DerandParams p;
    p.best_effort = true;
    auto r = derandomized_hitting_set(inst, p);
    CHECK(audit_hitting(inst, r.z).pass);
    CHECK(r.z.size() <= 2);
}

TEST_CASE("derandomizer: guarantee, monotone estimator, determinism") {
    int guaranteed = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = random_instance(seed, 64 + 8 * (seed % 8), 1 + seed % 12, 24 + seed % 16, 10);
        DerandParams p;
        p.best_effort = true;
        p.threads = 1 + seed % 3;
        auto r = derandomized_hitting_set(inst, p);
        CHECK(r.all_hit);
        CHECK(audit_hitting(inst, r.z).pass);
        for (std::size_t i = 1; i < r.psi.size(); ++i) CHECK(r.psi[i] <= r.psi[i - 1] * (1 + 1e-9) + 1e-12);
        CHECK(r.psi.size() == r.rounds + 1);
        if (r.psi.front() < 1) {
            ++guaranteed;
            CHECK(r.patched == 0);
            CHECK(r.z.size() <= r.size_threshold);
        }
        p.threads = 1;
        auto again = derandomized_hitting_set(inst, p);
        CHECK(again.seed == r.seed);
        CHECK(again.z == r.z);
        CHECK(again.psi == r.psi);
    }
    CHECK(guaranteed > 10);
}

TEST_CASE("estimator values equal the exact conditional expectations") {
    // gamma 4, d 4: 16 seed bits, small enough to enumerate
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = random_instance(seed + 100, 16, 3, 8, 4);
        DerandParams p;
        p.d = 4;
        p.beta = 1 + static_cast<int>(seed % 2);
        p.chunk_bits = 3;
        p.best_effort = true;
        auto r = derandomized_hitting_set(inst, p);
        DWiseFamily fam = DWiseFamily::for_universe(16, r.beta, 4);
        const std::size_t g = fam.seed_bits();
        const std::size_t keep = std::max<std::size_t>(1, 24 / r.beta);
        REQUIRE(r.psi.size() == r.rounds + 1);
        // columns of h(x) from the polynomial oracle on unit seeds
        std::vector<std::vector<std::uint64_t>> col(16, std::vector<std::uint64_t>(g));
        for (std::size_t i = 0; i < g; ++i) {
            SeedBits unit(g, 0);
            unit[i] = 1;
            for (std::uint64_t x = 0; x < 16; ++x)
                col[x][i] = oracle::dwise_hash(unit, fam.width(), 4, r.beta, fam.field().modulus(), x);
        }
        for (std::size_t step = 0; step <= r.rounds; ++step) {
            std::size_t plen = std::min(g, step * r.chunk_bits);
            double zeros = 0, miss = 0;
            const std::uint64_t total = std::uint64_t{1} << (g - plen);
            for (std::uint64_t t = 0; t < total; ++t) {
                std::vector<std::uint64_t> h(16, 0);
                for (std::size_t i = 0; i < g; ++i) {
                    bool bit = i < plen ? r.seed[i] : ((t >> (i - plen)) & 1);
                    if (bit)
                        for (std::uint64_t x = 0; x < 16; ++x) h[x] ^= col[x][i];
                }
                for (auto v : h) zeros += v == 0;
                for (const auto& [owner, set] : inst.sets) {
                    bool hit = false;
                    for (std::size_t i = 0; i < std::min(keep, set.size()); ++i) hit = hit || h[inst.index_of(set[i])] == 0;
                    miss += !hit;
                }
            }
            double want = zeros / total / (static_cast<double>(r.size_threshold) + 1) + miss / total;
            CHECK(r.psi[step] == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("parameter error and best effort") {
    // one tiny set: beta from the sqrt profile is 1, miss term 1/2 per set
    auto inst = random_instance(5, 64, 40, 1, 0);
    DerandParams p;
    try {
        derandomized_hitting_set(inst, p);
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(e.size_part() + e.miss_part() >= 1.0);
    }
    p.best_effort = true;
    auto r = derandomized_hitting_set(inst, p);
    CHECK(audit_hitting(inst, r.z).pass);
}

TEST_CASE("backends") {
    CHECK(parse_backend("random") == HitBackend::Random);
    CHECK(parse_backend("dwise") == HitBackend::DWise);
    CHECK(parse_backend("derand") == HitBackend::Derand);
    CHECK(backend_name(HitBackend::Derand) == "derand");
    CHECK_THROWS_AS(parse_backend("magic"), InputError);
    auto inst = random_instance(9, 128, 20, 40, 20);
    auto a = compute_hitting_set(inst, HitBackend::Derand, BetaProfile::Sqrt, 0);
    auto b = compute_hitting_set(inst, HitBackend::Derand, BetaProfile::Sqrt, 77);
    CHECK(a.all_hit);
    CHECK(a.z == b.z);
    auto rnd = compute_hitting_set(inst, HitBackend::Random, BetaProfile::Log, 1);
    CHECK(rnd.z == randomized_hitting_set(inst, 2.0, 1));
    auto dw = compute_hitting_set(inst, HitBackend::DWise, BetaProfile::Sqrt, 1);
    CHECK(dw.beta >= 1);
    auto draw = dwise_hitting_draw(inst, 8, 1);
    CHECK(draw.z == dw.z);
}

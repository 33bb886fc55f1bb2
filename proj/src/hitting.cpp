#include "spanner/hitting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "spanner/errors.hpp"
#include "spanner/rng.hpp"

namespace spanner {

// ---------------------------------------------------------------- instance

std::size_t HittingSetInstance::n_eff() const { return std::max<std::size_t>(n ? n : universe.size(), 2); }

void HittingSetInstance::normalize() {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (delta < 1) throw InputError("hitting-set delta must be at least 1");
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sets.size(); ++i)
        if (sets[i].first == sets[i - 1].first)
            throw InputError("duplicate set owner " + std::to_string(sets[i].first));
    for (auto& [owner, s] : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.size() < delta)
            throw InputError("set of owner " + std::to_string(owner) + " has " + std::to_string(s.size()) +
                             " elements, below delta " + std::to_string(delta));
        for (Vertex x : s)
            if (index_of(x) == kNoVertex)
                throw InputError("set of owner " + std::to_string(owner) + " leaves the universe at " +
                                 std::to_string(x));
    }
}

Vertex HittingSetInstance::index_of(Vertex x) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), x);
    if (it == universe.end() || *it != x) return kNoVertex;
    return static_cast<Vertex>(it - universe.begin());
}

HittingSetInstance HittingSetInstance::from_json(const std::string& text) {
    using nlohmann::json;
    HittingSetInstance inst;
    try {
        json j = json::parse(text);
        for (const auto& x : j.at("universe")) inst.universe.push_back(x.get<Vertex>());
        for (const auto& [key, list] : j.at("sets").items()) {
            std::vector<Vertex> s;
            for (const auto& x : list) s.push_back(x.get<Vertex>());
            inst.sets.emplace_back(static_cast<Vertex>(std::stoul(key)), std::move(s));
        }
        inst.delta = j.at("delta").get<std::size_t>();
        if (j.contains("n")) inst.n = j.at("n").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed hitting-set instance: ") + e.what());
    } catch (const std::logic_error& e) {
        throw InputError(std::string("malformed hitting-set instance: ") + e.what());
    }
    inst.normalize();
    return inst;
}

std::string HittingSetInstance::to_json() const {
    nlohmann::ordered_json j;
    j["universe"] = universe;
    nlohmann::ordered_json sets_j = nlohmann::ordered_json::object();
    for (const auto& [owner, s] : sets) sets_j[std::to_string(owner)] = s;
    j["sets"] = sets_j;
    j["delta"] = delta;
    if (n) j["n"] = n;
    return j.dump();
}

// ---------------------------------------------------------------- family

DWiseFamily::DWiseFamily(unsigned gamma, unsigned beta, unsigned d)
    : gamma_(gamma), beta_(beta), d_(d), width_(std::max(gamma, beta)), field_(std::max({gamma, beta, 1u})) {
    if (d < 1) throw InputError("d must be at least 1");
    if (width_ < 1 || width_ > 32) throw InputError("family width must be in [1, 32]");
}

DWiseFamily DWiseFamily::for_universe(std::size_t universe_size, unsigned beta, unsigned d) {
    unsigned gamma = 1;
    while ((std::size_t{1} << gamma) < universe_size) ++gamma;
    return DWiseFamily(gamma, beta, d);
}

std::vector<std::uint64_t> DWiseFamily::coefficients(const SeedBits& seed) const {
    if (seed.size() != seed_bits()) throw InputError("seed has the wrong length");
    std::vector<std::uint64_t> a(d_, 0);
    for (std::size_t i = 0; i < seed.size(); ++i)
        if (seed[i]) a[i / width_] |= std::uint64_t{1} << (i % width_);
    return a;
}

std::uint64_t DWiseFamily::eval(const SeedBits& seed, std::uint64_t x) const {
    auto a = coefficients(seed);
    std::uint64_t acc = 0;
    for (std::size_t j = d_; j-- > 0;) acc = field_.mul(acc, x) ^ a[j];
    return beta_ >= 64 ? acc : acc & ((std::uint64_t{1} << beta_) - 1);
}

std::uint64_t DWiseFamily::column(std::size_t bit, std::uint64_t x) const {
    std::size_t j = bit / width_;
    unsigned t = static_cast<unsigned>(bit % width_);
    std::uint64_t v = field_.mul(std::uint64_t{1} << t, field_.pow(x, j));
    return v & ((std::uint64_t{1} << beta_) - 1);
}

std::vector<std::uint64_t> DWiseFamily::columns(std::uint64_t x) const {
    std::vector<std::uint64_t> out(seed_bits());
    const std::uint64_t bmask = (std::uint64_t{1} << beta_) - 1;
    std::uint64_t xp = 1;
    for (unsigned j = 0; j < d_; ++j) {
        for (unsigned t = 0; t < width_; ++t) out[j * width_ + t] = field_.mul(std::uint64_t{1} << t, xp) & bmask;
        xp = field_.mul(xp, x);
    }
    return out;
}

unsigned beta_for(BetaProfile profile, std::size_t delta, std::size_t n, double c) {
    double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    double ratio = profile == BetaProfile::Log
                       ? static_cast<double>(delta) / (c * ln)
                       : std::sqrt(static_cast<double>(delta)) / std::pow(static_cast<double>(n), 1.0 / 16);
    int b = ratio < 1.0 ? 0 : static_cast<int>(std::floor(std::log2(ratio) + 1e-12));
    if (profile == BetaProfile::Sqrt) b = std::max(b, 1);
    return static_cast<unsigned>(std::clamp(b, 0, 32));
}

// ---------------------------------------------------------------- backends

std::vector<Vertex> randomized_hitting_set(const HittingSetInstance& inst, double c, std::uint64_t seed) {
    double p = std::min(1.0, c * std::log(static_cast<double>(inst.n_eff())) / static_cast<double>(inst.delta));
    CounterRng rng = CounterRng(seed).split(0x68697473);
    std::vector<Vertex> z;
    for (Vertex x : inst.universe)
        if (rng.bernoulli(x, p)) z.push_back(x);
    return z;
}

std::vector<Vertex> hitting_set_from_seed(const HittingSetInstance& inst, const DWiseFamily& fam,
                                          const SeedBits& seed) {
    auto a = fam.coefficients(seed);
    const std::uint64_t bmask = (std::uint64_t{1} << fam.beta()) - 1;
    std::vector<Vertex> z;
    for (std::size_t i = 0; i < inst.universe.size(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = fam.d(); j-- > 0;) acc = fam.field().mul(acc, i) ^ a[j];
        if ((acc & bmask) == 0) z.push_back(inst.universe[i]);
    }
    return z;
}

DWiseDraw dwise_hitting_draw(const HittingSetInstance& inst, unsigned d, std::uint64_t rng_seed) {
    if (d < 1) throw InputError("d must be at least 1");
    DWiseDraw out;
    double ratio = std::sqrt(static_cast<double>(inst.delta)) / std::pow(static_cast<double>(inst.n_eff()), 1.0 / 16);
    out.beta_clamped = ratio < 2.0;
    out.beta = beta_for(BetaProfile::Sqrt, inst.delta, inst.n_eff());
    DWiseFamily fam = DWiseFamily::for_universe(inst.universe.size(), out.beta, d);
    CounterRng rng = CounterRng(rng_seed).split(0x6477697365);
    out.seed.resize(fam.seed_bits());
    for (std::size_t i = 0; i < out.seed.size(); ++i) out.seed[i] = (rng.word(i / 64) >> (i % 64)) & 1;
    out.z = hitting_set_from_seed(inst, fam, out.seed);
    return out;
}

// ---------------------------------------------------------------- GF(2) linear algebra

namespace {

// Reduced row echelon basis: every pivot bit appears in exactly one row.
struct Basis {
    std::vector<std::uint64_t> rows;
    std::vector<unsigned> pivots;

    void add(std::uint64_t v) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if ((v >> pivots[i]) & 1) v ^= rows[i];
        if (!v) return;
        unsigned p = 63 - static_cast<unsigned>(std::countl_zero(v));
        for (auto& r : rows)
            if ((r >> p) & 1) r ^= v;
        rows.push_back(v);
        pivots.push_back(p);
    }
    std::uint64_t reduce(std::uint64_t v) const {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if ((v >> pivots[i]) & 1) v ^= rows[i];
        return v;
    }
    std::size_t rank() const { return rows.size(); }
};

// Pr over a uniform y in c + span(cols) that every beta-bit block of y is nonzero.
class UnhitEvaluator {
public:
    UnhitEvaluator(const std::vector<std::uint64_t>& cols, unsigned beta, unsigned blocks, std::uint64_t limit)
        : beta_(beta), blocks_(blocks), bmask_((std::uint64_t{1} << beta) - 1) {
        const unsigned m = beta * blocks;
        if (m > 64) throw ResourceError("stacked hash output wider than 64 bits");
        Basis basis;
        for (auto v : cols) basis.add(v);
        const std::size_t rho = basis.rank();
        if (rho == 0) {
            mode_ = Mode::Point;
            return;
        }
        const std::size_t co = m - rho;
        if (co == 0) {
            mode_ = Mode::Constant;
            // (1 - 2^-beta)^blocks
            constant_ = std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(beta)), blocks);
            return;
        }
        if (std::min(rho, co) >= 63 || (std::uint64_t{1} << std::min(rho, co)) > limit)
            throw ResourceError("conditional probability needs 2^" + std::to_string(std::min(rho, co)) +
                                " terms, above the enumeration limit");
        if (rho <= co) {
            mode_ = Mode::Image;
            elems_ = span(basis.rows);
            scale_ = std::ldexp(1.0, -static_cast<int>(rho));
        } else {
            mode_ = Mode::Dual;
            std::vector<std::uint64_t> dual;
            std::uint64_t pivot_mask = 0;
            for (auto p : basis.pivots) pivot_mask |= std::uint64_t{1} << p;
            for (unsigned f = 0; f < m; ++f) {
                if ((pivot_mask >> f) & 1) continue;
                std::uint64_t lam = std::uint64_t{1} << f;
                for (std::size_t i = 0; i < basis.rows.size(); ++i)
                    if ((basis.rows[i] >> f) & 1) lam |= std::uint64_t{1} << basis.pivots[i];
                dual.push_back(lam);
            }
            elems_ = span(dual);
            // weight of lambda: (2^beta - 1)^zero_blocks * (-1)^nonzero_blocks
            std::vector<__int128> pw(blocks + 1, 1);
            for (unsigned i = 1; i <= blocks; ++i) pw[i] = pw[i - 1] * static_cast<__int128>(bmask_);
            weights_.reserve(elems_.size());
            for (auto lam : elems_) {
                unsigned zero = 0;
                for (unsigned b = 0; b < blocks; ++b)
                    if (((lam >> (b * beta)) & bmask_) == 0) ++zero;
                __int128 w = pw[zero];
                weights_.push_back((blocks - zero) % 2 ? -w : w);
            }
            scale_ = std::ldexp(1.0, -static_cast<int>(m));
        }
    }

    double eval(std::uint64_t c) const {
        switch (mode_) {
            case Mode::Point:
                return all_nonzero(c) ? 1.0 : 0.0;
            case Mode::Constant:
                return constant_;
            case Mode::Image: {
                std::uint64_t count = 0;
                for (auto v : elems_) count += all_nonzero(c ^ v);
                return static_cast<double>(count) * scale_;
            }
            case Mode::Dual: {
                __int128 acc = 0;
                for (std::size_t i = 0; i < elems_.size(); ++i)
                    acc += (std::popcount(elems_[i] & c) & 1) ? -weights_[i] : weights_[i];
                return static_cast<double>(acc) * scale_;
            }
        }
        return 0.0;
    }

private:
    enum class Mode { Point, Constant, Image, Dual };

    static std::vector<std::uint64_t> span(const std::vector<std::uint64_t>& gens) {
        std::vector<std::uint64_t> out(std::size_t{1} << gens.size());
        std::uint64_t cur = 0;
        out[0] = 0;
        for (std::size_t i = 1; i < out.size(); ++i) {
            cur ^= gens[static_cast<std::size_t>(std::countr_zero(i))];
            out[i] = cur;
        }
        return out;
    }

    bool all_nonzero(std::uint64_t y) const {
        for (unsigned b = 0; b < blocks_; ++b)
            if (((y >> (b * beta_)) & bmask_) == 0) return false;
        return true;
    }

    unsigned beta_, blocks_;
    std::uint64_t bmask_;
    Mode mode_ = Mode::Point;
    double constant_ = 0;
    double scale_ = 1;
    std::vector<std::uint64_t> elems_;
    std::vector<__int128> weights_;
};

// Pr[h'(x) = 0] for h'(x) uniform over c + span(cols).
struct ZeroEvaluator {
    Basis basis;
    double p = 1;

    explicit ZeroEvaluator(const std::vector<std::uint64_t>& cols) {
        for (auto v : cols) basis.add(v);
        p = std::ldexp(1.0, -static_cast<int>(basis.rank()));
    }
    double eval(std::uint64_t c) const { return basis.reduce(c) == 0 ? p : 0.0; }
};

bool blocks_nonzero(std::uint64_t y, unsigned beta, unsigned blocks) {
    const std::uint64_t bmask = (std::uint64_t{1} << beta) - 1;
    for (unsigned b = 0; b < blocks; ++b)
        if (((y >> (b * beta)) & bmask) == 0) return false;
    return true;
}

// out[a] = Pr[all blocks nonzero | chunk bits = a] for every a in [0, 2^len).
// Rows pos..pos+len-1 of cols are the chunk, later rows are free.
void unhit_chunk_values(const std::vector<std::uint64_t>& cols, std::size_t pos, std::size_t len,
                        std::uint64_t c0, unsigned beta, unsigned blocks, double* out) {
    const std::size_t options = std::size_t{1} << len;
    const unsigned m = beta * blocks;
    const std::vector<std::uint64_t> free(cols.begin() + static_cast<long>(pos + len), cols.end());
    Basis basis;
    for (auto v : free) basis.add(v);
    const std::size_t rho = basis.rank();
    const std::size_t co = m - rho;

    std::vector<std::uint64_t> cval(options);
    cval[0] = c0;
    for (std::size_t a = 1; a < options; ++a)
        cval[a] = cval[a & (a - 1)] ^ cols[pos + static_cast<std::size_t>(std::countr_zero(a))];

    if (rho == 0) {
        for (std::size_t a = 0; a < options; ++a) out[a] = blocks_nonzero(cval[a], beta, blocks) ? 1.0 : 0.0;
        return;
    }
    const double direct_cost = static_cast<double>(options) * std::ldexp(1.0, static_cast<int>(std::min(rho, co)));
    const double dual_cost = std::ldexp(1.0, static_cast<int>(co)) + static_cast<double>(len * options);
    if (co == 0 || m > 30 || direct_cost <= dual_cost) {
        UnhitEvaluator ev(free, beta, blocks, kEnumerationLimit);
        for (std::size_t a = 0; a < options; ++a) out[a] = ev.eval(cval[a]);
        return;
    }
    // Walsh expansion over the annihilator of the free span, folded onto the chunk bits.
    std::uint64_t pivot_mask = 0;
    for (auto p : basis.pivots) pivot_mask |= std::uint64_t{1} << p;
    std::vector<std::uint64_t> dual;
    for (unsigned f = 0; f < m; ++f) {
        if ((pivot_mask >> f) & 1) continue;
        std::uint64_t lam = std::uint64_t{1} << f;
        for (std::size_t i = 0; i < basis.rows.size(); ++i)
            if ((basis.rows[i] >> f) & 1) lam |= std::uint64_t{1} << basis.pivots[i];
        dual.push_back(lam);
    }
    auto fold = [&](std::uint64_t lam) {
        std::size_t b = 0;
        for (std::size_t t = 0; t < len; ++t) b |= static_cast<std::size_t>(std::popcount(lam & cols[pos + t]) & 1) << t;
        return b;
    };
    std::vector<std::size_t> img(dual.size());
    std::vector<int> par(dual.size());
    for (std::size_t i = 0; i < dual.size(); ++i) {
        img[i] = fold(dual[i]);
        par[i] = std::popcount(dual[i] & c0) & 1;
    }
    const std::uint64_t bmask = (std::uint64_t{1} << beta) - 1;
    std::vector<std::int64_t> pw(blocks + 1, 1);
    for (unsigned i = 1; i <= blocks; ++i) pw[i] = pw[i - 1] * static_cast<std::int64_t>(bmask);
    std::vector<std::int64_t> acc(options, 0);
    std::uint64_t lam = 0;
    std::size_t b = 0;
    int sign = 0;
    const std::uint64_t total = std::uint64_t{1} << dual.size();
    for (std::uint64_t i = 0; i < total; ++i) {
        if (i) {
            std::size_t g = static_cast<std::size_t>(std::countr_zero(i));
            lam ^= dual[g];
            b ^= img[g];
            sign ^= par[g];
        }
        unsigned zero = 0;
        for (unsigned k = 0; k < blocks; ++k)
            if (((lam >> (k * beta)) & bmask) == 0) ++zero;
        std::int64_t w = pw[zero];
        acc[b] += ((blocks - zero + static_cast<unsigned>(sign)) % 2) ? -w : w;
    }
    for (std::size_t h = 1; h < options; h <<= 1)
        for (std::size_t a = 0; a < options; a += h << 1)
            for (std::size_t j = a; j < a + h; ++j) {
                std::int64_t x = acc[j], y = acc[j + h];
                acc[j] = x + y;
                acc[j + h] = x - y;
            }
    const double scale = std::ldexp(1.0, -static_cast<int>(m));
    for (std::size_t a = 0; a < options; ++a) out[a] = static_cast<double>(acc[a]) * scale;
}

std::uint64_t prefix_value(const std::vector<std::uint64_t>& cols, const SeedBits& prefix) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix[i]) c ^= cols[i];
    return c;
}

}  // namespace

double conditional_failure_probability(const DWiseFamily& fam, const SeedBits& prefix,
                                       const std::vector<std::uint64_t>& s, std::uint64_t limit) {
    const std::size_t g = fam.seed_bits();
    if (prefix.size() > g) throw InputError("prefix longer than the seed");
    if (s.empty()) return 1.0;
    if (fam.beta() == 0) return 0.0;
    const unsigned beta = fam.beta();
    const std::size_t f = g - prefix.size();
    const std::uint64_t bmask = (std::uint64_t{1} << beta) - 1;

    std::vector<std::vector<std::uint64_t>> cols;
    cols.reserve(s.size());
    for (auto x : s) cols.push_back(fam.columns(x));

    if (beta * s.size() <= 64) {
        std::vector<std::uint64_t> stacked(g, 0);
        for (std::size_t b = 0; b < s.size(); ++b)
            for (std::size_t i = 0; i < g; ++i) stacked[i] |= cols[b][i] << (b * beta);
        std::vector<std::uint64_t> free(stacked.begin() + static_cast<long>(prefix.size()), stacked.end());
        try {
            UnhitEvaluator ev(free, beta, static_cast<unsigned>(s.size()), limit);
            return ev.eval(prefix_value(stacked, prefix));
        } catch (const ResourceError&) {
            if (f >= 63 || (std::uint64_t{1} << f) > limit) throw;
        }
    }
    if (f >= 63 || (std::uint64_t{1} << f) > limit)
        throw ResourceError("suffix space 2^" + std::to_string(f) +
                            " exceeds the enumeration limit; use a longer prefix or smaller d/gamma");
    // Gray-code walk over the suffix.
    std::vector<std::uint64_t> val(s.size());
    for (std::size_t b = 0; b < s.size(); ++b) val[b] = prefix_value(cols[b], prefix);
    auto ok = [&] {
        for (auto v : val)
            if ((v & bmask) == 0) return false;
        return true;
    };
    std::uint64_t count = ok();
    const std::uint64_t total = std::uint64_t{1} << f;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::size_t bit = prefix.size() + static_cast<std::size_t>(std::countr_zero(i));
        for (std::size_t b = 0; b < s.size(); ++b) val[b] ^= cols[b][bit];
        count += ok();
    }
    return static_cast<double>(count) / static_cast<double>(total);
}

double size_term(const DWiseFamily& fam, const SeedBits& prefix, std::size_t universe_size,
                 std::size_t threshold, std::uint64_t limit) {
    const std::size_t g = fam.seed_bits();
    if (prefix.size() > g) throw InputError("prefix longer than the seed");
    if (threshold >= universe_size) return 0.0;
    if (fam.beta() == 0) return 1.0;
    const std::size_t f = g - prefix.size();
    if (f >= 63 || (std::uint64_t{1} << f) > limit)
        throw ResourceError("suffix space 2^" + std::to_string(f) + " exceeds the enumeration limit");
    const std::uint64_t bmask = (std::uint64_t{1} << fam.beta()) - 1;
    std::vector<std::vector<std::uint64_t>> cols(universe_size);
    std::vector<std::uint64_t> val(universe_size);
    std::size_t zeros = 0;
    for (std::size_t x = 0; x < universe_size; ++x) {
        cols[x] = fam.columns(x);
        val[x] = prefix_value(cols[x], prefix);
        zeros += (val[x] & bmask) == 0;
    }
    std::uint64_t over = zeros > threshold;
    const std::uint64_t total = std::uint64_t{1} << f;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::size_t bit = prefix.size() + static_cast<std::size_t>(std::countr_zero(i));
        for (std::size_t x = 0; x < universe_size; ++x) {
            bool was = (val[x] & bmask) == 0;
            val[x] ^= cols[x][bit];
            bool now = (val[x] & bmask) == 0;
            zeros += now;
            zeros -= was;
        }
        over += zeros > threshold;
    }
    return static_cast<double>(over) / static_cast<double>(total);
}

// ---------------------------------------------------------------- derandomizer

HittingAudit audit_hitting(const HittingSetInstance& inst, const std::vector<Vertex>& z) {
    std::vector<Vertex> sorted = z;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    HittingAudit a;
    a.z_size = sorted.size();
    for (const auto& [owner, s] : inst.sets) {
        bool hit = false;
        for (Vertex x : s)
            if (std::binary_search(sorted.begin(), sorted.end(), x)) {
                hit = true;
                break;
            }
        if (!hit) {
            if (a.unhit == 0) a.first_unhit_owner = owner;
            ++a.unhit;
        }
    }
    a.pass = a.unhit == 0;
    return a;
}

DerandResult derandomized_hitting_set(const HittingSetInstance& inst, const DerandParams& params) {
    const std::size_t U = inst.universe.size();
    if (U == 0 || inst.sets.empty()) throw InputError("derandomization needs a nonempty universe and set family");
    const std::size_t n = inst.n_eff();
    DerandResult res;
    res.beta = params.beta >= 0 ? static_cast<unsigned>(params.beta) : beta_for(params.profile, inst.delta, n, params.c);
    DWiseFamily fam = DWiseFamily::for_universe(U, res.beta, params.d);
    res.gamma = fam.gamma();
    res.seed_bits = fam.seed_bits();
    const std::size_t g = res.seed_bits;
    unsigned ell = params.chunk_bits;
    if (ell == 0) ell = static_cast<unsigned>(std::floor(std::log2(static_cast<double>(n))));
    ell = std::clamp(ell, 1u, 16u);
    res.chunk_bits = ell;
    res.rounds = (g + ell - 1) / ell;
    const double expected = static_cast<double>(U) * std::ldexp(1.0, -static_cast<int>(res.beta));
    res.size_threshold = params.size_threshold ? params.size_threshold
                                               : static_cast<std::size_t>(std::ceil(2.0 * expected - 1e-9));
    const double denom = static_cast<double>(res.size_threshold) + 1.0;
    const unsigned beta = res.beta;

    // Positions inside the universe.
    std::vector<std::vector<std::uint64_t>> idx_sets;
    for (const auto& [owner, s] : inst.sets) {
        std::vector<std::uint64_t> idx;
        for (Vertex x : s) {
            Vertex i = inst.index_of(x);
            if (i == kNoVertex) throw InputError("set element outside the universe");
            idx.push_back(i);
        }
        if (idx.empty()) throw InputError("empty set in the family");
        idx_sets.push_back(std::move(idx));
    }

    res.seed.assign(g, 0);
    if (beta == 0) {
        res.z = inst.universe;
        double psi = static_cast<double>(U) / denom;
        res.size_part0 = psi;
        res.psi.assign(res.rounds + 1, psi);
        res.all_hit = true;
        return res;
    }

    const std::size_t keep = std::max<std::size_t>(1, 24 / beta);
    std::vector<std::vector<std::uint64_t>> xcols(U);
    for (std::size_t x = 0; x < U; ++x) xcols[x] = fam.columns(x);
    std::vector<std::vector<std::uint64_t>> stacked(idx_sets.size());
    std::vector<unsigned> blocks(idx_sets.size());
    for (std::size_t u = 0; u < idx_sets.size(); ++u) {
        std::size_t s = std::min(keep, idx_sets[u].size());
        blocks[u] = static_cast<unsigned>(s);
        stacked[u].assign(g, 0);
        for (std::size_t b = 0; b < s; ++b)
            for (std::size_t i = 0; i < g; ++i) stacked[u][i] |= xcols[idx_sets[u][b]][i] << (b * beta);
    }

    std::vector<std::uint64_t> cu(idx_sets.size(), 0), cx(U, 0);
    auto estimate_parts = [&](std::size_t from, double& size_part, double& miss_part) {
        size_part = 0;
        miss_part = 0;
        for (std::size_t x = 0; x < U; ++x) {
            ZeroEvaluator ev(std::vector<std::uint64_t>(xcols[x].begin() + static_cast<long>(from), xcols[x].end()));
            size_part += ev.eval(cx[x]);
        }
        size_part /= denom;
        for (std::size_t u = 0; u < idx_sets.size(); ++u) {
            UnhitEvaluator ev(std::vector<std::uint64_t>(stacked[u].begin() + static_cast<long>(from), stacked[u].end()),
                              beta, blocks[u], kEnumerationLimit);
            miss_part += ev.eval(cu[u]);
        }
    };
    estimate_parts(0, res.size_part0, res.miss_part0);
    double psi = res.size_part0 + res.miss_part0;
    res.psi.push_back(psi);
    const bool guaranteed = psi < 1.0;
    if (!guaranteed && !params.best_effort) {
        std::ostringstream msg;
        msg << "initial estimator " << psi << " >= 1 (size term " << res.size_part0 << ", miss term "
            << res.miss_part0 << "); raise d or the size threshold";
        throw ParameterError(msg.str(), res.size_part0, res.miss_part0);
    }

    unsigned threads = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, 16u);

    for (std::size_t pos = 0; pos < g; pos += ell) {
        const std::size_t len = std::min<std::size_t>(ell, g - pos);
        const std::size_t after = pos + len;
        const std::size_t options = std::size_t{1} << len;
        // Sums run in a fixed order (x, then u) so the result does not depend on threads.
        std::vector<double> sp(options, 0.0), mp(options, 0.0);
        std::vector<std::uint64_t> cval(options);
        for (std::size_t x = 0; x < U; ++x) {
            ZeroEvaluator zx(std::vector<std::uint64_t>(xcols[x].begin() + static_cast<long>(after), xcols[x].end()));
            cval[0] = cx[x];
            for (std::size_t a = 1; a < options; ++a)
                cval[a] = cval[a & (a - 1)] ^ xcols[x][pos + static_cast<std::size_t>(std::countr_zero(a))];
            for (std::size_t a = 0; a < options; ++a) sp[a] += zx.eval(cval[a]);
        }
        const std::size_t sets = idx_sets.size();
        const std::size_t block = 256;
        std::vector<double> rows(std::min(block, sets) * options);
        for (std::size_t lo = 0; lo < sets; lo += block) {
            const std::size_t hi = std::min(sets, lo + block);
            auto work = [&](std::size_t from, std::size_t to) {
                for (std::size_t u = from; u < to; ++u)
                    unhit_chunk_values(stacked[u], pos, len, cu[u], beta, blocks[u], &rows[(u - lo) * options]);
            };
            if (threads > 1 && hi - lo > 1) {
                std::vector<std::thread> pool;
                std::size_t per = (hi - lo + threads - 1) / threads;
                for (unsigned t = 0; t < threads; ++t) {
                    std::size_t a = lo + t * per, b = std::min(hi, a + per);
                    if (a < b) pool.emplace_back(work, a, b);
                }
                for (auto& th : pool) th.join();
            } else {
                work(lo, hi);
            }
            for (std::size_t u = lo; u < hi; ++u)
                for (std::size_t a = 0; a < options; ++a) mp[a] += rows[(u - lo) * options + a];
        }
        std::vector<double> value(options);
        for (std::size_t a = 0; a < options; ++a) value[a] = sp[a] / denom + mp[a];
        std::size_t best = 0;
        for (std::size_t a = 1; a < options; ++a)
            if (value[a] < value[best]) best = a;
        if (value[best] > psi + 1e-9 * std::max(1.0, psi))
            throw ConsistencyError("estimator increased from " + std::to_string(psi) + " to " +
                                   std::to_string(value[best]));
        for (std::size_t t = 0; t < len; ++t) {
            if (!((best >> t) & 1)) continue;
            res.seed[pos + t] = 1;
            for (std::size_t x = 0; x < U; ++x) cx[x] ^= xcols[x][pos + t];
            for (std::size_t u = 0; u < idx_sets.size(); ++u) cu[u] ^= stacked[u][pos + t];
        }
        psi = value[best];
        res.psi.push_back(psi);
    }

    res.z = hitting_set_from_seed(inst, fam, res.seed);
    HittingAudit audit = audit_hitting(inst, res.z);
    if (guaranteed) {
        if (!audit.pass || res.z.size() > res.size_threshold)
            throw ConsistencyError("estimator ended below 1 but the hitting set is invalid");
    } else if (!audit.pass) {
        for (const auto& [owner, s] : inst.sets) {
            bool hit = false;
            for (Vertex x : s)
                if (std::binary_search(res.z.begin(), res.z.end(), x)) {
                    hit = true;
                    break;
                }
            if (!hit) {
                res.z.insert(std::lower_bound(res.z.begin(), res.z.end(), s.front()), s.front());
                ++res.patched;
            }
        }
    }
    res.all_hit = true;
    return res;
}

// ---------------------------------------------------------------- dispatch

HitBackend parse_backend(const std::string& name) {
    if (name == "random" || name == "randomized") return HitBackend::Random;
    if (name == "dwise") return HitBackend::DWise;
    if (name == "derand" || name == "derandomized" || name == "deterministic") return HitBackend::Derand;
    throw InputError("unknown hitting-set backend '" + name + "'");
}

std::string backend_name(HitBackend b) {
    switch (b) {
        case HitBackend::Random: return "random";
        case HitBackend::DWise: return "dwise";
        case HitBackend::Derand: return "derand";
    }
    return "?";
}

HitOutcome compute_hitting_set(const HittingSetInstance& inst, HitBackend backend, BetaProfile profile,
                               std::uint64_t seed, double c) {
    HitOutcome out;
    if (inst.sets.empty()) {
        out.all_hit = true;
        return out;
    }
    switch (backend) {
        case HitBackend::Random:
            out.z = randomized_hitting_set(inst, c, seed);
            break;
        case HitBackend::DWise: {
            out.beta = beta_for(profile, inst.delta, inst.n_eff(), c);
            if (out.beta == 0) {
                out.z = inst.universe;
                break;
            }
            DWiseFamily fam = DWiseFamily::for_universe(inst.universe.size(), out.beta, 8);
            CounterRng rng = CounterRng(seed).split(0x6477697365);
            SeedBits bits(fam.seed_bits());
            for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (rng.word(i / 64) >> (i % 64)) & 1;
            out.z = hitting_set_from_seed(inst, fam, bits);
            break;
        }
        case HitBackend::Derand: {
            DerandParams p;
            p.profile = profile;
            p.c = c;
            DerandResult r;
            try {
                r = derandomized_hitting_set(inst, p);
            } catch (const ParameterError&) {
                p.best_effort = true;
                r = derandomized_hitting_set(inst, p);
            }
            out.z = std::move(r.z);
            out.rounds = r.rounds;
            out.patched = r.patched;
            out.beta = r.beta;
            break;
        }
    }
    out.all_hit = audit_hitting(inst, out.z).pass;
    return out;
}

}  // namespace spanner

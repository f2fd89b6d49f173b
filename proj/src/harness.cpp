#include "icsi/harness.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "icsi/bounds.hpp"
#include "icsi/error.hpp"

namespace icsi {

bool SimulationRun::all_correct() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const ReceiverOutcome& o) { return o.correct; });
}

SimulationRun simulate_once(const Decoder& dec, std::span<const Elem> x, std::span<const Elem> error) {
    const auto& inst = dec.instance();
    const auto& L = dec.matrix();
    if (x.size() != inst.n || error.size() != L.cols()) throw InvalidInput("message or error has wrong length");
    SimulationRun run;
    run.x.assign(x.begin(), x.end());
    run.error.assign(error.begin(), error.end());
    run.codeword = vec_mat(x, L);
    for (std::size_t i = 0; i < inst.m; ++i) {
        ReceiverOutcome o;
        try {
            o.x_hat = dec.decode(dec.view_for(i, x, error)).x_hat;
            o.correct = *o.x_hat == x[inst.f[i]];
        } catch (const Error& e) {
            o.error = e.what();
        }
        run.outcomes.push_back(std::move(o));
    }
    return run;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void record(CampaignStats& s, const SimulationRun& run) {
    ++s.trials;
    if (run.all_correct()) ++s.successes;
    for (std::size_t i = 0; i < run.outcomes.size(); ++i)
        if (!run.outcomes[i].correct) ++s.receiver_failures[i];
    s.max_weight = std::max(s.max_weight, weight(run.error));
}

void merge(CampaignStats& into, const CampaignStats& from) {
    into.trials += from.trials;
    into.successes += from.successes;
    for (std::size_t i = 0; i < into.receiver_failures.size(); ++i)
        into.receiver_failures[i] += from.receiver_failures[i];
    into.max_weight = std::max(into.max_weight, from.max_weight);
}

}  // namespace

CampaignStats trial_campaign(const Decoder& dec, const CampaignOptions& opts) {
    if (opts.trials < 1) throw InvalidInput("trials must be at least 1");
    const auto& inst = dec.instance();
    const FieldSpec& f = dec.matrix().field();
    const std::size_t N = dec.matrix().cols();
    if (opts.forced_weight && *opts.forced_weight > N) throw InvalidInput("forced error weight exceeds code length");
    const std::size_t wmax = std::min(dec.delta(), N);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, CampaignStats& s) {
        s.receiver_failures.assign(inst.m, 0);
        std::vector<std::size_t> positions(N);
        for (std::uint64_t t = begin; t < end; ++t) {
            std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(t)));
            std::uniform_int_distribution<Elem> sym(0, f.q() - 1), nonzero(1, f.q() - 1);
            Vec x(inst.n), e(N, 0);
            for (auto& v : x) v = sym(rng);
            const std::size_t w =
                opts.forced_weight ? *opts.forced_weight : std::uniform_int_distribution<std::size_t>(0, wmax)(rng);
            // Partial Fisher-Yates: the first w positions form a uniform support.
            for (std::size_t k = 0; k < N; ++k) positions[k] = k;
            for (std::size_t k = 0; k < w; ++k) {
                std::swap(positions[k], positions[std::uniform_int_distribution<std::size_t>(k, N - 1)(rng)]);
                e[positions[k]] = nonzero(rng);
            }
            record(s, simulate_once(dec, x, e));
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(opts.trials)));
    std::vector<CampaignStats> parts(workers);
    if (workers == 1) {
        run_range(0, opts.trials, parts[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = opts.trials * w / workers, e = opts.trials * (w + 1) / workers;
            pool.emplace_back([&, w, b, e] { run_range(b, e, parts[w]); });
        }
        for (auto& t : pool) t.join();
    }
    CampaignStats total;
    total.receiver_failures.assign(inst.m, 0);
    for (const auto& p : parts) merge(total, p);
    return total;
}

CampaignStats exhaustive_campaign(const Decoder& dec, std::size_t max_weight, std::optional<std::size_t> exact_weight,
                                  std::uint64_t cap) {
    const auto& inst = dec.instance();
    const FieldSpec& f = dec.matrix().field();
    const std::size_t N = dec.matrix().cols();
    const std::size_t lo = exact_weight ? *exact_weight : 0;
    const std::size_t hi = std::min(exact_weight ? *exact_weight : max_weight, N);
    BigInt errors = 0;
    for (std::size_t w = lo; w <= hi; ++w) errors += binomial(N, w) * big_pow(f.q() - 1, w);
    if (errors * big_pow(f.q(), inst.n) > cap) throw BudgetExceeded("exhaustive campaign exceeds cap");

    CampaignStats s;
    s.receiver_failures.assign(inst.m, 0);
    Vec x(inst.n, 0);
    do {
        for (std::size_t w = lo; w <= hi; ++w) {
            std::vector<std::size_t> support(w);
            for (std::size_t k = 0; k < w; ++k) support[k] = k;
            while (true) {
                Vec digits(w, 0);
                do {
                    Vec e(N, 0);
                    for (std::size_t k = 0; k < w; ++k) e[support[k]] = digits[k] + 1;
                    record(s, simulate_once(dec, x, e));
                } while (odometer_next(digits, f.q() - 1));
                std::size_t k = w;
                while (k > 0 && support[k - 1] == N - w + k - 1) --k;
                if (k == 0) break;
                ++support[k - 1];
                for (std::size_t j = k; j < w; ++j) support[j] = support[j - 1] + 1;
            }
        }
    } while (odometer_next(x, f.q()));
    return s;
}

}  // namespace icsi

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icsi/decoder.hpp"

namespace icsi {

struct ReceiverOutcome {
    std::optional<Elem> x_hat;  // absent when the decoder raised an error
    bool correct = false;
    std::string error;
};

struct SimulationRun {
    Vec x;
    Vec error;
    Vec codeword;  // x L, before the channel
    std::vector<ReceiverOutcome> outcomes;
    bool all_correct() const;
};

/// Broadcasts x L once, adds `error`, and lets every receiver decode its own
/// view. Decoder errors are recorded per receiver.
SimulationRun simulate_once(const Decoder& dec, std::span<const Elem> x, std::span<const Elem> error);

struct CampaignStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;  // trials in which every receiver was correct
    std::vector<std::uint64_t> receiver_failures;
    std::size_t max_weight = 0;  // largest error weight injected
    bool operator==(const CampaignStats&) const = default;
};

struct CampaignOptions {
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::optional<std::size_t> forced_weight;  // otherwise uniform in 0..delta
    unsigned workers = 1;
};

/// Random trials: x uniform, error weight uniform in 0..delta (or forced),
/// support uniform, values uniform nonzero. Trial t draws from its own
/// generator seeded by (seed, t), so results do not depend on `workers`.
CampaignStats trial_campaign(const Decoder& dec, const CampaignOptions& opts);

/// Every x in F_q^n against every error of weight <= max_weight (or exactly
/// `exact_weight` when given).
CampaignStats exhaustive_campaign(const Decoder& dec, std::size_t max_weight,
                                  std::optional<std::size_t> exact_weight = std::nullopt,
                                  std::uint64_t cap = 1ull << 26);

}  // namespace icsi

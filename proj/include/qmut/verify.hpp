#pragma once

#include "qmut/coxeter.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace qmut {

// Row and column sign corrections relating raw L-matrix entries to C-matrix
// entries after a non-trivial fork-preserving sequence.
struct EpsilonTau {
    std::vector<int> epsilon;
    std::vector<int> tau;
};

EpsilonTau epsilon_tau(const ExchangeMatrix& b0, const ForkCertificate& cert,
                       const MutationSequence& w);

// Pair weights q_ij = |b_ij| for i < j, row-major.
std::vector<Int> pair_weights(const ExchangeMatrix& b);

// All sign patterns sigma (one per pair i < j, row-major) satisfying
// sum_i c_i^2 + sum_{i<j} sigma_ij q_ij c_i c_j = 1, enumerated exhaustively.
std::vector<std::vector<int>> quadratic_signs(const std::vector<Int>& c,
                                              const std::vector<Int>& q);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    nlohmann::json instance;
    std::vector<CheckResult> checks;
    nlohmann::json counterexample;  // null when every check passed

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const;
};

// Raw L rows must equal epsilon_i tau_j c_ij entrywise at every prefix of w,
// and the mutated GIM must match the sign-case formula against B^w and C^w.
VerificationReport verify_l_c_relation(const ExchangeMatrix& b0, const MutationSequence& w);

// Two quivers with identical sign patterns keep identical sign vectors at
// every prefix of w.
VerificationReport verify_sign_invariance(const ExchangeMatrix& b1, const ExchangeMatrix& b2,
                                          const MutationSequence& w);

// Rank-3 classifier: greedy weight descent, cross-checked by a bounded
// breadth-first search; a disagreement aborts rather than picking a side.
bool is_mutation_cyclic_rank3(const ExchangeMatrix& b, int bfs_depth = 8);

// Every C-matrix row over all reduced sequences up to max_depth admits at
// least one quadratic sign pattern for the initial pair weights.
VerificationReport verify_rank3_theorem(const ExchangeMatrix& b, int max_depth);

struct CampaignConfig {
    std::vector<int> ranks = {3, 4, 5};
    int max_weight = 7;
    int walk_length = 10;
    int trials = 200;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> checks;  // empty selects every check
};

// Names understood by the campaign, in reporting order.
const std::vector<std::string>& campaign_check_names();

// Random forks, random fork-preserving walks, every selected invariant
// checked at every step; deterministic for a fixed seed, and any failure is
// reported with its reproduction data.
VerificationReport random_walk_campaign(const CampaignConfig& config);

}  // namespace qmut

#pragma once

#include "fdrl/config.hpp"
#include "fdrl/opmap.hpp"
#include "fdrl/radio_env.hpp"

namespace fdrl {

/// Bernoulli-logistic learning automaton of one secondary transmitter.
/// The access probability is sigmoid(s).
struct LearnerState {
  NodeId stx = 0;
  double s = 0.0;
  double eta = 0.1;
  double s_clamp = 10.0;

  bool operator==(const LearnerState&) const = default;
};

/// Summary of one direction's epoch, as reported back to the server.
struct FeedbackRecord {
  NodeId stx = 0;
  bool transmitted = false;     // at least one attempt in the epoch
  bool success = false;         // strict majority of attempts succeeded
  double achieved_rate = 0.0;   // bit/s/Hz, mean over successful slots; 0 unless success
  double access_prob_used = 0.0;
  std::int64_t attempts = 0;
  std::int64_t successes = 0;
  double attempt_fraction = 0.0;  // attempts / slots
};

struct RewardMode {
  RewardKind kind = RewardKind::GlobalAse;
  double failure_penalty = 0.0;
};

LearnerState init_state_from_opportunity(NodeId stx, double p0, double eta, double s_clamp);

double access_probability(const LearnerState& state);

double compute_reward(const FeedbackRecord& feedback, const RewardMode& mode, double epoch_ase);

/// Score-function step s' = clamp(s + eta * reward * (action - prob_used)).
/// `action` is the empirical transmit frequency; 0/1 for a single draw.
LearnerState reinforce_update(const LearnerState& state, double action, double reward, double prob_used);

inline LearnerState reinforce_update(const LearnerState& state, bool transmitted, double reward, double prob_used) {
  return reinforce_update(state, transmitted ? 1.0 : 0.0, reward, prob_used);
}

/// Threshold whose opportunity at `interference` equals the current access probability.
AccessThreshold learned_threshold(const LearnerState& state, double interference);

}  // namespace fdrl

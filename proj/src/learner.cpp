#include "fdrl/learner.hpp"

#include <algorithm>
#include <cmath>

#include "fdrl/errors.hpp"

namespace fdrl {

LearnerState init_state_from_opportunity(NodeId stx, double p0, double eta, double s_clamp) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("init_state_from_opportunity: p0 must be in [0, 1]");
  if (!(eta >= 0.0)) throw DomainError("learning rate must be >= 0");
  if (!(s_clamp > 0.0)) throw DomainError("s_clamp must be > 0");
  double s;
  if (p0 == 0.0) {
    s = -s_clamp;
  } else if (p0 == 1.0) {
    s = s_clamp;
  } else {
    s = std::clamp(std::log(p0) - std::log1p(-p0), -s_clamp, s_clamp);
  }
  return {stx, s, eta, s_clamp};
}

double access_probability(const LearnerState& state) {
  return 1.0 / (1.0 + std::exp(-state.s));
}

double compute_reward(const FeedbackRecord& feedback, const RewardMode& mode, double epoch_ase) {
  if (mode.kind == RewardKind::GlobalAse) return epoch_ase;
  if (!feedback.transmitted) return 0.0;
  return feedback.success ? feedback.achieved_rate : -mode.failure_penalty;
}

LearnerState reinforce_update(const LearnerState& state, double action, double reward, double prob_used) {
  if (state.eta == 0.0 || reward == 0.0) return state;
  LearnerState next = state;
  next.s = std::clamp(state.s + state.eta * reward * (action - prob_used), -state.s_clamp, state.s_clamp);
  return next;
}

AccessThreshold learned_threshold(const LearnerState& state, double interference) {
  // -ln(1 - sigmoid(s)) = softplus(s), evaluated without forming 1 - sigmoid(s).
  const double s = state.s;
  const double softplus = s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
  return threshold_from_opportunity(Opportunity::from_exponent(softplus), interference);
}

}  // namespace fdrl

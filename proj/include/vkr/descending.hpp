#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/realization.hpp"

namespace vkr {

class DescendingError : public std::runtime_error {
 public:
  enum class Kind { arc_absent, multi_component, base_not_fixed, hypothesis_not_satisfied };
  DescendingError(Kind kind, std::size_t step, const std::string& what)
      : std::runtime_error(what), kind_(kind), step_(step) {}
  Kind kind() const noexcept { return kind_; }
  std::size_t step() const noexcept { return step_; }

 private:
  Kind kind_;
  std::size_t step_;
};

/// A marked point on an arc of K_1, followed through the sequence. A move
/// fixes the point iff the point's arc survives the move (it is in the move's
/// forward map); once lost the point is no longer tracked.
struct BasePoint {
  std::vector<std::optional<ArcLabel>> arc;  // per diagram, index k-1 for K_k
  std::vector<bool> fixed;                   // per step, index k-1 for step k

  std::optional<std::size_t> first_unfixed_step() const;
};

/// Throws DescendingError(arc_absent | multi_component).
BasePoint track_basepoint(const IsotopySequence& s, ArcLabel arc);

/// Crossing visits starting at the point on `base`, walking along `o`.
std::vector<Visit> visits_from(const Diagram& d, ArcLabel base, Orientation o);
/// Arcs in the order met from the point on `base` (starting with `base`).
std::vector<ArcLabel> arcs_from(const Diagram& d, ArcLabel base, Orientation o);

/// True iff every virtual crossing with a sign in `a` is first met over.
bool is_virtually_descending(const Diagram& d, const SignAssignment& a, ArcLabel base, Orientation o);

struct HypothesisCheck {
  bool holds = true;
  std::vector<std::size_t> violating_steps;  // v moves whose classical crossing is met under first
};

/// Throws DescendingError(base_not_fixed) naming the first step losing the base point.
HypothesisCheck check_vd_hypothesis(const IsotopySequence& s, ArcLabel base, Orientation o);

/// Realizes each virtual crossing when it appears so that it is first met
/// over. Throws DescendingError(hypothesis_not_satisfied) when the
/// hypothesis check fails.
SignAssignment vd_realize(const IsotopySequence& s, ArcLabel base, Orientation o);

/// Delta predicate for a v move in a virtually descending diagram: delta iff,
/// from the base point, the strand carrying only virtual crossings is met
/// second and the classical under strand first.
bool v_move_predicts_delta(const Diagram& pre, const TriangleSite& t, ArcLabel base, Orientation o);

struct LemmaViolation {
  std::size_t step = 0;
  std::string what;
};

/// Per-step checks while replaying `a` from a fixed base point: descending
/// diagrams stay descending across triangle moves, vIII triangles are valid,
/// the v-move delta predicate matches the classification, and `a` restricts
/// to one of the two realizations of every ir class.
std::vector<LemmaViolation> check_descending_lemmas(const IsotopySequence& s, const SignAssignment& a, ArcLabel base,
                                                    Orientation o);

struct BasePointChoice {
  ArcLabel arc{};
  Orientation orientation = Orientation::forward;
  bool fixed = false;
  bool hypothesis = false;
};

/// Every arc of K_1 with both orientations. Empty for multi-component sequences.
std::vector<BasePointChoice> scan_basepoints(const IsotopySequence& s);

}  // namespace vkr

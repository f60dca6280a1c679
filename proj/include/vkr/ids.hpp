#pragma once

#include <compare>
#include <functional>
#include <stdexcept>
#include <string>

namespace vkr {

/// Label of an arc (an edge of the 4-valent graph between two crossing slots,
/// or a whole zero-crossing circle).
enum class ArcLabel : int {};

/// Persistent crossing token. Never reused within an isotopy sequence.
enum class CrossingId : int {};

constexpr int raw(ArcLabel a) { return static_cast<int>(a); }
constexpr int raw(CrossingId c) { return static_cast<int>(c); }

enum class CrossingKind { classical, virtual_crossing };

enum class Side { left, right };

constexpr Side flip(Side s) { return s == Side::left ? Side::right : Side::left; }

/// Orientation used when walking a knot from a base point.
enum class Orientation { forward, reverse };

/// Raised by diagram construction and parsing.
class DiagramError : public std::runtime_error {
 public:
  enum class Kind {
    syntax,
    duplicate_arc,
    arc_count,
    orientation,
    sign_inconsistent,
    nonzero_genus,
    duplicate_crossing,
    unknown_arc,
    unknown_crossing,
  };

  DiagramError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace vkr

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vkr/sequence.hpp"

namespace vkr {

/// Parse failure in a sequence file; `line` is 1-based.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct BasePointDirective {
  ArcLabel arc{};
  Orientation orientation = Orientation::forward;
  friend bool operator==(const BasePointDirective&, const BasePointDirective&) = default;
};

/// Text form:
///   vkr 1
///   init <diagram clause>
///   move <kind> key=value ...      (any number)
///   basepoint arc=<a> orient=<fwd|rev>   (optional)
/// Blank lines and lines starting with '#' are ignored.
struct SequenceFile {
  Diagram init;
  std::vector<MoveInstruction> moves;
  std::optional<BasePointDirective> basepoint;

  friend bool operator==(const SequenceFile&, const SequenceFile&) = default;
};

SequenceFile parse_sequence_file(std::string_view text);
std::string format_sequence_file(const SequenceFile& f);
SequenceFile read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const SequenceFile& f);

SequenceFile to_file(const IsotopySequence& s);
IsotopySequence build_sequence(const SequenceFile& f);

}  // namespace vkr

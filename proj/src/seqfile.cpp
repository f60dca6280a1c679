#include "vkr/seqfile.hpp"

#include <fstream>
#include <sstream>

namespace vkr {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

BasePointDirective parse_basepoint(std::string_view rest, std::size_t line) {
  std::istringstream in{std::string(rest)};
  std::string word;
  std::optional<int> arc;
  std::optional<Orientation> orient;
  while (in >> word) {
    if (word.rfind("arc=", 0) == 0) {
      try {
        std::size_t used = 0;
        int a = std::stoi(word.substr(4), &used);
        if (used != word.size() - 4 || a <= 0) throw std::invalid_argument("bad");
        arc = a;
      } catch (const std::exception&) {
        throw FormatError(line, "bad basepoint arc '" + word + "'");
      }
    } else if (word == "orient=fwd") {
      orient = Orientation::forward;
    } else if (word == "orient=rev") {
      orient = Orientation::reverse;
    } else {
      throw FormatError(line, "unexpected basepoint field '" + word + "'");
    }
  }
  if (!arc) throw FormatError(line, "basepoint needs arc=");
  return {ArcLabel{*arc}, orient.value_or(Orientation::forward)};
}

}  // namespace

SequenceFile parse_sequence_file(std::string_view text) {
  SequenceFile f;
  bool header = false, init = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  while (std::getline(in, raw_line)) {
    ++line_no;
    auto line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "vkr 1") throw FormatError(line_no, "expected header 'vkr 1'");
      header = true;
      continue;
    }
    auto space = line.find_first_of(" \t");
    auto keyword = line.substr(0, space);
    auto rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
    if (keyword == "init") {
      if (init) throw FormatError(line_no, "duplicate init line");
      try {
        f.init = parse_diagram(rest);
      } catch (const DiagramError& e) {
        throw FormatError(line_no, e.what());
      }
      init = true;
    } else if (keyword == "move") {
      if (!init) throw FormatError(line_no, "move before init");
      try {
        f.moves.push_back(parse_move(line));
      } catch (const MoveError& e) {
        throw FormatError(line_no, e.what());
      }
    } else if (keyword == "basepoint") {
      if (f.basepoint) throw FormatError(line_no, "duplicate basepoint line");
      f.basepoint = parse_basepoint(rest, line_no);
    } else {
      throw FormatError(line_no, "unknown line '" + std::string(keyword) + "'");
    }
  }
  if (!header) throw FormatError(line_no, "missing header 'vkr 1'");
  if (!init) throw FormatError(line_no, "missing init line");
  return f;
}

std::string format_sequence_file(const SequenceFile& f) {
  std::string out = "vkr 1\ninit " + format_diagram(f.init) + "\n";
  for (const auto& m : f.moves) out += format_move(m) + "\n";
  if (f.basepoint) {
    out += "basepoint arc=" + std::to_string(raw(f.basepoint->arc)) +
           (f.basepoint->orientation == Orientation::forward ? " orient=fwd\n" : " orient=rev\n");
  }
  return out;
}

SequenceFile read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sequence_file(buf.str());
}

void write_sequence_file(const std::string& path, const SequenceFile& f) {
  std::ofstream out(path);
  if (!out) throw FormatError(0, "cannot write " + path);
  out << format_sequence_file(f);
}

SequenceFile to_file(const IsotopySequence& s) { return {s.initial(), s.instructions(), std::nullopt}; }

IsotopySequence build_sequence(const SequenceFile& f) { return IsotopySequence::build(f.init, f.moves); }

}  // namespace vkr

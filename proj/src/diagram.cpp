#include "vkr/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "vkr/union_find.hpp"

namespace vkr {

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

std::string arc_str(ArcLabel a) { return std::to_string(raw(a)); }

template <class T>
std::array<T, 4> rotated(const std::array<T, 4>& a, int start) {
  std::array<T, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = a[mod4(start + k)];
  return out;
}

}  // namespace

bool Crossing::incoming(int slot) const {
  slot = mod4(slot);
  if (is_virtual()) return slot == 0 || slot == 1;
  if (slot == 0) return true;
  if (slot == 2) return false;
  return sign > 0 ? slot == 1 : slot == 3;
}

Crossing make_classical(CrossingId id, std::array<ArcLabel, 4> ccw, std::array<bool, 4> in,
                        int under_pass_slot) {
  for (int k = 0; k < 2; ++k) {
    if (in[k] == in[k + 2]) throw std::logic_error("crossing pass must have one incoming end");
  }
  int under_in = in[mod4(under_pass_slot)] ? mod4(under_pass_slot) : mod4(under_pass_slot + 2);
  Crossing c;
  c.id = id;
  c.kind = CrossingKind::classical;
  c.slots = rotated(ccw, under_in);
  auto rin = rotated(in, under_in);
  c.sign = rin[1] ? +1 : -1;
  return c;
}

Crossing make_virtual(CrossingId id, std::array<ArcLabel, 4> ccw, std::array<bool, 4> in) {
  for (int k = 0; k < 2; ++k) {
    if (in[k] == in[k + 2]) throw std::logic_error("crossing pass must have one incoming end");
  }
  int start = 0;
  for (int s = 0; s < 4; ++s) {
    if (in[s] && in[mod4(s + 1)]) start = s;
  }
  Crossing c;
  c.id = id;
  c.kind = CrossingKind::virtual_crossing;
  c.sign = 0;
  c.slots = rotated(ccw, start);
  return c;
}

GaussCode GaussCode::canonical() const {
  GaussCode out;
  for (const auto& w : words) {
    auto best = w;
    auto cur = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    out.words.push_back(best);
  }
  std::sort(out.words.begin(), out.words.end());
  return out;
}

namespace {

// Solves for over-strand directions given fixed under-strand and virtual
// directions. Used only to tell sign errors apart from orientation errors.
bool orientation_solvable(const std::vector<Crossing>& xs) {
  struct Occ {
    int crossing;
    int slot;
  };
  std::map<ArcLabel, std::vector<Occ>> occ;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
    for (int s = 0; s < 4; ++s) occ[xs[i].slots[s]].push_back({i, s});
  }
  auto is_free = [&](const Occ& o) { return !xs[o.crossing].is_virtual() && (o.slot % 2 == 1); };
  // Free slot direction: incoming iff (slot == 1) xor flip[crossing].
  std::vector<std::vector<std::pair<int, int>>> adj(xs.size());
  std::vector<int> forced(xs.size(), -1);
  for (const auto& [label, list] : occ) {
    if (list.size() != 2) return false;
    const Occ& a = list[0];
    const Occ& b = list[1];
    bool fa = is_free(a), fb = is_free(b);
    if (!fa && !fb) {
      if (xs[a.crossing].incoming(a.slot) == xs[b.crossing].incoming(b.slot)) return false;
    } else if (fa && fb) {
      // in_a != in_b  =>  (a.slot==1)^fa ^ (b.slot==1)^fb = 1
      int parity = 1 ^ (a.slot == 1) ^ (b.slot == 1);
      if (a.crossing == b.crossing) {
        if (parity != 0) return false;
        continue;
      }
      adj[a.crossing].push_back({b.crossing, parity});
      adj[b.crossing].push_back({a.crossing, parity});
    } else {
      const Occ& f = fa ? a : b;
      const Occ& k = fa ? b : a;
      bool want_in = !xs[k.crossing].incoming(k.slot);
      int flip = static_cast<int>(want_in) ^ static_cast<int>(f.slot == 1);
      if (forced[f.crossing] >= 0 && forced[f.crossing] != flip) return false;
      forced[f.crossing] = flip;
    }
  }
  std::vector<int> value(xs.size(), -1);
  for (std::size_t root = 0; root < xs.size(); ++root) {
    if (value[root] >= 0) continue;
    // Component: try both root values.
    bool ok_any = false;
    for (int guess = 0; guess < 2 && !ok_any; ++guess) {
      std::vector<int> trial = value;
      std::deque<int> q{static_cast<int>(root)};
      trial[root] = guess;
      bool ok = true;
      while (!q.empty() && ok) {
        int u = q.front();
        q.pop_front();
        if (forced[u] >= 0 && forced[u] != trial[u]) ok = false;
        for (auto [v, parity] : adj[u]) {
          int want = trial[u] ^ parity;
          if (trial[v] < 0) {
            trial[v] = want;
            q.push_back(v);
          } else if (trial[v] != want) {
            ok = false;
          }
        }
      }
      if (ok) {
        value = trial;
        ok_any = true;
      }
    }
    if (!ok_any) return false;
  }
  return true;
}

}  // namespace

Diagram Diagram::from_parts(std::vector<Crossing> crossings, std::vector<ArcLabel> circles) {
  using K = DiagramError::Kind;
  Diagram d;
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const auto& c = crossings[i];
    if (raw(c.id) <= 0) throw DiagramError(K::syntax, "crossing ids must be positive");
    if (i > 0 && crossings[i - 1].id == c.id) {
      throw DiagramError(K::duplicate_crossing, "duplicate crossing id " + std::to_string(raw(c.id)));
    }
    if (c.is_virtual() ? c.sign != 0 : (c.sign != 1 && c.sign != -1)) {
      throw DiagramError(K::sign_inconsistent, "bad sign on crossing " + std::to_string(raw(c.id)));
    }
    for (auto a : c.slots) {
      if (raw(a) <= 0) throw DiagramError(K::syntax, "arc labels must be positive");
    }
  }
  std::sort(circles.begin(), circles.end());
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (raw(circles[i]) <= 0) throw DiagramError(K::syntax, "arc labels must be positive");
    if (i > 0 && circles[i - 1] == circles[i]) {
      throw DiagramError(K::duplicate_arc, "duplicate circle label " + arc_str(circles[i]));
    }
  }

  std::map<ArcLabel, std::vector<SlotRef>> occ;
  for (const auto& c : crossings) {
    for (int s = 0; s < 4; ++s) occ[c.slots[s]].push_back({c.id, s});
  }
  for (auto a : circles) {
    if (occ.count(a)) throw DiagramError(K::duplicate_arc, "circle label reused by a crossing: " + arc_str(a));
  }
  for (const auto& [label, list] : occ) {
    if (list.size() > 2) throw DiagramError(K::duplicate_arc, "arc " + arc_str(label) + " used more than twice");
    if (list.size() != 2) throw DiagramError(K::arc_count, "arc " + arc_str(label) + " must occur exactly twice");
  }

  d.crossings_ = std::move(crossings);
  d.circles_ = std::move(circles);

  bool consistent = true;
  for (const auto& [label, list] : occ) {
    bool in0 = d.crossing(list[0].crossing).incoming(list[0].slot);
    bool in1 = d.crossing(list[1].crossing).incoming(list[1].slot);
    if (in0 == in1) {
      consistent = false;
      break;
    }
    d.arcs_[label] = in0 ? ArcEnds{list[1], list[0]} : ArcEnds{list[0], list[1]};
  }
  if (!consistent) {
    if (orientation_solvable(d.crossings_)) {
      throw DiagramError(K::sign_inconsistent, "crossing signs disagree with strand orientations");
    }
    throw DiagramError(K::orientation, "arc orientations are inconsistent");
  }

  // Connected pieces of the drawn graph.
  std::map<CrossingId, int> index;
  for (std::size_t i = 0; i < d.crossings_.size(); ++i) index[d.crossings_[i].id] = static_cast<int>(i);
  UnionFind uf(d.crossings_.size());
  for (const auto& [label, e] : d.arcs_) uf.unite(index[e.tail.crossing], index[e.head.crossing]);
  std::map<int, int> piece_ids;
  for (const auto& [label, e] : d.arcs_) {
    int root = uf.find(index[e.tail.crossing]);
    auto [it, inserted] = piece_ids.try_emplace(root, static_cast<int>(piece_ids.size()));
    d.piece_[label] = it->second;
  }
  int next_piece = static_cast<int>(piece_ids.size());
  for (auto a : d.circles_) d.piece_[a] = next_piece++;
  d.pieces_ = next_piece;

  // Link components: strand cycles plus circles.
  std::set<ArcLabel> seen;
  int comps = static_cast<int>(d.circles_.size());
  for (const auto& [label, e] : d.arcs_) {
    if (seen.count(label)) continue;
    ++comps;
    ArcLabel cur = label;
    do {
      seen.insert(cur);
      const auto& h = d.arcs_.at(cur).head;
      cur = d.arc_at({h.crossing, mod4(h.slot + 2)});
    } while (cur != label);
  }
  d.components_ = comps;

  auto fs = d.faces();
  if (fs.genus != 0) {
    throw DiagramError(K::nonzero_genus, "rotation system has genus " + std::to_string(fs.genus));
  }
  return d;
}

const Crossing* Diagram::find(CrossingId id) const {
  auto it = std::lower_bound(crossings_.begin(), crossings_.end(), id,
                             [](const Crossing& c, CrossingId v) { return c.id < v; });
  if (it == crossings_.end() || it->id != id) return nullptr;
  return &*it;
}

const Crossing& Diagram::crossing(CrossingId id) const {
  const auto* c = find(id);
  if (!c) throw DiagramError(DiagramError::Kind::unknown_crossing, "no crossing " + std::to_string(raw(id)));
  return *c;
}

bool Diagram::has_arc(ArcLabel a) const { return arcs_.count(a) || is_circle(a); }

bool Diagram::is_circle(ArcLabel a) const { return std::binary_search(circles_.begin(), circles_.end(), a); }

const ArcEnds& Diagram::ends(ArcLabel a) const {
  auto it = arcs_.find(a);
  if (it == arcs_.end()) throw DiagramError(DiagramError::Kind::unknown_arc, "no arc " + arc_str(a));
  return it->second;
}

ArcLabel Diagram::arc_at(SlotRef s) const { return crossing(s.crossing).slots[mod4(s.slot)]; }

SlotRef Diagram::opposite_end(SlotRef s) const {
  s.slot = mod4(s.slot);
  const auto& e = ends(arc_at(s));
  return e.tail == s ? e.head : e.tail;
}

std::vector<ArcLabel> Diagram::arcs() const {
  std::vector<ArcLabel> out;
  for (const auto& [label, e] : arcs_) out.push_back(label);
  out.insert(out.end(), circles_.begin(), circles_.end());
  std::sort(out.begin(), out.end());
  return out;
}

int Diagram::max_arc_label() const {
  int m = 0;
  if (!arcs_.empty()) m = raw(arcs_.rbegin()->first);
  if (!circles_.empty()) m = std::max(m, raw(circles_.back()));
  return m;
}

std::size_t Diagram::classical_count() const {
  return static_cast<std::size_t>(
      std::count_if(crossings_.begin(), crossings_.end(), [](const Crossing& c) { return !c.is_virtual(); }));
}

std::size_t Diagram::virtual_count() const { return crossings_.size() - classical_count(); }

int Diagram::piece_of(ArcLabel a) const {
  auto it = piece_.find(a);
  if (it == piece_.end()) throw DiagramError(DiagramError::Kind::unknown_arc, "no arc " + arc_str(a));
  return it->second;
}

FaceStructure Diagram::faces() const {
  FaceStructure fs;
  std::set<SlotRef> used;
  std::map<int, int> faces_per_piece;
  std::map<int, int> vertices_per_piece;
  for (const auto& c : crossings_) vertices_per_piece[piece_.at(c.slots[0])]++;
  for (const auto& c : crossings_) {
    for (int s = 0; s < 4; ++s) {
      SlotRef start{c.id, s};
      if (used.count(start)) continue;
      Face f;
      SlotRef cur = start;
      do {
        used.insert(cur);
        ArcLabel a = arc_at(cur);
        const auto& e = arcs_.at(a);
        bool forward = e.tail == cur;
        f.sides.push_back({a, forward ? Side::left : Side::right});
        f.leaving_slots.push_back(cur);
        f.corners.push_back(cur.crossing);
        SlotRef arrive = forward ? e.head : e.tail;
        cur = {arrive.crossing, mod4(arrive.slot - 1)};
      } while (cur != start);
      faces_per_piece[piece_.at(f.sides[0].arc)]++;
      fs.faces.push_back(std::move(f));
    }
  }
  for (auto a : circles_) {
    fs.faces.push_back(Face{{{a, Side::left}}, {}, {}});
    fs.faces.push_back(Face{{{a, Side::right}}, {}, {}});
  }
  int genus = 0;
  for (const auto& [piece, v] : vertices_per_piece) {
    int chi = v - 2 * v + faces_per_piece[piece];
    genus += (2 - chi) / 2;
  }
  fs.genus = genus;
  for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i) {
    for (const auto& side : fs.faces[i].sides) fs.face_of[side] = i;
  }
  return fs;
}

std::vector<Visit> Diagram::traverse(ArcLabel start) const {
  if (is_circle(start)) return {};
  std::vector<Visit> out;
  ArcLabel cur = start;
  do {
    const auto& h = ends(cur).head;
    out.push_back({h.crossing, h.slot % 2, h.slot});
    cur = arc_at({h.crossing, mod4(h.slot + 2)});
  } while (cur != start);
  return out;
}

GaussCode Diagram::gauss_code() const {
  GaussCode g;
  std::set<ArcLabel> seen;
  for (auto a : arcs()) {
    if (seen.count(a)) continue;
    std::vector<GaussLetter> word;
    if (!is_circle(a)) {
      ArcLabel cur = a;
      do {
        seen.insert(cur);
        const auto& h = ends(cur).head;
        const auto& c = crossing(h.crossing);
        if (!c.is_virtual()) word.push_back({c.id, h.slot % 2 == 1, c.sign});
        cur = arc_at({h.crossing, mod4(h.slot + 2)});
      } while (cur != a);
    } else {
      seen.insert(a);
    }
    g.words.push_back(std::move(word));
  }
  return g;
}

bool operator==(const Diagram& a, const Diagram& b) {
  return a.crossings_ == b.crossings_ && a.circles_ == b.circles_;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

int parse_int(std::string_view s, std::string_view atom) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v <= 0) {
    throw DiagramError(DiagramError::Kind::syntax, "bad integer in atom '" + std::string(atom) + "'");
  }
  return v;
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  using K = DiagramError::Kind;
  std::vector<Crossing> xs;
  std::vector<ArcLabel> circles;
  std::istringstream in{std::string(text)};
  std::string atom;
  int position = 0;
  while (in >> atom) {
    auto open = atom.find('(');
    auto close = atom.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw DiagramError(K::syntax, "malformed atom '" + atom + "'");
    }
    std::string name = atom.substr(0, open);
    std::string_view body(atom.data() + open + 1, close - open - 1);
    std::string_view rest(atom.data() + close + 1, atom.size() - close - 1);
    std::vector<int> nums;
    while (!body.empty()) {
      auto comma = body.find(',');
      nums.push_back(parse_int(body.substr(0, comma), atom));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (name == "O") {
      if (nums.size() != 1 || !rest.empty()) throw DiagramError(K::syntax, "malformed circle '" + atom + "'");
      circles.push_back(ArcLabel{nums[0]});
      continue;
    }
    if (nums.size() != 4) throw DiagramError(K::syntax, "crossing needs four labels: '" + atom + "'");
    ++position;
    int id = position;
    if (!rest.empty()) {
      if (rest[0] != '@') throw DiagramError(K::syntax, "trailing text in '" + atom + "'");
      id = parse_int(rest.substr(1), atom);
    }
    Crossing c;
    c.id = CrossingId{id};
    for (int k = 0; k < 4; ++k) c.slots[k] = ArcLabel{nums[k]};
    if (name == "Xp" || name == "Xm") {
      c.kind = CrossingKind::classical;
      c.sign = name == "Xp" ? +1 : -1;
    } else if (name == "V") {
      c.kind = CrossingKind::virtual_crossing;
      c.sign = 0;
    } else {
      throw DiagramError(K::syntax, "unknown atom '" + atom + "'");
    }
    xs.push_back(c);
  }
  return Diagram::from_parts(std::move(xs), std::move(circles));
}

std::string format_diagram(const Diagram& d) {
  std::ostringstream out;
  bool first = true;
  int position = 0;
  for (const auto& c : d.crossings()) {
    ++position;
    if (!first) out << ' ';
    first = false;
    out << (c.is_virtual() ? "V" : (c.sign > 0 ? "Xp" : "Xm")) << '(' << raw(c.slots[0]) << ','
        << raw(c.slots[1]) << ',' << raw(c.slots[2]) << ',' << raw(c.slots[3]) << ')';
    if (raw(c.id) != position) out << '@' << raw(c.id);
  }
  for (auto a : d.circles()) {
    if (!first) out << ' ';
    first = false;
    out << "O(" << raw(a) << ')';
  }
  return out.str();
}

std::optional<std::map<ArcLabel, ArcLabel>> match_arcs(const Diagram& from, const Diagram& to) {
  if (from.crossings().size() != to.crossings().size()) return std::nullopt;
  if (from.circles().size() != to.circles().size()) return std::nullopt;
  std::map<ArcLabel, ArcLabel> m;
  std::set<ArcLabel> image;
  for (const auto& c : from.crossings()) {
    const auto* o = to.find(c.id);
    if (!o || o->kind != c.kind || o->sign != c.sign) return std::nullopt;
    for (int s = 0; s < 4; ++s) {
      auto [it, inserted] = m.try_emplace(c.slots[s], o->slots[s]);
      if (it->second != o->slots[s]) return std::nullopt;
      if (inserted && !image.insert(o->slots[s]).second) return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < from.circles().size(); ++i) m[from.circles()[i]] = to.circles()[i];
  return m;
}

}  // namespace vkr

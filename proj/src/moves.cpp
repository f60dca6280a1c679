#include "vkr/moves.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace vkr {

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

using EK = MoveError::Kind;

[[noreturn]] void fail(EK kind, const std::string& what) { throw MoveError(kind, what); }

std::string id_str(CrossingId c) { return std::to_string(raw(c)); }
std::string arc_str(ArcLabel a) { return std::to_string(raw(a)); }

struct KindName {
  MoveKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 11> kKindNames{{
    {MoveKind::I_plus, "I+"},
    {MoveKind::I_minus, "I-"},
    {MoveKind::II_plus, "II+"},
    {MoveKind::II_minus, "II-"},
    {MoveKind::III, "III"},
    {MoveKind::vI_plus, "vI+"},
    {MoveKind::vI_minus, "vI-"},
    {MoveKind::vII_plus, "vII+"},
    {MoveKind::vII_minus, "vII-"},
    {MoveKind::vIII, "vIII"},
    {MoveKind::v, "v"},
}};

// Mutable copy of a diagram while a move is being spliced in.
struct Work {
  std::map<CrossingId, Crossing> xs;
  std::vector<ArcLabel> circles;

  explicit Work(const Diagram& d) : circles(d.circles().begin(), d.circles().end()) {
    for (const auto& c : d.crossings()) xs.emplace(c.id, c);
  }

  void set(SlotRef s, ArcLabel a) { xs.at(s.crossing).slots[mod4(s.slot)] = a; }

  void drop_circle(ArcLabel a) { circles.erase(std::remove(circles.begin(), circles.end(), a), circles.end()); }

  Diagram build() const {
    std::vector<Crossing> list;
    for (const auto& [id, c] : xs) list.push_back(c);
    return Diagram::from_parts(std::move(list), circles);
  }
};

std::map<ArcLabel, ArcLabel> identity_forward(const Diagram& d) {
  std::map<ArcLabel, ArcLabel> f;
  for (auto a : d.arcs()) f[a] = a;
  return f;
}

// In-slot of the given pass.
int in_slot(const Crossing& c, int pass) { return c.incoming(pass) ? pass : pass + 2; }
int out_slot(const Crossing& c, int pass) { return c.incoming(pass) ? pass + 2 : pass; }

int under_in_for_sign(const std::array<bool, 4>& in, int sign) {
  for (int s = 0; s < 4; ++s) {
    if (in[s] && in[mod4(s + sign)]) return s;
  }
  throw std::logic_error("no incoming slot pair for sign");
}

Crossing make_crossing(bool virt, CrossingId id, const std::array<ArcLabel, 4>& ccw, const std::array<bool, 4>& in,
                       int under_slot) {
  return virt ? make_virtual(id, ccw, in) : make_classical(id, ccw, in, under_slot);
}

void require_fresh(const Diagram& d, CrossingId c) {
  if (raw(c) <= 0) fail(EK::bad_instruction, "crossing ids must be positive");
  if (d.find(c)) fail(EK::id_in_use, "crossing id " + id_str(c) + " already in use");
}

const Crossing& require_crossing(const Diagram& d, CrossingId c) {
  const auto* x = d.find(c);
  if (!x) fail(EK::unknown_id, "no crossing " + id_str(c));
  return *x;
}

// ---------------------------------------------------------------------------
// Removal of crossings with strand re-joining.

struct Removal {
  Work work;
  std::map<ArcLabel, ArcLabel> forward;
};

Removal remove_crossings(const Diagram& d, const std::vector<CrossingId>& removed, const std::set<ArcLabel>& consumed) {
  Removal r{Work(d), {}};
  std::set<CrossingId> gone(removed.begin(), removed.end());
  for (auto c : removed) r.work.xs.erase(c);
  for (auto a : d.arcs()) {
    if (d.is_circle(a)) {
      r.forward[a] = a;
      continue;
    }
    const auto& e = d.ends(a);
    if (!gone.count(e.tail.crossing) && !gone.count(e.head.crossing)) r.forward[a] = a;
  }

  int next = d.max_arc_label() + 1;
  std::set<std::pair<CrossingId, int>> done;
  for (auto c : removed) {
    for (int pass = 0; pass < 2; ++pass) {
      if (done.count({c, pass})) continue;
      // Walk back to the first removed pass of this strand segment.
      std::pair<CrossingId, int> start{c, pass};
      bool cycle = false;
      while (true) {
        const auto& x = d.crossing(start.first);
        ArcLabel in_arc = x.slots[in_slot(x, start.second)];
        SlotRef tail = d.ends(in_arc).tail;
        if (!gone.count(tail.crossing)) break;
        std::pair<CrossingId, int> prev{tail.crossing, tail.slot % 2};
        if (prev == std::pair<CrossingId, int>{c, pass}) {
          cycle = true;
          break;
        }
        start = prev;
      }
      ArcLabel label{next++};
      std::vector<ArcLabel> path;
      SlotRef first_tail{}, last_head{};
      {
        const auto& x = d.crossing(start.first);
        ArcLabel in_arc = x.slots[in_slot(x, start.second)];
        if (!cycle) {
          path.push_back(in_arc);
          first_tail = d.ends(in_arc).tail;
        }
      }
      auto cur = start;
      while (true) {
        done.insert(cur);
        const auto& x = d.crossing(cur.first);
        ArcLabel out_arc = x.slots[out_slot(x, cur.second)];
        path.push_back(out_arc);
        SlotRef head = d.ends(out_arc).head;
        if (!gone.count(head.crossing)) {
          last_head = head;
          break;
        }
        std::pair<CrossingId, int> nxt{head.crossing, head.slot % 2};
        if (nxt == start) break;
        cur = nxt;
      }
      if (cycle) {
        r.work.circles.push_back(label);
      } else {
        r.work.set(first_tail, label);
        r.work.set(last_head, label);
      }
      for (auto a : path) {
        if (!consumed.count(a)) r.forward[a] = label;
      }
    }
  }
  return r;
}

// Slot of the kink loop at `c`: an arc joining two adjacent slots of c.
std::optional<int> kink_loop_slot(const Diagram& d, const Crossing& c) {
  for (int s = 0; s < 4; ++s) {
    if (!c.incoming(s)) continue;
    ArcLabel a = c.slots[s];
    const auto& e = d.ends(a);
    if (e.tail.crossing != c.id) continue;
    int diff = mod4(e.tail.slot - s);
    if (diff == 1 || diff == 3) return s;  // returns the head (incoming) slot
  }
  return std::nullopt;
}

// True when an arc outside the bigon joins its two corners, so removing the
// pair merges both strands into a single arc.
bool pair_rejoins(const Diagram& d, const Face& bigon) {
  CrossingId a = bigon.corners[0], b = bigon.corners[1];
  for (auto c : {a, b}) {
    for (auto arc : d.crossing(c).slots) {
      if (arc == bigon.sides[0].arc || arc == bigon.sides[1].arc) continue;
      const auto& e = d.ends(arc);
      bool tail_in = e.tail.crossing == a || e.tail.crossing == b;
      bool head_in = e.head.crossing == a || e.head.crossing == b;
      if (tail_in && head_in) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

MoveOutcome loop_creation(const Diagram& d, const MoveInstruction& m) {
  bool virt = m.kind == MoveKind::vI_plus;
  if (m.arcs.size() != 1 || m.ids.size() != 1 || !m.side) fail(EK::bad_instruction, "loop creation needs arc, side, id");
  if (!virt && m.sign != 1 && m.sign != -1) fail(EK::bad_instruction, "I+ needs sign");
  ArcLabel a = m.arcs[0];
  if (!d.has_arc(a)) fail(EK::site_not_found, "no arc " + arc_str(a));
  CrossingId c = m.ids[0];
  require_fresh(d, c);

  int top = d.max_arc_label();
  bool circle = d.is_circle(a);
  ArcLabel first{top + 1}, loop{top + 2};
  ArcLabel last = circle ? first : ArcLabel{top + 3};
  Work w(d);
  if (circle) {
    w.drop_circle(a);
  } else {
    const auto& e = d.ends(a);
    w.set(e.tail, first);
    w.set(e.head, last);
  }
  std::array<ArcLabel, 4> ccw{};
  std::array<bool, 4> in{};
  if (*m.side == Side::right) {
    ccw = {first, loop, loop, last};
    in = {true, true, false, false};
  } else {
    ccw = {first, last, loop, loop};
    in = {true, false, false, true};
  }
  int under = virt ? 0 : under_in_for_sign(in, m.sign);
  w.xs.emplace(c, make_crossing(virt, c, ccw, in, under));

  MoveOutcome out;
  out.after = w.build();
  out.event.created = {c};
  out.forward = identity_forward(d);
  out.forward[a] = first;
  return out;
}

MoveOutcome loop_removal(const Diagram& d, const MoveInstruction& m) {
  bool virt = m.kind == MoveKind::vI_minus;
  if (m.ids.size() != 1) fail(EK::bad_instruction, "loop removal needs one id");
  const auto& c = require_crossing(d, m.ids[0]);
  if (c.is_virtual() != virt) fail(EK::pattern_mismatch, "crossing " + id_str(c.id) + " has the wrong kind for " + std::string(to_string(m.kind)));
  auto head_slot = kink_loop_slot(d, c);
  if (!head_slot) fail(EK::site_not_found, "crossing " + id_str(c.id) + " bounds no monogon");
  ArcLabel loop = c.slots[*head_slot];
  auto r = remove_crossings(d, {c.id}, {loop});
  MoveOutcome out;
  out.after = r.work.build();
  out.event.removed = {c.id};
  out.forward = std::move(r.forward);
  return out;
}

// Finger move of arcs[0] across arcs[1]. Local picture for sides.first == left:
// arcs[0] runs east along y=0, arcs[1] runs along y=1, the finger rises
// through x=1 (first crossing) and comes back down through x=2. The right-side
// case is its mirror image.
MoveOutcome pair_creation(const Diagram& d, const MoveInstruction& m) {
  bool virt = m.kind == MoveKind::vII_plus;
  if (m.arcs.size() != 2 || m.ids.size() != 2) fail(EK::bad_instruction, "pair creation needs two arcs and two ids");
  if (!virt && m.over != 1 && m.over != 2) fail(EK::bad_instruction, "II+ needs over=1 or over=2");
  ArcLabel a1 = m.arcs[0], a2 = m.arcs[1];
  if (a1 == a2) fail(EK::pattern_mismatch, "pair creation needs two distinct arcs");
  for (auto a : {a1, a2}) {
    if (!d.has_arc(a)) fail(EK::site_not_found, "no arc " + arc_str(a));
  }
  CrossingId c1 = m.ids[0], c2 = m.ids[1];
  if (c1 == c2) fail(EK::bad_instruction, "fresh ids must differ");
  require_fresh(d, c1);
  require_fresh(d, c2);

  auto fs = d.faces();
  std::optional<std::pair<Side, Side>> sides;
  auto shares = [&](Side x, Side y) { return fs.face_of.at({a1, x}) == fs.face_of.at({a2, y}); };
  if (m.sides) {
    if (shares(m.sides->first, m.sides->second)) sides = m.sides;
  } else {
    for (auto x : {Side::left, Side::right}) {
      for (auto y : {Side::left, Side::right}) {
        if (!sides && shares(x, y)) sides = std::pair{x, y};
      }
    }
  }
  if (!sides) fail(EK::site_not_found, "arcs " + arc_str(a1) + " and " + arc_str(a2) + " do not co-bound a face");

  bool mirror = sides->first == Side::right;
  bool parallel = sides->first != sides->second;

  // Strand order for fresh labels: under strand first.
  int top = d.max_arc_label();
  std::array<ArcLabel, 2> p{}, q{}, r{};
  std::array<int, 2> order = (!virt && m.over == 1) ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1};
  std::array<ArcLabel, 2> arcs{a1, a2};
  for (int k : order) {
    p[k] = ArcLabel{++top};
    q[k] = ArcLabel{++top};
    r[k] = d.is_circle(arcs[k]) ? p[k] : ArcLabel{++top};
  }

  Work w(d);
  for (int k = 0; k < 2; ++k) {
    if (d.is_circle(arcs[k])) {
      w.drop_circle(arcs[k]);
    } else {
      const auto& e = d.ends(arcs[k]);
      w.set(e.tail, p[k]);
      w.set(e.head, r[k]);
    }
  }

  enum Dir { E = 0, N = 1, W = 2, S = 3 };
  struct Entry {
    Dir dir;
    ArcLabel arc;
    bool in;
  };
  auto build = [&](CrossingId id, std::array<Entry, 4> entries, int under_strand_dir) {
    std::array<ArcLabel, 4> ccw{};
    std::array<bool, 4> in{};
    for (const auto& en : entries) {
      int slot = en.dir;
      if (mirror && (slot == N || slot == S)) slot = slot == N ? S : N;
      ccw[slot] = en.arc;
      in[slot] = en.in;
    }
    int under = under_strand_dir;
    if (mirror && (under == N || under == S)) under = under == N ? S : N;
    return make_crossing(virt, id, ccw, in, under);
  };

  // Under strand slot: arcs[1] lies east-west, arcs[0] north-south.
  int under_dir = (!virt && m.over == 1) ? E : N;
  Crossing x1, x2;
  if (parallel) {
    x1 = build(c1, {{{S, p[0], true}, {N, q[0], false}, {W, p[1], true}, {E, q[1], false}}}, under_dir);
    x2 = build(c2, {{{N, q[0], true}, {S, r[0], false}, {W, q[1], true}, {E, r[1], false}}}, under_dir);
  } else {
    x1 = build(c1, {{{S, p[0], true}, {N, q[0], false}, {E, q[1], true}, {W, r[1], false}}}, under_dir);
    x2 = build(c2, {{{N, q[0], true}, {S, r[0], false}, {E, p[1], true}, {W, q[1], false}}}, under_dir);
  }
  w.xs.emplace(c1, x1);
  w.xs.emplace(c2, x2);

  MoveOutcome out;
  out.after = w.build();
  out.event.created = {c1, c2};
  out.event.paired = true;
  out.bigon = BigonSite{{c1, c2}};
  out.forward = identity_forward(d);
  out.forward[a1] = p[0];
  out.forward[a2] = p[1];
  return out;
}

MoveOutcome pair_removal(const Diagram& d, const MoveInstruction& m) {
  bool virt = m.kind == MoveKind::vII_minus;
  if (m.ids.size() != 2) fail(EK::bad_instruction, "pair removal needs two ids");
  const auto& x1 = require_crossing(d, m.ids[0]);
  const auto& x2 = require_crossing(d, m.ids[1]);
  if (x1.id == x2.id) fail(EK::bad_instruction, "pair removal needs two distinct ids");
  if (x1.is_virtual() != virt || x2.is_virtual() != virt) {
    fail(EK::pattern_mismatch, "crossings have the wrong kind for " + std::string(to_string(m.kind)));
  }
  auto face = bigon_face(d, x1.id, x2.id);
  if (!face) fail(EK::site_not_found, "crossings " + id_str(x1.id) + "," + id_str(x2.id) + " bound no bigon");
  if (!virt && classify_bigon(x1.sign, x2.sign) == BigonVerdict::gamma) {
    fail(EK::would_be_gamma, "crossings " + id_str(x1.id) + "," + id_str(x2.id) + " have equal signs");
  }
  std::set<ArcLabel> consumed{face->sides[0].arc, face->sides[1].arc};
  auto r = remove_crossings(d, {x1.id, x2.id}, consumed);
  MoveOutcome out;
  out.after = r.work.build();
  out.event.removed = {x1.id, x2.id};
  out.event.paired = true;
  out.bigon = BigonSite{{x1.id, x2.id}};
  out.forward = std::move(r.forward);
  return out;
}

TriangleSite site_from_face(const Diagram& d, const Face& f) {
  TriangleSite t;
  for (int k = 0; k < 3; ++k) {
    t.crossings[k] = f.corners[k];
    t.edges[k] = d.arc_at(f.leaving_slots[k]);
    int pass = f.leaving_slots[k].slot % 2;
    t.pass_strand[k][pass] = k;
    t.pass_strand[k][1 - pass] = (k + 2) % 3;
  }
  return t;
}

// Classical crossings always have pass 1 over.
constexpr std::array<int, 3> kClassicalOver{1, 1, 1};

MoveOutcome triangle_move(const Diagram& d, const MoveInstruction& m) {
  if (m.ids.size() != 3) fail(EK::bad_instruction, "triangle moves need three ids");
  std::array<CrossingId, 3> ids{m.ids[0], m.ids[1], m.ids[2]};
  int virtuals = 0;
  for (auto c : ids) virtuals += require_crossing(d, c).is_virtual() ? 1 : 0;
  if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2]) fail(EK::bad_instruction, "triangle ids must differ");

  auto faces = triangle_faces(d, ids);
  if (m.edge) {
    std::erase_if(faces, [&](const Face& f) {
      return std::none_of(f.sides.begin(), f.sides.end(), [&](const ArcSide& s) { return s.arc == *m.edge; });
    });
  }
  if (faces.empty()) fail(EK::site_not_found, "crossings do not bound a triangle");
  if (virtuals == 1) fail(EK::forbidden_move, "triangle with one virtual and two classical crossings is a forbidden move");
  switch (m.kind) {
    case MoveKind::III:
      if (virtuals != 0) fail(EK::pattern_mismatch, "III needs three classical crossings");
      break;
    case MoveKind::vIII:
      if (virtuals != 3) fail(EK::pattern_mismatch, "vIII needs three virtual crossings");
      break;
    default:
      if (virtuals != 2 || d.crossing(ids[2]).is_virtual()) {
        fail(EK::pattern_mismatch, "v needs two virtual crossings followed by the classical one");
      }
      break;
  }

  const Face& f = faces.front();
  TriangleSite site = site_from_face(d, f);
  std::array<int, 3> edge_order{0, 1, 2};
  if (m.kind == MoveKind::III) {
    auto verdict = classify_triangle(site, kClassicalOver);
    if (verdict.delta) fail(EK::would_be_delta, "triangle over-relation is cyclic");
    edge_order = {verdict.order[2], verdict.order[1], verdict.order[0]};
  }

  int top = d.max_arc_label();
  std::array<ArcLabel, 3> fresh{};
  for (int k : edge_order) fresh[k] = ArcLabel{++top};

  Work w(d);
  std::map<SlotRef, ArcLabel> writes;
  for (int k = 0; k < 3; ++k) {
    const auto& e = d.ends(site.edges[k]);
    SlotRef u = e.tail, v = e.head;
    SlotRef u_in{u.crossing, mod4(u.slot + 2)}, v_out{v.crossing, mod4(v.slot + 2)};
    ArcLabel pre = d.arc_at(u_in);
    ArcLabel post = d.arc_at(v_out);
    writes[u_in] = fresh[k];
    writes[u] = post;
    writes[v] = pre;
    writes[v_out] = fresh[k];
  }
  if (writes.size() != 12) throw std::logic_error("triangle rewrite touched a slot twice");
  for (const auto& [slot, arc] : writes) w.set(slot, arc);

  MoveOutcome out;
  out.after = w.build();
  out.triangle = site;
  out.new_triangle_edges = fresh;
  out.forward = identity_forward(d);
  for (auto e : site.edges) out.forward.erase(e);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(MoveKind k) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == k) return kn.name;
  }
  return "?";
}

std::optional<MoveKind> parse_move_kind(std::string_view s) {
  for (const auto& kn : kKindNames) {
    if (kn.name == s) return kn.kind;
  }
  return std::nullopt;
}

bool is_virtual_move(MoveKind k) {
  switch (k) {
    case MoveKind::vI_plus:
    case MoveKind::vI_minus:
    case MoveKind::vII_plus:
    case MoveKind::vII_minus:
    case MoveKind::vIII:
    case MoveKind::v:
      return true;
    default:
      return false;
  }
}

bool is_creation(MoveKind k) {
  return k == MoveKind::I_plus || k == MoveKind::II_plus || k == MoveKind::vI_plus || k == MoveKind::vII_plus;
}

bool is_removal(MoveKind k) {
  return k == MoveKind::I_minus || k == MoveKind::II_minus || k == MoveKind::vI_minus || k == MoveKind::vII_minus;
}

bool is_triangle_move(MoveKind k) { return k == MoveKind::III || k == MoveKind::vIII || k == MoveKind::v; }

bool is_loop_move(MoveKind k) {
  return k == MoveKind::I_plus || k == MoveKind::I_minus || k == MoveKind::vI_plus || k == MoveKind::vI_minus;
}

bool is_pair_move(MoveKind k) {
  return k == MoveKind::II_plus || k == MoveKind::II_minus || k == MoveKind::vII_plus || k == MoveKind::vII_minus;
}

MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::I_plus: return MoveKind::I_minus;
    case MoveKind::I_minus: return MoveKind::I_plus;
    case MoveKind::II_plus: return MoveKind::II_minus;
    case MoveKind::II_minus: return MoveKind::II_plus;
    case MoveKind::vI_plus: return MoveKind::vI_minus;
    case MoveKind::vI_minus: return MoveKind::vI_plus;
    case MoveKind::vII_plus: return MoveKind::vII_minus;
    case MoveKind::vII_minus: return MoveKind::vII_plus;
    default: return k;
  }
}

MoveKind virtualized_kind(MoveKind k) {
  switch (k) {
    case MoveKind::I_plus: return MoveKind::vI_plus;
    case MoveKind::I_minus: return MoveKind::vI_minus;
    case MoveKind::II_plus: return MoveKind::vII_plus;
    case MoveKind::II_minus: return MoveKind::vII_minus;
    default: return k;
  }
}

std::string_view to_string(MoveError::Kind k) {
  switch (k) {
    case EK::bad_instruction: return "bad-instruction";
    case EK::site_not_found: return "site-not-found";
    case EK::pattern_mismatch: return "pattern-mismatch";
    case EK::forbidden_move: return "forbidden-move";
    case EK::would_be_delta: return "would-be-delta";
    case EK::would_be_gamma: return "would-be-gamma";
    case EK::unknown_id: return "unknown-id";
    case EK::id_in_use: return "id-in-use";
  }
  return "?";
}

int TriangleSite::index_of(CrossingId c) const {
  for (int k = 0; k < 3; ++k) {
    if (crossings[k] == c) return k;
  }
  return -1;
}

TriangleVerdict classify_triangle(const std::array<OverUnder, 3>& relation) {
  std::set<std::pair<int, int>> pairs;
  std::array<int, 3> wins{};
  for (const auto& r : relation) {
    if (r.over == r.under || r.over < 0 || r.over > 2 || r.under < 0 || r.under > 2) {
      fail(EK::site_not_found, "not a triangle: bad strand pair");
    }
    pairs.insert({std::min(r.over, r.under), std::max(r.over, r.under)});
    wins[r.over]++;
  }
  if (pairs.size() != 3) fail(EK::site_not_found, "not a triangle: strands must meet pairwise once");
  TriangleVerdict v;
  if (wins[0] == 1 && wins[1] == 1 && wins[2] == 1) {
    v.delta = true;
    return v;
  }
  v.order = {0, 1, 2};
  std::sort(v.order.begin(), v.order.end(), [&](int a, int b) { return wins[a] > wins[b]; });
  return v;
}

TriangleVerdict classify_triangle(const TriangleSite& site, const std::array<int, 3>& over_pass) {
  std::array<OverUnder, 3> rel{};
  for (int k = 0; k < 3; ++k) {
    rel[k] = {site.pass_strand[k][over_pass[k]], site.pass_strand[k][1 - over_pass[k]]};
  }
  return classify_triangle(rel);
}

BigonVerdict classify_bigon(int sign1, int sign2) {
  if ((sign1 != 1 && sign1 != -1) || (sign2 != 1 && sign2 != -1)) {
    fail(EK::pattern_mismatch, "bigon classification needs two signed crossings");
  }
  return sign1 == sign2 ? BigonVerdict::gamma : BigonVerdict::valid_ii;
}

std::vector<Face> triangle_faces(const Diagram& d, const std::array<CrossingId, 3>& ids) {
  std::vector<Face> out;
  std::set<CrossingId> want(ids.begin(), ids.end());
  if (want.size() != 3) return out;
  for (auto& f : d.faces().faces) {
    if (f.corners.size() != 3) continue;
    std::set<CrossingId> got(f.corners.begin(), f.corners.end());
    if (got == want) out.push_back(std::move(f));
  }
  return out;
}

std::optional<Face> bigon_face(const Diagram& d, CrossingId a, CrossingId b) {
  if (a == b) return std::nullopt;
  for (auto& f : d.faces().faces) {
    if (f.corners.size() != 2) continue;
    if ((f.corners[0] == a && f.corners[1] == b) || (f.corners[0] == b && f.corners[1] == a)) return std::move(f);
  }
  return std::nullopt;
}

MoveOutcome apply_move(const Diagram& d, const MoveInstruction& m) {
  switch (m.kind) {
    case MoveKind::I_plus:
    case MoveKind::vI_plus:
      return loop_creation(d, m);
    case MoveKind::I_minus:
    case MoveKind::vI_minus:
      return loop_removal(d, m);
    case MoveKind::II_plus:
    case MoveKind::vII_plus:
      return pair_creation(d, m);
    case MoveKind::II_minus:
    case MoveKind::vII_minus:
      return pair_removal(d, m);
    case MoveKind::III:
    case MoveKind::vIII:
    case MoveKind::v:
      return triangle_move(d, m);
  }
  fail(EK::bad_instruction, "unknown move kind");
}

MoveInstruction inverse_instruction(const Diagram& before, const MoveInstruction& m, const MoveOutcome& out) {
  MoveInstruction inv;
  inv.kind = inverse_kind(m.kind);
  if (is_creation(m.kind)) {
    inv.ids = out.event.created;
    return inv;
  }
  if (is_triangle_move(m.kind)) {
    inv.ids = m.ids;
    inv.edge = out.new_triangle_edges[0];
    return inv;
  }
  if (is_loop_move(m.kind)) {
    const auto& c = before.crossing(m.ids[0]);
    int head = *kink_loop_slot(before, c);
    ArcLabel loop = c.slots[head];
    int tail = before.ends(loop).tail.slot;
    int entry = mod4(tail + 2);
    inv.arcs = {out.forward.at(c.slots[entry])};
    inv.side = mod4(entry + 1) == head ? Side::right : Side::left;
    inv.ids = {c.id};
    if (!c.is_virtual()) inv.sign = c.sign;
    return inv;
  }
  // Pair removal: rebuild the finger move.
  auto face = *bigon_face(before, m.ids[0], m.ids[1]);
  if (pair_rejoins(before, face)) {
    fail(EK::pattern_mismatch, "no inverse instruction: removing the pair joins both strands into one arc");
  }
  const ArcSide& s1 = face.sides[0];
  const ArcSide& s2 = face.sides[1];
  const auto& e1 = before.ends(s1.arc);
  const auto& e2 = before.ends(s2.arc);
  ArcLabel pre1 = before.arc_at({e1.tail.crossing, e1.tail.slot + 2});
  ArcLabel pre2 = before.arc_at({e2.tail.crossing, e2.tail.slot + 2});
  inv.arcs = {out.forward.at(pre1), out.forward.at(pre2)};
  inv.sides = std::pair{flip(s1.side), flip(s2.side)};
  inv.ids = {e1.tail.crossing, e1.head.crossing};
  const auto& first = before.crossing(e1.tail.crossing);
  if (!first.is_virtual()) inv.over = e1.tail.slot % 2 == 1 ? 1 : 2;
  return inv;
}

// ---------------------------------------------------------------------------
// Text form of instructions

namespace {

char side_char(Side s) { return s == Side::left ? 'L' : 'R'; }

std::optional<Side> parse_side(char ch) {
  if (ch == 'L') return Side::left;
  if (ch == 'R') return Side::right;
  return std::nullopt;
}

std::vector<int> parse_list(std::string_view v, const std::string& key) {
  std::vector<int> out;
  while (true) {
    auto comma = v.find(',');
    auto part = v.substr(0, comma);
    int x = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (ec != std::errc{} || p != part.data() + part.size() || x <= 0) {
      fail(EK::bad_instruction, "bad value for " + key);
    }
    out.push_back(x);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(raw(xs[i]));
  }
  return s;
}

}  // namespace

MoveInstruction parse_move(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string word;
  if (!(in >> word) || word != "move") fail(EK::bad_instruction, "instruction must start with 'move'");
  if (!(in >> word)) fail(EK::bad_instruction, "missing move kind");
  auto kind = parse_move_kind(word);
  if (!kind) fail(EK::bad_instruction, "unknown move kind '" + word + "'");
  MoveInstruction m;
  m.kind = *kind;
  std::set<std::string> keys;
  while (in >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos) fail(EK::bad_instruction, "expected key=value, got '" + word + "'");
    std::string key = word.substr(0, eq);
    std::string value = word.substr(eq + 1);
    if (!keys.insert(key).second) fail(EK::bad_instruction, "repeated key " + key);
    if (key == "arc" || key == "arcs") {
      for (int x : parse_list(value, key)) m.arcs.push_back(ArcLabel{x});
    } else if (key == "id" || key == "ids") {
      for (int x : parse_list(value, key)) m.ids.push_back(CrossingId{x});
    } else if (key == "side") {
      if (value.size() != 1 || !parse_side(value[0])) fail(EK::bad_instruction, "side must be L or R");
      m.side = parse_side(value[0]);
    } else if (key == "sides") {
      if (value.size() != 2 || !parse_side(value[0]) || !parse_side(value[1])) {
        fail(EK::bad_instruction, "sides must be two of L/R");
      }
      m.sides = std::pair{*parse_side(value[0]), *parse_side(value[1])};
    } else if (key == "sign") {
      if (value != "+" && value != "-") fail(EK::bad_instruction, "sign must be + or -");
      m.sign = value == "+" ? 1 : -1;
    } else if (key == "over") {
      if (value != "1" && value != "2") fail(EK::bad_instruction, "over must be 1 or 2");
      m.over = value == "1" ? 1 : 2;
    } else if (key == "edge") {
      auto xs = parse_list(value, key);
      if (xs.size() != 1) fail(EK::bad_instruction, "edge takes one arc");
      m.edge = ArcLabel{xs[0]};
    } else {
      fail(EK::bad_instruction, "unknown key " + key);
    }
  }

  auto allow = [&](std::set<std::string> allowed, std::set<std::string> required) {
    for (const auto& k : keys) {
      if (!allowed.count(k)) fail(EK::bad_instruction, "key " + k + " not valid for " + std::string(to_string(m.kind)));
    }
    for (const auto& k : required) {
      if (!keys.count(k)) fail(EK::bad_instruction, "missing " + k + " for " + std::string(to_string(m.kind)));
    }
  };
  switch (m.kind) {
    case MoveKind::I_plus:
      allow({"arc", "side", "sign", "id"}, {"arc", "side", "sign", "id"});
      break;
    case MoveKind::vI_plus:
      allow({"arc", "side", "id"}, {"arc", "side", "id"});
      break;
    case MoveKind::I_minus:
    case MoveKind::vI_minus:
      allow({"id"}, {"id"});
      break;
    case MoveKind::II_plus:
      allow({"arcs", "sides", "over", "ids"}, {"arcs", "over", "ids"});
      break;
    case MoveKind::vII_plus:
      allow({"arcs", "sides", "ids"}, {"arcs", "ids"});
      break;
    case MoveKind::II_minus:
    case MoveKind::vII_minus:
      allow({"ids"}, {"ids"});
      break;
    default:
      allow({"ids", "edge"}, {"ids"});
      break;
  }
  std::size_t want_ids = is_loop_move(m.kind) ? 1 : is_pair_move(m.kind) ? 2 : 3;
  if (m.ids.size() != want_ids) fail(EK::bad_instruction, "wrong number of ids");
  std::size_t want_arcs = m.kind == MoveKind::I_plus || m.kind == MoveKind::vI_plus ? 1
                          : m.kind == MoveKind::II_plus || m.kind == MoveKind::vII_plus ? 2
                                                                                          : 0;
  if (m.arcs.size() != want_arcs) fail(EK::bad_instruction, "wrong number of arcs");
  return m;
}

std::string format_move(const MoveInstruction& m) {
  std::string s = "move ";
  s += to_string(m.kind);
  switch (m.kind) {
    case MoveKind::I_plus:
    case MoveKind::vI_plus:
      s += " arc=" + join(m.arcs);
      s += std::string(" side=") + side_char(m.side.value_or(Side::left));
      if (m.kind == MoveKind::I_plus) s += m.sign > 0 ? " sign=+" : " sign=-";
      s += " id=" + join(m.ids);
      break;
    case MoveKind::II_plus:
    case MoveKind::vII_plus:
      s += " arcs=" + join(m.arcs);
      if (m.sides) s += std::string(" sides=") + side_char(m.sides->first) + side_char(m.sides->second);
      if (m.kind == MoveKind::II_plus) s += " over=" + std::to_string(m.over);
      s += " ids=" + join(m.ids);
      break;
    case MoveKind::I_minus:
    case MoveKind::vI_minus:
      s += " id=" + join(m.ids);
      break;
    default:
      s += " ids=" + join(m.ids);
      if (m.edge) s += " edge=" + std::to_string(raw(*m.edge));
      break;
  }
  return s;
}

// ---------------------------------------------------------------------------

std::vector<MoveInstruction> legal_moves(const Diagram& d, CrossingId next_id, LegalMoveOptions opts) {
  std::vector<MoveInstruction> out;
  CrossingId id2{raw(next_id) + 1};
  auto arcs = d.arcs();
  for (auto a : arcs) {
    for (auto side : {Side::left, Side::right}) {
      if (opts.virtual_moves) out.push_back({MoveKind::vI_plus, {a}, {next_id}, side, {}, 0, 0, {}});
      if (opts.classical) {
        for (int sign : {1, -1}) out.push_back({MoveKind::I_plus, {a}, {next_id}, side, {}, sign, 0, {}});
      }
    }
  }
  auto fs = d.faces();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      for (auto x : {Side::left, Side::right}) {
        for (auto y : {Side::left, Side::right}) {
          if (fs.face_of.at({arcs[i], x}) != fs.face_of.at({arcs[j], y})) continue;
          std::pair<Side, Side> sides{x, y};
          if (opts.virtual_moves) out.push_back({MoveKind::vII_plus, {arcs[i], arcs[j]}, {next_id, id2}, {}, sides, 0, 0, {}});
          if (opts.classical) {
            for (int over : {1, 2}) {
              out.push_back({MoveKind::II_plus, {arcs[i], arcs[j]}, {next_id, id2}, {}, sides, 0, over, {}});
            }
          }
        }
      }
    }
  }
  for (const auto& c : d.crossings()) {
    if (!kink_loop_slot(d, c)) continue;
    if (c.is_virtual() ? opts.virtual_moves : opts.classical) {
      out.push_back({c.is_virtual() ? MoveKind::vI_minus : MoveKind::I_minus, {}, {c.id}, {}, {}, 0, 0, {}});
    }
  }
  std::set<std::pair<CrossingId, CrossingId>> seen_pairs;
  for (const auto& f : fs.faces) {
    if (f.corners.size() == 2 && f.corners[0] != f.corners[1]) {
      const auto& a = d.crossing(std::min(f.corners[0], f.corners[1]));
      const auto& b = d.crossing(std::max(f.corners[0], f.corners[1]));
      if (pair_rejoins(d, f) || !seen_pairs.insert({a.id, b.id}).second) continue;
      if (a.is_virtual() && b.is_virtual() && opts.virtual_moves) {
        out.push_back({MoveKind::vII_minus, {}, {a.id, b.id}, {}, {}, 0, 0, {}});
      } else if (!a.is_virtual() && !b.is_virtual() && opts.classical && a.sign != b.sign) {
        out.push_back({MoveKind::II_minus, {}, {a.id, b.id}, {}, {}, 0, 0, {}});
      }
    }
    if (f.corners.size() == 3) {
      std::set<CrossingId> distinct(f.corners.begin(), f.corners.end());
      if (distinct.size() != 3) continue;
      std::vector<CrossingId> virt, cls;
      for (auto c : f.corners) (d.crossing(c).is_virtual() ? virt : cls).push_back(c);
      std::sort(virt.begin(), virt.end());
      std::sort(cls.begin(), cls.end());
      MoveInstruction m;
      m.edge = f.sides[0].arc;
      if (virt.size() == 3 && opts.virtual_moves) {
        m.kind = MoveKind::vIII;
        m.ids = virt;
      } else if (virt.size() == 2 && opts.virtual_moves) {
        m.kind = MoveKind::v;
        m.ids = {virt[0], virt[1], cls[0]};
      } else if (virt.empty() && opts.classical) {
        TriangleSite site = site_from_face(d, f);
        if (classify_triangle(site, kClassicalOver).delta) continue;
        m.kind = MoveKind::III;
        m.ids = cls;
      } else {
        continue;
      }
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace vkr

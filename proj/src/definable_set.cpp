#include "seqwit/definable_set.hpp"

#include <algorithm>
#include <numeric>

namespace seqwit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw Error(ErrorCode::InvalidDescriptor, msg);
}

// Fold a finite set of depths into an existing tail: on-progression
// depths clear exclusions, on-residue depths below the start lower it,
// anything off-residue has no single-component normal form.
void merge_chunk_into_tail(StridedTail& tail, const std::set<std::int64_t>& depths) {
  for (std::int64_t d : depths) {
    if (tail.on_progression(d)) {
      tail.excluded.erase(d);
    } else if (d < tail.start && (tail.start - d) % tail.stride == 0) {
      for (std::int64_t p = d + tail.stride; p < tail.start; p += tail.stride)
        tail.excluded.insert(p);
      tail.start = d;
    } else {
      throw Error(ErrorCode::UnsupportedSet,
                  "chunk point off the tail progression on the same spoke");
    }
  }
}

// Union of two tails on the same spoke; exact or rejected.
StridedTail merge_tails(const StridedTail& a, const StridedTail& b) {
  auto progression_contains = [](const StridedTail& outer, const StridedTail& inner) {
    return inner.stride % outer.stride == 0 && inner.start >= outer.start &&
           (inner.start - outer.start) % outer.stride == 0;
  };
  if (a.stride == b.stride && (a.start - b.start) % a.stride == 0) {
    // Same progression: union is the earlier start, keeping only depths
    // absent from both sides.
    StridedTail out;
    out.stride = a.stride;
    out.start = std::min(a.start, b.start);
    std::int64_t hi = std::max({a.start, b.start, a.excluded.empty() ? out.start : *a.excluded.rbegin(),
                                b.excluded.empty() ? out.start : *b.excluded.rbegin()});
    for (std::int64_t p = out.start; p <= hi; p += out.stride)
      if (!a.contains(p) && !b.contains(p)) out.excluded.insert(p);
    return out;
  }
  if (progression_contains(a, b)) {
    StridedTail out = a;
    for (auto it = out.excluded.begin(); it != out.excluded.end();)
      it = b.contains(*it) ? out.excluded.erase(it) : ++it;
    return out;
  }
  if (progression_contains(b, a)) return merge_tails(b, a);
  throw Error(ErrorCode::UnsupportedSet,
              "tail progressions on the same spoke do not nest");
}

struct Crt {
  bool compatible = false;
  std::int64_t residue = 0;  // solutions x == residue (mod modulus)
  std::int64_t modulus = 1;
};

std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1, y1;
  std::int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Crt crt(std::int64_t a1, std::int64_t s1, std::int64_t a2, std::int64_t s2) {
  std::int64_t p, q;
  std::int64_t g = egcd(s1, s2, p, q);
  if ((a2 - a1) % g != 0) return Crt{};
  std::int64_t lcm = s1 / g * s2;
  __int128 diff = static_cast<__int128>(a2 - a1) / g;
  __int128 r = a1 + static_cast<__int128>(s1) * static_cast<std::int64_t>(
                        (diff * p) % (s2 / g));
  std::int64_t rr = static_cast<std::int64_t>(((r % lcm) + lcm) % lcm);
  return Crt{true, rr, lcm};
}

}  // namespace

void DefinableSet::add_chunk(std::int64_t spoke, std::set<std::int64_t> depths) {
  require(spoke >= 1, "spoke must be >= 1");
  require(!depths.empty(), "finite chunk must be nonempty");
  require(*depths.begin() >= 1, "depths must be >= 1");
  auto it = spokes_.find(spoke);
  if (it == spokes_.end()) {
    spokes_.emplace(spoke, FiniteChunk{std::move(depths)});
    return;
  }
  if (auto* chunk = std::get_if<FiniteChunk>(&it->second)) {
    chunk->depths.insert(depths.begin(), depths.end());
  } else {
    merge_chunk_into_tail(std::get<StridedTail>(it->second), depths);
  }
}

void DefinableSet::add_tail(std::int64_t spoke, std::int64_t start,
                            std::int64_t stride, std::set<std::int64_t> excluded) {
  require(spoke >= 1, "spoke must be >= 1");
  require(start >= 1 && stride >= 1, "tail start and stride must be >= 1");
  StridedTail tail{start, stride, std::move(excluded)};
  for (std::int64_t e : tail.excluded)
    require(tail.on_progression(e), "excluded depth off the progression");
  auto it = spokes_.find(spoke);
  if (it == spokes_.end()) {
    spokes_.emplace(spoke, std::move(tail));
    return;
  }
  if (auto* chunk = std::get_if<FiniteChunk>(&it->second)) {
    std::set<std::int64_t> depths = chunk->depths;
    merge_chunk_into_tail(tail, depths);
    it->second = std::move(tail);
  } else {
    it->second = merge_tails(std::get<StridedTail>(it->second), tail);
  }
}

void DefinableSet::add_row(std::int64_t start_spoke, std::int64_t slope,
                           std::int64_t intercept) {
  require(start_spoke >= 1, "row start spoke must be >= 1");
  require(slope >= 0, "row slope must be >= 0");
  require(slope * start_spoke + intercept >= 1, "row depths must be >= 1");
  RowComponent row{start_spoke, slope, intercept};
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row);
  if (it != rows_.end() && *it == row) return;
  rows_.insert(it, row);
}

DefinableSet DefinableSet::full_spoke(std::int64_t n) {
  DefinableSet m;
  m.add_tail(n, 1, 1);
  return m;
}

bool member(const DefinableSet& m, const FanPoint& x) {
  if (x.is_apex()) return false;
  auto it = m.spoke_components().find(x.spoke);
  if (it != m.spoke_components().end()) {
    if (const auto* chunk = std::get_if<FiniteChunk>(&it->second)) {
      if (chunk->depths.count(x.depth)) return true;
    } else if (std::get<StridedTail>(it->second).contains(x.depth)) {
      return true;
    }
  }
  for (const auto& row : m.row_components())
    if (row.contains(x)) return true;
  return false;
}

SetSize cardinality_class(const DefinableSet& m) {
  if (!m.row_components().empty()) return SetSize{true, 0};
  std::int64_t count = 0;
  for (const auto& [spoke, part] : m.spoke_components()) {
    if (std::holds_alternative<StridedTail>(part)) return SetSize{true, 0};
    count += static_cast<std::int64_t>(std::get<FiniteChunk>(part).depths.size());
  }
  return SetSize{false, count};
}

IntersectionResult intersection_class(const DefinableSet& m,
                                      const DefinableSet& n) {
  std::set<FanPoint> points;
  nlohmann::json infinite_certs = nlohmann::json::array();

  for (const auto& [spoke, pa] : m.spoke_components()) {
    auto it = n.spoke_components().find(spoke);
    if (it == n.spoke_components().end()) continue;
    const SpokePart& pb = it->second;

    const auto* ca = std::get_if<FiniteChunk>(&pa);
    const auto* cb = std::get_if<FiniteChunk>(&pb);
    if (ca && cb) {
      for (std::int64_t d : ca->depths)
        if (cb->depths.count(d)) points.insert(FanPoint::node(spoke, d));
    } else if (ca || cb) {
      const FiniteChunk& chunk = ca ? *ca : *cb;
      const StridedTail& tail = std::get<StridedTail>(ca ? pb : pa);
      for (std::int64_t d : chunk.depths)
        if (tail.contains(d)) points.insert(FanPoint::node(spoke, d));
    } else {
      const StridedTail& ta = std::get<StridedTail>(pa);
      const StridedTail& tb = std::get<StridedTail>(pb);
      Crt sol = crt(ta.start % ta.stride, ta.stride, tb.start % tb.stride, tb.stride);
      if (sol.compatible) {
        std::int64_t lo = std::max(ta.clear_start(), tb.clear_start());
        std::int64_t first = sol.residue + ((lo - sol.residue) % sol.modulus + sol.modulus) % sol.modulus;
        if (first < lo) first += sol.modulus;
        infinite_certs.push_back({{"kind", "common-residue"},
                                  {"spoke", spoke},
                                  {"first", first},
                                  {"stride", sol.modulus}});
        // All common depths lie in this class; exclusions are finite, so
        // the classification is Infinite either way.
      }
      // Incompatible progressions never meet.
    }
  }

  auto row_vs_spokes = [&points](const DefinableSet& rows_of,
                                 const DefinableSet& spokes_of) {
    for (const auto& row : rows_of.row_components()) {
      for (const auto& [spoke, part] : spokes_of.spoke_components()) {
        if (spoke < row.start_spoke) continue;
        std::int64_t d = row.depth_at(spoke);
        FanPoint x = FanPoint::node(spoke, d);
        if (const auto* chunk = std::get_if<FiniteChunk>(&part)) {
          if (chunk->depths.count(d)) points.insert(x);
        } else if (std::get<StridedTail>(part).contains(d)) {
          points.insert(x);
        }
      }
    }
  };
  row_vs_spokes(m, n);
  row_vs_spokes(n, m);

  for (const auto& ra : m.row_components()) {
    for (const auto& rb : n.row_components()) {
      if (ra.slope == rb.slope && ra.intercept == rb.intercept) {
        infinite_certs.push_back(
            {{"kind", "identical-rows"},
             {"from", std::max(ra.start_spoke, rb.start_spoke)},
             {"slope", ra.slope},
             {"intercept", ra.intercept}});
      } else if (ra.slope != rb.slope) {
        std::int64_t dn = rb.intercept - ra.intercept;
        std::int64_t ds = ra.slope - rb.slope;
        if (dn % ds == 0) {
          std::int64_t s = dn / ds;
          if (s >= std::max(ra.start_spoke, rb.start_spoke) && s >= 1 &&
              ra.depth_at(s) >= 1)
            points.insert(FanPoint::node(s, ra.depth_at(s)));
        }
      }
      // Equal slopes with distinct intercepts never meet.
    }
  }

  IntersectionResult result;
  if (!infinite_certs.empty()) {
    result.size = SetSize{true, 0};
    result.certificate = {{"kind", "infinite"}, {"witnesses", infinite_certs}};
  } else {
    result.size = SetSize{false, static_cast<std::int64_t>(points.size())};
    result.finite_points.assign(points.begin(), points.end());
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : result.finite_points) pts.push_back(to_json(p));
    result.certificate = {{"kind", "finite"}, {"points", pts}};
  }
  return result;
}

bool almost_disjoint(const DefinableSet& m, const DefinableSet& n) {
  return !intersection_class(m, n).size.infinite;
}

Decision in_IP(const DefinableSet& m) {
  SetSize size = cardinality_class(m);
  if (!size.infinite) {
    return Decision{false, {{"kind", "finite"}, {"count", size.count}}};
  }
  if (m.row_components().empty()) {
    nlohmann::json spokes = nlohmann::json::array();
    for (const auto& [spoke, part] : m.spoke_components()) spokes.push_back(spoke);
    return Decision{true,
                    {{"kind", "finitely-many-spokes"}, {"spokes", spokes}}};
  }
  // A row meets infinitely many spokes once each; the proof's threshold
  // f(n) = m_n + 1 along the row keeps all of its points outside.
  const RowComponent& row = m.row_components().front();
  ThresholdCover cover;
  cover.slope = row.slope;
  cover.intercept = row.intercept + 1;
  nlohmann::json cert;
  cert["kind"] = "escaping-family";
  cert["cover"] = cover.to_json();
  cert["escape"] = {{"row", {{"from", row.start_spoke},
                             {"slope", row.slope},
                             {"intercept", row.intercept}}}};
  return Decision{false, std::move(cert)};
}

SpokeSupport spoke_support(const DefinableSet& m) {
  SpokeSupport support;
  support.unbounded_rows = !m.row_components().empty();
  for (const auto& [spoke, part] : m.spoke_components()) support.spokes.insert(spoke);
  return support;
}

nlohmann::json to_json(const DefinableSet& m) {
  nlohmann::json spokes = nlohmann::json::array();
  for (const auto& [spoke, part] : m.spoke_components()) {
    nlohmann::json c;
    c["spoke"] = spoke;
    if (const auto* chunk = std::get_if<FiniteChunk>(&part)) {
      c["finite"] = chunk->depths;
    } else {
      const auto& tail = std::get<StridedTail>(part);
      c["tail"] = {{"start", tail.start},
                   {"stride", tail.stride},
                   {"excluded", tail.excluded}};
    }
    spokes.push_back(std::move(c));
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m.row_components())
    rows.push_back({{"from", row.start_spoke},
                    {"slope", row.slope},
                    {"intercept", row.intercept}});
  return {{"spokes", std::move(spokes)}, {"rows", std::move(rows)}};
}

DefinableSet definable_set_from_json(const nlohmann::json& j) {
  try {
    DefinableSet m;
    for (const auto& c : j.value("spokes", nlohmann::json::array())) {
      std::int64_t spoke = c.at("spoke").get<std::int64_t>();
      if (c.contains("finite")) {
        m.add_chunk(spoke, c.at("finite").get<std::set<std::int64_t>>());
      } else {
        const auto& t = c.at("tail");
        m.add_tail(spoke, t.at("start").get<std::int64_t>(),
                   t.at("stride").get<std::int64_t>(),
                   t.value("excluded", std::set<std::int64_t>{}));
      }
    }
    for (const auto& r : j.value("rows", nlohmann::json::array()))
      m.add_row(r.at("from").get<std::int64_t>(), r.at("slope").get<std::int64_t>(),
                r.at("intercept").get<std::int64_t>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("definable set: ") + e.what());
  }
}

}  // namespace seqwit

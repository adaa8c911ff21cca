#include "garment/structures.hpp"

#include <algorithm>

#include "garment/region_eval.hpp"

namespace garment {

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Cravat: return "cravat";
    case StructureKind::Necklace: return "necklace";
    case StructureKind::Bowtie: return "bowtie";
    case StructureKind::Skirt: return "skirt";
    case StructureKind::Pant: return "pant";
  }
  return "?";
}

std::optional<StructureKind> parse_kind(const std::string& name) {
  for (StructureKind k : kAllKinds) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<StructureKind> KindSet::list() const {
  std::vector<StructureKind> out;
  for (StructureKind k : kAllKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::string to_string(const KindSet& kinds) {
  std::string s;
  for (StructureKind k : kinds.list()) {
    if (!s.empty()) s += ",";
    s += to_string(k);
  }
  return s;
}

KindSet parse_kinds(const std::string& csv) {
  KindSet out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string tok = csv.substr(pos, comma - pos);
    if (!tok.empty()) {
      auto k = parse_kind(tok);
      if (!k) throw Error("unknown structure kind '" + tok + "'");
      out.add(*k);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw Error("empty structure kind list");
  return out;
}

QuadrupleClass classify_quadruple(std::span<const Point> pts, const std::array<int, 4>& q) {
  std::array<Point, 4> local;
  for (int i = 0; i < 4; ++i) local[static_cast<size_t>(i)] = pts[static_cast<size_t>(q[static_cast<size_t>(i)])];
  std::vector<int> hull = convex_hull(local);
  if (hull.size() == 4) {
    ConvexPosition cp;
    for (int i = 0; i < 4; ++i) cp.hull[static_cast<size_t>(i)] = q[static_cast<size_t>(hull[static_cast<size_t>(i)])];
    return cp;
  }
  NonConvexPosition ncp;
  bool on_hull[4] = {false, false, false, false};
  for (int i = 0; i < 3; ++i) {
    ncp.hull[static_cast<size_t>(i)] = q[static_cast<size_t>(hull[static_cast<size_t>(i)])];
    on_hull[hull[static_cast<size_t>(i)]] = true;
  }
  ncp.interior = -1;
  for (int i = 0; i < 4; ++i) {
    if (!on_hull[i]) ncp.interior = q[static_cast<size_t>(i)];
  }
  return ncp;
}

std::vector<StructureInstance> instances_on_quadruple(std::span<const Point> pts,
                                                      const std::array<int, 4>& q) {
  std::vector<StructureInstance> out;
  const QuadrupleClass cls = classify_quadruple(pts, q);
  if (const auto* cp = std::get_if<ConvexPosition>(&cls)) {
    out.push_back({StructureKind::Cravat, cp->hull, 0});
    for (std::uint8_t e = 0; e < 4; ++e) {
      out.push_back({StructureKind::Necklace, cp->hull, e});
    }
    for (std::uint8_t v = 0; v < 2; ++v) {
      out.push_back({StructureKind::Bowtie, cp->hull, v});
    }
  } else {
    const auto& ncp = std::get<NonConvexPosition>(cls);
    const std::array<int, 4> ix = {ncp.hull[0], ncp.hull[1], ncp.hull[2], ncp.interior};
    out.push_back({StructureKind::Skirt, ix, 0});
    for (std::uint8_t e = 0; e < 3; ++e) {
      out.push_back({StructureKind::Pant, ix, e});
    }
  }
  return out;
}

bool region_contains(const StructureInstance& inst, std::span<const Point> pts,
                     const Point& probe) {
  return detail::region_contains_impl(inst, pts, [&](int a, int b) {
    return orient(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)], probe);
  });
}

bool region_contains(const StructureInstance& inst, std::span<const Point> pts,
                     const RatPoint& probe) {
  return detail::region_contains_impl(inst, pts, [&](int a, int b) {
    return orient_rat(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)], probe);
  });
}

StructureStatus structure_status(const StructureInstance& inst, const ColoredPointSet& cps) {
  StructureStatus st;
  const Color c0 = cps.color(inst.idx[0]);
  st.monochromatic = true;
  for (int i = 1; i < 4; ++i) {
    if (cps.color(inst.idx[static_cast<size_t>(i)]) != c0) st.monochromatic = false;
  }
  if (!st.monochromatic) return st;

  st.same_color_clean = true;
  for (int i = 0; i < cps.size(); ++i) {
    if (i == inst.idx[0] || i == inst.idx[1] || i == inst.idx[2] || i == inst.idx[3]) continue;
    if (!region_contains(inst, cps.points(), cps.point(i))) continue;
    if (cps.color(i) == c0) {
      st.same_color_clean = false;
    } else {
      st.blocked = true;
    }
  }
  return st;
}

std::vector<StructureInstance> empty_monochromatic_structures(const ColoredPointSet& cps,
                                                              const KindSet& kinds) {
  std::vector<StructureInstance> out;
  const int n = cps.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          for (const StructureInstance& inst :
               instances_on_quadruple(cps.points(), {a, b, c, d})) {
            if (!kinds.contains(inst.kind)) continue;
            if (structure_status(inst, cps).empty()) out.push_back(inst);
          }
        }
  return out;
}

std::string to_string(const StructureInstance& inst) {
  std::string s = to_string(inst.kind) + "[v" + std::to_string(inst.variant) + "](";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ",";
    s += std::to_string(inst.idx[static_cast<size_t>(i)]);
  }
  s += ")";
  return s;
}

}  // namespace garment

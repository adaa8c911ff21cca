#include "garment/render.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "garment/rational.hpp"

namespace garment {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Exact decimal rendering of num/den (den > 0) with six fractional digits,
// rounding half away from zero; integers print without a fraction. Pure
// integer arithmetic keeps the output platform-independent.
std::string fixed6(const BigInt& num, const BigInt& den) {
  if (den == 1) return num.str();
  const bool neg = num < 0;
  const BigInt mag = neg ? BigInt(-num) : num;
  const BigInt scaled = (mag * 2000000 + den) / (2 * den);
  const BigInt whole = scaled / 1000000;
  const BigInt frac = scaled % 1000000;
  std::string digits = frac.str();
  digits.insert(0, 6 - digits.size(), '0');
  std::string out = (neg && scaled != 0 ? "-" : "") + whole.str();
  if (frac != 0) {
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

struct Mapper {
  // SVG y grows downward; the picture negates y so the plot reads like a
  // mathematical diagram.
  std::string at(const Point& p) const { return std::to_string(p.x) + "," + std::to_string(-p.y); }
  std::string at(const RatPoint& p) const {
    return fixed6(p.xn, p.den) + "," + fixed6(-p.yn, p.den);
  }
};

const char* kind_color(StructureKind k) {
  switch (k) {
    case StructureKind::Cravat: return "#8e44ad";
    case StructureKind::Necklace: return "#e67e22";
    case StructureKind::Bowtie: return "#16a085";
    case StructureKind::Skirt: return "#d63384";
    case StructureKind::Pant: return "#2e8b57";
  }
  return "#000000";
}

// Crossing of the two diagonals (h0,h2) x (h1,h3) of a convex quadruple.
RatPoint diagonal_crossing(const Point& a, const Point& c, const Point& b, const Point& d) {
  const BigInt rx = c.x - a.x;
  const BigInt ry = c.y - a.y;
  const BigInt sx = d.x - b.x;
  const BigInt sy = d.y - b.y;
  const BigInt den = rx * sy - ry * sx;
  const BigInt t = BigInt(b.x - a.x) * sy - BigInt(b.y - a.y) * sx;
  return RatPoint(BigInt(a.x) * den + t * rx, BigInt(a.y) * den + t * ry, den);
}

void emit_polygon(std::ostringstream& out, const std::string& points, StructureKind kind,
                  std::int64_t stroke) {
  out << "  <polygon class=\"" << to_string(kind) << "\" points=\"" << points << "\" fill=\""
      << kind_color(kind) << "\" fill-opacity=\"0.35\" stroke=\"" << kind_color(kind)
      << "\" stroke-width=\"" << stroke << "\"/>\n";
}

void emit_highlight(std::ostringstream& out, const StructureInstance& inst,
                    std::span<const Point> pts, const Mapper& map, std::int64_t stroke) {
  const auto& ix = inst.idx;
  auto pt = [&](int k) -> const Point& { return pts[static_cast<size_t>(ix[static_cast<size_t>(k)])]; };
  switch (inst.kind) {
    case StructureKind::Cravat: {
      emit_polygon(out,
                   map.at(pt(0)) + " " + map.at(pt(1)) + " " + map.at(pt(2)) + " " + map.at(pt(3)),
                   inst.kind, stroke);
      return;
    }
    case StructureKind::Necklace: {
      const int e = inst.variant;
      const std::string shared = map.at(pt(e % 4)) + " " + map.at(pt((e + 1) % 4)) + " ";
      emit_polygon(out, shared + map.at(pt((e + 2) % 4)), inst.kind, stroke);
      emit_polygon(out, shared + map.at(pt((e + 3) % 4)), inst.kind, stroke);
      return;
    }
    case StructureKind::Bowtie: {
      if (orient(pt(0), pt(2), pt(1)) == orient(pt(0), pt(2), pt(3))) {
        throw Error("render_svg: bowtie highlight has no diagonal crossing");
      }
      const RatPoint x = diagonal_crossing(pt(0), pt(2), pt(1), pt(3));
      for (const int e : inst.variant == 0 ? std::array<int, 2>{1, 3} : std::array<int, 2>{0, 2}) {
        emit_polygon(out, map.at(pt(e)) + " " + map.at(pt((e + 1) % 4)) + " " + map.at(x),
                     inst.kind, stroke);
      }
      return;
    }
    case StructureKind::Skirt: {
      emit_polygon(out, map.at(pt(0)) + " " + map.at(pt(1)) + " " + map.at(pt(2)), inst.kind,
                   stroke);
      return;
    }
    case StructureKind::Pant: {
      // Walk the triangle boundary, detouring through the interior point
      // across the broken edge: a simple 4-gon.
      const int e = inst.variant;
      emit_polygon(out,
                   map.at(pt(e)) + " " + map.at(pt(3)) + " " + map.at(pt((e + 1) % 3)) + " " +
                       map.at(pt((e + 2) % 3)),
                   inst.kind, stroke);
      return;
    }
  }
}

}  // namespace

std::string render_svg(const PointSetDocument& doc,
                       std::span<const StructureInstance> highlights) {
  const std::vector<Point> pts = doc.to_validated_points();
  const int n = static_cast<int>(pts.size());
  for (const StructureInstance& inst : highlights) {
    for (const int i : inst.idx) {
      if (i < 0 || i >= n) throw Error("render_svg: highlight index out of range");
    }
  }

  std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  if (n > 0) {
    min_x = max_x = pts.front().x;
    min_y = max_y = pts.front().y;
    for (const Point& p : pts) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const std::int64_t extent = std::max<std::int64_t>({max_x - min_x, max_y - min_y, 1});
  const std::int64_t pad = std::max<std::int64_t>(2, extent / 16);
  const std::int64_t radius = std::max<std::int64_t>(2, extent / 128);
  const std::int64_t stroke = std::max<std::int64_t>(1, extent / 256);
  const Mapper map;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << (min_x - pad)
      << " " << (-max_y - pad) << " " << (max_x - min_x + 2 * pad) << " "
      << (max_y - min_y + 2 * pad) << "\">\n";
  if (!doc.name.empty()) out << "  <title>" << xml_escape(doc.name) << "</title>\n";

  for (const StructureInstance& inst : highlights) emit_highlight(out, inst, pts, map, stroke);

  if (n >= 3) {
    out << "  <polygon class=\"hull\" points=\"";
    const auto hull = convex_hull(pts);
    for (size_t i = 0; i < hull.size(); ++i) {
      if (i > 0) out << " ";
      out << map.at(pts[static_cast<size_t>(hull[i])]);
    }
    out << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"" << stroke << "\"/>\n";
  }

  for (const DocumentPoint& dp : doc.points) {
    const char* fill = "#444444";
    if (dp.color == Color::Red) fill = "#d63031";
    if (dp.color == Color::Blue) fill = "#0984e3";
    out << "  <circle cx=\"" << dp.p.x << "\" cy=\"" << -dp.p.y << "\" r=\"" << radius
        << "\" fill=\"" << fill << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace garment

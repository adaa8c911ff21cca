#include "garment/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace garment {

namespace {

using nlohmann::json;

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

json parse_line(const std::string& line, int line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError(line_no, "expected a JSON object");
  }
  return j;
}

std::int64_t int_field(const json& j, const char* key, int line_no) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(line_no, std::string("missing field \"") + key + "\"");
  if (!it->is_number_integer()) {
    throw ParseError(line_no, std::string("field \"") + key + "\" must be an integer");
  }
  const std::int64_t v = it->get<std::int64_t>();
  if (v < -kCoordCap || v > kCoordCap) {
    throw ParseError(line_no, std::string("field \"") + key + "\" exceeds the coordinate cap " +
                                  std::to_string(kCoordCap));
  }
  return v;
}

PointSetDocument parse_header(const json& j, int line_no) {
  PointSetDocument doc;
  const auto schema = j.find("schema");
  if (schema == j.end() || !schema->is_number_integer()) {
    throw ParseError(line_no, "header must carry an integer \"schema\" field");
  }
  doc.schema = schema->get<int>();
  if (doc.schema != 1) {
    throw ParseError(line_no, "unsupported schema version " + std::to_string(doc.schema));
  }
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line_no, "\"name\" must be a string");
    doc.name = it->get<std::string>();
  }
  if (const auto it = j.find("source"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line_no, "\"source\" must be a string");
    doc.source = it->get<std::string>();
  }
  if (const auto it = j.find("avoids"); it != j.end()) {
    if (!it->is_array()) throw ParseError(line_no, "\"avoids\" must be an array of kind names");
    for (const auto& e : *it) {
      if (!e.is_string()) throw ParseError(line_no, "\"avoids\" entries must be strings");
      const auto kind = parse_kind(e.get<std::string>());
      if (!kind) throw ParseError(line_no, "unknown structure kind \"" + e.get<std::string>() + "\"");
      doc.avoided_kinds.push_back(*kind);
    }
  }
  return doc;
}

DocumentPoint parse_point(const json& j, int line_no) {
  DocumentPoint dp;
  dp.p.x = int_field(j, "x", line_no);
  dp.p.y = int_field(j, "y", line_no);
  dp.line = line_no;
  if (const auto it = j.find("color"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line_no, "\"color\" must be a string");
    const std::string c = it->get<std::string>();
    if (c == "red") {
      dp.color = Color::Red;
    } else if (c == "blue") {
      dp.color = Color::Blue;
    } else {
      throw ParseError(line_no, "color must be \"red\" or \"blue\", got \"" + c + "\"");
    }
  }
  return dp;
}

// Maps a general-position violation inside doc.points to the offending source
// lines and rethrows as ParseError.
void validate_points(const PointSetDocument& doc, std::span<const Point> pts,
                     ValidationMode mode) {
  const auto issue = find_general_position_issue(pts, mode);
  if (!issue) return;
  auto line_of = [&](int i) {
    const int ln = doc.points[static_cast<size_t>(i)].line;
    return ln > 0 ? std::to_string(ln) : ("#" + std::to_string(i));
  };
  const int last = issue->duplicate ? issue->idx[1] : issue->idx[2];
  const int report_line = doc.points[static_cast<size_t>(last)].line;
  if (issue->duplicate) {
    throw ParseError(report_line > 0 ? report_line : 0,
                     "duplicate of the point on line " + line_of(issue->idx[0]));
  }
  throw ParseError(report_line > 0 ? report_line : 0,
                   "collinear with the points on lines " + line_of(issue->idx[0]) + " and " +
                       line_of(issue->idx[1]));
}

std::string color_name(Color c) { return c == Color::Red ? "red" : "blue"; }

}  // namespace

bool PointSetDocument::colored() const {
  for (const auto& dp : points) {
    if (!dp.color) return false;
  }
  return !points.empty();
}

std::vector<Point> PointSetDocument::raw_points() const {
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (const auto& dp : points) pts.push_back(dp.p);
  return pts;
}

ColoredPointSet PointSetDocument::to_colored_set(ValidationMode mode) const {
  std::vector<Point> pts = raw_points();
  std::vector<Color> colors;
  colors.reserve(points.size());
  for (const auto& dp : points) {
    if (!dp.color) {
      throw ParseError(dp.line, "point lacks a color; a colored set needs every point colored");
    }
    colors.push_back(*dp.color);
  }
  validate_points(*this, pts, mode);
  return ColoredPointSet(std::move(pts), std::move(colors), ValidationMode::Sampled);
}

std::vector<Point> PointSetDocument::to_validated_points(ValidationMode mode) const {
  std::vector<Point> pts = raw_points();
  validate_points(*this, pts, mode);
  return pts;
}

PointSetDocument make_document(const ColoredPointSet& cps, const std::string& name) {
  PointSetDocument doc;
  doc.name = name;
  doc.points.reserve(static_cast<size_t>(cps.size()));
  for (int i = 0; i < cps.size(); ++i) {
    doc.points.push_back(DocumentPoint{cps.point(i), cps.color(i), 0});
  }
  return doc;
}

std::vector<PointSetDocument> read_documents(std::istream& in) {
  std::vector<PointSetDocument> docs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const json j = parse_line(line, line_no);
    if (j.contains("schema")) {
      docs.push_back(parse_header(j, line_no));
    } else if (j.contains("x")) {
      if (docs.empty()) {
        throw ParseError(line_no, "point before the first document header");
      }
      docs.back().points.push_back(parse_point(j, line_no));
    } else {
      throw ParseError(line_no, "expected a header (\"schema\") or a point (\"x\",\"y\")");
    }
  }
  if (docs.empty()) throw ParseError(line_no, "no document header found");
  return docs;
}

PointSetDocument read_document(std::istream& in) {
  auto docs = read_documents(in);
  if (docs.size() != 1) {
    throw Error("expected exactly one document, found " + std::to_string(docs.size()));
  }
  return std::move(docs.front());
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

PointSetDocument read_document_file(const std::string& path) {
  auto in = open_input(path);
  return read_document(in);
}

std::vector<PointSetDocument> read_documents_file(const std::string& path) {
  auto in = open_input(path);
  return read_documents(in);
}

void write_document(std::ostream& out, const PointSetDocument& doc) {
  json header;
  header["schema"] = doc.schema;
  if (!doc.name.empty()) header["name"] = doc.name;
  if (!doc.source.empty()) header["source"] = doc.source;
  if (!doc.avoided_kinds.empty()) {
    json arr = json::array();
    for (StructureKind k : doc.avoided_kinds) arr.push_back(to_string(k));
    header["avoids"] = arr;
  }
  out << header.dump() << '\n';
  for (const auto& dp : doc.points) {
    json p;
    p["x"] = dp.p.x;
    p["y"] = dp.p.y;
    if (dp.color) p["color"] = color_name(*dp.color);
    out << p.dump() << '\n';
  }
}

void write_document_file(const std::string& path, const PointSetDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_document(out, doc);
  out.flush();
  if (!out) throw Error("failed writing " + path);
}

}  // namespace garment

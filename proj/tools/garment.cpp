#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "garment/blocking.hpp"
#include "garment/convexity.hpp"
#include "garment/geom.hpp"
#include "garment/io.hpp"
#include "garment/render.hpp"
#include "garment/search.hpp"
#include "garment/structures.hpp"

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 verdict computed, 64 usage, 65 bad data or format, 66 I/O,
// 70 unexpected internal failure.
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 66;
constexpr int kExitInternal = 70;

struct IoFailure {
  std::string message;
};

bool g_json = false;

void emit(const Json& record) { std::cout << record.dump() << "\n"; }

garment::PointSetDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure{"cannot open " + path};
  return garment::read_document(in);
}

void require_readable(const std::string& path) {
  const std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoFailure{"cannot open " + path};
}

std::string rat_str(const garment::RatPoint& p) {
  if (p.den == 1) return p.xn.str() + "," + p.yn.str();
  return p.xn.str() + "/" + p.den.str() + "," + p.yn.str() + "/" + p.den.str();
}

std::string colors_str(const std::vector<garment::Color>& colors) {
  std::string s;
  for (const garment::Color c : colors) s += c == garment::Color::Red ? 'R' : 'B';
  return s;
}

Json instance_json(const garment::StructureInstance& inst) {
  return Json{{"kind", garment::to_string(inst.kind)},
              {"idx", inst.idx},
              {"variant", inst.variant}};
}

Json points_json(std::span<const garment::Point> pts) {
  Json arr = Json::array();
  for (const garment::Point& p : pts) arr.push_back(Json{{"x", p.x}, {"y", p.y}});
  return arr;
}

// The CLI11 layer validates kind lists so that typos exit as usage errors.
const CLI::Validator KindsValidator(
    [](std::string& input) -> std::string {
      try {
        if (garment::parse_kinds(input).empty()) return "empty kind set";
      } catch (const garment::Error& e) {
        return std::string(e.what());
      }
      return {};
    },
    "KINDS");

void add_classify(CLI::App& app) {
  auto* sub = app.add_subcommand("classify", "census of structure instances over all quadruples");
  auto file = std::make_shared<std::string>();
  sub->add_option("file", *file, "point-set document")->required();
  sub->callback([file] {
    const auto doc = load_document(*file);
    const auto pts = doc.to_validated_points();
    const int n = static_cast<int>(pts.size());
    if (n > 64) throw garment::Error("classify: quadruple census caps at 64 points");
    std::uint64_t quadruples = 0, convex = 0;
    std::array<std::uint64_t, 5> per_kind{};
    std::array<int, 4> q;
    for (q[0] = 0; q[0] < n; ++q[0])
      for (q[1] = q[0] + 1; q[1] < n; ++q[1])
        for (q[2] = q[1] + 1; q[2] < n; ++q[2])
          for (q[3] = q[2] + 1; q[3] < n; ++q[3]) {
            ++quadruples;
            convex += std::holds_alternative<garment::ConvexPosition>(
                garment::classify_quadruple(pts, q));
            for (const auto& inst : garment::instances_on_quadruple(pts, q)) {
              ++per_kind[static_cast<size_t>(inst.kind)];
            }
          }
    Json kinds;
    for (const garment::StructureKind k : garment::kAllKinds) {
      kinds[garment::to_string(k)] = per_kind[static_cast<size_t>(k)];
    }
    Json record{{"command", "classify"}, {"n", n},           {"quadruples", quadruples},
                {"convex", convex},      {"nonconvex", quadruples - convex},
                {"instances", kinds}};
    Json empty_counts;
    if (doc.colored()) {
      const auto cps = doc.to_colored_set();
      for (const garment::StructureKind k : garment::kAllKinds) {
        empty_counts[garment::to_string(k)] =
            garment::empty_monochromatic_structures(cps, garment::KindSet{k}).size();
      }
      record["empty_monochromatic"] = empty_counts;
    }
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "points: " << n << "\nquadruples: " << quadruples << " (" << convex
              << " convex, " << quadruples - convex << " nonconvex)\n";
    for (const garment::StructureKind k : garment::kAllKinds) {
      std::cout << garment::to_string(k) << ": " << per_kind[static_cast<size_t>(k)];
      if (doc.colored()) {
        std::cout << " (" << empty_counts[garment::to_string(k)].get<std::uint64_t>()
                  << " empty monochromatic)";
      }
      std::cout << "\n";
    }
  });
}

void add_check(CLI::App& app) {
  auto* sub = app.add_subcommand("check", "look for an empty monochromatic structure");
  auto file = std::make_shared<std::string>();
  auto kinds_csv = std::make_shared<std::string>();
  sub->add_option("file", *file, "colored point-set document")->required();
  sub->add_option("--kinds", *kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->callback([file, kinds_csv] {
    const auto kinds = garment::parse_kinds(*kinds_csv);
    const auto cps = load_document(*file).to_colored_set();
    const auto verdict = garment::verify_construction(cps, kinds);
    const garment::StructureInstance* witness = nullptr;
    for (const auto& entry : verdict.monochromatic) {
      if (entry.status.empty()) {
        witness = &entry.inst;
        break;
      }
    }
    Json record{{"command", "check"},
                {"kinds", garment::to_string(kinds)},
                {"n", cps.size()},
                {"verdict", verdict.ok ? "no-empty-monochromatic-structure"
                                       : "empty-structure-found"}};
    if (witness) record["witness"] = instance_json(*witness);
    if (g_json) {
      emit(record);
      return;
    }
    if (verdict.ok) {
      std::cout << "verdict: no empty monochromatic structure (kinds "
                << garment::to_string(kinds) << ")\n";
    } else {
      std::cout << "verdict: empty monochromatic structure found\nwitness: "
                << garment::to_string(*witness) << "\n";
    }
  });
}

void add_verify(CLI::App& app) {
  auto* sub = app.add_subcommand("verify", "full monochromatic census of a construction");
  auto file = std::make_shared<std::string>();
  auto kinds_csv = std::make_shared<std::string>();
  sub->add_option("file", *file, "colored point-set document")->required();
  sub->add_option("--kinds", *kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->callback([file, kinds_csv] {
    const auto kinds = garment::parse_kinds(*kinds_csv);
    const auto cps = load_document(*file).to_colored_set();
    const auto verdict = garment::verify_construction(cps, kinds);
    std::uint64_t blocked = 0, pierced = 0;
    std::vector<const garment::CensusEntry*> empties;
    for (const auto& entry : verdict.monochromatic) {
      if (entry.status.empty()) empties.push_back(&entry);
      if (entry.status.blocked) ++blocked;
      if (!entry.status.same_color_clean) ++pierced;
    }
    Json empty_list = Json::array();
    for (size_t i = 0; i < empties.size() && i < 100; ++i) {
      empty_list.push_back(instance_json(empties[i]->inst));
    }
    Json record{{"command", "verify"},
                {"kinds", garment::to_string(kinds)},
                {"n", cps.size()},
                {"ok", verdict.ok},
                {"monochromatic", verdict.monochromatic.size()},
                {"blocked", blocked},
                {"pierced", pierced},
                {"empty", empties.size()},
                {"empty_instances", empty_list}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << (verdict.ok ? "ok: no empty monochromatic structure\n"
                             : "not ok: empty monochromatic structures exist\n");
    std::cout << "monochromatic instances: " << verdict.monochromatic.size() << " (" << blocked
              << " blocked, " << pierced << " pierced by their own color, " << empties.size()
              << " empty)\n";
    for (size_t i = 0; i < empties.size() && i < 20; ++i) {
      std::cout << "empty: " << garment::to_string(empties[i]->inst) << "\n";
    }
    if (empties.size() > 20) std::cout << "... " << empties.size() - 20 << " more\n";
  });
}

void add_min_blockers(CLI::App& app) {
  auto* sub = app.add_subcommand("min-blockers",
                                 "minimum blue blockers for a red configuration");
  auto file = std::make_shared<std::string>();
  auto kinds_csv = std::make_shared<std::string>();
  sub->add_option("file", *file, "point-set document (points taken as the red set)")->required();
  sub->add_option("--kinds", *kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->callback([file, kinds_csv] {
    const auto kinds = garment::parse_kinds(*kinds_csv);
    const auto red = load_document(*file).to_validated_points();
    const auto result = garment::min_blockers(red, kinds);
    Json placement = Json::array();
    for (const auto& p : result.placement) placement.push_back(rat_str(p));
    Json record{{"command", "min-blockers"},
                {"kinds", garment::to_string(kinds)},
                {"r", red.size()},
                {"count", result.count},
                {"placement", placement}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "minimum blockers: " << result.count << "\n";
    for (const auto& p : result.placement) std::cout << "blocker: " << rat_str(p) << "\n";
  });
}

void add_verify_pair(CLI::App& app) {
  auto* sub = app.add_subcommand("verify-pair",
                                 "check that r red points need at least b blue blockers");
  struct Opts {
    int r = 0, b = 0;
    std::string kinds_csv;
    bool all_types = false;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::int64_t coord_max = 1000;
    bool no_dedup = false;
    std::string file;
    unsigned jobs = 0;
  };
  auto opt = std::make_shared<Opts>();
  sub->add_option("--r", opt->r, "red configuration size")->required();
  sub->add_option("--b", opt->b, "claimed minimum blocker count")->required();
  sub->add_option("--kinds", opt->kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  auto* source = sub->add_option_group("source", "where configurations come from");
  source->add_flag("--all-order-types", opt->all_types, "built-in census (r <= 5)");
  auto* samples =
      source->add_option("--samples", opt->samples, "random configurations to draw");
  source->add_option("--file", opt->file, "document file, one uncolored set per document");
  source->require_option(1);
  auto* seed = sub->add_option("--seed", opt->seed, "PRNG seed (required with --samples)");
  samples->needs(seed);
  sub->add_option("--coord-max", opt->coord_max, "sample coordinate bound")->needs(samples);
  sub->add_flag("--no-dedup", opt->no_dedup, "evaluate raw samples, not one per order type")
      ->needs(samples);
  sub->add_option("--jobs", opt->jobs, "worker threads (0 = auto)");
  sub->callback([opt] {
    garment::BlockersClaim claim;
    claim.r = opt->r;
    claim.b = opt->b;
    claim.kinds = garment::parse_kinds(opt->kinds_csv);
    garment::ClaimSource source{garment::AllOrderTypes{opt->r}};
    if (opt->samples > 0) {
      source = garment::SampleSource{opt->samples, opt->seed, opt->coord_max, !opt->no_dedup};
    } else if (!opt->file.empty()) {
      require_readable(opt->file);
      source = garment::FileSource{opt->file};
    }
    const auto claimed = garment::verify_pair_claim(claim, source, opt->jobs);
    Json record{{"command", "verify-pair"},
                {"r", claimed.r},
                {"b", claimed.b},
                {"kinds", garment::to_string(claimed.kinds)},
                {"status", garment::to_string(claimed.status)},
                {"source", claimed.source},
                {"configs_checked", claimed.configs_checked}};
    if (claimed.status == garment::ClaimStatus::Refuted) {
      record["witness_red"] = points_json(claimed.witness_red);
      Json blue = Json::array();
      for (const auto& p : claimed.witness_blue) blue.push_back(rat_str(p));
      record["witness_blue"] = blue;
    }
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "claim <" << claimed.r << "," << claimed.b << "> on "
              << garment::to_string(claimed.kinds) << ": " << garment::to_string(claimed.status)
              << " (" << claimed.configs_checked << " configurations, " << claimed.source
              << ")\n";
    if (claimed.status == garment::ClaimStatus::Refuted) {
      for (const auto& p : claimed.witness_red) {
        std::cout << "red: " << p.x << "," << p.y << "\n";
      }
      for (const auto& p : claimed.witness_blue) std::cout << "blue: " << rat_str(p) << "\n";
    }
  });
}

void add_closure(CLI::App& app) {
  auto* sub = app.add_subcommand("closure", "induction closure of verified base pairs");
  auto base_csv = std::make_shared<std::string>();
  auto kinds_csv = std::make_shared<std::string>();
  auto up_to = std::make_shared<int>(0);
  sub->add_option("--base", *base_csv, "base pairs as r:b,r:b,...")->required();
  sub->add_option("--kinds", *kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->add_option("--up-to", *up_to, "extend derived pairs up to this r")->required();
  sub->callback([base_csv, kinds_csv, up_to] {
    std::vector<std::pair<int, int>> base;
    std::string token;
    std::stringstream in(*base_csv);
    while (std::getline(in, token, ',')) {
      const size_t colon = token.find(':');
      if (colon == std::string::npos) {
        throw garment::Error("closure: base pair '" + token + "' is not r:b");
      }
      base.emplace_back(std::stoi(token.substr(0, colon)), std::stoi(token.substr(colon + 1)));
    }
    const auto kinds = garment::parse_kinds(*kinds_csv);
    const auto table = garment::induction_closure(base, kinds, *up_to);
    Json rows = Json::array();
    for (const auto& e : table) {
      rows.push_back(Json{{"r", e.r}, {"b", e.b}, {"derived", e.derived}});
    }
    Json record{{"command", "closure"},
                {"kinds", garment::to_string(kinds)},
                {"up_to", *up_to},
                {"entries", rows}};
    if (g_json) {
      emit(record);
      return;
    }
    for (const auto& e : table) {
      std::cout << "<" << e.r << "," << e.b << "> " << (e.derived ? "derived" : "base") << "\n";
    }
  });
}

void add_holes(CLI::App& app) {
  auto* sub = app.add_subcommand("holes", "count k-gons and k-holes");
  auto file = std::make_shared<std::string>();
  auto k = std::make_shared<int>(0);
  sub->add_option("file", *file, "point-set document")->required();
  sub->add_option("--k", *k, "gon size")->required();
  sub->callback([file, k] {
    const auto pts = load_document(*file).to_validated_points();
    const auto counts = garment::count_kgons_kholes(pts, *k);
    Json record{{"command", "holes"},
                {"k", *k},
                {"n", pts.size()},
                {"gons", counts.gons},
                {"holes", counts.holes}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << *k << "-gons: " << counts.gons << "\n"
              << *k << "-holes: " << counts.holes << "\n";
  });
}

void add_six_island(CLI::App& app) {
  auto* sub = app.add_subcommand("six-island", "6-gon / non-empty 5-gon split of an 11-point set");
  auto file = std::make_shared<std::string>();
  sub->add_option("file", *file, "point-set document with 11 points")->required();
  sub->callback([file] {
    const auto pts = load_document(*file).to_validated_points();
    const auto result = garment::six_island_check(pts);
    const char* kind = result.kind == garment::SixIslandResult::Kind::Has6Gon
                           ? "has-6gon"
                           : (result.kind == garment::SixIslandResult::Kind::HasNonEmpty5Gon
                                  ? "has-nonempty-5gon"
                                  : "fails");
    Json record{{"command", "six-island"}, {"kind", kind}, {"witness", result.witness}};
    if (result.inside >= 0) record["inside"] = result.inside;
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << kind;
    if (!result.witness.empty()) {
      std::cout << " witness";
      for (const int i : result.witness) std::cout << " " << i;
    }
    if (result.inside >= 0) std::cout << " inside " << result.inside;
    std::cout << "\n";
  });
}

void add_island(CLI::App& app) {
  auto* sub = app.add_subcommand("island", "color-unbalanced island of a colored set");
  auto file = std::make_shared<std::string>();
  auto threshold = std::make_shared<int>(5);
  sub->add_option("file", *file, "colored point-set document")->required();
  sub->add_option("--threshold", *threshold, "required |red - blue| imbalance");
  sub->callback([file, threshold] {
    const auto cps = load_document(*file).to_colored_set();
    const auto island = garment::unbalanced_island(cps, *threshold);
    Json record{{"command", "island"},    {"threshold", *threshold},
                {"members", island.members}, {"hull", island.hull},
                {"red", island.red},      {"blue", island.blue},
                {"imbalance", island.imbalance()}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "island of " << island.members.size() << " points: " << island.red << " red, "
              << island.blue << " blue (imbalance " << island.imbalance() << ")\n";
  });
}

void add_four_holes(CLI::App& app) {
  auto* sub = app.add_subcommand("four-holes", "pairwise disjoint convex 4-hole family");
  auto file = std::make_shared<std::string>();
  sub->add_option("file", *file, "point-set document")->required();
  sub->callback([file] {
    const auto pts = load_document(*file).to_validated_points();
    const auto family = garment::disjoint_4holes(pts);
    const std::int64_t m = static_cast<std::int64_t>(pts.size());
    Json holes = Json::array();
    for (const auto& h : family.holes) holes.push_back(h);
    Json record{{"command", "four-holes"},
                {"n", m},
                {"guaranteed", m < 3 ? 0 : (m - 3) / 2},
                {"count", family.holes.size()},
                {"holes", holes}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "disjoint 4-holes: " << family.holes.size() << " (guaranteed "
              << (m < 3 ? 0 : (m - 3) / 2) << ")\n";
  });
}

void add_es_bound(CLI::App& app) {
  auto* sub = app.add_subcommand("es-bound", "closed-form k-gon bound");
  auto k = std::make_shared<int>(0);
  sub->add_option("--k", *k, "gon size (k >= 6)")->required();
  sub->callback([k] {
    const std::uint64_t bound = garment::es_upper_bound(*k);
    if (g_json) {
      emit(Json{{"command", "es-bound"}, {"k", *k}, {"bound", bound}});
      return;
    }
    std::cout << bound << "\n";
  });
}

void add_scan_colorings(CLI::App& app) {
  auto* sub = app.add_subcommand("scan-colorings",
                                 "scan every 2-coloring for empty monochromatic structures");
  struct Opts {
    std::string file, kinds_csv;
    bool no_halve = false, corollary = false;
    std::uint64_t max_colorings = 0;
    unsigned jobs = 0;
  };
  auto opt = std::make_shared<Opts>();
  sub->add_option("file", opt->file, "point-set document")->required();
  sub->add_option("--kinds", opt->kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->add_flag("--no-halve", opt->no_halve, "do not quotient by the color swap");
  sub->add_flag("--corollary-layers", opt->corollary,
                "restrict to the 11-point layered-coloring casework");
  sub->add_option("--max-colorings", opt->max_colorings, "scan cap (0 = exhaustive)");
  sub->add_option("--jobs", opt->jobs, "worker threads (0 = auto)");
  sub->callback([opt] {
    const auto pts = load_document(opt->file).to_validated_points();
    garment::ColoringPolicy policy;
    policy.halve_by_color_swap = !opt->no_halve;
    policy.corollary_layers = opt->corollary;
    policy.max_colorings = opt->max_colorings;
    const auto report =
        garment::scan_colorings(pts, garment::parse_kinds(opt->kinds_csv), policy, opt->jobs);
    Json record{{"command", "scan-colorings"},
                {"kinds", garment::to_string(report.kinds)},
                {"n", report.n},
                {"verdict", garment::to_string(report.verdict)},
                {"colorings_checked", report.colorings_checked},
                {"colorings_total", report.colorings_total},
                {"filtered_out", report.filtered_out}};
    if (!report.counterexample.empty()) {
      record["counterexample"] = colors_str(report.counterexample);
    }
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "verdict: " << garment::to_string(report.verdict) << " ("
              << report.colorings_checked << "/" << report.colorings_total << " colorings)\n";
    if (report.filtered_out) std::cout << "filtered out by the layer casework\n";
    if (!report.counterexample.empty()) {
      std::cout << "counterexample coloring: " << colors_str(report.counterexample) << "\n";
    }
  });
}

void add_scan_db(CLI::App& app) {
  auto* sub = app.add_subcommand("scan-db", "scan an order-type database file");
  struct Opts {
    std::string path, kinds_csv;
    garment::DbScanOptions db;
    bool no_halve = false, corollary = false;
    std::uint64_t max_colorings = 0;
  };
  auto opt = std::make_shared<Opts>();
  sub->add_option("file", opt->path, "binary order-type database")->required();
  sub->add_option("--n", opt->db.n, "points per record")->required();
  sub->add_option("--kinds", opt->kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->add_option("--coord-bytes", opt->db.coord_bytes, "coordinate width (0 = derive from n)");
  sub->add_flag("--big-endian", opt->db.big_endian, "two-byte coordinates are big-endian");
  sub->add_option("--start-record", opt->db.start_record, "resume from this record");
  sub->add_option("--max-records", opt->db.max_records, "scan at most this many records");
  sub->add_option("--checkpoint-every", opt->db.checkpoint_every,
                  "progress record frequency (0 = end only)");
  sub->add_flag("--no-halve", opt->no_halve, "do not quotient colorings by the color swap");
  sub->add_flag("--corollary-layers", opt->corollary,
                "restrict to the 11-point layered-coloring casework");
  sub->add_option("--max-colorings", opt->max_colorings, "per-record coloring cap");
  sub->add_option("--jobs", opt->db.jobs, "worker threads (0 = auto)");
  sub->callback([opt] {
    require_readable(opt->path);
    opt->db.kinds = garment::parse_kinds(opt->kinds_csv);
    opt->db.policy.halve_by_color_swap = !opt->no_halve;
    opt->db.policy.corollary_layers = opt->corollary;
    opt->db.policy.max_colorings = opt->max_colorings;
    const auto summary =
        garment::scan_order_type_db(opt->path, opt->db, [](std::uint64_t next) {
          if (g_json) {
            emit(Json{{"command", "scan-db"}, {"event", "checkpoint"}, {"next_record", next}});
          } else {
            std::cout << "checkpoint: next record " << next << "\n";
          }
        });
    Json reports = Json::array();
    for (size_t i = 0; i < summary.counterexample_reports.size() && i < 1000; ++i) {
      const auto& rep = summary.counterexample_reports[i];
      reports.push_back(Json{{"record", rep.record_index},
                             {"counterexample", colors_str(rep.counterexample)}});
    }
    Json record{{"command", "scan-db"},
                {"event", "summary"},
                {"first_record", summary.first_record},
                {"records_scanned", summary.records_scanned},
                {"filtered_out", summary.filtered_out},
                {"counterexamples", summary.counterexamples},
                {"next_record", summary.next_record},
                {"reports", reports},
                {"reports_truncated", summary.counterexample_reports.size() > 1000}};
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << "scanned " << summary.records_scanned << " records (" << summary.filtered_out
              << " filtered, " << summary.counterexamples << " counterexamples), next record "
              << summary.next_record << "\n";
    for (size_t i = 0; i < summary.counterexample_reports.size() && i < 10; ++i) {
      const auto& rep = summary.counterexample_reports[i];
      std::cout << "counterexample at record " << rep.record_index << ": "
                << colors_str(rep.counterexample) << "\n";
    }
  });
}

void add_search_lb(CLI::App& app) {
  auto* sub = app.add_subcommand("search-lb",
                                 "anneal toward a coloring-defeating construction");
  struct Opts {
    int n = 0;
    std::string kinds_csv, out;
    std::uint64_t seed = 0;
    garment::AnnealOptions anneal;
  };
  auto opt = std::make_shared<Opts>();
  sub->add_option("--n", opt->n, "points to place")->required();
  sub->add_option("--kinds", opt->kinds_csv, "comma-separated structure kinds")
      ->required()
      ->check(KindsValidator);
  sub->add_option("--seed", opt->seed, "PRNG seed")->required();
  sub->add_option("--budget", opt->anneal.budget, "total moves across all chains");
  sub->add_option("--jobs", opt->anneal.jobs, "parallel chains (0 = auto)");
  sub->add_option("--coord-range", opt->anneal.coord_range, "coordinates stay in [0, range)");
  sub->add_option("--t-start", opt->anneal.t_start, "initial temperature");
  sub->add_option("--t-end", opt->anneal.t_end, "final temperature");
  sub->add_option("--restart-after", opt->anneal.restart_after, "anneal cycle length in moves");
  sub->add_option("--trace-points", opt->anneal.trace_points, "energy trace granularity");
  sub->add_option("--out", opt->out, "write the best construction as a document");
  sub->callback([opt] {
    const auto kinds = garment::parse_kinds(opt->kinds_csv);
    const auto result = garment::lower_bound_search(opt->n, kinds, opt->seed, opt->anneal);
    if (!opt->out.empty()) {
      const garment::ColoredPointSet cps(result.points, result.colors,
                                         garment::ValidationMode::Full);
      auto doc = garment::make_document(
          cps, "search-lb n=" + std::to_string(result.n) + " kinds=" +
                   garment::to_string(kinds) + " seed=" + std::to_string(result.seed));
      if (result.success) doc.avoided_kinds = kinds.list();
      try {
        garment::write_document_file(opt->out, doc);
      } catch (const garment::Error& e) {
        throw IoFailure{e.what()};
      }
    }
    Json record{{"command", "search-lb"},
                {"n", result.n},
                {"kinds", garment::to_string(kinds)},
                {"seed", result.seed},
                {"success", result.success},
                {"best_energy", result.best_energy},
                {"moves_used", result.moves_used},
                {"energy_trace", result.energy_trace}};
    if (!opt->out.empty()) record["out"] = opt->out;
    if (g_json) {
      emit(record);
      return;
    }
    std::cout << (result.success ? "success" : "no zero-energy construction") << ": best energy "
              << result.best_energy << " after " << result.moves_used << " moves\n";
    if (!opt->out.empty()) std::cout << "wrote " << opt->out << "\n";
  });
}

void add_render(CLI::App& app) {
  auto* sub = app.add_subcommand("render", "draw a document as SVG");
  struct Opts {
    std::string file, out, witnesses_csv;
    std::vector<std::string> highlight_specs;
  };
  auto opt = std::make_shared<Opts>();
  sub->add_option("file", opt->file, "point-set document")->required();
  sub->add_option("-o,--out", opt->out, "output path (stdout when omitted)");
  sub->add_option("--witnesses", opt->witnesses_csv,
                  "highlight every empty monochromatic structure of these kinds")
      ->check(KindsValidator);
  sub->add_option("--highlight", opt->highlight_specs,
                  "explicit instance as kind:a,b,c,d[:variant]");
  sub->callback([opt] {
    const auto doc = load_document(opt->file);
    std::vector<garment::StructureInstance> highlights;
    for (const std::string& spec : opt->highlight_specs) {
      const size_t kind_end = spec.find(':');
      if (kind_end == std::string::npos) {
        throw garment::Error("render: highlight '" + spec + "' is not kind:a,b,c,d[:variant]");
      }
      const auto kind = garment::parse_kind(spec.substr(0, kind_end));
      if (!kind) throw garment::Error("render: unknown kind in highlight '" + spec + "'");
      garment::StructureInstance inst;
      inst.kind = *kind;
      const size_t var_at = spec.find(':', kind_end + 1);
      std::stringstream idx(spec.substr(kind_end + 1, var_at == std::string::npos
                                                          ? std::string::npos
                                                          : var_at - kind_end - 1));
      std::string token;
      int got = 0;
      while (std::getline(idx, token, ',')) {
        if (got == 4) throw garment::Error("render: highlight '" + spec + "' has extra indices");
        inst.idx[static_cast<size_t>(got++)] = std::stoi(token);
      }
      if (got != 4) throw garment::Error("render: highlight '" + spec + "' needs four indices");
      if (var_at != std::string::npos) {
        inst.variant = static_cast<std::uint8_t>(std::stoi(spec.substr(var_at + 1)));
      }
      highlights.push_back(inst);
    }
    if (!opt->witnesses_csv.empty()) {
      const auto found = garment::empty_monochromatic_structures(
          doc.to_colored_set(), garment::parse_kinds(opt->witnesses_csv));
      highlights.insert(highlights.end(), found.begin(), found.end());
    }
    const std::string svg = garment::render_svg(doc, highlights);
    if (opt->out.empty()) {
      std::cout << svg;
      return;
    }
    std::ofstream out(opt->out, std::ios::binary);
    if (!out) throw IoFailure{"cannot open " + opt->out};
    out << svg;
    if (!out) throw IoFailure{"write failed on " + opt->out};
    if (g_json) {
      emit(Json{{"command", "render"},
                {"out", opt->out},
                {"bytes", svg.size()},
                {"highlights", highlights.size()}});
      return;
    }
    std::cout << "wrote " << opt->out << " (" << svg.size() << " bytes)\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for bichromatic planar point structures"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_json, "one machine-readable record per result");

  add_classify(app);
  add_check(app);
  add_verify(app);
  add_min_blockers(app);
  add_verify_pair(app);
  add_closure(app);
  add_holes(app);
  add_six_island(app);
  add_island(app);
  add_four_holes(app);
  add_es_bound(app);
  add_scan_colorings(app);
  add_scan_db(app);
  add_search_lb(app);
  add_render(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitIo;
  } catch (const garment::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}

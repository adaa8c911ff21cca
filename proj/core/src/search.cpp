#include "garment/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "garment/detail/splitmix.hpp"
#include "garment/parallel.hpp"

namespace garment {

namespace {

using detail::SplitMix;

bool extends_general_position(std::span<const Point> pts, int count, const Point& cand) {
  for (int i = 0; i < count; ++i) {
    if (pts[static_cast<size_t>(i)] == cand) return false;
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (orient(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)], cand) == 0) return false;
    }
  }
  return true;
}

std::uint32_t member_mask(const StructureInstance& inst) {
  std::uint32_t m = 0;
  for (int i : inst.idx) m |= 1u << i;
  return m;
}

bool monochromatic_mask(std::uint32_t members, std::uint32_t reds) {
  const std::uint32_t r = members & reds;
  return r == members || r == 0;
}

}  // namespace

std::vector<Point> random_point_set(int n, std::uint64_t seed, std::int64_t coord_max) {
  if (n < 0) throw Error("random_point_set: negative size");
  if (coord_max < 1 || coord_max > kCoordCap) {
    throw CoordOutOfRange("random_point_set: coord_max outside [1, cap]");
  }
  // A cramped grid can make general position unreachable; fail early instead
  // of spinning (a k x k grid holds at most 2k points with no 3 collinear).
  if (n > 2 * (2 * coord_max + 1)) {
    throw Error("random_point_set: coordinate range too small for general position");
  }
  SplitMix rng(seed ^ 0x5bf03635d1f2bd7bULL);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n));
  while (static_cast<int>(pts.size()) < n) {
    const Point cand{rng.range(-coord_max, coord_max), rng.range(-coord_max, coord_max)};
    if (extends_general_position(pts, static_cast<int>(pts.size()), cand)) {
      pts.push_back(cand);
    }
  }
  return pts;
}

OrderTypeSample sample_order_types(int n, std::int64_t budget, std::uint64_t seed) {
  if (n < 3 || n > 10) throw Error("sample_order_types: n must be in [3, 10]");
  if (budget < 1) throw Error("sample_order_types: budget must be positive");
  OrderTypeSample out;
  std::unordered_set<Chirotope> seen;
  const std::int64_t batch = std::max<std::int64_t>(1, std::min<std::int64_t>(1024, budget / 8));
  SplitMix seeder(seed);
  std::int64_t drawn = 0;
  while (drawn < budget) {
    const std::int64_t step = std::min(batch, budget - drawn);
    int fresh = 0;
    for (std::int64_t t = 0; t < step; ++t) {
      auto pts = random_point_set(n, seeder.next());
      auto fp = chirotope_fingerprint(pts);
      if (seen.insert(std::move(fp)).second) {
        out.representatives.push_back(std::move(pts));
        ++fresh;
      }
    }
    drawn += step;
    out.saturation.push_back(SaturationPoint{drawn, fresh, static_cast<int>(seen.size())});
  }
  return out;
}

namespace {

// A structure is empty under a coloring iff its quadruple is monochromatic
// and no fifth point of any color sits in its closed region; the second part
// is color-free, so a coloring scan only needs the member masks of these
// "open" instances.
std::vector<std::uint32_t> open_instance_masks(std::span<const Point> ps,
                                               const KindSet& kinds) {
  const int n = static_cast<int>(ps.size());
  std::vector<std::uint32_t> open;
  std::array<int, 4> q;
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = q[0] + 1; q[1] < n; ++q[1])
      for (q[2] = q[1] + 1; q[2] < n; ++q[2])
        for (q[3] = q[2] + 1; q[3] < n; ++q[3]) {
          for (const auto& inst : instances_on_quadruple(ps, q)) {
            if (!kinds.contains(inst.kind)) continue;
            const std::uint32_t members = member_mask(inst);
            bool pierced = false;
            for (int i = 0; i < n && !pierced; ++i) {
              if ((members >> i & 1) == 0) pierced = region_contains(inst, ps, ps[static_cast<size_t>(i)]);
            }
            if (!pierced) open.push_back(members);
          }
        }
  return open;
}

// Convex-layer shape filter from the 11-point casework: hull of size 3 (to be
// colored red), second layer of size 4 (to be colored blue), remaining 4
// points split 3 red / 1 blue for a 6-red 5-blue total.
std::optional<std::vector<std::uint32_t>> corollary_coloring_masks(std::span<const Point> ps) {
  if (ps.size() != 11) return std::nullopt;
  const auto hull = convex_hull(ps);
  if (hull.size() != 3) return std::nullopt;
  std::vector<Point> rest;
  std::vector<int> rest_idx;
  std::vector<bool> on_hull(ps.size(), false);
  for (int i : hull) on_hull[static_cast<size_t>(i)] = true;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (!on_hull[i]) {
      rest.push_back(ps[i]);
      rest_idx.push_back(static_cast<int>(i));
    }
  }
  const auto layer2 = convex_hull(rest);
  if (layer2.size() != 4) return std::nullopt;
  std::vector<bool> on_layer2(ps.size(), false);
  for (int i : layer2) on_layer2[static_cast<size_t>(rest_idx[static_cast<size_t>(i)])] = true;
  std::uint32_t base = 0;
  std::vector<int> inner;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (on_hull[i]) base |= 1u << i;
    if (!on_hull[i] && !on_layer2[i]) inner.push_back(static_cast<int>(i));
  }
  std::vector<std::uint32_t> masks;
  for (int blue : inner) {  // three of the four innermost points turn red
    std::uint32_t reds = base;
    for (int i : inner) {
      if (i != blue) reds |= 1u << i;
    }
    masks.push_back(reds);
  }
  return masks;
}

}  // namespace

GarmentReport scan_colorings(std::span<const Point> ps, const KindSet& kinds,
                             const ColoringPolicy& policy, unsigned jobs) {
  const int n = static_cast<int>(ps.size());
  if (n < 1) throw Error("scan_colorings: empty point set");
  if (n > 24) throw TooLarge("scan_colorings: at most 24 points");
  if (kinds.empty()) throw Error("scan_colorings: empty kind set");
  validate_general_position(ps, ValidationMode::Full);

  GarmentReport report;
  report.n = n;
  report.kinds = kinds;

  std::vector<std::uint32_t> explicit_masks;
  if (policy.corollary_layers) {
    auto masks = corollary_coloring_masks(ps);
    if (!masks) {
      report.filtered_out = true;
      return report;
    }
    explicit_masks = std::move(*masks);
    report.colorings_total = explicit_masks.size();
  } else {
    report.colorings_total = std::uint64_t(1)
                             << (policy.halve_by_color_swap ? n - 1 : n);
  }

  std::uint64_t scan_count = report.colorings_total;
  if (policy.max_colorings > 0) scan_count = std::min(scan_count, policy.max_colorings);

  const auto open = open_instance_masks(ps, kinds);
  const unsigned workers = jobs == 0 ? default_thread_count() : jobs;
  std::vector<std::uint64_t> checked(workers, 0);
  std::vector<std::int64_t> first(workers, -1);
  parallel_blocks(static_cast<int>(scan_count), workers, [&](int lo, int hi, unsigned slot) {
    for (int i = lo; i < hi; ++i) {
      ++checked[slot];
      const std::uint32_t reds =
          policy.corollary_layers
              ? explicit_masks[static_cast<size_t>(i)]
              : (policy.halve_by_color_swap ? (static_cast<std::uint32_t>(i) << 1) | 1u
                                            : static_cast<std::uint32_t>(i));
      bool has_empty = false;
      for (const std::uint32_t m : open) {
        if (monochromatic_mask(m, reds)) {
          has_empty = true;
          break;
        }
      }
      if (!has_empty) {
        first[slot] = i;
        break;
      }
    }
  });
  for (unsigned w = 0; w < workers; ++w) report.colorings_checked += checked[w];
  std::int64_t hit = -1;
  for (unsigned w = 0; w < workers; ++w) {
    if (first[w] >= 0 && (hit < 0 || first[w] < hit)) hit = first[w];
  }
  if (hit >= 0) {
    report.verdict = GarmentVerdict::CounterexampleColoring;
    const std::uint32_t reds =
        policy.corollary_layers
            ? explicit_masks[static_cast<size_t>(hit)]
            : (policy.halve_by_color_swap ? (static_cast<std::uint32_t>(hit) << 1) | 1u
                                          : static_cast<std::uint32_t>(hit));
    report.counterexample.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      report.counterexample[static_cast<size_t>(i)] = (reds >> i & 1) ? Color::Red : Color::Blue;
    }
  } else if (scan_count < report.colorings_total) {
    report.verdict = GarmentVerdict::Inconclusive;
  } else {
    report.verdict = GarmentVerdict::AllColoringsContainEmpty;
  }
  return report;
}

namespace {

int resolve_coord_bytes(int n, int coord_bytes) {
  const int bytes = coord_bytes == 0 ? (n <= 8 ? 1 : 2) : coord_bytes;
  if (bytes != 1 && bytes != 2) {
    throw Error("order-type database: coordinate width must be 1 or 2 bytes");
  }
  return bytes;
}

std::int64_t decode_coord(const unsigned char* at, int bytes, bool big_endian) {
  if (bytes == 1) return *at;
  return big_endian ? (static_cast<std::int64_t>(at[0]) << 8 | at[1])
                    : (static_cast<std::int64_t>(at[1]) << 8 | at[0]);
}

}  // namespace

DbScanSummary scan_order_type_db(const std::string& path, const DbScanOptions& opt,
                                 const std::function<void(std::uint64_t)>& on_checkpoint) {
  if (opt.n < 3) throw Error("scan_order_type_db: records need at least 3 points");
  if (opt.n > 24) throw TooLarge("scan_order_type_db: at most 24 points per record");
  const int bytes = resolve_coord_bytes(opt.n, opt.coord_bytes);
  const std::uint64_t record_len = static_cast<std::uint64_t>(opt.n) * 2 * bytes;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("scan_order_type_db: cannot open " + path);
  in.seekg(0, std::ios::end);
  const std::uint64_t file_len = static_cast<std::uint64_t>(in.tellg());
  if (file_len % record_len != 0) {
    throw BadRecordLength(file_len - file_len % record_len,
                          "scan_order_type_db: truncated trailing record");
  }
  const std::uint64_t total = file_len / record_len;
  if (opt.start_record > total) {
    throw Error("scan_order_type_db: start_record beyond end of database");
  }
  std::uint64_t remaining = total - opt.start_record;
  if (opt.max_records > 0) remaining = std::min(remaining, opt.max_records);

  DbScanSummary summary;
  summary.first_record = opt.start_record;
  summary.next_record = opt.start_record;
  in.seekg(static_cast<std::streamoff>(opt.start_record * record_len));

  const unsigned workers = opt.jobs == 0 ? default_thread_count() : opt.jobs;
  const std::uint64_t chunk_records = std::max<std::uint64_t>(workers * 256, 1024);
  std::vector<unsigned char> buf;
  std::vector<GarmentReport> reports;
  std::uint64_t since_checkpoint = 0;
  while (remaining > 0) {
    const std::uint64_t batch = std::min(remaining, chunk_records);
    buf.resize(batch * record_len);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != buf.size()) {
      throw Error("scan_order_type_db: read failed on " + path);
    }
    reports.assign(batch, GarmentReport{});
    std::exception_ptr fail;
    std::int64_t fail_at = -1;
    std::mutex fail_mu;
    parallel_blocks(static_cast<int>(batch), workers, [&](int lo, int hi, unsigned) {
      for (int rec = lo; rec < hi; ++rec) {
        try {
          std::vector<Point> pts(static_cast<size_t>(opt.n));
          const unsigned char* at = buf.data() + static_cast<std::uint64_t>(rec) * record_len;
          for (int i = 0; i < opt.n; ++i) {
            pts[static_cast<size_t>(i)].x = decode_coord(at, bytes, opt.big_endian);
            pts[static_cast<size_t>(i)].y = decode_coord(at + bytes, bytes, opt.big_endian);
            at += 2 * bytes;
          }
          reports[static_cast<size_t>(rec)] = scan_colorings(pts, opt.kinds, opt.policy, 1);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(fail_mu);
          if (fail_at < 0 || rec < fail_at) {
            fail_at = rec;
            fail = std::current_exception();
          }
        }
      }
    });
    if (fail) {
      try {
        std::rethrow_exception(fail);
      } catch (const Error& e) {
        throw Error("scan_order_type_db: record " +
                    std::to_string(summary.next_record + static_cast<std::uint64_t>(fail_at)) +
                    ": " + e.what());
      }
    }
    for (std::uint64_t rec = 0; rec < batch; ++rec) {
      GarmentReport& rep = reports[static_cast<size_t>(rec)];
      rep.record_index = summary.next_record + rec;
      ++summary.records_scanned;
      if (rep.filtered_out) ++summary.filtered_out;
      if (rep.verdict == GarmentVerdict::CounterexampleColoring) {
        ++summary.counterexamples;
        summary.counterexample_reports.push_back(std::move(rep));
      }
      ++since_checkpoint;
      if (opt.checkpoint_every > 0 && since_checkpoint == opt.checkpoint_every) {
        since_checkpoint = 0;
        if (on_checkpoint) on_checkpoint(summary.next_record + rec + 1);
      }
    }
    summary.next_record += batch;
    remaining -= batch;
  }
  if (on_checkpoint && since_checkpoint > 0) on_checkpoint(summary.next_record);
  return summary;
}

void write_order_type_db(const std::string& path,
                         const std::vector<std::vector<Point>>& sets, int coord_bytes,
                         bool big_endian) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("write_order_type_db: cannot open " + path);
  if (sets.empty()) return;
  const int n = static_cast<int>(sets.front().size());
  const int bytes = resolve_coord_bytes(n, coord_bytes);
  const std::int64_t cap = bytes == 1 ? 0xff : 0xffff;
  std::vector<unsigned char> rec(static_cast<size_t>(n) * 2 * static_cast<size_t>(bytes));
  for (const auto& pts : sets) {
    if (static_cast<int>(pts.size()) != n) {
      throw Error("write_order_type_db: all records must have the same point count");
    }
    unsigned char* at = rec.data();
    for (const Point& p : pts) {
      for (const std::int64_t v : {p.x, p.y}) {
        if (v < 0 || v > cap) {
          throw CoordOutOfRange("write_order_type_db: coordinate outside unsigned range");
        }
        if (bytes == 1) {
          *at++ = static_cast<unsigned char>(v);
        } else if (big_endian) {
          *at++ = static_cast<unsigned char>(v >> 8);
          *at++ = static_cast<unsigned char>(v & 0xff);
        } else {
          *at++ = static_cast<unsigned char>(v & 0xff);
          *at++ = static_cast<unsigned char>(v >> 8);
        }
      }
    }
    out.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
  }
  if (!out) throw Error("write_order_type_db: write failed on " + path);
}

ConstructionVerdict verify_construction(const ColoredPointSet& cps, const KindSet& kinds) {
  ConstructionVerdict verdict;
  verdict.ok = true;
  const auto& pts = cps.points();
  const int n = cps.size();
  std::array<int, 4> q;
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = q[0] + 1; q[1] < n; ++q[1])
      for (q[2] = q[1] + 1; q[2] < n; ++q[2])
        for (q[3] = q[2] + 1; q[3] < n; ++q[3]) {
          const Color c = cps.color(q[0]);
          if (cps.color(q[1]) != c || cps.color(q[2]) != c || cps.color(q[3]) != c) continue;
          for (const auto& inst : instances_on_quadruple(pts, q)) {
            if (!kinds.contains(inst.kind)) continue;
            CensusEntry entry{inst, structure_status(inst, cps), std::nullopt};
            if (entry.status.blocked) {
              for (int i = 0; i < n && !entry.blocker; ++i) {
                if (cps.color(i) != c && region_contains(inst, pts, cps.point(i))) {
                  entry.blocker = i;
                }
              }
            }
            if (entry.status.empty()) verdict.ok = false;
            verdict.monochromatic.push_back(std::move(entry));
          }
        }
  return verdict;
}

namespace {

// One structure instance in the incremental census: members is the 4-point
// index mask, inside the mask of fifth points in the closed region. An
// instance contributes an empty structure iff inside == 0 and its members are
// monochromatic under the current coloring.
struct CensusInst {
  StructureInstance inst;
  std::uint32_t members = 0;
  std::uint32_t inside = 0;
};

class AnnealChain {
 public:
  AnnealChain(int n, const KindSet& kinds, std::uint64_t seed, std::int64_t budget,
              const AnnealOptions& opt)
      : n_(n), kinds_(kinds), opt_(opt), rng_(seed), budget_(budget) {
    quad_of_.reserve(quad_count(n));
    std::array<int, 4> q;
    for (q[0] = 0; q[0] < n; ++q[0])
      for (q[1] = q[0] + 1; q[1] < n; ++q[1])
        for (q[2] = q[1] + 1; q[2] < n; ++q[2])
          for (q[3] = q[2] + 1; q[3] < n; ++q[3]) quad_of_.push_back(q);
    quads_.resize(quad_of_.size());
    randomize();
    best_energy_ = energy_;
    best_pts_ = pts_;
    best_reds_ = reds_;
    cycle_start_best_ = best_energy_;
    cycle_len_ = opt.restart_after > 0 ? std::min(opt.restart_after, budget_) : budget_;
    trace_step_ = std::max<std::int64_t>(1, budget_ / opt.trace_points);
  }

  bool done() const { return best_energy_ == 0 || used_ == budget_; }
  std::int64_t used() const { return used_; }

  // Advances up to `chunk` proposals; stops at success or budget exhaustion.
  // One anneal cycle spans cycle_len_ proposals with a geometric temperature
  // decay; a cycle that fails to improve the chain best restarts from a fresh
  // random state.
  void run(std::int64_t chunk) {
    while (chunk > 0 && !done()) {
      --chunk;
      ++used_;
      ++cycle_pos_;
      const bool accepted = propose(temperature());
      (void)accepted;
      if (energy_ < best_energy_) {
        best_energy_ = energy_;
        best_pts_ = pts_;
        best_reds_ = reds_;
      }
      if (used_ % trace_step_ == 0) trace_.push_back(best_energy_);
      if (cycle_pos_ >= cycle_len_ && used_ < budget_ && best_energy_ > 0) {
        if (best_energy_ >= cycle_start_best_) randomize();
        cycle_start_best_ = best_energy_;
        cycle_pos_ = 0;
      }
    }
  }

  std::int64_t best_energy() const { return best_energy_; }
  const std::vector<Point>& best_points() const { return best_pts_; }
  std::vector<Color> best_colors() const {
    std::vector<Color> colors(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      colors[static_cast<size_t>(i)] = (best_reds_ >> i & 1) ? Color::Red : Color::Blue;
    }
    return colors;
  }
  const std::vector<std::int64_t>& trace() const { return trace_; }

 private:
  static size_t quad_count(int n) {
    return static_cast<size_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
  }

  double temperature() const {
    if (cycle_len_ < 2) return opt_.t_end;
    const double frac = static_cast<double>(std::min(cycle_pos_, cycle_len_) - 1) /
                        static_cast<double>(cycle_len_ - 1);
    return opt_.t_start * std::pow(opt_.t_end / opt_.t_start, frac);
  }

  void randomize() {
    pts_.clear();
    while (static_cast<int>(pts_.size()) < n_) {
      const Point cand{static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(opt_.coord_range))),
                       static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(opt_.coord_range)))};
      if (extends_general_position(pts_, static_cast<int>(pts_.size()), cand)) {
        pts_.push_back(cand);
      }
    }
    reds_ = static_cast<std::uint32_t>(rng_.next()) & ((1u << n_) - 1);
    for (size_t r = 0; r < quads_.size(); ++r) rebuild_quad(r);
    energy_ = full_energy();
  }

  void rebuild_quad(size_t rank) {
    auto& list = quads_[rank];
    list.clear();
    for (const auto& inst : instances_on_quadruple(pts_, quad_of_[rank])) {
      if (!kinds_.contains(inst.kind)) continue;
      CensusInst ci{inst, member_mask(inst), 0};
      for (int i = 0; i < n_; ++i) {
        if ((ci.members >> i & 1) == 0 && region_contains(inst, pts_, pts_[static_cast<size_t>(i)])) {
          ci.inside |= 1u << i;
        }
      }
      list.push_back(ci);
    }
  }

  std::int64_t quad_energy(size_t rank) const {
    std::int64_t e = 0;
    for (const CensusInst& ci : quads_[rank]) {
      e += ci.inside == 0 && monochromatic_mask(ci.members, reds_);
    }
    return e;
  }

  std::int64_t full_energy() const {
    std::int64_t e = 0;
    for (size_t r = 0; r < quads_.size(); ++r) e += quad_energy(r);
    return e;
  }

  bool metropolis(std::int64_t delta, double temp) {
    if (delta <= 0) return true;
    return rng_.unit() < std::exp(-static_cast<double>(delta) / temp);
  }

  bool propose(double temp) {
    const std::uint64_t kind = rng_.below(10);
    if (kind < 5) return propose_jitter(temp);
    if (kind < 8) return propose_flip(temp);
    return propose_swap(temp);
  }

  // Color-only moves: geometry fixed, only quads touching the flipped points
  // change their monochromatic status.
  std::int64_t recolor_delta(std::uint32_t flip_mask, std::uint32_t new_reds) const {
    std::int64_t delta = 0;
    for (size_t r = 0; r < quads_.size(); ++r) {
      bool touched = false;
      for (int i : quad_of_[r]) touched = touched || (flip_mask >> i & 1);
      if (!touched) continue;
      for (const CensusInst& ci : quads_[r]) {
        if (ci.inside != 0) continue;
        delta += static_cast<int>(monochromatic_mask(ci.members, new_reds)) -
                 static_cast<int>(monochromatic_mask(ci.members, reds_));
      }
    }
    return delta;
  }

  bool propose_flip(double temp) {
    const int p = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    const std::uint32_t new_reds = reds_ ^ (1u << p);
    const std::int64_t delta = recolor_delta(1u << p, new_reds);
    if (!metropolis(delta, temp)) return false;
    reds_ = new_reds;
    energy_ += delta;
    return true;
  }

  bool propose_swap(double temp) {
    const int p = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    const int q = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    if (p == q || ((reds_ >> p & 1) == (reds_ >> q & 1))) return false;
    const std::uint32_t mask = (1u << p) | (1u << q);
    const std::uint32_t new_reds = reds_ ^ mask;
    const std::int64_t delta = recolor_delta(mask, new_reds);
    if (!metropolis(delta, temp)) return false;
    reds_ = new_reds;
    energy_ += delta;
    return true;
  }

  bool propose_jitter(double temp) {
    const int p = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
    const int bits = 63 - __builtin_clzll(static_cast<std::uint64_t>(opt_.coord_range));
    const std::int64_t mag =
        std::max<std::int64_t>(1, opt_.coord_range >> (1 + rng_.below(static_cast<std::uint64_t>(bits))));
    const Point old = pts_[static_cast<size_t>(p)];
    Point cand{std::clamp<std::int64_t>(old.x + rng_.range(-mag, mag), 0, opt_.coord_range - 1),
               std::clamp<std::int64_t>(old.y + rng_.range(-mag, mag), 0, opt_.coord_range - 1)};
    if (cand == old) return false;
    // General position against the unmoved points.
    for (int i = 0; i < n_; ++i) {
      if (i != p && pts_[static_cast<size_t>(i)] == cand) return false;
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (i == p || j == p) continue;
        if (orient(pts_[static_cast<size_t>(i)], pts_[static_cast<size_t>(j)], cand) == 0) {
          return false;
        }
      }
    }

    // Apply, tracking enough to undo: quads containing p rebuild, all other
    // instances re-test p's membership bit.
    undo_quads_.clear();
    undo_bits_.clear();
    std::int64_t delta = 0;
    pts_[static_cast<size_t>(p)] = cand;
    for (size_t r = 0; r < quads_.size(); ++r) {
      const auto& q = quad_of_[r];
      if (q[0] == p || q[1] == p || q[2] == p || q[3] == p) {
        delta -= quad_energy(r);
        undo_quads_.emplace_back(r, quads_[r]);
        rebuild_quad(r);
        delta += quad_energy(r);
        continue;
      }
      auto& list = quads_[r];
      for (size_t k = 0; k < list.size(); ++k) {
        CensusInst& ci = list[k];
        const std::uint32_t bit = 1u << p;
        const bool was = (ci.inside & bit) != 0;
        const bool now = region_contains(ci.inst, pts_, cand);
        if (was == now) continue;
        undo_bits_.emplace_back(r, k);
        const bool mono = monochromatic_mask(ci.members, reds_);
        if (now) {
          delta -= (ci.inside == 0 && mono);
          ci.inside |= bit;
        } else {
          ci.inside &= ~bit;
          delta += (ci.inside == 0 && mono);
        }
      }
    }
    if (metropolis(delta, temp)) {
      energy_ += delta;
      return true;
    }
    pts_[static_cast<size_t>(p)] = old;
    for (auto& [rank, saved] : undo_quads_) quads_[rank] = std::move(saved);
    const std::uint32_t bit = 1u << p;
    for (const auto& [rank, k] : undo_bits_) quads_[rank][k].inside ^= bit;
    return false;
  }

  int n_;
  KindSet kinds_;
  AnnealOptions opt_;
  SplitMix rng_;
  std::int64_t budget_ = 0;
  std::int64_t used_ = 0;
  std::int64_t cycle_len_ = 1;
  std::int64_t cycle_pos_ = 0;
  std::int64_t cycle_start_best_ = 0;
  std::int64_t trace_step_ = 1;
  std::vector<Point> pts_;
  std::uint32_t reds_ = 0;
  std::vector<std::array<int, 4>> quad_of_;
  std::vector<std::vector<CensusInst>> quads_;
  std::int64_t energy_ = 0;
  std::int64_t best_energy_ = 0;
  std::vector<Point> best_pts_;
  std::uint32_t best_reds_ = 0;
  std::vector<std::int64_t> trace_;
  std::vector<std::pair<size_t, std::vector<CensusInst>>> undo_quads_;
  std::vector<std::pair<size_t, size_t>> undo_bits_;
};

}  // namespace

ConstructionResult lower_bound_search(int n, const KindSet& kinds, std::uint64_t seed,
                                      const AnnealOptions& opt) {
  if (n < 1) throw Error("lower_bound_search: need at least one point");
  if (n > 24) throw TooLarge("lower_bound_search: at most 24 points");
  if (kinds.empty()) throw Error("lower_bound_search: empty kind set");
  if (opt.budget < 1) throw Error("lower_bound_search: budget must be positive");
  if (opt.coord_range < 2 || opt.coord_range > kCoordCap) {
    throw CoordOutOfRange("lower_bound_search: coord_range outside [2, cap]");
  }
  if (n > opt.coord_range) throw Error("lower_bound_search: coordinate range too small");
  if (!(opt.t_start >= opt.t_end && opt.t_end > 0)) {
    throw Error("lower_bound_search: temperatures must satisfy t_start >= t_end > 0");
  }
  if (opt.trace_points < 1) throw Error("lower_bound_search: trace_points must be positive");

  ConstructionResult result;
  result.n = n;
  result.kinds = kinds;
  result.seed = seed;

  unsigned chains = opt.jobs == 0 ? default_thread_count() : opt.jobs;
  chains = static_cast<unsigned>(
      std::min<std::int64_t>(chains, std::max<std::int64_t>(1, opt.budget)));
  const std::int64_t chain_budget = opt.budget / chains;
  SplitMix seeder(seed ^ 0x3c6ef372fe94f82bULL);
  std::vector<std::uint64_t> chain_seeds(chains);
  for (auto& s : chain_seeds) s = seeder.next();

  // Chains advance in lockstep rounds so that one chain's success stops the
  // others at a deterministic move count (wall-clock racing would not be
  // reproducible).
  std::vector<std::unique_ptr<AnnealChain>> state(chains);
  std::exception_ptr fail;
  std::mutex fail_mu;
  const std::int64_t round_len = std::clamp<std::int64_t>(chain_budget / 32, 1, 100'000);
  bool stop = false;
  while (!stop) {
    parallel_blocks(static_cast<int>(chains), chains, [&](int lo, int hi, unsigned) {
      try {
        for (int c = lo; c < hi; ++c) {
          if (!state[static_cast<size_t>(c)]) {
            state[static_cast<size_t>(c)] = std::make_unique<AnnealChain>(
                n, kinds, chain_seeds[static_cast<size_t>(c)],
                chain_budget + (c == 0 ? opt.budget % chains : 0), opt);
          }
          state[static_cast<size_t>(c)]->run(round_len);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(fail_mu);
        if (!fail) fail = std::current_exception();
      }
    });
    if (fail) std::rethrow_exception(fail);
    stop = true;
    for (const auto& chain : state) {
      if (chain->best_energy() == 0) {
        stop = true;
        break;
      }
      stop = stop && chain->done();
    }
  }

  size_t winner = 0;
  for (size_t c = 1; c < state.size(); ++c) {
    if (state[c]->best_energy() < state[winner]->best_energy()) winner = c;
  }
  const AnnealChain& best = *state[winner];
  result.points = best.best_points();
  result.colors = best.best_colors();
  result.energy_trace = best.trace();
  for (const auto& chain : state) result.moves_used += chain->used();

  // The incremental census is re-derived from scratch for the verdict.
  const ColoredPointSet cps(result.points, result.colors, ValidationMode::Full);
  result.best_energy =
      static_cast<std::int64_t>(empty_monochromatic_structures(cps, kinds).size());
  result.success = result.best_energy == 0;
  return result;
}

std::string to_string(GarmentVerdict v) {
  switch (v) {
    case GarmentVerdict::AllColoringsContainEmpty:
      return "all-colorings-contain-empty";
    case GarmentVerdict::CounterexampleColoring:
      return "counterexample-coloring";
    case GarmentVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace garment

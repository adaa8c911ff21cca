#include "garment/blocking.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_set>

#include "garment/detail/splitmix.hpp"
#include "garment/io.hpp"
#include "garment/parallel.hpp"
#include "garment/search.hpp"

namespace garment {

namespace {

// Line a*x + b*y + c = 0 through a red pair; coefficients fit int64 under the
// coordinate cap.
struct PairLine {
  std::int64_t a, b, c;
};

std::vector<PairLine> pair_lines(std::span<const Point> red) {
  const int r = static_cast<int>(red.size());
  std::vector<PairLine> lines;
  lines.reserve(static_cast<size_t>(r) * static_cast<size_t>(r - 1) / 2);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const Point& p = red[static_cast<size_t>(i)];
      const Point& q = red[static_cast<size_t>(j)];
      const std::int64_t a = p.y - q.y;
      const std::int64_t b = q.x - p.x;
      lines.push_back(PairLine{a, b, -(a * p.x + b * p.y)});
    }
  }
  return lines;
}

BigInt eval_line(const PairLine& l, const RatPoint& p) {
  return BigInt(l.a) * p.xn + BigInt(l.b) * p.yn + BigInt(l.c) * p.den;
}

struct Vertex {
  RatPoint pos;
  std::vector<int> incident;
};

// All pairwise line intersections, value-deduplicated, each annotated with
// every line through it (red points themselves are high-degree vertices).
std::vector<Vertex> arrangement_vertices(const std::vector<PairLine>& lines) {
  const int L = static_cast<int>(lines.size());
  std::map<std::tuple<BigInt, BigInt, BigInt>, int> seen;
  std::vector<Vertex> out;
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const BigInt det = BigInt(lines[static_cast<size_t>(i)].a) * lines[static_cast<size_t>(j)].b -
                         BigInt(lines[static_cast<size_t>(j)].a) * lines[static_cast<size_t>(i)].b;
      if (det == 0) continue;  // parallel pair lines never meet
      const BigInt xn = BigInt(lines[static_cast<size_t>(j)].c) * lines[static_cast<size_t>(i)].b -
                        BigInt(lines[static_cast<size_t>(i)].c) * lines[static_cast<size_t>(j)].b;
      const BigInt yn = BigInt(lines[static_cast<size_t>(i)].c) * lines[static_cast<size_t>(j)].a -
                        BigInt(lines[static_cast<size_t>(j)].c) * lines[static_cast<size_t>(i)].a;
      RatPoint v(xn, yn, det);
      auto key = std::make_tuple(v.xn, v.yn, v.den);
      if (seen.emplace(std::move(key), static_cast<int>(out.size())).second) {
        out.push_back(Vertex{std::move(v), {}});
      }
    }
  }
  for (Vertex& v : out) {
    for (int l = 0; l < L; ++l) {
      if (eval_line(lines[static_cast<size_t>(l)], v.pos) == 0) v.incident.push_back(l);
    }
  }
  return out;
}

struct Dir {
  std::int64_t x, y;
};

int half_of(const Dir& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

__int128 cross(const Dir& u, const Dir& v) {
  return static_cast<__int128>(u.x) * v.y - static_cast<__int128>(u.y) * v.x;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// One representative strictly inside every angular sector at the vertex. The
// step direction is the sum of the two boundary directions (strictly between
// them), scaled down so no non-incident line can be reached; both together
// put the representative inside the open cell cornered at this vertex.
void sector_reps(const Vertex& v, const std::vector<PairLine>& lines,
                 std::vector<RatPoint>& out) {
  std::vector<Dir> dirs;
  dirs.reserve(2 * v.incident.size());
  for (int l : v.incident) {
    Dir d{lines[static_cast<size_t>(l)].b, -lines[static_cast<size_t>(l)].a};
    const std::int64_t g = gcd64(d.x, d.y);
    d.x /= g;
    d.y /= g;
    dirs.push_back(d);
    dirs.push_back(Dir{-d.x, -d.y});
  }
  std::sort(dirs.begin(), dirs.end(), [](const Dir& u, const Dir& w) {
    const int hu = half_of(u), hw = half_of(w);
    if (hu != hw) return hu < hw;
    return cross(u, w) > 0;
  });

  // Largest safe step: strictly less than |line value| / (|a|+|b|) for every
  // non-incident line, all exact fractions.
  BigInt en = 1, ed = 1;
  bool bounded = false;
  {
    std::vector<char> is_incident(lines.size(), 0);
    for (int l : v.incident) is_incident[static_cast<size_t>(l)] = 1;
    for (size_t l = 0; l < lines.size(); ++l) {
      if (is_incident[l]) continue;
      BigInt num = abs(eval_line(lines[l], v.pos));
      BigInt den = (BigInt(std::llabs(lines[l].a)) + std::llabs(lines[l].b)) * v.pos.den;
      if (!bounded || num * ed < en * den) {
        en = std::move(num);
        ed = std::move(den);
        bounded = true;
      }
    }
  }

  const int m = static_cast<int>(dirs.size());
  for (int i = 0; i < m; ++i) {
    const Dir& d1 = dirs[static_cast<size_t>(i)];
    const Dir& d2 = dirs[static_cast<size_t>((i + 1) % m)];
    const Dir s{d1.x + d2.x, d1.y + d2.y};
    const std::int64_t mx = std::max(std::llabs(s.x), std::llabs(s.y));
    if (mx == 0) continue;  // antipodal neighbors cannot happen with >= 2 lines
    const BigInt scale = 2 * ed * mx;
    out.emplace_back(v.pos.xn * scale + BigInt(s.x) * en * v.pos.den,
                     v.pos.yn * scale + BigInt(s.y) * en * v.pos.den, v.pos.den * scale);
  }
}

bool strictly_inside_hull(std::span<const Point> red, std::span<const int> hull,
                          const RatPoint& p) {
  const int h = static_cast<int>(hull.size());
  for (int i = 0; i < h; ++i) {
    const Point& a = red[static_cast<size_t>(hull[static_cast<size_t>(i)])];
    const Point& b = red[static_cast<size_t>(hull[static_cast<size_t>((i + 1) % h)])];
    if (orient_rat(a, b, p) <= 0) return false;
  }
  return true;
}

// ---- exact hitting set ----

// Dynamic bitset helpers over vector<uint64_t>.
using Words = std::vector<std::uint64_t>;

bool is_subset(const Words& a, const Words& b) {
  for (size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

int popcount(const Words& a) {
  int n = 0;
  for (const std::uint64_t w : a) n += __builtin_popcountll(w);
  return n;
}

struct HittingSet {
  int ntgt = 0;   // surviving targets after reduction (compact indices)
  int words = 0;  // bitset words over surviving targets
  std::vector<std::vector<int>> tgt_cells;            // target -> covering cells
  std::vector<std::vector<std::uint64_t>> cell_mask;  // cell -> target bitset
  std::vector<int> cell_ids;                          // compact cell -> original index
  std::vector<int> forced;                            // original cells every solution needs
  std::vector<int> match_order;                       // targets by ascending degree

  int best = std::numeric_limits<int>::max();
  std::vector<int> best_cells;  // original indices, forced included
  std::vector<int> cur;
  bool stop_at_first = false;
  bool found = false;
  bool aborted = false;

  std::vector<int> cell_stamp;
  int epoch = 0;

  // Builds the instance and applies the standard sound reductions until
  // fixpoint: a target covered by a single cell forces that cell; a target
  // whose cell set contains another target's set is implied by it; a cell
  // whose target set is contained in another cell's is never needed.
  explicit HittingSet(const BlockingProblem& prob) {
    const int nt = static_cast<int>(prob.targets.size());
    const int nc = static_cast<int>(prob.cells.size());
    const int tw = (nt + 63) / 64;
    const int cw = (nc + 63) / 64;
    std::vector<Words> c_mask(static_cast<size_t>(nc), Words(static_cast<size_t>(tw), 0));
    std::vector<Words> t_mask(static_cast<size_t>(nt), Words(static_cast<size_t>(cw), 0));
    for (int c = 0; c < nc; ++c) {
      for (int t : prob.covers[static_cast<size_t>(c)]) {
        c_mask[static_cast<size_t>(c)][static_cast<size_t>(t) / 64] |=
            std::uint64_t{1} << (static_cast<unsigned>(t) % 64);
        t_mask[static_cast<size_t>(t)][static_cast<size_t>(c) / 64] |=
            std::uint64_t{1} << (static_cast<unsigned>(c) % 64);
      }
    }
    std::vector<char> t_live(static_cast<size_t>(nt), 1), c_live(static_cast<size_t>(nc), 1);
    for (int t = 0; t < nt; ++t) {
      if (popcount(t_mask[static_cast<size_t>(t)]) == 0) {
        throw Error("blocking: target not covered by any candidate cell");
      }
    }
    auto drop_target = [&](int t) {
      t_live[static_cast<size_t>(t)] = 0;
      for (int c = 0; c < nc; ++c) {
        c_mask[static_cast<size_t>(c)][static_cast<size_t>(t) / 64] &=
            ~(std::uint64_t{1} << (static_cast<unsigned>(t) % 64));
      }
    };
    auto drop_cell = [&](int c) {
      c_live[static_cast<size_t>(c)] = 0;
      for (int t = 0; t < nt; ++t) {
        t_mask[static_cast<size_t>(t)][static_cast<size_t>(c) / 64] &=
            ~(std::uint64_t{1} << (static_cast<unsigned>(c) % 64));
      }
    };
    bool changed = true;
    while (changed) {
      changed = false;
      // Unit targets force their only cell.
      for (int t = 0; t < nt; ++t) {
        if (!t_live[static_cast<size_t>(t)]) continue;
        if (popcount(t_mask[static_cast<size_t>(t)]) != 1) continue;
        int c = -1;
        for (int w = 0; w < cw && c < 0; ++w) {
          if (t_mask[static_cast<size_t>(t)][static_cast<size_t>(w)]) {
            c = w * 64 +
                __builtin_ctzll(t_mask[static_cast<size_t>(t)][static_cast<size_t>(w)]);
          }
        }
        forced.push_back(c);
        for (int u = 0; u < nt; ++u) {
          if (t_live[static_cast<size_t>(u)] &&
              ((c_mask[static_cast<size_t>(c)][static_cast<size_t>(u) / 64] >>
                (static_cast<unsigned>(u) % 64)) &
               1)) {
            drop_target(u);
          }
        }
        drop_cell(c);
        changed = true;
      }
      // Target dominance: drop the superset target.
      for (int t = 0; t < nt; ++t) {
        if (!t_live[static_cast<size_t>(t)]) continue;
        for (int u = 0; u < nt; ++u) {
          if (u == t || !t_live[static_cast<size_t>(u)]) continue;
          if (is_subset(t_mask[static_cast<size_t>(u)], t_mask[static_cast<size_t>(t)]) &&
              (u < t || !is_subset(t_mask[static_cast<size_t>(t)], t_mask[static_cast<size_t>(u)]))) {
            drop_target(t);
            changed = true;
            break;
          }
        }
      }
      // Cell dominance: drop the subset cell.
      for (int c = 0; c < nc; ++c) {
        if (!c_live[static_cast<size_t>(c)]) continue;
        if (popcount(c_mask[static_cast<size_t>(c)]) == 0) {
          drop_cell(c);
          continue;
        }
        for (int d = 0; d < nc; ++d) {
          if (d == c || !c_live[static_cast<size_t>(d)]) continue;
          if (is_subset(c_mask[static_cast<size_t>(c)], c_mask[static_cast<size_t>(d)]) &&
              (d < c || !is_subset(c_mask[static_cast<size_t>(d)], c_mask[static_cast<size_t>(c)]))) {
            drop_cell(c);
            changed = true;
            break;
          }
        }
      }
    }

    // Compact the survivors.
    std::vector<int> tgt_new(static_cast<size_t>(nt), -1);
    for (int t = 0; t < nt; ++t) {
      if (t_live[static_cast<size_t>(t)]) {
        tgt_new[static_cast<size_t>(t)] = ntgt++;
      }
    }
    words = (ntgt + 63) / 64;
    tgt_cells.assign(static_cast<size_t>(ntgt), {});
    for (int c = 0; c < nc; ++c) {
      if (!c_live[static_cast<size_t>(c)]) continue;
      const int cc = static_cast<int>(cell_ids.size());
      cell_ids.push_back(c);
      cell_mask.emplace_back(static_cast<size_t>(words), 0);
      for (int t : prob.covers[static_cast<size_t>(c)]) {
        const int tt = tgt_new[static_cast<size_t>(t)];
        if (tt < 0) continue;
        tgt_cells[static_cast<size_t>(tt)].push_back(cc);
        cell_mask[static_cast<size_t>(cc)][static_cast<size_t>(tt) / 64] |=
            std::uint64_t{1} << (static_cast<unsigned>(tt) % 64);
      }
    }
    match_order.resize(static_cast<size_t>(ntgt));
    std::iota(match_order.begin(), match_order.end(), 0);
    std::stable_sort(match_order.begin(), match_order.end(), [&](int x, int y) {
      return tgt_cells[static_cast<size_t>(x)].size() < tgt_cells[static_cast<size_t>(y)].size();
    });
    cell_stamp.assign(cell_ids.size(), 0);
  }

  static bool covered(const std::vector<std::uint64_t>& unc, int t) {
    return (unc[static_cast<size_t>(t) / 64] >> (static_cast<unsigned>(t) % 64) & 1) == 0;
  }

  int count_cover(const std::vector<std::uint64_t>& unc, int c) const {
    int n = 0;
    const auto& m = cell_mask[static_cast<size_t>(c)];
    for (int w = 0; w < words; ++w) {
      n += __builtin_popcountll(unc[static_cast<size_t>(w)] & m[static_cast<size_t>(w)]);
    }
    return n;
  }

  std::vector<int> greedy(std::vector<std::uint64_t> unc, int n_unc) {
    std::vector<int> picked;
    while (n_unc > 0) {
      int bc = -1, bcover = 0;
      for (int c = 0; c < static_cast<int>(cell_mask.size()); ++c) {
        const int k = count_cover(unc, c);
        if (k > bcover) {
          bcover = k;
          bc = c;
        }
      }
      if (bc < 0) throw Error("blocking: greedy found an uncoverable target");
      picked.push_back(bc);
      for (int w = 0; w < words; ++w) {
        unc[static_cast<size_t>(w)] &= ~cell_mask[static_cast<size_t>(bc)][static_cast<size_t>(w)];
      }
      n_unc = 0;
      for (int w = 0; w < words; ++w) {
        n_unc += __builtin_popcountll(unc[static_cast<size_t>(w)]);
      }
    }
    return picked;
  }

  // Lower bound: greedily collect uncovered targets whose candidate-cell sets
  // are pairwise disjoint; each such target costs one separate blocker. Stops
  // once `need` is reached.
  int matching_bound(const std::vector<std::uint64_t>& unc, int need) {
    ++epoch;
    int count = 0;
    for (int t : match_order) {
      if (covered(unc, t)) continue;
      bool free = true;
      for (int c : tgt_cells[static_cast<size_t>(t)]) {
        if (cell_stamp[static_cast<size_t>(c)] == epoch) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      for (int c : tgt_cells[static_cast<size_t>(t)]) {
        cell_stamp[static_cast<size_t>(c)] = epoch;
      }
      if (++count >= need) return count;
    }
    return count;
  }

  void record(const std::vector<int>& inner) {
    best = static_cast<int>(forced.size() + inner.size());
    best_cells = forced;
    for (int c : inner) best_cells.push_back(cell_ids[static_cast<size_t>(c)]);
    found = true;
    if (stop_at_first) aborted = true;
  }

  void dfs(std::vector<std::uint64_t>& unc, int n_unc) {
    if (aborted) return;
    if (n_unc == 0) {
      record(cur);
      return;
    }
    const int depth = static_cast<int>(forced.size() + cur.size());
    if (depth + 1 >= best) return;
    if (depth + matching_bound(unc, best - depth) >= best) return;

    int pick = -1;
    size_t fewest = std::numeric_limits<size_t>::max();
    for (int t = 0; t < ntgt; ++t) {
      if (covered(unc, t)) continue;
      if (tgt_cells[static_cast<size_t>(t)].size() < fewest) {
        fewest = tgt_cells[static_cast<size_t>(t)].size();
        pick = t;
      }
    }
    std::vector<std::pair<int, int>> order;  // (-dynamic cover, cell)
    order.reserve(tgt_cells[static_cast<size_t>(pick)].size());
    for (int c : tgt_cells[static_cast<size_t>(pick)]) {
      order.emplace_back(-count_cover(unc, c), c);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::uint64_t> next(static_cast<size_t>(words));
    for (const auto& [neg, c] : order) {
      const auto& m = cell_mask[static_cast<size_t>(c)];
      int n_next = 0;
      for (int w = 0; w < words; ++w) {
        next[static_cast<size_t>(w)] = unc[static_cast<size_t>(w)] & ~m[static_cast<size_t>(w)];
        n_next += __builtin_popcountll(next[static_cast<size_t>(w)]);
      }
      cur.push_back(c);
      dfs(next, n_next);
      cur.pop_back();
      if (aborted) return;
    }
  }

  // Minimum hitting set when cutoff is INT_MAX; otherwise proves min >=
  // cutoff or surfaces some solution below it (the first one found when
  // stop_at_first).
  void solve(int cutoff, bool first_only) {
    stop_at_first = first_only;
    if (ntgt == 0) {
      if (static_cast<int>(forced.size()) < cutoff) record({});
      return;
    }
    std::vector<std::uint64_t> unc(static_cast<size_t>(words), 0);
    for (int t = 0; t < ntgt; ++t) {
      unc[static_cast<size_t>(t) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(t) % 64);
    }
    const auto g = greedy(unc, ntgt);
    if (static_cast<int>(forced.size() + g.size()) < cutoff) {
      record(g);
      if (aborted) return;
    } else {
      best = cutoff;
    }
    dfs(unc, ntgt);
  }
};

BlockingResult result_from_cells(const BlockingProblem& prob, const std::vector<int>& cells) {
  BlockingResult res;
  res.count = static_cast<int>(cells.size());
  std::vector<int> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  for (int c : sorted) res.placement.push_back(prob.cells[static_cast<size_t>(c)].rep);
  return res;
}

std::vector<std::vector<Point>> source_configs(int r, const ClaimSource& source,
                                               std::string& desc) {
  if (const auto* all = std::get_if<AllOrderTypes>(&source)) {
    if (all->n != r) {
      throw Error("verify_pair_claim: source size " + std::to_string(all->n) +
                  " does not match claim.r = " + std::to_string(r));
    }
    auto configs = all_order_type_realizations(all->n);
    desc = "all-order-types(n=" + std::to_string(all->n) +
           ", configs=" + std::to_string(configs.size()) + ")";
    return configs;
  }
  if (const auto* samp = std::get_if<SampleSource>(&source)) {
    if (samp->count < 1) throw SourceUnavailable("verify_pair_claim: empty sample source");
    detail::SplitMix seeder(samp->seed ^ 0x8c95a4d6e1f0b237ULL);
    std::vector<std::vector<Point>> configs;
    std::unordered_set<Chirotope> seen;
    for (std::int64_t i = 0; i < samp->count; ++i) {
      auto pts = random_point_set(r, seeder.next(), samp->coord_max);
      if (samp->dedup && !seen.insert(chirotope_fingerprint(pts)).second) continue;
      configs.push_back(std::move(pts));
    }
    desc = "samples(count=" + std::to_string(samp->count) +
           ", seed=" + std::to_string(samp->seed) +
           (samp->dedup ? ", unique=" + std::to_string(configs.size()) : "") + ")";
    return configs;
  }
  const auto& file = std::get<FileSource>(source);
  std::vector<PointSetDocument> docs;
  try {
    docs = read_documents_file(file.path);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw SourceUnavailable(e.what());
  }
  std::vector<std::vector<Point>> configs;
  for (const auto& doc : docs) {
    auto pts = doc.to_validated_points();
    if (static_cast<int>(pts.size()) != r) {
      throw Error("verify_pair_claim: document \"" + doc.name + "\" has " +
                  std::to_string(pts.size()) + " points, claim.r = " + std::to_string(r));
    }
    configs.push_back(std::move(pts));
  }
  desc = "file(" + file.path + ", configs=" + std::to_string(configs.size()) + ")";
  return configs;
}

}  // namespace

std::vector<BlockingCell> candidate_cells(std::span<const Point> red) {
  if (red.size() < 3) throw TooFewPoints("candidate_cells needs at least 3 red points");
  validate_general_position(red);
  const auto lines = pair_lines(red);
  const auto verts = arrangement_vertices(lines);
  const auto hull = convex_hull(red);

  std::vector<RatPoint> reps;
  for (const Vertex& v : verts) sector_reps(v, lines, reps);

  std::map<std::vector<std::int8_t>, RatPoint> cells;
  for (RatPoint& p : reps) {
    if (!strictly_inside_hull(red, hull, p)) continue;
    std::vector<std::int8_t> signs;
    signs.reserve(lines.size());
    for (const PairLine& l : lines) {
      const int s = sign_of(eval_line(l, p));
      if (s == 0) throw Error("candidate_cells: representative landed on a pair line");
      signs.push_back(static_cast<std::int8_t>(s));
    }
    cells.emplace(std::move(signs), std::move(p));
  }

  std::vector<BlockingCell> out;
  out.reserve(cells.size());
  for (auto& [signs, rep] : cells) out.push_back(BlockingCell{std::move(rep), signs});
  return out;
}

BlockingProblem make_blocking_problem(std::span<const Point> red, const KindSet& kinds) {
  if (kinds.empty()) throw Error("blocking queries need a non-empty kind set");
  validate_general_position(red);
  BlockingProblem prob;
  prob.red.assign(red.begin(), red.end());
  prob.kinds = kinds;

  const int r = static_cast<int>(red.size());
  if (r >= 4) {
    ColoredPointSet cps(prob.red, std::vector<Color>(static_cast<size_t>(r), Color::Red),
                        ValidationMode::Sampled);
    std::array<int, 4> q;
    for (q[0] = 0; q[0] < r; ++q[0])
      for (q[1] = q[0] + 1; q[1] < r; ++q[1])
        for (q[2] = q[1] + 1; q[2] < r; ++q[2])
          for (q[3] = q[2] + 1; q[3] < r; ++q[3]) {
            for (const auto& inst : instances_on_quadruple(prob.red, q)) {
              if (!kinds.contains(inst.kind)) continue;
              if (structure_status(inst, cps).same_color_clean) prob.targets.push_back(inst);
            }
          }
  }
  if (prob.targets.empty()) return prob;

  prob.cells = candidate_cells(red);
  prob.covers.assign(prob.cells.size(), {});
  const int ntgt = static_cast<int>(prob.targets.size());

  // Region membership is constant per cell, so one exact test at the
  // representative decides each (cell, target) pair. A bounding-box check
  // against the defining quadruple prunes most pairs cheaply.
  std::vector<std::array<std::int64_t, 4>> boxes;  // xmin, xmax, ymin, ymax
  boxes.reserve(static_cast<size_t>(ntgt));
  for (const auto& inst : prob.targets) {
    std::array<std::int64_t, 4> box = {kCoordCap + 1, -kCoordCap - 1, kCoordCap + 1,
                                       -kCoordCap - 1};
    for (int i : inst.idx) {
      const Point& p = prob.red[static_cast<size_t>(i)];
      box[0] = std::min(box[0], p.x);
      box[1] = std::max(box[1], p.x);
      box[2] = std::min(box[2], p.y);
      box[3] = std::max(box[3], p.y);
    }
    boxes.push_back(box);
  }
  for (size_t c = 0; c < prob.cells.size(); ++c) {
    const RatPoint& rep = prob.cells[c].rep;
    for (int t = 0; t < ntgt; ++t) {
      const auto& box = boxes[static_cast<size_t>(t)];
      if (rep.xn < box[0] * rep.den || rep.xn > box[1] * rep.den ||
          rep.yn < box[2] * rep.den || rep.yn > box[3] * rep.den) {
        continue;
      }
      if (region_contains(prob.targets[static_cast<size_t>(t)], prob.red, rep)) {
        prob.covers[c].push_back(t);
      }
    }
  }
  return prob;
}

BlockingResult min_blockers(std::span<const Point> red, const KindSet& kinds) {
  const BlockingProblem prob = make_blocking_problem(red, kinds);
  if (prob.targets.empty()) return BlockingResult{};
  HittingSet solver(prob);
  solver.solve(std::numeric_limits<int>::max(), false);
  return result_from_cells(prob, solver.best_cells);
}

std::optional<BlockingResult> blockers_below(std::span<const Point> red, const KindSet& kinds,
                                             int threshold) {
  const BlockingProblem prob = make_blocking_problem(red, kinds);
  if (prob.targets.empty()) {
    if (threshold > 0) return BlockingResult{};
    return std::nullopt;
  }
  if (threshold <= 0) return std::nullopt;
  HittingSet solver(prob);
  solver.solve(threshold, true);
  if (!solver.found) return std::nullopt;
  return result_from_cells(prob, solver.best_cells);
}

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Unchecked:
      return "unchecked";
    case ClaimStatus::Verified:
      return "verified";
    case ClaimStatus::Refuted:
      return "refuted";
  }
  return "?";
}

std::vector<std::vector<Point>> all_order_type_realizations(int n) {
  std::vector<std::vector<Point>> out;
  switch (n) {
    case 3:
      out = {{{0, 0}, {4, 1}, {1, 3}}};
      break;
    case 4:
      out = {
          {{0, 0}, {5, 1}, {6, 5}, {1, 4}},  // convex
          {{0, 0}, {8, 1}, {4, 7}, {4, 3}},  // hull 3 + interior
      };
      break;
    case 5:
      out = {
          {{0, 0}, {10, 1}, {13, 9}, {5, 14}, {-3, 8}},  // hull 5
          {{0, 0}, {12, 1}, {11, 11}, {1, 10}, {6, 4}},  // hull 4
          {{0, 0}, {14, 1}, {6, 13}, {6, 5}, {8, 6}},    // hull 3
      };
      break;
    default:
      throw SourceUnavailable("all order types built in only for n <= 5, requested n = " +
                              std::to_string(n));
  }
  for (const auto& pts : out) validate_general_position(pts, ValidationMode::Full);
  return out;
}

BlockersClaim verify_pair_claim(BlockersClaim claim, const ClaimSource& source, unsigned jobs) {
  if (claim.r < 3) throw Error("verify_pair_claim: claim.r must be at least 3");
  if (claim.kinds.empty()) throw Error("verify_pair_claim: empty kind set");
  std::string desc;
  const auto configs = source_configs(claim.r, source, desc);
  if (configs.empty()) throw SourceUnavailable("verify_pair_claim: source yielded no configuration");

  std::vector<std::optional<BlockingResult>> refutes(configs.size());
  std::exception_ptr fail;
  std::mutex fail_mu;
  const unsigned workers = jobs == 0 ? default_thread_count() : jobs;
  parallel_blocks(static_cast<int>(configs.size()), workers, [&](int lo, int hi, unsigned) {
    try {
      for (int i = lo; i < hi; ++i) {
        refutes[static_cast<size_t>(i)] =
            blockers_below(configs[static_cast<size_t>(i)], claim.kinds, claim.b);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(fail_mu);
      if (!fail) fail = std::current_exception();
    }
  });
  if (fail) std::rethrow_exception(fail);

  claim.source = desc;
  claim.configs_checked = configs.size();
  claim.status = ClaimStatus::Verified;
  for (size_t i = 0; i < configs.size(); ++i) {
    if (refutes[i]) {
      claim.status = ClaimStatus::Refuted;
      claim.witness_red = configs[i];
      claim.witness_blue = refutes[i]->placement;
      break;
    }
  }
  return claim;
}

std::vector<ClosureEntry> induction_closure(std::span<const std::pair<int, int>> base,
                                            const KindSet& kinds, int up_to) {
  const KindSet pant_bowtie{StructureKind::Pant, StructureKind::Bowtie};
  const KindSet pant_necklace{StructureKind::Pant, StructureKind::Necklace};
  if (!(kinds == pant_bowtie || kinds == pant_necklace)) {
    throw KindsNotCovered("the induction lemma covers {pant,bowtie} and {pant,necklace} only");
  }
  if (base.empty()) throw Error("induction_closure: empty base");

  std::map<int, int> strongest;  // r -> max b
  for (const auto& [r, b] : base) {
    if (r < 3 || b < 0) throw Error("induction_closure: malformed base pair");
    auto [it, fresh] = strongest.emplace(r, b);
    if (!fresh) it->second = std::max(it->second, b);
  }
  std::map<int, int> base_b = strongest;

  bool consecutive = false;
  for (const auto& [r, b] : strongest) {
    const auto prev = strongest.find(r - 1);
    if (prev != strongest.end() && prev->second >= b - 1) consecutive = true;
  }
  if (!consecutive) throw Error("induction_closure: base lacks two consecutive pairs");

  for (int r = strongest.begin()->first + 1; r < up_to; ++r) {
    const auto cur = strongest.find(r);
    const auto prev = strongest.find(r - 1);
    if (cur == strongest.end() || prev == strongest.end()) continue;
    if (prev->second < cur->second - 1) continue;
    const int nb = cur->second + 1;
    auto [it, fresh] = strongest.emplace(r + 1, nb);
    if (!fresh) it->second = std::max(it->second, nb);
  }

  std::vector<ClosureEntry> table;
  for (const auto& [r, b] : strongest) {
    if (r > up_to) continue;
    const auto bit = base_b.find(r);
    const bool is_base = bit != base_b.end() && bit->second >= b;
    table.push_back(ClosureEntry{r, b, !is_base});
  }
  return table;
}

}  // namespace garment

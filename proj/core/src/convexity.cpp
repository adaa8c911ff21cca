#include "garment/convexity.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "garment/parallel.hpp"

namespace garment {

namespace {

std::vector<int> lex_sorted_indices(std::span<const Point> pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]); });
  return order;
}

// All candidates lie lexicographically after s, so their directions from s
// span less than a half turn and the orientation comparator is a total order.
void sort_ccw_around(std::span<const Point> pts, int s, std::vector<int>& q) {
  const Point& o = pts[static_cast<size_t>(s)];
  std::sort(q.begin(), q.end(), [&](int a, int b) {
    return orient(o, pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]) > 0;
  });
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<size_t>(i)] < n - k + i) {
      ++c[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

// Longest-convex-chain DP restricted to the given candidate indices; exact
// and exhaustive over the candidates, with early exit on the first k-gon.
std::optional<std::vector<int>> kgon_in(std::span<const Point> pts, std::vector<int> ids, int k) {
  std::sort(ids.begin(), ids.end(),
            [&](int a, int b) { return lex_less(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]); });
  const int n = static_cast<int>(ids.size());
  auto pt = [&](int i) -> const Point& { return pts[static_cast<size_t>(i)]; };
  std::vector<std::int16_t> f, par;
  std::vector<int> q;
  for (int si = 0; si + k <= n; ++si) {
    const int s = ids[static_cast<size_t>(si)];
    q.assign(ids.begin() + si + 1, ids.end());
    sort_ccw_around(pts, s, q);
    const int m = static_cast<int>(q.size());
    f.assign(static_cast<size_t>(m) * m, 0);
    par.assign(static_cast<size_t>(m) * m, -1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < i; ++j) {
        // f[j][i]: longest chain s -> ... -> q[j] -> q[i], counted in edges.
        int best = 2, bp = -1;
        for (int h = 0; h < j; ++h) {
          const int cand = f[static_cast<size_t>(h) * m + j] + 1;
          if (cand > best && orient(pt(q[static_cast<size_t>(h)]), pt(q[static_cast<size_t>(j)]),
                                    pt(q[static_cast<size_t>(i)])) > 0) {
            best = cand;
            bp = h;
          }
        }
        f[static_cast<size_t>(j) * m + i] = static_cast<std::int16_t>(best);
        par[static_cast<size_t>(j) * m + i] = static_cast<std::int16_t>(bp);
        if (best >= k - 1 &&
            orient(pt(q[static_cast<size_t>(j)]), pt(q[static_cast<size_t>(i)]), pt(s)) > 0) {
          // Rebuild the maximal chain, keep its last k-1 vertices: any suffix
          // of a convex chain is a convex chain with the same closing edge.
          std::vector<int> rev = {i, j};
          int a = j, b = i;
          while (par[static_cast<size_t>(a) * m + b] >= 0) {
            const int h = par[static_cast<size_t>(a) * m + b];
            rev.push_back(h);
            b = a;
            a = h;
          }
          std::vector<int> out = {s};
          for (int t = k - 2; t >= 0; --t) out.push_back(q[static_cast<size_t>(rev[static_cast<size_t>(t)])]);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<int> deterministic_sample(int n, int size, std::uint64_t seed) {
  std::vector<int> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  std::uint64_t st = seed | 1;
  auto next = [&] {
    st ^= st << 13;
    st ^= st >> 7;
    st ^= st << 17;
    return st;
  };
  for (int i = 0; i < size; ++i) {
    const int j = i + static_cast<int>(next() % static_cast<std::uint64_t>(n - i));
    std::swap(ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)]);
  }
  ids.resize(static_cast<size_t>(size));
  return ids;
}

std::uint64_t binom_u64(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw OutOfRange("binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

bool strictly_inside_ccw_quad(std::span<const Point> pts, const std::array<int, 4>& q,
                              const Point& p) {
  for (int e = 0; e < 4; ++e) {
    if (orient(pts[static_cast<size_t>(q[static_cast<size_t>(e)])],
               pts[static_cast<size_t>(q[static_cast<size_t>((e + 1) % 4)])], p) <= 0) {
      return false;
    }
  }
  return true;
}

// Separating-axis test. For convex ccw quads the open interiors are disjoint
// iff some edge line of one keeps the whole other quad on its outer closed
// side; vertex-only contact is still separated by a line through an incident
// edge. (Vertex-inside plus proper-crossing checks are not enough: quads
// sharing three vertices overlap in the shared triangle without either.)
bool holes_interior_disjoint(std::span<const Point> pts, const std::array<int, 4>& a,
                             const std::array<int, 4>& b) {
  auto separated = [&](const std::array<int, 4>& host, const std::array<int, 4>& other) {
    for (int e = 0; e < 4; ++e) {
      const Point& u = pts[static_cast<size_t>(host[static_cast<size_t>(e)])];
      const Point& v = pts[static_cast<size_t>(host[static_cast<size_t>((e + 1) % 4)])];
      bool out = true;
      for (int w = 0; w < 4 && out; ++w) {
        out = orient(u, v, pts[static_cast<size_t>(other[static_cast<size_t>(w)])]) <= 0;
      }
      if (out) return true;
    }
    return false;
  };
  return separated(a, b) || separated(b, a);
}

// All convex quads over `window` (global indices) that contain no other
// window point strictly inside.
std::vector<std::array<int, 4>> window_empty_quads(std::span<const Point> pts,
                                                   const std::vector<int>& window) {
  std::vector<std::array<int, 4>> out;
  const int g = static_cast<int>(window.size());
  if (g < 4) return out;
  std::vector<int> comb = {0, 1, 2, 3};
  do {
    const std::array<int, 4> q = {
        window[static_cast<size_t>(comb[0])], window[static_cast<size_t>(comb[1])],
        window[static_cast<size_t>(comb[2])], window[static_cast<size_t>(comb[3])]};
    const QuadrupleClass cls = classify_quadruple(pts, q);
    const auto* cp = std::get_if<ConvexPosition>(&cls);
    if (cp == nullptr) continue;
    bool empty = true;
    for (int w : window) {
      if (w == q[0] || w == q[1] || w == q[2] || w == q[3]) continue;
      if (strictly_inside_ccw_quad(pts, cp->hull, pts[static_cast<size_t>(w)])) {
        empty = false;
        break;
      }
    }
    if (empty) out.push_back(cp->hull);
  } while (next_combination(comb, g));
  return out;
}

// Largest pairwise interior-disjoint subset of `cands` that is also disjoint
// from `fixed`; stops early once `cap` holes are packed.
std::vector<std::array<int, 4>> max_pack(std::span<const Point> pts,
                                         const std::vector<std::array<int, 4>>& cands,
                                         const std::vector<std::array<int, 4>>& fixed,
                                         size_t cap) {
  std::vector<std::array<int, 4>> best, cur;
  std::vector<std::array<int, 4>> usable;
  for (const auto& c : cands) {
    bool ok = true;
    for (const auto& f : fixed) {
      if (!holes_interior_disjoint(pts, c, f)) {
        ok = false;
        break;
      }
    }
    if (ok) usable.push_back(c);
  }
  std::function<void(size_t)> go = [&](size_t idx) {
    if (cur.size() > best.size()) best = cur;
    if (best.size() >= cap) return;
    if (idx >= usable.size() || cur.size() + (usable.size() - idx) <= best.size()) return;
    bool fits = true;
    for (const auto& h : cur) {
      if (!holes_interior_disjoint(pts, usable[idx], h)) {
        fits = false;
        break;
      }
    }
    if (fits) {
      cur.push_back(usable[idx]);
      go(idx + 1);
      cur.pop_back();
      if (best.size() >= cap) return;
    }
    go(idx + 1);
  };
  go(0);
  return best;
}

// Fan sweep around a hull vertex: every hole lies in the closed angular wedge
// of its own vertices, and open wedges over disjoint angular ranges are
// disjoint, so a left-to-right DP over fan positions needs exact disjointness
// checks only within one segment. Two segment shapes combine:
//  - small windows (apex plus up to six fan points) packed exactly;
//  - convex chains: a maximal run fan[i..j] in convex position whose fan
//    order walks the run hull. Fanning quads out of fan[i] over consecutive
//    run points yields floor((j-i-1)/2) holes split by the diagonals from
//    fan[i]; each is empty because no other point has an angle inside the
//    run's wedge. Chains keep the 1-per-2-points rate where inward-dented
//    fan stretches starve the apex windows.
std::vector<std::array<int, 4>> fan_family(std::span<const Point> pts, int apex, int max_span) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> fan;
  fan.reserve(static_cast<size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    if (i != apex) fan.push_back(i);
  }
  sort_ccw_around(pts, apex, fan);
  const int M = static_cast<int>(fan.size());

  // chain[i] = max j with fan[i..j] in convex position, fan order matching
  // the reversed hull cycle. Both properties survive dropping the front, so
  // the ends are nondecreasing and a two-pointer suffices.
  std::vector<int> chain(static_cast<size_t>(M), 0);
  {
    auto ordered_convex = [&](int i, int j) {
      const int k = j - i + 1;
      if (k <= 2) return true;
      std::vector<Point> sub;
      sub.reserve(static_cast<size_t>(k));
      for (int u = i; u <= j; ++u) sub.push_back(pts[static_cast<size_t>(fan[static_cast<size_t>(u)])]);
      const auto hull = convex_hull(sub);
      if (static_cast<int>(hull.size()) != k) return false;
      const auto at0 = std::find(hull.begin(), hull.end(), 0);
      const int pos0 = static_cast<int>(at0 - hull.begin());
      for (int t = 0; t < k; ++t) {
        if (hull[static_cast<size_t>(((pos0 - t) % k + k) % k)] != t) return false;
      }
      return true;
    };
    int j = 0;
    for (int i = 0; i < M; ++i) {
      if (j < i) j = i;
      while (j + 1 < M && ordered_convex(i, j + 1)) ++j;
      chain[static_cast<size_t>(i)] = j;
    }
  }

  enum class Seg : unsigned char { Skip, Window, Chain };
  std::vector<int> f(static_cast<size_t>(M), 0), from(static_cast<size_t>(M), -1);
  std::vector<Seg> how(static_cast<size_t>(M), Seg::Skip);
  std::vector<std::vector<std::array<int, 4>>> step(static_cast<size_t>(M));
  int run = 0;
  for (int t = 1; t < M; ++t) {
    f[static_cast<size_t>(t)] = f[static_cast<size_t>(t) - 1];
    from[static_cast<size_t>(t)] = t - 1;
    how[static_cast<size_t>(t)] = Seg::Skip;
    for (int span = 2; span <= max_span && span <= t; ++span) {
      const int i = t - span;
      std::vector<int> window = {apex};
      for (int u = i; u <= t; ++u) window.push_back(fan[static_cast<size_t>(u)]);
      const auto cands = window_empty_quads(pts, window);
      if (cands.empty()) continue;
      const auto pack = max_pack(pts, cands, {}, static_cast<size_t>(span) / 2);
      const int cand = f[static_cast<size_t>(i)] + static_cast<int>(pack.size());
      if (cand > f[static_cast<size_t>(t)]) {
        f[static_cast<size_t>(t)] = cand;
        from[static_cast<size_t>(t)] = i;
        how[static_cast<size_t>(t)] = Seg::Window;
        step[static_cast<size_t>(t)] = pack;
      }
    }
    while (run < t && chain[static_cast<size_t>(run)] < t) ++run;
    for (int i = run; t - i >= 3; ++i) {
      const int cand = f[static_cast<size_t>(i)] + (t - i - 1) / 2;
      if (cand > f[static_cast<size_t>(t)]) {
        f[static_cast<size_t>(t)] = cand;
        from[static_cast<size_t>(t)] = i;
        how[static_cast<size_t>(t)] = Seg::Chain;
        step[static_cast<size_t>(t)].clear();
      }
    }
  }

  std::vector<std::array<int, 4>> fam;
  for (int t = M - 1; t > 0; t = from[static_cast<size_t>(t)]) {
    if (how[static_cast<size_t>(t)] == Seg::Window) {
      for (const auto& h : step[static_cast<size_t>(t)]) fam.push_back(h);
    } else if (how[static_cast<size_t>(t)] == Seg::Chain) {
      const int i = from[static_cast<size_t>(t)];
      for (int a = i + 1; a + 2 <= t; a += 2) {
        const std::array<int, 4> q = {fan[static_cast<size_t>(i)], fan[static_cast<size_t>(a)],
                                      fan[static_cast<size_t>(a) + 1], fan[static_cast<size_t>(a) + 2]};
        const QuadrupleClass cls = classify_quadruple(pts, q);
        if (const auto* cp = std::get_if<ConvexPosition>(&cls)) fam.push_back(cp->hull);
      }
    }
  }
  return fam;
}

// Hull vertices only: fan directions from each span less than a half turn, as
// sort_ccw_around requires. Evenly thinned when the hull is large.
std::vector<int> apex_candidates(std::span<const Point> pts) {
  const auto hull = convex_hull(pts);
  const size_t h = hull.size();
  constexpr size_t kMaxApexes = 48;
  if (h <= kMaxApexes) return hull;
  std::vector<int> out;
  out.reserve(kMaxApexes);
  for (size_t t = 0; t < kMaxApexes; ++t) {
    out.push_back(hull[t * h / kMaxApexes]);
  }
  return out;
}

}  // namespace

std::optional<std::vector<int>> detail::find_kgon_full_dp(std::span<const Point> pts, int k) {
  std::vector<int> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  return kgon_in(pts, std::move(all), k);
}

std::optional<std::vector<int>> find_convex_kgon(std::span<const Point> pts, int k) {
  if (k < 3) throw OutOfRange("find_convex_kgon requires k >= 3");
  const int n = static_cast<int>(pts.size());
  if (n < k) return std::nullopt;
  if (k == 3) {
    // Any triple works in general position.
    std::vector<int> order = lex_sorted_indices(pts);
    std::vector<int> out = {order[0], order[1], order[2]};
    if (orient(pts[static_cast<size_t>(out[0])], pts[static_cast<size_t>(out[1])],
               pts[static_cast<size_t>(out[2])]) < 0) {
      std::swap(out[1], out[2]);
    }
    return out;
  }
  for (int size = 60; size < n; size *= 2) {
    const std::uint64_t seed = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(n) << 32) ^
                               (static_cast<std::uint64_t>(k) << 20) ^ static_cast<std::uint64_t>(size);
    if (auto hit = kgon_in(pts, deterministic_sample(n, size, seed), k)) return hit;
  }
  return detail::find_kgon_full_dp(pts, k);
}

KgonCounts detail::count_by_subsets(std::span<const Point> pts, int k) {
  const int n = static_cast<int>(pts.size());
  KgonCounts out;
  if (k > n) return out;
  std::vector<int> comb(static_cast<size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<Point> sub(static_cast<size_t>(k));
  std::vector<char> member(static_cast<size_t>(n));
  do {
    for (int i = 0; i < k; ++i) sub[static_cast<size_t>(i)] = pts[static_cast<size_t>(comb[static_cast<size_t>(i)])];
    const std::vector<int> hull = convex_hull(sub);
    if (static_cast<int>(hull.size()) != k) continue;
    ++out.gons;
    std::fill(member.begin(), member.end(), 0);
    for (int c : comb) member[static_cast<size_t>(c)] = 1;
    bool empty = true;
    for (int i = 0; i < n && empty; ++i) {
      if (member[static_cast<size_t>(i)]) continue;
      if (point_in_convex_hull(sub, hull, pts[static_cast<size_t>(i)], Containment::Open)) empty = false;
    }
    if (empty) ++out.holes;
  } while (next_combination(comb, n));
  return out;
}

KgonCounts detail::count_by_chain_dp(std::span<const Point> pts, int k) {
  const int n = static_cast<int>(pts.size());
  if (k > n) return {};
  const std::vector<int> order = lex_sorted_indices(pts);
  auto pt = [&](int i) -> const Point& { return pts[static_cast<size_t>(i)]; };

  const unsigned threads = n >= 48 ? default_thread_count() : 1;
  std::vector<unsigned __int128> gon_slot(threads, 0), hole_slot(threads, 0);

  parallel_blocks(n, threads, [&](int lo, int hi, unsigned slot) {
    std::vector<int> q;
    std::vector<char> fan_empty;
    std::vector<std::uint64_t> cur_all, cur_emp, nxt_all, nxt_emp;
    for (int si = lo; si < hi; ++si) {
      if (si + k > n) continue;
      const int s = order[static_cast<size_t>(si)];
      q.assign(order.begin() + si + 1, order.end());
      sort_ccw_around(pts, s, q);
      const int m = static_cast<int>(q.size());
      if (m < k - 1) continue;
      const size_t mm = static_cast<size_t>(m) * m;

      // fan_empty[a][b]: no point strictly inside triangle (s, q[a], q[b]).
      // Points lexicographically before s cannot be inside (s is the
      // lexicographic minimum of the triangle), so scanning q suffices.
      fan_empty.assign(mm, 1);
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          for (int c = 0; c < m; ++c) {
            if (c == a || c == b) continue;
            if (in_triangle(pt(q[static_cast<size_t>(c)]), pt(s), pt(q[static_cast<size_t>(a)]),
                            pt(q[static_cast<size_t>(b)]), Containment::Open)) {
              fan_empty[static_cast<size_t>(a) * m + b] = 0;
              break;
            }
          }
        }
      }

      // Chains with t edges ending on edge (j, i); layered by t.
      cur_all.assign(mm, 0);
      cur_emp.assign(mm, 0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
          cur_all[static_cast<size_t>(j) * m + i] = 1;
          cur_emp[static_cast<size_t>(j) * m + i] = fan_empty[static_cast<size_t>(j) * m + i];
        }
      }
      for (int t = 3; t <= k - 1; ++t) {
        nxt_all.assign(mm, 0);
        nxt_emp.assign(mm, 0);
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < i; ++j) {
            const std::uint64_t ca = cur_all[static_cast<size_t>(j) * m + i];
            const std::uint64_t ce = cur_emp[static_cast<size_t>(j) * m + i];
            if (ca == 0 && ce == 0) continue;
            for (int l = i + 1; l < m; ++l) {
              if (orient(pt(q[static_cast<size_t>(j)]), pt(q[static_cast<size_t>(i)]),
                         pt(q[static_cast<size_t>(l)])) <= 0) {
                continue;
              }
              const size_t il = static_cast<size_t>(i) * m + l;
              if (__builtin_add_overflow(nxt_all[il], ca, &nxt_all[il])) {
                throw OutOfRange("k-gon count exceeds 64 bits");
              }
              if (fan_empty[il]) nxt_emp[il] += ce;
            }
          }
        }
        cur_all.swap(nxt_all);
        cur_emp.swap(nxt_emp);
      }
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
          if (orient(pt(q[static_cast<size_t>(j)]), pt(q[static_cast<size_t>(i)]), pt(s)) > 0) {
            gon_slot[slot] += cur_all[static_cast<size_t>(j) * m + i];
            hole_slot[slot] += cur_emp[static_cast<size_t>(j) * m + i];
          }
        }
      }
    }
  });

  unsigned __int128 gons = 0, holes = 0;
  for (unsigned t = 0; t < threads; ++t) {
    gons += gon_slot[t];
    holes += hole_slot[t];
  }
  if (gons > std::numeric_limits<std::uint64_t>::max()) {
    throw OutOfRange("k-gon count exceeds 64 bits");
  }
  return {static_cast<std::uint64_t>(gons), static_cast<std::uint64_t>(holes)};
}

KgonCounts count_kgons_kholes(std::span<const Point> pts, int k) {
  if (k < 3) throw OutOfRange("count_kgons_kholes requires k >= 3");
  if (pts.size() <= 14) return detail::count_by_subsets(pts, k);
  return detail::count_by_chain_dp(pts, k);
}

SixIslandResult six_island_check(std::span<const Point> pts) {
  if (pts.size() != 11) throw WrongSize("six_island_check expects exactly 11 points");
  if (auto gon = detail::find_kgon_full_dp(pts, 6)) {
    return {SixIslandResult::Kind::Has6Gon, std::move(*gon), -1};
  }
  std::vector<int> comb = {0, 1, 2, 3, 4};
  std::vector<Point> sub(5);
  do {
    for (int i = 0; i < 5; ++i) sub[static_cast<size_t>(i)] = pts[static_cast<size_t>(comb[static_cast<size_t>(i)])];
    const std::vector<int> hull = convex_hull(sub);
    if (hull.size() != 5) continue;
    for (int i = 0; i < 11; ++i) {
      if (std::find(comb.begin(), comb.end(), i) != comb.end()) continue;
      if (point_in_convex_hull(sub, hull, pts[static_cast<size_t>(i)], Containment::Open)) {
        std::vector<int> witness;
        for (int h : hull) witness.push_back(comb[static_cast<size_t>(h)]);
        return {SixIslandResult::Kind::HasNonEmpty5Gon, std::move(witness), i};
      }
    }
  } while (next_combination(comb, 11));
  return {SixIslandResult::Kind::Fails, {}, -1};
}

namespace {

Island make_island(const ColoredPointSet& cps, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  Island isl;
  isl.members = std::move(members);
  if (isl.members.size() >= 3) {
    std::vector<Point> local;
    local.reserve(isl.members.size());
    for (int i : isl.members) local.push_back(cps.point(i));
    for (int h : convex_hull(local)) isl.hull.push_back(isl.members[static_cast<size_t>(h)]);
  } else {
    isl.hull = isl.members;
  }
  for (int i : isl.members) {
    (cps.color(i) == Color::Red ? isl.red : isl.blue)++;
  }
  return isl;
}

void verify_island(const ColoredPointSet& cps, const Island& isl) {
  if (isl.members.size() < 3) return;
  std::vector<Point> local;
  for (int i : isl.members) local.push_back(cps.point(i));
  const std::vector<int> hull = convex_hull(local);
  std::vector<char> member(static_cast<size_t>(cps.size()), 0);
  for (int i : isl.members) member[static_cast<size_t>(i)] = 1;
  for (int i = 0; i < cps.size(); ++i) {
    if (member[static_cast<size_t>(i)]) continue;
    if (point_in_convex_hull(local, hull, cps.point(i), Containment::Closed)) {
      throw Error("internal: island property violated");
    }
  }
}

}  // namespace

Island island_close(const ColoredPointSet& cps, std::span<const int> seed) {
  if (seed.empty()) throw Error("island seed must be non-empty");
  std::vector<char> member(static_cast<size_t>(cps.size()), 0);
  for (int i : seed) {
    if (i < 0 || i >= cps.size()) throw Error("island seed index out of range");
    member[static_cast<size_t>(i)] = 1;
  }
  std::vector<int> members;
  for (int i = 0; i < cps.size(); ++i) {
    if (member[static_cast<size_t>(i)]) members.push_back(i);
  }
  if (members.size() >= 3) {
    // One pass suffices: every point added lies inside the hull, which
    // therefore never grows.
    std::vector<Point> local;
    for (int i : members) local.push_back(cps.point(i));
    const std::vector<int> hull = convex_hull(local);
    std::vector<int> closed = members;
    for (int i = 0; i < cps.size(); ++i) {
      if (member[static_cast<size_t>(i)]) continue;
      if (point_in_convex_hull(local, hull, cps.point(i), Containment::Closed)) closed.push_back(i);
    }
    members = std::move(closed);
  }
  Island isl = make_island(cps, std::move(members));
  verify_island(cps, isl);
  return isl;
}

Island unbalanced_island(const ColoredPointSet& cps, int threshold) {
  if (threshold < 2) throw OutOfRange("unbalanced_island requires threshold >= 2");
  const int k = 2 * threshold - 1;
  auto gon = find_convex_kgon(cps.points(), k);
  if (!gon) throw No9Gon("no convex " + std::to_string(k) + "-gon found");
  Island isl = island_close(cps, *gon);

  if (isl.imbalance() < threshold) {
    // The hull is exactly the (2*threshold-1)-gon; removing hull vertices
    // keeps the island an island, so adjust the color counts on the hull.
    const Color minority = isl.red <= isl.blue ? Color::Red : Color::Blue;
    const int i = isl.imbalance();
    std::vector<int> min_hull, maj_hull;
    for (int v : isl.hull) {
      (cps.color(v) == minority ? min_hull : maj_hull).push_back(v);
    }
    std::vector<int> drop;
    if (static_cast<int>(min_hull.size()) >= threshold - i) {
      drop.assign(min_hull.begin(), min_hull.begin() + (threshold - i));
    } else {
      // Then the majority holds at least threshold+i hull vertices, and the
      // island has at least threshold minority points, so counts stay >= 0.
      drop.assign(maj_hull.begin(), maj_hull.begin() + (threshold + i));
    }
    std::vector<int> members;
    for (int v : isl.members) {
      if (std::find(drop.begin(), drop.end(), v) == drop.end()) members.push_back(v);
    }
    isl = make_island(cps, std::move(members));
  }

  verify_island(cps, isl);
  if (isl.imbalance() < threshold) throw Error("internal: island imbalance fell short");
  return isl;
}

HoleFamily disjoint_4holes(std::span<const Point> pts) {
  const int m = static_cast<int>(pts.size());
  if (m < 4) throw TooFewPoints("disjoint_4holes requires at least 4 points");
  const size_t target = static_cast<size_t>((m - 3) / 2);

  HoleFamily fam;
  const auto apexes = apex_candidates(pts);
  for (int apex : apexes) {
    auto got = fan_family(pts, apex, 5);
    if (got.size() > fam.holes.size()) fam.holes = std::move(got);
    if (fam.holes.size() >= target) break;
  }
  if (fam.holes.size() < target) {
    // Wider windows absorb isolated inward dents at full rate; only worth the
    // extra packing work when the cheap pass missed the bound.
    for (int apex : apexes) {
      auto got = fan_family(pts, apex, 7);
      if (got.size() > fam.holes.size()) fam.holes = std::move(got);
      if (fam.holes.size() >= target) break;
    }
  }

  if (fam.holes.size() < target) {
    // Augment with quads over the points no hole uses, checked empty against
    // the whole set.
    std::vector<char> used(static_cast<size_t>(m), 0);
    for (const auto& h : fam.holes) {
      for (int v : h) used[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> residue;
    for (int i = 0; i < m; ++i) {
      if (!used[static_cast<size_t>(i)]) residue.push_back(i);
    }
    if (residue.size() >= 4 && residue.size() <= 28) {
      std::vector<std::array<int, 4>> cands;
      for (const auto& q : window_empty_quads(pts, residue)) {
        bool empty = true;
        for (int i = 0; i < m && empty; ++i) {
          if (i == q[0] || i == q[1] || i == q[2] || i == q[3]) continue;
          if (strictly_inside_ccw_quad(pts, q, pts[static_cast<size_t>(i)])) empty = false;
        }
        if (empty) cands.push_back(q);
      }
      for (const auto& h : max_pack(pts, cands, fam.holes, target - fam.holes.size())) {
        fam.holes.push_back(h);
      }
    }
  }

  if (fam.holes.size() < target && m <= 140) {
    // Global augmentation: pack further holes drawn from every 4-hole of the
    // whole set that stays disjoint from the family chosen so far.
    std::vector<int> all(static_cast<size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    const auto cands = window_empty_quads(pts, all);
    for (const auto& h : max_pack(pts, cands, fam.holes, target - fam.holes.size())) {
      fam.holes.push_back(h);
    }
  }

  if (fam.holes.size() < target && m <= 20) {
    // Small instances: exact maximum packing over every ambient-empty quad.
    std::vector<int> all(static_cast<size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    const auto cands = window_empty_quads(pts, all);
    auto packed = max_pack(pts, cands, {}, target);
    if (packed.size() > fam.holes.size()) fam.holes = std::move(packed);
  }

  if (fam.holes.size() < target) {
    throw Error("disjoint_4holes fell short of floor((m-3)/2) holes");
  }
  // Re-verify the contract: convex, empty of all ambient points, pairwise
  // interior-disjoint.
  for (size_t a = 0; a < fam.holes.size(); ++a) {
    const auto& h = fam.holes[a];
    for (int i = 0; i < m; ++i) {
      if (i == h[0] || i == h[1] || i == h[2] || i == h[3]) continue;
      if (strictly_inside_ccw_quad(pts, h, pts[static_cast<size_t>(i)])) {
        throw Error("internal: 4-hole is not empty");
      }
    }
    for (size_t b = a + 1; b < fam.holes.size(); ++b) {
      if (!holes_interior_disjoint(pts, h, fam.holes[b])) {
        throw Error("internal: 4-holes overlap");
      }
    }
  }
  return fam;
}

std::uint64_t es_upper_bound(int k) {
  if (k < 6) throw OutOfRange("es_upper_bound requires k >= 6");
  return binom_u64(2 * k - 5, k - 2) - binom_u64(2 * k - 8, k - 3) + 2;
}

namespace {

// Index j of the open crossing triangle on hull edge (j, j+1) containing x,
// for x strictly inside the ccw quad; -1 never occurs in general position.
int crossing_triangle_of(std::span<const Point> pts, const std::array<int, 4>& h, const Point& x) {
  auto pt = [&](int e) -> const Point& { return pts[static_cast<size_t>(h[static_cast<size_t>(e & 3)])]; };
  for (int j = 0; j < 4; ++j) {
    if (orient(pt(j), pt(j + 2), x) == orient(pt(j), pt(j + 2), pt(j + 1)) &&
        orient(pt(j + 1), pt(j + 3), x) == orient(pt(j + 1), pt(j + 3), pt(j))) {
      return j;
    }
  }
  return -1;
}

}  // namespace

std::optional<StructureInstance> blue_necklace_certificate(const ColoredPointSet& cps) {
  Island isl;
  try {
    isl = unbalanced_island(cps, 5);
  } catch (const No9Gon&) {
    // Below the guaranteed size: fall back to the whole set if it is itself
    // sufficiently unbalanced.
    std::vector<int> all(static_cast<size_t>(cps.size()));
    std::iota(all.begin(), all.end(), 0);
    if (all.empty()) return std::nullopt;
    isl = island_close(cps, all);
    if (isl.imbalance() < 5) return std::nullopt;
  }

  const Color majority = isl.red >= isl.blue ? Color::Red : Color::Blue;
  std::vector<int> maj;
  std::vector<Point> majpts;
  std::vector<int> minority;
  for (int i : isl.members) {
    if (cps.color(i) == majority) {
      maj.push_back(i);
      majpts.push_back(cps.point(i));
    } else {
      minority.push_back(i);
    }
  }
  if (maj.size() < 4) return std::nullopt;

  HoleFamily fam;
  try {
    fam = disjoint_4holes(majpts);
  } catch (const Error&) {
    return std::nullopt;
  }

  // The holes are interior-disjoint, so each minority point blocks at most
  // one of them; with more holes than half the minority count, some hole
  // holds at most one minority point.
  for (const auto& local : fam.holes) {
    std::array<int, 4> hull;
    for (int e = 0; e < 4; ++e) hull[static_cast<size_t>(e)] = maj[static_cast<size_t>(local[static_cast<size_t>(e)])];
    int inside_count = 0;
    const Point* blocker = nullptr;
    for (int mi : minority) {
      if (strictly_inside_ccw_quad(cps.points(), hull, cps.point(mi))) {
        ++inside_count;
        blocker = &cps.point(mi);
      }
    }
    if (inside_count > 1) continue;
    std::uint8_t variant = 0;
    if (inside_count == 1) {
      const int j = crossing_triangle_of(cps.points(), hull, *blocker);
      if (j < 0) continue;
      variant = static_cast<std::uint8_t>((j + 2) % 4);
    }
    StructureInstance inst{StructureKind::Necklace, hull, variant};
    if (structure_status(inst, cps).empty()) return inst;
  }
  return std::nullopt;
}

std::vector<Point> double_chain(int top, int bottom) {
  if (top < 1 || bottom < 1) throw OutOfRange("double_chain requires positive chain sizes");
  const std::int64_t span = std::max(top, bottom);
  const std::int64_t off = 2 * span * span + 20;
  std::vector<Point> pts;
  for (int i = 0; i < top; ++i) {
    const std::int64_t x = 2 * i - (top - 1);
    pts.push_back({x, x * x + off});
  }
  for (int j = 0; j < bottom; ++j) {
    const std::int64_t x = 2 * j - (bottom - 1);
    pts.push_back({x, -(x * x) - off});
  }
  return pts;
}

}  // namespace garment

#include "mslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mslab {

namespace {

struct Grid {
  int nx, ny;
  std::size_t n() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t id(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

// preconditioned CG on a matrix-free SPD operator; starting from x keeps the
// quadratic energy nonincreasing even if truncated early
template <class Apply>
int pcg(const Grid& g, const Apply& apply, const std::vector<double>& b,
        const std::vector<double>& diag, std::vector<double>& x, double tol, int max_iters) {
  const std::size_t n = g.n();
  std::vector<double> r(n), p(n), Ap(n), zv(n);
  apply(x, Ap);
  double bnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = b[i] - Ap[i];
    bnorm += b[i] * b[i];
  }
  bnorm = std::sqrt(bnorm);
  const double stop = tol * std::max(bnorm, 1e-300);
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    zv[i] = r[i] / diag[i];
    rz += r[i] * zv[i];
  }
  p = zv;
  int it = 0;
  for (; it < max_iters; ++it) {
    double rn = 0.0;
    for (std::size_t i = 0; i < n; ++i) rn += r[i] * r[i];
    if (std::sqrt(rn) <= stop) break;
    apply(p, Ap);
    double pAp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    if (pAp <= 0) break;
    const double alpha = rz / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    double rz_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      zv[i] = r[i] / diag[i];
      rz_new += r[i] * zv[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = zv[i] + beta * p[i];
  }
  return it;
}

template <class F>
void for_edges(const Grid& g, const F& f) {
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) f(g.id(i, j), g.id(i + 1, j));
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f(g.id(i, j), g.id(i, j + 1));
}

}  // namespace

double at_energy(const PhaseFieldState& s) {
  const Grid g{s.u.nx(), s.u.ny()};
  const double h2 = s.u.spacing() * s.u.spacing();
  double e = 0.0;
  for_edges(g, [&](std::size_t p, std::size_t q) {
    const double du = s.u.values()[p] - s.u.values()[q];
    const double zm = 0.5 * (s.z.values()[p] + s.z.values()[q]);
    const double dz = s.z.values()[p] - s.z.values()[q];
    e += (zm * zm + s.delta) * du * du + s.eps_phase * dz * dz;
  });
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double uf = s.u.values()[i] - s.g->values()[i];
    const double zf = 1.0 - s.z.values()[i];
    e += s.lambda * h2 * uf * uf + h2 / (4.0 * s.eps_phase) * zf * zf;
  }
  return e;
}

PhaseFieldState at_minimize(std::shared_ptr<const ScalarField> g, double lambda,
                            double eps_phase, int sweeps, SolverOptions opts) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error("at_minimize needs λ ∈ (0,1]");
  if (!(eps_phase >= 2.0 * g->spacing())) throw Error("at_minimize needs ε_phase ≥ 2h");
  if (sweeps < 1) throw Error("at_minimize needs sweeps ≥ 1");
  if (g->nx() < 8 || g->ny() < 8) throw DomainTooSmall("at_minimize needs at least 8x8 nodes");

  PhaseFieldState s;
  s.g = g;
  s.lambda = lambda;
  s.eps_phase = eps_phase;
  s.delta = 1e-6 * eps_phase;
  s.u = *g;  // warm start from the datum
  s.z = ScalarField(g->origin(), g->spacing(), g->nx(), g->ny(), 1.0);

  const Grid grid{g->nx(), g->ny()};
  const double h2 = g->spacing() * g->spacing();
  const double gsup = g->max_abs();

  std::vector<double> b(grid.n()), diag(grid.n());

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    // z-step first: with u initialized to the datum this keeps the crack the
    // data suggests; a leading u-step with z ≡ 1 would smooth it away
    {
      std::vector<double> de2((grid.nx - 1) * grid.ny + grid.nx * (grid.ny - 1));
      std::size_t eidx = 0;
      for_edges(grid, [&](std::size_t p, std::size_t q) {
        const double du = s.u.values()[p] - s.u.values()[q];
        de2[eidx++] = du * du;
      });
      auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
        const double mass = lambda * h2 / (4.0 * eps_phase);
        for (std::size_t i = 0; i < grid.n(); ++i) out[i] = mass * x[i];
        std::size_t e = 0;
        for_edges(grid, [&](std::size_t p, std::size_t q) {
          const double d2 = de2[e++];
          // ((x_p+x_q)/2)² d² term: gradient (d²/2)(x_p+x_q) on both nodes
          const double coup = 0.25 * d2 * (x[p] + x[q]);
          out[p] += coup;
          out[q] += coup;
          const double dz = lambda * eps_phase * (x[p] - x[q]);
          out[p] += dz;
          out[q] -= dz;
        });
      };
      const double mass = lambda * h2 / (4.0 * eps_phase);
      std::fill(diag.begin(), diag.end(), mass);
      std::size_t e = 0;
      for_edges(grid, [&](std::size_t p, std::size_t q) {
        const double d2 = de2[e++];
        diag[p] += 0.25 * d2 + lambda * eps_phase;
        diag[q] += 0.25 * d2 + lambda * eps_phase;
      });
      std::fill(b.begin(), b.end(), mass);
      pcg(grid, apply, b, diag, s.z.values(), opts.cg_tol, opts.cg_max_iters);
      for (double& zv : s.z.values()) zv = std::clamp(zv, 0.0, 1.0);
    }
    // u-step: Σ_e (z̄²+δ)(u_p−u_q)² + λh²Σ(u−g)²
    {
      auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (std::size_t i = 0; i < grid.n(); ++i) out[i] = h2 * x[i];
        for_edges(grid, [&](std::size_t p, std::size_t q) {
          const double zm = 0.5 * (s.z.values()[p] + s.z.values()[q]);
          const double c = zm * zm + s.delta;
          const double d = c * (x[p] - x[q]);
          out[p] += d;
          out[q] -= d;
        });
      };
      std::fill(diag.begin(), diag.end(), h2);
      for_edges(grid, [&](std::size_t p, std::size_t q) {
        const double zm = 0.5 * (s.z.values()[p] + s.z.values()[q]);
        const double c = zm * zm + s.delta;
        diag[p] += c;
        diag[q] += c;
      });
      for (std::size_t i = 0; i < grid.n(); ++i) b[i] = h2 * g->values()[i];
      pcg(grid, apply, b, diag, s.u.values(), opts.cg_tol, opts.cg_max_iters);
    }

    const double energy = at_energy(s);
    if (!s.energy_log.empty() &&
        energy > s.energy_log.back() + 1e-12 * std::max(1.0, std::abs(s.energy_log.back())))
      throw NonmonotoneEnergy("energy increased across a sweep (linear solve failure)");
    s.energy_log.push_back(energy);

    if (s.u.max_abs() > gsup + 1e-9)
      throw Error("maximum principle violated: ||u||_inf > ||g||_inf + 1e-9");
  }
  return s;
}

std::vector<std::vector<Vec2>> marching_squares(const ScalarField& f, double level) {
  // segment soup with linear interpolation on cell edges, stitched into chains
  std::map<std::pair<long, long>, std::vector<std::size_t>> endpoint_index;
  std::vector<std::pair<Vec2, Vec2>> segs;
  const double h = f.spacing();
  auto key = [&](Vec2 p) {
    return std::make_pair(std::lround(p.x / h * 4096.0), std::lround(p.y / h * 4096.0));
  };
  auto lerp = [&](Vec2 a, double va, Vec2 b, double vb) {
    const double t = (level - va) / (vb - va);
    return a + t * (b - a);
  };
  for (int j = 0; j + 1 < f.ny(); ++j) {
    for (int i = 0; i + 1 < f.nx(); ++i) {
      const Vec2 p00 = f.node(i, j), p10 = f.node(i + 1, j), p01 = f.node(i, j + 1),
                 p11 = f.node(i + 1, j + 1);
      const double v00 = f.at(i, j), v10 = f.at(i + 1, j), v01 = f.at(i, j + 1),
                   v11 = f.at(i + 1, j + 1);
      std::vector<Vec2> pts;
      if ((v00 < level) != (v10 < level)) pts.push_back(lerp(p00, v00, p10, v10));
      if ((v10 < level) != (v11 < level)) pts.push_back(lerp(p10, v10, p11, v11));
      if ((v01 < level) != (v11 < level)) pts.push_back(lerp(p01, v01, p11, v11));
      if ((v00 < level) != (v01 < level)) pts.push_back(lerp(p00, v00, p01, v01));
      if (pts.size() == 2) segs.push_back({pts[0], pts[1]});
      else if (pts.size() == 4) {
        // saddle: pair by x order
        std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x; });
        segs.push_back({pts[0], pts[1]});
        segs.push_back({pts[2], pts[3]});
      }
    }
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    endpoint_index[key(segs[s].first)].push_back(s);
    endpoint_index[key(segs[s].second)].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Vec2>> chains;
  for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    std::vector<Vec2> chain = {segs[s0].first, segs[s0].second};
    for (int dir = 0; dir < 2; ++dir) {
      for (;;) {
        const Vec2 tip = dir == 0 ? chain.back() : chain.front();
        const auto it = endpoint_index.find(key(tip));
        if (it == endpoint_index.end()) break;
        std::size_t next = segs.size();
        for (std::size_t cand : it->second)
          if (!used[cand]) { next = cand; break; }
        if (next == segs.size()) break;
        used[next] = true;
        const Vec2 other =
            key(segs[next].first) == key(tip) ? segs[next].second : segs[next].first;
        if (dir == 0) chain.push_back(other);
        else chain.insert(chain.begin(), other);
      }
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

namespace {

std::vector<std::uint8_t> zhang_suen(std::vector<std::uint8_t> img, int nx, int ny) {
  auto at = [&](int i, int j) -> std::uint8_t {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return 0;
    return img[static_cast<std::size_t>(j) * nx + i];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::pair<int, int>> kill;
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          if (!at(i, j)) continue;
          // neighbors P2..P9 clockwise from north
          const std::uint8_t p2 = at(i, j + 1), p3 = at(i + 1, j + 1), p4 = at(i + 1, j),
                             p5 = at(i + 1, j - 1), p6 = at(i, j - 1), p7 = at(i - 1, j - 1),
                             p8 = at(i - 1, j), p9 = at(i - 1, j + 1);
          const int bsum = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          if (bsum < 2 || bsum > 6) continue;
          const std::uint8_t seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
          int a = 0;
          for (int k = 0; k < 8; ++k)
            if (!seq[k] && seq[k + 1]) ++a;
          if (a != 1) continue;
          if (pass == 0) {
            if (p2 * p4 * p6 != 0) continue;
            if (p4 * p6 * p8 != 0) continue;
          } else {
            if (p2 * p4 * p8 != 0) continue;
            if (p2 * p6 * p8 != 0) continue;
          }
          kill.push_back({i, j});
        }
      }
      for (auto [i, j] : kill) img[static_cast<std::size_t>(j) * nx + i] = 0;
      if (!kill.empty()) changed = true;
    }
  }
  return img;
}

// sequential removal of 8-simple non-endpoint pixels; Zhang-Suen leaves
// 2-px-wide diagonal staircases which fragment the path tracer
std::vector<std::uint8_t> unit_width(std::vector<std::uint8_t> img, int nx, int ny) {
  auto at = [&](int i, int j) -> std::uint8_t {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return 0;
    return img[static_cast<std::size_t>(j) * nx + i];
  };
  const int di8[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  const int dj8[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  auto ring_components = [&](int i, int j) {
    bool on[8];
    int b = 0;
    for (int k = 0; k < 8; ++k) {
      on[k] = at(i + di8[k], j + dj8[k]) != 0;
      b += on[k];
    }
    if (b == 0) return std::make_pair(0, 0);
    // count 8-connected components of the ring (adjacency between ring cells)
    int comp = 0;
    bool seen[8] = {};
    for (int k = 0; k < 8; ++k) {
      if (!on[k] || seen[k]) continue;
      ++comp;
      // flood along the ring: neighbors in the ring are adjacent pixels
      std::vector<int> stack = {k};
      seen[k] = true;
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        for (int m = 0; m < 8; ++m) {
          if (!on[m] || seen[m]) continue;
          const int dii = std::abs(di8[c] - di8[m]);
          const int djj = std::abs(dj8[c] - dj8[m]);
          if (dii <= 1 && djj <= 1) {
            seen[m] = true;
            stack.push_back(m);
          }
        }
      }
    }
    return std::make_pair(comp, b);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!at(i, j)) continue;
        const auto [comp, b] = ring_components(i, j);
        if (b >= 2 && comp == 1) {
          img[static_cast<std::size_t>(j) * nx + i] = 0;
          changed = true;
        }
      }
    }
  }
  return img;
}

}  // namespace

JumpSet extract_jumpset(const PhaseFieldState& s, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("threshold must lie in (0,1)");
  const int nx = s.z.nx(), ny = s.z.ny();
  const double h = s.z.spacing();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny, 0);
  bool any = false;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool on = s.z.at(i, j) < threshold;
      mask[static_cast<std::size_t>(j) * nx + i] = on;
      any = any || on;
    }
  JumpSet out;
  if (!any) return out;

  const auto skel = unit_width(zhang_suen(mask, nx, ny), nx, ny);
  auto on = [&](int i, int j) -> bool {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return false;
    return skel[static_cast<std::size_t>(j) * nx + i] != 0;
  };

  // 8-neighbor graph over skeleton pixels; a diagonal edge whose two pixels
  // share an orthogonal skeleton neighbor is a staircase shortcut and dropped
  auto pix_id = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  auto keep_edge = [&](int i, int j, int di, int dj) {
    if (di && dj) {
      if (on(i + di, j) && on(i, j + dj)) return false;
      return true;
    }
    return true;
  };
  std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!on(i, j)) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj) continue;
          if (!on(i + di, j + dj)) continue;
          if (!keep_edge(i, j, di, dj)) continue;
          adj[pix_id(i, j)].push_back(pix_id(i + di, j + dj));
        }
    }

  std::map<std::pair<std::size_t, std::size_t>, bool> edge_used;
  auto use_edge = [&](std::size_t a, std::size_t b) {
    edge_used[{std::min(a, b), std::max(a, b)}] = true;
  };
  auto is_used = [&](std::size_t a, std::size_t b) {
    const auto it = edge_used.find({std::min(a, b), std::max(a, b)});
    return it != edge_used.end() && it->second;
  };
  auto node_pt = [&](std::size_t id) {
    return s.z.node(static_cast<int>(id % nx), static_cast<int>(id / nx));
  };

  std::vector<std::vector<Vec2>> chains;
  std::vector<bool> closed_flags;

  auto walk_from = [&](std::size_t start, std::size_t first) {
    std::vector<Vec2> pts = {node_pt(start), node_pt(first)};
    use_edge(start, first);
    std::size_t prev = start, cur = first;
    while (adj[cur].size() == 2) {
      const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      if (is_used(cur, nxt)) break;
      use_edge(cur, nxt);
      pts.push_back(node_pt(nxt));
      prev = cur;
      cur = nxt;
    }
    chains.push_back(std::move(pts));
    closed_flags.push_back(false);
  };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t id = pix_id(i, j);
      if (!on(i, j) || adj[id].size() == 2) continue;
      for (std::size_t nb : adj[id])
        if (!is_used(id, nb)) walk_from(id, nb);
    }
  // remaining unused edges belong to pure cycles
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t id = pix_id(i, j);
      if (!on(i, j) || adj[id].size() != 2) continue;
      if (is_used(id, adj[id][0]) || is_used(id, adj[id][1])) continue;
      std::vector<Vec2> pts = {node_pt(id)};
      std::size_t prev = id, cur = adj[id][0];
      use_edge(prev, cur);
      while (cur != id && adj[cur].size() == 2) {
        pts.push_back(node_pt(cur));
        const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        if (is_used(cur, nxt)) break;
        use_edge(cur, nxt);
        prev = cur;
        cur = nxt;
      }
      if (pts.size() >= 3 && cur == id) {
        chains.push_back(std::move(pts));
        closed_flags.push_back(true);
      }
    }

  // drop thinning spurs: short chains with a free end; short junction-to-
  // junction connectors stay so arcs can re-join across them
  {
    auto end_is_free = [&](std::size_t c, int e) {
      const Vec2 tip = e == 0 ? chains[c].back() : chains[c].front();
      for (std::size_t b2 = 0; b2 < chains.size(); ++b2) {
        if (closed_flags[b2]) continue;
        for (int eb = 0; eb < 2; ++eb) {
          if (b2 == c && eb == e) continue;
          const Vec2 t2 = eb == 0 ? chains[b2].back() : chains[b2].front();
          if (dist(tip, t2) < 2.0 * h) return false;
        }
      }
      return true;
    };
    std::vector<bool> spur(chains.size(), false);
    for (std::size_t c = 0; c < chains.size(); ++c) {
      double len = 0.0;
      for (std::size_t k = 0; k + 1 < chains[c].size(); ++k)
        len += dist(chains[c][k], chains[c][k + 1]);
      spur[c] = !closed_flags[c] && len < 4.0 * h && (end_is_free(c, 0) || end_is_free(c, 1));
    }
    std::vector<std::vector<Vec2>> keep;
    std::vector<bool> keep_closed;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (spur[c]) continue;
      keep.push_back(std::move(chains[c]));
      keep_closed.push_back(closed_flags[c]);
    }
    chains = std::move(keep);
    closed_flags = std::move(keep_closed);
  }

  // junction artifacts of the digital skeleton split arcs; re-join open ends
  // that meet exactly pairwise (a chain meeting itself closes into a loop)
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < chains.size() && !merged; ++a) {
      if (closed_flags[a]) continue;
      for (int ea = 0; ea < 2 && !merged; ++ea) {
        const Vec2 tip = ea == 0 ? chains[a].back() : chains[a].front();
        // count coincident ends over all open chains
        int count = 0;
        std::size_t other = a;
        int other_end = 0;
        for (std::size_t b2 = 0; b2 < chains.size(); ++b2) {
          if (closed_flags[b2]) continue;
          for (int eb = 0; eb < 2; ++eb) {
            if (b2 == a && eb == ea) continue;
            const Vec2 t2 = eb == 0 ? chains[b2].back() : chains[b2].front();
            if (dist(tip, t2) < 1.5 * h) {
              ++count;
              other = b2;
              other_end = eb;
            }
          }
        }
        if (count != 1) continue;
        if (other == a) {
          closed_flags[a] = true;  // both ends met: a loop
          if (dist(chains[a].front(), chains[a].back()) < 0.5 * h) chains[a].pop_back();
          merged = true;
          break;
        }
        std::vector<Vec2> joined;
        auto append = [&](const std::vector<Vec2>& v, bool reversed, bool skip_first) {
          if (!reversed)
            joined.insert(joined.end(), v.begin() + (skip_first ? 1 : 0), v.end());
          else
            joined.insert(joined.end(), v.rbegin() + (skip_first ? 1 : 0), v.rend());
        };
        append(chains[a], ea == 1, false);  // orient a so its matched end is last
        append(chains[other], other_end == 0, true);
        chains[a] = std::move(joined);
        chains.erase(chains.begin() + other);
        closed_flags.erase(closed_flags.begin() + other);
        merged = true;
      }
    }
  }

  // thinning retracts open line ends by about the band width; extend each
  // endpoint along the chain direction while the sublevel mask persists,
  // stopping short of other chains (junction ends stay put)
  auto near_other_chain = [&](Vec2 p, std::size_t self) {
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (c == self) continue;
      for (std::size_t k = 0; k + 1 < chains[c].size(); ++k) {
        const Vec2 a = chains[c][k], b2 = chains[c][k + 1];
        const Vec2 d = b2 - a;
        const double t = std::clamp((p - a).dot(d) / d.norm2(), 0.0, 1.0);
        if (dist(p, a + t * d) < 1.5 * h) return true;
      }
    }
    return false;
  };
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (closed_flags[c]) continue;
    auto& pts = chains[c];
    if (pts.size() < 2) continue;
    for (int end = 0; end < 2; ++end) {
      for (int step = 0; step < 4 * static_cast<int>(s.eps_phase / h) + 8; ++step) {
        const Vec2 tip = end == 0 ? pts.back() : pts.front();
        const Vec2 prev = end == 0 ? pts[pts.size() - 2] : pts[1];
        const Vec2 dir = (tip - prev).normalized();
        Vec2 next = tip + h * dir;
        next.x = std::clamp(next.x, s.z.domain_lo().x, s.z.domain_hi().x);
        next.y = std::clamp(next.y, s.z.domain_lo().y, s.z.domain_hi().y);
        if (dist(next, tip) < 0.25 * h || s.z.interp(next) >= threshold) break;
        if (near_other_chain(next, c)) break;
        if (end == 0) pts.push_back(next);
        else pts.insert(pts.begin(), next);
      }
    }
  }

  for (std::size_t c = 0; c < chains.size(); ++c) {
    auto& pts = chains[c];
    // parabolic subpixel refinement across the trench
    std::vector<Vec2> refined = pts;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k + 2 < n + (closed_flags[c] ? 2 : 0); ++k) {
      const std::size_t im = k % n, i0 = (k + 1) % n, ip = (k + 2) % n;
      const Vec2 tang = (pts[ip] - pts[im]).normalized();
      const Vec2 nu = tang.perp();
      const Vec2 q = pts[i0];
      auto zat = [&](double off) {
        Vec2 pp = q + off * nu;
        pp.x = std::clamp(pp.x, s.z.domain_lo().x, s.z.domain_hi().x);
        pp.y = std::clamp(pp.y, s.z.domain_lo().y, s.z.domain_hi().y);
        return s.z.interp(pp);
      };
      const double zm = zat(-h), z0 = zat(0.0), zp = zat(h);
      const double denom = zp - 2 * z0 + zm;
      if (std::abs(denom) > 1e-12) {
        const double off = std::clamp(-0.5 * h * (zp - zm) / denom, -h, h);
        refined[i0] = q + off * nu;
      }
    }
    pts = refined;
    // light smoothing keeps the 8-connected staircase from inflating lengths
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<Vec2> sm = pts;
      for (std::size_t k = 0; k + 2 < n + (closed_flags[c] ? 2 : 0); ++k) {
        const std::size_t im = k % n, i0 = (k + 1) % n, ip = (k + 2) % n;
        sm[i0] = 0.25 * pts[im] + 0.5 * pts[i0] + 0.25 * pts[ip];
      }
      pts = sm;
    }
    // drop exact duplicates the smoothing may have created
    std::vector<Vec2> dedup;
    for (const Vec2& q : pts)
      if (dedup.empty() || dist(dedup.back(), q) > 1e-12) dedup.push_back(q);
    pts = dedup;
  }

  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (chains[c].size() < 2) continue;
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < chains[c].size(); ++k)
      len += dist(chains[c][k], chains[c][k + 1]);
    if (closed_flags[c]) len += dist(chains[c].back(), chains[c].front());
    if (len < 4.0 * h) continue;
    out.add_chain(chains[c], closed_flags[c]);
  }
  return out;
}

std::vector<Classification> diagnose_segmentation(const PhaseFieldState& s,
                                                  const std::vector<Vec2>& points,
                                                  const std::vector<double>& scales,
                                                  ClassifyThresholds thr) {
  auto jumps = std::make_shared<JumpSet>(extract_jumpset(s, 0.5));
  auto u = std::make_shared<ScalarField>(s.u);
  u->attach_jumps(jumps, 2.0 * s.u.spacing(), s.eps_phase + s.u.spacing());
  PairView pv = PairView::of_field(u, jumps, 0.0, 0.0);
  std::vector<Classification> out;
  for (Vec2 p : points) out.push_back(classify_point(pv, p, scales, thr));
  return out;
}

}  // namespace mslab

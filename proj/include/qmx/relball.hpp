#pragma once

#include <random>

#include "qmx/relword.hpp"

namespace qmx {

struct RelEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  char kind = 'X';         // 'X' relative generator, 'K' pool element
  std::uint32_t label = 0;  // index into X or K_pool
};

// Finite piece of the Cayley graph of the ambient group over the generating
// set X ∪ K_pool.  Vertices are reduced ambient representatives in BFS order;
// the edge set is undirected (both labels of an inverse pair are walked, so
// each geometric edge appears once per direction of discovery).
struct RelBall {
  const RelAlphabet* alph = nullptr;
  std::vector<Word> vertices;
  std::vector<std::uint32_t> dist;
  std::vector<RelEdge> edges;
  std::vector<std::vector<std::uint32_t>> adj;  // undirected neighbor lists, deduplicated
  std::uint32_t radius = 0;

  std::optional<std::uint32_t> find(const Word& w) const { return index_.find(alph->ambient->reduce(w)); }
  std::size_t size() const { return vertices.size(); }

  ElementIndex index_;
  explicit RelBall(const RelAlphabet& a) : alph(&a), index_(a.ambient) {}
};

struct RelBallOptions {
  std::size_t max_elements = 200000;
};

inline RelBall rel_ball(const RelAlphabet& alph, std::uint32_t radius, RelBallOptions opts = {}) {
  RelBall b(alph);
  b.radius = radius;
  b.vertices.push_back(Word{});
  b.dist.push_back(0);
  b.index_.intern(Word{});

  // deterministic label order: X entries first, then pool entries
  struct Label {
    char kind;
    std::uint32_t idx;
    const Word* w;
  };
  std::vector<Label> labels;
  for (std::uint32_t i = 0; i < alph.X.size(); ++i) labels.push_back({'X', i, &alph.X[i]});
  for (std::uint32_t i = 0; i < alph.K_pool.size(); ++i) labels.push_back({'K', i, &alph.K_pool[i]});

  std::size_t frontier_begin = 0;
  for (std::uint32_t r = 1; r <= radius; ++r) {
    std::size_t frontier_end = b.vertices.size();
    for (std::size_t v = frontier_begin; v < frontier_end; ++v) {
      for (const Label& lab : labels) {
        Word next = alph.ambient->reduce(concat(b.vertices[v], *lab.w));
        bool inserted = false;
        std::uint32_t id = b.index_.intern(next, &inserted);
        if (inserted) {
          if (b.vertices.size() >= opts.max_elements)
            fail(Errc::budget_exceeded, "relative ball exceeded max_elements=" +
                                            std::to_string(opts.max_elements) + " at radius " + std::to_string(r));
          b.vertices.push_back(std::move(next));
          b.dist.push_back(r);
        }
        if (id != v) b.edges.push_back(RelEdge{static_cast<std::uint32_t>(v), id, lab.kind, lab.idx});
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == b.vertices.size()) break;
  }

  // induced edges among the outermost shell (their targets are only recorded
  // when already present, so distances inside the ball stay as tight as the
  // vertex set allows)
  for (std::size_t v = frontier_begin; v < b.vertices.size(); ++v) {
    for (const Label& lab : labels) {
      Word next = alph.ambient->reduce(concat(b.vertices[v], *lab.w));
      if (auto id = b.index_.find(next); id && *id != v)
        b.edges.push_back(RelEdge{static_cast<std::uint32_t>(v), *id, lab.kind, lab.idx});
    }
  }

  b.adj.assign(b.vertices.size(), {});
  for (const RelEdge& e : b.edges) {
    b.adj[e.src].push_back(e.dst);
    b.adj[e.dst].push_back(e.src);
  }
  for (auto& nbrs : b.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return b;
}

inline constexpr std::uint32_t kUnreached = 0xffffffffu;

inline std::vector<std::uint32_t> bfs_from(const RelBall& b, std::uint32_t src) {
  if (src >= b.size()) fail(Errc::vertex_not_in_ball, "BFS source outside ball");
  std::vector<std::uint32_t> d(b.size(), kUnreached);
  std::vector<std::uint32_t> queue{src};
  d[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t u = queue[head];
    for (std::uint32_t v : b.adj[u])
      if (d[v] == kUnreached) {
        d[v] = d[u] + 1;
        queue.push_back(v);
      }
  }
  return d;
}

// Shortest path length within the ball; lower-bounds the true relative
// distance and is exact when the true geodesic stays inside the ball.
inline std::optional<std::uint32_t> graph_distance(const RelBall& b, std::uint32_t u, std::uint32_t v) {
  if (u >= b.size() || v >= b.size()) fail(Errc::vertex_not_in_ball, "vertex id outside ball");
  auto d = bfs_from(b, u);
  if (d[v] == kUnreached) return std::nullopt;
  return d[v];
}

// BFS-tree geodesic from u to v (parents chosen in discovery order, so the
// path is deterministic).  Empty result when unreachable.
inline std::vector<std::uint32_t> geodesic_in_ball(const RelBall& b, std::uint32_t u, std::uint32_t v) {
  if (u >= b.size() || v >= b.size()) fail(Errc::vertex_not_in_ball, "vertex id outside ball");
  std::vector<std::uint32_t> parent(b.size(), kUnreached);
  std::vector<std::uint32_t> queue{u};
  parent[u] = u;
  for (std::size_t head = 0; head < queue.size() && parent[v] == kUnreached; ++head) {
    std::uint32_t x = queue[head];
    for (std::uint32_t y : b.adj[x])
      if (parent[y] == kUnreached) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[v] == kUnreached) return {};
  std::vector<std::uint32_t> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Max over sampled triangles of the thin-triangles (slimness) constant: the
// farthest any point of one side gets from the union of the other two sides,
// with geodesics and distances taken inside the ball.
inline Rat estimate_delta(const RelBall& b, std::size_t triangle_samples, std::uint64_t seed) {
  if (b.size() < 3) return Rat(0);
  std::mt19937_64 rng(seed);
  std::uint32_t worst = 0;
  for (std::size_t s = 0; s < triangle_samples; ++s) {
    std::uint32_t u = static_cast<std::uint32_t>(rng() % b.size());
    std::uint32_t v = static_cast<std::uint32_t>(rng() % b.size());
    std::uint32_t w = static_cast<std::uint32_t>(rng() % b.size());
    if (u == v || v == w || u == w) continue;
    std::vector<std::uint32_t> sides[3] = {geodesic_in_ball(b, u, v), geodesic_in_ball(b, v, w),
                                           geodesic_in_ball(b, w, u)};
    if (sides[0].empty() || sides[1].empty() || sides[2].empty()) continue;
    for (int i = 0; i < 3; ++i) {
      // multi-source BFS from the union of the other two sides
      std::vector<std::uint32_t> d(b.size(), kUnreached);
      std::vector<std::uint32_t> queue;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        for (std::uint32_t x : sides[j])
          if (d[x] == kUnreached) {
            d[x] = 0;
            queue.push_back(x);
          }
      }
      for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t x = queue[head];
        for (std::uint32_t y : b.adj[x])
          if (d[y] == kUnreached) {
            d[y] = d[x] + 1;
            queue.push_back(y);
          }
      }
      for (std::uint32_t x : sides[i])
        if (d[x] != kUnreached && d[x] > worst) worst = d[x];
    }
  }
  return Rat(worst);
}

// Checks the (lambda, mu) quasigeodesic inequality for every subpath, with
// distances measured inside the ball.
inline bool is_quasigeodesic(const RelBall& b, const std::vector<std::uint32_t>& path, const Rat& lambda,
                             const Rat& mu) {
  for (std::uint32_t p : path)
    if (p >= b.size()) fail(Errc::vertex_not_in_ball, "path vertex outside ball");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& nbrs = b.adj[path[i]];
    if (!std::binary_search(nbrs.begin(), nbrs.end(), path[i + 1]))
      fail(Errc::path_broken, "consecutive path vertices are not adjacent");
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto d = bfs_from(b, path[i]);
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      if (d[path[j]] == kUnreached) return false;
      if (Rat(static_cast<long long>(j - i)) > lambda * Rat(d[path[j]]) + mu) return false;
    }
  }
  return true;
}

inline std::string rel_ball_edges_csv(const RelBall& b) {
  std::string out = "src,dst,label_kind,label\n";
  for (const RelEdge& e : b.edges) {
    const Word& w = e.kind == 'X' ? b.alph->X[e.label] : b.alph->K_pool[e.label];
    out += std::to_string(e.src) + "," + std::to_string(e.dst) + "," + (e.kind == 'X' ? "X" : "K") + "," +
           word_str(b.alph->ambient->pres.alphabet, w) + "\n";
  }
  return out;
}

}  // namespace qmx

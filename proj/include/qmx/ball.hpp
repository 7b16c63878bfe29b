#pragma once

#include "qmx/group.hpp"

namespace qmx {

struct BallOptions {
  std::vector<Word> generators;        // defaults to the presentation letters
  std::size_t max_elements = 2000000;  // hard budget; exceeding it is an error
};

// Ball of given radius in the word metric of `generators` (closed under
// inversion automatically).  Elements are stored reduced, in breadth-first
// discovery order, with elements[0] the identity; `dist[i]` is the word
// length at which element i was first reached.
struct Ball {
  CtxPtr ctx;
  std::vector<Word> elements;
  std::vector<std::uint32_t> dist;
  std::uint32_t radius = 0;
  std::vector<Word> generators;  // the closed (gen + inverse) list actually used

  std::optional<std::uint32_t> find(const Word& w) const { return index_.find(ctx->reduce(w)); }
  std::size_t size() const { return elements.size(); }

  // number of elements within distance r  (r <= radius)
  std::size_t count_within(std::uint32_t r) const {
    std::size_t n = 0;
    while (n < dist.size() && dist[n] <= r) ++n;
    return n;
  }

  ElementIndex index_;  // shares ids with `elements`

  explicit Ball(CtxPtr c) : ctx(c), index_(c) {}
};

inline std::vector<Word> default_generators(const GroupContext& ctx) {
  std::vector<Word> gens;
  for (std::uint32_t i = 0; i < ctx.rank(); ++i) gens.push_back(Word{Gen{i, 1}});
  return gens;
}

inline std::vector<Word> close_under_inverse(const GroupContext& ctx, std::vector<Word> gens) {
  std::vector<Word> out;
  ElementIndex seen(std::make_shared<GroupContext>(ctx));
  auto add = [&](const Word& w) {
    Word r = ctx.reduce(w);
    if (ctx.is_identity(r)) return;
    bool inserted = false;
    seen.intern(r, &inserted);
    if (inserted) out.push_back(r);
  };
  for (const Word& g : gens) {
    add(g);
    add(word_inverse(g));
  }
  return out;
}

inline Ball ball(CtxPtr ctx, std::uint32_t radius, BallOptions opts = {}) {
  Ball b(ctx);
  b.radius = radius;
  std::vector<Word> gens = opts.generators.empty() ? default_generators(*ctx) : opts.generators;
  b.generators = close_under_inverse(*ctx, std::move(gens));

  b.elements.push_back(Word{});
  b.dist.push_back(0);
  b.index_.intern(Word{});

  std::size_t frontier_begin = 0;
  for (std::uint32_t r = 1; r <= radius; ++r) {
    std::size_t frontier_end = b.elements.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const Word& g : b.generators) {
        Word next = ctx->reduce(concat(b.elements[i], g));
        bool inserted = false;
        b.index_.intern(next, &inserted);
        if (!inserted) continue;
        if (b.elements.size() >= opts.max_elements)
          fail(Errc::budget_exceeded,
               "ball exceeded max_elements=" + std::to_string(opts.max_elements) + " at radius " +
                   std::to_string(r));
        b.elements.push_back(std::move(next));
        b.dist.push_back(r);
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == b.elements.size()) break;  // group exhausted early
  }
  return b;
}

}  // namespace qmx

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "percolate/beta.hpp"
#include "percolate/order_index.hpp"
#include "percolate/partition.hpp"
#include "percolate/rng.hpp"
#include "percolate/vertex.hpp"

namespace percolate {

enum class ProcessType { kErdosRenyi, kHalfRestricted, kMinProduct, kMinSum };

enum class AchlioptasRule { kMinProduct, kMinSum };

class ProcessKind {
 public:
  static ProcessKind erdos_renyi() { return ProcessKind(ProcessType::kErdosRenyi); }
  static ProcessKind half_restricted(Beta beta) {
    return ProcessKind(ProcessType::kHalfRestricted, beta);
  }
  static ProcessKind achlioptas(AchlioptasRule rule) {
    return ProcessKind(rule == AchlioptasRule::kMinProduct
                           ? ProcessType::kMinProduct
                           : ProcessType::kMinSum);
  }
  // "er", "min-product", "min-sum" or "half-restricted"; beta is required
  // exactly for the last one.
  static ProcessKind parse(std::string_view name, std::optional<Beta> beta);

  ProcessType type() const noexcept { return type_; }
  const std::optional<Beta>& beta() const noexcept { return beta_; }
  bool is_achlioptas() const noexcept {
    return type_ == ProcessType::kMinProduct || type_ == ProcessType::kMinSum;
  }
  AchlioptasRule rule() const;
  std::string name() const;
  // name plus beta for the half-restricted process, e.g. "half-restricted-0.5".
  std::string tag() const;

 private:
  explicit ProcessKind(ProcessType type, std::optional<Beta> beta = {})
      : type_(type), beta_(beta) {}

  ProcessType type_;
  std::optional<Beta> beta_;
};

struct ProcessOptions {
  TieBreak tie_break = TieBreak::kLabel;
  // Achlioptas candidates drawn from non-edges only.
  bool strict_achlioptas = false;
  // Break min-rule ties with a fair coin instead of taking the first edge.
  bool random_ties = false;
};

enum class Choice { kFirst, kSecond };

struct EdgeCandidate {
  VertexId u;
  VertexId v;
  std::uint32_t size_u = 0;
  std::uint32_t size_v = 0;
};

struct StepRecord {
  std::uint64_t step = 0;
  // Endpoints of the edge the step tried to insert. For the half-restricted
  // process u is the unrestricted and v the restricted vertex.
  VertexId u;
  VertexId v;
  bool merged = false;
  MergeOutcome merge;
  std::optional<std::array<EdgeCandidate, 2>> candidates;
  std::optional<Choice> choice;
};

// Simple-graph edge presence, keyed by the packed unordered pair.
class EdgeSet {
 public:
  // False if the edge was already present.
  bool insert(VertexId u, VertexId v) { return edges_.insert(key(u, v)).second; }
  bool contains(VertexId u, VertexId v) const {
    return edges_.contains(key(u, v));
  }
  std::size_t size() const noexcept { return edges_.size(); }
  void reserve(std::size_t count) { edges_.reserve(count); }

 private:
  static std::uint64_t key(VertexId u, VertexId v) noexcept {
    const auto [lo, hi] = std::minmax(u.label, v.label);
    return (std::uint64_t{lo} << 32) | hi;
  }
  std::unordered_set<std::uint64_t> edges_;
};

// Product or sum of the endpoint component sizes; lower is preferred.
std::uint64_t rule_score(std::pair<std::uint32_t, std::uint32_t> sizes,
                         AchlioptasRule rule);

// Ties go to the first candidate.
Choice rule_choose(std::pair<std::uint32_t, std::uint32_t> first,
                   std::pair<std::uint32_t, std::uint32_t> second,
                   AchlioptasRule rule);

namespace detail {

template <UniformSource R>
VertexId uniform_vertex(R& rng, std::uint32_t n) {
  return VertexId{static_cast<std::uint32_t>(rng.uniform_below(n)) + 1};
}

// Uniform unordered pair of distinct vertices, n >= 2.
template <UniformSource R>
std::pair<VertexId, VertexId> uniform_pair(R& rng, std::uint32_t n) {
  const auto u = static_cast<std::uint32_t>(rng.uniform_below(n)) + 1;
  auto v = static_cast<std::uint32_t>(rng.uniform_below(n - 1)) + 1;
  if (v >= u) ++v;
  return {VertexId{u}, VertexId{v}};
}

inline bool same_pair(std::pair<VertexId, VertexId> a,
                      std::pair<VertexId, VertexId> b) {
  return (a.first == b.first && a.second == b.second) ||
         (a.first == b.second && a.second == b.first);
}

inline std::uint64_t pair_count(std::uint32_t n) {
  return std::uint64_t{n} * (n - 1) / 2;
}

}  // namespace detail

// One step of the half-restricted process: v1 uniform over [n], v2 uniform
// over the restricted set, edge inserted unless v1 == v2 or the two already
// share a component (the latter changes nothing we track).
template <UniformSource R>
StepRecord half_restricted_step(Partition& p, OrderIndex& idx, R& rng,
                                std::uint64_t step) {
  StepRecord rec;
  rec.step = step;
  rec.u = detail::uniform_vertex(rng, p.n());
  const RankDraw draw{
      static_cast<std::uint32_t>(rng.uniform_below(idx.restricted_size()))};
  rec.v = idx.select(draw);
  if (rec.u == rec.v) return rec;
  rec.merge = p.unite(rec.u, rec.v);
  rec.merged = rec.merge.merged;
  if (rec.merged) idx.apply_merge(rec.merge);
  return rec;
}

// One step of the Erdos-Renyi process: a uniformly random non-edge, found by
// rejection against the edges inserted so far.
template <UniformSource R>
StepRecord er_step(Partition& p, EdgeSet& edges, R& rng, std::uint64_t step) {
  if (p.n() < 2) throw std::invalid_argument("Erdos-Renyi step needs n >= 2");
  if (edges.size() >= detail::pair_count(p.n())) {
    throw std::logic_error("graph is complete; no non-edge left");
  }
  StepRecord rec;
  rec.step = step;
  std::pair<VertexId, VertexId> e;
  do {
    e = detail::uniform_pair(rng, p.n());
  } while (edges.contains(e.first, e.second));
  edges.insert(e.first, e.second);
  rec.u = e.first;
  rec.v = e.second;
  rec.merge = p.unite(rec.u, rec.v);
  rec.merged = rec.merge.merged;
  return rec;
}

// One step of an Achlioptas process. Candidates are independent uniform
// vertex pairs, the second redrawn if it repeats the first. With
// strict_edges set, candidates are restricted to non-edges and the chosen
// edge is recorded there.
template <UniformSource R>
StepRecord achlioptas_step(Partition& p, R& rng, AchlioptasRule rule,
                           std::uint64_t step, bool random_ties = false,
                           EdgeSet* strict_edges = nullptr) {
  if (p.n() < 4) throw std::invalid_argument("Achlioptas step needs n >= 4");
  if (strict_edges != nullptr &&
      strict_edges->size() + 2 > detail::pair_count(p.n())) {
    throw std::logic_error("fewer than two non-edges left");
  }
  auto draw = [&] {
    for (;;) {
      auto e = detail::uniform_pair(rng, p.n());
      if (strict_edges == nullptr || !strict_edges->contains(e.first, e.second))
        return e;
    }
  };
  const auto first = draw();
  auto second = draw();
  while (detail::same_pair(first, second)) second = draw();

  StepRecord rec;
  rec.step = step;
  std::array<EdgeCandidate, 2> cands{
      EdgeCandidate{first.first, first.second, p.component_size(first.first),
                    p.component_size(first.second)},
      EdgeCandidate{second.first, second.second,
                    p.component_size(second.first),
                    p.component_size(second.second)}};

  Choice choice = rule_choose({cands[0].size_u, cands[0].size_v},
                              {cands[1].size_u, cands[1].size_v}, rule);
  if (random_ties &&
      rule_score({cands[0].size_u, cands[0].size_v}, rule) ==
          rule_score({cands[1].size_u, cands[1].size_v}, rule) &&
      rng.uniform_below(2) == 1) {
    choice = Choice::kSecond;
  }

  const EdgeCandidate& chosen = cands[choice == Choice::kFirst ? 0 : 1];
  rec.u = chosen.u;
  rec.v = chosen.v;
  if (strict_edges != nullptr) strict_edges->insert(rec.u, rec.v);
  rec.merge = p.unite(rec.u, rec.v);
  rec.merged = rec.merge.merged;
  rec.candidates = cands;
  rec.choice = choice;
  return rec;
}

// The state of one run of any of the four processes.
class Process {
 public:
  Process(ProcessKind kind, std::uint32_t n, ProcessOptions options = {});

  const ProcessKind& kind() const noexcept { return kind_; }
  const ProcessOptions& options() const noexcept { return options_; }
  std::uint32_t n() const noexcept { return partition_.n(); }
  std::uint64_t steps_taken() const noexcept { return steps_; }

  Partition& partition() noexcept { return partition_; }
  const Partition& partition() const noexcept { return partition_; }
  // Present for the half-restricted process only.
  const OrderIndex* index() const noexcept {
    return index_ ? &*index_ : nullptr;
  }
  // alpha of the current state; 0 for processes without a restricted set.
  std::uint32_t alpha() const noexcept { return index_ ? index_->alpha() : 0; }

  template <UniformSource R>
  StepRecord step(R& rng) {
    const std::uint64_t t = ++steps_;
    switch (kind_.type()) {
      case ProcessType::kErdosRenyi:
        return er_step(partition_, *edges_, rng, t);
      case ProcessType::kHalfRestricted:
        return half_restricted_step(partition_, *index_, rng, t);
      case ProcessType::kMinProduct:
      case ProcessType::kMinSum:
        return achlioptas_step(partition_, rng, kind_.rule(), t,
                               options_.random_ties,
                               edges_ ? &*edges_ : nullptr);
    }
    throw std::logic_error("unknown process type");
  }

 private:
  ProcessKind kind_;
  ProcessOptions options_;
  Partition partition_;
  std::optional<OrderIndex> index_;
  std::optional<EdgeSet> edges_;
  std::uint64_t steps_ = 0;
};

}  // namespace percolate

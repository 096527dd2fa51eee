#include "tilo/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "tilo/error.hpp"

namespace tilo {

Weight weight_from_real(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite edge weight");
  const double scaled = std::round(value * static_cast<double>(kWeightScale));
  if (std::abs(scaled) > 9.0e18) throw DomainError("edge weight out of range");
  return static_cast<Weight>(scaled);
}

double weight_to_real(Weight w) {
  return static_cast<double>(w) / static_cast<double>(kWeightScale);
}

Weight parse_weight(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty weight");

  // Fast exact path: [-+]?digits[.digits] with at most 6 fractional digits.
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    ++pos;
  }
  const std::size_t int_begin = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  const std::size_t int_end = pos;
  std::size_t frac_begin = pos, frac_end = pos;
  if (pos < s.size() && s[pos] == '.') {
    frac_begin = ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    frac_end = pos;
  }
  const bool has_digits = int_end > int_begin || frac_end > frac_begin;
  if (pos == s.size() && has_digits && frac_end - frac_begin <= 6 && int_end - int_begin <= 12) {
    Weight whole = 0;
    for (std::size_t i = int_begin; i < int_end; ++i) whole = whole * 10 + (s[i] - '0');
    Weight frac = 0;
    std::size_t digits = 0;
    for (std::size_t i = frac_begin; i < frac_end; ++i, ++digits) frac = frac * 10 + (s[i] - '0');
    for (; digits < 6; ++digits) frac *= 10;
    const Weight w = whole * kWeightScale + frac;
    return negative ? -w : w;
  }

  const std::string owned(s);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size()) throw InputError("invalid weight '" + owned + "'");
  try {
    return weight_from_real(value);
  } catch (const DomainError& e) {
    throw InputError(std::string(e.what()) + " '" + owned + "'");
  }
}

std::string format_weight(Weight w) {
  std::string out;
  if (w < 0) {
    out.push_back('-');
    w = -w;
  }
  out += std::to_string(w / kWeightScale);
  Weight frac = w % kWeightScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 6 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out.push_back('.');
    out += digits;
  }
  return out;
}

WeightedGraph::WeightedGraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
    : ids_(std::move(vertex_ids)) {
  const std::size_t n = ids_.size();
  if (n > std::numeric_limits<VertexId>::max()) throw DomainError("too many vertices");
  index_.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (!index_.emplace(ids_[v], v).second) throw DomainError("duplicate vertex id '" + ids_[v] + "'");
  }

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= n || e.v >= n) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("self-loop on vertex '" + ids_[e.u] + "'");
    if (e.w < 0) throw DomainError("negative edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw DomainError("duplicate edge '" + ids_[edges_[i].u] + "' - '" + ids_[edges_[i].v] + "'");
    }
  }
  std::erase_if(edges_, [](const Edge& e) { return e.w == 0; });

  std::vector<std::size_t> counts(n, 0);
  for (const Edge& e : edges_) {
    ++counts[e.u];
    ++counts[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + counts[v];
  adjacency_.resize(offsets_[n]);
  strength_.assign(n, 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in this order leaves each
  // adjacency list sorted by neighbor.
  for (const Edge& e : edges_) adjacency_[fill[e.v]++] = {e.u, e.w};
  for (const Edge& e : edges_) adjacency_[fill[e.u]++] = {e.v, e.w};
  for (VertexId v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  for (const Edge& e : edges_) {
    strength_[e.u] += e.w;
    strength_[e.v] += e.w;
    total_weight_ += e.w;
  }
}

WeightedGraph WeightedGraph::with_vertex_count(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> ids(n);
  for (std::size_t v = 0; v < n; ++v) ids[v] = std::to_string(v);
  return WeightedGraph(std::move(ids), std::move(edges));
}

std::optional<VertexId> WeightedGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Weight WeightedGraph::weight(VertexId u, VertexId v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& a, VertexId x) { return a.vertex < x; });
  return (it != nbrs.end() && it->vertex == v) ? it->w : 0;
}

VertexSet::VertexSet(std::size_t universe, std::span<const VertexId> members) : VertexSet(universe) {
  for (VertexId v : members) {
    if (v >= universe) throw DomainError("vertex outside the set universe");
    insert(v);
  }
}

void VertexSet::insert(VertexId v) {
  if (!member_[v]) {
    member_[v] = 1;
    ++count_;
  }
}

void VertexSet::erase(VertexId v) {
  if (member_[v]) {
    member_[v] = 0;
    --count_;
  }
}

VertexSet VertexSet::complement() const {
  VertexSet out(member_.size());
  for (VertexId v = 0; v < member_.size(); ++v) {
    if (!member_[v]) out.insert(v);
  }
  return out;
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  out.reserve(count_);
  for (VertexId v = 0; v < member_.size(); ++v) {
    if (member_[v]) out.push_back(v);
  }
  return out;
}

Weight boundary_size(const WeightedGraph& g, const VertexSet& a) {
  if (a.universe() != g.vertex_count()) throw DomainError("vertex set does not belong to this graph");
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (a.contains(e.u) != a.contains(e.v)) total += e.w;
  }
  return total;
}

Weight boundary_size(const WeightedGraph& g, std::span<const VertexId> a) {
  return boundary_size(g, VertexSet(g.vertex_count(), a));
}

Weight internal_weight(const WeightedGraph& g, const VertexSet& a) {
  if (a.universe() != g.vertex_count()) throw DomainError("vertex set does not belong to this graph");
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (a.contains(e.u) && a.contains(e.v)) total += e.w;
  }
  return total;
}

ComponentDecomposition connected_components(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  ComponentDecomposition out;
  out.block_of.assign(n, kUnseen);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (out.block_of[root] != kUnseen) continue;
    const std::size_t id = out.blocks.size();
    std::vector<VertexId>& block = out.blocks.emplace_back();
    out.block_of[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      block.push_back(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (out.block_of[nb.vertex] == kUnseen) {
          out.block_of[nb.vertex] = id;
          stack.push_back(nb.vertex);
        }
      }
    }
    std::sort(block.begin(), block.end());
  }
  return out;
}

WeightedGraph integrate(std::span<const WeightedGraph> graphs) {
  if (graphs.empty()) throw DomainError("integrate needs at least one graph");
  const WeightedGraph& base = graphs.front();
  const std::size_t n = base.vertex_count();
  const auto k = static_cast<Weight>(graphs.size());

  std::vector<Edge> summed;
  for (const WeightedGraph& g : graphs) {
    if (g.vertex_count() != n) throw DomainError("graphs do not share a vertex universe");
    std::vector<VertexId> remap(n);
    for (VertexId v = 0; v < n; ++v) {
      auto mapped = base.find(g.id(v));
      if (!mapped) throw DomainError("vertex id '" + g.id(v) + "' missing from the first graph");
      remap[v] = *mapped;
    }
    for (const Edge& e : g.edges()) {
      VertexId u = remap[e.u], v = remap[e.v];
      if (u > v) std::swap(u, v);
      summed.push_back({u, v, e.w});
    }
  }
  std::sort(summed.begin(), summed.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::vector<Edge> merged;
  for (const Edge& e : summed) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }
  for (Edge& e : merged) e.w = (e.w + k / 2) / k;
  return WeightedGraph(base.vertex_ids(), std::move(merged));
}

Subgraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> keep) {
  Subgraph out;
  out.to_parent.assign(keep.begin(), keep.end());
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()), out.to_parent.end());

  constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> local(g.vertex_count(), kAbsent);
  std::vector<std::string> ids;
  ids.reserve(out.to_parent.size());
  for (VertexId i = 0; i < out.to_parent.size(); ++i) {
    if (out.to_parent[i] >= g.vertex_count()) throw DomainError("vertex outside the graph");
    local[out.to_parent[i]] = i;
    ids.push_back(g.id(out.to_parent[i]));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != kAbsent && local[e.v] != kAbsent) edges.push_back({local[e.u], local[e.v], e.w});
  }
  out.graph = WeightedGraph(std::move(ids), std::move(edges));
  return out;
}

GraphStats graph_stats(const WeightedGraph& g) {
  GraphStats s;
  s.edges = g.edge_count();
  for (const auto& block : connected_components(g).blocks) {
    if (block.size() >= 2) {
      ++s.components;
      s.vertices += block.size();
    }
  }
  return s;
}

}  // namespace tilo

#include "wordgp/variation.hpp"

#include <utility>
#include <vector>

namespace wordgp {

namespace {

// 90% internal / 10% leaf point selection, the usual crossover bias.
Node* pick_point_biased(Node& root, Rng& rng) {
    std::vector<Node*> internals;
    std::vector<Node*> leaves;
    for (Node* n : collect_nodes(root)) {
        (n->kind == NodeKind::Terminal ? leaves : internals).push_back(n);
    }
    if (!internals.empty() && rng.uniform_real() < 0.9)
        return internals[rng.uniform_index(internals.size())];
    return leaves[rng.uniform_index(leaves.size())];
}

GpTree subtree_crossover(const GpTree& a, const GpTree& b, Rng& rng) {
    GpTree child = a;
    Node* target = pick_point_biased(child.root, rng);
    // Picking the donor point on a scratch copy keeps b untouched.
    GpTree donor = b;
    Node* source = pick_point_biased(donor.root, rng);
    *target = std::move(*source);
    return child;
}

Node uniform_merge(const Node& a, const Node& b, Rng& rng) {
    const Node& pick = rng.bernoulli(0.5) ? b : a;
    if (a.arity() != b.arity()) return pick;  // base of the common region
    Node out;
    out.kind = pick.kind;
    out.binary = pick.binary;
    out.unary = pick.unary;
    out.slot = pick.slot;
    out.children.reserve(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i)
        out.children.push_back(uniform_merge(a.children[i], b.children[i], rng));
    return out;
}

// Visits the common region (descending only where arities agree) and collects
// the paired nodes. `target` is the child copy being edited in place.
void collect_common_region(Node& target, const Node& b,
                           std::vector<std::pair<Node*, const Node*>>& out) {
    out.emplace_back(&target, &b);
    if (target.arity() != b.arity()) return;
    for (std::size_t i = 0; i < target.arity(); ++i)
        collect_common_region(target.children[i], b.children[i], out);
}

GpTree one_point_crossover(const GpTree& a, const GpTree& b, Rng& rng) {
    GpTree child = a;
    std::vector<std::pair<Node*, const Node*>> region;
    collect_common_region(child.root, b.root, region);
    auto [target, source] = region[rng.uniform_index(region.size())];
    *target = *source;
    return child;
}

// Positions (paths of child indices) valid in both trees, arity agreement not
// required.
void collect_common_positions(Node& target, const Node& b,
                              std::vector<std::pair<Node*, const Node*>>& out) {
    out.emplace_back(&target, &b);
    const std::size_t n = std::min(target.arity(), b.arity());
    for (std::size_t i = 0; i < n; ++i)
        collect_common_positions(target.children[i], b.children[i], out);
}

GpTree context_preserving_crossover(const GpTree& a, const GpTree& b, Rng& rng) {
    GpTree child = a;
    std::vector<std::pair<Node*, const Node*>> positions;
    collect_common_positions(child.root, b.root, positions);
    auto [target, source] = positions[rng.uniform_index(positions.size())];
    *target = *source;
    return child;
}

GpTree size_fair_crossover(const GpTree& a, const GpTree& b, Rng& rng) {
    GpTree child = a;
    Node* target = pick_point_biased(child.root, rng);
    const std::size_t excised = size(*target);
    // Donor subtree capped at 1 + 2x the excised size; a leaf always
    // qualifies, so the candidate list is never empty.
    std::vector<const Node*> candidates;
    for (const Node* n : collect_nodes(b.root)) {
        if (size(*n) <= 1 + 2 * excised) candidates.push_back(n);
    }
    *target = *candidates[rng.uniform_index(candidates.size())];
    return child;
}

GpTree apply_kind(CrossoverKind kind, const GpTree& a, const GpTree& b, Rng& rng) {
    switch (kind) {
        case CrossoverKind::Subtree: return subtree_crossover(a, b, rng);
        case CrossoverKind::Uniform: return {uniform_merge(a.root, b.root, rng)};
        case CrossoverKind::SizeFair: return size_fair_crossover(a, b, rng);
        case CrossoverKind::OnePoint: return one_point_crossover(a, b, rng);
        case CrossoverKind::ContextPreserving: return context_preserving_crossover(a, b, rng);
    }
    return a;
}

void collect_with_depth(Node& node, int d, std::vector<std::pair<Node*, int>>& out) {
    out.emplace_back(&node, d);
    for (Node& c : node.children) collect_with_depth(c, d + 1, out);
}

}  // namespace

GpTree crossover(CrossoverKind kind, const GpTree& fitter, const GpTree& other,
                 int max_depth, Rng& rng) {
    constexpr int kRetries = 5;
    for (int attempt = 0; attempt <= kRetries; ++attempt) {
        GpTree child = apply_kind(kind, fitter, other, rng);
        if (depth(child) <= max_depth) return child;
    }
    return fitter;
}

GpTree mutate(const GpTree& tree, std::uint32_t num_slots, int max_depth, Rng& rng) {
    GpTree child = tree;
    std::vector<std::pair<Node*, int>> nodes;
    collect_with_depth(child.root, 0, nodes);
    auto [target, node_depth] = nodes[rng.uniform_index(nodes.size())];
    const int budget = std::max(0, max_depth - node_depth);
    *target = random_tree(num_slots, budget, InitMethod::Grow, rng).root;
    return child;
}

}  // namespace wordgp

#include "wordgp/tree.hpp"

#include <algorithm>

namespace wordgp {

bool Node::operator==(const Node& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case NodeKind::Terminal:
            return slot == other.slot;
        case NodeKind::Unary:
            if (unary != other.unary) return false;
            break;
        case NodeKind::Binary:
            if (binary != other.binary) return false;
            break;
    }
    return children == other.children;
}

int depth(const Node& node) {
    int d = 0;
    for (const Node& c : node.children) d = std::max(d, 1 + depth(c));
    return d;
}

std::size_t size(const Node& node) {
    std::size_t n = 1;
    for (const Node& c : node.children) n += size(c);
    return n;
}

bool well_formed(const GpTree& tree, std::uint32_t num_slots) {
    const auto check = [&](const Node& node, const auto& self) -> bool {
        switch (node.kind) {
            case NodeKind::Terminal:
                if (node.arity() != 0 || node.slot >= num_slots) return false;
                break;
            case NodeKind::Unary:
                if (node.arity() != 1) return false;
                break;
            case NodeKind::Binary:
                if (node.arity() != 2) return false;
                break;
        }
        for (const Node& c : node.children) {
            if (!self(c, self)) return false;
        }
        return true;
    };
    return check(tree.root, check);
}

namespace {

constexpr BinaryOp kBinaryOps[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::PDiv};
constexpr UnaryOp kUnaryOps[] = {UnaryOp::Square, UnaryOp::Sqrt};
constexpr std::size_t kNumFunctions = 6;  // 4 binary + 2 unary

Node random_function_node(Rng& rng) {
    const std::size_t pick = rng.uniform_index(kNumFunctions);
    Node n;
    if (pick < 4) {
        n.kind = NodeKind::Binary;
        n.binary = kBinaryOps[pick];
    } else {
        n.kind = NodeKind::Unary;
        n.unary = kUnaryOps[pick - 4];
    }
    return n;
}

Node build(std::uint32_t num_slots, int budget, InitMethod method, Rng& rng) {
    const bool stop =
        budget == 0 ||
        (method == InitMethod::Grow &&
         rng.uniform_index(num_slots + kNumFunctions) < num_slots);
    if (stop) return Node::terminal(static_cast<std::uint32_t>(rng.uniform_index(num_slots)));
    Node n = random_function_node(rng);
    const std::size_t arity = n.kind == NodeKind::Binary ? 2 : 1;
    for (std::size_t i = 0; i < arity; ++i)
        n.children.push_back(build(num_slots, budget - 1, method, rng));
    return n;
}

}  // namespace

GpTree random_tree(std::uint32_t num_slots, int max_depth, InitMethod method, Rng& rng) {
    return {build(num_slots, max_depth, method, rng)};
}

namespace {

template <typename NodeT>
void collect(NodeT& node, std::vector<NodeT*>& out) {
    out.push_back(&node);
    for (auto& c : node.children) collect(c, out);
}

}  // namespace

std::vector<Node*> collect_nodes(Node& root) {
    std::vector<Node*> out;
    collect(root, out);
    return out;
}

std::vector<const Node*> collect_nodes(const Node& root) {
    std::vector<const Node*> out;
    collect(root, out);
    return out;
}

}  // namespace wordgp

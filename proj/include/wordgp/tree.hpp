#pragma once

#include <cstdint>
#include <vector>

#include "wordgp/rng.hpp"

namespace wordgp {

enum class BinaryOp : std::uint8_t { Add, Sub, Mul, PDiv };
enum class UnaryOp : std::uint8_t { Square, Sqrt };

enum class NodeKind : std::uint8_t { Terminal, Unary, Binary };

// One expression-tree node. Children are owned by value, so copying a Node
// deep-copies the whole subtree.
struct Node {
    NodeKind kind = NodeKind::Terminal;
    BinaryOp binary = BinaryOp::Add;
    UnaryOp unary = UnaryOp::Square;
    std::uint32_t slot = 0;  // terminal input index, < k
    std::vector<Node> children;

    static Node terminal(std::uint32_t slot) {
        Node n;
        n.kind = NodeKind::Terminal;
        n.slot = slot;
        return n;
    }
    static Node unary_op(UnaryOp op, Node child) {
        Node n;
        n.kind = NodeKind::Unary;
        n.unary = op;
        n.children.push_back(std::move(child));
        return n;
    }
    static Node binary_op(BinaryOp op, Node lhs, Node rhs) {
        Node n;
        n.kind = NodeKind::Binary;
        n.binary = op;
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
        return n;
    }

    std::size_t arity() const { return children.size(); }
    bool operator==(const Node& other) const;
};

// GP individual: expression tree over terminals w0..w{k-1} and the lifted
// component-wise operators.
struct GpTree {
    Node root;
    bool operator==(const GpTree& other) const { return root == other.root; }
};

// Longest root-to-leaf path counted in edges; a lone terminal has depth 0.
int depth(const Node& node);
inline int depth(const GpTree& tree) { return depth(tree.root); }

// Total node count.
std::size_t size(const Node& node);
inline std::size_t size(const GpTree& tree) { return size(tree.root); }

// True when every node's child count matches its kind and every terminal slot
// is < num_slots.
bool well_formed(const GpTree& tree, std::uint32_t num_slots);

enum class InitMethod : std::uint8_t { Grow, Full };

// Random tree over num_slots terminals. Grow may place terminals anywhere;
// full places them only at max_depth.
GpTree random_tree(std::uint32_t num_slots, int max_depth, InitMethod method, Rng& rng);

// Preorder list of node addresses; usable to pick uniform or biased variation
// points on a tree you own.
std::vector<Node*> collect_nodes(Node& root);
std::vector<const Node*> collect_nodes(const Node& root);

}  // namespace wordgp

#include <doctest.h>

#include <string>
#include <vector>

#include "wordgp/tree.hpp"
#include "wordgp/variation.hpp"

using namespace wordgp;

namespace {

constexpr CrossoverKind kAllKinds[] = {CrossoverKind::Subtree, CrossoverKind::Uniform,
                                       CrossoverKind::SizeFair, CrossoverKind::OnePoint,
                                       CrossoverKind::ContextPreserving};

// Structure signature ignoring operators and slots: arity sequence in
// preorder. Two trees with the same signature have the same shape.
std::string shape_of(const Node& node) {
    std::string s = std::to_string(node.arity());
    for (const Node& c : node.children) s += shape_of(c);
    return s;
}

}  // namespace

TEST_CASE("crossover of two single terminals yields one of the parents") {
    const GpTree a{Node::terminal(1)};
    const GpTree b{Node::terminal(3)};
    Rng rng(61);
    for (CrossoverKind kind : kAllKinds) {
        for (int i = 0; i < 20; ++i) {
            const GpTree child = crossover(kind, a, b, 5, rng);
            const bool is_parent = (child == a) || (child == b);
            CHECK(is_parent);
        }
    }
}

TEST_CASE("one-point crossover preserves the common shape of identical structures") {
    Rng rng(62);
    for (int i = 0; i < 100; ++i) {
        const GpTree a = random_tree(5, 4, InitMethod::Full, rng);
        // Same shape as a, different content: clone and rewrite ops/slots.
        GpTree b = a;
        for (Node* n : collect_nodes(b.root)) {
            if (n->kind == NodeKind::Terminal) n->slot = (n->slot + 1) % 5;
            else if (n->kind == NodeKind::Binary)
                n->binary = n->binary == BinaryOp::Add ? BinaryOp::Mul : BinaryOp::Add;
        }
        const GpTree child = crossover(CrossoverKind::OnePoint, a, b, 5, rng);
        CHECK(shape_of(child.root) == shape_of(a.root));
    }
}

TEST_CASE("children satisfy the depth bound and arity consistency") {
    Rng rng(63);
    for (int i = 0; i < 1000; ++i) {
        const GpTree a = random_tree(5, 5, i % 2 == 0 ? InitMethod::Grow : InitMethod::Full, rng);
        const GpTree b = random_tree(5, 5, i % 3 == 0 ? InitMethod::Full : InitMethod::Grow, rng);
        const auto kind = kAllKinds[rng.uniform_index(kNumCrossoverKinds)];
        const GpTree child = crossover(kind, a, b, 5, rng);
        CHECK(well_formed(child, 5));
        CHECK(depth(child) <= 5);
    }
}

TEST_CASE("crossover does not modify its parents") {
    Rng rng(64);
    for (CrossoverKind kind : kAllKinds) {
        const GpTree a = random_tree(5, 4, InitMethod::Grow, rng);
        const GpTree b = random_tree(5, 4, InitMethod::Full, rng);
        const GpTree a_copy = a;
        const GpTree b_copy = b;
        (void)crossover(kind, a, b, 5, rng);
        CHECK(a == a_copy);
        CHECK(b == b_copy);
    }
}

TEST_CASE("identical rng state replays the same child") {
    Rng seed_rng(65);
    for (CrossoverKind kind : kAllKinds) {
        const GpTree a = random_tree(5, 4, InitMethod::Grow, seed_rng);
        const GpTree b = random_tree(5, 5, InitMethod::Grow, seed_rng);
        Rng r1(77), r2(77);
        CHECK(crossover(kind, a, b, 5, r1) == crossover(kind, a, b, 5, r2));
    }
    const GpTree t = random_tree(5, 4, InitMethod::Grow, seed_rng);
    Rng r1(78), r2(78);
    CHECK(mutate(t, 5, 5, r1) == mutate(t, 5, 5, r2));
}

TEST_CASE("mutation of a single terminal stays within depth 5") {
    const GpTree t{Node::terminal(0)};
    Rng rng(66);
    for (int i = 0; i < 200; ++i) {
        const GpTree m = mutate(t, 5, 5, rng);
        CHECK(well_formed(m, 5));
        CHECK(depth(m) <= 5);
    }
}

TEST_CASE("mutation at the depth limit inserts a terminal") {
    // A left comb of depth exactly 5: any node at depth 5 has budget 0, so a
    // replacement there must be a lone terminal; the tree depth never grows.
    Node comb = Node::terminal(0);
    for (int i = 0; i < 5; ++i) comb = Node::binary_op(BinaryOp::Add, comb, Node::terminal(1));
    const GpTree t{comb};
    REQUIRE(depth(t) == 5);

    Rng rng(67);
    for (int i = 0; i < 500; ++i) {
        const GpTree m = mutate(t, 5, 5, rng);
        CHECK(well_formed(m, 5));
        CHECK(depth(m) <= 5);
    }
}

TEST_CASE("mutation preserves validity over random trees") {
    Rng rng(68);
    for (int i = 0; i < 1000; ++i) {
        const GpTree t = random_tree(5, 5, InitMethod::Grow, rng);
        const GpTree t_copy = t;
        const GpTree m = mutate(t, 5, 5, rng);
        CHECK(well_formed(m, 5));
        CHECK(depth(m) <= 5);
        CHECK(t == t_copy);  // input untouched
    }
}

TEST_CASE("crossover at a tight depth limit falls back cleanly") {
    // Depth-1 limit leaves little room: every child must still be valid.
    Rng rng(69);
    const GpTree a{Node::binary_op(BinaryOp::Add, Node::terminal(0), Node::terminal(1))};
    const GpTree b{Node::binary_op(BinaryOp::Mul, Node::terminal(2), Node::terminal(3))};
    for (CrossoverKind kind : kAllKinds) {
        for (int i = 0; i < 50; ++i) {
            const GpTree child = crossover(kind, a, b, 1, rng);
            CHECK(well_formed(child, 5));
            CHECK(depth(child) <= 1);
        }
    }
}

#include "wordgp/eval.hpp"

#include <cassert>
#include <stdexcept>

namespace wordgp {

Vec apply_lifted(BinaryOp op, std::span<const double> lhs, std::span<const double> rhs) {
    assert(lhs.size() == rhs.size());
    Vec out(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = apply_binary_scalar(op, lhs[i], rhs[i]);
    normalize_in_place(out);
    return out;
}

Vec apply_lifted(UnaryOp op, std::span<const double> arg) {
    Vec out(arg.size());
    for (std::size_t i = 0; i < arg.size(); ++i) out[i] = apply_unary_scalar(op, arg[i]);
    normalize_in_place(out);
    return out;
}

namespace {

Vec eval_node(const Node& node, std::span<const std::span<const double>> inputs) {
    switch (node.kind) {
        case NodeKind::Terminal: {
            const auto in = inputs[node.slot];
            return Vec(in.begin(), in.end());
        }
        case NodeKind::Unary:
            return apply_lifted(node.unary, eval_node(node.children[0], inputs));
        case NodeKind::Binary:
            return apply_lifted(node.binary, eval_node(node.children[0], inputs),
                                eval_node(node.children[1], inputs));
    }
    return {};
}

}  // namespace

Vec evaluate(const GpTree& tree, std::span<const std::span<const double>> inputs) {
    return eval_node(tree.root, inputs);
}

Vec evaluate(const GpTree& tree, std::span<const Vec> inputs) {
    std::vector<std::span<const double>> views(inputs.begin(), inputs.end());
    return evaluate(tree, views);
}

void Evaluator::compile(const GpTree& tree) {
    program_.clear();
    std::size_t stack = 0;
    max_stack_ = 0;
    const auto emit = [&](const Node& node, const auto& self) -> void {
        for (const Node& c : node.children) self(c, self);
        program_.push_back({node.kind, node.binary, node.unary, node.slot});
        switch (node.kind) {
            case NodeKind::Terminal: ++stack; break;
            case NodeKind::Unary: break;
            case NodeKind::Binary: --stack; break;
        }
        max_stack_ = std::max(max_stack_, stack);
    };
    emit(tree.root, emit);
    stack_.resize(max_stack_ * dim_);
}

void Evaluator::run(std::span<const std::span<const double>> inputs, Vec& out) const {
    const std::size_t d = dim_;
    double* sp = stack_.data();  // top of stack = sp - d
    for (const Instr& ins : program_) {
        switch (ins.kind) {
            case NodeKind::Terminal: {
                const auto in = inputs[ins.slot];
                for (std::size_t i = 0; i < d; ++i) sp[i] = in[i];
                sp += d;
                break;
            }
            case NodeKind::Unary: {
                double* a = sp - d;
                for (std::size_t i = 0; i < d; ++i) a[i] = apply_unary_scalar(ins.unary, a[i]);
                normalize_in_place({a, d});
                break;
            }
            case NodeKind::Binary: {
                double* a = sp - 2 * d;
                const double* b = sp - d;
                for (std::size_t i = 0; i < d; ++i)
                    a[i] = apply_binary_scalar(ins.binary, a[i], b[i]);
                normalize_in_place({a, d});
                sp -= d;
                break;
            }
        }
    }
    out.assign(stack_.data(), stack_.data() + d);
}

}  // namespace wordgp

#pragma once

#include <span>
#include <vector>

#include "wordgp/tree.hpp"
#include "wordgp/vec.hpp"

namespace wordgp {

// Threshold below which a divisor component triggers the protected rule:
// the component result is the numerator component unchanged.
inline constexpr double kProtectedDivEpsilon = 1e-9;

inline double apply_binary_scalar(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::PDiv: return std::abs(b) < kProtectedDivEpsilon ? a : a / b;
    }
    return 0.0;
}

// Square erases sign; square root is sign-preserving so its domain is all
// reals.
inline double apply_unary_scalar(UnaryOp op, double x) {
    switch (op) {
        case UnaryOp::Square: return x * x;
        case UnaryOp::Sqrt: return x < 0.0 ? -std::sqrt(-x) : std::sqrt(x);
    }
    return 0.0;
}

// Component-wise application followed by unit normalization. A zero-norm
// result passes through as the zero vector.
Vec apply_lifted(BinaryOp op, std::span<const double> lhs, std::span<const double> rhs);
Vec apply_lifted(UnaryOp op, std::span<const double> arg);

// Recursive reference evaluator. Allocates per node; the Evaluator below is
// the production path, and this one is kept as the serial baseline.
Vec evaluate(const GpTree& tree, std::span<const Vec> inputs);
Vec evaluate(const GpTree& tree, std::span<const std::span<const double>> inputs);

// Stack-machine evaluator: the tree is flattened to postfix once, then runs
// against many input tuples reusing one scratch buffer. Produces bit-identical
// results to evaluate().
class Evaluator {
public:
    explicit Evaluator(std::size_t dim) : dim_(dim) {}

    void compile(const GpTree& tree);

    // Evaluates the compiled tree; inputs[i] is the vector bound to wi.
    // The result lands in out (resized to dim).
    void run(std::span<const std::span<const double>> inputs, Vec& out) const;

    std::size_t dim() const { return dim_; }

private:
    struct Instr {
        NodeKind kind;
        BinaryOp binary;
        UnaryOp unary;
        std::uint32_t slot;
    };
    std::size_t dim_;
    std::vector<Instr> program_;
    std::size_t max_stack_ = 0;
    mutable std::vector<double> stack_;
};

}  // namespace wordgp

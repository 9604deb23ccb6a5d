#include "wordgp/expr.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace wordgp {

namespace {

char binary_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::PDiv: return '/';
    }
    return '?';
}

void print_node(const Node& node, std::string& out) {
    switch (node.kind) {
        case NodeKind::Terminal:
            out += 'w';
            out += std::to_string(node.slot);
            break;
        case NodeKind::Unary:
            if (node.unary == UnaryOp::Sqrt) {
                out += "sqrt(";
                print_node(node.children[0], out);
                out += ')';
            } else {
                print_node(node.children[0], out);
                out += "^2";
            }
            break;
        case NodeKind::Binary:
            out += '(';
            print_node(node.children[0], out);
            out += binary_symbol(node.binary);
            print_node(node.children[1], out);
            out += ')';
            break;
    }
}

class Parser {
public:
    Parser(const std::string& text, std::uint32_t num_slots)
        : text_(text), num_slots_(num_slots) {}

    GpTree parse() {
        skip_spaces();
        Node root = parse_expr();
        skip_spaces();
        if (pos_ != text_.size()) fail("trailing characters after expression");
        return {std::move(root)};
    }

private:
    // expr     := primary postfix*
    // primary  := terminal | "sqrt(" expr ")" | "(" expr binop expr ")"
    // postfix  := "^2"
    Node parse_expr() {
        Node node = parse_primary();
        while (true) {
            skip_spaces();
            if (peek() == '^') {
                ++pos_;
                expect('2', "expected '2' after '^'");
                node = Node::unary_op(UnaryOp::Square, std::move(node));
            } else {
                break;
            }
        }
        return node;
    }

    Node parse_primary() {
        skip_spaces();
        const char c = peek();
        if (c == 'w') return parse_terminal();
        if (c == 's') {
            match_keyword("sqrt(");
            Node child = parse_expr();
            skip_spaces();
            expect(')', "expected ')' closing sqrt");
            return Node::unary_op(UnaryOp::Sqrt, std::move(child));
        }
        if (c == '(') {
            ++pos_;
            Node lhs = parse_expr();
            skip_spaces();
            const BinaryOp op = parse_binop();
            Node rhs = parse_expr();
            skip_spaces();
            expect(')', "expected ')' closing binary expression");
            return Node::binary_op(op, std::move(lhs), std::move(rhs));
        }
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
    }

    Node parse_terminal() {
        ++pos_;  // consume 'w'
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ == start) fail("expected terminal index after 'w'");
        std::uint32_t slot = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, slot);
        (void)ptr;
        if (ec != std::errc{} || slot >= num_slots_)
            fail("terminal index out of range (k = " + std::to_string(num_slots_) + ")", start);
        return Node::terminal(slot);
    }

    BinaryOp parse_binop() {
        const char c = peek();
        ++pos_;
        switch (c) {
            case '+': return BinaryOp::Add;
            case '-': return BinaryOp::Sub;
            case '*': return BinaryOp::Mul;
            case '/': return BinaryOp::PDiv;
        }
        fail("expected a binary operator (+ - * /)", pos_ - 1);
    }

    void match_keyword(const char* kw) {
        for (const char* p = kw; *p; ++p) {
            if (pos_ >= text_.size() || text_[pos_] != *p) fail(std::string("expected '") + kw + "'");
            ++pos_;
        }
    }

    void expect(char c, const std::string& message) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(message);
        ++pos_;
    }

    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw std::runtime_error("expression parse error at position " + std::to_string(at) +
                                 ": " + message);
    }

    const std::string& text_;
    std::uint32_t num_slots_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_expression(const Node& node) {
    std::string out;
    print_node(node, out);
    return out;
}

std::string to_expression(const GpTree& tree) { return to_expression(tree.root); }

GpTree parse_expression(const std::string& text, std::uint32_t num_slots) {
    return Parser(text, num_slots).parse();
}

}  // namespace wordgp

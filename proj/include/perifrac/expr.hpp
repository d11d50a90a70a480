#pragma once

#include <memory>
#include <string>

namespace perifrac::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// One-variable expression: numbers, the variable, pi, sin/cos/exp/sqrt/log,
// + - * /, parentheses, unary minus, and ^ with a constant exponent
// (right-associative). Parsing failures raise SchemaError with a position.
class Expression {
  public:
    Expression() = default;

    static Expression parse(const std::string& text, const std::string& variable);

    double operator()(double x) const;

    // Exact symbolic derivative of the parse tree (exponents are constants,
    // so the power rule closes the grammar).
    Expression derivative() const;

    bool valid() const { return root_ != nullptr; }
    const std::string& text() const { return text_; }

  private:
    NodePtr root_;
    std::string text_;
};

} // namespace perifrac::expr

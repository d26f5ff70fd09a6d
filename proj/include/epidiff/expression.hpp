#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace epidiff {

/// Arithmetic over x, y, t and numeric literals with + - * / ( ),
/// unary minus, sin, cos, exp and the constant pi.
class Expression {
public:
    /// Throws ConfigError describing the first syntax error.
    static Expression parse(std::string_view text);

    double evaluate(double x, double y, double t) const;
    bool depends_on_time() const { return uses_t_; }
    bool depends_on_space() const { return uses_xy_; }
    /// The text as written (trimmed).
    const std::string& source() const { return source_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
    bool uses_t_ = false;
    bool uses_xy_ = false;
};

}  // namespace epidiff

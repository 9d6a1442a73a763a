#ifndef DILATION_EXPR_HPP
#define DILATION_EXPR_HPP

#include <functional>
#include <string>

namespace dilation::expr {

/// Compiles a one-variable expression over the grammar
///   +, -, *, /, ^, exp, log, sin, cos, sinh, cosh, abs, x, numbers
/// into a callable. Throws DomainError on parse failure.
std::function<double(double)> compile(const std::string& text);

} // namespace dilation::expr

#endif

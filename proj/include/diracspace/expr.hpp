#pragma once

#include "diracspace/presentation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace diracspace {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
    int line;
    int column;
};

struct ParseContext {
    int n = 3;
    std::optional<int> p;  // form degree of sections, when known
};

using Expr = std::variant<Poly, Form, VField, MultiVec, SectionEp>;

struct Parsed {
    Expr value;
    std::vector<std::string> warnings;
};

// Grammar: sums and differences of products. Atoms are integers, p/q, x1..x9 or x{10}, dx1.., Dx1..,
// parenthesized expressions. '^' wedges (or raises a scalar atom to an integer power), '*' scales.
Parsed parse_expression(const std::string& src, const ParseContext& ctx);
std::string print_expression(const Expr& e);
std::string expr_kind(const Expr& e);

Poly parse_poly(const std::string& src, int n);
Form parse_form(const std::string& src, int n, int degree);
VField parse_vfield(const std::string& src, int n);
MultiVec parse_multivec(const std::string& src, int n, int degree);
SectionEp parse_section(const std::string& src, int n, int p);

// Presentation files: "key: value" lines, '#' comments. Keys: kind (graph-form, graph-multivector, regular,
// scaled-top), dim, p (optional consistency check), omega, pi, f, Omega, frame ("identity" or rows separated
// by ';'), axes (one-based).
Presentation parse_presentation(const std::string& text);

} // namespace diracspace

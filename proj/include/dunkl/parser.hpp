#pragma once

#include "dunkl/operators.hpp"

#include <variant>

namespace dunkl {

/// Error with a 0-based source position.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Parse tree for custom operator expressions.
///
/// Grammar:
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary ('^' uint)?
///   primary := 'x'i | 'p'i | 'pi'i | 'R'i | 'Jp' | 'Jm' | 'J3' | 'r'
///            | 'inv(' atom ')' | rational | 'i' | param | '(' expr ')'
/// Products are noncommutative in written order (leftmost factor acts last).
struct CustomExprAst {
    struct Coord { int axis; };
    struct Mom { int axis; };
    struct DunklMom { int axis; };
    struct Refl { int axis; };
    struct JGen { char which; }; // '+', '-', '3'
    struct Radial {};
    struct InvAtom { std::string name; };
    struct RationalLit { mpq_class value; };
    struct ImagUnit {};
    struct Param { std::string name; };

    struct Factor;
    struct Term {
        std::vector<Factor> factors;
    };
    struct Sum {
        std::vector<std::pair<int, Term>> terms; // sign, term
    };
    struct Factor {
        std::variant<Coord, Mom, DunklMom, Refl, JGen, Radial, InvAtom, RationalLit, ImagUnit,
                     Param, Sum>
            prim;
        unsigned power = 1;
    };

    Sum root;
};

/// Parse a source string for dimension cfg->n. Index and atom validity are
/// enforced during parsing.
CustomExprAst parseOperatorExpr(const std::string& src, const ConfigPtr& cfg);

/// Canonical pretty-printer; parse(render(parse(s))) == parse(s).
std::string render(const CustomExprAst& ast);

/// Lower to the canonical operator form. Jp/Jm/J3 expand to the full-N
/// realization under the configuration's beta/gamma flags.
NormalOp lower(const CustomExprAst& ast, const ConfigPtr& cfg);

bool astEqual(const CustomExprAst& a, const CustomExprAst& b);

} // namespace dunkl

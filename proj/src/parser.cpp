#include "dunkl/parser.hpp"

#include <cctype>
#include <sstream>

namespace dunkl {

namespace {

struct Lexer {
    const std::string& src;
    size_t pos = 0;

    explicit Lexer(const std::string& s) : src(s) { skip(); }

    void skip() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() const { return pos >= src.size(); }
    char peek() const { return eof() ? '\0' : src[pos]; }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            skip();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    std::string ident() {
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string s = src.substr(start, pos - start);
        skip();
        return s;
    }

    unsigned integer() {
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        unsigned v = unsigned(std::stoul(src.substr(start, pos - start)));
        skip();
        return v;
    }

    // digits ['/' digits]
    mpq_class rational() {
        size_t start = pos;
        unsigned long num = integer();
        if (peek() == '/') {
            ++pos;
            skip();
            size_t dstart = pos;
            unsigned long den = integer();
            if (den == 0) throw ParseError("zero denominator", dstart);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        (void)start;
        return mpq_class(long(num));
    }
};

struct Parser {
    Lexer lex;
    const ConfigPtr& cfg;

    Parser(const std::string& src, const ConfigPtr& c) : lex(src), cfg(c) {}

    CustomExprAst::Sum parseSum() {
        CustomExprAst::Sum sum;
        int sign = 1;
        if (lex.accept('-')) sign = -1;
        sum.terms.emplace_back(sign, parseTerm());
        for (;;) {
            if (lex.accept('+'))
                sign = 1;
            else if (lex.accept('-'))
                sign = -1;
            else
                break;
            sum.terms.emplace_back(sign, parseTerm());
        }
        return sum;
    }

    CustomExprAst::Term parseTerm() {
        CustomExprAst::Term t;
        t.factors.push_back(parseFactor());
        while (lex.accept('*')) t.factors.push_back(parseFactor());
        return t;
    }

    CustomExprAst::Factor parseFactor() {
        CustomExprAst::Factor f;
        f.prim = parsePrimary();
        if (lex.accept('^')) f.power = lex.integer();
        return f;
    }

    int axisFrom(const std::string& name, size_t prefix, size_t errPos) {
        int idx = 0;
        try {
            idx = std::stoi(name.substr(prefix));
        } catch (...) {
            throw ParseError("bad index in '" + name + "'", errPos);
        }
        if (idx < 1 || idx > cfg->n)
            throw ParseError("index out of range in '" + name + "' (N = " +
                                 std::to_string(cfg->n) + ")",
                             errPos);
        return idx - 1;
    }

    std::variant<CustomExprAst::Coord, CustomExprAst::Mom, CustomExprAst::DunklMom,
                 CustomExprAst::Refl, CustomExprAst::JGen, CustomExprAst::Radial,
                 CustomExprAst::InvAtom, CustomExprAst::RationalLit, CustomExprAst::ImagUnit,
                 CustomExprAst::Param, CustomExprAst::Sum>
    parsePrimary() {
        size_t at = lex.pos;
        if (lex.accept('(')) {
            CustomExprAst::Sum inner = parseSum();
            lex.expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(lex.peek())))
            return CustomExprAst::RationalLit{lex.rational()};
        if (!std::isalpha(static_cast<unsigned char>(lex.peek())))
            throw ParseError("expected operand", at);
        std::string name = lex.ident();
        if (name == "i") return CustomExprAst::ImagUnit{};
        if (name == "r") {
            if (!cfg->rEnabled) throw ParseError("'r' requires the radial extension", at);
            return CustomExprAst::Radial{};
        }
        if (name == "Jp") return CustomExprAst::JGen{'+'};
        if (name == "Jm") return CustomExprAst::JGen{'-'};
        if (name == "J3") return CustomExprAst::JGen{'3'};
        if (name == "inv") {
            lex.expect('(');
            size_t atomAt = lex.pos;
            std::string atom = lex.ident();
            lex.expect(')');
            if (atom.size() >= 2 && atom[0] == 'x') {
                (void)axisFrom(atom, 1, atomAt);
                return CustomExprAst::InvAtom{atom};
            }
            for (int a = 0; a < ATOM_COUNT; ++a)
                if (atom == atomName(Atom(a))) {
                    if (Atom(a) == A_QETA && !cfg->rEnabled) return CustomExprAst::InvAtom{atom};
                    return CustomExprAst::InvAtom{atom};
                }
            throw ParseError("inv() expects a denominator atom, got '" + atom + "'", atomAt);
        }
        if (name.size() >= 2 && name[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(name[1])))
            return CustomExprAst::Coord{axisFrom(name, 1, at)};
        if (name.size() >= 3 && name.compare(0, 2, "pi") == 0 &&
            std::isdigit(static_cast<unsigned char>(name[2])))
            return CustomExprAst::DunklMom{axisFrom(name, 2, at)};
        if (name.size() >= 2 && name[0] == 'p' &&
            std::isdigit(static_cast<unsigned char>(name[1])))
            return CustomExprAst::Mom{axisFrom(name, 1, at)};
        if (name.size() >= 2 && name[0] == 'R' &&
            std::isdigit(static_cast<unsigned char>(name[1])))
            return CustomExprAst::Refl{axisFrom(name, 1, at)};
        if (paramIdByName(cfg->n, name) >= 0) return CustomExprAst::Param{name};
        throw ParseError("unknown identifier '" + name + "'", at);
    }
};

struct Renderer {
    std::ostringstream os;

    void sum(const CustomExprAst::Sum& s, bool parens) {
        if (parens) os << "(";
        bool first = true;
        for (const auto& [sign, t] : s.terms) {
            if (first) {
                if (sign < 0) os << "-";
            } else {
                os << (sign < 0 ? " - " : " + ");
            }
            first = false;
            term(t);
        }
        if (parens) os << ")";
    }

    void term(const CustomExprAst::Term& t) {
        bool first = true;
        for (const auto& f : t.factors) {
            if (!first) os << "*";
            first = false;
            factor(f);
        }
    }

    void factor(const CustomExprAst::Factor& f) {
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, CustomExprAst::Coord>)
                    os << "x" << p.axis + 1;
                else if constexpr (std::is_same_v<T, CustomExprAst::Mom>)
                    os << "p" << p.axis + 1;
                else if constexpr (std::is_same_v<T, CustomExprAst::DunklMom>)
                    os << "pi" << p.axis + 1;
                else if constexpr (std::is_same_v<T, CustomExprAst::Refl>)
                    os << "R" << p.axis + 1;
                else if constexpr (std::is_same_v<T, CustomExprAst::JGen>)
                    os << (p.which == '+' ? "Jp" : p.which == '-' ? "Jm" : "J3");
                else if constexpr (std::is_same_v<T, CustomExprAst::Radial>)
                    os << "r";
                else if constexpr (std::is_same_v<T, CustomExprAst::InvAtom>)
                    os << "inv(" << p.name << ")";
                else if constexpr (std::is_same_v<T, CustomExprAst::RationalLit>)
                    os << p.value.get_str();
                else if constexpr (std::is_same_v<T, CustomExprAst::ImagUnit>)
                    os << "i";
                else if constexpr (std::is_same_v<T, CustomExprAst::Param>)
                    os << p.name;
                else
                    sum(p, true);
            },
            f.prim);
        if (f.power != 1) os << "^" << f.power;
    }
};

NormalOp lowerSum(const CustomExprAst::Sum& s, const ConfigPtr& cfg);

NormalOp lowerPrimary(const CustomExprAst::Factor& f, const ConfigPtr& cfg) {
    return std::visit(
        [&](const auto& p) -> NormalOp {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CustomExprAst::Coord>)
                return NormalOp::mulBy(FieldElem::coordinate(cfg, p.axis));
            else if constexpr (std::is_same_v<T, CustomExprAst::Mom>)
                return atomicOperator(cfg, AtomicKind::Momentum, p.axis);
            else if constexpr (std::is_same_v<T, CustomExprAst::DunklMom>)
                return dunklMomentum(cfg, p.axis);
            else if constexpr (std::is_same_v<T, CustomExprAst::Refl>)
                return NormalOp::reflOp(cfg, p.axis);
            else if constexpr (std::is_same_v<T, CustomExprAst::JGen>) {
                Sl2Triple t = sl2Realization(cfg);
                return p.which == '+' ? t.jPlus : p.which == '-' ? t.jMinus : t.j3;
            } else if constexpr (std::is_same_v<T, CustomExprAst::Radial>)
                return NormalOp::mulBy(FieldElem::radial(cfg));
            else if constexpr (std::is_same_v<T, CustomExprAst::InvAtom>) {
                if (p.name[0] == 'x' && std::isdigit(static_cast<unsigned char>(p.name[1]))) {
                    int axis = std::stoi(p.name.substr(1)) - 1;
                    return NormalOp::mulBy(FieldElem::coordinate(cfg, axis, -1));
                }
                for (int a = 0; a < ATOM_COUNT; ++a)
                    if (p.name == atomName(Atom(a)))
                        return NormalOp::mulBy(FieldElem::atomInverse(cfg, Atom(a)));
                throw std::logic_error("lower: bad atom");
            } else if constexpr (std::is_same_v<T, CustomExprAst::RationalLit>)
                return NormalOp::identity(cfg).scaled(GaussianRational(p.value));
            else if constexpr (std::is_same_v<T, CustomExprAst::ImagUnit>)
                return NormalOp::identity(cfg).scaled(GaussianRational::i());
            else if constexpr (std::is_same_v<T, CustomExprAst::Param>) {
                int id = paramIdByName(cfg->n, p.name);
                return NormalOp::identity(cfg).scaled(ParamScalar::variable(cfg->n, id));
            } else
                return lowerSum(p, cfg);
        },
        f.prim);
}

NormalOp lowerSum(const CustomExprAst::Sum& s, const ConfigPtr& cfg) {
    NormalOp out = NormalOp::zero(cfg);
    for (const auto& [sign, t] : s.terms) {
        NormalOp prod = NormalOp::identity(cfg);
        for (const auto& f : t.factors) {
            NormalOp p = lowerPrimary(f, cfg);
            if (f.power != 1) p = p.pow(f.power);
            prod = prod * p;
        }
        out = sign < 0 ? out - prod : out + prod;
    }
    return out;
}

} // namespace

CustomExprAst parseOperatorExpr(const std::string& src, const ConfigPtr& cfg) {
    Parser p(src, cfg);
    CustomExprAst ast;
    ast.root = p.parseSum();
    if (!p.lex.eof()) throw ParseError("trailing input", p.lex.pos);
    return ast;
}

std::string render(const CustomExprAst& ast) {
    Renderer r;
    r.sum(ast.root, false);
    return r.os.str();
}

NormalOp lower(const CustomExprAst& ast, const ConfigPtr& cfg) { return lowerSum(ast.root, cfg); }

bool astEqual(const CustomExprAst& a, const CustomExprAst& b) { return render(a) == render(b); }

} // namespace dunkl

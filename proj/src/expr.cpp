#include "diracspace/expr.hpp"

#include <bit>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace diracspace {

namespace {

enum class Tok { num, var, dx, Dx, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int index = 0;  // zero-based axis for var, dx, Dx
    int line = 1;
    int col = 1;
};

std::vector<Token> tokenize(const std::string& s, int line0 = 1) {
    std::vector<Token> out;
    int line = line0, col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto read_index = [&](Token& t) {
        if (i < s.size() && s[i] == '{') {
            size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i + 1 || j >= s.size() || s[j] != '}') throw ParseError("malformed variable index", line, col);
            t.index = std::stoi(s.substr(i + 1, j - i - 1)) - 1;
            advance(j + 1 - i);
        } else if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            t.index = s[i] - '0' - 1;
            advance(1);
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("indices above 9 are written x{10}", line, col);
        } else {
            throw ParseError("expected a variable index", line, col);
        }
    };
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        if (ch == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::end, "", 0, line, col};
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::num;
            t.text = s.substr(i, j - i);
            advance(j - i);
        } else if (ch == 'x') {
            t.kind = Tok::var;
            advance(1);
            read_index(t);
        } else if ((ch == 'd' || ch == 'D') && i + 1 < s.size() && s[i + 1] == 'x') {
            t.kind = ch == 'd' ? Tok::dx : Tok::Dx;
            advance(2);
            read_index(t);
        } else {
            switch (ch) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '/': t.kind = Tok::slash; break;
            case '^': t.kind = Tok::caret; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            default: throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
            }
            advance(1);
        }
        if (t.kind == Tok::var || t.kind == Tok::dx || t.kind == Tok::Dx) {
            if (t.index < 0) throw ParseError("variable indices start at 1", t.line, t.col);
        }
        out.push_back(t);
    }
    out.push_back(Token{Tok::end, "", 0, line, col});
    return out;
}

// kind 0: scalar, 1: form, 2: multivector
struct Shape {
    int kind;
    int degree;
    auto operator<=>(const Shape&) const = default;
};

// Sum of coefficient * basis element; shapes remember what was written even when it cancels.
struct Mixed {
    std::map<std::pair<int, Mask>, Poly> comps;
    std::set<Shape> shapes;

    bool scalar_only() const {
        for (const auto& s : shapes)
            if (s.kind != 0) return false;
        return true;
    }
};

class Parser {
public:
    Parser(std::vector<Token> toks, int n, std::vector<std::string>& warnings)
        : toks_(std::move(toks)), n_(n), warnings_(warnings) {}

    Mixed parse_all() {
        Mixed m = expr();
        if (peek().kind != Tok::end) fail("unexpected token");
        return m;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

    void add_into(Mixed& a, const Mixed& b, const Rat& s) {
        for (const auto& [k, f] : b.comps) {
            auto it = a.comps.find(k);
            if (it == a.comps.end()) {
                a.comps.emplace(k, f * s);
            } else {
                it->second += f * s;
                if (it->second.is_zero()) a.comps.erase(it);
            }
        }
        a.shapes.insert(b.shapes.begin(), b.shapes.end());
    }

    Mixed expr() {
        Mixed acc;
        Rat sign = 1;
        bool first = true;
        while (true) {
            if (peek().kind == Tok::plus || peek().kind == Tok::minus) {
                if (take().kind == Tok::minus) sign = -sign;
                if (peek().kind == Tok::plus || peek().kind == Tok::minus) fail("repeated sign");
            } else if (!first) {
                break;
            }
            Mixed t = product();
            add_into(acc, t, sign);
            first = false;
            sign = 1;
            if (peek().kind != Tok::plus && peek().kind != Tok::minus) break;
        }
        return acc;
    }

    Mixed multiply(const Mixed& a, const Mixed& b, const Token& at, bool scalar_op) {
        if (scalar_op && !a.scalar_only() && !b.scalar_only())
            throw ParseError("'*' needs a scalar factor; use '^' for wedge products", at.line, at.col);
        Mixed out;
        for (const auto& sa : a.shapes)
            for (const auto& sb : b.shapes) {
                if (sa.kind != 0 && sb.kind != 0 && sa.kind != sb.kind)
                    throw ParseError("cannot wedge a form with a multivector", at.line, at.col);
                Shape s{std::max(sa.kind, sb.kind), sa.degree + sb.degree};
                if (s.degree > n_) throw ParseError("degree overflow", at.line, at.col);
                out.shapes.insert(s);
            }
        bool repeated = false;
        for (const auto& [ka, fa] : a.comps)
            for (const auto& [kb, fb] : b.comps) {
                if (ka.second & kb.second) {
                    repeated = true;
                    continue;
                }
                Mask m = ka.second | kb.second;
                int kind = std::max(ka.first, kb.first);
                Poly f = fa * fb * Rat(wedge_sign(ka.second, kb.second));
                auto key = std::make_pair(kind, m);
                auto it = out.comps.find(key);
                if (it == out.comps.end()) {
                    out.comps.emplace(key, f);
                } else {
                    it->second += f;
                    if (it->second.is_zero()) out.comps.erase(it);
                }
            }
        if (repeated) {
            std::ostringstream os;
            os << at.line << ":" << at.col << ": wedge product with a repeated factor vanishes";
            warnings_.push_back(os.str());
        }
        return out;
    }

    Mixed product() {
        Mixed acc = power();
        while (peek().kind == Tok::star || peek().kind == Tok::caret) {
            Token op = take();
            if (op.kind == Tok::caret && peek().kind == Tok::num) throw ParseError("exponent on a power", op.line, op.col);
            Mixed rhs = power();
            acc = multiply(acc, rhs, op, op.kind == Tok::star);
        }
        return acc;
    }

    Mixed power() {
        Mixed base = atom();
        if (peek().kind == Tok::caret && toks_[pos_ + 1].kind == Tok::num) {
            Token op = take();
            Token e = take();
            if (!base.scalar_only()) throw ParseError("exponent on a form or multivector", op.line, op.col);
            long k = std::stol(e.text);
            Mixed r = scalar(Poly(n_, 1));
            for (long j = 0; j < k; ++j) r = multiply(r, base, op, true);
            return r;
        }
        return base;
    }

    Mixed scalar(const Poly& f) {
        Mixed m;
        if (!f.is_zero()) m.comps.emplace(std::make_pair(0, Mask(0)), f);
        m.shapes.insert({0, 0});
        return m;
    }

    Mixed atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::num: {
            Token a = take();
            std::string text = a.text;
            if (peek().kind == Tok::slash) {
                take();
                if (peek().kind != Tok::num) fail("expected a denominator");
                Token b = take();
                if (b.text.find_first_not_of('0') == std::string::npos)
                    throw ParseError("zero denominator", b.line, b.col);
                text += "/" + b.text;
            }
            return scalar(Poly(n_, Rat::parse(text)));
        }
        case Tok::var:
        case Tok::dx:
        case Tok::Dx: {
            Token a = take();
            if (a.index >= n_) {
                std::string name = a.kind == Tok::var ? "x" : a.kind == Tok::dx ? "dx" : "Dx";
                throw ParseError("unknown variable " + name + std::to_string(a.index + 1) + " in dimension " +
                                     std::to_string(n_),
                                 a.line, a.col);
            }
            if (a.kind == Tok::var) return scalar(Poly::variable(n_, a.index));
            Mixed m;
            int kind = a.kind == Tok::dx ? 1 : 2;
            m.comps.emplace(std::make_pair(kind, Mask(1u << a.index)), Poly(n_, 1));
            m.shapes.insert({kind, 1});
            return m;
        }
        case Tok::lparen: {
            take();
            Mixed m = expr();
            if (peek().kind != Tok::rparen) fail("expected ')'");
            take();
            return m;
        }
        case Tok::end: fail("unexpected end of input");
        default: fail("expected a number, variable or parenthesis");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    int n_;
    std::vector<std::string>& warnings_;
};

Expr classify(const Mixed& m, const ParseContext& ctx) {
    int n = ctx.n;
    std::set<int> forms, fields;
    bool has_scalar = false;
    for (const auto& s : m.shapes) {
        if (s.kind == 0) has_scalar = true;
        else if (s.kind == 1) forms.insert(s.degree);
        else fields.insert(s.degree);
    }
    auto at = [](const std::string& msg) { return ParseError(msg, 1, 1); };
    if (forms.empty() && fields.empty()) {
        auto it = m.comps.find({0, 0});
        return it == m.comps.end() ? Poly(n) : it->second;
    }
    if (fields.empty()) {
        if (has_scalar) forms.insert(0);
        if (forms.size() != 1) throw at("sum of forms of different degrees");
        Form a(n, *forms.begin());
        for (const auto& [k, f] : m.comps) a.add(k.second, f);
        return a;
    }
    if (forms.empty() && !has_scalar) {
        if (fields.size() != 1) throw at("sum of multivectors of different degrees");
        int k = *fields.begin();
        if (k == 1) {
            VField X(n);
            for (const auto& [key, f] : m.comps) X[std::countr_zero(key.second)] = f;
            return X;
        }
        MultiVec Y(n, k);
        for (const auto& [key, f] : m.comps) Y.add(key.second, f);
        return Y;
    }
    if (fields != std::set<int>{1}) throw at("sections pair a vector field with a form");
    if (has_scalar) forms.insert(0);
    if (forms.size() != 1) throw at("sum of forms of different degrees");
    int p = *forms.begin();
    if (p < 1) throw at("a section needs a form part of degree at least 1");
    if (ctx.p && *ctx.p != p)
        throw at("degree mismatch: form part has degree " + std::to_string(p) + ", expected " + std::to_string(*ctx.p));
    VField X(n);
    Form a(n, p);
    for (const auto& [key, f] : m.comps) {
        if (key.first == 2) X[std::countr_zero(key.second)] = f;
        else a.add(key.second, f);
    }
    return SectionEp(X, a);
}

bool expr_is_zero(const Expr& e) {
    return std::visit([](const auto& v) { return v.is_zero(); }, e);
}

ParseError kind_error(const std::string& want, const Expr& got) {
    return ParseError("expected " + want + ", got " + expr_kind(got), 1, 1);
}

} // namespace

Parsed parse_expression(const std::string& src, const ParseContext& ctx) {
    if (ctx.n < 1 || ctx.n > kMaxVars) throw ParseError("dimension out of range", 1, 1);
    Parsed out{Poly(ctx.n), {}};
    Parser parser(tokenize(src), ctx.n, out.warnings);
    out.value = classify(parser.parse_all(), ctx);
    return out;
}

namespace {

std::string zero_of(const std::string& prefix, int k) {
    std::string s = "0*";
    for (int i = 1; i <= k; ++i) s += (i > 1 ? "^" : "") + prefix + std::to_string(i);
    return s;
}

} // namespace

// Zeros keep their kind: a zero 2-form prints as 0*dx1^dx2, a section always shows both parts.
std::string print_expression(const Expr& e) {
    if (auto s = std::get_if<SectionEp>(&e)) {
        std::string X = s->X.is_zero() ? zero_of("Dx", 1) : s->X.str();
        std::string a = s->alpha.is_zero() ? zero_of("dx", s->p) : s->alpha.str();
        return a[0] == '-' ? X + " - " + a.substr(1) : X + " + " + a;
    }
    if (!expr_is_zero(e) || e.index() == 0) return std::visit([](const auto& v) { return v.str(); }, e);
    switch (e.index()) {
    case 1: return std::get<Form>(e).degree() == 0 ? "0" : zero_of("dx", std::get<Form>(e).degree());
    case 2: return zero_of("Dx", 1);
    case 3: return std::get<MultiVec>(e).degree() == 0 ? "0" : zero_of("Dx", std::get<MultiVec>(e).degree());
    default: return "0";
    }
}

std::string expr_kind(const Expr& e) {
    switch (e.index()) {
    case 0: return "function";
    case 1: return std::to_string(std::get<Form>(e).degree()) + "-form";
    case 2: return "vector field";
    case 3: return std::to_string(std::get<MultiVec>(e).degree()) + "-vector";
    default: return "section";
    }
}

Poly parse_poly(const std::string& src, int n) {
    Expr e = parse_expression(src, {n, {}}).value;
    if (auto f = std::get_if<Poly>(&e)) return *f;
    if (auto a = std::get_if<Form>(&e); a && a->degree() == 0) return a->is_zero() ? Poly(n) : a->comps().begin()->second;
    throw kind_error("a function", e);
}

Form parse_form(const std::string& src, int n, int degree) {
    Expr e = parse_expression(src, {n, {}}).value;
    if (auto a = std::get_if<Form>(&e)) {
        if (a->degree() == degree) return *a;
        if (a->is_zero()) return Form(n, degree);
    }
    if (auto f = std::get_if<Poly>(&e)) {
        if (degree == 0) return Form::scalar(*f);
        if (f->is_zero()) return Form(n, degree);
    }
    throw kind_error("a " + std::to_string(degree) + "-form", e);
}

VField parse_vfield(const std::string& src, int n) {
    Expr e = parse_expression(src, {n, {}}).value;
    if (auto X = std::get_if<VField>(&e)) return *X;
    if (expr_is_zero(e)) return VField(n);
    throw kind_error("a vector field", e);
}

MultiVec parse_multivec(const std::string& src, int n, int degree) {
    Expr e = parse_expression(src, {n, {}}).value;
    if (auto Y = std::get_if<MultiVec>(&e); Y && Y->degree() == degree) return *Y;
    if (auto X = std::get_if<VField>(&e); X && degree == 1) return MultiVec(*X);
    if (auto f = std::get_if<Poly>(&e); f && degree == 0) {
        MultiVec Y(n, 0);
        if (!f->is_zero()) Y.add(0, *f);
        return Y;
    }
    if (expr_is_zero(e)) return MultiVec(n, degree);
    throw kind_error("a " + std::to_string(degree) + "-vector", e);
}

SectionEp parse_section(const std::string& src, int n, int p) {
    Expr e = parse_expression(src, {n, p}).value;
    if (auto s = std::get_if<SectionEp>(&e)) return *s;
    if (auto X = std::get_if<VField>(&e)) return SectionEp::vector(*X, p);
    if (auto a = std::get_if<Form>(&e)) {
        if (a->degree() == p) return SectionEp::form(*a);
        if (a->is_zero()) return SectionEp::zero(n, p);
    }
    if (auto f = std::get_if<Poly>(&e)) {
        if (p == 0) return SectionEp::form(Form::scalar(*f));
    }
    if (expr_is_zero(e)) return SectionEp::zero(n, p);
    throw kind_error("a section of TM + wedge^" + std::to_string(p) + " T*M", e);
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Entry {
    std::string value;
    int line;
    int col;  // column of the value
};

// Re-anchors a parse error inside a value to its position in the file.
template <class F>
auto at_entry(const Entry& e, F&& f) -> decltype(f(e.value)) {
    try {
        return f(e.value);
    } catch (const ParseError& err) {
        std::string msg = err.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw ParseError(msg, e.line + err.line - 1, err.line == 1 ? e.col + err.column - 1 : err.column);
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), e.line, e.col);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

} // namespace

Presentation parse_presentation(const std::string& text) {
    std::map<std::string, Entry> kv;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    const std::set<std::string> known{"kind", "dim", "p", "omega", "pi", "f", "Omega", "frame", "axes"};
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        if (trim(s).empty()) continue;
        size_t colon = s.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", line, 1);
        std::string key = trim(s.substr(0, colon));
        if (!known.count(key)) throw ParseError("unknown key '" + key + "'", line, 1);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line, 1);
        size_t vstart = s.find_first_not_of(" \t", colon + 1);
        if (vstart == std::string::npos) throw ParseError("missing value for '" + key + "'", line, int(colon) + 2);
        kv[key] = Entry{trim(s.substr(vstart)), line, int(vstart) + 1};
    }
    auto need = [&](const std::string& k) -> const Entry& {
        auto it = kv.find(k);
        if (it == kv.end()) throw ParseError("missing key '" + k + "'", line + 1, 1);
        return it->second;
    };
    auto integer = [](const std::string& v) {
        size_t used = 0;
        int out = 0;
        try {
            out = std::stoi(v, &used);
        } catch (const std::exception&) {
            throw ParseError("expected an integer", 1, 1);
        }
        if (used != v.size()) throw ParseError("expected an integer", 1, int(used) + 1);
        return out;
    };
    int n = at_entry(need("dim"), integer);
    if (n < 1 || n > kMaxVars) throw ParseError("dimension out of range", need("dim").line, need("dim").col);
    std::string kind = need("kind").value;
    auto form_of = [&](const Entry& e) {
        return at_entry(e, [&](const std::string& v) {
            Expr x = parse_expression(v, {n, {}}).value;
            if (auto a = std::get_if<Form>(&x)) return *a;
            throw kind_error("a form", x);
        });
    };
    std::optional<Presentation> P;
    try {
        if (kind == "graph-form") {
            P.emplace(GraphForm{form_of(need("omega"))});
        } else if (kind == "graph-multivector") {
            MultiVec pi = at_entry(need("pi"), [&](const std::string& v) {
                Expr x = parse_expression(v, {n, {}}).value;
                if (auto Y = std::get_if<MultiVec>(&x)) return *Y;
                throw kind_error("a multivector", x);
            });
            P.emplace(GraphMultivector{pi});
        } else if (kind == "regular") {
            Regular r;
            auto fit = kv.find("frame");
            if (fit == kv.end() || fit->second.value == "identity") {
                for (int i = 0; i < n; ++i) {
                    RatVec v(n, Rat(0));
                    v[i] = 1;
                    r.frame.push_back(v);
                }
            } else {
                r.frame = at_entry(fit->second, [&](const std::string& v) {
                    std::vector<RatVec> rows;
                    for (const auto& row : split(v, ';')) {
                        RatVec vec;
                        std::istringstream rs(row);
                        std::string w;
                        while (rs >> w) vec.push_back(Rat::parse(w));
                        if (static_cast<int>(vec.size()) != n) throw ParseError("frame rows must have dim entries", 1, 1);
                        rows.push_back(vec);
                    }
                    return rows;
                });
            }
            if (auto ait = kv.find("axes"); ait != kv.end()) {
                r.axes = at_entry(ait->second, [&](const std::string& v) {
                    std::vector<int> axes;
                    std::istringstream as(v);
                    std::string w;
                    while (as >> w) axes.push_back(integer(w) - 1);
                    return axes;
                });
            }
            r.omega = form_of(need("omega"));
            P.emplace(r);
        } else if (kind == "scaled-top") {
            Poly f = at_entry(need("f"), [&](const std::string& v) { return parse_poly(v, n); });
            P.emplace(ScaledTop{f, form_of(need("Omega"))});
        } else {
            const Entry& e = need("kind");
            throw ParseError("unknown kind '" + kind + "'", e.line, e.col);
        }
    } catch (const PresentationError& err) {
        throw ParseError(err.what(), need("kind").line, 1);
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), need("kind").line, 1);
    }
    if (auto pit = kv.find("p"); pit != kv.end()) {
        int p = at_entry(pit->second, integer);
        if (p != P->p()) throw ParseError("p is " + std::to_string(P->p()) + " for this presentation", pit->second.line, pit->second.col);
    }
    return *P;
}

} // namespace diracspace

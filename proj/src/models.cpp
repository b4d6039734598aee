#include "blflux/models.hpp"

#include "blflux/error.hpp"
#include "blflux/format.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace blflux::models {

struct Node {
    NodeKind kind;
    double number = 0.0;
    std::vector<ModelExpr> operands;
    std::vector<bool> negated;  // sum terms only

    static ModelExpr make(Node n) {
        return ModelExpr(std::make_shared<const Node>(std::move(n)));
    }
};

namespace {

// Printing precedence: a child printed in a slot requiring `min` is wrapped
// in parentheses when its own level is lower.
enum Level { level_sum = 1, level_term = 2, level_power = 3, level_atom = 4 };

int level_of(const ModelExpr& e) {
    switch (e.kind()) {
        case NodeKind::sum: return level_sum;
        case NodeKind::product:
        case NodeKind::quotient: return level_term;
        case NodeKind::power: return e.number() < 0.0 ? level_term : level_power;
        case NodeKind::constant: return e.number() < 0.0 ? level_sum : level_atom;
        case NodeKind::variable:
        case NodeKind::exponential: return level_atom;
    }
    return level_atom;
}

void print(std::ostream& os, const ModelExpr& e, int min_level);

void print_child(std::ostream& os, const ModelExpr& e, int min_level) {
    if (level_of(e) < min_level) {
        os << '(';
        print(os, e, level_sum);
        os << ')';
    } else {
        print(os, e, min_level);
    }
}

void print(std::ostream& os, const ModelExpr& e, int /*min_level*/) {
    const auto kids = e.children();
    switch (e.kind()) {
        case NodeKind::constant:
            os << format_double(e.number());
            break;
        case NodeKind::variable:
            os << 's';
            break;
        case NodeKind::sum:
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (i == 0) {
                    if (e.negated(0)) os << '-';
                } else {
                    os << (e.negated(i) ? " - " : " + ");
                }
                print_child(os, kids[i], level_term);
            }
            break;
        case NodeKind::product:
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (i > 0) os << " * ";
                // Only the leading factor may be an unparenthesized quotient:
                // "a / b * c" reads back as product(quotient(a, b), c).
                const bool leading_quotient = i == 0 && kids[i].kind() == NodeKind::quotient;
                print_child(os, kids[i], leading_quotient ? level_term : level_power);
            }
            break;
        case NodeKind::quotient: {
            const bool chain = kids[0].kind() == NodeKind::product ||
                               kids[0].kind() == NodeKind::quotient;
            print_child(os, kids[0], chain ? level_term : level_power);
            os << " / ";
            print_child(os, kids[1], level_power);
            break;
        }
        case NodeKind::power:
            if (e.number() < 0.0) {
                os << "1 / ";
                print_child(os, kids[0], level_atom);
                os << '^' << format_double(-e.number());
            } else {
                print_child(os, kids[0], level_atom);
                os << '^' << format_double(e.number());
            }
            break;
        case NodeKind::exponential:
            os << "exp(";
            print(os, kids[0], level_sum);
            os << ')';
            break;
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

}  // namespace

ModelExpr::ModelExpr() : ModelExpr(constant(0.0)) {}

ModelExpr ModelExpr::constant(double c) {
    return Node::make({NodeKind::constant, c, {}, {}});
}

ModelExpr ModelExpr::variable() { return Node::make({NodeKind::variable, 0.0, {}, {}}); }

ModelExpr ModelExpr::sum(std::vector<Term> terms) {
    Node n{NodeKind::sum, 0.0, {}, {}};
    for (auto& t : terms) {
        n.operands.push_back(std::move(t.expr));
        n.negated.push_back(t.negated);
    }
    return Node::make(std::move(n));
}

ModelExpr ModelExpr::product(std::vector<ModelExpr> factors) {
    return Node::make({NodeKind::product, 0.0, std::move(factors), {}});
}

ModelExpr ModelExpr::quotient(ModelExpr numerator, ModelExpr denominator) {
    return Node::make(
        {NodeKind::quotient, 0.0, {std::move(numerator), std::move(denominator)}, {}});
}

ModelExpr ModelExpr::power(ModelExpr base, double exponent) {
    if (!std::isfinite(exponent)) throw ParameterError("power exponent must be finite");
    return Node::make({NodeKind::power, exponent, {std::move(base)}, {}});
}

ModelExpr ModelExpr::exponential(ModelExpr argument) {
    return Node::make({NodeKind::exponential, 0.0, {std::move(argument)}, {}});
}

NodeKind ModelExpr::kind() const noexcept { return node_->kind; }

double ModelExpr::number() const noexcept { return node_->number; }

std::vector<ModelExpr> ModelExpr::children() const { return node_->operands; }

bool ModelExpr::negated(std::size_t i) const {
    return i < node_->negated.size() && node_->negated[i];
}

Jet3 ModelExpr::eval(const Jet3& arg) const {
    const Node& n = *node_;
    switch (n.kind) {
        case NodeKind::constant:
            return Jet3::constant(n.number);
        case NodeKind::variable:
            return arg;
        case NodeKind::sum: {
            Jet3 acc;
            for (std::size_t i = 0; i < n.operands.size(); ++i) {
                const Jet3 t = n.operands[i].eval(arg);
                acc = n.negated[i] ? acc - t : acc + t;
            }
            return acc;
        }
        case NodeKind::product: {
            Jet3 acc = Jet3::constant(1.0);
            for (const auto& f : n.operands) acc = acc * f.eval(arg);
            return acc;
        }
        case NodeKind::quotient:
            return div(n.operands[0].eval(arg), n.operands[1].eval(arg));
        case NodeKind::power:
            return pow_const(n.operands[0].eval(arg), n.number);
        case NodeKind::exponential:
            return exp_jet(n.operands[0].eval(arg));
    }
    return {};
}

Jet3 ModelExpr::eval_at(double s) const {
    try {
        return eval(seed(s));
    } catch (const DomainError& e) {
        if (e.has_point()) throw;
        throw DomainError(std::string(e.what()) + " (s = " + format_double(s) + ")", s);
    }
}

JetFunction ModelExpr::as_function() const {
    return [expr = *this](const Jet3& s) { return expr.eval(s); };
}

std::string ModelExpr::to_string() const {
    std::ostringstream os;
    print(os, *this, level_sum);
    return os.str();
}

bool ModelExpr::operator==(const ModelExpr& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    return a.kind == b.kind && a.number == b.number && a.negated == b.negated &&
           a.operands == b.operands;
}

ModelExpr product(const ModelExpr& m1, const ModelExpr& m2) {
    return ModelExpr::product({m1, m2});
}

// --- Presets --------------------------------------------------------------

namespace {

using E = ModelExpr;

E s() { return E::variable(); }
E num(double c) { return E::constant(c); }

// 1 - (1 - s)^alpha
E complement_power(double alpha) {
    const E one_minus_s = E::sum({{false, num(1)}, {true, s()}});
    return E::sum({{false, num(1)}, {true, E::power(one_minus_s, alpha)}});
}

E scaled(double A, E e) { return A == 1.0 ? e : E::product({num(A), std::move(e)}); }

}  // namespace

ModelExpr power(double A, double a) {
    require(std::isfinite(A) && A > 0.0, "power: A must be > 0");
    require(std::isfinite(a) && a > 1.0, "power: a must be > 1");
    return scaled(A, E::power(s(), a));
}

ModelExpr corey_a() { return E::power(s(), 4); }

ModelExpr corey_b() { return E::product({E::power(s(), 2), complement_power(2)}); }

ModelExpr brooks_b(double eta, double alpha) {
    require(std::isfinite(eta) && eta >= 1.0, "brooks_b: eta must be >= 1");
    require(std::isfinite(alpha) && alpha > 1.0, "brooks_b: alpha must be > 1");
    return E::product({E::power(s(), eta), complement_power(alpha)});
}

ModelExpr brooks_corey_a(double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "brooks_corey_a: lambda must be > 0");
    return E::power(s(), (2.0 + 3.0 * lambda) / lambda);
}

ModelExpr brooks_corey_b(double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "brooks_corey_b: lambda must be > 0");
    return brooks_b(2.0, (2.0 + lambda) / lambda);
}

ModelExpr chen_a(double eta, double lambda) {
    require(std::isfinite(eta) && eta >= 1.0, "chen_a: eta must be >= 1");
    require(std::isfinite(lambda) && lambda > 0.0, "chen_a: lambda must be > 0");
    return E::power(s(), eta + (2.0 + lambda) / lambda);
}

ModelExpr chen_b(double eta, double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "chen_b: lambda must be > 0");
    return brooks_b(eta, (2.0 + lambda) / lambda);
}

ModelExpr chierici(double A, double B, double M) {
    require(std::isfinite(A) && A > 0.0, "chierici: A must be > 0");
    require(std::isfinite(B) && B > 0.0, "chierici: B must be > 0");
    require(std::isfinite(M) && M > 0.0, "chierici: M must be > 0");
    const E one_minus_s = E::sum({{false, num(1)}, {true, s()}});
    const E ratio = E::power(E::quotient(one_minus_s, s()), M);
    const E exponent = E::sum({{true, E::product({num(B), ratio})}});
    return scaled(A, E::exponential(exponent));
}

ModelExpr counterexample_exp() {
    return E::product({E::power(s(), 1.1), E::exponential(E::power(s(), 10))});
}

ModelExpr counterexample_poly10() {
    return E::product({E::power(s(), 1.1),
                       E::sum({{false, num(1)}, {false, E::product({num(15), E::power(s(), 10)})}})});
}

ModelExpr counterexample_poly30() {
    return E::product({E::power(s(), 1.1),
                       E::sum({{false, num(1)}, {false, E::product({num(15), E::power(s(), 30)})}})});
}

namespace {

struct PresetEntry {
    std::string_view name;
    std::vector<std::string_view> params;
    std::function<ModelExpr(const std::vector<double>&)> build;
};

const std::vector<PresetEntry>& preset_table() {
    static const std::vector<PresetEntry> table = {
        {"power", {"A", "a"}, [](const auto& p) { return power(p[0], p[1]); }},
        {"corey_a", {}, [](const auto&) { return corey_a(); }},
        {"corey_b", {}, [](const auto&) { return corey_b(); }},
        {"brooks_b", {"eta", "alpha"}, [](const auto& p) { return brooks_b(p[0], p[1]); }},
        {"brooks_corey_a", {"lambda"}, [](const auto& p) { return brooks_corey_a(p[0]); }},
        {"brooks_corey_b", {"lambda"}, [](const auto& p) { return brooks_corey_b(p[0]); }},
        {"chen_a", {"eta", "lambda"}, [](const auto& p) { return chen_a(p[0], p[1]); }},
        {"chen_b", {"eta", "lambda"}, [](const auto& p) { return chen_b(p[0], p[1]); }},
        {"chierici", {"A", "B", "M"}, [](const auto& p) { return chierici(p[0], p[1], p[2]); }},
        {"counterexample_exp", {}, [](const auto&) { return counterexample_exp(); }},
        {"counterexample_poly10", {}, [](const auto&) { return counterexample_poly10(); }},
        {"counterexample_poly30", {}, [](const auto&) { return counterexample_poly30(); }},
    };
    return table;
}

}  // namespace

ModelExpr preset(std::string_view name, const Params& params) {
    for (const auto& entry : preset_table()) {
        if (entry.name != name) continue;
        std::vector<double> values;
        for (auto key : entry.params) {
            auto it = params.find(std::string(key));
            if (it == params.end()) {
                throw ParameterError(std::string(name) + ": missing parameter '" +
                                     std::string(key) + "'");
            }
            values.push_back(it->second);
        }
        if (params.size() != values.size()) {
            throw ParameterError(std::string(name) + ": unexpected parameter");
        }
        return entry.build(values);
    }
    throw ParameterError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& entry : preset_table()) names.emplace_back(entry.name);
    return names;
}

}  // namespace blflux::models

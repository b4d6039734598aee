#pragma once

#include "blflux/jet.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blflux::models {

enum class NodeKind { constant, variable, sum, product, quotient, power, exponential };

struct Node;

/// Immutable expression tree for a mobility function m(s). Copies share
/// structure.
class ModelExpr {
public:
    struct Term;

    /// The constant 0.
    ModelExpr();

    static ModelExpr constant(double c);
    static ModelExpr variable();
    static ModelExpr sum(std::vector<Term> terms);
    static ModelExpr product(std::vector<ModelExpr> factors);
    static ModelExpr quotient(ModelExpr numerator, ModelExpr denominator);
    static ModelExpr power(ModelExpr base, double exponent);
    static ModelExpr exponential(ModelExpr argument);

    NodeKind kind() const noexcept;

    /// Constant value or power exponent; 0 for other kinds.
    double number() const noexcept;

    /// Operands in order: sum terms (signs via `negated`), product factors,
    /// quotient numerator then denominator, power base, exp argument.
    std::vector<ModelExpr> children() const;

    /// For sum nodes: whether the i-th term is subtracted.
    bool negated(std::size_t i) const;

    /// Jet of m(u(s)) where `arg` is the jet of u. Throws DomainError.
    Jet3 eval(const Jet3& arg) const;

    /// Jet of m at s. DomainErrors carry `s` as their point.
    Jet3 eval_at(double s) const;

    double value(double s) const { return eval_at(s).f0; }

    JetFunction as_function() const;

    /// Canonical text: minimal parentheses, parses back to the same tree.
    std::string to_string() const;

    /// Structural equality (same node kinds, numbers and operand order).
    bool operator==(const ModelExpr& other) const;

private:
    explicit ModelExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;

    friend struct Node;
};

struct ModelExpr::Term {
    bool negated = false;
    ModelExpr expr;
};

ModelExpr product(const ModelExpr& m1, const ModelExpr& m2);

/// Two-phase mobility pair. m_b is a function of its own phase's
/// saturation; the flux module evaluates it at 1 - s.
struct ModelPair {
    ModelExpr m_a;
    ModelExpr m_b;

    bool symmetric() const { return m_a.to_string() == m_b.to_string(); }
};

// --- Parsing --------------------------------------------------------------

/// Parses the expression grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' number)?
///   base   := number | 's' | '(' expr ')' | 'exp' '(' expr ')'
/// Throws ParseError.
ModelExpr parse(std::string_view text);

/// Contents of a model spec file (`m_a = ...`, `m_b = ...`, '#' comments).
struct ModelSpec {
    std::optional<ModelExpr> m_a;
    std::optional<ModelExpr> m_b;
};

/// Throws ParseError; positions are offsets into `text`.
ModelSpec parse_spec(std::string_view text);

// --- Presets --------------------------------------------------------------

/// A * s^a, A > 0, a > 1.
ModelExpr power(double A, double a);

/// Corey's water mobility s^4.
ModelExpr corey_a();

/// Corey's oil mobility s^2 (1 - (1 - s)^2), as a function of its own
/// phase saturation.
ModelExpr corey_b();

/// s^eta (1 - (1 - s)^alpha), eta >= 1, alpha > 1.
ModelExpr brooks_b(double eta, double alpha);

/// Brooks-Corey water mobility s^((2 + 3 lambda) / lambda), lambda > 0.
ModelExpr brooks_corey_a(double lambda);

/// Brooks-Corey oil mobility: brooks_b(2, (2 + lambda) / lambda).
ModelExpr brooks_corey_b(double lambda);

/// Chen et al.: s^(eta + (2 + lambda) / lambda).
ModelExpr chen_a(double eta, double lambda);

/// Chen et al.: brooks_b(eta, (2 + lambda) / lambda).
ModelExpr chen_b(double eta, double lambda);

/// Chierici wetting-phase law A exp(-B ((1 - s) / s)^M); A, B, M > 0.
ModelExpr chierici(double A, double B, double M);

/// s^1.1 exp(s^10)
ModelExpr counterexample_exp();
/// s^1.1 (1 + 15 s^10)
ModelExpr counterexample_poly10();
/// s^1.1 (1 + 15 s^30)
ModelExpr counterexample_poly30();

using Params = std::map<std::string, double>;

/// Preset by name ("power", "corey_a", "corey_b", "brooks_b",
/// "brooks_corey_a", "brooks_corey_b", "chen_a", "chen_b", "chierici",
/// "counterexample_exp", "counterexample_poly10", "counterexample_poly30").
/// Throws ParameterError for unknown names, missing or invalid parameters.
ModelExpr preset(std::string_view name, const Params& params = {});

/// Names accepted by `preset`.
std::vector<std::string> preset_names();

}  // namespace blflux::models

#pragma once

// Shared helpers for the unit and acceptance suites.

#include "blflux/jet.hpp"
#include "blflux/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace blflux::testing {

inline bool rel_close(double a, double b, double rel, double scale = 0.0) {
    const double s = std::max({std::abs(a), std::abs(b), scale});
    return std::abs(a - b) <= rel * s;
}

/// Componentwise closeness relative to the larger jet's largest component.
inline bool jet_close(const Jet3& a, const Jet3& b, double rel) {
    double scale = 0.0;
    for (int k = 0; k < 4; ++k) scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
    for (int k = 0; k < 4; ++k) {
        if (std::abs(a[k] - b[k]) > rel * scale) return false;
    }
    return true;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }
    Jet3 jet(double lo = -2.0, double hi = 2.0) {
        return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    }

private:
    std::mt19937_64 engine_;
};

struct NamedModel {
    std::string name;
    models::ModelExpr expr;
};

/// Every preset over a spread of parameters, the counterexamples, and a few
/// products.
inline std::vector<NamedModel> catalog() {
    using namespace models;
    std::vector<NamedModel> out;
    for (double A : {0.5, 1.0, 3.0}) {
        for (double a : {1.1, 1.5, 2.0, 3.0, 4.0, 8.0}) {
            out.push_back({"power(" + std::to_string(A) + "," + std::to_string(a) + ")", power(A, a)});
        }
    }
    out.push_back({"corey_a", corey_a()});
    out.push_back({"corey_b", corey_b()});
    for (double eta : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        for (double alpha : {1.5, 2.0, 2.5, 3.0, 5.0}) {
            out.push_back({"brooks_b(" + std::to_string(eta) + "," + std::to_string(alpha) + ")",
                           brooks_b(eta, alpha)});
        }
    }
    for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
        out.push_back({"brooks_corey_a(" + std::to_string(lambda) + ")", brooks_corey_a(lambda)});
        out.push_back({"brooks_corey_b(" + std::to_string(lambda) + ")", brooks_corey_b(lambda)});
        out.push_back({"chen_a(3," + std::to_string(lambda) + ")", chen_a(3.0, lambda)});
        out.push_back({"chen_b(3," + std::to_string(lambda) + ")", chen_b(3.0, lambda)});
    }
    for (double B : {1.0, 2.5, 3.0, 5.0, 10.0}) {
        out.push_back({"chierici(1," + std::to_string(B) + ",1)", chierici(1.0, B, 1.0)});
    }
    out.push_back({"chierici(2,3,2)", chierici(2.0, 3.0, 2.0)});
    out.push_back({"chierici(1,3,0.5)", chierici(1.0, 3.0, 0.5)});
    out.push_back({"counterexample_exp", counterexample_exp()});
    out.push_back({"counterexample_poly10", counterexample_poly10()});
    out.push_back({"counterexample_poly30", counterexample_poly30()});
    out.push_back({"power*brooks_b", product(power(1.0, 2.0), brooks_b(2.0, 3.0))});
    out.push_back({"chierici*power", product(chierici(1.0, 3.0, 1.0), power(2.0, 1.5))});
    return out;
}

/// Random preset from families known to lie in class M: powers a in (1, 8],
/// Brooks-Corey oil mobilities with alpha, eta in [2, 5], Chierici with
/// M = 1 and B in (2, 10], and products of two of these.
inline NamedModel random_member(Rng& rng, bool allow_products = true) {
    using namespace models;
    const int family = rng.index(allow_products ? 4 : 3);
    switch (family) {
        case 0: {
            const double A = rng.uniform(0.1, 10.0);
            const double a = rng.uniform(1.01, 8.0);
            return {"power(" + std::to_string(A) + "," + std::to_string(a) + ")", power(A, a)};
        }
        case 1: {
            const double eta = rng.uniform(2.0, 5.0);
            const double alpha = rng.uniform(2.0, 5.0);
            return {"brooks_b(" + std::to_string(eta) + "," + std::to_string(alpha) + ")",
                    brooks_b(eta, alpha)};
        }
        case 2: {
            const double A = rng.uniform(0.5, 3.0);
            const double B = rng.uniform(2.05, 10.0);
            return {"chierici(" + std::to_string(A) + "," + std::to_string(B) + ",1)",
                    chierici(A, B, 1.0)};
        }
        default: {
            const NamedModel a = random_member(rng, false);
            const NamedModel b = random_member(rng, false);
            return {a.name + "*" + b.name, product(a.expr, b.expr)};
        }
    }
}

/// Random preset over the full documented parameter domains, members of
/// class M or not.
inline NamedModel random_preset(Rng& rng) {
    using namespace models;
    switch (rng.index(7)) {
        case 0: {
            const double A = rng.uniform(0.1, 10.0);
            const double a = rng.uniform(1.01, 8.0);
            return {"power(" + std::to_string(A) + "," + std::to_string(a) + ")", power(A, a)};
        }
        case 1: {
            const double eta = rng.uniform(1.0, 5.0);
            const double alpha = rng.uniform(1.05, 5.0);
            return {"brooks_b(" + std::to_string(eta) + "," + std::to_string(alpha) + ")",
                    brooks_b(eta, alpha)};
        }
        case 2: {
            const double lambda = rng.uniform(0.2, 5.0);
            return {"brooks_corey_a(" + std::to_string(lambda) + ")", brooks_corey_a(lambda)};
        }
        case 3: {
            const double lambda = rng.uniform(0.2, 5.0);
            return {"brooks_corey_b(" + std::to_string(lambda) + ")", brooks_corey_b(lambda)};
        }
        case 4: {
            const double eta = rng.uniform(1.0, 4.0);
            const double lambda = rng.uniform(0.2, 5.0);
            return {"chen_a(" + std::to_string(eta) + "," + std::to_string(lambda) + ")",
                    chen_a(eta, lambda)};
        }
        case 5: {
            const double eta = rng.uniform(1.0, 4.0);
            const double lambda = rng.uniform(0.2, 5.0);
            return {"chen_b(" + std::to_string(eta) + "," + std::to_string(lambda) + ")",
                    chen_b(eta, lambda)};
        }
        default: {
            const double B = rng.uniform(0.5, 10.0);
            const double M = rng.uniform(0.3, 3.0);
            return {"chierici(1," + std::to_string(B) + "," + std::to_string(M) + ")",
                    chierici(1.0, B, M)};
        }
    }
}

}  // namespace blflux::testing

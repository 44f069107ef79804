#include "tcmc/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace tcmc {

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return ScalarFunction(Kind::polynomial, std::move(coeffs));
}

ScalarFunction ScalarFunction::exp_polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return ScalarFunction(Kind::exp_polynomial, std::move(coeffs));
}

double ScalarFunction::operator()(double x) const {
    double p = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * x + *it;
    return kind_ == Kind::polynomial ? p : std::exp(p);
}

ScalarFunction ScalarFunction::antiderivative() const {
    if (kind_ != Kind::polynomial) {
        throw std::invalid_argument(
            "ScalarFunction::antiderivative: no closed form for exp-polynomials");
    }
    std::vector<double> c(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        c[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    }
    return polynomial(std::move(c));
}

bool ScalarFunction::is_identically_zero() const {
    if (kind_ != Kind::polynomial) return false;
    for (double c : coeffs_) {
        if (c != 0.0) return false;
    }
    return true;
}

Mat2 PotentialPair::eta1(double x) const {
    for (const auto& [k, c] : xi1(x)) {
        if (k == 1) return c;
    }
    return Mat2::zero();
}

Mat2 PotentialPair::eta2(double y) const {
    for (const auto& [k, c] : xi2(y)) {
        if (k == -1) return c;
    }
    return Mat2::zero();
}

namespace {

double positive_value(const ScalarFunction& fn, double x, const char* label) {
    const double v = fn(x);
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string("potential: ") + label + "(" +
                                    std::to_string(x) + ") = " + std::to_string(v) +
                                    " is not strictly positive");
    }
    return v;
}

} // namespace

PotentialPair normalized_potentials(double H, ScalarFunction Q, ScalarFunction R,
                                    ScalarFunction f, ScalarFunction g) {
    if (H == 0.0) {
        throw std::invalid_argument(
            "normalized_potentials: H must be nonzero (the Sym formula divides by H)");
    }
    positive_value(f, 0.0, "f");
    positive_value(g, 0.0, "g");
    PotentialPair p;
    p.H = H;
    p.xi1 = [H, Q, f](double x) -> LoopTerms {
        const double fv = positive_value(f, x, "f");
        return {{1, Mat2{0.0, -(H / 2.0) * fv, Q(x) / fv, 0.0}}};
    };
    p.xi2 = [H, R, g](double y) -> LoopTerms {
        const double gv = positive_value(g, y, "g");
        return {{-1, Mat2{0.0, -R(y) / gv, (H / 2.0) * gv, 0.0}}};
    };
    return p;
}

PotentialPair bscroll_potentials(double H, ScalarFunction R, ScalarFunction f,
                                 ScalarFunction g) {
    PotentialPair p = normalized_potentials(H, ScalarFunction::constant(0.0),
                                            std::move(R), std::move(f), std::move(g));
    p.name = "bscroll";
    return p;
}

PotentialPair dalembert_potentials(double H, int epsilon, ScalarFunction f,
                                   ScalarFunction g) {
    if (epsilon != -1 && epsilon != 0 && epsilon != 1) {
        throw std::invalid_argument("dalembert_potentials: epsilon must be -1, 0 or +1");
    }
    PotentialPair p = normalized_potentials(
        H, ScalarFunction::constant(H / 2.0),
        ScalarFunction::constant(static_cast<double>(epsilon) * H / 2.0),
        std::move(f), std::move(g));
    p.name = epsilon > 0 ? "dalembert_sinh" : (epsilon == 0 ? "dalembert_liouville"
                                                            : "dalembert_cosh");
    return p;
}

const std::vector<std::string>& builtin_potential_names() {
    static const std::vector<std::string> names = {
        "hyperbolic_cylinder", "circular_cylinder", "pseudosphere", "bscroll_example"};
    return names;
}

PotentialPair builtin_potential(const std::string& name) {
    const auto one = ScalarFunction::constant(1.0);
    if (name == "hyperbolic_cylinder") {
        PotentialPair p = normalized_potentials(0.5, ScalarFunction::constant(-0.25),
                                                ScalarFunction::constant(-0.25), one, one);
        p.name = name;
        return p;
    }
    if (name == "circular_cylinder") {
        PotentialPair p = normalized_potentials(0.5, ScalarFunction::constant(0.25),
                                                ScalarFunction::constant(0.25), one, one);
        p.name = name;
        return p;
    }
    if (name == "pseudosphere") {
        PotentialPair p = normalized_potentials(0.5, ScalarFunction::constant(0.0),
                                                ScalarFunction::constant(0.0), one, one);
        p.name = name;
        return p;
    }
    if (name == "bscroll_example") {
        // B-scroll over the null Frenet curve with constant torsion 1:
        // H = 1, Q = 0, R(y) = y - 1/2, f(x) = 2(x+1)^{-2}, g(y) = 2(1-y)^{-2}.
        // f and g are rational, so the coefficient functions are built
        // directly rather than through ScalarFunction. Singular at x = -1
        // and y = 1; choose grids that avoid those lines.
        const double H = 1.0;
        PotentialPair p;
        p.H = H;
        p.name = name;
        p.xi1 = [](double x) -> LoopTerms {
            const double d = x + 1.0;
            if (d == 0.0) {
                throw std::invalid_argument("bscroll_example: xi1 singular at x = -1");
            }
            return {{1, Mat2{0.0, -1.0 / (d * d), 0.0, 0.0}}};
        };
        p.xi2 = [H](double y) -> LoopTerms {
            const double d = 1.0 - y;
            if (d == 0.0) {
                throw std::invalid_argument("bscroll_example: xi2 singular at y = 1");
            }
            const double R = H * (y - 0.5);
            return {{-1, Mat2{0.0, -R * H * d * d / 2.0, 1.0 / (d * d), 0.0}}};
        };
        return p;
    }
    std::string msg = "unknown builtin potential \"" + name + "\"; valid names:";
    for (const auto& n : builtin_potential_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

namespace {

using nlohmann::json;

ScalarFunction scalar_from_json(const json& j, const std::string& key) {
    if (!j.is_object() || j.size() != 1) {
        throw std::invalid_argument("potential key \"" + key +
                                    "\" must be {\"poly\": [...]} or {\"exp_poly\": [...]}");
    }
    const auto it = j.begin();
    if (!it.value().is_array()) {
        throw std::invalid_argument("potential key \"" + key + "\": coefficient list expected");
    }
    std::vector<double> c;
    for (const auto& v : it.value()) c.push_back(v.get<double>());
    if (it.key() == "poly") return ScalarFunction::polynomial(std::move(c));
    if (it.key() == "exp_poly") return ScalarFunction::exp_polynomial(std::move(c));
    throw std::invalid_argument("potential key \"" + key + "\": unknown form \"" +
                                it.key() + "\"");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) {
            if (it.key() == a) { ok = true; break; }
        }
        if (!ok) {
            throw std::invalid_argument("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

} // namespace

PotentialPair potential_from_json_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("potential spec: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind")) {
        throw std::invalid_argument("potential spec: object with a \"kind\" key expected");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") {
        reject_unknown_keys(j, {"kind", "name"}, "builtin potential spec");
        return builtin_potential(j.at("name").get<std::string>());
    }
    const auto scalar_or = [&](const char* key, double dflt) {
        return j.contains(key) ? scalar_from_json(j.at(key), key)
                               : ScalarFunction::constant(dflt);
    };
    if (kind == "normalized") {
        reject_unknown_keys(j, {"kind", "H", "Q", "R", "f", "g"}, "normalized potential spec");
        return normalized_potentials(j.at("H").get<double>(), scalar_or("Q", 0.0),
                                     scalar_or("R", 0.0), scalar_or("f", 1.0),
                                     scalar_or("g", 1.0));
    }
    if (kind == "bscroll") {
        reject_unknown_keys(j, {"kind", "H", "R", "f", "g"}, "bscroll potential spec");
        return bscroll_potentials(j.at("H").get<double>(), scalar_or("R", 0.0),
                                  scalar_or("f", 1.0), scalar_or("g", 1.0));
    }
    if (kind == "dalembert") {
        reject_unknown_keys(j, {"kind", "H", "epsilon", "f", "g"}, "dalembert potential spec");
        return dalembert_potentials(j.at("H").get<double>(), j.at("epsilon").get<int>(),
                                    scalar_or("f", 1.0), scalar_or("g", 1.0));
    }
    throw std::invalid_argument("potential spec: unknown kind \"" + kind + "\"");
}

} // namespace tcmc

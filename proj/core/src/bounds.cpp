#include "rainbow/bounds.hpp"

#include <sstream>

#include "rainbow/instance.hpp"

namespace rainbow {

BigInt binomial_big(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

namespace {

BigInt pow_big(const BigInt& b, std::size_t e) {
    BigInt p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= b;
    return p;
}

BoundEntry entry(std::string name, std::string target, BigInt value, std::string formula) {
    return {std::move(name), std::move(target), std::move(value), std::move(formula)};
}

BigInt simple_F_count(std::size_t r, std::size_t t) {
    if (r % 2 == 0) return binomial_big((t * r - 2) / 2, r - 1) * pow_big(2, r - 1);
    return binomial_big((t * (r - 1) - 2) / 2, r - 2) * pow_big(2, r - 2);
}

BigInt simple_f_count(std::size_t r, std::size_t t) {
    const std::size_t odd = r % 2 == 1 ? r : r - 1;
    return pow_big(BigInt(t * (t - 1)), (odd - 1) / 2);
}

} // namespace

BoundsReport bounds_report(std::size_t r, std::size_t t) {
    if (r < 2 || t < 2) throw DomainError("bounds: requires r >= 2 and t >= 2");
    BoundsReport rep;
    rep.r = r;
    rep.t = t;

    rep.lower.push_back(entry("simple-F", "F", simple_F_count(r, t),
                              r % 2 == 0 ? "C((tr-2)/2, r-1) * 2^(r-1)" : "C((t(r-1)-2)/2, r-2) * 2^(r-2)"));
    if (r >= 3)
        rep.lower.push_back(entry("simple-f", "f", simple_f_count(r, t),
                                  r % 2 == 1 ? "(t(t-1))^((r-1)/2)" : "(t(t-1))^((r-2)/2)"));
    if (r >= 3 && t >= 2 * r)
        rep.lower.push_back(entry("fixed-r", "f", pow_big(BigInt(t / r - 1), r), "(floor(t/r)-1)^r"));
    if (t == 2) {
        rep.lower.push_back(entry("t2-complete", "F", binomial_big(2 * r, r) / 2, "C(2r, r)/2"));
        rep.lower.push_back(entry("t2-partite", "f", pow_big(2, r - 1), "2^(r-1)"));
    }
    if (r == 2) {
        rep.exact_f = BigInt(2 * t - 2);
        rep.lower.push_back(entry("exact-f(2,t)", "f", *rep.exact_f, "2t-2"));
    }

    // Partite families are also general families, so every entry bounds F.
    rep.best_lower_F = entry("none", "F", 0, "");
    rep.best_lower_f = entry("none", "f", 0, "");
    for (const auto& e : rep.lower) {
        if (e.value > rep.best_lower_F.value) rep.best_lower_F = e;
        if (e.target == "f" && e.value > rep.best_lower_f.value) rep.best_lower_f = e;
    }

    rep.upper_F = entry("exterior-power", "F", BigInt(t - 1) * binomial_big(t * r, r), "(t-1) * C(tr, r)");
    rep.upper_f = entry("partite-exterior-power", "f", BigInt(t - 1) * pow_big(BigInt(t), r), "(t-1) * t^r");
    rep.threshold = entry("spread-threshold", "F", pow_big(BigInt(t * r + t), r), "(tr+t)^r");

    rep.C_r = pow_big(BigInt(r + 1), r);
    rep.c_r = BigRational(BigInt(1), pow_big(BigInt(3 * r), r));
    rep.asymptotic_lower = rep.c_r * BigRational(pow_big(BigInt(t), r));
    rep.asymptotic_upper = rep.C_r * pow_big(BigInt(t), r);
    return rep;
}

namespace {

nlohmann::ordered_json entry_json(const BoundEntry& e) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["target"] = e.target;
    j["value"] = e.value.str();
    j["formula"] = e.formula;
    return j;
}

} // namespace

nlohmann::ordered_json to_json(const BoundsReport& rep) {
    nlohmann::ordered_json j;
    j["r"] = rep.r;
    j["t"] = rep.t;
    j["lower"] = nlohmann::ordered_json::array();
    for (const auto& e : rep.lower) j["lower"].push_back(entry_json(e));
    j["best_lower_F"] = entry_json(rep.best_lower_F);
    j["best_lower_f"] = entry_json(rep.best_lower_f);
    j["upper_F"] = entry_json(rep.upper_F);
    j["upper_f"] = entry_json(rep.upper_f);
    j["threshold"] = entry_json(rep.threshold);
    j["C_r"] = rep.C_r.str();
    j["c_r"] = to_string(rep.c_r);
    j["asymptotic_lower"] = to_string(rep.asymptotic_lower);
    j["asymptotic_upper"] = rep.asymptotic_upper.str();
    if (rep.exact_f) j["exact_f"] = rep.exact_f->str();
    return j;
}

std::string format_table(const BoundsReport& rep) {
    std::ostringstream os;
    os << "bounds for r=" << rep.r << " t=" << rep.t << "\n";
    auto row = [&](const std::string& label, const BoundEntry& e) {
        os << "  " << label << "  " << e.value.str() << "  [" << e.name;
        if (!e.formula.empty()) os << ": " << e.formula;
        os << "]\n";
    };
    os << "lower bounds:\n";
    for (const auto& e : rep.lower) row(e.target + " >=", e);
    row("best F >=", rep.best_lower_F);
    row("best f >=", rep.best_lower_f);
    os << "upper bounds:\n";
    row("F <=", rep.upper_F);
    row("f <=", rep.upper_f);
    row("F <", rep.threshold);
    os << "constants:\n";
    os << "  C_r = " << rep.C_r.str() << "\n";
    os << "  c_r = " << to_string(rep.c_r) << "\n";
    os << "  c_r t^r = " << to_string(rep.asymptotic_lower) << "\n";
    os << "  C_r t^r = " << rep.asymptotic_upper.str() << "\n";
    if (rep.exact_f) os << "exact:\n  f(2," << rep.t << ") = " << rep.exact_f->str() << "\n";
    return os.str();
}

} // namespace rainbow

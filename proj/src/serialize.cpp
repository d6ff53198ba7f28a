#include "qbargain/serialize.hpp"

#include <charconv>
#include <cmath>

namespace qbargain::io {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw SpecError(std::string("missing field '") + key + "'", std::string::npos);
    const auto& v = j.at(key);
    if (!v.is_number()) throw SpecError(std::string("field '") + key + "' must be a number", std::string::npos);
    return v.get<double>();
}

std::vector<double> numbers(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw SpecError(std::string("field '") + key + "' must be an array of numbers", std::string::npos);
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number())
            throw SpecError(std::string("field '") + key + "' must be an array of numbers", std::string::npos);
        out.push_back(v.get<double>());
    }
    return out;
}

// Non-finite doubles become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SpecError("complex number must be [re, im] or a real number", std::string::npos);
}

}  // namespace

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte counts the characters read, so the offending one sits at e.byte - 1.
        const std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
        throw SpecError("JSON syntax error at byte offset " + std::to_string(pos) + ": " + e.what(), pos);
    }
}

LogPriceDistribution distribution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw SpecError("distribution spec must be an object with a string 'type'", std::string::npos);
    const auto type = j.at("type").get<std::string>();
    try {
        LogPriceDistribution d;
        if (type == "dirac") {
            d = Dirac{number(j, "a")};
        } else if (type == "gaussian") {
            d = Gaussian{number(j, "mean"), number(j, "sigma")};
        } else if (type == "grid") {
            d = GridDensity{numbers(j, "points"), numbers(j, "density")};
        } else {
            throw SpecError("unknown distribution type '" + type + "'", std::string::npos);
        }
        validate(d);
        return d;
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what(), std::string::npos);
    }
}

LogPriceDistribution parse_distribution(std::string_view text) { return distribution_from_json(parse_document(text)); }

json to_json(const LogPriceDistribution& d) {
    if (const auto* p = std::get_if<Dirac>(&d)) return {{"type", "dirac"}, {"a", p->location}};
    if (const auto* g = std::get_if<Gaussian>(&d)) return {{"type", "gaussian"}, {"mean", g->mean}, {"sigma", g->sigma}};
    const auto& g = std::get<GridDensity>(d);
    return {{"type", "grid"}, {"points", g.points()}, {"density", g.density()}};
}

QubitState state_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SpecError("qubit state must be a pair of complex numbers", std::string::npos);
    try {
        return {complex_from_json(j[0]), complex_from_json(j[1])};
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what(), std::string::npos);
    }
}

json to_json(const QubitState& s) {
    return json::array({json::array({s.xi0().real(), s.xi0().imag()}), json::array({s.xi1().real(), s.xi1().imag()})});
}

json to_json(const mc::SimReport& r) {
    const auto& se = r.standard_errors;
    const auto& c = r.config;
    return {
        {"config",
         {{"alice", to_json(c.pair.alice)},
          {"bob", to_json(c.pair.bob)},
          {"p10", c.p10},
          {"rounds", c.rounds},
          {"seed", c.seed},
          {"theta", c.theta}}},
        {"defined", r.defined},
        {"deals", r.deals},
        {"deals_10", r.deals_10},
        {"deals_01", r.deals_01},
        {"acceptance_freq", num(r.acceptance_freq)},
        {"mean_waiting_rounds", num(r.mean_waiting_rounds)},
        {"var_waiting_rounds", num(r.var_waiting_rounds)},
        {"empirical_expected_tau", num(r.empirical_expected_tau)},
        {"mean_log_price_10", num(r.mean_log_price_10)},
        {"mean_log_price_01", num(r.mean_log_price_01)},
        {"empirical_rho", num(r.empirical_rho)},
        {"share_10", num(r.share_10)},
        {"standard_errors",
         {{"acceptance_freq", num(se.acceptance_freq)},
          {"mean_waiting_rounds", num(se.mean_waiting_rounds)},
          {"var_waiting_rounds", num(se.var_waiting_rounds)},
          {"empirical_expected_tau", num(se.empirical_expected_tau)},
          {"mean_log_price_10", num(se.mean_log_price_10)},
          {"mean_log_price_01", num(se.mean_log_price_01)},
          {"empirical_rho", num(se.empirical_rho)},
          {"share_10", num(se.share_10)}}},
    };
}

json to_json(const std::vector<mc::Deviation>& table) {
    json out = json::array();
    for (const auto& d : table)
        out.push_back({{"statistic", d.statistic},
                       {"empirical", num(d.empirical)},
                       {"analytic", num(d.analytic)},
                       {"std_error", num(d.std_error)},
                       {"z", num(d.z)}});
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

}  // namespace qbargain::io

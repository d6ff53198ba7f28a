#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qbargain/mcsim.hpp"
#include "qbargain/polarization.hpp"
#include "qbargain/pricing.hpp"

// JSON shapes shared by the CLI and external tooling.
//
// Distribution spec (tagged record):
//   {"type":"dirac","a":0.85}
//   {"type":"gaussian","mean":0,"sigma":1}
//   {"type":"grid","points":[...],"density":[...]}
// Complex number: [re, im]. Qubit state: [[re, im], [re, im]].

namespace qbargain::io {

// Malformed input. `position` is the byte offset of a syntax error, or
// std::string::npos for a well-formed document with the wrong shape.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

nlohmann::json parse_document(std::string_view text);

LogPriceDistribution distribution_from_json(const nlohmann::json& j);
LogPriceDistribution parse_distribution(std::string_view text);
nlohmann::json to_json(const LogPriceDistribution& d);

QubitState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QubitState& s);

nlohmann::json to_json(const mc::SimReport& r);
nlohmann::json to_json(const std::vector<mc::Deviation>& table);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace qbargain::io

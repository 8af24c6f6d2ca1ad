#pragma once

#include <string>
#include <variant>

// vendored single-header nlohmann/json
#include <json.hpp>

#include "bbk/tnbft.hpp"

namespace bbk {

using Json = nlohmann::json;

Json toJson(const GradedVectorSpace& v);
Json toJson(const GradedMap& f);
Json toJson(const CochainComplex& c);
Json toJson(const CyclicLInfinity& alg);
Json toJson(const BulkBoundarySystem& sys);
Json toJson(const Cohomology& h);
Json toJson(const Poly& p);      // coefficient array of rational strings
Json toJson(const PolyForm& w);

/// Parse error with a location path into the offending field.
struct ParseError {
  std::string location;
  std::string message;
  std::string str() const { return location + ": " + message; }
};

std::variant<BulkBoundarySystem, ParseError> systemFromJson(const Json& j);

/// Validates a descriptor against the schema rules without building it.
std::optional<ParseError> validateSystemJson(const Json& j);

/// The machine-readable descriptor schema.
Json systemSchema();

}  // namespace bbk

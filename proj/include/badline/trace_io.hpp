#pragma once

// JSON encoding shared by traces, witness reports and game transcripts.
// Integers are decimal strings, rationals {"num": str, "den": str}; key order
// is fixed so equal values always dump to equal bytes.

#include <json.hpp>

#include <string>

#include "badline/construction.hpp"

namespace badline {

using Json = nlohmann::ordered_json;

namespace json_io {

Json of(const Int& v);
Json of(const Rational& r);
Json of(const IVec3& v);
Json of(const QVec3& v);
Json of(const QVec2& v);
Json of(const OmegaFn& omega);

// Decoders throw ParseError on any shape or value problem.
Int to_int(const Json& j);
Rational to_rational(const Json& j);
IVec3 to_ivec3(const Json& j);
QVec3 to_qvec3(const Json& j);
QVec2 to_qvec2(const Json& j);
OmegaFn to_omega(const Json& j);

}  // namespace json_io

Json trace_to_json(const Trace& trace);

/// Rebuilds a trace and replays its exact invariants. Throws ParseError for
/// malformed input or any replay violation.
Trace trace_from_json(const Json& j);

void save_json(const std::string& path, const Json& j);
Json load_json(const std::string& path);

}  // namespace badline

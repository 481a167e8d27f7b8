#pragma once

#include <string>

#include "json.hpp"

#include "ipsw/booloracle.hpp"
#include "ipsw/circuit.hpp"
#include "ipsw/dims.hpp"
#include "ipsw/instances.hpp"
#include "ipsw/ipscert.hpp"
#include "ipsw/roabp.hpp"

namespace ipsw {

using Json = nlohmann::json;

// Inverse of Poly::str(). Accepts "0" for the zero polynomial.
Poly parse_poly(const FieldCtx* ctx, const std::string& text);

Json instance_json(const Instance& inst);
Instance instance_load(const Json& j);

Json circuit_json(const AlgCircuit& c);
AlgCircuit circuit_load(const Json& j);

Json cert_json(const IpsCert& cert, const FieldCtx* ctx);
IpsCert cert_load(const Json& j);

Json roabp_json(const RoAbp& A);
RoAbp roabp_load(const Json& j);

Json verify_report_json(const VerifyReport& r);
Json oracle_report_json(const OracleReport& r);
Json rank_report_json(const RankReport& r);

// canonical dump: two-space indent, keys sorted, trailing newline
std::string pretty(const Json& j);

}  // namespace ipsw

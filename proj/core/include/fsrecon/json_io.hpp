#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fsrecon/cyclotomic.hpp"
#include "fsrecon/equidistribution.hpp"
#include "fsrecon/fs.hpp"
#include "fsrecon/group.hpp"
#include "fsrecon/homomorphism.hpp"
#include "fsrecon/int_function.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/oracle.hpp"
#include "fsrecon/radon.hpp"
#include "fsrecon/vmodule.hpp"

namespace fsrecon::json {

using Json = nlohmann::ordered_json;

// Readers throw Error{InvalidInput} on malformed documents. Integer values may
// be given as JSON numbers or decimal strings; writers use decimal strings for
// multiplicities and function values.

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const GroupElement& g);
GroupElement element_from_json(const GroupSpec& group, const Json& j);

/// {"group": ..., "entries": [[element, "value"], ...]}
Json to_json(const IntFunction& f);
IntFunction int_function_from_json(const Json& j);
/// Same as int_function_from_json, but a missing "group" falls back to the given one.
IntFunction int_function_from_json(const Json& j, const GroupSpec& fallback);

Json to_json(const FSMultiset& s);
FSMultiset fs_multiset_from_json(const Json& j);

Json to_json(const Move& m);
Json to_json(const MoveCertificate& c);
MoveCertificate certificate_from_json(const GroupSpec& group, const Json& j);

/// {"source": G1, "target": G2, "images": [[...], ...]}
Json to_json(const Homomorphism& h);
Homomorphism homomorphism_from_json(const Json& j);

Json to_json(const USet& u);
Json to_json(const VWitness& w);
Json to_json(const VMembershipReport& r);
Json to_json(const RankReport& r);
Json to_json(const CertificateReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const CycInt& c);
Json to_json(const FourierClaim& c);
Json to_json(const EquidistributionReport& r);
Json to_json(const FiberScanReport& r, bool include_timing = true);

/// {"n": n, "r": r, "values": [[[psi...], c, value], ...]} listing every (psi, c).
Json to_json(const RadonData& d);
RadonData radon_from_json(const Json& j);

/// Parses text, or throws Error{InvalidInput} with the parser's message.
Json parse(const std::string& text);
Json read_file(const std::string& path);

}  // namespace fsrecon::json

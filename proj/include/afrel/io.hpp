#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/harmonic_vector.hpp"
#include "afrel/markov.hpp"
#include "afrel/matrix.hpp"
#include "afrel/normalize.hpp"
#include "afrel/transfer.hpp"

namespace afrel::io {

using Json = nlohmann::json;

// Parse errors and schema violations throw InvalidInput naming the field.
Json read_file(const std::filesystem::path& path);

// {"levels": L, "vertices": [[id...]...], "edges": [[{"id","source","range","label"?}...]...]}
BratteliDiagram diagram_from_json(const Json& j);
Json to_json(const BratteliDiagram& d);

// {"group": "R" | {"Zk": k}, "values": {"<edge id>@<level>": number | [int...]}}
Labelling labelling_from_json(const Json& j);
Json to_json(const Labelling& f);

// {"mu0": {"<vertex id>": p}, "p": {"<edge id>@<level>": p}}, plain probabilities.
MarkovMeasure markov_from_json(const BratteliDiagram& d, const Json& j);
Json to_json(const MarkovMeasure& m);

// {"d": d, "matrix": [[...]]}; also used for SFTs.
Matrix matrix_from_json(const Json& j);
Sft sft_from_json(const Json& j);
Json to_json(const Matrix& m);

// {"range": k, "values": {"<word>": number}} or {"constant": c}.
Potential potential_from_json(const Json& j, int alphabet);
Json to_json(const Potential& phi, int alphabet);

// {"range": k, "values": {"<edge id>,<edge id>,...": number | [int...]}}
CoboundaryData coboundary_from_json(const Json& j);

// {"sets": [sizes], "maps": [[image...]...], "bprime": [[value...]...]?,
// "group"?}. Integer bprime values default to Z, arrays to Z^k, other
// numbers to R.
QuotientChain chain_from_json(const Json& j);
bool has_cocycle_data(const Json& j);
FinitelyValuedCocycleData cocycle_data_from_json(const Json& j);
Json to_json(const Tower& t);

// {"rho": [{"<vertex id>": value}...], "log_rho": [...]}
Json to_json(const HarmonicVector& rho);

// Vertex -> positive value map, keys are vertex ids.
std::map<int, double> vertex_map_from_json(const Json& j);

Group group_from_json(const Json& j);
Json to_json(const Group& g);
GroupElement element_from_json(const Json& j, const Group& g);
Json to_json(const GroupElement& x);

// "3,1,4" -> {3, 1, 4}
std::vector<int> parse_int_list(const std::string& text);
FinitePath parse_path(const std::string& text);
Json to_json(const FinitePath& p);

}  // namespace afrel::io

#pragma once

#include <map>
#include <string>
#include <vector>

#include "groom/designkit.hpp"
#include "groom/model.hpp"

namespace groom {

// Request for one constructed decomposition. `optimize_wavelengths` selects
// wavelength-minimal output (MON) over merely cost-minimal output (ON); both
// modes always achieve the optimal drop cost.
struct BuildRequest {
  ProblemInstance instance;
  bool optimize_wavelengths = true;
  unsigned seed = 0;
};

// Per-point pendant plan against a triple system: for each point i, the set
// D_i of column indices j whose cross edge {a_j, i} should be hung off a
// triple headed by i. An optional explicit triple choice can accompany each
// entry; otherwise triples headed by i are consumed in index order.
struct HeadAssignment {
  std::map<Vertex, std::vector<int>> columns;        // i -> D_i, each j in [0, w)
  std::map<Vertex, std::vector<int>> triple_choice;  // optional, parallel to columns[i]
};

// Builders for each per-wavelength cap. Preconditions: instance.valid(),
// n >= 5 (and w >= 1 for build_c3); violations throw std::invalid_argument.
// Construction failures inside a sub-primitive throw std::runtime_error
// naming that sub-primitive.
Decomposition build_c1(const BuildRequest& req);
Decomposition build_c2(const BuildRequest& req);
Decomposition build_c3(const BuildRequest& req);

// Dispatch on req.instance.cprime.
Decomposition build(const BuildRequest& req);

// Turns selected triples of `ts` into kites by attaching, for every point i
// and column j in assignment.columns[i], the pendant cross edge {a_j, i}
// (a_j = ts.points + j) to a distinct triple headed by i. Unselected triples
// stay triangles. The result is partial: it covers only the triples' edges
// plus the consumed cross edges. Throws if some |D_i| exceeds the headset
// occurrence count of i, a column index falls outside [0, w), or an explicit
// triple choice is not headed by i.
std::vector<Block> general_prescription(const TripleSystem& ts, const Headset& hs,
                                        const HeadAssignment& assignment, int w);

// Named decompositions printed in the sources, loaded from the data
// directory and re-verified by tests against `FixtureInfo` metadata.
struct FixtureInfo {
  std::string name;
  Decomposition decomposition;
  long long cost = 0;
  long long wavecost = 0;
  long long triangles = 0;
  std::string note;  // transcription caveats, if any
};

std::vector<std::string> fixture_names();
const FixtureInfo& fixture(const std::string& name);

}  // namespace groom

#pragma once
// Core data model for two-period ring groomings: instances, blocks, shape and
// edge classification, verification, costs, and JSON round-tripping.
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace groom {

using Vertex = int;

// Undirected edge, normalized so a < b.
struct Edge {
  Vertex a = 0, b = 0;
  Edge() = default;
  Edge(Vertex x, Vertex y) : a(x < y ? x : y), b(x < y ? y : x) {}
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Block shapes. A block is the subgraph its edge set spans. Only connected
// subgraphs on <= 4 edges are nameable; anything else is Other.
enum class Shape { Edge, P3, P4, Triangle, FourCycle, Kite, Other };
const char* shape_name(Shape s);

struct Block {
  std::vector<Edge> edges;  // sorted, duplicates preserved (verify flags them)

  Block() = default;
  explicit Block(std::vector<Edge> es);

  // Named constructors; argument order encodes the structure.
  static Block single(Vertex a, Vertex b);
  static Block path3(Vertex a, Vertex b, Vertex c);              // a-b-c
  static Block path4(Vertex a, Vertex b, Vertex c, Vertex d);    // a-b-c-d
  static Block triangle(Vertex a, Vertex b, Vertex c);
  static Block cycle4(Vertex a, Vertex b, Vertex c, Vertex d);   // a-b-c-d-a
  static Block kite(Vertex a, Vertex b, Vertex c, Vertex p);     // tri(a,b,c)+{c,p}

  Shape shape() const;
  std::vector<Vertex> vertices() const;  // sorted, unique
  bool contains_vertex(Vertex v) const;
};

// One wavelength carries up to C=4 edges split into vertex-disjoint blocks.
struct Wavelength {
  std::vector<Block> blocks;
};

struct ProblemInstance {
  int n = 0;       // total nodes; vertices 0..n-1
  int v = 0;       // first-period nodes 0..v-1
  int cprime = 1;  // second-period per-wavelength cap on V-internal edges
  static constexpr int capacity = 4;  // C

  int w() const { return n - v; }
  bool in_v(Vertex x) const { return x >= 0 && x < v; }
  bool valid() const { return n >= 0 && v >= 0 && v <= n && cprime >= 1 && cprime <= 4; }
};

struct Decomposition {
  ProblemInstance instance;
  std::vector<Wavelength> wavelengths;
};

// Classification of a single edge relative to (instance, enclosing block).
enum class EdgeClass { Neutral, Positive, Cross, WithinW };
const char* edge_class_name(EdgeClass c);
EdgeClass classify_edge(const ProblemInstance& pi, const Edge& e, const Block& enclosing);

enum class ViolationKind {
  InstanceInvalid,
  EmptyBlock,
  LoopEdge,
  VertexOutOfRange,
  BlockTooManyEdges,
  BlockDisconnected,
  BlocksShareVertex,
  WavelengthOverCapacity,
  VInternalOverLimit,
  DuplicateEdge,
  MissingEdge,
};
const char* violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct VerificationReport {
  bool valid = false;
  std::vector<Violation> violations;
  long long drop_cost = 0;      // sum over blocks of |V(B)|
  long long wavecost = 0;       // number of wavelengths
  long long triangle_count = 0; // blocks of Shape::Triangle
  long long neutral_edges = 0;
  long long positive_edges = 0;
  long long cross_edges = 0;
  long long within_w_edges = 0;
  std::string summary() const;
};

// Full structural check. Never throws: every defect is reported as a
// violation, including an invalid instance.
VerificationReport verify(const Decomposition& d);

long long drop_cost(const Decomposition& d);
long long count_triangles(const Decomposition& d);

// Sorts edges in blocks, blocks in wavelengths, wavelengths lexicographically.
void canonicalize(Decomposition& d);

nlohmann::json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j);

// Convenience: wrap each block in its own wavelength.
Decomposition make_decomposition(int n, int v, int cprime, const std::vector<Block>& blocks);

}  // namespace groom

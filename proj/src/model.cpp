#include "groom/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace groom {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Edge: return "EDGE";
    case Shape::P3: return "P3";
    case Shape::P4: return "P4";
    case Shape::Triangle: return "TRIANGLE";
    case Shape::FourCycle: return "FOURCYCLE";
    case Shape::Kite: return "KITE";
    case Shape::Other: return "OTHER";
  }
  return "?";
}

const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Neutral: return "NEUTRAL";
    case EdgeClass::Positive: return "POSITIVE";
    case EdgeClass::Cross: return "CROSS";
    case EdgeClass::WithinW: return "WITHIN_W";
  }
  return "?";
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::InstanceInvalid: return "INSTANCE_INVALID";
    case ViolationKind::EmptyBlock: return "EMPTY_BLOCK";
    case ViolationKind::LoopEdge: return "LOOP_EDGE";
    case ViolationKind::VertexOutOfRange: return "VERTEX_OUT_OF_RANGE";
    case ViolationKind::BlockTooManyEdges: return "BLOCK_TOO_MANY_EDGES";
    case ViolationKind::BlockDisconnected: return "BLOCK_DISCONNECTED";
    case ViolationKind::BlocksShareVertex: return "BLOCKS_SHARE_VERTEX";
    case ViolationKind::WavelengthOverCapacity: return "WAVELENGTH_OVER_CAPACITY";
    case ViolationKind::VInternalOverLimit: return "V_INTERNAL_OVER_LIMIT";
    case ViolationKind::DuplicateEdge: return "DUPLICATE_EDGE";
    case ViolationKind::MissingEdge: return "MISSING_EDGE";
  }
  return "?";
}

Block::Block(std::vector<Edge> es) : edges(std::move(es)) {
  std::sort(edges.begin(), edges.end());
}

Block Block::single(Vertex a, Vertex b) { return Block({{a, b}}); }
Block Block::path3(Vertex a, Vertex b, Vertex c) { return Block({{a, b}, {b, c}}); }
Block Block::path4(Vertex a, Vertex b, Vertex c, Vertex d) {
  return Block({{a, b}, {b, c}, {c, d}});
}
Block Block::triangle(Vertex a, Vertex b, Vertex c) {
  return Block({{a, b}, {a, c}, {b, c}});
}
Block Block::cycle4(Vertex a, Vertex b, Vertex c, Vertex d) {
  return Block({{a, b}, {b, c}, {c, d}, {d, a}});
}
Block Block::kite(Vertex a, Vertex b, Vertex c, Vertex p) {
  return Block({{a, b}, {a, c}, {b, c}, {c, p}});
}

std::vector<Vertex> Block::vertices() const {
  std::vector<Vertex> vs;
  vs.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    vs.push_back(e.a);
    vs.push_back(e.b);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Block::contains_vertex(Vertex v) const {
  for (const Edge& e : edges)
    if (e.a == v || e.b == v) return true;
  return false;
}

namespace {

bool block_connected(const Block& b, const std::vector<Vertex>& vs) {
  if (vs.empty()) return false;
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : b.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::set<Vertex> seen;
  std::vector<Vertex> stack{vs[0]};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (Vertex y : adj[x]) stack.push_back(y);
  }
  return seen.size() == vs.size();
}

}  // namespace

Shape Block::shape() const {
  const size_t m = edges.size();
  if (m == 0 || m > 4) return Shape::Other;
  // Reject loops / duplicate edges up front.
  std::set<Edge> uniq;
  for (const Edge& e : edges) {
    if (e.a == e.b) return Shape::Other;
    if (!uniq.insert(e).second) return Shape::Other;
  }
  std::vector<Vertex> vs = vertices();
  if (!block_connected(*this, vs)) return Shape::Other;
  std::map<Vertex, int> deg;
  for (const Edge& e : edges) {
    deg[e.a]++;
    deg[e.b]++;
  }
  int maxdeg = 0;
  for (auto& [v, d] : deg) maxdeg = std::max(maxdeg, d);
  const size_t nv = vs.size();
  if (m == 1) return Shape::Edge;
  if (m == 2) return nv == 3 ? Shape::P3 : Shape::Other;
  if (m == 3) {
    if (nv == 3) return Shape::Triangle;
    if (nv == 4 && maxdeg == 2) return Shape::P4;
    return Shape::Other;  // K_{1,3}
  }
  // m == 4
  if (nv == 4 && maxdeg == 2) return Shape::FourCycle;
  if (nv == 4 && maxdeg == 3) {
    // triangle plus pendant: exactly one vertex of degree 3, one of degree 1
    int d1 = 0, d3 = 0;
    for (auto& [v, d] : deg) {
      if (d == 1) d1++;
      if (d == 3) d3++;
    }
    if (d1 == 1 && d3 == 1) return Shape::Kite;
  }
  return Shape::Other;
}

EdgeClass classify_edge(const ProblemInstance& pi, const Edge& e, const Block& enclosing) {
  const bool av = pi.in_v(e.a), bv = pi.in_v(e.b);
  if (!av && !bv) return EdgeClass::WithinW;
  if (av != bv) return EdgeClass::Cross;
  Shape s = enclosing.shape();
  if (s == Shape::Triangle || s == Shape::FourCycle || s == Shape::Kite)
    return EdgeClass::Neutral;
  return EdgeClass::Positive;
}

long long drop_cost(const Decomposition& d) {
  long long c = 0;
  for (const auto& wl : d.wavelengths)
    for (const auto& b : wl.blocks) c += (long long)b.vertices().size();
  return c;
}

long long count_triangles(const Decomposition& d) {
  long long t = 0;
  for (const auto& wl : d.wavelengths)
    for (const auto& b : wl.blocks)
      if (b.shape() == Shape::Triangle) t++;
  return t;
}

namespace {

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "{" << e.a << "," << e.b << "}";
  return os.str();
}

}  // namespace

VerificationReport verify(const Decomposition& d) {
  VerificationReport r;
  const ProblemInstance& pi = d.instance;
  auto flag = [&](ViolationKind k, std::string detail) {
    r.violations.push_back({k, std::move(detail)});
  };

  if (!pi.valid()) {
    std::ostringstream os;
    os << "n=" << pi.n << " v=" << pi.v << " cprime=" << pi.cprime;
    flag(ViolationKind::InstanceInvalid, os.str());
  }

  std::map<Edge, int> coverage;
  r.wavecost = (long long)d.wavelengths.size();

  for (size_t wi = 0; wi < d.wavelengths.size(); ++wi) {
    const Wavelength& wl = d.wavelengths[wi];
    int wl_edges = 0, wl_vinternal = 0;
    std::map<Vertex, int> owner;  // vertex -> block index within wavelength
    for (size_t bi = 0; bi < wl.blocks.size(); ++bi) {
      const Block& b = wl.blocks[bi];
      std::ostringstream where;
      where << "wavelength " << wi << " block " << bi;
      if (b.edges.empty()) {
        flag(ViolationKind::EmptyBlock, where.str());
        continue;
      }
      if (b.edges.size() > (size_t)ProblemInstance::capacity)
        flag(ViolationKind::BlockTooManyEdges, where.str() + ": " + std::to_string(b.edges.size()) + " edges");
      std::set<Edge> in_block;
      for (const Edge& e : b.edges) {
        if (e.a == e.b) {
          flag(ViolationKind::LoopEdge, where.str() + ": " + edge_str(e));
          continue;
        }
        if (e.a < 0 || e.b >= pi.n)
          flag(ViolationKind::VertexOutOfRange, where.str() + ": " + edge_str(e));
        if (!in_block.insert(e).second)
          flag(ViolationKind::DuplicateEdge, where.str() + ": " + edge_str(e) + " repeated in block");
        coverage[e]++;
        wl_edges++;
        if (pi.in_v(e.a) && pi.in_v(e.b)) wl_vinternal++;
      }
      std::vector<Vertex> vs = b.vertices();
      if (!b.edges.empty() && !block_connected(b, vs))
        flag(ViolationKind::BlockDisconnected, where.str());
      for (Vertex v : vs) {
        auto [it, fresh] = owner.emplace(v, (int)bi);
        if (!fresh && it->second != (int)bi) {
          std::ostringstream os;
          os << "wavelength " << wi << ": vertex " << v << " in blocks " << it->second << " and " << bi;
          flag(ViolationKind::BlocksShareVertex, os.str());
          // report once per vertex
          it->second = (int)bi;
        }
      }
      r.drop_cost += (long long)vs.size();
      Shape s = b.shape();
      if (s == Shape::Triangle) r.triangle_count++;
      for (const Edge& e : b.edges) {
        if (e.a == e.b) continue;
        switch (classify_edge(pi, e, b)) {
          case EdgeClass::Neutral: r.neutral_edges++; break;
          case EdgeClass::Positive: r.positive_edges++; break;
          case EdgeClass::Cross: r.cross_edges++; break;
          case EdgeClass::WithinW: r.within_w_edges++; break;
        }
      }
    }
    if (wl_edges > ProblemInstance::capacity) {
      std::ostringstream os;
      os << "wavelength " << wi << ": " << wl_edges << " edges";
      flag(ViolationKind::WavelengthOverCapacity, os.str());
    }
    if (pi.valid() && wl_vinternal > pi.cprime) {
      std::ostringstream os;
      os << "wavelength " << wi << ": " << wl_vinternal << " V-internal edges > " << pi.cprime;
      flag(ViolationKind::VInternalOverLimit, os.str());
    }
  }

  if (pi.valid()) {
    for (auto& [e, cnt] : coverage) {
      if (cnt > 1)
        flag(ViolationKind::DuplicateEdge, edge_str(e) + " covered " + std::to_string(cnt) + " times");
    }
    for (Vertex a = 0; a < pi.n; ++a)
      for (Vertex b = a + 1; b < pi.n; ++b)
        if (!coverage.count(Edge(a, b)))
          flag(ViolationKind::MissingEdge, edge_str(Edge(a, b)));
  }

  r.valid = r.violations.empty();
  return r;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (valid ? "VALID" : "INVALID") << " cost=" << drop_cost << " wavelengths=" << wavecost
     << " triangles=" << triangle_count;
  if (!valid) {
    os << " violations=" << violations.size();
    for (size_t i = 0; i < violations.size() && i < 5; ++i)
      os << "\n  " << violation_name(violations[i].kind) << ": " << violations[i].detail;
    if (violations.size() > 5) os << "\n  ...";
  }
  return os.str();
}

void canonicalize(Decomposition& d) {
  for (auto& wl : d.wavelengths) {
    for (auto& b : wl.blocks) std::sort(b.edges.begin(), b.edges.end());
    std::sort(wl.blocks.begin(), wl.blocks.end(),
              [](const Block& x, const Block& y) { return x.edges < y.edges; });
  }
  std::sort(d.wavelengths.begin(), d.wavelengths.end(),
            [](const Wavelength& x, const Wavelength& y) {
              auto key = [](const Wavelength& w) {
                std::vector<Edge> es;
                for (const auto& b : w.blocks) es.insert(es.end(), b.edges.begin(), b.edges.end());
                return es;
              };
              return key(x) < key(y);
            });
}

nlohmann::json to_json(const Decomposition& d) {
  nlohmann::json j;
  j["n"] = d.instance.n;
  j["v"] = d.instance.v;
  j["cprime"] = d.instance.cprime;
  nlohmann::json wls = nlohmann::json::array();
  for (const auto& wl : d.wavelengths) {
    nlohmann::json jb = nlohmann::json::array();
    for (const auto& b : wl.blocks) {
      nlohmann::json je = nlohmann::json::array();
      for (const Edge& e : b.edges) je.push_back({e.a, e.b});
      jb.push_back(std::move(je));
    }
    wls.push_back(std::move(jb));
  }
  j["wavelengths"] = std::move(wls);
  return j;
}

Decomposition decomposition_from_json(const nlohmann::json& j) {
  Decomposition d;
  d.instance.n = j.at("n").get<int>();
  d.instance.v = j.at("v").get<int>();
  d.instance.cprime = j.at("cprime").get<int>();
  for (const auto& jwl : j.at("wavelengths")) {
    Wavelength wl;
    for (const auto& jb : jwl) {
      std::vector<Edge> es;
      for (const auto& je : jb) es.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
      wl.blocks.push_back(Block(std::move(es)));
    }
    d.wavelengths.push_back(std::move(wl));
  }
  return d;
}

Decomposition make_decomposition(int n, int v, int cprime, const std::vector<Block>& blocks) {
  Decomposition d;
  d.instance = {n, v, cprime};
  d.wavelengths.reserve(blocks.size());
  for (const Block& b : blocks) d.wavelengths.push_back(Wavelength{{b}});
  return d;
}

}  // namespace groom

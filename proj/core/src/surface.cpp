#include "hypflow/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hypflow/format.hpp"

namespace hypflow {

int Surface::vertex_degree(int v) const {
  if (v < 0 || v >= n_vertices)
    throw std::out_of_range("vertex index " + std::to_string(v) + " out of range [0, " +
                            std::to_string(n_vertices) + ")");
  return degree[static_cast<size_t>(v)];
}

int Surface::max_degree() const {
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

std::array<double, 3> Surface::face_weights(int f) const {
  const auto& e = face_edges.at(static_cast<size_t>(f));
  return {edges[static_cast<size_t>(e[0])].weight, edges[static_cast<size_t>(e[1])].weight,
          edges[static_cast<size_t>(e[2])].weight};
}

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> toks;
  int line = 1;
  std::string cur;
  bool in_comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      toks.push_back({cur, line});
      cur.clear();
    }
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush();
      in_comment = false;
      ++line;
      continue;
    }
    if (in_comment) continue;
    if (ch == '#') {
      flush();
      in_comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch)))
      flush();
    else
      cur.push_back(ch);
  }
  flush();
  return toks;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : toks_(tokenize(text)) {}

  bool done() const { return pos_ >= toks_.size(); }

  const Token* peek() const { return done() ? nullptr : &toks_[pos_]; }

  Token next(const char* what) {
    if (done()) throw std::runtime_error(std::string("unexpected end of file, expected ") + what);
    return toks_[pos_++];
  }

  void expect_keyword(const char* kw) {
    Token t = next(kw);
    if (t.text != kw)
      throw std::runtime_error("line " + std::to_string(t.line) + ": expected '" + kw +
                               "', got '" + t.text + "'");
  }

  long read_int(const char* what) {
    Token t = next(what);
    char* end = nullptr;
    long v = std::strtol(t.text.c_str(), &end, 10);
    if (end == t.text.c_str() || *end != '\0')
      throw std::runtime_error("line " + std::to_string(t.line) + ": expected integer " + what +
                               ", got '" + t.text + "'");
    return v;
  }

  double read_real(const char* what) {
    Token t = next(what);
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end == t.text.c_str() || *end != '\0')
      throw std::runtime_error("line " + std::to_string(t.line) + ": expected number " + what +
                               ", got '" + t.text + "'");
    return v;
  }

  int last_line() const { return toks_.empty() ? 1 : toks_[std::min(pos_, toks_.size() - 1)].line; }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Endpoints of the edge of face (i,j,k) opposite corner c.
std::pair<int, int> slot_endpoints(const std::array<int, 3>& face, int c) {
  int a = face[static_cast<size_t>((c + 1) % 3)];
  int b = face[static_cast<size_t>((c + 2) % 3)];
  return {std::min(a, b), std::max(a, b)};
}

void derive_edges(Surface& s) {
  const int f_count = s.num_faces();

  // Group corner slots by unordered endpoint pair, in (face, corner) order,
  // then pair consecutive slots within each group. Each pair is one edge.
  std::map<std::pair<int, int>, std::vector<Corner>> groups;
  for (int f = 0; f < f_count; ++f)
    for (int c = 0; c < 3; ++c) groups[slot_endpoints(s.faces[static_cast<size_t>(f)], c)].push_back({f, c});

  s.face_edges.assign(static_cast<size_t>(f_count), {-1, -1, -1});
  for (const auto& [key, slots] : groups) {
    if (slots.size() % 2 != 0)
      throw std::runtime_error("non-closed surface: edge {" + std::to_string(key.first) + ", " +
                               std::to_string(key.second) + "} is incident to " +
                               std::to_string(slots.size()) + " face corners (odd)");
    for (size_t a = 0; a + 1 < slots.size(); a += 2) {
      Edge e;
      e.v0 = key.first;
      e.v1 = key.second;
      e.slots = {slots[a], slots[a + 1]};
      int id = static_cast<int>(s.edges.size());
      s.edges.push_back(e);
      for (const Corner& sl : e.slots)
        s.face_edges[static_cast<size_t>(sl.face)][static_cast<size_t>(sl.corner)] = id;
    }
  }

  // Per-vertex adjacency and degrees (self-loops count twice in the degree).
  s.corners_at.assign(static_cast<size_t>(s.n_vertices), {});
  s.edges_at.assign(static_cast<size_t>(s.n_vertices), {});
  s.degree.assign(static_cast<size_t>(s.n_vertices), 0);
  for (int f = 0; f < f_count; ++f)
    for (int c = 0; c < 3; ++c)
      s.corners_at[static_cast<size_t>(s.faces[static_cast<size_t>(f)][static_cast<size_t>(c)])].push_back({f, c});
  for (int id = 0; id < s.num_edges(); ++id) {
    const Edge& e = s.edges[static_cast<size_t>(id)];
    s.edges_at[static_cast<size_t>(e.v0)].push_back(id);
    if (!e.is_loop()) s.edges_at[static_cast<size_t>(e.v1)].push_back(id);
    s.degree[static_cast<size_t>(e.v0)] += 1;
    s.degree[static_cast<size_t>(e.v1)] += 1;  // loops hit v0 == v1 twice
  }
}

void check_connected(const Surface& s) {
  for (int v = 0; v < s.n_vertices; ++v)
    if (s.corners_at[static_cast<size_t>(v)].empty())
      throw std::runtime_error("disconnected complex: vertex " + std::to_string(v) +
                               " is not contained in any face");

  // Faces are adjacent when they share an edge endpoint pair. BFS must reach
  // every face from face 0.
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  for (int f = 0; f < s.num_faces(); ++f)
    for (int c = 0; c < 3; ++c) by_pair[slot_endpoints(s.faces[static_cast<size_t>(f)], c)].push_back(f);

  std::vector<char> seen(static_cast<size_t>(s.num_faces()), 0);
  std::vector<char> pair_done;
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      auto it = by_pair.find(slot_endpoints(s.faces[static_cast<size_t>(f)], c));
      for (int g : it->second) {
        if (!seen[static_cast<size_t>(g)]) {
          seen[static_cast<size_t>(g)] = 1;
          ++reached;
          stack.push_back(g);
        }
      }
    }
  }
  if (reached != s.num_faces())
    throw std::runtime_error("disconnected complex: only " + std::to_string(reached) + " of " +
                             std::to_string(s.num_faces()) + " faces are reachable from face 0");
}

}  // namespace

ParsedMesh parse_cpm(const std::string& text) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  Reader rd(text);
  ParsedMesh out;
  Surface& s = out.surface;

  rd.expect_keyword("vertices");
  long n = rd.read_int("vertex count");
  if (n < 1) throw std::runtime_error("vertex count must be positive, got " + std::to_string(n));
  s.n_vertices = static_cast<int>(n);

  rd.expect_keyword("faces");
  long f_count = rd.read_int("face count");
  if (f_count < 1) throw std::runtime_error("face count must be positive");
  s.faces.reserve(static_cast<size_t>(f_count));
  for (long f = 0; f < f_count; ++f) {
    std::array<int, 3> tri{};
    for (int c = 0; c < 3; ++c) {
      long v = rd.read_int("face vertex index");
      if (v < 0 || v >= n)
        throw std::runtime_error("face " + std::to_string(f) + " references vertex " +
                                 std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      tri[static_cast<size_t>(c)] = static_cast<int>(v);
    }
    s.faces.push_back(tri);
  }

  derive_edges(s);

  rd.expect_keyword("weights");
  long e_declared = rd.read_int("edge count");
  if (e_declared != s.num_edges())
    throw std::runtime_error("weights section declares " + std::to_string(e_declared) +
                             " edges but the faces derive " + std::to_string(s.num_edges()));
  std::vector<char> weighted(static_cast<size_t>(s.num_edges()), 0);
  for (long k = 0; k < e_declared; ++k) {
    long f = rd.read_int("weight face index");
    long c = rd.read_int("weight corner index");
    double phi = rd.read_real("weight value");
    if (f < 0 || f >= f_count)
      throw std::runtime_error("weight line " + std::to_string(k) + ": face index " +
                               std::to_string(f) + " out of range");
    if (c < 0 || c > 2)
      throw std::runtime_error("weight line " + std::to_string(k) + ": corner index " +
                               std::to_string(c) + " not in {0,1,2}");
    int id = s.face_edges[static_cast<size_t>(f)][static_cast<size_t>(c)];
    Edge& e = s.edges[static_cast<size_t>(id)];
    if (!(phi >= 0.0 && phi <= half_pi))
      throw std::runtime_error("weight " + fmt17(phi) + " out of range [0, pi/2] on edge (face " +
                               std::to_string(f) + ", corner " + std::to_string(c) +
                               ") between vertices " + std::to_string(e.v0) + " and " +
                               std::to_string(e.v1));
    if (weighted[static_cast<size_t>(id)])
      throw std::runtime_error("duplicate weight for the edge at (face " + std::to_string(f) +
                               ", corner " + std::to_string(c) + "); each edge must be listed once");
    weighted[static_cast<size_t>(id)] = 1;
    e.weight = phi;
  }

  if (!rd.done()) {
    const Token* t = rd.peek();
    if (t->text == "radii") {
      rd.expect_keyword("radii");
      std::vector<double> radii(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) {
        double r = rd.read_real("radius");
        if (!(r > 0.0))
          throw std::runtime_error("radius for vertex " + std::to_string(i) +
                                   " must be positive, got " + fmt17(r));
        radii[static_cast<size_t>(i)] = r;
      }
      out.radii = std::move(radii);
    }
  }
  if (!rd.done())
    throw std::runtime_error("line " + std::to_string(rd.peek()->line) + ": unknown section '" +
                             rd.peek()->text + "'");

  check_connected(s);
  return out;
}

ParsedMesh parse_cpm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cpm(buf.str());
}

std::string to_cpm(const Surface& s, const std::vector<double>* radii) {
  std::ostringstream out;
  out << "vertices " << s.n_vertices << "\n";
  out << "faces " << s.num_faces() << "\n";
  for (const auto& f : s.faces) out << f[0] << " " << f[1] << " " << f[2] << "\n";
  out << "weights " << s.num_edges() << "\n";
  for (const Edge& e : s.edges)
    out << e.slots[0].face << " " << e.slots[0].corner << " " << fmt17(e.weight) << "\n";
  if (radii) {
    out << "radii\n";
    for (size_t i = 0; i < radii->size(); ++i) out << (i ? " " : "") << fmt17((*radii)[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace hypflow

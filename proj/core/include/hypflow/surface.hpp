#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hypflow {

// A face corner: face index plus corner position in {0, 1, 2}.
struct Corner {
  int face = -1;
  int corner = -1;

  friend bool operator==(const Corner&, const Corner&) = default;
};

// One glued edge of the complex. `slots` are the two face corners the edge
// lies opposite to; for a self-loop the two endpoints coincide. Multi-edges
// between the same vertex pair are distinct records with independent weights.
struct Edge {
  int v0 = -1, v1 = -1;           // endpoints, v0 <= v1
  std::array<Corner, 2> slots{};  // the two incident face corners
  double weight = 0.0;            // intersection angle in [0, pi/2]

  bool is_loop() const { return v0 == v1; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// An immutable weighted triangulation of a closed surface.
//
// This is a Delta-complex: multi-edges and self-loops are accepted, which
// admits very small high-genus meshes (e.g. the 2-vertex genus-2 octagon).
// All per-vertex quantities downstream depend only on per-corner data, so
// the generality costs nothing. Treat instances as read-only after load;
// they are then safe to share across threads.
struct Surface {
  int n_vertices = 0;
  std::vector<std::array<int, 3>> faces;
  std::vector<Edge> edges;

  // face_edges[f][c]: id of the edge opposite corner c of face f.
  std::vector<std::array<int, 3>> face_edges;

  // Per-vertex adjacency.
  std::vector<std::vector<Corner>> corners_at;  // incident face corners
  std::vector<std::vector<int>> edges_at;       // incident edge ids (loops listed once)
  std::vector<int> degree;                      // incident edge count, loops count twice

  int num_vertices() const { return n_vertices; }
  int num_faces() const { return static_cast<int>(faces.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int euler_characteristic() const { return n_vertices - num_edges() + num_faces(); }

  int vertex_degree(int v) const;  // throws std::out_of_range on bad index
  int max_degree() const;

  // Weights of the three edges of face f, indexed by opposite corner.
  std::array<double, 3> face_weights(int f) const;

  friend bool operator==(const Surface&, const Surface&) = default;
};

struct ParsedMesh {
  Surface surface;
  std::optional<std::vector<double>> radii;  // optional trailing section
};

// Parses the .cpm text format:
//
//   vertices N
//   faces F
//   i j k            # F lines, 0-based vertex indices
//   weights E
//   f c phi          # E lines: face f, opposite-corner c in {0,1,2}, weight
//   radii            # optional
//   r_0 ... r_{N-1}
//
// '#' starts a comment; tokens are whitespace-separated. Each undirected
// edge is listed once in the weights section and the weight is mirrored to
// both incident face corners. Validation is strict: weights in [0, pi/2],
// every edge incident to exactly two face corners pairs (closed surface),
// connected complex, no unknown sections.
//
// Corner slots with equal endpoint pairs are paired in (face, corner) order;
// the pairing is deterministic and round-trips through to_cpm().
ParsedMesh parse_cpm(const std::string& text);
ParsedMesh parse_cpm_file(const std::string& path);

inline Surface load_surface(const std::string& text) { return parse_cpm(text).surface; }

// Serializes back to .cpm (full 17-digit weights; optional radii section).
std::string to_cpm(const Surface& s, const std::vector<double>* radii = nullptr);

}  // namespace hypflow

#include "support/testutil.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hypflow/curvature.hpp"

namespace hft {

std::uint64_t test_seed() {
  if (const char* env = std::getenv("HYPFLOW_SEED")) return std::strtoull(env, nullptr, 10);
  return 20250810ULL;
}

std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() + salt); }

std::string fixture_path(const std::string& name) {
  return std::string(HYPFLOW_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

hypflow::Surface load_fixture(const std::string& name) {
  return hypflow::parse_cpm_file(fixture_path(name)).surface;
}

hypflow::PackingMetric random_metric(int n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = dist(rng);
  return hypflow::PackingMetric::from_radii(r);
}

hypflow::Surface with_weights(hypflow::Surface s, const std::vector<double>& weights) {
  if (weights.size() != s.edges.size()) throw std::invalid_argument("weight count mismatch");
  for (size_t i = 0; i < weights.size(); ++i) s.edges[i].weight = weights[i];
  return s;
}

std::vector<double> random_weights(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, std::numbers::pi / 2.0);
  std::vector<double> w(static_cast<size_t>(count));
  for (auto& x : w) x = dist(rng);
  return w;
}

Eigen::MatrixXd fd_curvature_jacobian(const hypflow::Surface& s, const hypflow::PackingMetric& m,
                                      double h) {
  const int n = m.size();
  Eigen::MatrixXd jac(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd up = m.u(), dn = m.u();
    up[j] += h;
    dn[j] -= h;
    const Eigen::VectorXd kp =
        hypflow::gauss_curvature(s, hypflow::PackingMetric::from_u(up)).values;
    const Eigen::VectorXd kn =
        hypflow::gauss_curvature(s, hypflow::PackingMetric::from_u(dn)).values;
    jac.col(j) = (kp - kn) / (2.0 * h);
  }
  return jac;
}

std::string subdivide_cpm(const hypflow::Surface& s) {
  const int n = s.num_vertices();
  // One new vertex per edge; simple meshes have one edge per endpoint pair.
  std::map<std::pair<int, int>, int> midpoint;
  for (const hypflow::Edge& e : s.edges) {
    if (e.is_loop()) throw std::invalid_argument("subdivision expects a simple mesh");
    auto [it, fresh] = midpoint.insert({{e.v0, e.v1}, n + static_cast<int>(midpoint.size())});
    if (!fresh) throw std::invalid_argument("subdivision expects a simple mesh (no multi-edges)");
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(s.faces.size() * 4);
  auto mid = [&](int a, int b) { return midpoint.at({std::min(a, b), std::max(a, b)}); };
  for (const auto& f : s.faces) {
    const int i = f[0], j = f[1], k = f[2];
    const int mij = mid(i, j), mjk = mid(j, k), mik = mid(i, k);
    faces.push_back({i, mij, mik});
    faces.push_back({j, mjk, mij});
    faces.push_back({k, mik, mjk});
    faces.push_back({mij, mjk, mik});
  }

  // Emit .cpm with one weight line per first-seen endpoint pair.
  std::ostringstream out;
  out << "vertices " << n + static_cast<int>(midpoint.size()) << "\n";
  out << "faces " << faces.size() << "\n";
  for (const auto& f : faces) out << f[0] << " " << f[1] << " " << f[2] << "\n";
  std::map<std::pair<int, int>, bool> seen;
  std::ostringstream weight_lines;
  int e_count = 0;
  for (size_t f = 0; f < faces.size(); ++f)
    for (int c = 0; c < 3; ++c) {
      const int a = faces[f][static_cast<size_t>((c + 1) % 3)];
      const int b = faces[f][static_cast<size_t>((c + 2) % 3)];
      if (seen.insert({{std::min(a, b), std::max(a, b)}, true}).second) {
        weight_lines << f << " " << c << " 0\n";
        ++e_count;
      }
    }
  out << "weights " << e_count << "\n" << weight_lines.str();
  return out.str();
}

}  // namespace hft

#include <benchmark/benchmark.h>

#include <map>
#include <sstream>

#include "hypflow/curvature.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/hypgeom.hpp"
#include "hypflow/solver.hpp"
#include "hypflow/surface.hpp"

using namespace hypflow;

namespace {

Surface load(const char* name) {
  return parse_cpm_file(std::string(HYPFLOW_FIXTURE_DIR) + "/" + name).surface;
}

// 1 -> 4 subdivision for simple meshes; weights stay zero.
Surface subdivide(const Surface& s) {
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto [it, fresh] = midpoint.insert({key, s.num_vertices() + static_cast<int>(midpoint.size())});
    return it->second;
  };
  std::vector<std::array<int, 3>> faces;
  for (const auto& f : s.faces) {
    const int i = f[0], j = f[1], k = f[2];
    const int mij = mid(i, j), mjk = mid(j, k), mik = mid(i, k);
    faces.push_back({i, mij, mik});
    faces.push_back({j, mjk, mij});
    faces.push_back({k, mik, mjk});
    faces.push_back({mij, mjk, mik});
  }
  std::ostringstream out;
  out << "vertices " << s.num_vertices() + midpoint.size() << "\nfaces " << faces.size() << "\n";
  for (const auto& f : faces) out << f[0] << " " << f[1] << " " << f[2] << "\n";
  std::map<std::pair<int, int>, bool> seen;
  std::ostringstream lines;
  int count = 0;
  for (size_t f = 0; f < faces.size(); ++f)
    for (int c = 0; c < 3; ++c) {
      const int a = faces[f][(c + 1) % 3], b = faces[f][(c + 2) % 3];
      if (seen.insert({std::minmax(a, b), true}).second) {
        lines << f << " " << c << " 0\n";
        ++count;
      }
    }
  out << "weights " << count << "\n" << lines.str();
  return load_surface(out.str());
}

Surface subdivided(int rounds) {
  Surface s = load("icosahedron.cpm");
  for (int i = 0; i < rounds; ++i) s = subdivide(s);
  return s;
}

void bm_edge_length(benchmark::State& state) {
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(edge_length(r, 1.3, 0.7));
    r = r < 4.0 ? r + 1e-3 : 0.5;
  }
}
BENCHMARK(bm_edge_length);

void bm_triangle_geom(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(triangle_geom({0.8, 1.1, 1.9}, {0.0, 0.3, 1.2}));
}
BENCHMARK(bm_triangle_geom);

void bm_angle_partials(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(angle_partials({0.8, 1.1, 1.9}, {0.0, 0.3, 1.2}));
}
BENCHMARK(bm_angle_partials);

void bm_gauss_curvature(benchmark::State& state) {
  const Surface s = subdivided(static_cast<int>(state.range(0)));
  const PackingMetric m = PackingMetric::from_radii(Eigen::VectorXd::Ones(s.num_vertices()));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_curvature(s, m));
  state.SetItemsProcessed(state.iterations() * s.num_faces());
}
BENCHMARK(bm_gauss_curvature)->Arg(0)->Arg(2)->Arg(4);

void bm_jacobian(benchmark::State& state) {
  const Surface s = subdivided(static_cast<int>(state.range(0)));
  const PackingMetric m = PackingMetric::from_radii(Eigen::VectorXd::Ones(s.num_vertices()));
  for (auto _ : state) benchmark::DoNotOptimize(curvature_jacobian(s, m));
  state.SetItemsProcessed(state.iterations() * s.num_faces());
}
BENCHMARK(bm_jacobian)->Arg(0)->Arg(2)->Arg(4);

void bm_jacobian_solve(benchmark::State& state) {
  const Surface s = subdivided(static_cast<int>(state.range(0)));
  const PackingMetric m = PackingMetric::from_radii(Eigen::VectorXd::Ones(s.num_vertices()));
  const CurvatureJacobian jac = curvature_jacobian(s, m);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(s.num_vertices());
  for (auto _ : state) benchmark::DoNotOptimize(jac.solve(rhs));
}
BENCHMARK(bm_jacobian_solve)->Arg(2)->Arg(4);

void bm_ricci_step(benchmark::State& state) {
  const Surface s = load("octagon_genus2.cpm");
  const PackingMetric m = PackingMetric::from_radii(std::vector<double>{1.0, 1.0});
  FlowConfig cfg;
  cfg.integrator = state.range(0) ? Integrator::rk4 : Integrator::euler;
  cfg.dt = 1e-2;
  RhsFn rhs = [&s](const PackingMetric& mm) { return ricci_rhs(s, mm); };
  for (auto _ : state) benchmark::DoNotOptimize(step(m, rhs, cfg));
}
BENCHMARK(bm_ricci_step)->Arg(0)->Arg(1);

void bm_newton_octagon(benchmark::State& state) {
  const Surface s = load("octagon_genus2.cpm");
  const PackingMetric m0 = PackingMetric::from_radii(std::vector<double>{1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(newton_zero_curvature(s, m0, 1e-10, 20));
}
BENCHMARK(bm_newton_octagon);

void bm_potential(benchmark::State& state) {
  const Surface s = load("octagon_genus2.cpm");
  Eigen::VectorXd a(2), b(2);
  a << u_from_r(1.0), u_from_r(1.0);
  b << u_from_r(0.9), u_from_r(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(ricci_potential(s, a, b));
}
BENCHMARK(bm_potential);

}  // namespace

BENCHMARK_MAIN();

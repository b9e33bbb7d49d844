#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "towerplan/grid.hpp"
#include "towerplan/pipeline.hpp"
#include "towerplan/raster.hpp"
#include "towerplan/spatialdb.hpp"

using namespace towerplan;

namespace {

constexpr double kCellSide = 2000.0;
constexpr double kRadius = 850.0;
constexpr int kCellsPerSide = 6;

struct Workload {
  ExternalGrid grid;
  std::vector<SpatialObject> objects;
  PlanParams params;
};

// A flat area of kCellsPerSide^2 cells with a few objects scattered per cell.
const Workload& workload() {
  static const Workload w = [] {
    ElevationRaster raster;
    raster.ncols = raster.nrows = static_cast<int>(kCellsPerSide * kCellSide / 100.0);
    raster.cell_size_m = 100.0;
    raster.values.assign(static_cast<std::size_t>(raster.ncols) * raster.nrows, 50.0);

    Workload out;
    out.grid = subdivide(build_external_grid(raster, kCellSide), raster, kRadius);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pos(0.0, kCellsPerSide * kCellSide);
    std::uniform_real_distribution<double> extent(50.0, 600.0);
    std::uniform_int_distribution<int> type(1, 11);
    std::uniform_int_distribution<int> level(0, 2);
    const int count = kCellsPerSide * kCellsPerSide * 4;
    for (int i = 0; i < count; ++i) {
      SpatialObject o;
      o.id = "O" + std::to_string(i + 1);
      o.type = static_cast<ObjectType>(type(rng));
      o.size = static_cast<SizeCode>(level(rng) + 1);
      o.population = static_cast<Level>(level(rng));
      o.employment = static_cast<Level>(level(rng));
      const double x = pos(rng), y = pos(rng), wd = extent(rng), ht = extent(rng);
      if (i % 3 == 0) {
        o.shape = ShapeCode::Point;
        o.geometry = Point{x, y};
      } else {
        o.shape = ShapeCode::Polygon;
        o.geometry = Polygon{{{x, y}, {x + wd, y}, {x + wd, y + ht}, {x, y + ht}}};
      }
      out.objects.push_back(validated(std::move(o)));
    }
    return out;
  }();
  return w;
}

void BM_Serial(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    auto cells = process_cells_serial(w.grid, w.objects, w.params, Depth::Full);
    benchmark::DoNotOptimize(cells);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.grid.cells.size()));
}

void BM_Parallel(benchmark::State& state) {
  const auto& w = workload();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cells = process_cells_parallel(w.grid, w.objects, w.params, Depth::Full, jobs);
    benchmark::DoNotOptimize(cells);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.grid.cells.size()));
}

}  // namespace

BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

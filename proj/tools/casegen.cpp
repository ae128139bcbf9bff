#include "casegen.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "strmon/errors.hpp"
#include "strmon/signal.hpp"

namespace strmon::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void generate_f16like(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const std::int64_t t_lo = -50;
  const std::int64_t t_hi = 1897;
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(t_hi - t_lo + 1));
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    const double td = static_cast<double>(t);
    const double east = 0.1 * td;
    const double north = 60.0 * std::sin(td / 300.0);
    const double altitude = 1500.0 + 200.0 * std::tanh((td - 1500.0) / 90.0);
    rows.push_back({east, north, altitude});
  }
  save_csv(Signal(t_lo, std::move(rows)), dir / "signal.csv");

  write_text(dir / "spec.str",
             "# Synthetic flight-path requirements (3-D trace: east, north, "
             "altitude)\n"
             "G[0,1847] (sd_out(box([40,67],[-30,-10])) > 0)\n"
             "&& G[581,1847] (sd_out(box([0,30],[20,70])) > 0)\n"
             "&& G[1349,1349] ((1800 - x3 > 0) U[0,300] (x3 - 1600 > 0))\n");

  nlohmann::ordered_json config;
  config["case"] = "f16like";
  config["signal"] = "signal.csv";
  config["spec"] = "spec.str";
  config["t"] = 0;
  config["dtmax"] = 50;
  config["norm"] = "l2";
  config["padding"] = "strict";
  config["labels"] = {"avoid", "threat", "climb"};
  write_text(dir / "config.json", config.dump(2) + "\n");
}

void generate_robotaxi(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const std::int64_t t_lo = -10;
  const std::int64_t t_hi = 100;

  auto vehicle = [](double t) {
    return std::pair<double, double>{-15.0 + 0.5 * t,
                                     1.2 * std::sin(0.05 * t)};
  };
  auto pedestrian = [](double t) {
    return std::pair<double, double>{5.0, -17.0 + 0.25 * t};
  };

  std::vector<std::vector<double>> rel_rows;
  std::vector<std::vector<double>> veh_rows;
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    const double td = static_cast<double>(t);
    const auto [vx, vy] = vehicle(td);
    const auto [px, py] = pedestrian(td);
    rel_rows.push_back({vx - px, vy - py});
    veh_rows.push_back({vx, vy});
  }
  save_csv(Signal(t_lo, std::move(rel_rows)), dir / "signal_rel.csv");
  save_csv(Signal(t_lo, std::move(veh_rows)), dir / "signal_vehicle.csv");

  write_text(dir / "spec_rel.str",
             "# Vehicle-pedestrian separation of at least 1 on the relative "
             "position\n"
             "G[0,90] (sd_out(ball(0,0;1)) > 0)\n");
  write_text(dir / "spec_fixed.str",
             "# Separation from a pedestrian fixed on the sidewalk\n"
             "G[0,90] (sd_out(ball(5,-3.5;1)) > 0)\n");

  nlohmann::ordered_json config;
  config["case"] = "robotaxi";
  config["d_min"] = 1.0;
  config["t"] = 0;
  config["dtmax"] = 10;
  config["norm"] = "l2";
  config["padding"] = "strict";
  config["runs"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"signal", "signal_rel.csv"},
                              {"spec", "spec_rel.str"},
                              {"labels", {"separation"}}},
       nlohmann::ordered_json{{"signal", "signal_vehicle.csv"},
                              {"spec", "spec_fixed.str"},
                              {"labels", {"separation_fixed"}}}});
  // Monitoring the joint 4-D state with h = |x_v - x_p| - d_min instead of
  // the relative encoding needs a Lipschitz predicate; the tight constant
  // under the Euclidean norm on the stacked state is sqrt(2).
  config["joint_state_lipschitz"] = std::sqrt(2.0);
  write_text(dir / "config.json", config.dump(2) + "\n");
}

}  // namespace strmon::cli

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "strmon/errors.hpp"
#include "strmon/signal.hpp"

using namespace strmon;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("signal") {

TEST_CASE("sample respects the padding policy") {
  Signal strict = test::ramp_signal(-5, 5);
  CHECK(strict.sample(2) == std::vector<double>{2});
  CHECK_THROWS_AS(strict.sample(9), OutOfDomainError);

  Signal clamp = strict.with_padding(PaddingPolicy::Clamp);
  CHECK(clamp.sample(9) == std::vector<double>{5});
  CHECK(clamp.sample(-12) == std::vector<double>{-5});
}

TEST_CASE("sample_shifted reads each dimension at its own shifted time") {
  std::vector<std::vector<double>> rows;
  for (std::int64_t t = 0; t <= 10; ++t)
    rows.push_back({static_cast<double>(t), static_cast<double>(2 * t)});
  Signal sig(0, std::move(rows));

  CHECK(sig.sample_shifted(5, {{1, -2}}) == std::vector<double>{4, 14});
  CHECK(sig.sample_shifted(7, {{0, 0}}) == sig.sample(7));

  Signal clamped = test::ramp_signal(0, 10, PaddingPolicy::Clamp);
  CHECK(clamped.sample_shifted(0, {{3}}) == std::vector<double>{0});
}

TEST_CASE("zero shift equals plain sampling everywhere") {
  test::Rng rng(101);
  Signal sig = test::random_signal(rng, 3, -4, 9, 5.0, PaddingPolicy::Strict);
  for (std::int64_t t = sig.t_lo(); t <= sig.t_hi(); ++t)
    CHECK(sig.sample_shifted(t, {{0, 0, 0}}) == sig.sample(t));
}

TEST_CASE("clamped access is total for any shift") {
  test::Rng rng(102);
  Signal sig = test::random_signal(rng, 2, 0, 6, 3.0, PaddingPolicy::Clamp);
  std::uniform_int_distribution<std::int64_t> wild(-40, 40);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t t = wild(rng);
    CHECK_NOTHROW(sig.sample_shifted(t, {{wild(rng), wild(rng)}}));
  }
}

TEST_CASE("load_csv parses a minimal trace") {
  auto path = temp_file("strmon_minimal.csv");
  write_file(path, "t,x1\n0,1.0\n1,2.0\n");
  Signal sig = load_csv(path);
  CHECK(sig.t_lo() == 0);
  CHECK(sig.t_hi() == 1);
  CHECK(sig.dim() == 1);
  CHECK(sig.value(0, 1) == 2.0);
}

TEST_CASE("load_csv rejects malformed traces") {
  auto path = temp_file("strmon_bad.csv");
  write_file(path, "t,x1\n0,1\n2,3\n");
  CHECK_THROWS_AS(load_csv(path), ParseError);  // gap in time indices

  write_file(path, "t,x1\n0,nan\n");
  CHECK_THROWS_AS(load_csv(path), ParseError);

  write_file(path, "t,x1\n0.5,1\n");
  CHECK_THROWS_AS(load_csv(path), ParseError);  // non-integer timestamp

  write_file(path, "t,y\n0,1\n");
  CHECK_THROWS_AS(load_csv(path), ParseError);  // header naming

  CHECK_THROWS_AS(load_csv(temp_file("strmon_nonexistent.csv")), IoError);
}

TEST_CASE("trace with the flight-path shape loads as [0;1847] x R^3") {
  auto path = temp_file("strmon_f16_shape.csv");
  std::ofstream out(path);
  out << "t,x1,x2,x3\n";
  for (int t = 0; t <= 1847; ++t)
    out << t << "," << 0.1 * t << "," << t % 7 << "," << 1200 + t << "\n";
  out.close();
  Signal sig = load_csv(path);
  CHECK(sig.t_lo() == 0);
  CHECK(sig.t_hi() == 1847);
  CHECK(sig.dim() == 3);
  CHECK(sig.length() == 1848);
}

TEST_CASE("save and reload round-trips values bit-exactly") {
  test::Rng rng(103);
  std::vector<std::vector<double>> rows;
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  for (int t = 0; t < 20; ++t)
    rows.push_back({dist(rng), dist(rng) / 3.0, 0.25 * t});
  Signal sig(-3, rows);

  auto path = temp_file("strmon_roundtrip.csv");
  save_csv(sig, path);
  Signal back = load_csv(path);
  REQUIRE(back.dim() == sig.dim());
  REQUIRE(back.t_lo() == sig.t_lo());
  REQUIRE(back.t_hi() == sig.t_hi());
  for (std::int64_t t = sig.t_lo(); t <= sig.t_hi(); ++t)
    for (int d = 0; d < sig.dim(); ++d)
      CHECK(back.value(d, t) == sig.value(d, t));

  // A second save writes the identical file.
  auto path2 = temp_file("strmon_roundtrip2.csv");
  save_csv(back, path2);
  std::ifstream a(path), b(path2);
  std::string ta((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string tb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(ta == tb);
}

}  // TEST_SUITE

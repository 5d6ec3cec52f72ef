#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "holo/dataset.hpp"
#include "holo/error.hpp"
#include "holo/pgm.hpp"
#include "support.hpp"

using namespace holo;

namespace {

ErrorCode parse_error(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    read_pgm(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed malformed input");
  return ErrorCode::InvalidArgument;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("read_pgm: binary and ASCII") {
  std::istringstream bin(std::string("P5\n2 1\n255\n") + '\x00' + '\xff');
  const ImageRaw a = read_pgm(bin);
  CHECK(a.width == 2);
  CHECK(a.height == 1);
  CHECK(a.pixels == std::vector<std::uint8_t>{0, 255});

  std::istringstream commented("P5 # made by hand\n# another\n 2\t1 255\n\x07\x08");
  CHECK(read_pgm(commented).pixels == std::vector<std::uint8_t>{7, 8});

  std::istringstream ascii("P2\n# c\n3 2\n255\n0 1 2\n 253 254\n255\n");
  const ImageRaw b = read_pgm(ascii);
  CHECK(b.width == 3);
  CHECK(b.pixels == std::vector<std::uint8_t>{0, 1, 2, 253, 254, 255});
}

TEST_CASE("read_pgm: malformed inputs") {
  CHECK(parse_error("P5\n2 1\n65535\n\x00\x00\x00\x00") == ErrorCode::MalformedPgm);
  CHECK(parse_error("P6\n1 1\n255\n\x00\x00\x00") == ErrorCode::MalformedPgm);
  CHECK(parse_error("P5\n2 2\n255\n\x00") == ErrorCode::MalformedPgm);
  CHECK(parse_error("P5\n0 2\n255\n") == ErrorCode::MalformedPgm);
  CHECK(parse_error("P2\n2 1\n255\n12") == ErrorCode::MalformedPgm);
  CHECK(parse_error("P2\n1 1\n255\n300") == ErrorCode::MalformedPgm);
  CHECK(parse_error("") == ErrorCode::MalformedPgm);
  CHECK_THROWS_AS(read_pgm(std::filesystem::path("/nonexistent/x.pgm")), Error);
}

TEST_CASE("write_pgm: exact bytes and round trip") {
  std::ostringstream out;
  write_pgm(out, ImageRaw(1, 1, std::uint8_t{7}));
  CHECK(out.str() == std::string("P5\n1 1\n255\n\x07"));

  test::TempDir dir("pgm");
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ImageRaw img = test::random_image(1 + rng.below(40), 1 + rng.below(40), rng);
    write_pgm(img, dir.path / "a.pgm");
    write_pgm(img, dir.path / "b.pgm");
    CHECK(read_pgm(dir.path / "a.pgm") == img);
    CHECK(slurp(dir.path / "a.pgm") == slurp(dir.path / "b.pgm"));
  }
}

TEST_CASE("load_dataset: sorted by name, resolution checked") {
  test::TempDir dir("ds");
  CHECK_THROWS_AS(load_dataset(dir.path), Error);
  write_pgm(ImageRaw(2, 2, std::uint8_t{1}), dir.path / "b.pgm");
  write_pgm(ImageRaw(2, 2, std::uint8_t{2}), dir.path / "a.pgm");
  std::ofstream(dir.path / "notes.txt") << "ignored";
  const Dataset ds = load_dataset(dir.path);
  REQUIRE(ds.size() == 2);
  CHECK(ds.names[0] == "a.pgm");
  CHECK(ds.images[0].pixels[0] == 2);

  write_pgm(ImageRaw(3, 2, std::uint8_t{1}), dir.path / "c.pgm");
  try {
    load_dataset(dir.path);
    FAIL("mixed resolutions accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }

  test::TempDir empty("empty");
  try {
    load_dataset(empty.path);
    FAIL("empty dataset accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DatasetEmpty);
  }
}

TEST_CASE("generate_synthetic: deterministic, full range, every kind") {
  for (auto kind : {SyntheticKind::Noise, SyntheticKind::Ridges, SyntheticKind::Blocks}) {
    SyntheticOptions o;
    o.kind = kind;
    o.count = 5;
    o.width = 32;
    o.height = 24;
    o.seed = 9;
    const auto a = generate_synthetic(o);
    CHECK(a == generate_synthetic(o));
    REQUIRE(a.size() == 5);
    for (const auto& img : a) {
      CHECK(img.width == 32);
      CHECK(img.height == 24);
      CHECK(*std::min_element(img.pixels.begin(), img.pixels.end()) == 0);
      CHECK(*std::max_element(img.pixels.begin(), img.pixels.end()) == 255);
    }
    o.seed = 10;
    CHECK_FALSE(a == generate_synthetic(o));
  }
  CHECK(parse_kind("ridges") == SyntheticKind::Ridges);
  CHECK_THROWS_AS(parse_kind("faces"), Error);
}

TEST_CASE("generate_synthetic: orthogonalized images are nearly orthogonal after quantizing") {
  SyntheticOptions o;
  o.count = 10;
  o.orthogonalize = true;
  const auto imgs = generate_synthetic(o);
  for (std::size_t k = 0; k < imgs.size(); ++k) {
    const auto pk = preprocess(imgs[k]);
    for (std::size_t l = k + 1; l < imgs.size(); ++l) {
      const auto pl = preprocess(imgs[l]);
      double dot = 0.0;
      for (std::size_t j = 0; j < pk.size(); ++j) dot += pk[j] * pl[j];
      CHECK(std::abs(dot) < 0.01);
    }
  }
}

TEST_CASE("orthonormalize") {
  std::vector<std::vector<double>> v{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  orthonormalize(v);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < 3; ++c) d += v[i][c] * v[j][c];
      CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-14));
    }
  std::vector<std::vector<double>> dep{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(orthonormalize(dep), Error);
}

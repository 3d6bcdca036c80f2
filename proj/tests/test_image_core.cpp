#include <doctest.h>

#include <fstream>
#include <map>

#include "oracles.hpp"
#include "specden/error.hpp"
#include "specden/image.hpp"
#include "specden/image_io.hpp"
#include "specden/metrics.hpp"
#include "specden/noise.hpp"

using namespace specden;
namespace fs = std::filesystem;

namespace {

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::vector<unsigned char> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ErrorCode load_error(const fs::path& p) {
  try {
    load_image(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("load_image did not throw");
  return ErrorCode::kParse;
}

}  // namespace

TEST_CASE("image rejects bad shapes") {
  CHECK_THROWS_AS(Image(0, 4, 1), Error);
  CHECK_THROWS_AS(Image(4, 4, 2), Error);
  CHECK_THROWS_AS(Image(2, 2, 1, std::vector<double>(3)), Error);
  Image img(3, 2, 3, 0.25);
  CHECK(img.size() == 18);
  CHECK(img.all_finite());
  img.at(1, 1, 2) = std::nan("");
  CHECK_FALSE(img.all_finite());
}

TEST_CASE("load_image: 4x4 PGM of 128") {
  oracle::TempDir dir("pgm");
  write_bytes(dir.path / "a.pgm", "P5\n# comment\n4 4\n255\n" + std::string(16, static_cast<char>(128)));
  const Image img = load_image(dir.path / "a.pgm");
  CHECK(img.width() == 4);
  CHECK(img.height() == 4);
  CHECK(img.channels() == 1);
  for (double v : img.data()) CHECK(v == 128.0 / 255.0);
}

TEST_CASE("load_image error codes are distinct") {
  oracle::TempDir dir("err");
  CHECK(load_error(dir.path / "missing.png") == ErrorCode::kMissingFile);
  write_bytes(dir.path / "x.bmp", "BM not really");
  CHECK(load_error(dir.path / "x.bmp") == ErrorCode::kUnsupportedFormat);
  write_bytes(dir.path / "bad.pgm", "P5\n4 four\n255\n");
  CHECK(load_error(dir.path / "bad.pgm") == ErrorCode::kCorruptHeader);
  write_bytes(dir.path / "short.ppm", "P6\n4 4\n255\n" + std::string(10, 'x'));
  CHECK(load_error(dir.path / "short.ppm") == ErrorCode::kCorruptHeader);
  write_bytes(dir.path / "deep.pgm", "P5\n2 2\n65535\n" + std::string(8, 'x'));
  CHECK(load_error(dir.path / "deep.pgm") == ErrorCode::kUnsupportedFormat);
  write_bytes(dir.path / "trunc.png", std::string("\x89PNG\r\n\x1a\n", 8) + "garbage");
  CHECK(load_error(dir.path / "trunc.png") == ErrorCode::kCorruptHeader);
}

TEST_CASE("save_image quantizes with clamping") {
  oracle::TempDir dir("save");
  Image img(3, 1, 1, std::vector<double>{0.5, 1.2, -0.1});
  save_image(img, dir.path / "q.pgm");
  const auto bytes = read_bytes(dir.path / "q.pgm");
  REQUIRE(bytes.size() >= 3);
  CHECK(bytes[bytes.size() - 3] == 128);
  CHECK(bytes[bytes.size() - 2] == 255);
  CHECK(bytes[bytes.size() - 1] == 0);

  const Image half(5, 4, 1, 0.5);
  save_image(half, dir.path / "half.png");
  const Image loaded = load_image(dir.path / "half.png");
  for (double v : loaded.data()) CHECK(v == 128.0 / 255.0);
}

TEST_CASE("save_image rejects unwritable paths and unknown extensions") {
  oracle::TempDir dir("unwritable");
  const Image img(2, 2, 1, 0.5);
  try {
    save_image(img, dir.path / "no" / "such" / "dir.png");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnwritablePath);
  }
  CHECK_THROWS_AS(save_image(img, dir.path / "x.jpg"), Error);
}

TEST_CASE("load/save round trip within 1/510") {
  oracle::TempDir dir("rt");
  for (int channels : {1, 3}) {
    const Image img = oracle::random_image(17, 9, channels, 40 + channels);
    for (const char* ext : {".png", ".pnm"}) {
      const fs::path p = dir.path / (std::string("rt") + std::to_string(channels) + ext);
      save_image(img, p);
      const Image back = load_image(p);
      REQUIRE(back.same_shape(img));
      CHECK(oracle::max_abs_diff(back, img) <= 1.0 / 510.0 + 1e-15);
    }
  }
  const Image eight = [] {
    Image img(6, 6, 3);
    int i = 0;
    for (double& v : img.data()) v = (i++ * 37 % 256) / 255.0;
    return img;
  }();
  save_image(eight, dir.path / "eight.png");
  CHECK(load_image(dir.path / "eight.png") == eight);
}

TEST_CASE("to_grayscale luma weights") {
  Image white(1, 1, 3, 1.0);
  CHECK(to_grayscale(white).at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  Image red(1, 1, 3, 0.0);
  red.at(0, 0, 0) = 1.0;
  const Image g = to_grayscale(red);
  CHECK(g.channels() == 1);
  CHECK(g.at(0, 0) == doctest::Approx(0.299).epsilon(1e-15));
  const Image gray = oracle::random_image(5, 5, 1, 3);
  CHECK(to_grayscale(gray) == gray);
}

TEST_CASE("crop_patch") {
  const Image img = oracle::random_image(7, 5, 3, 9);
  CHECK(crop_patch(img, 0, 0, 7, 5) == img);
  CHECK_THROWS_AS(crop_patch(img, 1, 0, 7, 5), Error);
  CHECK_THROWS_AS(crop_patch(img, -1, 0, 2, 2), Error);
  CHECK_THROWS_AS(crop_patch(img, 0, 0, 0, 2), Error);

  Image checker(2, 2, 1, std::vector<double>{0, 1, 1, 0});
  const Image one = crop_patch(checker, 1, 1, 1, 1);
  CHECK(one.width() == 1);
  CHECK(one.at(0, 0) == 0);

  Image patch = crop_patch(img, 2, 1, 3, 3);
  for (int c = 0; c < 3; ++c)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) CHECK(patch.at(i, j, c) == img.at(2 + i, 1 + j, c));
  const Image before = img;
  patch.at(0, 0, 0) = 42;
  CHECK(img == before);
}

TEST_CASE("center_patch takes the middle") {
  const Image img = oracle::random_image(10, 8, 1, 2);
  CHECK(center_patch(img, 4, 4) == crop_patch(img, 3, 2, 4, 4));
}

TEST_CASE("hflip") {
  Image ab(2, 1, 1, std::vector<double>{0.1, 0.9});
  const Image ba = hflip(ab);
  CHECK(ba.at(0, 0) == 0.9);
  CHECK(ba.at(1, 0) == 0.1);
  const Image col = oracle::random_image(1, 6, 3, 5);
  CHECK(hflip(col) == col);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Image img = oracle::random_image(9, 4, 3, seed);
    CHECK(hflip(hflip(img)) == img);
    const Image f = hflip(img);
    for (int c = 0; c < 3; ++c) {
      std::map<double, int> ha, hb;
      for (double v : img.plane(c)) ++ha[v];
      for (double v : f.plane(c)) ++hb[v];
      CHECK(ha == hb);
    }
  }
}

TEST_CASE("psnr") {
  const Image x = oracle::random_image(8, 8, 1, 1);
  CHECK(std::isinf(psnr(x, x)));
  Image a(10, 10, 1, 0.5);
  Image b(10, 10, 1, 0.6);
  CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_THROWS_AS(psnr(a, Image(10, 9, 1)), Error);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Image p = oracle::random_image(12, 12, 3, s);
    const Image q = oracle::random_image(12, 12, 3, s + 100);
    CHECK(psnr(p, q) == psnr(q, p));
    CHECK(psnr(p, q) == doctest::Approx(oracle::psnr(p, q)).epsilon(1e-12));
  }
}

TEST_CASE("psnr of unclamped AWGN sigma=25 near 20.17 dB") {
  const Image x(128, 128, 1, 0.5);
  const Image y = add_awgn(x, 25, 7, false);
  const double expected = 20.0 * std::log10(255.0 / 25.0);
  CHECK(expected == doctest::Approx(20.17).epsilon(1e-3));
  CHECK(std::abs(psnr(x, y) - oracle::psnr(x, y)) < 1e-12);
  CHECK(std::abs(psnr(x, y) - expected) < 0.5);
}

TEST_CASE("metrics CSV row") {
  std::ostringstream out;
  write_metrics_header(out);
  const Image x = oracle::random_image(16, 16, 1, 2);
  write_metrics_row(out, "same", measure(x, x));
  CHECK(out.str() == "file,psnr,ssim,lfd\nsame,inf,1,0\n");
}

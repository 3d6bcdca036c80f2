#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "specden/error.hpp"
#include "specden/noise.hpp"
#include "specden/scenes.hpp"
#include "specden/spectrum.hpp"

using namespace specden;

namespace {

double max_coeff_diff(const SpectrumMap& a, const SpectrumMap& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

}  // namespace

TEST_CASE("dft2 of a constant is DC only") {
  const SpectrumMap F = dft2(Image(4, 4, 1, 0.5));
  CHECK(std::abs(F.at(0, 0) - Complex(8, 0)) < 1e-12);
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k)
      if (k || l) CHECK(std::abs(F.at(k, l)) < 1e-12);
}

TEST_CASE("dft2 of an impulse is flat") {
  for (int n : {4, 6, 7}) {
    Image img(n, n + 1, 1, 0.0);
    img.at(0, 0) = 1.0;
    const SpectrumMap F = dft2(img);
    for (Complex c : F.coeffs()) CHECK(std::abs(c - Complex(1, 0)) < 1e-12);
  }
}

TEST_CASE("dft2 and idft2 against direct sums") {
  // Power-of-two and odd sizes take different internal paths.
  for (auto [w, h] : {std::pair{8, 8}, std::pair{5, 7}, std::pair{12, 6}, std::pair{1, 9}}) {
    const Image img = oracle::random_image(w, h, 1, 100 + w * h);
    CHECK(max_coeff_diff(dft2(img), oracle::dft(img)) <= 1e-9);

    SpectrumMap random(w, h);
    const auto re = oracle::random_vector(w * h, 7 * w + h);
    const auto im = oracle::random_vector(w * h, 9 * w + h);
    for (int i = 0; i < w * h; ++i) random.coeffs()[i] = {re[i], im[i]};
    const auto direct = oracle::idft(random);
    const InverseDft inv = idft2(random);
    double err = 0;
    double residue = 0;
    for (int i = 0; i < w * h; ++i) {
      err = std::max(err, std::abs(inv.image.data()[i] - direct[i].real()));
      residue = std::max(residue, std::abs(direct[i].imag()));
    }
    CHECK(err <= 1e-9);
    CHECK(inv.max_imag_residue == doctest::Approx(residue).epsilon(1e-6));
  }
}

TEST_CASE("dft2 rejects multi-channel input") {
  CHECK_THROWS_AS(dft2(Image(4, 4, 3)), Error);
  CHECK(dft2_channels(Image(4, 4, 3)).size() == 3);
}

TEST_CASE("idft2 round trip and linearity") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Image a = oracle::random_image(8 + s % 3, 8, 1, s);
    const Image b = oracle::random_image(8 + s % 3, 8, 1, s + 50);
    const InverseDft back = idft2(dft2(a));
    CHECK(oracle::max_abs_diff(back.image, a) <= 1e-10);
    CHECK(back.max_imag_residue <= 1e-10);

    const double alpha = 0.7, beta = -1.3;
    const SpectrumMap Fa = dft2(a), Fb = dft2(b);
    SpectrumMap mix(Fa.width(), Fa.height());
    for (std::size_t i = 0; i < mix.coeffs().size(); ++i) mix.coeffs()[i] = alpha * Fa.coeffs()[i] + beta * Fb.coeffs()[i];
    const Image lhs = idft2(mix).image;
    const Image ia = idft2(Fa).image, ib = idft2(Fb).image;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      CHECK(std::abs(lhs.data()[i] - (alpha * ia.data()[i] + beta * ib.data()[i])) <= 1e-10);
    }
  }
}

TEST_CASE("Parseval and conjugate symmetry") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int w = 3 + static_cast<int>(s % 14);
    const int h = 2 + static_cast<int>((s * 5) % 17);
    const Image img = oracle::random_image(w, h, 1, s);
    const SpectrumMap F = dft2(img);
    double spatial = 0, spectral = 0, scale = 0;
    for (double v : img.data()) spatial += v * v;
    for (Complex c : F.coeffs()) spectral += std::norm(c);
    spectral /= static_cast<double>(w * h);
    CHECK(std::abs(spatial - spectral) <= 1e-8 * spatial);
    for (Complex c : F.coeffs()) scale = std::max(scale, std::abs(c));
    for (int l = 0; l < h; ++l)
      for (int k = 0; k < w; ++k) {
        const Complex mirror = std::conj(F.at((w - k) % w, (h - l) % h));
        CHECK(std::abs(F.at(k, l) - mirror) <= 1e-9 * scale);
      }
  }
}

TEST_CASE("centered radius bins") {
  CHECK(centered_offset(0, 8) == 0);
  CHECK(centered_offset(3, 8) == 3);
  CHECK(centered_offset(4, 8) == -4);
  CHECK(centered_offset(7, 8) == -1);
  CHECK(centered_offset(2, 5) == 2);
  CHECK(centered_offset(3, 5) == -2);
  CHECK(radius_bin(1, 1, 8, 8) == 1);  // sqrt 2 rounds to 1
  CHECK(radius_bin(2, 2, 8, 8) == 3);  // 2.83
  CHECK(max_radius_bin(16, 9) == 4);
}

TEST_CASE("azimuthal_integral examples") {
  const double c = 0.3;
  const SpectralVector v = azimuthal_integral(dft2(Image(8, 8, 1, c)));
  REQUIRE(v.size() == 5);
  CHECK(v[0] == doctest::Approx(64 * c).epsilon(1e-12));
  for (std::size_t r = 1; r < v.size(); ++r) CHECK(std::abs(v[r]) < 1e-12);

  Image impulse(8, 8, 1, 0.0);
  impulse.at(0, 0) = 1;
  for (double x : azimuthal_integral(dft2(impulse)).values) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("azimuthal_integral matches direct binning") {
  for (auto [w, h] : {std::pair{16, 16}, std::pair{15, 11}, std::pair{10, 13}}) {
    const SpectrumMap F = dft2(oracle::random_image(w, h, 1, w + h));
    const auto expected = oracle::binned_mean_magnitude(F);
    const SpectralVector got = azimuthal_integral(F);
    REQUIRE(got.size() == expected.size());
    for (std::size_t r = 0; r < got.size(); ++r) CHECK(std::abs(got[r] - expected[r]) <= 1e-10);
  }
}

TEST_CASE("azimuthal_integral properties") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Image img = oracle::random_image(12 + s, 10 + 2 * s, 1, s);
    const SpectralVector base = azimuthal_integral(img);
    const SpectralVector flipped = azimuthal_integral(hflip(img));
    for (std::size_t r = 0; r < base.size(); ++r) {
      CHECK(base[r] >= 0);
      CHECK(std::abs(base[r] - flipped[r]) <= 1e-9);
    }
    Image scaled = img;
    for (double& v : scaled.data()) v *= 2.5;
    const SpectralVector sv = azimuthal_integral(scaled);
    for (std::size_t r = 0; r < base.size(); ++r) CHECK(sv[r] == doctest::Approx(2.5 * base[r]).epsilon(1e-12));
  }
}

TEST_CASE("azimuthal_integral channel modes") {
  const Image rgb = oracle::random_image(16, 16, 3, 4);
  const SpectralVector luma = azimuthal_integral(rgb);
  const SpectralVector direct = azimuthal_integral(dft2(to_grayscale(rgb)));
  for (std::size_t r = 0; r < luma.size(); ++r) CHECK(luma[r] == doctest::Approx(direct[r]).epsilon(1e-12));
  const SpectralVector per = azimuthal_integral(rgb, ChannelMode::kPerChannel);
  for (std::size_t r = 0; r < per.size(); ++r) {
    double mean = 0;
    for (int c = 0; c < 3; ++c) mean += azimuthal_integral(dft2(rgb.channel(c)))[r] / 3;
    CHECK(per[r] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("highpass_vector") {
  const SpectralVector v{{5, 4, 3, 2, 1}};
  CHECK(highpass_vector(v, 2).values == std::vector<double>{0, 0, 0, 2, 1});
  CHECK(highpass_vector(v, 0).values == std::vector<double>{0, 4, 3, 2, 1});
  CHECK(highpass_vector(v, 4).values == std::vector<double>(5, 0.0));
  CHECK_THROWS_AS(highpass_vector(v, 5), Error);
  CHECK_THROWS_AS(highpass_vector(v, -1), Error);
  for (int t = 0; t < 5; ++t) CHECK(highpass_vector(highpass_vector(v, t), t) == highpass_vector(v, t));
}

TEST_CASE("default_r_tau") {
  CHECK(default_r_tau(128) == 45);
  CHECK(default_r_tau(256) == 90);
  CHECK(default_r_tau(1) == 0);
  for (int h = 1; h < 600; ++h) {
    const int r = default_r_tau(h);
    // r <= h/(2 sqrt 2) < r+1, checked in exact integer form: 8 r^2 <= h^2 < 8 (r+1)^2.
    CHECK(8LL * r * r <= 1LL * h * h);
    CHECK(1LL * h * h < 8LL * (r + 1) * (r + 1));
  }
}

TEST_CASE("spectrum_stats") {
  const Image a = oracle::random_image(16, 16, 1, 1);
  const Image b = oracle::random_image(16, 16, 1, 2);
  {
    const std::vector<Image> one{a};
    const SpectrumStats s = spectrum_stats(one);
    CHECK(s.count == 1);
    CHECK(s.mean == azimuthal_integral(a));
    for (double v : s.variance.values) CHECK(v == 0);
  }
  {
    const std::vector<Image> twins{a, a};
    for (double v : spectrum_stats(twins).variance.values) CHECK(v == 0);
  }
  {
    const std::vector<Image> pair{a, b};
    const SpectrumStats s = spectrum_stats(pair);
    const auto va = azimuthal_integral(a), vb = azimuthal_integral(b);
    for (std::size_t r = 0; r < s.mean.size(); ++r) {
      CHECK(s.mean[r] == doctest::Approx((va[r] + vb[r]) / 2).epsilon(1e-12));
      const double d = (va[r] - vb[r]) / 2;
      CHECK(s.variance[r] == doctest::Approx(d * d).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(spectrum_stats(std::vector<Image>{}), Error);
  CHECK_THROWS_AS(spectrum_stats(std::vector<Image>{a, Image(8, 16, 1)}), Error);
}

TEST_CASE("noisy spectrum exceeds clean above r_tau") {
  SceneParams params;
  const auto clean = synth_scenes(params, 11, 20);
  std::vector<Image> noisy;
  for (std::size_t i = 0; i < clean.size(); ++i) noisy.push_back(add_awgn(clean[i], 50, 1000 + i));
  const SpectrumStats cs = spectrum_stats(clean), ns = spectrum_stats(noisy);
  int above = 0, total = 0;
  for (std::size_t r = default_r_tau(128) + 1; r < cs.mean.size(); ++r) {
    ++total;
    above += ns.mean[r] > cs.mean[r];
  }
  CHECK(above >= 0.95 * total);
}

TEST_CASE("lfd") {
  const Image x = oracle::random_image(8, 8, 1, 3);
  CHECK(lfd(x, x) == 0);
  CHECK(lfd(Image(1, 1, 1, 1.0), Image(1, 1, 1, 0.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(lfd(x, Image(8, 7, 1)), Error);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Image a = oracle::random_image(8, 8, 3, s);
    const Image b = oracle::random_image(8, 8, 3, s + 30);
    double expected = 0;
    for (int c = 0; c < 3; ++c) {
      const SpectrumMap Fa = oracle::dft(a, c), Fb = oracle::dft(b, c);
      double acc = 0;
      for (std::size_t i = 0; i < Fa.coeffs().size(); ++i) acc += std::norm(Fa.coeffs()[i] - Fb.coeffs()[i]);
      expected += std::log1p(acc / 64) / 3;
    }
    CHECK(std::abs(lfd(a, b) - expected) <= 1e-9);
    CHECK(lfd(a, b) == lfd(b, a));
    CHECK(lfd(a, b) > 0);
  }
}

TEST_CASE("stats CSV round trip") {
  const std::vector<Image> imgs{oracle::random_image(16, 16, 1, 1), oracle::random_image(16, 16, 1, 2)};
  const SpectrumStats s = spectrum_stats(imgs);
  std::stringstream io;
  write_csv(io, s);
  CHECK(io.str().rfind("r,mean,variance\n0,", 0) == 0);
  const SpectrumStats back = read_stats_csv(io);
  CHECK(back.mean == s.mean);
  CHECK(back.variance == s.variance);

  std::ostringstream vec;
  write_csv(vec, SpectralVector{{1.5, 0}});
  CHECK(vec.str() == "r,value\n0,1.5\n1,0\n");

  std::istringstream bad("r,mean\n0,1\n");
  CHECK_THROWS_AS(read_stats_csv(bad), Error);
}

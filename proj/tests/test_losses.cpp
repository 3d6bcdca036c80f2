#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "specden/error.hpp"
#include "specden/losses.hpp"
#include "specden/noise.hpp"
#include "specden/scenes.hpp"

using namespace specden;

TEST_CASE("ssim examples") {
  const Image x = oracle::random_image(24, 20, 3, 1);
  CHECK(std::abs(ssim(x, x) - 1.0) <= 1e-9);

  const double C1 = 1e-4;
  const double closed = (2 * 0.5 * 0.6 + C1) / (0.25 + 0.36 + C1);
  CHECK(closed == doctest::Approx(0.6001 / 0.6101).epsilon(1e-15));
  CHECK(ssim(Image(16, 16, 1, 0.5), Image(16, 16, 1, 0.6)) == doctest::Approx(closed).epsilon(1e-12));

  Image checker(16, 16, 1), inverse(16, 16, 1);
  for (int y = 0; y < 16; ++y)
    for (int i = 0; i < 16; ++i) {
      checker.at(i, y) = (i + y) % 2 ? 0.8 : 0.2;
      inverse.at(i, y) = 1 - checker.at(i, y);
    }
  const double anti = ssim(checker, inverse);
  CHECK(anti < 0);
  CHECK(anti == doctest::Approx(oracle::ssim(checker, inverse)).epsilon(1e-9));

  CHECK_THROWS_AS(ssim(Image(10, 20, 1), Image(10, 20, 1)), Error);
  CHECK_THROWS_AS(ssim(x, Image(24, 20, 1)), Error);
}

TEST_CASE("ssim matches direct windowed computation") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Image a = oracle::random_image(15 + s, 13, 1 + 2 * (s % 2), s);
    Image b = a;
    const auto n = oracle::random_vector(b.size(), s + 9, -0.2, 0.2);
    for (std::size_t i = 0; i < b.size(); ++i) b.data()[i] += n[i];
    CHECK(std::abs(ssim(a, b) - oracle::ssim(a, b)) <= 1e-10);
    CHECK(ssim(a, b) == ssim(b, a));
    CHECK(ssim(a, b) >= -1);
    CHECK(ssim(a, b) <= 1);
  }
}

TEST_CASE("freq_recon_loss") {
  CHECK(freq_recon_loss(Image(1, 1, 1, 1.0), Image(1, 1, 1, 0.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Image a = oracle::random_image(8, 8, 1, s), b = oracle::random_image(8, 8, 1, s + 40);
    CHECK(freq_recon_loss(a, a) == 0);
    const SpectrumMap Fa = oracle::dft(a), Fb = oracle::dft(b);
    double acc = 0;
    for (std::size_t i = 0; i < Fa.coeffs().size(); ++i) acc += std::abs(Fa.coeffs()[i] - Fb.coeffs()[i]);
    CHECK(std::abs(freq_recon_loss(a, b) - std::log1p(acc / 64)) <= 1e-9);
    CHECK(freq_recon_loss(a, b) == freq_recon_loss(b, a));
  }
  CHECK_THROWS_AS(freq_recon_loss(Image(4, 4, 1), Image(4, 4, 3)), Error);
}

TEST_CASE("freq_recon_loss grows with noise amplitude") {
  const Image x = synth_scene(SceneParams{.width = 32, .height = 32}, 3);
  const auto n = oracle::random_vector(x.size(), 12);
  double previous = 0;
  for (double sigma : {0.0, 0.01, 0.05, 0.1, 0.3, 1.0}) {
    Image y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] += sigma * n[i];
    const double loss = freq_recon_loss(x, y);
    CHECK(loss >= previous);
    previous = loss;
  }
}

TEST_CASE("tv_loss") {
  CHECK(tv_loss(Image(9, 7, 3, 0.4)) == 0);
  const Image x = oracle::random_image(10, 10, 1, 5);
  Image shifted = x;
  for (double& v : shifted.data()) v += 0.25;
  CHECK(tv_loss(shifted) == doctest::Approx(tv_loss(x)).epsilon(1e-12));

  const int W = 12, H = 5;
  const double d = 0.03;
  Image ramp(W, H, 1);
  for (int y = 0; y < H; ++y)
    for (int i = 0; i < W; ++i) ramp.at(i, y) = i * d;
  CHECK(tv_loss(ramp) == doctest::Approx((W - 1) * H * d / (W * H)).epsilon(1e-12));
  CHECK(tv_loss(ramp, Reduction::kSum) == doctest::Approx((W - 1) * H * d).epsilon(1e-12));

  Image row(4, 1, 1, std::vector<double>{0, 1, 0, 1});
  CHECK(tv_loss(row, Reduction::kSum) == 3);
  CHECK(tv_loss(Image(1, 1, 1, 0.5)) == 0);
}

TEST_CASE("cycle_l1") {
  CHECK(cycle_l1(Image(3, 3, 1, 0.2), Image(3, 3, 1, 0.5)) == doctest::Approx(0.3).epsilon(1e-14));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Image a = oracle::random_image(7, 6, 3, s), b = oracle::random_image(7, 6, 3, s + 1);
    CHECK(cycle_l1(a, a) == 0);
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a.data()[i] - b.data()[i]);
    CHECK(std::abs(cycle_l1(a, b) - acc / a.size()) <= 1e-12);
    CHECK(std::abs(cycle_l1(a, b, Reduction::kSum) - acc) <= 1e-12);
    CHECK(cycle_l1(a, b) == cycle_l1(b, a));
  }
  CHECK_THROWS_AS(cycle_l1(Image(3, 3, 1), Image(3, 4, 1)), Error);
}

TEST_CASE("background_loss") {
  const Image x = oracle::random_image(20, 20, 1, 3);
  CHECK(background_loss(x, x) == 0);
  CHECK(background_loss(Image(20, 20, 1, 0.2), Image(20, 20, 1, 0.5)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK_THROWS_AS(background_loss(x, Image(20, 19, 1)), Error);

  const auto clean = synth_scenes(SceneParams{}, 5, 10);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const Image noisy = add_awgn(clean[i], 25, 90 + i);
    CHECK(background_loss(clean[i], noisy) < cycle_l1(clean[i], noisy));
    CHECK(background_loss(clean[i], noisy) == background_loss(noisy, clean[i]));
  }
}

TEST_CASE("recon_loss") {
  const Image a = oracle::random_image(16, 16, 1, 1), b = oracle::random_image(16, 16, 1, 2);
  CHECK(recon_loss(a, a) == -1.0);
  CHECK(recon_loss(a, b) == doctest::Approx(freq_recon_loss(a, b) - ssim(a, b)).epsilon(1e-14));
  Image near = a;
  near.at(3, 3) += 1e-3;
  CHECK(recon_loss(a, near) > -1.0);
  CHECK(recon_loss(a, b) > -1.0);
}

TEST_CASE("lsgan_terms") {
  const std::vector<double> one{1}, zero{0};
  CHECK(lsgan_terms(one, zero) == 0);
  CHECK(lsgan_terms(zero, one) == 2);
  CHECK(lsgan_terms(zero, one, LsganTargets::literal()) == 0);
  const std::vector<double> real{0.8, 1.2}, fake{0.1, -0.1};
  CHECK(lsgan_terms(real, fake) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK_THROWS_AS(lsgan_terms(std::vector<double>{}, fake), Error);
}

TEST_CASE("perceptual hook") {
  const FeatureExtractor mean_feature = [](const Image& img) {
    double s = 0;
    for (double v : img.data()) s += v;
    return std::vector<double>{s / static_cast<double>(img.size())};
  };
  CHECK(perceptual_distance(mean_feature, Image(4, 4, 1, 0.2), Image(4, 4, 1, 0.7)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(perceptual_distance(FeatureExtractor{}, Image(4, 4, 1), Image(4, 4, 1)), Error);
}

TEST_CASE("full_objective") {
  CHECK(full_objective({}).total == 0);
  ObjectiveParts unit{1, 1, 1, 1, 1.0, 1, 1, 1};
  CHECK(full_objective(unit).total == 8.4);
  unit.vgg.reset();
  CHECK(full_objective(unit).total == 6.4);

  ObjectiveParts bad = unit;
  bad.tv = std::nan("");
  CHECK_THROWS_AS(full_objective(bad), Error);
  CHECK_THROWS_AS(full_objective(unit, LossWeights{.vgg = -1}), Error);

  const auto r = oracle::random_vector(8, 99, 0, 5);
  const ObjectiveParts random{r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7]};
  const LossWeights w{0.5, 1.5, 0.3, 0.7};
  const ObjectiveBreakdown b = full_objective(random, w);
  CHECK(b.total == objective_total(b.parts, b.weights));
  const double plain = r[0] + r[1] + r[2] + r[3] + 0.5 * r[4] + 1.5 * r[5] + 0.3 * r[6] + 0.7 * r[7];
  CHECK(b.total == doctest::Approx(plain).epsilon(1e-14));
}

TEST_CASE("objective CSV") {
  std::ostringstream out;
  write_objective_header(out);
  ObjectiveParts unit{1, 1, 1, 1, std::nullopt, 1, 1, 1};
  write_objective_row(out, full_objective(unit));
  CHECK(out.str() == "adv_clean,adv_texture,adv_spectral,cc,vgg,bg,tv,recon,total\n1,1,1,1,,1,1,1,6.4\n");
}

TEST_CASE("loss floors hold on random pairs") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Image a = oracle::random_image(16, 16, 3, s), b = oracle::random_image(16, 16, 3, s + 60);
    CHECK(freq_recon_loss(a, b) >= 0);
    CHECK(tv_loss(a) >= 0);
    CHECK(cycle_l1(a, b) >= 0);
    CHECK(background_loss(a, b) >= 0);
    CHECK(std::abs(ssim(a, b)) <= 1);
  }
}

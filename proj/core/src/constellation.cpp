#include "ftnsdr/constellation.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "ftnsdr/errors.hpp"

namespace ftn {

std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t v = g;
  for (std::uint32_t shift = g >> 1; shift != 0; shift >>= 1) v ^= shift;
  return v;
}

Constellation::Constellation(Modulation m, std::vector<cplx> pts, std::vector<std::uint32_t> labels, int bits)
    : modulation_(m), points_(std::move(pts)), labels_(std::move(labels)), bits_(bits) {
  index_by_label_.assign(points_.size(), -1);
  for (std::size_t i = 0; i < labels_.size(); ++i) index_by_label_[labels_[i]] = static_cast<int>(i);
}

Constellation Constellation::psk(int M) {
  if (M < 2 || !is_power_of_two(M)) throw ParameterError("PSK order must be a power of two >= 2");
  std::vector<cplx> pts(M);
  std::vector<std::uint32_t> labels(M);
  for (int i = 0; i < M; ++i) {
    pts[i] = std::polar(1.0, (2.0 * i + 1.0) * std::numbers::pi / M);
    labels[i] = gray_encode(static_cast<std::uint32_t>(i));
  }
  return Constellation(Modulation::Psk, std::move(pts), std::move(labels), std::countr_zero(static_cast<unsigned>(M)));
}

Constellation Constellation::qam16() {
  std::vector<cplx> pts(16);
  std::vector<std::uint32_t> labels(16);
  for (int li = 0; li < 4; ++li) {
    for (int lq = 0; lq < 4; ++lq) {
      const int idx = 4 * li + lq;
      pts[idx] = cplx(2.0 * li - 3.0, 2.0 * lq - 3.0);
      labels[idx] = (gray_encode(li) << 2) | gray_encode(lq);
    }
  }
  return Constellation(Modulation::Qam16, std::move(pts), std::move(labels), 4);
}

Constellation Constellation::for_config(const FtnConfig& cfg) {
  return cfg.modulation == Modulation::Psk ? psk(cfg.M) : qam16();
}

const cplx& Constellation::point(int index) const {
  if (index < 0 || index >= order()) throw ParameterError("symbol index out of range");
  return points_[index];
}

std::uint32_t Constellation::label(int index) const {
  if (index < 0 || index >= order()) throw ParameterError("symbol index out of range");
  return labels_[index];
}

int Constellation::index_of_label(std::uint32_t bits) const {
  if (bits >= labels_.size()) throw ParameterError("bit label out of range");
  return index_by_label_[bits];
}

int Constellation::nearest(cplx x) const {
  if (modulation_ == Modulation::Psk) {
    return psk_sector(std::arg(x), order(), std::numbers::pi / order());
  }
  int best = 0;
  double best_d = std::norm(x - points_[0]);
  for (int i = 1; i < order(); ++i) {
    const double d = std::norm(x - points_[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

bool Constellation::contains(cplx x, double tol) const {
  for (const auto& p : points_) {
    if (std::abs(x - p) <= tol) return true;
  }
  return false;
}

int Constellation::bit_errors(int sent, int detected) const {
  return std::popcount(label(sent) ^ label(detected));
}

SymbolVector map_symbols(std::span<const int> indices, const Constellation& c) {
  SymbolVector out;
  out.entries.resize(static_cast<Eigen::Index>(indices.size()));
  out.indices.assign(indices.begin(), indices.end());
  out.modulation = c.modulation();
  out.order = c.order();
  for (std::size_t n = 0; n < indices.size(); ++n) out.entries[static_cast<Eigen::Index>(n)] = c.point(indices[n]);
  return out;
}

SymbolVector map_symbols(std::span<const int> indices, const FtnConfig& cfg) {
  return map_symbols(indices, Constellation::for_config(cfg));
}

std::vector<int> demap(const CVector& samples, const Constellation& c) {
  std::vector<int> out(static_cast<std::size_t>(samples.size()));
  for (Eigen::Index n = 0; n < samples.size(); ++n) out[static_cast<std::size_t>(n)] = c.nearest(samples[n]);
  return out;
}

int psk_sector(double angle, int M, double rotation) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double width = two_pi / M;
  // shift so sector 0 starts at zero
  double u = std::fmod(angle - rotation + 0.5 * width, two_pi);
  if (u < 0.0) u += two_pi;
  int k = static_cast<int>(std::floor(u / width));
  if (k >= M) k = M - 1;
  if (k < 0) k = 0;
  return k;
}

}  // namespace ftn

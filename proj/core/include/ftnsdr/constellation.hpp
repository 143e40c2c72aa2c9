#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftnsdr/config.hpp"
#include "ftnsdr/types.hpp"

namespace ftn {

/// Gray-labelled symbol alphabet.
///
/// PSK: index i (= m - 1) sits at exp(j(2i+1)pi/M) and carries the
/// binary-reflected Gray label of i. 16-QAM: index 4*li + lq maps to
/// (2li - 3) + j(2lq - 3), each axis Gray-labelled over {-3, -1, 1, 3}.
class Constellation {
 public:
  static Constellation psk(int M);
  static Constellation qam16();
  static Constellation for_config(const FtnConfig& cfg);

  Modulation modulation() const noexcept { return modulation_; }
  int order() const noexcept { return static_cast<int>(points_.size()); }
  int bits_per_symbol() const noexcept { return bits_; }
  const std::vector<cplx>& points() const noexcept { return points_; }
  const cplx& point(int index) const;

  /// Gray bit label of a symbol index.
  std::uint32_t label(int index) const;
  /// Index whose label equals `bits`.
  int index_of_label(std::uint32_t bits) const;

  /// Index of the alphabet point nearest to `x`; ties go to the smaller index.
  int nearest(cplx x) const;

  /// Exact membership test with tolerance.
  bool contains(cplx x, double tol = 1e-12) const;

  int bit_errors(int sent, int detected) const;

 private:
  Constellation(Modulation m, std::vector<cplx> pts, std::vector<std::uint32_t> labels, int bits);

  Modulation modulation_;
  std::vector<cplx> points_;
  std::vector<std::uint32_t> labels_;
  std::vector<int> index_by_label_;
  int bits_;
};

/// A block of constellation symbols together with their indices.
struct SymbolVector {
  CVector entries;
  std::vector<int> indices;
  Modulation modulation = Modulation::Psk;
  int order = 0;
};

std::uint32_t gray_encode(std::uint32_t v);
std::uint32_t gray_decode(std::uint32_t g);

/// Maps indices in [0, M) onto the configured alphabet.
SymbolVector map_symbols(std::span<const int> indices, const FtnConfig& cfg);
SymbolVector map_symbols(std::span<const int> indices, const Constellation& c);

/// Nearest-point demapping of arbitrary samples.
std::vector<int> demap(const CVector& samples, const Constellation& c);

/// PSK decision sector of an angle. Sector k covers
/// [rotation + (2k-1)pi/M, rotation + (2k+1)pi/M) modulo 2pi. With
/// rotation = 0 the sectors are centred on exp(j2pi k/M); with
/// rotation = pi/M they are centred on the alphabet points exp(j(2k+1)pi/M).
int psk_sector(double angle, int M, double rotation);

}  // namespace ftn

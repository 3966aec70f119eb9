#pragma once

#include <array>
#include <cstddef>

#include "irs/linalg.hpp"
#include "irs/random.hpp"

namespace irs {

using Point3 = std::array<double, 3>;

/// Node placement and large-scale fading parameters. Defaults are the
/// reference deployment: user at (20,50,0), AP at (20,0,0), IRS centred at
/// (18,50,0), -30 dB reference gain at 1 m.
struct Geometry {
  Point3 user_pos{20.0, 50.0, 0.0};
  Point3 ap_pos{20.0, 0.0, 0.0};
  Point3 irs_center{18.0, 50.0, 0.0};
  double pathloss_exp_ua = 4.5;
  double pathloss_exp_ui = 2.2;
  double pathloss_exp_ia = 2.5;
  double ref_gain_db = -30.0;

  /// Throws ValidationError on coincident nodes or exponents outside [1.5, 6].
  void validate() const;
};

enum class Link { UA, UI, IA };

double distance(const Point3& a, const Point3& b);

/// Linear power gain 10^(ref_gain_db/10) * d^-exponent.
double path_gain(const Geometry& geometry, Link link);

/// Element-level Rayleigh fading before grouping.
struct ElementChannels {
  complex h_ua;
  ComplexVector h_ui;  // user -> element e
  ComplexVector h_ia;  // element e -> AP, stored conjugate-transposed
};

ElementChannels sample_channels(const Geometry& geometry, std::size_t n_elements, Rng& rng);

struct ChannelRealization {
  complex h_ua;
  ComplexVector h_ui_elems;
  ComplexVector h_ia_elems;
  /// h_r[m] = sum over group m of conj(h_ia[e]) * h_ui[e]
  ComplexVector h_r;
  /// [conj(h_ua), h_r]
  ComplexVector h_ext;

  std::size_t groups() const { return h_r.size(); }
};

/// Sums element cascades over M groups of N/M adjacent elements.
/// Throws IndivisibleGrouping unless m_groups divides the element count.
ChannelRealization group_channels(complex h_ua, ComplexVector h_ui_elems, ComplexVector h_ia_elems,
                                  std::size_t m_groups);

inline ChannelRealization group_channels(const ElementChannels& e, std::size_t m_groups) {
  return group_channels(e.h_ua, e.h_ui, e.h_ia, m_groups);
}

}  // namespace irs

#include "irs/channel.hpp"

#include <cmath>
#include <string>

#include "irs/errors.hpp"

namespace irs {

double distance(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void Geometry::validate() const {
  if (!(distance(user_pos, ap_pos) > 0.0) || !(distance(user_pos, irs_center) > 0.0) ||
      !(distance(irs_center, ap_pos) > 0.0))
    throw ValidationError("geometry: node positions must be distinct");
  for (double e : {pathloss_exp_ua, pathloss_exp_ui, pathloss_exp_ia})
    if (!(e >= 1.5 && e <= 6.0))
      throw ValidationError("geometry: path loss exponent " + std::to_string(e) + " outside [1.5, 6]");
}

double path_gain(const Geometry& g, Link link) {
  double d = 0.0;
  double exponent = 0.0;
  switch (link) {
    case Link::UA:
      d = distance(g.user_pos, g.ap_pos);
      exponent = g.pathloss_exp_ua;
      break;
    case Link::UI:
      d = distance(g.user_pos, g.irs_center);
      exponent = g.pathloss_exp_ui;
      break;
    case Link::IA:
      d = distance(g.irs_center, g.ap_pos);
      exponent = g.pathloss_exp_ia;
      break;
  }
  return std::pow(10.0, g.ref_gain_db / 10.0) * std::pow(d, -exponent);
}

ElementChannels sample_channels(const Geometry& geometry, std::size_t n_elements, Rng& rng) {
  if (n_elements == 0) throw ValidationError("sample_channels: need at least one element");
  const double g_ua = path_gain(geometry, Link::UA);
  const double g_ui = path_gain(geometry, Link::UI);
  const double g_ia = path_gain(geometry, Link::IA);

  ElementChannels out{complex_gaussian(rng, g_ua), ComplexVector(n_elements), ComplexVector(n_elements)};
  for (auto& h : out.h_ui) h = complex_gaussian(rng, g_ui);
  for (auto& h : out.h_ia) h = complex_gaussian(rng, g_ia);
  return out;
}

ChannelRealization group_channels(complex h_ua, ComplexVector h_ui_elems, ComplexVector h_ia_elems,
                                  std::size_t m_groups) {
  const std::size_t n = h_ui_elems.size();
  if (h_ia_elems.size() != n) throw ValidationError("group_channels: element vectors differ in length");
  if (m_groups == 0 || n % m_groups != 0)
    throw IndivisibleGrouping("cannot split " + std::to_string(n) + " elements into " +
                              std::to_string(m_groups) + " equal groups");
  const std::size_t per_group = n / m_groups;

  ChannelRealization out{h_ua, std::move(h_ui_elems), std::move(h_ia_elems), ComplexVector(m_groups), {}};
  for (std::size_t m = 0; m < m_groups; ++m) {
    complex acc{};
    for (std::size_t e = m * per_group; e < (m + 1) * per_group; ++e)
      acc += std::conj(out.h_ia_elems[e]) * out.h_ui_elems[e];
    out.h_r[m] = acc;
  }
  out.h_ext.reserve(m_groups + 1);
  out.h_ext.push_back(std::conj(h_ua));
  out.h_ext.insert(out.h_ext.end(), out.h_r.begin(), out.h_r.end());
  return out;
}

}  // namespace irs

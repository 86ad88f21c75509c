#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "plenoptic/reality.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

struct ViewSpec {
  int block_length = 2;

  explicit ViewSpec(int L);
  ViewSpec() = default;
};

enum class RealityTag { static_wall, bsc_field, ar1_field };

const char* to_string(RealityTag tag);

/// The vector process V_0..V_t: frame i holds the L samples at sites
/// W_i..W_i+L-1 read at time i (time 0 throughout for a static wall).
/// V_0 is treated as known to the decoder by every codec and oracle.
template <typename Scalar>
struct ViewSequence {
  FrameMatrix<Scalar> frames;  // (t + 1) x L
  WalkPath path;
  ViewSpec spec;
  RealityTag reality = RealityTag::static_wall;
  bool first_frame_known = true;

  int horizon() const { return static_cast<int>(frames.rows()) - 1; }
  int block_length() const { return spec.block_length; }
  auto frame(int i) const { return frames.row(i); }
};

/// Site interval a path touches with blocks of length L.
inline std::pair<int, int> touched_sites(const WalkPath& path, const ViewSpec& spec) {
  return {path.min_position(), path.max_position() + spec.block_length - 1};
}

template <typename Scalar>
ViewSequence<Scalar> extract_static(const FieldWindow<Scalar>& wall, const WalkPath& path,
                                    const ViewSpec& spec) {
  const auto [lo, hi] = touched_sites(path, spec);
  if (!wall.covers(lo, hi)) {
    throw std::out_of_range("wall window [" + std::to_string(wall.site_lo) + ", " +
                            std::to_string(wall.site_hi) + "] does not cover [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
  ViewSequence<Scalar> view;
  view.path = path;
  view.spec = spec;
  view.reality = RealityTag::static_wall;
  const int L = spec.block_length;
  view.frames.resize(path.horizon() + 1, L);
  for (int i = 0; i <= path.horizon(); ++i) {
    view.frames.row(i) = wall.samples.row(0).segment(path.position(i) - wall.site_lo, L);
  }
  return view;
}

/// Dynamic view from an explicit row-0 field and its time dynamics.
ViewSequence<Symbol> extract_dynamic(const FieldWindow<Symbol>& initial, const BscFieldSpec& spec,
                                     const WalkPath& path, const ViewSpec& view_spec, std::uint64_t seed);
ViewSequence<double> extract_dynamic(const FieldWindow<double>& initial, const Ar1FieldSpec& spec,
                                     const WalkPath& path, const ViewSpec& view_spec, std::uint64_t seed);

/// Dynamic view with the row-0 field drawn from the seed (Bernoulli(p_x) or stationary N(0, 1)).
ViewSequence<Symbol> extract_dynamic(const BscFieldSpec& spec, const WalkPath& path,
                                     const ViewSpec& view_spec, std::uint64_t seed);
ViewSequence<double> extract_dynamic(const Ar1FieldSpec& spec, const WalkPath& path,
                                     const ViewSpec& view_spec, std::uint64_t seed);

/// Columnar CSV "frame,offset,value", one row per sample.
template <typename Scalar>
void write_csv(std::ostream& os, const ViewSequence<Scalar>& view) {
  os << "frame,offset,value\n";
  const auto old = os.precision(17);
  for (Eigen::Index i = 0; i < view.frames.rows(); ++i) {
    for (Eigen::Index j = 0; j < view.frames.cols(); ++j) {
      os << i << ',' << j << ',' << view.frames(i, j) << '\n';
    }
  }
  os.precision(old);
}

}  // namespace plenoptic

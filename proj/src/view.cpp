#include "plenoptic/view.hpp"

namespace plenoptic {

ViewSpec::ViewSpec(int L) : block_length(L) {
  if (L < 2) throw std::invalid_argument("block length must be at least 2");
}

const char* to_string(RealityTag tag) {
  switch (tag) {
    case RealityTag::static_wall: return "static";
    case RealityTag::bsc_field: return "bsc";
    case RealityTag::ar1_field: return "ar1";
  }
  return "unknown";
}

namespace {

template <typename Scalar>
ViewSequence<Scalar> read_through(LazyField<Scalar>& field, const WalkPath& path, const ViewSpec& spec,
                                  RealityTag tag) {
  ViewSequence<Scalar> view;
  view.path = path;
  view.spec = spec;
  view.reality = tag;
  const int L = spec.block_length;
  view.frames.resize(path.horizon() + 1, L);
  for (int i = 0; i <= path.horizon(); ++i) {
    for (int j = 0; j < L; ++j) view.frames(i, j) = field.read(path.position(i) + j, i);
  }
  return view;
}

template <typename Scalar>
void require_cover(const FieldWindow<Scalar>& initial, const WalkPath& path, const ViewSpec& spec) {
  const auto [lo, hi] = touched_sites(path, spec);
  if (!initial.covers(lo, hi)) throw std::out_of_range("initial field row does not cover the path");
}

}  // namespace

ViewSequence<Symbol> extract_dynamic(const FieldWindow<Symbol>& initial, const BscFieldSpec& spec,
                                     const WalkPath& path, const ViewSpec& view_spec, std::uint64_t seed) {
  require_cover(initial, path, view_spec);
  LazyField<Symbol> field(initial, spec, seed);
  return read_through(field, path, view_spec, RealityTag::bsc_field);
}

ViewSequence<double> extract_dynamic(const FieldWindow<double>& initial, const Ar1FieldSpec& spec,
                                     const WalkPath& path, const ViewSpec& view_spec, std::uint64_t seed) {
  require_cover(initial, path, view_spec);
  LazyField<double> field(initial, spec, seed);
  return read_through(field, path, view_spec, RealityTag::ar1_field);
}

ViewSequence<Symbol> extract_dynamic(const BscFieldSpec& spec, const WalkPath& path,
                                     const ViewSpec& view_spec, std::uint64_t seed) {
  const auto [lo, hi] = touched_sites(path, view_spec);
  return extract_dynamic(gen_static_wall(StaticWallSpec::bernoulli(spec.p_x), lo, hi, seed), spec, path,
                         view_spec, seed);
}

ViewSequence<double> extract_dynamic(const Ar1FieldSpec& spec, const WalkPath& path,
                                     const ViewSpec& view_spec, std::uint64_t seed) {
  const auto [lo, hi] = touched_sites(path, view_spec);
  FieldWindow<double> initial;
  initial.site_lo = lo;
  initial.site_hi = hi;
  Engine engine = make_engine(seed, streams::wall);
  initial.samples = gen_ar1_row(hi - lo + 1, engine).transpose();
  return extract_dynamic(initial, spec, path, view_spec, seed);
}

}  // namespace plenoptic

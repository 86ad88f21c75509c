#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace plenoptic {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Frames are stored one per row so that frame i is a contiguous row block.
template <typename Scalar>
using FrameMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Symbol = int;

// A walk increment. The numeric value is the displacement.
enum class Step : int { down = -1, up = 1 };

constexpr int displacement(Step s) { return static_cast<int>(s); }
constexpr Step opposite(Step s) { return s == Step::up ? Step::down : Step::up; }

}  // namespace plenoptic

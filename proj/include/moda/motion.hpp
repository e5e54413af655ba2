#pragma once

#include "moda/common.hpp"

#include <vector>

namespace moda {

// Canonical keypoints x_c: K rows of (x, y, z) in normalized face space.
struct KeypointSet {
    MatX points;  // K x 3

    Eigen::Index count() const { return points.rows(); }
};

// Disentangled per-frame motion: Euler rotation (pitch, yaw, roll), per-keypoint
// expression offsets, translation and a positive scale. Flattened length 3K + 7
// (70 for the default K = 21).
struct MotionParams {
    Eigen::Vector3d rotation = Eigen::Vector3d::Zero();  // radians
    MatX expression;                                     // K x 3 offsets
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double scale = 1.0;

    Eigen::Index keypoint_count() const { return expression.rows(); }
    Eigen::Index flat_size() const { return 3 * expression.rows() + 7; }

    static MotionParams neutral(Eigen::Index k);
};

struct MotionSequence {
    std::vector<MotionParams> frames;
    double fps = 25.0;

    Eigen::Index length() const { return static_cast<Eigen::Index>(frames.size()); }
};

// Per-dimension standardization statistics over the flattened representation.
struct NormStats {
    VecX mean;
    VecX std;  // strictly positive
};

inline constexpr int kDefaultKeypoints = 21;
inline int motion_dim(int k) { return 3 * k + 7; }

// Rotation convention (fixed so the composition below is unambiguous):
// row vectors, x_out = x_in * R with R = Rx(pitch) * Ry(yaw) * Rz(roll) where
//   Rx(a) = [1 0 0; 0 cos a sin a; 0 -sin a cos a]
//   Ry(a) = [cos a 0 -sin a; 0 1 0; sin a 0 cos a]
//   Rz(a) = [cos a sin a 0; -sin a cos a 0; 0 0 1]
Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& euler);

// x = S * (x_c R + delta) + t, applied per keypoint row.
KeypointSet compose_keypoints(const KeypointSet& xc, const MotionParams& mp);

// Flatten order: expression (keypoint-major xyz), rotation, translation, scale.
VecX flatten(const MotionParams& mp);
MotionParams unflatten(const Eigen::Ref<const VecX>& v, Eigen::Index k);

// Sequence <-> T x (3K+7) matrix in flatten order.
MatX sequence_to_matrix(const MotionSequence& seq);
MotionSequence sequence_from_matrix(const Eigen::Ref<const MatX>& m, Eigen::Index k, double fps);

// Standardize per dimension: (x - mean) / std. The normalized form is a plain
// matrix because standardized frames need not satisfy the scale invariant.
MatX normalize(const MotionSequence& seq, const NormStats& stats);
MatX normalize_rows(const Eigen::Ref<const MatX>& m, const NormStats& stats);
MotionSequence denormalize(const Eigen::Ref<const MatX>& m, const NormStats& stats, Eigen::Index k,
                           double fps);
MatX denormalize_rows(const Eigen::Ref<const MatX>& m, const NormStats& stats);

// Temporal smoothness in [0, 1]:
//   1 - mean_t ||d2 x_t|| / (mean_t ||d1 x_t|| + eps), clamped,
// with d1/d2 the first/second frame differences of the flattened sequence and
// ||.|| the per-frame Euclidean norm. Requires T >= 3.
double smoothness(const MotionSequence& seq);
double smoothness_rows(const Eigen::Ref<const MatX>& m);

void validate_finite(const Eigen::Ref<const MatX>& m, const char* what);

}  // namespace moda

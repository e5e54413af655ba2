#include "moda/motion.hpp"

#include <cmath>

namespace moda {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::dimension: return "dimension";
        case ErrKind::validation: return "validation";
        case ErrKind::config: return "config";
        case ErrKind::io: return "io";
        case ErrKind::protocol: return "protocol";
        case ErrKind::diverged: return "diverged";
    }
    return "unknown";
}

void validate_finite(const Eigen::Ref<const MatX>& m, const char* what) {
    if (!m.allFinite()) fail(ErrKind::validation, std::string(what) + " has non-finite entries");
}

MotionParams MotionParams::neutral(Eigen::Index k) {
    MotionParams mp;
    mp.expression = MatX::Zero(k, 3);
    return mp;
}

Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& euler) {
    const double p = euler[0], y = euler[1], r = euler[2];
    Eigen::Matrix3d rx, ry, rz;
    rx << 1, 0, 0,
          0, std::cos(p), std::sin(p),
          0, -std::sin(p), std::cos(p);
    ry << std::cos(y), 0, -std::sin(y),
          0, 1, 0,
          std::sin(y), 0, std::cos(y);
    rz << std::cos(r), std::sin(r), 0,
          -std::sin(r), std::cos(r), 0,
          0, 0, 1;
    return rx * ry * rz;
}

KeypointSet compose_keypoints(const KeypointSet& xc, const MotionParams& mp) {
    require(xc.points.cols() == 3, ErrKind::dimension, "keypoints must be K x 3");
    require(xc.points.rows() >= 1, ErrKind::dimension, "keypoint set is empty");
    require(mp.expression.rows() == xc.points.rows() && mp.expression.cols() == 3,
            ErrKind::dimension, "expression shape does not match keypoints");
    require(mp.scale > 0.0, ErrKind::validation, "scale must be positive");
    validate_finite(xc.points, "keypoints");
    validate_finite(mp.expression, "expression");
    require(mp.rotation.allFinite() && mp.translation.allFinite() && std::isfinite(mp.scale),
            ErrKind::validation, "motion params have non-finite entries");

    const Eigen::Matrix3d r = rotation_matrix(mp.rotation);
    KeypointSet out;
    out.points = (mp.scale * (xc.points * r + mp.expression)).rowwise() +
                 mp.translation.transpose();
    return out;
}

VecX flatten(const MotionParams& mp) {
    const Eigen::Index k = mp.expression.rows();
    VecX v(3 * k + 7);
    for (Eigen::Index i = 0; i < k; ++i) v.segment<3>(3 * i) = mp.expression.row(i).transpose();
    v.segment<3>(3 * k) = mp.rotation;
    v.segment<3>(3 * k + 3) = mp.translation;
    v[3 * k + 6] = mp.scale;
    return v;
}

MotionParams unflatten(const Eigen::Ref<const VecX>& v, Eigen::Index k) {
    require(v.size() == 3 * k + 7, ErrKind::dimension,
            "flattened motion vector has wrong length");
    MotionParams mp;
    mp.expression.resize(k, 3);
    for (Eigen::Index i = 0; i < k; ++i) mp.expression.row(i) = v.segment<3>(3 * i).transpose();
    mp.rotation = v.segment<3>(3 * k);
    mp.translation = v.segment<3>(3 * k + 3);
    mp.scale = v[3 * k + 6];
    return mp;
}

MatX sequence_to_matrix(const MotionSequence& seq) {
    require(!seq.frames.empty(), ErrKind::validation, "sequence is empty");
    const Eigen::Index dim = seq.frames[0].flat_size();
    MatX m(seq.length(), dim);
    for (Eigen::Index t = 0; t < seq.length(); ++t) {
        const auto& f = seq.frames[static_cast<std::size_t>(t)];
        require(f.flat_size() == dim, ErrKind::dimension, "frames disagree on keypoint count");
        m.row(t) = flatten(f).transpose();
    }
    return m;
}

MotionSequence sequence_from_matrix(const Eigen::Ref<const MatX>& m, Eigen::Index k, double fps) {
    require(m.cols() == 3 * k + 7, ErrKind::dimension, "matrix width does not match keypoints");
    MotionSequence seq;
    seq.fps = fps;
    seq.frames.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index t = 0; t < m.rows(); ++t)
        seq.frames.push_back(unflatten(m.row(t).transpose(), k));
    return seq;
}

static void check_stats(const NormStats& stats, Eigen::Index dim) {
    require(stats.mean.size() == dim && stats.std.size() == dim, ErrKind::dimension,
            "normalization stats do not match motion dimension");
    require((stats.std.array() > 0.0).all(), ErrKind::validation,
            "normalization std must be strictly positive");
}

MatX normalize_rows(const Eigen::Ref<const MatX>& m, const NormStats& stats) {
    check_stats(stats, m.cols());
    return (m.rowwise() - stats.mean.transpose()).array().rowwise() /
           stats.std.transpose().array();
}

MatX normalize(const MotionSequence& seq, const NormStats& stats) {
    return normalize_rows(sequence_to_matrix(seq), stats);
}

MatX denormalize_rows(const Eigen::Ref<const MatX>& m, const NormStats& stats) {
    check_stats(stats, m.cols());
    return (m.array().rowwise() * stats.std.transpose().array()).matrix().rowwise() +
           stats.mean.transpose();
}

MotionSequence denormalize(const Eigen::Ref<const MatX>& m, const NormStats& stats,
                           Eigen::Index k, double fps) {
    return sequence_from_matrix(denormalize_rows(m, stats), k, fps);
}

double smoothness_rows(const Eigen::Ref<const MatX>& m) {
    require(m.rows() >= 3, ErrKind::validation, "smoothness needs at least 3 frames");
    validate_finite(m, "sequence");
    const MatX d1 = m.bottomRows(m.rows() - 1) - m.topRows(m.rows() - 1);
    const MatX d2 = d1.bottomRows(d1.rows() - 1) - d1.topRows(d1.rows() - 1);
    const double mean_d1 = d1.rowwise().norm().mean();
    const double mean_d2 = d2.rowwise().norm().mean();
    const double score = 1.0 - mean_d2 / (mean_d1 + kEpsDiv);
    return std::min(1.0, std::max(0.0, score));
}

double smoothness(const MotionSequence& seq) { return smoothness_rows(sequence_to_matrix(seq)); }

}  // namespace moda

#pragma once

#include "moda/motion.hpp"

#include <string>

namespace moda::io {

// MSEQ1: "MSEQ", u32 version=1, u32 T, u32 K, f32 fps, then T x (3K+7) f32
// frames in flatten order. Little-endian throughout.
void write_mseq(const std::string& path, const MotionSequence& seq);
MotionSequence read_mseq(const std::string& path);

// Line-delimited text export: one frame per line, space-separated flatten order.
void write_mseq_text(const std::string& path, const MotionSequence& seq);

// AFEA1: "AFEA", u32 version=1, u32 T_a, u32 D_a, then T_a x D_a f32.
void write_afea(const std::string& path, const Eigen::Ref<const MatX>& features);
MatX read_afea(const std::string& path);

// stats.norm: mean then std as consecutive f32 vectors; dimension = size / 8.
void write_norm_stats(const std::string& path, const NormStats& stats);
NormStats read_norm_stats(const std::string& path);

bool file_exists(const std::string& path);

}  // namespace moda::io

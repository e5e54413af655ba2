#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace moda {

template <class S>
using MatT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecT = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowT = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using MatX = MatT<double>;
using VecX = VecT<double>;
using RowX = RowT<double>;

// Error kinds surfaced by the CLI as "ERROR:<kind>:".
enum class ErrKind { dimension, validation, config, io, protocol, diverged };

const char* err_kind_name(ErrKind k);

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

// Denominator guard used by every ratio-style metric.
inline constexpr double kEpsDiv = 1e-8;

}  // namespace moda
